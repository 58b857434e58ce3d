#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace cdds::csv {

// Header-row CSV table. UTF-8, comma separator, "." decimal point. Field
// quoting is not supported: none of the file schemas (ids, SMILES, gene
// symbols, numbers) can contain commas.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;           // -1 when absent
    int require_column(const std::string& name) const;   // throws when absent
    const std::string& at(size_t row, int col) const { return rows[row][size_t(col)]; }
};

Table read_file(const std::string& path);
Table read_string(const std::string& text);

std::vector<std::string> split_line(const std::string& line);

double parse_double(const std::string& s, const std::string& context);

}  // namespace cdds::csv
