#include "util/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cdds::csv {

int Table::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return int(i);
    return -1;
}

int Table::require_column(const std::string& name) const {
    int c = column(name);
    if (c < 0) throw std::runtime_error("csv: missing required column '" + name + "'");
    return c;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

static Table parse_stream(std::istream& in, const std::string& what) {
    Table t;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = split_line(line);
        if (!have_header) {
            t.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != t.header.size())
            throw std::runtime_error("csv: " + what + ": row has " + std::to_string(fields.size()) +
                                     " fields, header has " + std::to_string(t.header.size()));
        t.rows.push_back(std::move(fields));
    }
    if (!have_header) throw std::runtime_error("csv: " + what + ": empty file");
    return t;
}

Table read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("csv: cannot open " + path);
    return parse_stream(f, path);
}

Table read_string(const std::string& text) {
    std::istringstream s(text);
    return parse_stream(s, "<string>");
}

double parse_double(const std::string& s, const std::string& context) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || (end && *end != '\0'))
        throw std::runtime_error("csv: bad number '" + s + "' in " + context);
    return v;
}

}  // namespace cdds::csv
