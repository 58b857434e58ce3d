#include "data/folds.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "util/csv.hpp"
#include "util/rng.hpp"

namespace cdds::data {

Protocol protocol_from_string(const std::string& s) {
    if (s == "warm") return Protocol::warm;
    if (s == "unseen_pair") return Protocol::unseen_pair;
    if (s == "unseen_cell") return Protocol::unseen_cell;
    if (s == "unseen_drug") return Protocol::unseen_drug;
    if (s == "scaffold") return Protocol::scaffold;
    if (s == "external_group") return Protocol::external_group;
    throw std::invalid_argument("unknown protocol: " + s);
}

const char* protocol_name(Protocol p) {
    switch (p) {
        case Protocol::warm: return "warm";
        case Protocol::unseen_pair: return "unseen_pair";
        case Protocol::unseen_cell: return "unseen_cell";
        case Protocol::unseen_drug: return "unseen_drug";
        case Protocol::scaffold: return "scaffold";
        case Protocol::external_group: return "external_group";
    }
    return "?";
}

FoldSplit FoldPlan::split(int fold) const {
    FoldSplit out;
    for (size_t i = 0; i < assignment.size(); ++i) {
        if (!two_key()) {
            if (assignment[i] == fold) out.test.push_back(i);
            else out.train.push_back(i);
            continue;
        }
        int fa = key_fold.at(key_a[i]);
        int fb = key_fold.at(key_b[i]);
        if (fa == fold && fb == fold) out.test.push_back(i);
        else if (fa != fold && fb != fold) out.train.push_back(i);
        else ++out.dropped;
    }
    return out;
}

void FoldPlan::save_csv(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write fold plan: " + path);
    f << "sample_index,fold_id\n";
    for (size_t i = 0; i < assignment.size(); ++i) f << i << "," << assignment[i] << "\n";
}

std::vector<int> FoldPlan::load_csv(const std::string& path, size_t n_samples) {
    csv::Table t = csv::read_file(path);
    int c_i = t.require_column("sample_index");
    int c_f = t.require_column("fold_id");
    std::vector<int> out(n_samples, -1);
    for (size_t r = 0; r < t.rows.size(); ++r) {
        size_t i = size_t(std::stoull(t.at(r, c_i)));
        if (i >= n_samples) throw std::runtime_error("fold plan row out of range: " + path);
        out[i] = std::stoi(t.at(r, c_f));
    }
    for (size_t i = 0; i < out.size(); ++i)
        if (out[i] < 0) throw std::runtime_error("fold plan misses sample " + std::to_string(i));
    return out;
}

static std::string pair_key(const SynergySample& s) {
    return s.drug_a < s.drug_b ? s.drug_a + "|" + s.drug_b : s.drug_b + "|" + s.drug_a;
}

FoldPlan make_folds(const Dataset& ds, Protocol protocol, int k, uint64_t seed) {
    if (k < 2) throw std::invalid_argument("make_folds: k must be >= 2");
    size_t n = ds.samples.size();
    FoldPlan plan;
    plan.protocol = protocol;
    plan.k = k;
    plan.seed = seed;
    plan.assignment.assign(n, -1);
    plan.key_a.resize(n);
    plan.key_b.resize(n);

    auto shuffle_stream = rng::named_stream(seed, std::string("folds.") + protocol_name(protocol));

    if (protocol == Protocol::warm) {
        std::vector<size_t> idx(n);
        for (size_t i = 0; i < n; ++i) idx[i] = i;
        shuffle_stream.shuffle(idx);
        for (size_t pos = 0; pos < n; ++pos) plan.assignment[idx[pos]] = int(pos % size_t(k));
        for (size_t i = 0; i < n; ++i) plan.key_a[i] = std::to_string(i);
        return plan;
    }

    // Collect per-sample keys.
    for (size_t i = 0; i < n; ++i) {
        const SynergySample& s = ds.samples[i];
        switch (protocol) {
            case Protocol::unseen_pair: plan.key_a[i] = pair_key(s); break;
            case Protocol::unseen_cell: plan.key_a[i] = s.cell; break;
            case Protocol::unseen_drug:
                plan.key_a[i] = s.drug_a;
                plan.key_b[i] = s.drug_b;
                break;
            case Protocol::scaffold:
                plan.key_a[i] = ds.drug(s.drug_a).scaffold;
                plan.key_b[i] = ds.drug(s.drug_b).scaffold;
                break;
            case Protocol::external_group:
                if (s.group_label.empty())
                    throw std::runtime_error("external_group: sample " + std::to_string(i) +
                                             " has no group_label");
                plan.key_a[i] = s.group_label;
                break;
            default: break;
        }
    }

    std::set<std::string> key_set;
    for (size_t i = 0; i < n; ++i) {
        key_set.insert(plan.key_a[i]);
        if (plan.two_key()) key_set.insert(plan.key_b[i]);
    }
    if (int(key_set.size()) < k)
        throw std::runtime_error("InsufficientGroups: " + std::to_string(key_set.size()) +
                                 " distinct keys for k=" + std::to_string(k));

    std::vector<std::string> keys(key_set.begin(), key_set.end());  // sorted, then shuffled
    shuffle_stream.shuffle(keys);
    for (size_t pos = 0; pos < keys.size(); ++pos)
        plan.key_fold[keys[pos]] = int(pos % size_t(k));

    for (size_t i = 0; i < n; ++i) {
        int fa = plan.key_fold.at(plan.key_a[i]);
        if (!plan.two_key()) {
            plan.assignment[i] = fa;
        } else {
            int fb = plan.key_fold.at(plan.key_b[i]);
            // Mixed-key samples get the smaller fold id in the exported
            // partition; split() drops them from that fold's test set.
            plan.assignment[i] = fa == fb ? fa : std::min(fa, fb);
        }
    }
    return plan;
}

std::vector<std::vector<size_t>> make_batches(const std::vector<size_t>& indices, int batch_size,
                                              uint64_t seed, int epoch, bool shuffle) {
    if (indices.empty()) throw std::invalid_argument("make_batches: empty selection");
    if (batch_size < 1) throw std::invalid_argument("make_batches: batch_size must be >= 1");
    std::vector<size_t> order = indices;
    if (shuffle) {
        auto stream = rng::named_stream(seed, "shuffle", uint64_t(epoch));
        stream.shuffle(order);
    }
    std::vector<std::vector<size_t>> batches;
    for (size_t at = 0; at < order.size(); at += size_t(batch_size)) {
        size_t end = std::min(order.size(), at + size_t(batch_size));
        batches.emplace_back(order.begin() + long(at), order.begin() + long(end));
    }
    return batches;
}

}  // namespace cdds::data
