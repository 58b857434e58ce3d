#include "chem/scaffold.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "chem/elements.hpp"

namespace cdds::chem {

namespace {

struct SimpleGraph {
    // vertex label: (element, aromatic, charge); edge label: order code
    std::vector<std::tuple<int, int, int>> vlabel;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, order code)
};

SimpleGraph to_simple(const MolecularGraph& g) {
    SimpleGraph s;
    s.vlabel.reserve(g.atoms.size());
    for (const Atom& a : g.atoms)
        s.vlabel.push_back({a.element, a.is_aromatic ? 1 : 0, a.formal_charge});
    s.adj.resize(g.atoms.size());
    for (const Bond& b : g.bonds) {
        s.adj[size_t(b.a)].push_back({b.b, int(b.order)});
        s.adj[size_t(b.b)].push_back({b.a, int(b.order)});
    }
    return s;
}

// Iterative color refinement; returns stable colors in [0, n).
std::vector<int> refine(const SimpleGraph& g, std::vector<int> colors) {
    size_t n = g.vlabel.size();
    for (;;) {
        std::vector<std::pair<std::vector<int>, int>> sigs(n);
        for (size_t v = 0; v < n; ++v) {
            std::vector<int> sig;
            sig.push_back(colors[v]);
            std::vector<std::pair<int, int>> nb;
            for (auto [u, oc] : g.adj[v]) nb.push_back({oc, colors[size_t(u)]});
            std::sort(nb.begin(), nb.end());
            for (auto [oc, cu] : nb) {
                sig.push_back(oc);
                sig.push_back(cu);
            }
            sigs[v] = {std::move(sig), int(v)};
        }
        std::map<std::vector<int>, int> order;
        for (const auto& [sig, v] : sigs) order.emplace(sig, 0);
        int next = 0;
        for (auto& [sig, id] : order) id = next++;
        std::vector<int> fresh(n);
        for (size_t v = 0; v < n; ++v) fresh[v] = order[sigs[v].first];
        if (fresh == colors) return colors;
        colors = std::move(fresh);
    }
}

bool discrete(const std::vector<int>& colors) {
    std::vector<int> seen(colors.size(), 0);
    for (int c : colors) {
        if (seen[size_t(c)]) return false;
        seen[size_t(c)] = 1;
    }
    return true;
}

std::string certificate_from(const SimpleGraph& g, const std::vector<int>& colors) {
    size_t n = g.vlabel.size();
    std::vector<int> pos(n);  // color -> original vertex
    for (size_t v = 0; v < n; ++v) pos[size_t(colors[v])] = int(v);
    std::string out = "V";
    for (size_t c = 0; c < n; ++c) {
        auto [el, ar, ch] = g.vlabel[size_t(pos[c])];
        out += std::to_string(el) + (ar ? "a" : "A") + std::to_string(ch) + ";";
    }
    std::vector<std::tuple<int, int, int>> edges;
    for (size_t v = 0; v < n; ++v)
        for (auto [u, oc] : g.adj[v])
            if (colors[v] < colors[size_t(u)]) edges.push_back({colors[v], colors[size_t(u)], oc});
    std::sort(edges.begin(), edges.end());
    out += "E";
    for (auto [a, b, oc] : edges)
        out += std::to_string(a) + "-" + std::to_string(b) + ":" + std::to_string(oc) + ";";
    return out;
}

// Refinement with individualization on ties; lexicographically smallest
// certificate over the explored branch set. Exponential only on highly
// symmetric graphs, which drug-sized scaffolds are not.
std::string canonize(const SimpleGraph& g, std::vector<int> colors) {
    colors = refine(g, std::move(colors));
    if (discrete(colors)) return certificate_from(g, colors);

    // Smallest color value held by more than one vertex.
    int target_color = -1;
    std::vector<int> count(colors.size(), 0);
    for (int c : colors) ++count[size_t(c)];
    for (size_t c = 0; c < count.size(); ++c)
        if (count[c] > 1) {
            target_color = int(c);
            break;
        }
    std::string best;
    for (size_t v = 0; v < colors.size(); ++v) {
        if (colors[v] != target_color) continue;
        std::vector<int> branched = colors;
        for (size_t u = 0; u < colors.size(); ++u)
            if (branched[u] > target_color || (int(u) != int(v) && branched[u] == target_color))
                ++branched[u];
        // v keeps target_color as a singleton; everything >= shifted up by one
        std::string cert = canonize(g, branched);
        if (best.empty() || cert < best) best = cert;
    }
    return best;
}

std::vector<int> initial_colors(const SimpleGraph& g) {
    std::map<std::tuple<int, int, int>, int> order;
    for (const auto& l : g.vlabel) order.emplace(l, 0);
    int next = 0;
    for (auto& [l, id] : order) id = next++;
    std::vector<int> colors(g.vlabel.size());
    for (size_t v = 0; v < g.vlabel.size(); ++v) colors[v] = order[g.vlabel[v]];
    return colors;
}

}  // namespace

std::string canonical_certificate(const MolecularGraph& g) {
    if (g.atoms.empty()) return "";
    SimpleGraph s = to_simple(g);
    return canonize(s, initial_colors(s));
}

std::string scaffold_key(const MolecularGraph& g) {
    size_t n = g.atoms.size();
    std::vector<bool> removed(n, false);
    std::vector<int> degree(n);
    for (size_t v = 0; v < n; ++v) degree[v] = int(g.incident[v].size());

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t v = 0; v < n; ++v) {
            if (removed[v] || degree[v] > 1) continue;
            removed[v] = true;
            changed = true;
            for (int bi : g.incident[v]) {
                int u = g.other_end(bi, int(v));
                if (!removed[size_t(u)]) --degree[size_t(u)];
            }
        }
    }

    MolecularGraph scaffold;
    std::vector<int> remap(n, -1);
    for (size_t v = 0; v < n; ++v)
        if (!removed[v]) {
            remap[v] = int(scaffold.atoms.size());
            scaffold.atoms.push_back(g.atoms[v]);
        }
    if (scaffold.atoms.empty()) return "";
    for (const Bond& b : g.bonds)
        if (!removed[size_t(b.a)] && !removed[size_t(b.b)]) {
            Bond nb = b;
            nb.a = remap[size_t(b.a)];
            nb.b = remap[size_t(b.b)];
            scaffold.bonds.push_back(nb);
        }
    return canonical_certificate(scaffold);
}

}  // namespace cdds::chem
