#include "chem/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>

#include "chem/elements.hpp"
#include "chem/fingerprint.hpp"
#include "util/rng.hpp"

namespace cdds::chem {

const char* parse_error_kind_name(ParseErrorKind k) {
    switch (k) {
        case ParseErrorKind::EmptyInput: return "EmptyInput";
        case ParseErrorKind::UnsupportedToken: return "UnsupportedToken";
        case ParseErrorKind::UnclosedRing: return "UnclosedRing";
        case ParseErrorKind::ValenceViolation: return "ValenceViolation";
    }
    return "ParseError";
}

namespace {

enum class Direction : uint8_t { none = 0, up, down };  // '/' and '\'

// Bond symbol as written; resolved to a final order after ring perception.
struct PendingBond {
    bool explicit_symbol = false;
    BondOrder order = BondOrder::single;
    Direction dir = Direction::none;
};

struct RawBond {
    int a = -1, b = -1;
    bool explicit_symbol = false;
    BondOrder order = BondOrder::single;
    Direction dir = Direction::none;  // relative to traversal a -> b
    bool in_ring = false;
};

struct RingSlot {
    int atom = -1;
    PendingBond bond;
    size_t pos = 0;
};

struct Parser {
    const std::string& s;
    size_t i = 0;

    std::vector<Atom> atoms;
    std::vector<bool> from_bracket;
    std::vector<RawBond> bonds;
    std::map<int, RingSlot> open_rings;

    explicit Parser(const std::string& str) : s(str) {}

    [[noreturn]] void fail(ParseErrorKind kind, const std::string& msg, size_t pos) {
        throw ParseError(kind, std::string(parse_error_kind_name(kind)) + ": " + msg +
                                   " at position " + std::to_string(pos),
                         pos);
    }

    bool eof() const { return i >= s.size(); }
    char peek() const { return s[i]; }

    int read_digits(int max_digits) {
        int v = 0, n = 0;
        while (!eof() && n < max_digits && std::isdigit((unsigned char)peek())) {
            v = v * 10 + (peek() - '0');
            ++i;
            ++n;
        }
        return n == 0 ? -1 : v;
    }

    int add_atom(const Atom& a, bool bracket) {
        atoms.push_back(a);
        from_bracket.push_back(bracket);
        return int(atoms.size()) - 1;
    }

    void add_bond(int a, int b, const PendingBond& pb, size_t pos) {
        if (a == b) fail(ParseErrorKind::UnsupportedToken, "self bond", pos);
        for (const RawBond& rb : bonds)
            if ((rb.a == a && rb.b == b) || (rb.a == b && rb.b == a))
                fail(ParseErrorKind::UnsupportedToken, "duplicate bond between atoms", pos);
        RawBond rb;
        rb.a = a;
        rb.b = b;
        rb.explicit_symbol = pb.explicit_symbol;
        rb.order = pb.order;
        rb.dir = pb.dir;
        bonds.push_back(rb);
    }

    PendingBond merge_ring_bonds(const PendingBond& open, const PendingBond& close, size_t pos) {
        if (open.explicit_symbol && close.explicit_symbol) {
            if (open.order != close.order || open.dir != close.dir)
                fail(ParseErrorKind::UnsupportedToken, "conflicting ring-closure bond symbols", pos);
            return open;
        }
        return open.explicit_symbol ? open : close;
    }

    Atom parse_bracket_atom() {
        size_t start = i;
        ++i;  // consume '['
        Atom a;
        read_digits(3);  // isotope label: accepted, not stored (mass stays standard)

        if (eof()) fail(ParseErrorKind::UnsupportedToken, "unterminated bracket atom", start);
        bool aromatic = false;
        std::string sym;
        if (std::islower((unsigned char)peek())) {
            aromatic = true;
            // Aromatic bracket symbols: single letters plus se/as.
            if (i + 1 < s.size() && (s.compare(i, 2, "se") == 0 || s.compare(i, 2, "as") == 0)) {
                sym = s.substr(i, 2);
                sym[0] = char(std::toupper((unsigned char)sym[0]));
                i += 2;
            } else if (std::string("bcnops").find(peek()) != std::string::npos) {
                sym = std::string(1, char(std::toupper((unsigned char)peek())));
                ++i;
            } else {
                fail(ParseErrorKind::UnsupportedToken,
                     std::string("unknown aromatic symbol '") + peek() + "'", i);
            }
        } else {
            if (!std::isupper((unsigned char)peek()))
                fail(ParseErrorKind::UnsupportedToken, "expected element symbol in bracket", i);
            sym += peek();
            ++i;
            if (!eof() && std::islower((unsigned char)peek()) && peek() != 'b' && peek() != 'c' &&
                peek() != 'n' && peek() != 'o' && peek() != 'p' && peek() != 's') {
                // Two-letter symbol; lowercase organic letters after an uppercase one
                // are only consumed if the pair is a real element (e.g. Sc vs S + c).
                sym += peek();
                ++i;
            } else if (!eof() && std::islower((unsigned char)peek())) {
                std::string two = sym + peek();
                if (atomic_number_of(two) != 0) {
                    sym = two;
                    ++i;
                }
            }
        }
        int z = atomic_number_of(sym);
        if (z == 0)
            fail(ParseErrorKind::UnsupportedToken, "unknown element '" + sym + "'", start);
        a.element = z;
        a.is_aromatic = aromatic;
        a.mass = element(z).mass;

        while (!eof() && peek() != ']') {
            char c = peek();
            if (c == '@') {
                ++i;
                if (!eof() && peek() == '@') {
                    a.chirality = Chirality::cw;
                    ++i;
                } else {
                    a.chirality = Chirality::ccw;
                }
            } else if (c == 'H') {
                ++i;
                int n = read_digits(2);
                a.explicit_h = n < 0 ? 1 : n;
            } else if (c == '+' || c == '-') {
                int sign = c == '+' ? 1 : -1;
                int count = 0;
                while (!eof() && peek() == c) {
                    ++count;
                    ++i;
                }
                int n = read_digits(2);
                if (n >= 0) {
                    if (count != 1)
                        fail(ParseErrorKind::UnsupportedToken, "malformed charge", i);
                    count = n;
                }
                a.formal_charge = sign * count;
            } else {
                fail(ParseErrorKind::UnsupportedToken,
                     std::string("unexpected character '") + c + "' in bracket atom", i);
            }
        }
        if (eof()) fail(ParseErrorKind::UnsupportedToken, "unterminated bracket atom", start);
        ++i;  // consume ']'
        return a;
    }

    // Returns -1 when the next token is not an atom.
    int try_parse_atom() {
        char c = peek();
        if (c == '[') return add_atom(parse_bracket_atom(), true);

        auto organic = [&](std::string_view sym, bool aromatic) {
            Atom a;
            a.element = atomic_number_of(sym);
            a.is_aromatic = aromatic;
            a.mass = element(a.element).mass;
            return add_atom(a, false);
        };

        if (c == 'C' && i + 1 < s.size() && s[i + 1] == 'l') {
            i += 2;
            return organic("Cl", false);
        }
        if (c == 'B' && i + 1 < s.size() && s[i + 1] == 'r') {
            i += 2;
            return organic("Br", false);
        }
        switch (c) {
            case 'B': case 'C': case 'N': case 'O': case 'P': case 'S': case 'F': case 'I':
                ++i;
                return organic(std::string_view(&c, 1), false);
            case 'b': case 'c': case 'n': case 'o': case 'p': case 's': {
                ++i;
                char up = char(std::toupper((unsigned char)c));
                return organic(std::string_view(&up, 1), true);
            }
            default:
                return -1;
        }
    }

    void run() {
        std::vector<int> branch_stack;
        int prev = -1;
        PendingBond pending;

        while (!eof()) {
            char c = peek();
            if (std::isspace((unsigned char)c)) {
                ++i;
                continue;
            }
            if (c == '(') {
                if (prev < 0)
                    fail(ParseErrorKind::UnsupportedToken, "branch before any atom", i);
                branch_stack.push_back(prev);
                ++i;
                continue;
            }
            if (c == ')') {
                if (branch_stack.empty())
                    fail(ParseErrorKind::UnsupportedToken, "unmatched ')'", i);
                prev = branch_stack.back();
                branch_stack.pop_back();
                ++i;
                continue;
            }
            if (c == '.') {
                if (pending.explicit_symbol)
                    fail(ParseErrorKind::UnsupportedToken, "bond symbol before '.'", i);
                prev = -1;
                ++i;
                continue;
            }
            if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\') {
                if (pending.explicit_symbol)
                    fail(ParseErrorKind::UnsupportedToken, "two bond symbols in a row", i);
                pending.explicit_symbol = true;
                switch (c) {
                    case '-': pending.order = BondOrder::single; break;
                    case '=': pending.order = BondOrder::double_bond; break;
                    case '#': pending.order = BondOrder::triple; break;
                    case ':': pending.order = BondOrder::aromatic; break;
                    case '/':
                        pending.order = BondOrder::single;
                        pending.dir = Direction::up;
                        break;
                    case '\\':
                        pending.order = BondOrder::single;
                        pending.dir = Direction::down;
                        break;
                }
                ++i;
                continue;
            }
            if (std::isdigit((unsigned char)c) || c == '%') {
                size_t pos = i;
                int ring;
                if (c == '%') {
                    ++i;
                    ring = read_digits(2);
                    if (ring < 0 || i - pos != 3)
                        fail(ParseErrorKind::UnsupportedToken, "'%' needs two digits", pos);
                } else {
                    ring = c - '0';
                    ++i;
                }
                if (prev < 0)
                    fail(ParseErrorKind::UnsupportedToken, "ring closure before any atom", pos);
                auto it = open_rings.find(ring);
                if (it == open_rings.end()) {
                    open_rings[ring] = RingSlot{prev, pending, pos};
                } else {
                    PendingBond merged = merge_ring_bonds(it->second.bond, pending, pos);
                    add_bond(it->second.atom, prev, merged, pos);
                    open_rings.erase(it);
                }
                pending = PendingBond{};
                continue;
            }

            size_t pos = i;
            int idx = try_parse_atom();
            if (idx < 0)
                fail(ParseErrorKind::UnsupportedToken,
                     std::string("unsupported token '") + c + "'", pos);
            if (prev >= 0) add_bond(prev, idx, pending, pos);
            else if (pending.explicit_symbol)
                fail(ParseErrorKind::UnsupportedToken, "dangling bond symbol", pos);
            pending = PendingBond{};
            prev = idx;
        }

        if (pending.explicit_symbol)
            fail(ParseErrorKind::UnsupportedToken, "trailing bond symbol", s.size());
        if (!branch_stack.empty())
            fail(ParseErrorKind::UnsupportedToken, "unclosed '('", s.size());
        if (!open_rings.empty()) {
            const auto& [digit, slot] = *open_rings.begin();
            fail(ParseErrorKind::UnclosedRing,
                 "ring bond " + std::to_string(digit) + " never closed", slot.pos);
        }
        if (atoms.empty()) fail(ParseErrorKind::EmptyInput, "no atoms", 0);
    }
};

std::vector<std::vector<int>> build_incidence(size_t n_atoms, const std::vector<RawBond>& bonds) {
    std::vector<std::vector<int>> inc(n_atoms);
    for (size_t b = 0; b < bonds.size(); ++b) {
        inc[size_t(bonds[b].a)].push_back(int(b));
        inc[size_t(bonds[b].b)].push_back(int(b));
    }
    return inc;
}

// Marks ring bonds: a bond is in a ring iff it is not a bridge.
void mark_ring_bonds(size_t n_atoms, std::vector<RawBond>& bonds) {
    auto inc = build_incidence(n_atoms, bonds);
    std::vector<int> disc(n_atoms, -1), low(n_atoms, 0);
    int timer = 0;

    struct Frame {
        int v;
        int parent_bond;
        size_t next = 0;
    };
    for (size_t root = 0; root < n_atoms; ++root) {
        if (disc[root] >= 0) continue;
        std::vector<Frame> stack{{int(root), -1}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < inc[size_t(f.v)].size()) {
                int bi = inc[size_t(f.v)][f.next++];
                if (bi == f.parent_bond) continue;
                RawBond& rb = bonds[size_t(bi)];
                int u = rb.a == f.v ? rb.b : rb.a;
                if (disc[u] < 0) {
                    disc[u] = low[u] = timer++;
                    stack.push_back(Frame{u, bi});
                } else {
                    low[f.v] = std::min(low[f.v], disc[u]);
                    rb.in_ring = true;  // back edge
                }
            } else {
                int v = f.v;
                int pb = f.parent_bond;
                stack.pop_back();
                if (pb >= 0) {
                    const RawBond& rb = bonds[size_t(pb)];
                    int parent = rb.a == v ? rb.b : rb.a;
                    low[parent] = std::min(low[parent], low[v]);
                    if (low[v] <= disc[parent]) bonds[size_t(pb)].in_ring = true;
                }
            }
        }
    }
}

int pi_contribution(const Atom& a, bool has_exocyclic_double) {
    if (has_exocyclic_double) return 0;
    switch (a.element) {
        case 5: return 0;                               // B
        case 6: return a.formal_charge == -1 ? 2 : 1;   // C
        case 7:
        case 15:                                        // N, P
            return (a.degree + a.explicit_h == 3 && a.formal_charge <= 0) ? 2 : 1;
        case 8:
        case 16:
        case 34:
        case 52: return 2;                              // O, S, Se, Te
        default: return 1;
    }
}

void check_aromatic_rings(const MolecularGraph& g) {
    size_t n = g.atoms.size();
    // Subgraph of aromatic bonds.
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, bond idx)
    for (size_t bi = 0; bi < g.bonds.size(); ++bi) {
        const Bond& b = g.bonds[bi];
        if (b.order != BondOrder::aromatic) continue;
        if (!g.atoms[size_t(b.a)].is_aromatic || !g.atoms[size_t(b.b)].is_aromatic)
            throw ParseError(ParseErrorKind::ValenceViolation,
                             "ValenceViolation: aromatic bond between non-aromatic atoms");
        if (!b.is_in_ring)
            throw ParseError(ParseErrorKind::ValenceViolation,
                             "ValenceViolation: aromatic bond outside any ring");
        adj[size_t(b.a)].push_back({b.b, int(bi)});
        adj[size_t(b.b)].push_back({b.a, int(bi)});
    }
    for (size_t v = 0; v < n; ++v)
        if (g.atoms[v].is_aromatic && adj[v].empty())
            throw ParseError(ParseErrorKind::ValenceViolation,
                             "ValenceViolation: aromatic atom has no aromatic ring bond");

    std::vector<bool> exo_double(n, false);
    for (const Bond& b : g.bonds)
        if (b.order == BondOrder::double_bond) {
            if (g.atoms[size_t(b.a)].is_aromatic) exo_double[size_t(b.a)] = true;
            if (g.atoms[size_t(b.b)].is_aromatic) exo_double[size_t(b.b)] = true;
        }

    // Fundamental cycles of the aromatic subgraph via a spanning forest; each
    // non-tree edge closes exactly one cycle, checked against 4n+2.
    std::vector<int> parent(n, -2), parent_bond(n, -1), depth(n, 0);
    std::vector<std::pair<int, int>> non_tree;  // (bond idx, (a) endpoint)
    for (size_t root = 0; root < n; ++root) {
        if (parent[root] != -2 || adj[root].empty()) continue;
        parent[root] = -1;
        std::vector<int> stack{int(root)};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [u, bi] : adj[size_t(v)]) {
                if (parent[u] == -2) {
                    parent[u] = v;
                    parent_bond[u] = bi;
                    depth[u] = depth[v] + 1;
                    stack.push_back(u);
                } else if (bi != parent_bond[v] && bi != parent_bond[u] && v < u) {
                    non_tree.push_back({bi, v});
                }
            }
        }
    }
    for (auto [bi, _] : non_tree) {
        int a = g.bonds[size_t(bi)].a, b = g.bonds[size_t(bi)].b;
        std::vector<int> cycle;
        int x = a, y = b;
        while (depth[x] > depth[y]) {
            cycle.push_back(x);
            x = parent[x];
        }
        std::vector<int> tail;
        while (depth[y] > depth[x]) {
            tail.push_back(y);
            y = parent[y];
        }
        while (x != y) {
            cycle.push_back(x);
            tail.push_back(y);
            x = parent[x];
            y = parent[y];
        }
        cycle.push_back(x);
        cycle.insert(cycle.end(), tail.rbegin(), tail.rend());

        int pi = 0;
        for (int v : cycle) pi += pi_contribution(g.atoms[size_t(v)], exo_double[size_t(v)]);
        if (pi < 2 || (pi - 2) % 4 != 0)
            throw ParseError(ParseErrorKind::ValenceViolation,
                             "ValenceViolation: aromatic ring fails 4n+2 check (pi=" +
                                 std::to_string(pi) + ")");
    }
}

void assign_hybridization(MolecularGraph& g) {
    for (size_t v = 0; v < g.atoms.size(); ++v) {
        Atom& a = g.atoms[v];
        int n_double = 0, n_triple = 0;
        for (int bi : g.incident[v]) {
            BondOrder o = g.bonds[size_t(bi)].order;
            if (o == BondOrder::double_bond) ++n_double;
            if (o == BondOrder::triple) ++n_triple;
        }
        int steric = a.degree + a.explicit_h;
        // Heuristic: triple or two doubles -> sp; a double or aromaticity -> sp2;
        // otherwise sp3. Hypervalent S/P override by neighbor count.
        if ((a.element == 16 || a.element == 15) && steric >= 5)
            a.hybridization = steric >= 6 ? Hybridization::sp3d2 : Hybridization::sp3d;
        else if (n_triple >= 1 || n_double >= 2)
            a.hybridization = (a.element == 16 || a.element == 15) ? Hybridization::sp3
                                                                   : Hybridization::sp;
        else if (n_double >= 1 || a.is_aromatic)
            a.hybridization = Hybridization::sp2;
        else
            a.hybridization = Hybridization::sp3;
    }
}

void assign_conjugation(MolecularGraph& g) {
    size_t n = g.atoms.size();
    std::vector<int> multiple_bonds(n, 0);  // double/triple/aromatic count per atom
    for (const Bond& b : g.bonds)
        if (b.order != BondOrder::single) {
            ++multiple_bonds[size_t(b.a)];
            ++multiple_bonds[size_t(b.b)];
        }
    auto lone_pair_donor = [&](int v) {
        int z = g.atoms[size_t(v)].element;
        return (z == 7 || z == 8 || z == 16 || z == 15) && g.atoms[size_t(v)].formal_charge <= 0;
    };
    for (size_t bi = 0; bi < g.bonds.size(); ++bi) {
        Bond& b = g.bonds[bi];
        if (b.order == BondOrder::aromatic) {
            b.is_conjugated = true;
            continue;
        }
        int own = b.order != BondOrder::single ? 1 : 0;
        auto pi_beyond = [&](int v) { return multiple_bonds[size_t(v)] - own > 0; };
        if (b.order != BondOrder::single) {
            // A multiple bond is conjugated when the pi system extends past it.
            auto extends = [&](int v) {
                if (pi_beyond(v)) return true;
                for (int nb : g.incident[size_t(v)]) {
                    if (int(bi) == nb) continue;
                    int u = g.other_end(nb, v);
                    if (multiple_bonds[size_t(u)] > 0 || lone_pair_donor(u)) return true;
                }
                return false;
            };
            b.is_conjugated = extends(b.a) || extends(b.b);
        } else {
            bool pa = pi_beyond(b.a) || lone_pair_donor(b.a);
            bool pb = pi_beyond(b.b) || lone_pair_donor(b.b);
            b.is_conjugated = pa && pb && (pi_beyond(b.a) || pi_beyond(b.b));
        }
    }
}

void resolve_double_bond_stereo(MolecularGraph& g, const std::vector<RawBond>& raw) {
    // Directional bonds describe the relative placement of the substituent with
    // respect to the written order; normalize each to "substituent as seen from
    // the double-bond atom" and compare the two sides.
    for (size_t bi = 0; bi < g.bonds.size(); ++bi) {
        Bond& db = g.bonds[bi];
        if (db.order != BondOrder::double_bond) continue;
        auto side_dir = [&](int atom) -> Direction {
            for (int nb : g.incident[size_t(atom)]) {
                if (size_t(nb) == bi) continue;
                const RawBond& rb = raw[size_t(nb)];
                if (rb.dir == Direction::none) continue;
                bool written_from_atom = rb.a == atom;
                Direction d = rb.dir;
                if (!written_from_atom) d = d == Direction::up ? Direction::down : Direction::up;
                return d;
            }
            return Direction::none;
        };
        Direction da = side_dir(db.a);
        Direction dbb = side_dir(db.b);
        if (da == Direction::none || dbb == Direction::none) continue;
        db.stereo = da == dbb ? BondStereo::cis : BondStereo::trans;
    }
}

void fill_implicit_hydrogens(MolecularGraph& g, const std::vector<bool>& from_bracket) {
    for (size_t v = 0; v < g.atoms.size(); ++v) {
        if (from_bracket[v]) continue;  // bracket atoms carry an explicit H count
        Atom& a = g.atoms[v];
        // Aromatic bonds count 1.5 except on lone-pair donors (aromatic O/S),
        // whose ring bonds are single in every Kekule structure.
        int arom_half = (a.element == 8 || a.element == 16) ? 2 : 3;
        int half_sum = 0;  // bond orders in half units
        for (int bi : g.incident[v]) {
            switch (g.bonds[size_t(bi)].order) {
                case BondOrder::single: half_sum += 2; break;
                case BondOrder::double_bond: half_sum += 4; break;
                case BondOrder::triple: half_sum += 6; break;
                case BondOrder::aromatic: half_sum += arom_half; break;
            }
        }
        int bond_sum = half_sum / 2;  // floor, so fused aromatics get 4 not 5
        const auto& valences = organic_valences(a.element);
        int h = -1;
        for (int val : valences)
            if (val >= bond_sum) {
                h = val - bond_sum;
                break;
            }
        if (h < 0)
            throw ParseError(ParseErrorKind::ValenceViolation,
                             "ValenceViolation: bond order sum " + std::to_string(bond_sum) +
                                 " exceeds valences of " + element(a.element).symbol);
        a.explicit_h = h;
    }
}

void check_valences(const MolecularGraph& g) {
    for (size_t v = 0; v < g.atoms.size(); ++v) {
        const Atom& a = g.atoms[v];
        int sum = a.explicit_h;
        for (int bi : g.incident[v]) sum += bond_order_int(g.bonds[size_t(bi)].order);
        int allowed = max_allowed_valence(a.element) + std::abs(a.formal_charge);
        if (sum > allowed)
            throw ParseError(ParseErrorKind::ValenceViolation,
                             "ValenceViolation: valence " + std::to_string(sum) + " on " +
                                 element(a.element).symbol + " exceeds allowed " +
                                 std::to_string(allowed));
    }
}

// Keeps the largest connected component; ties broken by fingerprint hash.
void strip_fragments(MolecularGraph& g) {
    size_t n = g.atoms.size();
    std::vector<int> comp(n, -1);
    int n_comp = 0;
    for (size_t root = 0; root < n; ++root) {
        if (comp[root] >= 0) continue;
        std::vector<int> stack{int(root)};
        comp[root] = n_comp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int bi : g.incident[size_t(v)]) {
                int u = g.other_end(bi, v);
                if (comp[u] < 0) {
                    comp[u] = n_comp;
                    stack.push_back(u);
                }
            }
        }
        ++n_comp;
    }
    if (n_comp <= 1) return;

    auto component_graph = [&](int c) {
        MolecularGraph sub;
        std::vector<int> remap(n, -1);
        for (size_t v = 0; v < n; ++v)
            if (comp[v] == c) {
                remap[v] = int(sub.atoms.size());
                sub.atoms.push_back(g.atoms[v]);
            }
        for (const Bond& b : g.bonds)
            if (comp[size_t(b.a)] == c) {
                Bond nb = b;
                nb.a = remap[size_t(b.a)];
                nb.b = remap[size_t(b.b)];
                sub.bonds.push_back(nb);
            }
        sub.incident = std::vector<std::vector<int>>(sub.atoms.size());
        for (size_t bi = 0; bi < sub.bonds.size(); ++bi) {
            sub.incident[size_t(sub.bonds[bi].a)].push_back(int(bi));
            sub.incident[size_t(sub.bonds[bi].b)].push_back(int(bi));
        }
        return sub;
    };

    int best = -1;
    size_t best_size = 0;
    uint64_t best_hash = 0;
    for (int c = 0; c < n_comp; ++c) {
        MolecularGraph sub = component_graph(c);
        uint64_t h = rng::fnv1a(fingerprint_signature(sub));
        if (sub.atoms.size() > best_size || (sub.atoms.size() == best_size && h < best_hash)) {
            best = c;
            best_size = sub.atoms.size();
            best_hash = h;
        }
    }
    MolecularGraph kept = component_graph(best);
    g.atoms = std::move(kept.atoms);
    g.bonds = std::move(kept.bonds);
    g.incident = std::move(kept.incident);
    g.stripped_fragments = true;
}

}  // namespace

MolecularGraph parse_smiles(const std::string& smiles) {
    bool all_space = true;
    for (char c : smiles)
        if (!std::isspace((unsigned char)c)) all_space = false;
    if (smiles.empty() || all_space)
        throw ParseError(ParseErrorKind::EmptyInput, "EmptyInput: empty SMILES string");

    Parser p(smiles);
    p.run();

    mark_ring_bonds(p.atoms.size(), p.bonds);

    MolecularGraph g;
    g.smiles = smiles;
    g.atoms = p.atoms;
    g.bonds.reserve(p.bonds.size());
    for (const RawBond& rb : p.bonds) {
        Bond b;
        b.a = rb.a;
        b.b = rb.b;
        b.is_in_ring = rb.in_ring;
        if (rb.explicit_symbol) {
            b.order = rb.order;
        } else if (g.atoms[size_t(rb.a)].is_aromatic && g.atoms[size_t(rb.b)].is_aromatic &&
                   rb.in_ring) {
            // Default bond between two aromatic atoms is aromatic inside rings
            // (biphenyl-style linkers stay single).
            b.order = BondOrder::aromatic;
        } else {
            b.order = BondOrder::single;
        }
        g.bonds.push_back(b);
    }
    g.incident = build_incidence(g.atoms.size(), p.bonds);
    for (size_t v = 0; v < g.atoms.size(); ++v) g.atoms[v].degree = int(g.incident[v].size());

    // Every per-atom and per-bond pass runs before fragment stripping so that
    // bond indices stay aligned with the parser's raw records; validation thus
    // covers discarded salt components too.
    fill_implicit_hydrogens(g, p.from_bracket);
    check_valences(g);
    check_aromatic_rings(g);
    assign_hybridization(g);
    assign_conjugation(g);
    resolve_double_bond_stereo(g, p.bonds);

    strip_fragments(g);

    return g;
}

}  // namespace cdds::chem
