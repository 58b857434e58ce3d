#include "run/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "chem/elements.hpp"
#include "util/rng.hpp"

namespace cdds::run {

namespace {

struct Point {
    double x = 0, y = 0;
};

// Fruchterman-Reingold with a fixed iteration count; initial positions come
// from a stream seeded by the SMILES string.
std::vector<Point> layout(const chem::MolecularGraph& mol) {
    size_t n = mol.atoms.size();
    std::vector<Point> pos(n);
    auto stream = rng::named_stream(rng::fnv1a(mol.smiles), "layout");
    for (size_t i = 0; i < n; ++i) {
        double angle = 2.0 * M_PI * double(i) / double(n);
        pos[i].x = std::cos(angle) + 0.05 * (stream.next_double() - 0.5);
        pos[i].y = std::sin(angle) + 0.05 * (stream.next_double() - 0.5);
    }
    if (n <= 1) return pos;

    const double k = std::sqrt(4.0 / double(n));
    const int iters = 250;
    std::vector<Point> disp(n);
    for (int it = 0; it < iters; ++it) {
        double temp = 0.12 * (1.0 - double(it) / double(iters)) + 1e-3;
        for (auto& d : disp) d = {0, 0};
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                double dx = pos[i].x - pos[j].x, dy = pos[i].y - pos[j].y;
                double d2 = dx * dx + dy * dy + 1e-9;
                double f = k * k / d2;
                disp[i].x += dx * f;
                disp[i].y += dy * f;
                disp[j].x -= dx * f;
                disp[j].y -= dy * f;
            }
        for (const chem::Bond& b : mol.bonds) {
            double dx = pos[size_t(b.a)].x - pos[size_t(b.b)].x;
            double dy = pos[size_t(b.a)].y - pos[size_t(b.b)].y;
            double d = std::sqrt(dx * dx + dy * dy) + 1e-9;
            double f = d / k * 0.5;
            disp[size_t(b.a)].x -= dx / d * f * d;
            disp[size_t(b.a)].y -= dy / d * f * d;
            disp[size_t(b.b)].x += dx / d * f * d;
            disp[size_t(b.b)].y += dy / d * f * d;
        }
        for (size_t i = 0; i < n; ++i) {
            double len = std::sqrt(disp[i].x * disp[i].x + disp[i].y * disp[i].y) + 1e-9;
            double lim = std::min(len, temp);
            pos[i].x += disp[i].x / len * lim;
            pos[i].y += disp[i].y / len * lim;
        }
    }
    return pos;
}

// Per-molecule shade in [0,1].
std::vector<double> normalize(const std::vector<double>& imp) {
    double lo = *std::min_element(imp.begin(), imp.end());
    double hi = *std::max_element(imp.begin(), imp.end());
    std::vector<double> out(imp.size(), 0.5);
    if (hi > lo)
        for (size_t i = 0; i < imp.size(); ++i) out[i] = (imp[i] - lo) / (hi - lo);
    return out;
}

}  // namespace

void write_explanation_dot(const chem::MolecularGraph& mol, const std::vector<double>& importance,
                           double threshold, const std::string& path) {
    if (importance.size() != mol.atoms.size())
        throw std::invalid_argument("explanation: importance length != atom count");
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    auto shade = normalize(importance);
    char buf[256];
    f << "// atom shading normalized per molecule; outlined = importance >= threshold\n";
    f << "graph explanation {\n  node [style=filled, fontname=\"Helvetica\"];\n";
    for (size_t i = 0; i < mol.atoms.size(); ++i) {
        // HSV wheel: white (low) to saturated red (high)
        std::snprintf(buf, sizeof buf,
                      "  a%zu [label=\"%s\", fillcolor=\"0.000 %.3f 1.000\"%s];\n", i,
                      chem::element(mol.atoms[i].element).symbol, 0.85 * shade[i],
                      importance[i] >= threshold ? ", color=\"green\", penwidth=3" : "");
        f << buf;
    }
    for (const chem::Bond& b : mol.bonds) {
        const char* style = b.order == chem::BondOrder::aromatic ? " [style=dashed]" : "";
        std::snprintf(buf, sizeof buf, "  a%d -- a%d%s;\n", b.a, b.b, style);
        f << buf;
    }
    f << "}\n";
}

void write_explanation_svg(const chem::MolecularGraph& mol, const std::vector<double>& importance,
                           double threshold, const std::string& path) {
    if (importance.size() != mol.atoms.size())
        throw std::invalid_argument("explanation: importance length != atom count");
    auto pos = layout(mol);
    double xmin = 1e9, xmax = -1e9, ymin = 1e9, ymax = -1e9;
    for (const auto& p : pos) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double margin = 40.0, scale = 160.0;
    auto X = [&](double x) { return margin + (x - xmin) * scale; };
    auto Y = [&](double y) { return margin + (y - ymin) * scale; };
    int width = int(X(xmax) + margin), height = int(Y(ymax) + margin);

    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    auto shade = normalize(importance);
    char buf[512];
    f << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    f << "<!-- atom shading normalized per molecule; dashed outline = importance >= threshold "
         "-->\n";
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\">\n",
                  width, height);
    f << buf;
    for (const chem::Bond& b : mol.bonds) {
        double w = b.order == chem::BondOrder::double_bond  ? 3.5
                   : b.order == chem::BondOrder::triple     ? 5.0
                                                            : 2.0;
        const char* dash = b.order == chem::BondOrder::aromatic ? " stroke-dasharray=\"5,3\"" : "";
        std::snprintf(buf, sizeof buf,
                      "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                      "stroke=\"#555555\" stroke-width=\"%.1f\"%s/>\n",
                      X(pos[size_t(b.a)].x), Y(pos[size_t(b.a)].y), X(pos[size_t(b.b)].x),
                      Y(pos[size_t(b.b)].y), w, dash);
        f << buf;
    }
    for (size_t i = 0; i < mol.atoms.size(); ++i) {
        int red = 255;
        int gb = int(std::lround(255.0 * (1.0 - 0.8 * shade[i])));
        std::snprintf(buf, sizeof buf,
                      "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"14\" fill=\"rgb(%d,%d,%d)\" "
                      "stroke=\"#222222\"/>\n",
                      X(pos[i].x), Y(pos[i].y), red, gb, gb);
        f << buf;
        if (importance[i] >= threshold) {
            std::snprintf(buf, sizeof buf,
                          "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"19\" fill=\"none\" "
                          "stroke=\"#2ca02c\" stroke-width=\"2.5\" stroke-dasharray=\"4,3\"/>\n",
                          X(pos[i].x), Y(pos[i].y));
            f << buf;
        }
        std::snprintf(buf, sizeof buf,
                      "  <text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" "
                      "font-family=\"Helvetica\" font-size=\"12\">%s</text>\n",
                      X(pos[i].x), Y(pos[i].y) + 4.0, chem::element(mol.atoms[i].element).symbol);
        f << buf;
    }
    f << "</svg>\n";
}

}  // namespace cdds::run
