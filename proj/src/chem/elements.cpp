#include "chem/elements.hpp"

#include <stdexcept>
#include <unordered_map>

namespace cdds::chem {

static const ElementInfo kElements[] = {
    {0, "*", 0.0},
    {1, "H", 1.008},     {2, "He", 4.003},    {3, "Li", 6.94},     {4, "Be", 9.012},
    {5, "B", 10.81},     {6, "C", 12.011},    {7, "N", 14.007},    {8, "O", 15.999},
    {9, "F", 18.998},    {10, "Ne", 20.180},  {11, "Na", 22.990},  {12, "Mg", 24.305},
    {13, "Al", 26.982},  {14, "Si", 28.085},  {15, "P", 30.974},   {16, "S", 32.06},
    {17, "Cl", 35.45},   {18, "Ar", 39.948},  {19, "K", 39.098},   {20, "Ca", 40.078},
    {21, "Sc", 44.956},  {22, "Ti", 47.867},  {23, "V", 50.942},   {24, "Cr", 51.996},
    {25, "Mn", 54.938},  {26, "Fe", 55.845},  {27, "Co", 58.933},  {28, "Ni", 58.693},
    {29, "Cu", 63.546},  {30, "Zn", 65.38},   {31, "Ga", 69.723},  {32, "Ge", 72.630},
    {33, "As", 74.922},  {34, "Se", 78.971},  {35, "Br", 79.904},  {36, "Kr", 83.798},
    {37, "Rb", 85.468},  {38, "Sr", 87.62},   {39, "Y", 88.906},   {40, "Zr", 91.224},
    {41, "Nb", 92.906},  {42, "Mo", 95.95},   {43, "Tc", 97.0},    {44, "Ru", 101.07},
    {45, "Rh", 102.906}, {46, "Pd", 106.42},  {47, "Ag", 107.868}, {48, "Cd", 112.414},
    {49, "In", 114.818}, {50, "Sn", 118.710}, {51, "Sb", 121.760}, {52, "Te", 127.60},
    {53, "I", 126.904},  {54, "Xe", 131.293}, {55, "Cs", 132.905}, {56, "Ba", 137.327},
    {57, "La", 138.905}, {58, "Ce", 140.116}, {59, "Pr", 140.908}, {60, "Nd", 144.242},
    {61, "Pm", 145.0},   {62, "Sm", 150.36},  {63, "Eu", 151.964}, {64, "Gd", 157.25},
    {65, "Tb", 158.925}, {66, "Dy", 162.500}, {67, "Ho", 164.930}, {68, "Er", 167.259},
    {69, "Tm", 168.934}, {70, "Yb", 173.045}, {71, "Lu", 174.967}, {72, "Hf", 178.49},
    {73, "Ta", 180.948}, {74, "W", 183.84},   {75, "Re", 186.207}, {76, "Os", 190.23},
    {77, "Ir", 192.217}, {78, "Pt", 195.084}, {79, "Au", 196.967}, {80, "Hg", 200.592},
    {81, "Tl", 204.38},  {82, "Pb", 207.2},   {83, "Bi", 208.980}, {84, "Po", 209.0},
    {85, "At", 210.0},   {86, "Rn", 222.0},   {87, "Fr", 223.0},   {88, "Ra", 226.0},
    {89, "Ac", 227.0},   {90, "Th", 232.038}, {91, "Pa", 231.036}, {92, "U", 238.029},
    {93, "Np", 237.0},   {94, "Pu", 244.0},   {95, "Am", 243.0},   {96, "Cm", 247.0},
    {97, "Bk", 247.0},   {98, "Cf", 251.0},   {99, "Es", 252.0},   {100, "Fm", 257.0},
    {101, "Md", 258.0},  {102, "No", 259.0},  {103, "Lr", 262.0},  {104, "Rf", 267.0},
    {105, "Db", 268.0},  {106, "Sg", 269.0},  {107, "Bh", 270.0},  {108, "Hs", 269.0},
    {109, "Mt", 278.0},  {110, "Ds", 281.0},  {111, "Rg", 282.0},  {112, "Cn", 285.0},
    {113, "Nh", 286.0},  {114, "Fl", 289.0},  {115, "Mc", 290.0},  {116, "Lv", 293.0},
    {117, "Ts", 294.0},  {118, "Og", 294.0},
};

const ElementInfo& element(int z) {
    if (z < 1 || z > 118) throw std::out_of_range("element: atomic number out of range");
    return kElements[z];
}

int atomic_number_of(std::string_view symbol) {
    static const std::unordered_map<std::string, int> table = [] {
        std::unordered_map<std::string, int> m;
        for (int z = 1; z <= 118; ++z) m[kElements[z].symbol] = z;
        return m;
    }();
    auto it = table.find(std::string(symbol));
    return it == table.end() ? 0 : it->second;
}

const std::vector<int>& organic_valences(int z) {
    static const std::vector<int> none;
    static const std::vector<int> v_b = {3};
    static const std::vector<int> v_c = {4};
    static const std::vector<int> v_n = {3, 5};
    static const std::vector<int> v_o = {2};
    static const std::vector<int> v_p = {3, 5};
    static const std::vector<int> v_s = {2, 4, 6};
    static const std::vector<int> v_halogen = {1};
    switch (z) {
        case 5: return v_b;
        case 6: return v_c;
        case 7: return v_n;
        case 8: return v_o;
        case 15: return v_p;
        case 16: return v_s;
        case 9:
        case 17:
        case 35:
        case 53: return v_halogen;
        default: return none;
    }
}

bool is_organic_subset(int z) { return !organic_valences(z).empty(); }

int max_allowed_valence(int z) {
    const auto& v = organic_valences(z);
    return v.empty() ? 8 : v.back();
}

}  // namespace cdds::chem
