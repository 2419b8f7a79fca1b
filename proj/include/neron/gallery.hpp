#pragma once

// Builtin degeneration data: the Tate curve, the three mirror-quintic types,
// their -1 twists and a non-unipotent elliptic example.

#include <map>
#include <string>
#include <vector>

#include "neron/datum.hpp"
#include "neron/limit_mhs.hpp"

namespace neron::gallery {

inline HodgeFiltration filtration(std::size_t n, const std::map<int, std::vector<CVec>> &levels) {
    std::map<int, CSpace> out;
    for (const auto &[p, gens] : levels) {
        out.emplace(p, CSpace(n, gens));
    }
    return HodgeFiltration(n, std::move(out));
}

inline Cyclo imag_unit() {
    return Cyclo::zeta(CycloField::get(4));
}

// Tate curve: rank 2, N a single 2-block.
inline DegenerationDatum tate_curve() {
    DegenerationDatum d;
    d.name = "G1";
    d.monodromy = {{1, 1}, {0, 1}};
    d.polarization = {{0, 1}, {-1, 0}};
    d.hodge = filtration(2, {{0, {{0, 1}}}});
    return d;
}

// Type I: one 4-block, Hodge-Tate limit.
inline DegenerationDatum type_I() {
    DegenerationDatum d;
    d.name = "G2";
    d.monodromy = {{1, 1, 1, 1}, {0, 1, 2, 3}, {0, 0, 1, 3}, {0, 0, 0, 1}}; // exp of N e_i = i e_{i-1}
    d.polarization = {{0, 0, 0, 3}, {0, 0, -1, 0}, {0, 1, 0, 0}, {-3, 0, 0, 0}};
    d.hodge = filtration(4, {{-1, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}},
                             {0, {{0, 0, 1, 0}, {0, 0, 0, 1}}},
                             {1, {{0, 0, 0, 1}}}});
    return d;
}

// Type II_2: two 2-blocks (e0, e1), (f0, f1); basis order e0, e1, f0, f1.
inline DegenerationDatum type_II2() {
    const Cyclo i = imag_unit();
    DegenerationDatum d;
    d.name = "G3";
    d.order = 4;
    d.monodromy = {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}};
    d.polarization = {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}};
    const CVec u{0, 1, 0, i}, Nu{1, 0, i, 0}, ubar{0, 1, 0, -i};
    d.hodge = filtration(4, {{-1, {u, Nu, ubar}}, {0, {u, Nu}}, {1, {u}}});
    return d;
}

// Type II_1: one 2-block (e0, e1) plus a pure weight -1 pair (g, h).
inline DegenerationDatum type_II1() {
    const Cyclo i = imag_unit();
    DegenerationDatum d;
    d.name = "G4";
    d.order = 4;
    d.monodromy = {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    d.polarization = {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}};
    const CVec u{0, 0, 1, i}, e0{1, 0, 0, 0}, e1{0, 1, 0, 0};
    d.hodge = filtration(4, {{-1, {u, e1, e0}}, {0, {u, e1}}, {1, {u}}});
    return d;
}

inline DegenerationDatum twisted(DegenerationDatum d, const std::string &name) {
    d = twist_minus_one(d);
    d.name = name;
    return d;
}

// Elliptic curve with monodromy of order 4; F^0 is the i-eigenline.
inline DegenerationDatum elliptic_order_four() {
    const Cyclo i = imag_unit();
    DegenerationDatum d;
    d.name = "G6";
    d.order = 4;
    d.monodromy = {{0, -1}, {1, 0}};
    d.polarization = {{0, 1}, {-1, 0}};
    d.hodge = filtration(2, {{0, {{1, -i}}}});
    return d;
}

struct Entry {
    std::string name;
    std::string description;
    bool degeneration = true;
};

inline std::vector<Entry> entries() {
    return {
        {"G1", "Tate curve (rank 2, unipotent)", true},
        {"G2", "mirror quintic type I (N^3 != 0)", true},
        {"G3", "mirror quintic type II_2 (N^2 = 0, rk N = 2)", true},
        {"G4", "mirror quintic type II_1 (N^2 = 0, rk N = 1)", true},
        {"G5a", "type I twisted by -1", true},
        {"G5b", "type II_2 twisted by -1", true},
        {"G5c", "type II_1 twisted by -1", true},
        {"G6", "elliptic curve with monodromy of order 4", true},
        {"P1", "maximal ideal I0 of C[t1,t2]: dual and double dual", false},
        {"P2", "coker (t1, t1 t2): t1-torsion after pullback", false},
        {"P3", "Koszul syzygy module M' in three variables: self-duality", false},
    };
}

inline std::vector<DegenerationDatum> degenerations() {
    return {tate_curve(),
            type_I(),
            type_II2(),
            type_II1(),
            twisted(type_I(), "G5a"),
            twisted(type_II2(), "G5b"),
            twisted(type_II1(), "G5c"),
            elliptic_order_four()};
}

inline DegenerationDatum degeneration(const std::string &name) {
    for (auto &d : degenerations()) {
        if (d.name == name) {
            return d;
        }
    }
    throw error("unknown gallery entry: " + name);
}

} // namespace neron::gallery
