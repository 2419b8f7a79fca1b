#pragma once

// The blow-up chain built from the elementary divisors of E' = D(F_0 M)
// inside E = L^{>=0}/F^0, its fibers over the origin, and the full analysis.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "neron/disk_lattice.hpp"
#include "neron/limit_mhs.hpp"

namespace neron {

struct AdaptedVector {
    std::size_t cls = 0;
    int level = 0; // first level at which w lies in E
    CVec w;
    int divisor = 0; // t^divisor * (cls, level, w) is the matching basis vector of E'
};

struct AdaptedBasis {
    std::vector<AdaptedVector> v;
    std::vector<int> divisors() const {
        std::vector<int> out;
        for (const auto &x : v) {
            out.push_back(x.divisor);
        }
        return out;
    }
};

// Simultaneous basis of E and E' (both containing the common floor): per class,
// a basis adapted to the two level flags. With a seed, complements are chosen
// from random integer recombinations instead of echelon vectors.
inline AdaptedBasis adapted_basis(const LimitData &ld, const GradedLattice &E, const GradedLattice &Ep,
                                  std::optional<std::uint64_t> seed = std::nullopt) {
    require_inclusion(E, Ep);
    std::mt19937_64 rng(seed.value_or(0));
    std::uniform_int_distribution<int> coef(-3, 3);
    const Window w = E.window();
    AdaptedBasis out;
    for (std::size_t c = 0; c < ld.classes.size(); ++c) {
        for (int k = w.kmin; k <= w.kmax + 1; ++k) {
            for (int j = k; j <= w.kmax + 1; ++j) {
                const auto C = E.at(c, k).intersect(Ep.at(c, j));
                CSpace D = E.at(c, k - 1).intersect(Ep.at(c, j)) + E.at(c, k).intersect(Ep.at(c, j - 1));
                if (C.dim() == D.dim()) {
                    continue;
                }
                auto candidates = C.basis();
                if (seed) {
                    std::vector<CVec> mixed;
                    for (std::size_t r = 0; r < 3 * candidates.size(); ++r) {
                        CVec x(ld.rank(), Cyclo(0));
                        for (const auto &b : candidates) {
                            const Cyclo f(coef(rng));
                            for (std::size_t i = 0; i < x.size(); ++i) {
                                x[i] += f * b[i];
                            }
                        }
                        mixed.push_back(std::move(x));
                    }
                    mixed.insert(mixed.end(), candidates.begin(), candidates.end());
                    candidates = std::move(mixed);
                }
                for (const auto &x : candidates) {
                    if (D.contains(x)) {
                        continue;
                    }
                    out.v.push_back({c, k, x, j - k});
                    D = D + CSpace(ld.rank(), {x});
                    if (D.dim() == C.dim()) {
                        break;
                    }
                }
            }
        }
    }
    std::stable_sort(out.v.begin(), out.v.end(),
                     [](const AdaptedVector &a, const AdaptedVector &b) { return a.divisor > b.divisor; });
    return out;
}

// Checks that {v_i} generates E and {t^{a_i} v_i} generates E', modulo the floor.
inline bool verify_adapted(const LimitData &ld, const GradedLattice &E, const GradedLattice &Ep,
                           const AdaptedBasis &B) {
    if (B.v.size() != lattice_rank(E)) {
        return false;
    }
    const Window w = E.window();
    for (std::size_t c = 0; c < ld.classes.size(); ++c) {
        for (int k = w.kmin - 1; k <= w.kmax + 1; ++k) {
            CSpace a = E.chain(c).floor, b = Ep.chain(c).floor;
            for (const auto &x : B.v) {
                if (x.cls != c) {
                    continue;
                }
                if (x.level <= k) {
                    a = a + CSpace(ld.rank(), {x.w});
                }
                if (x.level + x.divisor <= k) {
                    b = b + CSpace(ld.rank(), {x.w});
                }
            }
            if (!(a == E.at(c, k)) || !(b == Ep.at(c, k))) {
                return false;
            }
        }
    }
    return true;
}

struct BlowupStep {
    int k = 0;
    std::size_t m = 0;           // #{i : a_i >= k}
    std::size_t center_codim = 0; // m + 1 inside Y_{k-1}, counting t
    std::size_t center_dim = 0;   // r - m, inside the fiber over the origin
    std::vector<std::size_t> equations; // x_i = 0 (1-based), together with t = 0
    std::vector<std::pair<std::size_t, bool>> transition; // (i, x_i^(k-1) = t * x_i^(k))

    friend bool operator==(const BlowupStep &, const BlowupStep &) = default;
};

inline std::vector<BlowupStep> blowup_steps(const std::vector<int> &divisors) {
    const std::size_t r = divisors.size();
    const int a = divisors.empty() ? 0 : *std::max_element(divisors.begin(), divisors.end());
    std::vector<BlowupStep> steps;
    for (int k = 1; k <= a; ++k) {
        BlowupStep s;
        s.k = k;
        s.m = static_cast<std::size_t>(std::count_if(divisors.begin(), divisors.end(), [k](int x) { return x >= k; }));
        s.center_codim = s.m + 1;
        s.center_dim = r - s.m;
        for (std::size_t i = 1; i <= r; ++i) {
            if (i <= s.m) {
                s.equations.push_back(i);
            }
            s.transition.emplace_back(i, i <= s.m);
        }
        steps.push_back(std::move(s));
    }
    return steps;
}

// Levels at which E/tE lives: (class, level) with E strictly growing.
inline std::vector<std::pair<std::size_t, int>> fiber_levels(const GradedLattice &E) {
    std::vector<std::pair<std::size_t, int>> out;
    const Window w = E.window();
    for (std::size_t c = 0; c < E.classes(); ++c) {
        for (int k = w.kmin; k <= w.kmax; ++k) {
            if (E.at(c, k).dim() != E.at(c, k - 1).dim()) {
                out.emplace_back(c, k);
            }
        }
    }
    return out;
}

// Image in E/tE of the k-th intermediate lattice E_k = E' + t^k E, as the
// list of its levelwise preimages.
inline std::vector<CSpace> fiber_image(const GradedLattice &E, const GradedLattice &Ep, int k) {
    const auto Ek = Ep + E.shifted(k);
    std::vector<CSpace> out;
    for (auto [c, l] : fiber_levels(E)) {
        out.push_back(Ek.at(c, l) + E.at(c, l - 1));
    }
    return out;
}

// span{ v_i : a_i = 0 } in E/tE, same representation as fiber_image.
inline std::vector<CSpace> image_fiber(const LimitData &ld, const GradedLattice &E, const AdaptedBasis &B) {
    std::vector<CSpace> out;
    for (auto [c, l] : fiber_levels(E)) {
        CSpace s = E.at(c, l - 1);
        for (const auto &x : B.v) {
            if (x.cls == c && x.level == l && x.divisor == 0) {
                s = s + CSpace(ld.rank(), {x.w});
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

inline CSpace sum_all(std::size_t n, const std::vector<CSpace> &parts) {
    CSpace acc(n);
    for (const auto &p : parts) {
        acc = acc + p;
    }
    return acc;
}

struct GgkFiber {
    CSpace space;      // preimage in H of the fiber, contains F^0
    bool informational = false; // monodromy not unipotent
};

// Image of Ker N in H / F^0, through its preimage in H.
inline GgkFiber ggk_fiber(const LimitData &ld) {
    const std::size_t n = ld.rank();
    const CSpace kerN(n, kernel(ld.NC));
    return {kerN + ld.F(0), ld.m != 1};
}

struct InvariantImageResult {
    bool fiber_matches = false; // unipotent part of the image fiber = image of H^inv
    std::size_t codim_fiber = 0;  // dim H_1 - dim E'_{0,0}
    std::size_t codim_kernel = 0; // dim H_1 / (F^0 H_1 + Ker N|H_1)
    std::size_t rank_N_F1 = 0;    // dim N(F^1 H_1)
    bool ok() const {
        return fiber_matches && codim_fiber == codim_kernel && codim_kernel == rank_N_F1;
    }
};

inline InvariantImageResult invariant_image_check(const LimitData &ld, const GradedLattice &Ep, const VanishingPart &vp) {
    InvariantImageResult r;
    const auto u = ld.unipotent_class();
    if (u == ld.classes.size()) {
        r.fiber_matches = vp.invariant.is_zero();
        return r;
    }
    const auto &H1 = ld.classes[u].space;
    const auto F0 = ld.F(0).intersect(H1);
    const CSpace kerN(ld.rank(), kernel(ld.NC));
    const auto lhs = Ep.at(u, 0);
    const auto rhs = vp.invariant + F0;
    r.fiber_matches = lhs == rhs;
    r.codim_fiber = H1.dim() - lhs.dim();
    r.codim_kernel = H1.dim() - (F0 + kerN.intersect(H1)).dim();
    r.rank_N_F1 = ld.F(1).intersect(H1).image(ld.NC).dim();
    return r;
}

enum class QuinticType { I, II1, II2, NotApplicable };

inline std::string to_string(QuinticType q) {
    switch (q) {
    case QuinticType::I:
        return "I";
    case QuinticType::II1:
        return "II_1";
    case QuinticType::II2:
        return "II_2";
    default:
        return "not-applicable";
    }
}

inline QuinticType classify_quintic(const LimitData &ld) {
    if (ld.rank() != 4) {
        return QuinticType::NotApplicable;
    }
    for (int p = -2; p <= 1; ++p) {
        if (ld.F(p).dim() - ld.F(p + 1).dim() != 1) {
            return QuinticType::NotApplicable;
        }
    }
    if (!ld.F(-3).is_full() || !ld.F(2).is_zero()) {
        return QuinticType::NotApplicable;
    }
    const auto N2 = ld.N * ld.N;
    if (!(N2 * ld.N).is_zero()) {
        return QuinticType::I;
    }
    if (N2.is_zero()) {
        const auto r = rank(ld.N);
        if (r == 2) {
            return QuinticType::II2;
        }
        if (r == 1) {
            return QuinticType::II1;
        }
    }
    return QuinticType::NotApplicable;
}

// Everything computed for one datum.
struct Analysis {
    DegenerationDatum datum;
    ValidationReport validation;
    std::optional<LimitData> data;
    VanishingPart vanishing;
    Window window;
    std::vector<std::size_t> quotient; // n_k, k = 0 .. K
    std::vector<int> divisors;
    std::map<Rational, std::size_t> grV;
    std::vector<BlowupStep> steps;
    AdaptedBasis basis;
    std::vector<CSpace> fiber;   // image fiber, one preimage per E/tE level
    bool fiber_independent = false;
    bool two_path = false;     // m_k = d_k for all k >= 1
    bool grV_identity = false; // sum over classes of Gr_V at alpha + j = d_{j+1}
    InvariantImageResult invariant_image;
    GgkFiber ggk;
    bool center_is_kernel_image = true;
    bool gamma_regular = false;
    std::vector<Integer> component_group;
    QuinticType classification = QuinticType::NotApplicable;
    std::vector<std::string> notes;

    int a() const {
        return divisors.empty() ? 0 : *std::max_element(divisors.begin(), divisors.end());
    }
    std::size_t m_at(int k) const {
        return static_cast<std::size_t>(std::count_if(divisors.begin(), divisors.end(), [k](int x) { return x >= k; }));
    }
};

inline Analysis analyze(const DegenerationDatum &datum, std::optional<Window> window = std::nullopt) {
    Analysis an;
    an.datum = datum;
    an.validation = validate_datum(datum);
    if (!an.validation.ok()) {
        an.notes.push_back("validation failed; no chain computed");
        return an;
    }
    an.data = prepare(datum);
    const auto &ld = *an.data;
    an.window = window.value_or(default_window(ld));
    an.vanishing = vanishing_part(ld);
    an.component_group = component_group(datum.monodromy);
    an.classification = classify_quintic(ld);

    const auto E = zucker_lattice(ld, an.window);
    const auto F0M = compute_F0M(ld, an.window);
    const auto Ep = dual_lattice(ld, F0M);
    an.quotient = quotient_dims(E, Ep, an.window.width());
    an.divisors = elementary_divisors(E, Ep);
    std::sort(an.divisors.rbegin(), an.divisors.rend());
    an.grV = grV_quotient_dims(ld, E, Ep);
    an.steps = blowup_steps(an.divisors);
    an.basis = adapted_basis(ld, E, Ep);
    an.fiber = image_fiber(ld, E, an.basis);

    an.two_path = an.a() == an.vanishing.a;
    for (int k = 1; k <= std::max(an.a(), std::max(ld.top(), 0)) + 1; ++k) {
        an.two_path = an.two_path && an.m_at(k) == an.vanishing.d_at(k);
    }
    an.grV_identity = true;
    for (int j = 0; j <= std::max(ld.top(), 0) + 1; ++j) {
        std::size_t total = 0;
        for (const auto &[deg, dim] : an.grV) {
            if (deg >= j && deg < j + 1) {
                total += dim;
            }
        }
        an.grV_identity = an.grV_identity && total == an.vanishing.d_at(j + 1);
    }
    std::size_t mass = 0;
    for (const auto &[deg, dim] : an.grV) {
        mass += dim;
    }
    std::size_t dsum = 0;
    for (int k = 1; k <= std::max(ld.top(), 0); ++k) {
        dsum += an.vanishing.d_at(k);
    }
    an.grV_identity = an.grV_identity && mass == dsum;

    an.fiber_independent = true;
    for (int k = 1; k <= an.a(); ++k) {
        an.fiber_independent = an.fiber_independent && fiber_image(E, Ep, k) == an.fiber;
    }
    an.invariant_image = invariant_image_check(ld, Ep, an.vanishing);
    an.ggk = ggk_fiber(ld);
    if (!an.steps.empty()) {
        an.center_is_kernel_image = sum_all(ld.rank(), an.fiber) == an.ggk.space;
        if (!an.center_is_kernel_image) {
            an.notes.push_back("center != image of Ker N");
        }
    }
    an.gamma_regular = gamma_regularity_check(ld, an.vanishing.invariant_lattice);
    if (an.a() == 0) {
        an.notes.push_back("J^Sch,0 = Zucker extension");
        an.notes.push_back("identity component coincides with the Clemens extension");
    }
    if (an.ggk.informational) {
        an.notes.push_back("monodromy not unipotent: Ker N image reported for information only");
    }
    return an;
}

} // namespace neron
