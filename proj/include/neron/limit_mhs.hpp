#pragma once

// Spectral data of a degeneration datum: Jordan decomposition, eigenvalue
// classes, the monodromy weight filtration, validation of the limit mixed
// Hodge structure, and the invariant/vanishing split.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "neron/datum.hpp"
#include "neron/integer_matrix.hpp"

namespace neron {

struct JordanChevalley {
    int m = 1;
    Matrix<Rational> Ts, Tu, N;
};

inline JordanChevalley jordan_chevalley(const Matrix<Integer> &T, int bound = 0) {
    JordanChevalley jc;
    jc.m = quasi_unipotent_order(T, bound);
    const auto Tq = convert<Rational>(T);
    jc.N = Rational(1, static_cast<unsigned long>(jc.m)) * nilpotent_log(Tq.pow(static_cast<unsigned>(jc.m)));
    jc.Tu = nilpotent_exp(jc.N);
    jc.Ts = Tq * inverse(jc.Tu);
    return jc;
}

// Block sizes of a nilpotent matrix, largest first.
template <class T> std::vector<std::size_t> jordan_type(const Matrix<T> &N) {
    const std::size_t n = N.rows();
    std::vector<std::size_t> ranks{n};
    Matrix<T> P = Matrix<T>::identity(n);
    while (ranks.back() > 0) {
        P = P * N;
        ranks.push_back(rank(P));
        if (ranks.size() > n + 1) {
            throw not_unipotent("matrix is not nilpotent");
        }
    }
    // blocks of size >= k: ranks[k-1] - ranks[k]
    std::vector<std::size_t> out;
    for (std::size_t k = ranks.size() - 1; k >= 1; --k) {
        const std::size_t at_least = ranks[k - 1] - ranks[k];
        const std::size_t at_least_next = k < ranks.size() - 1 ? ranks[k] - ranks[k + 1] : 0;
        for (std::size_t c = 0; c < at_least - at_least_next; ++c) {
            out.push_back(k);
        }
    }
    return out;
}

// Increasing filtration; zero below the stored range and everything above it.
struct WeightFiltration {
    int center = -1;
    std::size_t ambient = 0;
    std::map<int, CSpace> steps;

    CSpace at(int k) const {
        if (steps.empty() || k > steps.rbegin()->first) {
            return CSpace::full(ambient);
        }
        if (k < steps.begin()->first) {
            return CSpace(ambient);
        }
        return steps.at(k);
    }
    std::size_t graded_dim(int k) const {
        return at(k).dim() - at(k - 1).dim();
    }
};

inline WeightFiltration monodromy_weight_filtration(const CMatrix &N, int center = -1) {
    const std::size_t n = N.rows();
    const int bound = static_cast<int>(n);
    std::vector<CMatrix> powers{CMatrix::identity(n)};
    for (std::size_t k = 1; k <= 2 * n + 2; ++k) {
        powers.push_back(powers.back() * N);
    }
    auto kernel_of_power = [&](int e) {
        if (e <= 0) {
            return CSpace(n);
        }
        const auto &P = powers[static_cast<std::size_t>(std::min<int>(e, static_cast<int>(n)))];
        return CSpace(n, kernel(P));
    };
    WeightFiltration W;
    W.center = center;
    W.ambient = n;
    // Centered at 0: W_k = sum_{j >= max(0,-k)} N^j Ker N^{k+2j+1}.
    for (int k = -bound - 1; k <= bound; ++k) {
        CSpace acc(n);
        for (int j = std::max(0, -k); j <= bound; ++j) {
            acc = acc + kernel_of_power(k + 2 * j + 1).image(powers[static_cast<std::size_t>(j)]);
        }
        W.steps.emplace(k + center, acc);
    }
    return W;
}

struct EigenClass {
    int numerator = 0; // alpha = numerator / m
    Rational alpha;
    Cyclo lambda; // exp(2 pi i alpha)
    CSpace space;
};

// A datum with its field order normalized and all derived spectral data.
struct LimitData {
    DegenerationDatum datum; // order = lcm(declared order, m), filtration lifted
    int m = 1;
    Matrix<Rational> Ts, Tu, N;
    CMatrix T, S, TsC, NC;
    std::vector<EigenClass> classes;
    std::vector<std::size_t> jordan;
    WeightFiltration W;

    const CycloField &field() const {
        return CycloField::get(datum.order);
    }
    std::size_t rank() const {
        return datum.rank();
    }
    CSpace F(int p) const {
        return datum.hodge.at(p);
    }
    int top() const {
        return datum.hodge.top();
    }
    // Index of the class with alpha' = frac(-alpha).
    std::size_t dual_class(std::size_t c) const {
        const int want = (m - classes[c].numerator) % m;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (classes[i].numerator == want) {
                return i;
            }
        }
        throw invalid_datum("eigenvalue class without dual partner");
    }
    std::size_t unipotent_class() const {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (classes[i].numerator == 0) {
                return i;
            }
        }
        return classes.size();
    }
    CSpace unipotent_part() const {
        const auto c = unipotent_class();
        return c == classes.size() ? CSpace(rank()) : classes[c].space;
    }
};

inline LimitData prepare(const DegenerationDatum &input) {
    input.check_shape();
    LimitData d;
    const auto jc = jordan_chevalley(input.monodromy);
    d.m = jc.m;
    d.Ts = jc.Ts;
    d.Tu = jc.Tu;
    d.N = jc.N;
    d.datum = input;
    d.datum.order = lcm_int(input.order, jc.m);
    const auto &field = CycloField::get(d.datum.order);
    d.datum.hodge = input.hodge.lifted(field);
    d.T = convert<Cyclo>(input.monodromy);
    d.S = convert<Cyclo>(input.polarization);
    d.TsC = convert<Cyclo>(jc.Ts);
    d.NC = convert<Cyclo>(jc.N);
    const std::size_t n = input.rank();
    for (int j = 0; j < jc.m; ++j) {
        const Cyclo lambda = Cyclo::zeta(field, static_cast<long>(j) * (d.datum.order / jc.m));
        CSpace space(n, kernel(d.TsC - lambda * CMatrix::identity(n)));
        if (space.dim() > 0) {
            d.classes.push_back({j, ratio(j, jc.m), lambda, space});
        }
    }
    d.jordan = jordan_type(jc.N);
    d.W = monodromy_weight_filtration(d.NC, -1);
    return d;
}

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<Check> checks;
    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.passed; });
    }
    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto &c : checks) {
            if (!c.passed) {
                out.push_back(c.name);
            }
        }
        return out;
    }
};

namespace detail {

inline bool pairing_vanishes(const CMatrix &S, const CSpace &A, const CSpace &B) {
    for (const auto &x : A.basis()) {
        for (const auto &y : B.basis()) {
            if (!bilinear(S, x, y).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

} // namespace detail

inline ValidationReport validate_datum(const DegenerationDatum &datum) {
    ValidationReport rep;
    auto add = [&rep](std::string name, bool ok, std::string detail = {}) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    datum.check_shape();
    const auto &T = datum.monodromy;
    const auto &S = datum.polarization;
    const std::size_t n = datum.rank();

    const Integer dT = det_int(T);
    add("T integral invertible", dT == 1 || dT == -1, "det T = " + dT.get_str());
    add("skew-symmetry", S.transpose() == -S);
    const Integer dS = det_int(S);
    add("nondegeneracy", dS != 0, "det S = " + dS.get_str());
    add("T-invariance", T.transpose() * S * T == S);

    LimitData d;
    try {
        d = prepare(datum);
        add("quasi-unipotence", true, "m = " + std::to_string(d.m));
    } catch (const error &e) {
        add("quasi-unipotence", false, e.what());
        return rep;
    }
    const auto Sq = convert<Rational>(S);
    add("N infinitesimal invariance", (d.N.transpose() * Sq + Sq * d.N).is_zero());

    const auto &levels = d.datum.hodge.levels();
    const int lo = levels.empty() ? 0 : levels.begin()->first;
    const int hi = levels.empty() ? 0 : levels.rbegin()->first;

    bool nested = true;
    for (int p = lo; p < hi; ++p) {
        nested = nested && d.F(p).contains(d.F(p + 1));
    }
    add("filtration nested", nested);

    bool stable = true, transversal = true, isotropic = true;
    for (int p = lo - 1; p <= hi + 1; ++p) {
        const auto Fp = d.F(p);
        stable = stable && Fp.image(d.TsC) == Fp;
        transversal = transversal && d.F(p - 1).contains(Fp.image(d.NC));
        isotropic = isotropic && detail::pairing_vanishes(d.S, Fp, d.F(-p));
    }
    add("T_s F = F", stable);
    add("Griffiths transversality", transversal, "N F^p in F^(p-1)");
    add("isotropy", isotropic, "S(F^p, F^q) = 0 for p + q >= 0");

    // Opposedness on each graded piece of W: F^p Gr and conj F^(k+1-p) Gr are complementary.
    bool opposed = true;
    std::string where;
    for (int k = -static_cast<int>(n) - 2; k <= static_cast<int>(n); ++k) {
        const auto Wk = d.W.at(k), Wk1 = d.W.at(k - 1);
        if (Wk.dim() == Wk1.dim()) {
            continue;
        }
        for (int p = lo - 1; p <= hi + 1 && opposed; ++p) {
            const auto A = d.F(p).intersect(Wk) + Wk1;
            const auto B = d.F(k + 1 - p).conj().intersect(Wk) + Wk1;
            const bool span = (A + B).dim() == Wk.dim();
            const bool direct = A.dim() + B.dim() == Wk.dim() + Wk1.dim();
            if (!span || !direct) {
                opposed = false;
                where = "weight " + std::to_string(k) + ", p = " + std::to_string(p);
            }
        }
    }
    add("MHS opposedness", opposed, where);
    return rep;
}

struct VanishingPart {
    std::vector<Vec<Integer>> invariant_lattice; // saturated basis of Ker(T - I)
    CSpace invariant;
    std::size_t van_dim = 0;
    std::vector<std::size_t> d; // d[k] = dim F^k H^van, k = 0 .. top
    int a = 0;

    std::size_t d_at(int k) const {
        if (k < 0) {
            throw std::out_of_range("d_k is defined for k >= 0");
        }
        return static_cast<std::size_t>(k) < d.size() ? d[static_cast<std::size_t>(k)] : 0;
    }
};

inline VanishingPart vanishing_part(const LimitData &ld) {
    VanishingPart vp;
    const std::size_t n = ld.rank();
    const auto Tq = convert<Rational>(ld.datum.monodromy);
    Subspace<Rational> inv(n, kernel(Tq - Matrix<Rational>::identity(n)));
    vp.invariant_lattice = saturate(inv);
    std::vector<CVec> gens;
    for (const auto &v : vp.invariant_lattice) {
        CVec c;
        for (const auto &x : v) {
            c.emplace_back(x);
        }
        gens.push_back(std::move(c));
    }
    vp.invariant = CSpace(n, gens);
    vp.van_dim = n - vp.invariant.dim();
    for (int p = 0; p <= std::max(ld.top(), 0); ++p) {
        vp.d.push_back((ld.F(p) + vp.invariant).dim() - vp.invariant.dim());
    }
    for (int p = 1; p < static_cast<int>(vp.d.size()); ++p) {
        if (vp.d[static_cast<std::size_t>(p)] > 0) {
            vp.a = p;
        }
    }
    return vp;
}

inline std::vector<Integer> component_group(const Matrix<Integer> &T) {
    return torsion_invariants(T - Matrix<Integer>::identity(T.rows()));
}

inline DegenerationDatum twist_minus_one(const DegenerationDatum &d) {
    DegenerationDatum out = d;
    out.monodromy = -d.monodromy;
    out.name = d.name + "(-1)";
    if (d.name.size() > 4 && d.name.ends_with("(-1)")) {
        out.name = d.name.substr(0, d.name.size() - 4);
    }
    return out;
}

inline DegenerationDatum unipotent_base_change(const DegenerationDatum &d) {
    const int m = quasi_unipotent_order(d.monodromy);
    DegenerationDatum out = d;
    out.monodromy = d.monodromy.pow(static_cast<unsigned>(m));
    if (m > 1) {
        out.order = lcm_int(d.order, m);
        out.hodge = d.hodge.lifted(CycloField::get(out.order));
        out.name = d.name + "^" + std::to_string(m);
    }
    return out;
}

} // namespace neron
