#pragma once

// Graded model of lattices over the disk. A section (c, k, v) stands for
// t^k times the twisted flat extension of v in the eigenvalue class c, so it
// has V-degree k + alpha_c. Every lattice we need is graded, hence is a chain
// of subspaces of H_lambda per class, indexed by the level k.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "neron/errors.hpp"
#include "neron/limit_mhs.hpp"

namespace neron {

struct Window {
    int kmin = -1, kmax = 1;
    int width() const {
        return kmax - kmin;
    }
    friend bool operator==(const Window &, const Window &) = default;
};

inline Window default_window(const LimitData &ld) {
    const int K = ld.datum.window > 0 ? ld.datum.window : std::max(ld.top(), 0) + 2;
    return {-K, K};
}

inline Window widened(Window w, int factor = 2) {
    return {w.kmin * factor, w.kmax * factor};
}

struct Section {
    std::size_t cls = 0;
    int level = 0;
    CVec v;
};
using Element = std::vector<Section>;

// Per-class chain of subspaces; constant extension outside the window.
struct ClassChain {
    CSpace floor, ceiling;
    int kmin = 0;
    std::vector<CSpace> levels;

    const CSpace &at(int k) const {
        if (k < kmin) {
            return floor;
        }
        if (k >= kmin + static_cast<int>(levels.size())) {
            return ceiling;
        }
        return levels[static_cast<std::size_t>(k - kmin)];
    }
    bool stabilized() const {
        return levels.empty() || (levels.front() == floor && levels.back() == ceiling);
    }
    friend bool operator==(const ClassChain &a, const ClassChain &b) {
        if (!(a.floor == b.floor) || !(a.ceiling == b.ceiling)) {
            return false;
        }
        const int lo = std::min(a.kmin, b.kmin);
        const int hi = std::max(a.kmin + static_cast<int>(a.levels.size()), b.kmin + static_cast<int>(b.levels.size()));
        for (int k = lo; k < hi; ++k) {
            if (!(a.at(k) == b.at(k))) {
                return false;
            }
        }
        return true;
    }
};

class GradedLattice {
  public:
    GradedLattice() = default;
    GradedLattice(Window w, std::vector<ClassChain> chains) : window_(w), chains_(std::move(chains)) {}

    Window window() const noexcept {
        return window_;
    }
    std::size_t classes() const noexcept {
        return chains_.size();
    }
    const ClassChain &chain(std::size_t c) const {
        return chains_.at(c);
    }
    const CSpace &at(std::size_t c, int k) const {
        return chains_.at(c).at(k);
    }

    bool stabilized() const {
        return std::all_of(chains_.begin(), chains_.end(), [](const ClassChain &c) { return c.stabilized(); });
    }
    const GradedLattice &require_window(const std::string &what) const {
        if (!stabilized()) {
            throw window_too_small(what + " touches the truncation window [" + std::to_string(window_.kmin) + ", " +
                                   std::to_string(window_.kmax) + "]");
        }
        return *this;
    }

    bool contains(const GradedLattice &o) const {
        for (std::size_t c = 0; c < chains_.size(); ++c) {
            const auto &a = chains_[c], &b = o.chains_[c];
            if (!a.floor.contains(b.floor) || !a.ceiling.contains(b.ceiling)) {
                return false;
            }
            for (int k = std::min(window_.kmin, o.window_.kmin); k <= std::max(window_.kmax, o.window_.kmax); ++k) {
                if (!a.at(k).contains(b.at(k))) {
                    return false;
                }
            }
        }
        return true;
    }
    bool contains(const Section &s) const {
        return at(s.cls, s.level).contains(s.v);
    }

    friend GradedLattice operator+(const GradedLattice &a, const GradedLattice &b) {
        return combine(a, b, [](const CSpace &x, const CSpace &y) { return x + y; });
    }
    GradedLattice intersect(const GradedLattice &b) const {
        return combine(*this, b, [](const CSpace &x, const CSpace &y) { return x.intersect(y); });
    }
    // t^j * L
    GradedLattice shifted(int j) const {
        std::vector<ClassChain> out;
        for (const auto &ch : chains_) {
            ClassChain n = ch;
            n.kmin += j;
            out.push_back(std::move(n));
        }
        return GradedLattice(window_, std::move(out)).rewindowed(window_);
    }
    GradedLattice rewindowed(Window w) const {
        std::vector<ClassChain> out;
        for (const auto &ch : chains_) {
            ClassChain n{ch.floor, ch.ceiling, w.kmin, {}};
            for (int k = w.kmin; k <= w.kmax; ++k) {
                n.levels.push_back(ch.at(k));
            }
            out.push_back(std::move(n));
        }
        return GradedLattice(w, std::move(out));
    }

    friend bool operator==(const GradedLattice &a, const GradedLattice &b) {
        return a.chains_ == b.chains_;
    }

  private:
    template <class Op> static GradedLattice combine(const GradedLattice &a, const GradedLattice &b, Op op) {
        if (a.chains_.size() != b.chains_.size()) {
            throw std::invalid_argument("lattices live in different modules");
        }
        const Window w{std::min(a.window_.kmin, b.window_.kmin), std::max(a.window_.kmax, b.window_.kmax)};
        std::vector<ClassChain> out;
        for (std::size_t c = 0; c < a.chains_.size(); ++c) {
            const auto &x = a.chains_[c], &y = b.chains_[c];
            ClassChain n{op(x.floor, y.floor), op(x.ceiling, y.ceiling), w.kmin, {}};
            for (int k = w.kmin; k <= w.kmax; ++k) {
                n.levels.push_back(op(x.at(k), y.at(k)));
            }
            out.push_back(std::move(n));
        }
        return GradedLattice(w, std::move(out));
    }

    Window window_;
    std::vector<ClassChain> chains_;
};

// ---- sections and the D-module operations ----

inline Section t_times(const Section &s) {
    return {s.cls, s.level + 1, s.v};
}

// d/dt (c, k, v) = (c, k-1, (k + alpha) v - N v)
inline Section d_t(const LimitData &ld, const Section &s) {
    const Cyclo gamma = Cyclo(Rational(s.level) + ld.classes[s.cls].alpha);
    const CVec Nv = ld.NC * s.v;
    CVec out(s.v.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = gamma * s.v[i] - Nv[i];
    }
    return {s.cls, s.level - 1, std::move(out)};
}
inline Element d_t(const LimitData &ld, const Element &x) {
    Element out;
    for (const auto &s : x) {
        out.push_back(d_t(ld, s));
    }
    return out;
}

// Truncated Laurent polynomial in t: exponent -> coefficient, zero terms dropped.
using PairingValue = std::map<long, Cyclo>;

inline void accumulate(PairingValue &acc, long e, const Cyclo &c) {
    if (c.is_zero()) {
        return;
    }
    auto [it, fresh] = acc.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) {
            acc.erase(it);
        }
    }
}

inline PairingValue pairing(const LimitData &ld, const Element &x, const Element &y) {
    PairingValue out;
    for (const auto &a : x) {
        for (const auto &b : y) {
            const Rational s = ld.classes[a.cls].alpha + ld.classes[b.cls].alpha;
            if (s != 0 && s != 1) {
                continue;
            }
            const long e = a.level + b.level + s.get_num().get_si();
            accumulate(out, e, bilinear(ld.S, a.v, b.v));
        }
    }
    return out;
}

inline PairingValue derivative(const PairingValue &p) {
    PairingValue out;
    for (const auto &[e, c] : p) {
        accumulate(out, e - 1, Cyclo(Rational(e)) * c);
    }
    return out;
}

inline PairingValue operator+(PairingValue a, const PairingValue &b) {
    for (const auto &[e, c] : b) {
        accumulate(a, e, c);
    }
    return a;
}

inline bool is_regular(const PairingValue &p) {
    return p.empty() || p.begin()->first >= 0;
}

// ---- lattice constructors ----

// O-span of the given sections: level k holds the vectors of generators at level <= k.
inline GradedLattice generated(const LimitData &ld, Window w, const std::vector<Section> &gens,
                               const std::string &what = "lattice") {
    const std::size_t n = ld.rank();
    std::vector<ClassChain> chains;
    for (std::size_t c = 0; c < ld.classes.size(); ++c) {
        ClassChain ch{CSpace(n), CSpace(n), w.kmin, {}};
        std::vector<CVec> all;
        for (const auto &g : gens) {
            if (g.cls == c) {
                if (g.level < w.kmin || g.level > w.kmax) {
                    throw window_too_small(what + " has a generator at level " + std::to_string(g.level) +
                                           " outside the window");
                }
                all.push_back(g.v);
            }
        }
        ch.ceiling = CSpace(n, all);
        for (int k = w.kmin; k <= w.kmax; ++k) {
            std::vector<CVec> below;
            for (const auto &g : gens) {
                if (g.cls == c && g.level <= k) {
                    below.push_back(g.v);
                }
            }
            ch.levels.emplace_back(n, below);
        }
        chains.push_back(std::move(ch));
    }
    GradedLattice L(w, std::move(chains));
    L.require_window(what);
    return L;
}

// Lowest level k with k + alpha >= beta (or > beta when strict).
inline int first_level(const Rational &alpha, const Rational &beta, bool strict) {
    Rational diff = beta - alpha;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), diff.get_num_mpz_t(), diff.get_den_mpz_t());
    Integer k = fl;
    if (Rational(k) < diff || (strict && Rational(k) == diff)) {
        k += 1;
    }
    return static_cast<int>(k.get_si());
}

inline std::vector<Section> hodge_generators(const LimitData &ld, int p, const Rational &beta, bool strict) {
    std::vector<Section> gens;
    const auto Fp = ld.F(p);
    for (std::size_t c = 0; c < ld.classes.size(); ++c) {
        const int k = first_level(ld.classes[c].alpha, beta, strict);
        for (const auto &v : Fp.intersect(ld.classes[c].space).basis()) {
            gens.push_back({c, k, v});
        }
    }
    return gens;
}

// L^{>=beta} (L^{>beta} when strict).
inline GradedLattice deligne_lattice(const LimitData &ld, const Rational &beta, Window w, bool strict = false) {
    std::vector<Section> gens;
    for (std::size_t c = 0; c < ld.classes.size(); ++c) {
        const int k = first_level(ld.classes[c].alpha, beta, strict);
        for (const auto &v : ld.classes[c].space.basis()) {
            gens.push_back({c, k, v});
        }
    }
    return generated(ld, w, gens, "Deligne lattice");
}

// F^p L^{>=beta} (F^p L^{>beta} when strict).
inline GradedLattice hodge_sublattice(const LimitData &ld, int p, const Rational &beta, Window w, bool strict = false) {
    return generated(ld, w, hodge_generators(ld, p, beta, strict), "Hodge sublattice");
}

// Generators of F_p M: d_t^i applied to F^{i-p} L^{>-1}, for i = 0 .. top + p.
inline std::vector<Section> hodge_module_generators(const LimitData &ld, int p) {
    std::vector<Section> gens;
    for (int i = 0; i <= ld.top() + p; ++i) {
        for (auto s : hodge_generators(ld, i - p, Rational(-1), true)) {
            for (int j = 0; j < i; ++j) {
                s = d_t(ld, s);
            }
            if (!is_zero_vec(s.v)) {
                gens.push_back(std::move(s));
            }
        }
    }
    return gens;
}

inline GradedLattice hodge_module_piece(const LimitData &ld, int p, Window w) {
    return generated(ld, w, hodge_module_generators(ld, p), "F_" + std::to_string(p) + "M");
}

inline GradedLattice compute_F0M(const LimitData &ld, Window w) {
    return hodge_module_piece(ld, 0, w);
}

// E = L^{>=0} / F^0 L^{>=0}, stored through its preimage: H_lambda at
// V-degree >= 0 and F^0 H_lambda below.
inline GradedLattice zucker_lattice(const LimitData &ld, Window w) {
    const auto F0 = ld.F(0);
    std::vector<ClassChain> chains;
    for (std::size_t c = 0; c < ld.classes.size(); ++c) {
        const auto &H = ld.classes[c].space;
        const auto low = F0.intersect(H);
        ClassChain ch{low, H, w.kmin, {}};
        const int k0 = first_level(ld.classes[c].alpha, Rational(0), false);
        for (int k = w.kmin; k <= w.kmax; ++k) {
            ch.levels.push_back(k >= k0 ? H : low);
        }
        chains.push_back(std::move(ch));
    }
    GradedLattice L(w, std::move(chains));
    L.require_window("E");
    return L;
}

// Level in the dual class pairing against V-degree -(k + alpha) - 1.
inline int dual_level(const LimitData &ld, std::size_t c, int k) {
    return ld.classes[c].numerator == 0 ? -k - 1 : -k - 2;
}

// D(X) = { xi : <xi, X> regular }, levelwise an S-annihilator.
inline GradedLattice dual_lattice(const LimitData &ld, const GradedLattice &X) {
    const Window w = X.window();
    std::vector<ClassChain> chains;
    for (std::size_t c = 0; c < ld.classes.size(); ++c) {
        const auto &H = ld.classes[c].space;
        const std::size_t dc = ld.dual_class(c);
        const auto &src = X.chain(dc);
        ClassChain ch{src.ceiling.annihilator(ld.S).intersect(H), src.floor.annihilator(ld.S).intersect(H), w.kmin, {}};
        for (int k = w.kmin; k <= w.kmax; ++k) {
            ch.levels.push_back(src.at(dual_level(ld, c, k)).annihilator(ld.S).intersect(H));
        }
        chains.push_back(std::move(ch));
    }
    GradedLattice D(w, std::move(chains));
    D.require_window("dual lattice");
    return D;
}

// ---- quotients ----

inline void require_inclusion(const GradedLattice &E, const GradedLattice &Ep) {
    for (std::size_t c = 0; c < E.classes(); ++c) {
        if (!(E.chain(c).floor == Ep.chain(c).floor) || !(E.chain(c).ceiling == Ep.chain(c).ceiling)) {
            throw inclusion_violated("lattices differ in rank or in the common floor");
        }
    }
    if (!E.contains(Ep)) {
        throw inclusion_violated("E' is not contained in E");
    }
}

// Rank over the disk ring of a quotient-style lattice (ceiling modulo floor).
inline std::size_t lattice_rank(const GradedLattice &E) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < E.classes(); ++c) {
        r += E.chain(c).ceiling.dim() - E.chain(c).floor.dim();
    }
    return r;
}

// n_k = dim E / (E' + t^k E), k = 0 .. K
inline std::vector<std::size_t> quotient_dims(const GradedLattice &E, const GradedLattice &Ep, int K) {
    require_inclusion(E, Ep);
    const Window w = E.window();
    std::vector<std::size_t> out;
    for (int k = 0; k <= K; ++k) {
        std::size_t total = 0;
        for (std::size_t c = 0; c < E.classes(); ++c) {
            for (int l = w.kmin - k - 1; l <= w.kmax + 1; ++l) {
                const auto &El = E.at(c, l);
                total += El.dim() - (Ep.at(c, l) + E.at(c, l - k)).dim();
            }
        }
        out.push_back(total);
    }
    return out;
}

inline std::vector<int> elementary_divisors(const GradedLattice &E, const GradedLattice &Ep) {
    const int K = E.window().width() + 2;
    const auto n = quotient_dims(E, Ep, K);
    if (n[static_cast<std::size_t>(K)] != n[static_cast<std::size_t>(K - 1)]) {
        throw window_too_small("quotient E/E' not exhausted inside the window");
    }
    const std::size_t r = lattice_rank(E);
    std::vector<int> a(r, 0);
    for (int k = 1; k <= K; ++k) {
        const std::size_t mk = n[static_cast<std::size_t>(k)] - n[static_cast<std::size_t>(k - 1)];
        for (std::size_t i = 0; i < mk && i < r; ++i) {
            ++a[i];
        }
    }
    return a;
}

// V-degree alpha + j  ->  dim Gr_V(E/E'), nonzero entries only.
inline std::map<Rational, std::size_t> grV_quotient_dims(const LimitData &ld, const GradedLattice &E,
                                                         const GradedLattice &Ep) {
    require_inclusion(E, Ep);
    std::map<Rational, std::size_t> out;
    const Window w = E.window();
    for (std::size_t c = 0; c < E.classes(); ++c) {
        for (int k = w.kmin; k <= w.kmax; ++k) {
            const std::size_t d = E.at(c, k).dim() - Ep.at(c, k).dim();
            if (d > 0) {
                out[Rational(k) + ld.classes[c].alpha] += d;
            }
        }
    }
    return out;
}

// ---- identities ----

// F_0 M at V-degree k + alpha, evaluated from the closed formula
// sum_i prod_{s=1..i} (gamma + s - N) (F^i cap H_lambda), without t-closure.
inline CSpace F0M_level_direct(const LimitData &ld, std::size_t c, int k) {
    const std::size_t n = ld.rank();
    const auto &cls = ld.classes[c];
    const int k0 = first_level(cls.alpha, Rational(-1), true);
    const Rational gamma = Rational(k) + cls.alpha;
    CSpace acc(n);
    CMatrix P = CMatrix::identity(n);
    for (int i = 0; i <= ld.top(); ++i) {
        if (i > 0) {
            P = P * (Cyclo(gamma + Rational(i)) * CMatrix::identity(n) - ld.NC);
        }
        if (k + i >= k0) {
            acc = acc + ld.F(i).intersect(cls.space).image(P);
        }
    }
    return acc;
}

// d_t : F_0 M at V-degree gamma  ->  F_1 M at gamma - 1 is bijective for gamma < 0.
inline bool dt_bijective_below_zero(const LimitData &ld, const GradedLattice &F0M, const GradedLattice &F1M) {
    const std::size_t n = ld.rank();
    const Window w = F0M.window();
    for (std::size_t c = 0; c < ld.classes.size(); ++c) {
        for (int k = w.kmin + 1; k <= w.kmax; ++k) {
            const Rational gamma = Rational(k) + ld.classes[c].alpha;
            if (gamma >= 0) {
                continue;
            }
            const CMatrix D = Cyclo(gamma) * CMatrix::identity(n) - ld.NC;
            const auto &src = F0M.at(c, k);
            const auto img = src.image(D);
            if (img.dim() != src.dim() || !(img == F1M.at(c, k - 1))) {
                return false;
            }
        }
    }
    return true;
}

// Flat integral invariant sections pair regularly with every generator of F_0 M.
inline bool gamma_regularity_check(const LimitData &ld, const std::vector<Vec<Integer>> &invariant_lattice) {
    const auto u0 = ld.unipotent_class();
    if (u0 == ld.classes.size() || invariant_lattice.empty()) {
        return true;
    }
    const auto gens = hodge_module_generators(ld, 0);
    for (const auto &u : invariant_lattice) {
        CVec uc;
        for (const auto &x : u) {
            uc.emplace_back(x);
        }
        const Element flat{{u0, 0, uc}};
        for (const auto &g : gens) {
            if (!is_regular(pairing(ld, flat, Element{g}))) {
                return false;
            }
        }
    }
    return true;
}

// Pulling back by t = s^m sends the generator of L^{>=0} in class alpha to
// s^{m alpha}; that exponent must be a non-negative integer, positive exactly
// when alpha != 0.
inline bool base_change_levels_ok(const LimitData &ld) {
    for (const auto &cls : ld.classes) {
        const int k = first_level(cls.alpha, Rational(0), false);
        const Rational lvl = Rational(ld.m) * (Rational(k) + cls.alpha);
        if (lvl.get_den() != 1 || lvl < 0 || ((lvl >= 1) != (cls.alpha != 0))) {
            return false;
        }
    }
    return true;
}

} // namespace neron
