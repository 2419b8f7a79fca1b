#pragma once

// Graded modules over Q[t1..ts], handled one degree at a time with exact
// linear algebra. Every statement derived here holds up to a degree bound D.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "neron/errors.hpp"
#include "neron/matrix.hpp"
#include "neron/rational.hpp"

namespace neron::poly {

using Monomial = std::vector<int>;

class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
    Polynomial(std::size_t nvars, const Rational &c) : nvars_(nvars) {
        if (c != 0) {
            terms_[Monomial(nvars, 0)] = c;
        }
    }
    static Polynomial variable(std::size_t nvars, std::size_t i) {
        Polynomial p(nvars);
        Monomial m(nvars, 0);
        m.at(i) = 1;
        p.terms_[m] = 1;
        return p;
    }
    static Polynomial monomial(const Monomial &m, const Rational &c = 1) {
        Polynomial p(m.size());
        if (c != 0) {
            p.terms_[m] = c;
        }
        return p;
    }

    // Accepts sums of terms like "2*t1*t2^3", "-1/2 t3", "t1 t2"; variables are t1..t<nvars>.
    static Polynomial parse(const std::string &text, std::size_t nvars) {
        Polynomial out(nvars);
        std::size_t pos = 0;
        auto skip = [&] {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            }
        };
        auto fail = [&](const std::string &why) {
            throw parse_error("polynomial '" + text + "': " + why + " at position " + std::to_string(pos));
        };
        auto read_int = [&]() {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            }
            if (start == pos) {
                fail("expected digits");
            }
            return text.substr(start, pos - start);
        };
        skip();
        if (pos == text.size()) {
            fail("empty input");
        }
        bool first = true;
        while (true) {
            skip();
            if (pos == text.size()) {
                break;
            }
            Rational sign = 1;
            if (text[pos] == '+' || text[pos] == '-') {
                sign = text[pos] == '-' ? -1 : 1;
                ++pos;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            Rational coef = 1;
            Monomial m(nvars, 0);
            bool any = false;
            while (true) {
                skip();
                if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                    std::string num = read_int();
                    if (pos < text.size() && text[pos] == '/') {
                        ++pos;
                        num += "/" + read_int();
                    }
                    coef *= parse_rational(num);
                } else if (pos < text.size() && text[pos] == 't') {
                    ++pos;
                    const auto idx = std::stoul(read_int());
                    if (idx < 1 || idx > nvars) {
                        fail("variable index out of range");
                    }
                    int e = 1;
                    skip();
                    if (pos < text.size() && text[pos] == '^') {
                        ++pos;
                        skip();
                        e = std::stoi(read_int());
                    }
                    m[idx - 1] += e;
                } else {
                    fail("expected a coefficient or variable");
                }
                any = true;
                skip();
                if (pos < text.size() && text[pos] == '*') {
                    ++pos;
                    continue;
                }
                if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == 't')) {
                    continue; // juxtaposition
                }
                break;
            }
            if (!any) {
                fail("empty term");
            }
            out = out + monomial(m, sign * coef);
        }
        return out;
    }

    std::size_t nvars() const noexcept {
        return nvars_;
    }
    const std::map<Monomial, Rational> &terms() const noexcept {
        return terms_;
    }
    bool is_zero() const noexcept {
        return terms_.empty();
    }
    // Degree of a homogeneous polynomial; nullopt for zero, throws when mixed.
    std::optional<int> degree() const {
        std::optional<int> d;
        for (const auto &[m, c] : terms_) {
            int e = 0;
            for (int x : m) {
                e += x;
            }
            if (d && *d != e) {
                throw not_homogeneous("polynomial " + to_string() + " is not homogeneous");
            }
            d = e;
        }
        return d;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial &b) {
        if (a.nvars_ == 0) {
            a.nvars_ = b.nvars_;
        }
        for (const auto &[m, c] : b.terms_) {
            Rational &slot = a.terms_[m];
            slot += c;
            if (slot == 0) {
                a.terms_.erase(m);
            }
        }
        return a;
    }
    Polynomial operator-() const {
        Polynomial p = *this;
        for (auto &[m, c] : p.terms_) {
            c = -c;
        }
        return p;
    }
    friend Polynomial operator-(const Polynomial &a, const Polynomial &b) {
        return a + (-b);
    }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
        Polynomial p(std::max(a.nvars_, b.nvars_));
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) {
                Monomial m(ma.size());
                for (std::size_t i = 0; i < m.size(); ++i) {
                    m[i] = ma[i] + mb[i];
                }
                p = p + monomial(m, ca * cb);
            }
        }
        return p;
    }
    friend bool operator==(const Polynomial &a, const Polynomial &b) {
        return a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (terms_.empty()) {
            return "0";
        }
        std::string out;
        // Highest monomials first for readability.
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto &[m, c] = *it;
            const bool constant = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
            Rational mag = abs(c);
            out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
            std::string body;
            if (mag != 1 || constant) {
                body = mag.get_str();
            }
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) {
                    continue;
                }
                body += (body.empty() ? "" : "*") + std::string("t") + std::to_string(i + 1);
                if (m[i] > 1) {
                    body += "^" + std::to_string(m[i]);
                }
            }
            out += body;
        }
        return out;
    }

  private:
    std::size_t nvars_ = 0;
    std::map<Monomial, Rational> terms_;
};

using PolyVec = std::vector<Polynomial>;
using PolyMatrix = std::vector<PolyVec>; // row-major, rows x cols

// All exponent vectors of total degree d in s variables, in a fixed order.
inline std::vector<Monomial> monomials(std::size_t s, int d) {
    std::vector<Monomial> out;
    if (d < 0) {
        return out;
    }
    Monomial m(s, 0);
    auto rec = [&](auto &&self, std::size_t i, int left) -> void {
        if (i + 1 == s) {
            m[i] = left;
            out.push_back(m);
            return;
        }
        for (int e = left; e >= 0; --e) {
            m[i] = e;
            self(self, i + 1, left - e);
        }
    };
    if (s == 0) {
        if (d == 0) {
            out.push_back(m);
        }
        return out;
    }
    rec(rec, 0, d);
    return out;
}

// Free module F = sum_i R(-deg_i): basis vector i sits in degree deg_i.
struct FreeModule {
    std::size_t s = 1;
    std::vector<int> degrees;

    std::size_t rank() const {
        return degrees.size();
    }
    // Basis of F_d: pairs (component, monomial).
    std::vector<std::pair<std::size_t, Monomial>> slice(int d) const {
        std::vector<std::pair<std::size_t, Monomial>> out;
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            for (auto &m : monomials(s, d - degrees[i])) {
                out.emplace_back(i, std::move(m));
            }
        }
        return out;
    }
    std::size_t slice_dim(int d) const {
        return slice(d).size();
    }
    // Coordinates of a homogeneous element of degree d in the slice basis.
    Vec<Rational> coords(const PolyVec &v, int d) const {
        const auto basis = slice(d);
        std::map<std::pair<std::size_t, Monomial>, std::size_t> index;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            index.emplace(basis[k], k);
        }
        Vec<Rational> out(basis.size(), Rational(0));
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (const auto &[m, c] : v[i].terms()) {
                auto it = index.find({i, m});
                if (it == index.end()) {
                    throw not_homogeneous("element is not homogeneous of degree " + std::to_string(d));
                }
                out[it->second] = c;
            }
        }
        return out;
    }
    PolyVec element(const Vec<Rational> &coords, int d) const {
        const auto basis = slice(d);
        PolyVec out(degrees.size(), Polynomial(s));
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (coords[k] != 0) {
                out[basis[k].first] = out[basis[k].first] + Polynomial::monomial(basis[k].second, coords[k]);
            }
        }
        return out;
    }
};

inline PolyVec scale(const Polynomial &f, const PolyVec &v) {
    PolyVec out;
    for (const auto &x : v) {
        out.push_back(f * x);
    }
    return out;
}

// Homogeneous generators (with degrees) of a submodule of a free module.
struct Generators {
    std::vector<PolyVec> elements;
    std::vector<int> degrees;
};

// Degree-d slice of the submodule spanned by gens.
inline Subspace<Rational> span_at(const FreeModule &F, const Generators &g, int d) {
    std::vector<Vec<Rational>> rows;
    for (std::size_t j = 0; j < g.elements.size(); ++j) {
        for (const auto &m : monomials(F.s, d - g.degrees[j])) {
            rows.push_back(F.coords(scale(Polynomial::monomial(m), g.elements[j]), d));
        }
    }
    return Subspace<Rational>(F.slice_dim(d), rows);
}

// M = coker(A : sum_j R(-rel_j) -> sum_i R(-gen_i)).
struct GradedPolyModule {
    std::size_t s = 1;
    std::vector<int> gen_degrees;
    std::vector<int> rel_degrees;
    PolyMatrix A; // gen_degrees.size() rows, rel_degrees.size() columns
    int D = 6;

    FreeModule free() const {
        return {s, gen_degrees};
    }
    Generators relations() const {
        Generators g;
        for (std::size_t j = 0; j < rel_degrees.size(); ++j) {
            PolyVec col;
            for (std::size_t i = 0; i < gen_degrees.size(); ++i) {
                col.push_back(A[i][j]);
            }
            g.elements.push_back(std::move(col));
            g.degrees.push_back(rel_degrees[j]);
        }
        return g;
    }
    int min_degree() const {
        return gen_degrees.empty() ? 0 : *std::min_element(gen_degrees.begin(), gen_degrees.end());
    }
};

// Builds a graded module from a presentation. Generator degrees may be given;
// missing ones (and all relation degrees) are inferred from the entries, and
// each connected block without a given degree starts at 0.
inline GradedPolyModule make_module(std::size_t s, PolyMatrix A, std::size_t q, std::size_t p,
                                    std::optional<std::vector<int>> gen_degrees = std::nullopt, int D = 6) {
    if (A.size() != q || std::any_of(A.begin(), A.end(), [p](const PolyVec &r) { return r.size() != p; })) {
        throw parse_error("presentation matrix must be " + std::to_string(q) + "x" + std::to_string(p));
    }
    std::vector<std::optional<int>> g(q), r(p);
    if (gen_degrees) {
        if (gen_degrees->size() != q) {
            throw parse_error("wrong number of generator degrees");
        }
        for (std::size_t i = 0; i < q; ++i) {
            g[i] = (*gen_degrees)[i];
        }
    }
    std::vector<std::vector<std::optional<int>>> deg(q, std::vector<std::optional<int>>(p));
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            deg[i][j] = A[i][j].degree();
        }
    }
    // Nodes 0..q-1 are generators, q..q+p-1 relations; edge weight r_j - g_i.
    auto settle = [&](std::size_t start) {
        std::queue<std::size_t> todo;
        todo.push(start);
        while (!todo.empty()) {
            const std::size_t x = todo.front();
            todo.pop();
            for (std::size_t y = 0; y < (x < q ? p : q); ++y) {
                const std::size_t i = x < q ? x : y, j = x < q ? y : x - q;
                if (!deg[i][j]) {
                    continue;
                }
                auto &self = x < q ? g[i] : r[j];
                auto &other = x < q ? r[j] : g[i];
                const int want = x < q ? *self + *deg[i][j] : *self - *deg[i][j];
                if (!other) {
                    other = want;
                    todo.push(x < q ? q + j : i);
                } else if (*other != want) {
                    throw not_homogeneous("no grading makes the presentation homogeneous");
                }
            }
        }
    };
    for (std::size_t i = 0; i < q; ++i) {
        if (g[i]) {
            settle(i);
        }
    }
    for (std::size_t i = 0; i < q; ++i) {
        if (!g[i]) {
            g[i] = 0;
            settle(i);
        }
    }
    GradedPolyModule M;
    M.s = s;
    M.A = std::move(A);
    M.D = D;
    for (auto &x : g) {
        M.gen_degrees.push_back(*x);
    }
    for (std::size_t j = 0; j < p; ++j) {
        M.rel_degrees.push_back(r[j].value_or(0)); // zero column: any degree
    }
    return M;
}

inline std::size_t hilbert_function(const GradedPolyModule &M, int d) {
    if (d > M.D) {
        throw degree_out_of_range("degree " + std::to_string(d) + " exceeds the bound " + std::to_string(M.D));
    }
    const auto F = M.free();
    return F.slice_dim(d) - span_at(F, M.relations(), d).dim();
}

inline std::vector<std::size_t> hilbert_series(const GradedPolyModule &M, int from, int to) {
    std::vector<std::size_t> out;
    for (int d = from; d <= to; ++d) {
        out.push_back(hilbert_function(M, d));
    }
    return out;
}

// Number of minimal generators of M in each degree up to D: dim M_d / (R_1 M_{d-1}).
inline std::map<int, std::size_t> minimal_generator_degrees(const GradedPolyModule &M) {
    const auto F = M.free();
    const auto rel = M.relations();
    std::map<int, std::size_t> out;
    for (int d = M.min_degree(); d <= M.D; ++d) {
        auto lower = span_at(F, rel, d);
        std::vector<Vec<Rational>> rows = lower.basis();
        for (const auto &[i, m] : F.slice(d - 1)) {
            for (std::size_t v = 0; v < M.s; ++v) {
                PolyVec e(F.rank(), Polynomial(M.s));
                e[i] = Polynomial::monomial(m);
                rows.push_back(F.coords(scale(Polynomial::variable(M.s, v), e), d));
            }
        }
        const std::size_t k = F.slice_dim(d) - Subspace<Rational>(F.slice_dim(d), rows).dim();
        if (k > 0) {
            out[d] = k;
        }
    }
    return out;
}

// Degreewise minimal generators of a graded subspace family U_e of F_e, e in [lo, hi].
template <class SliceFn> Generators find_generators(const FreeModule &F, SliceFn slice_of, int lo, int hi) {
    Generators g;
    for (int e = lo; e <= hi; ++e) {
        const auto target = slice_of(e);
        auto have = span_at(F, g, e);
        for (const auto &v : target.basis()) {
            if (!have.contains(v)) {
                g.elements.push_back(F.element(v, e));
                g.degrees.push_back(e);
                have = span_at(F, g, e);
            }
        }
    }
    return g;
}

// Submodule generated by g, presented as coker of its syzygies found up to degree D.
inline GradedPolyModule present_submodule(const FreeModule &F, const Generators &g, int D) {
    const std::size_t k = g.elements.size();
    const FreeModule G{F.s, g.degrees};
    // Syzygies in degree e: kernel of G_e -> F_e.
    auto syz_slice = [&](int e) {
        const auto basis = G.slice(e);
        Matrix<Rational> map(F.slice_dim(e), basis.size());
        for (std::size_t c = 0; c < basis.size(); ++c) {
            const auto img =
                F.coords(scale(Polynomial::monomial(basis[c].second), g.elements[basis[c].first]), e);
            for (std::size_t r = 0; r < img.size(); ++r) {
                map(r, c) = img[r];
            }
        }
        return Subspace<Rational>(basis.size(), kernel(map));
    };
    const int lo = g.degrees.empty() ? 0 : *std::min_element(g.degrees.begin(), g.degrees.end());
    const auto syz = find_generators(G, syz_slice, lo, D + 1);
    GradedPolyModule M;
    M.s = F.s;
    M.gen_degrees = g.degrees;
    M.rel_degrees = syz.degrees;
    M.D = D;
    M.A.assign(k, PolyVec(syz.elements.size(), Polynomial(F.s)));
    for (std::size_t j = 0; j < syz.elements.size(); ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            M.A[i][j] = syz.elements[j][i];
        }
    }
    return M;
}

struct DualResult {
    GradedPolyModule module;
    Generators generators; // in the dual free module, one component per generator of M
};

// Hom(M, R): tuples (f_i) with f_i of degree gen_i + e and sum_i f_i A_ij = 0.
inline DualResult dual_module(const GradedPolyModule &M, int D) {
    FreeModule Fd{M.s, {}};
    for (int gdeg : M.gen_degrees) {
        Fd.degrees.push_back(-gdeg);
    }
    const auto rel = M.relations();
    auto hom_slice = [&](int e) {
        const auto basis = Fd.slice(e);
        // Each relation j gives a map to R_{rel_j + e}.
        std::size_t rows = 0;
        std::vector<Matrix<Rational>> blocks;
        for (std::size_t j = 0; j < rel.elements.size(); ++j) {
            const FreeModule target{M.s, {0}};
            const int td = rel.degrees[j] + e;
            Matrix<Rational> blk(target.slice_dim(td), basis.size());
            for (std::size_t c = 0; c < basis.size(); ++c) {
                const auto &[i, m] = basis[c];
                const Polynomial val = Polynomial::monomial(m) * rel.elements[j][i];
                if (val.is_zero()) {
                    continue;
                }
                const auto img = target.coords({val}, td);
                for (std::size_t r = 0; r < img.size(); ++r) {
                    blk(r, c) = img[r];
                }
            }
            rows += blk.rows();
            blocks.push_back(std::move(blk));
        }
        Matrix<Rational> all(rows, basis.size());
        std::size_t at = 0;
        for (const auto &b : blocks) {
            for (std::size_t r = 0; r < b.rows(); ++r, ++at) {
                for (std::size_t c = 0; c < b.cols(); ++c) {
                    all(at, c) = b(r, c);
                }
            }
        }
        return Subspace<Rational>(basis.size(), kernel(all));
    };
    const int lo = Fd.degrees.empty() ? 0 : *std::min_element(Fd.degrees.begin(), Fd.degrees.end());
    auto gens = find_generators(Fd, hom_slice, lo, D);
    for (int dg : gens.degrees) {
        if (dg == D && D > lo) {
            throw generators_not_found("dual module still needs new generators at the degree bound " +
                                       std::to_string(D));
        }
    }
    // Every slice must be spanned by the generators found.
    for (int e = lo; e <= D; ++e) {
        if (!(span_at(Fd, gens, e) == hom_slice(e))) {
            throw generators_not_found("generators do not span the dual in degree " + std::to_string(e));
        }
    }
    auto pres = present_submodule(Fd, gens, D);
    return {std::move(pres), std::move(gens)};
}

struct ReflexivityReport {
    int D = 6;
    std::vector<std::size_t> hilbert;        // h_M(d), d = from .. D
    std::vector<std::size_t> double_dual;    // h_{M^vv}(d)
    int from = 0;
    std::map<int, std::size_t> min_generators;
    std::vector<std::size_t> free_hilbert;   // free module on the minimal generator degrees
    bool reflexive_evidence = false;
    bool free_evidence = false;
    std::string details;
};

inline std::size_t binomial(int n, int k) {
    if (k < 0 || n < k) {
        return 0;
    }
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b.get_ui();
}

inline ReflexivityReport reflexivity_report(const GradedPolyModule &M, int D) {
    ReflexivityReport rep;
    rep.D = D;
    const auto dual = dual_module(M, D).module;
    const auto dd = dual_module(dual, D).module;
    rep.from = std::min(M.min_degree(), dd.min_degree());
    GradedPolyModule Mb = M, ddb = dd;
    Mb.D = ddb.D = D;
    rep.hilbert = hilbert_series(Mb, rep.from, D);
    rep.double_dual = hilbert_series(ddb, rep.from, D);
    rep.min_generators = minimal_generator_degrees(Mb);
    for (int d = rep.from; d <= D; ++d) {
        std::size_t h = 0;
        for (const auto &[g, k] : rep.min_generators) {
            h += k * binomial(d - g + static_cast<int>(M.s) - 1, static_cast<int>(M.s) - 1);
        }
        rep.free_hilbert.push_back(h);
    }
    rep.reflexive_evidence = rep.hilbert == rep.double_dual;
    rep.free_evidence = rep.hilbert == rep.free_hilbert;
    rep.details = "evidence up to degree " + std::to_string(D);
    return rep;
}

// Nonzero class x of M with f x = 0, searched degree by degree.
struct TorsionWitness {
    int degree = 0;
    PolyVec element;
};

inline std::optional<TorsionWitness> torsion_check(const GradedPolyModule &M, const Polynomial &f, int D) {
    const auto fdeg = f.degree();
    if (!fdeg) {
        return std::nullopt; // f = 0 kills everything; not a torsion question
    }
    const auto F = M.free();
    const auto rel = M.relations();
    for (int d = M.min_degree(); d <= D; ++d) {
        const auto basis = F.slice(d);
        if (basis.empty()) {
            continue;
        }
        const auto img = span_at(F, rel, d + *fdeg);
        const auto here = span_at(F, rel, d);
        // x = sum a_c basis_c with f x in img: kernel of [f*basis | -img].
        const std::size_t n = F.slice_dim(d + *fdeg);
        const auto imgb = img.basis();
        Matrix<Rational> sys(n, basis.size() + imgb.size());
        for (std::size_t c = 0; c < basis.size(); ++c) {
            PolyVec e(F.rank(), Polynomial(M.s));
            e[basis[c].first] = Polynomial::monomial(basis[c].second);
            const auto v = F.coords(scale(f, e), d + *fdeg);
            for (std::size_t r = 0; r < n; ++r) {
                sys(r, c) = v[r];
            }
        }
        for (std::size_t c = 0; c < imgb.size(); ++c) {
            for (std::size_t r = 0; r < n; ++r) {
                sys(r, basis.size() + c) = -imgb[c][r];
            }
        }
        for (const auto &k : kernel(sys)) {
            Vec<Rational> x(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(basis.size()));
            if (!here.contains(x)) {
                return TorsionWitness{d, F.element(x, d)};
            }
        }
    }
    return std::nullopt;
}

// Koszul complex on t1..ts: maps[k-1] is d_k : wedge^k R^s -> wedge^{k-1} R^s.
struct KoszulComplex {
    std::size_t s = 1;
    std::vector<std::vector<std::vector<std::size_t>>> bases; // bases[k] = k-subsets, sorted
    std::vector<PolyMatrix> maps;
};

inline KoszulComplex koszul_complex(std::size_t s) {
    KoszulComplex K;
    K.s = s;
    K.bases.resize(s + 1);
    for (unsigned mask = 0; mask < (1U << s); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < s; ++i) {
            if (mask & (1U << i)) {
                subset.push_back(i);
            }
        }
        K.bases[subset.size()].push_back(subset);
    }
    for (auto &b : K.bases) {
        std::sort(b.begin(), b.end());
    }
    for (std::size_t k = 1; k <= s; ++k) {
        const auto &src = K.bases[k], &dst = K.bases[k - 1];
        PolyMatrix d(dst.size(), PolyVec(src.size(), Polynomial(s)));
        for (std::size_t c = 0; c < src.size(); ++c) {
            for (std::size_t pos = 0; pos < k; ++pos) {
                auto face = src[c];
                const std::size_t var = face[pos];
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(pos));
                const auto r = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), face) - dst.begin());
                const Polynomial t = Polynomial::variable(s, var);
                d[r][c] = pos % 2 == 0 ? t : -t;
            }
        }
        K.maps.push_back(std::move(d));
    }
    return K;
}

inline PolyMatrix multiply(const PolyMatrix &a, const PolyMatrix &b, std::size_t s) {
    const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
    PolyMatrix c(n, PolyVec(m, Polynomial(s)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < inner; ++k) {
            for (std::size_t j = 0; j < m; ++j) {
                c[i][j] = c[i][j] + a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

struct KoszulCheck {
    bool squares_vanish = true;
    bool middle_exact = true;
    std::vector<std::string> failures;
};

// d o d = 0, and homology of wedge^k (1 <= k <= s-1) vanishes in internal degrees <= D.
inline KoszulCheck check_koszul(const KoszulComplex &K, int D) {
    KoszulCheck out;
    const std::size_t s = K.s;
    for (std::size_t k = 1; k < K.maps.size(); ++k) {
        const auto comp = multiply(K.maps[k - 1], K.maps[k], s);
        for (const auto &row : comp) {
            for (const auto &x : row) {
                if (!x.is_zero()) {
                    out.squares_vanish = false;
                }
            }
        }
    }
    // wedge^k generators sit in degree k.
    auto slice_map = [&](std::size_t k, int d) {
        const FreeModule src{s, std::vector<int>(K.bases[k].size(), static_cast<int>(k))};
        const FreeModule dst{s, std::vector<int>(K.bases[k - 1].size(), static_cast<int>(k) - 1)};
        const auto basis = src.slice(d);
        Matrix<Rational> m(dst.slice_dim(d), basis.size());
        for (std::size_t c = 0; c < basis.size(); ++c) {
            PolyVec col;
            for (std::size_t r = 0; r < K.bases[k - 1].size(); ++r) {
                col.push_back(Polynomial::monomial(basis[c].second) * K.maps[k - 1][r][basis[c].first]);
            }
            const auto v = dst.coords(col, d);
            for (std::size_t r = 0; r < v.size(); ++r) {
                m(r, c) = v[r];
            }
        }
        return m;
    };
    for (std::size_t k = 1; k + 1 <= s; ++k) {
        for (int d = 0; d <= D; ++d) {
            const auto dk = slice_map(k, d);
            const auto dk1 = slice_map(k + 1, d);
            const std::size_t ker = dk.cols() - rank(dk);
            const std::size_t im = rank(dk1);
            if (ker != im) {
                out.middle_exact = false;
                out.failures.push_back("H_" + std::to_string(k) + " in degree " + std::to_string(d));
            }
        }
    }
    return out;
}

// ---- the three presentations used in the gallery ----

inline Polynomial t(std::size_t s, std::size_t i) {
    return Polynomial::variable(s, i - 1);
}

// I0 = (t1, t2) in Q[t1, t2]: generators in degree 1, one Koszul relation.
inline GradedPolyModule maximal_ideal_I0(int D = 6) {
    const std::size_t s = 2;
    return make_module(s, {{-t(s, 2)}, {t(s, 1)}}, 2, 1, std::vector<int>{1, 1}, D);
}

// coker of (t1, t1 t2)^T : R -> R^2.
inline GradedPolyModule pullback_cokernel(int D = 6) {
    const std::size_t s = 2;
    return make_module(s, {{t(s, 1)}, {t(s, 1) * t(s, 2)}}, 2, 1, std::nullopt, D);
}

// M' = R^3 / R (t1, t2, t3).
inline GradedPolyModule koszul_quotient(int D = 6) {
    const std::size_t s = 3;
    return make_module(s, {{t(s, 1)}, {t(s, 2)}, {t(s, 3)}}, 3, 1, std::nullopt, D);
}

} // namespace neron::poly
