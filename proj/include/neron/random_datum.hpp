#pragma once

// Pseudo-random degeneration data with a prescribed Jordan type. The datum
// is assembled block by block from N-strings with known weights and Hodge
// levels, deformed inside the group fixing N, T_s, S and W, and finally
// conjugated by a random unimodular change of basis.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "neron/datum.hpp"
#include "neron/errors.hpp"
#include "neron/integer_matrix.hpp"

namespace neron {

struct RandomOptions {
    std::uint64_t seed = 0;
    std::size_t rank = 4;
    std::optional<std::vector<std::size_t>> jordan; // block sizes
    bool semisimple = false;                         // allow T_s != id
    bool deform = true;
    bool change_basis = true;
};

inline bool admissible_jordan_type(const std::vector<std::size_t> &sizes) {
    std::map<std::size_t, std::size_t> mult;
    for (auto l : sizes) {
        if (l == 0) {
            return false;
        }
        ++mult[l];
    }
    for (auto [l, k] : mult) {
        if (l % 2 == 1 && k % 2 == 1) {
            return false;
        }
    }
    return true;
}

// Partitions of n whose odd parts have even multiplicity, largest part first.
inline std::vector<std::vector<std::size_t>> admissible_jordan_types(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto &&self, std::size_t left, std::size_t maxpart) -> void {
        if (left == 0) {
            if (admissible_jordan_type(cur)) {
                out.push_back(cur);
            }
            return;
        }
        for (std::size_t p = std::min(left, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, left - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

namespace detail {

// (-1)^i L / binom(l-1, i) with L the lcm of the binomials: the pairing on a
// string with N e_i = i e_{i-1} that makes N skew.
inline std::vector<Integer> string_pairing(std::size_t l) {
    std::vector<Integer> binoms;
    Integer L = 1;
    for (std::size_t i = 0; i < l; ++i) {
        Integer b;
        mpz_bin_uiui(b.get_mpz_t(), l - 1, i);
        binoms.push_back(b);
        L = lcm(L, b);
    }
    std::vector<Integer> c;
    for (std::size_t i = 0; i < l; ++i) {
        Integer v = L / binoms[i];
        c.push_back(i % 2 == 0 ? v : Integer(-v));
    }
    return c;
}

struct Builder {
    std::size_t n;
    Matrix<Rational> N;
    Matrix<Integer> Ts, S;
    std::vector<int> weight;
    std::map<int, std::vector<CVec>> F; // level -> generators added at exactly that level
    int order = 1;

    explicit Builder(std::size_t n) : n(n), N(n, n), Ts(n, n), S(n, n), weight(n, 0) {}

    void string_at(std::size_t o, std::size_t l) {
        for (std::size_t i = 1; i < l; ++i) {
            N(o + i - 1, o + i) = static_cast<long>(i);
        }
        for (std::size_t i = 0; i < l; ++i) {
            weight[o + i] = 2 * static_cast<int>(i) - static_cast<int>(l);
        }
    }
    // Adds N^j v at level top - j for the whole string through v (v at the top).
    void hodge_string(CVec v, int top) {
        const auto NC = convert<Cyclo>(N);
        for (int lvl = top; !is_zero_vec(v); --lvl) {
            F[lvl].push_back(v);
            v = NC * v;
        }
    }
};

inline Matrix<Integer> rotation_of_order(int k) {
    switch (k) {
    case 1:
        return {{1, 0}, {0, 1}};
    case 2:
        return {{-1, 0}, {0, -1}};
    case 3:
        return {{0, -1}, {1, -1}};
    case 4:
        return {{0, -1}, {1, 0}};
    case 6:
        return {{1, -1}, {1, 0}};
    default:
        throw std::invalid_argument("no rotation of that order");
    }
}

} // namespace detail

inline DegenerationDatum random_datum(const RandomOptions &opt) {
    std::mt19937_64 rng(opt.seed);
    auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    std::vector<std::size_t> sizes;
    if (opt.jordan) {
        sizes = *opt.jordan;
        const std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
        if (total != opt.rank && opt.rank != 0) {
            throw infeasible("Jordan type sums to " + std::to_string(total) + ", not the rank " +
                             std::to_string(opt.rank));
        }
        if (!admissible_jordan_type(sizes)) {
            throw infeasible("odd blocks must come with even multiplicity for a weight -1 polarization");
        }
    } else {
        if (opt.rank == 0 || opt.rank % 2 == 1) {
            throw infeasible("weight -1 polarized data need even positive rank");
        }
        const auto types = admissible_jordan_types(opt.rank);
        sizes = types[static_cast<std::size_t>(pick(0, static_cast<int>(types.size()) - 1))];
    }
    std::sort(sizes.rbegin(), sizes.rend());
    const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    if (n % 2 == 1) {
        throw infeasible("weight -1 polarized data need even rank");
    }

    // Group: odd sizes in pairs; equal even sizes paired at random.
    struct Group {
        std::size_t l;
        bool pair;
    };
    std::vector<Group> groups;
    for (std::size_t i = 0; i < sizes.size();) {
        const std::size_t l = sizes[i];
        const bool can_pair = i + 1 < sizes.size() && sizes[i + 1] == l;
        if (l % 2 == 1 || (can_pair && pick(0, 1) == 1)) {
            groups.push_back({l, true});
            i += 2;
        } else {
            groups.push_back({l, false});
            i += 1;
        }
    }

    detail::Builder b(n);
    // First pass: lattice-level structure (N, S, Ts) and the field order.
    struct Plan {
        std::size_t o, l;
        bool pair;
        int sign = 1;
        int rot = 1;
        int s = 0;
    };
    std::vector<Plan> plans;
    std::size_t o = 0;
    for (const auto &g : groups) {
        Plan p{o, g.l, g.pair};
        if (!g.pair) {
            p.sign = opt.semisimple && pick(0, 1) == 1 ? -1 : 1;
        } else if (g.l % 2 == 1) {
            static const int odd_orders[] = {1, 2, 3, 4, 6};
            p.rot = opt.semisimple ? odd_orders[pick(0, 4)] : 1;
            p.s = pick(0, 1);
        } else {
            static const int even_orders[] = {1, 2, 4};
            p.rot = opt.semisimple ? even_orders[pick(0, 2)] : 1;
            p.s = pick(0, 1);
        }
        plans.push_back(p);
        o += g.pair ? 2 * g.l : g.l;
    }
    int order = 1;
    for (const auto &p : plans) {
        if (p.pair) {
            order = lcm_int(order, p.rot == 3 || p.rot == 6 ? 12 : 4); // (1, i) or a primitive eigenvector
        }
    }
    const auto &field = CycloField::get(order);
    b.order = order;

    for (const auto &p : plans) {
        const auto c = detail::string_pairing(p.l);
        const std::size_t l = p.l;
        if (!p.pair) {
            b.string_at(p.o, l);
            for (std::size_t i = 0; i < l; ++i) {
                b.S(p.o + i, p.o + l - 1 - i) = c[i];
                b.Ts(p.o + i, p.o + i) = p.sign;
            }
            // Hodge-Tate: e_i sits at level i - l/2.
            CVec top(n, Cyclo(0));
            top[p.o + l - 1] = 1;
            b.hodge_string(top, static_cast<int>(l / 2) - 1);
            continue;
        }
        const std::size_t e = p.o, f = p.o + l;
        b.string_at(e, l);
        b.string_at(f, l);
        const auto R = detail::rotation_of_order(p.rot);
        for (std::size_t i = 0; i < l; ++i) {
            if (l % 2 == 1) {
                b.S(e + i, f + l - 1 - i) = c[i];
                b.S(f + i, e + l - 1 - i) = -c[i];
            } else {
                b.S(e + i, e + l - 1 - i) = c[i];
                b.S(f + i, f + l - 1 - i) = c[i];
            }
            b.Ts(e + i, e + i) = R(0, 0);
            b.Ts(f + i, e + i) = R(1, 0);
            b.Ts(e + i, f + i) = R(0, 1);
            b.Ts(f + i, f + i) = R(1, 1);
        }
        // Multiplicity vector u: an eigenvector of R, or (1, i) when R is scalar.
        CVec uc(2);
        if (p.rot <= 2) {
            uc = {Cyclo(1), Cyclo::zeta(field, order / 4)};
        } else {
            // eigenvalue exp(2 pi i / rot)
            const Cyclo lambda = Cyclo::zeta(field, order / p.rot);
            CMatrix Rl = convert<Cyclo>(R) - lambda * CMatrix::identity(2);
            uc = kernel(Rl).at(0);
        }
        CVec u(n, Cyclo(0));
        u[e + l - 1] = uc[0];
        u[f + l - 1] = uc[1];
        // Levels P (for u) and Q = l - 2 - P (for its conjugate), P != Q.
        const int P = l % 2 == 1 ? static_cast<int>((l - 1) / 2) + p.s : static_cast<int>(l / 2) + p.s;
        const int Q = static_cast<int>(l) - 2 - P;
        b.hodge_string(u, P);
        b.hodge_string(conj(u), Q);
    }

    // Assemble the filtration: F^p = span of everything at level >= p.
    const int top = b.F.empty() ? 0 : b.F.rbegin()->first;
    const int bottom = b.F.empty() ? 0 : b.F.begin()->first;
    std::vector<CVec> acc;
    std::map<int, std::vector<CVec>> levels;
    for (int p = top; p >= bottom; --p) {
        for (const auto &v : b.F[p]) {
            acc.push_back(v);
        }
        levels[p] = acc;
    }

    CMatrix Fmove = CMatrix::identity(n);
    if (opt.deform) {
        // X: strictly weight-lowering, commuting with N and T_s, infinitesimally preserving S.
        std::vector<std::pair<std::size_t, std::size_t>> vars;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                if (b.weight[r] < b.weight[c]) {
                    vars.emplace_back(r, c);
                }
            }
        }
        if (!vars.empty()) {
            const auto Tq = convert<Rational>(b.Ts);
            const auto Sq = convert<Rational>(b.S);
            Matrix<Rational> eq(3 * n * n, vars.size());
            for (std::size_t v = 0; v < vars.size(); ++v) {
                const auto [a, c] = vars[v];
                // X = E_{a c}
                for (std::size_t j = 0; j < n; ++j) {
                    // [X, N]_{a j} += N_{c j};  [X, N]_{j c} -= N_{j a}
                    eq(a * n + j, v) += b.N(c, j);
                    eq(j * n + c, v) -= b.N(j, a);
                    eq(n * n + a * n + j, v) += Tq(c, j);
                    eq(n * n + j * n + c, v) -= Tq(j, a);
                    // (X^T S)_{c j} = S_{a j};  (S X)_{j c} = S_{j a}
                    eq(2 * n * n + c * n + j, v) += Sq(a, j);
                    eq(2 * n * n + j * n + c, v) += Sq(j, a);
                }
            }
            const auto sols = kernel(eq);
            const bool complex = order % 4 == 0;
            CMatrix X(n, n);
            for (const auto &s : sols) {
                Cyclo coef = Cyclo(pick(-2, 2));
                if (complex) {
                    coef += Cyclo(pick(-1, 1)) * Cyclo::zeta(field, order / 4);
                }
                for (std::size_t v = 0; v < vars.size(); ++v) {
                    if (s[v] != 0) {
                        X(vars[v].first, vars[v].second) += coef * Cyclo(s[v]);
                    }
                }
            }
            Fmove = nilpotent_exp(X);
        }
    }

    Matrix<Integer> P = Matrix<Integer>::identity(n);
    if (opt.change_basis) {
        for (std::size_t step = 0; step < n + 1; ++step) {
            const auto i = static_cast<std::size_t>(pick(0, static_cast<int>(n) - 1));
            auto j = static_cast<std::size_t>(pick(0, static_cast<int>(n) - 2));
            if (j >= i) {
                ++j;
            }
            const int f = pick(0, 1) == 1 ? 1 : -1;
            for (std::size_t k = 0; k < n; ++k) {
                P(i, k) += f * P(j, k);
            }
        }
    }
    const auto Pq_inv = inverse(convert<Rational>(P));
    Matrix<Integer> Pi(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Pi(r, c) = Pq_inv(r, c).get_num();
        }
    }

    const auto expN = nilpotent_exp(b.N);
    Matrix<Integer> Tu(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Tu(r, c) = expN(r, c).get_num();
        }
    }
    const Matrix<Integer> T = b.Ts * Tu;

    DegenerationDatum d;
    d.name = "random-" + std::to_string(opt.seed);
    d.order = order;
    d.monodromy = P * T * Pi;
    d.polarization = Pi.transpose() * b.S * Pi;
    const CMatrix move = convert<Cyclo>(P) * Fmove;
    std::map<int, CSpace> F;
    for (const auto &[p, gens] : levels) {
        F.emplace(p, CSpace(n, gens).image(move));
    }
    d.hodge = HodgeFiltration(n, std::move(F));
    return d;
}

} // namespace neron
