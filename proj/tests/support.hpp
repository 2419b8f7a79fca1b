#pragma once

// Hand-rolled generators and small independent oracles shared by the suites.

#include <cstdint>
#include <random>
#include <vector>

#include "neron/neron.hpp"

namespace testing_support {

using namespace neron;
using Rng = std::mt19937_64;

inline long uniform(Rng &rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Matrix<Integer> random_int_matrix(Rng &rng, std::size_t r, std::size_t c, long lo = -5, long hi = 5) {
    Matrix<Integer> M(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            M(i, j) = uniform(rng, lo, hi);
        }
    }
    return M;
}

inline Matrix<Rational> random_rational_matrix(Rng &rng, std::size_t r, std::size_t c) {
    Matrix<Rational> M(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            M(i, j) = ratio(uniform(rng, -6, 6), uniform(rng, 1, 4));
        }
    }
    return M;
}

// r x c matrix of rank at most k, as a product of random factors.
inline Matrix<Rational> random_low_rank(Rng &rng, std::size_t r, std::size_t c, std::size_t k) {
    return random_rational_matrix(rng, r, k) * random_rational_matrix(rng, k, c);
}

inline Matrix<Integer> random_unimodular(Rng &rng, std::size_t n, std::size_t steps = 8) {
    auto P = Matrix<Integer>::identity(n);
    if (n < 2) {
        return P;
    }
    for (std::size_t s = 0; s < steps; ++s) {
        const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
        auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
        if (j >= i) {
            ++j;
        }
        const long f = uniform(rng, -2, 2);
        for (std::size_t k = 0; k < n; ++k) {
            P(i, k) += f * P(j, k);
        }
    }
    return P;
}

inline Cyclo random_cyclo(Rng &rng, const CycloField &field) {
    detail::Poly c;
    for (std::size_t i = 0; i < field.degree(); ++i) {
        c.push_back(ratio(uniform(rng, -5, 5), uniform(rng, 1, 3)));
    }
    return Cyclo(field, c);
}

inline CVec random_in(Rng &rng, const CSpace &s) {
    CVec v(s.ambient(), Cyclo(0));
    for (const auto &b : s.basis()) {
        const Cyclo c(uniform(rng, -3, 3));
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] += c * b[i];
        }
    }
    return v;
}

// Determinant over Q of a square integer matrix by cofactor expansion; only
// for the tiny sizes the oracles use.
inline Integer cofactor_det(const Matrix<Integer> &A) {
    const std::size_t n = A.rows();
    if (n == 0) {
        return 1;
    }
    if (n == 1) {
        return A(0, 0);
    }
    Integer total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        Matrix<Integer> minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            for (std::size_t c = 0, cc = 0; c < n; ++c) {
                if (c != j) {
                    minor(r - 1, cc++) = A(r, c);
                }
            }
        }
        const Integer term = A(0, j) * cofactor_det(minor);
        total += j % 2 == 0 ? term : Integer(-term);
    }
    return total;
}

// gcd of all k x k minors.
inline Integer minor_gcd(const Matrix<Integer> &A, std::size_t k) {
    Integer g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    auto next = [](std::vector<std::size_t> &idx, std::size_t n) {
        std::size_t k = idx.size();
        for (std::size_t i = k; i-- > 0;) {
            if (idx[i] < n - k + i) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) {
                    idx[j] = idx[j - 1] + 1;
                }
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < k; ++i) {
        rows[i] = i;
    }
    do {
        for (std::size_t i = 0; i < k; ++i) {
            cols[i] = i;
        }
        do {
            Matrix<Integer> sub(k, k);
            for (std::size_t r = 0; r < k; ++r) {
                for (std::size_t c = 0; c < k; ++c) {
                    sub(r, c) = A(rows[r], cols[c]);
                }
            }
            g = gcd(g, cofactor_det(sub));
        } while (next(cols, A.cols()));
    } while (next(rows, A.rows()));
    return abs(g);
}

// Valid data of even rank 2..6, unipotent or not, from the generator.
inline DegenerationDatum random_valid_datum(std::uint64_t seed, bool semisimple) {
    RandomOptions o;
    o.seed = seed;
    o.rank = 2 + 2 * static_cast<std::size_t>(seed % 3);
    o.semisimple = semisimple;
    return random_datum(o);
}

// Rank-2 pure weight -1 structure with trivial monodromy.
inline DegenerationDatum pure_elliptic() {
    DegenerationDatum d;
    d.name = "pure";
    d.order = 4;
    d.monodromy = {{1, 0}, {0, 1}};
    d.polarization = {{0, 1}, {-1, 0}};
    const Cyclo i = Cyclo::zeta(CycloField::get(4));
    d.hodge = gallery::filtration(2, {{0, {{Cyclo(1), i}}}});
    return d;
}

// Rank-2 datum with monodromy -1 (alpha = 1/2 throughout).
inline DegenerationDatum minus_identity() {
    auto d = pure_elliptic();
    d.name = "minus-identity";
    d.monodromy = {{-1, 0}, {0, -1}};
    return d;
}

} // namespace testing_support
