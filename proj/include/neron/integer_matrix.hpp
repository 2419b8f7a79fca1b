#pragma once

// Integer-specific matrix work: Smith normal form, saturation of rational
// subspaces in Z^n, and quasi-unipotence of integral matrices. Also the
// nilpotent log/exp pair, which is generic over the coefficient field.

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "neron/errors.hpp"
#include "neron/matrix.hpp"

namespace neron {

struct SmithForm {
    Matrix<Integer> U, D, V; // U * A * V == D
    std::vector<Integer> divisors() const {
        std::vector<Integer> out;
        for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) {
            out.push_back(D(i, i));
        }
        return out;
    }
};

namespace detail {

inline void swap_rows(Matrix<Integer> &m, std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::swap(m(a, j), m(b, j));
    }
}
inline void swap_cols(Matrix<Integer> &m, std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::swap(m(i, a), m(i, b));
    }
}
// row[dst] += f * row[src]
inline void add_row(Matrix<Integer> &m, std::size_t dst, std::size_t src, const Integer &f) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        m(dst, j) += f * m(src, j);
    }
}
inline void add_col(Matrix<Integer> &m, std::size_t dst, std::size_t src, const Integer &f) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        m(i, dst) += f * m(i, src);
    }
}

} // namespace detail

inline SmithForm smith_normal_form(const Matrix<Integer> &A) {
    using detail::add_col;
    using detail::add_row;
    const std::size_t m = A.rows(), n = A.cols();
    Matrix<Integer> D = A, U = Matrix<Integer>::identity(m), V = Matrix<Integer>::identity(n);
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block goes to (t, t).
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i) {
                for (std::size_t j = t; j < n; ++j) {
                    if (D(i, j) != 0 && (pi == m || abs(D(i, j)) < abs(D(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (pi == m) {
                return {U, D, V};
            }
            detail::swap_rows(D, t, pi);
            detail::swap_rows(U, t, pi);
            detail::swap_cols(D, t, pj);
            detail::swap_cols(V, t, pj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) {
                    continue;
                }
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                add_row(D, i, t, -q);
                add_row(U, i, t, -q);
                dirty = dirty || D(i, t) != 0;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) {
                    continue;
                }
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                add_col(D, j, t, -q);
                add_col(V, j, t, -q);
                dirty = dirty || D(t, j) != 0;
            }
            if (dirty) {
                continue;
            }
            // Enforce the divisor chain.
            bool chain_ok = true;
            for (std::size_t i = t + 1; i < m && chain_ok; ++i) {
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (D(i, j) % D(t, t) != 0) {
                        add_row(D, t, i, 1);
                        add_row(U, t, i, 1);
                        chain_ok = false;
                        break;
                    }
                }
            }
            if (chain_ok) {
                break;
            }
        }
        if (D(t, t) < 0) {
            for (std::size_t j = 0; j < n; ++j) {
                D(t, j) = -D(t, j);
            }
            for (std::size_t j = 0; j < m; ++j) {
                U(t, j) = -U(t, j);
            }
        }
    }
    return {U, D, V};
}

// Invariant factors > 1 of the cokernel's torsion.
inline std::vector<Integer> torsion_invariants(const Matrix<Integer> &A) {
    std::vector<Integer> out;
    for (const auto &d : smith_normal_form(A).divisors()) {
        if (d > 1) {
            out.push_back(d);
        }
    }
    return out;
}

// Basis of the primitive sublattice (V ∩ Z^n) for a rational subspace V.
inline std::vector<Vec<Integer>> saturate(const Subspace<Rational> &V) {
    const std::size_t n = V.ambient(), r = V.dim();
    if (r == 0) {
        return {};
    }
    Matrix<Integer> B(r, n);
    for (std::size_t i = 0; i < r; ++i) {
        Integer den = 1;
        for (std::size_t j = 0; j < n; ++j) {
            den = lcm(den, Integer(V.rows()(i, j).get_den()));
        }
        for (std::size_t j = 0; j < n; ++j) {
            Rational x = V.rows()(i, j) * den;
            B(i, j) = x.get_num();
        }
    }
    const auto snf = smith_normal_form(B);
    const auto vinv = inverse(convert<Rational>(snf.V));
    std::vector<Vec<Integer>> out;
    for (std::size_t i = 0; i < r; ++i) {
        Vec<Integer> row(n);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = vinv(i, j).get_num();
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline int euler_phi(int k) {
    int result = k;
    for (int p = 2; p * p <= k; ++p) {
        if (k % p == 0) {
            while (k % p == 0) {
                k /= p;
            }
            result -= result / p;
        }
    }
    if (k > 1) {
        result -= result / k;
    }
    return result;
}

// Largest order of a finite-order element of GL_n(Z): the largest lcm of a
// multiset of orders k whose totients sum to at most n.
inline int max_torsion_order(int n) {
    std::vector<int> orders;
    for (int k = 2; k <= 2 * n * n + 2; ++k) {
        if (euler_phi(k) <= n) {
            orders.push_back(k);
        }
    }
    int best = 1;
    std::function<void(std::size_t, int, int)> dfs = [&](std::size_t from, int budget, int acc) {
        best = std::max(best, acc);
        for (std::size_t i = from; i < orders.size(); ++i) {
            const int phi = euler_phi(orders[i]);
            if (phi <= budget) {
                dfs(i + 1, budget - phi, std::lcm(acc, orders[i]));
            }
        }
    };
    dfs(0, n, 1);
    return best;
}

inline int quasi_unipotent_order(const Matrix<Integer> &T, int bound = 0) {
    if (!T.square()) {
        throw invalid_datum("monodromy must be square");
    }
    const std::size_t n = T.rows();
    if (bound <= 0) {
        bound = max_torsion_order(static_cast<int>(n));
    }
    const auto I = Matrix<Integer>::identity(n);
    Matrix<Integer> Tm = I;
    for (int m = 1; m <= bound; ++m) {
        Tm = Tm * T;
        if ((Tm - I).pow(static_cast<unsigned>(n)).is_zero()) {
            return m;
        }
    }
    throw not_quasi_unipotent("no power T^m with m <= " + std::to_string(bound) + " is unipotent");
}

template <class T> bool is_nilpotent(const Matrix<T> &X) {
    return X.pow(static_cast<unsigned>(X.rows())).is_zero();
}

template <class T> Matrix<T> nilpotent_log(const Matrix<T> &U) {
    const std::size_t n = U.rows();
    const Matrix<T> X = U - Matrix<T>::identity(n);
    if (!is_nilpotent(X)) {
        throw not_unipotent("U - I is not nilpotent");
    }
    Matrix<T> acc(n, n), power = X;
    for (std::size_t k = 1; k < std::max<std::size_t>(n, 1) && !power.is_zero(); ++k) {
        const T coef = Rational(k % 2 == 1 ? 1 : -1, static_cast<unsigned long>(k));
        acc += coef * power;
        power = power * X;
    }
    return acc;
}

template <class T> Matrix<T> nilpotent_exp(const Matrix<T> &N) {
    const std::size_t n = N.rows();
    if (!is_nilpotent(N)) {
        throw not_unipotent("exponential of a non-nilpotent matrix");
    }
    Matrix<T> acc = Matrix<T>::identity(n), term = Matrix<T>::identity(n);
    for (std::size_t k = 1; k < std::max<std::size_t>(n, 1); ++k) {
        term = term * N;
        if (term.is_zero()) {
            break;
        }
        term = T(Rational(1, static_cast<unsigned long>(k))) * term;
        acc += term;
    }
    return acc;
}

} // namespace neron
