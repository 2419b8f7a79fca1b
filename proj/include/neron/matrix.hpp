#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "neron/cyclotomic.hpp"
#include "neron/rational.hpp"

namespace neron {

inline bool is_zero(const Integer &x) {
    return x == 0;
}
inline Integer conj(const Integer &x) {
    return x;
}

template <class T> using Vec = std::vector<T>;

// Dense row-major matrix. Works for Integer, Rational and Cyclo entries; the
// elimination routines below need a field.
template <class T> class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : init) {
            if (row.size() != cols_) {
                throw std::invalid_argument("ragged matrix literal");
            }
            for (const auto &x : row) {
                data_.push_back(x);
            }
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }
    static Matrix from_rows(const std::vector<Vec<T>> &rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) {
                throw std::invalid_argument("row length mismatch");
            }
            for (std::size_t j = 0; j < cols; ++j) {
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }
    static Matrix from_columns(const std::vector<Vec<T>> &columns, std::size_t rows) {
        return from_rows(columns, rows).transpose();
    }

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool square() const noexcept {
        return rows_ == cols_;
    }

    T &operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const T &operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    Vec<T> row(std::size_t i) const {
        return Vec<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    Vec<T> col(std::size_t j) const {
        Vec<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            v[i] = (*this)(i, j);
        }
        return v;
    }
    std::vector<Vec<T>> columns() const {
        std::vector<Vec<T>> out;
        for (std::size_t j = 0; j < cols_; ++j) {
            out.push_back(col(j));
        }
        return out;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }
    Matrix conj() const {
        Matrix c = *this;
        for (auto &x : c.data_) {
            x = neron::conj(x);
        }
        return c;
    }
    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const T &x) { return neron::is_zero(x); });
    }

    friend Matrix operator+(const Matrix &a, const Matrix &b) {
        a.check_same_shape(b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) {
            c.data_[k] += b.data_[k];
        }
        return c;
    }
    friend Matrix operator-(const Matrix &a, const Matrix &b) {
        a.check_same_shape(b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) {
            c.data_[k] -= b.data_[k];
        }
        return c;
    }
    Matrix operator-() const {
        Matrix c = *this;
        for (auto &x : c.data_) {
            x = -x;
        }
        return c;
    }
    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("matrix product shape mismatch");
        }
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T &aik = a(i, k);
                if (neron::is_zero(aik)) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    c(i, j) += aik * b(k, j);
                }
            }
        }
        return c;
    }
    friend Vec<T> operator*(const Matrix &a, const Vec<T> &v) {
        if (a.cols_ != v.size()) {
            throw std::invalid_argument("matrix-vector shape mismatch");
        }
        Vec<T> out(a.rows_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (!neron::is_zero(v[k])) {
                    out[i] += a(i, k) * v[k];
                }
            }
        }
        return out;
    }
    friend Matrix operator*(const T &s, const Matrix &a) {
        Matrix c = a;
        for (auto &x : c.data_) {
            x = s * x;
        }
        return c;
    }
    Matrix &operator+=(const Matrix &o) {
        return *this = *this + o;
    }
    Matrix &operator-=(const Matrix &o) {
        return *this = *this - o;
    }
    Matrix &operator*=(const Matrix &o) {
        return *this = *this * o;
    }

    friend bool operator==(const Matrix &a, const Matrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix pow(unsigned e) const {
        if (!square()) {
            throw std::invalid_argument("power of a non-square matrix");
        }
        Matrix result = identity(rows_), base = *this;
        while (e > 0) {
            if (e & 1U) {
                result = result * base;
            }
            base = base * base;
            e >>= 1U;
        }
        return result;
    }

    friend std::ostream &operator<<(std::ostream &os, const Matrix &m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j) {
                os << (j ? ", " : "") << m(i, j);
            }
            os << ']';
        }
        return os << ']';
    }

  private:
    void check_same_shape(const Matrix &b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) {
            throw std::invalid_argument("matrix shape mismatch");
        }
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

// Entry-wise conversion, e.g. Integer -> Rational -> Cyclo.
template <class U, class T> Matrix<U> convert(const Matrix<T> &m) {
    Matrix<U> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(i, j) = U(m(i, j));
        }
    }
    return out;
}

template <class T> Vec<T> conj(const Vec<T> &v) {
    Vec<T> out = v;
    for (auto &x : out) {
        x = neron::conj(x);
    }
    return out;
}

template <class T> bool is_zero_vec(const Vec<T> &v) {
    return std::all_of(v.begin(), v.end(), [](const T &x) { return neron::is_zero(x); });
}

// x^T B y
template <class T> T bilinear(const Matrix<T> &B, const Vec<T> &x, const Vec<T> &y) {
    T acc(0);
    const Vec<T> By = B * y;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!neron::is_zero(x[i])) {
            acc += x[i] * By[i];
        }
    }
    return acc;
}

template <class T> struct Echelon {
    Matrix<T> reduced;               // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
    std::size_t rank() const {
        return pivots.size();
    }
};

// Gauss-Jordan over a field. Zero rows are dropped from the result.
template <class T> Echelon<T> rref(Matrix<T> a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && is_zero(a(p, c))) {
            ++p;
        }
        if (p == a.rows()) {
            continue;
        }
        if (p != r) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                std::swap(a(p, j), a(r, j));
            }
        }
        const T inv = T(1) / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) {
            a(r, j) = a(r, j) * inv;
        }
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || is_zero(a(i, c))) {
                continue;
            }
            const T f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) {
                if (!is_zero(a(r, j))) {
                    a(i, j) -= f * a(r, j);
                }
            }
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix<T> trimmed(r, a.cols());
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            trimmed(i, j) = a(i, j);
        }
    }
    return {std::move(trimmed), std::move(pivots)};
}

template <class T> std::size_t rank(const Matrix<T> &a) {
    return rref(a).rank();
}

// Basis of {x : a x = 0}, one vector per free column.
template <class T> std::vector<Vec<T>> kernel(const Matrix<T> &a) {
    const auto e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots) {
        is_pivot[p] = true;
    }
    std::vector<Vec<T>> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) {
            continue;
        }
        Vec<T> v(a.cols(), T(0));
        v[f] = T(1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i) {
            v[e.pivots[i]] = -e.reduced(i, f);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T> Matrix<T> inverse(const Matrix<T> &a) {
    if (!a.square()) {
        throw std::invalid_argument("inverse of a non-square matrix");
    }
    const std::size_t n = a.rows();
    Matrix<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = a(i, j);
        }
        aug(i, n + i) = T(1);
    }
    const auto e = rref(aug);
    if (e.rank() < n || e.pivots[n - 1] != n - 1) {
        throw std::domain_error("singular matrix");
    }
    Matrix<T> out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = e.reduced(i, n + j);
        }
    }
    return out;
}

template <class T> T det(Matrix<T> a) {
    if (!a.square()) {
        throw std::invalid_argument("determinant of a non-square matrix");
    }
    const std::size_t n = a.rows();
    T d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(a(p, c))) {
            ++p;
        }
        if (p == n) {
            return T(0);
        }
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
            }
            d = -d;
        }
        d *= a(c, c);
        const T inv = T(1) / a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(a(i, c))) {
                continue;
            }
            const T f = a(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) {
                a(i, j) -= f * a(c, j);
            }
        }
    }
    return d;
}

// Integer determinant by fraction-free elimination (Bareiss).
inline Integer det_int(Matrix<Integer> a) {
    if (!a.square()) {
        throw std::invalid_argument("determinant of a non-square matrix");
    }
    const std::size_t n = a.rows();
    if (n == 0) {
        return 1;
    }
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) {
                ++p;
            }
            if (p == n) {
                return 0;
            }
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(k, j));
            }
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// A linear subspace of T^n stored as the rows of its reduced echelon basis,
// so that == is equality of subspaces.
template <class T> class Subspace {
  public:
    explicit Subspace(std::size_t ambient = 0) : basis_(0, ambient) {}
    Subspace(std::size_t ambient, const std::vector<Vec<T>> &spanning) : basis_(0, ambient) {
        if (!spanning.empty()) {
            basis_ = rref(Matrix<T>::from_rows(spanning, ambient)).reduced;
        }
        index_pivots();
    }
    static Subspace full(std::size_t n) {
        Subspace s(n);
        s.basis_ = Matrix<T>::identity(n);
        s.index_pivots();
        return s;
    }
    static Subspace span_columns(const Matrix<T> &m) {
        return Subspace(m.rows(), m.columns());
    }

    std::size_t ambient() const noexcept {
        return basis_.cols();
    }
    std::size_t dim() const noexcept {
        return basis_.rows();
    }
    bool is_zero() const noexcept {
        return dim() == 0;
    }
    bool is_full() const noexcept {
        return dim() == ambient();
    }
    std::vector<Vec<T>> basis() const {
        std::vector<Vec<T>> out;
        for (std::size_t i = 0; i < dim(); ++i) {
            out.push_back(basis_.row(i));
        }
        return out;
    }
    const Matrix<T> &rows() const noexcept {
        return basis_;
    }

    bool contains(const Vec<T> &v) const {
        // Subtract pivot multiples; what is left must vanish.
        Vec<T> r = v;
        for (std::size_t i = 0; i < dim(); ++i) {
            const T f = r[pivots_[i]];
            if (neron::is_zero(f)) {
                continue;
            }
            for (std::size_t j = 0; j < ambient(); ++j) {
                if (!neron::is_zero(basis_(i, j))) {
                    r[j] -= f * basis_(i, j);
                }
            }
        }
        return is_zero_vec(r);
    }
    bool contains(const Subspace &o) const {
        for (std::size_t i = 0; i < o.dim(); ++i) {
            if (!contains(o.basis_.row(i))) {
                return false;
            }
        }
        return true;
    }

    friend Subspace operator+(const Subspace &a, const Subspace &b) {
        auto gens = a.basis();
        auto more = b.basis();
        gens.insert(gens.end(), more.begin(), more.end());
        return Subspace(a.ambient(), gens);
    }
    Subspace intersect(const Subspace &o) const {
        if (dim() == 0 || o.dim() == 0) {
            return Subspace(ambient());
        }
        // x = sum a_i u_i = sum b_j w_j  <=>  (a, -b) in ker [U^T | -W^T]
        const std::size_t n = ambient(), r = dim(), s = o.dim();
        Matrix<T> m(n, r + s);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                m(k, i) = basis_(i, k);
            }
        }
        for (std::size_t j = 0; j < s; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                m(k, r + j) = -o.basis_(j, k);
            }
        }
        std::vector<Vec<T>> gens;
        for (const auto &c : kernel(m)) {
            Vec<T> x(n, T(0));
            for (std::size_t i = 0; i < r; ++i) {
                if (neron::is_zero(c[i])) {
                    continue;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    x[k] += c[i] * basis_(i, k);
                }
            }
            gens.push_back(std::move(x));
        }
        return Subspace(n, gens);
    }

    Subspace image(const Matrix<T> &m) const {
        std::vector<Vec<T>> gens;
        for (std::size_t i = 0; i < dim(); ++i) {
            gens.push_back(m * basis_.row(i));
        }
        return Subspace(m.rows(), gens);
    }
    // {x : x^T B w = 0 for all w in this subspace}
    Subspace annihilator(const Matrix<T> &B) const {
        if (dim() == 0) {
            return full(B.rows());
        }
        const Matrix<T> bw = B * basis_.transpose();
        return Subspace(B.rows(), kernel(bw.transpose()));
    }
    Subspace conj() const {
        std::vector<Vec<T>> gens;
        for (std::size_t i = 0; i < dim(); ++i) {
            gens.push_back(neron::conj(basis_.row(i)));
        }
        return Subspace(ambient(), gens);
    }
    // Standard basis vectors completing this subspace to the ambient space.
    std::vector<Vec<T>> complement_basis() const {
        std::vector<bool> used(ambient(), false);
        for (auto p : pivots_) {
            used[p] = true;
        }
        std::vector<Vec<T>> out;
        for (std::size_t j = 0; j < ambient(); ++j) {
            if (!used[j]) {
                Vec<T> e(ambient(), T(0));
                e[j] = T(1);
                out.push_back(std::move(e));
            }
        }
        return out;
    }

    friend bool operator==(const Subspace &a, const Subspace &b) {
        return a.basis_ == b.basis_;
    }

  private:
    void index_pivots() {
        pivots_.clear();
        for (std::size_t i = 0; i < basis_.rows(); ++i) {
            std::size_t j = 0;
            while (neron::is_zero(basis_(i, j))) {
                ++j;
            }
            pivots_.push_back(j);
        }
    }

    Matrix<T> basis_;
    std::vector<std::size_t> pivots_;
};

template <class T> Matrix<T> conj(const Matrix<T> &m) {
    return m.conj();
}

} // namespace neron
