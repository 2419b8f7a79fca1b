#pragma once

// Exact arithmetic in the cyclotomic field Q(z), z a primitive m-th root of
// unity, realised as Q[x]/(Phi_m). Elements that happen to be rational carry
// no field pointer, so mixed rational/cyclotomic code stays cheap.

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "neron/rational.hpp"

namespace neron {

namespace detail {

using Poly = std::vector<Rational>; // low degree first

inline void trim(Poly &p) {
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

inline Poly poly_mul(const Poly &a, const Poly &b) {
    if (a.empty() || b.empty()) {
        return {};
    }
    Poly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    trim(out);
    return out;
}

// Quotient and remainder of a by b (b nonzero).
inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly &b) {
    trim(a);
    Poly q;
    if (a.size() < b.size()) {
        return {q, a};
    }
    q.assign(a.size() - b.size() + 1, Rational(0));
    const Rational lead = b.back();
    for (std::size_t k = a.size(); k-- >= b.size();) {
        const Rational coef = a[k] / lead;
        q[k - (b.size() - 1)] = coef;
        if (coef != 0) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                a[k - (b.size() - 1) + j] -= coef * b[j];
            }
        }
        if (k == 0) {
            break;
        }
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline Poly poly_sub(const Poly &a, const Poly &b) {
    Poly out(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        out[i] -= b[i];
    }
    trim(out);
    return out;
}

inline Poly cyclotomic_polynomial(int m) {
    // x^m - 1 divided by Phi_d for every proper divisor d of m.
    Poly p(static_cast<std::size_t>(m) + 1, Rational(0));
    p[0] = -1;
    p[static_cast<std::size_t>(m)] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d == 0) {
            p = poly_divmod(p, cyclotomic_polynomial(d)).first;
        }
    }
    return p;
}

} // namespace detail

class CycloField {
  public:
    // Interned; the returned reference lives for the whole program.
    static const CycloField &get(int order) {
        if (order < 1) {
            throw std::invalid_argument("cyclotomic order must be positive");
        }
        static std::mutex mutex;
        static std::map<int, std::unique_ptr<CycloField>> registry;
        std::lock_guard lock(mutex);
        auto &slot = registry[order];
        if (!slot) {
            slot.reset(new CycloField(order));
        }
        return *slot;
    }

    int order() const noexcept {
        return order_;
    }
    std::size_t degree() const noexcept {
        return degree_;
    }
    const detail::Poly &modulus() const noexcept {
        return modulus_;
    }

    // Reduce an arbitrary polynomial in z to length degree().
    detail::Poly reduce(detail::Poly p) const {
        auto r = detail::poly_divmod(std::move(p), modulus_).second;
        r.resize(degree_, Rational(0));
        return r;
    }

    // z^k reduced, any integer k.
    const detail::Poly &zeta_power(long k) const {
        long r = k % order_;
        if (r < 0) {
            r += order_;
        }
        return powers_[static_cast<std::size_t>(r)];
    }

  private:
    explicit CycloField(int order) : order_(order) {
        modulus_ = detail::cyclotomic_polynomial(order);
        degree_ = modulus_.size() - 1;
        powers_.reserve(static_cast<std::size_t>(order));
        for (int k = 0; k < order; ++k) {
            detail::Poly mono(static_cast<std::size_t>(k) + 1, Rational(0));
            mono[static_cast<std::size_t>(k)] = 1;
            powers_.push_back(reduce(mono));
        }
    }

    int order_;
    std::size_t degree_ = 1;
    detail::Poly modulus_;
    std::vector<detail::Poly> powers_;
};

class Cyclo {
  public:
    Cyclo() : c_{Rational(0)} {}
    Cyclo(int v) : c_{Rational(v)} {}
    Cyclo(long v) : c_{Rational(v)} {}
    Cyclo(const Integer &v) : c_{Rational(v)} {}
    Cyclo(const Rational &v) : c_{v} {}

    // Element sum_j coeffs[j] z^j of Q(zeta_order); coeffs may be any length.
    Cyclo(const CycloField &field, detail::Poly coeffs) : field_(&field), c_(field.reduce(std::move(coeffs))) {
        normalize();
    }

    static Cyclo zeta(const CycloField &field, long power = 1) {
        return Cyclo(field, field.zeta_power(power));
    }

    const CycloField *field() const noexcept {
        return field_;
    }
    bool is_rational() const noexcept {
        return field_ == nullptr;
    }
    const Rational &rational_value() const {
        if (field_ != nullptr) {
            throw std::logic_error("cyclotomic scalar is not rational");
        }
        return c_[0];
    }
    bool is_zero() const noexcept {
        return field_ == nullptr && c_[0] == 0;
    }

    // Coefficient vector with respect to 1, z, ..., z^(phi-1) of the given field.
    detail::Poly coefficients(const CycloField &field) const {
        if (field_ == nullptr) {
            detail::Poly out(field.degree(), Rational(0));
            out[0] = c_[0];
            return out;
        }
        if (field_ != &field) {
            return lift(field).coefficients(field);
        }
        return c_;
    }

    // Embed into a larger cyclotomic field whose order is a multiple of ours.
    Cyclo lift(const CycloField &target) const {
        if (field_ == nullptr || field_ == &target) {
            return *this;
        }
        if (target.order() % field_->order() != 0) {
            throw std::invalid_argument("cannot embed Q(zeta_" + std::to_string(field_->order()) + ") into Q(zeta_" +
                                        std::to_string(target.order()) + ")");
        }
        const long step = target.order() / field_->order();
        detail::Poly acc(target.degree(), Rational(0));
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) {
                continue;
            }
            const auto &pw = target.zeta_power(static_cast<long>(j) * step);
            for (std::size_t i = 0; i < acc.size(); ++i) {
                acc[i] += c_[j] * pw[i];
            }
        }
        return Cyclo(target, std::move(acc));
    }

    // Field automorphism z -> z^{-1}; complex conjugation under z = exp(2 pi i / m).
    Cyclo conj() const {
        if (field_ == nullptr) {
            return *this;
        }
        detail::Poly acc(field_->degree(), Rational(0));
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) {
                continue;
            }
            const auto &pw = field_->zeta_power(-static_cast<long>(j));
            for (std::size_t i = 0; i < acc.size(); ++i) {
                acc[i] += c_[j] * pw[i];
            }
        }
        return Cyclo(*field_, std::move(acc));
    }

    Cyclo inverse() const {
        if (is_zero()) {
            throw std::domain_error("inverse of zero");
        }
        if (field_ == nullptr) {
            return Cyclo(Rational(1) / c_[0]);
        }
        // Extended Euclid: s*a + t*Phi = g, g a nonzero constant.
        detail::Poly r0 = field_->modulus(), r1 = c_;
        detail::trim(r1);
        detail::Poly s0, s1{Rational(1)};
        while (r1.size() > 1) {
            auto [q, r] = detail::poly_divmod(r0, r1);
            detail::Poly s = detail::poly_sub(s0, detail::poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        const Rational g = r1[0];
        for (auto &x : s1) {
            x /= g;
        }
        return Cyclo(*field_, std::move(s1));
    }

    std::complex<double> to_complex() const {
        if (field_ == nullptr) {
            return {c_[0].get_d(), 0.0};
        }
        std::complex<double> out{0.0, 0.0};
        const double step = 2.0 * std::numbers::pi / field_->order();
        for (std::size_t j = 0; j < c_.size(); ++j) {
            out += c_[j].get_d() * std::polar(1.0, step * static_cast<double>(j));
        }
        return out;
    }

    std::string to_string() const {
        if (field_ == nullptr) {
            return c_[0].get_str();
        }
        std::string out;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) {
                continue;
            }
            Rational mag = abs(c_[j]);
            if (out.empty()) {
                out += c_[j] < 0 ? "-" : "";
            } else {
                out += c_[j] < 0 ? " - " : " + ";
            }
            const std::string z = "z" + std::to_string(field_->order());
            if (j == 0) {
                out += mag.get_str();
            } else {
                if (mag != 1) {
                    out += mag.get_str() + "*";
                }
                out += j == 1 ? z : z + "^" + std::to_string(j);
            }
        }
        return out;
    }

    friend Cyclo operator+(const Cyclo &a, const Cyclo &b) {
        return combine(a, b, true);
    }
    friend Cyclo operator-(const Cyclo &a, const Cyclo &b) {
        return combine(a, b, false);
    }
    Cyclo operator-() const {
        Cyclo out = *this;
        for (auto &x : out.c_) {
            x = -x;
        }
        return out;
    }
    friend Cyclo operator*(const Cyclo &a, const Cyclo &b) {
        if (a.field_ == nullptr) {
            return b.scaled(a.c_[0]);
        }
        if (b.field_ == nullptr) {
            return a.scaled(b.c_[0]);
        }
        check_same(a, b);
        return Cyclo(*a.field_, detail::poly_mul(a.c_, b.c_));
    }
    friend Cyclo operator/(const Cyclo &a, const Cyclo &b) {
        return a * b.inverse();
    }
    Cyclo &operator+=(const Cyclo &o) {
        return *this = *this + o;
    }
    Cyclo &operator-=(const Cyclo &o) {
        return *this = *this - o;
    }
    Cyclo &operator*=(const Cyclo &o) {
        return *this = *this * o;
    }
    Cyclo &operator/=(const Cyclo &o) {
        return *this = *this / o;
    }

    friend bool operator==(const Cyclo &a, const Cyclo &b) {
        if (a.field_ == nullptr && b.field_ == nullptr) {
            return a.c_[0] == b.c_[0];
        }
        if (a.field_ == nullptr || b.field_ == nullptr) {
            return false; // normalized: a non-null field means a non-rational value
        }
        check_same(a, b);
        return a.c_ == b.c_;
    }

    friend std::ostream &operator<<(std::ostream &os, const Cyclo &x) {
        return os << x.to_string();
    }

  private:
    static void check_same(const Cyclo &a, const Cyclo &b) {
        if (a.field_ != b.field_) {
            throw std::logic_error("mixing elements of different cyclotomic fields");
        }
    }

    static Cyclo combine(const Cyclo &a, const Cyclo &b, bool add) {
        if (a.field_ == nullptr && b.field_ == nullptr) {
            return Cyclo(add ? Rational(a.c_[0] + b.c_[0]) : Rational(a.c_[0] - b.c_[0]));
        }
        const CycloField *f = a.field_ != nullptr ? a.field_ : b.field_;
        if (a.field_ != nullptr && b.field_ != nullptr) {
            check_same(a, b);
        }
        Cyclo out;
        out.field_ = f;
        out.c_.assign(f->degree(), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            out.c_[i] += a.c_[i];
        }
        for (std::size_t i = 0; i < b.c_.size(); ++i) {
            if (add) {
                out.c_[i] += b.c_[i];
            } else {
                out.c_[i] -= b.c_[i];
            }
        }
        out.normalize();
        return out;
    }

    Cyclo scaled(const Rational &s) const {
        Cyclo out = *this;
        if (s == 0) {
            return Cyclo();
        }
        for (auto &x : out.c_) {
            x *= s;
        }
        return out;
    }

    // Rational values drop their field pointer so equality and fast paths work.
    void normalize() {
        if (field_ == nullptr) {
            return;
        }
        for (std::size_t i = 1; i < c_.size(); ++i) {
            if (c_[i] != 0) {
                return;
            }
        }
        Rational v = c_.empty() ? Rational(0) : c_[0];
        field_ = nullptr;
        c_.assign(1, v);
    }

    const CycloField *field_ = nullptr;
    detail::Poly c_;
};

inline bool is_zero(const Cyclo &x) {
    return x.is_zero();
}
inline bool is_zero(const Rational &x) {
    return x == 0;
}
inline Cyclo conj(const Cyclo &x) {
    return x.conj();
}
inline Rational conj(const Rational &x) {
    return x;
}

// Smallest order whose field contains both arguments' fields.
inline int common_order(int a, int b) {
    return lcm_int(a, b);
}

} // namespace neron
