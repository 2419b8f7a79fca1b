#pragma once

#include <map>
#include <string>
#include <vector>

#include "neron/errors.hpp"
#include "neron/integer_matrix.hpp"
#include "neron/matrix.hpp"

namespace neron {

using CMatrix = Matrix<Cyclo>;
using CVec = Vec<Cyclo>;
using CSpace = Subspace<Cyclo>;

inline CVec lift(const CVec &v, const CycloField &field) {
    CVec out;
    out.reserve(v.size());
    for (const auto &x : v) {
        out.push_back(x.lift(field));
    }
    return out;
}
inline CSpace lift(const CSpace &s, const CycloField &field) {
    std::vector<CVec> gens;
    for (const auto &b : s.basis()) {
        gens.push_back(lift(b, field));
    }
    return CSpace(s.ambient(), gens);
}

// Descending filtration given on a contiguous range of levels. Below the
// range it is the whole space, above it zero.
class HodgeFiltration {
  public:
    HodgeFiltration() = default;
    HodgeFiltration(std::size_t ambient, std::map<int, CSpace> levels) : ambient_(ambient), levels_(std::move(levels)) {
        int expect = levels_.empty() ? 0 : levels_.begin()->first;
        for (const auto &[p, s] : levels_) {
            if (p != expect++) {
                throw invalid_datum("Hodge levels must be contiguous");
            }
            if (s.ambient() != ambient_) {
                throw invalid_datum("Hodge subspace has wrong ambient dimension");
            }
        }
    }

    std::size_t ambient() const noexcept {
        return ambient_;
    }
    const std::map<int, CSpace> &levels() const noexcept {
        return levels_;
    }
    CSpace at(int p) const {
        if (levels_.empty() || p > levels_.rbegin()->first) {
            return CSpace(ambient_);
        }
        if (p < levels_.begin()->first) {
            return CSpace::full(ambient_);
        }
        return levels_.at(p);
    }
    // Highest p with F^p nonzero (one below the first listed level if none).
    int top() const {
        for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
            if (!it->second.is_zero()) {
                return it->first;
            }
        }
        return levels_.empty() ? 0 : levels_.begin()->first - 1;
    }

    HodgeFiltration lifted(const CycloField &field) const {
        std::map<int, CSpace> out;
        for (const auto &[p, s] : levels_) {
            out.emplace(p, lift(s, field));
        }
        return HodgeFiltration(ambient_, std::move(out));
    }
    HodgeFiltration transformed(const CMatrix &P) const {
        std::map<int, CSpace> out;
        for (const auto &[p, s] : levels_) {
            out.emplace(p, s.image(P));
        }
        return HodgeFiltration(ambient_, std::move(out));
    }

    friend bool operator==(const HodgeFiltration &a, const HodgeFiltration &b) {
        return a.ambient_ == b.ambient_ && a.levels_ == b.levels_;
    }

  private:
    std::size_t ambient_ = 0;
    std::map<int, CSpace> levels_;
};

// Integral monodromy, integral polarization of weight -1 and a limit Hodge
// filtration with entries in Q(zeta_order).
struct DegenerationDatum {
    std::string name;
    int order = 1;
    Matrix<Integer> monodromy;
    Matrix<Integer> polarization;
    HodgeFiltration hodge;
    int window = 0; // 0 = choose automatically

    std::size_t rank() const noexcept {
        return monodromy.rows();
    }

    void check_shape() const {
        const std::size_t n = monodromy.rows();
        if (n == 0 || !monodromy.square()) {
            throw invalid_datum("monodromy must be a nonempty square matrix");
        }
        if (polarization.rows() != n || polarization.cols() != n) {
            throw invalid_datum("polarization must be " + std::to_string(n) + "x" + std::to_string(n));
        }
        if (hodge.ambient() != n) {
            throw invalid_datum("Hodge filtration vectors must have length " + std::to_string(n));
        }
        if (order < 1) {
            throw invalid_datum("field order must be positive");
        }
    }

    friend bool operator==(const DegenerationDatum &a, const DegenerationDatum &b) {
        return a.name == b.name && a.order == b.order && a.monodromy == b.monodromy &&
               a.polarization == b.polarization && a.hodge == b.hodge && a.window == b.window;
    }
};

} // namespace neron
