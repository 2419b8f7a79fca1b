#pragma once

// JSON encoding of degeneration data. Rationals travel as "p/q" strings,
// cyclotomic scalars as coefficient lists in powers of zeta_order.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "neron/datum.hpp"
#include "neron/errors.hpp"
#include "neron/poly_module.hpp"

namespace neron::io {

using json = nlohmann::json;

namespace detail {

inline Integer integer_entry(const json &j, const std::string &where) {
    if (j.is_number_integer()) {
        return Integer(j.is_number_unsigned() ? std::to_string(j.get<unsigned long long>())
                                              : std::to_string(j.get<long long>()));
    }
    if (j.is_string()) {
        const Rational r = parse_rational(j.get<std::string>());
        if (r.get_den() != 1) {
            throw parse_error(where + ": expected an integer, got " + j.get<std::string>());
        }
        return r.get_num();
    }
    throw parse_error(where + ": expected an integer");
}

inline Rational rational_entry(const json &j, const std::string &where) {
    if (j.is_number_integer()) {
        return Rational(integer_entry(j, where));
    }
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    throw parse_error(where + ": expected a rational as an integer or a \"p/q\" string");
}

inline Matrix<Integer> integer_matrix(const json &j, const std::string &what) {
    if (!j.is_array() || j.empty()) {
        throw parse_error(what + " must be a nonempty array of rows");
    }
    const std::size_t r = j.size();
    std::size_t c = 0;
    for (std::size_t i = 0; i < r; ++i) {
        if (!j[i].is_array()) {
            throw parse_error(what + " row " + std::to_string(i) + " is not an array");
        }
        if (i == 0) {
            c = j[i].size();
        } else if (j[i].size() != c) {
            throw parse_error(what + " has rows of different lengths");
        }
    }
    Matrix<Integer> M(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < c; ++k) {
            M(i, k) = integer_entry(j[i][k], what + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
        }
    }
    return M;
}

inline json integer_json(const Integer &x) {
    if (x.fits_slong_p()) {
        return x.get_si();
    }
    return x.get_str();
}

} // namespace detail

inline Cyclo scalar_from_json(const json &j, const CycloField &field, const std::string &where = "scalar") {
    if (!j.is_array()) {
        return Cyclo(detail::rational_entry(j, where));
    }
    if (j.size() > field.degree()) {
        throw parse_error(where + ": " + std::to_string(j.size()) + " coefficients exceed the degree " +
                          std::to_string(field.degree()) + " of the field of order " + std::to_string(field.order()));
    }
    neron::detail::Poly coeffs;
    for (std::size_t i = 0; i < j.size(); ++i) {
        coeffs.push_back(detail::rational_entry(j[i], where));
    }
    return Cyclo(field, std::move(coeffs));
}

// Rational scalars as a single string, the rest as a full coefficient list.
inline json scalar_to_json(const Cyclo &x, const CycloField &field) {
    if (x.is_rational()) {
        return to_string(x.rational_value());
    }
    auto coeffs = x.coefficients(field);
    coeffs.resize(field.degree());
    json out = json::array();
    for (const auto &c : coeffs) {
        out.push_back(to_string(c));
    }
    return out;
}

inline json vector_to_json(const CVec &v, const CycloField &field) {
    json out = json::array();
    for (const auto &x : v) {
        out.push_back(scalar_to_json(x, field));
    }
    return out;
}

inline CVec vector_from_json(const json &j, std::size_t n, const CycloField &field, const std::string &where) {
    if (!j.is_array()) {
        throw parse_error(where + " is not an array");
    }
    if (j.size() != n) {
        throw parse_error(where + " has length " + std::to_string(j.size()) + ", expected " + std::to_string(n));
    }
    CVec v;
    for (std::size_t i = 0; i < n; ++i) {
        v.push_back(scalar_from_json(j[i], field, where + "[" + std::to_string(i) + "]"));
    }
    return v;
}

inline DegenerationDatum datum_from_json(const json &j) {
    if (!j.is_object()) {
        throw parse_error("datum document must be a JSON object");
    }
    for (const char *key : {"monodromy", "polarization", "hodge_filtration"}) {
        if (!j.contains(key)) {
            throw parse_error(std::string("missing field \"") + key + "\"");
        }
    }
    DegenerationDatum d;
    d.name = j.value("name", std::string("unnamed"));
    if (j.contains("order")) {
        if (!j["order"].is_number_integer() || j["order"].get<long long>() < 1 || j["order"].get<long long>() > 10000) {
            throw parse_error("\"order\" must be a positive integer");
        }
        d.order = j["order"].get<int>();
    }
    d.monodromy = detail::integer_matrix(j["monodromy"], "monodromy");
    d.polarization = detail::integer_matrix(j["polarization"], "polarization");
    const std::size_t n = d.monodromy.rows();
    if (j.contains("rank")) {
        if (!j["rank"].is_number_integer() || j["rank"].get<long long>() != static_cast<long long>(n)) {
            throw parse_error("\"rank\" does not match the monodromy matrix");
        }
    }
    if (j.contains("window")) {
        if (!j["window"].is_number_integer() || j["window"].get<long long>() < 0) {
            throw parse_error("\"window\" must be a nonnegative integer");
        }
        d.window = j["window"].get<int>();
    }
    const auto &field = CycloField::get(d.order);
    const json &hf = j["hodge_filtration"];
    if (!hf.is_object()) {
        throw parse_error("\"hodge_filtration\" must map levels to lists of vectors");
    }
    std::map<int, CSpace> levels;
    for (auto it = hf.begin(); it != hf.end(); ++it) {
        int p = 0;
        try {
            std::size_t used = 0;
            p = std::stoi(it.key(), &used);
            if (used != it.key().size()) {
                throw std::invalid_argument("trailing");
            }
        } catch (const std::exception &) {
            throw parse_error("Hodge level \"" + it.key() + "\" is not an integer");
        }
        if (!it.value().is_array()) {
            throw parse_error("F^" + it.key() + " must be a list of vectors");
        }
        std::vector<CVec> gens;
        for (std::size_t i = 0; i < it.value().size(); ++i) {
            gens.push_back(vector_from_json(it.value()[i], n, field, "F^" + it.key() + " vector " + std::to_string(i)));
        }
        levels.emplace(p, CSpace(n, gens));
    }
    try {
        d.hodge = HodgeFiltration(n, std::move(levels));
        d.check_shape();
    } catch (const invalid_datum &e) {
        throw parse_error(e.what());
    }
    return d;
}

inline json datum_to_json(const DegenerationDatum &d) {
    const auto &field = CycloField::get(d.order);
    json j;
    j["name"] = d.name;
    j["rank"] = d.rank();
    j["order"] = d.order;
    auto mat = [](const Matrix<Integer> &M) {
        json rows = json::array();
        for (std::size_t r = 0; r < M.rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < M.cols(); ++c) {
                row.push_back(detail::integer_json(M(r, c)));
            }
            rows.push_back(row);
        }
        return rows;
    };
    j["monodromy"] = mat(d.monodromy);
    j["polarization"] = mat(d.polarization);
    json hf = json::object();
    for (const auto &[p, s] : d.hodge.levels()) {
        json vecs = json::array();
        for (const auto &v : s.basis()) {
            vecs.push_back(vector_to_json(v, field));
        }
        hf[std::to_string(p)] = vecs;
    }
    j["hodge_filtration"] = hf;
    if (d.window > 0) {
        j["window"] = d.window;
    }
    return j;
}

inline json parse_json(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw parse_error(std::string("malformed JSON: ") + e.what());
    }
}

inline DegenerationDatum parse_datum(const std::string &text) {
    try {
        return datum_from_json(parse_json(text));
    } catch (const json::exception &e) {
        throw parse_error(std::string("bad datum document: ") + e.what());
    }
}

// Graded presentation document:
//   {"variables": 2, "matrix": [["t1"], ["t1*t2"]],
//    "generator_degrees": [0, -1], "torsion_test": "t1"}
// generator_degrees and torsion_test are optional.
struct PresentationDocument {
    std::string name;
    poly::GradedPolyModule module;
    std::optional<poly::Polynomial> torsion_test;
};

inline PresentationDocument presentation_from_json(const json &j, int D) {
    try {
        PresentationDocument doc;
        doc.name = j.value("name", std::string("presentation"));
        const auto s = j.at("variables").get<std::size_t>();
        if (s == 0) {
            throw parse_error("presentation needs at least one variable");
        }
        const auto &rows = j.at("matrix");
        if (!rows.is_array() || rows.empty()) {
            throw parse_error("matrix must be a nonempty list of rows");
        }
        poly::PolyMatrix A;
        for (const auto &row : rows) {
            poly::PolyVec r;
            for (const auto &e : row) {
                r.push_back(e.is_number_integer() ? poly::Polynomial(s, detail::rational_entry(e, "matrix entry"))
                                                  : poly::Polynomial::parse(e.get<std::string>(), s));
            }
            A.push_back(std::move(r));
        }
        const std::size_t q = A.size(), p = A.front().size();
        std::optional<std::vector<int>> gen;
        if (j.contains("generator_degrees")) {
            gen = j.at("generator_degrees").get<std::vector<int>>();
        }
        doc.module = poly::make_module(s, std::move(A), q, p, gen, D);
        if (j.contains("torsion_test")) {
            doc.torsion_test = poly::Polynomial::parse(j.at("torsion_test").get<std::string>(), s);
        }
        return doc;
    } catch (const json::exception &e) {
        throw parse_error(std::string("bad presentation document: ") + e.what());
    }
}

inline std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

} // namespace neron::io
