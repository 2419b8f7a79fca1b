#pragma once

// Analysis results as a plain value with a lossless JSON form, plus a text
// rendering for terminals.

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "neron/json_io.hpp"
#include "neron/neron_chain.hpp"

namespace neron {

inline void to_json(nlohmann::json &j, const BlowupStep &s) {
    nlohmann::json tr = nlohmann::json::array();
    for (auto [i, times_t] : s.transition) {
        tr.push_back({{"coordinate", i}, {"times_t", times_t}});
    }
    j = {{"k", s.k},
         {"m", s.m},
         {"center_codim", s.center_codim},
         {"center_dim", s.center_dim},
         {"equations", s.equations},
         {"transition", tr}};
}

inline void from_json(const nlohmann::json &j, BlowupStep &s) {
    j.at("k").get_to(s.k);
    j.at("m").get_to(s.m);
    j.at("center_codim").get_to(s.center_codim);
    j.at("center_dim").get_to(s.center_dim);
    j.at("equations").get_to(s.equations);
    s.transition.clear();
    for (const auto &t : j.at("transition")) {
        s.transition.emplace_back(t.at("coordinate").get<std::size_t>(), t.at("times_t").get<bool>());
    }
}

} // namespace neron

namespace neron::io {

inline constexpr const char *tool_version = "0.1.0";

// One scalar: a single rational string, or the coefficient list over zeta_order.
using EncodedScalar = std::vector<std::string>;
using EncodedVector = std::vector<EncodedScalar>;

struct CheckLine {
    std::string name;
    bool passed = false;
    std::string detail;
    friend bool operator==(const CheckLine &, const CheckLine &) = default;
};

struct ClassLine {
    long numerator = 0;
    std::string alpha;
    std::size_t dim = 0;
    friend bool operator==(const ClassLine &, const ClassLine &) = default;
};

struct WeightLine {
    int k = 0;
    std::size_t graded_dim = 0;
    friend bool operator==(const WeightLine &, const WeightLine &) = default;
};

struct BasisLine {
    std::size_t cls = 0;
    int level = 0;
    int divisor = 0;
    EncodedVector w;
    friend bool operator==(const BasisLine &, const BasisLine &) = default;
};

struct SpectralSection {
    int m = 1;
    std::vector<ClassLine> classes;
    std::vector<std::size_t> jordan;
    int weight_center = -1;
    std::vector<WeightLine> weights;
    friend bool operator==(const SpectralSection &, const SpectralSection &) = default;
};

struct NeronSection {
    std::size_t vanishing_rank = 0;
    std::vector<std::size_t> d;
    int a = 0;
    std::vector<int> divisors;
    std::vector<std::size_t> quotient;
    std::vector<std::pair<std::string, std::size_t>> grV;
    std::vector<BlowupStep> steps;
    std::vector<BasisLine> adapted_basis;
    std::vector<std::size_t> fiber_indices; // 1-based positions in adapted_basis
    std::vector<EncodedVector> fiber;       // preimage in H of the image fiber
    std::vector<EncodedVector> kernel_image; // preimage in H of the image of Ker N
    bool fiber_independent = false;
    bool two_path = false;
    bool grV_identity = false;
    bool center_is_kernel_image = true;
    bool kernel_image_informational = false;
    bool gamma_regular = false;
    bool invariant_fiber_matches = false;
    std::size_t invariant_codim_fiber = 0;
    std::size_t invariant_codim_kernel = 0;
    std::size_t invariant_rank_N_F1 = 0;
    std::vector<std::string> component_group;
    std::string classification;
    friend bool operator==(const NeronSection &, const NeronSection &) = default;
};

struct Provenance {
    int window_min = 0;
    int window_max = 0;
    std::string valid_up_to;
    std::string version = tool_version;
    friend bool operator==(const Provenance &, const Provenance &) = default;
};

struct ReportDocument {
    std::string name;
    int order = 1;
    bool valid = false;
    std::vector<CheckLine> validation;
    std::optional<SpectralSection> spectral;
    std::optional<NeronSection> neron;
    std::vector<std::string> notes;
    Provenance provenance;
    friend bool operator==(const ReportDocument &, const ReportDocument &) = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CheckLine, name, passed, detail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ClassLine, numerator, alpha, dim)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(WeightLine, k, graded_dim)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Provenance, window_min, window_max, valid_up_to, version)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SpectralSection, m, classes, jordan, weight_center, weights)

namespace detail {

inline json scalar_json(const EncodedScalar &s) {
    return s.size() == 1 ? json(s[0]) : json(s);
}
inline EncodedScalar scalar_back(const json &j) {
    return j.is_string() ? EncodedScalar{j.get<std::string>()} : j.get<EncodedScalar>();
}
inline json vector_json(const EncodedVector &v) {
    json out = json::array();
    for (const auto &s : v) {
        out.push_back(scalar_json(s));
    }
    return out;
}
inline EncodedVector vector_back(const json &j) {
    EncodedVector v;
    for (const auto &s : j) {
        v.push_back(scalar_back(s));
    }
    return v;
}
inline json vectors_json(const std::vector<EncodedVector> &vs) {
    json out = json::array();
    for (const auto &v : vs) {
        out.push_back(vector_json(v));
    }
    return out;
}
inline std::vector<EncodedVector> vectors_back(const json &j) {
    std::vector<EncodedVector> out;
    for (const auto &v : j) {
        out.push_back(vector_back(v));
    }
    return out;
}

} // namespace detail

inline void to_json(json &j, const BasisLine &b) {
    j = {{"class", b.cls}, {"level", b.level}, {"divisor", b.divisor}, {"w", detail::vector_json(b.w)}};
}
inline void from_json(const json &j, BasisLine &b) {
    j.at("class").get_to(b.cls);
    j.at("level").get_to(b.level);
    j.at("divisor").get_to(b.divisor);
    b.w = detail::vector_back(j.at("w"));
}

inline void to_json(json &j, const NeronSection &s) {
    j = {{"vanishing_rank", s.vanishing_rank},
         {"d", s.d},
         {"a", s.a},
         {"divisors", s.divisors},
         {"quotient_lengths", s.quotient},
         {"grV", s.grV},
         {"steps", s.steps},
         {"adapted_basis", s.adapted_basis},
         {"fiber_indices", s.fiber_indices},
         {"fiber", detail::vectors_json(s.fiber)},
         {"kernel_image", detail::vectors_json(s.kernel_image)},
         {"fiber_independent", s.fiber_independent},
         {"two_path", s.two_path},
         {"grV_identity", s.grV_identity},
         {"center_is_kernel_image", s.center_is_kernel_image},
         {"kernel_image_informational", s.kernel_image_informational},
         {"gamma_regular", s.gamma_regular},
         {"fiber_comparison",
          {{"unipotent_part_matches", s.invariant_fiber_matches},
           {"codim_fiber", s.invariant_codim_fiber},
           {"codim_kernel", s.invariant_codim_kernel},
           {"rank_N_F1", s.invariant_rank_N_F1}}},
         {"component_group", s.component_group},
         {"classification", s.classification}};
}

inline void from_json(const json &j, NeronSection &s) {
    j.at("vanishing_rank").get_to(s.vanishing_rank);
    j.at("d").get_to(s.d);
    j.at("a").get_to(s.a);
    j.at("divisors").get_to(s.divisors);
    j.at("quotient_lengths").get_to(s.quotient);
    j.at("grV").get_to(s.grV);
    j.at("steps").get_to(s.steps);
    j.at("adapted_basis").get_to(s.adapted_basis);
    j.at("fiber_indices").get_to(s.fiber_indices);
    s.fiber = detail::vectors_back(j.at("fiber"));
    s.kernel_image = detail::vectors_back(j.at("kernel_image"));
    j.at("fiber_independent").get_to(s.fiber_independent);
    j.at("two_path").get_to(s.two_path);
    j.at("grV_identity").get_to(s.grV_identity);
    j.at("center_is_kernel_image").get_to(s.center_is_kernel_image);
    j.at("kernel_image_informational").get_to(s.kernel_image_informational);
    j.at("gamma_regular").get_to(s.gamma_regular);
    const auto &fc = j.at("fiber_comparison");
    fc.at("unipotent_part_matches").get_to(s.invariant_fiber_matches);
    fc.at("codim_fiber").get_to(s.invariant_codim_fiber);
    fc.at("codim_kernel").get_to(s.invariant_codim_kernel);
    fc.at("rank_N_F1").get_to(s.invariant_rank_N_F1);
    j.at("component_group").get_to(s.component_group);
    j.at("classification").get_to(s.classification);
}

inline json report_to_json(const ReportDocument &r) {
    json j;
    j["name"] = r.name;
    j["order"] = r.order;
    j["validation"] = {{"ok", r.valid}, {"checks", r.validation}};
    j["spectral"] = r.spectral ? json(*r.spectral) : json(nullptr);
    j["neron"] = r.neron ? json(*r.neron) : json(nullptr);
    j["notes"] = r.notes;
    j["provenance"] = r.provenance;
    return j;
}

inline ReportDocument report_from_json(const json &j) {
    try {
        ReportDocument r;
        j.at("name").get_to(r.name);
        j.at("order").get_to(r.order);
        j.at("validation").at("ok").get_to(r.valid);
        j.at("validation").at("checks").get_to(r.validation);
        if (!j.at("spectral").is_null()) {
            r.spectral = j.at("spectral").get<SpectralSection>();
        }
        if (!j.at("neron").is_null()) {
            r.neron = j.at("neron").get<NeronSection>();
        }
        j.at("notes").get_to(r.notes);
        j.at("provenance").get_to(r.provenance);
        return r;
    } catch (const json::exception &e) {
        throw parse_error(std::string("bad report document: ") + e.what());
    }
}

inline EncodedScalar encode(const Cyclo &x, const CycloField &field) {
    const json j = scalar_to_json(x, field);
    return detail::scalar_back(j);
}

inline EncodedVector encode(const CVec &v, const CycloField &field) {
    EncodedVector out;
    for (const auto &x : v) {
        out.push_back(encode(x, field));
    }
    return out;
}

inline std::vector<EncodedVector> encode(const CSpace &s, const CycloField &field) {
    std::vector<EncodedVector> out;
    for (const auto &v : s.basis()) {
        out.push_back(encode(v, field));
    }
    return out;
}

inline ReportDocument make_report(const Analysis &an) {
    ReportDocument r;
    r.name = an.datum.name;
    r.order = an.data ? an.data->datum.order : an.datum.order;
    r.valid = an.validation.ok();
    for (const auto &c : an.validation.checks) {
        r.validation.push_back({c.name, c.passed, c.detail});
    }
    r.notes = an.notes;
    if (!an.data) {
        return r;
    }
    const auto &ld = *an.data;
    const auto &field = ld.field();

    SpectralSection sp;
    sp.m = ld.m;
    for (const auto &c : ld.classes) {
        sp.classes.push_back({c.numerator, to_string(c.alpha), c.space.dim()});
    }
    sp.jordan = ld.jordan;
    sp.weight_center = ld.W.center;
    for (const auto &[k, s] : ld.W.steps) {
        (void)s;
        if (const auto g = ld.W.graded_dim(k); g > 0) {
            sp.weights.push_back({k, g});
        }
    }
    r.spectral = sp;

    NeronSection ns;
    ns.vanishing_rank = an.vanishing.van_dim;
    ns.d = an.vanishing.d;
    ns.a = an.a();
    ns.divisors = an.divisors;
    ns.quotient = an.quotient;
    for (const auto &[deg, dim] : an.grV) {
        ns.grV.emplace_back(to_string(deg), dim);
    }
    ns.steps = an.steps;
    for (std::size_t i = 0; i < an.basis.v.size(); ++i) {
        const auto &b = an.basis.v[i];
        ns.adapted_basis.push_back({b.cls, b.level, b.divisor, encode(b.w, field)});
        if (b.divisor == 0) {
            ns.fiber_indices.push_back(i + 1);
        }
    }
    ns.fiber = encode(sum_all(ld.rank(), an.fiber), field);
    ns.kernel_image = encode(an.ggk.space, field);
    ns.fiber_independent = an.fiber_independent;
    ns.two_path = an.two_path;
    ns.grV_identity = an.grV_identity;
    ns.center_is_kernel_image = an.center_is_kernel_image;
    ns.kernel_image_informational = an.ggk.informational;
    ns.gamma_regular = an.gamma_regular;
    ns.invariant_fiber_matches = an.invariant_image.fiber_matches;
    ns.invariant_codim_fiber = an.invariant_image.codim_fiber;
    ns.invariant_codim_kernel = an.invariant_image.codim_kernel;
    ns.invariant_rank_N_F1 = an.invariant_image.rank_N_F1;
    for (const auto &g : an.component_group) {
        ns.component_group.push_back(g.get_str());
    }
    ns.classification = to_string(an.classification);
    r.neron = ns;

    r.provenance.window_min = an.window.kmin;
    r.provenance.window_max = an.window.kmax;
    r.provenance.valid_up_to = "t-order " + std::to_string(an.window.kmax);
    return r;
}

namespace detail {

inline std::string scalar_text(const EncodedScalar &s) {
    if (s.size() == 1) {
        return s[0];
    }
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == "0") {
            continue;
        }
        const std::string mono = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
        std::string term = mono.empty() ? s[i] : (s[i] == "1" ? mono : (s[i] == "-1" ? "-" + mono : s[i] + "*" + mono));
        if (!out.empty()) {
            out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
        } else {
            out = term;
        }
    }
    return out.empty() ? "0" : out;
}

inline std::string vector_text(const EncodedVector &v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? ", " : "") + scalar_text(v[i]);
    }
    return out + ")";
}

template <class T> std::string list_text(const std::vector<T> &xs) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        os << (i ? "," : "") << xs[i];
    }
    os << "}";
    return os.str();
}

} // namespace detail

inline std::string validation_text(const ReportDocument &r) {
    std::ostringstream os;
    for (const auto &c : r.validation) {
        os << (c.passed ? "  ok    " : "  FAIL  ") << c.name;
        if (!c.passed && !c.detail.empty()) {
            os << ": " << c.detail;
        }
        os << "\n";
    }
    os << (r.valid ? "valid" : "invalid") << "\n";
    return os.str();
}

inline std::string chain_text(const ReportDocument &r) {
    std::ostringstream os;
    if (!r.neron) {
        return "no chain\n";
    }
    const auto &n = *r.neron;
    os << "divisors " << detail::list_text(n.divisors) << ", a = " << n.a << "\n";
    if (n.steps.empty()) {
        os << "empty chain\n";
    }
    for (const auto &s : n.steps) {
        os << "step " << s.k << ": blow up along t = 0";
        for (auto e : s.equations) {
            os << ", x" << e << " = 0";
        }
        os << " (codim " << s.center_codim << ", center dim " << s.center_dim << ")\n";
        os << "  transition:";
        for (auto [i, times_t] : s.transition) {
            os << " x" << i << (times_t ? " = t*x" + std::to_string(i) + "'" : " = x" + std::to_string(i) + "'");
        }
        os << "\n";
    }
    return os.str();
}

inline std::string report_text(const ReportDocument &r) {
    std::ostringstream os;
    os << "datum " << r.name << " (field order " << r.order << ")\n";
    os << "validation:\n" << validation_text(r);
    if (r.spectral) {
        const auto &s = *r.spectral;
        os << "m = " << s.m << ", alpha classes:";
        for (const auto &c : s.classes) {
            os << " " << c.alpha << " [dim " << c.dim << "]";
        }
        os << "\nJordan type of N " << detail::list_text(s.jordan) << ", weights:";
        for (const auto &w : s.weights) {
            os << " Gr_" << w.k << "=" << w.graded_dim;
        }
        os << "\n";
    }
    if (r.neron) {
        const auto &n = *r.neron;
        os << "vanishing rank " << n.vanishing_rank << ", d = " << detail::list_text(n.d) << "\n";
        os << chain_text(r);
        os << "image fiber: v_i with i in " << detail::list_text(n.fiber_indices) << "; preimage in H:\n";
        for (const auto &v : n.fiber) {
            os << "  " << detail::vector_text(v) << "\n";
        }
        os << "two-path agreement: " << (n.two_path ? "yes" : "no") << ", Gr_V identity: " << (n.grV_identity ? "yes" : "no")
           << ", fiber independent of k: " << (n.fiber_independent ? "yes" : "no") << "\n";
        os << "fiber vs H^inv: " << (n.invariant_fiber_matches ? "match" : "differ") << " (codims " << n.invariant_codim_fiber
           << ", " << n.invariant_codim_kernel << ", " << n.invariant_rank_N_F1 << ")\n";
        os << "pairing regularity: " << (n.gamma_regular ? "yes" : "no") << "\n";
        os << "component group:";
        if (n.component_group.empty()) {
            os << " trivial";
        }
        for (const auto &g : n.component_group) {
            os << " Z/" << g;
        }
        os << "\nclassification: " << n.classification << "\n";
    }
    for (const auto &note : r.notes) {
        os << note << "\n";
    }
    if (r.neron) {
        os << "window [" << r.provenance.window_min << ", " << r.provenance.window_max << "], valid up to "
           << r.provenance.valid_up_to << "\n";
    }
    return os.str();
}

} // namespace neron::io
