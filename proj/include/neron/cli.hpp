#pragma once

// Command-line front end. Exit codes: 0 success, 1 domain failure
// (invalid datum, infeasible request), 2 I/O or parse error.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "neron/gallery.hpp"
#include "neron/json_io.hpp"
#include "neron/poly_module.hpp"
#include "neron/random_datum.hpp"
#include "neron/report.hpp"

namespace neron::cli {

enum Exit { ok = 0, domain_failure = 1, io_failure = 2 };

namespace detail {

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_output(const std::string &path, const std::string &text, std::ostream &out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
        throw io_error("cannot write " + path);
    }
}

inline std::string table_row(const std::string &label, const std::vector<std::size_t> &xs) {
    std::ostringstream os;
    os << std::left << std::setw(16) << label;
    for (auto x : xs) {
        os << std::right << std::setw(5) << x;
    }
    return os.str() + "\n";
}

inline std::string degree_header(int from, int to) {
    std::ostringstream os;
    os << std::left << std::setw(16) << "degree";
    for (int d = from; d <= to; ++d) {
        os << std::right << std::setw(5) << d;
    }
    return os.str() + "\n";
}

inline std::string generator_text(const poly::Generators &g) {
    std::string out;
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
        out += "  (";
        for (std::size_t j = 0; j < g.elements[i].size(); ++j) {
            out += (j ? ", " : "") + g.elements[i][j].to_string();
        }
        out += ") in degree " + std::to_string(g.degrees[i]) + "\n";
    }
    return out;
}

} // namespace detail

// P1..P3 evidence tables; returns false if an expected property is missing.
inline bool poly_demo(const std::string &name, int D, std::ostream &out) {
    using namespace poly;
    if (name == "P1") {
        const auto I0 = maximal_ideal_I0(D);
        const auto dual = dual_module(I0, D);
        const auto rep = reflexivity_report(I0, D);
        out << "P1: I0 = (t1, t2) in Q[t1, t2], verified up to degree " << D << "\n";
        out << detail::degree_header(rep.from, D);
        out << detail::table_row("h(I0)", rep.hilbert);
        out << detail::table_row("h(I0^v)", hilbert_series(dual.module, rep.from, D));
        out << detail::table_row("h(I0^vv)", rep.double_dual);
        out << "dual generators:\n" << detail::generator_text(dual.generators);
        const bool dual_free = dual.generators.elements.size() == 1 && dual.module.rel_degrees.empty();
        out << "dual free of rank 1: " << (dual_free ? "yes" : "no") << "\n";
        out << "I0 reflexive: " << (rep.reflexive_evidence ? "yes" : "no") << " (h(I0) != h(I0^vv))\n";
        return dual_free && !rep.reflexive_evidence;
    }
    if (name == "P2") {
        const auto M = pullback_cokernel(D);
        const std::size_t s = 2;
        const auto w = torsion_check(M, t(s, 1), D);
        out << "P2: coker (t1, t1 t2)^T, generators in degrees (" << M.gen_degrees[0] << ", " << M.gen_degrees[1]
            << "), verified up to degree " << D << "\n";
        out << detail::degree_header(M.min_degree(), D);
        out << detail::table_row("h(M)", hilbert_series(M, M.min_degree(), D));
        if (!w) {
            out << "no t1-torsion found\n";
            return false;
        }
        out << "t1-torsion witness in degree " << w->degree << ": (" << w->element[0].to_string() << ", "
            << w->element[1].to_string() << ")\n";
        return true;
    }
    if (name == "P3") {
        const auto M = koszul_quotient(D);
        const auto dual = dual_module(M, D);
        const auto rep = reflexivity_report(M, D);
        const auto h = hilbert_series(M, 0, D);
        const auto hv = hilbert_series(dual.module, 1, D);
        out << "P3: M' = Q[t1, t2, t3]^3 / (t1, t2, t3), verified up to degree " << D << "\n";
        out << detail::degree_header(0, D);
        out << detail::table_row("h(M')", h);
        out << detail::table_row("h(M'^v)(d+1)", hv);
        out << detail::table_row("h(M'^vv)", rep.double_dual);
        out << detail::table_row("h(free)", rep.free_hilbert);
        out << "dual generators:\n" << detail::generator_text(dual.generators);
        bool self_dual = true;
        for (std::size_t i = 0; i + 1 < h.size() && i < hv.size(); ++i) {
            self_dual = self_dual && h[i] == hv[i];
        }
        out << "Hilbert function self-dual up to a shift by one: " << (self_dual ? "yes" : "no") << "\n";
        out << "reflexive evidence: " << (rep.reflexive_evidence ? "yes" : "no") << "\n";
        out << "free: " << (rep.free_evidence ? "yes" : "no") << "\n";
        return self_dual && rep.reflexive_evidence && !rep.free_evidence;
    }
    throw error("unknown presentation: " + name);
}

// Hilbert function, dual, reflexivity and optional torsion test of a loaded presentation.
inline void presentation_report(const io::PresentationDocument &doc, int D, std::ostream &out) {
    using namespace poly;
    const auto &M = doc.module;
    out << doc.name << ": " << M.gen_degrees.size() << " generators, " << M.rel_degrees.size()
        << " relations over Q[t1..t" << M.s << "], verified up to degree " << D << "\n";
    out << "generator degrees:";
    for (int g : M.gen_degrees) {
        out << " " << g;
    }
    out << "\nminimal generators:";
    for (const auto &[g, k] : minimal_generator_degrees(M)) {
        out << " " << k << " in degree " << g << ";";
    }
    out << "\n";
    const auto dual = dual_module(M, D);
    const auto rep = reflexivity_report(M, D);
    out << detail::degree_header(rep.from, D);
    out << detail::table_row("h(M)", rep.hilbert);
    out << detail::table_row("h(M^vv)", rep.double_dual);
    out << detail::table_row("h(free)", rep.free_hilbert);
    out << "dual generators:\n" << detail::generator_text(dual.generators);
    out << "reflexive evidence: " << (rep.reflexive_evidence ? "yes" : "no") << "\n";
    out << "free: " << (rep.free_evidence ? "yes" : "no") << "\n";
    if (doc.torsion_test) {
        const auto w = torsion_check(M, *doc.torsion_test, D);
        out << "torsion for " << doc.torsion_test->to_string() << ": ";
        if (!w) {
            out << "none up to degree " << D << "\n";
        } else {
            out << "witness in degree " << w->degree << ": (";
            for (std::size_t i = 0; i < w->element.size(); ++i) {
                out << (i ? ", " : "") << w->element[i].to_string();
            }
            out << ")\n";
        }
    }
}

inline int run(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Neron model chains for degenerating weight -1 variations"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string path, json_out, name;
    int window = 0;
    int degree_bound = 6;
    std::uint64_t seed = 0;
    std::size_t rank = 4;
    std::string jordan;
    bool semisimple = false;

    auto *validate = app.add_subcommand("validate", "check the axioms of a datum");
    auto *analyze = app.add_subcommand("analyze", "full analysis of a datum");
    auto *classify = app.add_subcommand("classify", "mirror quintic type of a datum");
    auto *chain = app.add_subcommand("chain", "blow-up chain of a datum");
    for (auto *sc : {validate, analyze, classify, chain}) {
        sc->add_option("path", path, "datum JSON file")->required();
        sc->add_option("--json", json_out, "write the JSON report to this path ('-' for stdout)");
        sc->add_option("--window", window, "truncation order K (window [-K, K])")->check(CLI::NonNegativeNumber);
    }
    auto *gallery = app.add_subcommand("gallery", "list or run builtin examples");
    gallery->add_option("name", name, "entry name, or 'all'");
    gallery->add_option("--json", json_out, "write the JSON report(s) to this path ('-' for stdout)");
    gallery->add_option("--window", window, "truncation order K")->check(CLI::NonNegativeNumber);
    gallery->add_option("--degree-bound", degree_bound, "degree bound for presentations")->check(CLI::PositiveNumber);
    auto *random = app.add_subcommand("random", "emit a pseudo-random valid datum");
    random->add_option("--seed", seed, "random seed");
    random->add_option("--rank", rank, "rank of H");
    random->add_option("--jordan", jordan, "block sizes of N, e.g. 2,2 or 4");
    random->add_flag("--semisimple", semisimple, "allow a nontrivial finite-order part");
    random->add_option("--json", json_out, "write the datum to this path instead of stdout");
    auto *poly_demo_cmd = app.add_subcommand("poly-demo", "graded module computations P1-P3");
    poly_demo_cmd->add_option("name", name, "P1, P2, P3 or all");
    poly_demo_cmd->add_option("--degree-bound", degree_bound, "verify up to this degree")->check(CLI::PositiveNumber);
    auto *presentation_opt =
        poly_demo_cmd->add_option("--presentation", path, "presentation JSON file instead of a builtin");
    presentation_opt->excludes(poly_demo_cmd->get_option("name"));

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : io_failure;
    }

    try {
        std::optional<Window> win;
        if (window > 0) {
            win.emplace(Window{-window, window});
        }
        auto emit_report = [&](const io::ReportDocument &r) {
            if (!json_out.empty()) {
                detail::write_output(json_out, io::dump(io::report_to_json(r)), out);
            }
        };
        auto load = [&]() { return io::parse_datum(detail::read_file(path)); };

        if (validate->parsed()) {
            const auto d = load();
            io::ReportDocument r;
            r.name = d.name;
            r.order = d.order;
            const auto v = validate_datum(d);
            r.valid = v.ok();
            for (const auto &c : v.checks) {
                r.validation.push_back({c.name, c.passed, c.detail});
            }
            out << "datum " << d.name << "\n" << io::validation_text(r);
            emit_report(r);
            return r.valid ? ok : domain_failure;
        }
        if (analyze->parsed() || classify->parsed() || chain->parsed()) {
            const auto an = neron::analyze(load(), win);
            const auto r = io::make_report(an);
            if (analyze->parsed()) {
                out << io::report_text(r);
            } else if (!r.valid) {
                out << io::validation_text(r);
            } else if (classify->parsed()) {
                out << r.neron->classification << "\n";
            } else {
                out << io::chain_text(r);
                for (const auto &note : r.notes) {
                    out << note << "\n";
                }
            }
            emit_report(r);
            return r.valid ? ok : domain_failure;
        }
        if (gallery->parsed()) {
            if (name.empty()) {
                for (const auto &e : gallery::entries()) {
                    out << std::left << std::setw(5) << e.name << e.description << "\n";
                }
                return ok;
            }
            std::vector<gallery::Entry> chosen;
            for (const auto &e : gallery::entries()) {
                if (name == "all" || e.name == name) {
                    chosen.push_back(e);
                }
            }
            if (chosen.empty()) {
                err << "unknown gallery entry: " << name << "\n";
                return domain_failure;
            }
            bool all_ok = true;
            nlohmann::json reports = nlohmann::json::array();
            for (const auto &e : chosen) {
                out << "== " << e.name << ": " << e.description << "\n";
                if (!e.degeneration) {
                    all_ok = poly_demo(e.name, degree_bound, out) && all_ok;
                    continue;
                }
                const auto r = io::make_report(neron::analyze(gallery::degeneration(e.name), win));
                out << io::report_text(r);
                all_ok = all_ok && r.valid;
                reports.push_back(io::report_to_json(r));
            }
            if (!json_out.empty()) {
                detail::write_output(json_out, io::dump(chosen.size() == 1 ? reports.at(0) : reports), out);
            }
            return all_ok ? ok : domain_failure;
        }
        if (random->parsed()) {
            RandomOptions opt;
            opt.seed = seed;
            opt.rank = rank;
            opt.semisimple = semisimple;
            if (!jordan.empty()) {
                std::vector<std::size_t> sizes;
                std::stringstream ss(jordan);
                std::string part;
                while (std::getline(ss, part, ',')) {
                    try {
                        std::size_t used = 0;
                        const long v = std::stol(part, &used);
                        if (used != part.size() || v <= 0) {
                            throw std::invalid_argument(part);
                        }
                        sizes.push_back(static_cast<std::size_t>(v));
                    } catch (const std::exception &) {
                        throw parse_error("bad Jordan type '" + jordan + "'");
                    }
                }
                opt.jordan = sizes;
                if (!random->count("--rank")) {
                    opt.rank = 0;
                }
            }
            const auto text = io::dump(io::datum_to_json(random_datum(opt)));
            detail::write_output(json_out.empty() ? "-" : json_out, text, out);
            return ok;
        }
        if (poly_demo_cmd->parsed()) {
            if (presentation_opt->count()) {
                const auto doc =
                    io::presentation_from_json(io::parse_json(detail::read_file(path)), degree_bound);
                presentation_report(doc, degree_bound, out);
                return ok;
            }
            const std::vector<std::string> names =
                name.empty() || name == "all" ? std::vector<std::string>{"P1", "P2", "P3"} : std::vector<std::string>{name};
            bool all_ok = true;
            for (const auto &n : names) {
                all_ok = poly_demo(n, degree_bound, out) && all_ok;
            }
            return all_ok ? ok : domain_failure;
        }
    } catch (const parse_error &e) {
        err << "parse error: " << e.what() << "\n";
        return io_failure;
    } catch (const io_error &e) {
        err << "I/O error: " << e.what() << "\n";
        return io_failure;
    } catch (const error &e) {
        err << "error: " << e.what() << "\n";
        return domain_failure;
    }
    return ok;
}

inline int run(int argc, char **argv, std::ostream &out, std::ostream &err) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

} // namespace neron::cli
