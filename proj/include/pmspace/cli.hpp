#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chart.hpp"
#include "densify.hpp"
#include "extend.hpp"
#include "family.hpp"
#include "io.hpp"
#include "validation.hpp"

namespace pmspace::cli {

// Exit codes: 0 success / positive verdict, 1 usage error, 2 negative
// validation verdict, 3 parse or format error, 4 domain error from a
// library precondition.

namespace detail {

inline std::size_t to_index(long long one_based, std::size_t n, const char* what) {
    if (one_based < 1) throw domain_error(std::string(what) + ": indices are 1-based");
    const auto idx = static_cast<std::size_t>(one_based - 1);
    if (idx >= n) throw domain_error(std::string(what) + ": index out of range");
    return idx;
}

inline io::json report_to_json(const ValidationReport& report, std::size_t n, double tolerance) {
    io::json j;
    j["n"] = n;
    j["tolerance"] = tolerance;
    j["is_pseudometric"] = report.is_pseudometric;
    j["is_metric"] = report.is_metric;
    io::json violations = io::json::array();
    for (const Violation& v : report.violations) {
        io::json jv;
        jv["kind"] = to_string(v.kind);
        std::vector<std::size_t> one_based(v.indices);
        for (std::size_t& idx : one_based) idx += 1;
        jv["indices"] = one_based;
        jv["magnitude"] = v.magnitude;
        violations.push_back(std::move(jv));
    }
    j["violations"] = std::move(violations);
    return j;
}

inline std::string point_name(std::size_t idx, const std::optional<std::vector<std::string>>& labels) {
    if (labels && idx - 1 < labels->size()) return (*labels)[idx - 1];
    return "x" + std::to_string(idx);
}

inline void print_report_pretty(std::ostream& out, const ValidationReport& report,
                                const std::optional<std::vector<std::string>>& labels) {
    out << "pseudometric: " << (report.is_pseudometric ? "yes" : "no") << "\n";
    out << "metric:       " << (report.is_metric ? "yes" : "no") << "\n";
    if (report.violations.empty()) return;
    out << "violations (" << report.violations.size() << "):\n";
    for (const Violation& v : report.violations) {
        out << "  " << to_string(v.kind) << " (";
        for (std::size_t i = 0; i < v.indices.size(); ++i)
            out << (i ? "," : "") << point_name(v.indices[i] + 1, labels);
        out << "): magnitude " << io::format_double(v.magnitude) << "\n";
    }
}

}  // namespace detail

/// Parses and runs one invocation. `args` holds the arguments without the
/// program name; results go to `out`, diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite pseudometric and metric space toolkit"};
    app.name("pmspace");
    bool pretty = false;
    app.add_flag("--pretty", pretty, "render results as prose instead of JSON");
    app.require_subcommand(1);

    std::string matrix_path, coords_path, base_path, subset_path, target_path, separation_path;
    std::string bits;
    bool want_metric = false, natural = false, metric_only = false;
    double tolerance = 1e-12, epsilon = 0.0, cap = 0.0, floor_value = 0.0;
    long long full_n = 0, sample_n = 0;
    std::uint64_t seed = 0;
    std::vector<long long> indices, pair;

    CLI::App* v = app.add_subcommand("validate", "check the pseudometric/metric axioms");
    v->add_option("matrix", matrix_path, "matrix file (CSV or JSON)")->required();
    v->add_flag("--metric", want_metric, "require a metric, not just a pseudometric");
    v->add_option("--tolerance", tolerance, "absolute slack for triangle checks");

    CLI::App* enc = app.add_subcommand("encode", "matrix -> cube-chart coordinates");
    enc->add_option("matrix", matrix_path, "matrix file (CSV or JSON)")->required();
    enc->add_flag("--natural", natural, "emit per-level coordinates instead of the canonical form");

    CLI::App* dec = app.add_subcommand("decode", "cube-chart coordinates -> matrix");
    dec->add_option("coords", coords_path, "coords file (JSON)")->required();

    CLI::App* den = app.add_subcommand("densify", "pseudometric -> metric within epsilon");
    den->add_option("matrix", matrix_path, "matrix file (CSV or JSON)")->required();
    den->add_option("--epsilon", epsilon, "sup-distance budget")->required();
    den->add_option("--base", base_path, "metric to max against (entries <= epsilon)");

    CLI::App* ext = app.add_subcommand("extend", "extend a metric from a subset, capped");
    ext->add_option("--subset", subset_path, "metric on the subset")->required();
    ext->add_option("--indices", indices, "1-based positions of the subset points")
        ->required()
        ->delimiter(',');
    ext->add_option("--n", full_n, "size of the full set")->required();
    ext->add_option("--target", target_path, "template metric on the full set")->required();
    ext->add_option("--cap", cap, "upper bound for every entry")->required();
    CLI::Option* floor_opt =
        ext->add_option("--floor", floor_value,
                        "lower bound for new distances (default: 1e-3 of the smallest subset entry)");

    CLI::App* per = app.add_subcommand("perturb", "add an epsilon bump across one pair");
    per->add_option("matrix", matrix_path, "matrix file (CSV or JSON)")->required();
    per->add_option("--pair", pair, "1-based pair i,j")->required()->delimiter(',');
    per->add_option("--epsilon", epsilon, "bump size")->required();

    CLI::App* fam = app.add_subcommand("family", "binary pseudometric family");
    CLI::Option* fam_bits = fam->add_option("--bits", bits, "bit string selecting one member");
    CLI::Option* fam_sep =
        fam->add_option("--separation", separation_path, "file of bit strings, one per line");
    fam_bits->excludes(fam_sep);

    CLI::App* smp = app.add_subcommand("sample", "draw a random pseudometric");
    smp->add_option("--n", sample_n, "number of points")->required();
    smp->add_option("--seed", seed, "generator seed")->required();
    smp->add_flag("--metric", metric_only, "redraw until the sample is a metric");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (v->parsed()) {
            const io::MatrixDocument doc = io::read_matrix_file(matrix_path);
            const ValidationReport report = validate(doc.matrix, Tolerance{tolerance});
            if (pretty)
                detail::print_report_pretty(out, report, doc.labels);
            else
                out << detail::report_to_json(report, doc.matrix.size(), tolerance).dump(2) << "\n";
            const bool positive = want_metric ? report.is_metric : report.is_pseudometric;
            return positive ? 0 : 2;
        }
        if (enc->parsed()) {
            const io::MatrixDocument doc = io::read_matrix_file(matrix_path);
            const NaturalCoords coords = encode_natural(doc.matrix);
            if (natural)
                out << io::natural_to_json(coords).dump(2) << "\n";
            else
                out << io::canonical_to_json(to_canonical(coords)).dump(2) << "\n";
            return 0;
        }
        if (dec->parsed()) {
            const io::Coords coords = io::read_coords_file(coords_path);
            const NaturalCoords natural_coords =
                std::holds_alternative<NaturalCoords>(coords)
                    ? std::get<NaturalCoords>(coords)
                    : from_canonical(std::get<CanonicalCoords>(coords));
            out << io::format_matrix_csv(decode_natural(natural_coords));
            return 0;
        }
        if (den->parsed()) {
            const io::MatrixDocument doc = io::read_matrix_file(matrix_path);
            std::optional<DistanceMatrix> base;
            if (!base_path.empty()) base = io::read_matrix_file(base_path).matrix;
            out << io::format_matrix_csv(densify(doc.matrix, epsilon, base));
            return 0;
        }
        if (ext->parsed()) {
            const DistanceMatrix e = io::read_matrix_file(subset_path).matrix;
            const DistanceMatrix target = io::read_matrix_file(target_path).matrix;
            if (full_n < 0) throw domain_error("extend: n must be nonnegative");
            const auto n = static_cast<std::size_t>(full_n);
            std::vector<std::size_t> subset;
            for (long long idx : indices) subset.push_back(detail::to_index(idx, n, "extend"));
            if (floor_opt->count() == 0) {
                const double least = e.min_off_diagonal();
                floor_value = 1e-3 * (std::isfinite(least) ? least : cap);
            }
            out << io::format_matrix_csv(extend_metric(e, n, subset, target, cap, floor_value));
            return 0;
        }
        if (per->parsed()) {
            const io::MatrixDocument doc = io::read_matrix_file(matrix_path);
            if (pair.size() != 2) throw domain_error("perturb: --pair needs exactly two indices");
            const std::size_t i = detail::to_index(pair[0], doc.matrix.size(), "perturb");
            const std::size_t j = detail::to_index(pair[1], doc.matrix.size(), "perturb");
            out << io::format_matrix_csv(perturb(doc.matrix, i, j, epsilon));
            return 0;
        }
        if (fam->parsed()) {
            if (!bits.empty()) {
                FamilySelector sel;
                for (char ch : bits) {
                    if (ch != '0' && ch != '1') throw parse_error("family: bits must be 0s and 1s");
                    sel.bits.push_back(ch - '0');
                }
                out << io::format_matrix_csv(family_member(sel));
                return 0;
            }
            if (separation_path.empty()) {
                err << "error: family needs --bits or --separation\n";
                return 1;
            }
            std::istringstream lines(io::read_text_file(separation_path));
            std::vector<FamilySelector> selectors;
            std::string line;
            while (std::getline(lines, line)) {
                while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
                if (line.empty()) continue;
                FamilySelector sel;
                for (char ch : line) {
                    if (ch != '0' && ch != '1') throw parse_error("family: bits must be 0s and 1s");
                    sel.bits.push_back(ch - '0');
                }
                selectors.push_back(std::move(sel));
            }
            const double sep = family_separation(selectors);
            if (pretty) {
                out << "members: " << selectors.size() << "\n";
                out << "separation: " << (std::isinf(sep) ? "none (single member)" : io::format_double(sep))
                    << "\n";
            } else {
                io::json j;
                j["count"] = selectors.size();
                j["k"] = selectors.front().bits.size();
                if (std::isinf(sep))
                    j["separation"] = nullptr;
                else
                    j["separation"] = sep;
                out << j.dump(2) << "\n";
            }
            return 0;
        }
        if (smp->parsed()) {
            if (sample_n < 1) throw domain_error("sample: n must be at least 1");
            out << io::format_matrix_csv(
                sample_pseudometric(static_cast<std::size_t>(sample_n), seed, metric_only));
            return 0;
        }
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const pmspace::error& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
    return 1;
}

}  // namespace pmspace::cli
