// ccfinder: evaluate, trace, verify, solve and certify planar central
// configurations of the two-isosceles-triangle 6-body family.

#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccfinder/continuation.hpp"
#include "ccfinder/family.hpp"
#include "ccfinder/io.hpp"
#include "ccfinder/mass_solver.hpp"
#include "ccfinder/potential.hpp"

namespace {

using namespace ccfinder;

enum class Format { json, csv };

// The hexagon anchor sits at y = sqrt3, so the CLI accepts the token "sqrt3"
// anywhere a scalar is expected, expanded to full double precision.
double parse_scalar(const std::string& s) {
    if (s == "sqrt3") return std::numbers::sqrt3;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw DomainError("not a number: '" + s + "' (decimals or the token 'sqrt3')");
    }
    return v;
}

Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    throw DomainError("--format must be json or csv");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file: " + out_path);
    f << text;
}

// Scalar reports are a JSON object or "key,value" CSV rows, both with
// 17-significant-digit numbers.
class Report {
public:
    void add(const std::string& key, double v) { rows_.push_back({key, json_number(v)}); }
    void add(const std::string& key, int v) { rows_.push_back({key, std::to_string(v)}); }
    void add(const std::string& key, bool v) { rows_.push_back({key, v ? "true" : "false"}); }
    void add_string(const std::string& key, const std::string& v) {
        rows_.push_back({key, '"' + v + '"'});
    }
    void add_raw(const std::string& key, const std::string& json_value) {
        rows_.push_back({key, json_value});
    }

    std::string render(Format fmt) const {
        std::ostringstream os;
        if (fmt == Format::json) {
            os << "{\n";
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                os << "  \"" << rows_[i].first << "\": " << rows_[i].second
                   << (i + 1 < rows_.size() ? "," : "") << "\n";
            }
            os << "}\n";
        } else {
            os << "key,value\n";
            for (const auto& [k, v] : rows_) {
                std::string flat = v;
                if (flat.size() >= 2 && flat.front() == '"' && flat.back() == '"') {
                    flat = flat.substr(1, flat.size() - 2);
                }
                os << k << ',' << flat << '\n';
            }
        }
        return os.str();
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

std::string json_vec2_array(const std::vector<Vec2>& vs) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < vs.size(); ++i) {
        os << (i ? ", " : "") << '[' << json_number(vs[i].x) << ", "
           << json_number(vs[i].y) << ']';
    }
    os << ']';
    return os.str();
}

template <typename Seq>
std::string json_array(const Seq& vs) {
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (double v : vs) {
        os << (first ? "" : ", ") << json_number(v);
        first = false;
    }
    os << ']';
    return os.str();
}

int cmd_evaluate(const std::string& xs, const std::string& ys,
                 const std::string& ms, Format fmt, const std::string& out) {
    const double x = parse_scalar(xs);
    const double y = parse_scalar(ys);
    std::optional<double> m;
    if (!ms.empty()) m = parse_scalar(ms);
    const FamilyEvaluation e = evaluate_family(x, y, m);

    Report r;
    r.add("x", e.x);
    r.add("y", e.y);
    r.add("m1", e.m1);
    r.add("m2", e.m2);
    r.add("F", e.F);
    if (e.m) {
        r.add("m", *e.m);
        r.add("lambda_rect_horizontal", e.lambdas->rect_horizontal);
        r.add("lambda_rect_vertical", e.lambdas->rect_vertical);
        r.add("lambda_apex_axial", e.lambdas->apex_axial);
        const PlanarConfiguration cfg = build_configuration({x, y, *e.m});
        const CCScalars sc = lambda_of(cfg);
        r.add("lambda_from_potential", sc.lambda);
        r.add("residual_max_norm", cc_residual_direct(cfg, sc.lambda).max_norm);
    }
    emit(r.render(fmt), out);
    return 0;
}

int cmd_trace(const std::string& y_min_s, const std::string& y_max_s,
              const std::string& step_s, double tol, Format fmt,
              const std::string& out) {
    const CurveTrace trace =
        trace_curve(parse_scalar(y_min_s), parse_scalar(y_max_s), parse_scalar(step_s), tol);
    std::ostringstream os;
    if (fmt == Format::csv) {
        write_trace_csv(os, trace);
    } else {
        write_trace_json(os, trace);
    }
    emit(os.str(), out);
    return 0;
}

int cmd_masses(const std::string& xs, const std::string& ys, double tol,
               Format fmt, const std::string& out) {
    const double x = parse_scalar(xs);
    const double y = parse_scalar(ys);
    const MassSolution sol = solve_masses(x, y, tol);

    Report r;
    r.add("x", x);
    r.add("y", y);
    r.add("nullspace_dim", sol.nullspace_dim);
    r.add("smallest_singular_value", sol.smallest_singular_value);
    r.add("largest_singular_value", sol.largest_singular_value);
    if (sol.nullspace_dim == 0) {
        r.add_string("message", "no central configuration at this geometry");
    } else {
        r.add_raw("masses", json_array(sol.masses));
        r.add("lambda", sol.lambda);
        r.add("all_masses_positive", sol.all_masses_positive);
        r.add("valid", sol.valid);
        r.add("degenerate_rank", sol.degenerate_rank);
        r.add("residual_max_norm", sol.residual_norm);
        const SymmetryReport sym = check_symmetry_relations(sol.masses, y);
        r.add_raw("symmetry_gaps", json_array(sym.gaps));
        r.add_raw("relation_defects", json_array(sym.relation_defects));
        r.add("degenerate_coefficients", sym.degenerate_coefficients);
    }
    emit(r.render(fmt), out);
    return 0;
}

int cmd_verify(const std::string& path, double tol, Format fmt, const std::string& out) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot open configuration file: " + path);
    const PlanarConfiguration cfg = read_configuration_json(f);
    const VerifyResult v = verify_central_configuration(cfg, tol);

    Report r;
    r.add("bodies", static_cast<int>(cfg.size()));
    r.add("tol", v.tol);
    r.add("U", v.scalars.U);
    r.add("I", v.scalars.I);
    r.add("lambda", v.scalars.lambda);
    r.add("M", v.scalars.M);
    r.add_raw("center_shift", "[" + json_number(v.applied_shift.x) + ", " +
                                  json_number(v.applied_shift.y) + "]");
    r.add("direct_max_norm", v.direct.max_norm);
    r.add("weighted_max_norm", v.weighted.max_norm);
    if (fmt == Format::json) {
        r.add_raw("direct_per_body", json_vec2_array(v.direct.per_body));
        r.add_raw("weighted_per_body", json_vec2_array(v.weighted.per_body));
    }
    r.add_string("verdict", v.pass ? "PASS" : "FAIL");
    emit(r.render(fmt), out);
    return 0;
}

int cmd_certify(const std::string& xs, const std::string& ys, Format fmt,
                const std::string& out) {
    const double x = parse_scalar(xs);
    const double y = parse_scalar(ys);
    const IftCertificate c = ift_certificate(x, y);

    Report r;
    r.add("x", x);
    r.add("y", y);
    r.add("dm1_dx", c.dm1_dx);
    r.add("dm2_dx", c.dm2_dx);
    r.add("dF_dx", c.dF_dx);
    r.add("err_m1", c.err_m1);
    r.add("err_m2", c.err_m2);
    r.add("ift_hypothesis_holds", std::abs(c.dF_dx) >= kDfdxDegenerateTol);
    emit(r.render(fmt), out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Central configurations of the planar two-triangle 6-body family"};
    app.require_subcommand(1);

    std::string fmt_str;
    std::string out_path;
    std::string xs, ys, ms, path_s, y_min_s, y_max_s, step_s;
    double tol = -1.0;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", fmt_str, "output format: json or csv");
        cmd->add_option("--out", out_path, "write output to this file instead of stdout");
        cmd->add_option("--tol", tol, "tolerance (meaning depends on the command)");
    };

    auto* evaluate = app.add_subcommand(
        "evaluate", "closed-form masses m1, m2 and their defect F at (x, y)");
    evaluate->add_option("x", xs)->required();
    evaluate->add_option("y", ys)->required();
    evaluate->add_option("m", ms, "apex mass; adds the reduced multipliers and residual");
    add_common(evaluate);

    auto* trace = app.add_subcommand(
        "trace", "trace the solution curve x = phi(y) over [y_min, y_max]");
    trace->add_option("y_min", y_min_s)->required();
    trace->add_option("y_max", y_max_s)->required();
    trace->add_option("step", step_s)->required();
    add_common(trace);

    auto* verify = app.add_subcommand(
        "verify", "check a configuration file against the CC equations");
    verify->add_option("file", path_s)->required();
    add_common(verify);

    auto* masses = app.add_subcommand(
        "masses", "solve for all admissible masses at a geometry (x, y)");
    masses->add_option("x", xs)->required();
    masses->add_option("y", ys)->required();
    add_common(masses);

    auto* certify = app.add_subcommand(
        "certify", "finite-difference certificate of dF/dx at (x, y)");
    certify->add_option("x", xs)->required();
    certify->add_option("y", ys)->required();
    add_common(certify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const Format fmt = fmt_str.empty()
                               ? (trace->parsed() ? Format::csv : Format::json)
                               : parse_format(fmt_str);
        if (evaluate->parsed()) return cmd_evaluate(xs, ys, ms, fmt, out_path);
        if (trace->parsed()) {
            return cmd_trace(y_min_s, y_max_s, step_s,
                             tol > 0 ? tol : kRootTolDefault, fmt, out_path);
        }
        if (masses->parsed()) {
            return cmd_masses(xs, ys, tol > 0 ? tol : kRankTol, fmt, out_path);
        }
        if (verify->parsed()) {
            return cmd_verify(path_s, tol > 0 ? tol : 1e-10, fmt, out_path);
        }
        if (certify->parsed()) return cmd_certify(xs, ys, fmt, out_path);
        return 2;
    } catch (const SingularDivisorError& e) {
        std::cerr << "singularity: " << e.what() << "\n";
        return 3;
    } catch (const AnchorFailureError& e) {
        std::cerr << "anchor failure: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
