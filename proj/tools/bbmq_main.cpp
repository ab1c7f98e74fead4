// Command-line front end: parses a flat key-value problem config, dispatches
// solvers and studies, writes CSV artifacts plus a run summary.
//
// Exit codes: 0 success, 1 validation/config failure, 2 accuracy failure,
// 3 I/O failure.

#include "bbm/config.hpp"
#include "bbm/csv.hpp"
#include "bbm/errors.hpp"
#include "bbm/halfline.hpp"
#include "bbm/parallel.hpp"
#include "bbm/periodicity.hpp"
#include "bbm/reference.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace bbm;

namespace {

struct RunManifest {
    std::string command;
    std::string config_path;
    std::string output_dir = "out";
    long seed = 0;
    std::vector<std::string> overrides;
};

struct Summary {
    std::ostringstream lines;
    void note(const std::string& s) { lines << s << "\n"; }
};

RunSettings load_settings(const RunManifest& m) {
    std::map<std::string, std::string> kv;
    if (!m.config_path.empty()) {
        // parse once for line-number errors, then re-apply overrides on the map
        RunSettings parsed = parse_config(m.config_path);
        kv = config_to_map(parsed);
    }
    for (const auto& ov : m.overrides) apply_override(kv, ov);
    return settings_from_map(kv);
}

int validate_or_fail(const ProblemSpec& spec) {
    const auto violations = validate(spec);
    if (violations.empty()) return 0;
    for (const auto& v : violations)
        std::cerr << "validation failure: " << v.rule << " (" << v.detail << ")\n";
    return 1;
}

void write_summary(const RunManifest& m, const RunSettings& s, const Summary& extra,
                   double wall_seconds) {
    std::ostringstream os;
    os << "command: " << m.command << "\n";
    os << "seed: " << m.seed << "\n";
    os << "wall_seconds: " << wall_seconds << "\n";
    os << "quad.epsilon: " << s.quad.epsilon << "\n";
    os << "quad.rel_tol: " << s.quad.rel_tol << "\n";
    os << "--- parameters ---\n" << serialize_config(s);
    os << "--- results ---\n" << extra.lines.str();
    write_file((fs::path(m.output_dir) / "run_summary.txt").string(), os.str());
}

int cmd_solve(const RunManifest& m, const RunSettings& s, Summary& sum) {
    if (int rc = validate_or_fail(s.spec)) return rc;
    SolutionField field;
    if (s.spec.gamma == 0.0) {
        field.grid = s.grid;
        field.method = Method::TransportClosedForm;
        field.spec = s.spec;
        field.u.resize(s.grid.x.size(), s.grid.t.size());
        for (Eigen::Index i = 0; i < s.grid.x.size(); ++i)
            for (Eigen::Index j = 0; j < s.grid.t.size(); ++j)
                field.u(i, j) = transport_solution(s.spec, s.grid.x[i], s.grid.t[j]);
        sum.note("method: transport closed form (gamma = 0)");
    } else {
        field = solve_field(s.spec, s.grid, s.quad);
        sum.note("method: semianalytic");
    }
    std::ostringstream csv;
    write_solution_field_csv(csv, field);
    write_file((fs::path(m.output_dir) / "solve.csv").string(), csv.str());
    sum.note("points: " + std::to_string(field.u.size()));
    return 0;
}

int cmd_kernel(const RunManifest& m, const RunSettings& s, Summary& sum) {
    if (!(s.spec.gamma > 0.0)) {
        std::cerr << "validation failure: gamma must be > 0 for the kernel command\n";
        return 1;
    }
    KernelField kf = build_kernel_field(s.grid, s.spec.alpha, s.spec.gamma, s.quad);
    std::ostringstream csv;
    write_kernel_field_csv(csv, kf);
    write_file((fs::path(m.output_dir) / "kernel.csv").string(), csv.str());
    sum.note("phi samples: " + std::to_string(kf.phi_values.size()));
    const double sg = std::sqrt(s.spec.gamma);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < s.grid.x.size(); ++i) {
        const Eigen::Index j0 = Grid::find(s.grid.t, 0.0);
        if (j0 < 0) break;
        const double closed = std::exp(-std::abs(s.grid.x[i]) / sg) / (2.0 * sg);
        worst = std::max(worst, std::abs(kf.phi_values(i, j0) - closed));
    }
    sum.note("t=0 closed-form max abs deviation: " + std::to_string(worst));
    return 0;
}

int cmd_asymptotics(const RunManifest& m, const RunSettings& s, Summary& sum) {
    if (s.spec.alpha == 0.0) {
        std::cerr << "validation failure: stationary phase undefined for alpha = 0\n";
        return 1;
    }
    std::vector<AsymptoticsRow> rows;
    for (Segment seg : {Segment::I2, Segment::I4})
        for (Eigen::Index i = 0; i < s.grid.x.size(); ++i)
            for (Eigen::Index j = 0; j < s.grid.t.size(); ++j) {
                const double t = s.grid.t[j];
                if (!(t > 0.0)) continue;
                const auto cmp = asymptotic_vs_quadrature(seg, s.spec.alpha, s.spec.gamma,
                                                          s.grid.x[i], t, s.quad);
                rows.push_back({seg == Segment::I2 ? "I2" : "I4", s.spec.alpha,
                                s.spec.gamma, s.grid.x[i], t, cmp.exact, cmp.approx,
                                cmp.rel_err});
            }
    std::ostringstream csv;
    write_asymptotics_csv(csv, rows);
    write_file((fs::path(m.output_dir) / "asymptotics.csv").string(), csv.str());
    sum.note("comparison rows: " + std::to_string(rows.size()));
    return 0;
}

int cmd_periodicity(const RunManifest& m, const RunSettings& s, Summary& sum) {
    if (int rc = validate_or_fail(s.spec)) return rc;
    if (!s.spec.period) {
        std::cerr << "validation failure: periodicity command needs period\n";
        return 1;
    }
    std::ostringstream csv;
    bool first = true;
    for (Eigen::Index i = 0; i < s.grid.x.size(); ++i) {
        PeriodicityReport rep = periodicity_study(s.spec, s.grid.x[i], s.grid.t,
                                                  Method::Semianalytic, s.quad);
        std::ostringstream one;
        write_periodicity_csv(one, rep);
        std::string text = one.str();
        if (!first) text = text.substr(text.find('\n') + 1);  // drop repeated header
        csv << text;
        first = false;
        sum.note("x = " + std::to_string(s.grid.x[i]) +
                 ": slope = " + std::to_string(rep.fit.slope) +
                 ", bound constant = " + std::to_string(rep.bound_constant) +
                 (rep.fit.degenerate ? " (degenerate fit)" : ""));
    }
    write_file((fs::path(m.output_dir) / "periodicity.csv").string(), csv.str());
    return 0;
}

int cmd_compare(const RunManifest& m, const RunSettings& s, Summary& sum) {
    if (int rc = validate_or_fail(s.spec)) return rc;
    if (s.spec.beta_nl != 0.0) {
        std::cerr << "validation failure: compare needs the linearized equation "
                     "(beta = 0)\n";
        return 1;
    }
    FdConfig fd = s.fd;
    fd.L = std::max(fd.L, s.grid.x.maxCoeff() +
                              std::abs(s.spec.alpha) * s.grid.t.maxCoeff() + 10.0);
    const SolutionField sa = solve_field(s.spec, s.grid, s.quad);
    const SolutionField fdf = fd_solve(s.spec, fd, s.grid);
    SolutionField ie;
    const bool have_ie = s.spec.f.is_zero();
    if (have_ie) ie = integral_equation_solve(s.spec, s.picard, s.grid);

    std::vector<const SolutionField*> outs = {&sa, &fdf};
    if (have_ie) outs.push_back(&ie);
    for (const SolutionField* f : outs) {
        std::ostringstream csv;
        write_solution_field_csv(csv, *f);
        write_file((fs::path(m.output_dir) / ("solve_" + method_name(f->method) + ".csv"))
                       .string(),
                   csv.str());
    }
    const double d_sa_fd = (sa.u - fdf.u).abs().maxCoeff();
    sum.note("sup distance semianalytic vs fd: " + std::to_string(d_sa_fd));
    if (have_ie) {
        sum.note("sup distance semianalytic vs integral: " +
                 std::to_string((sa.u - ie.u).abs().maxCoeff()));
        sum.note("sup distance fd vs integral: " +
                 std::to_string((fdf.u - ie.u).abs().maxCoeff()));
    } else {
        sum.note("integral-equation solver skipped (forcing f is nonzero)");
    }
    return 0;
}

int cmd_transform_check(const RunManifest& m, const RunSettings& s, Summary& sum) {
    const FunctionDescriptor& u = s.spec.u0;
    if (u.kind == FunctionKind::Zero || !decays_integrably(u)) {
        std::cerr << "validation failure: transform-check needs a decaying nonzero u0\n";
        return 1;
    }
    const double x_max = 10.0;
    // functions with u(0) ~ 0 have fast-decaying transforms; a jump at 0 puts
    // a 1/xi tail on P(u) and needs a wide band for the truncated inversion
    const double u00 = std::abs(eval_function(u, 0.0));
    const double M_grid = u00 < 1e-6
                              ? std::max(60.0, 30.0 / decay_scale(u) + 2.0 * std::abs(
                                                   u.kind == FunctionKind::Gaussian
                                                       ? u.params[1] : 0.0))
                              : 5e4;
    const int n = 2 * (int)std::ceil(M_grid * 4.0 * x_max / 3.141592653589793) + 1;
    HalfLineTransform tr = sample_transform(u, M_grid, std::min(n, 2'600'001), s.quad);

    std::mt19937_64 rng((uint64_t)s.grid.x.size() * 1315423911u + (uint64_t)m.seed);
    std::uniform_real_distribution<double> ux(0.05, x_max);
    std::ostringstream csv;
    csv.imbue(std::locale::classic());
    csv.precision(17);
    csv << "x,u_exact,u_roundtrip,abs_err\n";
    double worst = 0.0;
    auto probe = [&](double x) {
        const double exact = eval_function(u, x);
        const double rec = invert(tr, x);
        worst = std::max(worst, std::abs(rec - exact));
        csv << x << "," << exact << "," << rec << "," << std::abs(rec - exact) << "\n";
    };
    for (Eigen::Index i = 0; i < s.grid.x.size(); ++i)
        if (s.grid.x[i] > 0.0 && s.grid.x[i] <= x_max) probe(s.grid.x[i]);
    for (int k = 0; k < 16; ++k) probe(ux(rng));
    write_file((fs::path(m.output_dir) / "transform_check.csv").string(), csv.str());

    const double defect = plancherel_defect(u, s.quad);
    sum.note("round-trip max abs err: " + std::to_string(worst));
    sum.note("plancherel defect: " + std::to_string(defect));
    if (worst > 1e-4 || defect > 1e-6)
        throw AccuracyError("transform-check tolerances exceeded", 1e-4,
                            std::max(worst, defect));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quarter-plane BBM solver and eventual-periodicity studies"};
    app.require_subcommand(1);

    RunManifest manifest;
    app.add_option("--config", manifest.config_path, "problem config file");
    app.add_option("--out", manifest.output_dir, "output directory");
    app.add_option("--seed", manifest.seed, "seed for randomized sweeps");
    app.add_option("--set", manifest.overrides, "key=value override (repeatable)");

    for (const char* name : {"solve", "kernel", "asymptotics", "periodicity", "compare",
                             "transform-check"})
        app.add_subcommand(name);

    CLI11_PARSE(app, argc, argv);
    manifest.command = app.get_subcommands().front()->get_name();

    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::error_code ec;
        fs::create_directories(manifest.output_dir, ec);
        if (ec) {
            std::cerr << "i/o failure: cannot create output dir '" << manifest.output_dir
                      << "'\n";
            return 3;
        }
        RunSettings settings = load_settings(manifest);
        Summary sum;
        int rc = 0;
        if (manifest.command == "solve") rc = cmd_solve(manifest, settings, sum);
        else if (manifest.command == "kernel") rc = cmd_kernel(manifest, settings, sum);
        else if (manifest.command == "asymptotics")
            rc = cmd_asymptotics(manifest, settings, sum);
        else if (manifest.command == "periodicity")
            rc = cmd_periodicity(manifest, settings, sum);
        else if (manifest.command == "compare") rc = cmd_compare(manifest, settings, sum);
        else if (manifest.command == "transform-check")
            rc = cmd_transform_check(manifest, settings, sum);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (rc == 0) write_summary(manifest, settings, sum, wall);
        return rc;
    } catch (const ConfigError& e) {
        std::cerr << "config failure: " << e.what() << "\n";
        return 1;
    } catch (const AccuracyError& e) {
        std::cerr << "accuracy failure: " << e.what() << "\n";
        return 2;
    } catch (const StabilityError& e) {
        std::cerr << "accuracy failure: " << e.what() << "\n";
        return 2;
    } catch (const RangeError& e) {
        std::cerr << "i/o failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 2;
    }
}
