#include "bbm/periodicity.hpp"
#include "bbm/errors.hpp"
#include "bbm/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bbm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Taylor coefficients of W(beta) = integral_{-T0}^0 e^{i beta tau} F_ext(tau) dtau
// in powers of beta: v_n = i^n/n! integral tau^n F_ext(tau) dtau. The window is
// one period long, so |beta T0| stays small and the series converges fast.
std::vector<cplx> window_taylor(const std::function<double(double)>& F_ext, double T0,
                                int orders) {
    std::vector<cplx> v(orders);
    double fact = 1.0;
    for (int n = 0; n < orders; ++n) {
        if (n > 1) fact *= n;
        if (n == 1) fact = 1.0;
        auto f = [&](quad::real_t tau) -> quad::real_t {
            return F_ext((double)tau) * std::pow((double)tau, n);
        };
        const double mom = (double)quad::integrate_adaptive<quad::real_t>(
            f, (quad::real_t)(-T0), 0.0L, 1e-14L, 1e-12L);
        v[n] = std::pow(cplx(0.0, 1.0), n) * mom / fact;
    }
    return v;
}

cplx eval_taylor(const std::vector<cplx>& taylor, double b) {
    cplx acc = 0.0;
    double bn = 1.0;
    for (size_t n = 0; n < taylor.size(); ++n) {
        acc += taylor[n] * bn;
        bn *= b;
    }
    return acc;
}

} // namespace

double defect_direct(const SolutionField& u, double x, double t, double T0) {
    return u.at(x, t + T0) - u.at(x, t);
}

double defect_direct(const SemianalyticWorkspace& ws, double x, double t, double T0) {
    return ws.solve(x, t + T0) - ws.solve(x, t);
}

double defect_representation(const ProblemSpec& spec, double x, double t,
                             const QuadratureConfig& qc) {
    if (!(spec.gamma > 0.0)) throw ConfigError("defect representation requires gamma > 0");
    if (!spec.period) throw ConfigError("defect representation needs spec.period");
    const double T0 = *spec.period;
    const double sg = std::sqrt(spec.gamma);
    const double alpha = spec.alpha, gamma = spec.gamma;
    const int orders = SeriesXi::kOrder + 4;

    double total = 0.0;

    // amplitude q(xi) * S(xi) * W(beta(xi)) integrated against e^{i(x xi - beta t)}
    auto add_piece = [&](const OscAmplitude& amp, double scale) {
        total += scale * osc_full_line(amp, x, t, alpha, gamma, qc).value;
    };

    if (!spec.f.is_zero()) {
        auto cache = std::make_shared<TransformCache>(spec.f.spatial, qc);
        auto taylor = window_taylor(
            [&](double tau) { return eval_function(spec.f.temporal, tau + T0); }, T0, orders);
        OscAmplitude amp;
        amp.eval = [cache, taylor, alpha, gamma](double xi) {
            const cplx w = eval_taylor(taylor, beta_phase(xi, alpha, gamma));
            return cache->value(xi) * cplxl(w.real(), w.imag()) /
                   (1.0L + (long double)gamma * (long double)xi * xi);
        };
        amp.series_at = [cache, taylor, alpha, gamma](double vf) {
            return series_lorentzian(gamma, vf)
                .times(cache->series(vf))
                .times(series_analytic_in_beta(taylor, alpha, gamma, vf));
        };
        amp.suggested_lambda =
            std::max({4.0, 6.0 / decay_scale(spec.f.spatial), 4.0 / std::sqrt(gamma)});
        add_piece(amp, 1.0);
    }

    if (alpha != 0.0 && spec.u0.kind != FunctionKind::Zero) {
        // -alpha u0'(y) is tau-independent; its window factor is
        // integral_{-T0}^0 e^{i beta tau} dtau. P(u0') = i xi P(u0) - u0(0).
        auto cache = std::make_shared<TransformCache>(spec.u0, qc);
        auto taylor = window_taylor([](double) { return 1.0; }, T0, orders);
        const double u00 = eval_function(spec.u0, 0.0);
        OscAmplitude amp;
        amp.eval = [cache, taylor, alpha, gamma, u00](double xi) {
            const cplxl pu_prime = cplxl(0.0L, xi) * cache->value(xi) - (long double)u00;
            const cplx w = eval_taylor(taylor, beta_phase(xi, alpha, gamma));
            return pu_prime * cplxl(w.real(), w.imag()) /
                   (1.0L + (long double)gamma * (long double)xi * xi);
        };
        amp.series_at = [cache, taylor, alpha, gamma](double vf) {
            const SeriesXi pu = cache->series(vf);
            SeriesXi pup;  // i xi * P(u0) - u0(0): the constant cancels c[1] exactly
            pup.valid_from = pu.valid_from;
            for (int k = 1; k < SeriesXi::kOrder; ++k)
                pup.c[k] = cplx(0.0, 1.0) * pu.c[k + 1];
            pup.rem = pu.rem * vf;  // one power of decay spent on the xi factor
            return series_lorentzian(gamma, vf)
                .times(pup)
                .times(series_analytic_in_beta(taylor, alpha, gamma, vf));
        };
        amp.suggested_lambda = std::max(4.0, 6.0 / decay_scale(spec.u0));
        add_piece(amp, -alpha);
    }

    if (alpha != 0.0 && spec.g.kind != FunctionKind::Zero) {
        auto cache = std::make_shared<TransformCache>(
            FunctionDescriptor::exp_decay(1.0, 1.0 / sg), qc);
        auto taylor = window_taylor(
            [&](double tau) { return eval_function(spec.g, tau + T0); }, T0, orders);
        OscAmplitude amp;
        amp.eval = [cache, taylor, alpha, gamma](double xi) {
            const cplx w = eval_taylor(taylor, beta_phase(xi, alpha, gamma));
            return cache->value(xi) * cplxl(w.real(), w.imag()) /
                   (1.0L + (long double)gamma * (long double)xi * xi);
        };
        amp.series_at = [cache, taylor, alpha, gamma](double vf) {
            return series_lorentzian(gamma, vf)
                .times(cache->series(vf))
                .times(series_analytic_in_beta(taylor, alpha, gamma, vf));
        };
        amp.suggested_lambda = std::max(4.0, 4.0 / std::sqrt(gamma));
        add_piece(amp, alpha / sg);
    }

    return total / kTwoPi;
}

double periodicity_bound_constant(const ProblemSpec& spec) {
    if (!spec.period) throw ConfigError("bound constant needs spec.period");
    const double T0 = *spec.period;
    double acc = 0.0;
    if (!spec.f.is_zero()) {
        const double sp = (double)quad::integrate_adaptive<quad::real_t>(
            [&](quad::real_t y) -> quad::real_t {
                return std::abs(eval_function(spec.f.spatial, (double)y));
            },
            0.0L, (quad::real_t)integration_extent(spec.f.spatial), 1e-12L, 1e-10L);
        const double tp = (double)quad::integrate_adaptive<quad::real_t>(
            [&](quad::real_t tau) -> quad::real_t {
                return std::abs(eval_function(spec.f.temporal, (double)tau + T0));
            },
            (quad::real_t)(-T0), 0.0L, 1e-12L, 1e-10L);
        acc += sp * tp;
    }
    acc += std::abs(spec.alpha) * T0 * derivative_l1_norm(spec.u0, 1);
    if (spec.g.kind != FunctionKind::Zero) {
        acc += std::abs(spec.alpha) * (double)quad::integrate_adaptive<quad::real_t>(
                   [&](quad::real_t tau) -> quad::real_t {
                       return std::abs(eval_function(spec.g, (double)tau + T0));
                   },
                   (quad::real_t)(-T0), 0.0L, 1e-12L, 1e-10L);
    }
    return acc;
}

Eigen::ArrayXd geometric_schedule(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw ConfigError("bad geometric schedule");
    Eigen::ArrayXd t(n);
    for (int i = 0; i < n; ++i) t[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return t;
}

PeriodicityReport periodicity_study(const ProblemSpec& spec, double x,
                                    const Eigen::ArrayXd& t_schedule, Method solver,
                                    const QuadratureConfig& qc) {
    if (!spec.period) throw ConfigError("periodicity study needs spec.period");
    if (std::abs(eval_function(spec.g, 0.0)) > kCompatibilityTol)
        throw ConfigError("periodicity study needs g(0) = 0");
    const double T0 = *spec.period;
    const int n = (int)t_schedule.size();
    const int win = 8;  // trailing-window sample count

    PeriodicityReport rep;
    rep.x = x;
    rep.t_samples = t_schedule;
    rep.defect.resize(n);
    rep.defect_envelope.resize(n);
    rep.defect_repr = Eigen::ArrayXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
    rep.method = solver;
    rep.bound_constant = periodicity_bound_constant(spec);

    const bool linear = spec.beta_nl == 0.0;

    if (solver == Method::Semianalytic) {
        SemianalyticWorkspace ws(spec, qc);
        for (int i = 0; i < n; ++i) {
            const double t = t_schedule[i];
            double env = 0.0;
            for (int j = 0; j <= win; ++j) {
                const double tj = t - T0 * j / win;
                if (tj <= 0.0) continue;
                const double d = std::abs(defect_direct(ws, x, tj, T0));
                if (j == 0) rep.defect[i] = d;
                env = std::max(env, d);
            }
            rep.defect_envelope[i] = env;
            if (linear) rep.defect_repr[i] = defect_representation(spec, x, t, qc);
        }
    } else {
        // one reference solve over a grid holding every needed time value
        std::vector<double> times;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= win; ++j) {
                const double tj = t_schedule[i] - T0 * j / win;
                if (tj > 0.0) {
                    times.push_back(tj);
                    times.push_back(tj + T0);
                }
            }
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());
        Grid g;
        g.x = Eigen::ArrayXd::Constant(1, x);
        g.t = Eigen::Map<Eigen::ArrayXd>(times.data(), (Eigen::Index)times.size());
        SolutionField field;
        if (solver == Method::FdReference) {
            FdConfig fc;
            fc.L = std::max(40.0, std::abs(spec.alpha) * (t_schedule[n - 1] + T0) +
                                      integration_extent(spec.u0) + 10.0);
            fc.nx = std::max(1024, (int)(fc.L * 16));
            field = fd_solve(spec, fc, g);
        } else if (solver == Method::IntegralEquation) {
            PicardConfig pc;
            field = integral_equation_solve(spec, pc, g);
        } else {
            throw ConfigError("periodicity study: unsupported solver");
        }
        for (int i = 0; i < n; ++i) {
            const double t = t_schedule[i];
            double env = 0.0;
            for (int j = 0; j <= win; ++j) {
                const double tj = t - T0 * j / win;
                if (tj <= 0.0) continue;
                const double d = std::abs(defect_direct(field, x, tj, T0));
                if (j == 0) rep.defect[i] = d;
                env = std::max(env, d);
            }
            rep.defect_envelope[i] = env;
        }
    }

    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i < n; ++i) samples.push_back({t_schedule[i], rep.defect_envelope[i]});
    rep.fit = decay_fit(samples);
    if (rep.defect_envelope.maxCoeff() < 1e-12) rep.fit.degenerate = true;
    return rep;
}

} // namespace bbm
