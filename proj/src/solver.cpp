#include "bbm/solver.hpp"
#include "bbm/errors.hpp"
#include "bbm/parallel.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace bbm {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 6.283185307179586476925286766559;

// ----- temporal splits --------------------------------------------------
//
// For a catalog temporal factor T the tau-integral of Eq. (exu),
//   integral_0^t T(tau) e^{-i beta (t-tau)} dtau,
// splits into A1(beta) + e^{-i beta t} A0(beta) with both amplitudes slowly
// varying in xi, so the forcing term becomes two standard oscillatory
// integrals instead of O(t) of them.

struct TemporalSplit {
    bool ok = false;
    std::function<cplx(double)> A1;  // multiplies phase e^{i x xi}
    std::function<cplx(double)> A0;  // multiplies phase e^{i x xi - i beta t}
    std::function<SeriesXi(double)> S1, S0;
};

// T(tau) = a e^{-sigma tau} sin(omega tau); sigma >= 0.
// Poles of the split sit at beta = -+omega - i sigma, off the real beta range
// whenever sigma > 0 or omega > max |beta|.
TemporalSplit sine_like_split(double a, double omega, double sigma, double t,
                              double alpha, double gamma) {
    TemporalSplit ts;
    const double beta_max = std::abs(alpha) / (2.0 * std::sqrt(gamma));
    if (sigma == 0.0 && omega <= beta_max * (1.0 + 1e-9)) return ts;  // resonant

    const cplx cp(omega, sigma);   // beta + omega + i sigma offset c0 = omega + i sigma
    const cplx cm(-omega, sigma);  // beta - omega + i sigma
    const cplx ep = std::exp(cplx(-sigma * t, omega * t));    // e^{(i omega - sigma) t}
    const cplx em = std::exp(cplx(-sigma * t, -omega * t));   // e^{(-i omega - sigma) t}
    ts.ok = true;
    ts.A1 = [=](double b) {
        return -(a / 2.0) * (ep / (b + cp) - em / (b + cm));
    };
    ts.A0 = [=](double b) {
        return -(a / 2.0) * (1.0 / (b + cm) - 1.0 / (b + cp));
    };
    ts.S1 = [=](double vf) {
        return series_inv_beta_plus(cp, alpha, gamma, vf).scaled(-(a / 2.0) * ep)
            .plus(series_inv_beta_plus(cm, alpha, gamma, vf).scaled((a / 2.0) * em));
    };
    ts.S0 = [=](double vf) {
        return series_inv_beta_plus(cm, alpha, gamma, vf).scaled(-(a / 2.0))
            .plus(series_inv_beta_plus(cp, alpha, gamma, vf).scaled(a / 2.0));
    };
    return ts;
}

// T(tau) = a e^{-k tau}: H = a (e^{ict} - 1)/(ic), c = beta + i k.
TemporalSplit exp_decay_split(double a, double k, double t, double alpha, double gamma) {
    TemporalSplit ts;
    const double beta_max = std::abs(alpha) / (2.0 * std::sqrt(gamma));
    if (!(k > 0.0)) return ts;
    (void)beta_max;  // complex pole at beta = -i k never hits the real range
    const cplx c0(0.0, k);
    const double ekt = std::exp(-k * t);
    ts.ok = true;
    ts.A1 = [=](double b) { return a * ekt / (cplx(0.0, 1.0) * (b + c0)); };
    ts.A0 = [=](double b) { return -a / (cplx(0.0, 1.0) * (b + c0)); };
    ts.S1 = [=](double vf) {
        return series_inv_beta_plus(c0, alpha, gamma, vf).scaled(a * ekt / cplx(0.0, 1.0));
    };
    ts.S0 = [=](double vf) {
        return series_inv_beta_plus(c0, alpha, gamma, vf).scaled(-a / cplx(0.0, 1.0));
    };
    return ts;
}

// T(tau) = (c0 + c1 tau + c2 tau^2 + c3 tau^3) e^{-k tau}.
// E_j = integral_0^t tau^j e^{i c tau} dtau = e^{ict} p_j + q_j with
// p_j = (t^j - j p_{j-1})/(ic), q_j = -j q_{j-1}/(ic).
TemporalSplit poly_exp_split(const std::vector<double>& coef, double k, double t,
                             double alpha, double gamma) {
    TemporalSplit ts;
    if (!(k > 0.0)) return ts;
    const cplx shift(0.0, k);  // c = beta + i k
    const double ekt = std::exp(-k * t);
    ts.ok = true;
    auto pq = [coef, shift, t](double b, bool want_p) {
        const cplx ic = cplx(0.0, 1.0) * (b + shift);
        cplx p = 1.0 / ic, q = -1.0 / ic, acc_p = coef[0] * p, acc_q = coef[0] * q;
        double tj = 1.0;
        for (int j = 1; j < 4; ++j) {
            tj *= t;
            p = (tj - double(j) * p) / ic;
            q = -double(j) * q / ic;
            acc_p += coef[j] * p;
            acc_q += coef[j] * q;
        }
        return want_p ? acc_p : acc_q;
    };
    ts.A1 = [=](double b) { return ekt * pq(b, true); };
    ts.A0 = [=](double b) { return pq(b, false); };
    auto series_pq = [coef, shift, t, alpha, gamma](double vf, bool want_p) {
        const SeriesXi inv_ic =
            series_inv_beta_plus(shift, alpha, gamma, vf).scaled(1.0 / cplx(0.0, 1.0));
        SeriesXi p = inv_ic;
        SeriesXi q = inv_ic.scaled(-1.0);
        SeriesXi acc_p = p.scaled(coef[0]);
        SeriesXi acc_q = q.scaled(coef[0]);
        double tj = 1.0;
        for (int j = 1; j < 4; ++j) {
            tj *= t;
            // p <- (t^j - j p) * inv_ic, q <- -j q * inv_ic
            SeriesXi tmp = series_one(vf).scaled(tj).plus(p.scaled(-double(j)));
            p = tmp.times(inv_ic);
            q = q.scaled(-double(j)).times(inv_ic);
            acc_p = acc_p.plus(p.scaled(coef[j]));
            acc_q = acc_q.plus(q.scaled(coef[j]));
        }
        return want_p ? acc_p : acc_q;
    };
    ts.S1 = [=](double vf) { return series_pq(vf, true).scaled(ekt); };
    ts.S0 = [=](double vf) { return series_pq(vf, false); };
    return ts;
}

TemporalSplit make_temporal_split(const FunctionDescriptor& T, double t, double alpha,
                                  double gamma) {
    switch (T.kind) {
        case FunctionKind::Zero: {
            TemporalSplit ts;
            ts.ok = true;
            ts.A1 = [](double) { return cplx(0.0); };
            ts.A0 = [](double) { return cplx(0.0); };
            ts.S1 = [](double vf) { return series_one(vf).scaled(0.0); };
            ts.S0 = [](double vf) { return series_one(vf).scaled(0.0); };
            return ts;
        }
        case FunctionKind::Sine:
            return sine_like_split(T.params[0], kTwoPi / T.params[1], 0.0, t, alpha, gamma);
        case FunctionKind::SineRamped: {
            const double a = T.params[0], om = kTwoPi / T.params[1], sg = 1.0 / T.params[2];
            TemporalSplit s1 = sine_like_split(a, om, 0.0, t, alpha, gamma);
            TemporalSplit s2 = sine_like_split(-a, om, sg, t, alpha, gamma);
            if (!s1.ok || !s2.ok) return {};
            TemporalSplit ts;
            ts.ok = true;
            ts.A1 = [=](double b) { return s1.A1(b) + s2.A1(b); };
            ts.A0 = [=](double b) { return s1.A0(b) + s2.A0(b); };
            ts.S1 = [=](double vf) { return s1.S1(vf).plus(s2.S1(vf)); };
            ts.S0 = [=](double vf) { return s1.S0(vf).plus(s2.S0(vf)); };
            return ts;
        }
        case FunctionKind::ExpDecay:
            return exp_decay_split(T.params[0], T.params[1], t, alpha, gamma);
        case FunctionKind::PolyExp:
            return poly_exp_split({T.params[0], T.params[1], T.params[2], T.params[3]},
                                  T.params[4], t, alpha, gamma);
        case FunctionKind::Gaussian:
            return {};  // no elementary antiderivative against e^{i beta tau}
    }
    return {};
}

} // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::Semianalytic: return "semianalytic";
        case Method::TransportClosedForm: return "transport_closed_form";
        case Method::FdReference: return "fd_reference";
        case Method::IntegralEquation: return "integral_equation";
    }
    return "unknown";
}

double SolutionField::at(double x, double t) const {
    const Eigen::Index i = Grid::find(grid.x, x);
    const Eigen::Index j = Grid::find(grid.t, t);
    if (i < 0 || j < 0)
        throw RangeError("requested point (" + std::to_string(x) + ", " + std::to_string(t) +
                         ") is not on the solved grid");
    return u(i, j);
}

double effective_forcing(const ProblemSpec& spec, double y, double tau) {
    if (!(spec.gamma > 0.0)) throw ConfigError("effective forcing requires gamma > 0");
    double v = spec.f(y, tau);
    if (spec.alpha != 0.0 && spec.g.kind != FunctionKind::Zero) {
        const double sg = std::sqrt(spec.gamma);
        v += (spec.alpha / sg) * eval_function(spec.g, tau) * std::exp(-y / sg);
    }
    return v;
}

SemianalyticWorkspace::SemianalyticWorkspace(ProblemSpec spec, QuadratureConfig qc)
    : spec_(std::move(spec)), qc_(qc) {
    if (!(spec_.gamma > 0.0))
        throw ConfigError("the semi-analytic solver requires gamma > 0 (Theorem 2.1)");
    qc_.check(spec_.gamma);
    if (spec_.u0.kind != FunctionKind::Zero)
        u0_cache_ = std::make_shared<TransformCache>(spec_.u0, qc_);

    const double sg = std::sqrt(spec_.gamma);
    if (!spec_.f.is_zero()) {
        ForcingPiece p;
        p.spatial = std::make_shared<TransformCache>(spec_.f.spatial, qc_);
        p.temporal = spec_.f.temporal;
        p.scale = 1.0;
        p.closed_form = make_temporal_split(p.temporal, 1.0, spec_.alpha, spec_.gamma).ok;
        pieces_.push_back(std::move(p));
    }
    if (spec_.alpha != 0.0 && spec_.g.kind != FunctionKind::Zero) {
        ForcingPiece p;
        p.spatial = std::make_shared<TransformCache>(
            FunctionDescriptor::exp_decay(1.0, 1.0 / sg), qc_);
        p.temporal = spec_.g;
        p.scale = spec_.alpha / sg;
        p.closed_form = make_temporal_split(p.temporal, 1.0, spec_.alpha, spec_.gamma).ok;
        pieces_.push_back(std::move(p));
    }
}

double SemianalyticWorkspace::forcing_term(const ForcingPiece& piece, double x,
                                           double t) const {
    if (t == 0.0) return 0.0;
    if (!piece.closed_form) return forcing_term_tau_panels(piece, x, t);

    const TemporalSplit ts = make_temporal_split(piece.temporal, t, spec_.alpha, spec_.gamma);
    const double gamma = spec_.gamma, alpha = spec_.alpha;
    TransformCachePtr sp = piece.spatial;

    auto make_amp = [&](const std::function<cplx(double)>& A,
                        const std::function<SeriesXi(double)>& S) {
        OscAmplitude amp;
        amp.eval = [sp, gamma, alpha, A](double xi) {
            const double b = beta_phase(xi, alpha, gamma);
            const cplx a = A(b);
            return sp->value(xi) * cplxl(a.real(), a.imag()) /
                   (1.0L + (long double)gamma * (long double)xi * xi);
        };
        amp.series_at = [sp, gamma, S](double vf) {
            return series_lorentzian(gamma, vf).times(sp->series(vf)).times(S(vf));
        };
        amp.suggested_lambda =
            std::max({4.0, 6.0 / decay_scale(sp->descriptor()), 4.0 / std::sqrt(gamma)});
        return amp;
    };

    const double part1 =
        osc_full_line(make_amp(ts.A1, ts.S1), x, 0.0, alpha, gamma, qc_).value;
    const double part0 =
        osc_full_line(make_amp(ts.A0, ts.S0), x, t, alpha, gamma, qc_).value;
    return piece.scale * (part1 + part0) / kTwoPi;
}

double SemianalyticWorkspace::forcing_term_tau_panels(const ForcingPiece& piece, double x,
                                                      double t) const {
    // Direct tau integration of T(tau) * [Phi * spatial](x, t - tau); used for
    // gaussian temporal factors (bounded support window) and resonant data.
    const double gamma = spec_.gamma, alpha = spec_.alpha;
    TransformCachePtr sp = piece.spatial;
    OscAmplitude amp = amp_q_transform(sp, gamma);
    QuadratureConfig inner = qc_;
    inner.epsilon = std::max(qc_.epsilon / std::max(1.0, 4.0 * t), 1e-14);

    double lo = 0.0, hi = t;
    if (piece.temporal.kind == FunctionKind::Gaussian) {
        const double c = piece.temporal.params[1], w = piece.temporal.params[2];
        lo = std::max(0.0, c - 14.0 * w);
        hi = std::min(t, c + 14.0 * w);
        if (hi <= lo) return 0.0;
    }
    // 32 panels per unit time, doubled by the adaptive layer as needed
    const int n0 = std::min(20000, std::max(8, (int)std::ceil(32.0 * (hi - lo))));
    std::vector<std::pair<quad::real_t, quad::real_t>> panels;
    panels.reserve(n0);
    for (int i = 0; i < n0; ++i)
        panels.push_back({lo + (hi - lo) * i / n0, lo + (hi - lo) * (i + 1) / n0});
    auto f = [&](quad::real_t tau) -> quad::real_t {
        const double Tv = eval_function(piece.temporal, (double)tau);
        if (Tv == 0.0) return 0.0L;
        return (long double)Tv *
               (long double)osc_full_line(amp, x, t - (double)tau, alpha, gamma, inner).value;
    };
    quad::AdaptiveResult diag;
    const quad::real_t v = quad::integrate_adaptive<quad::real_t>(
        f, std::move(panels), qc_.epsilon, qc_.rel_tol, 12, 1e-10L, &diag);
    return piece.scale * (double)v / kTwoPi;
}

double SemianalyticWorkspace::solve(double x, double t) const {
    const double sg = std::sqrt(spec_.gamma);
    double u = eval_function(spec_.g, t) * std::exp(-x / sg);
    if (u0_cache_) {
        OscAmplitude amp;
        TransformCachePtr c = u0_cache_;
        amp.eval = [c](double xi) { return c->value(xi); };
        amp.series_at = [c](double vf) { return c->series(vf); };
        amp.suggested_lambda = std::max(4.0, 6.0 / decay_scale(spec_.u0));
        u += osc_full_line(amp, x, t, spec_.alpha, spec_.gamma, qc_).value / kTwoPi;
    }
    for (const auto& piece : pieces_) u += forcing_term(piece, x, t);
    return u;
}

double solve_u(const ProblemSpec& spec, double x, double t, const QuadratureConfig& qc) {
    return SemianalyticWorkspace(spec, qc).solve(x, t);
}

SolutionField solve_field(const ProblemSpec& spec, const Grid& grid,
                          const QuadratureConfig& qc, int threads) {
    SolutionField out;
    out.grid = grid;
    out.method = Method::Semianalytic;
    out.spec = spec;
    const Eigen::Index nx = grid.x.size(), nt = grid.t.size();
    out.u.resize(nx, nt);
    if (threads <= 0) threads = (int)std::thread::hardware_concurrency();
    threads = std::max(1, threads);
    // one workspace per worker so the transform memos are not shared
    std::vector<std::unique_ptr<SemianalyticWorkspace>> ws;
    for (int w = 0; w < threads; ++w)
        ws.emplace_back(std::make_unique<SemianalyticWorkspace>(spec, qc));
    std::vector<std::thread> pool;
    const long n = (long)nx * nt;
    for (int w = 0; w < threads; ++w) {
        const long lo = n * w / threads, hi = n * (w + 1) / threads;
        pool.emplace_back([&, w, lo, hi]() {
            for (long idx = lo; idx < hi; ++idx) {
                const Eigen::Index i = idx / nt, j = idx % nt;
                out.u(i, j) = ws[w]->solve(grid.x[i], grid.t[j]);
            }
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

double transport_solution(const ProblemSpec& spec, double x, double t) {
    if (spec.gamma != 0.0)
        throw ConfigError("transport solution applies to gamma = 0 only");
    if (!(spec.alpha > 0.0))
        throw ConfigError("transport solution requires alpha > 0");
    if (!spec.f.is_zero())
        throw ConfigError("transport solution requires f = 0 (Corollary 2.3)");
    if (x >= spec.alpha * t) return eval_function(spec.u0, x - spec.alpha * t);
    return eval_function(spec.g, t - x / spec.alpha);
}

namespace {

// S and C parts of f-tilde(., tau) at frequency xi: the separable pieces keep
// their spatial transforms fixed, so only the temporal scalars vary with tau.
struct FtildeParts {
    double Ssp = 0.0, Csp = 0.0;    // transform of f spatial
    double Sb = 0.0, Cb = 0.0;      // transform of the boundary-layer profile
    FunctionDescriptor Tf, g;
    double gscale = 0.0;            // alpha / sqrt(gamma)
    bool has_f = false, has_g = false;

    double S(double tau) const {
        double v = 0.0;
        if (has_f) v += eval_function(Tf, tau) * Ssp;
        if (has_g) v += gscale * eval_function(g, tau) * Sb;
        return v;
    }
    double C(double tau) const {
        double v = 0.0;
        if (has_f) v += eval_function(Tf, tau) * Csp;
        if (has_g) v += gscale * eval_function(g, tau) * Cb;
        return v;
    }
};

FtildeParts make_ftilde_parts(const ProblemSpec& spec, double xi,
                              const QuadratureConfig& qc) {
    FtildeParts p;
    const double sg = std::sqrt(spec.gamma);
    if (!spec.f.is_zero()) {
        auto [s, c] = sine_cosine_parts(spec.f.spatial, xi, qc);
        p.Ssp = s;
        p.Csp = c;
        p.Tf = spec.f.temporal;
        p.has_f = true;
    }
    if (spec.alpha != 0.0 && spec.g.kind != FunctionKind::Zero) {
        auto [s, c] = sine_cosine_parts(FunctionDescriptor::exp_decay(1.0, 1.0 / sg), xi, qc);
        p.Sb = s;
        p.Cb = c;
        p.g = spec.g;
        p.gscale = spec.alpha / sg;
        p.has_g = true;
    }
    return p;
}

} // namespace

SpectralPair spectral_XY(const ProblemSpec& spec, double xi, double t,
                         const QuadratureConfig& qc) {
    if (!(spec.gamma > 0.0)) throw ConfigError("spectral_XY requires gamma > 0");
    const double b = beta_phase(xi, spec.alpha, spec.gamma);
    auto [S0, C0] = sine_cosine_parts(spec.u0, xi, qc);
    double X = std::cos(b * t) * S0 + std::sin(b * t) * C0;
    double Y = std::cos(b * t) * C0 - std::sin(b * t) * S0;

    const FtildeParts parts = make_ftilde_parts(spec, xi, qc);
    if ((parts.has_f || parts.has_g) && t > 0.0) {
        const double q = 1.0 / (1.0 + spec.gamma * xi * xi);
        const int n0 = std::max(16, (int)std::ceil(8.0 * t * (std::abs(b) + 1.0)));
        std::vector<std::pair<quad::real_t, quad::real_t>> panels;
        for (int i = 0; i < std::min(n0, 100000); ++i)
            panels.push_back({t * i / n0, t * (i + 1) / n0});
        auto fX = [&](quad::real_t tau) -> quad::real_t {
            const double ph = b * (t - (double)tau);
            return std::cos(ph) * parts.S((double)tau) + std::sin(ph) * parts.C((double)tau);
        };
        auto fY = [&](quad::real_t tau) -> quad::real_t {
            const double ph = b * (t - (double)tau);
            return std::cos(ph) * parts.C((double)tau) - std::sin(ph) * parts.S((double)tau);
        };
        X += q * (double)quad::integrate_adaptive<quad::real_t>(fX, panels, 1e-12L, 1e-11L);
        Y += q * (double)quad::integrate_adaptive<quad::real_t>(fY, panels, 1e-12L, 1e-11L);
    }
    return {xi, X, Y, t};
}

double fundamental_matrix_check(const ProblemSpec& spec, double xi, double t,
                                const QuadratureConfig& qc) {
    if (!(spec.gamma > 0.0)) throw ConfigError("fundamental_matrix_check requires gamma > 0");
    const double b = beta_phase(xi, spec.alpha, spec.gamma);
    const cplx i1(0.0, 1.0);

    auto Psi = [&](double s) {
        Eigen::Matrix2cd m;
        const cplx e = std::exp(i1 * b * s);
        const cplx em = std::exp(-i1 * b * s);
        m << e, em, i1 * e, -i1 * em;
        return m;
    };
    auto PsiInv = [&](double s) {
        Eigen::Matrix2cd m;
        const cplx e = std::exp(i1 * b * s);
        const cplx em = std::exp(-i1 * b * s);
        m << em, -i1 * em, e, i1 * e;
        return Eigen::Matrix2cd(0.5 * m);
    };

    auto [S0, C0] = sine_cosine_parts(spec.u0, xi, qc);
    Eigen::Vector2cd x0;
    x0 << cplx(S0, 0.0), cplx(C0, 0.0);

    const FtildeParts parts = make_ftilde_parts(spec, xi, qc);
    const double q = 1.0 / (1.0 + spec.gamma * xi * xi);

    Eigen::Vector2cd integral = Eigen::Vector2cd::Zero();
    if ((parts.has_f || parts.has_g) && t > 0.0) {
        const int n0 = std::max(16, (int)std::ceil(8.0 * t * (std::abs(b) + 1.0)));
        std::vector<std::pair<quad::real_t, quad::real_t>> panels;
        for (int i = 0; i < std::min(n0, 100000); ++i)
            panels.push_back({t * i / n0, t * (i + 1) / n0});
        for (int comp = 0; comp < 2; ++comp) {
            auto f = [&](quad::real_t tau) -> cplxl {
                Eigen::Vector2cd h;
                h << cplx(q * parts.S((double)tau), 0.0), cplx(q * parts.C((double)tau), 0.0);
                const cplx v = (PsiInv((double)tau) * h)(comp);
                return cplxl(v.real(), v.imag());
            };
            const cplxl v = quad::integrate_adaptive<cplxl>(f, panels, 1e-12L, 1e-11L);
            integral(comp) = cplx((double)v.real(), (double)v.imag());
        }
    }

    const Eigen::Vector2cd rhs = Psi(t) * PsiInv(0.0) * x0 + Psi(t) * integral;
    const SpectralPair ref = spectral_XY(spec, xi, t, qc);
    return std::max(std::abs(rhs(0) - cplx(ref.X, 0.0)), std::abs(rhs(1) - cplx(ref.Y, 0.0)));
}

} // namespace bbm
