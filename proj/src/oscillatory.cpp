#include "bbm/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bbm {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr long double kPiL = 3.141592653589793238462643383279L;

// (1 - gamma xi^2) / (1 + gamma xi^2)^2; beta' = alpha * shape.
double beta_shape(double xi, double gamma) {
    const double d = 1.0 + gamma * xi * xi;
    return (1.0 - gamma * xi * xi) / (d * d);
}

} // namespace

double beta_phase(double xi, double alpha, double gamma) {
    return alpha * xi / (1.0 + gamma * xi * xi);
}

double beta_phase_deriv(double xi, double alpha, double gamma) {
    return alpha * beta_shape(xi, gamma);
}

TailBound tail_bound_M(double epsilon, double gamma) {
    if (!(epsilon > 0.0)) throw ConfigError("tail_bound_M: epsilon must be > 0");
    if (!(gamma > 0.0)) throw ConfigError("tail_bound_M: gamma must be > 0");
    const double sg = std::sqrt(gamma);
    const double arg = kPi / 2 - epsilon * sg / 4.0;
    TailBound out;
    if (arg <= kPi / 4) {  // epsilon so large the bound is trivial at 1/sqrt(gamma)
        out.M = 1.0 / sg;
        out.clamped = true;
        return out;
    }
    out.M = std::tan(arg) / sg * (1.0 + 1e-12);  // round up for strict inequality
    if (out.M < 1.0 / sg) {
        out.M = 1.0 / sg;
        out.clamped = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Asymptotic series in 1/xi
// ---------------------------------------------------------------------------

cplx SeriesXi::eval(double xi) const {
    cplx acc = 0.0;
    const double inv = 1.0 / xi;
    for (int k = kOrder; k >= 0; --k) acc = acc * inv + c[k];
    return acc;
}

double SeriesXi::abs_bound(double xi) const {
    double acc = 0.0;
    const double inv = 1.0 / xi;
    double p = 1.0;
    for (int k = 0; k <= kOrder; ++k) {
        acc += std::abs(c[k]) * p;
        p *= inv;
    }
    return acc + rem * p;  // p == xi^{-(kOrder+1)} after the loop
}

SeriesXi SeriesXi::times(const SeriesXi& o) const {
    SeriesXi out;
    out.valid_from = std::max(valid_from, o.valid_from);
    const double vf = out.valid_from;
    for (int i = 0; i <= kOrder; ++i)
        for (int j = 0; i + j <= kOrder; ++j) out.c[i + j] += c[i] * o.c[j];
    // dropped cross terms i+j > kOrder, folded into the remainder at vf
    double cross = 0.0;
    for (int i = 0; i <= kOrder; ++i)
        for (int j = kOrder + 1 - i; j <= kOrder; ++j)
            if (j >= 0)
                cross += std::abs(c[i]) * std::abs(o.c[j]) *
                         std::pow(vf, double(kOrder + 1 - i - j));
    // remainder-times-bound terms keep the xi^{-(K+1)} semantics
    out.rem = cross + rem * o.abs_bound(vf) + o.rem * abs_bound(vf) +
              rem * o.rem * std::pow(vf, -double(kOrder + 1));
    return out;
}

SeriesXi SeriesXi::plus(const SeriesXi& o) const {
    SeriesXi out;
    out.valid_from = std::max(valid_from, o.valid_from);
    for (int k = 0; k <= kOrder; ++k) out.c[k] = c[k] + o.c[k];
    out.rem = rem + o.rem;
    return out;
}

SeriesXi SeriesXi::scaled(cplx f) const {
    SeriesXi out = *this;
    for (auto& v : out.c) v *= f;
    out.rem *= std::abs(f);
    return out;
}

SeriesXi series_one(double vf) {
    SeriesXi s;
    s.c[0] = 1.0;
    s.rem = 0.0;
    s.valid_from = vf;
    return s;
}

SeriesXi series_lorentzian(double gamma, double vf) {
    SeriesXi s;
    s.valid_from = std::max(vf, 2.0 / std::sqrt(gamma));
    double sign = 1.0;
    double gpow = 1.0 / gamma;
    for (int j = 1; 2 * j <= SeriesXi::kOrder; ++j) {
        s.c[2 * j] = sign * gpow;
        sign = -sign;
        gpow /= gamma;
    }
    const double v = s.valid_from;
    const double geo = 1.0 / (1.0 - 1.0 / (gamma * v * v));
    // next term is gamma^{-5} xi^{-10} = (gamma^{-5}/xi) * xi^{-9}
    s.rem = gpow / v * geo;
    return s;
}

SeriesXi series_beta(double alpha, double gamma, double vf) {
    SeriesXi s;
    s.valid_from = std::max(vf, 2.0 / std::sqrt(gamma));
    double sign = 1.0;
    double gpow = alpha / gamma;
    for (int j = 0; 2 * j + 1 <= SeriesXi::kOrder; ++j) {
        s.c[2 * j + 1] = sign * gpow;
        sign = -sign;
        gpow /= gamma;
    }
    const double v = s.valid_from;
    s.rem = std::abs(gpow) / (1.0 - 1.0 / (gamma * v * v));
    return s;
}

namespace {

// sum over n of taylor[n] * S^n, n = 0..kOrder, with the dropped orders
// estimated through |S|(vf).
SeriesXi series_power_sum(const std::vector<cplx>& taylor, const SeriesXi& s) {
    const double vf = s.valid_from;
    SeriesXi acc = series_one(vf);
    SeriesXi out;
    out.valid_from = vf;
    const int n_terms = std::min<int>((int)taylor.size(), SeriesXi::kOrder + 1);
    for (int n = 0; n < n_terms; ++n) {
        if (n > 0) acc = acc.times(s);
        out = out.plus(acc.scaled(taylor[n]));
    }
    // dropped n > kOrder (each S^n decays at least xi^{-n})
    const double q = s.abs_bound(vf);
    double dropped = 0.0;
    double qn = std::pow(q, double(n_terms));
    for (size_t n = n_terms; n < taylor.size() && n < size_t(n_terms + 60); ++n) {
        dropped += std::abs(taylor[n]) * qn;
        qn *= q;
    }
    out.rem += dropped * std::pow(vf, double(SeriesXi::kOrder + 1));
    return out;
}

} // namespace

SeriesXi series_exp_minus_i_s_beta(double s, double alpha, double gamma, double vf) {
    // keep s*beta(vf) modest so the exponential series truncates well
    const double need = std::abs(s * alpha) / gamma;
    const SeriesXi sb = series_beta(alpha, gamma, std::max(vf, need));
    std::vector<cplx> taylor(SeriesXi::kOrder + 40);
    cplx term = 1.0;
    for (size_t n = 0; n < taylor.size(); ++n) {
        taylor[n] = term;
        term *= cplx(0.0, -s) / double(n + 1);
    }
    return series_power_sum(taylor, sb);
}

SeriesXi series_inv_beta_plus(cplx c0, double alpha, double gamma, double vf) {
    const SeriesXi sb = series_beta(alpha, gamma, vf);
    const double q = sb.abs_bound(sb.valid_from);
    SeriesXi invalid;
    invalid.valid_from = sb.valid_from;
    invalid.rem = std::numeric_limits<double>::infinity();
    if (!(std::abs(c0) > 1.25 * q)) return invalid;  // engine will widen the range
    std::vector<cplx> taylor(SeriesXi::kOrder + 40);
    cplx f = 1.0 / c0;
    for (size_t n = 0; n < taylor.size(); ++n) {
        taylor[n] = f;
        f *= -1.0 / c0;
    }
    return series_power_sum(taylor, sb);
}

SeriesXi series_analytic_in_beta(const std::vector<cplx>& taylor, double alpha,
                                 double gamma, double vf) {
    const SeriesXi sb = series_beta(alpha, gamma, vf);
    return series_power_sum(taylor, sb);
}

// ---------------------------------------------------------------------------
// Tail moments
// ---------------------------------------------------------------------------

namespace {

// G_k(R, x) = integral_R^inf e^{i x xi} xi^{-k} dxi for |x| R >= ~30,
// by the integration-by-parts asymptotic series (truncated at its smallest
// term).
cplxl moment_upper(int k, long double R, long double x) {
    const cplxl i_over_x = cplxl(0.0L, 1.0L) / x;
    cplxl pre = i_over_x * std::exp(cplxl(0.0L, x * R));
    cplxl term = std::pow(R, (long double)-k);
    cplxl acc = 0.0L;
    long double last = std::numeric_limits<long double>::max();
    for (int j = 0; j < 200; ++j) {
        long double mag = std::abs(term);
        if (mag > last) break;  // asymptotic series: stop at the smallest term
        acc += term;
        last = mag;
        term *= cplxl(0.0L, -1.0L) * (long double)(k + j) / (x * R);
        if (std::abs(term) < std::abs(acc) * 1e-25L) break;
    }
    return pre * acc;
}

} // namespace

cplxl tail_moment(int k, long double lam, long double hi, long double x) {
    const bool finite = std::isfinite((double)hi);
    if (x == 0.0L) {
        if (k == 1) {
            if (!finite) throw ConfigError("divergent tail moment (k=1, x=0, infinite range)");
            return std::log(hi / lam);
        }
        long double a = std::pow(lam, (long double)(1 - k)) / (k - 1);
        long double b = finite ? std::pow(hi, (long double)(1 - k)) / (k - 1) : 0.0L;
        return cplxl(a - b, 0.0L);
    }
    if (std::abs(x) * lam < 25.0L)
        throw ConfigError("tail moment needs |x| * lambda >= 25");
    cplxl g = moment_upper(k, lam, x);
    if (finite) g -= moment_upper(k, hi, x);
    return g;
}

namespace {

double tail_remainder_bound(const SeriesXi& s, double lam) {
    constexpr int K = SeriesXi::kOrder;
    return s.rem * std::pow(lam, -double(K)) / double(K);
}

} // namespace

cplxl series_tail(const SeriesXi& s, long double lam, long double hi, long double x,
                  double* err_est) {
    constexpr int K = SeriesXi::kOrder;
    if (std::abs(s.c[0]) > 1e-12 * (std::abs(s.c[1]) + std::abs(s.c[2]) + 1e-300))
        throw ConfigError("series tail with non-decaying constant term");
    cplxl acc = 0.0L;
    for (int k = 1; k <= K; ++k) {
        if (s.c[k] == cplx(0.0)) continue;
        if (x == 0.0L && k == 1 && !std::isfinite((double)hi)) {
            // only legal when the 2Re fold kills the term; handled by caller
            throw ConfigError("divergent k=1 tail at x=0");
        }
        acc += cplxl(s.c[k].real(), s.c[k].imag()) * tail_moment(k, lam, hi, x);
    }
    if (err_est) *err_est = tail_remainder_bound(s, (double)lam);
    return acc;
}

// ---------------------------------------------------------------------------
// Panel layout
// ---------------------------------------------------------------------------

namespace {

struct PhaseFn {
    double x, s, alpha, gamma;
    long double operator()(long double xi) const {
        const long double d = 1.0L + (long double)gamma * xi * xi;
        return (long double)x * xi - (long double)s * (long double)alpha * xi / d;
    }
};

// roots of beta'(xi) = r on xi > 0 (stationary points of the full phase
// theta' = x - beta' s = 0 with r = x/s); up to three branches.
void stationary_points(double r_over_alpha, double gamma, double hi,
                       std::vector<double>& out) {
    const double s3 = std::sqrt(3.0);
    const double xi1 = 1.0 / std::sqrt(gamma);
    auto shape = [&](double xi) { return beta_shape(xi, gamma); };
    auto bisect = [&](double lo_, double hi_, double target) {
        double lo = lo_, hi2 = hi_;
        double flo = shape(lo) - target;
        double fhi = shape(hi2) - target;
        if (flo * fhi > 0.0) return;
        for (int it = 0; it < 100; ++it) {
            double m = 0.5 * (lo + hi2);
            double fm = shape(m) - target;
            if (flo * fm <= 0.0) {
                hi2 = m;
                fhi = fm;
            } else {
                lo = m;
                flo = fm;
            }
        }
        out.push_back(0.5 * (lo + hi2));
        (void)fhi;
    };
    const double r = r_over_alpha;
    if (r > 0.0 && r < 1.0) bisect(1e-300, xi1, r);
    if (r < 0.0 && r > -0.125) {
        bisect(xi1 * (1 + 1e-14), s3 * xi1, r);
        if (hi > s3 * xi1) bisect(s3 * xi1, hi, r);
    }
}

// Breakpoints for panels on [lo, hi] (0 <= lo < hi): the I1..I4 split points,
// stationary points of the full phase, geometric grading around each, and an
// octave ladder through the smooth far region.
std::vector<long double> build_breakpoints(double lo, double hi, double x, double s,
                                           double alpha, double gamma) {
    std::vector<double> special;
    const double xi_c = 1.0 / std::sqrt(gamma);
    special.push_back(xi_c);
    if (s != 0.0 && alpha != 0.0)
        stationary_points((x / s) / alpha, gamma, hi, special);

    std::vector<long double> pts;
    pts.push_back(lo);
    pts.push_back(hi);
    for (double p : special) {
        if (p <= lo || p >= hi) continue;
        pts.push_back(p);
        // geometric grading toward the critical point, ratio 1/2
        double w = 0.25 * std::min(hi - p, p - lo);
        for (int j = 0; j < 14 && w > 1e-14 * (1 + p); ++j, w *= 0.5) {
            if (p + w < hi) pts.push_back(p + w);
            if (p - w > lo) pts.push_back(p - w);
        }
    }
    // octave ladder through [max(lo, xi_c), hi] keeps far panels log-sized
    double base = std::max({lo, 2.0 * xi_c, 1e-30});
    for (double p = base; p < hi; p *= 2.0)
        if (p > lo) pts.push_back(p);

    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Split [a,b] until the phase change per panel is <= pi/2 (midpoint-sampled
// to catch non-monotone phase).
void phase_presplit(const PhaseFn& th, long double a, long double b,
                    std::vector<std::pair<quad::real_t, quad::real_t>>& out, int depth) {
    const long double ta = th(a), tb = th(b), tm = th((a + b) / 2);
    const long double swing = std::abs(tm - ta) + std::abs(tb - tm);
    if (depth <= 0 || swing <= kPiL / 2 || (b - a) < 1e-13L * (1 + std::abs(a))) {
        out.push_back({a, b});
        return;
    }
    phase_presplit(th, a, (a + b) / 2, out, depth - 1);
    phase_presplit(th, (a + b) / 2, b, out, depth - 1);
}

std::vector<std::pair<quad::real_t, quad::real_t>> layout_panels(
    double lo, double hi, double x, double s, double alpha, double gamma) {
    const PhaseFn th{x, s, alpha, gamma};
    auto pts = build_breakpoints(lo, hi, x, s, alpha, gamma);
    std::vector<std::pair<quad::real_t, quad::real_t>> panels;
    panels.reserve(pts.size() * 4);
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        phase_presplit(th, pts[i], pts[i + 1], panels, 36);
    return panels;
}

double certificate_from_series(const SeriesXi& s, double M) {
    constexpr int K = SeriesXi::kOrder;
    if (std::abs(s.c[1]) > 1e-13) return std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (int k = 2; k <= K; ++k)
        acc += std::abs(s.c[k]) * std::pow(M, double(1 - k)) / (k - 1);
    acc += s.rem * std::pow(M, -double(K)) / K;
    return acc;
}

} // namespace

OscAmplitude amp_lorentzian(double gamma) {
    OscAmplitude a;
    a.eval = [gamma](double xi) {
        return cplxl(1.0L / (1.0L + (long double)gamma * (long double)xi * xi), 0.0L);
    };
    a.series_at = [gamma](double vf) { return series_lorentzian(gamma, vf); };
    a.suggested_lambda = 4.0 / std::sqrt(gamma);
    return a;
}

OscResult osc_full_line(const OscAmplitude& amp, double x, double s, double alpha,
                        double gamma, const QuadratureConfig& qc, double certificate_M) {
    if (!(gamma > 0.0)) throw ConfigError("oscillatory integral requires gamma > 0");
    qc.check(gamma);

    const double tail_budget = qc.epsilon / 4.0;
    const double panel_budget = qc.epsilon / 2.0;

    double lam = std::max({amp.suggested_lambda, 4.0 / std::sqrt(gamma),
                           std::abs(s * alpha) / gamma});
    if (x != 0.0) lam = std::max(lam, 40.0 / std::abs(x));

    SeriesXi series;
    double tail_err = 0.0;
    bool ok = false;
    for (int iter = 0; iter < 26; ++iter) {
        series = amp.series_at(lam);
        lam = std::max(lam, series.valid_from);
        tail_err = tail_remainder_bound(series, lam);
        if (std::isfinite(tail_err) && tail_err <= tail_budget) {
            // sanity: the model must reproduce the amplitude at lambda
            const cplxl av = amp.eval(lam);
            const cplx sv = series.eval(lam);
            const double mis = std::abs(cplx((double)av.real(), (double)av.imag()) - sv);
            if (mis <= 1e-6 * std::abs(sv) + 2.0 * series.rem * std::pow(lam, -9.0) + 1e-280) {
                ok = true;
                break;
            }
        }
        lam *= 2.0;
    }
    if (!ok)
        throw AccuracyError("oscillatory tail model did not converge", tail_budget, tail_err);

    // drop a pure-imaginary 1/xi coefficient at x = 0: its 2Re fold vanishes
    SeriesXi tail_series = series;
    if (x == 0.0) {
        const double scale = std::abs(series.c[1]) + std::abs(series.c[2]) + 1e-300;
        if (std::abs(series.c[1].real()) > 1e-10 * scale)
            throw ConfigError("divergent oscillatory integral (Re c1 != 0 at x = 0)");
        tail_series.c[1] = cplx(0.0, 0.0);
    }

    double tail_val_err = 0.0;
    const cplxl tail =
        series_tail(tail_series, lam, std::numeric_limits<long double>::infinity(),
                    (long double)x, &tail_val_err);

    auto panels = layout_panels(0.0, lam, x, s, alpha, gamma);
    const PhaseFn th{x, s, alpha, gamma};
    auto f = [&](quad::real_t xi) -> quad::real_t {
        const cplxl a = amp.eval((double)xi);
        const long double ph = th(xi);
        return 2.0L * (a.real() * std::cos(ph) - a.imag() * std::sin(ph));
    };
    quad::AdaptiveResult diag;
    const quad::real_t body = quad::integrate_adaptive<quad::real_t>(
        f, std::move(panels), panel_budget, qc.rel_tol, qc.max_panel_depth,
        qc.min_panel_width, &diag);

    OscResult out;
    out.value = (double)(body + 2.0L * tail.real());
    out.achieved = (double)diag.error + tail_val_err + tail_err;
    out.lambda = lam;
    out.evaluations = diag.evaluations;

    double Mc = certificate_M > 0.0 ? certificate_M
                                    : (qc.M > 0.0 ? qc.M : tail_bound_M(qc.epsilon, gamma).M);
    out.tail_certificate = certificate_from_series(series, Mc);

    if (!diag.converged &&
        diag.error > 50.0 * std::max((quad::real_t)panel_budget,
                                     (quad::real_t)qc.rel_tol * std::abs(body)))
        throw AccuracyError("oscillatory panel refinement did not converge", panel_budget,
                            (double)diag.error);
    return out;
}

cplx osc_segment(const OscAmplitude& amp, double a, double b, double x, double s,
                 double alpha, double gamma, const QuadratureConfig& qc) {
    if (!(gamma > 0.0)) throw ConfigError("oscillatory integral requires gamma > 0");
    if (!(b >= a)) throw ConfigError("segment endpoints out of order");
    if (a == b) return 0.0;
    qc.check(gamma);

    const double tail_budget = qc.epsilon / 4.0;
    const double panel_budget = qc.epsilon / 2.0;
    const double reach = std::max(std::abs(a), std::abs(b));

    double lam = std::max({amp.suggested_lambda, 4.0 / std::sqrt(gamma),
                           std::abs(s * alpha) / gamma});
    if (x != 0.0) lam = std::max(lam, 40.0 / std::abs(x));

    SeriesXi series;
    bool need_tail = reach > lam;
    if (need_tail) {
        double tail_err = 0.0;
        bool ok = false;
        for (int iter = 0; iter < 26 && lam < reach; ++iter) {
            series = amp.series_at(lam);
            lam = std::max(lam, series.valid_from);
            tail_err = tail_remainder_bound(series, lam);
            if (std::isfinite(tail_err) && tail_err <= tail_budget) {
                ok = true;
                break;
            }
            lam *= 2.0;
        }
        need_tail = reach > lam;
        if (need_tail && !ok)
            throw AccuracyError("segment tail model did not converge", tail_budget, tail_err);
    }

    const double plo = std::max(a, -lam);
    const double phi_ = std::min(b, lam);
    const PhaseFn th{x, s, alpha, gamma};

    cplxl total = 0.0L;
    if (phi_ > plo) {
        // negative side mirrored onto positive abscissas for the panel layout
        std::vector<std::pair<quad::real_t, quad::real_t>> panels;
        if (plo < 0.0) {
            auto neg = layout_panels(std::max(0.0, -phi_), -plo, -x, -s, alpha, gamma);
            for (auto [p, q] : neg) panels.push_back({-q, -p});
        }
        if (phi_ > 0.0) {
            auto pos = layout_panels(std::max(0.0, plo), phi_, x, s, alpha, gamma);
            for (auto& pr : pos) panels.push_back(pr);
        }
        quad::AdaptiveResult diag;
        auto f = [&](quad::real_t xi) -> cplxl {
            const cplxl av = amp.eval((double)xi);
            const long double ph = th(xi);
            return av * cplxl(std::cos(ph), std::sin(ph));
        };
        total += quad::integrate_adaptive<cplxl>(f, std::move(panels), panel_budget,
                                                 qc.rel_tol, qc.max_panel_depth,
                                                 qc.min_panel_width, &diag);
        if (!diag.converged &&
            diag.error > 50.0 * std::max((quad::real_t)panel_budget,
                                         (quad::real_t)qc.rel_tol * std::abs(total)))
            throw AccuracyError("segment panel refinement did not converge", panel_budget,
                                (double)diag.error);
    }

    if (b > lam) {
        double e = 0.0;
        total += series_tail(series, lam, (long double)b, (long double)x, &e);
    }
    if (a < -lam) {
        // integral_{-b'}^{-lam} A e^{i theta} = conj(integral_lam^{b'}) by symmetry
        double e = 0.0;
        total += std::conj(series_tail(series, lam, (long double)(-a), (long double)x, &e));
    }
    return cplx((double)total.real(), (double)total.imag());
}

PhiRawResult integrate_phi_raw(const PhaseDescriptor& pd, const QuadratureConfig& qc) {
    if (!(pd.gamma > 0.0)) throw ConfigError("integrate_phi_raw requires gamma > 0");
    const OscAmplitude amp = amp_lorentzian(pd.gamma);
    const double Mc = qc.M > 0.0 ? qc.M : tail_bound_M(qc.epsilon, pd.gamma).M;
    OscResult r = osc_full_line(amp, pd.x, pd.t, pd.alpha, pd.gamma, qc, Mc);
    PhiRawResult out;
    out.value = cplx(r.value, 0.0);
    const double sg = std::sqrt(pd.gamma);
    out.tail_certificate = (2.0 / sg) * (kPi / 2 - std::atan(sg * Mc));
    out.achieved = r.achieved;
    return out;
}

cplx integrate_segment(const PhaseDescriptor& pd, double a, double b,
                       const QuadratureConfig& qc) {
    return osc_segment(amp_lorentzian(pd.gamma), a, b, pd.x, pd.t, pd.alpha, pd.gamma, qc);
}

} // namespace bbm
