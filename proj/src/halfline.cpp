#include "bbm/halfline.hpp"
#include "bbm/errors.hpp"

#include <cmath>

namespace bbm {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr long double kPiL = 3.141592653589793238462643383279L;

// coarse decay-scaled panels; the adaptive layer resolves oscillation only
// where the profile carries mass
std::vector<std::pair<quad::real_t, quad::real_t>> initial_panels(
    const FunctionDescriptor& u, double y_max, double xi) {
    std::vector<std::pair<quad::real_t, quad::real_t>> panels;
    const double scale = decay_scale(u);
    const double c = center_of(u);
    std::vector<double> pts = {0.0, y_max};
    for (double p = scale / 4; p < y_max; p *= 2.0) pts.push_back(p);
    for (int j = -6; j <= 6; ++j) {
        const double p = c + j * scale;
        if (p > 0.0 && p < y_max) pts.push_back(p);
    }
    if (std::abs(xi) > 1.0) {
        const double w = kPi / (2.0 * std::abs(xi));
        for (double p = w; p < std::min(y_max, 8.0 * scale + c); p += w) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (size_t i = 0; i + 1 < pts.size(); ++i) panels.push_back({pts[i], pts[i + 1]});
    return panels;
}

// IBP series P(u)(xi) ~ sum_k u^{(k-1)}(0)/(i xi)^k, used beyond the point
// where quadrature would chase pure oscillation
cplx forward_series(const FunctionDescriptor& u, double xi) {
    cplxl acc = 0.0L;
    cplxl inv_ix = 1.0L / cplxl(0.0L, (long double)xi);
    cplxl pw = inv_ix;
    for (int k = 1; k <= SeriesXi::kOrder; ++k) {
        acc += (long double)eval_derivative(u, 0.0, k - 1) * pw;
        pw *= inv_ix;
    }
    return {(double)acc.real(), (double)acc.imag()};
}

} // namespace

double integration_extent(const FunctionDescriptor& u) {
    double y_max = center_of(u) + 40.0 * decay_scale(u);
    while (tail_mass(u, y_max) > 1e-15 && y_max < 1e6) y_max *= 1.3;
    return y_max;
}

cplx forward(const FunctionDescriptor& u, double xi, const QuadratureConfig& qc) {
    if (u.kind == FunctionKind::Zero) return 0.0;
    if (!decays_integrably(u))
        throw ConfigError("half-line transform needs an integrably decaying profile, got " +
                          kind_to_string(u.kind));
    const double switch_xi = 80.0 / decay_scale(u);
    if (std::abs(xi) >= switch_xi) return forward_series(u, xi);

    const double y_max = integration_extent(u);
    const double tol = std::min(qc.epsilon, 1e-12);
    quad::AdaptiveResult diag;
    auto f = [&](quad::real_t y) -> cplxl {
        const long double ph = -(long double)xi * y;
        return (long double)eval_function(u, (double)y) * cplxl(std::cos(ph), std::sin(ph));
    };
    cplxl v = quad::integrate_adaptive<cplxl>(f, initial_panels(u, y_max, xi), tol, 1e-13L,
                                              qc.max_panel_depth, qc.min_panel_width, &diag);
    if (!diag.converged && diag.error > 100 * tol)
        throw AccuracyError("half-line transform quadrature did not converge", tol,
                            (double)diag.error);
    return cplx((double)v.real(), (double)v.imag());
}

cplx forward_fn(const std::function<double(double)>& u, double y_max, double xi,
                const QuadratureConfig& qc) {
    std::vector<std::pair<quad::real_t, quad::real_t>> panels;
    std::vector<double> pts = {0.0, y_max};
    for (double p = y_max / 512; p < y_max; p *= 2.0) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (size_t i = 0; i + 1 < pts.size(); ++i) panels.push_back({pts[i], pts[i + 1]});
    auto f = [&](quad::real_t y) -> cplxl {
        const long double ph = -(long double)xi * y;
        return (long double)u((double)y) * cplxl(std::cos(ph), std::sin(ph));
    };
    cplxl v = quad::integrate_adaptive<cplxl>(f, panels, std::min(qc.epsilon, 1e-12),
                                              1e-13L, qc.max_panel_depth,
                                              qc.min_panel_width);
    return cplx((double)v.real(), (double)v.imag());
}

std::pair<double, double> sine_cosine_parts(const FunctionDescriptor& u, double xi,
                                            const QuadratureConfig& qc) {
    if (u.kind == FunctionKind::Zero) return {0.0, 0.0};
    if (!decays_integrably(u))
        throw ConfigError("sine/cosine parts need an integrably decaying profile");
    if (std::abs(xi) >= 80.0 / decay_scale(u)) {
        const cplx p = forward_series(u, xi);  // P = C - i S
        return {-p.imag(), p.real()};
    }
    const double y_max = integration_extent(u);
    const double tol = std::min(qc.epsilon, 1e-12);
    auto s = quad::integrate_adaptive<quad::real_t>(
        [&](quad::real_t y) -> quad::real_t {
            return (long double)eval_function(u, (double)y) * std::sin((long double)xi * y);
        },
        initial_panels(u, y_max, xi), tol, 1e-13L, qc.max_panel_depth, qc.min_panel_width);
    auto c = quad::integrate_adaptive<quad::real_t>(
        [&](quad::real_t y) -> quad::real_t {
            return (long double)eval_function(u, (double)y) * std::cos((long double)xi * y);
        },
        initial_panels(u, y_max, xi), tol, 1e-13L, qc.max_panel_depth, qc.min_panel_width);
    return {(double)s, (double)c};
}

HalfLineTransform sample_transform(const FunctionDescriptor& u, double M, int n,
                                   const QuadratureConfig& qc) {
    if (n < 3) throw ConfigError("transform sampling needs at least 3 points");
    HalfLineTransform tr;
    tr.xi = Eigen::ArrayXd::LinSpaced(n, -M, M);
    tr.values.resize(n);
    // conjugate symmetry halves the work for real u
    for (int i = n / 2; i < n; ++i) {
        const cplx v = forward(u, tr.xi[i], qc);
        tr.values[i] = v;
        tr.values[n - 1 - i] = std::conj(v);
    }
    const double y_max = integration_extent(u);
    tr.source_norm_sq = (double)quad::integrate_adaptive<quad::real_t>(
        [&](quad::real_t y) -> quad::real_t {
            const long double v = eval_function(u, (double)y);
            return v * v;
        },
        0.0L, (quad::real_t)y_max, 1e-14L, 1e-13L);
    return tr;
}

double invert(const HalfLineTransform& tr, double x) {
    if (x < 0.0) throw ConfigError("inversion is defined on the half line x >= 0");
    const Eigen::Index n = tr.xi.size();
    if (n < 3) throw ConfigError("transform has too few samples");
    const double spacing = tr.xi[1] - tr.xi[0];
    if (x > 0.0 && spacing > kPi / (4.0 * x) * (1.0 + 1e-12))
        throw AccuracyError("frequency grid under-resolves e^{i x xi} at this x",
                            kPi / (4.0 * x), spacing);
    // trapezoid; compensated long-double accumulation
    cplxl acc = 0.0L;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const long double dxi = tr.xi[i + 1] - tr.xi[i];
        const cplxl a = cplxl(tr.values[i].real(), tr.values[i].imag()) *
                        std::exp(cplxl(0.0L, (long double)x * tr.xi[i]));
        const cplxl b = cplxl(tr.values[i + 1].real(), tr.values[i + 1].imag()) *
                        std::exp(cplxl(0.0L, (long double)x * tr.xi[i + 1]));
        acc += (a + b) * (dxi / 2.0L);
    }
    return (double)(acc.real() / (2.0L * kPiL));
}

double plancherel_defect(const FunctionDescriptor& u, const QuadratureConfig& qc) {
    if (u.kind == FunctionKind::Zero) return 0.0;
    const double y_max = integration_extent(u);
    const double rhs = (double)quad::integrate_adaptive<quad::real_t>(
        [&](quad::real_t y) -> quad::real_t {
            const long double v = eval_function(u, (double)y);
            return v * v;
        },
        0.0L, (quad::real_t)y_max, 1e-14L, 1e-13L);

    const double M = std::max(qc.M, 4000.0);
    // |P|^2 is smooth (no x-oscillation); octave panels keep the count low
    std::vector<std::pair<quad::real_t, quad::real_t>> panels;
    double p = 1.0;
    panels.push_back({0.0, 1.0});
    while (p < M) {
        panels.push_back({p, std::min(2.0 * p, M)});
        p *= 2.0;
    }
    auto f = [&](quad::real_t xi) -> quad::real_t {
        const cplx v = forward(u, (double)xi, qc);
        return (long double)std::norm(v);
    };
    const double body =
        2.0 * (double)quad::integrate_adaptive<quad::real_t>(f, panels, 1e-11L, 1e-10L,
                                                             qc.max_panel_depth,
                                                             qc.min_panel_width);
    // analytic tail of |P|^2 from the 1/xi expansion:
    // P ~ a1/xi + a2/xi^2 + a3/xi^3, a_k = u^{(k-1)}(0) / i^k.
    const cplx i1(0.0, 1.0);
    const cplx a1 = eval_derivative(u, 0.0, 0) / i1;
    const cplx a2 = eval_derivative(u, 0.0, 1) / (i1 * i1);
    const cplx a3 = eval_derivative(u, 0.0, 2) / (i1 * i1 * i1);
    const double c2 = std::norm(a1);
    const double c3 = 2.0 * (a1 * std::conj(a2)).real();
    const double c4 = std::norm(a2) + 2.0 * (a1 * std::conj(a3)).real();
    const double tail = 2.0 * (c2 / M + c3 / (2.0 * M * M) + c4 / (3.0 * M * M * M));

    const double lhs = (body + tail) / (2.0 * kPi);
    return std::abs(lhs - rhs);
}

} // namespace bbm
