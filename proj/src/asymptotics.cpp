#include "bbm/asymptotics.hpp"
#include "bbm/errors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace bbm {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
}

StationaryPhaseData extract_local_data(Segment seg, double alpha, double gamma, double x) {
    if (alpha == 0.0)
        throw ConfigError("stationary phase undefined for alpha = 0 (beta vanishes)");
    if (!(gamma > 0.0)) throw ConfigError("stationary phase requires gamma > 0");
    const double sg = std::sqrt(gamma);
    StationaryPhaseData d;
    d.mu = 2.0;
    d.lambda = 1.0;
    // |p''(a)|/2 with p = -+beta and beta''(-+1/sqrt(g)) = +-alpha sqrt(g)/2
    d.P = std::abs(alpha) * sg / 4.0;
    if (seg == Segment::I2) {
        d.a = -1.0 / sg;
        d.b = 0.0;
        d.Q = 0.5 * std::exp(cplx(0.0, -x / sg));
        d.p_at_a = alpha / (2.0 * sg);   // -beta(a) with beta(a) = -alpha/(2 sqrt g)
        d.sign = alpha > 0.0 ? -1 : 1;   // p' = -beta' < 0 on I2 for alpha > 0
    } else {
        d.a = 1.0 / sg;
        d.b = std::numeric_limits<double>::infinity();
        d.Q = 0.5 * std::exp(cplx(0.0, x / sg));
        d.p_at_a = -alpha / (2.0 * sg);
        d.sign = alpha > 0.0 ? 1 : -1;
    }
    return d;
}

cplx olver_leading_term(const StationaryPhaseData& d, double t) {
    if (!(t > 0.0)) throw ConfigError("leading term needs t > 0");
    const double lm = d.lambda / d.mu;
    const cplx rot = std::exp(cplx(0.0, d.sign * d.lambda * kPi / (2.0 * d.mu)));
    return rot * (d.Q / d.mu) * std::tgamma(lm) * std::exp(cplx(0.0, t * d.p_at_a)) /
           std::pow(d.P * t, lm);
}

AsymptoticComparison asymptotic_vs_quadrature(Segment seg, double alpha, double gamma,
                                              double x, double t,
                                              const QuadratureConfig& qc) {
    if (!(t > 0.0)) throw ConfigError("asymptotic comparison needs t > 0");
    const StationaryPhaseData d = extract_local_data(seg, alpha, gamma, x);
    const double sg = std::sqrt(gamma);
    const double M = qc.M > 0.0 ? qc.M : tail_bound_M(qc.epsilon, gamma).M;
    const PhaseDescriptor pd{alpha, gamma, x, t};
    AsymptoticComparison out;
    if (seg == Segment::I2)
        out.exact = integrate_segment(pd, -1.0 / sg, 0.0, qc);
    else
        out.exact = integrate_segment(pd, 1.0 / sg, M, qc);
    out.approx = olver_leading_term(d, t);
    const double mag = std::abs(out.exact);
    if (mag < 10.0 * qc.epsilon) {
        out.meaningful = false;
        out.rel_err = std::numeric_limits<double>::quiet_NaN();
    } else {
        out.rel_err = std::abs(out.approx - out.exact) / mag;
    }
    return out;
}

DecayFit decay_fit(const std::vector<std::pair<double, double>>& samples) {
    DecayFit fit;
    std::vector<double> lt, lm;
    for (auto& [t, mag] : samples) {
        if (!(mag > 0.0) || !(t > 0.0)) {
            ++fit.dropped;
            continue;
        }
        lt.push_back(std::log(t));
        lm.push_back(std::log(mag));
    }
    const int n = (int)lt.size();
    if (n < 2) {
        fit.degenerate = true;
        return fit;
    }
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        A(i, 0) = lt[i];
        A(i, 1) = 1.0;
        y(i) = lm[i];
    }
    const double spread = *std::max_element(lt.begin(), lt.end()) -
                          *std::min_element(lt.begin(), lt.end());
    if (spread < 1e-12) {
        fit.degenerate = true;
        return fit;
    }
    const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
    fit.slope = coef(0);
    fit.intercept = coef(1);
    fit.residual = std::sqrt((A * coef - y).squaredNorm() / n);
    return fit;
}

double variation_check(Segment seg, double alpha, double gamma, double x, double eps,
                       double M) {
    if (!(eps > 0.0)) throw ConfigError("variation check needs eps > 0");
    if (alpha == 0.0) throw ConfigError("variation check needs alpha != 0");
    const double sg = std::sqrt(gamma);
    double lo, hi;
    if (seg == Segment::I4) {
        lo = 1.0 / sg + eps;
        hi = M;
    } else {
        lo = -1.0 / sg + eps;
        hi = 0.0;
    }
    if (!(hi > lo)) throw ConfigError("variation interval is empty");
    // q/p' = -+(1+g xi^2) e^{i x xi} / (alpha (1 - g xi^2)); the modulus of the
    // derivative is sign-independent:
    // |(q/p')'| = |i x r + r'|, r = (1+g xi^2)/(alpha(1-g xi^2)),
    // r' = 4 g xi / (alpha (1-g xi^2)^2).
    auto integrand = [&](quad::real_t xi_) -> quad::real_t {
        const double xi = (double)xi_;
        const double den = 1.0 - gamma * xi * xi;
        const double r = (1.0 + gamma * xi * xi) / (alpha * den);
        const double rp = 4.0 * gamma * xi / (alpha * den * den);
        return std::hypot(x * r, rp);
    };
    // octave panels; the integrand is smooth away from the excluded point
    std::vector<std::pair<quad::real_t, quad::real_t>> panels;
    if (seg == Segment::I4) {
        double p = lo;
        const double first = std::min(hi, 2.0 / sg);
        if (first > lo) panels.push_back({lo, first});
        p = first;
        while (p < hi) {
            panels.push_back({p, std::min(2.0 * p, hi)});
            p *= 2.0;
        }
    } else {
        panels.push_back({lo, hi});
    }
    return (double)quad::integrate_adaptive<quad::real_t>(integrand, panels, 1e-10L, 1e-9L);
}

} // namespace bbm
