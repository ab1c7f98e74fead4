#include "bbm/functions.hpp"
#include "bbm/errors.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

namespace bbm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_params(const FunctionDescriptor& d, size_t n, const char* name) {
    if (d.params.size() != n)
        throw ConfigError(std::string(name) + " expects " + std::to_string(n) +
                          " parameters, got " + std::to_string(d.params.size()));
}

// Derivatives of exp(-u^2/2) via the Hermite recurrence:
// d^n/du^n e^{-u^2/2} = (-1)^n He_n(u) e^{-u^2/2},
// He_{n+1} = u He_n - n He_{n-1}.
double hermite_he(int n, double u) {
    double h0 = 1.0, h1 = u;
    if (n == 0) return h0;
    if (n == 1) return h1;
    for (int k = 1; k < n; ++k) {
        double h2 = u * h1 - k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

// Polynomial utilities for PolyExp: p(s) e^{-ks} differentiates to
// (p' - k p) e^{-ks}; iterate on coefficient vectors.
std::vector<double> poly_derivative_step(const std::vector<double>& c, double k) {
    std::vector<double> out(c.size(), 0.0);
    for (size_t j = 0; j + 1 < c.size(); ++j) out[j] = (j + 1) * c[j + 1];
    for (size_t j = 0; j < c.size(); ++j) out[j] -= k * c[j];
    return out;
}

double poly_eval(const std::vector<double>& c, double s) {
    double v = 0.0;
    for (size_t j = c.size(); j-- > 0;) v = v * s + c[j];
    return v;
}

} // namespace

FunctionDescriptor FunctionDescriptor::zero() { return {FunctionKind::Zero, {}}; }
FunctionDescriptor FunctionDescriptor::gaussian(double a, double x0, double w) {
    return {FunctionKind::Gaussian, {a, x0, w}};
}
FunctionDescriptor FunctionDescriptor::exp_decay(double a, double k) {
    return {FunctionKind::ExpDecay, {a, k}};
}
FunctionDescriptor FunctionDescriptor::sine(double a, double T0) {
    return {FunctionKind::Sine, {a, T0}};
}
FunctionDescriptor FunctionDescriptor::sine_ramped(double a, double T0, double tau) {
    return {FunctionKind::SineRamped, {a, T0, tau}};
}
FunctionDescriptor FunctionDescriptor::poly_exp(double c0, double c1, double c2, double c3, double k) {
    return {FunctionKind::PolyExp, {c0, c1, c2, c3, k}};
}

FunctionKind kind_from_string(const std::string& s) {
    if (s == "zero") return FunctionKind::Zero;
    if (s == "gaussian") return FunctionKind::Gaussian;
    if (s == "exp_decay") return FunctionKind::ExpDecay;
    if (s == "sine") return FunctionKind::Sine;
    if (s == "sine_ramped") return FunctionKind::SineRamped;
    if (s == "poly_exp") return FunctionKind::PolyExp;
    throw ConfigError("unknown function kind '" + s + "'");
}

std::string kind_to_string(FunctionKind k) {
    switch (k) {
        case FunctionKind::Zero: return "zero";
        case FunctionKind::Gaussian: return "gaussian";
        case FunctionKind::ExpDecay: return "exp_decay";
        case FunctionKind::Sine: return "sine";
        case FunctionKind::SineRamped: return "sine_ramped";
        case FunctionKind::PolyExp: return "poly_exp";
    }
    throw ConfigError("unknown function kind enum");
}

double eval_function(const FunctionDescriptor& d, double s) {
    return eval_derivative(d, s, 0);
}

double eval_derivative(const FunctionDescriptor& d, double s, int n) {
    switch (d.kind) {
        case FunctionKind::Zero:
            return 0.0;
        case FunctionKind::Gaussian: {
            require_params(d, 3, "gaussian");
            const double a = d.params[0], x0 = d.params[1], w = d.params[2];
            if (w <= 0.0) throw ConfigError("gaussian width must be > 0");
            const double u = (s - x0) / w;
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            return a * sign * hermite_he(n, u) * std::exp(-0.5 * u * u) / std::pow(w, n);
        }
        case FunctionKind::ExpDecay: {
            require_params(d, 2, "exp_decay");
            const double a = d.params[0], k = d.params[1];
            if (k <= 0.0) throw ConfigError("exp_decay rate must be > 0");
            return a * std::pow(-k, n) * std::exp(-k * s);
        }
        case FunctionKind::Sine: {
            require_params(d, 2, "sine");
            const double a = d.params[0], T0 = d.params[1];
            if (T0 <= 0.0) throw ConfigError("sine period must be > 0");
            const double om = kTwoPi / T0;
            return a * std::pow(om, n) * std::sin(om * s + n * 1.5707963267948966);
        }
        case FunctionKind::SineRamped: {
            require_params(d, 3, "sine_ramped");
            const double a = d.params[0], T0 = d.params[1], tau = d.params[2];
            if (T0 <= 0.0 || tau <= 0.0) throw ConfigError("sine_ramped period and ramp must be > 0");
            const double om = kTwoPi / T0;
            // Leibniz over (1 - e^{-s/tau}) * sin(om s).
            double out = 0.0;
            double binom = 1.0;
            for (int j = 0; j <= n; ++j) {
                // j-th derivative of (1 - e^{-s/tau})
                double ramp_dj = (j == 0) ? (1.0 - std::exp(-s / tau))
                                          : -std::pow(-1.0 / tau, j) * std::exp(-s / tau);
                double sin_dj = std::pow(om, n - j) * std::sin(om * s + (n - j) * 1.5707963267948966);
                out += binom * ramp_dj * sin_dj;
                binom = binom * (n - j) / (j + 1);
            }
            return a * out;
        }
        case FunctionKind::PolyExp: {
            require_params(d, 5, "poly_exp");
            const double k = d.params[4];
            if (k <= 0.0) throw ConfigError("poly_exp rate must be > 0");
            std::vector<double> c(d.params.begin(), d.params.begin() + 4);
            for (int j = 0; j < n; ++j) c = poly_derivative_step(c, k);
            return poly_eval(c, s) * std::exp(-k * s);
        }
    }
    throw ConfigError("unknown function kind enum");
}

bool decays_integrably(const FunctionDescriptor& d) {
    switch (d.kind) {
        case FunctionKind::Zero:
        case FunctionKind::Gaussian:
        case FunctionKind::ExpDecay:
        case FunctionKind::PolyExp:
            return true;
        default:
            return false;
    }
}

bool is_periodic(const FunctionDescriptor& d) {
    return d.kind == FunctionKind::Sine || d.kind == FunctionKind::SineRamped ||
           d.kind == FunctionKind::Zero;
}

double period_of(const FunctionDescriptor& d) {
    if (d.kind == FunctionKind::Sine || d.kind == FunctionKind::SineRamped)
        return d.params[1];
    return 0.0;
}

double decay_scale(const FunctionDescriptor& d) {
    switch (d.kind) {
        case FunctionKind::Gaussian: return d.params[2];
        case FunctionKind::ExpDecay: return 1.0 / d.params[1];
        case FunctionKind::PolyExp: return 1.0 / d.params[4];
        default: return 1.0;
    }
}

double center_of(const FunctionDescriptor& d) {
    return d.kind == FunctionKind::Gaussian ? d.params[1] : 0.0;
}

double tail_mass(const FunctionDescriptor& d, double y) {
    switch (d.kind) {
        case FunctionKind::Zero:
            return 0.0;
        case FunctionKind::Gaussian: {
            const double a = std::abs(d.params[0]), x0 = d.params[1], w = d.params[2];
            const double u = (y - x0) / w;
            if (u <= 0.0) return a * w * 2.5066282746310002;  // full mass
            return a * w * 1.2533141373155003 * std::erfc(u * 0.7071067811865476);
        }
        case FunctionKind::ExpDecay: {
            const double a = std::abs(d.params[0]), k = d.params[1];
            return a * std::exp(-k * y) / k;
        }
        case FunctionKind::PolyExp: {
            const double k = d.params[4];
            // |p(s)| <= sum |c_j| max(1, s)^3 for s >= y; crude but safe:
            double cmax = 0.0;
            for (int j = 0; j < 4; ++j) cmax += std::abs(d.params[j]);
            const double ym = std::max(1.0, y);
            // integral_y^inf (1+s)^3 e^{-ks} ds <= (1+y)^3 e^{-ky} (1/k) (1 + 3/(k(1+y)))^3-ish;
            // bound with a fixed factor adequate for panel-extension decisions.
            return cmax * std::pow(1.0 + ym, 3) * std::exp(-k * y) * (1.0 / k) *
                   std::pow(1.0 + 3.0 / (k * (1.0 + ym)), 3);
        }
        default:
            // non-decaying kinds have no finite tail mass
            return std::numeric_limits<double>::infinity();
    }
}

double derivative_l1_norm(const FunctionDescriptor& d, int n) {
    if (d.kind == FunctionKind::Zero) return 0.0;
    // Composite Simpson over [0, center + 40 * scale]; the catalog derivatives
    // decay at the same scale as the function.
    const double hi = center_of(d) + 40.0 * decay_scale(d);
    const int m = 4000;
    const double h = hi / m;
    double acc = std::abs(eval_derivative(d, 0.0, n)) + std::abs(eval_derivative(d, hi, n));
    for (int j = 1; j < m; ++j)
        acc += std::abs(eval_derivative(d, j * h, n)) * (j % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

} // namespace bbm
