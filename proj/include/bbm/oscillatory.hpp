#pragma once

#include "bbm/quadrature.hpp"

#include <array>
#include <complex>
#include <functional>

namespace bbm {

using cplx = std::complex<double>;
using cplxl = std::complex<long double>;

/// Dispersion phase speed beta(xi) = alpha xi / (1 + gamma xi^2); odd in xi,
/// critical points at +-1/sqrt(gamma).
double beta_phase(double xi, double alpha, double gamma);
double beta_phase_deriv(double xi, double alpha, double gamma);

/// Total phase theta(xi) = x xi - beta(xi) t for the kernel integrals.
struct PhaseDescriptor {
    double alpha = 1.0;
    double gamma = 1.0;  // > 0
    double x = 0.0;
    double t = 0.0;

    double beta(double xi) const { return beta_phase(xi, alpha, gamma); }
    double theta(double xi) const { return x * xi - beta(xi) * t; }
};

struct TailBound {
    double M = 0.0;
    bool clamped = false;
};

/// Smallest M with integral_{|xi|>M} dxi/(1+gamma xi^2) < eps/2, via the
/// arctan closed form M = tan(pi/2 - eps sqrt(gamma)/4)/sqrt(gamma); clamped
/// to 1/sqrt(gamma) when eps is large enough to make the bound trivial.
TailBound tail_bound_M(double epsilon, double gamma);

/// Truncated asymptotic model A(xi) ~ sum_k c[k] xi^{-k} (k = 0..kOrder) with
/// remainder |A - sum| <= rem * xi^{-(kOrder+1)} for xi >= valid_from.
struct SeriesXi {
    static constexpr int kOrder = 8;
    std::array<cplx, kOrder + 1> c{};
    double rem = 0.0;
    double valid_from = 10.0;

    cplx eval(double xi) const;
    double abs_bound(double xi) const;

    SeriesXi times(const SeriesXi& o) const;
    SeriesXi plus(const SeriesXi& o) const;
    SeriesXi scaled(cplx f) const;
};

SeriesXi series_one(double vf);
SeriesXi series_lorentzian(double gamma, double vf);              // 1/(1+gamma xi^2)
SeriesXi series_beta(double alpha, double gamma, double vf);      // beta(xi)
/// exp(-i s beta(xi)) as a series in 1/xi.
SeriesXi series_exp_minus_i_s_beta(double s, double alpha, double gamma, double vf);
/// 1/(beta(xi) + c0); requires |beta| < |c0| on [vf, inf), i.e. |c0| above the
/// global beta range or complex c0.
SeriesXi series_inv_beta_plus(cplx c0, double alpha, double gamma, double vf);
/// F(beta(xi)) for an entire F given by Taylor coefficients w_n (F = sum w_n b^n).
SeriesXi series_analytic_in_beta(const std::vector<cplx>& taylor, double alpha,
                                 double gamma, double vf);

/// e^{i x xi}-weighted moments: integral_Lam^hi e^{i x xi} xi^{-k} dxi.
/// hi may be infinity; requires |x|*Lam >= ~40 when x != 0, or x == 0 with
/// k >= 2 (k == 1 needs finite hi).
cplxl tail_moment(int k, long double lam, long double hi, long double x);

/// Tail of the asymptotic model: integral_Lam^hi series(xi) e^{i x xi} dxi,
/// with an error estimate for the dropped remainder.
cplxl series_tail(const SeriesXi& s, long double lam, long double hi, long double x,
                  double* err_est);

/// Amplitude of an oscillatory integral: pointwise values plus an asymptotic
/// model builder (rebuilt when the engine widens its panel range).
struct OscAmplitude {
    std::function<cplxl(double)> eval;                 // A(xi), any real xi
    std::function<SeriesXi(double)> series_at;         // model valid on [lambda, inf)
    double suggested_lambda = 10.0;
};

OscAmplitude amp_lorentzian(double gamma);

struct OscResult {
    double value = 0.0;          // full-line integral (real by conjugate symmetry)
    double tail_certificate = 0.0;  // certified bound on |integral_{|xi|>M}| amplitude mass
    double achieved = 0.0;       // panel + tail error estimate
    double lambda = 0.0;         // panel/series switch radius used
    long evaluations = 0;
};

/// integral_{-inf}^{inf} A(xi) e^{i(x xi - beta(xi) s)} dxi for conjugate-
/// symmetric A, evaluated as 2 Re integral_0^{Lam} + asymptotic tail.
/// certificate_M: radius for the reported absolute-mass certificate (the
/// paper's epsilon/2 bound); <= 0 derives it from tail_bound_M(eps, gamma).
OscResult osc_full_line(const OscAmplitude& amp, double x, double s, double alpha,
                        double gamma, const QuadratureConfig& qc,
                        double certificate_M = 0.0);

/// integral_a^b with the same integrand, complex-valued; |b| or |a| may exceed
/// the panel range, in which case the series tail covers the rest.
cplx osc_segment(const OscAmplitude& amp, double a, double b, double x, double s,
                 double alpha, double gamma, const QuadratureConfig& qc);

struct PhiRawResult {
    cplx value;              // raw paper-normalization integral
    double tail_certificate; // absolute-mass bound beyond M, must be < eps/2
    double achieved;
};

/// Raw paper-verbatim Phi kernel integral (Eq. phi):
/// integral 1/(1+gamma xi^2) e^{i x xi - i beta(xi) t} dxi over the real line.
PhiRawResult integrate_phi_raw(const PhaseDescriptor& pd, const QuadratureConfig& qc);

/// Sub-integral over [a,b] of the same integrand (the I1..I4 split).
cplx integrate_segment(const PhaseDescriptor& pd, double a, double b,
                       const QuadratureConfig& qc);

} // namespace bbm
