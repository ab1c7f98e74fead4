#pragma once

#include "bbm/oscillatory.hpp"

#include <vector>

namespace bbm {

enum class Segment { I2, I4 };

/// Local data of the stationary endpoint for the Olver-form leading term:
/// p(xi) - p(a) ~ P (xi-a)^mu, q(xi) ~ Q (xi-a)^(lambda-1) as xi -> a, with
/// sign = -1 when the theorem is applied to the conjugate integral.
///
/// Note P is the genuine Taylor constant |p''(a)|/2 = |alpha| sqrt(gamma)/4;
/// quadrature confirms it where the printed constant differs by a factor 2.
struct StationaryPhaseData {
    double a = 0.0;
    double b = 0.0;      // other endpoint (0 for I2; the truncation M side for I4)
    double P = 0.0;
    double mu = 2.0;
    double lambda = 1.0;
    cplx Q;
    double p_at_a = 0.0;  // phase value entering e^{i t p(a)}
    int sign = 1;         // sign of i in the theorem application
};

StationaryPhaseData extract_local_data(Segment seg, double alpha, double gamma, double x);

/// Leading term e^{sign i lambda pi/(2 mu)} (Q/mu) Gamma(lambda/mu)
/// e^{i t p(a)} / (P t)^(lambda/mu).
cplx olver_leading_term(const StationaryPhaseData& d, double t);

struct AsymptoticComparison {
    cplx approx;
    cplx exact;
    double rel_err = 0.0;
    bool meaningful = true;  // false when |exact| is below quadrature resolution
};

/// Raw segment quadrature vs the leading term. I2 runs on [-1/sqrt(g), 0],
/// I4 on [1/sqrt(g), M] with M from the config (or tail_bound_M).
AsymptoticComparison asymptotic_vs_quadrature(Segment seg, double alpha, double gamma,
                                              double x, double t,
                                              const QuadratureConfig& qc);

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    int dropped = 0;          // nonpositive magnitudes removed before the fit
    bool degenerate = false;  // fewer than 2 usable samples or zero spread
};

/// Least-squares slope of log|magnitude| against log t.
DecayFit decay_fit(const std::vector<std::pair<double, double>>& samples);

/// Total variation integral of q/p' over [a + eps-offset, M] (Appendix B
/// condition iii); grows without bound in M when x > 0.
double variation_check(Segment seg, double alpha, double gamma, double x, double eps,
                       double M);

} // namespace bbm
