#pragma once

#include "bbm/asymptotics.hpp"
#include "bbm/solver.hpp"

#include <Eigen/Core>

namespace bbm {

/// Eventual-periodicity measurements at a station x: the defect
/// D(x,t) = u(x,t+T0) - u(x,t) per scheduled time, its trailing-window
/// envelope, and a log-log decay fit of the envelope.
struct PeriodicityReport {
    double x = 0.0;
    Eigen::ArrayXd t_samples;
    Eigen::ArrayXd defect;           // |D(x,t)| at each sample
    Eigen::ArrayXd defect_envelope;  // sup over the trailing window [t-T0, t]
    Eigen::ArrayXd defect_repr;      // Eq. (ud) route, NaN for nonlinear solvers
    DecayFit fit;                    // fitted on the envelope
    Method method = Method::Semianalytic;
    double bound_constant = 0.0;     // bracketed constant of the final S3 estimate
};

/// D(x,t) from a solved field; both times must be grid values.
double defect_direct(const SolutionField& u, double x, double t, double T0);

/// D(x,t) by two pointwise semi-analytic evaluations.
double defect_direct(const SemianalyticWorkspace& ws, double x, double t, double T0);

/// The paper's single-period representation (Eq. ud):
/// D(x,t) = integral_{-T0}^{0} integral_0^inf Phi(x-y, t-tau)
///          [f(y,tau) - alpha u0'(y) + (alpha/sqrt g) g(tau) e^{-y/sqrt g}] dy dtau
/// evaluated in frequency space with normalized Phi. Periodic data extended to
/// tau in [-T0, 0] by periodicity.
double defect_representation(const ProblemSpec& spec, double x, double t,
                             const QuadratureConfig& qc);

/// Bracketed constant of the final estimate of Section 3:
/// integral integral |f| + alpha T0 integral |u0'| + alpha integral |g|.
double periodicity_bound_constant(const ProblemSpec& spec);

/// Defect decay study on a geometric schedule. Solver must be Semianalytic,
/// FdReference or IntegralEquation.
PeriodicityReport periodicity_study(const ProblemSpec& spec, double x,
                                    const Eigen::ArrayXd& t_schedule, Method solver,
                                    const QuadratureConfig& qc);

/// Default schedule: n geometric points from lo to hi.
Eigen::ArrayXd geometric_schedule(double lo, double hi, int n);

} // namespace bbm
