#pragma once

#include "bbm/kernels.hpp"
#include "bbm/problem.hpp"

#include <Eigen/Core>
#include <memory>

namespace bbm {

enum class Method { Semianalytic, TransportClosedForm, FdReference, IntegralEquation };

std::string method_name(Method m);

/// Solution samples on a grid with the method that produced them.
struct SolutionField {
    Grid grid;
    Eigen::ArrayXXd u;  // (x, t) indexed
    Method method = Method::Semianalytic;
    ProblemSpec spec;

    double at(double x, double t) const;  // exact grid lookup, RangeError otherwise
};

/// Effective forcing of the shifted problem (Eq. ftil):
/// f(y,tau) + (alpha/sqrt(gamma)) g(tau) e^{-y/sqrt(gamma)}.
double effective_forcing(const ProblemSpec& spec, double y, double tau);

/// Per-spec caches and the closed-form temporal splits for the tau-integral.
/// One workspace per thread; evaluation is pure given immutable inputs.
class SemianalyticWorkspace {
public:
    SemianalyticWorkspace(ProblemSpec spec, QuadratureConfig qc);

    /// Full Theorem 2.1 sum (Eq. exu) with normalized kernels.
    double solve(double x, double t) const;

    const ProblemSpec& spec() const { return spec_; }
    const QuadratureConfig& config() const { return qc_; }

private:
    struct ForcingPiece {
        TransformCachePtr spatial;
        FunctionDescriptor temporal;
        double scale;
        bool closed_form;  // false: adaptive tau panels (gaussian/resonant)
    };

    double forcing_term(const ForcingPiece& piece, double x, double t) const;
    double forcing_term_tau_panels(const ForcingPiece& piece, double x, double t) const;

    ProblemSpec spec_;
    QuadratureConfig qc_;
    TransformCachePtr u0_cache_;
    std::vector<ForcingPiece> pieces_;
};

/// One-shot convenience wrapper around the workspace.
double solve_u(const ProblemSpec& spec, double x, double t, const QuadratureConfig& qc);

/// Sweeps the grid data-parallel (per-thread workspaces).
SolutionField solve_field(const ProblemSpec& spec, const Grid& grid,
                          const QuadratureConfig& qc, int threads = 0);

/// Corollary 2.3 closed form for gamma = 0, alpha > 0, f = 0:
/// u = u0(x - alpha t) for x >= alpha t, g(t - x/alpha) otherwise.
double transport_solution(const ProblemSpec& spec, double x, double t);

/// Sine/cosine spectral state of w at frequency xi (Step 3 formulas).
struct SpectralPair {
    double xi = 0.0;
    double X = 0.0;
    double Y = 0.0;
    double t = 0.0;
};

SpectralPair spectral_XY(const ProblemSpec& spec, double xi, double t,
                         const QuadratureConfig& qc);

/// Evaluates the variation-of-parameters right side (Appendix A, Eq. conc)
/// with the printed fundamental matrix and returns its max deviation from the
/// Step 3 closed forms.
double fundamental_matrix_check(const ProblemSpec& spec, double xi, double t,
                                const QuadratureConfig& qc);

} // namespace bbm
