#pragma once

#include "bbm/functions.hpp"
#include "bbm/oscillatory.hpp"
#include "bbm/quadrature.hpp"

#include <Eigen/Core>

namespace bbm {

/// Sampled half-line transform P(u)(xi) = integral_0^inf e^{-i y xi} u(y) dy
/// on a symmetric frequency grid, plus the source L2 mass for Plancherel
/// checks.
struct HalfLineTransform {
    Eigen::ArrayXd xi;
    Eigen::ArrayXcd values;
    double source_norm_sq = 0.0;
};

/// P(u)(xi) by adaptive quadrature; u must decay integrably (catalog rule).
cplx forward(const FunctionDescriptor& u, double xi, const QuadratureConfig& qc);

/// Same transform for an arbitrary integrand with known decay extent
/// (integration runs over [0, y_max]); used by tests and derivative profiles.
cplx forward_fn(const std::function<double(double)>& u, double y_max, double xi,
                const QuadratureConfig& qc);

/// S = integral_0^inf sin(y xi) u dy and C = integral cos(y xi) u dy, so that
/// forward(u, xi) = C - i S.
std::pair<double, double> sine_cosine_parts(const FunctionDescriptor& u, double xi,
                                            const QuadratureConfig& qc);

/// Samples P(u) on a uniform symmetric grid [-M, M] with n points (n odd keeps
/// xi = 0 on the grid).
HalfLineTransform sample_transform(const FunctionDescriptor& u, double M, int n,
                                   const QuadratureConfig& qc);

/// Inversion u(x) = (1/2pi) integral e^{i x xi} P(u)(xi) dxi by trapezoid over
/// the stored samples. The grid must resolve e^{i x xi} (spacing <= pi/(4x)).
double invert(const HalfLineTransform& tr, double x);

/// |(1/2pi) integral |P(u)|^2 dxi - integral_0^inf |u|^2 dy| with an analytic
/// large-xi correction so the defect reflects quadrature quality, not
/// truncation.
double plancherel_defect(const FunctionDescriptor& u, const QuadratureConfig& qc);

/// Integration extent for a catalog profile: center + 40 decay lengths.
double integration_extent(const FunctionDescriptor& u);

} // namespace bbm
