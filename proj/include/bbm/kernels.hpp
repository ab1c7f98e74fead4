#pragma once

#include "bbm/halfline.hpp"
#include "bbm/oscillatory.hpp"
#include "bbm/problem.hpp"

#include <Eigen/Core>
#include <memory>
#include <unordered_map>

namespace bbm {

/// Memoized half-line transform of one catalog profile, with the large-xi
/// asymptotic model built from its derivatives at 0. The memo grows while
/// evaluating; share one instance per thread, not across threads.
class TransformCache {
public:
    TransformCache(FunctionDescriptor d, QuadratureConfig qc);

    cplxl value(double xi);
    SeriesXi series(double vf) const;
    const FunctionDescriptor& descriptor() const { return d_; }
    size_t size() const { return memo_.size(); }

private:
    FunctionDescriptor d_;
    QuadratureConfig qc_;
    std::unordered_map<double, cplxl> memo_;
    std::array<double, SeriesXi::kOrder + 1> deriv0_{};  // u^{(k)}(0), k = 0..kOrder
    double rem_ = 0.0;  // |u^{(K)}(0)| + L1 of u^{(K+1)}
};

using TransformCachePtr = std::shared_ptr<TransformCache>;

/// Amplitude A(xi) = P(u)(xi).
OscAmplitude amp_transform(TransformCachePtr cache);
/// Amplitude A(xi) = P(u)(xi) / (1 + gamma xi^2).
OscAmplitude amp_q_transform(TransformCachePtr cache, double gamma);

/// Normalized forcing kernel Phi(x,t) = (1/2pi) * raw integral (Eq. phi).
double phi(double x, double t, double alpha, double gamma, const QuadratureConfig& qc);

/// Gamma-convolution integral_0^inf Gamma(x-y,t) u0(y) dy computed in
/// frequency space: (1/2pi) integral e^{i x xi - i beta t} P(u0)(xi) dxi.
/// Gamma itself is a distribution and is never evaluated pointwise.
double gamma_convolve(const FunctionDescriptor& u0, double x, double t, double alpha,
                      double gamma, const QuadratureConfig& qc,
                      TransformCache* cache = nullptr);

/// Green's-type kernel of the nonlinear integral equation (Eq. 1.7), with
/// sgn(0) = 0 so K(x,x) is well defined.
double kernel_K(double x, double y, double gamma);

/// Phi sampled on a grid, with the configuration that produced it.
struct KernelField {
    Grid grid;
    Eigen::ArrayXXd phi_values;  // (x, t) indexed
    QuadratureConfig config;
    double alpha = 0.0;
    double gamma = 0.0;
};

KernelField build_kernel_field(const Grid& grid, double alpha, double gamma,
                               const QuadratureConfig& qc, int threads = 0);

} // namespace bbm
