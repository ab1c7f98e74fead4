#pragma once

#include "bbm/functions.hpp"

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

namespace bbm {

/// Separable forcing f(x,t) = spatial(x) * temporal(t).
struct ForcingDescriptor {
    FunctionDescriptor spatial = FunctionDescriptor::zero();
    FunctionDescriptor temporal = FunctionDescriptor::zero();

    bool is_zero() const {
        return spatial.kind == FunctionKind::Zero || temporal.kind == FunctionKind::Zero;
    }
    double operator()(double x, double t) const {
        if (is_zero()) return 0.0;
        return eval_function(spatial, x) * eval_function(temporal, t);
    }
    bool operator==(const ForcingDescriptor&) const = default;
};

/// The full IBVP instance: u_t + alpha u_x + beta u u_x - gamma u_xxt = f,
/// u(x,0) = u0(x), u(0,t) = g(t) on the quarter plane.
struct ProblemSpec {
    double alpha = 1.0;
    double beta_nl = 0.0;           // 0 = linearized
    double gamma = 1.0;             // >= 0; > 0 for the spectral solver
    FunctionDescriptor u0 = FunctionDescriptor::zero();
    FunctionDescriptor g = FunctionDescriptor::zero();
    ForcingDescriptor f;
    std::optional<double> period;   // declared common period of g and f

    bool operator==(const ProblemSpec&) const = default;
};

struct Violation {
    std::string rule;
    std::string detail;
};

/// Checks the ProblemSpec invariants. Violations are data, not exceptions;
/// an empty list means the spec is admissible.
std::vector<Violation> validate(const ProblemSpec& spec);

/// Tolerance for the u0(0) = g(0) = 0 compatibility requirement. Catalog
/// bumps like gaussian(1,3,0.5) evaluate to ~1.5e-8 at 0, below solver
/// accuracy targets.
inline constexpr double kCompatibilityTol = 1e-6;

/// Sorted nonnegative evaluation grid.
struct Grid {
    Eigen::ArrayXd x;
    Eigen::ArrayXd t;

    static Grid uniform(double x_lo, double x_hi, int nx, double t_lo, double t_hi, int nt);
    static Eigen::ArrayXd linspace(double lo, double hi, int n);

    /// Index of an exact grid value, or -1.
    static Eigen::Index find(const Eigen::ArrayXd& v, double value, double tol = 1e-12);
};

/// Throws ConfigError unless values are strictly increasing and >= 0.
void check_grid_axis(const Eigen::ArrayXd& v, const char* name);

} // namespace bbm
