#include "bbm/problem.hpp"
#include "bbm/errors.hpp"

#include <cmath>

namespace bbm {

std::vector<Violation> validate(const ProblemSpec& spec) {
    std::vector<Violation> out;

    if (!(spec.gamma >= 0.0))
        out.push_back({"gamma must be >= 0",
                       "gamma = " + std::to_string(spec.gamma)});

    const double u00 = eval_function(spec.u0, 0.0);
    if (std::abs(u00) > kCompatibilityTol)
        out.push_back({"u0(0) != 0",
                       "u0(0) = " + std::to_string(u00) + " exceeds compatibility tolerance"});

    const double g0 = eval_function(spec.g, 0.0);
    if (std::abs(g0) > kCompatibilityTol)
        out.push_back({"g(0) != 0",
                       "g(0) = " + std::to_string(g0) + " exceeds compatibility tolerance"});

    if (!decays_integrably(spec.u0))
        out.push_back({"u0 must decay integrably",
                       "u0 kind " + kind_to_string(spec.u0.kind) + " is not integrable on the half line"});

    if (spec.f.spatial.kind != FunctionKind::Zero && !decays_integrably(spec.f.spatial))
        out.push_back({"f spatial profile must decay integrably",
                       "kind " + kind_to_string(spec.f.spatial.kind)});

    if (spec.period) {
        if (!(*spec.period > 0.0))
            out.push_back({"period must be > 0", "period = " + std::to_string(*spec.period)});
        if (!is_periodic(spec.g))
            out.push_back({"g must be periodic when period is set",
                           "g kind " + kind_to_string(spec.g.kind)});
        else if (spec.g.kind != FunctionKind::Zero &&
                 std::abs(period_of(spec.g) - *spec.period) > 1e-12)
            out.push_back({"g period mismatch",
                           "g period " + std::to_string(period_of(spec.g)) +
                               " vs declared " + std::to_string(*spec.period)});
        if (!spec.f.is_zero()) {
            if (!is_periodic(spec.f.temporal))
                out.push_back({"f temporal factor must be periodic when period is set",
                               "kind " + kind_to_string(spec.f.temporal.kind)});
            else if (std::abs(period_of(spec.f.temporal) - *spec.period) > 1e-12)
                out.push_back({"f period mismatch",
                               "f temporal period " + std::to_string(period_of(spec.f.temporal)) +
                                   " vs declared " + std::to_string(*spec.period)});
        }
    }

    return out;
}

Eigen::ArrayXd Grid::linspace(double lo, double hi, int n) {
    if (n < 1) throw ConfigError("grid needs at least one point");
    if (n == 1) return Eigen::ArrayXd::Constant(1, lo);
    return Eigen::ArrayXd::LinSpaced(n, lo, hi);
}

Grid Grid::uniform(double x_lo, double x_hi, int nx, double t_lo, double t_hi, int nt) {
    Grid grid;
    grid.x = linspace(x_lo, x_hi, nx);
    grid.t = linspace(t_lo, t_hi, nt);
    check_grid_axis(grid.x, "x");
    check_grid_axis(grid.t, "t");
    return grid;
}

Eigen::Index Grid::find(const Eigen::ArrayXd& v, double value, double tol) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v[i] - value) <= tol * std::max(1.0, std::abs(value))) return i;
    return -1;
}

void check_grid_axis(const Eigen::ArrayXd& v, const char* name) {
    if (v.size() == 0) throw ConfigError(std::string("empty grid axis ") + name);
    if (v[0] < 0.0) throw ConfigError(std::string("grid axis ") + name + " must be >= 0");
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            throw ConfigError(std::string("grid axis ") + name + " must be strictly increasing");
}

} // namespace bbm
