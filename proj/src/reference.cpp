#include "bbm/reference.hpp"
#include "bbm/errors.hpp"
#include "bbm/kernels.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>

namespace bbm {

void FdConfig::check() const {
    if (!(L > 0.0)) throw ConfigError("fd L must be > 0");
    if (nx < 64) throw ConfigError("fd nx must be >= 64");
    if (!(dt > 0.0)) throw ConfigError("fd dt must be > 0");
}

void PicardConfig::check() const {
    if (!(dt > 0.0)) throw ConfigError("picard dt must be > 0");
    if (max_iter < 3) throw ConfigError("picard max_iter must be >= 3");
    if (!(fp_tol > 0.0)) throw ConfigError("picard fp_tol must be > 0");
    if (y_quadrature_nodes < 64) throw ConfigError("picard y_quadrature_nodes must be >= 64");
}

namespace {

// interior solve of (I - gamma D2) udot = rhs with Dirichlet data udot at the
// two ends moved to the right side
struct MolOperator {
    Eigen::SparseMatrix<double> A;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    double gamma_over_h2;
    int n_interior;

    MolOperator(int nx, double h, double gamma) {
        n_interior = nx - 2;
        gamma_over_h2 = gamma / (h * h);
        A.resize(n_interior, n_interior);
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(3 * n_interior);
        for (int i = 0; i < n_interior; ++i) {
            trip.emplace_back(i, i, 1.0 + 2.0 * gamma_over_h2);
            if (i > 0) trip.emplace_back(i, i - 1, -gamma_over_h2);
            if (i + 1 < n_interior) trip.emplace_back(i, i + 1, -gamma_over_h2);
        }
        A.setFromTriplets(trip.begin(), trip.end());
        lu.compute(A);
        if (lu.info() != Eigen::Success)
            throw StabilityError("tridiagonal factorization failed");
    }
};

} // namespace

SolutionField fd_solve(const ProblemSpec& spec, const FdConfig& cfg, const Grid& grid) {
    cfg.check();
    if (!(spec.gamma > 0.0)) throw ConfigError("fd_solve requires gamma > 0");
    if (spec.beta_nl != 0.0)
        throw ConfigError("fd_solve handles the linearized equation only (beta = 0)");
    if (grid.t.size() == 0) throw ConfigError("empty time grid");
    if (grid.x.maxCoeff() > cfg.L)
        throw ConfigError("fd domain does not cover the requested grid");

    const int nx = cfg.nx;
    const double h = cfg.L / (nx - 1);
    const double alpha = spec.alpha, gamma = spec.gamma;
    MolOperator op(nx, h, gamma);

    Eigen::VectorXd x_nodes(nx);
    for (int j = 0; j < nx; ++j) x_nodes[j] = j * h;

    Eigen::VectorXd u(nx);
    for (int j = 0; j < nx; ++j) u[j] = eval_function(spec.u0, x_nodes[j]);
    const double u_right = cfg.right_bc == RightBc::ClampToInitial ? u[nx - 1] : 0.0;
    u[nx - 1] = u_right;
    u[0] = eval_function(spec.g, 0.0);

    const double guard = 1e10 * (1.0 + u.lpNorm<Eigen::Infinity>());

    Eigen::VectorXd rhs(op.n_interior), udot_i(op.n_interior);
    Eigen::VectorXd udot(nx), k1(nx), k2(nx), k3(nx), k4(nx), stage(nx);

    auto deriv = [&](const Eigen::VectorXd& v, double time, Eigen::VectorXd& out) {
        const double gp = eval_derivative(spec.g, time, 1);
        for (int j = 1; j + 1 < nx; ++j) {
            double r = -alpha * (v[j + 1] - v[j - 1]) / (2.0 * h);
            if (!spec.f.is_zero()) r += spec.f(x_nodes[j], time);
            rhs[j - 1] = r;
        }
        rhs[0] += op.gamma_over_h2 * gp;  // left Dirichlet derivative
        // right boundary derivative is 0 for both supported conditions
        udot_i = op.lu.solve(rhs);
        out[0] = gp;
        out[nx - 1] = 0.0;
        for (int j = 1; j + 1 < nx; ++j) out[j] = udot_i[j - 1];
    };

    SolutionField field;
    field.grid = grid;
    field.method = Method::FdReference;
    field.spec = spec;
    field.u.resize(grid.x.size(), grid.t.size());

    auto capture = [&](Eigen::Index jt) {
        for (Eigen::Index i = 0; i < grid.x.size(); ++i) {
            const double pos = grid.x[i] / h;
            int j0 = std::min((int)pos, nx - 2);
            double frac = pos - j0;
            if (frac > 1.0 - 1e-9) { ++j0; frac = 0.0; }       // snap to nodes
            else if (frac < 1e-9) { frac = 0.0; }
            field.u(i, jt) = j0 + 1 < nx ? (1.0 - frac) * u[j0] + frac * u[j0 + 1] : u[j0];
        }
    };

    double time = 0.0;
    Eigen::Index next = 0;
    if (grid.t[0] == 0.0) capture(next++);
    while (next < grid.t.size()) {
        const double target = grid.t[next];
        double step = std::min(cfg.dt, target - time);
        if (step <= 0.0) {
            capture(next++);
            continue;
        }
        deriv(u, time, k1);
        stage = u + 0.5 * step * k1;
        deriv(stage, time + 0.5 * step, k2);
        stage = u + 0.5 * step * k2;
        deriv(stage, time + 0.5 * step, k3);
        stage = u + step * k3;
        deriv(stage, time + step, k4);
        u += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        time += step;
        u[0] = eval_function(spec.g, time);
        u[nx - 1] = u_right;
        if (u.lpNorm<Eigen::Infinity>() > guard)
            throw StabilityError("fd_solve diverged; reduce dt");
        if (std::abs(time - target) < 1e-12 * (1.0 + target)) capture(next++);
    }
    return field;
}

SolutionField integral_equation_solve(const ProblemSpec& spec, const PicardConfig& cfg,
                                      const Grid& grid) {
    cfg.check();
    if (!(spec.gamma > 0.0)) throw ConfigError("integral_equation_solve requires gamma > 0");
    if (!spec.f.is_zero())
        throw ConfigError("Eq. (1.6) carries no forcing term; integral-equation solver "
                          "requires f = 0");

    const double t_final = grid.t[grid.t.size() - 1];
    const double sg = std::sqrt(spec.gamma);
    double L = cfg.L;
    if (L <= 0.0)
        L = std::max(grid.x.maxCoeff(),
                     std::abs(spec.alpha) * t_final + integration_extent(spec.u0)) +
            10.0 * sg;
    const int ny = cfg.y_quadrature_nodes;
    const double h = L / (ny - 1);

    Eigen::VectorXd y(ny);
    for (int j = 0; j < ny; ++j) y[j] = j * h;

    // trapezoid-weighted kernel matrix; the sgn kink sits exactly on nodes
    Eigen::MatrixXd W(ny, ny);
    for (int i = 0; i < ny; ++i)
        for (int j = 0; j < ny; ++j)
            W(i, j) = kernel_K(y[i], y[j], spec.gamma) * (j == 0 || j == ny - 1 ? h / 2 : h);

    Eigen::VectorXd u0v(ny), bl(ny);
    for (int j = 0; j < ny; ++j) {
        u0v[j] = eval_function(spec.u0, y[j]);
        bl[j] = std::exp(-y[j] / sg);
    }

    auto nonlinearity = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return spec.alpha * v + 0.5 * spec.beta_nl * v.array().square().matrix();
    };

    SolutionField field;
    field.grid = grid;
    field.method = Method::IntegralEquation;
    field.spec = spec;
    field.u.resize(grid.x.size(), grid.t.size());

    Eigen::VectorXd u = u0v + eval_function(spec.g, 0.0) * bl;
    Eigen::VectorXd cumulative = Eigen::VectorXd::Zero(ny);  // integral up to current t
    Eigen::VectorXd wsig_old = W * nonlinearity(u);

    auto capture = [&](Eigen::Index jt, const Eigen::VectorXd& v) {
        for (Eigen::Index i = 0; i < grid.x.size(); ++i) {
            const double pos = grid.x[i] / h;
            int j0 = std::min((int)pos, ny - 2);
            double frac = pos - j0;
            if (frac > 1.0 - 1e-9) { ++j0; frac = 0.0; }
            else if (frac < 1e-9) { frac = 0.0; }
            field.u(i, jt) = j0 + 1 < ny ? (1.0 - frac) * v[j0] + frac * v[j0 + 1] : v[j0];
        }
    };

    double time = 0.0;
    Eigen::Index next = 0;
    if (grid.t[0] == 0.0) capture(next++, u);
    const double guard = 1e8 * (1.0 + u.lpNorm<Eigen::Infinity>());
    while (next < grid.t.size()) {
        const double target = grid.t[next];
        double step = std::min(cfg.dt, target - time);
        if (step <= 0.0) {
            capture(next++, u);
            continue;
        }
        const double t_new = time + step;
        Eigen::VectorXd base = u0v + eval_function(spec.g, t_new) * bl + cumulative +
                               (step / 2.0) * wsig_old;
        // Picard iteration for the implicit (step/2) W sigma(u_new) part
        Eigen::VectorXd v = u;
        bool converged = false;
        for (int it = 0; it < cfg.max_iter; ++it) {
            Eigen::VectorXd v_next = base + (step / 2.0) * (W * nonlinearity(v));
            const double delta = (v_next - v).lpNorm<Eigen::Infinity>();
            v = std::move(v_next);
            if (v.lpNorm<Eigen::Infinity>() > guard)
                throw StabilityError("Picard iterates diverged; reduce dt or data amplitude");
            if (delta <= cfg.fp_tol) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw AccuracyError("Picard iteration did not contract; reduce dt", cfg.fp_tol,
                                1.0);
        Eigen::VectorXd wsig_new = W * nonlinearity(v);
        cumulative += (step / 2.0) * (wsig_old + wsig_new);
        wsig_old = std::move(wsig_new);
        u = std::move(v);
        time = t_new;
        if (std::abs(time - target) < 1e-12 * (1.0 + target)) capture(next++, u);
    }
    return field;
}

double picard_residual(const SolutionField& field, const ProblemSpec& spec,
                       const PicardConfig& cfg) {
    (void)cfg;
    const Eigen::Index nx = field.grid.x.size(), nt = field.grid.t.size();
    const double sg = std::sqrt(spec.gamma);
    const Eigen::ArrayXd& xs = field.grid.x;

    // trapezoid weights on the field's own x grid
    Eigen::VectorXd wy(nx);
    for (Eigen::Index j = 0; j < nx; ++j) {
        double w = 0.0;
        if (j > 0) w += (xs[j] - xs[j - 1]) / 2;
        if (j + 1 < nx) w += (xs[j + 1] - xs[j]) / 2;
        wy[j] = w;
    }
    Eigen::MatrixXd W(nx, nx);
    for (Eigen::Index i = 0; i < nx; ++i)
        for (Eigen::Index j = 0; j < nx; ++j)
            W(i, j) = kernel_K(xs[i], xs[j], spec.gamma) * wy[j];

    auto nonlinearity = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return spec.alpha * v + 0.5 * spec.beta_nl * v.array().square().matrix();
    };

    double worst = 0.0;
    Eigen::VectorXd cumulative = Eigen::VectorXd::Zero(nx);
    Eigen::VectorXd wsig_prev = W * nonlinearity(field.u.col(0).matrix());
    for (Eigen::Index n = 0; n < nt; ++n) {
        if (n > 0) {
            const double dt = field.grid.t[n] - field.grid.t[n - 1];
            Eigen::VectorXd wsig = W * nonlinearity(field.u.col(n).matrix());
            cumulative += (dt / 2.0) * (wsig_prev + wsig);
            wsig_prev = std::move(wsig);
        }
        const double g_t = eval_function(spec.g, field.grid.t[n]);
        for (Eigen::Index i = 0; i < nx; ++i) {
            const double rhs = eval_function(spec.u0, xs[i]) + g_t * std::exp(-xs[i] / sg) +
                               cumulative[i];
            worst = std::max(worst, std::abs(field.u(i, n) - rhs));
        }
    }
    return worst;
}

} // namespace bbm
