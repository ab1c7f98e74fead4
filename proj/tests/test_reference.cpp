#include "bbm/reference.hpp"
#include "bbm/errors.hpp"

#include <doctest.h>
#include <cmath>

using namespace bbm;

namespace {
const QuadratureConfig qc{};

ProblemSpec linear_spec() {
    ProblemSpec s;
    s.alpha = 1.0;
    s.gamma = 1.0;
    s.u0 = FunctionDescriptor::gaussian(0.5, 3.0, 0.5);
    s.g = FunctionDescriptor::sine(0.1, 2.0);
    return s;
}
} // namespace

TEST_CASE("fd matches Corollary 2.2 closed form for alpha = 0") {
    ProblemSpec s = linear_spec();
    s.alpha = 0.0;
    FdConfig fc;
    fc.L = 40.0;
    fc.nx = 1024;
    fc.dt = 2e-3;
    Grid grid = Grid::uniform(0.0, 10.0, 21, 0.0, 5.0, 6);
    SolutionField f = fd_solve(s, fc, grid);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < grid.x.size(); ++i)
        for (Eigen::Index j = 0; j < grid.t.size(); ++j) {
            const double closed = eval_function(s.u0, grid.x[i]) +
                                  eval_function(s.g, grid.t[j]) * std::exp(-grid.x[i]);
            worst = std::max(worst, std::abs(f.u(i, j) - closed));
        }
    CHECK(worst < 1e-4);
}

TEST_CASE("fd zero data stays zero") {
    ProblemSpec s;
    s.alpha = 1.0;
    s.gamma = 1.0;
    FdConfig fc;
    fc.nx = 256;
    fc.dt = 5e-3;
    Grid grid = Grid::uniform(0.0, 10.0, 5, 0.0, 2.0, 3);
    SolutionField f = fd_solve(s, fc, grid);
    CHECK(f.u.abs().maxCoeff() == 0.0);
}

TEST_CASE("fd spatial convergence is second order") {
    ProblemSpec s = linear_spec();
    s.alpha = 0.0;
    s.g = FunctionDescriptor::sine(0.5, 2.0);
    Grid grid = Grid::uniform(0.0, 10.0, 11, 0.0, 2.0, 3);
    auto err_for = [&](int nx, double dt) {
        FdConfig fc;
        fc.L = 20.0;
        fc.nx = nx;
        fc.dt = dt;
        SolutionField f = fd_solve(s, fc, grid);
        double worst = 0.0;
        for (Eigen::Index i = 0; i < grid.x.size(); ++i)
            for (Eigen::Index j = 0; j < grid.t.size(); ++j) {
                const double closed = eval_function(s.u0, grid.x[i]) +
                                      eval_function(s.g, grid.t[j]) * std::exp(-grid.x[i]);
                worst = std::max(worst, std::abs(f.u(i, j) - closed));
            }
        return worst;
    };
    const double coarse = err_for(251, 4e-3);
    const double fine = err_for(501, 2e-3);
    CHECK(coarse / fine > 2.5);
    CHECK(coarse / fine < 6.5);
}

TEST_CASE("fd domain truncation is inert") {
    ProblemSpec s = linear_spec();
    Grid grid = Grid::uniform(0.0, 8.0, 9, 0.0, 4.0, 3);
    FdConfig a;
    a.L = 32.0;
    a.nx = 1024;
    a.dt = 2e-3;
    FdConfig b = a;
    b.L = 64.0;
    b.nx = 2048;
    SolutionField fa = fd_solve(s, a, grid);
    SolutionField fb = fd_solve(s, b, grid);
    CHECK((fa.u - fb.u).abs().maxCoeff() < 1e-6);
}

TEST_CASE("integral equation with alpha = beta = 0 reproduces the base term") {
    ProblemSpec s;
    s.alpha = 0.0;
    s.gamma = 1.0;
    s.u0 = FunctionDescriptor::gaussian(0.5, 3.0, 0.5);
    s.g = FunctionDescriptor::sine(0.1, 2.0);
    PicardConfig pc;
    pc.dt = 0.05;
    pc.y_quadrature_nodes = 301;  // h = 0.1 puts the probe grid on nodes
    pc.L = 30.0;
    Grid grid = Grid::uniform(0.0, 10.0, 11, 0.0, 3.0, 4);
    SolutionField f = integral_equation_solve(s, pc, grid);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < grid.x.size(); ++i)
        for (Eigen::Index j = 0; j < grid.t.size(); ++j) {
            const double base = eval_function(s.u0, grid.x[i]) +
                                eval_function(s.g, grid.t[j]) * std::exp(-grid.x[i]);
            worst = std::max(worst, std::abs(f.u(i, j) - base));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("integral equation rejects forcing") {
    ProblemSpec s = linear_spec();
    s.f.spatial = FunctionDescriptor::gaussian(1.0, 2.0, 0.5);
    s.f.temporal = FunctionDescriptor::sine(1.0, 2.0);
    PicardConfig pc;
    Grid grid = Grid::uniform(0.0, 5.0, 3, 0.0, 1.0, 2);
    CHECK_THROWS_AS(integral_equation_solve(s, pc, grid), ConfigError);
}

TEST_CASE("picard residual: self-consistency and perturbation detection") {
    ProblemSpec s = linear_spec();
    s.beta_nl = 1.0;
    PicardConfig pc;
    pc.dt = 0.02;
    pc.y_quadrature_nodes = 300;
    pc.L = 25.0;
    // native-resolution field: x nodes of the solver, all computed times
    const int nt = 51;
    Grid grid;
    grid.x = Grid::linspace(0.0, 25.0, 300);
    grid.t = Grid::linspace(0.0, 1.0, nt);
    SolutionField f = integral_equation_solve(s, pc, grid);
    CHECK(picard_residual(f, s, pc) <= 10.0 * pc.fp_tol + 1e-12);

    SolutionField bad = f;
    bad.u(150, 25) += 0.1;
    CHECK(picard_residual(bad, s, pc) >= 0.05);
}

TEST_CASE("exact zero-state residual") {
    ProblemSpec s;
    s.alpha = 0.0;
    s.beta_nl = 0.0;
    s.gamma = 1.0;
    s.u0 = FunctionDescriptor::gaussian(0.5, 3.0, 0.5);
    s.g = FunctionDescriptor::sine(0.1, 2.0);
    Grid grid;
    grid.x = Grid::linspace(0.0, 20.0, 101);
    grid.t = Grid::linspace(0.0, 1.0, 11);
    SolutionField f;
    f.grid = grid;
    f.method = Method::IntegralEquation;
    f.spec = s;
    f.u.resize(grid.x.size(), grid.t.size());
    for (Eigen::Index i = 0; i < grid.x.size(); ++i)
        for (Eigen::Index j = 0; j < grid.t.size(); ++j)
            f.u(i, j) = eval_function(s.u0, grid.x[i]) +
                        eval_function(s.g, grid.t[j]) * std::exp(-grid.x[i]);
    PicardConfig pc;
    CHECK(picard_residual(f, s, pc) < 1e-14);
}

TEST_CASE("nonlinear deviation scales as the amplitude squared") {
    PicardConfig pc;
    pc.dt = 0.02;
    pc.y_quadrature_nodes = 400;
    pc.L = 30.0;
    Grid grid = Grid::uniform(0.0, 10.0, 11, 0.0, 4.0, 5);
    auto dev_for = [&](double scale) {
        ProblemSpec lin;
        lin.alpha = 1.0;
        lin.gamma = 1.0;
        lin.u0 = FunctionDescriptor::gaussian(scale, 3.0, 0.5);
        lin.g = FunctionDescriptor::sine(0.1 * scale, 2.0);
        ProblemSpec non = lin;
        non.beta_nl = 1.0;
        SolutionField fl = integral_equation_solve(lin, pc, grid);
        SolutionField fn = integral_equation_solve(non, pc, grid);
        return (fl.u - fn.u).abs().maxCoeff();
    };
    const double d1 = dev_for(0.05);
    const double d2 = dev_for(0.1);
    CHECK(d2 / d1 > 3.0);
    CHECK(d2 / d1 < 5.0);
}
