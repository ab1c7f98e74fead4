#pragma once

#include "bbm/problem.hpp"
#include "bbm/solver.hpp"

namespace bbm {

enum class RightBc { ClampToInitial, HomogeneousDirichlet };

/// Finite-difference truncation of the half line.
struct FdConfig {
    double L = 40.0;
    int nx = 1024;
    double dt = 1e-3;
    RightBc right_bc = RightBc::ClampToInitial;

    void check() const;
};

/// Fixed-point settings for the integral-equation solver.
struct PicardConfig {
    double dt = 0.01;
    int max_iter = 50;
    double fp_tol = 1e-10;
    int y_quadrature_nodes = 800;
    double L = 0.0;  // 0 = derive from the grid and transport distance

    void check() const;
};

/// Method-of-lines scheme for the linear equation: second-order centered
/// differences in x, the tridiagonal (I - gamma D2) factored once, classical
/// four-stage explicit stepping in t. Left boundary imposed strongly.
SolutionField fd_solve(const ProblemSpec& spec, const FdConfig& cfg, const Grid& grid);

/// Time-marching Picard solver for the nonlinear integral equation (Eq. 1.6);
/// trapezoid in tau and in y, with the kernel kink at y = x on a node.
/// Requires f = 0 (the paper states Eq. 1.6 without forcing).
SolutionField integral_equation_solve(const ProblemSpec& spec, const PicardConfig& cfg,
                                      const Grid& grid);

/// Sup-norm defect of Eq. (1.6) when the field is substituted into both sides,
/// discretized on the field's own grid.
double picard_residual(const SolutionField& field, const ProblemSpec& spec,
                       const PicardConfig& cfg);

} // namespace bbm
