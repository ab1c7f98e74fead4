#include "bbm/quadrature.hpp"

namespace bbm {

void QuadratureConfig::check(double gamma) const {
    if (!(epsilon > 0.0)) throw ConfigError("quadrature epsilon must be > 0");
    if (max_panel_depth < 4) throw ConfigError("max_panel_depth must be >= 4");
    if (!(rel_tol > 0.0)) throw ConfigError("rel_tol must be > 0");
    if (!(min_panel_width > 0.0)) throw ConfigError("min_panel_width must be > 0");
    if (gamma > 0.0 && M > 0.0 && M < 1.0 / std::sqrt(gamma))
        throw ConfigError("truncation M must be >= 1/sqrt(gamma) to contain the stationary points");
}

namespace quad {

namespace {

// Legendre P_n and P_n' by recurrence.
void legendre(int n, real_t x, real_t& p, real_t& dp) {
    real_t p0 = 1, p1 = x;
    if (n == 0) {
        p = p0;
        dp = 0;
        return;
    }
    for (int k = 1; k < n; ++k) {
        real_t p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1);
}

} // namespace

template <int N>
GaussRule<N>::GaussRule() {
    for (int i = 0; i < N; ++i) {
        // Chebyshev-angle initial guess, then Newton to long-double precision.
        real_t x = std::cos(3.14159265358979323846L * (i + 0.75L) / (N + 0.5L));
        real_t p, dp;
        for (int it = 0; it < 100; ++it) {
            legendre(N, x, p, dp);
            real_t dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-21L) break;
        }
        legendre(N, x, p, dp);
        node[i] = x;
        weight[i] = 2.0L / ((1 - x * x) * dp * dp);
    }
}

template struct GaussRule<7>;
template struct GaussRule<15>;

const GaussRule<7>& gauss7() {
    static const GaussRule<7> rule;
    return rule;
}

const GaussRule<15>& gauss15() {
    static const GaussRule<15> rule;
    return rule;
}

} // namespace quad
} // namespace bbm
