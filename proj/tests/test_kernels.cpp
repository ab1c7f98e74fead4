#include "bbm/kernels.hpp"

#include <doctest.h>
#include <cmath>

using namespace bbm;

namespace {
const QuadratureConfig qc{};
}

TEST_CASE("phi closed form at t = 0") {
    // Phi(x,0) = e^{-|x|/sqrt g}/(2 sqrt g)
    for (double g : {0.25, 1.0, 4.0}) {
        const double sg = std::sqrt(g);
        for (double x : {0.0, 0.5, 2.0, 6.0}) {
            const double want = std::exp(-std::abs(x) / sg) / (2.0 * sg);
            CHECK(phi(x, 0.0, 1.0, g, qc) == doctest::Approx(want).epsilon(1e-9));
        }
    }
    CHECK(phi(2.0, 0.0, 1.0, 1.0, qc) == doctest::Approx(std::exp(-2.0) / 2).epsilon(1e-10));
    CHECK(phi(0.0, 0.0, 1.0, 4.0, qc) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("alpha = 0 freezes phi in t") {
    const double want = std::exp(-1.0) / 2.0;
    CHECK(phi(1.0, 57.0, 0.0, 1.0, qc) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("phi amplitude bound |Phi| <= 1/(2 sqrt g)") {
    for (double g : {0.5, 1.0, 2.0}) {
        const double cap = 1.0 / (2.0 * std::sqrt(g)) * (1.0 + 1e-9);
        for (double x : {0.0, 1.0, 4.0})
            for (double t : {0.0, 3.0, 30.0, 300.0})
                CHECK(std::abs(phi(x, t, 1.0, g, qc)) <= cap);
    }
}

TEST_CASE("gamma_convolve recovers u0 at t = 0 and for alpha = 0") {
    const auto u0 = FunctionDescriptor::gaussian(1.0, 3.0, 0.5);
    CHECK(gamma_convolve(u0, 3.0, 0.0, 1.0, 1.0, qc) == doctest::Approx(1.0).epsilon(1e-6));
    // alpha = 0: Gamma acts as delta for every t
    CHECK(gamma_convolve(u0, 2.0, 10.0, 0.0, 1.0, qc) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-6));
    CHECK(gamma_convolve(FunctionDescriptor::zero(), 1.0, 1.0, 1.0, 1.0, qc) == 0.0);
}

TEST_CASE("gamma_convolve is linear in u0") {
    const auto u = FunctionDescriptor::gaussian(1.0, 3.0, 0.5);
    const double x = 2.0, t = 4.0;
    const double one = gamma_convolve(u, x, t, 1.0, 1.0, qc);
    auto scaled = u;
    scaled.params[0] = 2.5;
    CHECK(std::abs(gamma_convolve(scaled, x, t, 1.0, 1.0, qc) - 2.5 * one) < 1e-10);
}

TEST_CASE("transform cache is reused across evaluations") {
    const auto u0 = FunctionDescriptor::gaussian(1.0, 3.0, 0.5);
    TransformCache cache(u0, qc);
    const double a = gamma_convolve(u0, 1.0, 2.0, 1.0, 1.0, qc, &cache);
    const size_t after_first = cache.size();
    const double b = gamma_convolve(u0, 1.0, 2.0, 1.0, 1.0, qc, &cache);
    CHECK(a == b);  // bit-identical on the memoized path
    CHECK(cache.size() == after_first);
    CHECK(after_first > 100);
}

TEST_CASE("kernel K formula and structure") {
    // K(0,y) = 0 for y > 0
    CHECK(kernel_K(0.0, 1.0, 1.0) == doctest::Approx(0.0));
    // sgn(0) = 0 leaves only the first term on the diagonal
    CHECK(kernel_K(1.0, 1.0, 1.0) == doctest::Approx(std::exp(-2.0) / 2).epsilon(1e-15));
    CHECK(kernel_K(2.0, 1.0, 1.0) ==
          doctest::Approx((std::exp(-3.0) + std::exp(-1.0)) / 2).epsilon(1e-15));
    // K(x,y) + K(y,x) = e^{-(x+y)/sqrt g}/g exactly
    for (double g : {0.5, 1.0, 3.0})
        for (auto [x, y] : {std::pair{0.3, 1.9}, {2.0, 0.1}, {4.0, 4.0}}) {
            const double want = std::exp(-(x + y) / std::sqrt(g)) / g;
            CHECK(std::abs(kernel_K(x, y, g) + kernel_K(y, x, g) - want) < 1e-12);
        }
}

TEST_CASE("kernel field stores the t = 0 closed form") {
    Grid grid = Grid::uniform(0.0, 5.0, 6, 0.0, 2.0, 3);
    KernelField kf = build_kernel_field(grid, 1.0, 1.0, qc, 1);
    for (Eigen::Index i = 0; i < grid.x.size(); ++i) {
        const double want = std::exp(-grid.x[i]) / 2.0;
        CHECK(std::abs(kf.phi_values(i, 0) - want) < 1e-6);
    }
}
