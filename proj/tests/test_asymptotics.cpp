#include "bbm/asymptotics.hpp"
#include "bbm/errors.hpp"

#include <doctest.h>
#include <cmath>

using namespace bbm;

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
}

TEST_CASE("local stationary data for I2 and I4") {
    // P is the Taylor constant |beta''(a)|/2 = alpha sqrt(g)/4; quadrature
    // confirms this against the leading term (see comparison tests below).
    const auto d2 = extract_local_data(Segment::I2, 1.0, 1.0, 0.0);
    CHECK(d2.a == doctest::Approx(-1.0));
    CHECK(d2.P == doctest::Approx(0.25));
    CHECK(d2.mu == 2.0);
    CHECK(d2.lambda == 1.0);
    CHECK(d2.Q.real() == doctest::Approx(0.5));
    CHECK(d2.Q.imag() == doctest::Approx(0.0));
    CHECK(d2.p_at_a == doctest::Approx(0.5));
    CHECK(d2.sign == -1);

    const auto d2b = extract_local_data(Segment::I2, 2.0, 4.0, 1.0);
    CHECK(d2b.P == doctest::Approx(2.0 * 2.0 / 4.0));
    CHECK(std::abs(d2b.Q - 0.5 * std::exp(cplx(0.0, -0.5))) < 1e-15);

    const auto d4 = extract_local_data(Segment::I4, 1.0, 1.0, 0.0);
    CHECK(d4.a == doctest::Approx(1.0));
    CHECK(d4.p_at_a == doctest::Approx(-0.5));
    CHECK(d4.sign == 1);

    CHECK_THROWS_AS(extract_local_data(Segment::I2, 0.0, 1.0, 0.0), ConfigError);
}

TEST_CASE("leading term value and scaling") {
    const auto d = extract_local_data(Segment::I2, 1.0, 1.0, 0.0);
    // sqrt(pi) e^{-i pi/4} e^{i t/2} / (2 sqrt t)
    const double t = 1.0e4;
    const cplx term = olver_leading_term(d, t);
    CHECK(std::abs(term) == doctest::Approx(std::sqrt(kPi) / (2.0 * std::sqrt(t))).epsilon(1e-12));
    // |term(4t)| = |term(t)|/2 exactly
    CHECK(std::abs(olver_leading_term(d, 4.0 * t)) ==
          doctest::Approx(std::abs(term) / 2.0).epsilon(1e-12));
}

TEST_CASE("I2 and I4 leading terms are conjugate") {
    for (auto [a, g, x] : {std::tuple{1.0, 1.0, 0.0}, {0.7, 2.0, 1.3}, {2.0, 0.5, 5.0}}) {
        const double t = 123.4;
        const cplx t2 = olver_leading_term(extract_local_data(Segment::I2, a, g, x), t);
        const cplx t4 = olver_leading_term(extract_local_data(Segment::I4, a, g, x), t);
        CHECK(std::abs(t2 - std::conj(t4)) < 1e-12);
    }
}

TEST_CASE("asymptotics agree with segment quadrature at large t") {
    QuadratureConfig qc;
    qc.epsilon = 1e-9;
    for (Segment seg : {Segment::I2, Segment::I4}) {
        double prev = 1.0;
        for (double t : {1e2, 1e3, 1e4}) {
            const auto cmp = asymptotic_vs_quadrature(seg, 1.0, 1.0, 0.0, t, qc);
            REQUIRE(cmp.meaningful);
            CHECK(cmp.rel_err < prev);  // monotone improvement over decades
            prev = cmp.rel_err;
        }
        CHECK(prev < 0.05);
    }
}

TEST_CASE("alpha = 0 comparison is rejected") {
    QuadratureConfig qc;
    CHECK_THROWS_AS(asymptotic_vs_quadrature(Segment::I2, 0.0, 1.0, 0.0, 10.0, qc),
                    ConfigError);
}

TEST_CASE("decay fit recovers synthetic slopes") {
    std::vector<std::pair<double, double>> flat, exact, noisy;
    for (double t : {1e2, 3e2, 1e3, 3e3, 1e4}) {
        flat.push_back({t, 2.5});
        exact.push_back({t, 3.0 / std::sqrt(t)});
    }
    CHECK(decay_fit(flat).slope == doctest::Approx(0.0).epsilon(1e-12));
    const auto ef = decay_fit(exact);
    CHECK(ef.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(ef.residual < 1e-12);
    // nonpositive magnitudes are dropped and counted
    exact.push_back({2e4, 0.0});
    const auto df = decay_fit(exact);
    CHECK(df.dropped == 1);
    CHECK(df.slope == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(decay_fit({{1.0, 1.0}}).degenerate);
}

TEST_CASE("variation integral: finite for finite M, grows with M when x > 0") {
    const double v10 = variation_check(Segment::I4, 1.0, 1.0, 1.0, 0.1, 10.0);
    CHECK(v10 > 0.0);
    CHECK(std::isfinite(v10));
    const double v1000 = variation_check(Segment::I4, 1.0, 1.0, 1.0, 0.1, 1000.0);
    CHECK(v1000 > v10 * 5.0);  // linear growth in M at x = 1
    // x = 0: the derivative of (1+xi^2)/(1-xi^2) is integrable at infinity
    const double w10 = variation_check(Segment::I4, 1.0, 1.0, 0.0, 0.1, 10.0);
    const double w1000 = variation_check(Segment::I4, 1.0, 1.0, 0.0, 0.1, 1000.0);
    const double w100000 = variation_check(Segment::I4, 1.0, 1.0, 0.0, 0.1, 100000.0);
    CHECK(w1000 - w10 < 0.5);
    CHECK(w100000 - w1000 < 0.01);
    // I2 side is finite as well
    CHECK(std::isfinite(variation_check(Segment::I2, 1.0, 1.0, 1.0, 0.1, 0.0)));
}
