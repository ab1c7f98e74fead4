#include "bbm/problem.hpp"
#include "bbm/errors.hpp"

#include <doctest.h>

using namespace bbm;

namespace {

ProblemSpec base_spec() {
    ProblemSpec s;
    s.alpha = 1.0;
    s.gamma = 1.0;
    s.u0 = FunctionDescriptor::gaussian(1.0, 3.0, 0.5);
    s.g = FunctionDescriptor::sine(1.0, 2.0);
    s.period = 2.0;
    return s;
}

bool has_rule(const std::vector<Violation>& v, const std::string& rule) {
    for (const auto& x : v)
        if (x.rule == rule) return true;
    return false;
}

} // namespace

TEST_CASE("admissible spec validates clean") {
    // gaussian(1,3,0.5) at 0 is e^{-18} ~ 1.5e-8, inside the 1e-6 tolerance
    CHECK(validate(base_spec()).empty());
}

TEST_CASE("negative gamma is flagged") {
    auto s = base_spec();
    s.gamma = -1.0;
    CHECK(has_rule(validate(s), "gamma must be >= 0"));
}

TEST_CASE("g(0) != 0 is flagged") {
    auto s = base_spec();
    s.g = FunctionDescriptor::exp_decay(1.0, 1.0);
    s.period.reset();
    CHECK(has_rule(validate(s), "g(0) != 0"));
}

TEST_CASE("u0 centered at the origin violates compatibility") {
    auto s = base_spec();
    s.u0 = FunctionDescriptor::gaussian(1.0, 0.0, 0.5);  // u0(0) = 1
    CHECK(has_rule(validate(s), "u0(0) != 0"));
}

TEST_CASE("period mismatch is flagged") {
    auto s = base_spec();
    s.period = 3.0;
    CHECK(has_rule(validate(s), "g period mismatch"));
}

TEST_CASE("grid axes must be increasing and nonnegative") {
    CHECK_THROWS_AS(Grid::uniform(-1.0, 1.0, 8, 0.0, 1.0, 4), ConfigError);
    Grid g = Grid::uniform(0.0, 10.0, 11, 0.0, 5.0, 6);
    CHECK(g.x.size() == 11);
    CHECK(Grid::find(g.x, 3.0) == 3);
    CHECK(Grid::find(g.x, 3.14) == -1);
}
