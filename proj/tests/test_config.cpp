#include "bbm/config.hpp"
#include "bbm/errors.hpp"

#include <doctest.h>

using namespace bbm;

TEST_CASE("minimal config fills defaults") {
    const auto s = parse_config_text("alpha = 1\ngamma = 1\nu0.kind = zero\ng.kind = zero\n");
    CHECK(s.spec.alpha == 1.0);
    CHECK(s.spec.gamma == 1.0);
    CHECK(s.spec.u0.kind == FunctionKind::Zero);
    CHECK(s.quad.epsilon == 1e-6);
    CHECK(s.fd.nx == 1024);
    CHECK_FALSE(s.spec.period.has_value());
}

TEST_CASE("full config round-trips through serialization") {
    const std::string text =
        "alpha = 1.5\n"
        "beta = 0\n"
        "gamma = 2.25\n"
        "period = 2\n"
        "u0.kind = gaussian\n"
        "u0.params = 1, 3, 0.5\n"
        "g.kind = sine\n"
        "g.params = 0.5, 2\n"
        "f.spatial.kind = exp_decay\n"
        "f.spatial.params = 1, 1\n"
        "f.temporal.kind = sine\n"
        "f.temporal.params = 0.2, 2\n"
        "grid.x = 0:10:11\n"
        "grid.t = 0,1,2.5\n"
        "quad.epsilon = 1e-8\n"
        "fd.nx = 512\n";
    const auto s = parse_config_text(text);
    CHECK(s.spec.u0 == FunctionDescriptor::gaussian(1.0, 3.0, 0.5));
    CHECK(s.spec.period.value() == 2.0);
    CHECK(s.grid.x.size() == 11);
    CHECK(s.grid.t.size() == 3);
    CHECK(s.grid.t[2] == 2.5);
    CHECK(s.quad.epsilon == 1e-8);
    CHECK(s.fd.nx == 512);

    const auto again = parse_config_text(serialize_config(s));
    CHECK(again.spec == s.spec);
    CHECK((again.grid.x == s.grid.x).all());
    CHECK((again.grid.t == s.grid.t).all());
    CHECK(again.quad.epsilon == s.quad.epsilon);
}

TEST_CASE("comments and blank lines are ignored") {
    const auto s = parse_config_text("# a comment\n\nalpha = 2 # trailing\n");
    CHECK(s.spec.alpha == 2.0);
}

TEST_CASE("duplicate keys name the line") {
    try {
        parse_config_text("alpha = 1\nalpha = 2\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected with a suggestion") {
    try {
        parse_config_text("alpah = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("alpha") != std::string::npos);
    }
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_config_text("alpha = 1\nnot a key value pair\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("overrides apply on top of parsed settings") {
    auto kv = config_to_map(parse_config_text("alpha = 1\ngamma = 1\n"));
    apply_override(kv, "gamma=4");
    const auto s = settings_from_map(kv);
    CHECK(s.spec.gamma == 4.0);
    CHECK_THROWS_AS(apply_override(kv, "nonsense=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(kv, "no_equals"), ConfigError);
}

TEST_CASE("bad values are named errors") {
    CHECK_THROWS_AS(parse_config_text("alpha = banana\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("u0.kind = cosine\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("grid.x = 5:1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("u0.params = 1,2,3\n"), ConfigError);  // without kind
}
