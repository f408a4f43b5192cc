#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "whitney/error.hpp"
#include "whitney/piecewise.hpp"

using namespace whitney;

namespace {

Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
    return Rational(std::uniform_int_distribution<long>(lo * den, hi * den)(rng), den);
}

}  // namespace

TEST_SUITE("funcspace") {

TEST_CASE("evaluate on the worked example") {
    PiecewiseFunction f = worked_example();
    CHECK(evaluate(f, Q("-3/4")) == Q("-9/37"));
    CHECK(evaluate(f, Q("1/4")) == Q("43/74"));
    CHECK(evaluate(f, Q("1/4"), Side::Below) == Q("3/37"));
    CHECK(evaluate(f, Q("1/4"), Side::Above) == Q("3/37"));
    CHECK(evaluate(f, Q("-1/2"), Side::Below) == Q("-6/37"));
    CHECK(evaluate(f, Q("-1/2")) == Q("12/37"));
    CHECK(evaluate(f, Q("5/4"), Side::Below) == Q("15/37"));
    CHECK(evaluate(f, Q("5/4")) == Q("-10/37"));
    CHECK(evaluate(f, Q("0")) == Q("6/37"));
    CHECK(evaluate(f, Q("-5")) == 0);
    CHECK(evaluate(f, Q("2")) == 0);
    CHECK(evaluate(f, Q("2"), Side::Below) == Q("-7/37"));
    PiecewiseFunction zero;
    for (Side s : {Side::Below, Side::Exact, Side::Above}) CHECK(evaluate(zero, Q("1/3"), s) == 0);
}

TEST_CASE("worked example data") {
    PiecewiseFunction f = worked_example();
    REQUIRE(f.breakpoints().size() == 6);
    const char* expected[6][3] = {{"-1", "0", "-12/37"},   {"-1/2", "-6/37", "12/37"}, {"1", "-6/37", "12/37"},
                                  {"5/4", "15/37", "-10/37"}, {"3/2", "-1/37", "-1/37"}, {"2", "-7/37", "0"}};
    for (int i = 0; i < 6; ++i) {
        CHECK(f.breakpoints()[i].position == Q(expected[i][0]));
        CHECK(f.breakpoints()[i].left_limit == Q(expected[i][1]));
        CHECK(f.breakpoints()[i].right_value == Q(expected[i][2]));
    }
    REQUIRE(f.spikes().size() == 1);
    CHECK(f.spikes()[0].position == Q("1/4"));
    CHECK(f.spikes()[0].value == Q("43/74"));
}

TEST_CASE("integrals") {
    PiecewiseFunction f = worked_example();
    CHECK(definite_integral(f, Q("-1"), Q("0")) == 0);
    CHECK(definite_integral(f, Q("0"), Q("1")) == 0);
    CHECK(definite_integral(f, Q("1"), Q("2")) == 0);
    CHECK(definite_integral(PiecewiseFunction{}, Q("-3"), Q("4")) == 0);
    CHECK(definite_integral(spike_function(Q("0"), Q("1")), Q("-1"), Q("1")) == 0);
    CHECK_THROWS_AS(definite_integral(f, Q("1"), Q("0")), Error);
    CHECK(signed_integral(f, Q("1/2"), Q("0")) == -definite_integral(f, Q("0"), Q("1/2")));
    for (const auto& c : check_oscillation(f, Q("1"))) CHECK(c.integral == 0);
    CHECK(check_oscillation(f, Q("1")).size() == 3);
    CHECK_THROWS_AS(check_oscillation(f, Q("0")), Error);
}

TEST_CASE("integral matches the midpoint oracle and is additive") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        PiecewiseFunction f = random_oscillating(trial, Q("1"), 1 + trial % 5);
        Rational a = random_rational(rng, -4, 4, 7), b = random_rational(rng, -4, 4, 9),
                 c = random_rational(rng, -4, 4, 5);
        std::vector<Rational> p{a, b, c};
        std::sort(p.begin(), p.end());
        CHECK(definite_integral(f, p[0], p[2]) == oracle::integral(f, p[0], p[2]));
        CHECK(definite_integral(f, p[0], p[1]) + definite_integral(f, p[1], p[2]) == definite_integral(f, p[0], p[2]));
    }
}

TEST_CASE("sup norm") {
    SupNorm n = sup_norm(worked_example());
    CHECK(n.value == Q("43/74"));
    CHECK(n.witness == Q("1/4"));
    SupNorm s = sup_norm(spike_function(Q("0"), Q("1")));
    CHECK(s.value == 1);
    CHECK(s.witness == 0);
    CHECK(sup_norm(PiecewiseFunction{}).value == 0);
}

TEST_CASE("sup norm is subadditive and homogeneous") {
    for (int i = 0; i < 30; ++i) {
        PiecewiseFunction f = random_oscillating(100 + i, Q("1"), 3), g = random_oscillating(200 + i, Q("1/2"), 2);
        CHECK(sup_norm(add(f, g)).value <= sup_norm(f).value + sup_norm(g).value);
        Rational c(-3 - i, 7);
        CHECK(sup_norm(scale_values(f, c)).value == abs(c) * sup_norm(f).value);
        CHECK(sup_norm(translate(f, Rational(i, 3))).value == sup_norm(f).value);
    }
}

TEST_CASE("one-sided values agree with nearby exact values") {
    for (int i = 0; i < 20; ++i) {
        PiecewiseFunction f = random_oscillating(300 + i, Q("1"), 4);
        Rational eps(1, 1000000);
        for (const auto& b : f.breakpoints()) {
            if (f.spike_at(b.position - eps) || f.spike_at(b.position + eps)) continue;
            Rational below = evaluate(f, b.position - eps), above = evaluate(f, b.position + eps);
            CHECK(abs(below - evaluate(f, b.position, Side::Below)) < Rational(1, 1000));
            CHECK(abs(above - evaluate(f, b.position, Side::Above)) < Rational(1, 1000));
        }
    }
}

TEST_CASE("spike function") {
    PiecewiseFunction s = spike_function(Q("0"), Q("1"));
    CHECK(evaluate(s, Q("0")) == 1);
    CHECK(evaluate(s, Q("0"), Side::Above) == 0);
    CHECK(evaluate(s, Q("0"), Side::Below) == 0);
    CHECK(is_oscillating(s, Q("1/3")));
    CHECK(spike_function(Q("0"), Q("0")).is_zero());
}

TEST_CASE("make_oscillating") {
    PiecewiseFunction block = PiecewiseFunction::make({{Q("0"), Q("0"), Q("1")}, {Q("2"), Q("1"), Q("0")}});
    PiecewiseFunction z = make_oscillating(block, Q("1"));
    CHECK(z.is_zero());
    CHECK(make_oscillating(worked_example(), Q("1")) == worked_example());
    CHECK_THROWS_AS(make_oscillating(block, Q("-1")), Error);
    for (int i = 0; i < 30; ++i) {
        PiecewiseFunction tent = PiecewiseFunction::make(
            {{Rational(-i, 5), Q("0"), Q("0")}, {Rational(1, 3 + i), Q("1"), Q("1")}, {Q("5/2"), Q("0"), Q("0")}});
        Rational h(1 + i % 3, 2);
        PiecewiseFunction g = make_oscillating(tent, h);
        CHECK(is_oscillating(g, h));
        CHECK(make_oscillating(g, h) == g);
    }
}

TEST_CASE("random_oscillating") {
    CHECK(random_oscillating(42, Q("1"), 3) == random_oscillating(42, Q("1"), 3));
    for (int seed = 0; seed < 50; ++seed) {
        Rational h(1 + seed % 4, 2);
        PiecewiseFunction f = random_oscillating(seed, h, 1 + seed % 6);
        CHECK(is_oscillating(f, h));
        CHECK_FALSE(f.is_zero());
    }
}

TEST_CASE("normalization") {
    PiecewiseFunction f = PiecewiseFunction::make(
        {{Q("0"), Q("0"), Q("0")}, {Q("1"), Q("1"), Q("1")}, {Q("2"), Q("2"), Q("0")}}, {{Q("1/2"), Q("1/2")}});
    CHECK(f.breakpoints().size() == 2);  // the kink-free node at 1 goes away
    CHECK(f.spikes().empty());           // the spike equals the underlying value
    PiecewiseFunction g = PiecewiseFunction::make({{Q("0"), Q("0"), Q("0")}, {Q("2"), Q("2"), Q("0")}});
    CHECK(f == g);
}

TEST_CASE("invalid functions are rejected") {
    CHECK_THROWS_AS(PiecewiseFunction::make({{Q("0"), Q("1"), Q("0")}}), Error);
    CHECK_THROWS_AS(PiecewiseFunction::make({{Q("0"), Q("0"), Q("1")}}), Error);
    CHECK_THROWS_AS(PiecewiseFunction::make({{Q("1"), Q("0"), Q("1")}, {Q("0"), Q("1"), Q("0")}}), Error);
    CHECK_THROWS_AS(PiecewiseFunction::make({}, {{Q("1"), Q("1")}, {Q("0"), Q("1")}}), Error);
    try {
        PiecewiseFunction::make({{Q("0"), Q("0"), Q("1")}, {Q("0"), Q("1"), Q("0")}});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidFunction);
        CHECK(std::string(e.what()).find("breakpoints[1]") != std::string::npos);
    }
}

TEST_CASE("float snapshot agrees with the exact function") {
    PiecewiseFunction f = worked_example();
    FloatFunction ff(f);
    for (double x : {-1.2, -0.75, -0.3, 0.1, 0.26, 1.1, 1.3, 1.9, 2.5})
        CHECK(ff(x) == doctest::Approx(oracle::eval(f, x)).epsilon(1e-14));
}

}
