#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "whitney/differences.hpp"
#include "whitney/error.hpp"
#include "whitney/steklov.hpp"

using namespace whitney;

namespace {

Rational draw(std::mt19937_64& rng, long lo, long hi, long max_den) {
    long den = std::uniform_int_distribution<long>(1, max_den)(rng);
    return Rational(std::uniform_int_distribution<long>(lo * den, hi * den)(rng), den);
}

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

PiecewiseFunction unit_modulus(const PiecewiseFunction& f, int k) {
    Rational w = modulus_exact(f, 2 * k, Rational(1), ModulusMode::Relaxed).value;
    return scale_values(f, Rational(1) / w);
}

}  // namespace

TEST_SUITE("steklov") {

TEST_CASE("steklov means") {
    PiecewiseFunction f = worked_example();
    CHECK(steklov(f, Q("0"), Q("1")) == 0);
    CHECK(steklov(f, Q("1/4"), Q("1/4")) == Q("43/74"));
    CHECK(steklov(f, Q("-3/4"), Q("-3/4")) == Q("-9/37"));
    CHECK(steklov(f, Q("0"), Q("1/2")) == Rational(2) * oracle::integral(f, Q("0"), Q("1/2")));
    CHECK(steklov(f, Q("1/2"), Q("0")) == steklov(f, Q("0"), Q("1/2")));
}

TEST_CASE("two-parameter differences") {
    PiecewiseFunction f = worked_example();
    CHECK(two_param_difference(f, 2, Q("0"), Q("0"), Q("1/3"), Q("2/3")) == 0);
    CHECK(two_param_difference(PiecewiseFunction{}, 2, Q("1/3"), Q("1/2"), Q("1/3"), Q("2/3")) == 0);
    CHECK(two_param_difference(f, 1, Q("0"), Q("1"), Q("0"), Q("0")) == Q("-12/37"));
}

TEST_CASE("integral representation") {
    PiecewiseFunction f = worked_example();
    IdentityCheck z = check_integral_representation(PiecewiseFunction{}, 1, Q("1/2"), Q("1/3"), Q("0"), Q("1"));
    CHECK(z.equal);
    CHECK(z.lhs == 0);
    std::mt19937_64 rng(21);
    for (int k : {1, 2}) {
        int done = 0;
        while (done < 100) {
            Rational h1 = draw(rng, 0, 1, 12), h2 = draw(rng, 0, 1, 12), x = draw(rng, -2, 3, 12),
                     y = draw(rng, -2, 3, 12);
            if (!is_generic_query(f, k, h1, h2, x, y)) continue;
            IdentityCheck c = check_integral_representation(f, k, h1, h2, x, y);
            CHECK(c.equal);
            CHECK(c.lhs == c.rhs);
            ++done;
        }
    }
    Rational h = Q("1/3"), x = Q("1/7");
    IdentityCheck same = check_integral_representation(f, 1, h, h, x, x);
    CHECK(same.equal);
    CHECK(same.lhs == central_difference(f, 2, h, x));
    CHECK(kind_of([&] { check_integral_representation(f, 1, Q("0"), Q("0"), Q("1/4"), Q("1/4")); }) ==
          ErrorKind::RequiresGenericPoint);
}

TEST_CASE("integral identity") {
    PiecewiseFunction f = worked_example();
    IdentityCheck c = integral_identity_check(f, 1, Q("1/2"));
    CHECK(c.equal);
    CHECK(c.lhs == oracle::integral(f, Q("0"), Q("1/2")));
    CHECK(c.rhs == Q("-3/16") * two_param_difference(f, 1, Q("1"), Q("0"), Q("0"), Q("1/2")));
    CHECK(integral_identity_check(PiecewiseFunction{}, 2, Q("1/3")).equal);
    CHECK(kind_of([&] { integral_identity_check(f, 1, Q("1")); }) == ErrorKind::RequiresNonpole);
    CHECK(kind_of([&] { integral_identity_check(f, 2, Q("-2")); }) == ErrorKind::RequiresNonpole);
    CHECK(kind_of([&] { integral_identity_check(f, 1, Q("0")); }) == ErrorKind::RequiresNonpole);
    CHECK(integral_identity_check(f, 1, Q("2")).equal);
    PiecewiseFunction tent =
        PiecewiseFunction::make({{Q("0"), Q("0"), Q("0")}, {Q("1/2"), Q("1"), Q("1")}, {Q("1"), Q("0"), Q("0")}});
    CHECK(kind_of([&] { integral_identity_check(tent, 1, Q("1/2")); }) == ErrorKind::RequiresOscillation);

    std::mt19937_64 rng(8);
    for (int k = 1; k <= 3; ++k) {
        for (int i = 0; i < 30; ++i) {
            PiecewiseFunction g = random_oscillating(40 * k + i, Q("1"), 4);
            Rational x = draw(rng, -5, 5, 9);
            if (x.is_integer() && abs(x) <= Rational(k)) continue;
            CHECK(integral_identity_check(g, k, x).equal);
        }
    }
}

TEST_CASE("envelope and integral bound") {
    CHECK(envelope(Q("1/4"), 1) == Q("15/128"));
    CHECK(envelope(Q("1/2"), 1) == Q("3/16"));
    for (int k = 1; k <= 4; ++k)
        for (int j = -k; j <= k; ++j) CHECK(envelope(Rational(j), k) == 0);
    CHECK(integral_bound(Q("1/2"), 1) == Q("3/16"));
    CHECK(integral_bound(Q("1/2"), 1) <= Q("1/4"));
    for (int k = 1; k <= 4; ++k) CHECK(integral_bound(Q("0"), k) == 0);
    CHECK(integral_bound(Q("2/3"), 1) == Q("4/27"));
    CHECK(kind_of([] { integral_bound(Q("-1/3"), 1); }) == ErrorKind::InvalidLength);
    CHECK(kind_of([] { integral_bound(Q("4/3"), 1); }) == ErrorKind::InvalidLength);
}

TEST_CASE("envelope stays below half the inverse central binomial") {
    for (int k = 1; k <= 5; ++k) {
        Rational cap = Rational(1, 2) / oracle::binomial(2 * k, k);
        for (int i = 1; i <= 500; ++i) CHECK(abs(envelope(Rational(i, 1000), k)) <= cap);
    }
}

TEST_CASE("product identity") {
    std::mt19937_64 rng(4);
    for (int k = 1; k <= 5; ++k) {
        Rational fact(1);
        for (int i = 2; i <= 2 * k; ++i) fact *= Rational(i);
        for (int i = 0; i < 100; ++i) {
            Rational x = draw(rng, -k - 2, k + 2, 15);
            Rational prod(1);
            for (int j = -k; j <= k; ++j) prod *= x + Rational(j);
            CHECK(abs(prod) / fact == abs(envelope(x, k)));
            IdentityCheck c = product_identity_check(x, k);
            CHECK(c.equal);
            CHECK(c.lhs == abs(prod) / fact);
        }
    }
}

TEST_CASE("remainder decomposition") {
    PiecewiseFunction f = worked_example();
    CHECK(remainder_Rk(PiecewiseFunction{}, 2, Q("1/3")) == 0);
    std::mt19937_64 rng(12);
    for (int i = 0; i < 50; ++i) {
        Rational x = draw(rng, -2, 3, 16);
        IdentityCheck c = remainder_decomposition_check(f, 1, x);
        CHECK(c.equal);
        CHECK(c.lhs == two_param_difference(f, 1, Q("0"), Q("1"), x, x));
        CHECK(c.rhs == Rational(-2) * evaluate(f, x) + remainder_Rk(f, 1, x));
    }
}

TEST_CASE("remainder is bounded by the harmonic number at unit modulus") {
    std::mt19937_64 rng(13);
    for (int k = 1; k <= 3; ++k) {
        for (int i = 0; i < 10; ++i) {
            PiecewiseFunction g = unit_modulus(random_oscillating(60 * k + i, Q("1"), 4), k);
            for (int s = 0; s < 10; ++s) CHECK(abs(remainder_Rk(g, k, draw(rng, -3, 3, 10))) <= oracle::harmonic(k));
        }
    }
}

TEST_CASE("integer-point identity") {
    PiecewiseFunction f = worked_example();
    IdentityCheck c = integer_point_identity(f, 1, 0);
    CHECK(c.equal);
    CHECK(c.lhs == Q("12/37"));
    CHECK(c.rhs == Q("12/37"));
    CHECK(integer_point_identity(PiecewiseFunction{}, 1, 3).equal);
    for (int k : {1, 2}) {
        for (int i = 0; i < 15; ++i) {
            PiecewiseFunction g = random_oscillating(80 * k + i, Q("1"), 4);
            auto [lo, hi] = *g.support();
            for (long j = lo.floor().get_si(); j <= hi.ceil().get_si(); ++j) CHECK(integer_point_identity(g, k, j).equal);
        }
    }
    PiecewiseFunction tent =
        PiecewiseFunction::make({{Q("0"), Q("0"), Q("0")}, {Q("1/2"), Q("1"), Q("1")}, {Q("1"), Q("0"), Q("0")}});
    CHECK(kind_of([&] { integer_point_identity(tent, 1, 0); }) == ErrorKind::RequiresOscillation);
}

TEST_CASE("integral bound holds at unit modulus") {
    std::mt19937_64 rng(14);
    for (int k = 1; k <= 3; ++k) {
        for (int i = 0; i < 10; ++i) {
            PiecewiseFunction g = unit_modulus(random_oscillating(120 * k + i, Q("1"), 4), k);
            auto [lo, hi] = *g.support();
            for (long j = lo.floor().get_si(); j <= hi.ceil().get_si(); ++j) {
                Rational y = draw(rng, 0, 1, 24);
                CHECK(abs(definite_integral(g, Rational(j), Rational(j) + y)) <= integral_bound(y, k));
            }
        }
    }
}

TEST_CASE("steklov smoothing is bounded by the relaxed modulus") {
    std::mt19937_64 rng(15);
    for (int k = 1; k <= 2; ++k) {
        for (int i = 0; i < 8; ++i) {
            PiecewiseFunction g = random_oscillating(160 * k + i, Q("1"), 4);
            int done = 0;
            while (done < 10) {
                Rational h1 = draw(rng, 0, 1, 8), h2 = draw(rng, 0, 1, 8), x = draw(rng, -3, 3, 8), y = draw(rng, -3, 3, 8);
                Rational h = std::max(h1, h2);
                if (h.is_zero() || !is_generic_query(g, k, h1, h2, x, y)) continue;
                Rational w = modulus_exact(g, 2 * k, h, ModulusMode::Relaxed).value;
                CHECK(abs(two_param_difference(g, k, h1, h2, x, y)) <= w);
                ++done;
            }
        }
    }
}

}
