#include "whitney/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "whitney/error.hpp"
#include "whitney/steklov.hpp"

namespace whitney {

Rational harmonic(int k) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "harmonic number needs k >= 1");
    Rational h(0);
    for (long j = 1; j <= k; ++j) h += Rational(1, j);
    return h;
}

mpz_class central_binomial(int k) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "central binomial needs k >= 1");
    return binomial(2L * k, k);
}

BoundPair whitney_bounds(int k) {
    Rational c(central_binomial(k));
    return {k, Rational(1) / c, (Rational(1) + harmonic(k)) / c};
}

std::vector<BoundPair> bounds_table(int kmax) {
    if (kmax < 1) throw Error(ErrorKind::InvalidArgument, "kmax must be >= 1");
    std::vector<BoundPair> rows;
    for (int k = 1; k <= kmax; ++k) rows.push_back(whitney_bounds(k));
    return rows;
}

std::pair<Rational, Rational> second_order_bounds() {
    return {Rational(1, 2) + Rational(3, 37), Rational(1, 2) + Rational(1, 8)};
}

Rational case_a_bound(const Rational& x) {
    if (x.sign() <= 0 || x > Rational(1, 2))
        throw Error(ErrorKind::InvalidArgument, "case a needs x in (0, 1/2], got " + x.str());
    return Rational(1, 2) + abs(envelope(x, 1));
}

namespace {

void require_case_b(const Rational& x) {
    if (x < Rational(1, 4) || x > Rational(1, 2))
        throw Error(ErrorKind::InvalidArgument, "case b needs x in (1/4, 1/2], got " + x.str());
}

}  // namespace

Rational case_b_symmetric_term(const Rational& x) {
    require_case_b(x);
    return integral_bound(Rational(2) * x, 1) / (Rational(1) - x);
}

Rational case_b_one_sided_term(const Rational& x) {
    require_case_b(x);
    Rational two_x = Rational(2) * x;
    return abs((two_x - Rational(1)) * two_x * (two_x + Rational(1)) / (Rational(2) * (Rational(1) - x)));
}

Rational case_b_bound(const Rational& x) { return Rational(1, 2) + case_b_symmetric_term(x) / Rational(2); }

double literal_crossing_residual(double x) {
    return (1 - x) * x * (1 + x) - (2 * x - 1) * 2 * x * (2 * x + 1) / (1 - x);
}

RefinedBound refined_upper_bound() {
    // case_a - case_b is increasing on [1/4, 1/2] and changes sign there.
    auto gap = [](const Rational& x) { return case_a_bound(x) - case_b_bound(x); };
    Rational lo(1, 4), hi(1, 2);
    if (gap(lo).sign() >= 0 || gap(hi).sign() <= 0)
        throw Error(ErrorKind::InvalidArgument, "crossing is not bracketed by [1/4, 1/2]");
    const Rational width(1, 1000000000000L);
    RefinedBound out;
    while (hi - lo > width) {
        Rational mid = (lo + hi) / Rational(2);
        if (gap(mid).sign() < 0) lo = mid; else hi = mid;
        ++out.iterations;
    }
    Rational mid = (lo + hi) / Rational(2);
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.x0 = mid.to_double();
    out.value = ((case_a_bound(mid) + case_b_bound(mid)) / Rational(2)).to_double();
    const double closed_value = 7.0 * std::sqrt(3.0) - 11.5;
    out.exact_check = std::abs(out.x0 * out.x0 - 4.0 * out.x0 + 1.0) < 1e-10 &&
                      std::abs(out.value - closed_value) < 1e-10;
    return out;
}

ScanResult upper_bound_scan(int n, CaseBVariant variant) {
    if (n < 16) throw Error(ErrorKind::InvalidArgument, "scan needs n >= 16");
    ScanResult best;
    bool first = true;
    const Rational quarter(1, 4);
    for (long i = 1; i <= n; ++i) {
        Rational x(i, 2L * n);
        Rational v = case_a_bound(x);
        if (x > quarter) {
            Rational b = variant == CaseBVariant::Symmetric
                             ? case_b_bound(x)
                             : Rational(1, 2) + case_b_one_sided_term(x) / Rational(2);
            v = std::min(v, b);
        }
        if (first || v > best.exact_value) {
            best.exact_value = v;
            best.exact_argmax = x;
            first = false;
        }
    }
    best.argmax = best.exact_argmax.to_double();
    best.value = best.exact_value.to_double();
    return best;
}

}  // namespace whitney
