#include "whitney/steklov.hpp"

#include <algorithm>
#include <vector>

#include "whitney/error.hpp"

namespace whitney {

namespace {

void require_k(int k) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1, got " + std::to_string(k));
}

void require_unit_oscillation(const PiecewiseFunction& f) {
    if (!is_oscillating(f, Rational(1)))
        throw Error(ErrorKind::RequiresOscillation, "identity needs ∫_j^{j+1} f = 0 for every integer j");
}

Rational signed_binomial(int k, int j) {
    Rational c(binomial(2L * k, j));
    return j % 2 == 0 ? c : -c;
}

bool is_jump_or_spike(const PiecewiseFunction& f, const Rational& p) {
    if (f.spike_at(p)) return true;
    const Breakpoint* b = f.breakpoint_at(p);
    return b && b->left_limit != b->right_value;
}

}  // namespace

Rational steklov(const PiecewiseFunction& f, const Rational& x, const Rational& y) {
    if (x == y) return f.evaluate(x, Side::Exact);
    return signed_integral(f, x, y) / (y - x);
}

Rational two_param_difference(const PiecewiseFunction& f, int k, const Rational& h1, const Rational& h2,
                              const Rational& x, const Rational& y) {
    require_k(k);
    Rational sum(0);
    for (int j = 0; j <= 2 * k; ++j) {
        Rational shift(j - k);
        sum += signed_binomial(k, j) * steklov(f, x + shift * h1, y + shift * h2);
    }
    return sum;
}

bool is_generic_query(const PiecewiseFunction& f, int k, const Rational& h1, const Rational& h2,
                      const Rational& x, const Rational& y) {
    for (int j = 0; j <= 2 * k; ++j) {
        Rational shift(j - k);
        if (is_jump_or_spike(f, x + shift * h1) || is_jump_or_spike(f, y + shift * h2)) return false;
    }
    return true;
}

IdentityCheck check_integral_representation(const PiecewiseFunction& f, int k, const Rational& h1,
                                            const Rational& h2, const Rational& x, const Rational& y) {
    require_k(k);
    if (!is_generic_query(f, k, h1, h2, x, y))
        throw Error(ErrorKind::RequiresGenericPoint, "a node argument lies on a jump or spike");

    // Node j moves affinely: A_j(s) = start_j + s * slope_j for s in [0, 1].
    const int n = 2 * k + 1;
    std::vector<Rational> start(n), slope(n), coef(n);
    for (int j = 0; j < n; ++j) {
        Rational shift(j - k);
        start[j] = x + shift * h1;
        slope[j] = (y - x) + shift * (h2 - h1);
        coef[j] = signed_binomial(k, j);
    }
    // The integrand is affine between parameters where a node crosses a
    // breakpoint, so the midpoint rule is exact on each piece.
    std::vector<Rational> cuts{Rational(0), Rational(1)};
    for (int j = 0; j < n; ++j) {
        if (slope[j].is_zero()) continue;
        for (const auto& b : f.breakpoints()) {
            Rational s = (b.position - start[j]) / slope[j];
            if (s.sign() > 0 && s < Rational(1)) cuts.push_back(std::move(s));
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Rational rhs(0);
    const Rational half(1, 2);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Rational mid = (cuts[i] + cuts[i + 1]) * half;
        Rational integrand(0);
        for (int j = 0; j < n; ++j) integrand += coef[j] * f.evaluate(start[j] + mid * slope[j], Side::Above);
        rhs += (cuts[i + 1] - cuts[i]) * integrand;
    }
    Rational lhs = two_param_difference(f, k, h1, h2, x, y);
    bool eq = lhs == rhs;
    return {std::move(lhs), std::move(rhs), eq};
}

IdentityCheck integral_identity_check(const PiecewiseFunction& f, int k, const Rational& x) {
    require_k(k);
    if (x.is_integer() && abs(x) <= Rational(k))
        throw Error(ErrorKind::RequiresNonpole, "x = " + x.str() + " is an integer in [-k, k]");
    require_unit_oscillation(f);
    Rational prefactor(1);
    for (int i = -k; i <= k; ++i) prefactor *= x + Rational(i);
    prefactor /= Rational(factorial(2L * k));
    Rational lhs = signed_integral(f, Rational(0), x);
    Rational rhs = prefactor * two_param_difference(f, k, Rational(1), Rational(0), Rational(0), x);
    bool eq = lhs == rhs;
    return {std::move(lhs), std::move(rhs), eq};
}

Rational envelope(const Rational& x, int k) {
    require_k(k);
    Rational prod = x;
    Rational x2 = x * x;
    for (int j = 1; j <= k; ++j) prod *= Rational(1) - x2 / Rational(static_cast<long>(j) * j);
    return prod / Rational(binomial(2L * k, k));
}

IdentityCheck product_identity_check(const Rational& x, int k) {
    require_k(k);
    Rational prod(1);
    for (int i = -k; i <= k; ++i) prod *= x + Rational(i);
    Rational lhs = abs(prod) / Rational(factorial(2L * k));
    Rational rhs = abs(envelope(x, k));
    bool eq = lhs == rhs;
    return {std::move(lhs), std::move(rhs), eq};
}

Rational integral_bound(const Rational& y, int k) {
    if (y.sign() < 0 || y > Rational(1))
        throw Error(ErrorKind::InvalidLength, "interval length must lie in [0, 1], got " + y.str());
    return std::min(abs(envelope(y, k)), abs(envelope(Rational(1) - y, k)));
}

Rational remainder_Rk(const PiecewiseFunction& f, int k, const Rational& x) {
    require_k(k);
    Rational sum(0);
    for (int j = -k; j <= k; ++j) {
        if (j == 0) continue;
        Rational c(binomial(2L * k, k + j));
        if ((k - j) % 2 != 0) c = -c;
        sum += c * steklov(f, x, x + Rational(j));
    }
    return sum;
}

IdentityCheck remainder_decomposition_check(const PiecewiseFunction& f, int k, const Rational& x) {
    require_k(k);
    Rational lhs = two_param_difference(f, k, Rational(0), Rational(1), x, x);
    Rational center(binomial(2L * k, k));
    if (k % 2 != 0) center = -center;
    Rational rhs = center * f.evaluate(x) + remainder_Rk(f, k, x);
    bool eq = lhs == rhs;
    return {std::move(lhs), std::move(rhs), eq};
}

IdentityCheck integer_point_identity(const PiecewiseFunction& f, int k, long j) {
    require_k(k);
    require_unit_oscillation(f);
    Rational pt(j);
    Rational lhs = abs(two_param_difference(f, k, Rational(0), Rational(1), pt, pt));
    Rational rhs = Rational(binomial(2L * k, k)) * abs(f.evaluate(pt));
    bool eq = lhs == rhs;
    return {std::move(lhs), std::move(rhs), eq};
}

}  // namespace whitney
