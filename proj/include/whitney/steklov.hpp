#pragma once

#include "whitney/piecewise.hpp"
#include "whitney/rational.hpp"

namespace whitney {

/// Mean value (1/(y-x)) ∫_x^y f, with F(x, x) = f(x).
Rational steklov(const PiecewiseFunction& f, const Rational& x, const Rational& y);

/// Σ_{j=0}^{2k} (-1)^j binom(2k, j) F(x + (j-k) h1, y + (j-k) h2).
Rational two_param_difference(const PiecewiseFunction& f, int k, const Rational& h1, const Rational& h2,
                              const Rational& x, const Rational& y);

/// Outcome of an exact identity check.
struct IdentityCheck {
    Rational lhs;
    Rational rhs;
    bool equal = false;
};

/// Two-parameter difference against ∫_0^1 Δ^{2k}_{h1 + s(h2-h1)} f(x + s(y-x)) ds,
/// the latter integrated piece by piece in s. Throws RequiresGenericPoint
/// when a node argument sits on a jump or spike.
IdentityCheck check_integral_representation(const PiecewiseFunction& f, int k, const Rational& h1,
                                            const Rational& h2, const Rational& x, const Rational& y);

/// True when no node argument x + (j-k) h1, y + (j-k) h2 sits on a jump or spike.
bool is_generic_query(const PiecewiseFunction& f, int k, const Rational& h1, const Rational& h2,
                      const Rational& x, const Rational& y);

/// ∫_0^x f = [(x-k)...(x+k)/(2k)!] Δ^{2k}_{1,0} F(0, x) for f oscillating on Z.
IdentityCheck integral_identity_check(const PiecewiseFunction& f, int k, const Rational& x);

/// x ∏_{j=1}^k (1 - x²/j²) / binom(2k, k).
Rational envelope(const Rational& x, int k);

/// |∏_{i=-k}^k (x+i)| / (2k)! against |envelope(x, k)|.
IdentityCheck product_identity_check(const Rational& x, int k);

/// min(|envelope(y,k)|, |envelope(1-y,k)|) for 0 <= y <= 1.
Rational integral_bound(const Rational& y, int k);

/// R_k(x) = Σ_{j=-k, j≠0}^k (-1)^{k-j} binom(2k, k+j) F(x, x+j).
Rational remainder_Rk(const PiecewiseFunction& f, int k, const Rational& x);

/// Δ^{2k}_{0,1} F(x, x) against (-1)^k binom(2k,k) f(x) + R_k(x).
IdentityCheck remainder_decomposition_check(const PiecewiseFunction& f, int k, const Rational& x);

/// |Δ^{2k}_{0,1} F(j, j)| against binom(2k, k) |f(j)|; f must oscillate on Z.
IdentityCheck integer_point_identity(const PiecewiseFunction& f, int k, long j);

}  // namespace whitney
