#pragma once

#include <utility>
#include <vector>

#include "whitney/rational.hpp"

namespace whitney {

Rational harmonic(int k);
mpz_class central_binomial(int k);

/// 1/binom(2k,k) <= W*_{2k} <= (1 + H_k)/binom(2k,k).
struct BoundPair {
    int k = 0;
    Rational lower;
    Rational upper;
};

BoundPair whitney_bounds(int k);
std::vector<BoundPair> bounds_table(int kmax);

/// (1/2 + 3/37, 1/2 + 1/8) for W*_2.
std::pair<Rational, Rational> second_order_bounds();

/// 1/2 + |envelope(x, 1)| for x in (0, 1/2].
Rational case_a_bound(const Rational& x);

/// 1/2 + integral_bound(2x, 1) / (2(1-x)) for x in [1/4, 1/2]; x = 1/4
/// is admitted as the limit from the right.
Rational case_b_bound(const Rational& x);

/// Pre-halving term of the second case with the printed one-sided cubic,
/// |(2x-1) 2x (2x+1) / (2(1-x))|.
Rational case_b_one_sided_term(const Rational& x);

/// Pre-halving term with the symmetric integral bound, integral_bound(2x,1)/(1-x).
Rational case_b_symmetric_term(const Rational& x);

/// Residual of (1-x)x(1+x) - (2x-1)2x(2x+1)/(1-x), the crossing equation
/// written with the one-sided cubic.
double literal_crossing_residual(double x);

struct RefinedBound {
    double x0 = 0;
    double value = 0;
    bool exact_check = false;
    Rational bracket_lo;
    Rational bracket_hi;
    int iterations = 0;
};

/// Crossing of case_a_bound and case_b_bound on (1/4, 1/2] by exact
/// rational bisection to width 1e-12.
RefinedBound refined_upper_bound();

enum class CaseBVariant { Symmetric, OneSided };

struct ScanResult {
    double argmax = 0;
    double value = 0;
    Rational exact_argmax;
    Rational exact_value;
};

/// Max over the mesh i/(2n), i = 1..n, of the applicable bound: case a on
/// (0, 1/4], min(case a, case b) on (1/4, 1/2].
ScanResult upper_bound_scan(int n, CaseBVariant variant = CaseBVariant::Symmetric);

}  // namespace whitney
