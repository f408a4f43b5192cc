#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "whitney/rational.hpp"

namespace whitney {

/// Which value of f is read at a point: the one-sided limits never see
/// spikes, `Exact` returns the defined value.
enum class Side { Below, Exact, Above };

const char* to_string(Side side);

struct Breakpoint {
    Rational position;
    Rational left_limit;   // f(position-)
    Rational right_value;  // f(position) == f(position+) unless a spike sits here

    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

struct Spike {
    Rational position;
    Rational value;

    friend bool operator==(const Spike&, const Spike&) = default;
};

/// Compactly supported piecewise-linear function with jumps and isolated
/// spikes. Between consecutive breakpoints the function is the affine
/// interpolant from (p_i, right_value_i) to (p_{i+1}, left_limit_{i+1});
/// it vanishes outside [first breakpoint, last breakpoint] except at spikes.
///
/// Instances are always normalized: redundant breakpoints (continuous, no
/// kink) and spikes equal to the underlying value are removed, so `==` is
/// equality of functions.
class PiecewiseFunction {
public:
    PiecewiseFunction() = default;

    /// Validates and normalizes. Throws Error(InvalidFunction) naming the
    /// offending entry.
    static PiecewiseFunction make(std::vector<Breakpoint> breakpoints, std::vector<Spike> spikes = {});

    const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
    const std::vector<Spike>& spikes() const { return spikes_; }

    bool is_zero() const { return breakpoints_.empty() && spikes_.empty(); }

    Rational evaluate(const Rational& x, Side side = Side::Exact) const;

    /// Value ignoring any spike at x (right-continuous representation).
    Rational regular_value(const Rational& x) const { return evaluate(x, Side::Above); }

    const Spike* spike_at(const Rational& x) const;
    const Breakpoint* breakpoint_at(const Rational& x) const;

    /// Closed hull of all breakpoints and spikes; empty for the zero function.
    std::optional<std::pair<Rational, Rational>> support() const;

    /// Breakpoint and spike positions, merged, sorted and deduplicated.
    std::vector<Rational> special_positions() const;

    friend bool operator==(const PiecewiseFunction&, const PiecewiseFunction&) = default;

private:
    std::vector<Breakpoint> breakpoints_;
    std::vector<Spike> spikes_;
};

inline Rational evaluate(const PiecewiseFunction& f, const Rational& x, Side side = Side::Exact) {
    return f.evaluate(x, side);
}

/// Exact integral over [a, b]; spikes carry no mass. Throws InvalidRange if a > b.
Rational definite_integral(const PiecewiseFunction& f, const Rational& a, const Rational& b);

/// Oriented integral: -definite_integral(f, b, a) when a > b.
Rational signed_integral(const PiecewiseFunction& f, const Rational& a, const Rational& b);

struct SupNorm {
    Rational value;
    Rational witness;
};

SupNorm sup_norm(const PiecewiseFunction& f);

/// The extremal example for the second-order Whitney constant: support
/// [-1, 2], jumps at -1/2, 1 and 5/4, spike 43/74 at 1/4.
PiecewiseFunction worked_example();

PiecewiseFunction spike_function(const Rational& position, const Rational& value);

PiecewiseFunction translate(const PiecewiseFunction& f, const Rational& shift);
PiecewiseFunction add(const PiecewiseFunction& f, const PiecewiseFunction& g);
PiecewiseFunction scale_values(const PiecewiseFunction& f, const Rational& factor);

struct CellIntegral {
    long index;  // cell [index*h, (index+1)*h]
    Rational integral;
};

/// Integrals over every grid cell [jh, (j+1)h] that meets the support of
/// the regular part of f. Throws InvalidScale if h <= 0.
std::vector<CellIntegral> check_oscillation(const PiecewiseFunction& f, const Rational& h);

bool is_oscillating(const PiecewiseFunction& f, const Rational& h);

/// Subtracts the step function of cell means on the grid {jh}.
PiecewiseFunction make_oscillating(const PiecewiseFunction& f, const Rational& h);

/// Deterministic random function satisfying the oscillation condition.
PiecewiseFunction random_oscillating(std::uint64_t seed, const Rational& h, int complexity);

/// Double-precision snapshot of the regular part (spikes dropped), for
/// sampling oracles.
class FloatFunction {
public:
    explicit FloatFunction(const PiecewiseFunction& f);
    double operator()(double x) const;
    double support_min() const { return pos_.empty() ? 0.0 : pos_.front(); }
    double support_max() const { return pos_.empty() ? 0.0 : pos_.back(); }

private:
    std::vector<double> pos_, left_, right_;
};

}  // namespace whitney
