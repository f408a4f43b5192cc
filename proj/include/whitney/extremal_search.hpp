#pragma once

#include <string>
#include <vector>

#include "whitney/differences.hpp"
#include "whitney/lp.hpp"
#include "whitney/piecewise.hpp"

namespace whitney {

/// Fixed breakpoint/spike positions over which extremal values are sought.
/// Every grid node carries a free left limit and right value, every spike
/// a free value.
struct SearchGeometry {
    int k = 1;
    Rational h{1};
    std::vector<Rational> grid;
    std::vector<Rational> spike_positions;
    Rational objective_point;

    /// Throws InvalidGeometry.
    void validate() const;

    int num_vars() const { return static_cast<int>(2 * grid.size() + spike_positions.size()); }
    int left_var(size_t node) const { return static_cast<int>(2 * node); }
    int right_var(size_t node) const { return static_cast<int>(2 * node + 1); }
    int spike_var(size_t s) const { return static_cast<int>(2 * grid.size() + s); }

    /// Linear form of f(x) read from `side`, over the value variables.
    LinearForm value_form(const Rational& x, Side side) const;

    /// Function carried by a variable assignment (boundary values forced to 0).
    PiecewiseFunction function_from_values(std::vector<Rational> values) const;

    /// Variable assignment reproducing f on this geometry; throws
    /// InvalidGeometry if f has a breakpoint or spike off the geometry.
    std::vector<Rational> values_from_function(const PiecewiseFunction& f) const;
};

/// Uniform grid from `lo` to `hi` with step `step`, plus spikes.
SearchGeometry uniform_geometry(int k, const Rational& h, const Rational& lo, const Rational& hi,
                                const Rational& step, std::vector<Rational> spikes, const Rational& objective);

/// The step-1/4 grid on [-1, 2] with a spike at 1/4, k = 1, h = 1.
SearchGeometry reference_geometry();

/// |Δ| <= 1 row generated from one relaxed-modulus configuration.
struct ModulusRow {
    LinearForm form;
    Configuration witness;
};

/// All pieces of the extremal LP, before choosing which modulus rows are active.
struct ExtremalProblem {
    SearchGeometry geometry;
    std::vector<LinearConstraint> equalities;  // oscillation + zero boundary
    std::vector<LinearConstraint> box;         // |v| <= box_bound
    std::vector<ModulusRow> modulus_rows;      // deduplicated up to sign
    LinearForm objective;

    /// LP with every modulus row active.
    LinearProgram full_lp() const;
    LinearProgram lp_with(const std::vector<size_t>& active_rows) const;
};

/// Box on every value. Any oscillating f with relaxed modulus <= 1 has
/// ‖f‖ <= (1 + H_k)/binom(2k,k) <= 1, so the box never binds at an optimum
/// of the complete program.
inline constexpr long kBoxBound = 2;

ExtremalProblem build_problem(const SearchGeometry& geometry);

/// Full LP: oscillation equalities, zero boundary values, and every
/// vertex/direction-class modulus row.
LinearProgram build_lp(const SearchGeometry& geometry);

struct Certificate {
    SearchGeometry geometry;
    PiecewiseFunction function;
    Rational modulus;
    Rational norm;
    Rational ratio;
};

struct CertifyOptions {
    long denominator_cap = 1000000;
};

/// Rationalizes LP values, restores the oscillation condition exactly,
/// and rescales to relaxed modulus 1. Throws DegenerateInput for a
/// vanishing modulus and BoundViolation if the ratio beats a proven bound.
Certificate certify(const SearchGeometry& geometry, const std::vector<double>& values, CertifyOptions options = {});

/// Same, from an exact function already living on the geometry.
Certificate certify_function(const SearchGeometry& geometry, const PiecewiseFunction& f);

struct CertificateReplay {
    bool oscillating = false;
    bool modulus_matches = false;
    bool norm_matches = false;
    bool ratio_matches = false;
    bool ok() const { return oscillating && modulus_matches && norm_matches && ratio_matches; }
};

CertificateReplay replay_certificate(const Certificate& cert);

struct RoundTrace {
    int round = 0;
    size_t active_rows = 0;
    double lp_objective = 0;
    long lp_iterations = 0;
    Rational certified_ratio;
    size_t violated_rows = 0;
    double max_violation = 0;
};

struct SearchResult {
    Certificate best;
    std::vector<RoundTrace> trace;
    bool converged = false;
    bool round_limit_reached = false;
    size_t total_modulus_rows = 0;
};

struct SearchOptions {
    double tolerance = 1e-9;
    size_t max_rows_per_round = 400;
    CertifyOptions certify;
};

/// Delayed constraint generation: solve with the active rows, certify,
/// add the most violated modulus rows, repeat.
SearchResult search(const SearchGeometry& geometry, int max_rounds, SearchOptions options = {});

}  // namespace whitney
