#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "whitney/piecewise.hpp"
#include "whitney/rational.hpp"

namespace whitney {

/// Central difference of order m: nodes x + c_j t with c_j = j - m/2 and
/// coefficients (-1)^j binom(m, j), j = 0..m.
struct DifferenceScheme {
    int order = 0;
    std::vector<Rational> offsets;
    std::vector<Rational> coefficients;

    static DifferenceScheme central(int order);
};

enum class ModulusMode { Pointwise, Relaxed };

const char* to_string(ModulusMode mode);
ModulusMode parse_modulus_mode(const std::string& text);

enum class LineKind { Breakpoint, Spike, StripBoundary };

const char* to_string(LineKind kind);

struct IncidentLine {
    int node;           // -1 for strip boundaries
    Rational position;  // hit position, or t for strip boundaries
    LineKind kind;
};

/// Intersection of node-hit lines x + c_j t = p with each other or with
/// the strip boundaries t = 0 and t = h.
struct CriticalVertex {
    Rational x;
    Rational t;
    std::vector<IncidentLine> incident_lines;

    bool node_is_special(int node) const;
    bool node_hits_spike(int node) const;
};

/// One candidate for the supremum: either the exact point (x, t) or the
/// limit approached from (x, t) + eps (dx, dt), eps -> 0+, which is read
/// off per node by `sides`.
struct Configuration {
    Rational x;
    Rational t;
    bool is_point = false;
    Rational dx;
    Rational dt;
    std::vector<Side> sides;
};

Rational central_difference(const PiecewiseFunction& f, int order, const Rational& t, const Rational& x,
                            std::span<const Side> sides = {});

/// All arrangement vertices in the strip 0 <= t <= h, sorted by (x, t).
std::vector<CriticalVertex> critical_vertices(const PiecewiseFunction& f, int order, const Rational& h);

/// Same, for an abstract geometry of breakpoint and spike positions.
std::vector<CriticalVertex> critical_vertices(std::span<const Rational> breakpoint_positions,
                                              std::span<const Rational> spike_positions, int order,
                                              const Rational& h);

/// Candidate configurations at one vertex for the given semantics, in a
/// deterministic order (exact point first when it applies, then directions
/// counter-clockwise from +x). Configurations with identical per-node
/// sides are merged.
std::vector<Configuration> configurations_at(const CriticalVertex& vertex, const DifferenceScheme& scheme,
                                             const Rational& h, ModulusMode mode);

struct ModulusWitness {
    Configuration configuration;
    Rational signed_value;
};

struct ModulusReport {
    ModulusMode mode = ModulusMode::Relaxed;
    int order = 0;
    Rational h;
    Rational value;
    ModulusWitness witness;
    std::size_t vertices_examined = 0;
    std::size_t configurations_examined = 0;
};

/// Exact sup over |t| <= h of |Δ_t^m f| for even m. `workers` splits the
/// vertex scan; the result does not depend on it.
ModulusReport modulus_exact(const PiecewiseFunction& f, int order, const Rational& h, ModulusMode mode,
                            unsigned workers = 1);

/// Re-evaluates a witness configuration; |result| equals the reported value.
Rational replay_witness(const PiecewiseFunction& f, int order, const ModulusWitness& witness);

/// Per-vertex maxima, for plotting.
struct VertexValue {
    Rational x;
    Rational t;
    Rational value;
};
std::vector<VertexValue> vertex_values(const PiecewiseFunction& f, int order, const Rational& h, ModulusMode mode);

/// Sampling oracle: max |Δ_t^m f(x)| over a jittered n x n grid of
/// (x, t) in [supp - mh/2, supp + mh/2] x (0, h), in double precision.
double modulus_grid(const PiecewiseFunction& f, int order, const Rational& h, int n);

/// ‖f‖ / ω_{2k}(f, h). Requires f to oscillate on the grid hZ.
Rational whitney_ratio(const PiecewiseFunction& f, int k, const Rational& h, ModulusMode mode);

}  // namespace whitney
