#include "whitney/differences.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>
#include <tuple>

#include "whitney/error.hpp"

namespace whitney {

DifferenceScheme DifferenceScheme::central(int order) {
    if (order < 1) throw Error(ErrorKind::InvalidArgument, "difference order must be >= 1");
    DifferenceScheme s;
    s.order = order;
    for (int j = 0; j <= order; ++j) {
        s.offsets.emplace_back(2L * j - order, 2L);
        Rational c(binomial(order, j));
        s.coefficients.push_back(j % 2 == 0 ? c : -c);
    }
    return s;
}

const char* to_string(ModulusMode mode) { return mode == ModulusMode::Pointwise ? "pointwise" : "relaxed"; }

ModulusMode parse_modulus_mode(const std::string& text) {
    if (text == "pointwise") return ModulusMode::Pointwise;
    if (text == "relaxed") return ModulusMode::Relaxed;
    throw Error(ErrorKind::InvalidArgument, "unknown modulus mode '" + text + "' (expected pointwise|relaxed)");
}

const char* to_string(LineKind kind) {
    switch (kind) {
        case LineKind::Breakpoint: return "breakpoint";
        case LineKind::Spike: return "spike";
        case LineKind::StripBoundary: return "strip-boundary";
    }
    return "?";
}

bool CriticalVertex::node_is_special(int node) const {
    return std::any_of(incident_lines.begin(), incident_lines.end(),
                       [&](const IncidentLine& l) { return l.node == node; });
}

bool CriticalVertex::node_hits_spike(int node) const {
    return std::any_of(incident_lines.begin(), incident_lines.end(),
                       [&](const IncidentLine& l) { return l.node == node && l.kind == LineKind::Spike; });
}

Rational central_difference(const PiecewiseFunction& f, int order, const Rational& t, const Rational& x,
                            std::span<const Side> sides) {
    if (order < 1) throw Error(ErrorKind::InvalidArgument, "difference order must be >= 1");
    if (!sides.empty() && sides.size() != static_cast<size_t>(order) + 1)
        throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(order + 1) + " side tags, got " +
                                                    std::to_string(sides.size()));
    auto scheme = DifferenceScheme::central(order);
    Rational sum(0);
    for (int j = 0; j <= order; ++j) {
        Side side = sides.empty() ? Side::Exact : sides[j];
        sum += scheme.coefficients[j] * f.evaluate(x + scheme.offsets[j] * t, side);
    }
    return sum;
}

namespace {

void require_scale(const Rational& h) {
    if (h.sign() <= 0) throw Error(ErrorKind::InvalidScale, "scale h must be positive, got " + h.str());
}

void require_even_order(int order) {
    if (order < 2 || order % 2 != 0)
        throw Error(ErrorKind::UnsupportedOrder, "modulus requires an even order >= 2, got " + std::to_string(order));
}

bool contains(const std::vector<Rational>& sorted, const Rational& v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

// Half-plane split for a total angular order starting at +x.
int half(const Rational& dx, const Rational& dt) {
    return (dt.sign() > 0 || (dt.is_zero() && dx.sign() > 0)) ? 0 : 1;
}

bool angle_less(const std::pair<Rational, Rational>& a, const std::pair<Rational, Rational>& b) {
    int ha = half(a.first, a.second), hb = half(b.first, b.second);
    if (ha != hb) return ha < hb;
    return (a.first * b.second - a.second * b.first).sign() > 0;
}

bool same_ray(const std::pair<Rational, Rational>& a, const std::pair<Rational, Rational>& b) {
    return (a.first * b.second - a.second * b.first).is_zero() &&
           (a.first * b.first + a.second * b.second).sign() > 0;
}

Side side_of(const Rational& s) {
    int sg = s.sign();
    return sg < 0 ? Side::Below : sg > 0 ? Side::Above : Side::Exact;
}

}  // namespace

std::vector<CriticalVertex> critical_vertices(std::span<const Rational> breakpoint_positions,
                                              std::span<const Rational> spike_positions, int order,
                                              const Rational& h) {
    require_scale(h);
    auto scheme = DifferenceScheme::central(order);
    std::vector<Rational> spikes(spike_positions.begin(), spike_positions.end());
    std::sort(spikes.begin(), spikes.end());
    std::vector<Rational> all(breakpoint_positions.begin(), breakpoint_positions.end());
    all.insert(all.end(), spikes.begin(), spikes.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    std::vector<std::pair<Rational, Rational>> points;
    for (const auto& p : all) {
        points.emplace_back(p, Rational(0));
        for (int j = 0; j <= order; ++j) points.emplace_back(p - scheme.offsets[j] * h, h);
    }
    // Lines of nodes i < j: x + c_i t = p and x + c_j t = q meet at
    // t = (q - p) / (j - i), inside the strip iff p <= q <= p + (j - i) h.
    for (int i = 0; i <= order; ++i) {
        for (int j = i + 1; j <= order; ++j) {
            Rational gap(j - i);
            Rational reach = gap * h;
            for (const auto& p : all) {
                auto lo = std::lower_bound(all.begin(), all.end(), p);
                auto hi = std::upper_bound(all.begin(), all.end(), p + reach);
                for (auto q = lo; q != hi; ++q) {
                    Rational t = (*q - p) / gap;
                    points.emplace_back(p - scheme.offsets[i] * t, std::move(t));
                }
            }
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::vector<CriticalVertex> out;
    out.reserve(points.size());
    for (auto& [x, t] : points) {
        CriticalVertex v{x, t, {}};
        for (int j = 0; j <= order; ++j) {
            Rational arg = x + scheme.offsets[j] * t;
            if (!contains(all, arg)) continue;
            LineKind kind = contains(spikes, arg) ? LineKind::Spike : LineKind::Breakpoint;
            v.incident_lines.push_back({j, std::move(arg), kind});
        }
        if (t.is_zero()) v.incident_lines.push_back({-1, Rational(0), LineKind::StripBoundary});
        if (t == h) v.incident_lines.push_back({-1, h, LineKind::StripBoundary});
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<CriticalVertex> critical_vertices(const PiecewiseFunction& f, int order, const Rational& h) {
    std::vector<Rational> bps, sps;
    for (const auto& b : f.breakpoints()) bps.push_back(b.position);
    for (const auto& s : f.spikes()) sps.push_back(s.position);
    return critical_vertices(bps, sps, order, h);
}

std::vector<Configuration> configurations_at(const CriticalVertex& vertex, const DifferenceScheme& scheme,
                                             const Rational& h, ModulusMode mode) {
    const int order = scheme.order;
    std::vector<bool> special(order + 1, false);
    int spike_hits = 0;
    for (const auto& l : vertex.incident_lines) {
        if (l.node < 0) continue;
        special[l.node] = true;
        if (l.kind == LineKind::Spike) ++spike_hits;
    }

    std::vector<Configuration> out;
    auto push_unique = [&](Configuration c) {
        for (const auto& existing : out)
            if (existing.sides == c.sides) return;
        out.push_back(std::move(c));
    };

    if (mode == ModulusMode::Pointwise || spike_hits >= 2) {
        // Relaxed mode: two simultaneously pinned spikes fix the configuration.
        push_unique({vertex.x, vertex.t, true, Rational(0), Rational(0),
                     std::vector<Side>(order + 1, Side::Exact)});
    }

    // Rays dx + c_j dt = 0 of the special nodes, plus dt = 0. Node sides
    // are constant on each open sector between consecutive rays.
    std::vector<std::pair<Rational, Rational>> rays{{Rational(1), Rational(0)}, {Rational(-1), Rational(0)}};
    for (int j = 0; j <= order; ++j) {
        if (!special[j]) continue;
        rays.emplace_back(-scheme.offsets[j], Rational(1));
        rays.emplace_back(scheme.offsets[j], Rational(-1));
    }
    std::sort(rays.begin(), rays.end(), angle_less);
    rays.erase(std::unique(rays.begin(), rays.end(), same_ray), rays.end());
    if (rays.size() < 3) {
        rays.emplace_back(Rational(0), Rational(1));
        rays.emplace_back(Rational(0), Rational(-1));
        std::sort(rays.begin(), rays.end(), angle_less);
    }

    const bool at_bottom = vertex.t.is_zero();
    const bool at_top = vertex.t == h;
    const size_t r = rays.size();
    for (size_t i = 0; i < 2 * r; ++i) {
        Rational dx, dt;
        if (i % 2 == 0) {
            std::tie(dx, dt) = rays[i / 2];
        } else {
            const auto& a = rays[i / 2];
            const auto& b = rays[(i / 2 + 1) % r];
            dx = a.first + b.first;
            dt = a.second + b.second;
        }
        if (at_bottom && dt.sign() < 0) continue;
        if (at_top && dt.sign() > 0) continue;
        std::vector<Side> sides(order + 1, Side::Exact);
        for (int j = 0; j <= order; ++j)
            if (special[j]) sides[j] = side_of(dx + scheme.offsets[j] * dt);
        push_unique({vertex.x, vertex.t, false, std::move(dx), std::move(dt), std::move(sides)});
    }
    return out;
}

namespace {

struct Best {
    Rational value{-1};
    Rational signed_value;
    size_t vertex = 0;
    size_t config = 0;
    Configuration configuration;
    size_t configs_seen = 0;
};

bool better(const Best& a, const Best& b) {
    if (a.value != b.value) return a.value > b.value;
    return std::tie(a.vertex, a.config) < std::tie(b.vertex, b.config);
}

// Evaluates all configurations at one vertex with a per-node value cache.
template <typename Visit>
void scan_vertex(const PiecewiseFunction& f, const DifferenceScheme& scheme, const CriticalVertex& v,
                 const Rational& h, ModulusMode mode, Visit&& visit) {
    const int order = scheme.order;
    std::vector<std::array<std::optional<Rational>, 3>> cache(order + 1);
    std::vector<Rational> args(order + 1);
    std::vector<bool> special(order + 1, false);
    for (int j = 0; j <= order; ++j) {
        args[j] = v.x + scheme.offsets[j] * v.t;
        special[j] = v.node_is_special(j);
    }
    auto value = [&](int j, Side side) -> const Rational& {
        if (!special[j]) side = Side::Exact;
        auto& slot = cache[j][static_cast<int>(side)];
        if (!slot) slot = f.evaluate(args[j], side);
        return *slot;
    };
    auto configs = configurations_at(v, scheme, h, mode);
    for (size_t c = 0; c < configs.size(); ++c) {
        Rational sum(0);
        for (int j = 0; j <= order; ++j) sum += scheme.coefficients[j] * value(j, configs[c].sides[j]);
        visit(c, configs[c], sum);
    }
}

Best scan_range(const PiecewiseFunction& f, const DifferenceScheme& scheme, const std::vector<CriticalVertex>& vs,
                size_t begin, size_t end, const Rational& h, ModulusMode mode) {
    Best best;
    for (size_t i = begin; i < end; ++i) {
        scan_vertex(f, scheme, vs[i], h, mode, [&](size_t c, const Configuration& cfg, const Rational& sum) {
            ++best.configs_seen;
            Rational a = abs(sum);
            if (a > best.value) {
                best.value = std::move(a);
                best.signed_value = sum;
                best.vertex = i;
                best.config = c;
                best.configuration = cfg;
            }
        });
    }
    return best;
}

}  // namespace

ModulusReport modulus_exact(const PiecewiseFunction& f, int order, const Rational& h, ModulusMode mode,
                            unsigned workers) {
    require_even_order(order);
    require_scale(h);
    auto scheme = DifferenceScheme::central(order);
    auto vs = critical_vertices(f, order, h);

    ModulusReport report;
    report.mode = mode;
    report.order = order;
    report.h = h;
    report.vertices_examined = vs.size();
    if (vs.empty()) {
        report.value = 0;
        report.witness.configuration = {Rational(0), Rational(0), true, Rational(0), Rational(0),
                                        std::vector<Side>(order + 1, Side::Exact)};
        report.witness.signed_value = 0;
        return report;
    }

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(vs.size())));
    std::vector<Best> partial(workers);
    if (workers == 1) {
        partial[0] = scan_range(f, scheme, vs, 0, vs.size(), h, mode);
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (vs.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            size_t b = std::min(vs.size(), w * chunk), e = std::min(vs.size(), b + chunk);
            pool.emplace_back([&, w, b, e] { partial[w] = scan_range(f, scheme, vs, b, e, h, mode); });
        }
        for (auto& t : pool) t.join();
    }
    Best best = partial[0];
    size_t seen = partial[0].configs_seen;
    for (unsigned w = 1; w < workers; ++w) {
        seen += partial[w].configs_seen;
        if (partial[w].value.sign() >= 0 && better(partial[w], best)) best = partial[w];
    }
    report.value = best.value;
    report.witness = {best.configuration, best.signed_value};
    report.configurations_examined = seen;
    return report;
}

Rational replay_witness(const PiecewiseFunction& f, int order, const ModulusWitness& witness) {
    const auto& c = witness.configuration;
    return central_difference(f, order, c.t, c.x, c.sides);
}

std::vector<VertexValue> vertex_values(const PiecewiseFunction& f, int order, const Rational& h, ModulusMode mode) {
    require_even_order(order);
    require_scale(h);
    auto scheme = DifferenceScheme::central(order);
    std::vector<VertexValue> out;
    for (const auto& v : critical_vertices(f, order, h)) {
        Rational best(0);
        scan_vertex(f, scheme, v, h, mode, [&](size_t, const Configuration&, const Rational& sum) {
            Rational a = abs(sum);
            if (a > best) best = std::move(a);
        });
        out.push_back({v.x, v.t, std::move(best)});
    }
    return out;
}

double modulus_grid(const PiecewiseFunction& f, int order, const Rational& h, int n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "grid size must be >= 2");
    require_scale(h);
    auto scheme = DifferenceScheme::central(order);
    FloatFunction ff(f);
    if (f.breakpoints().empty()) return 0.0;
    std::vector<double> coef, off;
    for (int j = 0; j <= order; ++j) {
        coef.push_back(scheme.coefficients[j].to_double());
        off.push_back(scheme.offsets[j].to_double());
    }
    const double hd = h.to_double();
    const double reach = 0.5 * order * hd;
    const double x0 = ff.support_min() - reach, x1 = ff.support_max() + reach;
    // Small irrational phases keep samples off the rational breakpoint
    // lattice while staying close to it; t runs up to h(1 - jt/n).
    const double jx = 0.0618033988749895, jt = 0.0414213562373095;
    const double dx = (x1 - x0) / n, dt = hd / n;
    double best = 0.0;
    for (int it = 0; it < n; ++it) {
        const double t = (it + 1 - jt) * dt;
        for (int ix = 0; ix < n; ++ix) {
            const double x = x0 + (ix + jx) * dx;
            double sum = 0.0;
            for (int j = 0; j <= order; ++j) sum += coef[j] * ff(x + off[j] * t);
            best = std::max(best, std::abs(sum));
        }
    }
    return best;
}

Rational whitney_ratio(const PiecewiseFunction& f, int k, const Rational& h, ModulusMode mode) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
    if (!is_oscillating(f, h))
        throw Error(ErrorKind::RequiresOscillation, "function does not integrate to zero on every cell of the grid h*Z");
    auto norm = sup_norm(f).value;
    if (norm.is_zero()) throw Error(ErrorKind::DegenerateInput, "zero function has no Whitney ratio");
    auto mod = modulus_exact(f, 2 * k, h, mode);
    if (mod.value.is_zero())
        throw Error(ErrorKind::DegenerateInput, "modulus vanishes for a function of norm " + norm.str());
    return norm / mod.value;
}

}  // namespace whitney
