#include "whitney/piecewise.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "whitney/error.hpp"

namespace whitney {

const char* to_string(Side side) {
    switch (side) {
        case Side::Below: return "below";
        case Side::Exact: return "exact";
        case Side::Above: return "above";
    }
    return "?";
}

namespace {

[[noreturn]] void reject(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::InvalidFunction, where + ": " + what);
}

std::string bp_name(size_t i) { return "breakpoints[" + std::to_string(i) + "]"; }
std::string spike_name(size_t i) { return "spikes[" + std::to_string(i) + "]"; }

// Slope-equality test for (x0,y0),(x1,y1),(x2,y2) without division.
bool collinear(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1,
               const Rational& x2, const Rational& y2) {
    return (y1 - y0) * (x2 - x1) == (y2 - y1) * (x1 - x0);
}

}  // namespace

PiecewiseFunction PiecewiseFunction::make(std::vector<Breakpoint> breakpoints, std::vector<Spike> spikes) {
    for (size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i - 1].position < breakpoints[i].position))
            reject(bp_name(i), "position " + breakpoints[i].position.str() + " is not strictly greater than " +
                                   breakpoints[i - 1].position.str());
    if (!breakpoints.empty()) {
        if (!breakpoints.front().left_limit.is_zero())
            reject(bp_name(0), "left limit must be 0 (function vanishes left of the support), got " +
                                   breakpoints.front().left_limit.str());
        if (!breakpoints.back().right_value.is_zero())
            reject(bp_name(breakpoints.size() - 1),
                   "right value must be 0 (function vanishes right of the support), got " +
                       breakpoints.back().right_value.str());
    }
    for (size_t i = 1; i < spikes.size(); ++i)
        if (!(spikes[i - 1].position < spikes[i].position))
            reject(spike_name(i), "position " + spikes[i].position.str() + " is not strictly greater than " +
                                      spikes[i - 1].position.str());

    // Drop breakpoints where f is continuous and has no kink. Redundancy is
    // intrinsic to the function, so one pass against the original
    // neighbours is enough.
    std::vector<Breakpoint> kept;
    kept.reserve(breakpoints.size());
    const size_t n = breakpoints.size();
    for (size_t i = 0; i < n; ++i) {
        const Breakpoint& b = breakpoints[i];
        if (b.left_limit != b.right_value) {
            kept.push_back(b);
            continue;
        }
        Rational lx = i > 0 ? breakpoints[i - 1].position : b.position - Rational(1);
        Rational ly = i > 0 ? breakpoints[i - 1].right_value : Rational(0);
        Rational rx = i + 1 < n ? breakpoints[i + 1].position : b.position + Rational(1);
        Rational ry = i + 1 < n ? breakpoints[i + 1].left_limit : Rational(0);
        if (!collinear(lx, ly, b.position, b.right_value, rx, ry)) kept.push_back(b);
    }

    PiecewiseFunction f;
    f.breakpoints_ = std::move(kept);
    for (auto& s : spikes)
        if (s.value != f.regular_value(s.position)) f.spikes_.push_back(std::move(s));
    return f;
}

const Spike* PiecewiseFunction::spike_at(const Rational& x) const {
    auto it = std::lower_bound(spikes_.begin(), spikes_.end(), x,
                               [](const Spike& s, const Rational& v) { return s.position < v; });
    return it != spikes_.end() && it->position == x ? &*it : nullptr;
}

const Breakpoint* PiecewiseFunction::breakpoint_at(const Rational& x) const {
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x,
                               [](const Breakpoint& b, const Rational& v) { return b.position < v; });
    return it != breakpoints_.end() && it->position == x ? &*it : nullptr;
}

Rational PiecewiseFunction::evaluate(const Rational& x, Side side) const {
    if (side == Side::Exact)
        if (const Spike* s = spike_at(x)) return s->value;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x,
                               [](const Rational& v, const Breakpoint& b) { return v < b.position; });
    if (it == breakpoints_.begin()) return Rational(0);
    const Breakpoint& lo = *std::prev(it);
    if (lo.position == x) return side == Side::Below ? lo.left_limit : lo.right_value;
    if (it == breakpoints_.end()) return Rational(0);
    const Breakpoint& hi = *it;
    return lo.right_value + (hi.left_limit - lo.right_value) * (x - lo.position) / (hi.position - lo.position);
}

std::optional<std::pair<Rational, Rational>> PiecewiseFunction::support() const {
    if (is_zero()) return std::nullopt;
    Rational lo, hi;
    bool first = true;
    auto widen = [&](const Rational& p) {
        if (first) { lo = hi = p; first = false; return; }
        if (p < lo) lo = p;
        if (p > hi) hi = p;
    };
    if (!breakpoints_.empty()) {
        widen(breakpoints_.front().position);
        widen(breakpoints_.back().position);
    }
    if (!spikes_.empty()) {
        widen(spikes_.front().position);
        widen(spikes_.back().position);
    }
    return std::make_pair(lo, hi);
}

std::vector<Rational> PiecewiseFunction::special_positions() const {
    std::vector<Rational> out;
    out.reserve(breakpoints_.size() + spikes_.size());
    for (const auto& b : breakpoints_) out.push_back(b.position);
    for (const auto& s : spikes_) out.push_back(s.position);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rational definite_integral(const PiecewiseFunction& f, const Rational& a, const Rational& b) {
    if (a > b) throw Error(ErrorKind::InvalidRange, "integral over [" + a.str() + ", " + b.str() + "] with a > b");
    const auto& bps = f.breakpoints();
    if (a == b || bps.empty()) return Rational(0);
    Rational lo = std::max(a, bps.front().position);
    Rational hi = std::min(b, bps.back().position);
    if (!(lo < hi)) return Rational(0);
    // Trapezoids between consecutive nodes of {lo} ∪ breakpoints ∪ {hi}.
    Rational twice_sum(0);
    Rational u = lo;
    Rational fu = f.evaluate(lo, Side::Above);
    auto it = std::upper_bound(bps.begin(), bps.end(), lo,
                               [](const Rational& v, const Breakpoint& bp) { return v < bp.position; });
    for (; it != bps.end() && it->position < hi; ++it) {
        twice_sum += (it->position - u) * (fu + it->left_limit);
        u = it->position;
        fu = it->right_value;
    }
    twice_sum += (hi - u) * (fu + f.evaluate(hi, Side::Below));
    return twice_sum / Rational(2);
}

Rational signed_integral(const PiecewiseFunction& f, const Rational& a, const Rational& b) {
    return a <= b ? definite_integral(f, a, b) : -definite_integral(f, b, a);
}

SupNorm sup_norm(const PiecewiseFunction& f) {
    SupNorm best{Rational(0), Rational(0)};
    auto consider = [&](const Rational& v, const Rational& at) {
        Rational a = abs(v);
        if (a > best.value) best = {a, at};
    };
    // Merge breakpoints and spikes by position so the witness is the
    // leftmost attaining abscissa.
    const auto& bps = f.breakpoints();
    const auto& sps = f.spikes();
    size_t i = 0, j = 0;
    while (i < bps.size() || j < sps.size()) {
        bool take_bp = j == sps.size() || (i < bps.size() && bps[i].position <= sps[j].position);
        if (take_bp) {
            consider(bps[i].left_limit, bps[i].position);
            consider(bps[i].right_value, bps[i].position);
            ++i;
        } else {
            consider(sps[j].value, sps[j].position);
            ++j;
        }
    }
    return best;
}

PiecewiseFunction worked_example() {
    const Rational d(37);
    auto v = [&](long n) { return Rational(n) / d; };
    return PiecewiseFunction::make(
        {
            {Rational(-1), Rational(0), v(-12)},
            {Rational(-1, 2), v(-6), v(12)},
            {Rational(1), v(-6), v(12)},
            {Rational(5, 4), v(15), v(-10)},
            {Rational(3, 2), v(-1), v(-1)},
            {Rational(2), v(-7), Rational(0)},
        },
        {{Rational(1, 4), Rational(1, 2) + Rational(3, 37)}});
}

PiecewiseFunction spike_function(const Rational& position, const Rational& value) {
    return PiecewiseFunction::make({}, {{position, value}});
}

PiecewiseFunction translate(const PiecewiseFunction& f, const Rational& shift) {
    auto bps = f.breakpoints();
    auto sps = f.spikes();
    for (auto& b : bps) b.position += shift;
    for (auto& s : sps) s.position += shift;
    return PiecewiseFunction::make(std::move(bps), std::move(sps));
}

PiecewiseFunction add(const PiecewiseFunction& f, const PiecewiseFunction& g) {
    std::vector<Rational> positions;
    for (const auto& b : f.breakpoints()) positions.push_back(b.position);
    for (const auto& b : g.breakpoints()) positions.push_back(b.position);
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());

    std::vector<Breakpoint> bps;
    bps.reserve(positions.size());
    for (const auto& p : positions)
        bps.push_back({p, f.evaluate(p, Side::Below) + g.evaluate(p, Side::Below),
                       f.evaluate(p, Side::Above) + g.evaluate(p, Side::Above)});

    std::vector<Rational> spike_pos;
    for (const auto& s : f.spikes()) spike_pos.push_back(s.position);
    for (const auto& s : g.spikes()) spike_pos.push_back(s.position);
    std::sort(spike_pos.begin(), spike_pos.end());
    spike_pos.erase(std::unique(spike_pos.begin(), spike_pos.end()), spike_pos.end());

    std::vector<Spike> sps;
    sps.reserve(spike_pos.size());
    for (const auto& p : spike_pos) sps.push_back({p, f.evaluate(p) + g.evaluate(p)});
    return PiecewiseFunction::make(std::move(bps), std::move(sps));
}

PiecewiseFunction scale_values(const PiecewiseFunction& f, const Rational& factor) {
    auto bps = f.breakpoints();
    auto sps = f.spikes();
    for (auto& b : bps) {
        b.left_limit *= factor;
        b.right_value *= factor;
    }
    for (auto& s : sps) s.value *= factor;
    return PiecewiseFunction::make(std::move(bps), std::move(sps));
}

namespace {

void require_positive_scale(const Rational& h) {
    if (h.sign() <= 0) throw Error(ErrorKind::InvalidScale, "grid scale must be positive, got " + h.str());
}

long to_long(const mpz_class& z) {
    if (!z.fits_slong_p()) throw Error(ErrorKind::InvalidArgument, "grid index out of range");
    return z.get_si();
}

}  // namespace

std::vector<CellIntegral> check_oscillation(const PiecewiseFunction& f, const Rational& h) {
    require_positive_scale(h);
    std::vector<CellIntegral> out;
    const auto& bps = f.breakpoints();
    if (bps.empty()) return out;
    long first = to_long((bps.front().position / h).floor());
    long last = to_long((bps.back().position / h).ceil());
    for (long j = first; j < last; ++j)
        out.push_back({j, definite_integral(f, Rational(j) * h, Rational(j + 1) * h)});
    return out;
}

bool is_oscillating(const PiecewiseFunction& f, const Rational& h) {
    auto cells = check_oscillation(f, h);
    return std::all_of(cells.begin(), cells.end(), [](const CellIntegral& c) { return c.integral.is_zero(); });
}

PiecewiseFunction make_oscillating(const PiecewiseFunction& f, const Rational& h) {
    auto cells = check_oscillation(f, h);
    if (cells.empty()) return f;
    std::vector<Breakpoint> steps;
    steps.reserve(cells.size() + 1);
    Rational prev_mean(0);
    for (const auto& c : cells) {
        Rational mean = c.integral / h;
        steps.push_back({Rational(c.index) * h, prev_mean, mean});
        prev_mean = mean;
    }
    steps.push_back({Rational(cells.back().index + 1) * h, prev_mean, Rational(0)});
    return add(f, scale_values(PiecewiseFunction::make(std::move(steps)), Rational(-1)));
}

PiecewiseFunction random_oscillating(std::uint64_t seed, const Rational& h, int complexity) {
    if (complexity < 1) throw Error(ErrorKind::InvalidArgument, "complexity must be >= 1");
    require_positive_scale(h);
    std::mt19937_64 rng(seed);
    auto uniform = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    constexpr long kLattice = 12;  // breakpoints on the h/12 lattice
    while (true) {
        long cells = uniform(1, 3);
        long start = uniform(-2, 1);
        long slots = kLattice * cells;
        long count = std::min<long>(complexity + 1, slots + 1);
        std::vector<long> ticks;
        while (static_cast<long>(ticks.size()) < count) {
            long t = uniform(0, slots);
            if (std::find(ticks.begin(), ticks.end(), t) == ticks.end()) ticks.push_back(t);
        }
        std::sort(ticks.begin(), ticks.end());
        auto value = [&] { return Rational(uniform(-12, 12), 12); };
        std::vector<Breakpoint> bps;
        for (size_t i = 0; i < ticks.size(); ++i) {
            Rational pos = h * (Rational(start) + Rational(ticks[i], kLattice));
            Rational left = value();
            Rational right = uniform(0, 1) == 0 ? left : value();
            if (i == 0) left = 0;
            if (i + 1 == ticks.size()) right = 0;
            bps.push_back({pos, left, right});
        }
        std::vector<Spike> sps;
        if (uniform(0, 2) == 0) {
            // Odd multiples of h/24 never sit on the breakpoint lattice.
            long tick = 2 * uniform(0, kLattice * cells - 1) + 1;
            sps.push_back({h * (Rational(start) + Rational(tick, 2 * kLattice)), value()});
        }
        auto f = make_oscillating(PiecewiseFunction::make(std::move(bps), std::move(sps)), h);
        if (!f.breakpoints().empty()) return f;
    }
}

FloatFunction::FloatFunction(const PiecewiseFunction& f) {
    for (const auto& b : f.breakpoints()) {
        pos_.push_back(b.position.to_double());
        left_.push_back(b.left_limit.to_double());
        right_.push_back(b.right_value.to_double());
    }
}

double FloatFunction::operator()(double x) const {
    auto it = std::upper_bound(pos_.begin(), pos_.end(), x);
    if (it == pos_.begin()) return 0.0;
    size_t i = static_cast<size_t>(it - pos_.begin()) - 1;
    if (pos_[i] == x) return right_[i];
    if (i + 1 == pos_.size()) return 0.0;
    double w = (x - pos_[i]) / (pos_[i + 1] - pos_[i]);
    return right_[i] + (left_[i + 1] - right_[i]) * w;
}

}  // namespace whitney
