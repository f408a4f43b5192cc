#include "whitney/extremal_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "whitney/bounds.hpp"
#include "whitney/error.hpp"

namespace whitney {

namespace {

[[noreturn]] void bad_geometry(const std::string& what) { throw Error(ErrorKind::InvalidGeometry, what); }

bool sorted_contains(const std::vector<Rational>& v, const Rational& x) {
    return std::binary_search(v.begin(), v.end(), x);
}

size_t index_of(const std::vector<Rational>& v, const Rational& x) {
    return static_cast<size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
}

bool form_less(const LinearForm& a, const LinearForm& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const LinearTerm& x, const LinearTerm& y) {
                                            if (x.var != y.var) return x.var < y.var;
                                            return x.coef < y.coef;
                                        });
}

// Refined upper bound for W*_2 at the crossing 2 - sqrt(3): 7 sqrt(3) - 23/2.
const double kRefinedUpperW2 = 7.0 * std::sqrt(3.0) - 11.5;

}  // namespace

void SearchGeometry::validate() const {
    if (k < 1) bad_geometry("k must be >= 1");
    if (h.sign() <= 0) bad_geometry("h must be positive");
    if (grid.size() < 2) bad_geometry("grid needs at least two nodes");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i - 1] < grid[i])) bad_geometry("grid[" + std::to_string(i) + "] is not strictly increasing");
    if (!(grid.front() / h).is_integer() || !(grid.back() / h).is_integer())
        bad_geometry("grid must start and end on multiples of h");
    for (Rational p = grid.front(); p <= grid.back(); p += h)
        if (!sorted_contains(grid, p)) bad_geometry("grid misses the cell boundary " + p.str());
    for (size_t i = 0; i < spike_positions.size(); ++i) {
        const auto& s = spike_positions[i];
        if (i > 0 && !(spike_positions[i - 1] < s))
            bad_geometry("spikes[" + std::to_string(i) + "] is not strictly increasing");
        if (s < grid.front() || s > grid.back()) bad_geometry("spike " + s.str() + " lies outside the grid");
    }
    if (!sorted_contains(grid, objective_point) && !sorted_contains(spike_positions, objective_point))
        bad_geometry("objective point " + objective_point.str() + " is neither a grid node nor a spike");
}

LinearForm SearchGeometry::value_form(const Rational& x, Side side) const {
    if (side == Side::Exact && sorted_contains(spike_positions, x))
        return {{spike_var(index_of(spike_positions, x)), Rational(1)}};
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    if (it == grid.begin()) return {};
    size_t i = static_cast<size_t>(it - grid.begin()) - 1;
    if (grid[i] == x) return {{side == Side::Below ? left_var(i) : right_var(i), Rational(1)}};
    if (i + 1 == grid.size()) return {};
    Rational width = grid[i + 1] - grid[i];
    return {{right_var(i), (grid[i + 1] - x) / width}, {left_var(i + 1), (x - grid[i]) / width}};
}

PiecewiseFunction SearchGeometry::function_from_values(std::vector<Rational> values) const {
    if (values.size() != static_cast<size_t>(num_vars()))
        throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(num_vars()) + " values");
    values[left_var(0)] = 0;
    values[right_var(grid.size() - 1)] = 0;
    std::vector<Breakpoint> bps;
    for (size_t i = 0; i < grid.size(); ++i) bps.push_back({grid[i], values[left_var(i)], values[right_var(i)]});
    std::vector<Spike> sps;
    for (size_t s = 0; s < spike_positions.size(); ++s) sps.push_back({spike_positions[s], values[spike_var(s)]});
    return PiecewiseFunction::make(std::move(bps), std::move(sps));
}

std::vector<Rational> SearchGeometry::values_from_function(const PiecewiseFunction& f) const {
    for (const auto& b : f.breakpoints())
        if (!sorted_contains(grid, b.position)) bad_geometry("breakpoint " + b.position.str() + " is off the grid");
    for (const auto& s : f.spikes())
        if (!sorted_contains(spike_positions, s.position))
            bad_geometry("spike " + s.position.str() + " is not a geometry spike");
    std::vector<Rational> values(num_vars());
    for (size_t i = 0; i < grid.size(); ++i) {
        values[left_var(i)] = f.evaluate(grid[i], Side::Below);
        values[right_var(i)] = f.evaluate(grid[i], Side::Above);
    }
    for (size_t s = 0; s < spike_positions.size(); ++s) values[spike_var(s)] = f.evaluate(spike_positions[s]);
    return values;
}

SearchGeometry uniform_geometry(int k, const Rational& h, const Rational& lo, const Rational& hi,
                                const Rational& step, std::vector<Rational> spikes, const Rational& objective) {
    if (step.sign() <= 0 || !(lo < hi)) bad_geometry("uniform grid needs lo < hi and a positive step");
    SearchGeometry g;
    g.k = k;
    g.h = h;
    for (Rational p = lo; p <= hi; p += step) g.grid.push_back(p);
    if (g.grid.back() != hi) bad_geometry("step does not divide the grid span");
    std::sort(spikes.begin(), spikes.end());
    g.spike_positions = std::move(spikes);
    g.objective_point = objective;
    g.validate();
    return g;
}

SearchGeometry reference_geometry() {
    return uniform_geometry(1, Rational(1), Rational(-1), Rational(2), Rational(1, 4), {Rational(1, 4)},
                            Rational(1, 4));
}

LinearProgram ExtremalProblem::lp_with(const std::vector<size_t>& active_rows) const {
    LinearProgram lp;
    lp.num_vars = geometry.num_vars();
    lp.objective = objective;
    lp.constraints = equalities;
    lp.constraints.insert(lp.constraints.end(), box.begin(), box.end());
    for (size_t r : active_rows) {
        const auto& row = modulus_rows.at(r);
        LinearForm neg;
        axpy(neg, Rational(-1), row.form);
        std::string label = "modulus[" + std::to_string(r) + "]";
        lp.constraints.push_back({row.form, Relation::LessEqual, Rational(1), label + "+"});
        lp.constraints.push_back({std::move(neg), Relation::LessEqual, Rational(1), label + "-"});
    }
    return lp;
}

LinearProgram ExtremalProblem::full_lp() const {
    std::vector<size_t> all(modulus_rows.size());
    std::iota(all.begin(), all.end(), size_t{0});
    return lp_with(all);
}

ExtremalProblem build_problem(const SearchGeometry& geometry) {
    geometry.validate();
    ExtremalProblem p;
    p.geometry = geometry;
    const auto& grid = geometry.grid;
    const size_t last = grid.size() - 1;

    p.equalities.push_back({{{geometry.left_var(0), Rational(1)}}, Relation::Equal, Rational(0), "left boundary"});
    p.equalities.push_back({{{geometry.right_var(last), Rational(1)}}, Relation::Equal, Rational(0), "right boundary"});
    // One trapezoid sum per cell [jh, (j+1)h]; cell boundaries are grid nodes.
    LinearForm cell;
    Rational cell_end = grid.front() + geometry.h;
    for (size_t i = 0; i < last; ++i) {
        Rational half_width = (grid[i + 1] - grid[i]) / Rational(2);
        axpy(cell, half_width, {{geometry.right_var(i), Rational(1)}});
        axpy(cell, half_width, {{geometry.left_var(i + 1), Rational(1)}});
        if (grid[i + 1] == cell_end) {
            p.equalities.push_back({std::move(cell), Relation::Equal, Rational(0),
                                    "oscillation on [" + (cell_end - geometry.h).str() + ", " + cell_end.str() + "]"});
            cell = {};
            cell_end += geometry.h;
        }
    }

    for (int v = 0; v < geometry.num_vars(); ++v) {
        p.box.push_back({{{v, Rational(1)}}, Relation::LessEqual, Rational(kBoxBound), "box+"});
        p.box.push_back({{{v, Rational(-1)}}, Relation::LessEqual, Rational(kBoxBound), "box-"});
    }

    const int order = 2 * geometry.k;
    auto scheme = DifferenceScheme::central(order);
    std::vector<ModulusRow> rows;
    for (const auto& vertex : critical_vertices(grid, geometry.spike_positions, order, geometry.h)) {
        for (auto& cfg : configurations_at(vertex, scheme, geometry.h, ModulusMode::Relaxed)) {
            LinearForm form;
            for (int j = 0; j <= order; ++j)
                axpy(form, scheme.coefficients[j],
                     geometry.value_form(cfg.x + scheme.offsets[j] * cfg.t, cfg.sides[j]));
            if (form.empty()) continue;
            if (form.front().coef.sign() < 0) {
                LinearForm neg;
                axpy(neg, Rational(-1), form);
                form = std::move(neg);
            }
            rows.push_back({std::move(form), std::move(cfg)});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ModulusRow& a, const ModulusRow& b) {
        return form_less(a.form, b.form);
    });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const ModulusRow& a, const ModulusRow& b) { return a.form == b.form; }),
               rows.end());
    p.modulus_rows = std::move(rows);
    p.objective = geometry.value_form(geometry.objective_point, Side::Exact);
    return p;
}

LinearProgram build_lp(const SearchGeometry& geometry) { return build_problem(geometry).full_lp(); }

Certificate certify_function(const SearchGeometry& geometry, const PiecewiseFunction& f) {
    if (!is_oscillating(f, geometry.h))
        throw Error(ErrorKind::RequiresOscillation, "certificate function must oscillate on the grid h*Z");
    const int order = 2 * geometry.k;
    auto raw = modulus_exact(f, order, geometry.h, ModulusMode::Relaxed);
    auto raw_norm = sup_norm(f).value;
    if (raw.value.is_zero())
        throw Error(ErrorKind::DegenerateInput,
                    "relaxed modulus vanishes (norm " + raw_norm.str() + "); nothing to certify");
    Certificate cert;
    cert.geometry = geometry;
    cert.function = scale_values(f, Rational(1) / raw.value);
    cert.modulus = modulus_exact(cert.function, order, geometry.h, ModulusMode::Relaxed).value;
    cert.norm = sup_norm(cert.function).value;
    cert.ratio = cert.norm / cert.modulus;

    auto bounds = whitney_bounds(geometry.k);
    if (cert.ratio > bounds.upper)
        throw Error(ErrorKind::BoundViolation, "certified ratio " + cert.ratio.str() + " exceeds the proven bound " +
                                                   bounds.upper.str() + "; implementation error");
    if (geometry.k == 1 && cert.ratio.to_double() > kRefinedUpperW2 + 1e-9)
        throw Error(ErrorKind::BoundViolation, "certified ratio " + cert.ratio.str() +
                                                   " exceeds the refined bound 7*sqrt(3) - 23/2; implementation error");
    return cert;
}

Certificate certify(const SearchGeometry& geometry, const std::vector<double>& values, CertifyOptions options) {
    std::vector<Rational> exact;
    exact.reserve(values.size());
    for (double v : values) exact.push_back(Rational::from_double(v, options.denominator_cap));
    auto f = make_oscillating(geometry.function_from_values(std::move(exact)), geometry.h);
    return certify_function(geometry, f);
}

CertificateReplay replay_certificate(const Certificate& cert) {
    CertificateReplay r;
    const auto& g = cert.geometry;
    r.oscillating = is_oscillating(cert.function, g.h);
    auto mod = modulus_exact(cert.function, 2 * g.k, g.h, ModulusMode::Relaxed).value;
    auto norm = sup_norm(cert.function).value;
    r.modulus_matches = mod == cert.modulus;
    r.norm_matches = norm == cert.norm;
    r.ratio_matches = !mod.is_zero() && norm / mod == cert.ratio;
    return r;
}

SearchResult search(const SearchGeometry& geometry, int max_rounds, SearchOptions options) {
    if (max_rounds < 1) throw Error(ErrorKind::InvalidArgument, "max_rounds must be >= 1");
    auto problem = build_problem(geometry);
    SearchResult result;
    result.total_modulus_rows = problem.modulus_rows.size();

    std::vector<std::vector<std::pair<int, double>>> float_rows;
    float_rows.reserve(problem.modulus_rows.size());
    for (const auto& row : problem.modulus_rows) {
        std::vector<std::pair<int, double>> fr;
        for (const auto& t : row.form) fr.emplace_back(t.var, t.coef.to_double());
        float_rows.push_back(std::move(fr));
    }

    // Seed: every row witnessed on the top edge t = h of the strip.
    std::vector<bool> active(problem.modulus_rows.size(), false);
    std::vector<size_t> active_rows;
    for (size_t r = 0; r < problem.modulus_rows.size(); ++r) {
        if (problem.modulus_rows[r].witness.t == geometry.h) {
            active[r] = true;
            active_rows.push_back(r);
        }
    }

    bool have_best = false;
    for (int round = 1; round <= max_rounds; ++round) {
        auto sol = solve_lp(problem.lp_with(active_rows));
        if (sol.status != LpStatus::Optimal)
            throw Error(ErrorKind::DegenerateInput,
                        std::string("LP round ") + std::to_string(round) + " ended " + to_string(sol.status) +
                            " after " + std::to_string(sol.iterations) + " iterations");
        RoundTrace tr;
        tr.round = round;
        tr.active_rows = active_rows.size();
        tr.lp_objective = sol.objective;
        tr.lp_iterations = sol.iterations;
        try {
            auto cert = certify(geometry, sol.values, options.certify);
            tr.certified_ratio = cert.ratio;
            if (!have_best || cert.ratio > result.best.ratio) {
                result.best = std::move(cert);
                have_best = true;
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateInput) throw;
        }

        // Separation over the full row set.
        std::vector<std::pair<double, size_t>> violated;
        for (size_t r = 0; r < float_rows.size(); ++r) {
            if (active[r]) continue;
            double s = 0;
            for (const auto& [v, c] : float_rows[r]) s += c * sol.values[v];
            double viol = std::abs(s) - 1.0;
            if (viol > options.tolerance) violated.emplace_back(viol, r);
        }
        tr.violated_rows = violated.size();
        if (!violated.empty()) {
            std::sort(violated.begin(), violated.end(),
                      [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
            tr.max_violation = violated.front().first;
        }
        result.trace.push_back(tr);
        if (violated.empty()) {
            result.converged = true;
            break;
        }
        size_t take = std::min(options.max_rows_per_round, violated.size());
        for (size_t i = 0; i < take; ++i) {
            active[violated[i].second] = true;
            active_rows.push_back(violated[i].second);
        }
        if (round == max_rounds) result.round_limit_reached = true;
    }
    if (!have_best) throw Error(ErrorKind::DegenerateInput, "no round produced a certifiable function");
    return result;
}

}  // namespace whitney
