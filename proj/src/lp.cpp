#include "whitney/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "whitney/error.hpp"

namespace whitney {

void axpy(LinearForm& a, const Rational& scale, const LinearForm& b) {
    if (scale.is_zero() || b.empty()) return;
    LinearForm out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].var < b[j].var)) {
            out.push_back(std::move(a[i++]));
        } else if (i == a.size() || b[j].var < a[i].var) {
            out.push_back({b[j].var, scale * b[j].coef});
            ++j;
        } else {
            Rational c = a[i].coef + scale * b[j].coef;
            if (!c.is_zero()) out.push_back({a[i].var, std::move(c)});
            ++i;
            ++j;
        }
    }
    a = std::move(out);
}

Rational evaluate_form(const LinearForm& form, const std::vector<Rational>& values) {
    Rational s(0);
    for (const auto& t : form) s += t.coef * values.at(t.var);
    return s;
}

double evaluate_form(const LinearForm& form, const std::vector<double>& values) {
    double s = 0;
    for (const auto& t : form) s += t.coef.to_double() * values.at(t.var);
    return s;
}

const char* to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Stalled: return "stalled";
    }
    return "?";
}

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-9;
constexpr double kFeasEps = 1e-7;

class Tableau {
public:
    Tableau(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0), rhs_(rows, 0.0),
                                        basis_(rows, 0), obj_(cols, 0.0) {}

    double& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    double at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    double& rhs(size_t r) { return rhs_[r]; }
    size_t& basis(size_t r) { return basis_[r]; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    /// Installs costs c (maximize c·x) as reduced costs z_j - c_j.
    void set_objective(const std::vector<double>& c) {
        obj_.assign(cols_, 0.0);
        obj_value_ = 0.0;
        for (size_t j = 0; j < cols_; ++j) obj_[j] = -c[j];
        for (size_t r = 0; r < rows_; ++r) {
            double cb = c[basis_[r]];
            if (cb == 0.0) continue;
            for (size_t j = 0; j < cols_; ++j) obj_[j] += cb * at(r, j);
            obj_value_ += cb * rhs_[r];
        }
    }

    void pivot(size_t r, size_t c) {
        double p = at(r, c);
        double* row = &a_[r * cols_];
        for (size_t j = 0; j < cols_; ++j) row[j] /= p;
        rhs_[r] /= p;
        row[c] = 1.0;
        for (size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            double f = at(i, c);
            if (f == 0.0) continue;
            double* other = &a_[i * cols_];
            for (size_t j = 0; j < cols_; ++j) other[j] -= f * row[j];
            other[c] = 0.0;
            rhs_[i] -= f * rhs_[r];
        }
        double f = obj_[c];
        if (f != 0.0) {
            for (size_t j = 0; j < cols_; ++j) obj_[j] -= f * row[j];
            obj_[c] = 0.0;
            obj_value_ -= f * rhs_[r];
        }
        basis_[r] = c;
    }

    enum class Outcome { Optimal, Unbounded, Stalled };

    /// Bland's rule: lowest-index improving column, lowest-index basic
    /// variable among ratio-test ties.
    Outcome run(size_t allowed_cols, long& iterations, long max_iterations) {
        while (true) {
            size_t enter = cols_;
            for (size_t j = 0; j < allowed_cols; ++j)
                if (obj_[j] < -kCostEps) { enter = j; break; }
            if (enter == cols_) return Outcome::Optimal;
            if (iterations >= max_iterations) return Outcome::Stalled;
            size_t leave = rows_;
            double best = std::numeric_limits<double>::infinity();
            for (size_t r = 0; r < rows_; ++r) {
                double a = at(r, enter);
                if (a <= kPivotEps) continue;
                double ratio = std::max(0.0, rhs_[r]) / a;
                if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && leave < rows_ && basis_[r] < basis_[leave])) {
                    if (ratio < best) best = ratio;
                    leave = r;
                }
            }
            if (leave == rows_) return Outcome::Unbounded;
            pivot(leave, enter);
            ++iterations;
        }
    }

    double objective_value() const { return obj_value_; }

private:
    size_t rows_, cols_;
    std::vector<double> a_;
    std::vector<double> rhs_;
    std::vector<size_t> basis_;
    std::vector<double> obj_;
    double obj_value_ = 0.0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, long max_iterations) {
    const size_t nv = static_cast<size_t>(lp.num_vars);
    for (const auto& c : lp.constraints)
        for (const auto& t : c.form)
            if (t.var < 0 || static_cast<size_t>(t.var) >= nv)
                throw Error(ErrorKind::InvalidArgument, "constraint '" + c.label + "' references an unknown variable");

    const size_t m = lp.constraints.size();
    const size_t n_struct = 2 * nv;  // x = u - v, u, v >= 0
    size_t n_slack = 0, n_art = 0;
    std::vector<bool> flip(m, false), needs_art(m, false);
    for (size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        flip[i] = c.rhs.sign() < 0;
        if (c.relation == Relation::LessEqual) ++n_slack;
        needs_art[i] = c.relation == Relation::Equal || flip[i];
        if (needs_art[i]) ++n_art;
    }
    const size_t art_begin = n_struct + n_slack;
    Tableau tab(m, art_begin + n_art);

    size_t slack = n_struct, art = art_begin;
    for (size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        double sgn = flip[i] ? -1.0 : 1.0;
        for (const auto& t : c.form) {
            double v = sgn * t.coef.to_double();
            tab.at(i, 2 * t.var) += v;
            tab.at(i, 2 * t.var + 1) -= v;
        }
        tab.rhs(i) = sgn * c.rhs.to_double();
        if (c.relation == Relation::LessEqual) {
            tab.at(i, slack) = sgn;
            if (!needs_art[i]) tab.basis(i) = slack;
            ++slack;
        }
        if (needs_art[i]) {
            tab.at(i, art) = 1.0;
            tab.basis(i) = art++;
        }
    }

    LpSolution sol;
    const size_t cols = tab.cols();
    if (n_art > 0) {
        std::vector<double> phase1(cols, 0.0);
        for (size_t j = art_begin; j < cols; ++j) phase1[j] = -1.0;
        tab.set_objective(phase1);
        auto out = tab.run(cols, sol.iterations, max_iterations);
        if (out == Tableau::Outcome::Stalled) {
            sol.status = LpStatus::Stalled;
            return sol;
        }
        if (tab.objective_value() < -kFeasEps) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Drive remaining artificials out of the basis where possible.
        for (size_t r = 0; r < m; ++r) {
            if (tab.basis(r) < art_begin) continue;
            for (size_t j = 0; j < art_begin; ++j) {
                if (std::abs(tab.at(r, j)) > kPivotEps) {
                    tab.pivot(r, j);
                    break;
                }
            }
        }
    }

    std::vector<double> cost(cols, 0.0);
    for (const auto& t : lp.objective) {
        cost[2 * t.var] += t.coef.to_double();
        cost[2 * t.var + 1] -= t.coef.to_double();
    }
    tab.set_objective(cost);
    auto out = tab.run(art_begin, sol.iterations, max_iterations);
    if (out == Tableau::Outcome::Stalled) {
        sol.status = LpStatus::Stalled;
        return sol;
    }
    if (out == Tableau::Outcome::Unbounded) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }
    std::vector<double> col_value(cols, 0.0);
    for (size_t r = 0; r < m; ++r) col_value[tab.basis(r)] = tab.rhs(r);
    sol.values.resize(nv);
    for (size_t v = 0; v < nv; ++v) sol.values[v] = col_value[2 * v] - col_value[2 * v + 1];
    sol.objective = evaluate_form(lp.objective, sol.values);
    sol.status = LpStatus::Optimal;
    return sol;
}

}  // namespace whitney
