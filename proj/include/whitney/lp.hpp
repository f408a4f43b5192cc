#pragma once

#include <string>
#include <vector>

#include "whitney/rational.hpp"

namespace whitney {

struct LinearTerm {
    int var;
    Rational coef;

    friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

/// Sparse linear form, sorted by variable, no zero coefficients.
using LinearForm = std::vector<LinearTerm>;

/// a += scale * b, keeping the canonical sorted/nonzero shape.
void axpy(LinearForm& a, const Rational& scale, const LinearForm& b);

Rational evaluate_form(const LinearForm& form, const std::vector<Rational>& values);
double evaluate_form(const LinearForm& form, const std::vector<double>& values);

enum class Relation { LessEqual, Equal };

struct LinearConstraint {
    LinearForm form;
    Relation relation = Relation::LessEqual;
    Rational rhs;
    std::string label;
};

/// maximize objective · x subject to constraints; variables are free.
/// Coefficients are exact; they are rendered to double only inside solve_lp.
struct LinearProgram {
    int num_vars = 0;
    std::vector<LinearConstraint> constraints;
    LinearForm objective;
};

enum class LpStatus { Optimal, Unbounded, Infeasible, Stalled };

const char* to_string(LpStatus status);

struct LpSolution {
    LpStatus status = LpStatus::Stalled;
    std::vector<double> values;
    double objective = 0;
    long iterations = 0;
};

/// Dense two-phase primal simplex with Bland's rule; deterministic.
LpSolution solve_lp(const LinearProgram& lp, long max_iterations = 500000);

}  // namespace whitney
