#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "whitney/differences.hpp"
#include "whitney/io.hpp"
#include "whitney/piecewise.hpp"

namespace whitney::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsageError = 2 };

/// Runs the command line (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Human-readable "p/q (float)" rendering.
std::string show(const Rational& r);
std::string describe(const Configuration& c);

/// Hand-checkable relaxed configurations of the worked example, each
/// of modulus value 1.
struct HandWitness {
    std::string label;
    Configuration configuration;
    Rational expected;
};
std::vector<HandWitness> worked_example_witnesses();

/// Report behind verify-example; exit_code follows the CLI contract.
Json verify_example_report(ModulusMode mode, unsigned workers, int& exit_code);

struct IdentityTally {
    std::string name;
    int passed = 0;
    int failed = 0;
    int resampled = 0;
};

struct IdentitySuite {
    std::vector<IdentityTally> tallies;
    std::vector<Json> verdicts;
    bool ok() const;
};

/// `trials` exact checks of each identity at random rational arguments.
/// Identities that need oscillation on Z are skipped (zero checks) when f
/// lacks it. Non-generic or polar draws are redrawn and counted as resampled.
IdentitySuite identity_suite(const PiecewiseFunction& f, int k, int trials, std::uint64_t seed);

struct PropertyStats {
    int k = 0;
    int trials = 0;
    Rational bound;
    Rational max_pointwise;
    Rational max_relaxed;
    int violations_pointwise = 0;
    int violations_relaxed = 0;
    std::vector<std::string> dumped;
};

/// Seed of the i-th random function of a run.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

/// Ratios of random oscillating functions (h = 1) against the upper bound
/// (1 + H_k)/binom(2k,k) in both modes. Violations are written to dump_dir
/// when it is non-empty.
PropertyStats property_suite(int k, int trials, std::uint64_t seed, int complexity, unsigned workers,
                             const std::string& dump_dir);

std::string bounds_csv(int kmax);

/// x,kind,value,x_float,value_float rows: `samples` generic samples over
/// the support, then below/exact/above rows at breakpoints and spike rows.
std::string plot_csv(const PiecewiseFunction& f, int samples);

std::string vertex_csv(const std::vector<VertexValue>& values);

}  // namespace whitney::cli
