#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "whitney/bounds.hpp"
#include "whitney/error.hpp"
#include "whitney/extremal_search.hpp"
#include "whitney/steklov.hpp"

namespace whitney::cli {

namespace {

std::string fmt15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string sides_text(const std::vector<Side>& sides) {
    std::string s = "[";
    for (size_t i = 0; i < sides.size(); ++i) {
        if (i) s += ", ";
        s += to_string(sides[i]);
    }
    return s + "]";
}

Json exact(const Rational& r) { return Json{{"exact", r.str()}, {"float", float15(r)}}; }

Rational draw(std::mt19937_64& rng, const Rational& lo, const Rational& hi, long max_den) {
    long den = std::uniform_int_distribution<long>(1, max_den)(rng);
    Rational a = lo * Rational(den), b = hi * Rational(den);
    long first = a.ceil().get_si(), last = b.floor().get_si();
    long num = std::uniform_int_distribution<long>(first, last)(rng);
    return Rational(num, den);
}

}  // namespace

std::string show(const Rational& r) { return r.str() + " (" + fmt15(r.to_double()) + ")"; }

std::string describe(const Configuration& c) {
    std::string s;
    if (c.is_point)
        s = "point (" + c.x.str() + ", " + c.t.str() + ")";
    else
        s = "limit at (" + c.x.str() + ", " + c.t.str() + ") along (" + c.dx.str() + ", " + c.dt.str() + ")";
    return s + " sides " + sides_text(c.sides);
}

std::vector<HandWitness> worked_example_witnesses() {
    const Rational quarter(1, 4);
    HandWitness low{"spike-pinned at t=0+", {quarter, Rational(0), false, Rational(0), Rational(1),
                                             {Side::Below, Side::Exact, Side::Above}}, Rational(1)};
    HandWitness high{"spike-pinned at t=1-", {quarter, Rational(1), false, Rational(0), Rational(-1),
                                              {Side::Above, Side::Exact, Side::Below}}, Rational(1)};
    return {low, high};
}

Json verify_example_report(ModulusMode mode, unsigned workers, int& exit_code) {
    const PiecewiseFunction f = worked_example();
    const Rational h(1);
    Json r;
    r["subcommand"] = "verify-example";
    r["inputs"] = {{"function", "worked_example"}, {"k", 1}, {"h", "1"}, {"mode", to_string(mode)}};

    Json res;
    bool integrals_zero = true;
    Json cells = Json::array();
    for (const auto& c : check_oscillation(f, h)) {
        cells.push_back({{"cell", c.index}, {"integral", c.integral.str()}, {"integral_float", float15(c.integral)}});
        integrals_zero = integrals_zero && c.integral.is_zero();
    }
    res["cell_integrals"] = cells;
    SupNorm norm = sup_norm(f);
    res["sup_norm"] = {{"exact", norm.value.str()}, {"float", float15(norm.value)}, {"at", norm.witness.str()}};

    ModulusReport pw = modulus_exact(f, 2, h, ModulusMode::Pointwise, workers);
    ModulusReport rx = modulus_exact(f, 2, h, ModulusMode::Relaxed, workers);
    res["pointwise_modulus"] = modulus_report_to_json(pw);
    res["relaxed_modulus"] = modulus_report_to_json(rx);

    Json hands = Json::array();
    bool hands_ok = true;
    for (const auto& w : worked_example_witnesses()) {
        Rational v = central_difference(f, 2, w.configuration.t, w.configuration.x, w.configuration.sides);
        bool ok = abs(v) == w.expected;
        hands_ok = hands_ok && ok;
        Json jw = configuration_to_json(w.configuration);
        jw["label"] = w.label;
        jw["signed_value"] = v.str();
        jw["matches"] = ok;
        hands.push_back(jw);
    }
    res["hand_witnesses"] = hands;

    const ModulusReport& chosen = mode == ModulusMode::Relaxed ? rx : pw;
    Rational ratio = norm.value / chosen.value;
    res["ratio"] = exact(ratio);
    r["results"] = res;

    bool norm_ok = norm.value == Rational(43, 74);
    bool modulus_one = chosen.value == Rational(1);
    r["verdicts"] = {{"integrals_zero", integrals_zero},
                     {"norm_is_43/74", norm_ok},
                     {"hand_witnesses_reach_1", hands_ok},
                     {"modulus_is_1", modulus_one}};
    exit_code = integrals_zero && norm_ok && modulus_one ? kOk : kVerificationFailed;
    return r;
}

bool IdentitySuite::ok() const {
    for (const auto& t : tallies)
        if (t.failed) return false;
    return true;
}

IdentitySuite identity_suite(const PiecewiseFunction& f, int k, int trials, std::uint64_t seed) {
    IdentitySuite suite;
    std::mt19937_64 rng(seed);
    auto range = f.support().value_or(std::pair<Rational, Rational>{Rational(0), Rational(1)});
    const Rational lo = range.first - Rational(1), hi = range.second + Rational(1);
    const bool on_z = is_oscillating(f, Rational(1));
    constexpr int kMaxRedraws = 10000;

    auto run = [&](const std::string& name, bool applicable, const std::function<std::pair<Json, IdentityCheck>()>& once) {
        IdentityTally tally{name};
        if (applicable) {
            for (int i = 0; i < trials; ++i) {
                for (int attempt = 0;; ++attempt) {
                    try {
                        auto [query, check] = once();
                        query["identity"] = name;
                        query["k"] = k;
                        (check.equal ? tally.passed : tally.failed)++;
                        suite.verdicts.push_back(identity_to_json(query, check));
                        break;
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::RequiresGenericPoint && e.kind() != ErrorKind::RequiresNonpole) throw;
                        if (attempt >= kMaxRedraws) throw;
                        ++tally.resampled;
                    }
                }
            }
        }
        suite.tallies.push_back(tally);
    };

    run("integral-representation", true, [&] {
        Rational h1 = draw(rng, Rational(0), Rational(1), 12), h2 = draw(rng, Rational(0), Rational(1), 12);
        Rational x = draw(rng, lo, hi, 12), y = draw(rng, lo, hi, 12);
        Json q = {{"h1", h1.str()}, {"h2", h2.str()}, {"x", x.str()}, {"y", y.str()}};
        return std::pair{q, check_integral_representation(f, k, h1, h2, x, y)};
    });
    run("integral-identity", on_z, [&] {
        Rational x = draw(rng, lo, hi, 12);
        return std::pair{Json{{"x", x.str()}}, integral_identity_check(f, k, x)};
    });
    run("remainder-decomposition", true, [&] {
        Rational x = draw(rng, lo, hi, 12);
        return std::pair{Json{{"x", x.str()}}, remainder_decomposition_check(f, k, x)};
    });
    run("integer-point", on_z, [&] {
        long j = std::uniform_int_distribution<long>(lo.floor().get_si(), hi.ceil().get_si())(rng);
        return std::pair{Json{{"j", j}}, integer_point_identity(f, k, j)};
    });
    run("product", true, [&] {
        Rational x = draw(rng, Rational(-k - 1), Rational(k + 1), 12);
        return std::pair{Json{{"x", x.str()}}, product_identity_check(x, k)};
    });
    return suite;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
    return seed * 1000003ULL + static_cast<std::uint64_t>(trial);
}

PropertyStats property_suite(int k, int trials, std::uint64_t seed, int complexity, unsigned workers,
                             const std::string& dump_dir) {
    PropertyStats st;
    st.k = k;
    st.trials = trials;
    st.bound = whitney_bounds(k).upper;
    const Rational h(1);
    for (int i = 0; i < trials; ++i) {
        PiecewiseFunction f = random_oscillating(trial_seed(seed, i), h, complexity);
        Rational norm = sup_norm(f).value;
        for (ModulusMode mode : {ModulusMode::Pointwise, ModulusMode::Relaxed}) {
            ModulusReport rep = modulus_exact(f, 2 * k, h, mode, workers);
            if (rep.value.is_zero()) throw Error(ErrorKind::DegenerateInput, "random function with zero modulus");
            Rational ratio = norm / rep.value;
            bool pointwise = mode == ModulusMode::Pointwise;
            Rational& best = pointwise ? st.max_pointwise : st.max_relaxed;
            if (ratio > best) best = ratio;
            if (ratio <= st.bound) continue;
            (pointwise ? st.violations_pointwise : st.violations_relaxed)++;
            if (dump_dir.empty()) continue;
            std::filesystem::create_directories(dump_dir);
            std::string path = dump_dir + "/counterexample_k" + std::to_string(k) + "_seed" +
                               std::to_string(trial_seed(seed, i)) + "_" + to_string(mode) + ".json";
            Json dump;
            dump["function"] = function_to_json(f);
            dump["k"] = k;
            dump["mode"] = to_string(mode);
            dump["ratio"] = ratio.str();
            dump["bound"] = st.bound.str();
            dump["modulus"] = modulus_report_to_json(rep);
            write_text_file(path, dump.dump(2) + "\n");
            st.dumped.push_back(path);
        }
    }
    return st;
}

std::string bounds_csv(int kmax) {
    std::ostringstream os;
    os << "k,lower,upper,lower_float,upper_float\n";
    for (const auto& b : bounds_table(kmax))
        os << b.k << ',' << b.lower.str() << ',' << b.upper.str() << ',' << fmt15(b.lower.to_double()) << ','
           << fmt15(b.upper.to_double()) << '\n';
    return os.str();
}

std::string plot_csv(const PiecewiseFunction& f, int samples) {
    if (samples < 0) throw Error(ErrorKind::InvalidArgument, "samples must be non-negative");
    struct Row {
        Rational x;
        int order;
        std::string kind;
        Rational value;
    };
    std::vector<Row> rows;
    if (auto range = f.support()) {
        const auto [lo, hi] = *range;
        const Rational width = hi - lo;
        for (int i = 0; i < samples && width.sign() > 0; ++i) {
            Rational x = lo + width * Rational(2 * i + 1, 2L * samples);
            Rational nudge = width / Rational(7L * samples);
            while (f.breakpoint_at(x) || f.spike_at(x)) {
                x += nudge;
                nudge /= Rational(2);
            }
            rows.push_back({x, 0, "sample", f.evaluate(x)});
        }
        for (const auto& b : f.breakpoints()) {
            rows.push_back({b.position, 1, "below", b.left_limit});
            rows.push_back({b.position, 2, "exact", f.evaluate(b.position)});
            rows.push_back({b.position, 3, "above", b.right_value});
        }
        for (const auto& s : f.spikes()) rows.push_back({s.position, 4, "spike", s.value});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.order < b.order;
    });
    std::ostringstream os;
    os << "x,kind,value,x_float,value_float\n";
    for (const auto& r : rows)
        os << r.x.str() << ',' << r.kind << ',' << r.value.str() << ',' << fmt15(r.x.to_double()) << ','
           << fmt15(r.value.to_double()) << '\n';
    return os.str();
}

std::string vertex_csv(const std::vector<VertexValue>& values) {
    std::ostringstream os;
    os << "x,t,value,x_float,t_float,value_float\n";
    for (const auto& v : values)
        os << v.x.str() << ',' << v.t.str() << ',' << v.value.str() << ',' << fmt15(v.x.to_double()) << ','
           << fmt15(v.t.to_double()) << ',' << fmt15(v.value.to_double()) << '\n';
    return os.str();
}

namespace {

struct Common {
    bool json = false;
    bool timing = false;
    unsigned workers = 1;
};

void add_common(CLI::App* sub, Common& c, bool with_workers) {
    sub->add_flag("--json", c.json, "Emit a JSON run report");
    sub->add_flag("--timing", c.timing, "Include wall-clock timing");
    if (with_workers) sub->add_option("--workers", c.workers, "Worker threads for vertex scans")->check(CLI::Range(1u, 256u));
}

Rational parse_arg(const std::string& text, const std::string& flag) {
    try {
        return Rational::parse(text);
    } catch (const Error& e) {
        throw Error(ErrorKind::InvalidArgument, flag + ": " + e.detail());
    }
}

PiecewiseFunction load_function(const std::string& path) {
    Json j = read_json_file(path);
    try {
        return function_from_json(j);
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.detail());
    }
}

int cmd_verify(const Common& c, const std::string& mode_text, std::ostream& out) {
    int code = kOk;
    Json r = verify_example_report(parse_modulus_mode(mode_text), c.workers, code);
    r["exit_code"] = code;
    if (c.json) {
        out << r.dump(2) << '\n';
        return code;
    }
    const Json& res = r["results"];
    out << "worked example, k = 1, h = 1, mode " << mode_text << '\n';
    for (const auto& cell : res["cell_integrals"])
        out << "  integral over cell " << cell["cell"].get<long>() << ": " << cell["integral"].get<std::string>() << '\n';
    out << "  sup-norm: " << res["sup_norm"]["exact"].get<std::string>() << " ("
        << fmt15(res["sup_norm"]["float"].get<double>()) << ") at x = " << res["sup_norm"]["at"].get<std::string>() << '\n';
    const PiecewiseFunction f = worked_example();
    for (auto m : {ModulusMode::Pointwise, ModulusMode::Relaxed}) {
        ModulusReport rep = modulus_exact(f, 2, Rational(1), m, c.workers);
        out << "  " << to_string(m) << " modulus: " << show(rep.value) << '\n';
        out << "    witness: " << describe(rep.witness.configuration) << ", signed value "
            << rep.witness.signed_value.str() << '\n';
    }
    for (const auto& w : res["hand_witnesses"])
        out << "  hand witness (" << w["label"].get<std::string>() << "): " << w["signed_value"].get<std::string>()
            << (w["matches"].get<bool>() ? "" : " MISMATCH") << '\n';
    out << "  ratio: " << res["ratio"]["exact"].get<std::string>() << " (" << fmt15(res["ratio"]["float"].get<double>())
        << ")\n";
    if (code == kOk) {
        out << "verified\n";
    } else {
        const Json& m = res[mode_text == "relaxed" ? "relaxed_modulus" : "pointwise_modulus"];
        out << "verification failed: " << mode_text << " modulus is " << m["value"].get<std::string>()
            << ", not 1\n";
    }
    return code;
}

int cmd_modulus(const Common& c, const std::string& input, int order, const std::string& scale,
                const std::string& mode_text, const std::string& vertices_out, std::ostream& out) {
    PiecewiseFunction f = load_function(input);
    Rational h = parse_arg(scale, "--scale");
    ModulusMode mode = parse_modulus_mode(mode_text);
    ModulusReport rep = modulus_exact(f, order, h, mode, c.workers);
    Rational replay = replay_witness(f, order, rep.witness);
    bool replay_ok = abs(replay) == rep.value;
    if (!vertices_out.empty()) write_text_file(vertices_out, vertex_csv(vertex_values(f, order, h, mode)));
    int code = replay_ok ? kOk : kVerificationFailed;
    if (c.json) {
        Json r;
        r["subcommand"] = "modulus";
        r["inputs"] = {{"input", input}, {"order", order}, {"scale", h.str()}, {"mode", mode_text}};
        r["results"] = modulus_report_to_json(rep);
        r["verdicts"] = {{"witness_replays", replay_ok}};
        r["exit_code"] = code;
        out << r.dump(2) << '\n';
        return code;
    }
    out << "modulus: " << show(rep.value) << '\n';
    out << "mode: " << mode_text << ", order " << order << ", h " << h.str() << '\n';
    out << "witness: " << describe(rep.witness.configuration) << ", signed value " << rep.witness.signed_value.str()
        << '\n';
    out << "replay: " << (replay_ok ? "ok" : "MISMATCH " + replay.str()) << '\n';
    out << "vertices examined: " << rep.vertices_examined << ", configurations examined: "
        << rep.configurations_examined << '\n';
    return code;
}

int cmd_bounds(const Common& c, int kmax, bool refined, std::ostream& out) {
    if (!refined) {
        if (c.json) {
            Json r;
            r["subcommand"] = "bounds";
            r["inputs"] = {{"kmax", kmax}};
            Json rows = Json::array();
            for (const auto& b : bounds_table(kmax))
                rows.push_back({{"k", b.k}, {"lower", exact(b.lower)}, {"upper", exact(b.upper)}});
            r["results"] = rows;
            r["exit_code"] = 0;
            out << r.dump(2) << '\n';
        } else {
            out << bounds_csv(kmax);
        }
        return kOk;
    }
    auto [lo, hi] = second_order_bounds();
    ScanResult scan = upper_bound_scan(4096);
    RefinedBound rb = refined_upper_bound();
    Rational third(1, 3);
    Rational one_sided = case_b_one_sided_term(third);
    Json r;
    r["subcommand"] = "bounds";
    r["inputs"] = {{"refined", true}};
    r["results"] = {{"second_order_lower", exact(lo)},
                    {"second_order_upper", exact(hi)},
                    {"scan_max", {{"exact", scan.exact_value.str()}, {"float", float15(scan.value)},
                                  {"argmax", scan.exact_argmax.str()}}},
                    {"refined_x0", float15(rb.x0)},
                    {"refined_value", float15(rb.value)},
                    {"refined_bracket", {rb.bracket_lo.str(), rb.bracket_hi.str()}},
                    {"one_sided_term_at_1/3", exact(one_sided)}};
    bool ok = rb.exact_check && scan.exact_value <= hi;
    r["verdicts"] = {{"scan_within_upper", scan.exact_value <= hi}, {"refined_bracket_checked", rb.exact_check}};
    int code = ok ? kOk : kVerificationFailed;
    r["exit_code"] = code;
    if (c.json) {
        out << r.dump(2) << '\n';
        return code;
    }
    out << "quantity,exact,float\n";
    out << "second_order_lower," << lo.str() << ',' << fmt15(lo.to_double()) << '\n';
    out << "second_order_upper," << hi.str() << ',' << fmt15(hi.to_double()) << '\n';
    out << "scan_max," << scan.exact_value.str() << ',' << fmt15(scan.value) << '\n';
    out << "scan_argmax," << scan.exact_argmax.str() << ',' << fmt15(scan.argmax) << '\n';
    out << "refined_x0,," << fmt15(rb.x0) << '\n';
    out << "refined_value,," << fmt15(rb.value) << '\n';
    out << "one_sided_term_at_1/3," << one_sided.str() << ',' << fmt15(one_sided.to_double()) << '\n';
    return code;
}

int cmd_steklov(const Common& c, const std::string& input, int k, int trials, std::uint64_t seed, std::ostream& out) {
    PiecewiseFunction f = load_function(input);
    IdentitySuite suite = identity_suite(f, k, trials, seed);
    int code = suite.ok() ? kOk : kVerificationFailed;
    if (c.json) {
        Json r;
        r["subcommand"] = "steklov-check";
        r["inputs"] = {{"input", input}, {"k", k}, {"trials", trials}, {"seed", seed}};
        Json tallies = Json::array();
        for (const auto& t : suite.tallies)
            tallies.push_back({{"identity", t.name}, {"passed", t.passed}, {"failed", t.failed}, {"resampled", t.resampled}});
        r["results"] = {{"tallies", tallies}, {"checks", suite.verdicts}};
        r["verdicts"] = {{"all_equal", suite.ok()}};
        r["exit_code"] = code;
        out << r.dump(2) << '\n';
        return code;
    }
    for (const auto& t : suite.tallies)
        out << t.name << ": " << t.passed << " passed, " << t.failed << " failed, " << t.resampled << " redrawn\n";
    for (const auto& v : suite.verdicts)
        if (!v["equal"].get<bool>()) out << "FAILED " << v.dump() << '\n';
    out << (suite.ok() ? "all identities hold\n" : "identity failures found\n");
    return code;
}

int cmd_random(const Common& c, int k, int trials, std::uint64_t seed, int complexity, const std::string& dump_dir,
               std::ostream& out) {
    PropertyStats st = property_suite(k, trials, seed, complexity, c.workers, dump_dir);
    int code = st.violations_pointwise + st.violations_relaxed == 0 ? kOk : kVerificationFailed;
    if (c.json) {
        Json r;
        r["subcommand"] = "random-test";
        r["inputs"] = {{"k", k}, {"trials", trials}, {"seed", seed}, {"complexity", complexity}};
        r["results"] = {{"bound", exact(st.bound)},
                        {"max_pointwise_ratio", exact(st.max_pointwise)},
                        {"max_relaxed_ratio", exact(st.max_relaxed)},
                        {"violations_pointwise", st.violations_pointwise},
                        {"violations_relaxed", st.violations_relaxed},
                        {"counterexamples", st.dumped}};
        r["verdicts"] = {{"within_bound", code == kOk}};
        r["exit_code"] = code;
        out << r.dump(2) << '\n';
        return code;
    }
    out << "k = " << k << ", " << trials << " functions, bound " << show(st.bound) << '\n';
    out << "max pointwise ratio: " << show(st.max_pointwise) << ", violations " << st.violations_pointwise << '\n';
    out << "max relaxed ratio: " << show(st.max_relaxed) << ", violations " << st.violations_relaxed << '\n';
    for (const auto& p : st.dumped) out << "counterexample written to " << p << '\n';
    return code;
}

int cmd_search(const Common& c, const std::string& geometry_path, int rounds, const std::string& out_path,
               std::ostream& out) {
    if (rounds < 1) throw Error(ErrorKind::InvalidArgument, "--rounds must be positive");
    Json gj = read_json_file(geometry_path);
    SearchGeometry g;
    try {
        g = geometry_from_json(gj);
    } catch (const Error& e) {
        throw Error(e.kind(), geometry_path + ": " + e.detail());
    }
    SearchResult res = search(g, rounds);
    CertificateReplay replay = replay_certificate(res.best);
    Json cert = certificate_to_json(res.best, &res);
    if (!out_path.empty()) write_text_file(out_path, cert.dump(2) + "\n");
    int code = replay.ok() ? kOk : kVerificationFailed;
    if (c.json) {
        Json r;
        r["subcommand"] = "search";
        r["inputs"] = {{"geometry", geometry_path}, {"rounds", rounds}};
        r["results"] = cert;
        r["verdicts"] = {{"replay_ok", replay.ok()}, {"converged", res.converged}};
        r["exit_code"] = code;
        out << r.dump(2) << '\n';
        return code;
    }
    for (const auto& t : res.trace)
        out << "round " << t.round << ": " << t.active_rows << " rows, lp " << fmt15(t.lp_objective)
            << ", certified " << show(t.certified_ratio) << ", violated " << t.violated_rows << '\n';
    out << (res.converged ? "converged" : "stopped at round limit") << ", " << res.total_modulus_rows
        << " modulus rows\n";
    out << "certificate ratio: " << show(res.best.ratio) << '\n';
    out << "certificate norm: " << show(res.best.norm) << ", modulus " << show(res.best.modulus) << '\n';
    out << "replay: " << (replay.ok() ? "ok" : "FAILED") << '\n';
    if (!out_path.empty()) out << "certificate written to " << out_path << '\n';
    return code;
}

int cmd_replay(const Common& c, const std::string& path, std::ostream& out) {
    Json j = read_json_file(path);
    Certificate cert;
    try {
        cert = certificate_from_json(j);
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.detail());
    }
    CertificateReplay rp = replay_certificate(cert);
    int code = rp.ok() ? kOk : kVerificationFailed;
    Json v = {{"oscillating", rp.oscillating},
              {"modulus_matches", rp.modulus_matches},
              {"norm_matches", rp.norm_matches},
              {"ratio_matches", rp.ratio_matches}};
    if (c.json) {
        Json r;
        r["subcommand"] = "replay";
        r["inputs"] = {{"certificate", path}};
        r["results"] = {{"ratio", exact(cert.ratio)}};
        r["verdicts"] = v;
        r["exit_code"] = code;
        out << r.dump(2) << '\n';
        return code;
    }
    for (auto it = v.begin(); it != v.end(); ++it) out << it.key() << ": " << (it.value().get<bool>() ? "yes" : "no") << '\n';
    out << "ratio: " << show(cert.ratio) << '\n';
    return code;
}

int cmd_plot(const std::string& input, int samples, const std::string& out_path, std::ostream& out) {
    PiecewiseFunction f = load_function(input);
    write_text_file(out_path, plot_csv(f, samples));
    out << "wrote " << out_path << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact moduli of smoothness and Whitney constants for piecewise-linear functions", "whitney"};
    app.require_subcommand(1);
    Common common;

    std::string mode = "relaxed";
    auto* verify = app.add_subcommand("verify-example", "Check the worked second-order example exactly");
    verify->add_option("--mode", mode, "pointwise or relaxed")->check(CLI::IsMember({"pointwise", "relaxed"}));
    add_common(verify, common, true);

    std::string input, scale = "1", vertices_out;
    int order = 2;
    auto* modulus = app.add_subcommand("modulus", "Exact modulus of smoothness of a function file");
    modulus->add_option("--input", input, "Function JSON")->required();
    modulus->add_option("--order", order, "Even difference order 2k")->required();
    modulus->add_option("--scale", scale, "Step bound h (rational)")->required();
    modulus->add_option("--mode", mode, "pointwise or relaxed")->check(CLI::IsMember({"pointwise", "relaxed"}));
    modulus->add_option("--vertices", vertices_out, "Write per-vertex maxima as CSV");
    add_common(modulus, common, true);

    int kmax = 8;
    bool refined = false;
    auto* bounds = app.add_subcommand("bounds", "Table of Whitney-constant bounds");
    bounds->add_option("--kmax", kmax, "Largest k")->check(CLI::Range(1, 200));
    bounds->add_flag("--refined", refined, "Second-order constants instead of the table");
    add_common(bounds, common, false);

    int k = 1, trials = 100, complexity = 4;
    std::uint64_t seed = 0;
    auto* steklov_cmd = app.add_subcommand("steklov-check", "Randomized exact checks of the Steklov identities");
    steklov_cmd->add_option("--input", input, "Function JSON")->required();
    steklov_cmd->add_option("--k", k, "Half order")->required()->check(CLI::Range(1, 20));
    steklov_cmd->add_option("--trials", trials, "Checks per identity")->check(CLI::Range(0, 1000000));
    steklov_cmd->add_option("--seed", seed, "Random seed")->required();
    add_common(steklov_cmd, common, false);

    std::string dump_dir;
    auto* random_cmd = app.add_subcommand("random-test", "Whitney ratios of random oscillating functions");
    random_cmd->add_option("--k", k, "Half order")->required()->check(CLI::Range(1, 20));
    random_cmd->add_option("--trials", trials, "Number of functions")->check(CLI::Range(0, 1000000));
    random_cmd->add_option("--seed", seed, "Random seed")->required();
    random_cmd->add_option("--complexity", complexity, "Breakpoint budget")->check(CLI::Range(1, 64));
    random_cmd->add_option("--dump-dir", dump_dir, "Directory for counterexample files");
    add_common(random_cmd, common, true);

    std::string geometry, out_path;
    int rounds = 50;
    auto* search_cmd = app.add_subcommand("search", "Extremal function search by constraint generation");
    search_cmd->add_option("--geometry", geometry, "Geometry JSON")->required();
    search_cmd->add_option("--rounds", rounds, "Round limit");
    search_cmd->add_option("--out", out_path, "Certificate JSON output");
    add_common(search_cmd, common, false);

    std::string cert_path;
    auto* replay_cmd = app.add_subcommand("replay", "Re-verify a certificate file exactly");
    replay_cmd->add_option("--certificate", cert_path, "Certificate JSON")->required();
    add_common(replay_cmd, common, false);

    int samples = 200;
    auto* plot_cmd = app.add_subcommand("plot-data", "CSV samples of a function for plotting");
    plot_cmd->add_option("--input", input, "Function JSON")->required();
    plot_cmd->add_option("--samples", samples, "Generic samples")->check(CLI::Range(0, 10000000));
    plot_cmd->add_option("--out", out_path, "CSV output")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    auto start = std::chrono::steady_clock::now();
    int code = kOk;
    try {
        if (*verify) code = cmd_verify(common, mode, out);
        else if (*modulus) code = cmd_modulus(common, input, order, scale, mode, vertices_out, out);
        else if (*bounds) code = cmd_bounds(common, kmax, refined, out);
        else if (*steklov_cmd) code = cmd_steklov(common, input, k, trials, seed, out);
        else if (*random_cmd) code = cmd_random(common, k, trials, seed, complexity, dump_dir, out);
        else if (*search_cmd) code = cmd_search(common, geometry, rounds, out_path, out);
        else if (*replay_cmd) code = cmd_replay(common, cert_path, out);
        else if (*plot_cmd) code = cmd_plot(input, samples, out_path, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kUsageError;
    }
    if (common.timing) {
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        err << "elapsed: " << fmt15(ms) << " ms\n";
    }
    return code;
}

}  // namespace whitney::cli
