#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"
#include "whitney/bounds.hpp"

using namespace whitney;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(WHITNEY_DATA_DIR) + "/" + name; }

std::string temp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("verify-example reports the relaxed discrepancy with its witness") {
    Run r = run({"verify-example"});
    CHECK(r.code == cli::kVerificationFailed);
    CHECK(r.out.find("sup-norm: 43/74") != std::string::npos);
    CHECK(r.out.find("relaxed modulus: 43/37") != std::string::npos);
    CHECK(r.out.find("limit at (9/8, 1/8)") != std::string::npos);
    Run p = run({"verify-example", "--mode", "pointwise", "--json"});
    CHECK(p.code == cli::kVerificationFailed);
    Json j = Json::parse(p.out);
    CHECK(j["results"]["pointwise_modulus"]["value"] == "62/37");
    CHECK(j["results"]["pointwise_modulus"]["witness"]["x"] == "1/4");
    CHECK(j["results"]["pointwise_modulus"]["witness"]["t"] == "1");
    CHECK(j["verdicts"]["integrals_zero"] == true);
    CHECK(j["verdicts"]["hand_witnesses_reach_1"] == true);
    CHECK(j["exit_code"] == 1);
    CHECK(run({"verify-example", "--mode", "essential"}).code == cli::kUsageError);
}

TEST_CASE("modulus matches the library exactly") {
    Run r = run({"modulus", "--input", data("worked_example.json"), "--order", "2", "--scale", "1", "--mode", "relaxed",
                 "--json"});
    CHECK(r.code == cli::kOk);
    Json j = Json::parse(r.out);
    CHECK(j["results"]["value"] ==
          modulus_exact(worked_example(), 2, Rational(1), ModulusMode::Relaxed).value.str());
    Run w = run({"modulus", "--input", data("worked_example.json"), "--order", "2", "--scale", "1", "--json",
                 "--workers", "4"});
    CHECK(w.out == r.out);
    CHECK(run({"modulus", "--input", data("worked_example.json"), "--order", "3", "--scale", "1"}).code ==
          cli::kUsageError);
    CHECK(run({"modulus", "--input", data("missing.json"), "--order", "2", "--scale", "1"}).code == cli::kUsageError);
    CHECK(run({"modulus", "--input", data("worked_example.json"), "--order", "2", "--scale", "x"}).code ==
          cli::kUsageError);
}

TEST_CASE("bounds table") {
    Run r = run({"bounds", "--kmax", "3"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("1,1/2,1,") != std::string::npos);
    CHECK(r.out.find("2,1/6,5/12,") != std::string::npos);
    CHECK(r.out.find("3,1/20,17/120,") != std::string::npos);
    CHECK(r.out == cli::bounds_csv(3));
    Run c = run({"bounds", "--refined"});
    CHECK(c.code == cli::kOk);
    CHECK(c.out.find("refined_value,,0.624355652982") != std::string::npos);
    CHECK(c.out.find("one_sided_term_at_1/3,5/18,") != std::string::npos);
}

TEST_CASE("plot data") {
    std::string out = temp("whitney_plot.csv");
    Run r = run({"plot-data", "--input", data("worked_example.json"), "--samples", "50", "--out", out});
    CHECK(r.code == cli::kOk);
    std::string csv = slurp(out);
    CHECK(csv.find("5/4,below,15/37,") != std::string::npos);
    CHECK(csv.find("5/4,exact,-10/37,") != std::string::npos);
    CHECK(csv.find("1/4,spike,43/74,") != std::string::npos);
    size_t samples = 0;
    for (size_t p = csv.find(",sample,"); p != std::string::npos; p = csv.find(",sample,", p + 1)) ++samples;
    CHECK(samples == 50);
    std::filesystem::remove(out);
}

TEST_CASE("randomized subcommands need seeds and are deterministic") {
    CHECK(run({"random-test", "--k", "1", "--trials", "3"}).code == cli::kUsageError);
    CHECK(run({"steklov-check", "--input", data("worked_example.json"), "--k", "1"}).code == cli::kUsageError);
    Run a = run({"random-test", "--k", "1", "--trials", "5", "--seed", "9", "--json"});
    Run b = run({"random-test", "--k", "1", "--trials", "5", "--seed", "9", "--json"});
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
    Run s = run({"steklov-check", "--input", data("worked_example.json"), "--k", "2", "--trials", "20", "--seed", "4",
                 "--json"});
    CHECK(s.code == cli::kOk);
    Json j = Json::parse(s.out);
    CHECK(j["verdicts"]["all_equal"] == true);
    CHECK(j["results"]["tallies"].size() == 5);
    CHECK(j["results"]["checks"][0].contains("lhs"));
}

TEST_CASE("search, replay and malformed geometry") {
    std::string cert = temp("whitney_cert.json");
    Run r = run({"search", "--geometry", data("reference_geometry.json"), "--rounds", "50", "--out", cert});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("certificate ratio: 63/107") != std::string::npos);
    Run rp = run({"replay", "--certificate", cert});
    CHECK(rp.code == cli::kOk);
    Json j = read_json_file(cert);
    j["ratio"] = "43/74";
    write_text_file(cert, j.dump());
    CHECK(run({"replay", "--certificate", cert}).code == cli::kVerificationFailed);
    std::string bad = temp("whitney_bad_geometry.json");
    write_text_file(bad, R"({"k":1,"h":"1","grid":["0","1/2"],"objective":"0"})");
    Run g = run({"search", "--geometry", bad, "--rounds", "5"});
    CHECK(g.code == cli::kUsageError);
    CHECK(g.err.find("invalid-geometry") != std::string::npos);
    std::filesystem::remove(cert);
    std::filesystem::remove(bad);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == cli::kUsageError);
    CHECK(run({"frobnicate"}).code == cli::kUsageError);
    CHECK(run({"--help"}).code == cli::kOk);
}

}
