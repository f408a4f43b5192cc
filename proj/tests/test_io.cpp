#include <filesystem>

#include "support.hpp"
#include "whitney/error.hpp"
#include "whitney/io.hpp"

using namespace whitney;

namespace {

ErrorKind read_error(const std::string& text, std::string* message = nullptr) {
    try {
        function_from_json(Json::parse(text));
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("function files round-trip exactly") {
    for (int seed = 0; seed < 30; ++seed) {
        PiecewiseFunction f = random_oscillating(seed, Q("1/2"), 5);
        Json j = function_to_json(f);
        CHECK(function_from_json(Json::parse(j.dump())) == f);
        CHECK(function_to_json(function_from_json(j)).dump() == j.dump());
    }
    Json w = function_to_json(worked_example());
    CHECK(w["spikes"][0]["value"] == "43/74");
    CHECK(w["breakpoints"][3]["left"] == "15/37");
}

TEST_CASE("the reader normalizes") {
    PiecewiseFunction f = function_from_json(Json::parse(
        R"({"breakpoints":[{"x":"0","left":"0","right":"0"},{"x":"1","left":"1","right":"1"},{"x":"2","left":"2","right":"0"}]})"));
    CHECK(f.breakpoints().size() == 2);
}

TEST_CASE("malformed function files name the offending field") {
    std::string msg;
    CHECK(read_error(R"({"spikes":[]})", &msg) == ErrorKind::InvalidFunction);
    CHECK(msg.find("$.breakpoints") != std::string::npos);
    CHECK(read_error(R"({"breakpoints":[{"x":"0","left":"0"}]})", &msg) == ErrorKind::InvalidFunction);
    CHECK(msg.find("$.breakpoints[0].right") != std::string::npos);
    CHECK(read_error(R"({"breakpoints":[{"x":"0","left":"0","right":"2/4"},{"x":"1","left":"1","right":"0"}]})", &msg) ==
          ErrorKind::InvalidFunction);
    CHECK(msg.find("$.breakpoints[0].right") != std::string::npos);
    CHECK(read_error(R"({"breakpoints":[{"x":0,"left":"0","right":"1"}]})", &msg) == ErrorKind::InvalidFunction);
    CHECK(read_error(R"({"breakpoints":[{"x":"0","left":"0","right":"1"},{"x":"1","left":"1","right":"0"}],"spikes":[{"x":"1/2"}]})",
                     &msg) == ErrorKind::InvalidFunction);
    CHECK(msg.find("$.spikes[0].value") != std::string::npos);
    CHECK(read_error(R"({"breakpoints":[{"x":"1","left":"0","right":"1"},{"x":"0","left":"1","right":"0"}]})", &msg) ==
          ErrorKind::InvalidFunction);
    CHECK(msg.find("breakpoints[1]") != std::string::npos);
}

TEST_CASE("geometry files") {
    SearchGeometry g = reference_geometry();
    SearchGeometry back = geometry_from_json(Json::parse(geometry_to_json(g).dump()));
    CHECK(back.grid == g.grid);
    CHECK(back.spike_positions == g.spike_positions);
    CHECK(back.objective_point == g.objective_point);
    CHECK(back.k == 1);
    CHECK(back.h == 1);
    Json j = geometry_to_json(g);
    j["objective"] = "1/3";
    CHECK_THROWS_AS(geometry_from_json(j), Error);
    j = geometry_to_json(g);
    j["grid"][2] = 5;
    CHECK_THROWS_AS(geometry_from_json(j), Error);
}

TEST_CASE("shipped data files") {
    std::string dir = WHITNEY_DATA_DIR;
    CHECK(function_from_json(read_json_file(dir + "/worked_example.json")) == worked_example());
    SearchGeometry g = geometry_from_json(read_json_file(dir + "/reference_geometry.json"));
    CHECK(g.grid == reference_geometry().grid);
    CHECK(g.spike_positions == reference_geometry().spike_positions);
}

TEST_CASE("file errors") {
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), Error);
    auto path = std::filesystem::temp_directory_path() / "whitney_io_bad.json";
    write_text_file(path.string(), "{\n  \"breakpoints\": [,]\n}\n");
    try {
        read_json_file(path.string());
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::filesystem::remove(path);
}

TEST_CASE("report serialization") {
    ModulusReport r = modulus_exact(worked_example(), 2, Q("1"), ModulusMode::Pointwise);
    Json j = modulus_report_to_json(r);
    CHECK(j["value"] == "62/37");
    CHECK(j["value_float"].get<double>() == doctest::Approx(62.0 / 37.0));
    CHECK(j["witness"]["kind"] == "point");
    CHECK(j["witness"]["x"] == "1/4");
    CHECK(j["mode"] == "pointwise");
    Json v = identity_to_json(Json{{"x", "1/2"}}, IdentityCheck{Q("1/3"), Q("1/3"), true});
    CHECK(v.dump() == R"({"query":{"x":"1/2"},"lhs":"1/3","rhs":"1/3","equal":true})");
    CHECK(float15(2.0 / 3.0) == 0.666666666666667);
}

}
