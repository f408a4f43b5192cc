#include "whitney/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "whitney/error.hpp"

namespace whitney {

double float15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return std::strtod(buf, nullptr);
}

double float15(const Rational& r) { return float15(r.to_double()); }

namespace {

[[noreturn]] void bad_field(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::InvalidFunction, path + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) bad_field(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) bad_field(path + "." + key, "missing field");
    return *it;
}

Rational rational_field(const Json& obj, const std::string& key, const std::string& path) {
    const Json& v = field(obj, key, path);
    if (!v.is_string()) bad_field(path + "." + key, "expected a rational string \"p/q\"");
    try {
        return Rational::parse(v.get<std::string>(), /*strict=*/true);
    } catch (const Error& e) {
        bad_field(path + "." + key, e.detail());
    }
}

const Json& array_field(const Json& obj, const std::string& key, const std::string& path) {
    const Json& v = field(obj, key, path);
    if (!v.is_array()) bad_field(path + "." + key, "expected an array");
    return v;
}

std::string item(const std::string& path, const std::string& key, size_t i) {
    return path + "." + key + "[" + std::to_string(i) + "]";
}

}  // namespace

Json function_to_json(const PiecewiseFunction& f) {
    Json j;
    j["breakpoints"] = Json::array();
    for (const auto& b : f.breakpoints())
        j["breakpoints"].push_back({{"x", b.position.str()}, {"left", b.left_limit.str()}, {"right", b.right_value.str()}});
    j["spikes"] = Json::array();
    for (const auto& s : f.spikes()) j["spikes"].push_back({{"x", s.position.str()}, {"value", s.value.str()}});
    return j;
}

PiecewiseFunction function_from_json(const Json& j) {
    const std::string root = "$";
    std::vector<Breakpoint> bps;
    const Json& jb = array_field(j, "breakpoints", root);
    for (size_t i = 0; i < jb.size(); ++i) {
        std::string p = item(root, "breakpoints", i);
        bps.push_back({rational_field(jb[i], "x", p), rational_field(jb[i], "left", p), rational_field(jb[i], "right", p)});
    }
    std::vector<Spike> sps;
    if (j.contains("spikes")) {
        const Json& js = array_field(j, "spikes", root);
        for (size_t i = 0; i < js.size(); ++i) {
            std::string p = item(root, "spikes", i);
            sps.push_back({rational_field(js[i], "x", p), rational_field(js[i], "value", p)});
        }
    }
    try {
        return PiecewiseFunction::make(std::move(bps), std::move(sps));
    } catch (const Error& e) {
        bad_field(root, e.detail());
    }
}

Json geometry_to_json(const SearchGeometry& g) {
    Json j;
    j["k"] = g.k;
    j["h"] = g.h.str();
    j["grid"] = Json::array();
    for (const auto& p : g.grid) j["grid"].push_back(p.str());
    j["spikes"] = Json::array();
    for (const auto& p : g.spike_positions) j["spikes"].push_back(p.str());
    j["objective"] = g.objective_point.str();
    return j;
}

SearchGeometry geometry_from_json(const Json& j) {
    const std::string root = "$";
    SearchGeometry g;
    const Json& k = field(j, "k", root);
    if (!k.is_number_integer()) bad_field("$.k", "expected an integer");
    g.k = k.get<int>();
    g.h = rational_field(j, "h", root);
    auto read_list = [&](const std::string& key) {
        std::vector<Rational> out;
        const Json& arr = array_field(j, key, root);
        for (size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_string()) bad_field(item(root, key, i), "expected a rational string \"p/q\"");
            try {
                out.push_back(Rational::parse(arr[i].get<std::string>(), true));
            } catch (const Error& e) {
                bad_field(item(root, key, i), e.detail());
            }
        }
        return out;
    };
    g.grid = read_list("grid");
    if (j.contains("spikes")) g.spike_positions = read_list("spikes");
    g.objective_point = rational_field(j, "objective", root);
    g.validate();
    return g;
}

Json configuration_to_json(const Configuration& c) {
    Json j;
    j["x"] = c.x.str();
    j["t"] = c.t.str();
    j["x_float"] = float15(c.x);
    j["t_float"] = float15(c.t);
    if (c.is_point) {
        j["kind"] = "point";
    } else {
        j["kind"] = "direction";
        j["dx"] = c.dx.str();
        j["dt"] = c.dt.str();
    }
    j["sides"] = Json::array();
    for (auto s : c.sides) j["sides"].push_back(to_string(s));
    return j;
}

Json modulus_report_to_json(const ModulusReport& r) {
    Json j;
    j["mode"] = to_string(r.mode);
    j["order"] = r.order;
    j["h"] = r.h.str();
    j["value"] = r.value.str();
    j["value_float"] = float15(r.value);
    j["witness"] = configuration_to_json(r.witness.configuration);
    j["witness"]["signed_value"] = r.witness.signed_value.str();
    j["vertices_examined"] = r.vertices_examined;
    j["configurations_examined"] = r.configurations_examined;
    return j;
}

Json identity_to_json(const Json& query, const IdentityCheck& check) {
    Json j;
    j["query"] = query;
    j["lhs"] = check.lhs.str();
    j["rhs"] = check.rhs.str();
    j["equal"] = check.equal;
    return j;
}

Json certificate_to_json(const Certificate& c, const SearchResult* run) {
    Json j;
    j["geometry"] = geometry_to_json(c.geometry);
    j["function"] = function_to_json(c.function);
    j["modulus"] = c.modulus.str();
    j["norm"] = c.norm.str();
    j["ratio"] = c.ratio.str();
    j["modulus_float"] = float15(c.modulus);
    j["norm_float"] = float15(c.norm);
    j["ratio_float"] = float15(c.ratio);
    if (run) {
        Json t;
        t["converged"] = run->converged;
        t["round_limit_reached"] = run->round_limit_reached;
        t["total_modulus_rows"] = run->total_modulus_rows;
        t["rounds"] = Json::array();
        for (const auto& r : run->trace)
            t["rounds"].push_back({{"round", r.round},
                                   {"active_rows", r.active_rows},
                                   {"lp_objective", float15(r.lp_objective)},
                                   {"lp_iterations", r.lp_iterations},
                                   {"certified_ratio", r.certified_ratio.str()},
                                   {"violated_rows", r.violated_rows},
                                   {"max_violation", float15(r.max_violation)}});
        j["solver_trace"] = std::move(t);
    }
    return j;
}

Certificate certificate_from_json(const Json& j) {
    const std::string root = "$";
    Certificate c;
    c.geometry = geometry_from_json(field(j, "geometry", root));
    c.function = function_from_json(field(j, "function", root));
    c.modulus = rational_field(j, "modulus", root);
    c.norm = rational_field(j, "norm", root);
    c.ratio = rational_field(j, "ratio", root);
    return c;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::InvalidArgument, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    out << text;
}

}  // namespace whitney
