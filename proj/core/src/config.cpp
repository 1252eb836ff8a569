#include "lsc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lsc/errors.hpp"

namespace lsc::config {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

json parse_object(const std::string& text, const std::string& where) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(where + ": invalid JSON (" + e.what() + ")");
    }
    if (!j.is_object()) fail(where, "top-level value must be an object");
    return j;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(where + "." + it.key(), "unknown key");
}

double get_number(const json& j, const std::string& key, double fallback,
                  const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) fail(where + "." + key, "must be a number");
    return j[key].get<double>();
}

int get_int(const json& j, const std::string& key, int fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) fail(where + "." + key, "must be an integer");
    return j[key].get<int>();
}

bool get_bool(const json& j, const std::string& key, bool fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) fail(where + "." + key, "must be a boolean");
    return j[key].get<bool>();
}

std::string get_string(const json& j, const std::string& key, const std::string& fallback,
                       const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) fail(where + "." + key, "must be a string");
    return j[key].get<std::string>();
}

CentralChargeConfig parse_central_charge_obj(const json& j, const std::string& where) {
    reject_unknown(j,
                   {"h", "L_list", "resolution", "candidate_span", "with_l2_term",
                    "quantization_correction", "eps_inf_from_thermo", "fit_l_min",
                    "fit_l_max"},
                   where);
    CentralChargeConfig c;
    c.h = get_number(j, "h", c.h, where);
    if (!(c.h > 0.0 && c.h < 2.0)) fail(where + ".h", "must lie in (0, 2)");
    if (j.contains("L_list")) {
        if (!j["L_list"].is_array()) fail(where + ".L_list", "must be an array of integers");
        c.l_list.clear();
        for (const auto& v : j["L_list"]) {
            if (!v.is_number_integer()) fail(where + ".L_list", "must contain integers");
            c.l_list.push_back(v.get<int>());
        }
        if (c.l_list.size() < 4) fail(where + ".L_list", "needs at least 4 chain lengths");
        for (std::size_t i = 0; i + 1 < c.l_list.size(); ++i)
            if (c.l_list[i] >= c.l_list[i + 1])
                fail(where + ".L_list", "must be strictly increasing");
        for (int L : c.l_list)
            if (L < 2 || L % 2 != 0) fail(where + ".L_list", "lengths must be even and >= 2");
    }
    c.resolution = get_int(j, "resolution", c.resolution, where);
    if (c.resolution < 32) fail(where + ".resolution", "must be >= 32");
    c.candidate_span = get_int(j, "candidate_span", c.candidate_span, where);
    if (c.candidate_span < 0 || c.candidate_span > 16)
        fail(where + ".candidate_span", "must be in [0, 16]");
    c.with_l2_term = get_bool(j, "with_l2_term", c.with_l2_term, where);
    c.quantization_correction =
        get_bool(j, "quantization_correction", c.quantization_correction, where);
    c.eps_inf_from_thermo = get_bool(j, "eps_inf_from_thermo", c.eps_inf_from_thermo, where);
    c.fit_l_min = get_int(j, "fit_l_min", c.fit_l_min, where);
    c.fit_l_max = get_int(j, "fit_l_max", c.fit_l_max, where);
    return c;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BetheConfig parse_bethe(const std::string& text) {
    const json j = parse_object(text, "bethe");
    reject_unknown(j, {"L", "N", "qn", "tol"}, "bethe");
    BetheConfig c;
    c.L = get_int(j, "L", c.L, "bethe");
    if (c.L < 1) fail("bethe.L", "must be positive");
    c.N = get_int(j, "N", c.N, "bethe");
    if (c.N < 0) fail("bethe.N", "must be nonnegative");
    if (j.contains("qn")) {
        if (!j["qn"].is_array()) fail("bethe.qn", "must be an array of numbers");
        std::vector<double> qn;
        for (const auto& v : j["qn"]) {
            if (!v.is_number()) fail("bethe.qn", "must contain numbers");
            qn.push_back(v.get<double>());
        }
        if (static_cast<int>(qn.size()) != c.N) fail("bethe.qn", "size must equal N");
        c.qn = std::move(qn);
    }
    c.tol = get_number(j, "tol", c.tol, "bethe");
    if (!(c.tol > 0.0 && c.tol < 1.0)) fail("bethe.tol", "must lie in (0, 1)");
    return c;
}

ThermoConfig parse_thermo(const std::string& text) {
    const json j = parse_object(text, "thermo");
    reject_unknown(j, {"h", "q", "resolution", "geometry", "map"}, "thermo");
    ThermoConfig c;
    if (j.contains("h")) c.h = get_number(j, "h", 0.0, "thermo");
    if (j.contains("q")) c.q = get_number(j, "q", 0.0, "thermo");
    if (c.h.has_value() == c.q.has_value())
        fail("thermo", "exactly one of 'h' or 'q' is required");
    if (c.h && !(*c.h > 0.0 && *c.h < 2.0)) fail("thermo.h", "must lie in (0, 2)");
    if (c.q && !(*c.q > thermo::q_min && *c.q < thermo::q_max))
        fail("thermo.q", "must lie in (q_min, q_max)");
    c.resolution = get_int(j, "resolution", c.resolution, "thermo");
    if (c.resolution < 32) fail("thermo.resolution", "must be >= 32");
    const std::string geom = get_string(j, "geometry", "interior", "thermo");
    if (geom == "interior")
        c.geometry = thermo::SeaGeometry::Interior;
    else if (geom == "exterior")
        c.geometry = thermo::SeaGeometry::Exterior;
    else
        fail("thermo.geometry", "must be 'interior' or 'exterior'");
    const std::string map = get_string(j, "map", "inverse_u", "thermo");
    if (map == "inverse_u")
        c.map = thermo::TailMap::InverseU;
    else if (map == "tan_theta")
        c.map = thermo::TailMap::TanTheta;
    else
        fail("thermo.map", "must be 'inverse_u' or 'tan_theta'");
    return c;
}

CentralChargeConfig parse_central_charge(const std::string& text) {
    return parse_central_charge_obj(parse_object(text, "central_charge"), "central_charge");
}

QuenchConfig parse_quench(const std::string& text) {
    const json j = parse_object(text, "quench");
    reject_unknown(j,
                   {"L", "model", "n_max", "geometry", "t_max", "dt", "cut", "fit_t_min",
                    "fit_t_max", "saturation_rate"},
                   "quench");
    QuenchConfig c;
    c.L = get_int(j, "L", c.L, "quench");
    if (c.L < 4 || c.L % 2 != 0) fail("quench.L", "must be even and >= 4");
    if (c.L > 22) fail("quench.L", "desk-scale limit is 22 sites");
    c.model = get_string(j, "model", c.model, "quench");
    if (c.model != "xxx" && c.model != "s-minus1")
        fail("quench.model", "must be 'xxx' or 's-minus1'");
    c.n_max = get_int(j, "n_max", c.n_max, "quench");
    if (c.n_max < 2 || c.n_max > 8) fail("quench.n_max", "must lie in [2, 8]");
    if (c.model == "s-minus1") {
        double dim = 1.0;
        for (int s = 0; s < c.L; ++s) dim *= c.n_max + 1;
        if (dim > 4194304.0)
            fail("quench.L", "(n_max+1)^L exceeds the state budget for the s-minus1 backend");
    }
    c.geometry = get_string(j, "geometry", c.geometry, "quench");
    if (c.geometry != "open" && c.geometry != "ring")
        fail("quench.geometry", "must be 'open' or 'ring'");
    c.t_max = get_number(j, "t_max", c.t_max, "quench");
    if (!(c.t_max > 0.0)) fail("quench.t_max", "must be positive");
    c.dt = get_number(j, "dt", c.dt, "quench");
    if (!(c.dt > 0.0 && c.dt <= c.t_max)) fail("quench.dt", "must lie in (0, t_max]");
    c.cut = get_int(j, "cut", c.cut, "quench");
    if (c.cut != -1 && (c.cut < 1 || c.cut >= c.L)) fail("quench.cut", "must be in [1, L)");
    c.fit_t_min = get_number(j, "fit_t_min", c.fit_t_min, "quench");
    c.fit_t_max = get_number(j, "fit_t_max", c.fit_t_max, "quench");
    c.saturation_rate = get_number(j, "saturation_rate", c.saturation_rate, "quench");
    if (!(c.saturation_rate > 0.0)) fail("quench.saturation_rate", "must be positive");
    return c;
}

OseeConfig parse_osee(const std::string& text) {
    const json j = parse_object(text, "osee");
    reject_unknown(j,
                   {"L", "site", "cut", "operator", "t_max", "dt", "periodic", "fit_t_min",
                    "fit_t_max"},
                   "osee");
    OseeConfig c;
    c.op = get_string(j, "operator", c.op, "osee");
    if (c.op != "sz_projector" && c.op != "sz" && c.op != "sx")
        fail("osee.operator", "must be 'sz_projector', 'sz' or 'sx'");
    c.L = get_int(j, "L", c.L, "osee");
    if (c.L < 4 || c.L > 12) fail("osee.L", "must lie in [4, 12] (dense operator budget)");
    c.site = get_int(j, "site", c.site, "osee");
    if (c.site < 0 || c.site >= c.L) fail("osee.site", "must be in [0, L)");
    c.cut = get_int(j, "cut", c.cut, "osee");
    if (c.cut < 1 || c.cut >= c.L) fail("osee.cut", "must be in [1, L)");
    c.t_max = get_number(j, "t_max", c.t_max, "osee");
    if (!(c.t_max > 0.0)) fail("osee.t_max", "must be positive");
    c.dt = get_number(j, "dt", c.dt, "osee");
    if (!(c.dt > 0.0 && c.dt <= c.t_max)) fail("osee.dt", "must lie in (0, t_max]");
    c.periodic = get_bool(j, "periodic", c.periodic, "osee");
    c.fit_t_min = get_number(j, "fit_t_min", c.fit_t_min, "osee");
    c.fit_t_max = get_number(j, "fit_t_max", c.fit_t_max, "osee");
    return c;
}

DisConfig parse_dis(const std::string& text) {
    const json j = parse_object(text, "dis");
    reject_unknown(j, {"m", "x", "Q", "c_source", "c", "pipeline"}, "dis");
    DisConfig c;
    c.m = get_number(j, "m", c.m, "dis");
    if (!(c.m > 0.0)) fail("dis.m", "must be positive");
    c.x = get_number(j, "x", c.x, "dis");
    if (!(c.x > 0.0 && c.x < 1.0)) fail("dis.x", "must lie in (0, 1)");
    c.q = get_number(j, "Q", c.q, "dis");
    if (!(c.q > 0.0)) fail("dis.Q", "must be positive");
    c.c_source = get_string(j, "c_source", c.c_source, "dis");
    if (c.c_source != "value" && c.c_source != "pipeline")
        fail("dis.c_source", "must be 'value' or 'pipeline'");
    c.c = get_number(j, "c", c.c, "dis");
    if (c.c_source == "value" && !(c.c > 0.0)) fail("dis.c", "must be positive");
    if (j.contains("pipeline")) {
        if (!j["pipeline"].is_object()) fail("dis.pipeline", "must be an object");
        c.pipeline = parse_central_charge_obj(j["pipeline"], "dis.pipeline");
    }
    return c;
}

PipelineConfig parse_pipeline(const std::string& text) {
    const json j = parse_object(text, "pipeline");
    reject_unknown(j, {"central_charge", "m", "x", "Q"}, "pipeline");
    PipelineConfig c;
    if (j.contains("central_charge")) {
        if (!j["central_charge"].is_object())
            fail("pipeline.central_charge", "must be an object");
        c.central_charge =
            parse_central_charge_obj(j["central_charge"], "pipeline.central_charge");
    }
    c.m = get_number(j, "m", c.m, "pipeline");
    if (!(c.m > 0.0)) fail("pipeline.m", "must be positive");
    c.x = get_number(j, "x", c.x, "pipeline");
    if (!(c.x > 0.0 && c.x < 1.0)) fail("pipeline.x", "must lie in (0, 1)");
    c.q = get_number(j, "Q", c.q, "pipeline");
    if (!(c.q > 0.0)) fail("pipeline.Q", "must be positive");
    return c;
}

}  // namespace lsc::config
