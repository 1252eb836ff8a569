#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsc/thermo.hpp"

namespace lsc::config {

/// Parsed, validated run configurations. Parsing is strict: unknown keys,
/// wrong types, and out-of-range values raise ConfigError with the offending
/// field path.

struct BetheConfig {
    int L = 8;
    int N = 2;
    std::optional<std::vector<double>> qn;  ///< default: ground-state configuration
    double tol = 1e-12;
};

struct ThermoConfig {
    std::optional<double> h;  ///< exactly one of h, q
    std::optional<double> q;
    int resolution = 256;
    thermo::SeaGeometry geometry = thermo::SeaGeometry::Interior;
    thermo::TailMap map = thermo::TailMap::InverseU;
};

struct CentralChargeConfig {
    double h = 0.5;
    std::vector<int> l_list = {32, 64, 128, 256, 512};
    int resolution = 256;
    int candidate_span = 2;
    bool with_l2_term = true;
    bool quantization_correction = true;
    bool eps_inf_from_thermo = true;
    int fit_l_min = 0;
    int fit_l_max = 0;
};

struct QuenchConfig {
    int L = 16;
    std::string model = "xxx";      ///< "xxx" or "s-minus1" (opt-in backend)
    int n_max = 3;                  ///< Fock cutoff for the s-minus1 backend
    std::string geometry = "open";  ///< "open" or "ring"
    double t_max = 8.0;
    double dt = 0.25;
    int cut = -1;                   ///< default: junction bond L/2
    double fit_t_min = 0.0;         ///< 0 = automatic window
    double fit_t_max = 0.0;
    double saturation_rate = 0.02;  ///< plateau threshold, nats per unit time
};

struct OseeConfig {
    int L = 12;
    int site = 4;
    int cut = 4;
    std::string op = "sz_projector";  ///< "sz_projector", "sz" or "sx"
    double t_max = 8.0;
    double dt = 0.5;
    bool periodic = false;
    double fit_t_min = 1.0;
    double fit_t_max = 0.0;  ///< 0 = end of the trace
};

struct DisConfig {
    double m = 0.938;
    double x = 0.01;
    double q = 1.0;
    std::string c_source = "value";  ///< "value" or "pipeline"
    double c = 1.0;                  ///< used when c_source == "value"
    CentralChargeConfig pipeline;    ///< used when c_source == "pipeline"
};

struct PipelineConfig {
    CentralChargeConfig central_charge;
    double m = 0.938;
    double x = 0.01;
    double q = 1.0;
};

BetheConfig parse_bethe(const std::string& json_text);
ThermoConfig parse_thermo(const std::string& json_text);
CentralChargeConfig parse_central_charge(const std::string& json_text);
QuenchConfig parse_quench(const std::string& json_text);
OseeConfig parse_osee(const std::string& json_text);
DisConfig parse_dis(const std::string& json_text);
PipelineConfig parse_pipeline(const std::string& json_text);

std::string read_file(const std::string& path);

}  // namespace lsc::config
