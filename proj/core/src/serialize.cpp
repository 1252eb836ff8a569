#include "lsc/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "lsc/errors.hpp"

namespace lsc::io {

using nlohmann::json;
namespace {
constexpr int json_indent = 2;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("atomic_write: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("atomic_write: rename failed for " + path);
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string bethe_state_json(const bethe::BetheState& st) {
    json j;
    j["L"] = st.params.L;
    j["N"] = st.params.N;
    j["s"] = st.params.s;
    j["kappa"] = st.params.kappa;
    j["delta"] = st.params.delta;
    j["qn"] = st.qn.n;
    j["roots"] = st.roots;
    j["residual"] = st.residual_norm;
    j["iterations"] = st.iterations;
    j["converged"] = st.converged;
    return j.dump(json_indent);
}

std::string bethe_state_csv(const bethe::BetheState& st) {
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < st.roots.size(); ++k)
        rows.push_back({static_cast<double>(k), st.qn.n[k], st.roots[k]});
    return csv_table({"index", "quantum_number", "root"}, rows);
}

namespace {
std::string sea_csv(const thermo::SeaGrid& grid, const std::vector<double>& values) {
    std::vector<std::vector<double>> rows;
    const auto nodes = grid.full_nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::size_t half = nodes.size() / 2;
        const std::size_t src = (i < half) ? (half - 1 - i) : (i - half);
        rows.push_back({nodes[i], values[src]});
    }
    return csv_table({"lambda", "value"}, rows);
}
}  // namespace

std::string density_csv(const thermo::DensitySolution& sol) {
    return sea_csv(sol.grid, sol.rho_p);
}

std::string dressed_energy_csv(const thermo::DressedEnergySolution& sol) {
    return sea_csv(sol.grid, sol.eps);
}

std::string thermo_summary_json(const thermo::ThermoSummary& s) {
    json j;
    j["h"] = s.h;
    j["q"] = s.q;
    j["n_density"] = s.n_density;
    j["v_fermi"] = s.v_fermi;
    j["eps_inf"] = s.eps_inf;
    j["dressed_charge"] = s.xi;
    j["resolution"] = s.resolution;
    return j.dump(json_indent);
}

std::string scaling_series_csv(const scaling::ScalingSeries& series) {
    std::vector<std::vector<double>> rows;
    for (const auto& e : series.entries)
        rows.push_back({static_cast<double>(e.L), static_cast<double>(e.N), e.e_grand,
                        e.e_grand / e.L});
    return csv_table({"L", "N", "E", "E_over_L"}, rows);
}

std::string central_charge_json(const scaling::ScalingSeries& series,
                                const scaling::CentralChargeEstimate& est) {
    json j;
    j["h"] = series.h;
    j["c"] = est.c;
    j["stderr"] = est.stderr_c;
    j["a2"] = est.a2;
    j["v_fermi"] = series.thermo.v_fermi;
    j["eps_inf"] = series.thermo.eps_inf;
    j["n_density"] = series.thermo.n_density;
    j["dressed_charge"] = series.thermo.xi;
    j["q"] = series.thermo.q;
    j["window"] = {est.fit_window.first, est.fit_window.second};
    j["residuals"] = est.residuals;
    j["quantization_corrected"] = est.quantization_corrected;
    return j.dump(json_indent);
}

std::string entropy_trace_csv(const quench::EntropyTrace& trace) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        rows.push_back({trace.times[i], trace.values[i]});
    return csv_table({"t", "S"}, rows);
}

std::string entropy_trace_json(const quench::EntropyTrace& trace,
                               const quench::FitResult* fit) {
    json j;
    j["model"] = trace.model;
    j["protocol"] = trace.protocol;
    j["L"] = trace.sites;
    j["cut"] = trace.cut;
    j["points"] = trace.times.size();
    if (fit) {
        j["fit"]["c_eff"] = fit->c_eff;
        j["fit"]["tau_eff"] = fit->tau_eff;
        j["fit"]["slope"] = fit->slope;
        j["fit"]["intercept"] = fit->intercept;
        j["fit"]["window"] = {fit->window.first, fit->window.second};
        j["fit"]["residual"] = fit->residual;
    }
    return j.dump(json_indent);
}

std::string dis_prediction_json(const dis::DISKinematics& k, const dis::DISPrediction& p,
                                double c_used) {
    json j;
    j["kinematics"]["m_gev"] = k.m;
    j["kinematics"]["x"] = k.x;
    j["kinematics"]["q_gev"] = k.q;
    j["c"] = c_used;
    j["ell_gev_inv"] = p.ell;
    j["ell_fm"] = dis::to_femtometers(p.ell);
    j["radius_gev_inv"] = p.radius;
    j["radius_fm"] = dis::to_femtometers(p.radius);
    j["tau_gev_inv"] = p.tau;
    j["t_c_gev_inv"] = p.t_c;
    j["entropy_nats"] = p.entropy;
    j["delta"] = p.delta;
    j["delta_experimental"] = dis::delta_experimental;
    j["note"] = "delta = c/3 from the chain's central charge; experimental small-x fits "
                "indicate delta ~ 0.3";
    return j.dump(json_indent);
}

std::string entropy_curve_csv(const std::vector<double>& abscissa,
                              const std::vector<double>& entropy, const std::string& x_name) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < abscissa.size(); ++i)
        rows.push_back({abscissa[i], entropy[i]});
    return csv_table({x_name, "S"}, rows);
}

std::string chain_coo(const chain::ChainHamiltonian& h) {
    std::string out;
    for (const auto& [r, c, v] : h.triplets()) {
        out += std::to_string(r);
        out += ' ';
        out += std::to_string(c);
        out += ' ';
        out += format_double(v);
        out += " 0\n";  // the chain is real; im = 0
    }
    return out;
}

}  // namespace lsc::io
