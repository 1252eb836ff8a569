#include "lsc/run.hpp"

#include <Eigen/Core>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>

#include <json.hpp>

#include "lsc/bethe.hpp"
#include "lsc/config.hpp"
#include "lsc/dis.hpp"
#include "lsc/errors.hpp"
#include "lsc/quench.hpp"
#include "lsc/scaling.hpp"
#include "lsc/serialize.hpp"
#include "lsc/thermo.hpp"

namespace lsc::run {

using nlohmann::json;

namespace {

constexpr const char* artifact_version = "0.1.0";

struct Stage {
    std::string out_dir;
    OutputFormat format;
    json manifest;
    std::map<std::string, double> timings_ms;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void mark(const std::string& stage) {
        const auto now = std::chrono::steady_clock::now();
        timings_ms[stage] =
            std::chrono::duration<double, std::milli>(now - t0).count();
        t0 = now;
    }

    bool want_csv() const { return format != OutputFormat::Json; }
    bool want_json() const { return format != OutputFormat::Csv; }

    void emit(const std::string& name, const std::string& content, bool is_json) {
        if (is_json && !want_json()) return;
        if (!is_json && !want_csv()) return;
        const std::string path = out_dir + "/" + name;
        io::atomic_write(path, content);
        manifest["outputs"][name] = path;
    }

    std::string finish(const std::string& subcommand) {
        manifest["subcommand"] = subcommand;
        manifest["artifact_version"] = artifact_version;
        for (const auto& [k, v] : timings_ms) manifest["timings_ms"][k] = v;
        const std::string path = out_dir + "/manifest.json";
        io::atomic_write(path, manifest.dump(2) + "\n");
        return path;
    }
};

std::vector<double> time_grid(double t_max, double dt) {
    std::vector<double> t;
    for (double v = dt; v <= t_max + 1e-12; v += dt) t.push_back(v);
    return t;
}

void run_bethe(Stage& st, const std::string& cfg_text) {
    const auto cfg = config::parse_bethe(cfg_text);
    const auto params = bethe::ModelParams::holomorphic_qcd(cfg.L, cfg.N);
    bethe::QuantumNumbers qn;
    if (cfg.qn)
        qn.n = *cfg.qn;
    else
        qn = bethe::ground_state_quantum_numbers(cfg.L, cfg.N);
    bethe::SolveOptions opts;
    opts.tol = cfg.tol;
    const auto state = bethe::solve_bethe(params, qn, std::nullopt, opts);
    st.mark("solve");
    st.emit("bethe_state.json", io::bethe_state_json(state) + "\n", true);
    st.emit("bethe_roots.csv", io::bethe_state_csv(state), false);
    st.manifest["results"]["energy"] = bethe::energy(state);
    st.manifest["results"]["residual"] = state.residual_norm;
    st.manifest["results"]["tq_residual"] = bethe::tq_residual(state);
    st.manifest["results"]["iterations"] = state.iterations;
}

void run_thermo(Stage& st, const std::string& cfg_text) {
    const auto cfg = config::parse_thermo(cfg_text);
    thermo::FermiOptions fo;
    fo.resolution = cfg.resolution;
    fo.geometry = cfg.geometry;
    fo.map = cfg.map;
    double q = 0.0, h = std::nan("");
    if (cfg.h) {
        h = *cfg.h;
        q = thermo::find_fermi_point(h, fo);
    } else {
        q = *cfg.q;
    }
    auto dens = thermo::solve_density(q, cfg.resolution, cfg.geometry, cfg.map);
    dens.h = h;
    st.mark("density");
    st.emit("density.csv", io::density_csv(dens), false);
    st.manifest["results"]["q"] = q;
    st.manifest["results"]["n_density"] = dens.n_density;
    if (cfg.h) {
        const auto eps = thermo::solve_dressed_energy(q, h, cfg.resolution, cfg.geometry,
                                                      cfg.map);
        st.emit("dressed_energy.csv", io::dressed_energy_csv(eps), false);
        thermo::ThermoSummary s;
        s.h = h;
        s.q = q;
        s.resolution = cfg.resolution;
        s.n_density = dens.n_density;
        s.v_fermi = thermo::fermi_velocity(dens, eps);
        s.eps_inf = thermo::bulk_energy_density(dens, h);
        s.xi = thermo::dressed_charge(q, cfg.resolution, cfg.geometry, cfg.map);
        st.emit("thermo_summary.json", io::thermo_summary_json(s) + "\n", true);
        st.manifest["results"]["v_fermi"] = s.v_fermi;
        st.manifest["results"]["eps_inf"] = s.eps_inf;
        st.manifest["results"]["dressed_charge"] = s.xi;
        st.manifest["results"]["eps_at_q"] = eps.eps_at(q);
    }
    st.mark("dressed");
}

scaling::CentralChargeEstimate central_charge_stage(Stage& st,
                                                    const config::CentralChargeConfig& cfg,
                                                    scaling::ScalingSeries* series_out) {
    scaling::SeriesOptions so;
    so.fermi.resolution = cfg.resolution;
    so.candidate_span = cfg.candidate_span;
    auto series = scaling::ground_energy_series(cfg.h, cfg.l_list, so);
    st.mark("series");
    scaling::FitOptions fo;
    fo.with_l2_term = cfg.with_l2_term;
    fo.quantization_correction = cfg.quantization_correction;
    fo.eps_inf_from_thermo = cfg.eps_inf_from_thermo;
    fo.l_min = cfg.fit_l_min;
    fo.l_max = cfg.fit_l_max;
    const auto est = scaling::extract_central_charge(series, fo);
    st.mark("fit");
    st.emit("scaling_series.csv", io::scaling_series_csv(series), false);
    st.emit("central_charge.json", io::central_charge_json(series, est) + "\n", true);
    st.manifest["results"]["c"] = est.c;
    st.manifest["results"]["stderr"] = est.stderr_c;
    st.manifest["results"]["v_fermi"] = series.thermo.v_fermi;
    st.manifest["results"]["n_density"] = series.thermo.n_density;
    if (series_out) *series_out = series;
    return est;
}

void run_central_charge(Stage& st, const std::string& cfg_text) {
    central_charge_stage(st, config::parse_central_charge(cfg_text), nullptr);
}

void run_quench(Stage& st, const std::string& cfg_text) {
    const auto cfg = config::parse_quench(cfg_text);
    quench::QuenchSpec spec;
    spec.sites = cfg.L;
    spec.model = (cfg.model == "s-minus1") ? quench::QuenchModel::SMinusOne
                                           : quench::QuenchModel::XxxProxy;
    spec.n_max = cfg.n_max;
    spec.geometry = (cfg.geometry == "ring") ? quench::JoinGeometry::Ring
                                             : quench::JoinGeometry::Open;
    spec.times = time_grid(cfg.t_max, cfg.dt);
    spec.cut = cfg.cut;
    const auto trace = quench::run_local_quench(spec);
    st.mark("trace");

    double span = 0.0;
    for (double v : trace.values) span = std::max(span, v);
    if (span < 1e-10) {
        // A separable stationary initial state (the s = -1 chain vacuum)
        // produces no growth; record the trace and skip the log fit.
        st.emit("quench_trace.csv", io::entropy_trace_csv(trace), false);
        st.emit("quench_trace.json", io::entropy_trace_json(trace, nullptr) + "\n", true);
        st.manifest["results"]["flat_trace"] = true;
        st.manifest["results"]["note"] =
            "initial state is stationary under the joined chain; no entanglement growth";
        return;
    }

    double t_lo = cfg.fit_t_min, t_hi = cfg.fit_t_max;
    double t_sat = std::nan("");
    if (t_lo <= 0.0 || t_hi <= 0.0) {
        try {
            t_sat = quench::saturation_detect(trace, cfg.saturation_rate);
        } catch (const SolverError&) {
            t_sat = trace.times.back();
        }
        if (t_lo <= 0.0) t_lo = std::max(2.0 * cfg.dt, 0.5);
        if (t_hi <= 0.0) t_hi = std::max(0.5 * t_sat, t_lo + 6.0 * cfg.dt);
    }
    const auto fit = quench::fit_log_growth(trace, t_lo, t_hi);
    st.mark("fit");
    st.emit("quench_trace.csv", io::entropy_trace_csv(trace), false);
    st.emit("quench_trace.json", io::entropy_trace_json(trace, &fit) + "\n", true);
    st.manifest["results"]["c_eff"] = fit.c_eff;
    st.manifest["results"]["tau_eff"] = fit.tau_eff;
    if (std::isfinite(t_sat)) st.manifest["results"]["t_saturation"] = t_sat;
}

void run_osee(Stage& st, const std::string& cfg_text) {
    const auto cfg = config::parse_osee(cfg_text);
    quench::OseeSpec spec;
    spec.sites = cfg.L;
    spec.site = cfg.site;
    spec.cut = cfg.cut;
    if (cfg.op == "sz")
        spec.op = quench::OseeOperator::Sz;
    else if (cfg.op == "sx")
        spec.op = quench::OseeOperator::Sx;
    spec.periodic = cfg.periodic;
    spec.times = time_grid(cfg.t_max, cfg.dt);
    const auto trace = quench::run_osee_trace(spec);
    st.mark("trace");
    const double t_hi = (cfg.fit_t_max > 0.0) ? cfg.fit_t_max : trace.times.back();
    const auto fit = quench::fit_log_growth(trace, cfg.fit_t_min, t_hi);
    st.mark("fit");
    st.emit("osee_trace.csv", io::entropy_trace_csv(trace), false);
    st.emit("osee_trace.json", io::entropy_trace_json(trace, &fit) + "\n", true);
    st.manifest["results"]["prefactor"] = fit.slope;
    st.manifest["results"]["c_eff"] = fit.c_eff;
}

void emit_dis(Stage& st, double m, double x, double q_mom, double c_used) {
    dis::DISKinematics kin;
    kin.m = m;
    kin.x = x;
    kin.q = q_mom;
    auto pred = dis::probe_geometry(kin);
    pred.entropy = dis::entropy_at_x(c_used, x);
    pred.delta = dis::structure_function_exponent(c_used);
    st.emit("dis.json", io::dis_prediction_json(kin, pred, c_used) + "\n", true);

    // Plot-ready curves: S(x) at fixed c and S(t) across the growth window.
    std::vector<double> xs, sx;
    for (int i = 0; i <= 80; ++i) {
        const double lx = -4.0 + i * (4.0 / 80.0);  // x from 1e-4 to 1
        const double xv = std::pow(10.0, lx);
        if (xv >= 1.0) continue;
        xs.push_back(xv);
        sx.push_back(dis::entropy_at_x(c_used, xv));
    }
    st.emit("dis_S_of_x.csv", io::entropy_curve_csv(xs, sx, "x"), false);
    std::vector<double> ts, st_curve;
    const double t0 = pred.tau, t1 = 1.5 * pred.t_c;
    for (int i = 0; i <= 120; ++i) {
        const double t = t0 * std::pow(t1 / t0, i / 120.0);
        ts.push_back(t);
        st_curve.push_back(dis::entropy_vs_time(c_used, m, t, x));
    }
    st.emit("dis_S_of_t.csv", io::entropy_curve_csv(ts, st_curve, "t"), false);

    st.manifest["results"]["delta"] = pred.delta;
    st.manifest["results"]["delta_experimental"] = dis::delta_experimental;
    st.manifest["results"]["entropy_at_x"] = pred.entropy;
    st.manifest["results"]["ell_fm"] = dis::to_femtometers(pred.ell);
    st.manifest["results"]["c_used"] = c_used;
}

void run_dis(Stage& st, const std::string& cfg_text) {
    const auto cfg = config::parse_dis(cfg_text);
    double c_used = cfg.c;
    if (cfg.c_source == "pipeline") {
        const auto est = central_charge_stage(st, cfg.pipeline, nullptr);
        c_used = est.c;
    }
    emit_dis(st, cfg.m, cfg.x, cfg.q, c_used);
    st.mark("dis");
}

void run_pipeline(Stage& st, const std::string& cfg_text) {
    const auto cfg = config::parse_pipeline(cfg_text);
    const auto est = central_charge_stage(st, cfg.central_charge, nullptr);
    emit_dis(st, cfg.m, cfg.x, cfg.q, est.c);
    st.mark("dis");
}

}  // namespace

RunOutcome run_subcommand(const std::string& subcommand, const std::string& config_path,
                          const std::string& out_dir, OutputFormat format, int threads) {
    RunOutcome out;
    if (threads > 0) Eigen::setNbThreads(threads);
    try {
        std::filesystem::create_directories(out_dir);
        Stage st;
        st.out_dir = out_dir;
        st.format = format;
        const std::string cfg_text = config::read_file(config_path);
        st.manifest["config"] = json::parse(cfg_text, nullptr, true);
        st.manifest["config_path"] = config_path;

        if (subcommand == "bethe")
            run_bethe(st, cfg_text);
        else if (subcommand == "thermo")
            run_thermo(st, cfg_text);
        else if (subcommand == "central-charge")
            run_central_charge(st, cfg_text);
        else if (subcommand == "quench")
            run_quench(st, cfg_text);
        else if (subcommand == "osee")
            run_osee(st, cfg_text);
        else if (subcommand == "dis")
            run_dis(st, cfg_text);
        else if (subcommand == "pipeline")
            run_pipeline(st, cfg_text);
        else
            throw ConfigError("unknown subcommand: " + subcommand);

        out.manifest_path = st.finish(subcommand);
        out.message = subcommand + ": ok, manifest at " + out.manifest_path;
        out.exit_code = exit_ok;
    } catch (const ConfigError& e) {
        out.exit_code = exit_config;
        out.message = std::string("config error: ") + e.what();
    } catch (const json::exception& e) {
        out.exit_code = exit_config;
        out.message = std::string("config error: ") + e.what();
    } catch (const std::exception& e) {
        out.exit_code = exit_solver;
        out.message = std::string("solver error [") + subcommand + "]: " + e.what();
    }
    return out;
}

}  // namespace lsc::run
