#pragma once

#include <string>
#include <vector>

#include "lsc/bethe.hpp"
#include "lsc/chain.hpp"
#include "lsc/dis.hpp"
#include "lsc/quench.hpp"
#include "lsc/scaling.hpp"
#include "lsc/thermo.hpp"

namespace lsc::io {

/// Shortest round-trip decimal form; identical input bits give identical text.
std::string format_double(double v);

/// Write via a temporary file in the same directory plus rename, so readers
/// never observe a partial file.
void atomic_write(const std::string& path, const std::string& content);

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

// JSON records (strings; the CLI embeds them into run manifests).
std::string bethe_state_json(const bethe::BetheState& st);
std::string bethe_state_csv(const bethe::BetheState& st);

std::string density_csv(const thermo::DensitySolution& sol);
std::string dressed_energy_csv(const thermo::DressedEnergySolution& sol);
std::string thermo_summary_json(const thermo::ThermoSummary& s);

std::string scaling_series_csv(const scaling::ScalingSeries& series);
std::string central_charge_json(const scaling::ScalingSeries& series,
                                const scaling::CentralChargeEstimate& est);

std::string entropy_trace_csv(const quench::EntropyTrace& trace);
std::string entropy_trace_json(const quench::EntropyTrace& trace,
                               const quench::FitResult* fit);

std::string dis_prediction_json(const dis::DISKinematics& k, const dis::DISPrediction& p,
                                double c_used);
std::string entropy_curve_csv(const std::vector<double>& abscissa,
                              const std::vector<double>& entropy, const std::string& x_name);

/// Sparse export, one "row col re im" line per nonzero (text, lexicographic
/// column-major order).
std::string chain_coo(const chain::ChainHamiltonian& h);

}  // namespace lsc::io
