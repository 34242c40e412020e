#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nhqc/dynamics.hpp"
#include "nhqc/entanglement.hpp"
#include "nhqc/grid.hpp"
#include "nhqc/spectral.hpp"
#include "nhqc/sweep.hpp"

namespace nhqc::io {

// shortest round-trip decimal form; CSV output is byte-stable across runs
std::string fmt(double x);

void ensure_dir(const std::string& path);

// writes only when content differs, keeping mtimes stable on reruns
bool write_text_if_changed(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

// "# nhqc <version>\n# config=<hash>\n" comment prologue for CSV files
std::string file_header(const std::string& config_hash);

// FNV-1a over the canonical JSON form of the physics-relevant config fields
// (output location, worker count and test hooks excluded)
std::string config_hash(const SweepConfig& config);

nlohmann::json params_to_json(const ModelParams& p);
ModelParams params_from_json(const nlohmann::json& j);

nlohmann::json sweep_config_to_json(const SweepConfig& c);
SweepConfig sweep_config_from_json(const nlohmann::json& j);
SweepConfig load_sweep_config(const std::string& path);

nlohmann::json cell_to_json(const CellResult& c);
CellResult cell_from_json(const nlohmann::json& j);

// ------------------------------------------------------------- CSV bodies

std::string spectrum_csv(const Eigen::VectorXcd& eigenvalues,
                         const std::vector<double>* ipr_per_state,
                         const std::string& config_hash);

std::string trace_csv(const EvolutionTrace& trace, const std::string& config_hash);

std::string ee_csv(const std::vector<EEDecomposition>& trace, const std::string& config_hash);

std::string forecast_csv(const JumpForecast& f, const std::string& config_hash);

std::string doublon_csv(const SpectralDecomposition& spec, const std::vector<int>& band,
                        const std::vector<double>& weights, const std::string& config_hash);

std::string heff_csv(const Eigen::VectorXcd& eigenvalues, const std::string& config_hash);

std::string pt_grid_csv(const PhaseGrid& grid);
std::string localization_grid_csv(const PhaseGrid& grid);
std::string winding_grid_csv(const PhaseGrid& grid);

}  // namespace nhqc::io
