#include "nhqc/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nhqc/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace nhqc::io {

std::string fmt(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

void ensure_dir(const std::string& path) { fs::create_directories(path); }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_parameter("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_text_if_changed(const std::string& path, const std::string& content) {
  if (fs::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (ss.str() == content) return false;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw invalid_parameter("cannot write file: " + path);
    out << content;
  }
  fs::rename(tmp, path);
  return true;
}

std::string file_header(const std::string& config_hash) {
  return std::string("# nhqc ") + kVersion + "\n# config=" + config_hash + "\n";
}

namespace {

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

json params_to_json(const ModelParams& p) {
  return json{{"J", p.J},         {"mu", p.mu},      {"alpha", p.alpha},
              {"U", p.U},         {"L", p.L},        {"theta", p.theta},
              {"boundary", p.boundary == Boundary::periodic ? "periodic" : "open"}};
}

ModelParams params_from_json(const json& j) {
  ModelParams p;
  p.J = j.value("J", p.J);
  p.mu = j.value("mu", p.mu);
  p.alpha = j.value("alpha", p.alpha);
  p.U = j.value("U", p.U);
  p.L = j.value("L", p.L);
  p.theta = j.value("theta", p.theta);
  const std::string b = j.value("boundary", "periodic");
  if (b == "periodic")
    p.boundary = Boundary::periodic;
  else if (b == "open")
    p.boundary = Boundary::open;
  else
    throw invalid_parameter("config: boundary must be 'periodic' or 'open'");
  return p;
}

json sweep_config_to_json(const SweepConfig& c) {
  json diags = json::array();
  for (auto d : c.diagnostics) diags.push_back(diagnostic_name(d));
  return json{{"model", params_to_json(c.base)},
              {"mu_range", {{"min", c.mu_range.min}, {"max", c.mu_range.max}, {"steps", c.mu_range.steps}}},
              {"u_range", {{"min", c.u_range.min}, {"max", c.u_range.max}, {"steps", c.u_range.steps}}},
              {"diagnostics", diags},
              {"epsilon_im", c.epsilon_im},
              {"tau_loc", c.tau_loc},
              {"n_theta", c.n_theta},
              {"time_grid",
               {{"t_min", c.time_grid.t_min}, {"t_max", c.time_grid.t_max}, {"per_decade", c.time_grid.per_decade}}},
              {"output_dir", c.output_dir},
              {"workers", c.parallelism}};
}

SweepConfig sweep_config_from_json(const json& j) {
  SweepConfig c;
  if (j.contains("model")) c.base = params_from_json(j.at("model"));
  auto range = [](const json& r, RangeSpec& out) {
    out.min = r.value("min", out.min);
    out.max = r.value("max", out.max);
    out.steps = r.value("steps", out.steps);
  };
  if (j.contains("mu_range")) range(j.at("mu_range"), c.mu_range);
  if (j.contains("u_range")) range(j.at("u_range"), c.u_range);
  if (j.contains("diagnostics")) {
    c.diagnostics.clear();
    for (const auto& name : j.at("diagnostics")) {
      auto d = diagnostic_from_name(name.get<std::string>());
      if (!d) throw invalid_parameter("config: unknown diagnostic '" + name.get<std::string>() + "'");
      c.diagnostics.insert(*d);
    }
  }
  c.epsilon_im = j.value("epsilon_im", c.epsilon_im);
  c.tau_loc = j.value("tau_loc", c.tau_loc);
  c.n_theta = j.value("n_theta", c.n_theta);
  if (j.contains("time_grid")) {
    const auto& t = j.at("time_grid");
    c.time_grid.t_min = t.value("t_min", c.time_grid.t_min);
    c.time_grid.t_max = t.value("t_max", c.time_grid.t_max);
    c.time_grid.per_decade = t.value("per_decade", c.time_grid.per_decade);
  }
  c.output_dir = j.value("output_dir", c.output_dir);
  c.parallelism = j.value("workers", c.parallelism);
  return c;
}

SweepConfig load_sweep_config(const std::string& path) {
  return sweep_config_from_json(json::parse(read_text(path)));
}

std::string config_hash(const SweepConfig& c) {
  json j = sweep_config_to_json(c);
  j.erase("output_dir");
  j.erase("workers");
  return fnv1a_hex(j.dump());
}

json cell_to_json(const CellResult& c) {
  json j{{"mu", c.mu}, {"U", c.U}, {"ok", c.ok}, {"wall_seconds", c.wall_seconds}};
  if (!c.error.empty()) j["error"] = c.error;
  if (c.pt)
    j["pt"] = {{"max_abs_imag", c.pt->max_abs_imag},
               {"rho_im", c.pt->rho_im},
               {"d_im", c.pt->d_im},
               {"epsilon_im", c.pt->epsilon_im}};
  if (c.loc)
    j["localization"] = {{"ipr_max", c.loc->ipr_max}, {"ipr_min", c.loc->ipr_min},
                         {"ipr_ave", c.loc->ipr_ave}, {"npr_ave", c.loc->npr_ave},
                         {"zeta", c.loc->zeta},       {"tau_loc", c.loc->tau_loc},
                         {"phase", phase_name(c.loc->phase)}};
  if (c.winding)
    j["winding"] = {{"w1", c.winding->w1},
                    {"w2", c.winding->w2},
                    {"raw_phase1", c.winding->raw_phase1},
                    {"raw_phase2", c.winding->raw_phase2},
                    {"E_B1", c.winding->e_b1},
                    {"E_B2", c.winding->e_b2}};
  return j;
}

CellResult cell_from_json(const json& j) {
  CellResult c;
  c.mu = j.at("mu").get<double>();
  c.U = j.at("U").get<double>();
  c.ok = j.at("ok").get<bool>();
  c.wall_seconds = j.value("wall_seconds", 0.0);
  c.error = j.value("error", "");
  if (j.contains("pt")) {
    const auto& p = j.at("pt");
    c.pt = PTDiagnostics{p.at("max_abs_imag"), p.at("rho_im"), p.at("d_im"), p.at("epsilon_im")};
  }
  if (j.contains("localization")) {
    const auto& l = j.at("localization");
    LocalizationStats s;
    s.ipr_max = l.at("ipr_max");
    s.ipr_min = l.at("ipr_min");
    s.ipr_ave = l.at("ipr_ave");
    s.npr_ave = l.at("npr_ave");
    s.zeta = l.at("zeta");
    s.tau_loc = l.at("tau_loc");
    const std::string ph = l.at("phase");
    s.phase = ph == "extended" ? Phase::Extended
              : ph == "critical" ? Phase::Critical
                                 : Phase::Localized;
    c.loc = s;
  }
  if (j.contains("winding")) {
    const auto& w = j.at("winding");
    c.winding = WindingStats{w.at("w1"), w.at("w2"),   w.at("raw_phase1"),
                             w.at("raw_phase2"), w.at("E_B1"), w.at("E_B2")};
  }
  return c;
}

// ------------------------------------------------------------- CSV bodies

std::string spectrum_csv(const Eigen::VectorXcd& eigenvalues,
                         const std::vector<double>* ipr_per_state,
                         const std::string& hash) {
  std::string s = file_header(hash);
  s += "index,re_E,im_E,ipr\n";
  for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
    s += std::to_string(j) + ',' + fmt(eigenvalues[j].real()) + ',' + fmt(eigenvalues[j].imag());
    s += ',';
    if (ipr_per_state) s += fmt((*ipr_per_state)[j]);
    else s += "nan";
    s += '\n';
  }
  return s;
}

std::string trace_csv(const EvolutionTrace& trace, const std::string& hash) {
  std::string s = file_header(hash);
  s += "t,l,rho\n";
  for (std::size_t it = 0; it < trace.times.size(); ++it)
    for (Eigen::Index l = 0; l < trace.densities.cols(); ++l) {
      s += fmt(trace.times[it]) + ',' + std::to_string(l + 1) + ',' +
           fmt(trace.densities(static_cast<Eigen::Index>(it), l)) + '\n';
    }
  return s;
}

std::string ee_csv(const std::vector<EEDecomposition>& trace, const std::string& hash) {
  std::string s = file_header(hash);
  s += "t,p0,p1,p2,s_num,s_conf,s_total\n";
  for (const auto& d : trace) {
    s += fmt(d.time) + ',' + fmt(d.p_sector[0]) + ',' + fmt(d.p_sector[1]) + ',' +
         fmt(d.p_sector[2]) + ',' + fmt(d.s_num) + ',' + fmt(d.s_conf) + ',' + fmt(d.s_total) +
         '\n';
  }
  return s;
}

std::string forecast_csv(const JumpForecast& f, const std::string& hash) {
  std::string s = file_header(hash);
  s += "rank,j,l_peak,im_E,overlap\n";
  for (std::size_t r = 0; r < f.ranked_states.size(); ++r) {
    const auto& st = f.ranked_states[r];
    s += std::to_string(r + 1) + ',' + std::to_string(st.j) + ',' + std::to_string(st.l_peak) +
         ',' + fmt(st.im_E) + ',' + fmt(st.overlap) + '\n';
  }
  return s;
}

std::string doublon_csv(const SpectralDecomposition& spec, const std::vector<int>& band,
                        const std::vector<double>& weights, const std::string& hash) {
  std::string s = file_header(hash);
  s += "index,re_E,im_E,weight\n";
  for (std::size_t r = 0; r < band.size(); ++r) {
    const int j = band[r];
    s += std::to_string(j) + ',' + fmt(spec.eigenvalues[j].real()) + ',' +
         fmt(spec.eigenvalues[j].imag()) + ',' + fmt(weights[r]) + '\n';
  }
  return s;
}

std::string heff_csv(const Eigen::VectorXcd& eigenvalues, const std::string& hash) {
  std::string s = file_header(hash);
  s += "index,re_E,im_E\n";
  for (Eigen::Index j = 0; j < eigenvalues.size(); ++j)
    s += std::to_string(j) + ',' + fmt(eigenvalues[j].real()) + ',' +
         fmt(eigenvalues[j].imag()) + '\n';
  return s;
}

namespace {

template <typename RowFn>
std::string grid_csv(const PhaseGrid& grid, const std::string& columns, RowFn row) {
  std::string s = file_header(grid.config_hash);
  s += columns;
  for (std::size_t iu = 0; iu < grid.u_values.size(); ++iu)
    for (std::size_t imu = 0; imu < grid.mu_values.size(); ++imu) row(s, grid.cell(imu, iu));
  return s;
}

}  // namespace

std::string pt_grid_csv(const PhaseGrid& grid) {
  return grid_csv(grid, "mu,U,max_abs_imag,rho_im,d_im\n", [](std::string& s, const CellResult& c) {
    if (!c.ok || !c.pt) return;
    s += fmt(c.mu) + ',' + fmt(c.U) + ',' + fmt(c.pt->max_abs_imag) + ',' + fmt(c.pt->rho_im) +
         ',' + std::to_string(c.pt->d_im) + '\n';
  });
}

std::string localization_grid_csv(const PhaseGrid& grid) {
  return grid_csv(grid, "mu,U,ipr_max,ipr_min,ipr_ave,npr_ave,zeta,phase\n",
                  [](std::string& s, const CellResult& c) {
                    if (!c.ok || !c.loc) return;
                    s += fmt(c.mu) + ',' + fmt(c.U) + ',' + fmt(c.loc->ipr_max) + ',' +
                         fmt(c.loc->ipr_min) + ',' + fmt(c.loc->ipr_ave) + ',' +
                         fmt(c.loc->npr_ave) + ',' + fmt(c.loc->zeta) + ',' +
                         phase_name(c.loc->phase) + '\n';
                  });
}

std::string winding_grid_csv(const PhaseGrid& grid) {
  return grid_csv(grid, "mu,U,w1,w2,raw_phase1,raw_phase2,E_B1,E_B2\n",
                  [](std::string& s, const CellResult& c) {
                    if (!c.ok || !c.winding) return;
                    s += fmt(c.mu) + ',' + fmt(c.U) + ',' + std::to_string(c.winding->w1) + ',' +
                         std::to_string(c.winding->w2) + ',' + fmt(c.winding->raw_phase1) + ',' +
                         fmt(c.winding->raw_phase2) + ',' + fmt(c.winding->e_b1) + ',' +
                         fmt(c.winding->e_b2) + '\n';
                  });
}

}  // namespace nhqc::io
