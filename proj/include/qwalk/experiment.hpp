// Experiment engine: trajectory runs over either backend, decoherence-time
// estimation, parameter sweeps, and CSV/JSON serialisation of the results.
#pragma once

#include "qwalk/entropy.hpp"
#include "qwalk/evolution_direct.hpp"
#include "qwalk/evolution_fourier.hpp"
#include "qwalk/io.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk_core.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qwalk {

enum class Backend { direct, fourier, both };
enum class OutputFormat { csv, json };

inline std::string to_string(Backend b) {
  switch (b) {
    case Backend::direct: return "direct";
    case Backend::fourier: return "fourier";
    case Backend::both: return "both";
  }
  return "?";
}

inline std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

inline Backend parse_backend(const std::string& s) {
  if (s == "direct") return Backend::direct;
  if (s == "fourier") return Backend::fourier;
  if (s == "both") return Backend::both;
  throw std::invalid_argument("unknown backend '" + s + "' (expected direct, fourier or both)");
}

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + s + "' (expected csv or json)");
}

/// "a_re,a_im,b_re,b_im" -> (a, b)
inline CoinState parse_coin_state(const std::string& s) {
  const auto parts = io::split(s, ',');
  if (parts.size() != 4) {
    throw std::invalid_argument("coin state needs four numbers a_re,a_im,b_re,b_im");
  }
  return CoinState(Complex(io::parse_double(parts[0]), io::parse_double(parts[1])),
                   Complex(io::parse_double(parts[2]), io::parse_double(parts[3])));
}

inline std::string format_coin_state(const CoinState& psi) {
  return io::format_double(psi(0).real()) + "," + io::format_double(psi(0).imag()) + "," +
         io::format_double(psi(1).real()) + "," + io::format_double(psi(1).imag());
}

struct ExperimentSpec {
  WalkParams params;
  int t_max = 0;
  int record_every = 1;
  Backend backend = Backend::fourier;
  double epsilon = 1e-3;
  std::string output_path;
  OutputFormat output_format = OutputFormat::csv;

  void validate() const {
    params.validate();
    if (t_max < 0) throw std::invalid_argument("t_max must be >= 0");
    if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  }

  /// Run configuration, in a fixed key order, for file metadata.
  std::vector<std::pair<std::string, std::string>> metadata() const {
    return {{"n_sites", std::to_string(params.n_sites)},
            {"decoherence_rate", io::format_double(params.decoherence_rate)},
            {"coin_angle", io::format_double(params.coin_angle)},
            {"initial_coin", format_coin_state(params.initial_coin)},
            {"t_max", std::to_string(t_max)},
            {"record_every", std::to_string(record_every)},
            {"backend", to_string(backend)},
            {"epsilon", io::format_double(epsilon)}};
  }
};

struct TrajectoryRow {
  int t = 0;
  std::vector<double> probabilities;
  EntropyRecord entropy;
  double trace_distance = 0.0;  // to the (parity-matched) stationary operator
  std::optional<double> backend_discrepancy;
};

struct Trajectory {
  ExperimentSpec spec;
  std::vector<TrajectoryRow> rows;
};

/// Advances whichever backends the spec asks for in lock step.
class TrajectoryStepper {
 public:
  explicit TrajectoryStepper(const ExperimentSpec& spec) : backend_(spec.backend) {
    if (backend_ != Backend::fourier) direct_.emplace(spec.params);
    if (backend_ != Backend::direct) fourier_.emplace(spec.params);
  }

  void advance() {
    if (direct_) direct_->advance();
    if (fourier_) fourier_->advance();
    ++time_;
  }

  int time() const { return time_; }

  /// Primary state: Fourier reconstruction when available, else direct.
  DensityMatrix state() const {
    return fourier_ ? reconstruct_density(fourier_->field()) : direct_->state();
  }

  std::optional<double> discrepancy(const DensityMatrix& primary) const {
    if (backend_ != Backend::both) return std::nullopt;
    return trace_distance(primary, direct_->state());
  }

 private:
  Backend backend_;
  std::optional<DirectEvolver> direct_;
  std::optional<FourierEvolver> fourier_;
  int time_ = 0;
};

inline Trajectory run_trajectory(const ExperimentSpec& spec) {
  spec.validate();
  Trajectory traj{spec, {}};
  TrajectoryStepper stepper(spec);
  for (int t = 0; t <= spec.t_max; ++t) {
    if (t > 0) stepper.advance();
    if (t % spec.record_every != 0) continue;
    const DensityMatrix rho = stepper.state();
    TrajectoryRow row;
    row.t = t;
    row.probabilities = position_distribution(rho);
    row.entropy = mutual_information(rho, t);
    row.trace_distance = trace_distance(rho, stationary_density_at(spec.params.n_sites, t));
    row.backend_discrepancy = stepper.discrepancy(rho);
    traj.rows.push_back(std::move(row));
  }
  return traj;
}

struct DistancePoint {
  int t;
  double distance;
};

struct DecoherenceTimeResult {
  double epsilon = 0.0;
  std::optional<int> d_epsilon;  // empty: not reached within t_max
  std::vector<DistancePoint> distance_curve;
};

/// Smallest recorded tau such that every recorded t > tau has distance
/// below epsilon. If the last recorded point is still at or above epsilon
/// the bound was not reached.
inline DecoherenceTimeResult decoherence_time_from_curve(double epsilon,
                                                         std::vector<DistancePoint> curve) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  DecoherenceTimeResult result{epsilon, std::nullopt, std::move(curve)};
  if (result.distance_curve.empty()) return result;
  int tau = 0;
  bool violated = false;
  for (const auto& point : result.distance_curve) {
    if (point.distance >= epsilon) {
      tau = point.t;
      violated = true;
    }
  }
  if (violated && tau == result.distance_curve.back().t) return result;
  result.d_epsilon = tau;
  return result;
}

inline DecoherenceTimeResult decoherence_time(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.params.decoherence_rate == 0.0) {
    throw std::domain_error(
        "decoherence time is undefined for p = 0: coherent evolution has no stationary state");
  }
  ExperimentSpec single = spec;
  if (single.backend == Backend::both) single.backend = Backend::fourier;
  TrajectoryStepper stepper(single);
  std::vector<DistancePoint> curve;
  for (int t = 0; t <= spec.t_max; ++t) {
    if (t > 0) stepper.advance();
    if (t % spec.record_every != 0) continue;
    curve.push_back(
        {t, trace_distance(stepper.state(), stationary_density_at(spec.params.n_sites, t))});
  }
  return decoherence_time_from_curve(spec.epsilon, std::move(curve));
}

inline std::vector<DistancePoint> distance_curve(const Trajectory& traj) {
  std::vector<DistancePoint> curve;
  curve.reserve(traj.rows.size());
  for (const auto& row : traj.rows) curve.push_back({row.t, row.trace_distance});
  return curve;
}

// ---------------------------------------------------------------------------
// Tables

inline io::CsvTable trajectory_table(const Trajectory& traj) {
  io::CsvTable table;
  table.metadata = traj.spec.metadata();
  const int n = traj.spec.params.n_sites;
  table.header.push_back("t");
  for (int x = 0; x < n; ++x) table.header.push_back("x" + std::to_string(x));
  for (const char* name : {"s_total", "s_coin", "s_walker", "mutual_info", "trace_distance"}) {
    table.header.emplace_back(name);
  }
  const bool both = traj.spec.backend == Backend::both;
  if (both) table.header.emplace_back("backend_discrepancy");
  for (const auto& row : traj.rows) {
    std::vector<std::string> cells;
    cells.push_back(std::to_string(row.t));
    for (double p : row.probabilities) cells.push_back(io::format_double(p));
    for (double v : {row.entropy.s_total, row.entropy.s_coin, row.entropy.s_walker,
                     row.entropy.mutual_info, row.trace_distance}) {
      cells.push_back(io::format_double(v));
    }
    if (both) cells.push_back(io::format_double(row.backend_discrepancy.value_or(0.0)));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

inline io::CsvTable entropy_table(const Trajectory& traj) {
  io::CsvTable table;
  table.metadata = traj.spec.metadata();
  table.header = {"t", "s_total", "s_coin", "s_walker", "mutual_info"};
  for (const auto& row : traj.rows) {
    table.rows.push_back({std::to_string(row.t), io::format_double(row.entropy.s_total),
                          io::format_double(row.entropy.s_coin),
                          io::format_double(row.entropy.s_walker),
                          io::format_double(row.entropy.mutual_info)});
  }
  return table;
}

inline io::CsvTable distance_table(const DecoherenceTimeResult& result,
                                   const ExperimentSpec& spec) {
  io::CsvTable table;
  table.metadata = spec.metadata();
  table.metadata.emplace_back("d_epsilon", result.d_epsilon ? std::to_string(*result.d_epsilon)
                                                             : std::string("not_reached"));
  table.header = {"t", "trace_distance"};
  for (const auto& p : result.distance_curve) {
    table.rows.push_back({std::to_string(p.t), io::format_double(p.distance)});
  }
  return table;
}

/// JSON rendering of a table. Cells that parse as numbers become numbers.
inline nlohmann::ordered_json table_to_json(const io::CsvTable& table) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.metadata) meta[k] = v;
  j["metadata"] = meta;
  j["columns"] = table.header;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      try {
        r.push_back(io::parse_double(cell));
      } catch (const std::invalid_argument&) {
        r.push_back(cell);
      }
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

inline void write_table(std::ostream& out, const io::CsvTable& table, OutputFormat format) {
  if (format == OutputFormat::csv) {
    io::write_csv(out, table);
  } else {
    out << table_to_json(table).dump(2) << '\n';
  }
}

inline void write_table_file(const std::string& path, const io::CsvTable& table,
                             OutputFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_table(out, table, format);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepGrid {
  std::vector<int> n_sites;
  std::vector<double> decoherence_rates;
  std::vector<double> coin_angles;
};

struct SweepConfig {
  SweepGrid grid;
  ExperimentSpec base;  // params.n_sites/p/beta are overridden per point
};

struct SweepRow {
  int n_sites = 0;
  double decoherence_rate = 0.0;
  double coin_angle = 0.0;
  std::optional<EntropyRecord> final_entropy;
  std::string d_epsilon;  // integer, "not_reached", or "undefined" at p = 0
  std::optional<double> min_spectral_gap;
  std::string status = "ok";
};

inline SweepRow run_sweep_point(const ExperimentSpec& base, int n, double p, double beta) {
  SweepRow row;
  row.n_sites = n;
  row.decoherence_rate = p;
  row.coin_angle = beta;
  try {
    ExperimentSpec spec = base;
    spec.params.n_sites = n;
    spec.params.decoherence_rate = p;
    spec.params.coin_angle = beta;
    const Trajectory traj = run_trajectory(spec);
    row.final_entropy = traj.rows.back().entropy;
    if (p > 0.0) {
      const auto dt = decoherence_time_from_curve(spec.epsilon, distance_curve(traj));
      row.d_epsilon = dt.d_epsilon ? std::to_string(*dt.d_epsilon) : "not_reached";
    } else {
      row.d_epsilon = "undefined";
    }
    row.min_spectral_gap = min_spectral_gap(spec.params);
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

inline std::vector<SweepRow> run_sweep(const SweepConfig& config, unsigned workers = 0) {
  auto axis = [](auto values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
  };
  const auto ns = axis(config.grid.n_sites);
  const auto ps = axis(config.grid.decoherence_rates);
  const auto betas = axis(config.grid.coin_angles);
  if (ns.empty() || ps.empty() || betas.empty()) {
    throw std::invalid_argument("sweep grid must have at least one value on every axis");
  }

  struct Point {
    int n;
    double p;
    double beta;
  };
  std::vector<Point> points;
  for (int n : ns)
    for (double p : ps)
      for (double b : betas) points.push_back({n, p, b});

  std::vector<SweepRow> rows(points.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(points.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      rows[i] = run_sweep_point(config.base, points[i].n, points[i].p, points[i].beta);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return rows;
}

inline io::CsvTable sweep_table(const SweepConfig& config, const std::vector<SweepRow>& rows) {
  io::CsvTable table;
  table.metadata = config.base.metadata();
  std::erase_if(table.metadata, [](const auto& kv) {
    return kv.first == "n_sites" || kv.first == "decoherence_rate" || kv.first == "coin_angle";
  });
  table.header = {"n",        "p",           "beta",      "s_total",          "s_coin",
                  "s_walker", "mutual_info", "d_epsilon", "min_spectral_gap", "status"};
  for (const auto& r : rows) {
    std::vector<std::string> cells = {std::to_string(r.n_sites), io::format_double(r.decoherence_rate),
                                      io::format_double(r.coin_angle)};
    if (r.final_entropy) {
      for (double v : {r.final_entropy->s_total, r.final_entropy->s_coin, r.final_entropy->s_walker,
                       r.final_entropy->mutual_info}) {
        cells.push_back(io::format_double(v));
      }
    } else {
      cells.insert(cells.end(), 4, "");
    }
    cells.push_back(r.d_epsilon);
    cells.push_back(r.min_spectral_gap ? io::format_double(*r.min_spectral_gap) : "");
    cells.push_back(r.status);
    table.rows.push_back(std::move(cells));
  }
  return table;
}

namespace detail {

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
  std::vector<T> out;
  for (const auto& item : io::split(text, ',')) {
    if (!item.empty()) out.push_back(parse(item));
  }
  return out;
}

}  // namespace detail

/// Builds a sweep from key=value settings. Grid axes: n, p, beta (comma
/// lists). Per-point keys: psi0, tmax, every, epsilon, backend, out, format.
inline SweepConfig sweep_config_from(const std::map<std::string, std::string>& kv) {
  static const char* known[] = {"n",     "p",     "beta",    "psi0", "tmax",
                                "every", "epsilon", "backend", "out",  "format"};
  for (const auto& [key, value] : kv) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw std::invalid_argument("unknown sweep config key '" + key + "'");
    }
  }
  auto required = [&kv](const char* key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument(std::string("sweep config is missing '") + key + "'");
    return it->second;
  };
  SweepConfig cfg;
  cfg.grid.n_sites = detail::parse_list<int>(required("n"), io::parse_int);
  cfg.grid.decoherence_rates = detail::parse_list<double>(required("p"), io::parse_double);
  cfg.grid.coin_angles = detail::parse_list<double>(
      kv.contains("beta") ? kv.at("beta") : std::string("pi/4"), io::parse_angle);
  cfg.base.t_max = io::parse_int(required("tmax"));
  if (kv.contains("psi0")) cfg.base.params.initial_coin = parse_coin_state(kv.at("psi0"));
  if (kv.contains("every")) cfg.base.record_every = io::parse_int(kv.at("every"));
  if (kv.contains("epsilon")) cfg.base.epsilon = io::parse_double(kv.at("epsilon"));
  if (kv.contains("backend")) cfg.base.backend = parse_backend(kv.at("backend"));
  if (kv.contains("out")) cfg.base.output_path = kv.at("out");
  if (kv.contains("format")) cfg.base.output_format = parse_format(kv.at("format"));
  if (cfg.base.t_max < 0 || cfg.base.record_every < 1 || !(cfg.base.epsilon > 0.0)) {
    throw std::invalid_argument("sweep config has invalid tmax, every or epsilon");
  }
  return cfg;
}

}  // namespace qwalk
