// qwalk: command-line front end for simulations, spectra, entropy traces,
// decoherence times and parameter sweeps.

#include "qwalk/qwalk.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

struct WalkOptions {
  int n = 5;
  double p = 0.0;
  std::string beta = "pi/4";
  std::string psi0 = "1,0,0,0";

  qwalk::WalkParams params() const {
    qwalk::WalkParams wp;
    wp.n_sites = n;
    wp.decoherence_rate = p;
    wp.coin_angle = qwalk::io::parse_angle(beta);
    wp.initial_coin = qwalk::parse_coin_state(psi0);
    wp.validate();
    return wp;
  }
};

void add_walk_options(CLI::App* cmd, WalkOptions& w, bool with_psi0 = true) {
  cmd->add_option("--n", w.n, "cycle length N")->required();
  cmd->add_option("--p", w.p, "decoherence rate in [0,1]")->required();
  cmd->add_option("--beta", w.beta, "coin angle in (0, pi/2); accepts forms like pi/4")
      ->capture_default_str();
  if (with_psi0) {
    cmd->add_option("--psi0", w.psi0, "initial coin state a_re,a_im,b_re,b_im")
        ->capture_default_str();
  }
}

void emit(const qwalk::io::CsvTable& table, const std::string& path, qwalk::OutputFormat format) {
  if (path.empty() || path == "-") {
    qwalk::write_table(std::cout, table, format);
  } else {
    qwalk::write_table_file(path, table, format);
  }
}

qwalk::io::CsvTable spectrum_table(const qwalk::WalkParams& params, int k, int kp, bool all_pairs) {
  qwalk::io::CsvTable table;
  table.metadata = {{"n_sites", std::to_string(params.n_sites)},
                    {"decoherence_rate", qwalk::io::format_double(params.decoherence_rate)},
                    {"coin_angle", qwalk::io::format_double(params.coin_angle)}};
  table.header = {"k", "k_prime"};
  for (int i = 0; i < 4; ++i) {
    table.header.push_back("re" + std::to_string(i));
    table.header.push_back("im" + std::to_string(i));
  }
  for (const char* name : {"max_modulus", "spectral_gap", "mult_plus_one", "mult_minus_one",
                           "max_residual", "unit_structure_ok"}) {
    table.header.emplace_back(name);
  }
  auto add = [&](int a, int b) {
    const auto rep = qwalk::spectrum(a, b, params);
    std::vector<std::string> cells = {std::to_string(a), std::to_string(b)};
    for (const auto& lambda : rep.eigenvalues) {
      cells.push_back(qwalk::io::format_double(lambda.real()));
      cells.push_back(qwalk::io::format_double(lambda.imag()));
    }
    cells.push_back(qwalk::io::format_double(rep.max_modulus));
    cells.push_back(qwalk::io::format_double(rep.spectral_gap));
    cells.push_back(std::to_string(rep.multiplicity_of(1.0)));
    cells.push_back(std::to_string(rep.multiplicity_of(-1.0)));
    cells.push_back(qwalk::io::format_double(rep.max_residual));
    cells.push_back(rep.unit_structure_ok ? (*rep.unit_structure_ok ? "1" : "0") : "na");
    table.rows.push_back(std::move(cells));
  };
  if (all_pairs) {
    for (int a = 0; a < params.n_sites; ++a)
      for (int b = 0; b < params.n_sites; ++b) add(a, b);
  } else {
    add(k, kp);
  }
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time quantum walk on the N-cycle with coin decoherence"};
  app.require_subcommand(1);

  // simulate
  WalkOptions sim_walk;
  int sim_tmax = 0;
  int sim_every = 1;
  std::string sim_backend = "fourier";
  std::string sim_out;
  std::string sim_format = "csv";
  auto* sim = app.add_subcommand("simulate", "evolve the walk and emit one row per recorded step");
  add_walk_options(sim, sim_walk);
  sim->add_option("--tmax", sim_tmax, "final time step")->required();
  sim->add_option("--every", sim_every, "record every k-th step")->capture_default_str();
  sim->add_option("--backend", sim_backend, "direct | fourier | both")->capture_default_str();
  sim->add_option("--out", sim_out, "output path (stdout if omitted)");
  sim->add_option("--format", sim_format, "csv | json")->capture_default_str();

  // spectrum
  WalkOptions spec_walk;
  int spec_k = -1;
  int spec_kp = -1;
  std::string spec_out;
  auto* spec = app.add_subcommand("spectrum", "eigenvalues of the coin superoperator");
  add_walk_options(spec, spec_walk, false);
  auto* k_opt = spec->add_option("--k", spec_k, "momentum index k");
  auto* kp_opt = spec->add_option("--kprime", spec_kp, "momentum index k'");
  k_opt->needs(kp_opt);
  kp_opt->needs(k_opt);
  spec->add_option("--out", spec_out, "output path (stdout if omitted)");

  // entropy
  WalkOptions ent_walk;
  int ent_tmax = 0;
  int ent_every = 1;
  std::string ent_backend = "fourier";
  std::string ent_out;
  auto* ent = app.add_subcommand("entropy", "total, coin, walker entropies and mutual information");
  add_walk_options(ent, ent_walk);
  ent->add_option("--tmax", ent_tmax, "final time step")->required();
  ent->add_option("--every", ent_every, "record every k-th step")->capture_default_str();
  ent->add_option("--backend", ent_backend, "direct | fourier")->capture_default_str();
  ent->add_option("--out", ent_out, "output path (stdout if omitted)");

  // dtime
  WalkOptions dt_walk;
  double dt_eps = 1e-3;
  int dt_tmax = 0;
  int dt_every = 1;
  std::string dt_out;
  auto* dt = app.add_subcommand("dtime", "decoherence time D(epsilon)");
  add_walk_options(dt, dt_walk);
  dt->add_option("--epsilon", dt_eps, "trace-distance threshold")->required();
  dt->add_option("--tmax", dt_tmax, "time horizon")->required();
  dt->add_option("--every", dt_every, "record every k-th step")->capture_default_str();
  dt->add_option("--out", dt_out, "write the distance curve as CSV");

  // sweep
  std::string sweep_cfg;
  std::string sweep_out;
  auto* sw = app.add_subcommand("sweep", "grid over N, p, beta driven by a key=value config");
  sw->add_option("--config", sweep_cfg, "config file")->required()->check(CLI::ExistingFile);
  sw->add_option("--out", sweep_out, "output path (overrides 'out' in the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sim) {
      qwalk::ExperimentSpec s;
      s.params = sim_walk.params();
      s.t_max = sim_tmax;
      s.record_every = sim_every;
      s.backend = qwalk::parse_backend(sim_backend);
      s.output_path = sim_out;
      s.output_format = qwalk::parse_format(sim_format);
      emit(qwalk::trajectory_table(qwalk::run_trajectory(s)), s.output_path, s.output_format);
    } else if (*spec) {
      const auto params = spec_walk.params();
      emit(spectrum_table(params, spec_k, spec_kp, k_opt->count() == 0), spec_out,
           qwalk::OutputFormat::csv);
    } else if (*ent) {
      qwalk::ExperimentSpec s;
      s.params = ent_walk.params();
      s.t_max = ent_tmax;
      s.record_every = ent_every;
      s.backend = qwalk::parse_backend(ent_backend);
      if (s.backend == qwalk::Backend::both) s.backend = qwalk::Backend::fourier;
      emit(qwalk::entropy_table(qwalk::run_trajectory(s)), ent_out, qwalk::OutputFormat::csv);
    } else if (*dt) {
      qwalk::ExperimentSpec s;
      s.params = dt_walk.params();
      s.t_max = dt_tmax;
      s.record_every = dt_every;
      s.epsilon = dt_eps;
      const auto result = qwalk::decoherence_time(s);
      std::cout << "epsilon=" << qwalk::io::format_double(result.epsilon) << '\n';
      std::cout << "d_epsilon="
                << (result.d_epsilon ? std::to_string(*result.d_epsilon) : "not_reached") << '\n';
      if (!result.distance_curve.empty()) {
        std::cout << "final_distance="
                  << qwalk::io::format_double(result.distance_curve.back().distance) << '\n';
      }
      if (!dt_out.empty()) {
        qwalk::write_table_file(dt_out, qwalk::distance_table(result, s), qwalk::OutputFormat::csv);
      }
    } else if (*sw) {
      auto cfg = qwalk::sweep_config_from(qwalk::io::parse_config_file(sweep_cfg));
      if (!sweep_out.empty()) cfg.base.output_path = sweep_out;
      const auto rows = qwalk::run_sweep(cfg);
      emit(qwalk::sweep_table(cfg, rows), cfg.base.output_path, cfg.base.output_format);
    }
  } catch (const std::exception& e) {
    std::cerr << "qwalk: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
