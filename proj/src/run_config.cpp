#include "chronoscv/run_config.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "chronoscv/criteria.hpp"
#include "chronoscv/spacetime_wigner.hpp"
#include "chronoscv/tomography.hpp"
#include "chronoscv/trajectory.hpp"

namespace chronoscv::runcfg {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

void check_keys(const json& j, const std::vector<std::string>& allowed, const char* where) {
  for (const auto& [k, v] : j.items()) {
    (void)v;
    bool ok = false;
    for (const auto& a : allowed) ok = ok || (k == a);
    if (!ok) throw std::invalid_argument(std::string(where) + ": unknown key '" + k + "'");
  }
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("task")) {
    throw std::invalid_argument("config must be an object with a 'task' key");
  }
  return j;
}

struct Sidecar {
  json meta = json::object();
  void add_residual(const std::string& k, double v) { meta["residuals"][k] = v; }
  void add_tolerance(const std::string& k, double v) { meta["tolerances"][k] = v; }
};

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

void write_sidecar(const std::string& artifact_path, const json& config, const RunOptions& opts,
                   Sidecar side) {
  side.meta["version"] = kVersion;
  side.meta["task"] = config.at("task");
  side.meta["config_hash"] = chronoscv::fnv1a_hex(config.dump());
  side.meta["deterministic"] = opts.deterministic;
  write_json_file(artifact_path + ".meta.json", side.meta);
}

std::string out_path(const RunOptions& opts, const json& cfg, const char* fallback,
                     const char* ext) {
  const std::string name = cfg.value("out_name", std::string(fallback));
  return opts.out_dir + "/" + name + ext;
}

std::uint64_t pick_seed(const json& cfg, const RunOptions& opts, std::uint64_t fallback) {
  if (opts.seed_override) return *opts.seed_override;
  if (cfg.contains("seed")) return cfg.at("seed").get<std::uint64_t>();
  return fallback;
}

// Shared by wigner-grid and pdm: a one- or two-event parity-readout chain.
stw::SpacetimeWignerField field_from_config(const json& cfg) {
  const int dim = cfg.at("dim").get<int>();
  const auto state = gauss::state_from_json(cfg.at("state"));
  if (state.n_modes != 1) throw std::invalid_argument("chain state must be single-mode");
  stw::ChainConfig chain;
  chain.rho0 = fock::gaussian_to_fock(state, dim);
  if (cfg.contains("channels")) {
    for (const auto& cj : cfg.at("channels")) {
      chain.channels.push_back(crit::fock_kraus_for(gauss::channel_from_json(cj, 1), dim));
    }
  }
  if (chain.n_events() > 2) throw std::invalid_argument("grid fields support one or two events");
  const stw::PhaseSpaceGrid grid(cfg.at("radius").get<double>(), cfg.at("step").get<double>());
  return stw::wigner_field(chain, grid);
}

void write_field_csv(const std::string& path, const stw::SpacetimeWignerField& f) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw std::runtime_error("cannot write " + path);
  const auto pts = f.grid.points();
  const int per = f.grid.points_per_event();
  if (f.n_events == 1) {
    std::fprintf(out, "re_a,im_a,w\n");
    for (int i = 0; i < per; ++i) {
      std::fprintf(out, "%.17g,%.17g,%.17g\n", pts[i].real(), pts[i].imag(), f.values(i));
    }
  } else {
    std::fprintf(out, "re_a,im_a,re_b,im_b,w\n");
    for (int i = 0; i < per; ++i) {
      for (int j = 0; j < per; ++j) {
        std::fprintf(out, "%.17g,%.17g,%.17g,%.17g,%.17g\n", pts[i].real(), pts[i].imag(),
                     pts[j].real(), pts[j].imag(),
                     f.values(static_cast<Eigen::Index>(i) * per + j));
      }
    }
  }
  std::fclose(out);
}

int run_gaussian(const json& cfg, const RunOptions& opts) {
  check_keys(cfg, {"task", "schedule", "out_name"}, "gaussian config");
  const auto schedule = gauss::schedule_from_json(cfg.at("schedule"));
  const auto st = gauss::build_spacetime_gaussian(schedule);
  const MatrixXcd unc = st.cov.cast<Scalar>() +
                        Scalar(0.0, 1.0) * gauss::symplectic_form(st.n_events).cast<Scalar>();
  const double lmin = chronoscv::min_eigenvalue(unc);

  json art{{"n_events", st.n_events},
           {"mean", chronoscv::vector_to_json(st.mean)},
           {"cov", chronoscv::matrix_to_json(st.cov)},
           {"extrapolation_residual", chronoscv::max_abs(st.residual)},
           {"uncertainty", {{"min_eig_sigma_plus_i_omega", lmin},
                            {"violates_spatial_uncertainty", lmin < -1e-9}}}};
  const std::string path = out_path(opts, cfg, "spacetime_gaussian", ".json");
  write_json_file(path, art);
  Sidecar side;
  side.add_residual("extrapolation", chronoscv::max_abs(st.residual));
  side.add_tolerance("extrapolation", 1e-3);
  write_sidecar(path, cfg, opts, side);
  return 0;
}

int run_wigner_grid(const json& cfg, const RunOptions& opts) {
  check_keys(cfg, {"task", "state", "channels", "dim", "radius", "step", "out_name"},
             "wigner-grid config");
  const auto field = field_from_config(cfg);
  const std::string path = out_path(opts, cfg, "wigner_field", ".csv");
  write_field_csv(path, field);
  Sidecar side;
  side.meta["integral"] = field.integral();
  side.add_residual("max_imaginary_part", field.max_imag);
  side.add_residual("normalization", std::abs(field.integral() - 1.0));
  side.add_tolerance("normalization", 0.02);
  write_sidecar(path, cfg, opts, side);
  return 0;
}

int run_pdm(const json& cfg, const RunOptions& opts) {
  check_keys(cfg, {"task", "state", "channels", "dim", "radius", "step", "out_name"},
             "pdm config");
  const auto field = field_from_config(cfg);
  const auto r = stw::assemble_R(field);
  json art{{"n_events", r.n_events},
           {"dim", r.dim},
           {"matrix", chronoscv::matrix_to_json(r.m)},
           {"hermiticity_residual", r.hermiticity},
           {"trace_low_block", r.trace_safe}};
  const std::string path = out_path(opts, cfg, "pdm", ".json");
  write_json_file(path, art);
  Sidecar side;
  side.add_residual("hermiticity", r.hermiticity);
  side.add_residual("trace_low_block_minus_one", std::abs(r.trace_safe - 1.0));
  side.add_tolerance("trace_low_block_minus_one", 0.05);
  write_sidecar(path, cfg, opts, side);
  return 0;
}

int run_properties(const json& cfg, const RunOptions& opts) {
  check_keys(cfg, {"task", "schedule", "fock_dim", "oracle_step", "tamper", "wigner", "out_name"},
             "properties config");
  crit::CriteriaConfig cc;
  cc.schedule = gauss::schedule_from_json(cfg.at("schedule"));
  cc.fock_dim = cfg.value("fock_dim", 30);
  cc.oracle_step = cfg.value("oracle_step", 0.05);
  cc.tamper_symmetry = cfg.value("tamper", false);
  const auto rows = crit::evaluate_criteria(cc);
  json art = crit::criteria_table_json(rows);

  if (cfg.contains("wigner")) {
    const auto& wj = cfg.at("wigner");
    check_keys(wj, {"dim", "radius", "step"}, "properties wigner block");
    const int dim = wj.at("dim").get<int>();
    stw::ProductConfig pc;
    pc.factors = {fock::gaussian_to_fock(cc.schedule.initial, dim),
                  fock::gaussian_to_fock(cc.schedule.initial, dim)};
    const stw::PhaseSpaceGrid grid(wj.at("radius").get<double>(), wj.at("step").get<double>());
    const auto field = stw::wigner_field(pc, grid);
    const auto r = stw::assemble_R(field);
    const auto rep = stw::property_suite(field, r, pc.factors[0], pc.factors[1]);
    json props = json::array();
    bool all = art.at("all_pass").get<bool>();
    for (const auto& c : rep.checks) {
      props.push_back({{"name", c.name},
                       {"residual", c.residual},
                       {"tolerance", c.tol},
                       {"asserted", c.asserted},
                       {"pass", c.pass},
                       {"note", c.note}});
      all = all && (!c.asserted || c.pass);
    }
    art["properties"] = props;
    art["all_pass"] = all;
  }

  const std::string path = out_path(opts, cfg, "properties", ".json");
  write_json_file(path, art);
  Sidecar side;
  side.meta["all_pass"] = art.at("all_pass");
  write_sidecar(path, cfg, opts, side);
  return 0;
}

int run_trajectory(const json& cfg, const RunOptions& opts) {
  check_keys(cfg,
             {"task", "hamiltonian", "times", "eps", "grid", "packet", "outcome_grid", "out_name"},
             "trajectory config");
  traj::TrajectoryConfig tc;

  const auto& hj = cfg.at("hamiltonian");
  check_keys(hj, {"kind", "mass", "omega"}, "hamiltonian block");
  const std::string kind = hj.at("kind").get<std::string>();
  if (kind == "free") {
    tc.hamiltonian = traj::Hamiltonian::free_particle(hj.value("mass", 1.0));
  } else if (kind == "harmonic") {
    tc.hamiltonian = traj::Hamiltonian::harmonic(hj.value("mass", 1.0), hj.value("omega", 1.0));
  } else if (kind == "frozen") {
    tc.hamiltonian = traj::Hamiltonian::frozen();
  } else {
    throw std::invalid_argument("hamiltonian kind must be free, harmonic or frozen");
  }

  tc.times = cfg.at("times").get<std::vector<double>>();
  tc.eps = cfg.at("eps").get<double>();
  if (cfg.contains("grid")) {
    const auto& gj = cfg.at("grid");
    check_keys(gj, {"x_min", "x_max", "n"}, "grid block");
    tc.grid = {gj.at("x_min").get<double>(), gj.at("x_max").get<double>(), gj.at("n").get<int>()};
  }
  const auto& pj = cfg.at("packet");
  check_keys(pj, {"center", "sigma", "momentum"}, "packet block");
  tc.psi0 = traj::gaussian_packet(tc.grid, pj.value("center", 0.0), pj.value("sigma", 1.0),
                                  pj.value("momentum", 0.0));

  const auto& oj = cfg.at("outcome_grid");
  check_keys(oj, {"min", "max", "step"}, "outcome_grid block");
  const traj::OutcomeGrid og{oj.at("min").get<double>(), oj.at("max").get<double>(),
                             oj.at("step").get<double>()};

  const auto dens = traj::diagonal_spacetime_density(tc, og);

  const std::string path = out_path(opts, cfg, "trajectory_density", ".csv");
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw std::runtime_error("cannot write " + path);
  for (int e = 0; e < dens.n_events; ++e) std::fprintf(out, "v%d,", e + 1);
  std::fprintf(out, "p\n");
  const int g = og.points();
  std::vector<int> idx(dens.n_events, 0);
  for (Eigen::Index flat = 0; flat < dens.values.size(); ++flat) {
    Eigen::Index rest = flat;
    for (int e = dens.n_events - 1; e >= 0; --e) {
      idx[e] = static_cast<int>(rest % g);
      rest /= g;
    }
    for (int e = 0; e < dens.n_events; ++e) std::fprintf(out, "%.17g,", og.value(idx[e]));
    std::fprintf(out, "%.17g\n", dens.values(flat));
  }
  std::fclose(out);

  Sidecar side;
  side.meta["sum_times_measure"] = dens.sum_times_measure;
  side.add_residual("normalization", std::abs(dens.sum_times_measure - 1.0));
  side.add_tolerance("normalization", 1e-3);
  write_sidecar(path, cfg, opts, side);
  return 0;
}

int run_tomo(const json& cfg, const RunOptions& opts) {
  check_keys(cfg,
             {"task", "schedule", "quads", "shots", "eps", "seed", "protocol", "noise", "events",
              "out_name"},
             "tomo config");
  const int shots = cfg.at("shots").get<int>();
  const double eps = cfg.at("eps").get<double>();
  const std::uint64_t seed = pick_seed(cfg, opts, 1);
  const std::string protocol = cfg.value("protocol", std::string("sequential"));

  tomo::HomodyneRecord rec;
  tomo::GaussianEstimate est;
  if (protocol == "sequential") {
    const auto schedule = gauss::schedule_from_json(cfg.at("schedule"));
    std::vector<gauss::Quadrature> quads;
    for (const auto& qj : cfg.at("quads")) {
      quads.push_back(gauss::Quadrature::parse(qj.get<std::string>()));
    }
    rec = tomo::simulate_records(schedule, quads, shots, eps, seed);
    est = tomo::estimate_spacetime_gaussian(rec);
  } else if (protocol == "mixed") {
    const auto state = gauss::state_from_json(cfg.at("schedule").at("initial"));
    std::vector<std::pair<int, gauss::Quadrature>> events;
    for (const auto& ej : cfg.at("events")) {
      check_keys(ej, {"mode", "quad"}, "mixed event");
      events.emplace_back(ej.at("mode").get<int>(),
                          gauss::Quadrature::parse(ej.at("quad").get<std::string>()));
    }
    const std::string noise = cfg.value("noise", std::string("ideal"));
    const auto model = noise == "eight_port" ? tomo::NoiseModel::kEightPort
                       : noise == "ideal"
                           ? tomo::NoiseModel::kIdeal
                           : throw std::invalid_argument("noise must be ideal or eight_port");
    auto res = tomo::mixed_quadrature_protocol(state, events, shots, eps, model, seed);
    rec = std::move(res.record);
    est = std::move(res.estimate);
  } else {
    throw std::invalid_argument("protocol must be sequential or mixed");
  }

  const std::string rec_path = out_path(opts, cfg, "tomo", "_records.csv");
  std::FILE* out = std::fopen(rec_path.c_str(), "w");
  if (!out) throw std::runtime_error("cannot write " + rec_path);
  for (Eigen::Index c = 0; c < rec.samples.cols(); ++c) {
    std::fprintf(out, "v%" PRId64 "%s", static_cast<std::int64_t>(c + 1),
                 c + 1 < rec.samples.cols() ? "," : "\n");
  }
  for (Eigen::Index r = 0; r < rec.samples.rows(); ++r) {
    for (Eigen::Index c = 0; c < rec.samples.cols(); ++c) {
      std::fprintf(out, "%.17g%s", rec.samples(r, c), c + 1 < rec.samples.cols() ? "," : "\n");
    }
  }
  std::fclose(out);

  json art{{"mean", chronoscv::vector_to_json(est.mean)},
           {"mean_se", chronoscv::vector_to_json(est.mean_se)},
           {"sigma", chronoscv::matrix_to_json(est.sigma)},
           {"sigma_se", chronoscv::matrix_to_json(est.sigma_se)},
           {"batches", est.batches},
           {"shots", shots},
           {"eps", eps},
           {"seed", seed}};
  const std::string est_path = out_path(opts, cfg, "tomo", "_estimate.json");
  write_json_file(est_path, art);

  Sidecar side;
  side.meta["seed"] = seed;
  side.meta["shots"] = shots;
  side.add_tolerance("diagonal_correction", 2.0 * eps * eps);
  write_sidecar(rec_path, cfg, opts, side);
  return 0;
}

}  // namespace

int run(const RunOptions& opts) {
  try {
    const json cfg = load_config(opts.config_path);
    if (!opts.out_dir.empty()) std::filesystem::create_directories(opts.out_dir);
    const std::string task = cfg.at("task").get<std::string>();
    if (task == "gaussian") return run_gaussian(cfg, opts);
    if (task == "wigner-grid") return run_wigner_grid(cfg, opts);
    if (task == "pdm") return run_pdm(cfg, opts);
    if (task == "properties") return run_properties(cfg, opts);
    if (task == "trajectory") return run_trajectory(cfg, opts);
    if (task == "tomo") return run_tomo(cfg, opts);
    throw std::invalid_argument("unknown task '" + task + "'");
  } catch (const stw::BoundaryDecayError& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace chronoscv::runcfg
