// Acceptance gate: eleven end-to-end checks, one pass/fail line each, at the
// tolerances the project commits to. Exit code is the number of failures.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chronoscv/choi_jordan.hpp"
#include "chronoscv/criteria.hpp"
#include "chronoscv/run_config.hpp"
#include "chronoscv/spacetime_wigner.hpp"
#include "chronoscv/temporal_gaussian.hpp"
#include "chronoscv/tomography.hpp"
#include "chronoscv/trajectory.hpp"
#include "oracles.hpp"

using namespace chronoscv;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, const char* name, bool pass, const std::string& detail) {
  if (!pass) ++g_failures;
  std::printf("criterion %02d: %s  %s  (%s)\n", id, pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
}

gauss::EventSchedule two_q_schedule(const gauss::GaussianState& initial) {
  gauss::EventSchedule s;
  s.initial = initial;
  s.events = {{0, 0}, {1, 0}};
  s.channels = {gauss::GaussianChannel::identity(1)};
  return s;
}

// Closed-form covariance route: doubled symmetric record moments from the
// resolution-free pairwise correlator, including same-event entries.
MatrixXd analytic_covariance(const gauss::EventSchedule& s) {
  const gauss::Quadrature quads[2] = {gauss::Quadrature::q(), gauss::Quadrature::p()};
  const int n = s.n_events();
  MatrixXd sig(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < 2; ++a)
      for (int j = 0; j < n; ++j)
        for (int b = 0; b < 2; ++b)
          sig(2 * i + a, 2 * j + b) =
              2.0 * gauss::two_event_correlation(s, i, j, quads[a], quads[b], 0.3);
  return sig;
}

MatrixXd omts_cov(double r) { return oracles::thermal_two_time_cov(r); }

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

void criterion_1() {
  const auto t0 = Clock::now();
  const auto s = two_q_schedule(gauss::make_reference_state(gauss::ReferenceKind::kVacuum, {}));
  const MatrixXd target = oracles::vacuum_two_time_cov();

  const double dev_analytic = (analytic_covariance(s) - target).cwiseAbs().maxCoeff();
  const auto ladder = gauss::build_spacetime_gaussian(s);
  const double dev_ladder = (ladder.cov - target).cwiseAbs().maxCoeff();
  const double elapsed = seconds_since(t0);

  report(1, "repeated-vacuum covariance", dev_analytic < 1e-9 && dev_ladder < 1e-3 && elapsed < 1.0,
         fmt("analytic %.2e <= 1e-9, ladder %.2e <= 1e-3, %.2f s < 1 s", dev_analytic, dev_ladder,
             elapsed));
}

void criterion_2() {
  double worst_analytic = 0.0;
  double worst_oracle = 0.0;
  for (const double r : {0.3, 0.5, 1.0}) {
    const double nbar = std::sinh(r) * std::sinh(r);
    const auto state = gauss::make_reference_state(gauss::ReferenceKind::kThermal, {nbar});
    const auto s = two_q_schedule(state);
    worst_analytic =
        std::max(worst_analytic, (analytic_covariance(s) - omts_cov(r)).cwiseAbs().maxCoeff());

    // Independent readout simulation in a truncated number basis.
    const auto f = fock::gaussian_to_fock(state, 40);
    const double raw = crit::fock_two_event_moment(f, gauss::GaussianChannel::identity(1),
                                                   gauss::Quadrature::q(), gauss::Quadrature::q(),
                                                   0.1, 0.05);
    worst_oracle =
        std::max(worst_oracle, std::abs(2.0 * raw - std::cosh(2 * r)) / std::cosh(2 * r));
  }
  report(2, "repeated-thermal covariance at r in {0.3, 0.5, 1.0}",
         worst_analytic < 1e-9 && worst_oracle < 0.02,
         fmt("analytic %.2e <= 1e-9, readout-sim rel %.2e <= 0.02", worst_analytic, worst_oracle));
}

void criterion_3() {
  double worst = 0.0;
  for (const double r : {1.0, 2.0, 3.0}) {
    const auto tmss = gauss::make_reference_state(gauss::ReferenceKind::kTmss, {r});
    const auto flipped = gauss::partial_transpose(tmss, {1});
    const double gap = (flipped.cov - omts_cov(r)).cwiseAbs().maxCoeff();
    worst = std::max(worst, std::abs(gap - std::exp(-2.0 * r)));
  }
  report(3, "partial transpose closes the spacelike/temporal gap", worst < 1e-12,
         fmt("max | gap - e^{-2r} | = %.2e <= 1e-12 at r = 1, 2, 3", worst));
}

void criterion_4() {
  auto min_eig = [](const MatrixXd& cov, int pairs) {
    const MatrixXcd m =
        cov.cast<Scalar>() + Scalar(0, 1) * gauss::symplectic_form(pairs).cast<Scalar>();
    return chronoscv::min_eigenvalue(m);
  };
  const double vs = min_eig(oracles::vacuum_two_time_cov(), 2);
  double worst_temporal = vs;
  for (const double r : {0.3, 0.5, 1.0}) worst_temporal = std::max(worst_temporal, min_eig(omts_cov(r), 2));

  double worst_spatial = 0.0;
  for (const auto& g : {gauss::make_reference_state(gauss::ReferenceKind::kVacuum, {}),
                        gauss::make_reference_state(gauss::ReferenceKind::kThermal, {0.7}),
                        gauss::make_reference_state(gauss::ReferenceKind::kTmss, {0.9})}) {
    worst_spatial = std::min(worst_spatial, gauss::check_uncertainty(g).min_eig);
  }
  report(4, "temporal covariances violate the state uncertainty bound",
         vs < 0.0 && worst_temporal < 0.0 && worst_spatial >= -1e-9,
         fmt("temporal min eig %.2e < 0, state min eig %.2e >= -1e-9", worst_temporal,
             worst_spatial));
}

void criterion_5() {
  const auto t0 = Clock::now();
  const int dim = 60;
  const int blk = 16;  // indices n <= 15
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_sq = 0.0;
  double worst_prod = 0.0;
  for (int k = 0; k < 20; ++k) {
    Scalar a(u(rng), u(rng)), b(u(rng), u(rng));
    while (std::abs(a) > 1.0) a *= 0.7;
    while (std::abs(b) > 1.0) b *= 0.7;
    const MatrixXcd ta = fock::t_operator(a, dim);
    const MatrixXcd tb = fock::t_operator(b, dim);
    worst_sq = std::max(worst_sq, ((ta * ta).topLeftCorner(blk, blk) -
                                   4.0 * MatrixXcd::Identity(blk, blk))
                                      .cwiseAbs()
                                      .maxCoeff());
    const Scalar phase = std::exp(2.0 * (std::conj(a) * b - a * std::conj(b)));
    const MatrixXcd rhs = 4.0 * phase * fock::displacement(2.0 * (a - b), dim);
    worst_prod =
        std::max(worst_prod, ((ta * tb - rhs).topLeftCorner(blk, blk)).cwiseAbs().maxCoeff());
  }
  const double elapsed = seconds_since(t0);
  report(5, "displaced-parity algebra at dim 60",
         worst_sq < 1e-6 && worst_prod < 1e-6 && elapsed < 30.0,
         fmt("T^2 dev %.2e, product dev %.2e <= 1e-6, %.2f s < 30 s", worst_sq, worst_prod,
             elapsed));
}

// Criteria 6 and 7 share one production-size run.
void criteria_6_and_7() {
  const auto t0 = Clock::now();
  const int dim = 40;
  stw::ChainConfig cfg{fock::gaussian_to_fock(
                           gauss::make_reference_state(gauss::ReferenceKind::kThermal, {1.0}), dim),
                       {fock::attenuation_kraus(0.5, dim)}};
  const stw::PhaseSpaceGrid grid(4.0, 0.25);
  const auto field = stw::wigner_field(cfg, grid);
  const double integral = field.integral();
  const double elapsed6 = seconds_since(t0);
  report(6, "two-event field normalization (dim 40, radius 4, step 0.25)",
         std::abs(integral - 1.0) < 0.02 && elapsed6 < 600.0,
         fmt("integral %.6f in 1 +- 0.02, %.1f s < 600 s", integral, elapsed6));

  const auto r = stw::assemble_R(field);
  const auto back = stw::r_to_wigner_grid(r, grid);
  const double round_trip = (back.values - field.values).cwiseAbs().maxCoeff();
  report(7, "field -> operator -> field round trip", round_trip < 0.02,
         fmt("max deviation %.4f < 0.02 (same run)", round_trip));
}

void criterion_8() {
  const int dim = 40;
  std::vector<MatrixXcd> kraus;
  const MatrixXcd rot = fock::rotation_kraus(0.8, dim)[0];
  for (const auto& a : fock::attenuation_kraus(0.6, dim)) kraus.push_back(a * rot);

  const MatrixXcd rho = fock::thermal_state(1.0, dim);
  const auto r = cj::jordan_state(rho, cj::jamiolkowski(kraus, dim));
  const fock::FockState st{dim, 1, rho};

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Scalar a(u(rng), u(rng)), b(u(rng), u(rng));
    const double via_jordan = stw::r_to_wigner(r, {a, b});
    const double sequential = stw::sequential_t_correlation(st, {kraus}, {a, b});
    worst = std::max(worst, std::abs(via_jordan - sequential));
  }
  report(8, "channel-state dual vs sequential correlator (dim 40)", worst < 1e-6,
         fmt("worst of 20 random probes %.2e <= 1e-6", worst));
}

void criterion_9() {
  const int dim = 24;
  const stw::PhaseSpaceGrid grid(4.0, 0.25);

  auto run_suite = [&](const stw::SpacetimeWignerField& field, const fock::FockState& first,
                       const fock::FockState& last, std::string& detail) {
    const auto r = stw::assemble_R(field);
    const auto rep = stw::property_suite(field, r, first, last);
    bool ok = true;
    std::ostringstream os;
    for (const auto& c : rep.checks) {
      if (!c.asserted) continue;
      ok = ok && c.pass;
      os << c.name << " " << (c.pass ? "ok" : "FAIL") << " (" << c.residual << "); ";
    }
    detail = os.str();
    return ok;
  };

  const auto th1 = fock::gaussian_to_fock(
      gauss::make_reference_state(gauss::ReferenceKind::kThermal, {1.0}), dim);
  const auto vac =
      fock::gaussian_to_fock(gauss::make_reference_state(gauss::ReferenceKind::kVacuum, {}), dim);
  std::string d1;
  const bool ok_product =
      run_suite(stw::wigner_field(stw::ProductConfig{{th1, vac}}, grid), th1, vac, d1);

  const auto th05 = fock::gaussian_to_fock(
      gauss::make_reference_state(gauss::ReferenceKind::kThermal, {0.5}), dim);
  stw::ChainConfig chain{th05, {fock::attenuation_kraus(0.5, dim)}};
  const fock::FockState after{dim, 1, fock::apply_kraus(chain.rho0.rho, chain.channels[0])};
  std::string d2;
  const bool ok_temporal =
      run_suite(stw::wigner_field(chain, grid), chain.rho0, after, d2);

  report(9, "kernel property suite on product and attenuation instances",
         ok_product && ok_temporal,
         std::string("product: ") + d1 + "temporal: " + d2);
}

void criterion_10() {
  const traj::SpatialGrid g3{-10.0, 10.0, 768};
  traj::TrajectoryConfig three{traj::Hamiltonian::free_particle(1.0), {0.0, 0.5, 1.0}, 0.4, g3,
                               traj::gaussian_packet(g3, 0.0, 0.8, 0.0)};
  const auto dens = traj::diagonal_spacetime_density(three, traj::OutcomeGrid{-7.5, 7.5, 0.25});
  const double total = dens.sum_times_measure;

  const traj::SpatialGrid g2{-10.0, 10.0, 1024};
  traj::TrajectoryConfig two{traj::Hamiltonian::free_particle(1.0), {0.3, 0.8}, 0.35, g2,
                             traj::gaussian_packet(g2, 0.0, 0.7, 0.4)};
  double worst_ratio = 0.0;
  for (const auto& [a, b] : std::vector<std::pair<double, double>>{
           {0.2, 0.55}, {-0.5, 0.1}, {0.0, 0.0}, {0.9, 1.2}}) {
    const double op = traj::joint_position_probability(two, {a, b});
    const double lattice = oracles::path_lattice_probability(two, {a, b}, 3);
    worst_ratio = std::max(worst_ratio, std::abs(lattice / op - 1.0));
  }
  report(10, "successive-readout density normalization and path-lattice cross-check",
         std::abs(total - 1.0) < 1e-3 && dens.values.minCoeff() >= 0.0 && worst_ratio < 0.01,
         fmt("3-event sum %.6f in 1 +- 1e-3, lattice ratio dev %.2e < 0.01", total, worst_ratio));
}

void criterion_11() {
  const auto vac = gauss::make_reference_state(gauss::ReferenceKind::kVacuum, {});
  const auto schedule = two_q_schedule(vac);
  const int shots = 100000;
  const double eps = 0.05;

  // Five fixed-quadrature runs assemble every entry of the 4x4 target: the
  // diagonal and cross blocks from the q/p pairs, the same-event off-diagonal
  // from a 45-degree readout whose variance is 1 + sigma_qp.
  auto run = [&](const gauss::Quadrature& qa, const gauss::Quadrature& qb, std::uint64_t seed) {
    return tomo::estimate_spacetime_gaussian(
        tomo::simulate_records(schedule, {qa, qb}, shots, eps, seed));
  };
  const auto q = gauss::Quadrature::q();
  const auto p = gauss::Quadrature::p();
  const auto r45 = gauss::Quadrature::rotated(std::atan(1.0));  // pi/4
  const auto eqq = run(q, q, 11);
  const auto epp = run(p, p, 12);
  const auto eqp = run(q, p, 13);
  const auto epq = run(p, q, 14);
  const auto err = run(r45, r45, 15);

  MatrixXd sig = MatrixXd::Zero(4, 4), se = MatrixXd::Zero(4, 4);
  auto put = [&](int i, int j, double v, double s) {
    sig(i, j) = sig(j, i) = v;
    se(i, j) = se(j, i) = s;
  };
  put(0, 0, eqq.sigma(0, 0), eqq.sigma_se(0, 0));
  put(2, 2, eqq.sigma(1, 1), eqq.sigma_se(1, 1));
  put(0, 2, eqq.sigma(0, 1), eqq.sigma_se(0, 1));
  put(1, 1, epp.sigma(0, 0), epp.sigma_se(0, 0));
  put(3, 3, epp.sigma(1, 1), epp.sigma_se(1, 1));
  put(1, 3, epp.sigma(0, 1), epp.sigma_se(0, 1));
  put(0, 3, eqp.sigma(0, 1), eqp.sigma_se(0, 1));
  put(1, 2, epq.sigma(0, 1), epq.sigma_se(0, 1));
  put(0, 1, err.sigma(0, 0) - 0.5 * (eqq.sigma(0, 0) + epp.sigma(0, 0)),
      std::sqrt(err.sigma_se(0, 0) * err.sigma_se(0, 0) +
                0.25 * eqq.sigma_se(0, 0) * eqq.sigma_se(0, 0) +
                0.25 * epp.sigma_se(0, 0) * epp.sigma_se(0, 0)));
  put(2, 3, err.sigma(1, 1) - 0.5 * (eqq.sigma(1, 1) + epp.sigma(1, 1)),
      std::sqrt(err.sigma_se(1, 1) * err.sigma_se(1, 1) +
                0.25 * eqq.sigma_se(1, 1) * eqq.sigma_se(1, 1) +
                0.25 * epp.sigma_se(1, 1) * epp.sigma_se(1, 1)));

  const MatrixXd target = oracles::vacuum_two_time_cov();
  double worst_z = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      worst_z = std::max(worst_z, std::abs(sig(i, j) - target(i, j)) / se(i, j));

  const double slope =
      tomo::error_scaling_slope(schedule, {q, q}, MatrixXd::Ones(2, 2), {1000, 10000, 100000},
                                eps, {1, 2, 3, 4, 5, 6, 7, 8});

  // Bit-level reproducibility of the deterministic pipeline, library and
  // artifact level.
  const auto ra = tomo::simulate_records(schedule, {q, q}, 5000, eps, 77);
  const auto rb = tomo::simulate_records(schedule, {q, q}, 5000, eps, 77);
  bool bitwise = (ra.samples - rb.samples).cwiseAbs().maxCoeff() == 0.0;

  namespace fs = std::filesystem;
  const fs::path dir = fs::path("acceptance_scratch");
  fs::remove_all(dir);
  fs::create_directories(dir / "a");
  fs::create_directories(dir / "b");
  {
    std::ofstream cfg(dir / "tomo.json");
    cfg << R"({"task":"tomo","schedule":{"initial":{"kind":"vacuum","params":[]},)"
        << R"("events":[{"t":0,"mode":0},{"t":1,"mode":0}],)"
        << R"("channels":[{"kind":"identity","params":[]}]},)"
        << R"("quads":["q","q"],"shots":2000,"eps":0.05,"seed":7})";
  }
  auto run_cli = [&](const char* sub) {
    runcfg::RunOptions opts;
    opts.config_path = (dir / "tomo.json").string();
    opts.out_dir = (dir / sub).string();
    opts.deterministic = true;
    return runcfg::run(opts);
  };
  bool cli_ok = run_cli("a") == 0 && run_cli("b") == 0;
  auto slurp = [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  if (cli_ok) {
    bitwise = bitwise && slurp(dir / "a" / "tomo_records.csv") == slurp(dir / "b" / "tomo_records.csv") &&
              slurp(dir / "a" / "tomo_estimate.json") == slurp(dir / "b" / "tomo_estimate.json");
  }

  report(11, "homodyne tomography closes the loop",
         worst_z < 3.0 && std::abs(slope + 0.5) < 0.1 && bitwise && cli_ok,
         fmt("max |z| %.2f < 3 SE, slope %.3f in -0.5 +- 0.1, bit-identical reruns", worst_z,
             slope));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criteria_6_and_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("acceptance: %d of 11 criteria failed [%.1f s total]\n", g_failures,
              seconds_since(t0));
  return g_failures;
}
