#include "chronoscv/spacetime_wigner.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

namespace chronoscv::stw {

namespace {

constexpr double kRimTol = 1e-3;
constexpr double kMaxStep = 0.25;

std::vector<MatrixXcd> even_projector_grid(const PhaseSpaceGrid& grid, int dim) {
  const std::vector<Scalar> pts = grid.points();
  std::vector<MatrixXcd> pe(pts.size());
  parallel_for(static_cast<std::int64_t>(pts.size()), [&](std::int64_t i) {
    pe[i] = fock::parity_projectors(pts[i], dim).first;
  });
  return pe;
}

// tr(a * b) without forming the product.
Scalar trace_prod(const MatrixXcd& a, const MatrixXcd& b) {
  return a.transpose().cwiseProduct(b).sum();
}

void update_max(std::atomic<double>& target, double candidate) {
  double cur = target.load();
  while (candidate > cur && !target.compare_exchange_weak(cur, candidate)) {
  }
}

}  // namespace

PhaseSpaceGrid::PhaseSpaceGrid(double radius_, double step_) : radius(radius_), step(step_) {
  if (!(step > 0.0)) throw std::invalid_argument("grid: step must be positive");
  if (radius < 2.0 * step) throw std::invalid_argument("grid: radius must be at least 2*step");
}

int PhaseSpaceGrid::half_points() const { return static_cast<int>(std::lround(radius / step)); }
int PhaseSpaceGrid::axis_points() const { return 2 * half_points() + 1; }
int PhaseSpaceGrid::points_per_event() const { return axis_points() * axis_points(); }

std::vector<Scalar> PhaseSpaceGrid::points() const {
  const int k = half_points();
  std::vector<Scalar> pts;
  pts.reserve(points_per_event());
  for (int a = -k; a <= k; ++a)
    for (int b = -k; b <= k; ++b) pts.emplace_back(a * step, b * step);
  return pts;
}

bool PhaseSpaceGrid::on_rim(int point_index) const {
  const int n = axis_points(), k = half_points();
  const int a = point_index / n - k, b = point_index % n - k;
  return std::abs(a) == k || std::abs(b) == k;
}

double sequential_t_correlation(const fock::FockState& rho0,
                                const std::vector<std::vector<MatrixXcd>>& channels,
                                const std::vector<Scalar>& alphas) {
  if (rho0.n_modes != 1) throw std::invalid_argument("sequential chain: rho0 must be single-mode");
  const int n = static_cast<int>(alphas.size());
  if (n < 1 || n > 4) throw std::invalid_argument("sequential chain: between 1 and 4 events");
  if (static_cast<int>(channels.size()) != n - 1)
    throw std::invalid_argument("sequential chain: need one channel per gap");

  // Depth-first over the 2^n outcome branches with unnormalized states.
  std::function<Scalar(const MatrixXcd&, int)> go = [&](const MatrixXcd& rho, int k) -> Scalar {
    const auto [pe, po] = fock::parity_projectors(alphas[k], rho0.dim);
    if (k == n - 1) return 2.0 * ((pe * rho).trace() - (po * rho).trace());
    MatrixXcd be = pe * rho * pe;
    MatrixXcd bo = po * rho * po;
    be = fock::apply_kraus(be, channels[k]);
    bo = fock::apply_kraus(bo, channels[k]);
    return 2.0 * (go(be, k + 1) - go(bo, k + 1));
  };
  return go(rho0.rho, 0).real();
}

double spacelike_t_correlation(const fock::FockState& joint, const std::vector<Scalar>& alphas) {
  if (static_cast<int>(alphas.size()) != joint.n_modes)
    throw std::invalid_argument("spacelike correlation: one alpha per mode");
  MatrixXcd probe = fock::t_operator(alphas[0], joint.dim);
  for (std::size_t i = 1; i < alphas.size(); ++i)
    probe = fock::kron(probe, fock::t_operator(alphas[i], joint.dim));
  return trace_prod(probe, joint.rho).real();
}

double SpacetimeWignerField::integral() const {
  const double meas = std::pow(grid.step * grid.step / M_PI, n_events);
  return values.sum() * meas;
}

SpacetimeWignerField wigner_field(const ChainConfig& cfg, const PhaseSpaceGrid& grid) {
  if (cfg.rho0.n_modes != 1) throw std::invalid_argument("wigner_field: rho0 must be single-mode");
  const int n = cfg.n_events();
  if (n > 2)
    throw std::invalid_argument("wigner_field: grids beyond two events are not materializable; "
                                "use sequential_t_correlation pointwise");
  const int dim = cfg.rho0.dim;
  const auto pe = even_projector_grid(grid, dim);
  const std::int64_t p = static_cast<std::int64_t>(pe.size());

  SpacetimeWignerField f;
  f.grid = grid;
  f.n_events = n;
  f.dim = dim;
  std::atomic<double> worst_imag{0.0};

  if (n == 1) {
    f.values.resize(p);
    parallel_for(p, [&](std::int64_t i) {
      const Scalar tr_rho = cfg.rho0.rho.trace();
      const Scalar v = 4.0 * trace_prod(pe[i], cfg.rho0.rho) - 2.0 * tr_rho;
      f.values(i) = v.real();
      update_max(worst_imag, std::abs(v.imag()));
    });
  } else {
    f.values.resize(p * p);
    parallel_for(p, [&](std::int64_t ia) {
      const MatrixXcd po = MatrixXcd::Identity(dim, dim) - pe[ia];
      MatrixXcd be = pe[ia] * cfg.rho0.rho * pe[ia];
      MatrixXcd bo = po * cfg.rho0.rho * po;
      MatrixXcd diff = 2.0 * (fock::apply_kraus(be, cfg.channels[0]) -
                              fock::apply_kraus(bo, cfg.channels[0]));
      const Scalar tr_diff = diff.trace();
      double local_imag = 0.0;
      for (std::int64_t ib = 0; ib < p; ++ib) {
        const Scalar v = 4.0 * trace_prod(pe[ib], diff) - 2.0 * tr_diff;
        f.values(ia * p + ib) = v.real();
        local_imag = std::max(local_imag, std::abs(v.imag()));
      }
      update_max(worst_imag, local_imag);
    });
  }
  f.max_imag = worst_imag.load();
  return f;
}

SpacetimeWignerField wigner_field(const ProductConfig& cfg, const PhaseSpaceGrid& grid) {
  const int n = cfg.n_events();
  if (n < 1 || n > 2) throw std::invalid_argument("wigner_field: one or two simultaneous events");
  for (const auto& s : cfg.factors)
    if (s.n_modes != 1) throw std::invalid_argument("wigner_field: factors must be single-mode");

  std::vector<SpacetimeWignerField> single;
  for (const auto& s : cfg.factors) single.push_back(wigner_field(ChainConfig{s, {}}, grid));
  if (n == 1) return single[0];

  SpacetimeWignerField f;
  f.grid = grid;
  f.n_events = 2;
  f.dim = cfg.factors[0].dim;
  const std::int64_t p = single[0].values.size();
  f.values.resize(p * p);
  for (std::int64_t ia = 0; ia < p; ++ia)
    f.values.segment(ia * p, p) = single[0].values(ia) * single[1].values;
  f.max_imag = std::max(single[0].max_imag, single[1].max_imag);
  return f;
}

SpacetimeDensityMatrix assemble_R(const SpacetimeWignerField& field) {
  if (field.n_events < 1 || field.n_events > 2)
    throw std::invalid_argument("assemble_R: one or two events supported");
  if (field.grid.step > kMaxStep + 1e-12)
    throw std::invalid_argument("assemble_R: grid step must be <= 0.25");

  const std::int64_t p = field.grid.points_per_event();
  double rim_max = 0.0;
  std::int64_t rim_arg = -1;
  for (std::int64_t idx = 0; idx < field.values.size(); ++idx) {
    const int i1 = static_cast<int>(idx / (field.n_events == 2 ? p : 1)) % p;
    const int i2 = static_cast<int>(idx % p);
    const bool rim = field.n_events == 2
                         ? (field.grid.on_rim(i1) || field.grid.on_rim(i2))
                         : field.grid.on_rim(i2);
    if (rim && std::abs(field.values(idx)) > rim_max) {
      rim_max = std::abs(field.values(idx));
      rim_arg = idx;
    }
  }
  if (rim_max >= kRimTol) {
    std::ostringstream msg;
    msg << "assemble_R: field has not decayed on the grid rim (max |W| = " << rim_max
        << " at flat index " << rim_arg << ", tolerance " << kRimTol
        << "); enlarge the grid or use a mixing channel";
    throw BoundaryDecayError(msg.str());
  }

  const int dim = field.dim;
  const double meas = field.grid.step * field.grid.step / M_PI;
  const auto pe = even_projector_grid(field.grid, dim);
  SpacetimeDensityMatrix r;
  r.n_events = field.n_events;
  r.dim = dim;

  if (field.n_events == 1) {
    MatrixXcd acc = MatrixXcd::Zero(dim, dim);
    double wsum = 0.0;
    for (std::int64_t i = 0; i < p; ++i) {
      acc += (4.0 * field.values(i)) * pe[i];
      wsum += field.values(i);
    }
    r.m = meas * (acc - 2.0 * wsum * MatrixXcd::Identity(dim, dim));
  } else {
    // S(alpha) = sum_beta W(alpha,beta) T(beta) meas, then
    // R = sum_alpha T(alpha) (x) S(alpha) meas, tiled over event-1 rows so
    // the accumulation order is independent of the worker count.
    std::vector<MatrixXcd> s(p);
    parallel_for(p, [&](std::int64_t ia) {
      MatrixXcd acc = MatrixXcd::Zero(dim, dim);
      double wsum = 0.0;
      for (std::int64_t ib = 0; ib < p; ++ib) {
        acc += (4.0 * field.values(ia * p + ib)) * pe[ib];
        wsum += field.values(ia * p + ib);
      }
      s[ia] = meas * (acc - 2.0 * wsum * MatrixXcd::Identity(dim, dim));
    });
    r.m = MatrixXcd::Zero(dim * dim, dim * dim);
    parallel_for(dim, [&](std::int64_t a) {
      for (std::int64_t ia = 0; ia < p; ++ia) {
        const MatrixXcd t1 = 4.0 * pe[ia] - 2.0 * MatrixXcd::Identity(dim, dim);
        for (int c = 0; c < dim; ++c) {
          const Scalar coef = t1(a, c) * meas;
          if (coef != Scalar(0, 0)) r.m.block(a * dim, c * dim, dim, dim) += coef * s[ia];
        }
      }
    });
  }

  // Band-limit to the quadrature-resolvable block. The matrix element
  // <m|T(alpha)|n> oscillates in alpha at a rate ~ 4 sqrt(max(m, n)), so for
  // indices beyond ~ 1/step^2 the grid undersamples the kernel and the sum
  // accumulates aliasing artifacts instead of signal, while genuine content
  // of a rim-decayed field is negligible there. The constant is calibrated
  // at the coarsest admitted step (0.25, cut at n = 16); finer steps resolve
  // proportionally more.
  const double step = field.grid.step;
  const int keep =
      std::min(dim - 1, std::max(1, static_cast<int>(std::floor(1.0 / (step * step)))));
  auto keep_index = [&](int flat) {
    if (field.n_events == 1) return flat <= keep;
    return flat / dim <= keep && flat % dim <= keep;
  };
  if (keep < dim - 1)
    for (int i = 0; i < r.m.rows(); ++i)
      for (int j = 0; j < r.m.cols(); ++j)
        if (!keep_index(i) || !keep_index(j)) r.m(i, j) = Scalar(0, 0);

  r.hermiticity = hermiticity_residual(r.m);
  const int safe = std::max(1, dim / 4);
  Scalar tr(0, 0);
  if (field.n_events == 1) {
    for (int i = 0; i <= safe; ++i) tr += r.m(i, i);
  } else {
    for (int i = 0; i <= safe; ++i)
      for (int j = 0; j <= safe; ++j) tr += r.m(i * dim + j, i * dim + j);
  }
  r.trace_safe = tr.real();
  return r;
}

namespace {

/// Contraction over the second factor: C(k,i) = sum_{l,j} R[(k l),(i j)] T2(j,l).
MatrixXcd contract_second(const MatrixXcd& r, const MatrixXcd& t2, int dim) {
  MatrixXcd c(dim, dim);
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      c(k, i) = r.block(k * dim, i * dim, dim, dim).transpose().cwiseProduct(t2).sum();
  return c;
}

}  // namespace

double r_to_wigner(const SpacetimeDensityMatrix& r, const std::vector<Scalar>& alphas) {
  if (static_cast<int>(alphas.size()) != r.n_events)
    throw std::invalid_argument("r_to_wigner: one alpha per event");
  if (r.n_events == 1)
    return trace_prod(fock::t_operator(alphas[0], r.dim), r.m).real();
  if (r.n_events != 2) throw std::invalid_argument("r_to_wigner: one or two events supported");
  const MatrixXcd c = contract_second(r.m, fock::t_operator(alphas[1], r.dim), r.dim);
  const MatrixXcd t1 = fock::t_operator(alphas[0], r.dim);
  return trace_prod(t1, c).real();
}

SpacetimeWignerField r_to_wigner_grid(const SpacetimeDensityMatrix& r,
                                      const PhaseSpaceGrid& grid) {
  SpacetimeWignerField f;
  f.grid = grid;
  f.n_events = r.n_events;
  f.dim = r.dim;
  const auto pe = even_projector_grid(grid, r.dim);
  const std::int64_t p = static_cast<std::int64_t>(pe.size());
  const MatrixXcd eye = MatrixXcd::Identity(r.dim, r.dim);
  std::atomic<double> worst_imag{0.0};

  if (r.n_events == 1) {
    f.values.resize(p);
    parallel_for(p, [&](std::int64_t i) {
      const Scalar v = trace_prod(4.0 * pe[i] - 2.0 * eye, r.m);
      f.values(i) = v.real();
      update_max(worst_imag, std::abs(v.imag()));
    });
  } else if (r.n_events == 2) {
    f.values.resize(p * p);
    parallel_for(p, [&](std::int64_t ib) {
      const MatrixXcd c = contract_second(r.m, 4.0 * pe[ib] - 2.0 * eye, r.dim);
      double local = 0.0;
      for (std::int64_t ia = 0; ia < p; ++ia) {
        const Scalar v = trace_prod(4.0 * pe[ia] - 2.0 * eye, c);
        f.values(ia * p + ib) = v.real();
        local = std::max(local, std::abs(v.imag()));
      }
      update_max(worst_imag, local);
    });
  } else {
    throw std::invalid_argument("r_to_wigner_grid: one or two events supported");
  }
  f.max_imag = worst_imag.load();
  return f;
}

double expectation_via_wigner(const SpacetimeWignerField& field, const MatrixXcd& a,
                              double* imag_residual) {
  const std::int64_t p = field.grid.points_per_event();
  const int dim = field.dim;
  if (field.n_events == 1 && (a.rows() != dim || a.cols() != dim))
    throw std::invalid_argument("expectation_via_wigner: operator dimension mismatch");
  if (field.n_events == 2 && (a.rows() != dim * dim || a.cols() != dim * dim))
    throw std::invalid_argument("expectation_via_wigner: operator dimension mismatch");

  const auto pe = even_projector_grid(field.grid, dim);
  const MatrixXcd eye = MatrixXcd::Identity(dim, dim);
  const double meas = std::pow(field.grid.step * field.grid.step / M_PI, field.n_events);
  Scalar acc(0, 0);
  if (field.n_events == 1) {
    for (std::int64_t i = 0; i < p; ++i) {
      const Scalar av = trace_prod(4.0 * pe[i] - 2.0 * eye, a);
      acc += field.values(i) * std::conj(av);
    }
  } else {
    std::vector<Scalar> partial(p, Scalar(0, 0));
    parallel_for(p, [&](std::int64_t ib) {
      const MatrixXcd c = contract_second(a, 4.0 * pe[ib] - 2.0 * eye, dim);
      Scalar local(0, 0);
      for (std::int64_t ia = 0; ia < p; ++ia) {
        const Scalar av = ((4.0 * pe[ia] - 2.0 * eye) * c).trace();
        local += field.values(ia * p + ib) * std::conj(av);
      }
      partial[ib] = local;
    });
    for (const Scalar& v : partial) acc += v;
  }
  acc *= meas;
  if (imag_residual) *imag_residual = std::abs(acc.imag());
  return acc.real();
}

bool PropertyReport::all_asserted_pass() const {
  for (const auto& c : checks)
    if (c.asserted && !c.pass) return false;
  return true;
}

double oscillator_psi(int n, double q) {
  const double psi0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * q * q);
  if (n == 0) return psi0;
  double prev = psi0, cur = std::sqrt(2.0) * q * psi0;
  for (int k = 2; k <= n; ++k) {
    const double next = std::sqrt(2.0 / k) * q * cur - std::sqrt((k - 1.0) / k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

double position_diagonal(const SpacetimeDensityMatrix& r, const std::vector<double>& qs) {
  const int dim = r.dim;
  if (r.n_events == 1) {
    VectorXcd psi(dim);
    for (int n = 0; n < dim; ++n) psi(n) = oscillator_psi(n, qs[0]);
    return (psi.adjoint() * r.m * psi)(0, 0).real();
  }
  VectorXcd psi1(dim), psi2(dim);
  for (int n = 0; n < dim; ++n) {
    psi1(n) = oscillator_psi(n, qs[0]);
    psi2(n) = oscillator_psi(n, qs[1]);
  }
  VectorXcd v(dim * dim);
  for (int a = 0; a < dim; ++a) v.segment(a * dim, dim) = psi1(a) * psi2;
  return (v.adjoint() * r.m * v)(0, 0).real();
}

}  // namespace

PropertyReport property_suite(const SpacetimeWignerField& field, const SpacetimeDensityMatrix& r,
                              const fock::FockState& rho_initial,
                              const fock::FockState& rho_final) {
  PropertyReport rep;
  const int dim = r.dim;
  const std::int64_t p = field.grid.points_per_event();
  const int axis = field.grid.axis_points();
  const int half = field.grid.half_points();
  const double step = field.grid.step;

  {  // P1: Hermitian kernel.
    PropertyCheck c{"P1 hermitian kernel", r.hermiticity, 1e-8, true, false, ""};
    c.pass = c.residual < c.tol;
    rep.checks.push_back(c);
  }

  {  // P2: momentum-integrated field equals the position diagonal of R.
    // q = sqrt(2) Re(alpha), dp = sqrt(2) step, and the (q,p)-unit field is
    // the T-unit field divided by 2 pi per event.
    double worst = 0.0;
    const std::vector<int> q_idx = {half, half + axis / 8, half - axis / 4};
    if (r.n_events == 1) {
      for (int iq : q_idx) {
        double marg = 0.0;
        for (int ip = 0; ip < axis; ++ip) marg += field.values(iq * axis + ip);
        marg *= std::sqrt(2.0) * step / (2.0 * M_PI);
        const double diag = position_diagonal(r, {std::sqrt(2.0) * (iq - half) * step});
        worst = std::max(worst, std::abs(marg - diag));
      }
    } else {
      for (int iq1 : q_idx) {
        for (int iq2 : q_idx) {
          double marg = 0.0;
          for (int ip1 = 0; ip1 < axis; ++ip1)
            for (int ip2 = 0; ip2 < axis; ++ip2)
              marg += field.values(static_cast<std::int64_t>(iq1 * axis + ip1) * p +
                                   (iq2 * axis + ip2));
          marg *= 2.0 * step * step / std::pow(2.0 * M_PI, 2);
          const double diag = position_diagonal(
              r, {std::sqrt(2.0) * (iq1 - half) * step, std::sqrt(2.0) * (iq2 - half) * step});
          worst = std::max(worst, std::abs(marg - diag));
        }
      }
    }
    PropertyCheck c{"P2 position marginals", worst, 0.02, true, false, ""};
    c.pass = c.residual < c.tol;
    rep.checks.push_back(c);
  }

  {  // P3: displacement covariance of the transform pair.
    const std::vector<Scalar> shifts = {Scalar(0.3, 0.0), Scalar(-0.1, 0.2)};
    std::vector<std::vector<Scalar>> probes;
    if (r.n_events == 1)
      probes = {{Scalar(0.2, -0.3)}, {Scalar(-0.5, 0.1)}, {Scalar(0.0, 0.0)}};
    else
      probes = {{Scalar(0.2, -0.3), Scalar(0.4, 0.1)},
                {Scalar(-0.5, 0.1), Scalar(0.0, -0.2)},
                {Scalar(0.0, 0.0), Scalar(0.3, 0.3)}};
    MatrixXcd shift_op = fock::displacement(shifts[0], dim);
    if (r.n_events == 2) shift_op = fock::kron(shift_op, fock::displacement(shifts[1], dim));
    SpacetimeDensityMatrix rs = r;
    rs.m = shift_op * r.m * shift_op.adjoint();
    double worst = 0.0;
    for (const auto& pr : probes) {
      std::vector<Scalar> back = pr;
      for (std::size_t k = 0; k < back.size(); ++k) back[k] -= shifts[k];
      worst = std::max(worst, std::abs(r_to_wigner(rs, pr) - r_to_wigner(r, back)));
    }
    PropertyCheck c{"P3 displacement covariance", worst, 1e-6, true, false, ""};
    c.pass = c.residual < c.tol;
    rep.checks.push_back(c);
  }

  {  // P4: transpose of R reflects the momentum arguments.
    SpacetimeDensityMatrix rt = r;
    rt.m = r.m.transpose();
    std::vector<std::vector<Scalar>> probes;
    if (r.n_events == 1)
      probes = {{Scalar(0.4, 0.2)}, {Scalar(-0.3, -0.6)}};
    else
      probes = {{Scalar(0.4, 0.2), Scalar(-0.1, 0.5)}, {Scalar(-0.3, -0.6), Scalar(0.2, 0.0)}};
    double worst = 0.0;
    for (const auto& pr : probes) {
      std::vector<Scalar> conj = pr;
      for (auto& a : conj) a = std::conj(a);
      worst = std::max(worst, std::abs(r_to_wigner(rt, pr) - r_to_wigner(r, conj)));
    }
    PropertyCheck c{"P4 transpose reflection", worst, 1e-6, true, false, ""};
    c.pass = c.residual < c.tol;
    rep.checks.push_back(c);
  }

  {  // P5: overlap rule for single-event states against the vacuum.
    fock::FockState vac{dim, 1, MatrixXcd::Zero(dim, dim)};
    vac.rho(0, 0) = 1.0;
    const SpacetimeWignerField w1 =
        wigner_field(ChainConfig{rho_initial, {}}, field.grid);
    const SpacetimeWignerField w2 = wigner_field(ChainConfig{vac, {}}, field.grid);
    const SpacetimeDensityMatrix r1 = assemble_R(w1);
    const SpacetimeDensityMatrix r2 = assemble_R(w2);
    const double lhs = (r1.m * r2.m).trace().real();
    const double rhs = (w1.values.cwiseProduct(w2.values)).sum() * step * step / M_PI;
    PropertyCheck c{"P5 overlap rule", std::abs(lhs - rhs), 1e-3, true, false,
                    "single-event reductions"};
    c.pass = c.residual < c.tol;
    rep.checks.push_back(c);
  }

  if (r.n_events == 2) {  // Marginal consistency of the field itself.
    const double meas = step * step / M_PI;
    const auto pts = field.grid.points();
    double worst_init = 0.0, worst_late = 0.0;
    for (std::int64_t ia = 0; ia < p; ia += std::max<std::int64_t>(1, p / 37)) {
      double m1 = 0.0;
      for (std::int64_t ib = 0; ib < p; ++ib) m1 += field.values(ia * p + ib);
      const double ref =
          spacelike_t_correlation(rho_initial, {pts[ia]});
      worst_init = std::max(worst_init, std::abs(m1 * meas - ref));
    }
    for (std::int64_t ib = 0; ib < p; ib += std::max<std::int64_t>(1, p / 37)) {
      double m2 = 0.0;
      for (std::int64_t ia = 0; ia < p; ++ia) m2 += field.values(ia * p + ib);
      const double ref = spacelike_t_correlation(rho_final, {pts[ib]});
      worst_late = std::max(worst_late, std::abs(m2 * meas - ref));
    }
    PropertyCheck ci{"initial-time marginal", worst_init, 0.02, true, false, ""};
    ci.pass = ci.residual < ci.tol;
    rep.checks.push_back(ci);
    PropertyCheck cl{"final-time marginal", worst_late, 0.02, false, false,
                     "recorded only; repeated observation need not preserve later marginals"};
    cl.pass = cl.residual < cl.tol;
    rep.checks.push_back(cl);
  }

  return rep;
}

}  // namespace chronoscv::stw
