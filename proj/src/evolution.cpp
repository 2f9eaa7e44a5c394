#include "photon_lattice/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>

#include "mutation.hpp"
#include "photon_lattice/errors.hpp"

namespace photon_lattice {

UnitaryPropagator compute_propagator(const HermitianOperator& h, const PhysicalParams& params,
                                     PropagatorOptions options) {
  if (!h.basis) throw std::invalid_argument("compute_propagator: operator has no basis");
  params.validate();
  const auto dim = static_cast<Eigen::Index>(h.basis->dimension());
  const auto n = static_cast<Eigen::Index>(h.basis->in_plane_dimension());
  if (h.matrix.rows() != dim || h.matrix.cols() != dim) {
    throw std::invalid_argument("compute_propagator: operator shape does not match basis");
  }
  if (h.matrix.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("compute_propagator: Hamiltonian must have real entries");
  }
  if (dim > n && (h.matrix.rightCols(dim - n).cwiseAbs().maxCoeff() != 0.0 ||
                  h.matrix.bottomRows(dim - n).cwiseAbs().maxCoeff() != 0.0)) {
    throw std::invalid_argument("compute_propagator: escaped states must carry no energy");
  }

  Eigen::MatrixXd in_plane = h.matrix.topLeftCorner(n, n).real();
  if (options.remove_uniform_phase) {
    in_plane.diagonal().array() -= params.hbar * params.omega;
  }
  const Eigen::MatrixXd* q = options.sector.get();
  if (q) {
    if (q->rows() != n || q->cols() < 1 || q->cols() > n) {
      throw std::invalid_argument("compute_propagator: sector shape does not match basis");
    }
    in_plane = q->transpose() * in_plane * *q;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(in_plane);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of the Hamiltonian failed");
  }

  auto spectrum = std::make_shared<InPlaneSpectrum>();
  spectrum->energies = solver.eigenvalues();
  spectrum->eigenvectors = q ? Eigen::MatrixXd(*q * solver.eigenvectors()) : solver.eigenvectors();

  UnitaryPropagator u;
  u.basis = h.basis;
  u.phases = (spectrum->energies * (-params.dt / params.hbar))
                 .unaryExpr([](double angle) { return std::polar(1.0, angle); });
  if (!q) {
    const Eigen::MatrixXcd v = spectrum->eigenvectors.cast<Complex>();
    u.matrix = Eigen::MatrixXcd::Identity(dim, dim);
    u.matrix.topLeftCorner(n, n).noalias() = (v * u.phases.asDiagonal()) * v.transpose();
  }
  u.spectrum = std::move(spectrum);
  return u;
}

Eigen::MatrixXd symmetric_sector(const HermitianOperator& h, const JumpChannelSet& channels,
                                 Site start) {
  if (!h.basis) throw std::invalid_argument("symmetric_sector: operator has no basis");
  const BasisSet& basis = *h.basis;
  const GridSpec& g = basis.grid();
  if (!g.contains(start)) throw std::invalid_argument("symmetric_sector: start outside grid");
  const auto n = static_cast<Eigen::Index>(basis.in_plane_dimension());
  const int w = g.width();
  const int ht = g.height();

  using Map = std::function<Site(Site)>;
  std::vector<Map> candidates = {
      [=](Site s) { return Site{w - 1 - s.l, s.h}; },
      [=](Site s) { return Site{s.l, ht - 1 - s.h}; },
      [=](Site s) { return Site{w - 1 - s.l, ht - 1 - s.h}; },
  };
  if (w == ht) {
    candidates.push_back([](Site s) { return Site{s.h, s.l}; });
    candidates.push_back([=](Site s) { return Site{w - 1 - s.h, s.l}; });
    candidates.push_back([=](Site s) { return Site{s.h, w - 1 - s.l}; });
    candidates.push_back([=](Site s) { return Site{w - 1 - s.h, w - 1 - s.l}; });
  }

  const Eigen::VectorXd weights =
      channels.decay_weights.size() >= n ? Eigen::VectorXd(channels.decay_weights.head(n))
                                         : Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](Eigen::Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };

  for (const Map& map : candidates) {
    if (map(start) != start) continue;
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      perm[static_cast<std::size_t>(i)] = static_cast<Eigen::Index>(
          basis.ordinal_of(map(basis.state(static_cast<std::size_t>(i)).site)));
    }
    bool invariant = true;
    for (Eigen::Index i = 0; i < n && invariant; ++i) {
      const Eigen::Index pi = perm[static_cast<std::size_t>(i)];
      invariant = weights(pi) == weights(i);
      for (Eigen::Index j = 0; j < n && invariant; ++j) {
        invariant = h.matrix(perm[static_cast<std::size_t>(j)], pi) == h.matrix(j, i);
      }
    }
    if (!invariant) continue;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index a = find(i);
      const Eigen::Index b = find(perm[static_cast<std::size_t>(i)]);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }

  std::vector<Eigen::Index> column(static_cast<std::size_t>(n), -1);
  std::vector<int> orbit_size;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto root = static_cast<std::size_t>(find(i));
    if (column[root] < 0) {
      column[root] = static_cast<Eigen::Index>(orbit_size.size());
      orbit_size.push_back(0);
    }
    ++orbit_size[static_cast<std::size_t>(column[root])];
  }
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(orbit_size.size()));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index c = column[static_cast<std::size_t>(find(i))];
    q(i, c) = 1.0 / std::sqrt(static_cast<double>(orbit_size[static_cast<std::size_t>(c)]));
  }
  return q;
}

namespace {

void require_full_matrix(const UnitaryPropagator& u) {
  if (u.matrix.size() == 0) {
    throw std::invalid_argument("propagator was built for a sector and has no full matrix");
  }
}

void require_same_basis(const BasisSet& a, const BasisSet& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": basis mismatch");
}

}  // namespace

double unitarity_error(const UnitaryPropagator& u) {
  require_full_matrix(u);
  const auto dim = u.matrix.rows();
  return (u.matrix.adjoint() * u.matrix - Eigen::MatrixXcd::Identity(dim, dim))
      .cwiseAbs()
      .maxCoeff();
}

void unitary_step(DensityMatrix& rho, const UnitaryPropagator& u) {
  require_same_basis(*rho.basis(), *u.basis, "unitary_step");
  require_full_matrix(u);
  Eigen::MatrixXcd tmp = u.matrix * rho.matrix();
  rho.matrix().noalias() = tmp * u.matrix.adjoint();
}

void unitary_step(BlockDensity& rho, const UnitaryPropagator& u) {
  require_same_basis(*rho.basis(), *u.basis, "unitary_step");
  if (rho.spectrum() != u.spectrum) {
    throw std::invalid_argument("unitary_step: block density uses another eigenbasis");
  }
  // In the eigenbasis U_in B U_in^dag is B_jk -> phase_j B_jk conj(phase_k).
  auto b = rho.frame_block().array();
  b.colwise() *= u.phases.array();
  b.rowwise() *= u.phases.conjugate().transpose().array();
}

void unitary_step(PureState& psi, const UnitaryPropagator& u) {
  require_same_basis(*psi.basis(), *u.basis, "unitary_step");
  require_full_matrix(u);
  Eigen::VectorXcd next = u.in_plane() * psi.amplitudes();
  psi.amplitudes() = std::move(next);
}

void dissipative_step(DensityMatrix& rho, const JumpChannelSet& channels,
                      const PhysicalParams& params) {
  if (channels.empty()) return;
  const Eigen::MatrixXcd increment = lindblad_apply(rho, channels);
  rho.matrix() += (params.dt / params.hbar) * increment;
}

void dissipative_step(BlockDensity& rho, const JumpChannelSet& channels,
                      const PhysicalParams& params) {
  if (channels.empty()) return;
  if (!channels.basis) throw std::invalid_argument("dissipative_step: channels have no basis");
  require_same_basis(*rho.basis(), *channels.basis, "dissipative_step");

  const auto n = static_cast<Eigen::Index>(rho.basis()->in_plane_dimension());
  const Eigen::VectorXd& weights = channels.decay_weights;

  // K restricted to the lossy sites: K = W^T diag(kappa) W in the eigenbasis,
  // with W the boundary rows of the eigenvector matrix.
  std::vector<Eigen::Index> sources;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (weights(i) != 0.0) sources.push_back(i);
  }
  const auto r = static_cast<Eigen::Index>(sources.size());
  const Eigen::MatrixXd& v = rho.spectrum()->eigenvectors;
  Eigen::MatrixXd w(r, v.cols());
  Eigen::VectorXd kappa(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    w.row(k) = v.row(sources[static_cast<std::size_t>(k)]);
    kappa(k) = weights(sources[static_cast<std::size_t>(k)]);
  }

  Eigen::MatrixXcd& block = rho.frame_block();
  const Eigen::MatrixXd x_re = w * block.real();
  const Eigen::MatrixXd x_im = w * block.imag();
  // <s|B|s> for each lossy site s.
  const Eigen::VectorXd source_population = x_re.cwiseProduct(w).rowwise().sum();

  const double scale = params.dt / params.hbar;
  const Eigen::MatrixXd kb_re = w.transpose() * (kappa.asDiagonal() * x_re);
  const Eigen::MatrixXd kb_im = w.transpose() * (kappa.asDiagonal() * x_im);
  const double c = scale * detail::kAnticommutatorWeight;
  // {K, B} = KB + (KB)^dag for Hermitian B.
  block.real() -= c * (kb_re + kb_re.transpose());
  block.imag() -= c * (kb_im - kb_im.transpose());

  std::vector<Eigen::Index> row_of(static_cast<std::size_t>(n), -1);
  for (Eigen::Index k = 0; k < r; ++k) row_of[static_cast<std::size_t>(sources[static_cast<std::size_t>(k)])] = k;
  Eigen::VectorXd& escaped = rho.escaped();
  for (const auto& ch : channels.channels) {
    const Eigen::Index k = row_of[ch.source];
    escaped(static_cast<Eigen::Index>(ch.target) - n) += scale * ch.rate * source_population(k);
  }
}

std::string_view to_string(Representation r) {
  switch (r) {
    case Representation::FullDensity: return "full";
    case Representation::BlockDensity: return "block";
    case Representation::PureState: return "pure";
  }
  return "?";
}

std::vector<std::size_t> default_snapshot_steps() {
  return {300, 400, 500, 750, 1000, 2000, 5000, 10000};
}

void SimulationConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    throw ConfigError(msg.substr(0, msg.find(' ')), msg);
  }
  if (representation == Representation::PureState && boundary == Boundary::Open) {
    throw ConfigError("repr", "pure-state representation requires a closed boundary");
  }
  if (!std::is_sorted(snapshot_steps.begin(), snapshot_steps.end()) ||
      std::adjacent_find(snapshot_steps.begin(), snapshot_steps.end()) != snapshot_steps.end()) {
    throw ConfigError("snapshots", "snapshot steps must be strictly increasing");
  }
  if (!snapshot_steps.empty() && snapshot_steps.back() > total_steps) {
    throw ConfigError("snapshots", "snapshot step " + std::to_string(snapshot_steps.back()) +
                                       " exceeds steps = " + std::to_string(total_steps));
  }
  if (initial_site && !grid.contains(*initial_site)) {
    throw ConfigError("initial_site", "initial site lies outside the grid");
  }
}

namespace {

using State = std::variant<DensityMatrix, BlockDensity, PureState>;

double in_plane_total(const DensityMatrix& s) {
  const auto n = static_cast<Eigen::Index>(s.basis()->in_plane_dimension());
  return s.matrix().diagonal().head(n).real().sum();
}
double in_plane_total(const BlockDensity& s) { return s.in_plane_trace(); }
double in_plane_total(const PureState& s) { return s.amplitudes().squaredNorm(); }

double trace_of(const DensityMatrix& s) { return s.trace(); }
double trace_of(const BlockDensity& s) { return s.trace(); }
double trace_of(const PureState& s) { return s.amplitudes().squaredNorm(); }

double purity_of(const DensityMatrix& s) { return s.purity(); }
double purity_of(const BlockDensity& s) { return s.purity(); }
double purity_of(const PureState& s) {
  const double p = s.amplitudes().squaredNorm();
  return p * p;
}

Eigen::VectorXd escaped_of(const DensityMatrix& s) { return escaped_populations(s); }
Eigen::VectorXd escaped_of(const BlockDensity& s) { return s.escaped(); }
Eigen::VectorXd escaped_of(const PureState&) { return {}; }

Snapshot take_snapshot(const State& state, std::size_t step, double dt) {
  return std::visit(
      [&](const auto& s) {
        Snapshot snap{step, static_cast<double>(step) * dt, site_probabilities(s), {}, {}};
        snap.column_marginal = column_marginal(snap.field);
        snap.escaped_populations = escaped_of(s);
        snap.dissipative_probability = dissipative_probability(s);
        snap.in_plane_total = in_plane_total(s);
        snap.trace = trace_of(s);
        snap.purity = purity_of(s);
        snap.max_site_probability = snap.field.max();
        snap.symmetry_error = symmetry_error(snap.field);
        return snap;
      },
      state);
}

SeriesSample take_sample(const State& state, std::size_t step, bool with_field) {
  return std::visit(
      [&](const auto& s) {
        SeriesSample out{step, trace_of(s), in_plane_total(s), dissipative_probability(s), 0.0, 0.0};
        if (with_field) {
          const SiteProbabilityField field = site_probabilities(s);
          out.max_site_probability = field.max();
          out.symmetry_error = symmetry_error(field);
        }
        return out;
      },
      state);
}

struct Model {
  std::shared_ptr<const BasisSet> basis;
  UnitaryPropagator propagator;
  /// Propagator for block densities; the full one unless reduced.
  UnitaryPropagator block_propagator;
  JumpChannelSet channels;
};

Model build_model(const SimulationConfig& config, bool need_full) {
  auto basis = std::make_shared<const BasisSet>(
      enumerate_basis(config.grid, config.method, config.boundary));
  const HermitianOperator h = assemble_hamiltonian(basis, config.params);
  Model m{basis, {}, {}, build_channels(basis, config.params)};
  const bool block = config.representation == Representation::BlockDensity || need_full;
  if (need_full || !block || !config.reduce_by_symmetry) {
    m.propagator = compute_propagator(h, config.params, {config.remove_uniform_phase, nullptr});
  }
  if (block && config.reduce_by_symmetry) {
    const Site start = config.initial_site.value_or(center_site(config.grid));
    auto sector = std::make_shared<const Eigen::MatrixXd>(symmetric_sector(h, m.channels, start));
    m.block_propagator =
        compute_propagator(h, config.params, {config.remove_uniform_phase, std::move(sector)});
  } else {
    m.block_propagator = m.propagator;
  }
  return m;
}

State initial_state(const SimulationConfig& config, const Model& m, Representation repr) {
  const Site start = config.initial_site.value_or(center_site(config.grid));
  switch (repr) {
    case Representation::FullDensity: return DensityMatrix::localized(m.basis, start);
    case Representation::BlockDensity:
      return BlockDensity::localized(m.basis, m.block_propagator.spectrum, start);
    case Representation::PureState: return PureState::localized(m.basis, start);
  }
  throw std::logic_error("unknown representation");
}

void advance(State& state, const Model& m, const PhysicalParams& params) {
  std::visit(
      [&](auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, BlockDensity>) {
          unitary_step(s, m.block_propagator);
        } else {
          unitary_step(s, m.propagator);
        }
        if constexpr (!std::is_same_v<std::decay_t<decltype(s)>, PureState>) {
          dissipative_step(s, m.channels, params);
        }
      },
      state);
}

}  // namespace

Trajectory evolve(const SimulationConfig& config, const EvolutionHooks& hooks) {
  config.validate();
  const Model model = build_model(config, false);
  State state = initial_state(config, model, config.representation);

  Trajectory traj;
  auto next_snapshot = config.snapshot_steps.begin();
  auto record = [&](std::size_t step) {
    if (next_snapshot != config.snapshot_steps.end() && *next_snapshot == step) {
      traj.snapshots.push_back(take_snapshot(state, step, config.params.dt));
      if (hooks.on_snapshot) hooks.on_snapshot(traj.snapshots.back());
      ++next_snapshot;
    }
    if (hooks.sample_stride > 0 &&
        (step % hooks.sample_stride == 0 || step == config.total_steps)) {
      traj.series.push_back(take_sample(state, step, hooks.sample_field_statistics));
      if (hooks.on_sample) hooks.on_sample(traj.series.back());
    }
  };

  record(0);
  for (std::size_t step = 1; step <= config.total_steps; ++step) {
    advance(state, model, config.params);
    record(step);
    if (hooks.progress && step % 1000 == 0) {
      *hooks.progress << "step " << step << "/" << config.total_steps << '\n' << std::flush;
    }
  }
  return traj;
}

EquivalenceReport equivalence_check_block_vs_full(const SimulationConfig& config,
                                                  std::size_t steps, double tolerance) {
  config.validate();
  if (config.grid.width() > 9 || config.grid.height() > 9) {
    throw ConfigError("grid", "block/full equivalence check is limited to 9x9 grids");
  }
  if (steps > 2000) throw ConfigError("steps", "block/full equivalence check is limited to 2000 steps");

  const Model model = build_model(config, true);
  State full = initial_state(config, model, Representation::FullDensity);
  State block = initial_state(config, model, Representation::BlockDensity);

  EquivalenceReport report{steps, 0.0, 0.0, tolerance, false};
  for (std::size_t step = 1; step <= steps; ++step) {
    advance(full, model, config.params);
    advance(block, model, config.params);
    const auto& f = std::get<DensityMatrix>(full);
    const auto& b = std::get<BlockDensity>(block);
    const SiteProbabilityField pf = site_probabilities(f);
    const SiteProbabilityField pb = site_probabilities(b);
    for (std::size_t k = 0; k < pf.values.size(); ++k) {
      report.max_site_deviation =
          std::max(report.max_site_deviation, std::abs(pf.values[k] - pb.values[k]));
    }
    const Eigen::VectorXd ef = escaped_populations(f);
    if (ef.size() > 0) {
      report.max_escaped_deviation =
          std::max(report.max_escaped_deviation, (ef - b.escaped()).cwiseAbs().maxCoeff());
    }
  }
  report.passed =
      report.max_site_deviation <= tolerance && report.max_escaped_deviation <= tolerance;
  return report;
}

}  // namespace photon_lattice
