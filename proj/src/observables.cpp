#include "photon_lattice/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace photon_lattice {

double SiteProbabilityField::total() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

double SiteProbabilityField::max() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

namespace {

SiteProbabilityField from_vector(const GridSpec& grid, const Eigen::VectorXd& v) {
  return {grid, std::vector<double>(v.data(), v.data() + v.size())};
}

}  // namespace

SiteProbabilityField site_probabilities(const DensityMatrix& rho) {
  const auto n = static_cast<Eigen::Index>(rho.basis()->in_plane_dimension());
  const Eigen::VectorXd diag = rho.matrix().diagonal().head(n).real();
  return from_vector(rho.basis()->grid(), diag);
}

SiteProbabilityField site_probabilities(const BlockDensity& rho) {
  return from_vector(rho.basis()->grid(), rho.site_diagonal());
}

SiteProbabilityField site_probabilities(const PureState& psi) {
  return from_vector(psi.basis()->grid(), psi.amplitudes().cwiseAbs2());
}

std::vector<double> column_marginal(const SiteProbabilityField& field) {
  const GridSpec& g = field.grid;
  std::vector<double> out(static_cast<std::size_t>(g.width()), 0.0);
  for (int h = 0; h < g.height(); ++h) {
    for (int l = 0; l < g.width(); ++l) out[static_cast<std::size_t>(l)] += field.at({l, h});
  }
  return out;
}

Eigen::VectorXd escaped_populations(const DensityMatrix& rho) {
  const auto n = static_cast<Eigen::Index>(rho.basis()->in_plane_dimension());
  const auto m = static_cast<Eigen::Index>(rho.basis()->escaped_dimension());
  return rho.matrix().diagonal().segment(n, m).real();
}

double dissipative_probability(const DensityMatrix& rho) { return escaped_populations(rho).sum(); }

double dissipative_probability(const BlockDensity& rho) { return rho.escaped().sum(); }

double dissipative_probability(const PureState&) { return 0.0; }

double symmetry_error(const SiteProbabilityField& field) {
  const GridSpec& g = field.grid;
  const int w = g.width();
  const int h = g.height();
  double err = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double p = field.at({x, y});
      err = std::max(err, std::abs(p - field.at({w - 1 - x, y})));
      err = std::max(err, std::abs(p - field.at({x, h - 1 - y})));
      if (w == h) err = std::max(err, std::abs(p - field.at({y, x})));
    }
  }
  return err;
}

double global_max_probability(std::span<const Snapshot> snapshots) {
  bool any = false;
  double best = 0.0;
  for (const auto& s : snapshots) {
    if (s.step == 0) continue;
    best = any ? std::max(best, s.max_site_probability) : s.max_site_probability;
    any = true;
  }
  if (!any) throw std::invalid_argument("global maximum needs a snapshot after step 0");
  return best;
}

}  // namespace photon_lattice
