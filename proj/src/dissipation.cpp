#include "photon_lattice/dissipation.hpp"

#include <stdexcept>

#include "mutation.hpp"

namespace photon_lattice {

JumpChannelSet build_channels(std::shared_ptr<const BasisSet> basis, const PhysicalParams& params) {
  if (!basis) throw std::invalid_argument("build_channels: null basis");
  params.validate();
  JumpChannelSet set{basis, {}, {}};
  const GridSpec& grid = basis->grid();

  if (basis->boundary() == Boundary::Open) {
    if (basis->method() == Method::A) {
      const std::size_t vacuum = *basis->vacuum_ordinal();
      for (std::size_t k = 0; k < grid.site_count(); ++k) {
        if (grid.on_boundary(grid.site(k))) set.channels.push_back({k, vacuum, params.gamma});
      }
    } else {
      // One channel per escaped state, in basis order.
      for (std::size_t t = basis->in_plane_dimension(); t < basis->dimension(); ++t) {
        const BasisState& target = basis->state(t);
        if constexpr (detail::kMutation == 3) {
          const auto dirs = escape_directions(grid, target.site);
          if (grid.is_corner(target.site) && target.direction != dirs.front()) continue;
        }
        set.channels.push_back({basis->ordinal_of(target.site), t, params.gamma});
      }
    }
  }
  set.decay_weights = decay_weight_diagonal(set);
  return set;
}

Eigen::VectorXd decay_weight_diagonal(const JumpChannelSet& channels) {
  if (!channels.basis) throw std::invalid_argument("channel set has no basis");
  Eigen::VectorXd k = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(channels.basis->dimension()));
  for (const auto& c : channels.channels) k(static_cast<Eigen::Index>(c.source)) += c.rate;
  return k;
}

Eigen::MatrixXcd lindblad_apply(const DensityMatrix& rho, const JumpChannelSet& channels) {
  if (!channels.basis || !(*rho.basis() == *channels.basis)) {
    throw std::invalid_argument("lindblad_apply: state and channels use different bases");
  }
  const Eigen::MatrixXcd& r = rho.matrix();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(r.rows(), r.cols());
  for (const auto& c : channels.channels) {
    const auto s = static_cast<Eigen::Index>(c.source);
    const auto t = static_cast<Eigen::Index>(c.target);
    // A rho A^dag = rho_ss |t><t|;  A^dag A = |s><s|.
    out(t, t) += c.rate * r(s, s);
    out.row(s) -= detail::kAnticommutatorWeight * c.rate * r.row(s);
    out.col(s) -= detail::kAnticommutatorWeight * c.rate * r.col(s);
  }
  return out;
}

nlohmann::json to_json(const JumpChannelSet& channels) {
  nlohmann::json list = nlohmann::json::array();
  const BasisSet& basis = *channels.basis;
  for (const auto& c : channels.channels) {
    const Site s = basis.state(c.source).site;
    list.push_back({{"source", {{"l", s.l}, {"h", s.h}}},
                    {"target", to_json(basis.state(c.target))},
                    {"rate", c.rate}});
  }
  return list;
}

}  // namespace photon_lattice
