#include "photon_lattice/lattice.hpp"

#include <limits>
#include <stdexcept>

namespace photon_lattice {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::string site_string(Site s) {
  return "(" + std::to_string(s.l) + "," + std::to_string(s.h) + ")";
}

}  // namespace

std::string_view to_string(Method m) { return m == Method::A ? "a" : "b"; }

std::string_view to_string(Boundary b) { return b == Boundary::Closed ? "closed" : "open"; }

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Left: return "left";
    case Direction::Right: return "right";
    case Direction::Down: return "down";
    case Direction::Up: return "up";
  }
  return "?";
}

GridSpec::GridSpec(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("grid extents must be positive, got " + std::to_string(width) +
                                "x" + std::to_string(height));
  }
}

std::size_t GridSpec::ordinal(Site s) const {
  if (!contains(s)) throw std::out_of_range("site " + site_string(s) + " outside grid");
  return static_cast<std::size_t>(s.h) * static_cast<std::size_t>(width_) +
         static_cast<std::size_t>(s.l);
}

Site GridSpec::site(std::size_t ordinal) const {
  if (ordinal >= site_count()) throw std::out_of_range("site ordinal outside grid");
  const auto w = static_cast<std::size_t>(width_);
  return {static_cast<int>(ordinal % w), static_cast<int>(ordinal / w)};
}

GridSpec build_grid(int width, int height) { return GridSpec(width, height); }

std::vector<Site> neighbors(const GridSpec& grid, Site s) {
  if (!grid.contains(s)) throw std::out_of_range("site " + site_string(s) + " outside grid");
  std::vector<Site> out;
  out.reserve(4);
  for (Site n : {Site{s.l - 1, s.h}, Site{s.l + 1, s.h}, Site{s.l, s.h - 1}, Site{s.l, s.h + 1}}) {
    if (grid.contains(n)) out.push_back(n);
  }
  return out;
}

std::size_t edge_count(const GridSpec& grid) {
  const auto w = static_cast<std::size_t>(grid.width());
  const auto h = static_cast<std::size_t>(grid.height());
  return w * (h - 1) + h * (w - 1);
}

Site center_site(const GridSpec& grid) {
  return {(grid.width() - 1) / 2, (grid.height() - 1) / 2};
}

std::vector<Direction> escape_directions(const GridSpec& grid, Site s) {
  if (!grid.contains(s)) throw std::out_of_range("site " + site_string(s) + " outside grid");
  std::vector<Direction> out;
  if (s.l == 0) out.push_back(Direction::Left);
  if (s.l == grid.width() - 1) out.push_back(Direction::Right);
  if (s.h == 0) out.push_back(Direction::Down);
  if (s.h == grid.height() - 1) out.push_back(Direction::Up);
  return out;
}

BasisSet::BasisSet(GridSpec grid, Method method, Boundary boundary)
    : grid_(grid), method_(method), boundary_(boundary) {}

std::size_t BasisSet::ordinal_of(Site s) const { return grid_.ordinal(s); }

std::optional<std::size_t> BasisSet::vacuum_ordinal() const {
  if (method_ == Method::A && boundary_ == Boundary::Open) return in_plane_dimension();
  return std::nullopt;
}

std::optional<std::size_t> BasisSet::escaped_ordinal(Site s, Direction d) const {
  if (escaped_index_.empty() || !grid_.contains(s)) return std::nullopt;
  const std::size_t idx = escaped_index_[4 * grid_.ordinal(s) + static_cast<std::size_t>(d)];
  if (idx == npos) return std::nullopt;
  return idx;
}

std::size_t BasisSet::index_of(const BasisState& s) const {
  std::optional<std::size_t> found;
  switch (s.kind) {
    case BasisState::Kind::InPlane:
      if (grid_.contains(s.site)) found = grid_.ordinal(s.site);
      break;
    case BasisState::Kind::VacuumA: found = vacuum_ordinal(); break;
    case BasisState::Kind::EscapedB: found = escaped_ordinal(s.site, s.direction); break;
  }
  if (!found) throw std::out_of_range("basis state not present in this basis");
  return *found;
}

BasisSet enumerate_basis(const GridSpec& grid, Method method, Boundary boundary) {
  BasisSet basis(grid, method, boundary);
  const std::size_t n = grid.site_count();
  basis.states_.reserve(expected_dimension(grid, method, boundary));
  for (std::size_t k = 0; k < n; ++k) basis.states_.push_back(BasisState::in_plane(grid.site(k)));

  if (boundary == Boundary::Closed) return basis;

  if (method == Method::A) {
    basis.states_.push_back(BasisState::vacuum());
    return basis;
  }

  basis.escaped_index_.assign(4 * n, npos);
  std::vector<bool> visited(n, false);
  auto emit = [&](Site s) {
    const std::size_t k = grid.ordinal(s);
    if (visited[k]) return;
    visited[k] = true;
    for (Direction d : escape_directions(grid, s)) {
      basis.escaped_index_[4 * k + static_cast<std::size_t>(d)] = basis.states_.size();
      basis.states_.push_back(BasisState::escaped(s, d));
    }
  };
  const int w = grid.width();
  const int h = grid.height();
  for (int y = 0; y < h; ++y) emit({0, y});
  for (int y = 0; y < h; ++y) emit({w - 1, y});
  for (int x = 0; x < w; ++x) emit({x, 0});
  for (int x = 0; x < w; ++x) emit({x, h - 1});
  return basis;
}

std::size_t expected_dimension(const GridSpec& grid, Method method, Boundary boundary) {
  const std::size_t n = grid.site_count();
  if (boundary == Boundary::Closed) return n;
  if (method == Method::A) return n + 1;
  return n + 2 * static_cast<std::size_t>(grid.width() + grid.height());
}

nlohmann::json to_json(const BasisState& s) {
  nlohmann::json j;
  j["p"] = s.occupancy();
  switch (s.kind) {
    case BasisState::Kind::InPlane:
      j["kind"] = "in_plane";
      j["l"] = s.site.l;
      j["h"] = s.site.h;
      break;
    case BasisState::Kind::VacuumA: j["kind"] = "vacuum"; break;
    case BasisState::Kind::EscapedB:
      j["kind"] = "escaped";
      j["l"] = s.site.l;
      j["h"] = s.site.h;
      j["direction"] = std::string(to_string(s.direction));
      break;
  }
  return j;
}

nlohmann::json to_json(const BasisSet& basis) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& s : basis.states()) states.push_back(to_json(s));
  return {{"method", std::string(to_string(basis.method()))},
          {"boundary", std::string(to_string(basis.boundary()))},
          {"width", basis.grid().width()},
          {"height", basis.grid().height()},
          {"dimension", basis.dimension()},
          {"states", std::move(states)}};
}

FullBasis enumerate_full_space(const GridSpec& grid) {
  const std::size_t n = grid.site_count();
  if (n > kMaxFullSpaceSites) {
    throw std::invalid_argument("full occupation space limited to " +
                                std::to_string(kMaxFullSpaceSites) + " sites, grid has " +
                                std::to_string(n));
  }
  FullBasis full{grid, std::size_t{1} << n, {}, 0};
  full.single_excitation.reserve(n);
  for (std::size_t k = 0; k < n; ++k) full.single_excitation.push_back(std::uint32_t{1} << k);
  return full;
}

}  // namespace photon_lattice
