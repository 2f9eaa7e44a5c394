#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace photon_lattice {

/// Hilbert-space construction: A keeps one shared vacuum for an escaped
/// photon, B tags the escaped photon with its exit site and direction.
enum class Method { A, B };
enum class Boundary { Closed, Open };
enum class Direction { Left, Right, Down, Up };

std::string_view to_string(Method m);
std::string_view to_string(Boundary b);
std::string_view to_string(Direction d);

struct Site {
  int l = 0;  // horizontal coordinate
  int h = 0;  // vertical coordinate
  auto operator<=>(const Site&) const = default;
};

/// Rectangular lattice of `width` x `height` cavities. Coordinates run over
/// l in [0, width) and h in [0, height).
class GridSpec {
 public:
  GridSpec(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t site_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  bool contains(Site s) const {
    return s.l >= 0 && s.l < width_ && s.h >= 0 && s.h < height_;
  }
  bool on_boundary(Site s) const {
    return s.l == 0 || s.l == width_ - 1 || s.h == 0 || s.h == height_ - 1;
  }
  bool is_corner(Site s) const {
    return (s.l == 0 || s.l == width_ - 1) && (s.h == 0 || s.h == height_ - 1);
  }

  // Row-major: h is the outer index, l the inner one.
  std::size_t ordinal(Site s) const;
  Site site(std::size_t ordinal) const;

  bool operator==(const GridSpec&) const = default;

 private:
  int width_;
  int height_;
};

GridSpec build_grid(int width, int height);

/// Sites at Manhattan distance 1, in the order left, right, down, up.
std::vector<Site> neighbors(const GridSpec& grid, Site s);

/// Number of nearest-neighbour bonds: L(H-1) + H(L-1).
std::size_t edge_count(const GridSpec& grid);

/// Lattice center, rounding down on even extents.
Site center_site(const GridSpec& grid);

/// Escape directions open to a photon sitting on `s`, in the order
/// left, right, down, up. Empty for interior sites.
std::vector<Direction> escape_directions(const GridSpec& grid, Site s);

struct BasisState {
  enum class Kind { InPlane, VacuumA, EscapedB };

  Kind kind = Kind::InPlane;
  Site site{};                          // InPlane, EscapedB
  Direction direction = Direction::Left;  // EscapedB only

  static BasisState in_plane(Site s) { return {Kind::InPlane, s, Direction::Left}; }
  static BasisState vacuum() { return {Kind::VacuumA, {}, Direction::Left}; }
  static BasisState escaped(Site s, Direction d) { return {Kind::EscapedB, s, d}; }

  /// p: 1 while the photon is inside the lattice.
  int occupancy() const { return kind == Kind::InPlane ? 1 : 0; }
  /// m_left, m_right, m_down, m_up.
  int escape_flag(Direction d) const {
    return kind == Kind::EscapedB && direction == d ? 1 : 0;
  }

  bool operator==(const BasisState&) const = default;
};

/// Reduced single-photon basis. In-plane states take ordinals
/// [0, L*H) in grid order; the vacuum (A) or escaped states (B) follow.
/// Escaped states are emitted per boundary site, scanning the left edge
/// bottom-to-top, then the right edge, then the remaining bottom and top
/// edge sites left-to-right; a site's directions are adjacent and ordered
/// left, right, down, up.
class BasisSet {
 public:
  const GridSpec& grid() const { return grid_; }
  Method method() const { return method_; }
  Boundary boundary() const { return boundary_; }

  std::size_t dimension() const { return states_.size(); }
  std::size_t in_plane_dimension() const { return grid_.site_count(); }
  std::size_t escaped_dimension() const { return dimension() - in_plane_dimension(); }

  std::span<const BasisState> states() const { return states_; }
  const BasisState& state(std::size_t ordinal) const { return states_.at(ordinal); }
  bool is_in_plane(std::size_t ordinal) const { return ordinal < in_plane_dimension(); }

  std::size_t ordinal_of(Site s) const;
  std::optional<std::size_t> vacuum_ordinal() const;
  std::optional<std::size_t> escaped_ordinal(Site s, Direction d) const;
  /// Inverse of state(); throws std::out_of_range for states not in the set.
  std::size_t index_of(const BasisState& s) const;

  bool operator==(const BasisSet& other) const {
    return grid_ == other.grid_ && method_ == other.method_ && boundary_ == other.boundary_;
  }

 private:
  BasisSet(GridSpec grid, Method method, Boundary boundary);
  friend BasisSet enumerate_basis(const GridSpec&, Method, Boundary);

  GridSpec grid_;
  Method method_;
  Boundary boundary_;
  std::vector<BasisState> states_;
  // escaped_index_[4 * site_ordinal + direction] -> basis ordinal, or npos.
  std::vector<std::size_t> escaped_index_;
};

BasisSet enumerate_basis(const GridSpec& grid, Method method, Boundary boundary);

/// Closed-form reduced dimension for each construction.
std::size_t expected_dimension(const GridSpec& grid, Method method, Boundary boundary);

nlohmann::json to_json(const BasisState& s);
nlohmann::json to_json(const BasisSet& basis);

/// Occupation-number basis over every cavity: bit k of a pattern is the
/// photon number of the site with ordinal k.
struct FullBasis {
  GridSpec grid;
  std::size_t pattern_count = 0;
  std::vector<std::uint32_t> single_excitation;  // indexed by site ordinal
  std::uint32_t vacuum = 0;
};

inline constexpr std::size_t kMaxFullSpaceSites = 16;

/// Refuses grids with more than kMaxFullSpaceSites cavities.
FullBasis enumerate_full_space(const GridSpec& grid);

}  // namespace photon_lattice
