#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "harmony/price.hpp"
#include "harmony/rational.hpp"

namespace harmony {

class MeshError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integer point y of the simplex {y >= 0, sum y = k}; its barycentric
/// image is x = y / k.
struct GridPoint {
  std::vector<std::int64_t> y;
  std::int64_t k = 1;

  std::size_t dimension() const noexcept { return y.size(); }
  Rational coordinate(std::size_t j) const;
  std::vector<Rational> barycentric() const;
  bool on_boundary() const;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// All C(k+m-1, m-1) grid points, in descending lexicographic order of y.
std::vector<GridPoint> grid_vertices(std::size_t rooms, std::int64_t k);

std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

/// One simplex of the Kuhn (Freudenthal) subdivision of the simplex.
///
/// Cells live in cumulative coordinates z_i = y_0 + ... + y_i (i < m-1),
/// where the simplex becomes 0 <= z_0 <= ... <= z_{m-2} <= k. A cell is a
/// base point plus an order in which the coordinates of z are incremented
/// by one; each increment moves one unit from y_{i+1} to y_i.
class Cell {
 public:
  Cell(std::size_t rooms, std::int64_t k, std::vector<std::int64_t> base,
       std::vector<std::size_t> order);

  std::size_t rooms() const noexcept { return rooms_; }
  std::int64_t resolution() const noexcept { return k_; }
  const std::vector<std::int64_t>& base() const noexcept { return base_; }
  const std::vector<std::size_t>& order() const noexcept { return order_; }

  /// The m vertices, vertex s having the first s increments applied.
  std::vector<GridPoint> vertices() const;
  std::vector<Rational> centroid() const;

  friend bool operator==(const Cell&, const Cell&) = default;
  /// Enumeration order: lexicographic on (base, order).
  friend bool operator<(const Cell& a, const Cell& b);

 private:
  std::size_t rooms_;
  std::int64_t k_;
  std::vector<std::int64_t> base_;
  std::vector<std::size_t> order_;
};

/// Box of base points in cumulative coordinates, inclusive on both ends.
struct BaseBox {
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;

  bool contains(const std::vector<std::int64_t>& base) const;

  friend bool operator==(const BaseBox&, const BaseBox&) = default;
};

/// Box of the whole simplex at resolution k.
BaseBox full_box(std::size_t rooms, std::int64_t k);

/// Box around `cell` after refining by `growth`, padded by `radius` cells of
/// the old resolution and clamped to the simplex.
BaseBox refined_box(const Cell& cell, std::int64_t growth, std::int64_t radius);

/// Deterministic cursor over the Kuhn cells whose base lies in `box` and
/// outside `exclude` (if given), in Cell::operator< order.
class CellEnumerator {
 public:
  CellEnumerator(std::size_t rooms, std::int64_t k);
  CellEnumerator(std::size_t rooms, std::int64_t k, BaseBox box,
                 std::optional<BaseBox> exclude = std::nullopt);

  std::optional<Cell> next();

 private:
  bool advance_base();
  bool order_valid() const;
  bool base_admissible() const;

  std::size_t rooms_;
  std::int64_t k_;
  BaseBox box_;
  std::optional<BaseBox> exclude_;
  std::vector<std::int64_t> base_;
  std::vector<std::size_t> order_;
  bool started_ = false;
  bool done_ = false;
};

/// All cells at resolution k (k^(m-1) of them).
std::vector<Cell> cells(std::size_t rooms, std::int64_t k);

enum class PriceMapKind { compensable, reciprocal, su };

std::string to_string(PriceMapKind kind);
std::optional<PriceMapKind> parse_price_map_kind(const std::string& text);

/// p_j = T - (T*m - R) x_j; sums to R exactly. Throws MeshError if T < R.
PriceVector price_map_compensable(const std::vector<Rational>& x, const Rational& bound,
                                  const Rational& total_rent);

/// p_j = 1 / x_j, +infinity where x_j = 0.
PriceVector price_map_reciprocal(const std::vector<Rational>& x);

/// p_j = R x_j.
PriceVector price_map_su(const std::vector<Rational>& x, const Rational& total_rent);

struct PriceMap {
  PriceMapKind kind = PriceMapKind::compensable;
  Rational bound = 0;       // T, compensable only
  Rational total_rent = 0;  // R, compensable and su

  PriceVector operator()(const std::vector<Rational>& x) const;
  PriceVector operator()(const GridPoint& point) const { return (*this)(point.barycentric()); }
};

struct CellGeometry {
  std::vector<Rational> centroid;
  ExtRational price_diameter;
};

/// Centroid and max-norm diameter of the cell's mapped vertex prices.
CellGeometry cell_geometry(const Cell& cell, const PriceMap& map);

}  // namespace harmony
