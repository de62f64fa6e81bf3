#include "harmony/mesh.hpp"

#include <algorithm>
#include <numeric>

namespace harmony {

namespace {

void check_dimensions(std::size_t rooms, std::int64_t k) {
  if (rooms < 1) throw MeshError("mesh needs at least one room");
  if (k < 1) throw MeshError("mesh resolution k must be at least 1");
}

std::vector<std::int64_t> y_from_z(const std::vector<std::int64_t>& z, std::int64_t k) {
  std::vector<std::int64_t> y(z.size() + 1);
  std::int64_t prev = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    y[i] = z[i] - prev;
    prev = z[i];
  }
  y.back() = k - prev;
  return y;
}

void enumerate_compositions(std::size_t rooms, std::int64_t remaining, std::vector<std::int64_t>& y,
                            std::vector<GridPoint>& out, std::int64_t k) {
  const std::size_t j = y.size();
  if (j + 1 == rooms) {
    y.push_back(remaining);
    out.push_back(GridPoint{y, k});
    y.pop_back();
    return;
  }
  for (std::int64_t v = remaining; v >= 0; --v) {
    y.push_back(v);
    enumerate_compositions(rooms, remaining - v, y, out, k);
    y.pop_back();
  }
}

}  // namespace

Rational GridPoint::coordinate(std::size_t j) const { return rational(y.at(j), k); }

std::vector<Rational> GridPoint::barycentric() const {
  std::vector<Rational> x;
  x.reserve(y.size());
  for (auto v : y) x.push_back(rational(v, k));
  return x;
}

bool GridPoint::on_boundary() const {
  return std::any_of(y.begin(), y.end(), [](auto v) { return v == 0; });
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) result = result * (n - r + i) / i;
  return result;
}

std::vector<GridPoint> grid_vertices(std::size_t rooms, std::int64_t k) {
  check_dimensions(rooms, k);
  std::vector<GridPoint> out;
  out.reserve(binomial(static_cast<std::uint64_t>(k) + rooms - 1, rooms - 1));
  std::vector<std::int64_t> y;
  enumerate_compositions(rooms, k, y, out, k);
  return out;
}

Cell::Cell(std::size_t rooms, std::int64_t k, std::vector<std::int64_t> base,
           std::vector<std::size_t> order)
    : rooms_(rooms), k_(k), base_(std::move(base)), order_(std::move(order)) {
  check_dimensions(rooms, k);
  if (base_.size() != rooms - 1 || order_.size() != rooms - 1)
    throw MeshError("cell base and order must have m-1 entries");
  std::vector<std::size_t> sorted = order_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw MeshError("cell order is not a permutation");
  for (const auto& v : vertices()) {
    if (std::any_of(v.y.begin(), v.y.end(), [](auto c) { return c < 0; }))
      throw MeshError("cell leaves the simplex");
  }
}

std::vector<GridPoint> Cell::vertices() const {
  std::vector<GridPoint> out;
  out.reserve(rooms_);
  std::vector<std::int64_t> z = base_;
  out.push_back(GridPoint{y_from_z(z, k_), k_});
  for (auto i : order_) {
    ++z[i];
    out.push_back(GridPoint{y_from_z(z, k_), k_});
  }
  return out;
}

std::vector<Rational> Cell::centroid() const {
  std::vector<Rational> c(rooms_, Rational(0));
  const auto verts = vertices();
  for (const auto& v : verts)
    for (std::size_t j = 0; j < rooms_; ++j) c[j] += v.coordinate(j);
  for (auto& cj : c) cj /= static_cast<long>(verts.size());
  return c;
}

bool operator<(const Cell& a, const Cell& b) {
  if (a.base_ != b.base_) return a.base_ < b.base_;
  return a.order_ < b.order_;
}

bool BaseBox::contains(const std::vector<std::int64_t>& base) const {
  for (std::size_t i = 0; i < base.size(); ++i)
    if (base[i] < lo[i] || base[i] > hi[i]) return false;
  return true;
}

BaseBox full_box(std::size_t rooms, std::int64_t k) {
  check_dimensions(rooms, k);
  return BaseBox{std::vector<std::int64_t>(rooms - 1, 0), std::vector<std::int64_t>(rooms - 1, k - 1)};
}

BaseBox refined_box(const Cell& cell, std::int64_t growth, std::int64_t radius) {
  if (growth < 1 || radius < 0) throw MeshError("invalid refinement parameters");
  const std::int64_t fine = cell.resolution() * growth;
  BaseBox box = full_box(cell.rooms(), fine);
  for (std::size_t i = 0; i < cell.base().size(); ++i) {
    box.lo[i] = std::max<std::int64_t>(0, growth * (cell.base()[i] - radius));
    box.hi[i] = std::min<std::int64_t>(fine - 1, growth * (cell.base()[i] + 1 + radius) - 1);
  }
  return box;
}

CellEnumerator::CellEnumerator(std::size_t rooms, std::int64_t k)
    : CellEnumerator(rooms, k, full_box(rooms, k)) {}

CellEnumerator::CellEnumerator(std::size_t rooms, std::int64_t k, BaseBox box,
                               std::optional<BaseBox> exclude)
    : rooms_(rooms), k_(k), box_(std::move(box)), exclude_(std::move(exclude)) {
  check_dimensions(rooms, k);
  if (box_.lo.size() != rooms - 1 || box_.hi.size() != rooms - 1)
    throw MeshError("search box has the wrong dimension");
  // Tighten so that lo and hi are themselves nondecreasing; every prefix of
  // a nondecreasing base then extends to a full base inside the box.
  const std::size_t n = rooms - 1;
  for (std::size_t i = 0; i < n; ++i) {
    box_.lo[i] = std::max<std::int64_t>({box_.lo[i], 0, i ? box_.lo[i - 1] : 0});
  }
  for (std::size_t i = n; i-- > 0;) {
    box_.hi[i] = std::min<std::int64_t>({box_.hi[i], k - 1, i + 1 < n ? box_.hi[i + 1] : k - 1});
  }
}

bool CellEnumerator::base_admissible() const {
  return !(exclude_ && exclude_->contains(base_));
}

// Odometer over nondecreasing bases inside the (tightened) box. After bumping
// position i the suffix is refilled with its smallest admissible values.
bool CellEnumerator::advance_base() {
  const std::size_t n = base_.size();
  auto fill_suffix = [&](std::size_t from) {
    for (std::size_t t = from; t < n; ++t) base_[t] = t ? std::max(box_.lo[t], base_[t - 1]) : box_.lo[t];
  };
  if (!started_) {
    started_ = true;
    for (std::size_t t = 0; t < n; ++t)
      if (box_.lo[t] > box_.hi[t]) return false;
    fill_suffix(0);
    if (base_admissible()) return true;
  }
  for (;;) {
    std::size_t i = n;
    while (i > 0 && base_[i - 1] >= box_.hi[i - 1]) --i;
    if (i == 0) return false;
    ++base_[i - 1];
    fill_suffix(i);
    if (base_admissible()) return true;
  }
}

bool CellEnumerator::order_valid() const {
  std::vector<std::size_t> position(order_.size());
  for (std::size_t s = 0; s < order_.size(); ++s) position[order_[s]] = s;
  for (std::size_t i = 0; i + 1 < base_.size(); ++i)
    if (base_[i] == base_[i + 1] && position[i + 1] > position[i]) return false;
  return true;
}

std::optional<Cell> CellEnumerator::next() {
  if (rooms_ == 1) {
    if (started_) return std::nullopt;
    started_ = true;
    return Cell(rooms_, k_, {}, {});
  }
  while (!done_) {
    if (!started_ || !std::next_permutation(order_.begin(), order_.end())) {
      base_.resize(rooms_ - 1);
      if (!advance_base()) {
        done_ = true;
        return std::nullopt;
      }
      order_.resize(rooms_ - 1);
      std::iota(order_.begin(), order_.end(), std::size_t{0});
    }
    if (order_valid()) return Cell(rooms_, k_, base_, order_);
  }
  return std::nullopt;
}

std::vector<Cell> cells(std::size_t rooms, std::int64_t k) {
  std::vector<Cell> out;
  CellEnumerator it(rooms, k);
  while (auto c = it.next()) out.push_back(std::move(*c));
  return out;
}

std::string to_string(PriceMapKind kind) {
  switch (kind) {
    case PriceMapKind::compensable: return "compensable";
    case PriceMapKind::reciprocal: return "reciprocal";
    case PriceMapKind::su: return "su";
  }
  return "unknown";
}

std::optional<PriceMapKind> parse_price_map_kind(const std::string& text) {
  if (text == "compensable") return PriceMapKind::compensable;
  if (text == "reciprocal") return PriceMapKind::reciprocal;
  if (text == "su") return PriceMapKind::su;
  return std::nullopt;
}

PriceVector price_map_compensable(const std::vector<Rational>& x, const Rational& bound,
                                  const Rational& total_rent) {
  if (bound < total_rent) throw MeshError("compensation bound T must be at least the total rent R");
  const Rational slope = bound * static_cast<long>(x.size()) - total_rent;
  PriceVector p;
  p.reserve(x.size());
  for (const auto& xj : x) p.emplace_back(Rational(bound - slope * xj));
  return p;
}

PriceVector price_map_reciprocal(const std::vector<Rational>& x) {
  PriceVector p;
  p.reserve(x.size());
  for (const auto& xj : x) {
    if (sgn(xj) == 0)
      p.push_back(ExtRational::pos_infinity());
    else
      p.emplace_back(Rational(1 / xj));
  }
  return p;
}

PriceVector price_map_su(const std::vector<Rational>& x, const Rational& total_rent) {
  PriceVector p;
  p.reserve(x.size());
  for (const auto& xj : x) p.emplace_back(Rational(total_rent * xj));
  return p;
}

PriceVector PriceMap::operator()(const std::vector<Rational>& x) const {
  switch (kind) {
    case PriceMapKind::compensable: return price_map_compensable(x, bound, total_rent);
    case PriceMapKind::reciprocal: return price_map_reciprocal(x);
    case PriceMapKind::su: return price_map_su(x, total_rent);
  }
  throw MeshError("unknown price map");
}

CellGeometry cell_geometry(const Cell& cell, const PriceMap& map) {
  const auto verts = cell.vertices();
  std::vector<PriceVector> prices;
  prices.reserve(verts.size());
  for (const auto& v : verts) prices.push_back(map(v));
  ExtRational diameter = Rational(0);
  for (std::size_t a = 0; a < prices.size(); ++a) {
    for (std::size_t b = a + 1; b < prices.size(); ++b) {
      for (std::size_t j = 0; j < prices[a].size(); ++j) {
        const auto& pa = prices[a][j];
        const auto& pb = prices[b][j];
        if (!pa.is_finite() && !pb.is_finite()) continue;
        if (!pa.is_finite() || !pb.is_finite()) return {cell.centroid(), ExtRational::pos_infinity()};
        const ExtRational d = abs(Rational(pa.value() - pb.value()));
        if (d > diameter) diameter = d;
      }
    }
  }
  return {cell.centroid(), diameter};
}

}  // namespace harmony
