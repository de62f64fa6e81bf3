#include "harmony/preferences.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace harmony {

PriceVector to_price_vector(const std::vector<Rational>& prices) {
  return PriceVector(prices.begin(), prices.end());
}

std::vector<Rational> finite_prices(const PriceVector& prices) {
  std::vector<Rational> out;
  out.reserve(prices.size());
  for (const auto& p : prices) out.push_back(p.value());
  return out;
}

bool has_finite_entry(const PriceVector& prices) {
  return std::any_of(prices.begin(), prices.end(), [](const auto& p) { return p.is_finite(); });
}

Rational price_sum(const PriceVector& prices) {
  Rational s = 0;
  for (const auto& p : prices) s += p.value();
  return s;
}

std::string format_prices(const PriceVector& prices) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < prices.size(); ++j) os << (j ? ", " : "") << prices[j].to_exact_string();
  os << ')';
  return os.str();
}

std::string to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::quasilinear: return "quasilinear";
    case OracleKind::archimedean_curve: return "archimedean-curve";
    case OracleKind::affine_externality: return "affine-externality";
    case OracleKind::custom: return "custom";
  }
  return "unknown";
}

ExtRational DemandOracle::utility(std::size_t, const PriceVector&) const {
  throw CapabilityError("oracle of kind " + to_string(kind()) + " is ordinal and has no utilities");
}

RoomSet ExactCardinalOracle::best_rooms(const PriceVector& prices) const {
  if (prices.size() != room_count()) throw std::invalid_argument("price vector length mismatch");
  if (!has_finite_entry(prices)) throw InadmissiblePrices("all prices are infinite");
  RoomSet best;
  std::optional<Rational> top;
  for (std::size_t j = 0; j < prices.size(); ++j) {
    if (!prices[j].is_finite()) continue;
    Rational u = finite_utility(j, prices);
    if (!top || u > *top) {
      top = std::move(u);
      best.assign(1, j);
    } else if (u == *top) {
      best.push_back(j);
    }
  }
  return best;
}

ExtRational ExactCardinalOracle::utility(std::size_t room, const PriceVector& prices) const {
  if (room >= room_count() || prices.size() != room_count())
    throw std::invalid_argument("room index or price vector length out of range");
  if (!prices[room].is_finite()) return ExtRational::neg_infinity();
  return finite_utility(room, prices);
}

QuasilinearOracle::QuasilinearOracle(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("quasilinear oracle needs at least one room");
}

Rational QuasilinearOracle::spread() const {
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  return *hi - *lo;
}

Rational QuasilinearOracle::finite_utility(std::size_t room, const PriceVector& prices) const {
  return values_[room] - prices[room].value();
}

UtilityCurve::UtilityCurve(std::vector<Breakpoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("utility curve needs at least one breakpoint");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i].price > points_[i - 1].price))
      throw std::invalid_argument("utility curve breakpoints must be strictly increasing in price");
    if (points_[i].utility > points_[i - 1].utility)
      throw std::invalid_argument("utility curve must be nonincreasing in price");
  }
}

Rational UtilityCurve::operator()(const Rational& price) const {
  if (points_.size() == 1) return points_[0].utility - (price - points_[0].price);
  auto segment = [&](std::size_t i) {
    const auto& a = points_[i];
    const auto& b = points_[i + 1];
    const Rational slope = (b.utility - a.utility) / (b.price - a.price);
    return Rational(a.utility + slope * (price - a.price));
  };
  if (price <= points_.front().price) return segment(0);
  for (std::size_t i = 0; i + 1 < points_.size(); ++i)
    if (price <= points_[i + 1].price) return segment(i);
  return segment(points_.size() - 2);
}

ArchimedeanCurveOracle::ArchimedeanCurveOracle(std::vector<UtilityCurve> curves)
    : curves_(std::move(curves)) {
  if (curves_.empty()) throw std::invalid_argument("archimedean-curve oracle needs at least one room");
}

bool ArchimedeanCurveOracle::free_room_beats(const Rational& bound) const {
  Rational worst_free, best_bound;
  for (std::size_t j = 0; j < curves_.size(); ++j) {
    const Rational free_u = curves_[j](Rational(0));
    const Rational bound_u = curves_[j](bound);
    if (j == 0 || free_u < worst_free) worst_free = free_u;
    if (j == 0 || bound_u > best_bound) best_bound = bound_u;
  }
  return worst_free >= best_bound;
}

Rational ArchimedeanCurveOracle::finite_utility(std::size_t room, const PriceVector& prices) const {
  return curves_[room](prices[room].value());
}

AffineExternalityOracle::AffineExternalityOracle(std::vector<Rational> values,
                                                 std::vector<Rational> betas)
    : values_(std::move(values)), betas_(std::move(betas)) {
  if (values_.empty()) throw std::invalid_argument("affine-externality oracle needs at least one room");
  if (values_.size() != betas_.size())
    throw std::invalid_argument("affine-externality values and betas differ in length");
}

Rational AffineExternalityOracle::finite_utility(std::size_t room, const PriceVector& prices) const {
  std::optional<Rational> top;
  for (const auto& p : prices)
    if (p.is_finite() && (!top || p.value() > *top)) top = p.value();
  return values_[room] - prices[room].value() + betas_[room] * *top;
}

CustomOracle::CustomOracle(std::size_t rooms, DemandFn demand)
    : rooms_(rooms), demand_(std::move(demand)) {}

CustomOracle::CustomOracle(std::size_t rooms, UtilityFn utility)
    : rooms_(rooms), utility_(std::move(utility)) {}

RoomSet CustomOracle::best_rooms(const PriceVector& prices) const {
  if (prices.size() != rooms_) throw std::invalid_argument("price vector length mismatch");
  if (!has_finite_entry(prices)) throw InadmissiblePrices("all prices are infinite");
  if (demand_) {
    RoomSet rooms = demand_(prices);
    std::sort(rooms.begin(), rooms.end());
    rooms.erase(std::unique(rooms.begin(), rooms.end()), rooms.end());
    if (rooms.empty() || rooms.back() >= rooms_)
      throw std::logic_error("custom demand function returned an invalid room set");
    return rooms;
  }
  std::vector<std::pair<std::size_t, double>> utilities;
  double top = -INFINITY;
  for (std::size_t j = 0; j < rooms_; ++j) {
    if (!prices[j].is_finite()) continue;
    const double u = utility_(j, prices);
    utilities.emplace_back(j, u);
    top = std::max(top, u);
  }
  RoomSet best;
  for (const auto& [j, u] : utilities)
    if (u >= top - kTieTolerance) best.push_back(j);
  return best;
}

ExtRational CustomOracle::utility(std::size_t room, const PriceVector& prices) const {
  if (!utility_) return DemandOracle::utility(room, prices);
  if (!prices[room].is_finite()) return ExtRational::neg_infinity();
  return from_double(utility_(room, prices));
}

ExtRational regret(const DemandOracle& oracle, std::size_t room, const PriceVector& prices) {
  const ExtRational own = oracle.utility(room, prices);
  if (own.is_neg_infinity()) return ExtRational::pos_infinity();
  Rational top = own.value();
  for (std::size_t j = 0; j < prices.size(); ++j) {
    if (j == room || !prices[j].is_finite()) continue;
    const ExtRational u = oracle.utility(j, prices);
    if (u.is_finite() && u.value() > top) top = u.value();
  }
  return Rational(top - own.value());
}

RoomSet near_best_rooms(const DemandOracle& oracle, const PriceVector& prices,
                        const Rational& epsilon) {
  if (!oracle.is_cardinal()) return oracle.best_rooms(prices);
  if (!has_finite_entry(prices)) throw InadmissiblePrices("all prices are infinite");
  std::vector<std::optional<Rational>> utilities(prices.size());
  std::optional<Rational> top;
  for (std::size_t j = 0; j < prices.size(); ++j) {
    const ExtRational u = oracle.utility(j, prices);
    if (!u.is_finite()) continue;
    utilities[j] = u.value();
    if (!top || u.value() > *top) top = u.value();
  }
  RoomSet rooms;
  for (std::size_t j = 0; j < prices.size(); ++j)
    if (utilities[j] && *top - *utilities[j] <= epsilon) rooms.push_back(j);
  return rooms;
}

}  // namespace harmony
