#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "harmony/price.hpp"
#include "harmony/rational.hpp"

namespace harmony {

enum class OracleKind { quasilinear, archimedean_curve, affine_externality, custom };

std::string to_string(OracleKind kind);

/// Raised when a cardinal query is made on an ordinal oracle.
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a price vector has no finite entry.
class InadmissiblePrices : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An agent's demand function: price vector -> nonempty set of best rooms.
///
/// Implementations must be deterministic and free of side effects; the
/// engine calls them from several worker threads at once.
class DemandOracle {
 public:
  virtual ~DemandOracle() = default;

  virtual OracleKind kind() const noexcept = 0;
  virtual bool is_cardinal() const noexcept = 0;
  virtual std::size_t room_count() const noexcept = 0;

  /// Never returns a room with infinite price while a finite one exists.
  virtual RoomSet best_rooms(const PriceVector& prices) const = 0;

  /// Cardinal utility of `room`; -infinity at an infinite price.
  /// Throws CapabilityError for ordinal oracles.
  virtual ExtRational utility(std::size_t room, const PriceVector& prices) const;
};

using OraclePtr = std::shared_ptr<const DemandOracle>;

/// Base for oracles whose utilities are exact rationals. Best rooms are the
/// exact argmax of utility over finite-price rooms.
class ExactCardinalOracle : public DemandOracle {
 public:
  bool is_cardinal() const noexcept final { return true; }
  RoomSet best_rooms(const PriceVector& prices) const final;
  ExtRational utility(std::size_t room, const PriceVector& prices) const final;

 protected:
  /// Utility of `room`, whose price is finite.
  virtual Rational finite_utility(std::size_t room, const PriceVector& prices) const = 0;
};

/// u_j(p) = v_j - p_j.
class QuasilinearOracle final : public ExactCardinalOracle {
 public:
  explicit QuasilinearOracle(std::vector<Rational> values);

  OracleKind kind() const noexcept override { return OracleKind::quasilinear; }
  std::size_t room_count() const noexcept override { return values_.size(); }
  const std::vector<Rational>& values() const noexcept { return values_; }
  /// max_j v_j - min_j v_j
  Rational spread() const;

 protected:
  Rational finite_utility(std::size_t room, const PriceVector& prices) const override;

 private:
  std::vector<Rational> values_;
};

struct Breakpoint {
  Rational price;
  Rational utility;
};

/// Continuous nonincreasing piecewise-linear utility of one room's own price.
/// Outside the breakpoint range the end segments are extended linearly; a
/// single breakpoint extends with slope -1.
class UtilityCurve {
 public:
  explicit UtilityCurve(std::vector<Breakpoint> points);

  Rational operator()(const Rational& price) const;
  const std::vector<Breakpoint>& points() const noexcept { return points_; }

 private:
  std::vector<Breakpoint> points_;
};

/// Room utility depends only on the room's own price through a curve.
class ArchimedeanCurveOracle final : public ExactCardinalOracle {
 public:
  explicit ArchimedeanCurveOracle(std::vector<UtilityCurve> curves);

  OracleKind kind() const noexcept override { return OracleKind::archimedean_curve; }
  std::size_t room_count() const noexcept override { return curves_.size(); }
  const std::vector<UtilityCurve>& curves() const noexcept { return curves_; }

  /// True iff every room at price 0 is weakly preferred to every room at `bound`.
  bool free_room_beats(const Rational& bound) const;

 protected:
  Rational finite_utility(std::size_t room, const PriceVector& prices) const override;

 private:
  std::vector<UtilityCurve> curves_;
};

/// u_j(p) = v_j - p_j + beta_j * max_k p_k, the max taken over finite prices.
class AffineExternalityOracle final : public ExactCardinalOracle {
 public:
  AffineExternalityOracle(std::vector<Rational> values, std::vector<Rational> betas);

  OracleKind kind() const noexcept override { return OracleKind::affine_externality; }
  std::size_t room_count() const noexcept override { return values_.size(); }
  const std::vector<Rational>& values() const noexcept { return values_; }
  const std::vector<Rational>& betas() const noexcept { return betas_; }

 protected:
  Rational finite_utility(std::size_t room, const PriceVector& prices) const override;

 private:
  std::vector<Rational> values_;
  std::vector<Rational> betas_;
};

/// User-supplied demand function. Ordinal unless a utility function is
/// given; floating-point utilities are compared with an absolute tie
/// tolerance of `kTieTolerance`. Continuity is assumed, never checked.
class CustomOracle final : public DemandOracle {
 public:
  using DemandFn = std::function<RoomSet(const PriceVector&)>;
  using UtilityFn = std::function<double(std::size_t, const PriceVector&)>;

  static constexpr double kTieTolerance = 1e-9;

  CustomOracle(std::size_t rooms, DemandFn demand);
  CustomOracle(std::size_t rooms, UtilityFn utility);

  OracleKind kind() const noexcept override { return OracleKind::custom; }
  bool is_cardinal() const noexcept override { return static_cast<bool>(utility_); }
  std::size_t room_count() const noexcept override { return rooms_; }
  RoomSet best_rooms(const PriceVector& prices) const override;
  ExtRational utility(std::size_t room, const PriceVector& prices) const override;

 private:
  std::size_t rooms_;
  DemandFn demand_;
  UtilityFn utility_;
};

/// max_l u_l(p) - u_room(p) for a cardinal oracle (+infinity if the room's
/// price is infinite).
ExtRational regret(const DemandOracle& oracle, std::size_t room, const PriceVector& prices);

/// Rooms within `epsilon` of the best for cardinal oracles, or exactly the
/// best rooms for ordinal ones.
RoomSet near_best_rooms(const DemandOracle& oracle, const PriceVector& prices,
                        const Rational& epsilon);

enum class Assumption { miserly, weak_miserly, archimedean, compensable };

std::string to_string(Assumption kind);
/// Accepts "miserly", "weak-miserly", "archimedean", "compensable".
std::optional<Assumption> parse_assumption(const std::string& text);

struct ValidationReport {
  Assumption assumption;
  bool passed = true;
  std::size_t probes_checked = 0;
  std::size_t samples_checked = 0;
  std::optional<PriceVector> counterexample;
  RoomSet counterexample_best_rooms;
  std::string note;
};

/// Checks an assumption on structured probe vectors followed by
/// `sample_count` seeded pseudorandom vectors from the assumption's trigger
/// region. A pass is evidence, not proof.
ValidationReport validate_assumption(const DemandOracle& oracle, Assumption kind,
                                     std::size_t rooms, const Rational& bound,
                                     const Rational& total_rent, std::size_t sample_count,
                                     std::uint64_t seed);

}  // namespace harmony
