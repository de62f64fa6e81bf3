#include <algorithm>
#include <functional>
#include <random>

#include "harmony/mesh.hpp"
#include "harmony/preferences.hpp"

namespace harmony {

std::string to_string(Assumption kind) {
  switch (kind) {
    case Assumption::miserly: return "miserly";
    case Assumption::weak_miserly: return "weak-miserly";
    case Assumption::archimedean: return "archimedean";
    case Assumption::compensable: return "compensable";
  }
  return "unknown";
}

std::optional<Assumption> parse_assumption(const std::string& text) {
  if (text == "miserly") return Assumption::miserly;
  if (text == "weak-miserly") return Assumption::weak_miserly;
  if (text == "archimedean") return Assumption::archimedean;
  if (text == "compensable") return Assumption::compensable;
  return std::nullopt;
}

namespace {

constexpr std::int64_t kProbeResolution = 10;
constexpr std::uint64_t kProbeBudget = 5000;
constexpr int kSampleBits = 20;

// Largest resolution <= 10 whose grid stays within the probe budget.
std::int64_t probe_resolution(std::size_t rooms) {
  std::int64_t k = kProbeResolution;
  while (k > 1 && binomial(static_cast<std::uint64_t>(k) + rooms - 1, rooms - 1) > kProbeBudget) --k;
  return k;
}

class Sampler {
 public:
  Sampler(std::uint64_t seed, Rational span) : rng_(seed), span_(std::move(span)) {}

  // Uniform on a 2^20 grid of [-span, span].
  Rational coordinate() {
    const auto u = static_cast<long>(rng_() >> (64 - kSampleBits));
    return Rational(-span_ + 2 * span_ * rational(u, std::int64_t{1} << kSampleBits));
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

 private:
  std::mt19937_64 rng_;
  Rational span_;
};

bool any_best(const RoomSet& best, const PriceVector& p, const std::function<bool(const Rational&)>& pred) {
  return std::any_of(best.begin(), best.end(), [&](std::size_t j) { return pred(p[j].value()); });
}

Rational max_price(const PriceVector& p) {
  Rational top = p.front().value();
  for (const auto& x : p) top = std::max(top, x.value());
  return top;
}

}  // namespace

ValidationReport validate_assumption(const DemandOracle& oracle, Assumption kind,
                                     std::size_t rooms, const Rational& bound,
                                     const Rational& total_rent, std::size_t sample_count,
                                     std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("sample count must be at least 1");
  if (oracle.room_count() != rooms) throw std::invalid_argument("oracle room count differs from m");
  ValidationReport report;
  report.assumption = kind;
  report.note = "continuity of the demand function is assumed, not checked";
  if (rooms < 2) {
    report.note += "; single-room instances satisfy every assumption vacuously";
    return report;
  }

  // Archimedean check compares room `cheap` at price 0 against `dear` at T.
  auto archimedean_ok = [&](const PriceVector& p, std::size_t cheap, std::size_t dear, RoomSet& best) {
    best = oracle.best_rooms(p);
    if (oracle.is_cardinal()) return oracle.utility(cheap, p) >= oracle.utility(dear, p);
    const bool dear_best = std::binary_search(best.begin(), best.end(), dear);
    return !dear_best || std::binary_search(best.begin(), best.end(), cheap);
  };
  auto region_ok = [&](const PriceVector& p, RoomSet& best) {
    best = oracle.best_rooms(p);
    switch (kind) {
      case Assumption::miserly:
        return any_best(best, p, [](const Rational& x) { return sgn(x) <= 0; });
      case Assumption::weak_miserly: {
        const Rational top = max_price(p);
        return any_best(best, p, [&](const Rational& x) { return x < top; });
      }
      case Assumption::compensable:
        return any_best(best, p, [&](const Rational& x) { return x < bound; });
      case Assumption::archimedean: break;
    }
    return true;
  };
  auto fail = [&](PriceVector p, RoomSet best) {
    report.passed = false;
    report.counterexample = std::move(p);
    report.counterexample_best_rooms = std::move(best);
    return report;
  };

  RoomSet best;
  // Structured probes first: grid points of the map whose boundary meets
  // the trigger region.
  if (kind == Assumption::archimedean) {
    for (std::size_t cheap = 0; cheap < rooms; ++cheap) {
      for (std::size_t dear = 0; dear < rooms; ++dear) {
        if (cheap == dear) continue;
        PriceVector p(rooms, ExtRational(bound));
        p[cheap] = Rational(0);
        ++report.probes_checked;
        if (!archimedean_ok(p, cheap, dear, best)) return fail(p, best);
      }
    }
  } else {
    const Rational scale = sgn(total_rent) > 0 ? total_rent : abs(bound);
    for (const auto& point : grid_vertices(rooms, probe_resolution(rooms))) {
      if (!point.on_boundary()) continue;
      const PriceVector p = kind == Assumption::compensable
                                ? price_map_compensable(point.barycentric(), bound, total_rent)
                                : price_map_su(point.barycentric(), scale);
      ++report.probes_checked;
      if (!region_ok(p, best)) return fail(p, best);
    }
  }

  Sampler sampler(seed, sgn(bound) == 0 ? Rational(1) : abs(bound));
  for (std::size_t s = 0; s < sample_count; ++s) {
    PriceVector p(rooms);
    for (auto& x : p) x = sampler.coordinate();
    ++report.samples_checked;
    if (kind == Assumption::archimedean) {
      const std::size_t cheap = sampler.index(rooms);
      std::size_t dear = sampler.index(rooms - 1);
      if (dear >= cheap) ++dear;
      p[cheap] = Rational(0);
      p[dear] = bound;
      if (!archimedean_ok(p, cheap, dear, best)) return fail(p, best);
      continue;
    }
    const std::size_t low = sampler.index(rooms);
    p[low] = std::min(p[low].value(), Rational(0));
    if (kind == Assumption::compensable) {
      std::size_t high = sampler.index(rooms - 1);
      if (high >= low) ++high;
      for (auto& x : p) x = std::min(x.value(), bound);
      p[high] = bound;
    }
    if (!region_ok(p, best)) return fail(p, best);
  }
  return report;
}

}  // namespace harmony
