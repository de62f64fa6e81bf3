#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "harmony/rational.hpp"

namespace harmony {

/// Per-room prices. Entries may be +infinity only on the reciprocal map.
using PriceVector = std::vector<ExtRational>;

/// Sorted, duplicate-free set of 0-based room indices.
using RoomSet = std::vector<std::size_t>;

PriceVector to_price_vector(const std::vector<Rational>& prices);

/// Throws std::domain_error if any entry is infinite.
std::vector<Rational> finite_prices(const PriceVector& prices);

bool has_finite_entry(const PriceVector& prices);

/// Sum of a vector with no infinite entries.
Rational price_sum(const PriceVector& prices);

std::string format_prices(const PriceVector& prices);

}  // namespace harmony

namespace harmony {

/// q = p + ((R - sum p) / m) * 1, so that sum q = R exactly.
/// Throws std::domain_error if an entry is infinite (no envy-free
/// allocation has infinite prices, so callers must rule them out first).
PriceVector shift_to_sum(const PriceVector& prices, const Rational& total_rent);

}  // namespace harmony
