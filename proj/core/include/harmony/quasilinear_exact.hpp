#pragma once

#include <cstddef>
#include <vector>

#include "harmony/domain.hpp"
#include "harmony/rational.hpp"
#include "harmony/solution.hpp"

namespace harmony {

/// v[i][j]: value of room j to agent i.
using ValueMatrix = std::vector<std::vector<Rational>>;

/// agent -> room
using Assignment = std::vector<std::size_t>;

/// Welfare-maximising assignment; among optima, the lexicographically
/// smallest agent -> room vector. Exact Hungarian method.
Assignment max_weight_assignment(const ValueMatrix& values);

Rational assignment_welfare(const ValueMatrix& values, const Assignment& assignment);

/// Envy-free prices for a welfare-maximising assignment: shortest-path
/// potentials of the envy constraints anchored at agent 0's room, then a
/// uniform shift to total `rent`. Throws std::logic_error if the
/// constraints have a negative cycle (the assignment was not optimal).
std::vector<Rational> envy_free_prices(const ValueMatrix& values, const Assignment& assignment,
                                       const Rational& rent);

struct ExactResult {
  Assignment assignment;
  Allocation allocation;
  Certificate certificate;
};

ExactResult solve_quasilinear_exact(const ValueMatrix& values, const Rational& rent);

/// Value matrix of a classic instance whose oracles are all quasilinear.
ValueMatrix value_matrix(const Instance& instance);

/// Exact solver packaged as a Solution (classic, all-quasilinear instances).
Solution solve_exact(const Instance& instance);

}  // namespace harmony
