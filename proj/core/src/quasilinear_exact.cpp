#include "harmony/quasilinear_exact.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <stdexcept>

namespace harmony {

namespace {

void check_square(const ValueMatrix& v) {
  for (const auto& row : v)
    if (row.size() != v.size()) throw std::invalid_argument("value matrix must be square");
}

// Hungarian method (potentials form) maximising sum v[rows[i]][cols[a(i)]].
// Returns the optimal value only.
Rational optimum(const ValueMatrix& v, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  const std::size_t n = rows.size();
  if (n == 0) return 0;
  auto cost = [&](std::size_t i, std::size_t j) { return Rational(-v[rows[i - 1]][cols[j - 1]]); };
  std::vector<Rational> u(n + 1, Rational(0)), w(n + 1, Rational(0));
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<std::optional<Rational>> minv(n + 1);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      std::optional<Rational> delta;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Rational cur = cost(i0, j) - u[i0] - w[j];
        if (!minv[j] || cur < *minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (!delta || *minv[j] < *delta) {
          delta = *minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += *delta;
          w[j] -= *delta;
        } else {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Rational total = 0;
  for (std::size_t j = 1; j <= n; ++j) total += v[rows[match[j] - 1]][cols[j - 1]];
  return total;
}

}  // namespace

Assignment max_weight_assignment(const ValueMatrix& v) {
  check_square(v);
  const std::size_t n = v.size();
  std::vector<std::size_t> free_rooms(n);
  for (std::size_t j = 0; j < n; ++j) free_rooms[j] = j;
  Assignment sigma(n);
  // Fix agents in order, each to the smallest room that keeps optimality.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> rest_rows;
    for (std::size_t r = i + 1; r < n; ++r) rest_rows.push_back(r);
    std::vector<std::size_t> rows = rest_rows;
    rows.insert(rows.begin(), i);
    const Rational target = optimum(v, rows, free_rooms);
    bool placed = false;
    for (std::size_t idx = 0; idx < free_rooms.size() && !placed; ++idx) {
      std::vector<std::size_t> rest_cols = free_rooms;
      rest_cols.erase(rest_cols.begin() + static_cast<std::ptrdiff_t>(idx));
      if (v[i][free_rooms[idx]] + optimum(v, rest_rows, rest_cols) == target) {
        sigma[i] = free_rooms[idx];
        free_rooms = std::move(rest_cols);
        placed = true;
      }
    }
    if (!placed) throw std::logic_error("assignment reconstruction failed");
  }
  return sigma;
}

Rational assignment_welfare(const ValueMatrix& v, const Assignment& sigma) {
  Rational total = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) total += v[i][sigma[i]];
  return total;
}

std::vector<Rational> envy_free_prices(const ValueMatrix& v, const Assignment& sigma, const Rational& rent) {
  check_square(v);
  const std::size_t n = v.size();
  if (sigma.size() != n) throw std::invalid_argument("assignment length differs from agent count");
  if (n == 0) return {};

  // Agent i holding room s = sigma[i] does not envy room r iff
  // p_s <= p_r + (v[i][s] - v[i][r]): an arc r -> s of that weight.
  struct Arc {
    std::size_t from, to;
    Rational weight;
  };
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < n; ++r)
      if (r != sigma[i]) arcs.push_back({r, sigma[i], Rational(v[i][sigma[i]] - v[i][r])});

  std::vector<std::optional<Rational>> dist(n);
  dist[sigma[0]] = Rational(0);
  for (std::size_t pass = 0; pass + 1 < n; ++pass) {
    bool changed = false;
    for (const auto& a : arcs) {
      if (!dist[a.from]) continue;
      const Rational candidate = *dist[a.from] + a.weight;
      if (!dist[a.to] || candidate < *dist[a.to]) {
        dist[a.to] = candidate;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (const auto& a : arcs)
    if (dist[a.from] && (!dist[a.to] || *dist[a.from] + a.weight < *dist[a.to]))
      throw std::logic_error("envy constraints contain a positive-gain cycle: assignment is not welfare-maximising");

  PriceVector p;
  for (const auto& d : dist) {
    if (!d) throw std::logic_error("room unreachable in the envy constraint graph");
    p.emplace_back(*d);
  }
  return finite_prices(shift_to_sum(p, rent));
}

ExactResult solve_quasilinear_exact(const ValueMatrix& v, const Rational& rent) {
  ExactResult result;
  result.assignment = max_weight_assignment(v);
  const std::size_t n = v.size();
  result.allocation.prices = envy_free_prices(v, result.assignment, rent);
  result.allocation.room_agents.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) result.allocation.room_agents[result.assignment[i]].push_back(i);

  Certificate& cert = result.certificate;
  cert.epsilon = 0;
  cert.regrets.assign(n, std::nullopt);
  Rational worst = 0;
  const auto& p = result.allocation.prices;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t own = result.assignment[i];
    Rational top = v[i][own] - p[own];
    for (std::size_t r = 0; r < n; ++r) top = std::max(top, Rational(v[i][r] - p[r]));
    const Rational r = top - (v[i][own] - p[own]);
    cert.regrets[i] = r;
    worst = std::max(worst, r);
    if (sgn(r) > 0) cert.failures.push_back("agent " + std::to_string(i) + " envies");
  }
  cert.max_regret = worst;
  cert.envy_free = cert.failures.empty();
  return result;
}

ValueMatrix value_matrix(const Instance& inst) {
  if (inst.mode() != Mode::classic) throw std::invalid_argument("the exact solver handles classic instances only");
  ValueMatrix v;
  for (std::size_t i = 0; i < inst.agent_count(); ++i) {
    const auto* q = dynamic_cast<const QuasilinearOracle*>(&inst.oracle(i));
    if (!q) throw std::invalid_argument("agent '" + inst.agents()[i].name + "' is not quasilinear");
    v.push_back(q->values());
  }
  return v;
}

Solution solve_exact(const Instance& inst) {
  const auto started = std::chrono::steady_clock::now();
  ExactResult exact = solve_quasilinear_exact(value_matrix(inst), inst.total_rent());
  Solution sol;
  sol.mode = inst.mode();
  sol.prices = exact.allocation.prices;
  sol.scenarios.push_back({std::nullopt, exact.allocation.room_agents});
  VerificationReport report = verify(inst, sol, Rational(0));
  sol.certificate = std::move(report.overall);
  sol.scenario_certificates = std::move(report.scenarios);
  sol.diagnostics.solver = "quasilinear-exact";
  sol.diagnostics.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return sol;
}

}  // namespace harmony
