#include "harmony/matching.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "flow.hpp"

namespace harmony {

DemandGraph::DemandGraph(std::size_t agents, std::size_t rooms) : agents_(agents), rooms_(rooms) {}

DemandGraph::DemandGraph(std::size_t agents, std::size_t rooms, std::vector<Edge> edges)
    : agents_(agents), rooms_(rooms) {
  for (const auto& e : edges) add_edge(e.agent, e.room);
}

void DemandGraph::add_edge(std::size_t agent, std::size_t room) {
  if (agent >= agents_ || room >= rooms_) throw std::out_of_range("edge endpoint out of range");
  const Edge e{agent, room};
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) edges_.insert(it, e);
}

bool DemandGraph::has_edge(std::size_t agent, std::size_t room) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{agent, room});
}

std::vector<std::size_t> DemandGraph::rooms_of(std::size_t agent) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges_)
    if (e.agent == agent) out.push_back(e.room);
  return out;
}

std::vector<std::size_t> DemandGraph::agents_of(std::size_t room) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges_)
    if (e.room == room) out.push_back(e.agent);
  return out;
}

// Indices are kept; the removed vertex simply loses its edges.
DemandGraph DemandGraph::without_room(std::size_t room) const {
  DemandGraph g(agents_, rooms_);
  for (const auto& e : edges_)
    if (e.room != room) g.edges_.push_back(e);
  return g;
}

DemandGraph DemandGraph::without_agent(std::size_t agent) const {
  DemandGraph g(agents_, rooms_);
  for (const auto& e : edges_)
    if (e.agent != agent) g.edges_.push_back(e);
  return g;
}

std::optional<EdgeWeights> transportation_feasible(const DemandGraph& graph, const MarginalPair& marg) {
  const std::size_t n = graph.agent_count();
  const std::size_t m = graph.room_count();
  if (marg.agents.size() != n || marg.rooms.size() != m)
    throw MarginalError("marginal lengths do not match the graph");
  Rational supply = 0, demand = 0;
  for (const auto& b : marg.agents) {
    if (sgn(b) < 0) throw MarginalError("negative agent marginal");
    supply += b;
  }
  for (const auto& a : marg.rooms) {
    if (sgn(a) < 0) throw MarginalError("negative room marginal");
    demand += a;
  }
  if (supply != demand)
    throw MarginalError("marginal sums differ: " + to_exact_string(supply) + " vs " + to_exact_string(demand));

  const std::size_t source = 0, sink = n + m + 1;
  detail::FlowNetwork<Rational> net(n + m + 2);
  for (std::size_t i = 0; i < n; ++i) net.add_arc(source, 1 + i, marg.agents[i]);
  std::vector<std::size_t> edge_arcs;
  edge_arcs.reserve(graph.edges().size());
  for (const auto& e : graph.edges()) edge_arcs.push_back(net.add_arc(1 + e.agent, 1 + n + e.room, supply));
  for (std::size_t j = 0; j < m; ++j) net.add_arc(1 + n + j, sink, marg.rooms[j]);

  if (net.max_flow(source, sink) != supply) return std::nullopt;
  EdgeWeights w;
  w.reserve(edge_arcs.size());
  for (auto id : edge_arcs) w.push_back(net.flow(id));
  return w;
}

MarginalPair marginals_of(const DemandGraph& graph, const EdgeWeights& weights) {
  if (weights.size() != graph.edges().size()) throw MarginalError("weight count differs from edge count");
  MarginalPair out{std::vector<Rational>(graph.agent_count(), Rational(0)),
                   std::vector<Rational>(graph.room_count(), Rational(0))};
  for (std::size_t e = 0; e < weights.size(); ++e) {
    out.agents[graph.edges()[e].agent] += weights[e];
    out.rooms[graph.edges()[e].room] += weights[e];
  }
  return out;
}

std::size_t Matching::size() const {
  return static_cast<std::size_t>(
      std::count_if(agent_room.begin(), agent_room.end(), [](const auto& r) { return r.has_value(); }));
}

Matching max_matching(const DemandGraph& graph) {
  const std::size_t n = graph.agent_count();
  const std::size_t m = graph.room_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : graph.edges()) adj[e.agent].push_back(e.room);

  std::vector<std::optional<std::size_t>> room_agent(m);
  Matching result{std::vector<std::optional<std::size_t>>(n)};
  std::vector<bool> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t agent) {
    for (std::size_t room : adj[agent]) {
      if (visited[room]) continue;
      visited[room] = true;
      if (!room_agent[room] || augment(*room_agent[room])) {
        room_agent[room] = agent;
        result.agent_room[agent] = room;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    visited.assign(m, false);
    augment(i);
  }
  return result;
}

namespace {

struct HallNetwork {
  detail::FlowNetwork<long> net;
  std::vector<std::size_t> edge_arcs;
  long demand = 0;
  long flow = 0;
};

// Node layout: source 0, agents 1..n, rooms n+1..n+m, sink n+m+1.
HallNetwork build_hall_network(const DemandGraph& graph, const std::vector<long>& capacity, HallSide side) {
  const std::size_t n = graph.agent_count();
  const std::size_t m = graph.room_count();
  if (capacity.size() != m) throw MarginalError("capacity vector length differs from room count");
  const std::size_t source = 0, sink = n + m + 1;
  const long cap_sum = std::accumulate(capacity.begin(), capacity.end(), 0L);
  const long inf = static_cast<long>(n) + cap_sum + 1;
  HallNetwork h{detail::FlowNetwork<long>(n + m + 2), {}, 0, 0};
  if (side == HallSide::agents) {
    for (std::size_t i = 0; i < n; ++i) h.net.add_arc(source, 1 + i, 1);
    for (const auto& e : graph.edges()) h.edge_arcs.push_back(h.net.add_arc(1 + e.agent, 1 + n + e.room, inf));
    for (std::size_t j = 0; j < m; ++j) h.net.add_arc(1 + n + j, sink, capacity[j]);
    h.demand = static_cast<long>(n);
  } else {
    for (std::size_t j = 0; j < m; ++j) h.net.add_arc(source, 1 + n + j, capacity[j]);
    for (const auto& e : graph.edges()) h.edge_arcs.push_back(h.net.add_arc(1 + n + e.room, 1 + e.agent, inf));
    for (std::size_t i = 0; i < n; ++i) h.net.add_arc(1 + i, sink, 1);
    h.demand = cap_sum;
  }
  h.flow = h.net.max_flow(source, sink);
  return h;
}

HallViolation violation_from_cut(const DemandGraph& graph, const std::vector<long>& capacity,
                                 HallSide side, const HallNetwork& h) {
  const std::size_t n = graph.agent_count();
  const std::size_t m = graph.room_count();
  const auto reach = h.net.reachable(0);
  HallViolation v{side, {}, {}, 0, 0};
  if (side == HallSide::agents) {
    for (std::size_t i = 0; i < n; ++i)
      if (reach[1 + i]) v.subset.push_back(i);
    for (std::size_t j = 0; j < m; ++j)
      if (reach[1 + n + j]) v.neighbourhood.push_back(j);
    v.demand = static_cast<long>(v.subset.size());
    for (auto j : v.neighbourhood) v.supply += capacity[j];
  } else {
    for (std::size_t j = 0; j < m; ++j)
      if (reach[1 + n + j]) v.subset.push_back(j);
    for (std::size_t i = 0; i < n; ++i)
      if (reach[1 + i]) v.neighbourhood.push_back(i);
    for (auto j : v.subset) v.demand += capacity[j];
    v.supply = static_cast<long>(v.neighbourhood.size());
  }
  return v;
}

}  // namespace

std::optional<HallViolation> hall_violation(const DemandGraph& graph, const std::vector<long>& room_capacity,
                                            HallSide side) {
  for (auto c : room_capacity)
    if (c < 0) throw MarginalError("negative room capacity");
  const HallNetwork h = build_hall_network(graph, room_capacity, side);
  if (h.flow == h.demand) return std::nullopt;
  return violation_from_cut(graph, room_capacity, side, h);
}

std::variant<CapacityAssignment, HallViolation> capacity_matching(const DemandGraph& graph,
                                                                  const std::vector<long>& capacity) {
  const long cap_sum = std::accumulate(capacity.begin(), capacity.end(), 0L);
  if (cap_sum != static_cast<long>(graph.agent_count()))
    throw MarginalError("capacity sum " + std::to_string(cap_sum) + " differs from agent count " +
                        std::to_string(graph.agent_count()));
  for (auto c : capacity)
    if (c < 0) throw MarginalError("negative room capacity");
  const HallNetwork h = build_hall_network(graph, capacity, HallSide::agents);
  if (h.flow != h.demand) return violation_from_cut(graph, capacity, HallSide::agents, h);
  CapacityAssignment rooms(graph.room_count());
  for (std::size_t e = 0; e < graph.edges().size(); ++e)
    if (h.net.flow(h.edge_arcs[e]) > 0) rooms[graph.edges()[e].room].push_back(graph.edges()[e].agent);
  return rooms;
}

}  // namespace harmony
