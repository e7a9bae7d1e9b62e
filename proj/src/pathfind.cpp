#include "tnsc/pathfind.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "tnsc/error.hpp"

namespace tnsc {

std::string_view to_string(DisjointnessMode mode) {
  switch (mode) {
    case DisjointnessMode::LinkDisjoint: return "link_disjoint";
    case DisjointnessMode::NodeDisjoint: return "node_disjoint";
    case DisjointnessMode::SrlgDisjoint: return "srlg_disjoint";
  }
  return "unknown";
}

DisjointnessMode parse_mode(std::string_view text) {
  if (text == "link_disjoint" || text == "link-disjoint")
    return DisjointnessMode::LinkDisjoint;
  if (text == "node_disjoint" || text == "node-disjoint")
    return DisjointnessMode::NodeDisjoint;
  if (text == "srlg_disjoint" || text == "srlg-disjoint")
    return DisjointnessMode::SrlgDisjoint;
  throw Error(ErrorCode::ValidationError, std::string(text),
              "unknown disjointness mode");
}

namespace {

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

// Dense view of a topology. Nodes and links are indexed in lexicographic
// order of their ids, so comparing index sequences compares id sequences.
struct Graph {
  struct Edge {
    int u = 0;
    int v = 0;
    std::int64_t cost = 1;
    const Link* link = nullptr;
  };

  std::vector<NodeId> names;
  std::unordered_map<NodeId, int> index;
  std::vector<Edge> edges;
  std::vector<bool> usable;
  // (neighbour, edge) sorted ascending.
  std::vector<std::vector<std::pair<int, int>>> adj;
  // Edges sharing at least one SRLG tag with each edge (itself excluded).
  std::vector<std::vector<int>> srlg_peers;

  int node(const NodeId& id) const {
    auto it = index.find(id);
    return it == index.end() ? -1 : it->second;
  }
};

Graph build_graph(const NetworkTopology& topology, const PathOptions& options) {
  const auto& links = topology.links();
  if (!options.usable_links.empty() && options.usable_links.size() != links.size())
    throw std::invalid_argument("usable_links must match the link count");

  Graph g;
  g.names = topology.nodes();
  std::sort(g.names.begin(), g.names.end());
  for (std::size_t i = 0; i < g.names.size(); ++i)
    g.index.emplace(g.names[i], static_cast<int>(i));

  std::vector<std::size_t> order(links.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return links[x].id < links[y].id;
  });

  g.adj.resize(g.names.size());
  std::map<std::uint32_t, std::vector<int>> by_srlg;
  for (std::size_t original : order) {
    const Link& link = links[original];
    Graph::Edge edge;
    edge.u = g.index.at(link.a);
    edge.v = g.index.at(link.b);
    auto over = options.costs.find(link.id);
    edge.cost = over == options.costs.end() ? link.cost : over->second;
    if (edge.cost < 0)
      throw Error(ErrorCode::InvalidCapacity, link.id, "negative cost");
    edge.link = &link;
    const int e = static_cast<int>(g.edges.size());
    g.edges.push_back(edge);
    g.usable.push_back(options.usable_links.empty() || options.usable_links[original]);
    g.adj[edge.u].emplace_back(edge.v, e);
    g.adj[edge.v].emplace_back(edge.u, e);
    for (std::uint32_t tag : link.srlgs) by_srlg[tag].push_back(e);
  }
  for (auto& list : g.adj) std::sort(list.begin(), list.end());

  g.srlg_peers.resize(g.edges.size());
  for (const auto& [tag, members] : by_srlg) {
    for (int e : members)
      for (int f : members)
        if (e != f) g.srlg_peers[e].push_back(f);
  }
  for (auto& peers : g.srlg_peers) {
    std::sort(peers.begin(), peers.end());
    peers.erase(std::unique(peers.begin(), peers.end()), peers.end());
  }
  return g;
}

struct Route {
  std::int64_t cost = 0;
  std::vector<int> nodes;
  std::vector<int> edges;

  friend bool operator<(const Route& x, const Route& y) {
    return std::tie(x.cost, x.nodes, x.edges) < std::tie(y.cost, y.nodes, y.edges);
  }
  friend bool operator==(const Route&, const Route&) = default;
};

// Dijkstra over whole-route labels ordered by (cost, nodes, edges). The order
// is preserved under extension by a common edge, so the settled label at the
// target is the minimum-cost, lexicographically smallest simple route.
std::optional<Route> lex_dijkstra(const Graph& g, int s, int t,
                                  const std::vector<bool>& edge_ok,
                                  const std::vector<bool>& node_ok) {
  const std::size_t n = g.names.size();
  std::vector<std::optional<Route>> best(n);
  std::vector<bool> done(n, false);
  best[s] = Route{0, {s}, {}};
  for (;;) {
    int u = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || !best[i]) continue;
      if (u < 0 || *best[i] < *best[u]) u = static_cast<int>(i);
    }
    if (u < 0) return std::nullopt;
    done[u] = true;
    if (u == t) return best[u];
    for (const auto& [v, e] : g.adj[u]) {
      if (done[v] || !node_ok[v] || !edge_ok[e]) continue;
      Route next = *best[u];
      next.cost += g.edges[e].cost;
      next.nodes.push_back(v);
      next.edges.push_back(e);
      if (!best[v] || next < *best[v]) best[v] = std::move(next);
    }
  }
}

// Yen's enumeration of simple routes in nondecreasing cost.
class SimpleRoutes {
 public:
  SimpleRoutes(const Graph& g, int s, int t, std::vector<bool> edge_ok)
      : g_(g), s_(s), t_(t), edge_ok_(std::move(edge_ok)) {}

  std::optional<Route> next() {
    const std::vector<bool> all_nodes(g_.names.size(), true);
    if (!started_) {
      started_ = true;
      auto first = lex_dijkstra(g_, s_, t_, edge_ok_, all_nodes);
      if (first) found_.push_back(*first);
      return first;
    }
    if (found_.empty()) return std::nullopt;

    const Route last = found_.back();
    for (std::size_t i = 0; i + 1 < last.nodes.size(); ++i) {
      std::vector<bool> edge_ok = edge_ok_;
      std::vector<bool> node_ok = all_nodes;
      for (const Route& prior : found_) {
        if (prior.nodes.size() <= i + 1) continue;
        if (std::equal(last.nodes.begin(), last.nodes.begin() + i + 1,
                       prior.nodes.begin()) &&
            std::equal(last.edges.begin(), last.edges.begin() + i,
                       prior.edges.begin()))
          edge_ok[prior.edges[i]] = false;
      }
      for (std::size_t j = 0; j < i; ++j) node_ok[last.nodes[j]] = false;

      auto spur = lex_dijkstra(g_, last.nodes[i], t_, edge_ok, node_ok);
      if (!spur) continue;
      Route total;
      total.nodes.assign(last.nodes.begin(), last.nodes.begin() + i);
      total.edges.assign(last.edges.begin(), last.edges.begin() + i);
      for (int e : total.edges) total.cost += g_.edges[e].cost;
      total.cost += spur->cost;
      total.nodes.insert(total.nodes.end(), spur->nodes.begin(), spur->nodes.end());
      total.edges.insert(total.edges.end(), spur->edges.begin(), spur->edges.end());
      candidates_.insert(std::move(total));
    }
    if (candidates_.empty()) return std::nullopt;
    Route r = *candidates_.begin();
    candidates_.erase(candidates_.begin());
    found_.push_back(r);
    return r;
  }

 private:
  const Graph& g_;
  int s_, t_;
  std::vector<bool> edge_ok_;
  bool started_ = false;
  std::vector<Route> found_;
  std::set<Route> candidates_;
};

// Unit-capacity residual network for link- or node-disjoint routing. Node
// mode splits every vertex v into in(v) -> out(v) with capacity one.
class FlowNetwork {
 public:
  FlowNetwork(const Graph& g, int s, int t, bool split_nodes,
              const std::vector<bool>& edge_ok)
      : g_(g), split_(split_nodes) {
    const int n = static_cast<int>(g.names.size());
    out_.resize(split_ ? 2 * n : n);
    if (split_) {
      for (int v = 0; v < n; ++v)
        if (v != s && v != t) add_arc(in(v), out(v), 0, -1);
    }
    forward_.assign(g.edges.size(), -1);
    backward_.assign(g.edges.size(), -1);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (!edge_ok[e]) continue;
      const auto& edge = g.edges[e];
      forward_[e] = add_arc(out(edge.u), in(edge.v), edge.cost, static_cast<int>(e));
      backward_[e] = add_arc(out(edge.v), in(edge.u), edge.cost, static_cast<int>(e));
    }
    source_ = out(s);
    sink_ = in(t);
  }

  // Pushes one unit along a cheapest residual path (Bellman-Ford, since
  // residual arcs carry negated costs). Returns false when none exists.
  bool augment() {
    const std::size_t n = out_.size();
    std::vector<std::int64_t> dist(n, kUnreached);
    std::vector<int> via(n, -1);
    dist[source_] = 0;
    for (std::size_t round = 0; round < n; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (dist[u] == kUnreached) continue;
        for (int a : out_[u]) {
          const Arc& arc = arcs_[a];
          if (arc.cap == 0) continue;
          if (dist[u] + arc.cost < dist[arc.to]) {
            dist[arc.to] = dist[u] + arc.cost;
            via[arc.to] = a;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[sink_] == kUnreached) return false;
    for (int v = sink_; v != source_;) {
      const int a = via[v];
      arcs_[a].cap -= 1;
      arcs_[a ^ 1].cap += 1;
      v = arcs_[a ^ 1].to;
    }
    return true;
  }

  // Splits the current flow into routes, dropping any cycles.
  std::vector<Route> decompose(int s, int t, int count) const {
    const std::size_t n = g_.names.size();
    std::vector<std::vector<std::pair<int, int>>> outgoing(n);
    for (std::size_t e = 0; e < g_.edges.size(); ++e) {
      if (forward_[e] < 0) continue;
      const bool uv = arcs_[forward_[e]].cap == 0;
      const bool vu = arcs_[backward_[e]].cap == 0;
      if (uv == vu) continue;  // unused, or both directions cancel out
      const auto& edge = g_.edges[e];
      if (uv) outgoing[edge.u].emplace_back(edge.v, static_cast<int>(e));
      else outgoing[edge.v].emplace_back(edge.u, static_cast<int>(e));
    }
    for (auto& list : outgoing) std::sort(list.begin(), list.end());

    std::vector<std::size_t> cursor(n, 0);
    std::vector<int> position(n, -1);
    std::vector<Route> routes;
    for (int r = 0; r < count; ++r) {
      Route route{0, {s}, {}};
      position[s] = 0;
      int cur = s;
      while (cur != t) {
        if (cursor[cur] >= outgoing[cur].size())
          throw std::logic_error("flow decomposition lost conservation");
        const auto [v, e] = outgoing[cur][cursor[cur]++];
        if (position[v] >= 0) {
          const auto keep = static_cast<std::size_t>(position[v]);
          for (std::size_t j = keep + 1; j < route.nodes.size(); ++j)
            position[route.nodes[j]] = -1;
          route.nodes.resize(keep + 1);
          route.edges.resize(keep);
        } else {
          position[v] = static_cast<int>(route.nodes.size());
          route.nodes.push_back(v);
          route.edges.push_back(e);
        }
        cur = v;
      }
      for (int v : route.nodes) position[v] = -1;
      for (int e : route.edges) route.cost += g_.edges[e].cost;
      routes.push_back(std::move(route));
    }
    return routes;
  }

 private:
  struct Arc {
    int to;
    int cap;
    std::int64_t cost;
  };

  int in(int v) const { return split_ ? 2 * v : v; }
  int out(int v) const { return split_ ? 2 * v + 1 : v; }

  int add_arc(int from, int to, std::int64_t cost, int /*edge*/) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, 1, cost});
    out_[from].push_back(id);
    arcs_.push_back({from, 0, -cost});
    out_[to].push_back(id + 1);
    return id;
  }

  const Graph& g_;
  bool split_;
  int source_ = 0;
  int sink_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<int> forward_, backward_;
};

int max_flow(const Graph& g, int s, int t, bool split_nodes,
             const std::vector<bool>& edge_ok) {
  FlowNetwork net(g, s, t, split_nodes, edge_ok);
  int flow = 0;
  while (net.augment()) ++flow;
  return flow;
}

// Backtracking over candidate routes in increasing order. Each level drops
// the chosen route's links and every link sharing an SRLG with them; a
// link-disjoint max-flow on what remains bounds how deep a branch can go.
class SrlgSearch {
 public:
  SrlgSearch(const Graph& g, int s, int t, int target, std::size_t budget)
      : g_(g), s_(s), t_(t), target_(target), budget_(budget) {}

  bool run(const std::vector<bool>& edge_ok) { return descend(edge_ok, nullptr); }

  const std::vector<Route>& chosen() const { return chosen_; }
  int best() const { return best_; }
  bool exhausted() const { return exhausted_; }

 private:
  bool descend(const std::vector<bool>& edge_ok, const Route* prev) {
    const int depth = static_cast<int>(chosen_.size());
    best_ = std::max(best_, depth);
    if (depth == target_) return true;
    const int bound = max_flow(g_, s_, t_, false, edge_ok);
    if (depth + bound <= best_) return false;

    SimpleRoutes routes(g_, s_, t_, edge_ok);
    while (auto route = routes.next()) {
      if (prev != nullptr && !(*prev < *route)) continue;
      if (drawn_ >= budget_) {
        exhausted_ = true;
        return false;
      }
      ++drawn_;
      std::vector<bool> remaining = edge_ok;
      for (int e : route->edges) {
        remaining[e] = false;
        for (int peer : g_.srlg_peers[e]) remaining[peer] = false;
      }
      chosen_.push_back(*route);
      if (descend(remaining, &*route)) return true;
      chosen_.pop_back();
      if (exhausted_ || depth + bound <= best_) return false;
    }
    return false;
  }

  const Graph& g_;
  int s_, t_, target_;
  std::size_t budget_;
  std::size_t drawn_ = 0;
  bool exhausted_ = false;
  int best_ = 0;
  std::vector<Route> chosen_;
};

Path to_path(const Graph& g, const Route& route) {
  Path path;
  path.cost = route.cost;
  for (int v : route.nodes) path.nodes.push_back(g.names[v]);
  for (int e : route.edges) path.links.push_back(g.edges[e].link->id);
  return path;
}

std::pair<int, int> endpoints(const Graph& g, const NodeId& src, const NodeId& dst) {
  const int s = g.node(src);
  if (s < 0) throw Error(ErrorCode::UnknownNode, src);
  const int t = g.node(dst);
  if (t < 0) throw Error(ErrorCode::UnknownNode, dst);
  if (s == t) throw Error(ErrorCode::InvalidRequest, src, "src == dst");
  return {s, t};
}

}  // namespace

Path shortest_path(const NetworkTopology& topology, const NodeId& src,
                   const NodeId& dst, const PathOptions& options) {
  const Graph g = build_graph(topology, options);
  const auto [s, t] = endpoints(g, src, dst);
  auto route = lex_dijkstra(g, s, t, g.usable, std::vector<bool>(g.names.size(), true));
  if (!route) throw Error(ErrorCode::Unreachable, dst, "from " + src);
  return to_path(g, *route);
}

DisjointSearch find_disjoint_paths(const NetworkTopology& topology,
                                   const NodeId& src, const NodeId& dst, int k,
                                   DisjointnessMode mode,
                                   const PathOptions& options) {
  if (k < 1) throw Error(ErrorCode::InvalidRequest, "k", "k must be >= 1");
  const Graph g = build_graph(topology, options);
  const auto [s, t] = endpoints(g, src, dst);

  DisjointSearch result;
  std::vector<Route> routes;
  if (mode == DisjointnessMode::SrlgDisjoint) {
    SrlgSearch search(g, s, t, k, options.srlg_budget);
    if (search.run(g.usable)) routes = search.chosen();
    result.found = search.best();
    result.budget_exhausted = search.exhausted();
  } else {
    FlowNetwork net(g, s, t, mode == DisjointnessMode::NodeDisjoint, g.usable);
    int flow = 0;
    while (flow < k && net.augment()) ++flow;
    result.found = flow;
    if (flow == k) routes = net.decompose(s, t, k);
  }
  if (static_cast<int>(routes.size()) != k) return result;

  std::sort(routes.begin(), routes.end());
  for (const Route& route : routes) result.paths.push_back(to_path(g, route));
  return result;
}

std::vector<Path> k_disjoint_paths(const NetworkTopology& topology,
                                   const NodeId& src, const NodeId& dst, int k,
                                   DisjointnessMode mode,
                                   const PathOptions& options) {
  DisjointSearch result = find_disjoint_paths(topology, src, dst, k, mode, options);
  if (!result.ok())
    throw InsufficientDiversityError(k, result.found, result.budget_exhausted);
  return std::move(result.paths);
}

int max_disjoint_count(const NetworkTopology& topology, const NodeId& src,
                       const NodeId& dst, DisjointnessMode mode,
                       const PathOptions& options) {
  const Graph g = build_graph(topology, options);
  const auto [s, t] = endpoints(g, src, dst);
  if (mode != DisjointnessMode::SrlgDisjoint)
    return max_flow(g, s, t, mode == DisjointnessMode::NodeDisjoint, g.usable);

  const int upper = max_flow(g, s, t, false, g.usable);
  if (upper == 0) return 0;
  SrlgSearch search(g, s, t, upper, options.srlg_budget);
  search.run(g.usable);
  return search.best();
}

bool paths_disjoint(const NetworkTopology& topology, const Path& first,
                    const Path& second, DisjointnessMode mode) {
  const std::unordered_set<LinkId> links(first.links.begin(), first.links.end());
  for (const auto& id : second.links)
    if (links.contains(id)) return false;

  if (mode == DisjointnessMode::NodeDisjoint) {
    auto interior = [](const Path& p) {
      std::unordered_set<NodeId> out;
      for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) out.insert(p.nodes[i]);
      return out;
    };
    const auto mine = interior(first);
    for (const auto& node : interior(second))
      if (mine.contains(node)) return false;
  }

  if (mode == DisjointnessMode::SrlgDisjoint) {
    std::set<std::uint32_t> tags;
    for (const auto& id : first.links) {
      const auto& srlgs = topology.link(id).srlgs;
      tags.insert(srlgs.begin(), srlgs.end());
    }
    for (const auto& id : second.links)
      for (std::uint32_t tag : topology.link(id).srlgs)
        if (tags.contains(tag)) return false;
  }
  return true;
}

bool all_pairwise_disjoint(const NetworkTopology& topology,
                           const std::vector<Path>& paths,
                           DisjointnessMode mode) {
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t j = i + 1; j < paths.size(); ++j)
      if (!paths_disjoint(topology, paths[i], paths[j], mode)) return false;
  return true;
}

}  // namespace tnsc
