// Fixtures shared by the unit and acceptance suites.
#ifndef TNSC_TESTS_SUPPORT_HPP
#define TNSC_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <random>
#include <string>
#include <vector>

#include "tnsc/model.hpp"

namespace tnsc::testing {

inline Link make_link(std::string id, std::string a, std::string b, int slots = 20) {
  Link link;
  link.id = std::move(id);
  link.a = std::move(a);
  link.b = std::move(b);
  link.slot_capacity = slots;
  return link;
}

inline DeviceProfile make_device(std::string node, int ports = 24) {
  return {std::move(node), {{"10GE", 10.0, ports}}};
}

// A-B-C-D-A with 24 x 10GE at A and C.
inline TopologyDescription four_cycle_description(int slots = 20) {
  TopologyDescription desc;
  desc.nodes = {"A", "B", "C", "D"};
  desc.links = {make_link("L_AB", "A", "B", slots), make_link("L_BC", "B", "C", slots),
                make_link("L_CD", "C", "D", slots), make_link("L_DA", "D", "A", slots)};
  desc.devices = {make_device("A"), make_device("C")};
  return desc;
}

inline NetworkTopology four_cycle(int slots = 20) {
  return validate_topology(four_cycle_description(slots));
}

inline NetworkTopology complete_k4() {
  TopologyDescription desc;
  desc.nodes = {"A", "B", "C", "D"};
  int n = 0;
  for (std::size_t i = 0; i < desc.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < desc.nodes.size(); ++j)
      desc.links.push_back(make_link("K" + std::to_string(n++), desc.nodes[i], desc.nodes[j]));
  return validate_topology(desc);
}

inline SliceRequest make_request(std::string id, bool control, int p, int d, int s,
                                 std::string src = "A", std::string dst = "C") {
  SliceRequest r;
  r.id = std::move(id);
  r.src = std::move(src);
  r.dst = std::move(dst);
  r.control_required = control;
  r.disjoint_paths = p;
  r.port = {"10GE", 10.0};
  r.client_ports = d;
  r.calendar_slots = s;
  return r;
}

// The two requests of the reference example.
inline SliceRequest ts1() { return make_request("TS_1", true, 2, 15, 2); }
inline SliceRequest ts2() { return make_request("TS_2", true, 3, 12, 3); }

inline TraitBounds example_bounds() {
  TraitBounds b;
  b.mode = BoundsMode::Static;
  b.topology = {2, 4};
  b.device = {1, 24};
  b.data_plane = {1, 20};
  return b;
}

struct RandomGraphSpec {
  int min_nodes = 2;
  int max_nodes = 8;
  double min_density = 0.15;
  double max_density = 0.85;
  int srlg_pool = 4;           // tags drawn from [0, srlg_pool)
  double parallel_link_p = 0.1;
  int max_slots = 20;
};

// Connected random multigraph: a random spanning tree plus extra edges, with
// random SRLG tags, occasional parallel links and random slot capacities.
inline TopologyDescription random_connected(std::mt19937_64& rng,
                                            const RandomGraphSpec& spec = {}) {
  std::uniform_int_distribution<int> n_dist(spec.min_nodes, spec.max_nodes);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = n_dist(rng);
  const double density = spec.min_density + (spec.max_density - spec.min_density) * unit(rng);

  TopologyDescription desc;
  for (int i = 0; i < n; ++i) desc.nodes.push_back("N" + std::to_string(i));

  int next_id = 0;
  auto add = [&](int a, int b) {
    Link link = make_link("E" + std::to_string(next_id++), desc.nodes[a], desc.nodes[b]);
    std::uniform_int_distribution<int> tag_count(0, 2);
    std::uniform_int_distribution<int> tag(0, std::max(0, spec.srlg_pool - 1));
    const int tags = spec.srlg_pool > 0 ? tag_count(rng) : 0;
    for (int t = 0; t < tags; ++t) link.srlgs.insert(static_cast<std::uint32_t>(tag(rng)));
    std::uniform_int_distribution<int> slots(1, spec.max_slots);
    link.slot_capacity = slots(rng);
    desc.links.push_back(std::move(link));
  };

  std::set<std::pair<int, int>> joined;
  auto join = [&](int a, int b) {
    add(a, b);
    joined.insert(std::minmax(a, b));
  };

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    join(order[parent(rng)], order[i]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!joined.contains({a, b}) && unit(rng) < density) join(a, b);
  for (const auto& [a, b] : std::set<std::pair<int, int>>(joined))
    if (unit(rng) < spec.parallel_link_p) add(a, b);
  return desc;
}

}  // namespace tnsc::testing

#endif  // TNSC_TESTS_SUPPORT_HPP
