#ifndef TNSC_PATHFIND_HPP
#define TNSC_PATHFIND_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "tnsc/model.hpp"

namespace tnsc {

// node_disjoint implies link_disjoint; srlg_disjoint is link_disjoint plus
// no SRLG tag shared between links of different paths.
enum class DisjointnessMode { LinkDisjoint, NodeDisjoint, SrlgDisjoint };

// "link_disjoint" style; parse also accepts the "link-disjoint" CLI form.
std::string_view to_string(DisjointnessMode mode);
DisjointnessMode parse_mode(std::string_view text);

struct PathOptions {
  // Per-link cost overrides; links not listed use Link::cost.
  std::map<LinkId, std::int64_t> costs;
  // Indexed like NetworkTopology::links(); empty means every link is usable.
  std::vector<bool> usable_links;
  // Candidate paths the SRLG search may draw before giving up.
  std::size_t srlg_budget = 1000;
};

// Minimum-cost simple path; equal costs resolve to the lexicographically
// smallest node sequence (then link ids, for parallel links).
// Throws Error(UnknownNode | Unreachable).
Path shortest_path(const NetworkTopology& topology, const NodeId& src,
                   const NodeId& dst, const PathOptions& options = {});

struct DisjointSearch {
  std::vector<Path> paths;  // k paths on success, empty otherwise
  int found = 0;            // k on success, best count reached otherwise
  bool budget_exhausted = false;

  bool ok() const { return !paths.empty(); }
};

// Non-throwing form of k_disjoint_paths.
DisjointSearch find_disjoint_paths(const NetworkTopology& topology,
                                   const NodeId& src, const NodeId& dst, int k,
                                   DisjointnessMode mode,
                                   const PathOptions& options = {});

// k pairwise-disjoint simple paths ordered by (cost, node sequence). Link and
// node modes return a minimum total-cost set (successive shortest paths on
// the residual network); SRLG mode returns the first set found by a bounded
// backtracking search over candidate paths.
// Throws Error(UnknownNode | InvalidRequest) and InsufficientDiversityError.
std::vector<Path> k_disjoint_paths(const NetworkTopology& topology,
                                   const NodeId& src, const NodeId& dst, int k,
                                   DisjointnessMode mode,
                                   const PathOptions& options = {});

// Largest k for which k_disjoint_paths succeeds; 0 when unreachable. In SRLG
// mode a budget-limited search may under-report.
int max_disjoint_count(const NetworkTopology& topology, const NodeId& src,
                       const NodeId& dst, DisjointnessMode mode,
                       const PathOptions& options = {});

// Pairwise check by set intersection on the paths' link ids, interior nodes
// and SRLG tags. Does not consult the search routines.
bool paths_disjoint(const NetworkTopology& topology, const Path& first,
                    const Path& second, DisjointnessMode mode);
bool all_pairwise_disjoint(const NetworkTopology& topology,
                           const std::vector<Path>& paths,
                           DisjointnessMode mode);

}  // namespace tnsc

#endif  // TNSC_PATHFIND_HPP
