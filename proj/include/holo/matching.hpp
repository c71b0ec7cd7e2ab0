#pragma once

#include <cstdint>
#include <vector>

namespace holo {

struct WeightedEdge {
  int u, v;
  std::int64_t w;
};

// Maximum-weight matching (Edmonds blossom with primal-dual updates, O(n^3)).
// With max_cardinality the result is maximum weight among maximum-cardinality
// matchings. Returns mate[v] or -1.
std::vector<int> max_weight_matching(int n_vertices, const std::vector<WeightedEdge>& edges,
                                     bool max_cardinality);

// Minimum-weight perfect matching on a complete graph given by a symmetric cost
// matrix. Throws if n is odd.
std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<std::int64_t>>& cost);

// Defects that may also pair with a boundary at cost boundary[i]; the boundary
// absorbs any number of defects. mate[i] = -1 means matched to the boundary.
std::vector<int> min_weight_boundary_matching(const std::vector<std::vector<std::int64_t>>& cost,
                                              const std::vector<std::int64_t>& boundary);

// Exhaustive bitmask DP over at most 20 defects; boundary may be empty (no boundary).
std::int64_t brute_force_matching_weight(const std::vector<std::vector<std::int64_t>>& cost,
                                         const std::vector<std::int64_t>& boundary);

std::int64_t matching_weight(const std::vector<std::vector<std::int64_t>>& cost,
                             const std::vector<std::int64_t>& boundary,
                             const std::vector<int>& mate);

}  // namespace holo
