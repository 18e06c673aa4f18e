#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polycat/rank_table.hpp"

namespace polycat {

// Lexicographically least rank sequence over all relabelings of the ground
// set. perm[i] is the canonical position (0-based) of input element i+1, so
// `table == relabel(input, perm)`.
struct CanonicalForm {
  RankTable table;
  std::vector<int> perm;
  std::uint64_t aut_order = 1;
};

// Branch and bound over position prefixes: placing the j-th element fixes the
// block of entries [2^(j-1), 2^j), so any prefix that compares greater than
// the best block is cut. Every full labeling reaching the minimum differs from
// the first by an automorphism, which gives the group order for free.
CanonicalForm canonical_form(const RankTable& table);

// rho'(sigma(X)) = rho(X), sigma given as element -> position (0-based).
RankTable relabel(const RankTable& table, std::span<const int> perm);

bool isomorphic(const RankTable& a, const RankTable& b);

// Colored bipartite graph between ground elements and flats. Vertices
// 0..ground_count-1 are elements (color -1); the rest are flats colored by
// rank, followed by one isolated vertex per missing rank below rho(S).
struct FlatGraph {
  int ground_count = 0;
  std::vector<int> color;
  std::vector<std::vector<int>> adjacency;
  std::vector<Subset> flat_sets;  // per flat vertex; placeholders have none
  int placeholder_count = 0;

  int vertex_count() const { return static_cast<int>(color.size()); }
  int flat_vertex_count() const { return vertex_count() - ground_count; }

  // Least color among flat vertices adjacent to every element of x.
  int rank_of(Subset x) const;
};

FlatGraph flat_graph(const RankTable& table);

// Color refinement to a stable partition, serialized as the sorted
// (initial color, class size) pairs. Equal for isomorphic colored graphs.
std::vector<std::uint8_t> graph_invariant(const FlatGraph& graph);

std::uint64_t factorial(int n);

// n! / aut_order; throws std::invalid_argument if aut_order does not divide n!.
std::uint64_t labeled_count(int n, std::uint64_t aut_order);

}  // namespace polycat
