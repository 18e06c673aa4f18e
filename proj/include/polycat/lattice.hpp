#pragma once

#include <vector>

#include "polycat/rank_table.hpp"

namespace polycat {

// Flats of a polymatroid ordered by bitmask, with ranks and the cover
// relation. closure_of[X] is cl(X) for every subset X, and index_of[F] is
// the position of F in `flats` (or -1 when F is not a flat).
struct FlatLattice {
  std::vector<Subset> flats;
  std::vector<int> rank_of;
  std::vector<std::vector<int>> covers;  // covers[i]: indices of flats covering flats[i]
  std::vector<Subset> closure_of;
  std::vector<int> index_of;

  int size() const { return static_cast<int>(flats.size()); }
  int index(Subset flat) const { return index_of[flat]; }
};

Subset closure(const RankTable& table, Subset x);

FlatLattice flats(const RankTable& table);

// rho(X) + rho(Y) - rho(X u Y) - rho(X n Y); nonnegative on valid tables.
int modular_defect(const RankTable& table, Subset x, Subset y);

// rho*(X) = k|X| + rho(S - X) - rho(S).
RankTable k_dual(const RankTable& table);

// Single-element minors. Elements are 1-based; survivors keep their relative
// order and are renumbered 1..n-1. Throw std::out_of_range for a bad element.
RankTable delete_element(const RankTable& table, int element);
RankTable contract_element(const RankTable& table, int element);

// Throws std::domain_error for n = 0.
int min_element_rank(const RankTable& table);

}  // namespace polycat
