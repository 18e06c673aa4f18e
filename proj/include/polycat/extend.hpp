#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polycat/lattice.hpp"
#include "polycat/rank_table.hpp"

namespace polycat {

// Class index mu(F) in {0,...,k} for every flat of the parent, listed in the
// parent's sorted-flat order. Extending by e sets rho'(X + e) = rho(X) + mu(cl X).
struct ExtensiblePartition {
  std::vector<std::uint8_t> mu;

  friend auto operator<=>(const ExtensiblePartition&, const ExtensiblePartition&) = default;

  // Decimal digits of the mu-vector, e.g. "2110".
  std::string to_string() const;
};

struct PartitionFailure {
  // "(1)".."(7)" for k = 2, "(I)".."(III)" otherwise.
  std::string condition;
  Subset first = 0;
  Subset second = 0;

  std::string describe(int n) const;
};

int mu_of_set(const FlatLattice& lattice, const ExtensiblePartition& partition, Subset x);
int mu_of_set(const RankTable& parent, const ExtensiblePartition& partition, Subset x);

// Throws std::invalid_argument when the assignment does not cover the flats
// or uses classes above k.
std::optional<PartitionFailure> check_partition(const RankTable& parent,
                                                const FlatLattice& lattice,
                                                const ExtensiblePartition& partition);
std::optional<PartitionFailure> check_partition(const RankTable& parent,
                                                const ExtensiblePartition& partition);

// The general three-condition form, usable for any k.
std::optional<PartitionFailure> check_partition_general(const RankTable& parent,
                                                        const FlatLattice& lattice,
                                                        const ExtensiblePartition& partition);

struct EnumerationOptions {
  // Filter all (k+1)^|flats| assignments through check_partition instead of
  // running the propagating search.
  bool reference = false;
};

std::vector<ExtensiblePartition> enumerate_extensible_partitions(
    const RankTable& parent, const EnumerationOptions& options = {});

// Propagating backtracking search over the flats of one parent. Flats are
// visited from the top of the lattice down, so each condition is decided the
// moment its last flat receives a class; every leaf is extensible.
class PartitionSearch {
 public:
  PartitionSearch(const RankTable& parent, const FlatLattice& lattice);

  // Visits every extensible partition once, in no particular order.
  void for_each(const std::function<void(const ExtensiblePartition&)>& visit) const;

 private:
  struct PairBound {
    int left;
    int right;
    int join;
    int defect;
  };
  struct Slot {
    int flat;
    std::vector<int> upper_covers;
    std::vector<int> rank_gap;  // rho(G) - rho(F) per upper cover
    std::vector<PairBound> pairs;  // incomparable pairs meeting at this flat
  };

  void descend(std::size_t depth, ExtensiblePartition& current,
               const std::function<void(const ExtensiblePartition&)>& visit) const;

  int k_;
  std::vector<Slot> order_;
};

// rho' on n+1 elements (the new element is n+1). Throws std::invalid_argument
// if the partition is not extensible.
RankTable extend(const RankTable& parent, const ExtensiblePartition& partition);

// No checks; the caller guarantees the partition is extensible.
RankTable extend_unchecked(const RankTable& parent, const FlatLattice& lattice,
                           const ExtensiblePartition& partition);

// Flats of extend(parent, partition), read off the partition directly.
// Sorted by bitmask.
std::vector<Subset> extension_flats(const RankTable& parent, const ExtensiblePartition& partition);

}  // namespace polycat
