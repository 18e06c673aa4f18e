#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polycat {

// Subsets of the ground set {1,...,n} are bitmasks: element i is bit i-1.
using Subset = std::uint32_t;

inline constexpr int kMaxGroundSize = 12;

constexpr Subset element_bit(int element) { return Subset{1} << (element - 1); }
constexpr Subset full_set(int n) { return (Subset{1} << n) - 1; }
constexpr int set_size(Subset s) { return __builtin_popcount(s); }

// Dense rank function of an integer polymatroid, indexed by subset bitmask.
//
// Construction only checks the shape (n in range, k >= 1, 2^n entries);
// the polymatroid axioms are checked by validate(). Immutable once built.
class RankTable {
 public:
  // The empty polymatroid on zero elements.
  RankTable() = default;
  RankTable(int n, int k, std::vector<std::uint8_t> rho);

  int n() const { return n_; }
  int k() const { return k_; }
  Subset ground() const { return full_set(n_); }
  std::size_t size() const { return rho_.size(); }

  int operator[](Subset s) const { return rho_[s]; }
  int rank() const { return rho_.back(); }
  std::span<const std::uint8_t> values() const { return rho_; }

  friend bool operator==(const RankTable&, const RankTable&) = default;
  friend std::strong_ordering operator<=>(const RankTable& a, const RankTable& b);

 private:
  int n_ = 0;
  int k_ = 1;
  std::vector<std::uint8_t> rho_{0};
};

RankTable empty_polymatroid(int k);

enum class Axiom { kNormalized, kMonotone, kSubmodular, kElementCap };

const char* axiom_name(Axiom axiom);

// First violated axiom with its witness. For kMonotone the witness is
// (base, f); for kSubmodular it is (base, f, g); for kElementCap it is f.
// Elements are 1-based, 0 when unused.
struct Violation {
  Axiom axiom;
  Subset base = 0;
  int f = 0;
  int g = 0;

  std::string describe(int n) const;
};

// Checks normalization, monotonicity, local submodularity and the element
// cap, in that order.
std::optional<Violation> validate(const RankTable& table);

// Same check on raw values; throws std::invalid_argument when the value
// count is not 2^n.
std::optional<Violation> validate(int n, int k, std::span<const std::uint8_t> rho);

std::string format_subset(Subset s, int n);

}  // namespace polycat
