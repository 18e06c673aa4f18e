#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polycat/gen.hpp"
#include "polycat/rank_table.hpp"

namespace polycat {

// Direct search over rank tables, independent of the extension theory and
// of canonical deletion. Every subset is an integer variable; the search
// assigns them one at a time and each inequality
//   rho(A) + rho(A+f+g) <= rho(A+f) + rho(A+g)
//   0 <= rho(A+f) - rho(A) <= k
//   rho(A) <= k|A|
// narrows the domain of whichever of its variables is assigned last.

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  std::uint64_t node_budget = 0;  // 0: unlimited
  bool reverse_order = false;     // assign variables by decreasing bitmask
  unsigned jobs = 1;              // counting only
};

struct LabeledCounts {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> by_rank;  // indices 0..k*n
  std::uint64_t nodes = 0;
};

LabeledCounts brute_labeled_count(int n, int k, const OracleOptions& options = {});

void for_each_labeled(int n, int k, const std::function<void(const RankTable&)>& visit,
                      const OracleOptions& options = {});

// All valid tables on n+1 elements whose restriction to {1..n} is parent,
// sorted.
std::vector<RankTable> brute_extensions(const RankTable& parent, const OracleOptions& options = {});

struct CrossCheckLine {
  int n = 0;
  std::string check;
  bool ok = false;
  std::string detail;
};

struct CrossCheckReport {
  std::vector<CrossCheckLine> lines;

  bool ok() const;
  const CrossCheckLine* first_failure() const;
  std::string text() const;
  std::string csv() const;
};

// For each n <= n_max: brute labeled counts against orbit-stabilizer sums,
// brute isomorphism classes against the catalog entries, and (for n >= 1)
// brute extensions of every n-1 parent against its partition-generated
// extensions. catalogs[i] must be the catalog for n = i.
CrossCheckReport cross_check(const std::vector<Catalog>& catalogs, int n_max,
                             const OracleOptions& options = {});

}  // namespace polycat
