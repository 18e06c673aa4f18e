#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polycat/rank_table.hpp"

namespace polycat {

struct CatalogEntry {
  RankTable table;
  std::uint64_t aut_order = 1;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

// One canonical representative per isomorphism class of k-polymatroids on
// {1,...,n}, sorted by rank sequence.
class Catalog {
 public:
  Catalog(int n, int k) : n_(n), k_(k) {}
  Catalog(int n, int k, std::vector<CatalogEntry> entries);

  int n() const { return n_; }
  int k() const { return k_; }
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Histogram over rho(S), indices 0..k*n.
  std::vector<std::uint64_t> rank_counts() const;

  friend bool operator==(const Catalog&, const Catalog&) = default;

 private:
  int n_;
  int k_;
  std::vector<CatalogEntry> entries_;
};

Catalog base_catalog(int k);

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerationOptions {
  unsigned jobs = 0;  // 0: hardware concurrency
  std::size_t block_size = 16;  // parents per work unit
  std::size_t max_entries = 40'000'000;  // in-memory catalog cap
};

struct GenerationStats {
  std::uint64_t parents = 0;
  std::uint64_t partitions = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::chrono::duration<double> wall{0};

  GenerationStats& operator+=(const GenerationStats& other);
};

// One round of canonical-deletion generation: every extension of every
// parent is canonically labeled, its last element deleted, and kept only if
// the canonical deletion equals the parent exactly. Parents never interact.
Catalog generate_next(const Catalog& parents, const GenerationOptions& options = {},
                      GenerationStats* stats = nullptr);

std::vector<Catalog> enumerate_all(int n_max, int k, const GenerationOptions& options = {},
                                   std::vector<GenerationStats>* stats = nullptr);

// Output of a streamed round: entries live in shard files only.
struct ShardSummary {
  int n = 0;
  int k = 0;
  std::uint64_t count = 0;
  std::vector<std::uint64_t> rank_counts;
  std::uint64_t labeled = 0;
  std::vector<std::uint64_t> labeled_rank_counts;
  std::uint64_t min_rank_two = 0;
  std::vector<std::filesystem::path> shards;
};

// Same round as generate_next, but each block of parents appends its
// accepted extensions to its own shard file `<dir>/<prefix>.partNNNNN.txt`.
ShardSummary generate_next_streaming(const Catalog& parents, const std::filesystem::path& dir,
                                     const std::string& prefix,
                                     const GenerationOptions& options = {},
                                     GenerationStats* stats = nullptr);

enum class CountMode { kUnlabeled, kLabeled };

// rows[r][c] counts entries of catalogs[c] with rho(S) = r.
struct CountTable {
  std::vector<int> ns;
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<std::uint64_t> totals;
  std::vector<int> max_rank;  // k*n per column
};

// With min_element_rank = r > 0, keeps entries in which every element x has
// rho(x) >= r and is a flat on its own (no other element lies in cl({x})).
// allow_parallel drops the closure condition and compares singleton ranks
// only. r = 0 keeps everything.
struct EntryFilter {
  int min_element_rank = 0;
  bool allow_parallel = false;

  bool accepts(const RankTable& table) const;
};

CountTable count_table(const std::vector<Catalog>& catalogs, CountMode mode,
                       const EntryFilter& filter = {});

std::uint64_t filter_count(const Catalog& catalog, const EntryFilter& filter);

// Entries with no element of rank below min_rank and no element in the
// closure of another.
std::uint64_t filter_count(const Catalog& catalog, int min_rank = 2);

// nullopt when k-duality permutes the catalog and the rank histogram is
// palindromic; otherwise a description of the first counterexample.
std::optional<std::string> duality_check(const Catalog& catalog);

}  // namespace polycat
