#include "polycat/gen.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "polycat/canon.hpp"
#include "polycat/catalog_io.hpp"
#include "polycat/extend.hpp"
#include "polycat/lattice.hpp"

namespace polycat {

Catalog::Catalog(int n, int k, std::vector<CatalogEntry> entries)
    : n_(n), k_(k), entries_(std::move(entries)) {
  for (const CatalogEntry& e : entries_) {
    if (e.table.n() != n_ || e.table.k() != k_) {
      throw std::invalid_argument("catalog entry does not match catalog (n, k)");
    }
  }
}

std::vector<std::uint64_t> Catalog::rank_counts() const {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(k_ * n_ + 1), 0);
  for (const CatalogEntry& e : entries_) ++counts.at(static_cast<std::size_t>(e.table.rank()));
  return counts;
}

Catalog base_catalog(int k) { return Catalog(0, k, {CatalogEntry{empty_polymatroid(k), 1}}); }

GenerationStats& GenerationStats::operator+=(const GenerationStats& other) {
  parents += other.parents;
  partitions += other.partitions;
  accepted += other.accepted;
  rejected += other.rejected;
  wall += other.wall;
  return *this;
}

namespace {

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(block) for every block index; workers claim blocks in order.
template <typename Fn>
void run_blocks(std::size_t blocks, unsigned jobs, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        fn(b);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = blocks;
        return;
      }
    }
  };
  const unsigned count = std::min<std::size_t>(jobs, std::max<std::size_t>(blocks, 1));
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

// Y_rho for a single parent, sorted by canonical table.
std::vector<CatalogEntry> extend_parent(const RankTable& parent, GenerationStats& stats) {
  const FlatLattice lattice = flats(parent);
  const PartitionSearch search(parent, lattice);
  const int last = parent.n() + 1;
  std::map<RankTable, std::uint64_t> accepted;
  search.for_each([&](const ExtensiblePartition& partition) {
    ++stats.partitions;
    CanonicalForm labeled = canonical_form(extend_unchecked(parent, lattice, partition));
    const RankTable deletion = delete_element(labeled.table, last);
    if (canonical_form(deletion).table == parent &&
        accepted.emplace(std::move(labeled.table), labeled.aut_order).second) {
      ++stats.accepted;
    } else {
      ++stats.rejected;
    }
  });
  ++stats.parents;
  std::vector<CatalogEntry> out;
  out.reserve(accepted.size());
  for (auto& [table, aut] : accepted) out.push_back(CatalogEntry{table, aut});
  return out;
}

struct BlockResult {
  std::vector<CatalogEntry> entries;
  GenerationStats stats;
};

BlockResult extend_block(const Catalog& parents, std::size_t block, std::size_t block_size) {
  BlockResult result;
  const std::size_t begin = block * block_size;
  const std::size_t end = std::min(parents.size(), begin + block_size);
  for (std::size_t i = begin; i < end; ++i) {
    auto accepted = extend_parent(parents.entries()[i].table, result.stats);
    result.entries.insert(result.entries.end(), std::make_move_iterator(accepted.begin()),
                          std::make_move_iterator(accepted.end()));
  }
  return result;
}

std::size_t block_count(const Catalog& parents, std::size_t block_size) {
  return (parents.size() + block_size - 1) / block_size;
}

void check_parents(const Catalog& parents) {
  if (parents.n() >= kMaxGroundSize) {
    throw ResourceLimitError("ground-set cap " + std::to_string(kMaxGroundSize) + " reached");
  }
}

}  // namespace

Catalog generate_next(const Catalog& parents, const GenerationOptions& options, GenerationStats* stats) {
  check_parents(parents);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t block_size = std::max<std::size_t>(options.block_size, 1);
  const std::size_t blocks = block_count(parents, block_size);
  std::vector<BlockResult> results(blocks);
  std::atomic<std::size_t> produced{0};
  run_blocks(blocks, resolve_jobs(options.jobs), [&](std::size_t b) {
    results[b] = extend_block(parents, b, block_size);
    if (produced.fetch_add(results[b].entries.size()) + results[b].entries.size() > options.max_entries) {
      throw ResourceLimitError("catalog for n=" + std::to_string(parents.n() + 1) + " exceeds " +
                               std::to_string(options.max_entries) + " in-memory entries; use streaming");
    }
  });

  GenerationStats total;
  std::vector<CatalogEntry> entries;
  entries.reserve(produced.load());
  for (BlockResult& r : results) {
    total += r.stats;
    entries.insert(entries.end(), std::make_move_iterator(r.entries.begin()),
                   std::make_move_iterator(r.entries.end()));
  }
  std::sort(entries.begin(), entries.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) { return a.table < b.table; });
  total.wall = std::chrono::steady_clock::now() - start;
  if (stats) *stats = total;
  return Catalog(parents.n() + 1, parents.k(), std::move(entries));
}

std::vector<Catalog> enumerate_all(int n_max, int k, const GenerationOptions& options,
                                   std::vector<GenerationStats>* stats) {
  if (n_max < 0 || n_max > kMaxGroundSize) {
    throw std::invalid_argument("n_max must lie in [0, " + std::to_string(kMaxGroundSize) + "]");
  }
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::vector<Catalog> out{base_catalog(k)};
  if (stats) stats->assign(1, GenerationStats{});
  for (int n = 1; n <= n_max; ++n) {
    GenerationStats round;
    out.push_back(generate_next(out.back(), options, &round));
    if (stats) stats->push_back(round);
  }
  return out;
}

ShardSummary generate_next_streaming(const Catalog& parents, const std::filesystem::path& dir,
                                     const std::string& prefix, const GenerationOptions& options,
                                     GenerationStats* stats) {
  check_parents(parents);
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(dir);
  const int n = parents.n() + 1;
  const int k = parents.k();
  const std::size_t block_size = std::max<std::size_t>(options.block_size, 1);
  const std::size_t blocks = block_count(parents, block_size);

  struct BlockSummary {
    ShardSummary summary;
    GenerationStats stats;
  };
  std::vector<BlockSummary> summaries(blocks);
  run_blocks(blocks, resolve_jobs(options.jobs), [&](std::size_t b) {
    BlockResult r = extend_block(parents, b, block_size);
    ShardSummary& s = summaries[b].summary;
    s.rank_counts.assign(static_cast<std::size_t>(k * n + 1), 0);
    s.labeled_rank_counts.assign(s.rank_counts.size(), 0);
    for (const CatalogEntry& e : r.entries) {
      const std::uint64_t labeled = labeled_count(n, e.aut_order);
      ++s.rank_counts[static_cast<std::size_t>(e.table.rank())];
      s.labeled_rank_counts[static_cast<std::size_t>(e.table.rank())] += labeled;
      s.labeled += labeled;
      if (EntryFilter{2}.accepts(e.table)) ++s.min_rank_two;
    }
    s.count = r.entries.size();
    std::ostringstream name;
    name << prefix << ".part" << std::setw(5) << std::setfill('0') << b << ".txt";
    s.shards.push_back(dir / name.str());
    write_catalog_file(s.shards.back(), Catalog(n, k, std::move(r.entries)));
    summaries[b].stats = r.stats;
  });

  ShardSummary out;
  out.n = n;
  out.k = k;
  out.rank_counts.assign(static_cast<std::size_t>(k * n + 1), 0);
  out.labeled_rank_counts.assign(out.rank_counts.size(), 0);
  GenerationStats total;
  for (BlockSummary& b : summaries) {
    out.count += b.summary.count;
    out.labeled += b.summary.labeled;
    out.min_rank_two += b.summary.min_rank_two;
    for (std::size_t r = 0; r < out.rank_counts.size(); ++r) {
      out.rank_counts[r] += b.summary.rank_counts[r];
      out.labeled_rank_counts[r] += b.summary.labeled_rank_counts[r];
    }
    out.shards.insert(out.shards.end(), b.summary.shards.begin(), b.summary.shards.end());
    total += b.stats;
  }
  total.wall = std::chrono::steady_clock::now() - start;
  if (stats) *stats = total;
  return out;
}

bool EntryFilter::accepts(const RankTable& table) const {
  if (min_element_rank <= 0) return true;
  for (int i = 1; i <= table.n(); ++i) {
    const Subset x = element_bit(i);
    if (table[x] < min_element_rank) return false;
    if (allow_parallel) continue;
    for (int j = 1; j <= table.n(); ++j) {
      if (j != i && table[x | element_bit(j)] == table[x]) return false;
    }
  }
  return true;
}

CountTable count_table(const std::vector<Catalog>& catalogs, CountMode mode, const EntryFilter& filter) {
  CountTable table;
  std::size_t height = 0;
  for (const Catalog& c : catalogs) height = std::max(height, static_cast<std::size_t>(c.k() * c.n() + 1));
  table.rows.assign(height, {});
  for (const Catalog& c : catalogs) {
    std::vector<std::uint64_t> column(height, 0);
    for (const CatalogEntry& e : c.entries()) {
      if (!filter.accepts(e.table)) continue;
      column[static_cast<std::size_t>(e.table.rank())] +=
          mode == CountMode::kLabeled ? labeled_count(c.n(), e.aut_order) : 1;
    }
    table.ns.push_back(c.n());
    table.max_rank.push_back(c.k() * c.n());
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < height; ++r) {
      table.rows[r].push_back(column[r]);
      total += column[r];
    }
    table.totals.push_back(total);
  }
  return table;
}

std::uint64_t filter_count(const Catalog& catalog, int min_rank) {
  return filter_count(catalog, EntryFilter{min_rank});
}

std::uint64_t filter_count(const Catalog& catalog, const EntryFilter& filter) {
  return static_cast<std::uint64_t>(std::count_if(catalog.entries().begin(), catalog.entries().end(),
                                                  [&](const CatalogEntry& e) { return filter.accepts(e.table); }));
}

std::optional<std::string> duality_check(const Catalog& catalog) {
  std::set<RankTable> members;
  for (const CatalogEntry& e : catalog.entries()) members.insert(e.table);
  std::set<RankTable> images;
  for (const CatalogEntry& e : catalog.entries()) {
    const RankTable dual = k_dual(e.table);
    const std::string name = "entry [" + format_ranks(e.table) + "]";
    if (k_dual(dual) != e.table) return name + " is not fixed by double duality";
    if (validate(dual)) return name + " has an invalid dual";
    const CanonicalForm cf = canonical_form(dual);
    if (!members.contains(cf.table)) return name + " has a dual outside the catalog";
    if (cf.aut_order != e.aut_order) return name + " and its dual have different automorphism counts";
    if (!images.insert(cf.table).second) return name + " shares its dual class with another entry";
  }
  const auto counts = catalog.rank_counts();
  for (std::size_t r = 0; r < counts.size(); ++r) {
    if (counts[r] != counts[counts.size() - 1 - r]) {
      return "rank histogram is not palindromic at rank " + std::to_string(r);
    }
  }
  return std::nullopt;
}

}  // namespace polycat
