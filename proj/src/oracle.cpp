#include "polycat/oracle.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "polycat/canon.hpp"
#include "polycat/catalog_io.hpp"
#include "polycat/extend.hpp"

namespace polycat {

namespace {

struct Term {
  Subset var;
  int coef;
};

// sum(coef * rho(var)) <= bound
struct Inequality {
  std::array<Term, 4> terms;
  int size;
  int bound;
};

class RankSearch {
 public:
  // fixed[x] >= 0 pins rho(x); -1 leaves it free. rho(empty) is always 0.
  RankSearch(int n, int k, std::vector<int> fixed, const OracleOptions& options)
      : n_(n), k_(k), budget_(options.node_budget), value_(std::move(fixed)) {
    const Subset universe = Subset{1} << n;
    value_[0] = 0;
    for (Subset x = 1; x < universe; ++x) {
      if (value_[x] < 0) order_.push_back(x);
    }
    if (options.reverse_order) std::reverse(order_.begin(), order_.end());
    std::vector<int> position(universe, -1);
    for (std::size_t p = 0; p < order_.size(); ++p) position[order_[p]] = static_cast<int>(p);
    attached_.resize(order_.size());

    auto add = [&](Inequality q) {
      int last = -1;
      for (int t = 0; t < q.size; ++t) last = std::max(last, position[q.terms[t].var]);
      if (last >= 0) {
        attached_[last].push_back(q);
        return;
      }
      int lhs = 0;
      for (int t = 0; t < q.size; ++t) lhs += q.terms[t].coef * value_[q.terms[t].var];
      if (lhs > q.bound) infeasible_ = true;
    };
    for (Subset a = 0; a < universe; ++a) {
      for (int f = 0; f < n; ++f) {
        const Subset fb = Subset{1} << f;
        if (a & fb) continue;
        add({{{{a, 1}, {a | fb, -1}}}, 2, 0});
        add({{{{a | fb, 1}, {a, -1}}}, 2, k});
        for (int g = f + 1; g < n; ++g) {
          const Subset gb = Subset{1} << g;
          if (a & gb) continue;
          add({{{{a, 1}, {a | fb | gb, 1}, {a | fb, -1}, {a | gb, -1}}}, 4, 0});
        }
      }
    }
    for (Subset x = 1; x < universe; ++x) {
      if (value_[x] > k * set_size(x)) infeasible_ = true;
    }
  }

  std::size_t free_count() const { return order_.size(); }

  template <typename Leaf>
  void run(Leaf&& leaf) {
    if (!infeasible_) descend(0, leaf);
  }

  // Consistent assignments of the first `depth` free variables.
  std::vector<std::vector<int>> prefixes(std::size_t depth) {
    std::vector<std::vector<int>> out;
    if (infeasible_) return out;
    collect(0, depth, out);
    return out;
  }

  template <typename Leaf>
  void run_from(const std::vector<int>& prefix, Leaf&& leaf) {
    for (std::size_t p = 0; p < prefix.size(); ++p) value_[order_[p]] = prefix[p];
    descend(prefix.size(), leaf);
  }

  const std::vector<int>& values() const { return value_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::pair<int, int> domain(std::size_t p) const {
    const Subset var = order_[p];
    int lo = 0;
    int hi = k_ * set_size(var);
    for (const Inequality& q : attached_[p]) {
      int rest = 0;
      int coef = 0;
      for (int t = 0; t < q.size; ++t) {
        if (q.terms[t].var == var) {
          coef = q.terms[t].coef;
        } else {
          rest += q.terms[t].coef * value_[q.terms[t].var];
        }
      }
      if (coef > 0) {
        hi = std::min(hi, q.bound - rest);
      } else {
        lo = std::max(lo, rest - q.bound);
      }
    }
    return {lo, hi};
  }

  void tick() {
    ++nodes_;
    if (budget_ != 0 && nodes_ > budget_) {
      throw BudgetExceeded("oracle node budget of " + std::to_string(budget_) + " exceeded");
    }
  }

  template <typename Leaf>
  void descend(std::size_t p, Leaf& leaf) {
    tick();
    if (p == order_.size()) {
      leaf(value_);
      return;
    }
    const auto [lo, hi] = domain(p);
    for (int v = lo; v <= hi; ++v) {
      value_[order_[p]] = v;
      descend(p + 1, leaf);
    }
    value_[order_[p]] = -1;
  }

  void collect(std::size_t p, std::size_t depth, std::vector<std::vector<int>>& out) {
    if (p == depth || p == order_.size()) {
      std::vector<int> prefix(p);
      for (std::size_t i = 0; i < p; ++i) prefix[i] = value_[order_[i]];
      out.push_back(std::move(prefix));
      return;
    }
    const auto [lo, hi] = domain(p);
    for (int v = lo; v <= hi; ++v) {
      value_[order_[p]] = v;
      collect(p + 1, depth, out);
    }
    value_[order_[p]] = -1;
  }

  int n_;
  int k_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool infeasible_ = false;
  std::vector<int> value_;
  std::vector<Subset> order_;
  std::vector<std::vector<Inequality>> attached_;
};

void check_size(int n, int k) {
  if (n < 0 || n > kMaxGroundSize) throw std::invalid_argument("oracle ground set size out of range");
  if (k < 1) throw std::invalid_argument("k must be positive");
}

RankTable to_table(int n, int k, const std::vector<int>& values) {
  return RankTable(n, k, std::vector<std::uint8_t>(values.begin(), values.end()));
}

}  // namespace

LabeledCounts brute_labeled_count(int n, int k, const OracleOptions& options) {
  check_size(n, k);
  const Subset full = full_set(n);
  LabeledCounts counts;
  counts.by_rank.assign(static_cast<std::size_t>(k * n + 1), 0);
  const std::vector<int> fixed(std::size_t{1} << n, -1);

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    RankSearch search(n, k, fixed, options);
    search.run([&](const std::vector<int>& v) { ++counts.by_rank[static_cast<std::size_t>(v[full])]; });
    counts.nodes = search.nodes();
  } else {
    // Split on root-level branches, then sum.
    std::vector<std::vector<int>> roots;
    {
      RankSearch probe(n, k, fixed, OracleOptions{});
      for (std::size_t depth = 1; depth <= probe.free_count(); ++depth) {
        roots = probe.prefixes(depth);
        if (roots.size() >= 8 * jobs || depth == probe.free_count()) break;
      }
    }
    std::vector<std::vector<std::uint64_t>> partial(roots.size(), counts.by_rank);
    std::vector<std::uint64_t> nodes(roots.size(), 0);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> over_budget{false};
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
          for (std::size_t r; (r = next.fetch_add(1)) < roots.size();) {
            OracleOptions per_root = options;
            per_root.node_budget = 0;
            RankSearch search(n, k, fixed, per_root);
            search.run_from(roots[r], [&](const std::vector<int>& v) {
              ++partial[r][static_cast<std::size_t>(v[full])];
            });
            nodes[r] = search.nodes();
          }
        });
      }
    }
    for (std::size_t r = 0; r < roots.size(); ++r) {
      for (std::size_t i = 0; i < counts.by_rank.size(); ++i) counts.by_rank[i] += partial[r][i];
      counts.nodes += nodes[r];
    }
    if (options.node_budget != 0 && counts.nodes > options.node_budget) over_budget = true;
    if (over_budget) {
      throw BudgetExceeded("oracle node budget of " + std::to_string(options.node_budget) + " exceeded");
    }
  }
  for (std::uint64_t c : counts.by_rank) counts.total += c;
  return counts;
}

void for_each_labeled(int n, int k, const std::function<void(const RankTable&)>& visit,
                      const OracleOptions& options) {
  check_size(n, k);
  RankSearch search(n, k, std::vector<int>(std::size_t{1} << n, -1), options);
  search.run([&](const std::vector<int>& v) { visit(to_table(n, k, v)); });
}

std::vector<RankTable> brute_extensions(const RankTable& parent, const OracleOptions& options) {
  const int n = parent.n() + 1;
  check_size(n, parent.k());
  std::vector<int> fixed(std::size_t{1} << n, -1);
  for (Subset x = 0; x < parent.size(); ++x) fixed[x] = parent[x];
  RankSearch search(n, parent.k(), std::move(fixed), options);
  std::vector<RankTable> out;
  search.run([&](const std::vector<int>& v) { out.push_back(to_table(n, parent.k(), v)); });
  std::sort(out.begin(), out.end());
  return out;
}

bool CrossCheckReport::ok() const {
  return std::all_of(lines.begin(), lines.end(), [](const CrossCheckLine& l) { return l.ok; });
}

const CrossCheckLine* CrossCheckReport::first_failure() const {
  for (const CrossCheckLine& l : lines) {
    if (!l.ok) return &l;
  }
  return nullptr;
}

std::string CrossCheckReport::text() const {
  std::ostringstream os;
  for (const CrossCheckLine& l : lines) {
    os << "n=" << l.n << "  " << l.check << "  " << (l.ok ? "ok" : "MISMATCH") << "  " << l.detail << '\n';
  }
  os << (ok() ? "all checks passed" : "cross-check FAILED") << '\n';
  return os.str();
}

std::string CrossCheckReport::csv() const {
  std::ostringstream os;
  os << "n,check,ok\n";
  for (const CrossCheckLine& l : lines) os << l.n << ',' << l.check << ',' << (l.ok ? 1 : 0) << '\n';
  return os.str();
}

namespace {

std::string show(const RankTable& t) { return "[" + format_ranks(t) + "]"; }

// Smallest element of the symmetric difference of two sorted sets.
template <typename T>
std::string first_difference(const std::vector<T>& expected, const std::vector<T>& actual,
                             const char* expected_name, const char* actual_name) {
  std::vector<T> only_expected, only_actual;
  std::set_difference(expected.begin(), expected.end(), actual.begin(), actual.end(),
                      std::back_inserter(only_expected));
  std::set_difference(actual.begin(), actual.end(), expected.begin(), expected.end(),
                      std::back_inserter(only_actual));
  if (only_expected.empty() && only_actual.empty()) return "";
  if (only_actual.empty() || (!only_expected.empty() && only_expected.front() < only_actual.front())) {
    return show(only_expected.front()) + " only in " + expected_name;
  }
  return show(only_actual.front()) + " only in " + actual_name;
}

}  // namespace

CrossCheckReport cross_check(const std::vector<Catalog>& catalogs, int n_max, const OracleOptions& options) {
  CrossCheckReport report;
  for (int n = 0; n <= n_max; ++n) {
    if (static_cast<std::size_t>(n) >= catalogs.size() || catalogs[n].n() != n) {
      report.lines.push_back({n, "catalog", false, "catalog for n=" + std::to_string(n) + " missing"});
      continue;
    }
    const Catalog& catalog = catalogs[n];
    const int k = catalog.k();

    // Labeled totals against the orbit-stabilizer sums.
    {
      const LabeledCounts brute = brute_labeled_count(n, k, options);
      std::vector<std::uint64_t> orbit(brute.by_rank.size(), 0);
      std::string detail;
      for (const CatalogEntry& e : catalog.entries()) {
        const auto r = static_cast<std::size_t>(e.table.rank());
        if (r >= orbit.size() || factorial(n) % std::max<std::uint64_t>(e.aut_order, 1) != 0 || e.aut_order == 0) {
          detail = "entry " + show(e.table) + " has bad rank or aut_order";
          break;
        }
        orbit[r] += labeled_count(n, e.aut_order);
      }
      std::uint64_t orbit_total = 0;
      for (std::uint64_t c : orbit) orbit_total += c;
      bool ok = detail.empty() && orbit == brute.by_rank;
      if (detail.empty()) {
        detail = "brute " + std::to_string(brute.total) + ", orbit-stabilizer " + std::to_string(orbit_total);
        if (!ok) {
          for (std::size_t r = 0; r < orbit.size(); ++r) {
            if (orbit[r] != brute.by_rank[r]) {
              detail += " (first differing rank " + std::to_string(r) + ")";
              break;
            }
          }
        }
      }
      report.lines.push_back({n, "labeled", ok, detail});
    }

    // Isomorphism classes of the brute-force tables against the catalog.
    {
      std::set<RankTable> classes;
      for_each_labeled(n, k, [&](const RankTable& t) { classes.insert(canonical_form(t).table); }, options);
      std::vector<RankTable> brute(classes.begin(), classes.end());
      std::vector<RankTable> listed;
      for (const CatalogEntry& e : catalog.entries()) listed.push_back(e.table);
      std::sort(listed.begin(), listed.end());
      const bool duplicates = std::adjacent_find(listed.begin(), listed.end()) != listed.end();
      std::string detail = first_difference(brute, listed, "brute force", "catalog");
      if (duplicates) detail = "catalog lists an entry twice";
      const bool ok = detail.empty();
      if (ok) detail = std::to_string(brute.size()) + " classes";
      report.lines.push_back({n, "classes", ok, detail});
    }

    // Brute extensions of each parent against its extensible partitions.
    if (n >= 1) {
      const Catalog& parents = catalogs[n - 1];
      std::string detail;
      std::uint64_t total = 0;
      for (const CatalogEntry& p : parents.entries()) {
        std::vector<RankTable> generated;
        for (const ExtensiblePartition& part : enumerate_extensible_partitions(p.table)) {
          generated.push_back(extend(p.table, part));
        }
        std::sort(generated.begin(), generated.end());
        const std::vector<RankTable> brute = brute_extensions(p.table, options);
        total += brute.size();
        std::string diff = first_difference(brute, generated, "brute force", "partitions");
        if (diff.empty() && std::adjacent_find(generated.begin(), generated.end()) != generated.end()) {
          diff = "two partitions give the same extension";
        }
        if (!diff.empty()) {
          detail = "parent " + show(p.table) + ": " + diff;
          break;
        }
      }
      const bool ok = detail.empty();
      if (ok) detail = std::to_string(total) + " labeled extensions of " + std::to_string(parents.size()) + " parents";
      report.lines.push_back({n, "extensions", ok, detail});
    }
  }
  return report;
}

}  // namespace polycat
