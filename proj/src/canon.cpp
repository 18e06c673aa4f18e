#include "polycat/canon.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "polycat/lattice.hpp"

namespace polycat {

namespace {

class LexMinSearch {
 public:
  explicit LexMinSearch(const RankTable& table)
      : table_(table),
        n_(table.n()),
        best_(table.size(), 0),
        source_(table.size(), 0),
        placed_(table.n(), -1) {
    best_[0] = static_cast<std::uint8_t>(table[0]);
  }

  CanonicalForm run() {
    descend(0, 0);
    std::vector<int> perm(n_);
    for (int pos = 0; pos < n_; ++pos) perm[best_placed_[pos]] = pos;
    return CanonicalForm{RankTable(n_, table_.k(), best_), std::move(perm), automorphisms_};
  }

 private:
  // Invariant: the prefix placed so far equals the best prefix.
  void descend(int level, Subset used) {
    if (level == n_) {
      if (automorphisms_ == 0) best_placed_ = placed_;
      ++automorphisms_;
      return;
    }
    const Subset base = Subset{1} << level;
    for (int x = 0; x < n_; ++x) {
      const Subset xb = Subset{1} << x;
      if (used & xb) continue;
      bool lower = level >= filled_;
      bool prune = false;
      for (Subset m = 0; m < base; ++m) {
        const Subset src = source_[m] | xb;
        source_[base + m] = src;
        if (lower) continue;
        const int value = table_[src];
        if (value != best_[base + m]) {
          if (value > best_[base + m]) {
            prune = true;
            break;
          }
          lower = true;
        }
      }
      if (prune) continue;
      if (lower) {
        for (Subset m = 0; m < base; ++m) best_[base + m] = static_cast<std::uint8_t>(table_[source_[base + m]]);
        // Deeper blocks of best_ belong to a labeling we just beat.
        if (level < filled_) automorphisms_ = 0;
        filled_ = level + 1;
      }
      placed_[level] = x;
      descend(level + 1, used | xb);
    }
  }

  const RankTable& table_;
  int n_;
  std::vector<std::uint8_t> best_;
  std::vector<Subset> source_;  // canonical mask -> input mask, current prefix
  std::vector<int> placed_;     // position -> input element
  std::vector<int> best_placed_;
  int filled_ = 0;              // levels of best_ that are current
  std::uint64_t automorphisms_ = 0;
};

}  // namespace

CanonicalForm canonical_form(const RankTable& table) { return LexMinSearch(table).run(); }

RankTable relabel(const RankTable& table, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != table.n()) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::uint8_t> out(table.size());
  for (Subset x = 0; x < table.size(); ++x) {
    Subset image = 0;
    for (int i = 0; i < table.n(); ++i) {
      if (x & (Subset{1} << i)) image |= Subset{1} << perm[i];
    }
    out[image] = static_cast<std::uint8_t>(table[x]);
  }
  return RankTable(table.n(), table.k(), std::move(out));
}

bool isomorphic(const RankTable& a, const RankTable& b) {
  if (a.n() != b.n()) return false;
  return std::ranges::equal(canonical_form(a).table.values(), canonical_form(b).table.values());
}

int FlatGraph::rank_of(Subset x) const {
  int best = -1;
  for (int v = ground_count; v < vertex_count(); ++v) {
    const std::size_t f = static_cast<std::size_t>(v - ground_count);
    if (f >= flat_sets.size()) continue;
    if ((flat_sets[f] & x) == x && (best < 0 || color[v] < best)) best = color[v];
  }
  return best;
}

FlatGraph flat_graph(const RankTable& table) {
  const FlatLattice lattice = flats(table);
  FlatGraph graph;
  graph.ground_count = table.n();
  graph.color.assign(table.n(), -1);
  graph.adjacency.resize(table.n());
  for (int i = 0; i < lattice.size(); ++i) {
    const int v = graph.vertex_count();
    graph.color.push_back(lattice.rank_of[i]);
    graph.flat_sets.push_back(lattice.flats[i]);
    graph.adjacency.emplace_back();
    for (int e = 0; e < table.n(); ++e) {
      if (lattice.flats[i] & (Subset{1} << e)) {
        graph.adjacency[v].push_back(e);
        graph.adjacency[e].push_back(v);
      }
    }
  }
  for (int r = 0; r < table.rank(); ++r) {
    if (std::find(lattice.rank_of.begin(), lattice.rank_of.end(), r) != lattice.rank_of.end()) continue;
    graph.color.push_back(r);
    graph.adjacency.emplace_back();
    ++graph.placeholder_count;
  }
  return graph;
}

std::vector<std::uint8_t> graph_invariant(const FlatGraph& graph) {
  const int count = graph.vertex_count();
  std::vector<int> cls(count);
  {
    std::vector<int> colors(graph.color);
    std::sort(colors.begin(), colors.end());
    colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
    for (int v = 0; v < count; ++v) {
      cls[v] = static_cast<int>(std::lower_bound(colors.begin(), colors.end(), graph.color[v]) - colors.begin());
    }
  }
  int classes = count == 0 ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
  while (true) {
    std::vector<std::vector<int>> signature(count);
    for (int v = 0; v < count; ++v) {
      signature[v].push_back(cls[v]);
      std::vector<int> around;
      for (int u : graph.adjacency[v]) around.push_back(cls[u]);
      std::sort(around.begin(), around.end());
      signature[v].insert(signature[v].end(), around.begin(), around.end());
    }
    std::vector<std::vector<int>> distinct(signature);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int v = 0; v < count; ++v) {
      cls[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), signature[v]) - distinct.begin());
    }
    const int refined = static_cast<int>(distinct.size());
    if (refined == classes) break;
    classes = refined;
  }

  std::map<int, std::pair<int, int>> by_class;  // class -> (color, size)
  for (int v = 0; v < count; ++v) {
    auto& [color, size] = by_class[cls[v]];
    color = graph.color[v];
    ++size;
  }
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [c, entry] : by_class) pairs.push_back(entry);
  std::sort(pairs.begin(), pairs.end());

  std::vector<std::uint8_t> out;
  out.reserve(pairs.size() * 4);
  for (const auto& [color, size] : pairs) {
    const int shifted = color + 1;
    out.push_back(static_cast<std::uint8_t>(shifted >> 8));
    out.push_back(static_cast<std::uint8_t>(shifted & 0xff));
    out.push_back(static_cast<std::uint8_t>(size >> 8));
    out.push_back(static_cast<std::uint8_t>(size & 0xff));
  }
  return out;
}

std::uint64_t factorial(int n) {
  std::uint64_t out = 1;
  for (int i = 2; i <= n; ++i) out *= static_cast<std::uint64_t>(i);
  return out;
}

std::uint64_t labeled_count(int n, std::uint64_t aut_order) {
  const std::uint64_t total = factorial(n);
  if (aut_order == 0 || total % aut_order != 0) {
    throw std::invalid_argument("automorphism group order " + std::to_string(aut_order) +
                                " does not divide " + std::to_string(n) + "!");
  }
  return total / aut_order;
}

}  // namespace polycat
