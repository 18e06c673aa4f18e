#pragma once

// Naive reference routines for tests. None of these share code with the
// library beyond the RankTable and FlatGraph types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "polycat/canon.hpp"
#include "polycat/rank_table.hpp"

namespace polycat::test {

inline RankTable table(int n, int k, std::vector<std::uint8_t> rho) { return RankTable(n, k, std::move(rho)); }

inline RankTable two_free_lines() { return table(2, 2, {0, 2, 2, 3}); }
inline RankTable single_line() { return table(1, 2, {0, 2}); }
inline RankTable three_free_lines() { return table(3, 2, {0, 2, 2, 3, 2, 3, 3, 3}); }

// Global axioms over all pairs of subsets.
inline bool naive_valid(int n, int k, const std::vector<std::uint8_t>& rho) {
  const Subset top = full_set(n);
  if (rho[0] != 0) return false;
  for (Subset x = 0; x <= top; ++x) {
    if (set_size(x) == 1 && rho[x] > k) return false;
    for (Subset y = 0; y <= top; ++y) {
      if ((x & y) == x && rho[x] > rho[y]) return false;
      if (rho[x] + rho[y] < rho[x | y] + rho[x & y]) return false;
    }
  }
  return true;
}

// Every vector with rho(0) = 0 and 0 <= rho(X) <= k|X|, in odometer order.
inline void for_each_bounded_vector(int n, int k, const std::function<void(const std::vector<std::uint8_t>&)>& visit) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::uint8_t> rho(size, 0);
  while (true) {
    visit(rho);
    std::size_t i = 1;
    for (; i < size; ++i) {
      const int cap = k * set_size(static_cast<Subset>(i));
      if (rho[i] < cap) {
        ++rho[i];
        break;
      }
      rho[i] = 0;
    }
    if (i >= size) return;
  }
}

inline std::vector<RankTable> naive_all_tables(int n, int k) {
  std::vector<RankTable> out;
  for_each_bounded_vector(n, k, [&](const std::vector<std::uint8_t>& rho) {
    if (naive_valid(n, k, rho)) out.emplace_back(n, k, rho);
  });
  return out;
}

// All valid tables on n+1 elements restricting to parent, by odometer over
// the entries containing the new element.
inline std::set<RankTable> naive_extensions(const RankTable& parent) {
  const int n = parent.n();
  const int k = parent.k();
  const Subset e = element_bit(n + 1);
  const std::size_t half = std::size_t{1} << n;
  std::vector<std::uint8_t> rho(2 * half);
  for (Subset x = 0; x < half; ++x) rho[x] = static_cast<std::uint8_t>(parent[x]);
  std::vector<int> offset(half, 0);
  std::set<RankTable> out;
  while (true) {
    for (Subset x = 0; x < half; ++x) rho[x | e] = static_cast<std::uint8_t>(parent[x] + offset[x]);
    if (naive_valid(n + 1, k, rho)) out.emplace(n + 1, k, rho);
    std::size_t i = 0;
    for (; i < half; ++i) {
      if (offset[i] < k) {
        ++offset[i];
        break;
      }
      offset[i] = 0;
    }
    if (i >= half) return out;
  }
}

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline Subset apply_perm(Subset x, const std::vector<int>& perm) {
  Subset y = 0;
  for (int i = 0; i < static_cast<int>(perm.size()); ++i) {
    if (x >> i & 1) y |= Subset{1} << perm[i];
  }
  return y;
}

// rho'(perm(X)) = rho(X).
inline RankTable naive_relabel(const RankTable& t, const std::vector<int>& perm) {
  std::vector<std::uint8_t> rho(t.size());
  for (Subset x = 0; x < t.size(); ++x) rho[apply_perm(x, perm)] = static_cast<std::uint8_t>(t[x]);
  return RankTable(t.n(), t.k(), rho);
}

inline RankTable naive_canonical(const RankTable& t) {
  RankTable best = t;
  for (const auto& p : all_permutations(t.n())) best = std::min(best, naive_relabel(t, p));
  return best;
}

inline std::uint64_t naive_aut_order(const RankTable& t) {
  std::uint64_t count = 0;
  for (const auto& p : all_permutations(t.n())) count += naive_relabel(t, p) == t;
  return count;
}

inline bool naive_isomorphic(const RankTable& a, const RankTable& b) {
  if (a.n() != b.n() || a.k() != b.k()) return false;
  for (const auto& p : all_permutations(a.n())) {
    if (naive_relabel(a, p) == b) return true;
  }
  return false;
}

inline std::vector<Subset> naive_flats(const RankTable& t) {
  std::vector<Subset> out;
  for (Subset x = 0; x < t.size(); ++x) {
    bool closed = true;
    for (int i = 0; i < t.n() && closed; ++i) {
      const Subset b = Subset{1} << i;
      if (!(x & b) && t[x | b] == t[x]) closed = false;
    }
    if (closed) out.push_back(x);
  }
  return out;
}

// Flat vertices are determined by (color, neighborhood); a colored graph
// isomorphism is therefore a ground permutation carrying that multiset.
using GraphSignature = std::multiset<std::pair<int, Subset>>;

inline GraphSignature graph_signature(const FlatGraph& g, const std::vector<int>& perm) {
  GraphSignature out;
  for (int v = g.ground_count; v < g.vertex_count(); ++v) {
    Subset image = 0;
    for (int u : g.adjacency[v]) image |= Subset{1} << perm[u];
    out.emplace(g.color[v], image);
  }
  return out;
}

inline bool graphs_isomorphic(const FlatGraph& a, const FlatGraph& b) {
  if (a.ground_count != b.ground_count || a.vertex_count() != b.vertex_count()) return false;
  std::vector<int> identity(b.ground_count);
  std::iota(identity.begin(), identity.end(), 0);
  const GraphSignature target = graph_signature(b, identity);
  for (const auto& p : all_permutations(a.ground_count)) {
    if (graph_signature(a, p) == target) return true;
  }
  return false;
}

inline std::uint64_t graph_automorphisms(const FlatGraph& g) {
  std::vector<int> identity(g.ground_count);
  std::iota(identity.begin(), identity.end(), 0);
  const GraphSignature self = graph_signature(g, identity);
  std::uint64_t count = 0;
  for (const auto& p : all_permutations(g.ground_count)) count += graph_signature(g, p) == self;
  return count;
}

}  // namespace polycat::test
