#include "polycat/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace polycat {

Subset closure(const RankTable& table, Subset x) {
  Subset result = x;
  const int r = table[x];
  for (int i = 1; i <= table.n(); ++i) {
    const Subset b = element_bit(i);
    if ((x & b) == 0 && table[x | b] == r) result |= b;
  }
  return result;
}

FlatLattice flats(const RankTable& table) {
  const Subset universe = Subset{1} << table.n();
  FlatLattice lattice;
  lattice.closure_of.resize(universe);
  lattice.index_of.assign(universe, -1);
  for (Subset x = 0; x < universe; ++x) {
    lattice.closure_of[x] = closure(table, x);
    if (lattice.closure_of[x] == x) {
      lattice.index_of[x] = static_cast<int>(lattice.flats.size());
      lattice.flats.push_back(x);
      lattice.rank_of.push_back(table[x]);
    }
  }

  // The covers of F are the minimal members of {cl(F + x) : x not in F}:
  // any flat G strictly above F contains cl(F + x) for each x in G - F.
  lattice.covers.resize(lattice.flats.size());
  for (std::size_t i = 0; i < lattice.flats.size(); ++i) {
    const Subset f = lattice.flats[i];
    std::vector<Subset> candidates;
    for (int e = 1; e <= table.n(); ++e) {
      const Subset b = element_bit(e);
      if ((f & b) == 0) candidates.push_back(lattice.closure_of[f | b]);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (Subset g : candidates) {
      const bool minimal = std::none_of(candidates.begin(), candidates.end(), [g](Subset h) {
        return h != g && (h & g) == h;
      });
      if (minimal) lattice.covers[i].push_back(lattice.index_of[g]);
    }
    std::sort(lattice.covers[i].begin(), lattice.covers[i].end());
  }
  return lattice;
}

int modular_defect(const RankTable& table, Subset x, Subset y) {
  return table[x] + table[y] - table[x | y] - table[x & y];
}

RankTable k_dual(const RankTable& table) {
  const Subset s = table.ground();
  std::vector<std::uint8_t> dual(table.size());
  for (Subset x = 0; x <= s; ++x) {
    dual[x] = static_cast<std::uint8_t>(table.k() * set_size(x) + table[s & ~x] - table.rank());
  }
  return RankTable(table.n(), table.k(), std::move(dual));
}

namespace {

void check_element(const RankTable& table, int element) {
  if (element < 1 || element > table.n()) {
    throw std::out_of_range("element " + std::to_string(element) + " not in ground set of size " +
                            std::to_string(table.n()));
  }
}

// Inserts a zero bit at position `bit`, mapping a subset of the n-1
// survivors back to the parent's numbering.
constexpr Subset widen(Subset x, int bit) {
  const Subset low = x & ((Subset{1} << bit) - 1);
  return low | ((x & ~low) << 1);
}

}  // namespace

RankTable delete_element(const RankTable& table, int element) {
  check_element(table, element);
  const int bit = element - 1;
  std::vector<std::uint8_t> rho(std::size_t{1} << (table.n() - 1));
  for (Subset x = 0; x < rho.size(); ++x) rho[x] = static_cast<std::uint8_t>(table[widen(x, bit)]);
  return RankTable(table.n() - 1, table.k(), std::move(rho));
}

RankTable contract_element(const RankTable& table, int element) {
  check_element(table, element);
  const int bit = element - 1;
  const Subset e = element_bit(element);
  const int re = table[e];
  std::vector<std::uint8_t> rho(std::size_t{1} << (table.n() - 1));
  for (Subset x = 0; x < rho.size(); ++x) {
    rho[x] = static_cast<std::uint8_t>(table[widen(x, bit) | e] - re);
  }
  return RankTable(table.n() - 1, table.k(), std::move(rho));
}

int min_element_rank(const RankTable& table) {
  if (table.n() == 0) throw std::domain_error("min_element_rank undefined on the empty ground set");
  int best = table[1];
  for (int i = 2; i <= table.n(); ++i) best = std::min(best, table[element_bit(i)]);
  return best;
}

}  // namespace polycat
