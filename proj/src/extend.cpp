#include "polycat/extend.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace polycat {

std::string ExtensiblePartition::to_string() const {
  std::string out;
  out.reserve(mu.size());
  for (std::uint8_t m : mu) out += static_cast<char>('0' + m);
  return out;
}

std::string PartitionFailure::describe(int n) const {
  std::ostringstream os;
  os << "condition " << condition << " fails at F=" << format_subset(first, n)
     << ", G=" << format_subset(second, n);
  return os.str();
}

int mu_of_set(const FlatLattice& lattice, const ExtensiblePartition& partition, Subset x) {
  return partition.mu[lattice.index(lattice.closure_of[x])];
}

int mu_of_set(const RankTable& parent, const ExtensiblePartition& partition, Subset x) {
  const FlatLattice lattice = flats(parent);
  return mu_of_set(lattice, partition, x);
}

namespace {

void check_shape(const RankTable& parent, const FlatLattice& lattice,
                 const ExtensiblePartition& partition) {
  if (static_cast<int>(partition.mu.size()) != lattice.size()) {
    throw std::invalid_argument("partition assigns " + std::to_string(partition.mu.size()) +
                                " flats, parent has " + std::to_string(lattice.size()));
  }
  for (std::uint8_t m : partition.mu) {
    if (m > parent.k()) {
      throw std::invalid_argument("partition class " + std::to_string(m) + " exceeds k=" +
                                  std::to_string(parent.k()));
    }
  }
}

constexpr bool contains(Subset outer, Subset inner) { return (outer & inner) == inner; }

// The seven conditions specialised to k = 2, checked in numeric order.
std::optional<PartitionFailure> check_seven(const RankTable& parent, const FlatLattice& lattice,
                                            const ExtensiblePartition& partition) {
  const int count = lattice.size();
  auto mu = [&](Subset flat) { return int{partition.mu[lattice.index(flat)]}; };
  auto failure = [](const char* c, Subset f, Subset g) {
    return PartitionFailure{c, f, g};
  };

  for (int i = 0; i < count; ++i) {
    const Subset f = lattice.flats[i];
    if (partition.mu[i] != 2) continue;
    for (int j = 0; j < count; ++j) {
      const Subset g = lattice.flats[j];
      if (contains(g, f) && parent[g] - parent[f] == 1 && partition.mu[j] == 0) {
        return failure("(1)", f, g);
      }
    }
  }

  auto for_pairs = [&](int class_f, int class_g, int defect,
                       const auto& ok) -> std::optional<PartitionFailure> {
    for (int i = 0; i < count; ++i) {
      if (partition.mu[i] != class_f) continue;
      for (int j = 0; j < count; ++j) {
        if (partition.mu[j] != class_g) continue;
        const Subset f = lattice.flats[i];
        const Subset g = lattice.flats[j];
        if (modular_defect(parent, f, g) != defect) continue;
        if (!ok(mu(f & g), mu(lattice.closure_of[f | g]))) return failure("", f, g);
      }
    }
    return std::nullopt;
  };
  auto labelled = [](std::optional<PartitionFailure> r, const char* c) {
    if (r) r->condition = c;
    return r;
  };

  if (auto r = for_pairs(0, 0, 0, [](int meet, int) { return meet == 0; })) {
    return labelled(r, "(2)");
  }
  if (auto r = for_pairs(0, 0, 1, [](int meet, int) { return meet <= 1; })) {
    return labelled(r, "(3)");
  }
  if (auto r = for_pairs(1, 1, 0,
                         [](int meet, int join) { return meet == 1 || (meet == 2 && join == 0); })) {
    return labelled(r, "(4)");
  }
  if (auto r = for_pairs(0, 1, 0, [](int meet, int) { return meet != 2; })) {
    return labelled(r, "(5)");
  }

  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      const Subset f = lattice.flats[i];
      const Subset g = lattice.flats[j];
      if (!contains(f, g) || f == g) continue;
      // g is strictly inside f.
      if (partition.mu[i] == 2 && partition.mu[j] != 2) return failure("(6)", f, g);
      if (partition.mu[j] == 0 && partition.mu[i] != 0) return failure("(7)", g, f);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<PartitionFailure> check_partition_general(const RankTable& parent,
                                                        const FlatLattice& lattice,
                                                        const ExtensiblePartition& partition) {
  check_shape(parent, lattice, partition);
  const int count = lattice.size();
  auto mu = [&](Subset flat) { return int{partition.mu[lattice.index(flat)]}; };

  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      const Subset f = lattice.flats[i];
      const Subset g = lattice.flats[j];
      const int lhs = mu(f & g) + mu(lattice.closure_of[f | g]) - modular_defect(parent, f, g);
      if (lhs > mu(f) + mu(g)) return PartitionFailure{"(I)", f, g};
    }
  }
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      const Subset f = lattice.flats[i];
      const Subset g = lattice.flats[j];
      if (!contains(g, f)) continue;
      if (parent[f] + mu(f) > parent[g] + mu(g)) return PartitionFailure{"(II)", f, g};
    }
  }
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      const Subset f = lattice.flats[i];
      const Subset g = lattice.flats[j];
      if (contains(g, f) && mu(g) > mu(f)) return PartitionFailure{"(III)", f, g};
    }
  }
  return std::nullopt;
}

std::optional<PartitionFailure> check_partition(const RankTable& parent,
                                                const FlatLattice& lattice,
                                                const ExtensiblePartition& partition) {
  if (parent.k() != 2) return check_partition_general(parent, lattice, partition);
  check_shape(parent, lattice, partition);
  return check_seven(parent, lattice, partition);
}

std::optional<PartitionFailure> check_partition(const RankTable& parent,
                                                const ExtensiblePartition& partition) {
  return check_partition(parent, flats(parent), partition);
}

PartitionSearch::PartitionSearch(const RankTable& parent, const FlatLattice& lattice)
    : k_(parent.k()) {
  const int count = lattice.size();
  std::vector<int> by_depth(count);
  for (int i = 0; i < count; ++i) by_depth[i] = i;
  // Supersets before subsets: larger flats first.
  std::sort(by_depth.begin(), by_depth.end(), [&](int a, int b) {
    const int sa = set_size(lattice.flats[a]);
    const int sb = set_size(lattice.flats[b]);
    return sa != sb ? sa > sb : lattice.flats[a] > lattice.flats[b];
  });
  std::vector<int> slot_of(count);
  order_.resize(count);
  for (int p = 0; p < count; ++p) {
    const int flat = by_depth[p];
    slot_of[flat] = p;
    Slot& slot = order_[p];
    slot.flat = flat;
    slot.upper_covers = lattice.covers[flat];
    for (int g : slot.upper_covers) slot.rank_gap.push_back(lattice.rank_of[g] - lattice.rank_of[flat]);
  }
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const Subset f = lattice.flats[i];
      const Subset g = lattice.flats[j];
      const Subset meet = f & g;
      if (meet == f || meet == g) continue;
      const int join = lattice.index(lattice.closure_of[f | g]);
      const int defect = modular_defect(parent, f, g);
      order_[slot_of[lattice.index(meet)]].pairs.push_back({i, j, join, defect});
    }
  }
}

void PartitionSearch::descend(std::size_t depth, ExtensiblePartition& current,
                              const std::function<void(const ExtensiblePartition&)>& visit) const {
  if (depth == order_.size()) {
    visit(current);
    return;
  }
  const Slot& slot = order_[depth];
  int lo = 0;
  int hi = k_;
  for (std::size_t c = 0; c < slot.upper_covers.size(); ++c) {
    const int above = current.mu[slot.upper_covers[c]];
    lo = std::max(lo, above);
    hi = std::min(hi, slot.rank_gap[c] + above);
  }
  for (const PairBound& p : slot.pairs) {
    hi = std::min(hi, current.mu[p.left] + current.mu[p.right] + p.defect - current.mu[p.join]);
  }
  for (int v = lo; v <= hi; ++v) {
    current.mu[slot.flat] = static_cast<std::uint8_t>(v);
    descend(depth + 1, current, visit);
  }
}

void PartitionSearch::for_each(const std::function<void(const ExtensiblePartition&)>& visit) const {
  ExtensiblePartition current{std::vector<std::uint8_t>(order_.size(), 0)};
  descend(0, current, visit);
}

std::vector<ExtensiblePartition> enumerate_extensible_partitions(const RankTable& parent,
                                                                 const EnumerationOptions& options) {
  const FlatLattice lattice = flats(parent);
  std::vector<ExtensiblePartition> out;
  if (options.reference) {
    ExtensiblePartition candidate{std::vector<std::uint8_t>(lattice.size(), 0)};
    while (true) {
      if (!check_partition(parent, lattice, candidate)) out.push_back(candidate);
      std::size_t i = 0;
      while (i < candidate.mu.size() && candidate.mu[i] == parent.k()) candidate.mu[i++] = 0;
      if (i == candidate.mu.size()) break;
      ++candidate.mu[i];
    }
  } else {
    PartitionSearch(parent, lattice).for_each([&](const ExtensiblePartition& p) { out.push_back(p); });
  }
  std::sort(out.begin(), out.end());
  return out;
}

RankTable extend_unchecked(const RankTable& parent, const FlatLattice& lattice,
                           const ExtensiblePartition& partition) {
  const Subset half = Subset{1} << parent.n();
  std::vector<std::uint8_t> rho(std::size_t{2} * half);
  for (Subset x = 0; x < half; ++x) {
    rho[x] = static_cast<std::uint8_t>(parent[x]);
    rho[x | half] = static_cast<std::uint8_t>(parent[x] + mu_of_set(lattice, partition, x));
  }
  return RankTable(parent.n() + 1, parent.k(), std::move(rho));
}

RankTable extend(const RankTable& parent, const ExtensiblePartition& partition) {
  if (parent.n() >= kMaxGroundSize) throw std::invalid_argument("extension exceeds ground-set cap");
  const FlatLattice lattice = flats(parent);
  if (auto failure = check_partition(parent, lattice, partition)) {
    throw std::invalid_argument("not an extensible partition: " + failure->describe(parent.n()));
  }
  return extend_unchecked(parent, lattice, partition);
}

std::vector<Subset> extension_flats(const RankTable& parent, const ExtensiblePartition& partition) {
  const FlatLattice lattice = flats(parent);
  if (auto failure = check_partition(parent, lattice, partition)) {
    throw std::invalid_argument("not an extensible partition: " + failure->describe(parent.n()));
  }
  const Subset e = Subset{1} << parent.n();
  std::vector<Subset> out;
  for (int i = 0; i < lattice.size(); ++i) {
    const Subset f = lattice.flats[i];
    const int level = lattice.rank_of[i] + partition.mu[i];
    if (partition.mu[i] == 0) {
      out.push_back(f | e);
      continue;
    }
    out.push_back(f);
    // F + e is closed unless some cover G reaches the same extended rank.
    const bool absorbed = std::any_of(lattice.covers[i].begin(), lattice.covers[i].end(), [&](int g) {
      return lattice.rank_of[g] + partition.mu[g] == level;
    });
    if (!absorbed) out.push_back(f | e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace polycat
