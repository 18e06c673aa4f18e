#include "polycat/rank_table.hpp"

#include <sstream>
#include <stdexcept>

namespace polycat {

RankTable::RankTable(int n, int k, std::vector<std::uint8_t> rho)
    : n_(n), k_(k), rho_(std::move(rho)) {
  if (n < 0 || n > kMaxGroundSize) {
    throw std::invalid_argument("ground set size " + std::to_string(n) +
                                " outside [0, " + std::to_string(kMaxGroundSize) + "]");
  }
  if (k < 1) throw std::invalid_argument("element-rank cap k must be positive");
  if (rho_.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("rank table has " + std::to_string(rho_.size()) +
                                " entries, expected 2^" + std::to_string(n));
  }
}

std::strong_ordering operator<=>(const RankTable& a, const RankTable& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.k_ <=> b.k_; c != 0) return c;
  return a.rho_ <=> b.rho_;
}

RankTable empty_polymatroid(int k) { return RankTable(0, k, {0}); }

const char* axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::kNormalized: return "normalized";
    case Axiom::kMonotone: return "monotone";
    case Axiom::kSubmodular: return "submodular";
    case Axiom::kElementCap: return "element cap";
  }
  return "?";
}

std::string format_subset(Subset s, int n) {
  std::string out = "{";
  bool first = true;
  for (int i = 1; i <= n; ++i) {
    if (s & element_bit(i)) {
      if (!first) out += ',';
      out += std::to_string(i);
      first = false;
    }
  }
  return out + "}";
}

std::string Violation::describe(int n) const {
  std::ostringstream os;
  os << axiom_name(axiom) << " violated";
  switch (axiom) {
    case Axiom::kNormalized:
      os << ": rho({}) != 0";
      break;
    case Axiom::kMonotone:
      os << " at A=" << format_subset(base, n) << ", f=" << f
         << ": rho(A) > rho(A+f)";
      break;
    case Axiom::kSubmodular:
      os << " at A=" << format_subset(base, n) << ", f=" << f << ", g=" << g
         << ": rho(A) + rho(A+f+g) > rho(A+f) + rho(A+g)";
      break;
    case Axiom::kElementCap:
      os << " at element " << f;
      break;
  }
  return os.str();
}

std::optional<Violation> validate(int n, int k, std::span<const std::uint8_t> rho) {
  if (n < 0 || n > kMaxGroundSize || rho.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("rank table length " + std::to_string(rho.size()) +
                                " does not match n=" + std::to_string(n));
  }
  if (rho[0] != 0) return Violation{Axiom::kNormalized};

  const Subset universe = Subset{1} << n;
  for (Subset a = 0; a < universe; ++a) {
    for (int f = 1; f <= n; ++f) {
      const Subset fb = element_bit(f);
      if ((a & fb) == 0 && rho[a] > rho[a | fb]) {
        return Violation{Axiom::kMonotone, a, f};
      }
    }
  }
  for (Subset a = 0; a < universe; ++a) {
    for (int f = 1; f <= n; ++f) {
      const Subset fb = element_bit(f);
      if (a & fb) continue;
      for (int g = f + 1; g <= n; ++g) {
        const Subset gb = element_bit(g);
        if (a & gb) continue;
        if (rho[a] + rho[a | fb | gb] > rho[a | fb] + rho[a | gb]) {
          return Violation{Axiom::kSubmodular, a, f, g};
        }
      }
    }
  }
  for (int x = 1; x <= n; ++x) {
    if (rho[element_bit(x)] > k) return Violation{Axiom::kElementCap, 0, x};
  }
  return std::nullopt;
}

std::optional<Violation> validate(const RankTable& table) {
  return validate(table.n(), table.k(), table.values());
}

}  // namespace polycat
