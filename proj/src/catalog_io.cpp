#include "polycat/catalog_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <map>
#include <regex>
#include <sstream>

#include "polycat/canon.hpp"

namespace polycat {

namespace {

int parse_int(std::string_view token, std::string_view what) {
  int value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("bad " + std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

std::uint64_t parse_u64(std::string_view token, std::string_view what) {
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("bad " + std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

// Parses "<key>=<int>".
int parse_field(const std::string& token, std::string_view key) {
  if (token.size() <= key.size() + 1 || token.compare(0, key.size(), key) != 0 ||
      token[key.size()] != '=') {
    throw ParseError("expected " + std::string(key) + "=<value>, got '" + token + "'");
  }
  return parse_int(std::string_view(token).substr(key.size() + 1), key);
}

std::vector<std::uint8_t> parse_ranks(const std::vector<std::string>& tokens, std::size_t count) {
  if (tokens.size() != count) {
    throw ParseError("expected " + std::to_string(count) + " rank values, got " +
                     std::to_string(tokens.size()));
  }
  std::vector<std::uint8_t> rho(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int v = parse_int(tokens[i], "rank value");
    if (v < 0 || v > 255) throw ParseError("rank value out of range: " + tokens[i]);
    rho[i] = static_cast<std::uint8_t>(v);
  }
  return rho;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

void append_ranks(std::string& out, const RankTable& table) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(table[static_cast<Subset>(i)]);
  }
}

RankTable make_table(int n, int k, std::vector<std::uint8_t> rho) {
  try {
    return RankTable(n, k, std::move(rho));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

class CatalogReader {
 public:
  explicit CatalogReader(std::istream& in) : in_(in) {
    std::string line;
    if (!std::getline(in_, line)) throw ParseError("empty catalog file");
    const auto tokens = split(line);
    if (tokens.size() != 5 || tokens[0] != "POLYCAT" || tokens[1] != "v1") {
      throw ParseError("bad catalog header '" + line + "'");
    }
    n_ = parse_field(tokens[2], "n");
    k_ = parse_field(tokens[3], "k");
    if (n_ < 0 || n_ > kMaxGroundSize || k_ < 1) throw ParseError("bad catalog header '" + line + "'");
    const std::string& c = tokens[4];
    if (c.rfind("count=", 0) != 0) throw ParseError("bad catalog header '" + line + "'");
    count_ = parse_u64(std::string_view(c).substr(6), "count");
  }

  int n() const { return n_; }
  int k() const { return k_; }
  std::uint64_t declared_count() const { return count_; }

  bool next(CatalogEntry& entry) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      auto tokens = split(line);
      if (tokens.empty()) continue;
      const std::string last = tokens.back();
      if (last.rfind("aut=", 0) != 0) {
        throw ParseError("entry line " + std::to_string(line_number_) + " lacks aut=<order>");
      }
      tokens.pop_back();
      const std::uint64_t aut = parse_u64(std::string_view(last).substr(4), "aut");
      entry = CatalogEntry{make_table(n_, k_, parse_ranks(tokens, std::size_t{1} << n_)), aut};
      ++seen_;
      return true;
    }
    if (seen_ != count_) {
      throw ParseError("catalog declares count=" + std::to_string(count_) + " but holds " +
                       std::to_string(seen_) + " entries");
    }
    return false;
  }

 private:
  std::istream& in_;
  int n_ = 0;
  int k_ = 1;
  std::uint64_t count_ = 0;
  std::uint64_t seen_ = 0;
  std::uint64_t line_number_ = 1;
};

struct CatalogFile {
  std::filesystem::path path;
  int n;
};

std::vector<CatalogFile> list_catalog_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ParseError("not a directory: " + dir.string());
  static const std::regex name(R"(catalog_n(\d+)((?:\.part\d+)*)\.txt)");
  std::vector<CatalogFile> files;
  for (const auto& item : std::filesystem::directory_iterator(dir)) {
    std::smatch m;
    const std::string file = item.path().filename().string();
    if (item.is_regular_file() && std::regex_match(file, m, name)) {
      files.push_back({item.path(), std::stoi(m[1].str())});
    }
  }
  if (files.empty()) throw ParseError("no catalog files in " + dir.string());
  std::sort(files.begin(), files.end(), [](const CatalogFile& a, const CatalogFile& b) {
    return a.n != b.n ? a.n < b.n : a.path.filename() < b.path.filename();
  });
  return files;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_ranks(const RankTable& table) {
  std::string out;
  append_ranks(out, table);
  return out;
}

std::string format_polymatroid(const RankTable& table) {
  std::string out = "n=" + std::to_string(table.n()) + " k=" + std::to_string(table.k()) + "\n";
  append_ranks(out, table);
  return out + "\n";
}

RankTable parse_polymatroid(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty polymatroid file");
  const auto fields = split(header);
  if (fields.size() != 2) throw ParseError("expected 'n=<n> k=<k>', got '" + header + "'");
  const int n = parse_field(fields[0], "n");
  const int k = parse_field(fields[1], "k");
  if (n < 0 || n > kMaxGroundSize) throw ParseError("n=" + std::to_string(n) + " out of range");
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  return make_table(n, k, parse_ranks(tokens, std::size_t{1} << n));
}

RankTable read_polymatroid_file(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_polymatroid(in);
}

void write_catalog(std::ostream& out, const Catalog& catalog) {
  out << "POLYCAT v1 n=" << catalog.n() << " k=" << catalog.k() << " count=" << catalog.size() << '\n';
  std::string line;
  for (const CatalogEntry& entry : catalog.entries()) {
    line.clear();
    append_ranks(line, entry.table);
    line += " aut=" + std::to_string(entry.aut_order) + "\n";
    out << line;
  }
}

Catalog read_catalog(std::istream& in) {
  CatalogReader reader(in);
  std::vector<CatalogEntry> entries;
  for (CatalogEntry entry; reader.next(entry);) entries.push_back(std::move(entry));
  return Catalog(reader.n(), reader.k(), std::move(entries));
}

void write_catalog_file(const std::filesystem::path& path, const Catalog& catalog) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_catalog(out, catalog);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Catalog read_catalog_file(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return read_catalog(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::filesystem::path catalog_path(const std::filesystem::path& dir, int n) {
  return dir / ("catalog_n" + std::to_string(n) + ".txt");
}

std::vector<Catalog> load_catalog_dir(const std::filesystem::path& dir) {
  std::map<int, std::vector<Catalog>> parts;
  for (const CatalogFile& file : list_catalog_files(dir)) {
    Catalog c = read_catalog_file(file.path);
    if (c.n() != file.n) throw ParseError(file.path.string() + ": header n does not match file name");
    parts[file.n].push_back(std::move(c));
  }
  std::vector<Catalog> out;
  for (auto& [n, group] : parts) {
    if (group.size() == 1) {
      out.push_back(std::move(group.front()));
      continue;
    }
    std::vector<CatalogEntry> merged;
    for (const Catalog& c : group) {
      if (c.k() != group.front().k()) throw ParseError("shards of n=" + std::to_string(n) + " disagree on k");
      merged.insert(merged.end(), c.entries().begin(), c.entries().end());
    }
    std::sort(merged.begin(), merged.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) { return a.table < b.table; });
    out.emplace_back(n, group.front().k(), std::move(merged));
  }
  return out;
}

CountTable count_catalog_dir(const std::filesystem::path& dir, CountMode mode, const EntryFilter& filter) {
  std::map<int, std::pair<int, std::vector<std::uint64_t>>> columns;  // n -> (k, per-rank)
  for (const CatalogFile& file : list_catalog_files(dir)) {
    auto in = open_in(file.path);
    try {
      CatalogReader reader(in);
      if (reader.n() != file.n) throw ParseError("header n does not match file name");
      auto& [k, counts] = columns[file.n];
      if (counts.empty()) {
        k = reader.k();
        counts.assign(static_cast<std::size_t>(reader.k() * reader.n() + 1), 0);
      } else if (k != reader.k()) {
        throw ParseError("shards disagree on k");
      }
      for (CatalogEntry entry; reader.next(entry);) {
        if (!filter.accepts(entry.table)) continue;
        const auto r = static_cast<std::size_t>(entry.table.rank());
        if (r >= counts.size()) throw ParseError("entry rank exceeds k*n");
        counts[r] += mode == CountMode::kLabeled ? labeled_count(reader.n(), entry.aut_order) : 1;
      }
    } catch (const ParseError& e) {
      throw ParseError(file.path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ParseError(file.path.string() + ": " + e.what());
    }
  }

  CountTable table;
  std::size_t height = 0;
  for (const auto& [n, col] : columns) height = std::max(height, col.second.size());
  table.rows.assign(height, {});
  for (const auto& [n, col] : columns) {
    const auto& counts = col.second;
    table.ns.push_back(n);
    table.max_rank.push_back(static_cast<int>(counts.size()) - 1);
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < height; ++r) {
      const std::uint64_t v = r < counts.size() ? counts[r] : 0;
      table.rows[r].push_back(v);
      total += v;
    }
    table.totals.push_back(total);
  }
  return table;
}

std::string format_count_csv(const CountTable& table) {
  std::ostringstream os;
  os << "rank";
  for (int n : table.ns) os << ',' << n;
  os << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << r;
    for (std::uint64_t v : table.rows[r]) os << ',' << v;
    os << '\n';
  }
  os << "total";
  for (std::uint64_t v : table.totals) os << ',' << v;
  os << '\n';
  return os.str();
}

std::string format_count_text(const CountTable& table, const std::string& title) {
  std::vector<std::size_t> width(table.ns.size(), 1);
  for (std::size_t c = 0; c < table.ns.size(); ++c) {
    width[c] = std::max(std::to_string(table.ns[c]).size(), std::to_string(table.totals[c]).size());
  }
  std::ostringstream os;
  const std::size_t label = 10;
  os << title << '\n';
  os << std::left << std::setw(static_cast<int>(label)) << "rank \\ n" << std::right;
  for (std::size_t c = 0; c < table.ns.size(); ++c) os << "  " << std::setw(static_cast<int>(width[c])) << table.ns[c];
  os << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << std::left << std::setw(static_cast<int>(label)) << r << std::right;
    for (std::size_t c = 0; c < table.ns.size(); ++c) {
      os << "  " << std::setw(static_cast<int>(width[c]));
      if (static_cast<int>(r) > table.max_rank[c]) {
        os << "";
      } else {
        os << table.rows[r][c];
      }
    }
    os << '\n';
  }
  os << std::left << std::setw(static_cast<int>(label)) << "total" << std::right;
  for (std::size_t c = 0; c < table.ns.size(); ++c) os << "  " << std::setw(static_cast<int>(width[c])) << table.totals[c];
  os << '\n';
  return os.str();
}

}  // namespace polycat
