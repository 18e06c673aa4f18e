#include "polycat/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "polycat/canon.hpp"
#include "polycat/catalog_io.hpp"
#include "polycat/extend.hpp"
#include "polycat/gen.hpp"
#include "polycat/lattice.hpp"
#include "polycat/oracle.hpp"

namespace polycat::cli {

namespace {

namespace fs = std::filesystem;

struct EnumerateArgs {
  int n = 0;
  int k = 2;
  std::string out;
  unsigned jobs = 0;
  bool stream = false;
  int stream_from = 7;
};

struct CountArgs {
  std::string in;
  bool labeled = false;
  int filter_min_rank = 0;
  bool allow_parallel = false;
  std::string format = "text";
};

struct VerifyArgs {
  int n = 0;
  int k = 2;
  std::string in;
  unsigned jobs = 1;
};

struct InfoArgs {
  std::string file;
};

void print_stats(std::ostream& err, int n, const GenerationStats& s) {
  err << "n=" << n << " parents=" << s.parents << " partitions=" << s.partitions
      << " accepted=" << s.accepted << " rejected=" << s.rejected << " wall=" << std::fixed
      << std::setprecision(3) << s.wall.count() << "s\n";
  err.unsetf(std::ios::fixed);
}

int cmd_enumerate(const EnumerateArgs& args, std::ostream& out, std::ostream& err) {
  const fs::path dir(args.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    err << "error: cannot create output directory " << dir << '\n';
    return kExitUsage;
  }
  GenerationOptions options;
  options.jobs = args.jobs;

  const int in_memory_max = args.stream ? std::min(args.n, args.stream_from - 1) : args.n;
  Catalog current = base_catalog(args.k);
  write_catalog_file(catalog_path(dir, 0), current);
  out << "n=0 count=1\n";
  for (int n = 1; n <= in_memory_max; ++n) {
    GenerationStats stats;
    current = generate_next(current, options, &stats);
    write_catalog_file(catalog_path(dir, n), current);
    print_stats(err, n, stats);
    out << "n=" << n << " count=" << current.size() << '\n';
  }
  if (args.n <= in_memory_max) return kExitOk;

  // Streamed levels: parents are read one shard at a time.
  std::vector<fs::path> parent_shards;
  for (int n = in_memory_max + 1; n <= args.n; ++n) {
    const std::string prefix = "catalog_n" + std::to_string(n);
    std::vector<fs::path> produced;
    std::uint64_t count = 0;
    GenerationStats total;
    auto absorb = [&](const ShardSummary& s, const GenerationStats& stats) {
      count += s.count;
      total += stats;
      produced.insert(produced.end(), s.shards.begin(), s.shards.end());
    };
    if (n == in_memory_max + 1) {
      GenerationStats stats;
      absorb(generate_next_streaming(current, dir, prefix, options, &stats), stats);
    } else {
      for (std::size_t j = 0; j < parent_shards.size(); ++j) {
        std::ostringstream name;
        name << prefix << ".part" << std::setw(5) << std::setfill('0') << j;
        GenerationStats stats;
        absorb(generate_next_streaming(read_catalog_file(parent_shards[j]), dir, name.str(), options, &stats),
               stats);
      }
    }
    print_stats(err, n, total);
    out << "n=" << n << " count=" << count << " shards=" << produced.size() << '\n';
    parent_shards = std::move(produced);
  }
  return kExitOk;
}

int cmd_count(const CountArgs& args, std::ostream& out) {
  const CountMode mode = args.labeled ? CountMode::kLabeled : CountMode::kUnlabeled;
  const CountTable table = count_catalog_dir(args.in, mode, EntryFilter{args.filter_min_rank, args.allow_parallel});
  if (args.format == "csv") {
    out << format_count_csv(table);
  } else {
    std::string title = std::string("The number of ") + (args.labeled ? "labeled" : "unlabeled") + " polymatroids";
    if (args.filter_min_rank > 0) {
      title += " with no elements of rank less than " + std::to_string(args.filter_min_rank);
      if (!args.allow_parallel) title += " and no element in the closure of another";
    }
    out << format_count_text(table, title);
  }
  return kExitOk;
}

// Per-entry structural checks; returns the first problem.
std::optional<std::string> check_entries(const Catalog& catalog) {
  const RankTable* previous = nullptr;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const CatalogEntry& e = catalog.entries()[i];
    const std::string name = "catalog n=" + std::to_string(catalog.n()) + " entry " + std::to_string(i) +
                             " [" + format_ranks(e.table) + "]";
    if (auto v = validate(e.table)) return name + ": " + v->describe(e.table.n());
    const CanonicalForm cf = canonical_form(e.table);
    if (cf.table != e.table) return name + ": not in canonical form";
    if (cf.aut_order != e.aut_order) {
      return name + ": aut=" + std::to_string(e.aut_order) + " but the group has order " +
             std::to_string(cf.aut_order);
    }
    if (previous && !(*previous < e.table)) return name + ": entries not strictly sorted";
    previous = &e.table;
  }
  return std::nullopt;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<Catalog> loaded = load_catalog_dir(args.in);
  std::map<int, Catalog> by_n;
  for (Catalog& c : loaded) by_n.emplace(c.n(), std::move(c));

  std::vector<Catalog> catalogs;
  for (int n = 0; n <= args.n; ++n) {
    auto it = by_n.find(n);
    if (it == by_n.end()) {
      err << "error: no catalog for n=" << n << " in " << args.in << '\n';
      return kExitUsage;
    }
    if (it->second.k() != args.k) {
      out << "FAIL catalog n=" << n << " has k=" << it->second.k() << ", expected " << args.k << '\n';
      return kExitMismatch;
    }
    catalogs.push_back(it->second);
  }

  bool ok = true;
  for (const Catalog& c : catalogs) {
    if (auto problem = check_entries(c)) {
      out << "FAIL " << *problem << '\n';
      return kExitMismatch;
    }
  }
  OracleOptions options;
  options.jobs = args.jobs;
  const CrossCheckReport report = cross_check(catalogs, args.n, options);
  out << report.text();
  if (!report.ok()) {
    const CrossCheckLine* first = report.first_failure();
    out << "FAIL n=" << first->n << ' ' << first->check << ": " << first->detail << '\n';
    ok = false;
  }
  for (const Catalog& c : catalogs) {
    if (auto problem = duality_check(c)) {
      out << "FAIL duality n=" << c.n() << ": " << *problem << '\n';
      ok = false;
    } else {
      out << "n=" << c.n() << "  duality  ok\n";
    }
  }
  out << (ok ? "PASS\n" : "FAIL\n");
  return ok ? kExitOk : kExitMismatch;
}

int cmd_info(const InfoArgs& args, std::ostream& out) {
  const RankTable table = read_polymatroid_file(args.file);
  const int n = table.n();
  if (auto v = validate(table)) {
    out << "invalid polymatroid: " << v->describe(n) << '\n';
    return kExitMismatch;
  }
  const FlatLattice lattice = flats(table);
  const CanonicalForm cf = canonical_form(table);
  out << "n=" << n << " k=" << table.k() << '\n';
  out << "rank " << table.rank() << '\n';
  out << "flats " << lattice.size() << '\n';
  for (int i = 0; i < lattice.size(); ++i) {
    out << "  " << format_subset(lattice.flats[i], n) << " rank " << lattice.rank_of[i];
    if (!lattice.covers[i].empty()) {
      out << " covered by";
      for (int g : lattice.covers[i]) out << ' ' << format_subset(lattice.flats[g], n);
    }
    out << '\n';
  }
  out << "automorphisms " << cf.aut_order << '\n';
  out << "canonical form " << format_ranks(cf.table) << '\n';
  out << "dual canonical form " << format_ranks(canonical_form(k_dual(table)).table) << '\n';
  if (n < kMaxGroundSize) {
    out << "extensible partitions " << enumerate_extensible_partitions(table).size() << '\n';
  }
  if (n <= 4) out << "labeled extensions (brute force) " << brute_extensions(table).size() << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Enumerate, count and verify catalogs of k-polymatroids", "polycat"};
  app.require_subcommand(1);

  EnumerateArgs enumerate;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Generate catalogs for n = 0..N");
  enumerate_cmd->add_option("--n", enumerate.n, "Largest ground-set size")->required()->check(CLI::Range(0, kMaxGroundSize));
  enumerate_cmd->add_option("--k", enumerate.k, "Element-rank cap")->check(CLI::Range(1, 2));
  enumerate_cmd->add_option("--out", enumerate.out, "Output directory")->required();
  enumerate_cmd->add_option("--jobs", enumerate.jobs, "Worker threads (0: all cores)");
  enumerate_cmd->add_flag("--stream", enumerate.stream, "Write large levels as shard files");
  enumerate_cmd->add_option("--stream-from", enumerate.stream_from, "First level written as shards")
      ->check(CLI::Range(1, kMaxGroundSize));

  CountArgs count;
  auto* count_cmd = app.add_subcommand("count", "Print rank-by-n count tables");
  count_cmd->add_option("--in", count.in, "Catalog directory")->required();
  count_cmd->add_flag("--labeled", count.labeled, "Count labeled polymatroids");
  count_cmd->add_option("--filter-min-rank", count.filter_min_rank,
                        "Keep entries whose elements all have at least this rank and are flats on their own");
  count_cmd->add_flag("--allow-parallel", count.allow_parallel,
                      "With --filter-min-rank, compare singleton ranks only");
  count_cmd->add_option("--format", count.format, "csv or text")->check(CLI::IsMember({"csv", "text"}));

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check catalogs against brute force");
  verify_cmd->add_option("--n", verify.n, "Largest ground-set size to check")->required()->check(CLI::Range(0, kMaxGroundSize));
  verify_cmd->add_option("--k", verify.k, "Element-rank cap")->check(CLI::Range(1, 2));
  verify_cmd->add_option("--in", verify.in, "Catalog directory")->required();
  verify_cmd->add_option("--jobs", verify.jobs, "Worker threads for brute-force counting");

  InfoArgs info;
  auto* info_cmd = app.add_subcommand("info", "Describe a single polymatroid");
  info_cmd->add_option("--file", info.file, "Polymatroid file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enumerate_cmd) return cmd_enumerate(enumerate, out, err);
    if (*count_cmd) return cmd_count(count, out);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*info_cmd) return cmd_info(info, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace polycat::cli
