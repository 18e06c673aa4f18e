#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "polycat/catalog_io.hpp"
#include "polycat/cli.hpp"
#include "polycat/extend.hpp"
#include "polycat/gen.hpp"
#include "support.hpp"

namespace polycat {
namespace {

namespace fs = std::filesystem;
using test::table;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "polycat");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("polycat_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

TEST(PolymatroidFormat, RoundTrip) {
  const RankTable t = test::two_free_lines();
  EXPECT_EQ(format_polymatroid(t), "n=2 k=2\n0 2 2 3\n");
  std::istringstream in(format_polymatroid(t));
  EXPECT_EQ(parse_polymatroid(in), t);
  std::istringstream empty("n=0 k=2\n0\n");
  EXPECT_EQ(parse_polymatroid(empty), empty_polymatroid(2));
}

TEST(PolymatroidFormat, Errors) {
  for (const char* text : {"", "n=2\n0 2 2 3\n", "n=2 k=2\n0 2 2\n", "n=2 k=2\n0 2 2 3 4\n", "n=2 k=2\n0 2 x 3\n",
                           "n=13 k=2\n0\n", "n=1 k=2\n0 300\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(parse_polymatroid(in), ParseError) << text;
  }
}

TEST(CatalogFormat, ByteExactRoundTrip) {
  for (const Catalog& c : enumerate_all(5, 2)) {
    std::ostringstream first;
    write_catalog(first, c);
    std::istringstream in(first.str());
    const Catalog back = read_catalog(in);
    EXPECT_EQ(back, c);
    std::ostringstream second;
    write_catalog(second, back);
    EXPECT_EQ(second.str(), first.str());
  }
  std::ostringstream out;
  write_catalog(out, generate_next(base_catalog(2)));
  EXPECT_EQ(out.str(), "POLYCAT v1 n=1 k=2 count=3\n0 0 aut=1\n0 1 aut=1\n0 2 aut=1\n");
}

TEST(CatalogFormat, Errors) {
  for (const char* text : {"", "POLYCAT v2 n=1 k=2 count=0\n", "POLYCAT v1 n=1 k=2 count=2\n0 0 aut=1\n",
                           "POLYCAT v1 n=1 k=2 count=1\n0 0\n", "POLYCAT v1 n=1 k=2 count=1\n0 aut=1\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_catalog(in), ParseError) << text;
  }
}

TEST(CountFormat, CsvAndText) {
  const CountTable t = count_table(enumerate_all(2, 2), CountMode::kUnlabeled);
  EXPECT_EQ(format_count_csv(t), "rank,0,1,2\n0,1,1,1\n1,0,1,2\n2,0,1,4\n3,0,0,2\n4,0,0,1\ntotal,1,3,10\n");
  const std::string text = format_count_text(t, "title");
  EXPECT_EQ(text.substr(0, 6), "title\n");
  EXPECT_NE(text.find("total"), std::string::npos);
}

TEST(Cli, EnumerateCountVerify) {
  const fs::path dir = scratch("enumerate");
  Result r = run({"enumerate", "--n", "5", "--k", "2", "--out", dir.string(), "--jobs", "2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("n=5 count=2380"), std::string::npos);
  EXPECT_NE(r.err.find("parents="), std::string::npos);
  for (int n = 0; n <= 5; ++n) EXPECT_TRUE(fs::exists(catalog_path(dir, n)));

  // Re-serializing what was read gives the same bytes.
  for (const Catalog& c : load_catalog_dir(dir)) {
    std::ostringstream os;
    write_catalog(os, c);
    EXPECT_EQ(os.str(), slurp(catalog_path(dir, c.n())));
  }

  r = run({"count", "--in", dir.string(), "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("total,1,3,10,40,228,2380"), std::string::npos);
  EXPECT_NE(r.out.find("\n5,0,0,0,3,49,778\n"), std::string::npos);

  r = run({"count", "--in", dir.string(), "--labeled", "--format", "csv"});
  EXPECT_NE(r.out.find("total,1,3,14,115,2040,109707"), std::string::npos);

  r = run({"count", "--in", dir.string(), "--filter-min-rank", "2", "--format", "csv"});
  EXPECT_NE(r.out.find("total,1,1,2,8,51,696"), std::string::npos);
  r = run({"count", "--in", dir.string(), "--filter-min-rank", "2", "--allow-parallel", "--format", "csv"});
  EXPECT_NE(r.out.find("total,1,1,3,11,67,827"), std::string::npos);

  r = run({"count", "--in", dir.string()});
  EXPECT_NE(r.out.find("unlabeled"), std::string::npos);

  r = run({"verify", "--n", "4", "--in", dir.string()});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  r = run({"verify", "--n", "3", "--in", dir.string()});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out;

  // Identical flags give identical bytes.
  const fs::path again = scratch("enumerate_again");
  run({"enumerate", "--n", "5", "--out", again.string(), "--jobs", "1"});
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(slurp(catalog_path(dir, n)), slurp(catalog_path(again, n)));
  fs::remove_all(dir);
  fs::remove_all(again);
}

TEST(Cli, EnumerateZeroAndMatroids) {
  const fs::path dir = scratch("zero");
  Result r = run({"enumerate", "--n", "0", "--out", dir.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(slurp(catalog_path(dir, 0)), "POLYCAT v1 n=0 k=2 count=1\n0 aut=1\n");

  const fs::path matroids = scratch("matroids");
  r = run({"enumerate", "--n", "4", "--k", "1", "--out", matroids.string()});
  EXPECT_EQ(r.code, 0);
  r = run({"verify", "--n", "4", "--k", "1", "--in", matroids.string()});
  EXPECT_EQ(r.code, 0) << r.out;
  r = run({"verify", "--n", "4", "--k", "2", "--in", matroids.string()});
  EXPECT_EQ(r.code, cli::kExitMismatch);
  fs::remove_all(dir);
  fs::remove_all(matroids);
}

TEST(Cli, StreamedLevels) {
  const fs::path dir = scratch("stream");
  Result r = run({"enumerate", "--n", "5", "--out", dir.string(), "--stream", "--stream-from", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("n=4 count=228 shards="), std::string::npos);
  EXPECT_NE(r.out.find("n=5 count=2380 shards="), std::string::npos);
  EXPECT_FALSE(fs::exists(catalog_path(dir, 5)));
  r = run({"count", "--in", dir.string(), "--format", "csv"});
  EXPECT_NE(r.out.find("total,1,3,10,40,228,2380"), std::string::npos);
  r = run({"verify", "--n", "5", "--in", dir.string()});
  EXPECT_EQ(r.code, 0) << r.out;
  const std::vector<Catalog> loaded = load_catalog_dir(dir);
  EXPECT_EQ(loaded, enumerate_all(5, 2));
  fs::remove_all(dir);
}

TEST(Cli, TamperedCatalogNamesEntry) {
  const fs::path dir = scratch("tamper");
  ASSERT_EQ(run({"enumerate", "--n", "3", "--out", dir.string()}).code, 0);
  std::string text = slurp(catalog_path(dir, 3));
  // Flip the top rank of entry 3.
  std::size_t line = 0;
  for (int i = 0; i < 4; ++i) line = text.find('\n', line) + 1;
  const std::size_t end = text.find(" aut=", line);
  const std::size_t digit = text.rfind(' ', end - 1) + 1;
  text[digit] = text[digit] == '6' ? '5' : static_cast<char>(text[digit] + 1);
  write_text(catalog_path(dir, 3), text);
  const Result r = run({"verify", "--n", "3", "--in", dir.string()});
  EXPECT_EQ(r.code, cli::kExitMismatch);
  EXPECT_NE(r.out.find("FAIL catalog n=3 entry 3"), std::string::npos) << r.out;
  fs::remove_all(dir);
}

TEST(Cli, UsageAndIoErrors) {
  const fs::path empty = scratch("empty");
  EXPECT_EQ(run({"count", "--in", empty.string()}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--n", "2", "--in", empty.string()}).code, cli::kExitUsage);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"enumerate", "--n", "3"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"enumerate", "--n", "3", "--k", "3", "--out", empty.string()}).code, cli::kExitUsage);
  EXPECT_EQ(run({"count", "--in", empty.string(), "--format", "xml"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"info", "--file", (empty / "missing.txt").string()}).code, cli::kExitUsage);
  write_text(empty / "catalog_n1.txt", "POLYCAT v1 n=1 k=2 count=2\n0 0 aut=1\n");
  EXPECT_EQ(run({"count", "--in", empty.string()}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
  fs::remove_all(empty);
}

TEST(Cli, Info) {
  const fs::path dir = scratch("info");
  write_text(dir / "lines.txt", "n=2 k=2\n0 2 2 3\n");
  Result r = run({"info", "--file", (dir / "lines.txt").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("flats 4\n"), std::string::npos);
  EXPECT_NE(r.out.find("  {} rank 0 covered by {1} {2}\n"), std::string::npos);
  EXPECT_NE(r.out.find("automorphisms 2\n"), std::string::npos);
  EXPECT_NE(r.out.find("dual canonical form 0 1 1 1\n"), std::string::npos);
  const std::size_t partitions = enumerate_extensible_partitions(test::two_free_lines()).size();
  EXPECT_NE(r.out.find("extensible partitions " + std::to_string(partitions) + "\n"), std::string::npos);
  EXPECT_NE(r.out.find("labeled extensions (brute force) " + std::to_string(partitions) + "\n"), std::string::npos);

  write_text(dir / "bad.txt", "n=2 k=2\n0 2 2 5\n");
  r = run({"info", "--file", (dir / "bad.txt").string()});
  EXPECT_EQ(r.code, cli::kExitMismatch);
  EXPECT_NE(r.out.find("invalid polymatroid"), std::string::npos);

  write_text(dir / "empty.txt", "n=0 k=2\n0\n");
  r = run({"info", "--file", (dir / "empty.txt").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("rank 0\nflats 1\n"), std::string::npos);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace polycat
