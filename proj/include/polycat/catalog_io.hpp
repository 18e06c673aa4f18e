#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "polycat/gen.hpp"
#include "polycat/rank_table.hpp"

namespace polycat {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Single polymatroid:
//   n=<n> k=<k>
//   <2^n decimal ranks in increasing-bitmask order>
std::string format_polymatroid(const RankTable& table);
std::string format_ranks(const RankTable& table);  // space-separated, no newline
RankTable parse_polymatroid(std::istream& in);
RankTable read_polymatroid_file(const std::filesystem::path& path);

// Catalog:
//   POLYCAT v1 n=<n> k=<k> count=<m>
//   <ranks> aut=<order>      (m lines)
void write_catalog(std::ostream& out, const Catalog& catalog);
Catalog read_catalog(std::istream& in);

void write_catalog_file(const std::filesystem::path& path, const Catalog& catalog);
Catalog read_catalog_file(const std::filesystem::path& path);

std::filesystem::path catalog_path(const std::filesystem::path& dir, int n);

// Every catalog file in `dir`, merged per n (shard parts are concatenated
// in file-name order). Throws ParseError when there are none.
std::vector<Catalog> load_catalog_dir(const std::filesystem::path& dir);

// Counts straight from the files without holding whole catalogs, so it
// also works on streamed shard output.
CountTable count_catalog_dir(const std::filesystem::path& dir, CountMode mode,
                             const EntryFilter& filter = {});

// Rows are ranks, columns are ground-set sizes. Cells above k*n are empty
// in text and 0 in CSV.
std::string format_count_csv(const CountTable& table);
std::string format_count_text(const CountTable& table, const std::string& title);

}  // namespace polycat
