#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace f2lab::acceptance {

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct Options {
  std::uint64_t seed = 20261015;
  std::vector<int> only;  // empty runs all
};

/// Runs the criteria in order; progress lines go to `log` when non-null.
std::vector<Criterion> run_all(const Options& options, std::ostream* log);

/// One line per criterion; true when every criterion passed.
bool print_table(std::ostream& out, const std::vector<Criterion>& results);

}  // namespace f2lab::acceptance
