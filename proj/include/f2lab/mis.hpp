#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace f2lab {

/// Dense undirected graph with one adjacency bitset per vertex.
class BitGraph {
 public:
  explicit BitGraph(int vertices = 0);

  int size() const { return n_; }
  int words() const { return words_; }
  void add_edge(int a, int b);
  bool adjacent(int a, int b) const { return (row(a)[b >> 6] >> (b & 63)) & 1u; }
  const std::uint64_t* row(int v) const { return adj_.data() + static_cast<std::size_t>(v) * words_; }
  int degree(int v) const;

  /// Connected components, each sorted ascending, ordered by least vertex.
  std::vector<std::vector<int>> components() const;
  BitGraph induced(const std::vector<int>& vertices) const;

 private:
  std::uint64_t* row_mut(int v) { return adj_.data() + static_cast<std::size_t>(v) * words_; }
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> adj_;
};

struct MisLimits {
  std::uint64_t node_budget = 200'000'000;
};

struct MisResult {
  std::vector<int> best;  // sorted ascending
  bool exact = true;
  std::uint64_t nodes = 0;
};

struct MisHints {
  std::vector<int> incumbent;                   // a known independent set
  std::size_t upper_bound = SIZE_MAX;           // proven bound on the optimum
};

/// Maximum independent set by branch and bound. Vertices in `forced` are put
/// in the set up front (they must be pairwise non-adjacent). The search stops
/// as soon as an incumbent meets `hints.upper_bound`.
MisResult maximum_independent_set(const BitGraph& g, const std::vector<int>& forced = {},
                                  const MisLimits& limits = {}, const MisHints& hints = {});

bool is_independent(const BitGraph& g, const std::vector<int>& vertices);

/// Iterated local search: random single-vertex insertions followed by
/// (1,2)-swaps, keeping the best set seen. Stops early at `target`.
std::vector<int> local_search_independent_set(const BitGraph& g, std::vector<int> start, std::uint64_t iterations,
                                              std::uint64_t seed, int target);

/// Independent set of exactly `target` vertices whose sorted vertex list is
/// lexicographically least, or nullopt when none exists. `nodes` is
/// incremented by the search work; nullopt is also returned when the budget
/// runs out (then `exhausted` is set).
std::optional<std::vector<int>> lex_least_independent_set(const BitGraph& g, int target, std::uint64_t& nodes,
                                                          const MisLimits& limits, bool& exhausted);

/// Every independent set of exactly `target` vertices, in lexicographic order
/// of sorted vertex lists, stopping after `cap` sets (`complete` tells whether
/// the enumeration finished).
std::vector<std::vector<int>> all_independent_sets(const BitGraph& g, int target, std::size_t cap, bool& complete,
                                                   std::uint64_t& nodes, const MisLimits& limits);

}  // namespace f2lab
