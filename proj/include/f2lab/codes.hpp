#pragma once

#include "f2lab/dyadic.hpp"
#include "f2lab/f2space.hpp"
#include "f2lab/graphs.hpp"
#include "f2lab/mis.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace f2lab {

/// A family of points of F_2^I stored as a membership bit table of length 2^N.
class CodeFamily {
 public:
  static constexpr int kMaxDimension = 30;

  CodeFamily() = default;
  explicit CodeFamily(EdgeIndexSet space);  // empty family
  static CodeFamily full(EdgeIndexSet space);
  static CodeFamily from_points(EdgeIndexSet space, const std::vector<std::uint64_t>& points);
  template <class Pred>
  static CodeFamily from_predicate(EdgeIndexSet space, Pred&& pred) {
    CodeFamily f(space);
    for (std::uint64_t x = 0; x < f.point_count(); ++x)
      if (pred(x)) f.insert(x);
    return f;
  }

  const EdgeIndexSet& space() const { return space_; }
  int dimension() const { return space_.size(); }
  std::uint64_t point_count() const { return std::uint64_t{1} << space_.size(); }

  bool contains(std::uint64_t x) const { return (table_[x >> 6] >> (x & 63)) & 1u; }
  void insert(std::uint64_t x);
  void erase(std::uint64_t x);

  std::uint64_t cardinality() const { return cardinality_; }
  Dyadic density() const { return Dyadic(BigInt(cardinality_), space_.size()); }
  std::vector<std::uint64_t> members() const;
  const std::vector<std::uint64_t>& table() const { return table_; }
  static CodeFamily from_table(EdgeIndexSet space, std::vector<std::uint64_t> table);

  /// Indicator 1_G as a table.
  ValueTable indicator() const;
  /// 1_G - P[G].
  ValueTable balanced() const;

  friend bool operator==(const CodeFamily& a, const CodeFamily& b) {
    return a.space_ == b.space_ && a.table_ == b.table_;
  }

 private:
  EdgeIndexSet space_;
  std::vector<std::uint64_t> table_;
  std::uint64_t cardinality_ = 0;
};

enum class CodeKind { Code, HJCode };

/// A pair G1 != G2 of members whose difference is forbidden; smaller < larger
/// numerically, and for HJCode smaller is contained in larger.
struct Violation {
  std::uint64_t smaller = 0;
  std::uint64_t larger = 0;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Forbidden differences of the space as table positions (N <= 64).
std::vector<std::uint64_t> difference_words(const EdgeIndexSet& space, const ForbiddenFamily& forb);

/// Lexicographically first violating pair, if any.
std::optional<Violation> find_violation(const CodeFamily& fam, std::span<const std::uint64_t> diffs, CodeKind kind);
std::optional<Violation> find_violation(const CodeFamily& fam, const ForbiddenFamily& forb, CodeKind kind);
bool is_code(const CodeFamily& fam, const ForbiddenFamily& forb, CodeKind kind);

/// Conflict graph on all 2^N points: x ~ x + z (Code) or x ~ x u z with
/// x n z empty (HJCode), for z in diffs.
BitGraph conflict_graph(const EdgeIndexSet& space, std::span<const std::uint64_t> diffs, CodeKind kind);

struct SearchOptions {
  std::uint64_t node_budget = 200'000'000;
  bool all_witnesses = false;
  std::size_t witness_cap = 100'000;
  std::uint64_t lex_budget = 200'000;  // nodes for the lex-least witness phase, 0 skips it
  int local_search_restarts = 8;
  std::uint64_t local_search_iterations = 20'000;
};

struct ExtremalResult {
  Dyadic density;
  std::uint64_t cardinality = 0;
  CodeFamily witness;   // lexicographically least sorted member list when witness_lex_least
  bool exact = false;   // proven optimal
  bool witness_lex_least = false;
  std::uint64_t lp_bound = 0;  // linear-programming bound on the cardinality, 0 when not computed
  std::uint64_t node_count = 0;
  int components = 0;   // of the conflict graph
  std::vector<CodeFamily> witnesses;  // only with all_witnesses, sorted by member list
  bool witnesses_complete = false;
};

inline constexpr int kMaxSearchDimension = 14;
inline constexpr int kMaxLpDimension = 12;

ExtremalResult extremal_search(const EdgeIndexSet& space, const ForbiddenFamily& forb, CodeKind kind,
                               const SearchOptions& options = {});
ExtremalResult extremal_search(const EdgeIndexSet& space, std::span<const std::uint64_t> diffs, CodeKind kind,
                               const SearchOptions& options = {});

struct MonotonicityRow {
  int n = 0;
  Dyadic density;
  bool exact = false;
};

struct MonotonicityTable {
  std::vector<MonotonicityRow> rows;
  bool non_increasing = true;  // over consecutive exact rows
};

MonotonicityTable monotonicity_table(const ForbiddenFamily& forb, CodeKind kind, bool loops, int n_first,
                                     int n_last, const SearchOptions& options = {});

/// Section of a family: the members agreeing with `fixed` on the fixed
/// positions, as a family over the remaining positions (in increasing order).
struct SectionFamily {
  CodeFamily family;           // over Generic(#remaining)
  EdgeIndexSet parent;
  std::vector<int> positions;  // parent position of each remaining coordinate
};

SectionFamily section_restrict(const CodeFamily& fam, const std::vector<std::pair<int, bool>>& fixed);
/// Forbidden differences supported on the remaining positions, in section coordinates.
std::vector<std::uint64_t> section_differences(const SectionFamily& s, const ForbiddenFamily& forb);
/// When the remaining positions are exactly the indices inside [n-1], the
/// section viewed as a family over Pairs(n-1) / PairsLoops(n-1).
CodeFamily section_as_graph_family(const SectionFamily& s);
/// Fix every index touching vertex n; `assignment` bit t gives the value of
/// the t-th such index in increasing position order.
SectionFamily vertex_section(const CodeFamily& fam, std::uint64_t assignment);

/// {G u loops(X) : G in fam, X nonempty of even size}, from Pairs(n) to PairsLoops(n).
CodeFamily loop_padding_transfer(const CodeFamily& fam);

}  // namespace f2lab
