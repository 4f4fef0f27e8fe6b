#pragma once

#include "f2lab/codes.hpp"
#include "f2lab/dyadic.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace f2lab {

/// Words of W(n,2,2) as points of F_2^{[n]^2}; letter 1 is 0 and letter 2 is 1.
/// Position of (i, j) is (i-1) n + (j-1), 1-based vertices.
inline constexpr int kMaxSquareSide = 4;

int square_position(int n, int i, int j);
/// Positions of X x X for a vertex mask X (bit v-1 for vertex v).
std::uint64_t square_mask(int n, std::uint64_t vertex_mask);
bool is_symmetric_word(int n, std::uint64_t word);

/// A subset of F_2^{[n]^2}, n <= kMaxSquareSide.
class WordSet {
 public:
  WordSet() = default;
  explicit WordSet(int n);
  static WordSet full(int n);
  static WordSet from_words(int n, const std::vector<std::uint64_t>& words);

  int n() const { return n_; }
  const CodeFamily& family() const { return fam_; }
  bool contains(std::uint64_t w) const { return fam_.contains(w); }
  void insert(std::uint64_t w) { fam_.insert(w); }
  std::uint64_t cardinality() const { return fam_.cardinality(); }
  std::vector<std::uint64_t> members() const { return fam_.members(); }
  Dyadic density() const { return fam_.density(); }

  friend bool operator==(const WordSet& a, const WordSet& b) { return a.n_ == b.n_ && a.fam_ == b.fam_; }

 private:
  int n_ = 0;
  CodeFamily fam_;
};

struct PolyLine {
  int n = 0;
  std::uint64_t X = 0;      // vertex mask, nonempty
  std::uint64_t fixed = 0;  // zero on X^2

  std::uint64_t variable_mask() const { return square_mask(n, X); }
  /// v(a) for a in {0, 1}.
  std::uint64_t completion(int a) const { return a ? fixed | variable_mask() : fixed; }
};

/// sum over nonempty X of 2^(n^2 - |X|^2).
BigInt line_count(int n);

/// Every polynomial line once, X by size then lex, fixed parts ascending.
class LineEnumerator {
 public:
  explicit LineEnumerator(int n);  // TooLarge above kMaxSquareSide
  std::optional<PolyLine> next();

 private:
  int n_;
  std::vector<std::uint64_t> subsets_;
  std::size_t at_ = 0;
  std::uint64_t fixed_ = 0;
  bool started_ = false;
};

/// First line (enumeration order) with both completions in A.
std::optional<PolyLine> find_line(const WordSet& A);
inline bool is_line_free(const WordSet& A) { return !find_line(A); }

/// Readout x(min e, max e) over PairsLoops(n), and its symmetric inverse.
std::uint64_t square_readout(int n, std::uint64_t word);
std::uint64_t symmetric_word(int n, std::uint64_t pairs_loops_point);

/// {x : readout(x) in fam}; fam over PairsLoops(n).
WordSet code_to_word_set(const CodeFamily& fam);
/// The symmetric words S_[n].
WordSet symmetric_words(int n);
/// Inverse of word_set_to_code.
WordSet symmetric_lift(const CodeFamily& fam);
/// Throws NotSymmetric when some member is not symmetric.
CodeFamily word_set_to_code(const WordSet& B);
/// |B n S_[n]| / |S_[n]|.
Dyadic symmetric_density(const WordSet& B);

struct ConcentrationResult {
  std::optional<std::size_t> i0;        // 0-based block index, empty when no block qualifies
  bool hypothesis_met = false;          // l >= 2^(m+1) / eps^2
  std::vector<Rational> max_deviation;  // per block, max over sections
};

/// A over {0,1}^I with I = [0, dim), dim <= 20; blocks are disjoint nonempty
/// index lists. Scans blocks in order and returns the first whose every
/// section S_x satisfies |P[A | S_x] - P[A]| <= eps.
ConcentrationResult conditional_concentration(const CodeFamily& A, const std::vector<std::vector<int>>& blocks,
                                              const Rational& eps);

struct SymmetricReduction {
  int n1 = 0;
  std::vector<std::vector<int>> blocks;  // positions of I_i x I_i
  ConcentrationResult concentration;
  std::size_t block = 0;                 // i0, or the least-deviation block when none qualifies
  std::uint64_t y0 = 0;                  // zero on the chosen block
  Rational average;                      // E_y P[A | V_y]
  Rational achieved;                     // P[A | V_y0]
  WordSet B;
  CodeFamily code;                       // over PairsLoops(n1)
};

/// The chain A -> block -> best symmetric section -> B -> code, with
/// eps = P[A] / 2 and blocks I_i = successive n1-chunks of [n].
SymmetricReduction symmetric_reduction(const WordSet& A, int n1);

}  // namespace f2lab
