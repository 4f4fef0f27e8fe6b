#pragma once

#include "f2lab/dyadic.hpp"
#include "f2lab/polynomials.hpp"
#include "f2lab/subspaces.hpp"

#include <optional>
#include <string>
#include <vector>

namespace f2lab {

/// eta1 = 2^((m(m+1) - s m (s m + 1)) / 2).
Dyadic stage_eta1(int m, const BigInt& s);

/// Least ell with (1 - eta1)^ell < eta, i.e. floor(log eta / log(1 - eta1)) + 1.
/// verified is false when the exact check was too large to run.
struct StageCount {
  BigInt ell;
  bool verified = false;
};
StageCount stage_count(const Dyadic& eta1, const Rational& eta);

/// (1 - eta1)^ell < eta, exact.
bool stage_inequality_holds(const Dyadic& eta1, std::uint64_t ell, const Rational& eta);

struct PaperParams {
  Rational eta;
  int m = 0, k = 0, d = 0;
  BigInt block_size;  // 2^k (d+1)!
  Dyadic eta1;
  StageCount ell;
  BigInt r;        // block_size * m * ell
  std::string n1;  // the Ramsey bound, unevaluated
};

PaperParams paper_params(const Rational& eta, int m, int k, int d);

/// One stage family: X cut into successive X_j of size s m, each cut into
/// successive wildcard blocks I_i^j of size s. Stages are 0-based.
class StagePlan {
 public:
  StagePlan(int n, std::vector<int> X, int m, int s, int ell);

  int n() const { return n_; }
  int m() const { return m_; }
  int s() const { return s_; }
  int ell() const { return ell_; }
  const std::vector<std::vector<int>>& stage_sets() const { return X_; }
  const std::vector<std::vector<int>>& wildcards(int j) const { return I_[static_cast<std::size_t>(j)]; }
  /// Positions of (X_j choose <= 2).
  const Bits& block_mask(int j) const { return block_[static_cast<std::size_t>(j)]; }
  /// var^j_q by domain position q of PairsLoops(m).
  const std::vector<Bits>& var_masks(int j) const { return var_[static_cast<std::size_t>(j)]; }

  Dyadic eta1() const { return stage_eta1(m_, BigInt(s_)); }
  /// eta1 (1 - eta1)^j
  Dyadic stage_measure(int j) const;
  /// (1 - eta1)^ell
  Dyadic leftover_measure() const;

  /// x is constant on every var^j_q.
  bool constant_pattern(int j, const Bits& x) const;
  /// First j with a constant pattern, -1 when x is left over.
  int stage_of(const Bits& x) const;
  /// The subspace of the stage family containing x.
  std::optional<HJEmbedding> subspace_of(const Bits& x) const;
  /// Every member of V_j; throws BudgetExceeded past max_count.
  std::vector<HJEmbedding> stage_subspaces(int j, std::uint64_t max_count) const;

 private:
  int n_, m_, s_, ell_;
  std::vector<std::vector<int>> X_;
  std::vector<std::vector<std::vector<int>>> I_;
  std::vector<Bits> block_;
  std::vector<std::vector<Bits>> var_;
};

/// e o f: wildcards K_v = union of I_u over u in J_v, constant e(c_f).
HJEmbedding compose(const HJEmbedding& outer, const HJEmbedding& inner);

struct PartitionLevel {
  int m = 1;
  int s = 2;
  int ell = 0;  // 0: least ell with (1 - eta1)^ell < eta
};

struct PartitionOptions {
  Rational eta{1, 4};
  /// Level t of the recursion uses levels[min(t, size - 1)].
  std::vector<PartitionLevel> levels{PartitionLevel{}};
  CanonicalStrategy strategy = CanonicalStrategy::Exhaustive;
  std::uint64_t max_candidates = 1'000'000;
  std::uint64_t max_pieces = 2'000'000;
  int max_depth = 8;
};

enum class PartitionStatus { Complete, CanonicalSetNotFound, InsufficientRoom, RecursionBudgetExceeded };
std::string_view partition_status_name(PartitionStatus s);

struct PartitionPiece {
  HJEmbedding embedding;  // into the original space
  IntegerPoly poly;       // Q o embedding
  std::optional<std::uint64_t> value;  // set when poly is constant
  int depth = 0;
  int stage = 0;
};

struct StageLogEntry {
  int depth = 0;
  std::vector<int> X;
  int m = 0, s = 0, ell = 0;
  Dyadic eta1;
  std::uint64_t pieces = 0;
  std::uint64_t degree_not_lowered = 0;
};

struct PartitionPlan {
  PartitionStatus status = PartitionStatus::Complete;
  std::string message;
  std::vector<PartitionPiece> pieces;
  Dyadic leftover_measure;
  /// Subspaces abandoned when the recursion stopped early.
  std::vector<HJEmbedding> unresolved;
  Dyadic unresolved_measure;
  std::vector<StageLogEntry> log;
  bool meets_eta = false;
};

/// Desk-scale partition: canonical X by search, caller-supplied block size
/// and stage counts, recursion into each piece until the restriction is constant.
PartitionPlan partition_polynomial(const IntegerPoly& Q, const PartitionOptions& options);

/// With block size (d+1)! 2^k and the stage count derived from eta; refuses (InsufficientRoom)
/// whenever n < r.
PartitionPlan partition_polynomial_paper(const IntegerPoly& Q, const Rational& eta, int m);

/// Partition of the integer form of P; piece values become alpha + v / 2^d.
struct NonclassicalPartition {
  PartitionPlan plan;
  IntegerForm form;
  std::optional<DyadicTorus> value(const PartitionPiece& piece) const;
};
NonclassicalPartition partition_nonclassical(const NonclassicalPoly& P, const PartitionOptions& options);

struct PlanAudit {
  bool disjoint = true;
  bool constant = true;
  bool restriction_exact = true;
  bool blocks = true;
  bool measure_exact = true;
  std::uint64_t covered = 0;
  std::string detail;
  bool ok() const { return disjoint && constant && restriction_exact && blocks && measure_exact; }
};

/// Exhaustive check over all 2^N points (N <= 26).
PlanAudit audit_plan(const IntegerPoly& Q, const PartitionPlan& plan);

}  // namespace f2lab
