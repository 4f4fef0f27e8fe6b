#pragma once

#include "f2lab/codes.hpp"
#include "f2lab/dyadic.hpp"
#include "f2lab/f2space.hpp"

#include <optional>
#include <vector>

namespace f2lab {

/// x -> Id_I(x) + c from Pairs(m) into Pairs(n), I = support (increasing).
class CentralEmbedding {
 public:
  CentralEmbedding(int n, std::vector<int> support, GraphPoint constant);

  int n() const { return n_; }
  int m() const { return static_cast<int>(support_.size()); }
  const std::vector<int>& support() const { return support_; }
  const GraphPoint& constant() const { return constant_; }
  EdgeIndexSet domain() const { return EdgeIndexSet::pairs(m()); }
  EdgeIndexSet codomain() const { return EdgeIndexSet::pairs(n_); }
  /// codomain position of each domain position
  const std::vector<int>& position_map() const { return map_; }
  /// All positions of (I choose 2).
  const Bits& support_mask() const { return mask_; }

  GraphPoint apply(const GraphPoint& x) const;
  Bits apply_bits(const Bits& x) const;
  bool in_image(const Bits& z) const { return minus(z ^ constant_.bits, mask_).none(); }

 private:
  int n_;
  std::vector<int> support_;
  GraphPoint constant_;
  std::vector<int> map_;
  Bits mask_;
};

/// y -> c + sum_q y(q) b_q from PairsLoops(m) into PairsLoops(n).
class HJEmbedding {
 public:
  HJEmbedding(int n, std::vector<std::vector<int>> wildcards, GraphPoint constant);
  static HJEmbedding identity(int n);

  int n() const { return n_; }
  int m() const { return static_cast<int>(wildcards_.size()); }
  const std::vector<std::vector<int>>& wildcards() const { return wildcards_; }
  const GraphPoint& constant() const { return constant_; }
  EdgeIndexSet domain() const { return EdgeIndexSet::pairs_loops(m()); }
  EdgeIndexSet codomain() const { return EdgeIndexSet::pairs_loops(n_); }
  /// var(e)_q indexed by the domain position of q.
  const std::vector<Bits>& var_sets() const { return var_; }
  const Bits& wildcard_mask() const { return wild_; }  // union of var sets
  bool is_block() const;

  /// Id_I(y), without the constant.
  Bits linear(const Bits& y) const;
  Bits apply_bits(const Bits& y) const { return linear(y) ^ constant_.bits; }
  GraphPoint apply(const GraphPoint& y) const;
  bool in_image(const Bits& z) const;
  std::optional<Bits> preimage(const Bits& z) const;

  std::string describe() const;

 private:
  int n_;
  std::vector<std::vector<int>> wildcards_;
  GraphPoint constant_;
  std::vector<Bits> var_;
  Bits wild_;
};

/// {y : e(y) in fam}.
CodeFamily hj_preimage_family(const HJEmbedding& e, const CodeFamily& fam);
CodeFamily central_preimage_family(const CentralEmbedding& e, const CodeFamily& fam);

/// P[fam | V] computed by scanning fam for points of the image V.
Dyadic conditional_density(const HJEmbedding& e, const CodeFamily& fam);
Dyadic conditional_density(const CentralEmbedding& e, const CodeFamily& fam);

/// V_x = {x u y : y inside (A choose 2)}; x must vanish on (A choose 2).
CentralEmbedding central_partition_of_section(int n, std::vector<int> A, const GraphPoint& x);

}  // namespace f2lab
