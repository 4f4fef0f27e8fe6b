#include "f2lab/dphj.hpp"

#include "f2lab/error.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace f2lab {

namespace {

void check_side(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be positive");
  if (n > kMaxSquareSide) throw Error(Errc::TooLarge, "n = " + std::to_string(n) + " exceeds " + std::to_string(kMaxSquareSide));
}

std::uint64_t gather(std::uint64_t word, const std::vector<int>& positions) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) out |= ((word >> positions[i]) & 1u) << i;
  return out;
}

std::uint64_t mask_of(const std::vector<int>& positions) {
  std::uint64_t m = 0;
  for (int p : positions) m |= std::uint64_t{1} << p;
  return m;
}

// nonempty vertex masks, by size then lex
std::vector<std::uint64_t> line_subsets(int n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t X = 1; X < (std::uint64_t{1} << n); ++X) out.push_back(X);
  std::sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    while (a && b) {
      const int la = std::countr_zero(a), lb = std::countr_zero(b);
      if (la != lb) return la < lb;
      a &= a - 1;
      b &= b - 1;
    }
    return false;
  });
  return out;
}

}  // namespace

int square_position(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n)
    throw Error(Errc::VertexOutOfRange, "(" + std::to_string(i) + "," + std::to_string(j) + ") not in [" + std::to_string(n) + "]^2");
  return (i - 1) * n + (j - 1);
}

std::uint64_t square_mask(int n, std::uint64_t vertex_mask) {
  std::uint64_t m = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (((vertex_mask >> (i - 1)) & 1u) && ((vertex_mask >> (j - 1)) & 1u)) m |= std::uint64_t{1} << square_position(n, i, j);
  return m;
}

bool is_symmetric_word(int n, std::uint64_t word) {
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (((word >> square_position(n, i, j)) & 1u) != ((word >> square_position(n, j, i)) & 1u)) return false;
  return true;
}

WordSet::WordSet(int n) : n_(n) {
  check_side(n);
  fam_ = CodeFamily(EdgeIndexSet::generic(n * n));
}

WordSet WordSet::full(int n) {
  WordSet w(n);
  w.fam_ = CodeFamily::full(EdgeIndexSet::generic(n * n));
  return w;
}

WordSet WordSet::from_words(int n, const std::vector<std::uint64_t>& words) {
  WordSet w(n);
  for (auto x : words) {
    if (x >> (n * n)) throw Error(Errc::PositionOutOfRange, "word " + std::to_string(x) + " has bits beyond n^2");
    w.insert(x);
  }
  return w;
}

BigInt line_count(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be positive");
  BigInt total = 0;
  BigInt binom = 1;
  for (int x = 1; x <= n; ++x) {
    binom = binom * (n - x + 1) / x;
    total += binom * (BigInt(1) << (n * n - x * x));
  }
  return total;
}

LineEnumerator::LineEnumerator(int n) : n_(n) {
  check_side(n);
  subsets_ = line_subsets(n);
}

std::optional<PolyLine> LineEnumerator::next() {
  const std::uint64_t all = (std::uint64_t{1} << (n_ * n_)) - 1;
  while (at_ < subsets_.size()) {
    const std::uint64_t free = all & ~square_mask(n_, subsets_[at_]);
    if (!started_) {
      started_ = true;
      fixed_ = 0;
      return PolyLine{n_, subsets_[at_], 0};
    }
    fixed_ = ((fixed_ | ~free) + 1) & free;
    if (fixed_ != 0) return PolyLine{n_, subsets_[at_], fixed_};
    ++at_;
    started_ = false;
  }
  return std::nullopt;
}

std::optional<PolyLine> find_line(const WordSet& A) {
  const int n = A.n();
  const auto members = A.members();
  // members ascending give the fixed parts ascending
  for (auto X : line_subsets(n)) {
    const std::uint64_t M = square_mask(n, X);
    for (auto a : members)
      if ((a & M) == 0 && A.contains(a | M)) return PolyLine{n, X, a};
  }
  return std::nullopt;
}

std::uint64_t square_readout(int n, std::uint64_t word) {
  const auto sp = EdgeIndexSet::pairs_loops(n);
  std::uint64_t out = 0;
  for (int p = 0; p < sp.size(); ++p) {
    const auto k = sp.key(p);
    out |= ((word >> square_position(n, k.lo, k.hi)) & 1u) << p;
  }
  return out;
}

std::uint64_t symmetric_word(int n, std::uint64_t point) {
  const auto sp = EdgeIndexSet::pairs_loops(n);
  std::uint64_t out = 0;
  for (int p = 0; p < sp.size(); ++p)
    if ((point >> p) & 1u) {
      const auto k = sp.key(p);
      out |= std::uint64_t{1} << square_position(n, k.lo, k.hi);
      out |= std::uint64_t{1} << square_position(n, k.hi, k.lo);
    }
  return out;
}

WordSet code_to_word_set(const CodeFamily& fam) {
  if (fam.space().kind() != IndexKind::PairsLoops) throw Error(Errc::SpaceMismatch, "expected PairsLoops(n), got " + fam.space().describe());
  const int n = fam.space().n();
  WordSet D(n);
  // lower-triangle bits are free
  std::uint64_t lower = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j < i; ++j) lower |= std::uint64_t{1} << square_position(n, i, j);
  for (auto g : fam.members()) {
    const std::uint64_t base = symmetric_word(n, g) & ~lower;
    std::uint64_t f = 0;
    do {
      D.insert(base | f);
      f = ((f | ~lower) + 1) & lower;
    } while (f != 0);
  }
  return D;
}

WordSet symmetric_words(int n) {
  return symmetric_lift(CodeFamily::full(EdgeIndexSet::pairs_loops(n)));
}

WordSet symmetric_lift(const CodeFamily& fam) {
  if (fam.space().kind() != IndexKind::PairsLoops) throw Error(Errc::SpaceMismatch, "expected PairsLoops(n), got " + fam.space().describe());
  const int n = fam.space().n();
  WordSet B(n);
  for (auto g : fam.members()) B.insert(symmetric_word(n, g));
  return B;
}

CodeFamily word_set_to_code(const WordSet& B) {
  const int n = B.n();
  CodeFamily out(EdgeIndexSet::pairs_loops(n));
  for (auto x : B.members()) {
    if (!is_symmetric_word(n, x)) throw Error(Errc::NotSymmetric, "word " + std::to_string(x));
    out.insert(square_readout(n, x));
  }
  return out;
}

Dyadic symmetric_density(const WordSet& B) {
  const int n = B.n();
  std::uint64_t c = 0;
  for (auto x : B.members())
    if (is_symmetric_word(n, x)) ++c;
  return Dyadic(BigInt(c), n * (n + 1) / 2);
}

ConcentrationResult conditional_concentration(const CodeFamily& A, const std::vector<std::vector<int>>& blocks,
                                              const Rational& eps) {
  const int dim = A.dimension();
  if (dim > 20) throw Error(Errc::TooLarge, "index budget is 20, got " + std::to_string(dim));
  if (blocks.empty()) throw Error(Errc::EmptyInput, "no blocks");
  if (eps <= 0 || eps > 1) throw Error(Errc::InvalidArgument, "eps must lie in (0, 1]");
  std::uint64_t seen = 0;
  std::size_t m = 0;
  for (const auto& b : blocks) {
    if (b.empty()) throw Error(Errc::EmptyInput, "empty block");
    for (int p : b) {
      if (p < 0 || p >= dim) throw Error(Errc::PositionOutOfRange, "index " + std::to_string(p));
      if ((seen >> p) & 1u) throw Error(Errc::InvalidArgument, "blocks overlap at " + std::to_string(p));
      seen |= std::uint64_t{1} << p;
    }
    m = std::max(m, b.size());
  }

  ConcentrationResult r;
  r.hypothesis_met = Rational(BigInt(blocks.size())) * eps * eps >= Rational(BigInt(1) << (m + 1));
  const auto members = A.members();
  const BigInt total(members.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    std::vector<std::uint64_t> counts(std::size_t{1} << b.size(), 0);
    for (auto a : members) ++counts[gather(a, b)];
    // |A n S_x| / 2^(dim - |D|) - |A| / 2^dim
    Rational worst = 0;
    for (auto c : counts) {
      const Rational dev = abs(Rational(BigInt(c) * (BigInt(1) << b.size()) - total, BigInt(1) << dim));
      if (dev > worst) worst = dev;
    }
    r.max_deviation.push_back(worst);
    if (!r.i0 && worst <= eps) r.i0 = i;
  }
  return r;
}

SymmetricReduction symmetric_reduction(const WordSet& A, int n1) {
  const int n = A.n();
  if (n1 < 1 || n1 > n) throw Error(Errc::InvalidArgument, "need 1 <= n1 <= n");
  SymmetricReduction r;
  r.n1 = n1;
  const int ell = n / n1;
  for (int i = 0; i < ell; ++i) {
    std::vector<int> block;
    for (int a = 1; a <= n1; ++a)
      for (int b = 1; b <= n1; ++b) block.push_back(square_position(n, i * n1 + a, i * n1 + b));
    r.blocks.push_back(std::move(block));
  }
  const Rational eps = A.density().to_rational() / 2;
  if (eps > 0) {
    r.concentration = conditional_concentration(A.family(), r.blocks, eps);
    if (r.concentration.i0) {
      r.block = *r.concentration.i0;
    } else {
      const auto& dev = r.concentration.max_deviation;
      r.block = static_cast<std::size_t>(std::min_element(dev.begin(), dev.end()) - dev.begin());
    }
  }

  const auto& D = r.blocks[r.block];
  const std::uint64_t dmask = mask_of(D);
  const int base = static_cast<int>(r.block) * n1;
  // block-local word z in F_2^{[n1]^2} placed on D
  const auto place = [&](std::uint64_t z) {
    std::uint64_t out = 0;
    for (int a = 1; a <= n1; ++a)
      for (int b = 1; b <= n1; ++b)
        if ((z >> square_position(n1, a, b)) & 1u) out |= std::uint64_t{1} << square_position(n, base + a, base + b);
    return out;
  };
  std::map<std::uint64_t, std::uint64_t> hits;
  std::uint64_t hit_total = 0;
  for (auto a : A.members()) {
    std::uint64_t z = 0;
    for (int p = 0; p < n1 * n1; ++p) z |= ((a >> D[static_cast<std::size_t>(p)]) & 1u) << p;
    if (!is_symmetric_word(n1, z)) continue;
    ++hits[a & ~dmask];
    ++hit_total;
  }
  const int sym_exp = n1 * (n1 + 1) / 2;
  const int y_exp = n * n - n1 * n1;
  r.average = Rational(BigInt(hit_total), BigInt(1) << (y_exp + sym_exp));
  std::uint64_t best = 0;
  for (const auto& [y, c] : hits)
    if (c > best) {
      best = c;
      r.y0 = y;
    }
  r.achieved = Rational(BigInt(best), BigInt(1) << sym_exp);

  r.B = WordSet(n1);
  const auto sym = symmetric_words(n1);
  for (auto z : sym.members())
    if (A.contains(r.y0 | place(z))) r.B.insert(z);
  r.code = word_set_to_code(r.B);
  return r;
}

}  // namespace f2lab
