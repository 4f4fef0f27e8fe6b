#include "f2lab/polynomials.hpp"

#include "f2lab/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <string>

namespace f2lab {

namespace {

void check_monomial(const EdgeIndexSet& space, const Monomial& F) {
  if (F.empty()) throw Error(Errc::MalformedCoefficient, "monomials must be nonempty");
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (F[i] < 0 || F[i] >= space.size())
      throw Error(Errc::PositionOutOfRange, "position " + std::to_string(F[i]) + " outside " + space.describe());
    if (i > 0 && F[i - 1] >= F[i]) throw Error(Errc::MalformedCoefficient, "monomial positions must increase");
  }
}

std::string monomial_string(const Monomial& F) {
  std::string s = "{";
  for (std::size_t i = 0; i < F.size(); ++i) s += (i ? "," : "") + std::to_string(F[i]);
  return s + "}";
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t c = 1;
  for (int i = 1; i <= r; ++i) c = c * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return c;
}

}  // namespace

bool monomial_in(const Monomial& F, const Bits& x) {
  return std::all_of(F.begin(), F.end(), [&](int p) { return x.test(static_cast<std::size_t>(p)); });
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// nonclassical

NonclassicalPoly::NonclassicalPoly(EdgeIndexSet space, int degree_bound, DyadicTorus alpha,
                                   std::map<Monomial, DyadicTorus> coeffs)
    : space_(space), d_(degree_bound), alpha_(alpha) {
  if (d_ < 0) throw Error(Errc::InvalidArgument, "negative degree bound");
  for (auto& [S, lambda] : coeffs) {
    check_monomial(space_, S);
    if (lambda.is_zero()) continue;
    const int size = static_cast<int>(S.size());
    if (size > d_ || lambda.exponent() > d_ - size + 1)
      throw Error(Errc::MalformedCoefficient, "coefficient " + lambda.to_string() + " on " + monomial_string(S) +
                                                  " exceeds the denominator 2^" +
                                                  std::to_string(std::max(0, d_ - size + 1)));
    coeffs_.emplace(S, lambda);
  }
}

DyadicTorus NonclassicalPoly::operator()(const Bits& x) const {
  DyadicTorus v = alpha_;
  for (const auto& [S, lambda] : coeffs_)
    if (monomial_in(S, x)) v += lambda;
  return v;
}

int NonclassicalPoly::degree() const {
  int deg = 0;
  for (const auto& [S, lambda] : coeffs_) deg = std::max(deg, static_cast<int>(S.size()) + lambda.exponent() - 1);
  return deg;
}

std::vector<DyadicTorus> NonclassicalPoly::table() const {
  if (space_.size() > 26) throw Error(Errc::TooLarge, "table of " + space_.describe());
  std::vector<DyadicTorus> t(space_.point_count());
  for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = (*this)(Bits::from_word(x));
  return t;
}

DyadicTorus eval_nonclassical(const NonclassicalPoly& P, const GraphPoint& x) {
  if (!(x.space == P.space())) throw Error(Errc::SpaceMismatch, x.space.describe() + " vs " + P.space().describe());
  return P(x.bits);
}

NonclassicalPoly derivative(const NonclassicalPoly& P, const GraphPoint& h) {
  if (!(h.space == P.space())) throw Error(Errc::SpaceMismatch, h.space.describe() + " vs " + P.space().describe());
  // (x+h)(e) = 1 - x(e) on the support of h, so P(x+h) expands monomial-wise
  std::map<Monomial, DyadicTorus> out;
  DyadicTorus constant;
  for (const auto& [S, lambda] : P.coeffs()) {
    Monomial fixed, flipped;
    for (int e : S) (h.bits.test(static_cast<std::size_t>(e)) ? flipped : fixed).push_back(e);
    if (flipped.empty()) continue;  // cancels against P(x)
    out[S] += -lambda;
    const std::uint64_t subsets = std::uint64_t{1} << flipped.size();
    for (std::uint64_t u = 0; u < subsets; ++u) {
      Monomial T = fixed;
      for (std::size_t i = 0; i < flipped.size(); ++i)
        if ((u >> i) & 1u) T.push_back(flipped[i]);
      std::sort(T.begin(), T.end());
      const DyadicTorus term = (std::popcount(u) & 1) ? -lambda : lambda;
      if (T.empty())
        constant += term;
      else
        out[T] += term;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  int deg = 0;
  for (const auto& [S, lambda] : out) deg = std::max(deg, static_cast<int>(S.size()) + lambda.exponent() - 1);
  return NonclassicalPoly(P.space(), deg, constant, std::move(out));
}

std::vector<DyadicTorus> derivative(std::span<const DyadicTorus> table, std::uint64_t h) {
  if (h >= table.size()) throw Error(Errc::SpaceMismatch, "direction outside the table");
  std::vector<DyadicTorus> out(table.size());
  for (std::uint64_t x = 0; x < table.size(); ++x) out[x] = table[x ^ h] - table[x];
  return out;
}

// integer polynomials

IntegerPoly::IntegerPoly(EdgeIndexSet space, int k, int degree_bound, std::uint64_t alpha,
                         std::map<Monomial, std::uint64_t> coeffs)
    : space_(space), k_(k), d_(degree_bound) {
  if (k_ < 1 || k_ > 62) throw Error(Errc::InvalidArgument, "modulus exponent k must be in [1, 62]");
  if (d_ < 0) throw Error(Errc::InvalidArgument, "negative degree bound");
  alpha_ = alpha & modulus_mask();
  for (auto& [F, lambda] : coeffs) {
    check_monomial(space_, F);
    const std::uint64_t v = lambda & modulus_mask();
    if (v == 0) continue;
    if (static_cast<int>(F.size()) > d_)
      throw Error(Errc::MalformedCoefficient, monomial_string(F) + " exceeds the degree bound " + std::to_string(d_));
    coeffs_.emplace(F, v);
  }
}

std::uint64_t IntegerPoly::coefficient(const Monomial& F) const {
  const auto it = coeffs_.find(F);
  return it == coeffs_.end() ? 0 : it->second;
}

std::uint64_t IntegerPoly::operator()(const Bits& x) const {
  std::uint64_t v = alpha_;
  for (const auto& [F, lambda] : coeffs_)
    if (monomial_in(F, x)) v += lambda;
  return v & modulus_mask();
}

int IntegerPoly::degree() const {
  int deg = 0;
  for (const auto& [F, lambda] : coeffs_) deg = std::max(deg, static_cast<int>(F.size()));
  return deg;
}

std::vector<std::uint64_t> IntegerPoly::table() const {
  if (space_.size() > 26) throw Error(Errc::TooLarge, "table of " + space_.describe());
  std::vector<std::uint64_t> t(space_.point_count());
  for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = (*this)(Bits::from_word(x));
  return t;
}

IntegerPoly integer_poly_from_table(EdgeIndexSet space, int k, std::span<const std::uint64_t> values) {
  const int N = space.size();
  if (N > 24) throw Error(Errc::TooLarge, "Moebius inversion for N = " + std::to_string(N));
  if (values.size() != (std::uint64_t{1} << N)) throw Error(Errc::SpaceMismatch, "table size");
  std::vector<std::uint64_t> c(values.begin(), values.end());
  for (int b = 0; b < N; ++b)
    for (std::uint64_t x = 0; x < c.size(); ++x)
      if ((x >> b) & 1u) c[x] -= c[x ^ (std::uint64_t{1} << b)];
  const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  std::map<Monomial, std::uint64_t> coeffs;
  int deg = 0;
  for (std::uint64_t x = 1; x < c.size(); ++x) {
    if ((c[x] & mask) == 0) continue;
    Monomial F;
    for (int b = 0; b < N; ++b)
      if ((x >> b) & 1u) F.push_back(b);
    deg = std::max(deg, static_cast<int>(F.size()));
    coeffs.emplace(std::move(F), c[x]);
  }
  return IntegerPoly(space, k, deg, c[0], std::move(coeffs));
}

IntegerForm to_integer_poly(const NonclassicalPoly& P) {
  const int d = P.degree_bound();
  if (d < 1) throw Error(Errc::InvalidArgument, "degree bound must be at least 1");
  std::map<Monomial, std::uint64_t> coeffs;
  for (const auto& [S, lambda] : P.coeffs()) {
    const int limit = d - static_cast<int>(S.size()) + 1;
    if (lambda.exponent() > limit)
      throw Error(Errc::MalformedCoefficient, "denominator of " + lambda.to_string() + " exceeds 2^" +
                                                  std::to_string(limit));
    coeffs.emplace(S, lambda.numerator() << (d - lambda.exponent()));
  }
  return {IntegerPoly(P.space(), d, d, 0, std::move(coeffs)), P.alpha()};
}

IntegerPoly restrict_to_hj(const IntegerPoly& Q, const HJEmbedding& e) {
  if (!(Q.space() == e.codomain()))
    throw Error(Errc::SpaceMismatch, Q.space().describe() + " vs " + e.codomain().describe());
  std::vector<int> owner(static_cast<std::size_t>(Q.space().size()), -1);
  for (std::size_t q = 0; q < e.var_sets().size(); ++q)
    e.var_sets()[q].for_each_set([&](std::size_t p) { owner[p] = static_cast<int>(q); });
  const Bits& c = e.constant().bits;
  std::uint64_t alpha = Q.alpha();
  std::map<Monomial, std::uint64_t> out;
  for (const auto& [F, lambda] : Q.coeffs()) {
    Monomial T;
    bool vanishes = false;
    for (int p : F) {
      if (owner[static_cast<std::size_t>(p)] >= 0)
        T.push_back(owner[static_cast<std::size_t>(p)]);
      else if (!c.test(static_cast<std::size_t>(p)))
        vanishes = true;
    }
    if (vanishes) continue;
    if (T.empty()) {
      alpha += lambda;
      continue;
    }
    std::sort(T.begin(), T.end());
    T.erase(std::unique(T.begin(), T.end()), T.end());
    out[T] += lambda;
  }
  return IntegerPoly(e.domain(), Q.k(), Q.degree_bound(), alpha, std::move(out));
}

// types

TypeSignature type_of(const std::vector<std::vector<int>>& F) {
  if (F.empty()) throw Error(Errc::EmptyInput, "type of an empty collection");
  std::vector<int> u;
  for (const auto& p : F) {
    if (p.empty()) throw Error(Errc::InvalidArgument, "members must be nonempty");
    u.insert(u.end(), p.begin(), p.end());
  }
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  TypeSignature t;
  t.ell = static_cast<int>(u.size());
  for (const auto& p : F) {
    std::vector<int> s;
    for (int v : p) s.push_back(static_cast<int>(std::lower_bound(u.begin(), u.end(), v) - u.begin()) + 1);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    t.pattern.push_back(std::move(s));
  }
  std::sort(t.pattern.begin(), t.pattern.end());
  t.pattern.erase(std::unique(t.pattern.begin(), t.pattern.end()), t.pattern.end());
  return t;
}

std::vector<std::vector<int>> vertex_sets(const EdgeIndexSet& space, const Monomial& F) {
  std::vector<std::vector<int>> out;
  for (int p : F) {
    const IndexKey k = space.key(p);
    if (k.is_loop())
      out.push_back({k.lo});
    else
      out.push_back({k.lo, k.hi});
  }
  return out;
}

TypeSignature type_of(const EdgeIndexSet& space, const Monomial& F) { return type_of(vertex_sets(space, F)); }

bool is_canonical_in(const IntegerPoly& Q, const std::vector<int>& X) {
  std::uint64_t xmask = 0;
  for (int v : X) xmask |= std::uint64_t{1} << (v - 1);
  const int size = std::popcount(xmask);
  std::map<TypeSignature, std::pair<std::uint64_t, std::uint64_t>> groups;  // value, count
  for (const auto& [F, lambda] : Q.coeffs()) {
    bool inside = true;
    for (int p : F) {
      const IndexKey k = Q.space().key(p);
      if (!((xmask >> (k.lo - 1)) & 1u) || !((xmask >> (k.hi - 1)) & 1u)) inside = false;
    }
    if (!inside) continue;
    const auto t = type_of(Q.space(), F);
    auto [it, fresh] = groups.try_emplace(t, lambda, 0);
    if (!fresh && it->second.first != lambda) return false;
    ++it->second.second;
  }
  // a type present with a nonzero value must be realized by every ell-subset of X
  for (const auto& [t, vc] : groups)
    if (vc.second != binomial(size, t.ell)) return false;
  return true;
}

std::optional<std::vector<int>> find_canonical_set(const IntegerPoly& Q, int r, CanonicalStrategy strategy,
                                                   std::uint64_t max_candidates) {
  const int n = Q.space().n();
  if (Q.space().kind() != IndexKind::PairsLoops) throw Error(Errc::SpaceMismatch, "PairsLoops space required");
  if (r < 1 || r > n) throw Error(Errc::InvalidArgument, "need 1 <= r <= n");
  if (strategy == CanonicalStrategy::Greedy) {
    std::vector<int> X;
    for (int v = 1; v <= n && static_cast<int>(X.size()) < r; ++v) {
      X.push_back(v);
      if (!is_canonical_in(Q, X)) X.pop_back();
    }
    if (static_cast<int>(X.size()) == r) return X;
    return std::nullopt;
  }
  std::vector<int> X(static_cast<std::size_t>(r));
  std::iota(X.begin(), X.end(), 1);
  for (std::uint64_t tried = 0; tried < max_candidates; ++tried) {
    if (is_canonical_in(Q, X)) return X;
    int i = r - 1;
    while (i >= 0 && X[static_cast<std::size_t>(i)] == n - r + i + 1) --i;
    if (i < 0) break;
    ++X[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) X[static_cast<std::size_t>(j)] = X[static_cast<std::size_t>(j - 1)] + 1;
  }
  return std::nullopt;
}

DistributedType distributed_type(std::vector<std::vector<int>> F, const std::vector<std::vector<int>>& wildcards) {
  for (auto& p : F) std::sort(p.begin(), p.end());
  std::sort(F.begin(), F.end());
  std::set<int> u;
  for (const auto& p : F) u.insert(p.begin(), p.end());
  std::set<int> wild;
  for (const auto& w : wildcards) wild.insert(w.begin(), w.end());
  for (int v : u)
    if (!wild.count(v)) throw Error(Errc::OutsideWildcards, "vertex " + std::to_string(v) + " is in no wildcard set");
  DistributedType t;
  for (const auto& w : wildcards) {
    std::vector<int> local;
    for (int v : w)
      if (u.count(v)) local.push_back(v);
    std::sort(local.begin(), local.end());
    std::vector<std::vector<int>> per;
    for (const auto& p : F) {
      std::vector<int> idx;
      for (std::size_t r = 0; r < local.size(); ++r)
        if (std::find(p.begin(), p.end(), local[r]) != p.end()) idx.push_back(static_cast<int>(r) + 1);
      per.push_back(std::move(idx));
    }
    t.dsg.push_back(static_cast<int>(local.size()));
    t.dlp.push_back(std::move(local));
    t.dt.push_back(std::move(per));
  }
  return t;
}

std::vector<Monomial> hitting_set(const HJEmbedding& e, const Monomial& T, int d) {
  // F = A u B: A inside the var sets of T meeting each of them, B inside const(e)
  std::vector<int> a_pool, b_pool;
  for (int q : T) {
    if (q < 0 || q >= static_cast<int>(e.var_sets().size())) throw Error(Errc::PositionOutOfRange, "T outside domain");
    e.var_sets()[static_cast<std::size_t>(q)].for_each_set([&](std::size_t p) { a_pool.push_back(static_cast<int>(p)); });
  }
  e.constant().bits.for_each_set([&](std::size_t p) { b_pool.push_back(static_cast<int>(p)); });
  std::vector<int> owner(static_cast<std::size_t>(e.codomain().size()), -1);
  for (std::size_t q = 0; q < e.var_sets().size(); ++q)
    e.var_sets()[q].for_each_set([&](std::size_t p) { owner[p] = static_cast<int>(q); });

  std::vector<Monomial> out;
  if (T.empty()) return out;
  std::vector<int> pool = a_pool;
  pool.insert(pool.end(), b_pool.begin(), b_pool.end());
  std::sort(pool.begin(), pool.end());
  Monomial cur;
  const auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (!cur.empty()) {
      std::set<int> hit;
      for (int p : cur)
        if (owner[static_cast<std::size_t>(p)] >= 0) hit.insert(owner[static_cast<std::size_t>(p)]);
      if (hit.size() == T.size() && std::equal(hit.begin(), hit.end(), T.begin())) out.push_back(cur);
    }
    if (static_cast<int>(cur.size()) == d) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

std::map<DistributedType, std::uint64_t> distributed_type_counts(const HJEmbedding& e, const Monomial& T, int d) {
  if (static_cast<int>(T.size()) != d) throw Error(Errc::InvalidArgument, "distributed types need |T| = d");
  std::map<DistributedType, std::uint64_t> counts;
  for (const auto& F : hitting_set(e, T, d)) {
    auto t = distributed_type(vertex_sets(e.codomain(), F), e.wildcards());
    t.dlp.clear();
    ++counts[std::move(t)];
  }
  return counts;
}

IntegerPoly degree_lowering_restrict(const IntegerPoly& Q, const std::vector<int>& X, const HJEmbedding& e) {
  const int d = Q.degree();
  if (d < 1) throw Error(Errc::InvalidArgument, "degree lowering needs deg(Q) >= 1");
  if (!is_canonical_in(Q, X)) throw Error(Errc::NotCanonical, "coefficients are not canonical in X");
  const std::uint64_t block = factorial(d + 1) << Q.k();
  const std::set<int> xs(X.begin(), X.end());
  for (const auto& w : e.wildcards()) {
    if (w.size() != block)
      throw Error(Errc::WrongBlockSize, "wildcard of size " + std::to_string(w.size()) + ", need " +
                                            std::to_string(block));
    for (int v : w)
      if (!xs.count(v)) throw Error(Errc::WrongBlockSize, "wildcard vertex " + std::to_string(v) + " outside X");
  }
  if (!e.is_block()) throw Error(Errc::NotBlock, "wildcard sets are not successive");
  IntegerPoly r = restrict_to_hj(Q, e);
  if (r.degree() >= d)
    throw Error(Errc::DegreeNotLowered, "restricted degree " + std::to_string(r.degree()) + " >= " + std::to_string(d));
  return r;
}

}  // namespace f2lab
