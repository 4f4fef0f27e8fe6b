#include "f2lab/partition.hpp"

#include "f2lab/error.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <string>

namespace f2lab {

namespace {

constexpr std::int64_t kMaxCheckBits = 1 << 18;

Dyadic one() { return Dyadic::integer(1); }

std::int64_t to_int64(const BigInt& v, const char* what) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) throw Error(Errc::TooLarge, what);
  return v.convert_to<std::int64_t>();
}

}  // namespace

Dyadic stage_eta1(int m, const BigInt& s) {
  if (m < 1 || s < 1) throw Error(Errc::InvalidArgument, "need m >= 1 and s >= 1");
  const BigInt sm = s * m;
  const BigInt twice = BigInt(m) * (m + 1) - sm * (sm + 1);
  return Dyadic::power_of_two(to_int64(twice / 2, "eta1 exponent"));
}

bool stage_inequality_holds(const Dyadic& eta1, std::uint64_t ell, const Rational& eta) {
  return (one() - eta1).pow(ell).to_rational() < eta;
}

StageCount stage_count(const Dyadic& eta1, const Rational& eta) {
  if (eta <= 0 || eta > 1) throw Error(Errc::InvalidArgument, "eta must lie in (0, 1]");
  if (eta1 <= Dyadic{} || eta1 > one()) throw Error(Errc::InvalidArgument, "eta1 must lie in (0, 1]");
  if (eta1 == one()) return {BigInt(1), true};
  const long double le = std::log(static_cast<long double>(to_double(eta)));
  const std::int64_t e = eta1.den_exp();
  const long double x = std::ldexp(eta1.num().convert_to<long double>(), static_cast<int>(-std::min<std::int64_t>(e, 20000)));
  if (e > 16000 || x == 0.0L) {
    // log(1 - x) ~ -x: ell ~ log(1/eta) / x
    const long double mant = -le * std::ldexp(1.0L, 60) / eta1.num().convert_to<long double>();
    BigInt ell = BigInt(static_cast<unsigned long long>(mant));
    ell <<= static_cast<unsigned>(e - 60);
    return {ell + 1, false};
  }
  const long double L = le / std::log1p(-x);
  if (!(L < 1e18L)) {
    BigInt ell(static_cast<unsigned long long>(L / 1e9L));
    return {ell * 1'000'000'000 + 1, false};
  }
  std::uint64_t ell = static_cast<std::uint64_t>(std::floor(L)) + 1;
  if (static_cast<long double>(e) * static_cast<long double>(ell) > kMaxCheckBits) return {BigInt(ell), false};
  while (!stage_inequality_holds(eta1, ell, eta)) ++ell;
  while (ell > 1 && stage_inequality_holds(eta1, ell - 1, eta)) --ell;
  return {BigInt(ell), true};
}

PaperParams paper_params(const Rational& eta, int m, int k, int d) {
  if (m < 1 || k < 1 || d < 1) throw Error(Errc::InvalidArgument, "need m, k, d >= 1");
  PaperParams p;
  p.eta = eta;
  p.m = m;
  p.k = k;
  p.d = d;
  BigInt f = 1;
  for (int i = 2; i <= d + 1; ++i) f *= i;
  p.block_size = f << static_cast<unsigned>(k);
  p.eta1 = stage_eta1(m, p.block_size);
  p.ell = stage_count(p.eta1, eta);
  p.r = p.block_size * m * p.ell.ell;
  const BigInt second = p.r + 2 * d - 1;
  p.n1 = "R(" + std::to_string(2 * d) + ", " + second.str() + ", 2^(" + std::to_string(k) + "*2^" +
         std::to_string(2 * d * d + d) + "))";
  return p;
}

// stages

StagePlan::StagePlan(int n, std::vector<int> X, int m, int s, int ell) : n_(n), m_(m), s_(s), ell_(ell) {
  if (m < 1 || s < 1 || ell < 1) throw Error(Errc::InvalidArgument, "need m, s, ell >= 1");
  std::sort(X.begin(), X.end());
  X.erase(std::unique(X.begin(), X.end()), X.end());
  for (int v : X)
    if (v < 1 || v > n) throw Error(Errc::VertexOutOfRange, std::to_string(v));
  const long long need = static_cast<long long>(s) * m * ell;
  if (static_cast<long long>(X.size()) < need)
    throw Error(Errc::InsufficientRoom, "|X| = " + std::to_string(X.size()) + " < s*m*ell = " + std::to_string(need));
  const auto space = EdgeIndexSet::pairs_loops(n);
  for (int j = 0; j < ell; ++j) {
    std::vector<int> Xj(X.begin() + static_cast<long>(j) * s * m, X.begin() + static_cast<long>(j + 1) * s * m);
    std::vector<std::vector<int>> W;
    std::uint64_t vmask = 0;
    for (int i = 0; i < m; ++i) W.emplace_back(Xj.begin() + i * s, Xj.begin() + (i + 1) * s);
    for (int v : Xj) vmask |= std::uint64_t{1} << (v - 1);
    const HJEmbedding e(n, W, GraphPoint(space, Bits{}));
    var_.push_back(e.var_sets());
    block_.push_back(space.indices_within(vmask));
    X_.push_back(std::move(Xj));
    I_.push_back(std::move(W));
  }
}

Dyadic StagePlan::stage_measure(int j) const {
  const Dyadic e1 = eta1();
  return e1 * (one() - e1).pow(static_cast<std::uint64_t>(j));
}

Dyadic StagePlan::leftover_measure() const { return (one() - eta1()).pow(static_cast<std::uint64_t>(ell_)); }

bool StagePlan::constant_pattern(int j, const Bits& x) const {
  for (const Bits& v : var_[static_cast<std::size_t>(j)]) {
    const Bits part = x & v;
    if (part.any() && !(part == v)) return false;
  }
  return true;
}

int StagePlan::stage_of(const Bits& x) const {
  for (int j = 0; j < ell_; ++j)
    if (constant_pattern(j, x)) return j;
  return -1;
}

std::optional<HJEmbedding> StagePlan::subspace_of(const Bits& x) const {
  const int j = stage_of(x);
  if (j < 0) return std::nullopt;
  return HJEmbedding(n_, I_[static_cast<std::size_t>(j)],
                     GraphPoint(EdgeIndexSet::pairs_loops(n_), minus(x, block_[static_cast<std::size_t>(j)])));
}

std::vector<HJEmbedding> StagePlan::stage_subspaces(int j, std::uint64_t max_count) const {
  if (j < 0 || j >= ell_) throw Error(Errc::InvalidArgument, "stage out of range");
  const auto space = EdgeIndexSet::pairs_loops(n_);
  std::vector<int> free;
  for (int p = 0; p < space.size(); ++p)
    if (!block_[static_cast<std::size_t>(j)].test(static_cast<std::size_t>(p))) free.push_back(p);
  if (free.size() > 40) throw Error(Errc::BudgetExceeded, std::to_string(free.size()) + " free positions");
  std::vector<HJEmbedding> out;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << free.size()); ++w) {
    Bits c;
    for (std::size_t b = 0; b < free.size(); ++b)
      if ((w >> b) & 1u) c.set(static_cast<std::size_t>(free[b]));
    bool earlier_free = true;
    for (int i = 0; i < j && earlier_free; ++i) earlier_free = !constant_pattern(i, c);
    if (!earlier_free) continue;
    if (out.size() >= max_count) throw Error(Errc::BudgetExceeded, "more than " + std::to_string(max_count) + " subspaces");
    out.emplace_back(n_, I_[static_cast<std::size_t>(j)], GraphPoint(space, c));
  }
  return out;
}

HJEmbedding compose(const HJEmbedding& outer, const HJEmbedding& inner) {
  if (inner.n() != outer.m()) throw Error(Errc::SpaceMismatch, "inner codomain must be the outer domain");
  std::vector<std::vector<int>> K;
  for (const auto& J : inner.wildcards()) {
    std::vector<int> k;
    for (int u : J) {
      const auto& I = outer.wildcards()[static_cast<std::size_t>(u - 1)];
      k.insert(k.end(), I.begin(), I.end());
    }
    K.push_back(std::move(k));
  }
  return HJEmbedding(outer.n(), std::move(K), GraphPoint(outer.codomain(), outer.apply_bits(inner.constant().bits)));
}

std::string_view partition_status_name(PartitionStatus s) {
  switch (s) {
    case PartitionStatus::Complete: return "Complete";
    case PartitionStatus::CanonicalSetNotFound: return "CanonicalSetNotFound";
    case PartitionStatus::InsufficientRoom: return "InsufficientRoom";
    case PartitionStatus::RecursionBudgetExceeded: return "RecursionBudgetExceeded";
  }
  return "?";
}

namespace {

class Partitioner {
 public:
  Partitioner(const IntegerPoly& Q, const PartitionOptions& o) : Q_(Q), o_(o), N_(Q.space().size()) {}

  PartitionPlan run() {
    recurse(HJEmbedding::identity(Q_.space().n()), Q_, 0);
    plan_.meets_eta = plan_.status == PartitionStatus::Complete && plan_.leftover_measure.to_rational() <= o_.eta;
    return std::move(plan_);
  }

 private:
  Dyadic measure(const HJEmbedding& e) const {
    return Dyadic::power_of_two(e.domain().size() - N_);
  }

  void stop(PartitionStatus s, const HJEmbedding& e, std::string msg) {
    if (plan_.status == PartitionStatus::Complete) {
      plan_.status = s;
      plan_.message = std::move(msg);
    }
    plan_.unresolved_measure += measure(e);
    plan_.unresolved.push_back(e);
  }

  void recurse(const HJEmbedding& e, const IntegerPoly& Qc, int depth) {
    if (Qc.degree() == 0) {
      plan_.pieces.push_back({e, Qc, Qc.alpha(), depth, stage_});
      return;
    }
    if (depth >= o_.max_depth) return stop(PartitionStatus::RecursionBudgetExceeded, e, "depth limit reached");
    const auto& lv = o_.levels[std::min<std::size_t>(static_cast<std::size_t>(depth), o_.levels.size() - 1)];
    int ell = lv.ell;
    if (ell <= 0) {
      const auto c = stage_count(stage_eta1(lv.m, BigInt(lv.s)), o_.eta);
      if (c.ell > 1'000'000) return stop(PartitionStatus::InsufficientRoom, e, "stage count " + c.ell.str());
      ell = c.ell.convert_to<int>();
    }
    const int nc = Qc.space().n();
    const long long r = static_cast<long long>(lv.s) * lv.m * ell;
    if (r > nc)
      return stop(PartitionStatus::InsufficientRoom, e,
                  "need " + std::to_string(r) + " vertices at depth " + std::to_string(depth) + ", have " +
                      std::to_string(nc));
    const auto X = find_canonical_set(Qc, static_cast<int>(r), o_.strategy, o_.max_candidates);
    if (!X) return stop(PartitionStatus::CanonicalSetNotFound, e, "no canonical set of size " + std::to_string(r));
    const StagePlan sp(nc, *X, lv.m, lv.s, ell);

    std::vector<std::vector<HJEmbedding>> stages;
    try {
      const std::uint64_t room = o_.max_pieces > plan_.pieces.size() ? o_.max_pieces - plan_.pieces.size() : 0;
      for (int j = 0; j < ell; ++j) stages.push_back(sp.stage_subspaces(j, room));
    } catch (const Error& err) {
      if (err.code() != Errc::BudgetExceeded) throw;
      return stop(PartitionStatus::RecursionBudgetExceeded, e, err.what());
    }

    StageLogEntry entry{depth, *X, lv.m, lv.s, ell, sp.eta1(), 0, 0};
    const bool lemma_size = BigInt(lv.s) == (BigInt(factorial(Qc.degree() + 1)) << static_cast<unsigned>(Qc.k()));
    plan_.leftover_measure += sp.leftover_measure() * measure(e);
    const std::size_t slot = plan_.log.size();
    plan_.log.push_back(entry);
    for (int j = 0; j < ell; ++j)
      for (const auto& V : stages[static_cast<std::size_t>(j)]) {
        const IntegerPoly R = lemma_size ? degree_lowering_restrict(Qc, *X, V) : restrict_to_hj(Qc, V);
        if (R.degree() >= Qc.degree()) ++plan_.log[slot].degree_not_lowered;
        ++plan_.log[slot].pieces;
        const int saved = stage_;
        if (depth == 0) stage_ = j;
        recurse(compose(e, V), R, depth + 1);
        stage_ = saved;
      }
  }

  const IntegerPoly& Q_;
  const PartitionOptions& o_;
  int N_;
  int stage_ = 0;
  PartitionPlan plan_;
};

}  // namespace

PartitionPlan partition_polynomial(const IntegerPoly& Q, const PartitionOptions& options) {
  if (Q.space().kind() != IndexKind::PairsLoops) throw Error(Errc::SpaceMismatch, "PairsLoops space required");
  if (options.levels.empty()) throw Error(Errc::InvalidArgument, "no partition levels");
  for (const auto& lv : options.levels)
    if (lv.m < 1 || lv.s < 1 || lv.ell < 0) throw Error(Errc::InvalidArgument, "levels need m, s >= 1, ell >= 0");
  if (options.eta <= 0 || options.eta > 1) throw Error(Errc::InvalidArgument, "eta must lie in (0, 1]");
  return Partitioner(Q, options).run();
}

PartitionPlan partition_polynomial_paper(const IntegerPoly& Q, const Rational& eta, int m) {
  PartitionOptions o;
  o.eta = eta;
  if (Q.degree() == 0) return partition_polynomial(Q, o);
  const auto p = paper_params(eta, m, Q.k(), Q.degree());
  if (p.r > Q.space().n())
    throw Error(Errc::InsufficientRoom, "full-size parameters need n >= r = " + p.r.str() + " (and n >= " + p.n1 +
                                            "), have n = " + std::to_string(Q.space().n()));
  o.levels = {PartitionLevel{m, p.block_size.convert_to<int>(), p.ell.ell.convert_to<int>()}};
  return partition_polynomial(Q, o);
}

std::optional<DyadicTorus> NonclassicalPartition::value(const PartitionPiece& piece) const {
  if (!piece.value) return std::nullopt;
  return form.alpha + DyadicTorus(*piece.value, form.q.k());
}

NonclassicalPartition partition_nonclassical(const NonclassicalPoly& P, const PartitionOptions& options) {
  auto form = to_integer_poly(P);
  auto plan = partition_polynomial(form.q, options);
  return {std::move(plan), std::move(form)};
}

PlanAudit audit_plan(const IntegerPoly& Q, const PartitionPlan& plan) {
  const int N = Q.space().size();
  if (N > 26) throw Error(Errc::TooLarge, "audit needs N <= 26");
  PlanAudit a;
  std::vector<std::uint8_t> mark(std::uint64_t{1} << N, 0);
  const auto visit = [&](const HJEmbedding& e, std::uint8_t tag, auto&& per_point) {
    if (!e.is_block()) a.blocks = false;
    const std::uint64_t pts = e.domain().point_count();
    for (std::uint64_t y = 0; y < pts; ++y) {
      const Bits yb = Bits::from_word(y);
      const std::uint64_t z = e.apply_bits(yb).to_index();
      if (mark[z]) {
        if (a.disjoint) a.detail = "point " + std::to_string(z) + " covered twice";
        a.disjoint = false;
      }
      mark[z] = tag;
      per_point(yb, z);
    }
  };
  for (const auto& piece : plan.pieces) {
    visit(piece.embedding, 1, [&](const Bits& y, std::uint64_t z) {
      const std::uint64_t v = Q(Bits::from_word(z));
      if (piece.poly(y) != v) a.restriction_exact = false;
      if (!piece.value || *piece.value != v) a.constant = false;
    });
  }
  std::uint64_t unresolved = 0;
  for (const auto& e : plan.unresolved) visit(e, 2, [&](const Bits&, std::uint64_t) { ++unresolved; });
  a.covered = static_cast<std::uint64_t>(std::count(mark.begin(), mark.end(), std::uint8_t{1}));
  const std::uint64_t left = mark.size() - a.covered - unresolved;
  a.measure_exact = Dyadic(BigInt(left), N) == plan.leftover_measure &&
                    Dyadic(BigInt(unresolved), N) == plan.unresolved_measure;
  if (!a.measure_exact && a.detail.empty())
    a.detail = "uncovered " + std::to_string(left) + "/2^" + std::to_string(N) + " vs " + plan.leftover_measure.to_string();
  return a;
}

}  // namespace f2lab
