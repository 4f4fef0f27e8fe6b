#include "f2lab/uniformity.hpp"

#include "f2lab/error.hpp"
#include "f2lab/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace f2lab {

std::vector<std::int64_t> walsh_counts(const CodeFamily& fam) {
  std::vector<std::int64_t> w(fam.point_count(), 0);
  for (std::uint64_t x = 0; x < w.size(); ++x) w[x] = fam.contains(x) ? 1 : 0;
  kernels::parallel::walsh_butterfly(std::span<std::int64_t>(w));
  return w;
}

FourierPeak fourier_peak(const CodeFamily& fam) {
  const auto w = walsh_counts(fam);
  FourierPeak p;
  std::int64_t best = 0;
  for (std::uint64_t xi = 1; xi < w.size(); ++xi)
    if (std::abs(w[xi]) > best) {
      best = std::abs(w[xi]);
      p.xi = xi;
      p.count = w[xi];
    }
  p.linf = Dyadic(BigInt(best), fam.dimension());
  return p;
}

UniformityReport uniformity_report(const CodeFamily& fam, const std::vector<int>& orders) {
  UniformityReport r;
  r.density = fam.density();
  r.linf_fourier = fourier_peak(fam).linf;
  const int dim = fam.dimension();
  std::optional<ValueTable> f;
  for (int d : orders) {
    GowersMethod method;
    if (d == 2 && gowers_supported(dim, d, GowersMethod::Spectral))
      method = GowersMethod::Spectral;
    else if (gowers_supported(dim, d, GowersMethod::Recursive))
      method = GowersMethod::Recursive;
    else if (gowers_supported(dim, d, GowersMethod::Naive))
      method = GowersMethod::Naive;
    else
      throw Error(Errc::BudgetExceeded, "U_" + std::to_string(d) + " on N = " + std::to_string(dim));
    if (!f) f = fam.balanced();
    r.gowers[d] = gowers_norm(*f, d, method);
  }
  return r;
}

std::optional<MonochromaticSet> monochromatic_set(const GraphPoint& G0, int m) {
  if (G0.space.kind() != IndexKind::Pairs) throw Error(Errc::SpaceMismatch, "G0 must live on Pairs(n)");
  if (m < 2) throw Error(Errc::InvalidArgument, "need m >= 2");
  const int n = G0.space.n();
  if (m > n) return std::nullopt;
  BitGraph g(n), h(n);
  for (int p = 0; p < G0.space.size(); ++p) {
    const auto k = G0.space.key(p);
    (G0.bits.test(static_cast<std::size_t>(p)) ? g : h).add_edge(k.lo - 1, k.hi - 1);
  }
  const auto search = [&](const BitGraph& graph) {
    std::uint64_t nodes = 0;
    bool exhausted = false;
    auto s = lex_least_independent_set(graph, m, nodes, MisLimits{}, exhausted);
    if (exhausted) throw Error(Errc::BudgetExceeded, "monochromatic set search");
    if (s)
      for (int& v : *s) ++v;
    return s;
  };
  if (auto s = search(g)) return MonochromaticSet{*s, BoostCase::Disjoint};
  if (auto s = search(h)) return MonochromaticSet{*s, BoostCase::Contained};
  return std::nullopt;
}

namespace {

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

}  // namespace

BoostResult fourier_boost(const CodeFamily& fam, const ForbiddenFamily& forb, int m) {
  const auto& sp = fam.space();
  if (sp.kind() != IndexKind::Pairs) throw Error(Errc::SpaceMismatch, "fourier_boost needs a family over Pairs(n)");
  const int n = sp.n(), N = sp.size();
  if (m < 2 || m > n) throw Error(Errc::InvalidArgument, "need 2 <= m <= n");
  if (!forb.loopless_even()) throw Error(Errc::ParityViolation, "forbidden graphs must be loopless with even edge counts");
  if (auto v = find_violation(fam, forb, CodeKind::Code))
    throw Error(Errc::NotACode, "members " + std::to_string(v->smaller) + " and " + std::to_string(v->larger));

  BoostResult out;
  const auto peak = fourier_peak(fam);
  out.linf = peak.linf;
  if (peak.count == 0) {
    out.miss = BoostMiss::ZeroSpectrum;
    return out;
  }
  const std::uint64_t g0 = peak.xi;
  const GraphPoint G0(sp, Bits::from_word(g0));
  const auto mono = monochromatic_set(G0, m);
  if (!mono) {
    out.miss = BoostMiss::NoMonochromaticSet;
    return out;
  }

  const auto members = fam.members();
  std::uint64_t c[2] = {0, 0};
  for (auto z : members) ++c[parity(z & g0)];
  const int i0 = c[0] >= c[1] ? 0 : 1;

  std::uint64_t vmask = 0;
  for (int v : mono->A) vmask |= std::uint64_t{1} << (v - 1);
  const std::uint64_t amask = sp.indices_within(vmask).to_index();

  // sections V_x indexed by the outside part x
  std::map<std::uint64_t, std::uint64_t> counts;
  for (auto z : members)
    if (parity(z & g0) == i0) ++counts[z & ~amask];
  std::uint64_t x0 = 0, best = 0;
  for (const auto& [x, cnt] : counts)
    if (cnt > best) {
      best = cnt;
      x0 = x;
    }

  const CentralEmbedding sub(n, mono->A, GraphPoint(sp, Bits::from_word(x0)));
  BoostWitness w{.G0 = G0,
                 .linf = peak.linf,
                 .i0 = i0,
                 .cond_even = Rational(BigInt(c[0]), BigInt(1) << (N - 1)),
                 .cond_odd = Rational(BigInt(c[1]), BigInt(1) << (N - 1)),
                 .fourier_at_peak = Rational(BigInt(peak.count), BigInt(1) << N),
                 .A = mono->A,
                 .kind = mono->kind,
                 .x0 = GraphPoint(sp, Bits::from_word(x0)),
                 .subspace = sub,
                 .boosted = CodeFamily(EdgeIndexSet::pairs(m)),
                 .achieved_density = {},
                 .odd_set = GraphPoint(sp, Bits{}),
                 .j0 = 0,
                 .g0 = {},
                 .g1 = {}};
  if (mono->kind == BoostCase::Disjoint) {
    w.boosted = central_preimage_family(sub, fam);
  } else {
    const std::uint64_t e = std::uint64_t{1} << std::countr_zero(amask);
    w.odd_set = GraphPoint(sp, Bits::from_word(e));
    w.j0 = (i0 + std::popcount(x0 & ~g0)) & 1;
    CodeFamily prime(sp);
    for (auto z : members)
      if (parity(z & g0) == i0 && (z & ~amask) == x0) {
        w.g0.push_back(z);
        w.g1.push_back(z ^ e);
        prime.insert(z);
        prime.insert(z ^ e);
      }
    std::sort(w.g1.begin(), w.g1.end());
    w.boosted = central_preimage_family(sub, prime);
  }
  w.achieved_density = w.boosted.density();
  out.witness = std::move(w);
  return out;
}

BoostAudit audit_boost(const CodeFamily& fam, const ForbiddenFamily& forb, const BoostWitness& w) {
  BoostAudit a;
  a.code = is_code(w.boosted, forb, CodeKind::Code);
  a.gain = w.achieved_density >= fam.density() + w.linf;
  const std::uint64_t g0 = w.G0.index();
  const int N = fam.dimension();
  std::uint64_t c[2] = {0, 0};
  for (auto z : fam.members()) ++c[parity(z & g0)];
  const Rational half(1, 2);
  const Rational e0{BigInt(c[0]), BigInt(1) << (N - 1)}, e1{BigInt(c[1]), BigInt(1) << (N - 1)};
  a.split = g0 != 0 && e0 == w.cond_even && e1 == w.cond_odd &&
            fam.density().to_rational() == half * e0 + half * e1 && w.fourier_at_peak == half * e0 - half * e1 &&
            abs(w.fourier_at_peak) == w.linf.to_rational() &&
            (w.i0 == 0 ? e0 : e1) == fam.density().to_rational() + w.linf.to_rational();
  if (w.kind == BoostCase::Contained) {
    for (auto z : w.g0) a.parity = a.parity && parity(z) == w.j0;
    for (auto z : w.g1) a.parity = a.parity && parity(z) == (w.j0 ^ 1);
    for (auto z : w.g1) a.disjoint = a.disjoint && !std::binary_search(w.g0.begin(), w.g0.end(), z);
    for (auto x : w.g0)
      for (auto y : w.g1) a.odd_sums = a.odd_sums && parity(x ^ y) == 1;
  }
  return a;
}

Dyadic LevelSetDecomposition::mu_sum() const {
  Dyadic s;
  for (const auto& l : levels) s += l.mu;
  return s;
}

Rational LevelSetDecomposition::balance() const {
  Rational s = 0;
  const Rational p = density.to_rational();
  for (const auto& l : levels) s += (l.lambda - p) * l.mu.to_rational();
  return s;
}

LevelSetDecomposition level_set_decomposition(const CodeFamily& fam, const NonclassicalPoly& P) {
  if (!(fam.space() == P.space())) throw Error(Errc::SpaceMismatch, fam.space().describe() + " vs " + P.space().describe());
  std::map<DyadicTorus, std::pair<std::uint64_t, std::uint64_t>> tally;
  for (std::uint64_t x = 0; x < fam.point_count(); ++x) {
    auto& t = tally[P(Bits::from_word(x))];
    ++t.first;
    if (fam.contains(x)) ++t.second;
  }
  LevelSetDecomposition dec;
  dec.density = fam.density();
  dec.degree = P.degree();
  const Rational p = dec.density.to_rational();
  const int N = fam.dimension();
  const double pd = to_double(p);
  for (const auto& [v, t] : tally) {
    LevelSet l{v, t.first, t.second, Dyadic(BigInt(t.first), N), Rational(BigInt(t.second), BigInt(t.first)), false};
    l.plus = l.lambda >= p;
    const double weight = (static_cast<double>(t.second) - pd * static_cast<double>(t.first)) / std::ldexp(1.0, N);
    dec.correlation += weight * v.phase();
    dec.levels.push_back(std::move(l));
  }
  return dec;
}

std::optional<int> select_level(LevelSetDecomposition& dec, double delta) {
  dec.i0.reset();
  if (std::abs(dec.correlation) < delta) return std::nullopt;
  const double floor_mu = delta / std::ldexp(1.0, dec.degree + 2);
  for (int i = 0; i < static_cast<int>(dec.levels.size()); ++i) {
    const auto& l = dec.levels[static_cast<std::size_t>(i)];
    if (l.mu.to_double() < floor_mu) continue;
    if (!dec.i0 || l.lambda > dec.levels[static_cast<std::size_t>(*dec.i0)].lambda) dec.i0 = i;
  }
  return dec.i0;
}

bool subspace_density_bound_check(const CodeFamily& fam, const HJEmbedding& e, const Rational& reference) {
  return conditional_density(e, fam).to_rational() <= reference;
}

}  // namespace f2lab
