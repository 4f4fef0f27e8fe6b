#include "f2lab/subspaces.hpp"

#include "f2lab/error.hpp"

#include <algorithm>
#include <string>

namespace f2lab {

namespace {

void check_vertex(int v, int n) {
  if (v < 1 || v > n) throw Error(Errc::VertexOutOfRange, std::to_string(v) + " not in [" + std::to_string(n) + "]");
}

}  // namespace

CentralEmbedding::CentralEmbedding(int n, std::vector<int> support, GraphPoint constant)
    : n_(n), support_(std::move(support)), constant_(std::move(constant)) {
  const auto cod = codomain();
  if (!(constant_.space == cod)) throw Error(Errc::SpaceMismatch, "constant must live on " + cod.describe());
  for (std::size_t i = 0; i < support_.size(); ++i) {
    check_vertex(support_[i], n_);
    if (i > 0 && support_[i - 1] >= support_[i])
      throw Error(Errc::InvalidEmbedding, "support must be strictly increasing");
  }
  const auto dom = domain();
  map_.resize(static_cast<std::size_t>(dom.size()));
  for (int p = 0; p < dom.size(); ++p) {
    const IndexKey k = dom.key(p);
    const int q = cod.position(support_[static_cast<std::size_t>(k.lo - 1)], support_[static_cast<std::size_t>(k.hi - 1)]);
    map_[static_cast<std::size_t>(p)] = q;
    mask_.set(static_cast<std::size_t>(q));
  }
  if ((constant_.bits & mask_).any())
    throw Error(Errc::InvalidEmbedding, "constant must vanish on the support pairs");
}

Bits CentralEmbedding::apply_bits(const Bits& x) const {
  Bits out = constant_.bits;
  x.for_each_set([&](std::size_t p) {
    if (p >= map_.size()) throw Error(Errc::SpaceMismatch, "point outside the domain");
    out.set(static_cast<std::size_t>(map_[p]));
  });
  return out;
}

GraphPoint CentralEmbedding::apply(const GraphPoint& x) const {
  if (!(x.space == domain())) throw Error(Errc::SpaceMismatch, x.space.describe() + " vs " + domain().describe());
  return GraphPoint(codomain(), apply_bits(x.bits));
}

HJEmbedding::HJEmbedding(int n, std::vector<std::vector<int>> wildcards, GraphPoint constant)
    : n_(n), wildcards_(std::move(wildcards)), constant_(std::move(constant)) {
  const auto cod = codomain();
  if (!(constant_.space == cod)) throw Error(Errc::SpaceMismatch, "constant must live on " + cod.describe());
  std::vector<int> owner(static_cast<std::size_t>(n_) + 1, -1);
  for (std::size_t i = 0; i < wildcards_.size(); ++i) {
    auto& w = wildcards_[i];
    if (w.empty()) throw Error(Errc::InvalidEmbedding, "empty wildcard set");
    std::sort(w.begin(), w.end());
    for (int v : w) {
      check_vertex(v, n_);
      if (owner[static_cast<std::size_t>(v)] >= 0)
        throw Error(Errc::InvalidEmbedding, "wildcard sets overlap at vertex " + std::to_string(v));
      owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    if (i > 0 && wildcards_[i - 1].front() >= w.front())
      throw Error(Errc::InvalidEmbedding, "wildcard minima must increase");
  }
  const auto dom = domain();
  var_.assign(static_cast<std::size_t>(dom.size()), Bits{});
  for (int p = 0; p < cod.size(); ++p) {
    const IndexKey k = cod.key(p);
    const int a = owner[static_cast<std::size_t>(k.lo)], b = owner[static_cast<std::size_t>(k.hi)];
    if (a < 0 || b < 0) continue;
    const int q = dom.position(std::min(a, b) + 1, std::max(a, b) + 1);
    var_[static_cast<std::size_t>(q)].set(static_cast<std::size_t>(p));
    wild_.set(static_cast<std::size_t>(p));
  }
  if ((constant_.bits & wild_).any())
    throw Error(Errc::InvalidEmbedding, "constant must vanish inside the wildcard sets");
}

HJEmbedding HJEmbedding::identity(int n) {
  std::vector<std::vector<int>> w;
  for (int i = 1; i <= n; ++i) w.push_back({i});
  return HJEmbedding(n, std::move(w), GraphPoint(EdgeIndexSet::pairs_loops(n), Bits{}));
}

bool HJEmbedding::is_block() const {
  for (std::size_t i = 1; i < wildcards_.size(); ++i)
    if (wildcards_[i - 1].back() >= wildcards_[i].front()) return false;
  return true;
}

Bits HJEmbedding::linear(const Bits& y) const {
  Bits out;
  y.for_each_set([&](std::size_t q) {
    if (q >= var_.size()) throw Error(Errc::SpaceMismatch, "point outside the domain");
    out |= var_[q];
  });
  return out;
}

GraphPoint HJEmbedding::apply(const GraphPoint& y) const {
  if (!(y.space == domain())) throw Error(Errc::SpaceMismatch, y.space.describe() + " vs " + domain().describe());
  return GraphPoint(codomain(), apply_bits(y.bits));
}

std::optional<Bits> HJEmbedding::preimage(const Bits& z) const {
  const Bits d = z ^ constant_.bits;
  if (minus(d, wild_).any()) return std::nullopt;
  Bits y;
  for (std::size_t q = 0; q < var_.size(); ++q) {
    const Bits part = d & var_[q];
    if (part.none()) continue;
    if (!(part == var_[q])) return std::nullopt;
    y.set(q);
  }
  return y;
}

bool HJEmbedding::in_image(const Bits& z) const { return preimage(z).has_value(); }

std::string HJEmbedding::describe() const {
  std::string s = "HJ(" + std::to_string(n_) + "; ";
  for (std::size_t i = 0; i < wildcards_.size(); ++i) {
    s += i ? " {" : "{";
    for (std::size_t j = 0; j < wildcards_[i].size(); ++j) s += (j ? "," : "") + std::to_string(wildcards_[i][j]);
    s += "}";
  }
  return s + ")";
}

namespace {

template <class E>
CodeFamily preimage_family(const E& e, const CodeFamily& fam) {
  if (!(fam.space() == e.codomain())) throw Error(Errc::SpaceMismatch, fam.space().describe());
  CodeFamily out(e.domain());
  for (std::uint64_t y = 0; y < out.point_count(); ++y)
    if (fam.contains(e.apply_bits(Bits::from_word(y)).to_index())) out.insert(y);
  return out;
}

template <class E>
Dyadic conditional(const E& e, const CodeFamily& fam) {
  if (!(fam.space() == e.codomain())) throw Error(Errc::SpaceMismatch, fam.space().describe());
  std::uint64_t hits = 0;
  for (auto x : fam.members())
    if (e.in_image(Bits::from_word(x))) ++hits;
  return Dyadic(BigInt(hits), e.domain().size());
}

}  // namespace

CodeFamily hj_preimage_family(const HJEmbedding& e, const CodeFamily& fam) { return preimage_family(e, fam); }
CodeFamily central_preimage_family(const CentralEmbedding& e, const CodeFamily& fam) {
  return preimage_family(e, fam);
}
Dyadic conditional_density(const HJEmbedding& e, const CodeFamily& fam) { return conditional(e, fam); }
Dyadic conditional_density(const CentralEmbedding& e, const CodeFamily& fam) { return conditional(e, fam); }

CentralEmbedding central_partition_of_section(int n, std::vector<int> A, const GraphPoint& x) {
  std::sort(A.begin(), A.end());
  for (int v : A) check_vertex(v, n);
  if (A.size() < 2) throw Error(Errc::InvalidArgument, "section support needs at least two vertices");
  return CentralEmbedding(n, std::move(A), x);
}

}  // namespace f2lab
