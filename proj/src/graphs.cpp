#include "f2lab/graphs.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

namespace f2lab {

Graph::Graph(EdgeIndexSet space, Bits bits) : space_(space), bits_(bits) {
  if (space.kind() == IndexKind::Generic)
    throw Error(Errc::InvalidArgument, "a graph needs a Pairs or PairsLoops space");
  if (bits.bit_width() > static_cast<std::size_t>(space.size()))
    throw Error(Errc::PositionOutOfRange, "bit outside " + space.describe());
}

Graph Graph::from_edges(EdgeIndexSet space, const std::vector<std::vector<int>>& edges) {
  Bits b;
  for (const auto& e : edges) b.set(static_cast<std::size_t>(space.position(e)));
  return Graph(space, b);
}

bool Graph::has_loop() const {
  if (!space_.has_loops()) return false;
  bool found = false;
  bits_.for_each_set([&](std::size_t p) { found = found || space_.key(static_cast<int>(p)).is_loop(); });
  return found;
}

std::uint64_t Graph::vertex_mask() const {
  std::uint64_t m = 0;
  bits_.for_each_set([&](std::size_t p) {
    const IndexKey k = space_.key(static_cast<int>(p));
    m |= std::uint64_t{1} << (k.lo - 1);
    m |= std::uint64_t{1} << (k.hi - 1);
  });
  return m;
}

std::vector<IndexKey> Graph::edges() const {
  std::vector<IndexKey> out;
  bits_.for_each_set([&](std::size_t p) { out.push_back(space_.key(static_cast<int>(p))); });
  return out;
}

Graph symmetric_difference(const Graph& a, const Graph& b) {
  if (!(a.space() == b.space()))
    throw Error(Errc::SpaceMismatch, a.space().describe() + " vs " + b.space().describe());
  return Graph(a.space(), a.bits() ^ b.bits());
}

namespace {

struct LocalGraph {
  int k = 0;
  std::array<std::uint16_t, kMaxCanonicalVertices> adj{};
  std::array<bool, kMaxCanonicalVertices> loop{};
};

LocalGraph localize(const Graph& g) {
  const std::uint64_t mask = g.vertex_mask();
  const int k = std::popcount(mask);
  if (k > kMaxCanonicalVertices)
    throw Error(Errc::TooManyVertices, std::to_string(k) + " spanning vertices (limit " +
                                           std::to_string(kMaxCanonicalVertices) + ")");
  std::array<int, 64> local{};
  int next = 0;
  for (int v = 0; v < 64; ++v)
    if ((mask >> v) & 1u) local[static_cast<std::size_t>(v)] = next++;
  LocalGraph lg;
  lg.k = k;
  for (const IndexKey& e : g.edges()) {
    const int a = local[static_cast<std::size_t>(e.lo - 1)];
    const int b = local[static_cast<std::size_t>(e.hi - 1)];
    if (a == b) {
      lg.loop[static_cast<std::size_t>(a)] = true;
    } else {
      lg.adj[static_cast<std::size_t>(a)] |= static_cast<std::uint16_t>(1u << b);
      lg.adj[static_cast<std::size_t>(b)] |= static_cast<std::uint16_t>(1u << a);
    }
  }
  return lg;
}

// Labelings are restricted to those listing vertices by nonincreasing
// (loop, degree) signature; the form is the lexicographically largest
// column-by-column adjacency code among them.
class Canonizer {
 public:
  explicit Canonizer(const LocalGraph& g) : g_(g) {
    for (int v = 0; v < g.k; ++v)
      sig_[static_cast<std::size_t>(v)] =
          (g.loop[static_cast<std::size_t>(v)] ? 0x80 : 0) | std::popcount(g.adj[static_cast<std::size_t>(v)]);
    std::array<int, kMaxCanonicalVertices> order{};
    std::iota(order.begin(), order.begin() + g.k, 0);
    std::sort(order.begin(), order.begin() + g.k,
              [&](int a, int b) { return sig_[static_cast<std::size_t>(a)] > sig_[static_cast<std::size_t>(b)]; });
    for (int p = 0; p < g.k; ++p) slot_sig_[static_cast<std::size_t>(p)] = sig_[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])];
  }

  CanonicalForm run() {
    search(0, 0);
    CanonicalForm f;
    f.bytes.push_back(static_cast<std::uint8_t>(g_.k));
    for (int p = 0; p < g_.k; ++p) f.bytes.push_back(static_cast<std::uint8_t>(slot_sig_[static_cast<std::size_t>(p)]));
    for (int p = 1; p < g_.k; ++p) {
      f.bytes.push_back(static_cast<std::uint8_t>(best_[static_cast<std::size_t>(p)] >> 8));
      f.bytes.push_back(static_cast<std::uint8_t>(best_[static_cast<std::size_t>(p)] & 0xFF));
    }
    return f;
  }

 private:
  // -1, 0, 1 comparing cols_[0..upto] with best_[0..upto]
  int compare_prefix(int upto) const {
    for (int p = 1; p <= upto; ++p) {
      const auto a = cols_[static_cast<std::size_t>(p)], b = best_[static_cast<std::size_t>(p)];
      if (a != b) return a < b ? -1 : 1;
    }
    return 0;
  }

  void search(int pos, std::uint16_t used) {
    if (pos == g_.k) {
      if (!have_best_ || compare_prefix(g_.k - 1) > 0) {
        best_ = cols_;
        have_best_ = true;
      }
      return;
    }
    for (int v = 0; v < g_.k; ++v) {
      if ((used >> v) & 1u) continue;
      if (sig_[static_cast<std::size_t>(v)] != slot_sig_[static_cast<std::size_t>(pos)]) continue;
      std::uint16_t col = 0;
      for (int i = 0; i < pos; ++i)
        if ((g_.adj[static_cast<std::size_t>(v)] >> perm_[static_cast<std::size_t>(i)]) & 1u)
          col |= static_cast<std::uint16_t>(1u << (15 - i));
      perm_[static_cast<std::size_t>(pos)] = v;
      cols_[static_cast<std::size_t>(pos)] = col;
      if (have_best_ && compare_prefix(pos) < 0) continue;
      search(pos + 1, static_cast<std::uint16_t>(used | (1u << v)));
    }
  }

  const LocalGraph& g_;
  std::array<int, kMaxCanonicalVertices> sig_{};
  std::array<int, kMaxCanonicalVertices> slot_sig_{};
  std::array<int, kMaxCanonicalVertices> perm_{};
  std::array<std::uint16_t, kMaxCanonicalVertices> cols_{};
  std::array<std::uint16_t, kMaxCanonicalVertices> best_{};
  bool have_best_ = false;
};

}  // namespace

CanonicalForm canonical_form(const Graph& g) {
  if (g.is_empty()) return CanonicalForm{{0}};
  return Canonizer(localize(g)).run();
}

bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.edge_count() != b.edge_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

ForbiddenFamily::ForbiddenFamily(FamilyKind k, std::vector<Graph> members)
    : kind_(k), members_(std::move(members)) {
  for (const auto& g : members_) {
    if (g.is_empty()) throw Error(Errc::InvalidArgument, "forbidden graphs must be nonempty");
    forms_.push_back(canonical_form(g));
  }
}

ForbiddenFamily ForbiddenFamily::explicit_list(std::vector<Graph> members) {
  if (members.empty()) throw Error(Errc::EmptyInput, "explicit forbidden list is empty");
  return ForbiddenFamily(FamilyKind::ExplicitList, std::move(members));
}

bool ForbiddenFamily::loopless_even() const {
  if (kind_ == FamilyKind::CliquesLooped) return false;
  if (kind_ == FamilyKind::Cliques) return false;  // K_2 has one edge
  return std::all_of(members_.begin(), members_.end(),
                     [](const Graph& g) { return !g.has_loop() && g.edge_count() % 2 == 0; });
}

std::string ForbiddenFamily::describe() const {
  switch (kind_) {
    case FamilyKind::Cliques: return "cliques";
    case FamilyKind::CliquesLooped: return "cliques-looped";
    case FamilyKind::ExplicitList: return "list(" + std::to_string(members_.size()) + ")";
  }
  return "?";
}

bool is_isomorphic_to_member(const Graph& g, const ForbiddenFamily& fam) {
  if (g.is_empty()) return false;
  switch (fam.kind()) {
    case FamilyKind::Cliques: {
      if (g.has_loop()) return false;
      const auto k = static_cast<std::size_t>(std::popcount(g.vertex_mask()));
      return k >= 2 && g.edge_count() == k * (k - 1) / 2;
    }
    case FamilyKind::CliquesLooped: {
      const auto k = static_cast<std::size_t>(std::popcount(g.vertex_mask()));
      return g.edge_count() == k * (k + 1) / 2;
    }
    case FamilyKind::ExplicitList: {
      const auto mask = g.vertex_mask();
      bool candidate = false;
      for (const auto& h : fam.members())
        candidate = candidate || (h.edge_count() == g.edge_count() &&
                                  std::popcount(h.vertex_mask()) == std::popcount(mask));
      if (!candidate) return false;
      const CanonicalForm f = canonical_form(g);
      return std::find(fam.forms().begin(), fam.forms().end(), f) != fam.forms().end();
    }
  }
  return false;
}

namespace {

void place_member(const EdgeIndexSet& space, const Graph& h, std::vector<Bits>& out) {
  if (h.has_loop() && !space.has_loops()) return;
  std::vector<int> verts;
  const std::uint64_t mask = h.vertex_mask();
  for (int v = 0; v < 64; ++v)
    if ((mask >> v) & 1u) verts.push_back(v + 1);
  const int k = static_cast<int>(verts.size());
  const int n = space.n();
  if (k > n) return;
  std::vector<int> local(65, -1);
  for (int i = 0; i < k; ++i) local[static_cast<std::size_t>(verts[static_cast<std::size_t>(i)])] = i;
  std::vector<std::pair<int, int>> edges;
  for (const IndexKey& e : h.edges())
    edges.emplace_back(local[static_cast<std::size_t>(e.lo)], local[static_cast<std::size_t>(e.hi)]);

  // all injective maps [k] -> [n]
  std::vector<int> image(static_cast<std::size_t>(k));
  std::vector<bool> taken(static_cast<std::size_t>(n) + 1, false);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == k) {
      Bits b;
      for (auto [a, c] : edges)
        b.set(static_cast<std::size_t>(space.position(image[static_cast<std::size_t>(a)], image[static_cast<std::size_t>(c)])));
      out.push_back(b);
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (taken[static_cast<std::size_t>(v)]) continue;
      taken[static_cast<std::size_t>(v)] = true;
      image[static_cast<std::size_t>(i)] = v;
      self(self, i + 1);
      taken[static_cast<std::size_t>(v)] = false;
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<Bits> forbidden_differences(const EdgeIndexSet& space, const ForbiddenFamily& fam) {
  if (space.kind() == IndexKind::Generic)
    throw Error(Errc::InvalidArgument, "forbidden differences need a graph space");
  std::vector<Bits> out;
  const int n = space.n();
  if (fam.kind() != FamilyKind::ExplicitList && n > 24)
    throw Error(Errc::TooLarge, "clique placements on " + std::to_string(n) + " vertices");
  switch (fam.kind()) {
    case FamilyKind::Cliques:
      for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
        if (std::popcount(s) < 2) continue;
        Bits b = space.indices_within(s);
        if (space.has_loops())
          for (int v = 1; v <= n; ++v)
            if ((s >> (v - 1)) & 1u) b.set(static_cast<std::size_t>(space.position(v, v)), false);
        out.push_back(b);
      }
      break;
    case FamilyKind::CliquesLooped:
      if (!space.has_loops()) break;
      for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) out.push_back(space.indices_within(s));
      break;
    case FamilyKind::ExplicitList:
      for (const auto& h : fam.members()) place_member(space, h, out);
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Graph complete_graph(EdgeIndexSet space, int r) {
  Bits b;
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) b.set(static_cast<std::size_t>(space.position(i, j)));
  return Graph(space, b);
}

Graph complete_looped_graph(EdgeIndexSet space, int r) {
  Bits b = complete_graph(space, r).bits();
  for (int i = 1; i <= r; ++i) b.set(static_cast<std::size_t>(space.position(i, i)));
  return Graph(space, b);
}

Graph path_graph(EdgeIndexSet space, int edges) {
  Bits b;
  for (int i = 1; i <= edges; ++i) b.set(static_cast<std::size_t>(space.position(i, i + 1)));
  return Graph(space, b);
}

}  // namespace f2lab
