#include "f2lab/codes.hpp"

#include "f2lab/delsarte.hpp"

#include <algorithm>
#include <bit>

namespace f2lab {

CodeFamily::CodeFamily(EdgeIndexSet space) : space_(space) {
  if (space.size() > kMaxDimension)
    throw Error(Errc::TooLarge, "membership table for N = " + std::to_string(space.size()));
  table_.assign(static_cast<std::size_t>((point_count() + 63) / 64), 0);
}

CodeFamily CodeFamily::full(EdgeIndexSet space) {
  CodeFamily f(space);
  for (std::uint64_t x = 0; x < f.point_count(); ++x) f.insert(x);
  return f;
}

CodeFamily CodeFamily::from_points(EdgeIndexSet space, const std::vector<std::uint64_t>& points) {
  CodeFamily f(space);
  for (auto x : points) {
    if (x >= f.point_count()) throw Error(Errc::PositionOutOfRange, "point " + std::to_string(x));
    f.insert(x);
  }
  return f;
}

CodeFamily CodeFamily::from_table(EdgeIndexSet space, std::vector<std::uint64_t> table) {
  CodeFamily f(space);
  if (table.size() != f.table_.size()) throw Error(Errc::SpaceMismatch, "table length");
  if (f.point_count() < 64 && !table.empty()) table[0] &= (std::uint64_t{1} << f.point_count()) - 1;
  f.table_ = std::move(table);
  for (auto w : f.table_) f.cardinality_ += static_cast<std::uint64_t>(std::popcount(w));
  return f;
}

void CodeFamily::insert(std::uint64_t x) {
  auto& w = table_[x >> 6];
  const std::uint64_t m = std::uint64_t{1} << (x & 63);
  if (!(w & m)) {
    w |= m;
    ++cardinality_;
  }
}

void CodeFamily::erase(std::uint64_t x) {
  auto& w = table_[x >> 6];
  const std::uint64_t m = std::uint64_t{1} << (x & 63);
  if (w & m) {
    w &= ~m;
    --cardinality_;
  }
}

std::vector<std::uint64_t> CodeFamily::members() const {
  std::vector<std::uint64_t> out;
  out.reserve(cardinality_);
  for (std::size_t w = 0; w < table_.size(); ++w) {
    std::uint64_t bits = table_[w];
    while (bits) {
      out.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

ValueTable CodeFamily::indicator() const {
  std::vector<Complex> v(point_count());
  for (std::uint64_t x = 0; x < v.size(); ++x) v[x] = contains(x) ? 1.0 : 0.0;
  return ValueTable(space_, std::move(v));
}

ValueTable CodeFamily::balanced() const {
  const double p = density().to_double();
  std::vector<Complex> v(point_count());
  for (std::uint64_t x = 0; x < v.size(); ++x) v[x] = (contains(x) ? 1.0 : 0.0) - p;
  return ValueTable(space_, std::move(v));
}

std::vector<std::uint64_t> difference_words(const EdgeIndexSet& space, const ForbiddenFamily& forb) {
  if (space.size() > 64) throw Error(Errc::TooLarge, "differences as words need N <= 64");
  std::vector<std::uint64_t> out;
  for (const Bits& b : forbidden_differences(space, forb)) out.push_back(b.to_index());
  return out;
}

std::optional<Violation> find_violation(const CodeFamily& fam, std::span<const std::uint64_t> diffs, CodeKind kind) {
  for (std::uint64_t a : fam.members()) {
    std::optional<std::uint64_t> partner;
    for (std::uint64_t z : diffs) {
      if (kind == CodeKind::HJCode && (a & z)) continue;
      const std::uint64_t b = a ^ z;
      if (b > a && fam.contains(b) && (!partner || b < *partner)) partner = b;
    }
    if (partner) return Violation{a, *partner};
  }
  return std::nullopt;
}

std::optional<Violation> find_violation(const CodeFamily& fam, const ForbiddenFamily& forb, CodeKind kind) {
  const auto diffs = difference_words(fam.space(), forb);
  return find_violation(fam, diffs, kind);
}

bool is_code(const CodeFamily& fam, const ForbiddenFamily& forb, CodeKind kind) {
  return !find_violation(fam, forb, kind).has_value();
}

BitGraph conflict_graph(const EdgeIndexSet& space, std::span<const std::uint64_t> diffs, CodeKind kind) {
  if (space.size() > kMaxSearchDimension)
    throw Error(Errc::TooLarge, "conflict graph on 2^" + std::to_string(space.size()) + " points");
  const std::uint64_t size = std::uint64_t{1} << space.size();
  BitGraph g(static_cast<int>(size));
  for (std::uint64_t x = 0; x < size; ++x)
    for (std::uint64_t z : diffs) {
      if (kind == CodeKind::HJCode && (x & z)) continue;
      g.add_edge(static_cast<int>(x), static_cast<int>(x ^ z));
    }
  return g;
}

namespace {

std::vector<int> to_global(const std::vector<int>& local, const std::vector<int>& comp) {
  std::vector<int> out;
  out.reserve(local.size());
  for (int v : local) out.push_back(comp[static_cast<std::size_t>(v)]);
  return out;
}

}  // namespace

ExtremalResult extremal_search(const EdgeIndexSet& space, const ForbiddenFamily& forb, CodeKind kind,
                               const SearchOptions& options) {
  const auto diffs = difference_words(space, forb);
  return extremal_search(space, diffs, kind, options);
}

ExtremalResult extremal_search(const EdgeIndexSet& space, std::span<const std::uint64_t> diffs, CodeKind kind,
                               const SearchOptions& options) {
  const BitGraph g = conflict_graph(space, diffs, kind);
  const auto comps = g.components();
  ExtremalResult res;
  res.components = static_cast<int>(comps.size());
  MisLimits limits{options.node_budget};
  bool exact = true;

  // Maximum size per component. For Code the graph is a Cayley graph and its
  // components are translates of the one through 0, so only that one is
  // solved, with 0 forced into the set.
  std::vector<int> alpha(comps.size());
  std::vector<std::vector<int>> best(comps.size());
  if (kind == CodeKind::Code) {
    const BitGraph h = g.induced(comps[0]);
    MisHints hints;
    if (space.kind() != IndexKind::Generic && space.size() <= kMaxLpDimension) {
      try {
        res.lp_bound = delsarte_bound(space, diffs).bound;
        hints.upper_bound = static_cast<std::size_t>(res.lp_bound / comps.size());
      } catch (const Error& e) {
        if (e.code() != Errc::InvalidArgument) throw;
      }
    }
    const int target = hints.upper_bound == SIZE_MAX ? h.size() : static_cast<int>(hints.upper_bound);
    for (int k = 0; k < options.local_search_restarts; ++k) {
      auto found = local_search_independent_set(h, {0}, options.local_search_iterations,
                                                 static_cast<std::uint64_t>(k) + 1, target);
      if (found.size() <= hints.incumbent.size()) continue;
      // translate so that 0 is a member; the component through 0 is a subgroup
      const auto shift = static_cast<unsigned>(comps[0][static_cast<std::size_t>(found[0])]);
      for (int& v : found) {
        const int x = static_cast<int>(static_cast<unsigned>(comps[0][static_cast<std::size_t>(v)]) ^ shift);
        v = static_cast<int>(std::lower_bound(comps[0].begin(), comps[0].end(), x) - comps[0].begin());
      }
      std::sort(found.begin(), found.end());
      hints.incumbent = std::move(found);
      if (hints.incumbent.size() >= hints.upper_bound) break;
    }
    MisResult r = maximum_independent_set(h, {0}, limits, hints);
    res.node_count += r.nodes;
    exact = r.exact;
    const auto base = to_global(r.best, comps[0]);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const auto shift = static_cast<unsigned>(comps[c][0]);  // comps[0][0] == 0
      for (int v : base) best[c].push_back(static_cast<int>(static_cast<unsigned>(v) ^ shift));
      std::sort(best[c].begin(), best[c].end());
      alpha[c] = static_cast<int>(r.best.size());
    }
  } else {
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (comps[c].size() == 1) {
        best[c] = comps[c];
        alpha[c] = 1;
        continue;
      }
      MisLimits left{options.node_budget > res.node_count ? options.node_budget - res.node_count : 0};
      MisResult r = maximum_independent_set(g.induced(comps[c]), {}, left);
      res.node_count += r.nodes;
      exact = exact && r.exact;
      best[c] = to_global(r.best, comps[c]);
      alpha[c] = static_cast<int>(r.best.size());
    }
  }

  // Lexicographically least witness: per component, since the include-first
  // rule decides each component independently.
  std::vector<int> members;
  bool lex_least = exact;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    std::vector<int> chosen = best[c];
    if (exact && comps[c].size() > 1) {
      if (options.lex_budget == 0) {
        lex_least = false;
        members.insert(members.end(), chosen.begin(), chosen.end());
        continue;
      }
      bool exhausted = false;
      MisLimits left{options.lex_budget};
      auto lex = lex_least_independent_set(g.induced(comps[c]), alpha[c], res.node_count, left, exhausted);
      if (lex)
        chosen = to_global(*lex, comps[c]);
      else
        lex_least = false;
    }
    members.insert(members.end(), chosen.begin(), chosen.end());
  }
  std::vector<std::uint64_t> pts(members.begin(), members.end());
  res.witness = CodeFamily::from_points(space, pts);
  res.cardinality = res.witness.cardinality();
  res.density = res.witness.density();
  res.exact = exact;
  res.witness_lex_least = lex_least;

  if (options.all_witnesses && exact) {
    std::vector<std::vector<std::vector<int>>> per(comps.size());
    bool complete = true;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      bool comp_complete = false;
      MisLimits left{options.node_budget > res.node_count ? options.node_budget - res.node_count : 0};
      per[c] = all_independent_sets(g.induced(comps[c]), alpha[c], options.witness_cap, comp_complete,
                                    res.node_count, left);
      for (auto& s : per[c]) s = to_global(s, comps[c]);
      complete = complete && comp_complete;
    }
    // Cartesian product in lexicographic order of component choices.
    std::vector<std::size_t> idx(comps.size(), 0);
    bool done = std::any_of(per.begin(), per.end(), [](const auto& v) { return v.empty(); });
    while (!done) {
      if (res.witnesses.size() >= options.witness_cap) {
        complete = false;
        break;
      }
      CodeFamily f(space);
      for (std::size_t c = 0; c < comps.size(); ++c)
        for (int v : per[c][idx[c]]) f.insert(static_cast<std::uint64_t>(v));
      res.witnesses.push_back(std::move(f));
      std::size_t c = comps.size();
      while (c-- > 0) {
        if (++idx[c] < per[c].size()) break;
        idx[c] = 0;
        if (c == 0) done = true;
      }
    }
    std::vector<std::pair<std::vector<std::uint64_t>, std::size_t>> keyed;
    for (std::size_t i = 0; i < res.witnesses.size(); ++i) keyed.emplace_back(res.witnesses[i].members(), i);
    std::sort(keyed.begin(), keyed.end());
    std::vector<CodeFamily> sorted;
    sorted.reserve(keyed.size());
    for (const auto& [m, i] : keyed) sorted.push_back(std::move(res.witnesses[i]));
    res.witnesses = std::move(sorted);
    res.witnesses_complete = complete;
  }
  return res;
}

MonotonicityTable monotonicity_table(const ForbiddenFamily& forb, CodeKind kind, bool loops, int n_first,
                                     int n_last, const SearchOptions& options) {
  MonotonicityTable t;
  for (int n = n_first; n <= n_last; ++n) {
    const auto space = loops ? EdgeIndexSet::pairs_loops(n) : EdgeIndexSet::pairs(n);
    MonotonicityRow row;
    row.n = n;
    if (space.size() > kMaxSearchDimension) {
      row.exact = false;
      row.density = Dyadic(0, 0);
    } else {
      SearchOptions o = options;
      o.all_witnesses = false;
      o.lex_budget = 0;
      const ExtremalResult r = extremal_search(space, forb, kind, o);
      row.density = r.density;
      row.exact = r.exact;
    }
    if (!t.rows.empty() && t.rows.back().exact && row.exact && row.density > t.rows.back().density)
      t.non_increasing = false;
    t.rows.push_back(row);
  }
  return t;
}

SectionFamily section_restrict(const CodeFamily& fam, const std::vector<std::pair<int, bool>>& fixed) {
  const int N = fam.dimension();
  std::uint64_t fixed_mask = 0, fixed_value = 0;
  for (auto [pos, val] : fixed) {
    if (pos < 0 || pos >= N) throw Error(Errc::PositionOutOfRange, std::to_string(pos));
    fixed_mask |= std::uint64_t{1} << pos;
    if (val) fixed_value |= std::uint64_t{1} << pos;
  }
  SectionFamily s;
  s.parent = fam.space();
  for (int p = 0; p < N; ++p)
    if (!((fixed_mask >> p) & 1u)) s.positions.push_back(p);
  s.family = CodeFamily(EdgeIndexSet::generic(static_cast<int>(s.positions.size())));
  for (std::uint64_t y = 0; y < s.family.point_count(); ++y) {
    std::uint64_t x = fixed_value;
    for (std::size_t t = 0; t < s.positions.size(); ++t)
      if ((y >> t) & 1u) x |= std::uint64_t{1} << s.positions[t];
    if (fam.contains(x)) s.family.insert(y);
  }
  return s;
}

std::vector<std::uint64_t> section_differences(const SectionFamily& s, const ForbiddenFamily& forb) {
  std::uint64_t free_mask = 0;
  for (int p : s.positions) free_mask |= std::uint64_t{1} << p;
  std::vector<std::uint64_t> out;
  for (std::uint64_t z : difference_words(s.parent, forb)) {
    if (z & ~free_mask) continue;
    std::uint64_t y = 0;
    for (std::size_t t = 0; t < s.positions.size(); ++t)
      if ((z >> s.positions[t]) & 1u) y |= std::uint64_t{1} << t;
    out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CodeFamily section_as_graph_family(const SectionFamily& s) {
  const int n = s.parent.n();
  if (n < 2 || s.parent.kind() == IndexKind::Generic)
    throw Error(Errc::InvalidArgument, "section of a graph space with n >= 2 required");
  const auto sub = s.parent.has_loops() ? EdgeIndexSet::pairs_loops(n - 1) : EdgeIndexSet::pairs(n - 1);
  std::vector<int> expect;
  s.parent.indices_within((std::uint64_t{1} << (n - 1)) - 1).for_each_set([&](std::size_t p) {
    expect.push_back(static_cast<int>(p));
  });
  if (expect != s.positions) throw Error(Errc::SpaceMismatch, "section is not the space on [n-1]");
  return CodeFamily::from_table(sub, s.family.table());
}

SectionFamily vertex_section(const CodeFamily& fam, std::uint64_t assignment) {
  const auto& space = fam.space();
  const int n = space.n();
  std::vector<int> touching;
  for (int i = 1; i <= n; ++i) {
    if (i == n && !space.has_loops()) continue;
    touching.push_back(space.position(i, n));
  }
  std::sort(touching.begin(), touching.end());
  std::vector<std::pair<int, bool>> fixed;
  for (std::size_t t = 0; t < touching.size(); ++t) fixed.emplace_back(touching[t], (assignment >> t) & 1u);
  return section_restrict(fam, fixed);
}

CodeFamily loop_padding_transfer(const CodeFamily& fam) {
  const auto& src = fam.space();
  if (src.kind() != IndexKind::Pairs) throw Error(Errc::SpaceMismatch, "loopless source space required");
  const int n = src.n();
  const auto dst = EdgeIndexSet::pairs_loops(n);
  CodeFamily out(dst);
  std::vector<int> edge_pos(static_cast<std::size_t>(src.size()));
  for (int p = 0; p < src.size(); ++p) {
    const IndexKey k = src.key(p);
    edge_pos[static_cast<std::size_t>(p)] = dst.position(k.lo, k.hi);
  }
  for (std::uint64_t g : fam.members()) {
    std::uint64_t base = 0;
    for (int p = 0; p < src.size(); ++p)
      if ((g >> p) & 1u) base |= std::uint64_t{1} << edge_pos[static_cast<std::size_t>(p)];
    for (std::uint64_t X = 1; X < (std::uint64_t{1} << n); ++X) {
      if (std::popcount(X) % 2 != 0) continue;
      std::uint64_t x = base;
      for (int v = 1; v <= n; ++v)
        if ((X >> (v - 1)) & 1u) x |= std::uint64_t{1} << dst.position(v, v);
      out.insert(x);
    }
  }
  return out;
}

}  // namespace f2lab
