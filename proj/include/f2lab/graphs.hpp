#pragma once

#include "f2lab/f2space.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace f2lab {

/// A graph on [n], possibly with loops, stored as a point of Pairs(n) or
/// PairsLoops(n).
class Graph {
 public:
  Graph() = default;
  Graph(EdgeIndexSet space, Bits bits);
  static Graph empty(EdgeIndexSet space) { return Graph(space, Bits{}); }
  /// Edges given as vertex lists of length 1 (loop) or 2.
  static Graph from_edges(EdgeIndexSet space, const std::vector<std::vector<int>>& edges);

  const EdgeIndexSet& space() const { return space_; }
  const Bits& bits() const { return bits_; }
  int n() const { return space_.n(); }
  GraphPoint point() const { return GraphPoint(space_, bits_); }

  bool is_empty() const { return bits_.none(); }
  std::size_t edge_count() const { return bits_.count(); }  // loops included
  bool has_loop() const;
  /// V(G): bit v-1 set for every vertex touched by an edge or a loop.
  std::uint64_t vertex_mask() const;
  std::vector<IndexKey> edges() const;
  bool contains(const Graph& o) const { return o.bits_.subset_of(bits_); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  EdgeIndexSet space_;
  Bits bits_;
};

Graph symmetric_difference(const Graph& a, const Graph& b);

/// Isomorphism invariant of a graph restricted to V(G).
struct CanonicalForm {
  std::vector<std::uint8_t> bytes;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

inline constexpr int kMaxCanonicalVertices = 10;

CanonicalForm canonical_form(const Graph& g);
bool are_isomorphic(const Graph& a, const Graph& b);

enum class FamilyKind { ExplicitList, Cliques, CliquesLooped };

/// A collection H of nonempty graphs, closed under isomorphism.
class ForbiddenFamily {
 public:
  static ForbiddenFamily cliques() { return ForbiddenFamily(FamilyKind::Cliques, {}); }
  static ForbiddenFamily cliques_looped() { return ForbiddenFamily(FamilyKind::CliquesLooped, {}); }
  static ForbiddenFamily explicit_list(std::vector<Graph> members);

  FamilyKind kind() const { return kind_; }
  const std::vector<Graph>& members() const { return members_; }
  const std::vector<CanonicalForm>& forms() const { return forms_; }
  /// True when every member is loopless with an even number of edges.
  bool loopless_even() const;
  std::string describe() const;

 private:
  ForbiddenFamily(FamilyKind k, std::vector<Graph> members);
  FamilyKind kind_;
  std::vector<Graph> members_;
  std::vector<CanonicalForm> forms_;
};

bool is_isomorphic_to_member(const Graph& g, const ForbiddenFamily& fam);

/// Every nonzero z of the space isomorphic to a member, sorted ascending.
/// Built by placing members into [n] rather than by testing all 2^N points.
std::vector<Bits> forbidden_differences(const EdgeIndexSet& space, const ForbiddenFamily& fam);

/// Convenience constructors.
Graph complete_graph(EdgeIndexSet space, int r);          // K_r on [r]
Graph complete_looped_graph(EdgeIndexSet space, int r);   // K_r° on [r]
Graph path_graph(EdgeIndexSet space, int edges);          // 1-2-...-(edges+1)

}  // namespace f2lab
