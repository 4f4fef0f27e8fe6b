#pragma once

#include "f2lab/codes.hpp"
#include "f2lab/dphj.hpp"
#include "f2lab/dyadic.hpp"
#include "f2lab/f2space.hpp"
#include "f2lab/graphs.hpp"
#include "f2lab/partition.hpp"
#include "f2lab/polynomials.hpp"
#include "f2lab/subspaces.hpp"
#include "f2lab/uniformity.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

namespace f2lab::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kLibraryVersion = "1.0.0";

// Binary tables. Both formats share a 16-byte header: magic (4), version u8,
// tag u8, n u16, N u32, index kind u8, 3 reserved bytes; little endian.
enum class TableKind : std::uint8_t { Values = 0, Spectrum = 1 };

struct TableFile {
  TableKind kind = TableKind::Values;
  EdgeIndexSet space;
  std::vector<Complex> entries;
  ValueTable values() const { return ValueTable(space, entries); }
  Spectrum spectrum() const { return Spectrum(space, entries); }
  friend bool operator==(const TableFile&, const TableFile&) = default;
};

void write_table(std::ostream& out, const ValueTable& t);
void write_spectrum(std::ostream& out, const Spectrum& s);
TableFile read_table(std::istream& in);

void write_family(std::ostream& out, const CodeFamily& fam);
CodeFamily read_family(std::istream& in);
/// {"space","n","members"}; members are point indices.
Json to_json(const CodeFamily& fam);

// JSON forms.
Json to_json(const Dyadic& d);
Dyadic dyadic_from_json(const Json& j);
Json to_json(const Rational& r);  // {num, den}; den is a power of two only for dyadics
Rational rational_from_json(const Json& j);
/// Rounds to 12 significant digits.
Json real_json(double v);

Json to_json(const Graph& g);
Graph graph_from_json(const Json& j);
/// A point of Pairs / PairsLoops as graph JSON.
Json point_json(const GraphPoint& p);

/// {"family":"explicit","graphs":[...]} or {"family":"cliques"} / {"family":"cliques-looped"};
/// a bare graph or an array of graphs is read as an explicit list.
Json to_json(const ForbiddenFamily& f);
ForbiddenFamily forbidden_from_json(const Json& j);
/// Keyword (cliques, cliques-looped, p2) or a JSON file path.
ForbiddenFamily forbidden_from_arg(const std::string& arg);

Json to_json(const HJEmbedding& e);
HJEmbedding embedding_from_json(const Json& j);
Json to_json(const CentralEmbedding& e);

/// Space field is "pairs-loops" (default), "pairs" or "generic"; F lists index keys.
Json to_json(const IntegerPoly& q);
IntegerPoly poly_from_json(const Json& j);

Json to_json(const PartitionPlan& p);
PartitionPlan plan_from_json(const Json& j);

Json to_json(const UniformityReport& r);
UniformityReport report_from_json(const Json& j);
Json to_json(const BoostResult& r);

Json to_json(const ExtremalResult& r, bool include_witnesses);
std::string monotonicity_csv(const MonotonicityTable& t);

/// {"n":2,"rows":[[0,1],[1,0]]}
Json square_word_json(int n, std::uint64_t word);
std::uint64_t square_word_from_json(const Json& j, int n);
/// {"n":..,"words":[rows, ...]}; a single SquareWord or an array of them also parses.
Json to_json(const WordSet& w);
WordSet word_set_from_json(const Json& j);

// Files.
Json read_json_file(const std::filesystem::path& p);
/// Temp file then rename.
void write_file_atomic(const std::filesystem::path& p, const std::string& bytes);
std::string dump(const Json& j);

struct Manifest {
  std::string command;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  double wall_time_s = 0;
  std::string timestamp;
};
Json to_json(const Manifest& m);

}  // namespace f2lab::io
