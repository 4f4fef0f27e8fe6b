#include "f2lab/io.hpp"

#include "f2lab/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unistd.h>

namespace f2lab::io {

namespace {

constexpr std::uint8_t kFormatVersion = 1;

void put_le(std::ostream& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xffu));
}

std::uint64_t get_le(std::istream& in, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw Error(Errc::FormatError, "truncated input");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

void write_header(std::ostream& out, const char* magic, std::uint8_t tag, const EdgeIndexSet& sp) {
  out.write(magic, 4);
  put_le(out, kFormatVersion, 1);
  put_le(out, tag, 1);
  put_le(out, static_cast<std::uint64_t>(sp.n()), 2);
  put_le(out, static_cast<std::uint64_t>(sp.size()), 4);
  put_le(out, static_cast<std::uint64_t>(sp.kind()), 1);
  put_le(out, 0, 3);
}

struct Header {
  std::uint8_t tag;
  EdgeIndexSet space;
};

EdgeIndexSet space_of(IndexKind kind, int n, int N) {
  EdgeIndexSet sp;
  switch (kind) {
    case IndexKind::Pairs: sp = EdgeIndexSet::pairs(n); break;
    case IndexKind::PairsLoops: sp = EdgeIndexSet::pairs_loops(n); break;
    case IndexKind::Generic: sp = EdgeIndexSet::generic(N); break;
    default: throw Error(Errc::FormatError, "unknown index kind");
  }
  if (sp.size() != N) throw Error(Errc::FormatError, "index count " + std::to_string(N) + " does not match " + sp.describe());
  return sp;
}

Header read_header(std::istream& in, const char* magic) {
  std::array<char, 4> m{};
  in.read(m.data(), 4);
  if (!in || std::memcmp(m.data(), magic, 4) != 0) throw Error(Errc::FormatError, std::string("expected magic ") + magic);
  const auto version = get_le(in, 1);
  if (version != kFormatVersion) throw Error(Errc::FormatError, "unsupported version " + std::to_string(version));
  Header h;
  h.tag = static_cast<std::uint8_t>(get_le(in, 1));
  const int n = static_cast<int>(get_le(in, 2));
  const int N = static_cast<int>(get_le(in, 4));
  const auto kind = static_cast<IndexKind>(get_le(in, 1));
  get_le(in, 3);
  h.space = space_of(kind, n, N);
  return h;
}

void write_entries(std::ostream& out, std::span<const Complex> values) {
  for (const auto& v : values) {
    std::uint64_t re = 0, im = 0;
    const double r = v.real(), i = v.imag();
    std::memcpy(&re, &r, 8);
    std::memcpy(&im, &i, 8);
    put_le(out, re, 8);
    put_le(out, im, 8);
  }
}

std::string kind_name(IndexKind k) {
  switch (k) {
    case IndexKind::Pairs: return "pairs";
    case IndexKind::PairsLoops: return "pairs-loops";
    case IndexKind::Generic: return "generic";
  }
  return "generic";
}

EdgeIndexSet space_from_json(const Json& j) {
  const std::string kind = j.value("space", std::string("pairs-loops"));
  const int n = j.at("n").get<int>();
  if (kind == "pairs-loops") return EdgeIndexSet::pairs_loops(n);
  if (kind == "pairs") return EdgeIndexSet::pairs(n);
  if (kind == "generic") return EdgeIndexSet::generic(n);
  throw Error(Errc::FormatError, "unknown space " + kind);
}

Json key_json(const IndexKey& k) { return k.is_loop() ? Json::array({k.lo}) : Json::array({k.lo, k.hi}); }

int key_position(const EdgeIndexSet& sp, const Json& key) {
  if (!key.is_array() || key.empty() || key.size() > 2) throw Error(Errc::FormatError, "index key must hold one or two vertices");
  const int a = key[0].get<int>();
  const int b = key.size() == 2 ? key[1].get<int>() : a;
  return sp.position(std::min(a, b), std::max(a, b));
}

Json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw Error(Errc::FormatError, "expected an integer");
}

Json members_json(const CodeFamily& fam) {
  Json out = Json::array();
  for (auto x : fam.members()) out.push_back(x);
  return out;
}

}  // namespace

Json to_json(const CodeFamily& fam) {
  return Json{{"space", kind_name(fam.space().kind())},
              {"n", fam.space().kind() == IndexKind::Generic ? fam.dimension() : fam.space().n()},
              {"members", members_json(fam)}};
}

void write_table(std::ostream& out, const ValueTable& t) {
  write_header(out, "F2FT", static_cast<std::uint8_t>(TableKind::Values), t.space());
  write_entries(out, t.values());
  if (!out) throw Error(Errc::IoError, "write failed");
}

void write_spectrum(std::ostream& out, const Spectrum& s) {
  write_header(out, "F2FT", static_cast<std::uint8_t>(TableKind::Spectrum), s.space());
  write_entries(out, s.coefficients());
  if (!out) throw Error(Errc::IoError, "write failed");
}

TableFile read_table(std::istream& in) {
  const auto h = read_header(in, "F2FT");
  if (h.tag > 1) throw Error(Errc::FormatError, "unknown table kind " + std::to_string(h.tag));
  if (h.space.size() > 30) throw Error(Errc::TooLarge, "table dimension " + std::to_string(h.space.size()));
  TableFile f;
  f.kind = static_cast<TableKind>(h.tag);
  f.space = h.space;
  f.entries.resize(std::size_t{1} << h.space.size());
  for (auto& v : f.entries) {
    const std::uint64_t re = get_le(in, 8), im = get_le(in, 8);
    double r = 0, i = 0;
    std::memcpy(&r, &re, 8);
    std::memcpy(&i, &im, 8);
    v = Complex(r, i);
  }
  return f;
}

void write_family(std::ostream& out, const CodeFamily& fam) {
  write_header(out, "F2CF", 0, fam.space());
  const auto& table = fam.table();
  for (auto w : table) put_le(out, w, 8);
  if (!out) throw Error(Errc::IoError, "write failed");
}

CodeFamily read_family(std::istream& in) {
  const auto h = read_header(in, "F2CF");
  if (h.space.size() > CodeFamily::kMaxDimension) throw Error(Errc::TooLarge, "family dimension " + std::to_string(h.space.size()));
  const std::uint64_t words = ((std::uint64_t{1} << h.space.size()) + 63) / 64;
  std::vector<std::uint64_t> table(words);
  for (auto& w : table) w = get_le(in, 8);
  if (h.space.size() < 6) {
    const std::uint64_t valid = (std::uint64_t{1} << (std::uint64_t{1} << h.space.size())) - 1;
    if (table[0] & ~valid) throw Error(Errc::FormatError, "bits beyond the table");
  }
  return CodeFamily::from_table(h.space, std::move(table));
}

Json to_json(const Dyadic& d) { return Json{{"num", big_json(d.num())}, {"den_exp", d.den_exp()}}; }

Dyadic dyadic_from_json(const Json& j) {
  const auto e = j.at("den_exp").get<std::int64_t>();
  if (e < 0) throw Error(Errc::FormatError, "negative den_exp");
  return Dyadic(big_from_json(j.at("num")), e);
}

Json to_json(const Rational& r) {
  const BigInt den = denominator(r);
  if ((den & (den - 1)) == 0) return to_json(Dyadic(numerator(r), static_cast<std::int64_t>(msb(den))));
  return Json{{"num", big_json(numerator(r))}, {"den", big_json(den)}};
}

Rational rational_from_json(const Json& j) {
  if (j.contains("den_exp")) return dyadic_from_json(j).to_rational();
  const BigInt den = big_from_json(j.at("den"));
  if (den <= 0) throw Error(Errc::FormatError, "denominator must be positive");
  return Rational(big_from_json(j.at("num")), den);
}

Json real_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

Json to_json(const Graph& g) {
  if (g.space().kind() == IndexKind::Generic) throw Error(Errc::SpaceMismatch, "graph JSON needs Pairs or PairsLoops");
  Json edges = Json::array();
  for (const auto& k : g.edges()) edges.push_back(key_json(k));
  return Json{{"n", g.n()}, {"loops", g.space().has_loops()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  const bool loops = j.value("loops", false);
  const auto sp = loops ? EdgeIndexSet::pairs_loops(n) : EdgeIndexSet::pairs(n);
  std::vector<std::vector<int>> edges;
  for (const auto& e : j.at("edges")) edges.push_back(e.get<std::vector<int>>());
  return Graph::from_edges(sp, edges);
}

Json point_json(const GraphPoint& p) { return to_json(Graph(p.space, p.bits)); }

Json to_json(const ForbiddenFamily& f) {
  switch (f.kind()) {
    case FamilyKind::Cliques: return Json{{"family", "cliques"}};
    case FamilyKind::CliquesLooped: return Json{{"family", "cliques-looped"}};
    case FamilyKind::ExplicitList: break;
  }
  Json graphs = Json::array();
  for (const auto& g : f.members()) graphs.push_back(to_json(g));
  return Json{{"family", "explicit"}, {"graphs", graphs}};
}

ForbiddenFamily forbidden_from_json(const Json& j) {
  if (j.is_array()) {
    std::vector<Graph> gs;
    for (const auto& g : j) gs.push_back(graph_from_json(g));
    return ForbiddenFamily::explicit_list(std::move(gs));
  }
  if (j.contains("edges")) return ForbiddenFamily::explicit_list({graph_from_json(j)});
  const auto kind = j.at("family").get<std::string>();
  if (kind == "cliques") return ForbiddenFamily::cliques();
  if (kind == "cliques-looped") return ForbiddenFamily::cliques_looped();
  if (kind == "explicit") return forbidden_from_json(j.at("graphs"));
  throw Error(Errc::FormatError, "unknown family " + kind);
}

ForbiddenFamily forbidden_from_arg(const std::string& arg) {
  if (arg == "cliques") return ForbiddenFamily::cliques();
  if (arg == "cliques-looped") return ForbiddenFamily::cliques_looped();
  if (arg == "p2") return ForbiddenFamily::explicit_list({path_graph(EdgeIndexSet::pairs(3), 2)});
  return forbidden_from_json(read_json_file(arg));
}

Json to_json(const HJEmbedding& e) {
  return Json{{"n", e.n()}, {"wildcards", e.wildcards()}, {"constant", point_json(e.constant())}};
}

HJEmbedding embedding_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  const auto wild = j.at("wildcards").get<std::vector<std::vector<int>>>();
  GraphPoint c(EdgeIndexSet::pairs_loops(n), Bits{});
  if (j.contains("constant")) {
    auto cj = j.at("constant");
    if (!cj.contains("n")) cj["n"] = n;
    cj["loops"] = true;
    const auto g = graph_from_json(cj);
    if (g.n() != n) throw Error(Errc::FormatError, "constant lives on a different vertex set");
    c = g.point();
  }
  return HJEmbedding(n, wild, c);
}

Json to_json(const CentralEmbedding& e) {
  return Json{{"n", e.n()}, {"support", e.support()}, {"constant", point_json(e.constant())}};
}

Json to_json(const IntegerPoly& q) {
  const auto& sp = q.space();
  Json coeffs = Json::array();
  for (const auto& [F, lambda] : q.coeffs()) {
    Json keys = Json::array();
    for (int p : F) keys.push_back(key_json(sp.key(p)));
    coeffs.push_back(Json{{"F", keys}, {"lambda", lambda}});
  }
  return Json{{"space", kind_name(sp.kind())},
              {"n", sp.kind() == IndexKind::Generic ? sp.size() : sp.n()},
              {"k", q.k()},
              {"d", q.degree_bound()},
              {"alpha", q.alpha()},
              {"coeffs", coeffs}};
}

IntegerPoly poly_from_json(const Json& j) {
  const auto sp = space_from_json(j);
  std::map<Monomial, std::uint64_t> coeffs;
  for (const auto& c : j.at("coeffs")) {
    Monomial F;
    for (const auto& key : c.at("F")) F.push_back(key_position(sp, key));
    std::sort(F.begin(), F.end());
    if (std::adjacent_find(F.begin(), F.end()) != F.end()) throw Error(Errc::MalformedCoefficient, "repeated index in F");
    const auto lambda = c.at("lambda").get<std::uint64_t>();
    if (coeffs.count(F)) throw Error(Errc::MalformedCoefficient, "monomial listed twice");
    coeffs[F] = lambda;
  }
  return IntegerPoly(sp, j.at("k").get<int>(), j.at("d").get<int>(), j.value("alpha", std::uint64_t{0}), coeffs);
}

Json to_json(const PartitionPlan& p) {
  Json pieces = Json::array();
  for (const auto& piece : p.pieces)
    pieces.push_back(Json{{"embedding", to_json(piece.embedding)},
                          {"poly", to_json(piece.poly)},
                          {"value", piece.value ? Json(*piece.value) : Json(nullptr)},
                          {"depth", piece.depth},
                          {"stage", piece.stage}});
  Json unresolved = Json::array();
  for (const auto& e : p.unresolved) unresolved.push_back(to_json(e));
  Json log = Json::array();
  for (const auto& l : p.log)
    log.push_back(Json{{"depth", l.depth},
                       {"X", l.X},
                       {"m", l.m},
                       {"s", l.s},
                       {"ell", l.ell},
                       {"eta1", to_json(l.eta1)},
                       {"pieces", l.pieces},
                       {"degree_not_lowered", l.degree_not_lowered}});
  return Json{{"status", std::string(partition_status_name(p.status))},
              {"message", p.message},
              {"leftover", to_json(p.leftover_measure)},
              {"unresolved_measure", to_json(p.unresolved_measure)},
              {"meets_eta", p.meets_eta},
              {"pieces", pieces},
              {"unresolved", unresolved},
              {"log", log}};
}

PartitionPlan plan_from_json(const Json& j) {
  PartitionPlan p;
  const auto status = j.at("status").get<std::string>();
  bool known = false;
  for (auto s : {PartitionStatus::Complete, PartitionStatus::CanonicalSetNotFound, PartitionStatus::InsufficientRoom,
                 PartitionStatus::RecursionBudgetExceeded})
    if (partition_status_name(s) == status) {
      p.status = s;
      known = true;
    }
  if (!known) throw Error(Errc::FormatError, "unknown status " + status);
  p.message = j.at("message").get<std::string>();
  p.leftover_measure = dyadic_from_json(j.at("leftover"));
  p.unresolved_measure = dyadic_from_json(j.at("unresolved_measure"));
  p.meets_eta = j.at("meets_eta").get<bool>();
  for (const auto& piece : j.at("pieces")) {
    PartitionPiece q{embedding_from_json(piece.at("embedding")), poly_from_json(piece.at("poly")), std::nullopt,
                     piece.at("depth").get<int>(), piece.at("stage").get<int>()};
    if (!piece.at("value").is_null()) q.value = piece.at("value").get<std::uint64_t>();
    p.pieces.push_back(std::move(q));
  }
  for (const auto& e : j.at("unresolved")) p.unresolved.push_back(embedding_from_json(e));
  for (const auto& l : j.at("log"))
    p.log.push_back(StageLogEntry{l.at("depth").get<int>(), l.at("X").get<std::vector<int>>(), l.at("m").get<int>(),
                                  l.at("s").get<int>(), l.at("ell").get<int>(), dyadic_from_json(l.at("eta1")),
                                  l.at("pieces").get<std::uint64_t>(), l.at("degree_not_lowered").get<std::uint64_t>()});
  return p;
}

Json to_json(const UniformityReport& r) {
  Json g = Json::object();
  for (const auto& [d, v] : r.gowers) g[std::to_string(d)] = real_json(v);
  return Json{{"density", to_json(r.density)}, {"linf_fourier", to_json(r.linf_fourier)}, {"gowers", g}};
}

UniformityReport report_from_json(const Json& j) {
  UniformityReport r;
  r.density = dyadic_from_json(j.at("density"));
  r.linf_fourier = dyadic_from_json(j.at("linf_fourier"));
  for (const auto& [k, v] : j.at("gowers").items()) r.gowers[std::stoi(k)] = v.get<double>();
  return r;
}

Json to_json(const BoostResult& r) {
  Json out{{"linf_fourier", to_json(r.linf)}, {"found", r.witness.has_value()}};
  if (!r.witness) {
    out["miss"] = r.miss == BoostMiss::ZeroSpectrum ? "zero-spectrum" : "no-monochromatic-set";
    return out;
  }
  const auto& w = *r.witness;
  Json wj{{"G0", point_json(w.G0)},
          {"i0", w.i0},
          {"cond_even", to_json(w.cond_even)},
          {"cond_odd", to_json(w.cond_odd)},
          {"fourier_at_peak", to_json(w.fourier_at_peak)},
          {"A", w.A},
          {"case", w.kind == BoostCase::Disjoint ? "disjoint" : "contained"},
          {"x0", point_json(w.x0)},
          {"subspace", to_json(w.subspace)},
          {"boosted", to_json(w.boosted)},
          {"achieved_density", to_json(w.achieved_density)}};
  if (w.kind == BoostCase::Contained) {
    wj["odd_set"] = point_json(w.odd_set);
    wj["j0"] = w.j0;
    wj["g0"] = w.g0;
    wj["g1"] = w.g1;
  }
  out["witness"] = wj;
  return out;
}

Json to_json(const ExtremalResult& r, bool include_witnesses) {
  Json out{{"density", to_json(r.density)},
           {"cardinality", r.cardinality},
           {"exact", r.exact},
           {"witness_lex_least", r.witness_lex_least},
           {"lp_bound", r.lp_bound},
           {"node_count", r.node_count},
           {"components", r.components},
           {"witness", members_json(r.witness)}};
  if (include_witnesses) {
    Json all = Json::array();
    for (const auto& w : r.witnesses) all.push_back(members_json(w));
    out["witnesses"] = all;
    out["witnesses_complete"] = r.witnesses_complete;
  }
  return out;
}

std::string monotonicity_csv(const MonotonicityTable& t) {
  std::ostringstream out;
  out << "n,num,den_exp,exact\n";
  for (const auto& r : t.rows) out << r.n << ',' << r.density.num() << ',' << r.density.den_exp() << ',' << (r.exact ? 1 : 0) << '\n';
  return out.str();
}

Json square_word_json(int n, std::uint64_t word) {
  Json rows = Json::array();
  for (int i = 1; i <= n; ++i) {
    Json row = Json::array();
    for (int j = 1; j <= n; ++j) row.push_back((word >> square_position(n, i, j)) & 1u);
    rows.push_back(row);
  }
  return Json{{"n", n}, {"rows", rows}};
}

std::uint64_t square_word_from_json(const Json& j, int n) {
  const Json& rows = j.is_array() ? j : j.at("rows");
  if (j.is_object() && j.contains("n") && j.at("n").get<int>() != n) throw Error(Errc::FormatError, "word side differs");
  if (rows.size() != static_cast<std::size_t>(n)) throw Error(Errc::FormatError, "expected " + std::to_string(n) + " rows");
  std::uint64_t w = 0;
  for (int i = 1; i <= n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i - 1)];
    if (row.size() != static_cast<std::size_t>(n)) throw Error(Errc::FormatError, "row length must be n");
    for (int j2 = 1; j2 <= n; ++j2) {
      const int b = row[static_cast<std::size_t>(j2 - 1)].get<int>();
      if (b != 0 && b != 1) throw Error(Errc::FormatError, "letters are encoded as 0 and 1");
      if (b) w |= std::uint64_t{1} << square_position(n, i, j2);
    }
  }
  return w;
}

Json to_json(const WordSet& w) {
  Json words = Json::array();
  for (auto x : w.members()) words.push_back(square_word_json(w.n(), x).at("rows"));
  return Json{{"n", w.n()}, {"words", words}};
}

WordSet word_set_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.empty()) throw Error(Errc::EmptyInput, "cannot infer n from an empty array");
    const int n = j[0].at("n").get<int>();
    WordSet w(n);
    for (const auto& x : j) w.insert(square_word_from_json(x, n));
    return w;
  }
  const int n = j.at("n").get<int>();
  WordSet w(n);
  if (j.contains("rows")) {
    w.insert(square_word_from_json(j, n));
    return w;
  }
  for (const auto& x : j.at("words")) w.insert(square_word_from_json(x, n));
  return w;
}

Json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::IoError, "cannot open " + p.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::FormatError, p.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& p, const std::string& bytes) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  const auto tmp = p.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::IoError, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(Errc::IoError, "rename to " + p.string() + ": " + ec.message());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Manifest& m) {
  return Json{{"command", m.command},
              {"parameters", m.parameters},
              {"library_version", kLibraryVersion},
              {"seed", m.seed},
              {"wall_time_s", real_json(m.wall_time_s)},
              {"timestamp", m.timestamp}};
}

}  // namespace f2lab::io
