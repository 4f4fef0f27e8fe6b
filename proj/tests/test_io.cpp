#include <doctest.h>

#include "f2lab/error.hpp"
#include "f2lab/io.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace f2lab;
using io::Json;

namespace {

// Minimal validator: type, enum, required, properties, items, $ref into $defs.
bool validate(const Json& v, const Json& schema, const Json& root, std::string& why, const std::string& at = "$") {
  if (schema.contains("$ref")) {
    const auto ref = schema.at("$ref").get<std::string>();
    return validate(v, root.at("$defs").at(ref.substr(ref.rfind('/') + 1)), root, why, at);
  }
  if (schema.contains("type")) {
    const auto types = schema.at("type").is_array() ? schema.at("type") : Json::array({schema.at("type")});
    bool ok = false;
    for (const auto& t : types) {
      const auto s = t.get<std::string>();
      ok = ok || (s == "object" && v.is_object()) || (s == "array" && v.is_array()) || (s == "string" && v.is_string()) ||
           (s == "integer" && v.is_number_integer()) || (s == "number" && v.is_number()) ||
           (s == "boolean" && v.is_boolean()) || (s == "null" && v.is_null());
    }
    if (!ok) {
      why = at + ": wrong type";
      return false;
    }
  }
  if (schema.contains("enum") && std::find(schema.at("enum").begin(), schema.at("enum").end(), v) == schema.at("enum").end()) {
    why = at + ": not in enum";
    return false;
  }
  if (schema.contains("required"))
    for (const auto& k : schema.at("required"))
      if (!v.contains(k.get<std::string>())) {
        why = at + ": missing " + k.get<std::string>();
        return false;
      }
  if (schema.contains("properties") && v.is_object())
    for (const auto& [k, sub] : schema.at("properties").items())
      if (v.contains(k) && !validate(v.at(k), sub, root, why, at + "." + k)) return false;
  if (schema.contains("items") && v.is_array())
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!validate(v[i], schema.at("items"), root, why, at + "[" + std::to_string(i) + "]")) return false;
  return true;
}

IntegerPoly degree_one(int n, int k, std::uint64_t loop_c, std::uint64_t pair_c) {
  const auto sp = EdgeIndexSet::pairs_loops(n);
  std::map<Monomial, std::uint64_t> c;
  for (int p = 0; p < sp.size(); ++p) c[{p}] = sp.key(p).is_loop() ? loop_c : pair_c;
  return IntegerPoly(sp, k, 1, 0, c);
}

std::filesystem::path scratch() {
  auto p = std::filesystem::temp_directory_path() / ("f2lab_io_" + std::to_string(::getpid()));
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("binary table round trip") {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> g;
  for (const auto& sp : {EdgeIndexSet::generic(0), EdgeIndexSet::generic(5), EdgeIndexSet::pairs(4), EdgeIndexSet::pairs_loops(3)}) {
    std::vector<Complex> v(std::size_t{1} << sp.size());
    for (auto& x : v) x = Complex(g(rng), g(rng));
    const ValueTable t(sp, v);
    std::stringstream s;
    io::write_table(s, t);
    CHECK(s.str().size() == 16 + 16 * v.size());
    CHECK(s.str().substr(0, 4) == "F2FT");
    const auto back = io::read_table(s);
    CHECK(back.kind == io::TableKind::Values);
    CHECK(back.space == sp);
    CHECK(back.entries == v);

    const auto fourier = walsh_transform(t);
    std::stringstream s2;
    io::write_spectrum(s2, fourier);
    const auto spec = io::read_table(s2);
    CHECK(spec.kind == io::TableKind::Spectrum);
    const auto coeffs = fourier.coefficients();
    CHECK(std::equal(coeffs.begin(), coeffs.end(), spec.entries.begin()));
  }
  std::stringstream bad("F2XX0000000000000000");
  CHECK_THROWS_AS(io::read_table(bad), Error);
  std::stringstream s;
  io::write_table(s, ValueTable::constant(EdgeIndexSet::generic(3), 1.0));
  std::stringstream cut(s.str().substr(0, 40));
  CHECK_THROWS_AS(io::read_table(cut), Error);
}

TEST_CASE("binary family round trip") {
  std::mt19937_64 rng(52);
  for (const auto& sp : {EdgeIndexSet::generic(3), EdgeIndexSet::generic(7), EdgeIndexSet::pairs(4), EdgeIndexSet::pairs_loops(3),
                         EdgeIndexSet::pairs(2)}) {
    const auto fam = CodeFamily::from_predicate(sp, [&](std::uint64_t) { return rng() & 1u; });
    std::stringstream s;
    io::write_family(s, fam);
    CHECK(s.str().substr(0, 4) == "F2CF");
    const auto back = io::read_family(s);
    CHECK(back == fam);
    CHECK(back.cardinality() == fam.cardinality());
  }
  std::stringstream s;
  io::write_family(s, CodeFamily(EdgeIndexSet::generic(2)));
  auto bytes = s.str();
  bytes[16] = static_cast<char>(0xff);
  std::stringstream corrupt(bytes);
  CHECK_THROWS_AS(io::read_family(corrupt), Error);
}

TEST_CASE("exact numbers") {
  for (const auto& d : {Dyadic(), Dyadic(BigInt(1), 2), Dyadic(BigInt(9), 4), Dyadic((BigInt(1) << 80) + 1, 90)}) {
    CHECK(io::dyadic_from_json(io::to_json(d)) == d);
    CHECK(io::dyadic_from_json(Json::parse(io::to_json(d).dump())) == d);
  }
  CHECK(io::to_json(Dyadic(BigInt(1), 2)).dump() == R"({"num":1,"den_exp":2})");
  CHECK(io::to_json(Rational(3, 4)).dump() == R"({"num":3,"den_exp":2})");
  CHECK(io::rational_from_json(io::to_json(Rational(3, 5))) == Rational(3, 5));
  CHECK(io::real_json(1.0 / 3).get<double>() == 0.333333333333);
  CHECK(io::real_json(2.0).dump() == "2.0");
}

TEST_CASE("graphs, families and embeddings") {
  const auto g = io::graph_from_json(Json::parse(R"({"n": 4, "loops": true, "edges": [[1,2],[3],[2,4]]})"));
  CHECK(g.edge_count() == 3);
  CHECK(g.has_loop());
  CHECK(io::graph_from_json(io::to_json(g)) == g);
  const auto p = io::graph_from_json(Json::parse(R"({"n": 3, "edges": [[2,1],[2,3]]})"));
  CHECK(are_isomorphic(p, path_graph(EdgeIndexSet::pairs(3), 2)));
  CHECK_THROWS_AS(io::graph_from_json(Json::parse(R"({"n": 3, "edges": [[1]]})")), Error);

  for (const auto& f : {ForbiddenFamily::cliques(), ForbiddenFamily::cliques_looped(), io::forbidden_from_arg("p2")})
    CHECK(io::forbidden_from_json(io::to_json(f)).describe() == f.describe());
  CHECK(io::forbidden_from_json(io::to_json(p)).kind() == FamilyKind::ExplicitList);

  const auto e = io::embedding_from_json(
      Json::parse(R"({"n":6,"wildcards":[[1,2],[4]],"constant":{"n":6,"loops":true,"edges":[[3],[5,6]]}})"));
  CHECK(e.m() == 2);
  const auto e2 = io::embedding_from_json(io::to_json(e));
  CHECK(e2.describe() == e.describe());
  CHECK(e2.constant() == e.constant());
  CHECK(e2.wildcards() == e.wildcards());
}

TEST_CASE("polynomials and partition plans") {
  const auto q = io::poly_from_json(Json::parse(R"({"n":4,"k":2,"d":2,"alpha":1,"coeffs":[{"F":[[1,2],[3]],"lambda":3}]})"));
  CHECK(q.k() == 2);
  CHECK(q.alpha() == 1);
  CHECK(q.coeffs().size() == 1);
  CHECK(io::poly_from_json(io::to_json(q)) == q);
  CHECK_THROWS_AS(io::poly_from_json(Json::parse(R"({"n":2,"k":1,"d":1,"coeffs":[{"F":[[1]],"lambda":1},{"F":[[1]],"lambda":1}]})")), Error);

  const auto Q = degree_one(4, 2, 1, 2);
  PartitionOptions o;
  o.eta = Rational(3, 5);
  o.levels = {{1, 2, 0}};
  const auto plan = partition_polynomial(Q, o);
  const auto j = io::to_json(plan);
  const auto back = io::plan_from_json(Json::parse(j.dump()));
  CHECK(io::to_json(back) == j);
  CHECK(back.leftover_measure == plan.leftover_measure);
  CHECK(back.pieces.size() == plan.pieces.size());
  CHECK(audit_plan(Q, back).ok());

  const auto schema = io::read_json_file(std::filesystem::path(F2LAB_SOURCE_DIR) / "schemas/partition_plan.schema.json");
  std::string why;
  CHECK_MESSAGE(validate(j, schema, schema, why), why);
  PartitionOptions tight = o;
  tight.max_depth = 0;
  const auto partial = io::to_json(partition_polynomial(degree_one(4, 2, 1, 1), tight));
  CHECK_MESSAGE(validate(partial, schema, schema, why), why);
  Json broken = j;
  broken.erase("leftover");
  CHECK_FALSE(validate(broken, schema, schema, why));
}

TEST_CASE("reports, words and tables") {
  const auto fam = CodeFamily::from_predicate(EdgeIndexSet::pairs(3), [](std::uint64_t x) { return std::popcount(x) % 2 == 0; });
  const auto r = uniformity_report(fam, {2, 3});
  const auto j = io::to_json(r);
  CHECK(j.at("density").dump() == R"({"num":1,"den_exp":1})");
  const auto back = io::report_from_json(Json::parse(j.dump()));
  CHECK(back.density == r.density);
  CHECK(back.linf_fourier == r.linf_fourier);
  CHECK(back.gowers.at(3) == doctest::Approx(r.gowers.at(3)).epsilon(1e-11));
  CHECK(io::to_json(back) == j);

  const auto w = io::word_set_from_json(Json::parse(R"({"n":2,"rows":[[0,1],[1,0]]})"));
  CHECK(w.cardinality() == 1);
  CHECK(is_symmetric_word(2, w.members()[0]));
  std::mt19937_64 rng(53);
  WordSet ws(3);
  for (int i = 0; i < 40; ++i) ws.insert(rng() & 511u);
  CHECK(io::word_set_from_json(io::to_json(ws)) == ws);
  CHECK_THROWS_AS(io::word_set_from_json(Json::parse(R"({"n":2,"rows":[[0,2],[1,0]]})")), Error);

  MonotonicityTable empty;
  CHECK(io::monotonicity_csv(empty) == "n,num,den_exp,exact\n");
  const auto t = monotonicity_table(io::forbidden_from_arg("p2"), CodeKind::Code, false, 3, 5);
  const auto csv = io::monotonicity_csv(t);
  CHECK(csv.rfind("n,num,den_exp,exact\n3,1,2,1\n", 0) == 0);
  CHECK(t.non_increasing);
}

TEST_CASE("atomic files") {
  const auto dir = scratch();
  const auto p = dir / "sub" / "a.json";
  io::write_file_atomic(p, "{}\n");
  io::write_file_atomic(p, io::dump(Json{{"x", 1}}));
  CHECK(io::read_json_file(p).at("x") == 1);
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir / "sub")) ++files;
  CHECK(files == 1);
  std::ofstream(dir / "bad.json") << "{";
  CHECK_THROWS_AS(io::read_json_file(dir / "bad.json"), Error);
  CHECK_THROWS_AS(io::read_json_file(dir / "missing.json"), Error);
  std::filesystem::remove_all(dir);
}
