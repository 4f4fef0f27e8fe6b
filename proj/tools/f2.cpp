#include "f2lab/codes.hpp"
#include "f2lab/dphj.hpp"
#include "f2lab/error.hpp"
#include "f2lab/f2space.hpp"
#include "f2lab/graphs.hpp"
#include "f2lab/io.hpp"
#include "f2lab/kernels.hpp"
#include "f2lab/partition.hpp"
#include "f2lab/subspaces.hpp"
#include "f2lab/uniformity.hpp"
#include "suite.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace f2lab;
using io::Json;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kError = 1, kNotFound = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Collects every problem with a config before raising one diagnostic.
class Checks {
 public:
  void require(bool ok, const std::string& msg) {
    if (!ok) problems_.push_back(msg);
  }
  void file(const std::string& path, const std::string& flag) {
    require(!path.empty(), flag + " is required");
    if (!path.empty()) require(fs::exists(path), flag + ": no such file " + path);
  }
  void raise() const {
    if (problems_.empty()) return;
    std::string msg;
    for (const auto& p : problems_) msg += (msg.empty() ? "" : "; ") + p;
    throw ConfigError(msg);
  }

 private:
  std::vector<std::string> problems_;
};

struct Common {
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 20261015;
};

struct Run {
  std::string command;
  CLI::App* sub = nullptr;
  Common common;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Json parameters() const {
    Json p = Json::object();
    for (const auto* o : sub->get_options()) {
      if (o->get_name() == "--help" || o->count() == 0) continue;
      const auto& r = o->results();
      auto name = o->get_name(false, true);
      if (o->get_expected_max() == 0)
        p[name] = true;
      else
        p[name] = r.size() == 1 ? Json(r.front()) : Json(r);
    }
    return p;
  }

  Json manifest() const {
    io::Manifest m;
    m.command = command;
    m.parameters = parameters();
    m.seed = common.seed;
    m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[32];
    const auto now = std::time(nullptr);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    m.timestamp = buf;
    auto j = io::to_json(m);
    j["threads"] = kernels::thread_count();
    return j;
  }

  void emit(const Json& result) const {
    const Json doc{{"manifest", manifest()}, {"result", result}};
    if (common.out.empty())
      std::cout << io::dump(doc);
    else
      io::write_file_atomic(common.out, io::dump(doc));
  }

  // file plus a "<path>.manifest.json" sidecar
  void emit_raw(const fs::path& path, const std::string& bytes) const {
    io::write_file_atomic(path, bytes);
    io::write_file_atomic(path.string() + ".manifest.json", io::dump(manifest()));
  }
};

void add_common(CLI::App* sub, Common& c, bool with_out = true) {
  if (with_out) sub->add_option("--out", c.out, "Output file (stdout when omitted)");
  sub->add_option("--seed", c.seed, "Seed recorded in the manifest");
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

CodeFamily load_family(const std::string& path) {
  std::istringstream s(read_bytes(path));
  return io::read_family(s);
}

io::TableFile load_table(const std::string& path) {
  std::istringstream s(read_bytes(path));
  return io::read_table(s);
}

std::string family_bytes(const CodeFamily& fam) {
  std::ostringstream s;
  io::write_family(s, fam);
  return s.str();
}

Graph graph_on(const EdgeIndexSet& space, const Graph& g) {
  std::vector<std::vector<int>> edges;
  for (const auto& k : g.edges()) edges.push_back(k.is_loop() ? std::vector<int>{k.lo} : std::vector<int>{k.lo, k.hi});
  return Graph::from_edges(space, edges);
}

Json line_json(const PolyLine& l) {
  Json X = Json::array();
  for (int v = 1; v <= l.n; ++v)
    if ((l.X >> (v - 1)) & 1u) X.push_back(v);
  return Json{{"X", X}, {"fixed", io::square_word_json(l.n, l.fixed)}, {"v0", io::square_word_json(l.n, l.completion(0))},
              {"v1", io::square_word_json(l.n, l.completion(1))}};
}

GowersMethod parse_method(const std::string& m) {
  if (m == "naive") return GowersMethod::Naive;
  if (m == "recursive") return GowersMethod::Recursive;
  return GowersMethod::Spectral;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"f2: exact computations on F2 graph spaces"};
  app.require_subcommand(1, 1);
  int threads = 0;
  app.add_option("--threads", threads, "Cap on OpenMP threads (also F2LAB_THREADS)")->check(CLI::PositiveNumber);
  Run run;

  // search
  struct {
    int n = 0, n_last = 0;
    bool loops = false, all = false;
    std::string forbidden, kind = "code", dir;
    double budget = 2e8;
    std::size_t cap = 100000;
  } search;
  auto* s_search = app.add_subcommand("search", "Exact extremal density of H-codes");
  s_search->add_option("--n", search.n, "Vertices")->required();
  s_search->add_flag("--loops", search.loops, "Work in PairsLoops(n)");
  s_search->add_option("--forbidden", search.forbidden, "cliques, cliques-looped, p2 or a JSON file")->required();
  s_search->add_option("--kind", search.kind, "code or hj")->check(CLI::IsMember({"code", "hj"}));
  s_search->add_option("--budget-nodes", search.budget, "Branch-and-bound node budget");
  s_search->add_flag("--all-witnesses", search.all, "Enumerate every maximum family");
  s_search->add_option("--witness-cap", search.cap, "Cap on enumerated witnesses");
  s_search->add_option("--n-last", search.n_last, "Monotonicity table for n..n-last");
  s_search->add_option("dir", search.dir, "Directory for result.json and witness families");
  s_search->add_option("--format", run.common.format, "json or csv (tables only)")->check(CLI::IsMember({"json", "csv"}));
  add_common(s_search, run.common);

  // gowers
  struct {
    std::string in, code, method;
    int d = 2;
  } gowers;
  auto* s_gowers = app.add_subcommand("gowers", "Gowers uniformity norm of a table");
  s_gowers->add_option("--in", gowers.in, "F2FT value table");
  s_gowers->add_option("--code", gowers.code, "F2CF family; uses 1_G - P[G]");
  s_gowers->add_option("-d", gowers.d, "Order")->check(CLI::Range(1, 30));
  s_gowers->add_option("--method", gowers.method, "naive, recursive or spectral")
      ->check(CLI::IsMember({"naive", "recursive", "spectral"}));
  add_common(s_gowers, run.common);

  // fwht
  std::string fwht_in;
  auto* s_fwht = app.add_subcommand("fwht", "Walsh transform of a value table, or the inverse of a spectrum");
  s_fwht->add_option("--in", fwht_in, "F2FT input")->required();
  add_common(s_fwht, run.common);

  // report
  struct {
    std::string code;
    std::vector<int> orders{2, 3};
  } report;
  auto* s_report = app.add_subcommand("report", "Density, Fourier peak and Gowers norms of a family");
  s_report->add_option("--code", report.code, "F2CF family")->required();
  s_report->add_option("--orders", report.orders, "Gowers orders")->delimiter(',');
  add_common(s_report, run.common);

  // boost
  struct {
    std::string code, forbidden;
    int m = 3;
  } boost;
  auto* s_boost = app.add_subcommand("boost", "Fourier boost of an H-code on Pairs(n)");
  s_boost->add_option("--code", boost.code, "F2CF family")->required();
  s_boost->add_option("--forbidden", boost.forbidden, "Forbidden family")->required();
  s_boost->add_option("--m", boost.m, "Size of the monochromatic set")->check(CLI::Range(1, 10));
  add_common(s_boost, run.common);

  // partition
  struct {
    std::string q, eta = "1/4";
    int m = 1, block = 2, stages = 0, max_depth = 8;
    bool desk = false, greedy = false, audit = false;
  } part;
  auto* s_part = app.add_subcommand("partition", "Partition an integer polynomial into constant HJ-subspaces");
  s_part->add_option("--q", part.q, "IntegerPoly JSON")->required();
  s_part->add_option("--eta", part.eta, "Leftover target, decimal or p/q");
  s_part->add_option("--m", part.m, "Subspace dimension per stage");
  s_part->add_flag("--desk", part.desk, "Use --block and --stages instead of the full-size parameters");
  s_part->add_option("--block", part.block, "Block size s");
  s_part->add_option("--stages", part.stages, "Stages per level, 0 derives it from eta");
  s_part->add_option("--max-depth", part.max_depth, "Recursion depth budget");
  s_part->add_flag("--greedy", part.greedy, "Greedy canonical-set search");
  s_part->add_flag("--audit", part.audit, "Check the plan on every point");
  add_common(s_part, run.common);

  // embed
  struct {
    std::string e, x, code;
  } embed;
  auto* s_embed = app.add_subcommand("embed", "Apply an HJ-embedding");
  s_embed->add_option("--e", embed.e, "HJEmbedding JSON")->required();
  s_embed->add_option("--x", embed.x, "Point of PairsLoops(m) as graph JSON");
  s_embed->add_option("--code", embed.code, "F2CF family on PairsLoops(n): report P[G | V]");
  add_common(s_embed, run.common);

  // iso, member
  std::string iso_a, iso_b, member_g, member_family;
  auto* s_iso = app.add_subcommand("iso", "Graph isomorphism");
  s_iso->add_option("--a", iso_a, "Graph JSON")->required();
  s_iso->add_option("--b", iso_b, "Graph JSON")->required();
  add_common(s_iso, run.common);
  auto* s_member = app.add_subcommand("member", "Membership in a forbidden family");
  s_member->add_option("--g", member_g, "Graph JSON")->required();
  s_member->add_option("--family", member_family, "Forbidden family")->required();
  add_common(s_member, run.common);

  // dphj
  struct {
    std::string in, code, words;
    int n1 = 0;
  } dphj;
  auto* s_dphj = app.add_subcommand("dphj", "Square-word sets and the code reduction");
  s_dphj->require_subcommand(1, 1);
  auto* s_lines = s_dphj->add_subcommand("check-lines", "Search a word set for a polynomial line");
  s_lines->add_option("--in", dphj.in, "Word set JSON")->required();
  add_common(s_lines, run.common);
  auto* s_reduce = s_dphj->add_subcommand("reduce", "Code to word set, or a word set to a symmetric code");
  s_reduce->add_option("--code", dphj.code, "F2CF family on PairsLoops(n)");
  s_reduce->add_option("--words", dphj.words, "Word set JSON");
  s_reduce->add_option("--n1", dphj.n1, "Block side for --words");
  add_common(s_reduce, run.common);
  auto* s_back = s_dphj->add_subcommand("reduce-back", "Symmetric word set to a code");
  s_back->add_option("--words", dphj.words, "Word set JSON")->required();
  add_common(s_back, run.common);

  // selftest
  std::vector<int> only;
  auto* s_self = app.add_subcommand("selftest", "Run the acceptance suite");
  s_self->add_option("--only", only, "Criterion ids")->delimiter(',');
  add_common(s_self, run.common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  if (threads > 0) kernels::set_thread_count(threads);

  try {
    Checks checks;
    if (s_search->parsed()) {
      run.command = "search";
      run.sub = s_search;
      checks.require(search.n >= 1 && search.n <= 8, "--n must be in 1..8");
      checks.require(search.n_last == 0 || search.n_last >= search.n, "--n-last must be >= --n");
      checks.require(search.kind != "hj" || search.loops, "--kind hj needs --loops");
      checks.require(search.budget >= 1, "--budget-nodes must be positive");
      checks.require(search.n_last == 0 || !search.all, "--all-witnesses does not combine with --n-last");
      checks.require(run.common.format == "json" || search.n_last > 0, "--format csv needs --n-last");
      checks.raise();
      const auto forb = io::forbidden_from_arg(search.forbidden);
      const auto kind = search.kind == "hj" ? CodeKind::HJCode : CodeKind::Code;
      SearchOptions opt;
      opt.node_budget = static_cast<std::uint64_t>(search.budget);
      opt.all_witnesses = search.all;
      opt.witness_cap = search.cap;
      if (search.n_last > 0) {
        const auto t = monotonicity_table(forb, kind, search.loops, search.n, search.n_last, opt);
        bool exact = true;
        for (const auto& r : t.rows) exact = exact && r.exact;
        if (run.common.format == "csv") {
          const auto csv = io::monotonicity_csv(t);
          if (run.common.out.empty())
            std::cout << csv;
          else
            run.emit_raw(run.common.out, csv);
        } else {
          Json rows = Json::array();
          for (const auto& r : t.rows) rows.push_back(Json{{"n", r.n}, {"density", io::to_json(r.density)}, {"exact", r.exact}});
          run.emit(Json{{"rows", rows}, {"non_increasing", t.non_increasing}});
        }
        return exact ? kOk : kNotFound;
      }
      const auto sp = search.loops ? EdgeIndexSet::pairs_loops(search.n) : EdgeIndexSet::pairs(search.n);
      const auto res = extremal_search(sp, forb, kind, opt);
      auto j = io::to_json(res, search.all);
      if (!search.dir.empty()) {
        const fs::path dir(search.dir);
        fs::create_directories(dir);
        run.emit_raw(dir / "witness.f2cf", family_bytes(res.witness));
        for (std::size_t i = 0; i < res.witnesses.size(); ++i) {
          std::ostringstream name;
          name << "witness_" << std::setw(5) << std::setfill('0') << i << ".f2cf";
          io::write_file_atomic(dir / name.str(), family_bytes(res.witnesses[i]));
        }
        run.common.out = (dir / "result.json").string();
      }
      run.emit(j);
      return res.exact ? kOk : kNotFound;
    }

    if (s_gowers->parsed()) {
      run.command = "gowers";
      run.sub = s_gowers;
      checks.require(gowers.in.empty() != gowers.code.empty(), "exactly one of --in and --code");
      if (!gowers.in.empty()) checks.file(gowers.in, "--in");
      if (!gowers.code.empty()) checks.file(gowers.code, "--code");
      checks.raise();
      const auto f = gowers.in.empty() ? load_family(gowers.code).balanced() : load_table(gowers.in).values();
      const auto name = gowers.method.empty() ? (gowers.d == 2 ? "spectral" : "recursive") : gowers.method;
      const auto method = parse_method(name);
      if (!gowers_supported(f.space().size(), gowers.d, method))
        throw Error(Errc::BudgetExceeded, "method " + name + " does not reach d = " + std::to_string(gowers.d) + " at N = " +
                                              std::to_string(f.space().size()));
      const double v = gowers_norm(f, gowers.d, method);
      run.emit(Json{{"d", gowers.d}, {"method", name}, {"N", f.space().size()}, {"value", io::real_json(v)}});
      return kOk;
    }

    if (s_fwht->parsed()) {
      run.command = "fwht";
      run.sub = s_fwht;
      checks.file(fwht_in, "--in");
      checks.require(!run.common.out.empty(), "--out is required");
      checks.raise();
      const auto t = load_table(fwht_in);
      std::ostringstream s;
      if (t.kind == io::TableKind::Values)
        io::write_spectrum(s, walsh_transform(t.values()));
      else
        io::write_table(s, inverse_walsh_transform(t.spectrum()));
      run.emit_raw(run.common.out, s.str());
      return kOk;
    }

    if (s_report->parsed()) {
      run.command = "report";
      run.sub = s_report;
      checks.file(report.code, "--code");
      for (int d : report.orders) checks.require(d >= 1, "orders must be >= 1");
      checks.raise();
      run.emit(io::to_json(uniformity_report(load_family(report.code), report.orders)));
      return kOk;
    }

    if (s_boost->parsed()) {
      run.command = "boost";
      run.sub = s_boost;
      checks.file(boost.code, "--code");
      checks.raise();
      const auto fam = load_family(boost.code);
      const auto forb = io::forbidden_from_arg(boost.forbidden);
      const auto r = fourier_boost(fam, forb, boost.m);
      auto j = io::to_json(r);
      if (r.witness) {
        const auto a = audit_boost(fam, forb, *r.witness);
        j["audit"] = Json{{"ok", a.ok()}, {"code", a.code}, {"gain", a.gain}, {"split", a.split},
                          {"parity", a.parity}, {"disjoint", a.disjoint}, {"odd_sums", a.odd_sums}};
      }
      run.emit(j);
      return r.witness ? kOk : kNotFound;
    }

    if (s_part->parsed()) {
      run.command = "partition";
      run.sub = s_part;
      checks.file(part.q, "--q");
      Rational eta = 0;
      try {
        eta = parse_rational(part.eta);
      } catch (const Error& e) {
        checks.require(false, std::string("--eta: ") + e.what());
      }
      checks.require(eta > 0 && eta < 1, "--eta must lie in (0, 1)");
      checks.require(part.m >= 1, "--m must be >= 1");
      checks.require(part.block >= 1, "--block must be >= 1");
      checks.require(part.stages >= 0, "--stages must be >= 0");
      checks.require(part.max_depth >= 0, "--max-depth must be >= 0");
      checks.raise();
      const auto Q = io::poly_from_json(io::read_json_file(part.q));
      PartitionPlan plan;
      if (part.desk) {
        PartitionOptions opt;
        opt.eta = eta;
        opt.levels = {{part.m, part.block, part.stages}};
        opt.max_depth = part.max_depth;
        opt.strategy = part.greedy ? CanonicalStrategy::Greedy : CanonicalStrategy::Exhaustive;
        plan = partition_polynomial(Q, opt);
      } else {
        plan = partition_polynomial_paper(Q, eta, part.m);
      }
      auto j = io::to_json(plan);
      if (part.audit) {
        const auto a = audit_plan(Q, plan);
        j["audit"] = Json{{"ok", a.ok()}, {"covered", a.covered}, {"detail", a.detail}};
      }
      run.emit(j);
      return plan.status == PartitionStatus::Complete ? kOk : kNotFound;
    }

    if (s_embed->parsed()) {
      run.command = "embed";
      run.sub = s_embed;
      checks.file(embed.e, "--e");
      checks.require(!embed.x.empty() || !embed.code.empty(), "one of --x and --code");
      if (!embed.x.empty()) checks.file(embed.x, "--x");
      if (!embed.code.empty()) checks.file(embed.code, "--code");
      checks.raise();
      const auto e = io::embedding_from_json(io::read_json_file(embed.e));
      Json j{{"embedding", io::to_json(e)}, {"block", e.is_block()}};
      if (!embed.x.empty()) {
        const auto g = io::graph_from_json(io::read_json_file(embed.x));
        if (g.n() > e.m()) throw Error(Errc::VertexOutOfRange, "--x lives on more than m = " + std::to_string(e.m()) + " vertices");
        const auto y = graph_on(e.domain(), g).point();
        j["x"] = io::point_json(y);
        j["image"] = io::point_json(e.apply(y));
      }
      if (!embed.code.empty()) j["conditional_density"] = io::to_json(conditional_density(e, load_family(embed.code)));
      run.emit(j);
      return kOk;
    }

    if (s_iso->parsed()) {
      run.command = "iso";
      run.sub = s_iso;
      checks.file(iso_a, "--a");
      checks.file(iso_b, "--b");
      checks.raise();
      const auto a = io::graph_from_json(io::read_json_file(iso_a));
      const auto b = io::graph_from_json(io::read_json_file(iso_b));
      run.emit(Json{{"isomorphic", are_isomorphic(a, b)}});
      return kOk;
    }

    if (s_member->parsed()) {
      run.command = "member";
      run.sub = s_member;
      checks.file(member_g, "--g");
      checks.raise();
      const auto g = io::graph_from_json(io::read_json_file(member_g));
      const auto forb = io::forbidden_from_arg(member_family);
      run.emit(Json{{"family", forb.describe()}, {"member", is_isomorphic_to_member(g, forb)}});
      return kOk;
    }

    if (s_lines->parsed()) {
      run.command = "dphj check-lines";
      run.sub = s_lines;
      checks.file(dphj.in, "--in");
      checks.raise();
      const auto A = io::word_set_from_json(io::read_json_file(dphj.in));
      const auto line = find_line(A);
      run.emit(Json{{"n", A.n()},
                    {"cardinality", A.cardinality()},
                    {"density", io::to_json(A.density())},
                    {"line_free", !line},
                    {"line", line ? line_json(*line) : Json(nullptr)}});
      return kOk;
    }

    if (s_reduce->parsed()) {
      run.command = "dphj reduce";
      run.sub = s_reduce;
      checks.require(dphj.code.empty() != dphj.words.empty(), "exactly one of --code and --words");
      if (!dphj.code.empty()) checks.file(dphj.code, "--code");
      if (!dphj.words.empty()) {
        checks.file(dphj.words, "--words");
        checks.require(dphj.n1 >= 1, "--n1 is required with --words");
      }
      checks.raise();
      if (!dphj.code.empty()) {
        const auto fam = load_family(dphj.code);
        const auto D = code_to_word_set(fam);
        run.emit(Json{{"code_density", io::to_json(fam.density())}, {"words", io::to_json(D)}});
        return kOk;
      }
      const auto A = io::word_set_from_json(io::read_json_file(dphj.words));
      const auto r = symmetric_reduction(A, dphj.n1);
      Json blocks = Json::array();
      for (const auto& dev : r.concentration.max_deviation) blocks.push_back(io::to_json(dev));
      run.emit(Json{{"n1", r.n1},
                    {"block", r.block},
                    {"concentrated", r.concentration.i0.has_value()},
                    {"hypothesis_met", r.concentration.hypothesis_met},
                    {"max_deviation", blocks},
                    {"y0", io::square_word_json(A.n(), r.y0)},
                    {"average", io::to_json(r.average)},
                    {"achieved", io::to_json(r.achieved)},
                    {"B", io::to_json(r.B)},
                    {"code", io::to_json(r.code)}});
      return r.concentration.i0 ? kOk : kNotFound;
    }

    if (s_back->parsed()) {
      run.command = "dphj reduce-back";
      run.sub = s_back;
      checks.file(dphj.words, "--words");
      checks.raise();
      const auto B = io::word_set_from_json(io::read_json_file(dphj.words));
      const auto fam = word_set_to_code(B);
      if (fs::path(run.common.out).extension() == ".f2cf") {
        run.emit_raw(run.common.out, family_bytes(fam));
      } else {
        run.emit(Json{{"symmetric_density", io::to_json(symmetric_density(B))}, {"code", io::to_json(fam)},
                      {"density", io::to_json(fam.density())}});
      }
      return kOk;
    }

    if (s_self->parsed()) {
      acceptance::Options opt;
      opt.seed = run.common.seed;
      opt.only = only;
      const auto results = acceptance::run_all(opt, &std::cerr);
      return acceptance::print_table(std::cout, results) ? kOk : kError;
    }
  } catch (const ConfigError& e) {
    std::cerr << "InvalidConfig: " << e.what() << '\n';
    return kError;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    const auto c = e.code();
    return (c == Errc::CanonicalSetNotFound || c == Errc::InsufficientRoom) ? kNotFound : kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
