// One line per acceptance criterion; exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ftop/cli.hpp"
#include "ftop/oracle.hpp"
#include "ftop/tensor.hpp"
#include "ftop/topsys.hpp"
#include "ftop/workspace.hpp"

using namespace ftop;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = FTOP_FIXTURES;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

oracle::InstanceBudget budget(std::size_t points, std::size_t opens, std::int64_t den, std::size_t n,
                              std::uint64_t seed) {
  oracle::InstanceBudget b;
  b.max_points = points;
  b.max_opens = opens;
  b.max_degree_denominator = den;
  b.instances = n;
  b.seed = seed;
  return b;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Fixture {
  std::string name;
  FuzzyTopSystem system;
  bool crisp;
};

std::vector<Fixture> fixture_systems() {
  std::vector<Fixture> out;
  for (const char* file : {"sierpinski.ftop", "discrete2.ftop", "indiscrete.ftop", "diamond.ftop"}) {
    const auto ws = load_workspace(kFixtures + "/" + file);
    for (const auto& [name, c] : ws.crisp) out.push_back({name, embed_crisp(c.points, ws.frame(c.frame), c.sat), true});
    for (const auto& [name, s] : ws.systems) out.push_back({name, validate_system(s.points, ws.frame(s.frame), s.alpha), false});
  }
  return out;
}

Verdict category_laws() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const auto report = oracle::check_category_laws(budget(3, 3, 6, 500, 2024));
  const double t = seconds_since(start);
  v.require(report.tried == 500, "tried=" + std::to_string(report.tried));
  v.require(report.ok(), report.ok() ? "" : report.failures.front().witness);
  v.require(t < 60, "runtime=" + std::to_string(t));
  if (v.pass) v.detail = "instances=500 failures=0 seconds=" + std::to_string(t);
  return v;
}

Verdict monoidal_closure() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const auto b = budget(2, 2, 4, 1, 0);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    auto rng = oracle::instance_rng(2025, i);
    const auto a = oracle::random_object(rng, b, "a", "x");
    const auto bb = oracle::random_object(rng, b, "b", "y");
    const auto c = oracle::random_object(rng, b, "c", "z");
    const auto r = oracle::check_adjunction(a, bb, c, i);
    v.require(r.ok(), r.ok() ? "" : "instance=" + std::to_string(i) + " " + r.failures.front().witness);
    pairs += r.tried;
  }
  const double t = seconds_since(start);
  v.require(t < 120, "runtime=" + std::to_string(t));
  if (v.pass) v.detail = "triples=50 morphisms=" + std::to_string(pairs) + " seconds=" + std::to_string(t);
  return v;
}

Verdict universal_properties() {
  Verdict v;
  const auto b = budget(2, 2, 4, 1, 0);
  std::size_t cones = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    auto rng = oracle::instance_rng(2026, i);
    const auto x = oracle::random_object(rng, b, "a", "x");
    const auto y = oracle::random_object(rng, b, "b", "y");
    const auto t = oracle::random_object(rng, b, "t", "s");
    for (auto kind : {oracle::UniversalKind::Product, oracle::UniversalKind::Coproduct}) {
      const auto r = oracle::check_universal_property(kind, x, y, t, {}, i);
      v.require(r.ok(), r.ok() ? "" : r.law + " instance=" + std::to_string(i) + " " + r.failures.front().witness);
      cones += r.tried;
    }
  }
  if (v.pass) v.detail = "triples=50 cone-pairs=" + std::to_string(cones) + " failures=0";
  return v;
}

Verdict crisp_embedding() {
  Verdict v;
  std::size_t checked = 0;
  for (const auto& f : fixture_systems()) {
    if (!f.crisp) continue;
    v.require(f.system.frame.size() <= 5 && f.system.points.size() <= 3, f.name + " exceeds size limits");
    v.require(!check_system(f.system), f.name + " fails validation");
    const auto& s = f.system;
    for (std::size_t u = 0; u < s.points.size(); ++u)
      for (Element x = 0; x < s.frame.size(); ++x)
        for (Element y = 0; y < s.frame.size(); ++y) {
          const bool both = s(u, x) == Degree::one() && s(u, y) == Degree::one();
          v.require(s(u, s.frame.meet(x, y)) == (both ? Degree::one() : Degree::zero()),
                    f.name + " condition (i) not an equality");
        }
    ++checked;
  }
  v.require(checked == 4, "crisp fixtures=" + std::to_string(checked));
  if (v.pass) v.detail = "fixtures=" + std::to_string(checked);
  return v;
}

Verdict subcategory(const std::string& findings_path) {
  Verdict v;
  std::vector<std::pair<std::string, FuzzyTopSystem>> systems;
  for (const auto& f : fixture_systems())
    if (f.crisp) systems.emplace_back(f.name, f.system);
  const auto report = oracle::fullness_search(systems);
  v.require(report.law.ok(), report.law.ok() ? "" : report.law.failures.front().witness);
  v.require(report.dial_morphisms == report.topological_morphisms + report.counterexamples.size(),
            "classification incomplete");
  std::ofstream out(findings_path);
  out << "# Dial morphisms between crisp fixture systems that are not topological\n";
  for (const auto& c : report.counterexamples) {
    out << c.source << " -> " << c.target << " f=" << cli::detail::index_list(c.f)
        << " g=" << cli::detail::index_list(c.g) << ' ' << c.reason << '\n';
  }
  v.require(static_cast<bool>(out), "cannot write " + findings_path);
  if (v.pass)
    v.detail = "topological=" + std::to_string(report.topological_morphisms) +
               " dial=" + std::to_string(report.dial_morphisms) +
               " non-topological=" + std::to_string(report.counterexamples.size()) + " findings=" + findings_path;
  return v;
}

// Chang topology on the extents, sup closure over every subfamily.
bool extents_topology_by_subsets(const FuzzyTopSystem& s) {
  std::set<std::vector<Degree>> family;
  for (Element x = 0; x < s.frame.size(); ++x) family.insert(extent(s, x).membership);
  const std::size_t n = s.points.size();
  if (!family.contains(std::vector<Degree>(n, Degree::zero()))) return false;
  if (!family.contains(std::vector<Degree>(n, Degree::one()))) return false;
  const std::vector<std::vector<Degree>> members(family.begin(), family.end());
  for (const auto& a : members)
    for (const auto& b : members) {
      std::vector<Degree> lo(n);
      for (std::size_t u = 0; u < n; ++u) lo[u] = std::min(a[u], b[u]);
      if (!family.contains(lo)) return false;
    }
  for (std::uint32_t mask = 0; mask < (1u << members.size()); ++mask) {
    std::vector<Degree> hi(n, Degree::zero());
    for (std::size_t k = 0; k < members.size(); ++k)
      if (mask >> k & 1)
        for (std::size_t u = 0; u < n; ++u) hi[u] = std::max(hi[u], members[k][u]);
    if (!family.contains(hi)) return false;
  }
  return true;
}

Verdict extents() {
  Verdict v;
  std::size_t checked = 0;
  for (const auto& f : fixture_systems()) {
    if (!f.crisp && f.name != "fuzzy_sierpinski") continue;
    const auto report = extents_form_topology(f.system);
    v.require(report.pass, f.name + " " + report.failure + " " + report.witness);
    v.require(extents_topology_by_subsets(f.system), f.name + " fails the subset oracle");
    ++checked;
  }
  v.require(checked == 5, "systems=" + std::to_string(checked));
  if (v.pass) v.detail = "systems=" + std::to_string(checked);
  return v;
}

Verdict tensor_golden() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const auto c2 = chain_frame({"bot", "top"});
  const auto t = tensor_frame(c2, c2);
  v.require(t.frame.size() == 2, "size=" + std::to_string(t.frame.size()));
  v.require(oracle::iso_check(t.frame, c2).verdict != oracle::IsoVerdict::NotIsomorphic, "not isomorphic to C2");

  const auto frames = oracle::frame_catalog();
  std::size_t sets = 0;
  for (std::size_t i = 0; sets < 200; ++i) {
    auto rng = oracle::instance_rng(2027, i);
    const auto& x = frames[oracle::pick(rng, 0, frames.size() - 1)].second;
    const auto& y = frames[oracle::pick(rng, 0, frames.size() - 1)].second;
    if (x.size() * y.size() > 12) continue;
    CIdeal small(x.size(), y.size()), large(x.size(), y.size());
    for (Element a = 0; a < x.size(); ++a)
      for (Element b = 0; b < y.size(); ++b) {
        const auto r = oracle::pick(rng, 0, 3);
        if (r == 0) small.insert(a, b);
        if (r <= 1) large.insert(a, b);
      }
    const auto cs = cideal_closure(x, y, small), cl = cideal_closure(x, y, large);
    v.require(small.subset_of(cs), "not extensive at set " + std::to_string(sets));
    v.require(cs.subset_of(cl), "not monotone at set " + std::to_string(sets));
    v.require(cideal_closure(x, y, cs) == cs, "not idempotent at set " + std::to_string(sets));
    ++sets;
  }
  const double secs = seconds_since(start);
  v.require(secs < 60, "runtime=" + std::to_string(secs));
  if (v.pass) v.detail = "tensor(C2,C2)=2 closure-sets=200 seconds=" + std::to_string(secs);
  return v;
}

Verdict sum_is_coproduct() {
  Verdict v;
  const auto b = budget(3, 5, 6, 1, 0);
  for (std::size_t i = 0; i < 50; ++i) {
    auto rng = oracle::instance_rng(2028, i);
    const auto s = oracle::random_system(rng, b, "p");
    const auto t = oracle::random_system(rng, b, "q");
    const auto sum = top_sum(s, t).system.dial();
    const auto co = coproduct_obj(s.dial(), t.dial());
    v.require(sum.points == co.points, "points differ at pair " + std::to_string(i));
    v.require(sum.opens == co.opens, "opens differ at pair " + std::to_string(i));
    v.require(sum.alpha == co.alpha, "tables differ at pair " + std::to_string(i));
  }
  if (v.pass) v.detail = "pairs=50 identical=50";
  return v;
}

Verdict product_basic_law() {
  Verdict v;
  const auto systems = fixture_systems();
  std::size_t entries = 0, valid = 0, pairs = 0;
  for (const auto& a : systems)
    for (const auto& b : systems) {
      const auto prod = top_product(a.system, b.system, 25);
      const auto& x = a.system.frame;
      const auto& y = b.system.frame;
      const std::size_t nv = b.system.points.size();
      ++pairs;
      valid += prod.report.pass();
      v.require(prod.report.pass() == !check_system(prod.system), "report does not match a fresh check");
      for (Element ex = 0; ex < x.size(); ++ex)
        for (Element ey = 0; ey < y.size(); ++ey) {
          if (ex == x.bottom() || ey == y.bottom()) continue;
          std::vector<bool> bits(x.size() * y.size());
          for (Element p = 0; p < x.size(); ++p)
            for (Element q = 0; q < y.size(); ++q)
              bits[p * y.size() + q] = p == x.bottom() || q == y.bottom() || (x.leq(p, ex) && y.leq(q, ey));
          const auto it = std::find_if(prod.tensor.ideals.begin(), prod.tensor.ideals.end(),
                                       [&](const CIdeal& d) { return d.bits() == bits; });
          v.require(it != prod.tensor.ideals.end(), "basic element missing");
          if (it == prod.tensor.ideals.end()) continue;
          const auto e = static_cast<Element>(it - prod.tensor.ideals.begin());
          for (std::size_t u = 0; u < a.system.points.size(); ++u)
            for (std::size_t w = 0; w < nv; ++w) {
              v.require(prod.system(u * nv + w, e) == std::max(a.system(u, ex), b.system(w, ey)),
                        a.name + " x " + b.name + " at " + x.name(ex) + "*" + y.name(ey));
              ++entries;
            }
        }
    }
  if (v.pass)
    v.detail = "pairs=" + std::to_string(pairs) + " entries=" + std::to_string(entries) +
               " valid-products=" + std::to_string(valid);
  return v;
}

Verdict cli_round_trip(const fs::path& work) {
  Verdict v;
  std::size_t documents = 0;
  for (const auto& entry : fs::directory_iterator(kFixtures)) {
    const auto ext = entry.path().extension();
    if (ext != ".ftop" && ext != ".json") continue;
    const auto ws = load_workspace(entry.path().string());
    const auto text = emit_workspace(ws);
    v.require(parse_workspace(text) == ws, "round trip " + entry.path().filename().string());
    v.require(emit_workspace(parse_workspace(text)) == text, "emit not stable " + entry.path().filename().string());
    ++documents;
  }

  struct Case {
    std::string input;
    std::vector<std::string> argv;
    int expected;
  };
  fs::create_directories(work);
  const auto sum = (work / "sum.ftop").string();
  const std::vector<Case> matrix{
      {"sierpinski.ftop", {"validate", "sierpinski"}, 0},
      {"sierpinski.ftop", {"validate", "fuzzy_sierpinski"}, 0},
      {"sierpinski.json", {"validate", "sierpinski"}, 0},
      {"sierpinski.ftop", {"topsys-check", "fuzzy_sierpinski"}, 0},
      {"sierpinski.ftop", {"topology-check", "fuzzy_sierpinski"}, 0},
      {"sierpinski.ftop", {"extent", "fuzzy_sierpinski", "a"}, 0},
      {"sierpinski.ftop", {"embed", "sierpinski"}, 0},
      {"discrete2.ftop", {"validate", "discrete2"}, 0},
      {"indiscrete.ftop", {"validate", "indiscrete"}, 0},
      {"diamond.ftop", {"validate", "diamond"}, 0},
      {"diamond.ftop", {"topology-check", "diamond"}, 0},
      {"diamond.ftop", {"topology-check", "fuzzy_diamond"}, 1},
      {"objects.ftop", {"compose", "m1", "m2"}, 0},
      {"objects.ftop", {"tensor", "A", "B"}, 0},
      {"objects.ftop", {"hom", "B", "C"}, 0},
      {"objects.ftop", {"product", "A", "B"}, 0},
      {"objects.ftop", {"coproduct", "A", "B"}, 0},
      {"sums.ftop", {"top-sum", "A", "B", "--out", sum}, 0},
      {"sums.ftop", {"iso", sum, "coproduct(A,B)"}, 0},
      {"sums.ftop", {"top-product", "A", "B"}, 0},
      {"bad.ftop", {"topsys-check", "bad"}, 1},
      {"bad.ftop", {"topsys-check", "bad_meet"}, 1},
      {"bad.ftop", {"topsys-check", "bad_join"}, 1},
      {"bad.ftop", {"validate", "bad"}, 1},
      {"bad.ftop", {"validate", "bad_crisp"}, 1},
      {"bad.ftop", {"embed", "bad_crisp"}, 1},
      {"bad.ftop", {"validate", "too_strong"}, 1},
      {"bad.ftop", {"validate", "partial"}, 1},
      {"bad.ftop", {"compose", "too_strong", "too_strong"}, 1},
      {"objects.ftop", {"iso", "A", "B"}, 1},
      {"bad.ftop", {"topology-check", "bad"}, 1},
      {"malformed/unterminated.ftop", {"validate", "C2"}, 2},
      {"malformed/unknown_keyword.ftop", {"validate", "C2"}, 2},
      {"malformed/dangling.ftop", {"validate", "S"}, 2},
      {"malformed/bad_degree.ftop", {"validate", "S"}, 2},
      {"malformed/duplicate.ftop", {"validate", "C2"}, 2},
      {"malformed/n5.ftop", {"validate", "N5"}, 2},
      {"malformed/missing_entry.ftop", {"validate", "S"}, 2},
      {"malformed/truncated.json", {"validate", "C2"}, 2},
      {"sierpinski.ftop", {"validate", "nobody"}, 2},
      {"sierpinski.ftop", {"frobnicate"}, 2},
      {"sierpinski.ftop", {"extent", "fuzzy_sierpinski", "zzz"}, 2},
      {"objects.ftop", {"tensor", "A", "product(B"}, 2},
  };
  for (const auto& c : matrix) {
    cli::Invocation inv;
    inv.input = kFixtures + "/" + c.input;
    inv.command = c.argv[0];
    for (std::size_t i = 1; i < c.argv.size(); ++i) {
      if (c.argv[i] == "--out") {
        inv.out = c.argv[++i];
        continue;
      }
      inv.args.push_back(c.argv[i]);
    }
    std::ostringstream out, err;
    const int code = cli::run(inv, out, err);
    std::string line = c.input;
    for (const auto& a : c.argv) line += " " + a;
    v.require(code == c.expected, line + " exit=" + std::to_string(code) + " expected=" + std::to_string(c.expected));
    if (code == 1) v.require(out.str().find("FAIL kind=") != std::string::npos, line + " has no FAIL line");
  }
  if (v.pass) v.detail = "documents=" + std::to_string(documents) + " commands=" + std::to_string(matrix.size());
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::current_path() / "acceptance_work";
  fs::create_directories(work);
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"category-laws", category_laws},
      {"monoidal-closure", monoidal_closure},
      {"universal-properties", universal_properties},
      {"crisp-embedding", crisp_embedding},
      {"subcategory-soundness", [&] { return subcategory((work / "fullness_counterexamples.txt").string()); }},
      {"extents", extents},
      {"tensor-frame", tensor_golden},
      {"sum-is-coproduct", sum_is_coproduct},
      {"product-basic-law", product_basic_law},
      {"cli-round-trip", [&] { return cli_round_trip(work); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception ") + e.what()};
    }
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion=" << i + 1 << ' ' << criteria[i].first << ' '
              << v.detail << std::endl;
    failures += !v.pass;
  }
  return failures;
}
