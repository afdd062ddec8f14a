#pragma once

// Brute-force checkers for the category-level claims. Nothing here may reuse
// the traversal code of dialectica.hpp (enumerate_morphisms, FunctionSpace):
// hom-sets are walked with an odometer and conditions re-checked inline.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ftop/degree.hpp"
#include "ftop/dialectica.hpp"
#include "ftop/frame.hpp"
#include "ftop/topsys.hpp"

namespace ftop::oracle {

struct InstanceBudget {
  std::size_t max_points = 2;
  std::size_t max_opens = 2;
  std::int64_t max_degree_denominator = 4;
  std::uint64_t seed = 1;
  std::size_t instances = 200;

  /// Throws SizeBoundExceeded on non-positive fields.
  void validate() const {
    if (max_points == 0 || max_opens == 0 || max_degree_denominator <= 0 || instances == 0)
      throw Error(ErrorKind::SizeBoundExceeded, "reason=budget-fields-must-be-positive");
  }
};

struct LawFailure {
  std::size_t instance = 0;
  std::string witness;
};

struct LawReport {
  std::string law;
  std::size_t tried = 0;
  std::vector<LawFailure> failures;
  /// Classified findings that are not implementation failures.
  std::vector<std::string> observations;
  double elapsed_seconds = 0;

  bool ok() const { return failures.empty(); }
};

/// Deterministic per-instance generator: the same (seed, instance) always
/// yields the same stream, so a failure replays from those two numbers.
inline std::mt19937_64 instance_rng(std::uint64_t seed, std::size_t instance) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(instance)};
  return std::mt19937_64(seq);
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Degree random_degree(std::mt19937_64& rng, std::int64_t max_den) {
  const auto den = static_cast<std::int64_t>(pick(rng, 1, static_cast<std::size_t>(max_den)));
  const auto num = static_cast<std::int64_t>(pick(rng, 0, static_cast<std::size_t>(den)));
  return Degree::ratio(num, den);
}

/// Random degree >= floor with denominator bounded by max_den (floor itself
/// when the draw lands below it).
inline Degree random_degree_at_least(std::mt19937_64& rng, std::int64_t max_den, Degree floor) {
  Degree d = random_degree(rng, max_den);
  return d < floor ? floor : d;
}

inline std::vector<std::string> names(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline DialObject random_object(std::mt19937_64& rng, const InstanceBudget& budget, const char* point_prefix = "u",
                                const char* open_prefix = "x") {
  const std::size_t np = pick(rng, 1, budget.max_points), no = pick(rng, 1, budget.max_opens);
  DialObject out{names(point_prefix, np), names(open_prefix, no), FuzzyRelation(np, no)};
  for (std::size_t u = 0; u < np; ++u)
    for (std::size_t x = 0; x < no; ++x) out.alpha.set(u, x, random_degree(rng, budget.max_degree_denominator));
  return out;
}

/// Random morphism out of `source` into a freshly generated target whose
/// relation is raised just enough for the random (f, g) to qualify.
inline DialMorphism random_morphism_from(std::mt19937_64& rng, const ObjectRef& source, const InstanceBudget& budget,
                                         const char* point_prefix, const char* open_prefix) {
  const std::size_t nv = pick(rng, 1, budget.max_points), ny = pick(rng, 1, budget.max_opens);
  std::vector<std::size_t> f(source->points.size()), g(ny);
  for (auto& v : f) v = pick(rng, 0, nv - 1);
  for (auto& x : g) x = pick(rng, 0, source->opens.size() - 1);
  DialObject target{names(point_prefix, nv), names(open_prefix, ny), FuzzyRelation(nv, ny)};
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t y = 0; y < ny; ++y) {
      Degree floor = Degree::zero();
      for (std::size_t u = 0; u < f.size(); ++u)
        if (f[u] == v) floor = join(floor, (*source)(u, g[y]));
      target.alpha.set(v, y, random_degree_at_least(rng, budget.max_degree_denominator, floor));
    }
  return verify_morphism(source, std::make_shared<const DialObject>(std::move(target)), std::move(f), std::move(g));
}

using MapPair = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;

/// Calls visit(f, g) for every f: {0..nu-1} -> {0..nv-1} and
/// g: {0..ny-1} -> {0..nx-1}, odometer order.
template <class Visit>
void for_each_map_pair(std::size_t nu, std::size_t nv, std::size_t ny, std::size_t nx, Visit&& visit) {
  if ((nu > 0 && nv == 0) || (ny > 0 && nx == 0)) return;
  const auto advance = [](std::vector<std::size_t>& digits, std::size_t radix) {
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < radix) return true;
      digits[i] = 0;
    }
    return false;
  };
  std::vector<std::size_t> f(nu, 0);
  do {
    std::vector<std::size_t> g(ny, 0);
    do visit(f, g);
    while (advance(g, nx));
  } while (advance(f, nv));
}

inline double candidate_count(std::size_t nu, std::size_t nv, std::size_t ny, std::size_t nx) {
  double n = 1;
  for (std::size_t i = 0; i < nu; ++i) n *= static_cast<double>(nv);
  for (std::size_t i = 0; i < ny; ++i) n *= static_cast<double>(nx);
  return n;
}

/// Every pair (f: U -> V, g: Y -> X) satisfying the morphism inequality,
/// found by odometer enumeration and a direct inequality loop. Returns
/// nullopt when the candidate count exceeds `bound`.
inline std::optional<std::vector<MapPair>> brute_hom(const DialObject& a, const DialObject& b,
                                                     std::size_t bound = std::size_t{1} << 22) {
  const std::size_t nu = a.points.size(), nv = b.points.size(), nx = a.opens.size(), ny = b.opens.size();
  if (candidate_count(nu, nv, ny, nx) > static_cast<double>(bound)) return std::nullopt;
  std::vector<MapPair> out;
  for_each_map_pair(nu, nv, ny, nx, [&](const auto& f, const auto& g) {
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t u = 0; u < nu; ++u)
        if (b.alpha.at(f[u], y) < a.alpha.at(u, g[y])) return;
    out.emplace_back(f, g);
  });
  return out;
}

/// Tablewise check of the composite condition, independent of compose().
inline bool composite_condition_holds(const DialMorphism& m) {
  const auto& a = m.source();
  const auto& c = m.target();
  for (std::size_t z = 0; z < c.opens.size(); ++z)
    for (std::size_t u = 0; u < a.points.size(); ++u)
      if (c.alpha.at(m.f()[u], z) < a.alpha.at(u, m.g()[z])) return false;
  return true;
}

inline std::string describe(const DialMorphism& m) {
  std::ostringstream os;
  os << "f=[";
  for (std::size_t i = 0; i < m.f().size(); ++i) os << (i ? "," : "") << m.f()[i];
  os << "] g=[";
  for (std::size_t i = 0; i < m.g().size(); ++i) os << (i ? "," : "") << m.g()[i];
  os << "]";
  return os.str();
}

using ComposeFn = std::function<DialMorphism(const DialMorphism&, const DialMorphism&)>;

/// Associativity and both identity laws on random chains A -> B -> C -> D.
inline LawReport check_category_laws(const InstanceBudget& budget, const ComposeFn& compose_fn = ftop::compose) {
  budget.validate();
  const auto start = std::chrono::steady_clock::now();
  LawReport report{"category-laws", 0, {}, {}, 0};
  for (std::size_t i = 0; i < budget.instances; ++i) {
    auto rng = instance_rng(budget.seed, i);
    const std::string tag = "seed=" + std::to_string(budget.seed) + " instance=" + std::to_string(i);
    ++report.tried;
    try {
      auto a = std::make_shared<const DialObject>(random_object(rng, budget, "a", "x"));
      auto m1 = random_morphism_from(rng, a, budget, "b", "y");
      auto m2 = random_morphism_from(rng, m1.target_ref(), budget, "c", "z");
      auto m3 = random_morphism_from(rng, m2.target_ref(), budget, "d", "w");

      const auto left = compose_fn(compose_fn(m1, m2), m3);
      const auto right = compose_fn(m1, compose_fn(m2, m3));
      if (!(left == right))
        report.failures.push_back({i, tag + " law=associativity left=" + describe(left) + " right=" + describe(right)});
      if (!composite_condition_holds(left))
        report.failures.push_back({i, tag + " law=composite-condition " + describe(left)});
      if (!(compose_fn(identity(a), m1) == m1))
        report.failures.push_back({i, tag + " law=left-identity m=" + describe(m1)});
      if (!(compose_fn(m1, identity(m1.target_ref())) == m1))
        report.failures.push_back({i, tag + " law=right-identity m=" + describe(m1)});
    } catch (const Error& e) {
      report.failures.push_back({i, tag + " error=" + std::string(e.what())});
    }
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Exhaustively compares Hom(A (x) B, C) with Hom(A, B -o C): equal sizes,
/// curry lands in the right hom-set, uncurry . curry = id and
/// curry . uncurry = id.
inline LawReport check_adjunction(const DialObject& a, const DialObject& b, const DialObject& c,
                                  std::size_t instance = 0) {
  const auto start = std::chrono::steady_clock::now();
  LawReport report{"monoidal-closure", 0, {}, {}, 0};
  const auto tensor = std::make_shared<const DialObject>(tensor_obj(a, b));
  const auto hom = std::make_shared<const DialObject>(hom_obj(b, c));
  const auto cref = std::make_shared<const DialObject>(c);
  const auto aref = std::make_shared<const DialObject>(a);
  auto left = brute_hom(*tensor, c);
  auto right = brute_hom(a, *hom);
  if (!left || !right) throw Error(ErrorKind::SizeBoundExceeded, "reason=adjunction-hom-sets");

  report.tried = left->size() + right->size();
  if (left->size() != right->size())
    report.failures.push_back({instance, "law=equal-counts left=" + std::to_string(left->size()) +
                                             " right=" + std::to_string(right->size())});
  const std::set<MapPair> right_set(right->begin(), right->end());
  std::set<MapPair> images;
  try {
    for (const auto& [f, g] : *left) {
      auto m = DialMorphism::assume_verified(tensor, cref, f, g);
      auto n = curry(m, a, b);
      if (!right_set.contains({n.f(), n.g()}))
        report.failures.push_back({instance, "law=curry-lands-in-hom " + describe(m)});
      images.insert({n.f(), n.g()});
      if (!(uncurry(n, b, c) == m)) report.failures.push_back({instance, "law=uncurry-curry " + describe(m)});
    }
    if (images.size() != left->size()) report.failures.push_back({instance, "law=curry-injective"});
    for (const auto& [f, g] : *right) {
      auto n = DialMorphism::assume_verified(aref, hom, f, g);
      if (!(curry(uncurry(n, b, c), a, b) == n))
        report.failures.push_back({instance, "law=curry-uncurry " + describe(n)});
    }
  } catch (const Error& e) {
    report.failures.push_back({instance, "error=" + std::string(e.what())});
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

enum class UniversalKind { Product, Coproduct };

using ObjectBuilder = std::function<DialObject(const DialObject&, const DialObject&)>;

/// For every pair of morphisms T -> A, T -> B (product) or A -> T, B -> T
/// (coproduct), searches all candidates for the mediating morphism and
/// asserts there is exactly one. `builder` replaces product_obj /
/// coproduct_obj for mutation tests.
inline LawReport check_universal_property(UniversalKind kind, const DialObject& a, const DialObject& b,
                                          const DialObject& t, const ObjectBuilder& builder = {},
                                          std::size_t instance = 0) {
  const auto start = std::chrono::steady_clock::now();
  const bool product = kind == UniversalKind::Product;
  LawReport report{product ? "product-universal" : "coproduct-universal", 0, {}, {}, 0};
  const auto aref = std::make_shared<const DialObject>(a);
  const auto bref = std::make_shared<const DialObject>(b);
  const auto tref = std::make_shared<const DialObject>(t);
  const auto built = builder ? builder(a, b) : (product ? product_obj(a, b) : coproduct_obj(a, b));
  const auto pref = std::make_shared<const DialObject>(built);

  try {
    auto [leg1, leg2] = product ? projections(pref, aref, bref) : injections(pref, aref, bref);
    auto to_pairs = [](const std::optional<std::vector<MapPair>>& hs) {
      if (!hs) throw Error(ErrorKind::SizeBoundExceeded, "reason=universal-hom-sets");
      return *hs;
    };
    const auto cone1 = to_pairs(product ? brute_hom(t, a) : brute_hom(a, t));
    const auto cone2 = to_pairs(product ? brute_hom(t, b) : brute_hom(b, t));
    const auto mediators = to_pairs(product ? brute_hom(t, built) : brute_hom(built, t));

    std::map<std::pair<MapPair, MapPair>, std::size_t> hits;
    for (const auto& [f, g] : mediators) {
      auto m = product ? DialMorphism::assume_verified(tref, pref, f, g)
                       : DialMorphism::assume_verified(pref, tref, f, g);
      auto c1 = product ? compose(m, leg1) : compose(leg1, m);
      auto c2 = product ? compose(m, leg2) : compose(leg2, m);
      ++hits[{{c1.f(), c1.g()}, {c2.f(), c2.g()}}];
    }
    for (const auto& p : cone1)
      for (const auto& q : cone2) {
        ++report.tried;
        auto it = hits.find({p, q});
        const std::size_t n = it == hits.end() ? 0 : it->second;
        if (n != 1) {
          std::ostringstream os;
          os << (n == 0 ? "law=existence" : "law=uniqueness") << " mediators=" << n;
          report.failures.push_back({instance, os.str()});
        }
      }
  } catch (const Error& e) {
    report.failures.push_back({instance, "error=" + std::string(e.what())});
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------------------
// Frames, crisp systems and the fullness search

/// The distributive lattices with at most five elements, up to isomorphism.
inline std::vector<std::pair<std::string, FiniteFrame>> frame_catalog() {
  std::vector<std::pair<std::string, FiniteFrame>> out;
  out.emplace_back("C1", chain_frame({"top"}));
  out.emplace_back("C2", chain_frame({"bot", "top"}));
  out.emplace_back("C3", chain_frame({"bot", "m", "top"}));
  out.emplace_back("C4", chain_frame({"bot", "m1", "m2", "top"}));
  out.emplace_back("Diamond", validate_frame({"bot", "a", "b", "top"},
                                             {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}}));
  out.emplace_back("C5", chain_frame({"bot", "m1", "m2", "m3", "top"}));
  out.emplace_back("DiamondTop", validate_frame({"bot", "a", "b", "c", "top"},
                                                {{"bot", "a"}, {"bot", "b"}, {"a", "c"}, {"b", "c"}, {"c", "top"}}));
  out.emplace_back("BotDiamond", validate_frame({"bot", "c", "a", "b", "top"},
                                                {{"bot", "c"}, {"c", "a"}, {"c", "b"}, {"a", "top"}, {"b", "top"}}));
  return out;
}

/// Prime filters of a finite frame as membership vectors: the up-sets of
/// non-bottom elements that are prime.
inline std::vector<std::vector<bool>> prime_filters(const FiniteFrame& frame) {
  std::vector<std::vector<bool>> out;
  for (Element p = 0; p < frame.size(); ++p) {
    if (p == frame.bottom()) continue;
    std::vector<bool> up(frame.size());
    for (Element x = 0; x < frame.size(); ++x) up[x] = frame.leq(p, x);
    bool prime = true;
    for (Element x = 0; x < frame.size() && prime; ++x)
      for (Element y = 0; y < frame.size() && prime; ++y)
        if (up[frame.join(x, y)] && !up[x] && !up[y]) prime = false;
    if (prime) out.push_back(std::move(up));
  }
  return out;
}

/// Random valid fuzzy system: each point gets weighted prime filters (one of
/// weight 1) and alpha(u, x) is the largest weight of a filter holding x.
/// Conditions (i)-(iii) hold by construction; callers still re-check.
inline FuzzyTopSystem random_system(std::mt19937_64& rng, const InstanceBudget& budget, const char* point_prefix) {
  std::vector<FiniteFrame> frames;
  for (auto& [name, f] : frame_catalog())
    if (f.size() >= 2 && f.size() <= std::max<std::size_t>(budget.max_opens, 2)) frames.push_back(f);
  FiniteFrame frame = frames[pick(rng, 0, frames.size() - 1)];
  const auto filters = prime_filters(frame);
  const std::size_t np = pick(rng, 1, budget.max_points);
  FuzzyTopSystem s{names(point_prefix, np), frame, FuzzyRelation(np, frame.size())};
  for (std::size_t u = 0; u < np; ++u) {
    std::vector<Degree> weight(filters.size(), Degree::zero());
    for (auto& w : weight)
      if (pick(rng, 0, 1)) w = random_degree(rng, budget.max_degree_denominator);
    weight[pick(rng, 0, filters.size() - 1)] = Degree::one();
    for (Element x = 0; x < frame.size(); ++x) {
      Degree d = Degree::zero();
      for (std::size_t k = 0; k < filters.size(); ++k)
        if (filters[k][x]) d = join(d, weight[k]);
      s.alpha.set(u, x, d);
    }
  }
  return s;
}

/// Every crisp system over catalog frames with at most `max_opens` elements
/// and 1..max_points points (points assigned prime filters in
/// non-decreasing order, so each system appears once up to point order).
inline std::vector<std::pair<std::string, FuzzyTopSystem>> crisp_systems(const InstanceBudget& budget) {
  std::vector<std::pair<std::string, FuzzyTopSystem>> out;
  for (auto& [fname, frame] : frame_catalog()) {
    if (frame.size() > budget.max_opens) continue;
    const auto filters = prime_filters(frame);
    if (filters.empty()) continue;
    for (std::size_t np = 1; np <= budget.max_points; ++np) {
      std::vector<std::size_t> choice(np, 0);
      while (true) {
        std::vector<std::pair<std::string, std::string>> sat;
        const auto pts = names("p", np);
        std::string label = fname + "/";
        for (std::size_t u = 0; u < np; ++u) {
          label += std::to_string(choice[u]);
          for (Element x = 0; x < frame.size(); ++x)
            if (filters[choice[u]][x]) sat.emplace_back(pts[u], frame.name(x));
        }
        out.emplace_back(label, embed_crisp(pts, frame, sat));
        std::size_t i = np;
        while (i > 0 && choice[i - 1] + 1 == filters.size()) --i;
        if (i == 0) break;
        ++choice[i - 1];
        for (std::size_t j = i; j < np; ++j) choice[j] = choice[i - 1];
      }
    }
  }
  return out;
}

struct FullnessEntry {
  std::string source;
  std::string target;
  std::vector<std::size_t> f;
  std::vector<std::size_t> g;
  bool topological = false;
  std::string reason;  // why a Dial morphism is not topological
};

struct FullnessReport {
  LawReport law;
  std::size_t dial_morphisms = 0;
  std::size_t topological_morphisms = 0;
  std::vector<FullnessEntry> counterexamples;  // Dial morphisms that are not topological
};

/// For each ordered pair of crisp systems: (1) every topological-system
/// morphism (frame hom + crisp biconditional) must verify as a Dial
/// morphism -- a hard failure otherwise; (2) every Dial morphism between
/// the underlying objects is classified, and the non-topological ones are
/// recorded as counterexamples to fullness (observations, not failures).
inline FullnessReport fullness_search(const std::vector<std::pair<std::string, FuzzyTopSystem>>& systems,
                                      std::size_t bound = std::size_t{1} << 20) {
  const auto start = std::chrono::steady_clock::now();
  FullnessReport out;
  out.law.law = "fullness";
  for (const auto& [sname, s] : systems)
    for (const auto& [tname, t] : systems) {
      const DialObject sd = s.dial(), td = t.dial();
      auto dial = brute_hom(sd, td, bound);
      if (!dial) throw Error(ErrorKind::SizeBoundExceeded, "pair=" + sname + "->" + tname);
      std::set<MapPair> dial_set(dial->begin(), dial->end());

      // Topological morphisms, enumerated from frame homs directly.
      std::size_t topo_here = 0;
      for_each_map_pair(sd.points.size(), td.points.size(), td.opens.size(), sd.opens.size(),
                        [&](const auto& f, const auto& g) {
                          try {
                            validate_frame_hom(t.frame, s.frame, g);
                          } catch (const Error&) {
                            return;
                          }
                          for (std::size_t u = 0; u < f.size(); ++u)
                            for (Element y = 0; y < t.frame.size(); ++y)
                              if (s(u, g[y]) != t(f[u], y)) return;
                          ++topo_here;
                          ++out.law.tried;
                          if (!dial_set.contains({f, g}))
                            out.law.failures.push_back(
                                {0, "law=topological-is-dial source=" + sname + " target=" + tname});
                          try {
                            verify_morphism(sd, td, f, g);
                          } catch (const Error& e) {
                            out.law.failures.push_back(
                                {0, "law=topological-verifies source=" + sname + " error=" + e.what()});
                          }
                        });
      out.topological_morphisms += topo_here;

      for (const auto& [f, g] : *dial) {
        ++out.dial_morphisms;
        FullnessEntry entry{sname, tname, f, g, false, {}};
        try {
          validate_frame_hom(t.frame, s.frame, g);
          entry.topological = true;
          for (std::size_t u = 0; u < f.size() && entry.topological; ++u)
            for (Element y = 0; y < t.frame.size() && entry.topological; ++y)
              if (s(u, g[y]) != t(f[u], y)) {
                entry.topological = false;
                entry.reason = "biconditional-fails u=" + s.points[u] + " y=" + t.frame.name(y);
              }
        } catch (const Error& e) {
          entry.reason = "not-frame-hom " + std::string(to_string(e.kind())) + " " + e.witness();
        }
        if (!entry.topological) out.counterexamples.push_back(std::move(entry));
      }
    }
  const std::size_t topo_in_dial = out.dial_morphisms - out.counterexamples.size();
  if (topo_in_dial != out.topological_morphisms)
    out.law.failures.push_back({0, "law=classification-count dial-topological=" + std::to_string(topo_in_dial) +
                                       " enumerated=" + std::to_string(out.topological_morphisms)});
  out.law.observations.push_back("dial-morphisms=" + std::to_string(out.dial_morphisms) +
                                 " topological=" + std::to_string(out.topological_morphisms) +
                                 " non-topological=" + std::to_string(out.counterexamples.size()));
  out.law.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

enum class IsoVerdict { Identical, Isomorphic, NotIsomorphic };

inline std::string_view to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Identical: return "identical";
    case IsoVerdict::Isomorphic: return "isomorphic";
    case IsoVerdict::NotIsomorphic: return "not-isomorphic";
  }
  return "unknown";
}

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::NotIsomorphic;
  std::vector<std::size_t> point_map;  // frames: the element bijection
  std::vector<std::size_t> open_map;
  std::string reason;
};

inline constexpr std::size_t kIsoNodeBudget = 50'000'000;

/// Order-isomorphism search between finite frames (order isomorphisms of
/// lattices are lattice isomorphisms). Throws SizeBoundExceeded when the
/// search exceeds its node budget.
inline IsoResult iso_check(const FiniteFrame& x, const FiniteFrame& y) {
  if (x == y) {
    IsoResult r{IsoVerdict::Identical, {}, {}, {}};
    for (std::size_t i = 0; i < x.size(); ++i) r.point_map.push_back(i);
    return r;
  }
  if (x.size() != y.size()) return {IsoVerdict::NotIsomorphic, {}, {}, "sizes-differ"};
  const std::size_t n = x.size();
  const auto profile = [](const FiniteFrame& f, std::size_t e) {
    std::size_t below = 0, above = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      below += f.leq(k, e);
      above += f.leq(e, k);
    }
    return std::pair{below, above};
  };
  std::vector<std::size_t> map(n, n);
  std::vector<bool> used(n, false);
  std::size_t nodes = 0;
  std::function<bool(std::size_t)> extend = [&](std::size_t i) {
    if (i == n) return true;
    if (++nodes > kIsoNodeBudget) throw Error(ErrorKind::SizeBoundExceeded, "reason=iso-search");
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || profile(x, i) != profile(y, j)) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k)
        ok = x.leq(k, i) == y.leq(map[k], j) && x.leq(i, k) == y.leq(j, map[k]);
      if (!ok) continue;
      map[i] = j;
      used[j] = true;
      if (extend(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (extend(0)) return {IsoVerdict::Isomorphic, map, {}, {}};
  return {IsoVerdict::NotIsomorphic, {}, {}, "exhausted"};
}

/// Dial isomorphism: bijections on points and on opens under which the two
/// relations agree entry for entry. Throws SizeBoundExceeded when the
/// search exceeds its node budget.
inline IsoResult iso_check(const DialObject& a, const DialObject& b) {
  if (a == b) {
    IsoResult r{IsoVerdict::Identical, {}, {}, {}};
    for (std::size_t i = 0; i < a.points.size(); ++i) r.point_map.push_back(i);
    for (std::size_t i = 0; i < a.opens.size(); ++i) r.open_map.push_back(i);
    return r;
  }
  const std::size_t np = a.points.size(), no = a.opens.size();
  if (np != b.points.size() || no != b.opens.size()) return {IsoVerdict::NotIsomorphic, {}, {}, "sizes-differ"};
  const auto row_sig = [](const DialObject& o, std::size_t u) {
    std::vector<Degree> r;
    for (std::size_t x = 0; x < o.opens.size(); ++x) r.push_back(o(u, x));
    std::sort(r.begin(), r.end());
    return r;
  };
  const auto col_sig = [](const DialObject& o, std::size_t x) {
    std::vector<Degree> c;
    for (std::size_t u = 0; u < o.points.size(); ++u) c.push_back(o(u, x));
    std::sort(c.begin(), c.end());
    return c;
  };
  std::vector<std::size_t> pm(np, np), om(no, no);
  std::vector<bool> pused(np, false), oused(no, false);
  std::size_t nodes = 0;
  std::function<bool(std::size_t)> opens_from = [&](std::size_t x) {
    if (x == no) return true;
    if (++nodes > kIsoNodeBudget) throw Error(ErrorKind::SizeBoundExceeded, "reason=iso-search");
    for (std::size_t y = 0; y < no; ++y) {
      if (oused[y]) continue;
      bool ok = true;
      for (std::size_t u = 0; u < np && ok; ++u) ok = a(u, x) == b(pm[u], y);
      if (!ok) continue;
      om[x] = y;
      oused[y] = true;
      if (opens_from(x + 1)) return true;
      oused[y] = false;
    }
    return false;
  };
  std::function<bool(std::size_t)> points_from = [&](std::size_t u) {
    if (u == np) return opens_from(0);
    if (++nodes > kIsoNodeBudget) throw Error(ErrorKind::SizeBoundExceeded, "reason=iso-search");
    for (std::size_t v = 0; v < np; ++v) {
      if (pused[v] || row_sig(a, u) != row_sig(b, v)) continue;
      pm[u] = v;
      pused[v] = true;
      if (points_from(u + 1)) return true;
      pused[v] = false;
    }
    return false;
  };
  for (std::size_t x = 0; x < no; ++x) {
    bool any = false;
    for (std::size_t y = 0; y < no && !any; ++y) any = col_sig(a, x) == col_sig(b, y);
    if (!any) return {IsoVerdict::NotIsomorphic, {}, {}, "column-signature open=" + a.opens[x]};
  }
  if (points_from(0)) return {IsoVerdict::Isomorphic, pm, om, {}};
  return {IsoVerdict::NotIsomorphic, {}, {}, "exhausted"};
}

// ---------------------------------------------------------------------------
// Extent closure search

struct ExtentFinding {
  std::string frame;
  FuzzyTopSystem system;
  TopologyReport report;
};

/// Enumerates every valid system over catalog frames of at most `max_opens`
/// elements with exactly `points` points and degrees drawn from
/// {0, 1/d, ..., 1} (d = max_degree_denominator), and returns those whose
/// extents do not form a fuzzy topology. Systems with more than `limit`
/// candidate tables per frame are skipped.
inline std::vector<ExtentFinding> search_extent_counterexamples(const InstanceBudget& budget,
                                                                std::size_t limit = std::size_t{1} << 20) {
  std::vector<Degree> levels;
  for (std::int64_t k = 0; k <= budget.max_degree_denominator; ++k)
    levels.push_back(Degree::ratio(k, budget.max_degree_denominator));
  std::vector<ExtentFinding> out;
  for (auto& [fname, frame] : frame_catalog()) {
    if (frame.size() > budget.max_opens || frame.size() < 2) continue;
    std::vector<Element> free;
    for (Element x = 0; x < frame.size(); ++x)
      if (x != frame.top() && x != frame.bottom()) free.push_back(x);
    const std::size_t cells = free.size() * budget.max_points;
    double candidates = 1;
    for (std::size_t i = 0; i < cells; ++i) candidates *= static_cast<double>(levels.size());
    if (candidates > static_cast<double>(limit)) continue;
    std::vector<std::size_t> digits(cells, 0);
    while (true) {
      FuzzyTopSystem s{names("p", budget.max_points), frame, FuzzyRelation(budget.max_points, frame.size())};
      for (std::size_t u = 0; u < budget.max_points; ++u) {
        s.alpha.set(u, frame.top(), Degree::one());
        for (std::size_t k = 0; k < free.size(); ++k) s.alpha.set(u, free[k], levels[digits[u * free.size() + k]]);
      }
      if (!check_system(s)) {
        auto report = extents_form_topology(s);
        if (!report.pass) out.push_back({fname, s, report});
      }
      std::size_t i = cells;
      while (i > 0 && digits[i - 1] + 1 == levels.size()) digits[--i] = 0;
      if (i == 0) break;
      ++digits[i - 1];
    }
  }
  return out;
}

}  // namespace ftop::oracle
