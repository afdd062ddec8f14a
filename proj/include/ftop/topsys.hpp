#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ftop/degree.hpp"
#include "ftop/dialectica.hpp"
#include "ftop/error.hpp"
#include "ftop/frame.hpp"
#include "ftop/tensor.hpp"

namespace ftop {

/// A triple (U, alpha, X): points, a frame of opens and a degree-valued
/// satisfaction relation U x X -> I. This is a plain candidate; only values
/// returned by validate_system (or with an empty check_system result) obey
/// conditions (i)-(iii).
struct FuzzyTopSystem {
  std::vector<std::string> points;
  FiniteFrame frame;
  FuzzyRelation alpha;

  Degree operator()(std::size_t u, Element x) const { return alpha.at(u, x); }

  /// The underlying Dial object (U, X, alpha) with the frame forgotten.
  DialObject dial() const { return DialObject{points, frame.names(), alpha}; }

  friend bool operator==(const FuzzyTopSystem&, const FuzzyTopSystem&) = default;
};

struct SystemViolation {
  ErrorKind kind;
  std::string witness;
};

namespace detail {

inline std::string deg_witness(const char* key, Degree d) { return std::string(" ") + key + "=" + d.str(); }

inline std::optional<SystemViolation> check_condition_iii(const FuzzyTopSystem& s) {
  for (std::size_t u = 0; u < s.points.size(); ++u) {
    if (s(u, s.frame.top()) != Degree::one())
      return SystemViolation{ErrorKind::ConditionIIIViolated, "u=" + s.points[u] + " x=" + s.frame.name(s.frame.top()) +
                                                                  deg_witness("degree", s(u, s.frame.top()))};
    if (s(u, s.frame.bottom()) != Degree::zero())
      return SystemViolation{ErrorKind::ConditionIIIViolated,
                             "u=" + s.points[u] + " x=" + s.frame.name(s.frame.bottom()) +
                                 deg_witness("degree", s(u, s.frame.bottom()))};
  }
  return std::nullopt;
}

// alpha(u, x /\ y) <= alpha(u, x) over all ordered pairs covers both bounds.
inline std::optional<SystemViolation> check_condition_i(const FuzzyTopSystem& s) {
  const auto& fr = s.frame;
  for (std::size_t u = 0; u < s.points.size(); ++u)
    for (Element x = 0; x < fr.size(); ++x)
      for (Element y = 0; y < fr.size(); ++y)
        if (s(u, fr.meet(x, y)) > s(u, x))
          return SystemViolation{ErrorKind::ConditionIViolated,
                                 "u=" + s.points[u] + " x=" + fr.name(x) + " y=" + fr.name(y) +
                                     deg_witness("meet", s(u, fr.meet(x, y))) + deg_witness("at_x", s(u, x))};
  return std::nullopt;
}

inline std::optional<SystemViolation> check_condition_ii(const FuzzyTopSystem& s) {
  const auto& fr = s.frame;
  for (std::size_t u = 0; u < s.points.size(); ++u)
    for (Element x = 0; x < fr.size(); ++x)
      for (Element y = x + 1; y < fr.size(); ++y)
        if (s(u, fr.join(x, y)) > join(s(u, x), s(u, y)))
          return SystemViolation{ErrorKind::ConditionIIViolated,
                                 "u=" + s.points[u] + " x=" + fr.name(x) + " y=" + fr.name(y) +
                                     deg_witness("join", s(u, fr.join(x, y))) +
                                     deg_witness("max", join(s(u, x), s(u, y)))};
  return std::nullopt;
}

}  // namespace detail

/// Per-condition outcome, in the order (i), (ii), (iii).
struct ConditionReport {
  std::optional<SystemViolation> condition_i;
  std::optional<SystemViolation> condition_ii;
  std::optional<SystemViolation> condition_iii;

  bool pass() const { return !condition_i && !condition_ii && !condition_iii; }
};

/// Axioms (i) and (ii) are checked in binary form, which on a finite frame
/// is equivalent to the finite/arbitrary nonempty-family forms by induction.
inline ConditionReport check_conditions(const FuzzyTopSystem& s) {
  return {detail::check_condition_i(s), detail::check_condition_ii(s), detail::check_condition_iii(s)};
}

/// First violation, checking (iii) then (i) then (ii).
inline std::optional<SystemViolation> check_system(const FuzzyTopSystem& s) {
  if (auto v = detail::check_condition_iii(s)) return v;
  if (auto v = detail::check_condition_i(s)) return v;
  return detail::check_condition_ii(s);
}

/// Throws NotTotal for a mis-shaped table and ConditionI/II/IIIViolated.
inline FuzzyTopSystem validate_system(std::vector<std::string> points, FiniteFrame frame, FuzzyRelation alpha) {
  if (alpha.rows() != points.size() || alpha.cols() != frame.size())
    throw Error(ErrorKind::NotTotal, "rows=" + std::to_string(alpha.rows()) + " cols=" + std::to_string(alpha.cols()));
  FuzzyTopSystem s{std::move(points), std::move(frame), std::move(alpha)};
  if (auto v = check_system(s)) throw Error(v->kind, v->witness);
  return s;
}

/// Checks Vickers's axioms for a crisp satisfaction relation: u |= top,
/// not u |= bottom, u |= x/\y iff both, u |= x\/y iff either. Returns the
/// violated axiom and witness, if any.
inline std::optional<std::string> crisp_axiom_violation(const std::vector<std::string>& points,
                                                        const FiniteFrame& frame,
                                                        const std::vector<std::vector<bool>>& sat) {
  for (std::size_t u = 0; u < points.size(); ++u) {
    const auto& row = sat[u];
    if (!row[frame.top()]) return "axiom=top u=" + points[u];
    if (row[frame.bottom()]) return "axiom=bottom u=" + points[u];
    for (Element x = 0; x < frame.size(); ++x)
      for (Element y = x + 1; y < frame.size(); ++y) {
        if (row[frame.meet(x, y)] != (row[x] && row[y]))
          return "axiom=meet u=" + points[u] + " x=" + frame.name(x) + " y=" + frame.name(y);
        if (row[frame.join(x, y)] != (row[x] || row[y]))
          return "axiom=join u=" + points[u] + " x=" + frame.name(x) + " y=" + frame.name(y);
      }
  }
  return std::nullopt;
}

/// The characteristic embedding iota(u, x) = 1 if u |= x else 0 of a crisp
/// topological system. `sat` lists the satisfied (point, open) pairs by
/// name. Throws NotATopologicalSystem or UnknownElement.
inline FuzzyTopSystem embed_crisp(std::vector<std::string> points, FiniteFrame frame,
                                  const std::vector<std::pair<std::string, std::string>>& sat) {
  std::map<std::string, std::size_t> point_index;
  for (std::size_t u = 0; u < points.size(); ++u)
    if (!point_index.emplace(points[u], u).second) throw Error(ErrorKind::DuplicateName, "point=" + points[u]);
  std::vector<std::vector<bool>> table(points.size(), std::vector<bool>(frame.size(), false));
  for (const auto& [p, x] : sat) {
    auto it = point_index.find(p);
    if (it == point_index.end()) throw Error(ErrorKind::UnknownElement, "point=" + p);
    table[it->second][frame.index_of(x)] = true;
  }
  if (auto v = crisp_axiom_violation(points, frame, table)) throw Error(ErrorKind::NotATopologicalSystem, *v);
  FuzzyRelation iota(points.size(), frame.size());
  for (std::size_t u = 0; u < points.size(); ++u)
    for (Element x = 0; x < frame.size(); ++x) iota.set(u, x, table[u][x] ? Degree::one() : Degree::zero());
  return validate_system(std::move(points), std::move(frame), std::move(iota));
}

/// A continuous map (f, phi): (U, alpha, X) -> (V, beta, Y) with phi: Y -> X
/// a frame homomorphism and alpha(u, phi(y)) <= beta(f(u), y).
struct ContinuousMap {
  FuzzyTopSystem source;
  FuzzyTopSystem target;
  std::vector<std::size_t> f;
  FrameHom phi;

  /// The same pair viewed as a Dial morphism; re-verified.
  DialMorphism dial() const { return verify_morphism(source.dial(), target.dial(), f, phi.map); }
};

/// Throws NotFrameHom (carrying the frame diagnostic), NotTotal, or
/// ConditionViolated with witness (u, y).
inline ContinuousMap verify_continuous(const FuzzyTopSystem& source, const FuzzyTopSystem& target,
                                       std::vector<std::size_t> f, std::vector<Element> phi_map) {
  FrameHom phi;
  try {
    phi = validate_frame_hom(target.frame, source.frame, std::move(phi_map));
  } catch (const Error& e) {
    throw Error(ErrorKind::NotFrameHom, "cause=" + std::string(to_string(e.kind())) + " " + e.witness());
  }
  if (f.size() != source.points.size()) throw Error(ErrorKind::NotTotal, "map=f");
  for (std::size_t u = 0; u < f.size(); ++u)
    if (f[u] >= target.points.size()) throw Error(ErrorKind::NotTotal, "map=f point=" + source.points[u]);
  for (std::size_t u = 0; u < f.size(); ++u)
    for (Element y = 0; y < target.frame.size(); ++y)
      if (source(u, phi(y)) > target(f[u], y))
        throw Error(ErrorKind::ConditionViolated, "u=" + source.points[u] + " y=" + target.frame.name(y) +
                                                      " lhs=" + source(u, phi(y)).str() +
                                                      " rhs=" + target(f[u], y).str());
  return ContinuousMap{source, target, std::move(f), std::move(phi)};
}

inline ContinuousMap identity_continuous(const FuzzyTopSystem& s) {
  std::vector<std::size_t> f(s.points.size());
  for (std::size_t u = 0; u < f.size(); ++u) f[u] = u;
  return verify_continuous(s, s, std::move(f), identity_hom(s.frame).map);
}

/// first ; second. Throws SourceTargetMismatch.
inline ContinuousMap compose_continuous(const ContinuousMap& first, const ContinuousMap& second) {
  if (!(first.target == second.source)) throw Error(ErrorKind::SourceTargetMismatch, "reason=systems-differ");
  std::vector<std::size_t> f(first.f.size());
  for (std::size_t u = 0; u < f.size(); ++u) f[u] = second.f[first.f[u]];
  std::vector<Element> phi(second.target.frame.size());
  for (Element z = 0; z < phi.size(); ++z) phi[z] = first.phi(second.phi(z));
  return verify_continuous(first.source, second.target, std::move(f), std::move(phi));
}

/// A fuzzy subset of a finite universe.
struct FuzzySet {
  std::vector<std::string> universe;
  std::vector<Degree> membership;

  friend bool operator==(const FuzzySet&, const FuzzySet&) = default;
};

/// u |-> alpha(u, x).
inline FuzzySet extent(const FuzzyTopSystem& s, Element x) {
  if (x >= s.frame.size()) throw Error(ErrorKind::UnknownElement, "element=" + std::to_string(x));
  FuzzySet out{s.points, {}};
  for (std::size_t u = 0; u < s.points.size(); ++u) out.membership.push_back(s(u, x));
  return out;
}

inline FuzzySet extent(const FuzzyTopSystem& s, std::string_view x) { return extent(s, s.frame.index_of(x)); }

/// Outcome of the (Chang) fuzzy topology check on the family of extents,
/// taken as fuzzy subsets of the point set.
struct TopologyReport {
  bool pass = true;
  std::string failure;  // MissingZero, MissingOne, NotClosedUnderMin, NotClosedUnderSup
  std::string witness;
  std::optional<FuzzySet> missing;
  std::size_t distinct_extents = 0;
};

/// Checks that the extents contain the constants 0 and 1 and are closed
/// under pointwise min and max of pairs. For a finite family, closure under
/// binary max plus the constant 0 (the empty sup) is closure under every sup.
inline TopologyReport extents_form_topology(const FuzzyTopSystem& s) {
  const std::size_t n = s.points.size();
  std::map<std::vector<Degree>, Element, std::less<>> family;
  for (Element x = 0; x < s.frame.size(); ++x) family.emplace(extent(s, x).membership, x);

  TopologyReport report;
  report.distinct_extents = family.size();
  const auto fail = [&](std::string kind, std::string witness, std::vector<Degree> set) {
    report.pass = false;
    report.failure = std::move(kind);
    report.witness = std::move(witness);
    report.missing = FuzzySet{s.points, std::move(set)};
    return report;
  };
  if (!family.contains(std::vector<Degree>(n, Degree::zero())))
    return fail("MissingZero", "set=0", std::vector<Degree>(n, Degree::zero()));
  if (!family.contains(std::vector<Degree>(n, Degree::one())))
    return fail("MissingOne", "set=1", std::vector<Degree>(n, Degree::one()));
  for (const auto& [a, xa] : family)
    for (const auto& [b, xb] : family) {
      std::vector<Degree> lo(n), hi(n);
      for (std::size_t u = 0; u < n; ++u) {
        lo[u] = meet(a[u], b[u]);
        hi[u] = join(a[u], b[u]);
      }
      const std::string pair = "a=" + s.frame.name(xa) + " b=" + s.frame.name(xb);
      if (!family.contains(lo)) return fail("NotClosedUnderMin", pair, lo);
      if (!family.contains(hi)) return fail("NotClosedUnderSup", pair, hi);
    }
  return report;
}

/// A constructed system together with its validation outcome, since
/// constructions are not assumed to preserve conditions (i)-(iii).
struct ConstructedSystem {
  FuzzyTopSystem system;
  ConditionReport report;
};

struct ProductSystem {
  FuzzyTopSystem system;
  ConditionReport report;
  TensorFrame tensor;
};

/// Degree of the point (u, v) at the tensor element `d`.
using ProductDegreeRule = std::function<Degree(const FuzzyTopSystem& a, const FuzzyTopSystem& b, std::size_t u,
                                               std::size_t v, const TensorFrame& tensor, const CIdeal& d)>;

/// gamma((u,v), x (x) y) = max(alpha(u,x), beta(v,y)) on generators, and
/// the maximum over the maximal non-bottom pairs of the C-ideal otherwise.
/// The bottom C-ideal has no such pairs and gets 0.
inline Degree max_over_maximal_pairs(const FuzzyTopSystem& a, const FuzzyTopSystem& b, std::size_t u, std::size_t v,
                                     const TensorFrame& tensor, const CIdeal& d) {
  Degree out = Degree::zero();
  for (auto [x, y] : maximal_pairs(tensor.left, tensor.right, d)) out = join(out, join(a(u, x), b(v, y)));
  return out;
}

/// Topological product (U x V, gamma, X (x) Y). Throws TooLargeToEnumerate
/// when |X|*|Y| exceeds `tensor_bound`.
inline ProductSystem top_product(const FuzzyTopSystem& a, const FuzzyTopSystem& b,
                                 std::size_t tensor_bound = kDefaultTensorBound,
                                 const ProductDegreeRule& rule = max_over_maximal_pairs) {
  TensorFrame tensor = tensor_frame(a.frame, b.frame, tensor_bound);
  const std::size_t nv = b.points.size();
  FuzzyTopSystem s;
  for (const auto& u : a.points)
    for (const auto& v : b.points) s.points.push_back("(" + u + "," + v + ")");
  s.frame = tensor.frame;
  s.alpha = FuzzyRelation(s.points.size(), s.frame.size());
  for (std::size_t u = 0; u < a.points.size(); ++u)
    for (std::size_t v = 0; v < nv; ++v)
      for (Element e = 0; e < s.frame.size(); ++e) s.alpha.set(u * nv + v, e, rule(a, b, u, v, tensor, tensor.ideals[e]));
  auto report = check_conditions(s);
  return ProductSystem{std::move(s), std::move(report), std::move(tensor)};
}

/// Topological sum (U + V, gamma, X x Y) with gamma((u,0),(x,y)) = alpha(u,x)
/// and gamma((v,1),(x,y)) = beta(v,y).
inline ConstructedSystem top_sum(const FuzzyTopSystem& a, const FuzzyTopSystem& b) {
  FuzzyTopSystem s;
  for (const auto& u : a.points) s.points.push_back("(" + u + ",0)");
  for (const auto& v : b.points) s.points.push_back("(" + v + ",1)");
  s.frame = frame_product(a.frame, b.frame);
  const std::size_t nu = a.points.size(), ny = b.frame.size();
  s.alpha = FuzzyRelation(s.points.size(), s.frame.size());
  for (Element x = 0; x < a.frame.size(); ++x)
    for (Element y = 0; y < ny; ++y) {
      for (std::size_t u = 0; u < nu; ++u) s.alpha.set(u, x * ny + y, a(u, x));
      for (std::size_t v = 0; v < b.points.size(); ++v) s.alpha.set(nu + v, x * ny + y, b(v, y));
    }
  auto report = check_conditions(s);
  return ConstructedSystem{std::move(s), std::move(report)};
}

/// Degree to which each stream satisfies "starts <prefix>": the min over
/// prefix positions of stream[i] for a 1 bit and 1 - stream[i] for a 0 bit,
/// where stream[i] is the similarity of bit i to 1. Throws InvalidPrefix
/// and StreamTooShort.
inline std::vector<Degree> demo_bitstream(const std::vector<std::vector<Degree>>& streams, std::string_view prefix) {
  for (char c : prefix)
    if (c != '0' && c != '1') throw Error(ErrorKind::InvalidPrefix, "prefix=" + std::string(prefix));
  std::vector<Degree> out;
  for (std::size_t i = 0; i < streams.size(); ++i) {
    const auto& stream = streams[i];
    if (stream.size() < prefix.size())
      throw Error(ErrorKind::StreamTooShort, "stream=" + std::to_string(i) + " length=" +
                                                 std::to_string(stream.size()) +
                                                 " prefix=" + std::to_string(prefix.size()));
    Degree d = Degree::one();
    for (std::size_t k = 0; k < prefix.size(); ++k)
      d = meet(d, prefix[k] == '1' ? stream[k] : stream[k].complement());
    out.push_back(d);
  }
  return out;
}

}  // namespace ftop
