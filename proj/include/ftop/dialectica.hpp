#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ftop/degree.hpp"
#include "ftop/error.hpp"
#include "ftop/function_space.hpp"

namespace ftop {

/// A total table rows x cols -> Degree.
class FuzzyRelation {
 public:
  FuzzyRelation() = default;
  FuzzyRelation(std::size_t rows, std::size_t cols, Degree fill = Degree::zero())
      : rows_(rows), cols_(cols), table_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Degree at(std::size_t row, std::size_t col) const { return table_[row * cols_ + col]; }
  Degree operator()(std::size_t row, std::size_t col) const { return at(row, col); }
  void set(std::size_t row, std::size_t col, Degree d) { table_[row * cols_ + col] = d; }

  friend bool operator==(const FuzzyRelation&, const FuzzyRelation&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Degree> table_;
};

/// An object (U, X, alpha) of Dial_I(Set). Equality is structural.
struct DialObject {
  std::vector<std::string> points;
  std::vector<std::string> opens;
  FuzzyRelation alpha;

  Degree operator()(std::size_t u, std::size_t x) const { return alpha.at(u, x); }
  friend bool operator==(const DialObject&, const DialObject&) = default;
};

using ObjectRef = std::shared_ptr<const DialObject>;

/// Builds an object after checking name uniqueness and table shape.
inline DialObject make_object(std::vector<std::string> points, std::vector<std::string> opens, FuzzyRelation alpha) {
  for (const auto* names : {&points, &opens}) {
    std::set<std::string> seen;
    for (const auto& n : *names)
      if (!seen.insert(n).second) throw Error(ErrorKind::DuplicateName, "name=" + n);
  }
  if (alpha.rows() != points.size() || alpha.cols() != opens.size())
    throw Error(ErrorKind::NotTotal, "rows=" + std::to_string(alpha.rows()) + " cols=" + std::to_string(alpha.cols()));
  return DialObject{std::move(points), std::move(opens), std::move(alpha)};
}

/// The monoidal unit ({*}, {*}, 1).
inline DialObject unit_object() { return DialObject{{"*"}, {"*"}, FuzzyRelation(1, 1, Degree::one())}; }

/// A pair (f: U -> V, g: Y -> X) with alpha(u, g(y)) <= beta(f(u), y) for
/// all u, y. Obtainable only through verify_morphism and the operations
/// built on it, so the condition always holds.
class DialMorphism {
 public:
  const DialObject& source() const { return *source_; }
  const DialObject& target() const { return *target_; }
  const ObjectRef& source_ref() const { return source_; }
  const ObjectRef& target_ref() const { return target_; }
  const std::vector<std::size_t>& f() const { return f_; }
  const std::vector<std::size_t>& g() const { return g_; }

  /// Skips verification. Only for mutation fixtures that need to build a
  /// deliberately broken morphism.
  static DialMorphism assume_verified(ObjectRef source, ObjectRef target, std::vector<std::size_t> f,
                                      std::vector<std::size_t> g) {
    return DialMorphism(std::move(source), std::move(target), std::move(f), std::move(g));
  }

  friend bool operator==(const DialMorphism& a, const DialMorphism& b) {
    return a.f_ == b.f_ && a.g_ == b.g_ && (a.source_ == b.source_ || *a.source_ == *b.source_) &&
           (a.target_ == b.target_ || *a.target_ == *b.target_);
  }

 private:
  DialMorphism(ObjectRef source, ObjectRef target, std::vector<std::size_t> f, std::vector<std::size_t> g)
      : source_(std::move(source)), target_(std::move(target)), f_(std::move(f)), g_(std::move(g)) {}

  ObjectRef source_;
  ObjectRef target_;
  std::vector<std::size_t> f_;
  std::vector<std::size_t> g_;
};

/// First (u, y) with alpha(u, g(y)) > beta(f(u), y), if any. Assumes f and g
/// are total and in range.
inline std::optional<std::pair<std::size_t, std::size_t>> condition_witness(const DialObject& a, const DialObject& b,
                                                                            const std::vector<std::size_t>& f,
                                                                            const std::vector<std::size_t>& g) {
  for (std::size_t u = 0; u < a.points.size(); ++u)
    for (std::size_t y = 0; y < b.opens.size(); ++y)
      if (a(u, g[y]) > b(f[u], y)) return std::pair{u, y};
  return std::nullopt;
}

/// Throws NotTotal or ConditionViolated (witness u, y and both degrees).
inline DialMorphism verify_morphism(ObjectRef source, ObjectRef target, std::vector<std::size_t> f,
                                    std::vector<std::size_t> g) {
  const DialObject& a = *source;
  const DialObject& b = *target;
  if (f.size() != a.points.size())
    throw Error(ErrorKind::NotTotal, "map=f defined=" + std::to_string(f.size()) +
                                         " expected=" + std::to_string(a.points.size()));
  if (g.size() != b.opens.size())
    throw Error(ErrorKind::NotTotal, "map=g defined=" + std::to_string(g.size()) +
                                         " expected=" + std::to_string(b.opens.size()));
  for (std::size_t u = 0; u < f.size(); ++u)
    if (f[u] >= b.points.size()) throw Error(ErrorKind::NotTotal, "map=f point=" + a.points[u]);
  for (std::size_t y = 0; y < g.size(); ++y)
    if (g[y] >= a.opens.size()) throw Error(ErrorKind::NotTotal, "map=g open=" + b.opens[y]);
  if (auto w = condition_witness(a, b, f, g)) {
    auto [u, y] = *w;
    throw Error(ErrorKind::ConditionViolated, "u=" + a.points[u] + " y=" + b.opens[y] +
                                                  " lhs=" + a(u, g[y]).str() + " rhs=" + b(f[u], y).str());
  }
  return DialMorphism::assume_verified(std::move(source), std::move(target), std::move(f), std::move(g));
}

inline DialMorphism verify_morphism(const DialObject& source, const DialObject& target, std::vector<std::size_t> f,
                                    std::vector<std::size_t> g) {
  return verify_morphism(std::make_shared<const DialObject>(source), std::make_shared<const DialObject>(target),
                         std::move(f), std::move(g));
}

inline DialMorphism identity(ObjectRef object) {
  std::vector<std::size_t> f(object->points.size()), g(object->opens.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = i;
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = i;
  return verify_morphism(object, object, std::move(f), std::move(g));
}

inline DialMorphism identity(const DialObject& object) { return identity(std::make_shared<const DialObject>(object)); }

/// first ; second, i.e. (f' . f, g . g') for first = (f, g), second = (f', g').
/// Throws SourceTargetMismatch; the composite is re-verified.
inline DialMorphism compose(const DialMorphism& first, const DialMorphism& second) {
  if (first.target_ref() != second.source_ref() && first.target() != second.source())
    throw Error(ErrorKind::SourceTargetMismatch, "reason=first.target!=second.source");
  std::vector<std::size_t> f(first.f().size()), g(second.g().size());
  for (std::size_t u = 0; u < f.size(); ++u) f[u] = second.f()[first.f()[u]];
  for (std::size_t z = 0; z < g.size(); ++z) g[z] = first.g()[second.g()[z]];
  return verify_morphism(first.source_ref(), second.target_ref(), std::move(f), std::move(g));
}

inline constexpr std::size_t kDefaultSpaceBound = std::size_t{1} << 16;
inline constexpr std::size_t kDefaultHomBound = std::size_t{1} << 20;

namespace detail {

inline std::string table_name(const std::vector<std::size_t>& table, const std::vector<std::string>& codomain) {
  std::string s = "[";
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i) s += ",";
    s += codomain[table[i]];
  }
  return s + "]";
}

inline std::string tagged(const std::string& name, int tag) { return "(" + name + "," + std::to_string(tag) + ")"; }

inline void check_bound(std::size_t size, std::size_t bound, const char* what) {
  if (size > bound)
    throw Error(ErrorKind::SizeBoundExceeded,
                std::string("set=") + what + " size=" + std::to_string(size) + " bound=" + std::to_string(bound));
}

}  // namespace detail

/// A (x) B = (U x V, X^V x Y^U, ((u,v),(phi,psi)) |-> min(alpha(u, phi v), beta(v, psi u))).
/// Open (phi, psi) sits at index(phi) * |Y|^|U| + index(psi), with function
/// indices as in FunctionSpace.
inline DialObject tensor_obj(const DialObject& a, const DialObject& b, std::size_t bound = kDefaultSpaceBound) {
  const std::size_t nu = a.points.size(), nv = b.points.size();
  const FunctionSpace phis{nv, a.opens.size()}, psis{nu, b.opens.size()};
  const std::size_t n_phi = saturating_count(phis), n_psi = saturating_count(psis);
  detail::check_bound(saturating_mul(n_phi, n_psi), bound, "opens");
  detail::check_bound(nu * nv, bound, "points");

  DialObject out;
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t v = 0; v < nv; ++v) out.points.push_back("(" + a.points[u] + "," + b.points[v] + ")");
  std::vector<std::vector<std::size_t>> phi_tables, psi_tables;
  for (std::size_t i = 0; i < n_phi; ++i) phi_tables.push_back(phis.decode(i));
  for (std::size_t i = 0; i < n_psi; ++i) psi_tables.push_back(psis.decode(i));
  for (const auto& phi : phi_tables)
    for (const auto& psi : psi_tables)
      out.opens.push_back("(" + detail::table_name(phi, a.opens) + "," + detail::table_name(psi, b.opens) + ")");

  out.alpha = FuzzyRelation(out.points.size(), out.opens.size());
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t i = 0; i < n_phi; ++i)
        for (std::size_t j = 0; j < n_psi; ++j)
          out.alpha.set(u * nv + v, i * n_psi + j, meet(a(u, phi_tables[i][v]), b(v, psi_tables[j][u])));
  return out;
}

/// A -o B = (V^U x X^Y, U x Y, ((f,F),(u,y)) |-> alpha(u, F y) => beta(f u, y)).
/// Point (f, F) sits at index(f) * |X|^|Y| + index(F); open (u, y) at u*|Y|+y.
inline DialObject hom_obj(const DialObject& a, const DialObject& b, std::size_t bound = kDefaultSpaceBound) {
  const std::size_t nu = a.points.size(), ny = b.opens.size();
  const FunctionSpace fs{nu, b.points.size()}, gs{ny, a.opens.size()};
  const std::size_t n_f = saturating_count(fs), n_g = saturating_count(gs);
  detail::check_bound(saturating_mul(n_f, n_g), bound, "points");
  detail::check_bound(nu * ny, bound, "opens");

  DialObject out;
  std::vector<std::vector<std::size_t>> f_tables, g_tables;
  for (std::size_t i = 0; i < n_f; ++i) f_tables.push_back(fs.decode(i));
  for (std::size_t i = 0; i < n_g; ++i) g_tables.push_back(gs.decode(i));
  for (const auto& f : f_tables)
    for (const auto& g : g_tables)
      out.points.push_back("(" + detail::table_name(f, b.points) + "," + detail::table_name(g, a.opens) + ")");
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t y = 0; y < ny; ++y) out.opens.push_back("(" + a.points[u] + "," + b.opens[y] + ")");

  out.alpha = FuzzyRelation(out.points.size(), out.opens.size());
  for (std::size_t i = 0; i < n_f; ++i)
    for (std::size_t j = 0; j < n_g; ++j)
      for (std::size_t u = 0; u < nu; ++u)
        for (std::size_t y = 0; y < ny; ++y)
          out.alpha.set(i * n_g + j, u * ny + y, implies(a(u, g_tables[j][y]), b(f_tables[i][u], y)));
  return out;
}

/// A x B = (U x V, X + Y, gamma) with gamma((u,v),(x,0)) = alpha(u,x) and
/// gamma((u,v),(y,1)) = beta(v,y). Opens (x,0) come first, then (y,1).
inline DialObject product_obj(const DialObject& a, const DialObject& b) {
  const std::size_t nv = b.points.size(), nx = a.opens.size();
  DialObject out;
  for (const auto& u : a.points)
    for (const auto& v : b.points) out.points.push_back("(" + u + "," + v + ")");
  for (const auto& x : a.opens) out.opens.push_back(detail::tagged(x, 0));
  for (const auto& y : b.opens) out.opens.push_back(detail::tagged(y, 1));
  out.alpha = FuzzyRelation(out.points.size(), out.opens.size());
  for (std::size_t u = 0; u < a.points.size(); ++u)
    for (std::size_t v = 0; v < nv; ++v) {
      for (std::size_t x = 0; x < nx; ++x) out.alpha.set(u * nv + v, x, a(u, x));
      for (std::size_t y = 0; y < b.opens.size(); ++y) out.alpha.set(u * nv + v, nx + y, b(v, y));
    }
  return out;
}

/// A (+) B = (U + V, X x Y, delta) with delta((u,0),(x,y)) = alpha(u,x) and
/// delta((v,1),(x,y)) = beta(v,y). Points (u,0) come first, then (v,1).
inline DialObject coproduct_obj(const DialObject& a, const DialObject& b) {
  const std::size_t nu = a.points.size(), ny = b.opens.size();
  DialObject out;
  for (const auto& u : a.points) out.points.push_back(detail::tagged(u, 0));
  for (const auto& v : b.points) out.points.push_back(detail::tagged(v, 1));
  for (const auto& x : a.opens)
    for (const auto& y : b.opens) out.opens.push_back("(" + x + "," + y + ")");
  out.alpha = FuzzyRelation(out.points.size(), out.opens.size());
  for (std::size_t x = 0; x < a.opens.size(); ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t u = 0; u < nu; ++u) out.alpha.set(u, x * ny + y, a(u, x));
      for (std::size_t v = 0; v < b.points.size(); ++v) out.alpha.set(nu + v, x * ny + y, b(v, y));
    }
  return out;
}

/// Projections A x B -> A and A x B -> B: (point projection, tagged open
/// injection). Both are re-verified.
inline std::pair<DialMorphism, DialMorphism> projections(ObjectRef product, ObjectRef a, ObjectRef b) {
  const std::size_t nu = a->points.size(), nv = b->points.size(), nx = a->opens.size();
  std::vector<std::size_t> f1(nu * nv), f2(nu * nv), g1(nx), g2(b->opens.size());
  for (std::size_t i = 0; i < nu * nv; ++i) {
    f1[i] = i / nv;
    f2[i] = i % nv;
  }
  for (std::size_t x = 0; x < nx; ++x) g1[x] = x;
  for (std::size_t y = 0; y < g2.size(); ++y) g2[y] = nx + y;
  return {verify_morphism(product, a, std::move(f1), std::move(g1)),
          verify_morphism(product, b, std::move(f2), std::move(g2))};
}

/// Injections A -> A (+) B and B -> A (+) B: (tagged point injection, open
/// projection). Both are re-verified.
inline std::pair<DialMorphism, DialMorphism> injections(ObjectRef coproduct, ObjectRef a, ObjectRef b) {
  const std::size_t nu = a->points.size(), ny = b->opens.size(), nxy = a->opens.size() * ny;
  std::vector<std::size_t> f1(nu), f2(b->points.size()), g1(nxy), g2(nxy);
  for (std::size_t u = 0; u < nu; ++u) f1[u] = u;
  for (std::size_t v = 0; v < f2.size(); ++v) f2[v] = nu + v;
  for (std::size_t i = 0; i < nxy; ++i) {
    g1[i] = i / ny;
    g2[i] = i % ny;
  }
  return {verify_morphism(a, coproduct, std::move(f1), std::move(g1)),
          verify_morphism(b, coproduct, std::move(f2), std::move(g2))};
}

/// Transposes m: A (x) B -> C into A -> (B -o C). Throws ShapeMismatch when
/// m's source is not tensor_obj(a, b).
inline DialMorphism curry(const DialMorphism& m, const DialObject& a, const DialObject& b,
                          std::size_t bound = kDefaultSpaceBound) {
  if (m.source() != tensor_obj(a, b, bound))
    throw Error(ErrorKind::ShapeMismatch, "reason=source-is-not-tensor");
  const DialObject& c = m.target();
  const std::size_t nu = a.points.size(), nv = b.points.size(), nz = c.opens.size();
  const FunctionSpace phis{nv, a.opens.size()}, psis{nu, b.opens.size()};
  const FunctionSpace hs{nv, c.points.size()}, Hs{nz, b.opens.size()};
  const std::size_t n_psi = saturating_count(psis), n_H = saturating_count(Hs);

  std::vector<std::vector<std::size_t>> phi_of(nz), psi_of(nz);
  for (std::size_t z = 0; z < nz; ++z) {
    phi_of[z] = phis.decode(m.g()[z] / n_psi);
    psi_of[z] = psis.decode(m.g()[z] % n_psi);
  }
  std::vector<std::size_t> f(nu), g(nv * nz);
  for (std::size_t u = 0; u < nu; ++u) {
    std::vector<std::size_t> h(nv), H(nz);
    for (std::size_t v = 0; v < nv; ++v) h[v] = m.f()[u * nv + v];
    for (std::size_t z = 0; z < nz; ++z) H[z] = psi_of[z][u];
    f[u] = hs.encode(h) * n_H + Hs.encode(H);
  }
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t z = 0; z < nz; ++z) g[v * nz + z] = phi_of[z][v];
  return verify_morphism(std::make_shared<const DialObject>(a),
                         std::make_shared<const DialObject>(hom_obj(b, c, bound)), std::move(f), std::move(g));
}

/// Inverse of curry: n: A -> (B -o C) becomes A (x) B -> C. Throws
/// ShapeMismatch when n's target is not hom_obj(b, c).
inline DialMorphism uncurry(const DialMorphism& n, const DialObject& b, const DialObject& c,
                            std::size_t bound = kDefaultSpaceBound) {
  if (n.target() != hom_obj(b, c, bound)) throw Error(ErrorKind::ShapeMismatch, "reason=target-is-not-hom");
  const DialObject& a = n.source();
  const std::size_t nu = a.points.size(), nv = b.points.size(), nz = c.opens.size();
  const FunctionSpace phis{nv, a.opens.size()}, psis{nu, b.opens.size()};
  const FunctionSpace hs{nv, c.points.size()}, Hs{nz, b.opens.size()};
  const std::size_t n_psi = saturating_count(psis), n_H = saturating_count(Hs);

  std::vector<std::vector<std::size_t>> h_of(nu), H_of(nu);
  for (std::size_t u = 0; u < nu; ++u) {
    h_of[u] = hs.decode(n.f()[u] / n_H);
    H_of[u] = Hs.decode(n.f()[u] % n_H);
  }
  std::vector<std::size_t> f(nu * nv), g(nz);
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t v = 0; v < nv; ++v) f[u * nv + v] = h_of[u][v];
  for (std::size_t z = 0; z < nz; ++z) {
    std::vector<std::size_t> phi(nv), psi(nu);
    for (std::size_t v = 0; v < nv; ++v) phi[v] = n.g()[v * nz + z];
    for (std::size_t u = 0; u < nu; ++u) psi[u] = H_of[u][z];
    g[z] = phis.encode(phi) * n_psi + psis.encode(psi);
  }
  return verify_morphism(std::make_shared<const DialObject>(tensor_obj(a, b, bound)),
                         std::make_shared<const DialObject>(c), std::move(f), std::move(g));
}

/// Every verified morphism A -> B, ordered by (index(f), index(g)). Throws
/// SizeBoundExceeded when |V|^|U| * |X|^|Y| exceeds `bound`.
inline std::vector<DialMorphism> enumerate_morphisms(ObjectRef a, ObjectRef b, std::size_t bound = kDefaultHomBound) {
  const FunctionSpace fs{a->points.size(), b->points.size()}, gs{b->opens.size(), a->opens.size()};
  const std::size_t n_f = saturating_count(fs), n_g = saturating_count(gs);
  detail::check_bound(saturating_mul(n_f, n_g), bound, "candidates");
  std::vector<std::vector<std::size_t>> g_tables;
  for (std::size_t j = 0; j < n_g; ++j) g_tables.push_back(gs.decode(j));
  std::vector<DialMorphism> out;
  for (std::size_t i = 0; i < n_f; ++i) {
    auto f = fs.decode(i);
    for (const auto& g : g_tables)
      if (!condition_witness(*a, *b, f, g)) out.push_back(DialMorphism::assume_verified(a, b, f, g));
  }
  return out;
}

inline std::vector<DialMorphism> enumerate_morphisms(const DialObject& a, const DialObject& b,
                                                     std::size_t bound = kDefaultHomBound) {
  return enumerate_morphisms(std::make_shared<const DialObject>(a), std::make_shared<const DialObject>(b), bound);
}

}  // namespace ftop
