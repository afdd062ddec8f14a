#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ftop/error.hpp"
#include "ftop/frame.hpp"

namespace ftop {

/// A subset of X x Y, stored as a bit table indexed by x*|Y| + y. A CIdeal
/// value is only produced by cideal_closure and friends, which guarantee it
/// is down-closed, closed under joins of each row and column slice, and
/// contains the bottom cross {bot} x Y  U  X x {bot}.
class CIdeal {
 public:
  CIdeal() = default;
  CIdeal(std::size_t x_size, std::size_t y_size)
      : x_size_(x_size), y_size_(y_size), members_(x_size * y_size, false) {}

  std::size_t x_size() const { return x_size_; }
  std::size_t y_size() const { return y_size_; }
  bool contains(Element x, Element y) const { return members_[x * y_size_ + y]; }
  void insert(Element x, Element y) { members_[x * y_size_ + y] = true; }
  const std::vector<bool>& bits() const { return members_; }

  std::size_t count() const { return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true)); }

  bool subset_of(const CIdeal& other) const {
    for (std::size_t i = 0; i < members_.size(); ++i)
      if (members_[i] && !other.members_[i]) return false;
    return true;
  }

  std::vector<std::pair<Element, Element>> pairs() const {
    std::vector<std::pair<Element, Element>> out;
    for (std::size_t i = 0; i < members_.size(); ++i)
      if (members_[i]) out.emplace_back(i / y_size_, i % y_size_);
    return out;
  }

  friend bool operator==(const CIdeal&, const CIdeal&) = default;

 private:
  std::size_t x_size_ = 0;
  std::size_t y_size_ = 0;
  std::vector<bool> members_;
};

namespace detail {

// One pass of the closure: down-close, then add the slice joins. Returns
// whether anything changed.
inline bool closure_step(const FiniteFrame& x, const FiniteFrame& y, CIdeal& d) {
  bool changed = false;
  const auto snapshot = d.pairs();
  for (auto [a, b] : snapshot)
    for (Element a2 = 0; a2 < x.size(); ++a2) {
      if (!x.leq(a2, a)) continue;
      for (Element b2 = 0; b2 < y.size(); ++b2)
        if (y.leq(b2, b) && !d.contains(a2, b2)) {
          d.insert(a2, b2);
          changed = true;
        }
    }
  for (Element b = 0; b < y.size(); ++b) {
    Element acc = x.bottom();
    for (Element a = 0; a < x.size(); ++a)
      if (d.contains(a, b)) acc = x.join(acc, a);
    if (!d.contains(acc, b)) {
      d.insert(acc, b);
      changed = true;
    }
  }
  for (Element a = 0; a < x.size(); ++a) {
    Element acc = y.bottom();
    for (Element b = 0; b < y.size(); ++b)
      if (d.contains(a, b)) acc = y.join(acc, b);
    if (!d.contains(a, acc)) {
      d.insert(a, acc);
      changed = true;
    }
  }
  return changed;
}

}  // namespace detail

/// Least C-ideal of X x Y containing `d`, computed to a fixpoint.
inline CIdeal cideal_closure(const FiniteFrame& x, const FiniteFrame& y, CIdeal d) {
  while (detail::closure_step(x, y, d)) {
  }
  return d;
}

/// Least C-ideal containing the given generator pairs. Throws
/// UnknownElement for indices outside X or Y.
inline CIdeal cideal_closure(const FiniteFrame& x, const FiniteFrame& y,
                             std::span<const std::pair<Element, Element>> generators) {
  CIdeal d(x.size(), y.size());
  for (auto [a, b] : generators) {
    if (a >= x.size() || b >= y.size())
      throw Error(ErrorKind::UnknownElement, "pair=(" + std::to_string(a) + "," + std::to_string(b) + ")");
    d.insert(a, b);
  }
  return cideal_closure(x, y, std::move(d));
}

inline CIdeal cideal_closure(const FiniteFrame& x, const FiniteFrame& y,
                             std::initializer_list<std::pair<Element, Element>> generators) {
  return cideal_closure(x, y, std::span(generators.begin(), generators.size()));
}

/// Whether `d` is already a C-ideal (equal to its own closure).
inline bool is_cideal(const FiniteFrame& x, const FiniteFrame& y, const CIdeal& d) {
  CIdeal copy = d;
  return !detail::closure_step(x, y, copy);
}

/// The generator x (x) y of the tensor: closure of the single pair.
inline CIdeal basic(const FiniteFrame& x, const FiniteFrame& y, Element a, Element b) {
  return cideal_closure(x, y, {{a, b}});
}

inline CIdeal cideal_meet(const CIdeal& d, const CIdeal& e) {
  CIdeal out(d.x_size(), d.y_size());
  for (auto [a, b] : d.pairs())
    if (e.contains(a, b)) out.insert(a, b);
  return out;
}

inline CIdeal cideal_join(const FiniteFrame& x, const FiniteFrame& y, const CIdeal& d, const CIdeal& e) {
  CIdeal out = d;
  for (auto [a, b] : e.pairs()) out.insert(a, b);
  return cideal_closure(x, y, std::move(out));
}

/// Maximal pairs of `d` outside the bottom cross. The bottom cross is the
/// tensor's bottom, so these are exactly the generators x (x) y with x, y
/// non-bottom whose join is `d`. Empty for the bottom element.
inline std::vector<std::pair<Element, Element>> maximal_pairs(const FiniteFrame& x, const FiniteFrame& y,
                                                              const CIdeal& d) {
  std::vector<std::pair<Element, Element>> candidates;
  for (auto [a, b] : d.pairs())
    if (a != x.bottom() && b != y.bottom()) candidates.emplace_back(a, b);
  std::vector<std::pair<Element, Element>> out;
  for (auto [a, b] : candidates) {
    bool maximal = true;
    for (auto [a2, b2] : candidates)
      if ((a2 != a || b2 != b) && x.leq(a, a2) && y.leq(b, b2)) {
        maximal = false;
        break;
      }
    if (maximal) out.emplace_back(a, b);
  }
  return out;
}

inline constexpr std::size_t kDefaultTensorBound = 16;

/// The frame tensor X (x) Y, enumerated: its elements are all C-ideals of
/// X x Y ordered by inclusion. `ideals[e]` is the C-ideal behind frame
/// element e; elements are sorted by size, then by bit pattern.
struct TensorFrame {
  FiniteFrame left;
  FiniteFrame right;
  FiniteFrame frame;
  std::vector<CIdeal> ideals;

  /// Frame element of a C-ideal; throws UnknownElement for non-C-ideals.
  Element element_of(const CIdeal& d) const {
    auto it = std::find(ideals.begin(), ideals.end(), d);
    if (it == ideals.end()) throw Error(ErrorKind::UnknownElement, "reason=not-a-cideal");
    return static_cast<Element>(it - ideals.begin());
  }

  Element basic(Element x, Element y) const { return element_of(ftop::basic(left, right, x, y)); }
};

namespace detail {

inline std::string tensor_element_name(const FiniteFrame& x, const FiniteFrame& y, const CIdeal& d) {
  std::string name = "[";
  bool first = true;
  for (auto [a, b] : maximal_pairs(x, y, d)) {
    if (!first) name += "+";
    first = false;
    name += x.name(a) + "*" + y.name(b);
  }
  return name + "]";
}

}  // namespace detail

/// Enumerates X (x) Y when |X|*|Y| <= bound; otherwise throws
/// TooLargeToEnumerate (cideal_closure, cideal_meet and cideal_join still
/// work on individual C-ideals without enumeration).
///
/// Every C-ideal contains the bottom cross, so only subsets of the
/// (|X|-1)(|Y|-1) remaining pairs are tried.
inline TensorFrame tensor_frame(const FiniteFrame& x, const FiniteFrame& y,
                                std::size_t bound = kDefaultTensorBound) {
  if (x.size() * y.size() > bound)
    throw Error(ErrorKind::TooLargeToEnumerate,
                "pairs=" + std::to_string(x.size() * y.size()) + " bound=" + std::to_string(bound) +
                    " hint=use-cideal-operations");
  std::vector<std::pair<Element, Element>> free;
  CIdeal cross(x.size(), y.size());
  for (Element a = 0; a < x.size(); ++a)
    for (Element b = 0; b < y.size(); ++b) {
      if (a == x.bottom() || b == y.bottom())
        cross.insert(a, b);
      else
        free.emplace_back(a, b);
    }
  if (free.size() >= 63)
    throw Error(ErrorKind::TooLargeToEnumerate, "free-pairs=" + std::to_string(free.size()));

  std::vector<std::pair<std::uint64_t, CIdeal>> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    CIdeal d = cross;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask >> i & 1) d.insert(free[i].first, free[i].second);
    if (is_cideal(x, y, d)) found.emplace_back(mask, std::move(d));
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& p, const auto& q) {
    return p.second.count() < q.second.count();
  });

  TensorFrame out{x, y, {}, {}};
  std::vector<std::string> names;
  for (auto& [mask, d] : found) {
    names.push_back(detail::tensor_element_name(x, y, d));
    out.ideals.push_back(std::move(d));
  }
  const std::size_t n = out.ideals.size();
  std::vector<bool> order(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) order[i * n + j] = out.ideals[i].subset_of(out.ideals[j]);
  out.frame = validate_frame_from_order(std::move(names), std::move(order));
  return out;
}

}  // namespace ftop
