#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftop/error.hpp"

namespace ftop {

/// Index of an element inside its FiniteFrame.
using Element = std::size_t;

/// A finite distributive lattice with top and bottom, i.e. a finite frame.
/// Finite frames have every join as soon as they have binary joins and a
/// bottom, so binary structure plus bounds is all that gets stored.
///
/// Instances only come out of validate_frame (or constructions that funnel
/// through it), so every FiniteFrame satisfies the frame axioms.
class FiniteFrame {
 public:
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Element e) const { return names_.at(e); }

  std::optional<Element> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Throws UnknownElement.
  Element index_of(std::string_view name) const {
    if (auto e = find(name)) return *e;
    throw Error(ErrorKind::UnknownElement, "element=" + std::string(name));
  }

  bool leq(Element a, Element b) const { return order_[a * size() + b]; }
  Element meet(Element a, Element b) const { return meet_[a * size() + b]; }
  Element join(Element a, Element b) const { return join_[a * size() + b]; }
  Element top() const { return top_; }
  Element bottom() const { return bottom_; }

  /// Meet/join by name; throw UnknownElement.
  const std::string& meet(std::string_view a, std::string_view b) const {
    return name(meet(index_of(a), index_of(b)));
  }
  const std::string& join(std::string_view a, std::string_view b) const {
    return name(join(index_of(a), index_of(b)));
  }

  /// The Hasse diagram: pairs (a, b) with a < b and nothing strictly between.
  std::vector<std::pair<Element, Element>> covering_pairs() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element a = 0; a < size(); ++a)
      for (Element b = 0; b < size(); ++b) {
        if (a == b || !leq(a, b)) continue;
        bool covered = true;
        for (Element c = 0; c < size() && covered; ++c)
          if (c != a && c != b && leq(a, c) && leq(c, b)) covered = false;
        if (covered) out.emplace_back(a, b);
      }
    return out;
  }

  /// Structural equality: same element names in the same positions and the
  /// same order relation.
  friend bool operator==(const FiniteFrame& x, const FiniteFrame& y) {
    return x.names_ == y.names_ && x.order_ == y.order_;
  }

 private:
  friend FiniteFrame validate_frame_from_order(std::vector<std::string>, std::vector<bool>);

  std::vector<std::string> names_;
  std::map<std::string, Element, std::less<>> index_;
  std::vector<bool> order_;
  std::vector<Element> meet_;
  std::vector<Element> join_;
  Element top_ = 0;
  Element bottom_ = 0;
};

namespace detail {

inline std::string pair_witness(const std::vector<std::string>& names, std::size_t a, std::size_t b) {
  return "x=" + names[a] + " y=" + names[b];
}

// Least element of `candidates` under `order`, if one exists.
inline std::optional<std::size_t> least_of(const std::vector<bool>& order, std::size_t n,
                                           const std::vector<std::size_t>& candidates) {
  for (std::size_t c : candidates) {
    bool least = true;
    for (std::size_t d : candidates)
      if (!order[c * n + d]) {
        least = false;
        break;
      }
    if (least) return c;
  }
  return std::nullopt;
}

}  // namespace detail

/// Validates a candidate given as element names and a full n*n relation
/// (row-major, `order[a*n+b]` meaning a <= b). The relation is closed
/// reflexively and transitively first.
///
/// Throws NotAPoset (antisymmetry), NotALattice (pair without lub or glb,
/// or the empty candidate) or NotDistributive (witness triple). Checks run
/// in that order and report the first failure found.
inline FiniteFrame validate_frame_from_order(std::vector<std::string> names, std::vector<bool> order) {
  const std::size_t n = names.size();
  FiniteFrame frame;
  for (Element i = 0; i < n; ++i)
    if (!frame.index_.emplace(names[i], i).second)
      throw Error(ErrorKind::DuplicateName, "element=" + names[i]);
  if (n == 0) throw Error(ErrorKind::NotALattice, "reason=empty");

  for (std::size_t i = 0; i < n; ++i) order[i * n + i] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (order[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (order[k * n + j]) order[i * n + j] = true;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (order[i * n + j] && order[j * n + i])
        throw Error(ErrorKind::NotAPoset, detail::pair_witness(names, i, j));

  std::vector<bool> reversed(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) reversed[i * n + j] = order[j * n + i];

  frame.meet_.assign(n * n, 0);
  frame.join_.assign(n * n, 0);
  std::vector<std::size_t> uppers, lowers;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      uppers.clear();
      lowers.clear();
      for (std::size_t c = 0; c < n; ++c) {
        if (order[a * n + c] && order[b * n + c]) uppers.push_back(c);
        if (order[c * n + a] && order[c * n + b]) lowers.push_back(c);
      }
      auto lub = detail::least_of(order, n, uppers);
      auto glb = detail::least_of(reversed, n, lowers);
      if (!lub || !glb)
        throw Error(ErrorKind::NotALattice,
                    detail::pair_witness(names, a, b) + (lub ? " missing=meet" : " missing=join"));
      frame.join_[a * n + b] = frame.join_[b * n + a] = *lub;
      frame.meet_[a * n + b] = frame.meet_[b * n + a] = *glb;
    }

  Element top = 0, bottom = 0;
  for (Element e = 1; e < n; ++e) {
    top = frame.join_[top * n + e];
    bottom = frame.meet_[bottom * n + e];
  }

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const auto lhs = frame.meet_[x * n + frame.join_[y * n + z]];
        const auto rhs = frame.join_[frame.meet_[x * n + y] * n + frame.meet_[x * n + z]];
        if (lhs != rhs)
          throw Error(ErrorKind::NotDistributive,
                      "x=" + names[x] + " y=" + names[y] + " z=" + names[z] + " lhs=" + names[lhs] +
                          " rhs=" + names[rhs]);
      }

  frame.names_ = std::move(names);
  frame.order_ = std::move(order);
  frame.top_ = top;
  frame.bottom_ = bottom;
  return frame;
}

/// Validates a candidate given as element names and generating pairs
/// `(a, b)` meaning a <= b. Unknown names in pairs throw UnknownElement.
inline FiniteFrame validate_frame(std::vector<std::string> names,
                                  std::span<const std::pair<std::string, std::string>> leq_pairs) {
  const std::size_t n = names.size();
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < n; ++i)
    if (!index.emplace(names[i], i).second) throw Error(ErrorKind::DuplicateName, "element=" + names[i]);
  std::vector<bool> order(n * n, false);
  for (const auto& [a, b] : leq_pairs) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) throw Error(ErrorKind::UnknownElement, "element=" + a);
    if (ib == index.end()) throw Error(ErrorKind::UnknownElement, "element=" + b);
    order[ia->second * n + ib->second] = true;
  }
  return validate_frame_from_order(std::move(names), std::move(order));
}

inline FiniteFrame validate_frame(std::vector<std::string> names,
                                  std::initializer_list<std::pair<std::string, std::string>> leq_pairs) {
  return validate_frame(std::move(names), std::span(leq_pairs.begin(), leq_pairs.size()));
}

/// Chain 0 < 1 < ... < n-1 with the given names (bottom first).
inline FiniteFrame chain_frame(std::vector<std::string> names) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i + 1 < names.size(); ++i) pairs.emplace_back(names[i], names[i + 1]);
  return validate_frame(std::move(names), pairs);
}

/// A validated frame homomorphism source -> target: preserves binary meets,
/// binary joins, top and bottom, hence all finite meets and all joins.
struct FrameHom {
  FiniteFrame source;
  FiniteFrame target;
  std::vector<Element> map;

  Element operator()(Element e) const { return map[e]; }
  friend bool operator==(const FrameHom&, const FrameHom&) = default;
};

/// Checks bounds first, then meets, then joins. Throws NotTotal when `map`
/// does not cover the source or leaves the target, BoundsNotPreserved,
/// NotMeetPreserving or NotJoinPreserving with the offending pair.
inline FrameHom validate_frame_hom(const FiniteFrame& source, const FiniteFrame& target,
                                   std::vector<Element> map) {
  if (map.size() != source.size())
    throw Error(ErrorKind::NotTotal, "defined=" + std::to_string(map.size()) +
                                         " expected=" + std::to_string(source.size()));
  for (Element e = 0; e < map.size(); ++e)
    if (map[e] >= target.size()) throw Error(ErrorKind::NotTotal, "element=" + source.name(e));

  if (map[source.top()] != target.top())
    throw Error(ErrorKind::BoundsNotPreserved,
                "element=" + source.name(source.top()) + " image=" + target.name(map[source.top()]));
  if (map[source.bottom()] != target.bottom())
    throw Error(ErrorKind::BoundsNotPreserved,
                "element=" + source.name(source.bottom()) + " image=" + target.name(map[source.bottom()]));
  for (Element a = 0; a < source.size(); ++a)
    for (Element b = a + 1; b < source.size(); ++b)
      if (map[source.meet(a, b)] != target.meet(map[a], map[b]))
        throw Error(ErrorKind::NotMeetPreserving, "x=" + source.name(a) + " y=" + source.name(b));
  for (Element a = 0; a < source.size(); ++a)
    for (Element b = a + 1; b < source.size(); ++b)
      if (map[source.join(a, b)] != target.join(map[a], map[b]))
        throw Error(ErrorKind::NotJoinPreserving, "x=" + source.name(a) + " y=" + source.name(b));
  return FrameHom{source, target, std::move(map)};
}

/// Name-based overload. Missing entries throw NotTotal, unknown names
/// UnknownElement.
inline FrameHom validate_frame_hom(const FiniteFrame& source, const FiniteFrame& target,
                                   const std::map<std::string, std::string>& map) {
  std::vector<Element> table(source.size());
  for (Element e = 0; e < source.size(); ++e) {
    auto it = map.find(source.name(e));
    if (it == map.end()) throw Error(ErrorKind::NotTotal, "element=" + source.name(e));
    table[e] = target.index_of(it->second);
  }
  return validate_frame_hom(source, target, std::move(table));
}

inline FrameHom identity_hom(const FiniteFrame& frame) {
  std::vector<Element> map(frame.size());
  for (Element e = 0; e < map.size(); ++e) map[e] = e;
  return FrameHom{frame, frame, std::move(map)};
}

/// Canonical name of the pair (x, y).
inline std::string pair_name(std::string_view x, std::string_view y) {
  return "(" + std::string(x) + "," + std::string(y) + ")";
}

/// X x Y with the componentwise order; element (x, y) sits at x*|Y| + y.
inline FiniteFrame frame_product(const FiniteFrame& x, const FiniteFrame& y) {
  const std::size_t ny = y.size(), n = x.size() * ny;
  std::vector<std::string> names;
  names.reserve(n);
  for (Element a = 0; a < x.size(); ++a)
    for (Element b = 0; b < ny; ++b) names.push_back(pair_name(x.name(a), y.name(b)));
  std::vector<bool> order(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      order[i * n + j] = x.leq(i / ny, j / ny) && y.leq(i % ny, j % ny);
  return validate_frame_from_order(std::move(names), std::move(order));
}

}  // namespace ftop
