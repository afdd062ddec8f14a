#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "ftop/oracle.hpp"
#include "ftop/tensor.hpp"

using ftop::CIdeal;
using ftop::Element;
using ftop::FiniteFrame;

namespace {

const FiniteFrame& catalog(const std::string& name) {
  static const auto frames = ftop::oracle::frame_catalog();
  for (const auto& [n, f] : frames)
    if (n == name) return f;
  throw std::runtime_error("no frame " + name);
}

// Definition-level check: every subset of every slice, not just full slices.
bool is_cideal_by_definition(const FiniteFrame& x, const FiniteFrame& y, const std::vector<bool>& member) {
  const auto in = [&](Element a, Element b) { return member[a * y.size() + b]; };
  for (Element a = 0; a < x.size(); ++a)
    for (Element b = 0; b < y.size(); ++b) {
      if ((a == x.bottom() || b == y.bottom()) && !in(a, b)) return false;
      if (!in(a, b)) continue;
      for (Element a2 = 0; a2 < x.size(); ++a2)
        for (Element b2 = 0; b2 < y.size(); ++b2)
          if (x.leq(a2, a) && y.leq(b2, b) && !in(a2, b2)) return false;
    }
  for (Element b = 0; b < y.size(); ++b)
    for (std::uint32_t s = 0; s < (1u << x.size()); ++s) {
      Element j = x.bottom();
      bool all = true;
      for (Element a = 0; a < x.size(); ++a)
        if (s >> a & 1) {
          all = all && in(a, b);
          j = x.join(j, a);
        }
      if (all && !in(j, b)) return false;
    }
  for (Element a = 0; a < x.size(); ++a)
    for (std::uint32_t s = 0; s < (1u << y.size()); ++s) {
      Element j = y.bottom();
      bool all = true;
      for (Element b = 0; b < y.size(); ++b)
        if (s >> b & 1) {
          all = all && in(a, b);
          j = y.join(j, b);
        }
      if (all && !in(a, j)) return false;
    }
  return true;
}

std::set<std::vector<bool>> all_cideals_by_definition(const FiniteFrame& x, const FiniteFrame& y) {
  const std::size_t n = x.size() * y.size();
  std::set<std::vector<bool>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<bool> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = mask >> i & 1;
    if (is_cideal_by_definition(x, y, m)) out.insert(m);
  }
  return out;
}

// Down-sets of J(X) x J(Y), the classical description of the tensor of
// finite distributive lattices.
std::size_t downsets_of_join_irreducible_product(const FiniteFrame& x, const FiniteFrame& y) {
  const auto irreducibles = [](const FiniteFrame& f) {
    std::vector<Element> out;
    for (Element e = 0; e < f.size(); ++e) {
      if (e == f.bottom()) continue;
      bool irreducible = true;
      for (Element a = 0; a < f.size(); ++a)
        for (Element b = 0; b < f.size(); ++b)
          if (a != e && b != e && f.join(a, b) == e) irreducible = false;
      if (irreducible) out.push_back(e);
    }
    return out;
  };
  const auto jx = irreducibles(x), jy = irreducibles(y);
  std::vector<std::pair<Element, Element>> p;
  for (auto a : jx)
    for (auto b : jy) p.emplace_back(a, b);
  std::size_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.size()); ++mask) {
    bool down = true;
    for (std::size_t i = 0; i < p.size() && down; ++i)
      if (mask >> i & 1)
        for (std::size_t j = 0; j < p.size(); ++j)
          if (x.leq(p[j].first, p[i].first) && y.leq(p[j].second, p[i].second) && !(mask >> j & 1)) down = false;
    count += down;
  }
  return count;
}

}  // namespace

TEST(Tensor, C2TimesC2IsC2) {
  const auto& c2 = catalog("C2");
  const auto t = ftop::tensor_frame(c2, c2);
  EXPECT_EQ(t.frame.size(), 2u);
  EXPECT_NE(ftop::oracle::iso_check(t.frame, c2).verdict, ftop::oracle::IsoVerdict::NotIsomorphic);
  EXPECT_EQ(t.frame.name(t.frame.bottom()), "[]");
  EXPECT_EQ(t.frame.name(t.frame.top()), "[top*top]");
}

TEST(Tensor, EnumerationMatchesDefinitionOnAllSmallPairs) {
  for (const auto& [xn, x] : ftop::oracle::frame_catalog())
    for (const auto& [yn, y] : ftop::oracle::frame_catalog()) {
      if (x.size() * y.size() > 16) continue;
      const auto t = ftop::tensor_frame(x, y);
      std::set<std::vector<bool>> enumerated;
      for (const auto& d : t.ideals) enumerated.insert(d.bits());
      EXPECT_EQ(enumerated.size(), t.ideals.size());
      EXPECT_EQ(enumerated, all_cideals_by_definition(x, y)) << xn << " x " << yn;
    }
}

TEST(Tensor, SizeMatchesDownsetsOfIrreducibleProduct) {
  for (const auto& [xn, x] : ftop::oracle::frame_catalog())
    for (const auto& [yn, y] : ftop::oracle::frame_catalog()) {
      if (x.size() * y.size() > 25) continue;
      const auto t = ftop::tensor_frame(x, y, 25);
      EXPECT_EQ(t.frame.size(), downsets_of_join_irreducible_product(x, y)) << xn << " x " << yn;
    }
}

TEST(Tensor, KnownSizes) {
  EXPECT_EQ(ftop::tensor_frame(catalog("C3"), catalog("C3")).frame.size(), 6u);
  EXPECT_EQ(ftop::tensor_frame(catalog("Diamond"), catalog("C3")).frame.size(), 9u);
  EXPECT_EQ(ftop::tensor_frame(catalog("Diamond"), catalog("Diamond")).frame.size(), 16u);
  EXPECT_EQ(ftop::tensor_frame(catalog("C2"), catalog("C5")).frame.size(), 5u);
}

TEST(Tensor, UnitLawForC2) {
  for (const auto& [name, f] : ftop::oracle::frame_catalog()) {
    const auto t = ftop::tensor_frame(catalog("C2"), f, 25);
    EXPECT_NE(ftop::oracle::iso_check(t.frame, f).verdict, ftop::oracle::IsoVerdict::NotIsomorphic) << name;
  }
}

TEST(Tensor, BoundIsEnforced) {
  try {
    ftop::tensor_frame(catalog("C5"), catalog("C4"));
    FAIL();
  } catch (const ftop::Error& e) {
    EXPECT_EQ(e.kind(), ftop::ErrorKind::TooLargeToEnumerate);
  }
  EXPECT_NO_THROW(ftop::tensor_frame(catalog("C5"), catalog("C4"), 20));
}

TEST(Tensor, ClosureIsExtensiveMonotoneIdempotent) {
  std::mt19937_64 rng(7);
  const auto frames = ftop::oracle::frame_catalog();
  int checked = 0;
  while (checked < 200) {
    const auto& x = frames[rng() % frames.size()].second;
    const auto& y = frames[rng() % frames.size()].second;
    if (x.size() * y.size() > 12) continue;
    CIdeal small(x.size(), y.size()), large(x.size(), y.size());
    for (Element a = 0; a < x.size(); ++a)
      for (Element b = 0; b < y.size(); ++b) {
        const auto r = rng() % 4;
        if (r == 0) small.insert(a, b);
        if (r <= 1) large.insert(a, b);
      }
    const auto cs = ftop::cideal_closure(x, y, small), cl = ftop::cideal_closure(x, y, large);
    EXPECT_TRUE(small.subset_of(cs));
    EXPECT_TRUE(cs.subset_of(cl));
    EXPECT_EQ(ftop::cideal_closure(x, y, cs), cs);
    EXPECT_TRUE(is_cideal_by_definition(x, y, cs.bits()));
    ++checked;
  }
}

TEST(Tensor, BasicElementsAndJoins) {
  const auto& d = catalog("Diamond");
  const auto& c3 = catalog("C3");
  const auto t = ftop::tensor_frame(d, c3);
  const auto a = d.index_of("a"), b = d.index_of("b");
  const auto mid = c3.index_of("m");
  const auto ab = t.frame.join(t.basic(a, mid), t.basic(b, mid));
  // in a tensor, (a (x) m) v (b (x) m) = (a v b) (x) m
  EXPECT_EQ(ab, t.basic(d.join(a, b), mid));
  // x (x) bottom is the tensor bottom
  EXPECT_EQ(t.basic(a, c3.bottom()), t.frame.bottom());
  // meets of basics are basics of meets
  EXPECT_EQ(t.frame.meet(t.basic(a, c3.top()), t.basic(d.top(), mid)), t.basic(a, mid));
  EXPECT_EQ(ftop::cideal_meet(t.ideals[t.basic(a, mid)], t.ideals[t.basic(b, mid)]), t.ideals[t.frame.bottom()]);
}

TEST(Tensor, MaximalPairsRecoverGenerators) {
  const auto& d = catalog("Diamond");
  const auto t = ftop::tensor_frame(d, d);
  for (Element e = 0; e < t.frame.size(); ++e) {
    CIdeal acc(d.size(), d.size());
    acc = ftop::cideal_closure(d, d, acc);
    for (auto [a, b] : ftop::maximal_pairs(d, d, t.ideals[e])) acc = ftop::cideal_join(d, d, acc, ftop::basic(d, d, a, b));
    EXPECT_EQ(acc, t.ideals[e]);
  }
}
