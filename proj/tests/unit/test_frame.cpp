#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "ftop/frame.hpp"
#include "ftop/oracle.hpp"

using ftop::ErrorKind;
using ftop::FiniteFrame;

namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const ftop::Error& e) {
    return e.kind();
  }
  return ErrorKind::SyntaxError;
}

FiniteFrame diamond() {
  return ftop::validate_frame({"bot", "a", "b", "top"}, {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}});
}

FiniteFrame cube() {
  std::vector<std::string> names;
  Pairs pairs;
  for (int i = 0; i < 8; ++i) names.push_back("s" + std::to_string(i));
  for (int i = 0; i < 8; ++i)
    for (int bit = 0; bit < 3; ++bit)
      if (!(i >> bit & 1)) pairs.emplace_back(names[i], names[i | 1 << bit]);
  return ftop::validate_frame(names, pairs);
}

}  // namespace

TEST(Frame, ChainsAndCubesPass) {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
    const auto c = ftop::chain_frame(names);
    EXPECT_EQ(c.size(), n);
    EXPECT_EQ(c.name(c.bottom()), "c0");
    EXPECT_EQ(c.name(c.top()), names.back());
  }
  const auto b = cube();
  EXPECT_EQ(b.size(), 8u);
  EXPECT_EQ(b.name(b.join(1, 2)), "s3");
  EXPECT_EQ(b.name(b.meet(3, 6)), "s2");
}

TEST(Frame, DiamondOperations) {
  const auto d = diamond();
  EXPECT_EQ(d.join("a", "b"), "top");
  EXPECT_EQ(d.meet("a", "b"), "bot");
  EXPECT_TRUE(d.leq(d.index_of("bot"), d.index_of("b")));
  EXPECT_FALSE(d.leq(d.index_of("a"), d.index_of("b")));
}

TEST(Frame, M3IsNotDistributive) {
  EXPECT_EQ(kind_of([] {
              ftop::validate_frame({"bot", "a", "b", "c", "top"}, {{"bot", "a"},
                                                                   {"bot", "b"},
                                                                   {"bot", "c"},
                                                                   {"a", "top"},
                                                                   {"b", "top"},
                                                                   {"c", "top"}});
            }),
            ErrorKind::NotDistributive);
}

TEST(Frame, N5IsNotDistributive) {
  EXPECT_EQ(kind_of([] {
              ftop::validate_frame({"bot", "a", "b", "c", "top"},
                                   {{"bot", "a"}, {"a", "b"}, {"b", "top"}, {"bot", "c"}, {"c", "top"}});
            }),
            ErrorKind::NotDistributive);
}

TEST(Frame, CyclesAndMissingBoundsAreReported) {
  EXPECT_EQ(kind_of([] { ftop::validate_frame({"a", "b"}, {{"a", "b"}, {"b", "a"}}); }), ErrorKind::NotAPoset);
  EXPECT_EQ(kind_of([] { ftop::validate_frame({"a", "b"}, {}); }), ErrorKind::NotALattice);
  EXPECT_EQ(kind_of([] { ftop::validate_frame({"a", "b"}, {{"a", "c"}}); }), ErrorKind::UnknownElement);
  EXPECT_EQ(kind_of([] { ftop::validate_frame({"a", "a"}, {}); }), ErrorKind::DuplicateName);
}

TEST(Frame, NotALatticeNamesTheMissingOperation) {
  // two incomparable maximal elements above a bottom
  try {
    ftop::validate_frame({"bot", "a", "b"}, {{"bot", "a"}, {"bot", "b"}});
    FAIL();
  } catch (const ftop::Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotALattice);
    EXPECT_NE(e.witness().find("missing=join"), std::string::npos) << e.witness();
  }
}

TEST(Frame, OperationsAgreeWithOrderDefinitions) {
  for (const auto& [name, f] : ftop::oracle::frame_catalog())
    for (ftop::Element a = 0; a < f.size(); ++a)
      for (ftop::Element b = 0; b < f.size(); ++b) {
        const auto j = f.join(a, b), m = f.meet(a, b);
        EXPECT_TRUE(f.leq(a, j) && f.leq(b, j)) << name;
        EXPECT_TRUE(f.leq(m, a) && f.leq(m, b)) << name;
        for (ftop::Element c = 0; c < f.size(); ++c) {
          if (f.leq(a, c) && f.leq(b, c)) {
            EXPECT_TRUE(f.leq(j, c)) << name;
          }
          if (f.leq(c, a) && f.leq(c, b)) {
            EXPECT_TRUE(f.leq(c, m)) << name;
          }
          EXPECT_EQ(f.meet(a, f.join(b, c)), f.join(f.meet(a, b), f.meet(a, c))) << name;
        }
      }
}

TEST(Frame, CatalogHasTheKnownCounts) {
  // distributive lattices with n elements, n = 1..5: 1, 1, 1, 2, 3
  std::vector<int> count(6, 0);
  for (const auto& [name, f] : ftop::oracle::frame_catalog()) ++count[f.size()];
  EXPECT_EQ(count, (std::vector<int>{0, 1, 1, 1, 2, 3}));
}

TEST(Frame, HomomorphismChecks) {
  const auto c2 = ftop::chain_frame({"0", "1"});
  const auto d = diamond();
  // characteristic maps of the two prime filters
  EXPECT_NO_THROW(ftop::validate_frame_hom(d, c2, std::vector<ftop::Element>{0, 1, 0, 1}));
  EXPECT_NO_THROW(ftop::validate_frame_hom(d, c2, std::vector<ftop::Element>{0, 0, 1, 1}));
  EXPECT_EQ(kind_of([&] { ftop::validate_frame_hom(d, c2, std::vector<ftop::Element>{0, 1, 1, 1}); }),
            ErrorKind::NotMeetPreserving);
  EXPECT_EQ(kind_of([&] { ftop::validate_frame_hom(d, c2, std::vector<ftop::Element>{0, 0, 0, 1}); }),
            ErrorKind::NotJoinPreserving);
  EXPECT_EQ(kind_of([&] { ftop::validate_frame_hom(d, c2, std::vector<ftop::Element>{0, 0, 0, 0}); }),
            ErrorKind::BoundsNotPreserved);
  EXPECT_EQ(kind_of([&] { ftop::validate_frame_hom(d, c2, std::vector<ftop::Element>{0, 1}); }), ErrorKind::NotTotal);
  EXPECT_EQ(kind_of([&] { ftop::validate_frame_hom(d, c2, std::map<std::string, std::string>{{"bot", "0"}}); }),
            ErrorKind::NotTotal);
}

TEST(Frame, ProductIsComponentwise) {
  const auto c2 = ftop::chain_frame({"0", "1"});
  const auto c3 = ftop::chain_frame({"0", "h", "1"});
  const auto p = ftop::frame_product(c2, c3);
  EXPECT_EQ(p.size(), 6u);
  EXPECT_EQ(p.join("(1,0)", "(0,h)"), "(1,h)");
  EXPECT_EQ(p.meet("(1,0)", "(0,h)"), "(0,0)");
  EXPECT_EQ(ftop::oracle::iso_check(ftop::frame_product(c2, c2), diamond()).verdict,
            ftop::oracle::IsoVerdict::Isomorphic);
}

TEST(Frame, CoveringPairsRegenerateTheOrder) {
  for (const auto& [name, f] : ftop::oracle::frame_catalog()) {
    Pairs pairs;
    for (auto [a, b] : f.covering_pairs()) pairs.emplace_back(f.name(a), f.name(b));
    EXPECT_EQ(ftop::validate_frame(f.names(), pairs), f) << name;
  }
}
