#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qaslopes/errors.hpp"
#include "qaslopes/link_diagram.hpp"

using namespace qaslopes;

namespace {

const char* kHopf = "PD[X(1,4,2,3), X(3,2,4,1)]";
const char* kTrefoil = "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]";
// Trefoil projection with one crossing switched: an unknot needing RII.
const char* kFlippedTrefoil = "PD[X(1,4,2,5), X(6,4,1,3), X(5,2,6,3)]";
// Connected sum of a trefoil and a Hopf link, alternating.
const char* kTrefoilHopf = "PD[X(1,2,3,4),X(4,3,5,1),X(2,6,7,8),X(9,10,6,5),X(10,9,8,7)]";

}  // namespace

TEST(PD, ParseExamples) {
  const LinkDiagram hopf = parse_pd(kHopf);
  EXPECT_EQ(hopf.components(), 2);
  EXPECT_EQ(hopf.crossing_count(), 2);
  EXPECT_EQ(parse_pd(kTrefoil).components(), 1);
  const LinkDiagram unknot = parse_pd("PD[] + U1");
  EXPECT_EQ(unknot.components(), 1);
  EXPECT_EQ(unknot.crossing_count(), 0);
}

TEST(PD, JsonForms) {
  EXPECT_EQ(parse_pd_code("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]"), parse_pd_code(kTrefoil));
  const PDCode loops = parse_pd_code(R"({"crossings": [], "free_loops": 2})");
  EXPECT_EQ(loops.free_loops, 2);
  EXPECT_EQ(parse_pd_code(R"({"crossings": [[1,4,2,3],[3,2,4,1]]})"), parse_pd_code(kHopf));
}

TEST(PD, StringRoundTrip) {
  const PDCode pd = parse_pd_code(kTrefoil);
  EXPECT_EQ(pd.str(), "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]");
  EXPECT_EQ(parse_pd_code(pd.str()), pd);
  EXPECT_EQ(parse_pd_code("PD[X(1,4,2,3),X(3,2,4,1)] + U3").free_loops, 3);
}

TEST(PD, RejectsMalformed) {
  EXPECT_THROW(parse_pd_code("PD[X(1,2,3)]"), ParseError);
  EXPECT_THROW(parse_pd_code("PD[X(1,2,3,4)"), ParseError);
  EXPECT_THROW(parse_pd_code("PD[]"), ParseError);
  EXPECT_THROW(parse_pd_code("hello"), ParseError);
  EXPECT_THROW(parse_pd("PD[X(4,2,1,1)]"), ParseError);
  EXPECT_THROW(parse_pd("PD[X(1,5,2,4), X(3,6,4,1), X(5,2,6,3)]"), ParseError);
}

TEST(Determinant, Examples) {
  EXPECT_EQ(determinant(parse_pd(kTrefoil)), 3);
  EXPECT_EQ(oracle::bracket_determinant(parse_pd_code(kTrefoil)), 3);
  EXPECT_EQ(determinant(parse_pd("PD[] + U1")), 1);
  EXPECT_EQ(determinant(parse_pd("PD[] + U2")), 0);
  EXPECT_EQ(determinant(parse_pd("PD[X(1,4,2,3),X(3,2,4,1)] + U1")), 0);
  EXPECT_EQ(determinant(parse_pd("PD[X(1,3,2,4),X(2,3,1,4)]")), 0);
  EXPECT_EQ(determinant(parse_pd(kHopf)), 2);
  EXPECT_EQ(determinant(parse_pd(kTrefoilHopf)), 6);
}

TEST(Determinant, GoeritzMatrixShape) {
  const LinkDiagram t = parse_pd(kTrefoil);
  const auto g = goeritz_matrix(t, 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    BigInt row(0);
    for (std::size_t j = 0; j < g.size(); ++j) {
      EXPECT_EQ(g[i][j], g[j][i]);
      row += g[i][j];
    }
    EXPECT_EQ(row, 0);
  }
}

TEST(Faces, EulerAndColouring) {
  for (const auto& row : fixtures::diagrams()) {
    const LinkDiagram d(row.pd);
    if (d.pieces() == 1) {
      ASSERT_EQ(d.face_count(), d.crossing_count() + 2) << row.name;
    }
    for (int c = 0; c < d.crossing_count(); ++c) {
      for (int i = 0; i < 4; ++i) {
        ASSERT_NE(d.face_color(d.face_of_corner(c, i)), d.face_color(d.face_of_corner(c, (i + 1) % 4))) << row.name;
      }
    }
    ASSERT_EQ(d.components(), row.components) << row.name;
  }
}

TEST(Smoothing, HopfExamples) {
  const LinkDiagram hopf = parse_pd(kHopf);
  for (int c = 0; c < 2; ++c) {
    for (int r = 0; r < 2; ++r) {
      const LinkDiagram s = smooth(hopf, {c, r});
      EXPECT_EQ(s.components(), 1);
      EXPECT_EQ(determinant(s), 1);
      EXPECT_EQ(reduce(s).crossing_count(), 0);
    }
  }
}

TEST(Smoothing, TrefoilExamples) {
  const LinkDiagram t = parse_pd(kTrefoil);
  const std::string hopf_key = canonical_form(parse_pd(kHopf));
  for (int c = 0; c < 3; ++c) {
    const LinkDiagram s0 = smooth(t, {c, 0}), s1 = smooth(t, {c, 1});
    std::vector<BigInt> dets{determinant(s0), determinant(s1)};
    std::sort(dets.begin(), dets.end());
    EXPECT_EQ(dets, (std::vector<BigInt>{1, 2}));
    const LinkDiagram& hopf_side = determinant(s0) == 2 ? s0 : s1;
    const LinkDiagram& unknot_side = determinant(s0) == 2 ? s1 : s0;
    EXPECT_EQ(canonical_form(reduce(hopf_side)), hopf_key);
    EXPECT_EQ(reduce(unknot_side).crossing_count(), 0);
    EXPECT_EQ(reduce(unknot_side).free_loops(), 1);
  }
}

TEST(Smoothing, InvalidSites) {
  EXPECT_THROW(smooth(parse_pd("PD[] + U1"), {0, 0}), DomainError);
  EXPECT_THROW(smooth(parse_pd(kTrefoil), {3, 0}), DomainError);
  EXPECT_THROW(smooth(parse_pd(kTrefoil), {0, 2}), DomainError);
}

TEST(Smoothing, FreeLoopsAppear) {
  const LinkDiagram kink = parse_pd("PD[X(1,1,2,2)]");
  const LinkDiagram a = smooth(kink, {0, 0}), b = smooth(kink, {0, 1});
  EXPECT_EQ(a.free_loops() + b.free_loops(), 3);
}

TEST(Reduce, Examples) {
  const LinkDiagram r1 = reduce(parse_pd("PD[X(1,1,2,2)]"));
  EXPECT_EQ(r1.crossing_count(), 0);
  EXPECT_EQ(r1.free_loops(), 1);
  const LinkDiagram r2 = reduce(parse_pd(kFlippedTrefoil));
  EXPECT_EQ(r2.crossing_count(), 0);
  EXPECT_EQ(r2.free_loops(), 1);
  const LinkDiagram unlink = reduce(parse_pd("PD[X(1,3,2,4),X(2,3,1,4)]"));
  EXPECT_EQ(unlink.crossing_count(), 0);
  EXPECT_EQ(unlink.free_loops(), 2);
  EXPECT_EQ(canonical_form(reduce(parse_pd(kTrefoil))), canonical_form(parse_pd(kTrefoil)));
  EXPECT_EQ(reduce(parse_pd(kTrefoil)).crossing_count(), 3);
}

TEST(Alternating, Examples) {
  EXPECT_TRUE(is_alternating(parse_pd(kTrefoil)));
  EXPECT_TRUE(is_alternating(parse_pd(kTrefoilHopf)));
  EXPECT_TRUE(is_connected_nonsplit(parse_pd(kTrefoilHopf)));
  EXPECT_FALSE(is_alternating(parse_pd(kFlippedTrefoil)));
  EXPECT_FALSE(is_alternating(LinkDiagram(fixtures::by_name("8_19").pd)));
  EXPECT_FALSE(is_connected_nonsplit(parse_pd("PD[] + U1")));
  EXPECT_FALSE(is_connected_nonsplit(parse_pd("PD[X(1,4,2,3),X(3,2,4,1)] + U1")));
}

TEST(Alternating, MatchesFixtureColumn) {
  for (const auto& row : fixtures::diagrams()) {
    EXPECT_EQ(is_alternating(LinkDiagram(row.pd)), row.alternating) << row.name;
  }
}

TEST(CanonicalForm, Examples) {
  const std::string t = canonical_form(parse_pd(kTrefoil));
  EXPECT_EQ(canonical_form(parse_pd("PD[X(3,6,4,1), X(5,2,6,3), X(1,4,2,5)]")), t);  // labels + 2
  EXPECT_EQ(canonical_form(parse_pd("PD[X(5,2,6,3), X(1,4,2,5), X(3,6,4,1)]")), t);  // reordered
  EXPECT_NE(canonical_form(parse_pd(kHopf)), t);
  EXPECT_NE(canonical_form(LinkDiagram(fixtures::mirror(parse_pd_code(kTrefoil)))), t);
  EXPECT_EQ(canonical_form(parse_pd(t)), t);
}

TEST(DiagramProperty, DualOracle) {
  for (const auto& row : fixtures::diagrams()) {
    const LinkDiagram d(row.pd);
    const BigInt b = oracle::bracket_determinant(row.pd);
    ASSERT_EQ(determinant(d, 0), b) << row.name;
    ASSERT_EQ(determinant(d, 1), b) << row.name;
    ASSERT_EQ(b, row.det) << row.name;
  }
}

TEST(DiagramProperty, InvariantsUnderRelabellingAndMirror) {
  std::mt19937_64 rng(11);
  for (const auto& row : fixtures::diagrams()) {
    const LinkDiagram d(row.pd);
    const std::string key = canonical_form(d);
    for (int trial = 0; trial < 3; ++trial) {
      const LinkDiagram s(fixtures::scramble(row.pd, rng));
      ASSERT_EQ(canonical_form(s), key) << row.name;
      ASSERT_EQ(determinant(s), row.det) << row.name;
    }
    ASSERT_EQ(determinant(LinkDiagram(fixtures::mirror(row.pd))), row.det) << row.name;
    ASSERT_EQ(determinant(LinkDiagram(normalize_pd(row.pd))), row.det) << row.name;
    ASSERT_EQ(canonical_form(LinkDiagram(normalize_pd(row.pd))), key) << row.name;
    ASSERT_EQ(canonical_form(canonical_diagram(d)), key) << row.name;
  }
}

TEST(DiagramProperty, ReduceIsIdempotentAndKeepsDeterminant) {
  std::mt19937_64 rng(5);
  for (const auto& row : fixtures::diagrams()) {
    const LinkDiagram d(row.pd);
    for (int c = 0; c < d.crossing_count(); c += 3) {
      for (int r = 0; r < 2; ++r) {
        const LinkDiagram s = smooth(d, {c, r});
        const LinkDiagram once = reduce(s);
        ASSERT_EQ(canonical_form(reduce(once)), canonical_form(once)) << row.name;
        ASSERT_EQ(determinant(once), determinant(s)) << row.name;
        ASSERT_EQ(canonical_form(reduce(LinkDiagram(fixtures::scramble(s.pd(), rng)))), canonical_form(once))
            << row.name;
        ASSERT_LE(once.crossing_count(), s.crossing_count());
      }
    }
  }
}

// In a reduced alternating diagram every crossing splits the determinant.
TEST(DiagramProperty, AlternatingSmoothingsAreAdditive) {
  for (const auto& row : fixtures::diagrams()) {
    if (!row.alternating) continue;
    const LinkDiagram d(row.pd);
    for (int c = 0; c < d.crossing_count(); ++c) {
      const BigInt d0 = determinant(smooth(d, {c, 0})), d1 = determinant(smooth(d, {c, 1}));
      ASSERT_EQ(d0 + d1, row.det) << row.name << " crossing " << c;
      ASSERT_GE(d0, 1);
      ASSERT_GE(d1, 1);
    }
  }
}

TEST(DiagramProperty, NormalizeKeepsPDWellFormed) {
  for (const auto& row : fixtures::diagrams()) {
    const PDCode n = normalize_pd(row.pd);
    const int labels = 2 * static_cast<int>(n.crossings.size());
    std::vector<int> count(labels + 1, 0);
    for (const auto& x : n.crossings) {
      for (int v : x) {
        ASSERT_GE(v, 1);
        ASSERT_LE(v, labels);
        ++count[v];
      }
    }
    for (int v = 1; v <= labels; ++v) ASSERT_EQ(count[v], 2) << row.name;
  }
}
