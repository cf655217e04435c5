#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "qaslopes/errors.hpp"
#include "qaslopes/formal_lspace.hpp"

using namespace qaslopes;

namespace {

FormalSeed integer_seed(long long n) { return PositiveIntegerSeed{BigInt(n)}; }

Derivation derive(const FormalSeed& seed, const Slope& query) {
  PropagationResult res = propagate(seed, query);
  EXPECT_TRUE(std::holds_alternative<Derivation>(res)) << query;
  return std::get<Derivation>(res);
}

}  // namespace

TEST(Propagate, WorkedExampleFromTwo) {
  const Derivation d = derive(integer_seed(2), Slope(7, 3));
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0].target, Slope(3, 1));
  EXPECT_EQ(d[0].rule, TriadRule::IntegerStep);
  EXPECT_EQ(std::get<LensMarker>(d[0].first).q, 1);
  EXPECT_EQ(d[1].target, Slope(5, 2));
  EXPECT_EQ(std::get<Slope>(d[1].first), Slope(3, 1));
  EXPECT_EQ(d[1].second, Slope(2, 1));
  EXPECT_EQ(d[2].target, Slope(7, 3));
  EXPECT_EQ(std::get<Slope>(d[2].first), Slope(5, 2));
  EXPECT_EQ(d[2].second, Slope(2, 1));
  EXPECT_TRUE(verify_derivation(d, integer_seed(2), Slope(7, 3)));
}

TEST(Propagate, BelowSeedIsNotDerivable) {
  EXPECT_TRUE(std::holds_alternative<NotDerivable>(propagate(integer_seed(2), Slope(3, 2))));
  EXPECT_TRUE(std::holds_alternative<NotDerivable>(propagate(integer_seed(2), Slope(5, 3))));
  EXPECT_TRUE(std::holds_alternative<NotDerivable>(propagate(integer_seed(5), Slope(-1, 1))));
}

TEST(Propagate, SeedOneSkipsTheUnitInterval) {
  EXPECT_TRUE(std::holds_alternative<NotDerivable>(propagate(integer_seed(1), Slope(3, 2))));
  const Derivation d = derive(integer_seed(1), Slope(5, 2));
  EXPECT_TRUE(verify_derivation(d, integer_seed(1), Slope(5, 2)));
  const Derivation up = derive(integer_seed(1), Slope(4, 1));
  EXPECT_EQ(up.size(), 3u);
}

TEST(Propagate, QueryEqualToSeedIsEmpty) {
  const FormalSeed seed = PositiveSlopeSeed{Slope(7, 2)};
  const Derivation d = derive(seed, Slope(7, 2));
  EXPECT_TRUE(d.empty());
  EXPECT_TRUE(verify_derivation(d, seed, Slope(7, 2)));
  EXPECT_TRUE(derive(integer_seed(3), Slope(3, 1)).empty());
}

TEST(Propagate, SlopeSeedOnlyAddsIntegers) {
  const FormalSeed seed = PositiveSlopeSeed{Slope(7, 3)};
  const Derivation d = derive(seed, Slope(13, 3));
  ASSERT_EQ(d.size(), 2u);
  for (const auto& w : d) EXPECT_EQ(w.rule, TriadRule::IntegerStep);
  EXPECT_TRUE(verify_derivation(d, seed, Slope(13, 3)));
  EXPECT_TRUE(std::holds_alternative<NotDerivable>(propagate(seed, Slope(8, 3))));
  EXPECT_TRUE(std::holds_alternative<NotDerivable>(propagate(seed, Slope(4, 3))));
}

TEST(Propagate, RejectsBadInputs) {
  EXPECT_THROW(propagate(integer_seed(0), Slope(3, 1)), DomainError);
  EXPECT_THROW(propagate(PositiveSlopeSeed{Slope(-1, 2)}, Slope(3, 1)), DomainError);
  EXPECT_THROW(propagate(integer_seed(2), Slope::meridian()), DomainError);
}

TEST(Verify, TamperedParentFails) {
  Derivation d = derive(integer_seed(2), Slope(7, 3));
  d[2].second = Slope(3, 1);
  const CheckResult r = verify_derivation(d, integer_seed(2), Slope(7, 3));
  EXPECT_FALSE(r);
  EXPECT_NE(r.diagnostic.find("step 2"), std::string::npos);
}

TEST(Verify, OtherTampering) {
  const Derivation good = derive(integer_seed(2), Slope(7, 3));
  Derivation underived = good;
  underived.erase(underived.begin());
  EXPECT_FALSE(verify_derivation(underived, integer_seed(2)));

  Derivation lens = good;
  std::get<LensMarker>(lens[0].first).r = 5;
  EXPECT_FALSE(verify_derivation(lens, integer_seed(2)));

  Derivation rule = good;
  rule[1].rule = TriadRule::IntegerStep;
  EXPECT_FALSE(verify_derivation(rule, integer_seed(2)));

  EXPECT_FALSE(verify_derivation(good, integer_seed(2), Slope(5, 2)));
  EXPECT_TRUE(verify_derivation({}, integer_seed(4), Slope(4, 1)));
  EXPECT_FALSE(verify_derivation({}, integer_seed(4), Slope(5, 1)));
}

TEST(GreeneBound, Examples) {
  EXPECT_EQ(greene_max_genus(Slope(4, 1)), 1);
  EXPECT_EQ(greene_max_genus(Slope(1, 1)), 0);
  EXPECT_EQ(greene_max_genus(Slope(25, 3)), 3);
  EXPECT_THROW(greene_max_genus(Slope(-2, 1)), DomainError);
}

TEST(GenusSlopeBound, ExactValues) {
  EXPECT_EQ(min_formal_slope_bound(BigInt(0)).integer_value(), 0);
  EXPECT_EQ(min_formal_slope_bound(BigInt(1)).integer_value(), 3);
  EXPECT_EQ(min_formal_slope_bound(BigInt(3)).integer_value(), 8);
  const GenusSlopeBound b2 = min_formal_slope_bound(BigInt(2));
  EXPECT_FALSE(b2.is_integer());
  EXPECT_THROW(b2.integer_value(), DomainError);
  EXPECT_NEAR(b2.approx(), 4 + (std::sqrt(17.0) - 1) / 2, 1e-12);
  EXPECT_EQ(b2.compare(Rational(11, 2)), std::strong_ordering::greater);
  EXPECT_EQ(b2.compare(Rational(28, 5)), std::strong_ordering::less);
  EXPECT_EQ(min_formal_slope_bound(BigInt(3)).compare(Rational(8)), std::strong_ordering::equal);
  EXPECT_EQ(min_formal_slope_bound(BigInt(3)).compare(Rational(-8)), std::strong_ordering::greater);
}

TEST(GenusSlopeBound, ComparatorAgreesWithFloatingPointAwayFromTies) {
  for (long long g = 0; g <= 60; ++g) {
    const GenusSlopeBound b(g);
    for (long long q = 1; q <= 7; ++q) {
      for (long long p = 0; p <= 300 * q; p += 7) {
        const double diff = b.approx() - static_cast<double>(p) / q;
        if (std::fabs(diff) < 1e-9) continue;
        ASSERT_EQ(b.compare(Rational(p, q)) == std::strong_ordering::greater, diff > 0) << g << " " << p << "/" << q;
      }
    }
  }
}

TEST(FormalTorus, Examples) {
  EXPECT_TRUE(formal_slopes_torus(TorusKnot(3, 2), Slope(9, 2)));
  EXPECT_FALSE(formal_slopes_torus(TorusKnot(3, 2), Slope(4, 1)));
  EXPECT_TRUE(formal_slopes_torus(TorusKnot(5, 3), Slope(13, 1)));
}

TEST(DerivationJson, RoundTrip) {
  const Derivation d = derive(integer_seed(3), Slope(29, 8));
  const Derivation back = derivation_from_json(nlohmann::json::parse(derivation_to_json(d).dump()));
  ASSERT_EQ(back.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(back[i].target, d[i].target);
    EXPECT_EQ(back[i].second, d[i].second);
    EXPECT_EQ(back[i].rule, d[i].rule);
    EXPECT_EQ(back[i].first.index(), d[i].first.index());
  }
  EXPECT_TRUE(verify_derivation(back, integer_seed(3), Slope(29, 8)));
}

TEST(DerivationJson, Malformed) {
  EXPECT_THROW(derivation_from_json(nlohmann::json::object()), ParseError);
  EXPECT_THROW(derivation_from_json(nlohmann::json::parse(R"([{"target":"3/1"}])")), ParseError);
  EXPECT_THROW(derivation_from_json(nlohmann::json::parse(R"([{"target":"3/1","parents":["2/1","2/1"],"rule":"Magic"}])")),
               ParseError);
}

// Every step adds |H_1|: the target numerator is the sum of its parents'.
TEST(PropagateProperty, DerivationsVerifyAndAreAdditive) {
  for (long long n = 2; n <= 4; ++n) {
    for (long long q = 1; q <= 15; ++q) {
      for (long long p = n * q; p <= 8 * q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        const Slope query(p, q);
        const Derivation d = derive(integer_seed(n), query);
        ASSERT_TRUE(verify_derivation(d, integer_seed(n), query)) << query;
        std::set<Slope> targets;
        for (const auto& w : d) {
          ASSERT_TRUE(targets.insert(w.target).second) << "repeated target " << w.target;
          const BigInt first = w.rule == TriadRule::IntegerStep ? std::get<LensMarker>(w.first).q
                                                                : std::get<Slope>(w.first).p();
          ASSERT_EQ(w.target.p(), first + w.second.p());
        }
      }
    }
  }
}

TEST(PropagateProperty, MonotoneInSeed) {
  // Anything derivable from n + 1 is derivable from n.
  for (long long n = 2; n <= 5; ++n) {
    for (long long q = 1; q <= 10; ++q) {
      for (long long p = 1; p <= 8 * q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        const bool hi = std::holds_alternative<Derivation>(propagate(integer_seed(n + 1), Slope(p, q)));
        const bool lo = std::holds_alternative<Derivation>(propagate(integer_seed(n), Slope(p, q)));
        if (hi) ASSERT_TRUE(lo) << n << " " << p << "/" << q;
      }
    }
  }
}
