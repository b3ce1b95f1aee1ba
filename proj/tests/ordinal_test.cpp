#include <gtest/gtest.h>

#include <map>
#include <random>

#include "og/ordinal.hpp"

using og::ordinal;
using og::parse_ordinal;

namespace {

// Independent oracle for ordinals below w^w: coefficient vector indexed by
// exponent, with addition and comparison written directly from the
// definitions rather than through the CNF term list.
struct poly {
  std::map<int, std::uint64_t, std::greater<int>> c;  // exponent -> coefficient, high first

  static poly of(const ordinal& a) {
    poly p;
    for (const auto& t : a.terms()) p.c[static_cast<int>(t.exp.to_nat())] = t.coef;
    return p;
  }
  friend poly operator+(const poly& a, const poly& b) {
    if (b.c.empty()) return a;
    int lead = b.c.begin()->first;
    poly r;
    for (auto [e, k] : a.c)
      if (e > lead) r.c[e] = k;
    for (auto [e, k] : b.c) r.c[e] += k;
    if (a.c.count(lead)) r.c[lead] += a.c.at(lead);
    return r;
  }
  friend int cmp(const poly& a, const poly& b) {
    int top = 0;
    for (auto [e, k] : a.c) top = std::max(top, e);
    for (auto [e, k] : b.c) top = std::max(top, e);
    for (int e = top; e >= 0; --e) {
      std::uint64_t x = a.c.count(e) ? a.c.at(e) : 0, y = b.c.count(e) ? b.c.at(e) : 0;
      if (x != y) return x < y ? -1 : 1;
    }
    return 0;
  }
};

ordinal random_below_w_w(std::mt19937_64& rng) {
  ordinal r;
  int n = static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i)
    r = r + ordinal::monomial(ordinal(rng() % 5), 1 + rng() % 9);
  return r;
}

ordinal random_any(std::mt19937_64& rng, int depth) {
  ordinal r;
  int n = static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    ordinal e = depth > 0 && rng() % 3 == 0 ? random_any(rng, depth - 1) : ordinal(rng() % 4);
    r = r + ordinal::monomial(e, 1 + rng() % 9);
  }
  return r;
}

}  // namespace

TEST(Ordinal, ParseExamples) {
  EXPECT_EQ(parse_ordinal("0"), ordinal(0));
  EXPECT_EQ(parse_ordinal("w+3").str(), "w+3");
  EXPECT_EQ(parse_ordinal("3+w"), ordinal::omega());
  EXPECT_EQ(parse_ordinal("w^2*3+w+4").str(), "w^2*3+w+4");
  EXPECT_EQ(parse_ordinal("w^w").str(), "w^w");
  EXPECT_EQ(parse_ordinal("w^(w+1)*2").str(), "w^(w+1)*2");
  EXPECT_EQ(parse_ordinal("w + w"), ordinal::monomial(1, 2));
  EXPECT_EQ(parse_ordinal("\xCF\x89+1").str(), "w+1");
}

TEST(Ordinal, ThreePlusOmegaMatchesOracle) {
  poly three = poly::of(ordinal(3)), w = poly::of(ordinal::omega());
  EXPECT_EQ(cmp(three + w, w), 0);
}

TEST(Ordinal, ParseErrors) {
  for (const char* bad : {"", "w*0", "w+", "x", "w^", "2*w", "w^(1", "w*"}) {
    try {
      parse_ordinal(bad);
      FAIL() << bad;
    } catch (const og::error& e) {
      EXPECT_EQ(e.code(), og::errc::syntax) << bad;
    }
  }
  std::string deep = "w";
  for (int i = 0; i < 12; ++i) deep = "w^(" + deep + ")";
  EXPECT_THROW(parse_ordinal(deep), og::error);
}

TEST(Ordinal, ZeroCoefficientMessageNamesPosition) {
  try {
    parse_ordinal("w*0");
    FAIL();
  } catch (const og::error& e) {
    EXPECT_NE(std::string(e.what()).find("position 2"), std::string::npos) << e.what();
  }
}

TEST(Ordinal, Compare) {
  EXPECT_EQ(og::compare3(ordinal::omega(), 5), og::cmp::greater);
  EXPECT_EQ(og::compare3(parse_ordinal("w+1"), parse_ordinal("w+1")), og::cmp::equal);
  EXPECT_EQ(og::compare3(parse_ordinal("w*2"), parse_ordinal("w+9")), og::cmp::greater);
  EXPECT_EQ(cmp(poly::of(parse_ordinal("w*2")), poly::of(parse_ordinal("w+9"))), 1);
}

TEST(Ordinal, Successor) {
  EXPECT_EQ(og::successor(0), ordinal(1));
  EXPECT_EQ(og::successor(ordinal::omega()).str(), "w+1");
  EXPECT_EQ(og::successor(parse_ordinal("w*2+4")).str(), "w*2+5");
}

TEST(Ordinal, Add) {
  EXPECT_EQ(ordinal(1) + ordinal::omega(), ordinal::omega());
  EXPECT_EQ((ordinal::omega() + 1).str(), "w+1");
  EXPECT_EQ((parse_ordinal("w+2") + parse_ordinal("w*3")).str(), "w*4");
  EXPECT_EQ(cmp(poly::of(parse_ordinal("w+2")) + poly::of(parse_ordinal("w*3")),
                poly::of(parse_ordinal("w*4"))),
            0);
}

TEST(Ordinal, SupFinite) {
  EXPECT_EQ(og::sup_finite({0}), ordinal(0));
  EXPECT_EQ(og::sup_finite({ordinal::omega(), 4, parse_ordinal("w+1")}).str(), "w+1");
  EXPECT_EQ(og::sup_finite({3, 3, 3}), ordinal(3));
  EXPECT_THROW(og::sup_finite({}), og::error);
}

TEST(Ordinal, IsLimit) {
  EXPECT_TRUE(og::is_limit(ordinal::omega()));
  EXPECT_FALSE(og::is_limit(parse_ordinal("w+1")));
  EXPECT_FALSE(og::is_limit(0));
  EXPECT_FALSE(ordinal(0).is_successor());
}

TEST(Ordinal, RoundTripRandom) {
  std::mt19937_64 rng(0);
  for (int i = 0; i < 1000; ++i) {
    ordinal x = random_below_w_w(rng);
    x = x + ordinal::monomial(rng() % 3 ? ordinal(0) : ordinal(1), 1 + rng() % 9);
    EXPECT_EQ(parse_ordinal(x.str()), x) << x.str();
    EXPECT_EQ(parse_ordinal(x.str()).str(), x.str());
  }
  for (int i = 0; i < 300; ++i) {
    ordinal x = random_any(rng, 2);
    EXPECT_EQ(parse_ordinal(x.str()), x) << x.str();
  }
}

TEST(Ordinal, OrderEmbeddingOnNaturals) {
  for (int a = 0; a <= 100; ++a)
    for (int b = 0; b <= 100; b += 7) EXPECT_EQ(og::compare(a, b), (a > b) - (a < b));
}

TEST(Ordinal, AgreesWithPolynomialOracle) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    ordinal a = random_below_w_w(rng), b = random_below_w_w(rng);
    EXPECT_EQ(cmp(poly::of(a + b), poly::of(a) + poly::of(b)), 0) << a.str() << " + " << b.str();
    EXPECT_EQ(og::compare(a, b), cmp(poly::of(a), poly::of(b)));
  }
}

TEST(Ordinal, AddAssociativeAndSuccessor) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    ordinal a = random_any(rng, 1), b = random_any(rng, 1), c = random_any(rng, 1);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(og::successor(a), a + 1);
    EXPECT_EQ(og::compare3(a, og::successor(a)), og::cmp::less);
  }
}

TEST(Ordinal, FundamentalSequences) {
  EXPECT_EQ(og::fundamental_pattern(ordinal::omega()), "n");
  EXPECT_EQ(og::fundamental_element(parse_ordinal("w*2"), 5).str(), "w+5");
  EXPECT_EQ(og::fundamental_element(parse_ordinal("w^2"), 3).str(), "w*3");
  EXPECT_EQ(og::fundamental_element(parse_ordinal("w^w"), 3).str(), "w^3");
  EXPECT_EQ(og::fundamental_element(parse_ordinal("w^2+w"), 0).str(), "w^2");
  for (const char* s : {"w", "w*3", "w^2", "w^w", "w^2+w*4", "w^(w+2)"}) {
    ordinal a = parse_ordinal(s);
    ordinal prev = og::fundamental_element(a, 0);
    for (std::uint64_t n = 1; n < 10; ++n) {
      ordinal x = og::fundamental_element(a, n);
      EXPECT_LT(prev, x);
      EXPECT_LT(x, a);
      prev = x;
    }
  }
}
