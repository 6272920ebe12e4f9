#include <random>

#include "doctest.h"
#include "oracles/qpascal.hpp"
#include "xtilt/ring.hpp"

using namespace xtilt;

namespace {

LaurentPoly from_oracle(const oracle::Laurent& m) {
  LaurentPoly p;
  for (auto [e, c] : m) p += LaurentPoly::monomial(Rational(c), e);
  return p;
}

LaurentPoly lp(std::initializer_list<std::pair<int, long>> terms) {
  LaurentPoly p;
  for (auto [e, c] : terms) p += LaurentPoly::monomial(Rational(c), e);
  return p;
}

RingElem random_elem(std::mt19937& rng, const GroundRing& r) {
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 3), shift(-2, 2);
  auto rand_poly = [&] {
    std::vector<Rational> c(deg(rng) + 1);
    for (auto& x : c) x = coef(rng);
    return Poly(c);
  };
  Poly num = rand_poly();
  Poly den = rand_poly();
  if (den.is_zero() || (!r.q_is_v() && den.eval(Rational(1)) == 0)) den = Poly::constant(1);
  RingElem x = RingElem::from_fraction(r, num, den, shift(rng));
  if (r.is_dvr() && !x.in_ring()) x = x * RingElem::uniformizer(r) * RingElem::uniformizer(r) * RingElem::uniformizer(r);
  return x;
}

}  // namespace

TEST_CASE("quantum integers") {
  CHECK(qint(0, 1).is_zero());
  CHECK(qint(2, 1) == lp({{1, 1}, {-1, 1}}));
  CHECK(qint(-2, 2) == lp({{2, -1}, {-2, -1}}));
  for (int d = 1; d <= 3; ++d)
    for (int n = -7; n <= 7; ++n) {
      CHECK(qint(-n, d) == -qint(n, d));
      CHECK(qint(n, d).eval_at_one() == n);
    }
}

TEST_CASE("quantum binomials against the q-Pascal recursion") {
  CHECK(qbinom(9, 0, 2) == LaurentPoly(Rational(1)));
  CHECK(qbinom(3, 1, 1) == lp({{2, 1}, {0, 1}, {-2, 1}}));
  CHECK(qbinom(4, 2, 1) == lp({{4, 1}, {2, 1}, {0, 2}, {-2, 1}, {-4, 1}}));
  for (int d = 1; d <= 3; ++d)
    for (int n = 0; n <= 9; ++n)
      for (int r = 0; r <= n + 1; ++r) {
        CHECK(qbinom(n, r, d) == from_oracle(oracle::qbinom_pascal(n, r, d)));
      }
}

TEST_CASE("quantum binomials specialize to binomial coefficients") {
  auto binom = [](long n, long r) {
    Rational b = 1;
    for (long i = 0; i < r; ++i) b = b * (n - i) / (i + 1);
    return b;
  };
  for (int d = 1; d <= 3; ++d)
    for (int n = -6; n <= 8; ++n)
      for (int r = 0; r <= 5; ++r) CHECK(qbinom(n, r, d).eval_at_one() == binom(n, r));
}

TEST_CASE("embedding and valuations") {
  const auto c3 = GroundRing::cyclotomic(3);
  RingElem three = RingElem::embed(qint(3, 1), c3);
  CHECK(three.valuation() == 1);
  CHECK(three.v_shift() == -2);
  CHECK(three.num() == Poly({Rational(1), Rational(-1), Rational(1)}));
  CHECK(three.to_string() == "s^1 * (v^-2*(v^2-v+1))");
  RingElem two = RingElem::embed(qint(2, 1), c3);
  CHECK(two.valuation() == 0);
  CHECK(two == RingElem::from_fraction(c3, Poly({Rational(1), Rational(0), Rational(1)}), Poly::constant(1), -1));

  const auto z5 = GroundRing::integer_local(5);
  RingElem five = RingElem::embed(qint(5, 1), z5);
  CHECK(five.valuation() == 1);
  CHECK(five.to_string() == "5^1 * 1");
  CHECK(RingElem::from_rational(z5, Rational(10, 3)).valuation() == 1);
  CHECK(RingElem::zero(z5).valuation() == kInfiniteValuation);
  CHECK(RingElem::from_int(GroundRing::generic(), 7).valuation() == 0);
}

TEST_CASE("residues") {
  const auto c3 = GroundRing::cyclotomic(3);
  CHECK(RingElem::embed(qint(3, 1), c3).residue().is_zero());
  CHECK(RingElem::embed(qint(2, 1), c3).residue() == ResidueElem(c3, Poly::constant(-1)));
  const auto z5 = GroundRing::integer_local(5);
  CHECK(RingElem::from_rational(z5, Rational(2, 3)).residue().value() == Poly::constant(4));
  ResidueElem a(c3, Poly::v());
  CHECK(a * a * a == ResidueElem::one(c3));
  CHECK(a * a.inverse() == ResidueElem::one(c3));
}

TEST_CASE("genericity certificate") {
  for (auto r : {GroundRing::generic(), GroundRing::rational(), GroundRing::cyclotomic(3),
                 GroundRing::cyclotomic(5), GroundRing::cyclotomic(4), GroundRing::integer_local(2),
                 GroundRing::integer_local(3)})
    CHECK_NOTHROW(r.check_generic(40));
}

TEST_CASE("ring descriptors") {
  for (std::string d : {"generic", "rational", "cyc:3", "cyc:12", "int:7"})
    CHECK(GroundRing::parse(d).descriptor() == d);
  CHECK_THROWS(GroundRing::parse("int:4"));
  CHECK_THROWS(GroundRing::parse("cyc:0"));
  CHECK_THROWS(GroundRing::parse("cyc:"));
  CHECK_THROWS(GroundRing::parse("field"));
}

TEST_CASE("ring axioms, valuation laws and text round trip on random elements") {
  std::mt19937 rng(20261016);
  for (auto r : {GroundRing::generic(), GroundRing::cyclotomic(3), GroundRing::cyclotomic(4),
                 GroundRing::integer_local(3), GroundRing::rational()}) {
    for (int trial = 0; trial < 60; ++trial) {
      RingElem x = random_elem(rng, r), y = random_elem(rng, r), z = random_elem(rng, r);
      CHECK((x + y) + z == x + (y + z));
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK(x - x == RingElem::zero(r));
      if (!x.is_zero() && !y.is_zero()) {
        CHECK((x * y).valuation() == x.valuation() + y.valuation());
        CHECK(x * x.inverse() == RingElem::one(r));
      }
      if (!(x + y).is_zero()) CHECK((x + y).valuation() >= std::min(x.valuation(), y.valuation()));
      CHECK(RingElem::parse(x.to_string(), r) == x);
      CHECK(RingElem::parse(x.to_string(), r).to_string() == x.to_string());
      if (r.is_dvr() && x.in_ring() && y.in_ring())
        CHECK((x * y).residue() == x.residue() * y.residue());
    }
  }
}

TEST_CASE("parser rejects malformed text") {
  const auto c3 = GroundRing::cyclotomic(3);
  CHECK_THROWS(RingElem::parse("s^1 * (", c3));
  CHECK_THROWS(RingElem::parse("v", GroundRing::integer_local(3)));
  CHECK_THROWS(RingElem::parse("1/0", c3));
  CHECK_THROWS(RingElem::parse("s", GroundRing::generic()));
  CHECK(RingElem::parse("s^-1 * (v)", c3).valuation() == -1);
}
