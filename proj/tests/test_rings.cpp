#include <catch2/catch_amalgamated.hpp>

#include "fphase/complex_rings.hpp"
#include "fphase/poly_rings.hpp"

using namespace fphase;

namespace {

template <class R>
R parse_ring(const std::string& s) {
  TextCursor c(s);
  R v = R::parse(c);
  REQUIRE(c.done());
  return v;
}

template <class R>
void roundtrip(const R& v) {
  CAPTURE(v.text());
  REQUIRE(parse_ring<R>(v.text()) == v);
}

}  // namespace

TEST_CASE("gaussian rational field") {
  CQ a = CQ::from_gaussian(rat(1, 2), rat(-3));
  CQ b = CQ::from_gaussian(rat(2, 5), rat(1, 7));
  REQUIRE((a * b) == (b * a));
  REQUIRE((a * a.inv()) == CQ::one());
  REQUIRE((a + (-a)).is_zero());
  REQUIRE(a.conj().conj() == a);
  REQUIRE((a * b).conj() == (a.conj() * b.conj()));
  REQUIRE(CQ::i() * CQ::i() == -CQ::one());
  roundtrip(a);
  roundtrip(CQ::from_gaussian(rat(0), rat(-2, 3)));
  roundtrip(CQ::zero());
  REQUIRE_THROWS_AS(CQ::zero().inv(), Error);
  REQUIRE_THROWS_AS(CQ::sqrt2(), Error);
}

TEST_CASE("sqrt2 extension field") {
  CQS2 s2 = CQS2::sqrt2();
  REQUIRE(s2 * s2 == CQS2::from_int(2));
  REQUIRE(CQS2::sqrt2_pow(3) == s2 * s2 * s2);
  REQUIRE(CQS2::sqrt2_pow(-1) * s2 == CQS2::one());
  REQUIRE(CQS2::sqrt2_pow(-3) == (s2 * s2 * s2).inv());
  CQS2 x = CQS2{{rat(1, 3), rat(2)}, {rat(-1), rat(5, 4)}};
  REQUIRE((x * x.inv()) == CQS2::one());
  REQUIRE((x.conj() * x).im.is_zero());
  roundtrip(x);
  roundtrip(CQS2{{rat(0), rat(0)}, {rat(-1), rat(2)}});
  roundtrip(CQS2::zero());
}

TEST_CASE("float ring prunes tiny components") {
  Cf64 a = Cf64::from_gaussian(rat(1), rat(0));
  Cf64 tiny = Cf64({1e-13, 0.0});
  REQUIRE(tiny.is_zero());
  REQUIRE((a + tiny) == a);
  Cf64 x = Cf64({0.125, -3.5});
  roundtrip(x);
}

TEST_CASE("regulator ring: exact rational functions in e") {
  EpsRing e = EpsRing::eps();
  EpsRing one = EpsRing::one();
  // (1 - e^2)/(1 - e) reduces to 1 + e.
  EpsRing r = (one - e * e) * (one - e).inv();
  REQUIRE(r == one + e);
  REQUIRE(r.is_polynomial());
  // 1/(2e - e^2) has a simple pole: orders -1, 0, 1 are 1/2, 1/4, 1/8.
  EpsRing p = (EpsRing::from_int(2) * e - e * e).inv();
  REQUIRE(p.order() == -1);
  REQUIRE(p.laurent_coeff(-1) == CQS2::from_rational(rat(1, 2)));
  REQUIRE(p.laurent_coeff(0) == CQS2::from_rational(rat(1, 4)));
  REQUIRE(p.laurent_coeff(1) == CQS2::from_rational(rat(1, 8)));
  REQUIRE(p.laurent_coeff(-2).is_zero());
  REQUIRE((p * p.inv()) == one);
  roundtrip(p);
  roundtrip(r);
  roundtrip(EpsRing::zero());
  // canonical form: equal values compare equal through different routes
  EpsRing lhs = (e + one) * (e + one) * (e - one);
  EpsRing rhs = (e * e - one) * (e + one);
  REQUIRE(lhs == rhs);
}

TEST_CASE("exp-unit ring: formal exponentials") {
  ExpUnitRing u = ExpUnitRing::unit(1);
  REQUIRE(u * ExpUnitRing::unit(2) == ExpUnitRing::unit(3));  // e^c e^{2c} = e^{3c}
  REQUIRE(u * u.inv() == ExpUnitRing::one());
  ExpUnitRing x = u + ExpUnitRing::from_int(2) * ExpUnitRing::unit(-1);
  REQUIRE_THROWS_AS(x.inv(), Error);
  roundtrip(x);
  roundtrip(ExpUnitRing::zero());
  REQUIRE((x - x).is_zero());
}
