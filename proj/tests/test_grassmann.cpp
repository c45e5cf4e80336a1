#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "fphase/complex_rings.hpp"
#include "fphase/grassmann.hpp"

using namespace fphase;
using G = GrassmannElement<CQ>;

namespace {

// Random element with coefficients drawn from small Gaussian rationals.
G random_element(const Workspace& ws, std::mt19937_64& rng, int n_gens, int max_terms) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3), pick(0, (1 << n_gens) - 1);
  G out;
  out.ws = &ws;
  std::uniform_int_distribution<int> terms(1, max_terms);
  int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    CQ c = CQ::from_gaussian(rat(num(rng), den(rng)), rat(num(rng), den(rng)));
    G m = G::scalar(c);
    m.ws = &ws;
    int mask = pick(rng);
    for (int b = 0; b < n_gens; ++b)
      if (mask & (1 << b)) m = m * G::generator(ws, b);
    out = out + m;
  }
  return out;
}

}  // namespace

TEST_CASE("generator products and nilpotency") {
  Workspace ws;
  auto ids = ws.fresh_set("t", 4);
  G t1 = G::generator(ws, ids[0]), t2 = G::generator(ws, ids[1]);
  G t3 = G::generator(ws, ids[2]), t4 = G::generator(ws, ids[3]);

  G t12 = t1 * t2;
  REQUIRE(t12.term_count() == 1);
  REQUIRE(t12.terms[0].mono == (mono_bit(0) | mono_bit(1)));
  REQUIRE(t12.terms[0].coeff == CQ::one());
  REQUIRE((t2 * t1) == -t12);
  REQUIRE((t1 * t1).is_zero());
  REQUIRE(((t1 + t2) * (t1 + t2)).is_zero());

  G lhs = (G::one() + t1 * t2) * (G::one() + t3 * t4);
  G expected = G::one() + t1 * t2 + t3 * t4 + t1 * t2 * t3 * t4;
  REQUIRE(lhs == expected);
}

TEST_CASE("product associativity and graded commutativity, randomized") {
  Workspace ws;
  ws.fresh_set("t", 6);
  std::mt19937_64 rng(20260815);
  for (int trial = 0; trial < 1000; ++trial) {
    G a = random_element(ws, rng, 6, 3);
    G b = random_element(ws, rng, 6, 3);
    G c = random_element(ws, rng, 6, 3);
    REQUIRE(((a * b) * c) == (a * (b * c)));
  }
  // homogeneous elements: a*b = (-1)^{pa pb} b*a
  for (int trial = 0; trial < 200; ++trial) {
    G a = random_element(ws, rng, 6, 4);
    G b = random_element(ws, rng, 6, 4);
    auto [ae, ao] = a.parity_split();
    auto [be, bo] = b.parity_split();
    REQUIRE((ao * bo) == -(bo * ao));
    REQUIRE((ae * bo) == (bo * ae));
    REQUIRE((ae * be) == (be * ae));
  }
}

TEST_CASE("conjugation: antilinear reversal, involutive") {
  Workspace ws;
  ws.fresh_set("t", 6);
  std::mt19937_64 rng(7);
  G t1 = G::generator(ws, 0), t2 = G::generator(ws, 1);
  CQ c = CQ::from_gaussian(rat(2), rat(3));
  REQUIRE((c * (t1 * t2)).conj() == (c.conj() * (t2 * t1)));
  for (int trial = 0; trial < 200; ++trial) {
    G a = random_element(ws, rng, 6, 4);
    G b = random_element(ws, rng, 6, 4);
    REQUIRE(a.conj().conj() == a);
    REQUIRE((a * b).conj() == (b.conj() * a.conj()));
  }
}

TEST_CASE("exp of nilpotent arguments") {
  Workspace ws;
  ws.fresh_set("t", 6);
  G t1 = G::generator(ws, 0), t2 = G::generator(ws, 1);
  G t3 = G::generator(ws, 2), t4 = G::generator(ws, 3);

  REQUIRE((t1 * t2).exp_nilpotent() == G::one() + t1 * t2);
  G x = t1 * t2 + t3 * t4;
  G ex = x.exp_nilpotent();
  REQUIRE(ex == G::one() + x + (t1 * t2) * (t3 * t4));
  // commuting even arguments: exp(a+b) = exp(a) exp(b)
  REQUIRE(ex == (t1 * t2).exp_nilpotent() * (t3 * t4).exp_nilpotent());
  REQUIRE_THROWS_AS((G::one() + t1 * t2).exp_nilpotent(), Error);
}

TEST_CASE("berezin integration") {
  Workspace ws;
  auto q = ws.fresh_set("q", 2, GenClass::phase_q);
  auto p = ws.fresh_set("p", 2, GenClass::phase_p);
  G q1 = G::generator(ws, q[0]), q2 = G::generator(ws, q[1]);
  G p1 = G::generator(ws, p[0]), p2 = G::generator(ws, p[1]);

  REQUIRE(q1.berezin({q[0]}) == G::one());
  REQUIRE(G::one().berezin({q[0]}).is_zero());
  // linearity plus the fundamental pair of rules fixes everything else
  G eta = p1;
  REQUIRE((q1 * eta).exp_nilpotent().berezin({q[0]}) == eta);

  // iterated measure, innermost dq2: int exp(q1 p1 + q2 p2) D[q] = p1 p2
  G diam = q1 * p1 + q2 * p2;
  REQUIRE(diam.exp_nilpotent().berezin({q[0], q[1]}) == p1 * p2);

  // double integration over the same variable annihilates
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    G a = random_element(ws, rng, 4, 5);
    REQUIRE(a.derivative(q[0]).derivative(q[0]).is_zero());
    // reversing the order of two distinct variables flips the sign
    REQUIRE(a.derivative(q[0]).derivative(q[1]) == -a.derivative(q[1]).derivative(q[0]));
  }
}

TEST_CASE("substitution is an algebra morphism") {
  Workspace ws;
  ws.fresh_set("t", 6);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    // images: odd combinations of generators 3..5 acting on elements over 0..2
    std::map<GenId, G> images;
    for (GenId v = 0; v < 3; ++v) {
      G img;
      img.ws = &ws;
      for (GenId w = 3; w < 6; ++w) {
        std::uniform_int_distribution<int> num(-2, 2);
        img = img + CQ::from_int(num(rng)) * G::generator(ws, w);
      }
      images[v] = img;
    }
    G a = random_element(ws, rng, 3, 4);
    G b = random_element(ws, rng, 3, 4);
    REQUIRE((a * b).substitute(images) == a.substitute(images) * b.substitute(images));
    REQUIRE((a + b).substitute(images) == a.substitute(images) + b.substitute(images));
  }
  // non-odd image is rejected
  G bad = G::one() + G::generator(ws, 3);
  REQUIRE_THROWS_AS(G::generator(ws, 0).substitute({{0, bad}}), Error);
}

TEST_CASE("change of variables in the berezin integral") {
  // int W[t] dt = (1/c) int W[c t'] dt'
  Workspace ws;
  auto ids = ws.fresh_set("t", 2);
  G t = G::generator(ws, ids[0]), tp = G::generator(ws, ids[1]);
  CQ c = CQ::from_gaussian(rat(3, 2), rat(1));
  G eta = G::scalar(CQ::from_int(5));
  G w = eta + CQ::from_gaussian(rat(2), rat(-1)) * t;
  G w_scaled = w.substitute({{ids[0], c * tp}});
  REQUIRE(w.berezin({ids[0]}) == c.inv() * w_scaled.berezin({ids[1]}));
}

TEST_CASE("workspace discipline") {
  Workspace a, b;
  a.fresh("x");
  b.fresh("y");
  G ga = G::generator(a, 0), gb = G::generator(b, 0);
  REQUIRE_THROWS_AS(ga * gb, Error);
  REQUIRE_THROWS_AS(ga + gb, Error);
  // scalars mix with anything
  REQUIRE((G::scalar(CQ::from_int(2)) * ga) == ga + ga);

  Workspace big;
  for (int k = 0; k < kMaxGenerators; ++k) big.fresh("z");
  REQUIRE_THROWS_AS(big.fresh("overflow"), Error);
}

TEST_CASE("canonical text roundtrip") {
  Workspace ws;
  ws.fresh_set("t", 5);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    G a = random_element(ws, rng, 5, 6);
    REQUIRE(G::parse(ws, a.text()) == a);
  }
  REQUIRE(G::parse(ws, "(0)").is_zero());
  REQUIRE_THROWS_AS(G::parse(ws, "(1) g99"), Error);
  REQUIRE_THROWS_AS(G::parse(ws, "(1"), Error);
}
