#pragma once

#include <vector>

#include "fphase/complex_rings.hpp"
#include "fphase/error.hpp"

namespace fphase {

// Finite mode lattice: K momentum points times S spin labels, mode index
// m = k*S + s (k-major).  Weights stand for the measure cell per k point and
// enter only the diamond contractions and smeared-operator sums; the ladder
// anticommutator stays delta_{ij}.  The cardinality constant Omega is the
// weighted mode count and reduces to M at unit weights.
struct ModeSet {
  int k_count = 0;
  int spin_count = 0;
  std::vector<Rational> weights;        // per k point, positive
  std::vector<std::vector<CQ>> eps;     // S x S spin transform; empty when S == 1

  int modes() const { return k_count * spin_count; }
  int mode(int k, int s) const { return k * spin_count + s; }
  int k_of(int m) const { return m / spin_count; }
  int s_of(int m) const { return m % spin_count; }
  Rational weight_k(int k) const { return weights[k]; }
  Rational weight(int m) const { return weights[k_of(m)]; }

  Rational omega() const {
    Rational w(0);
    for (int m = 0; m < modes(); ++m) w += weight(m);
    return w;
  }

  bool has_pairing() const { return !eps.empty(); }

  CQ eps_at(int r, int s) const {
    if (!has_pairing()) fail(ErrorKind::config, "mode set has no spin transform");
    return eps[r][s];
  }

  void validate() const {
    if (k_count <= 0 || spin_count <= 0)
      fail(ErrorKind::config, "mode counts must be positive");
    if ((int)weights.size() != k_count)
      fail(ErrorKind::config, "weight list length != k_count");
    for (const auto& w : weights)
      if (w <= 0) fail(ErrorKind::config, "weights must be positive");
    if (!has_pairing()) {
      if (spin_count != 1)
        fail(ErrorKind::config, "spin transform required when S > 1");
      return;
    }
    int S = spin_count;
    if ((int)eps.size() != S)
      fail(ErrorKind::config, "spin transform must be S x S");
    for (const auto& row : eps)
      if ((int)row.size() != S) fail(ErrorKind::config, "spin transform must be S x S");
    for (int r = 0; r < S; ++r)
      for (int s = 0; s < S; ++s) {
        if (!(eps[r][s] == -eps[s][r]))
          fail(ErrorKind::config, "spin transform must be antisymmetric");
        if (!(eps[r][s].conj() == -eps[r][s]))
          fail(ErrorKind::config, "spin transform must be anti-real");
      }
    for (int r = 0; r < S; ++r)
      for (int t = 0; t < S; ++t) {
        CQ acc = CQ::zero();
        for (int s = 0; s < S; ++s) acc = acc + eps[r][s] * eps[s][t];
        CQ want = (r == t) ? CQ::one() : CQ::zero();
        if (!(acc == want)) fail(ErrorKind::config, "spin transform must square to identity");
      }
  }

  // Standard two-spin set: eps is the Pauli y-matrix, eps_{12} = -i.
  static ModeSet pauli_y(int k_points) {
    ModeSet ms;
    ms.k_count = k_points;
    ms.spin_count = 2;
    ms.weights.assign(k_points, Rational(1));
    ms.eps = {{CQ::zero(), -CQ::i()}, {CQ::i(), CQ::zero()}};
    ms.validate();
    return ms;
  }

  // Spinless set: no pairing structure, only plain ladder machinery applies.
  static ModeSet spinless(int k_points) {
    ModeSet ms;
    ms.k_count = k_points;
    ms.spin_count = 1;
    ms.weights.assign(k_points, Rational(1));
    ms.validate();
    return ms;
  }
};

template <class R>
R ring_from_cq(const CQ& c) {
  return R::from_gaussian(c.re, c.im);
}

}  // namespace fphase
