#pragma once

#include <random>
#include <vector>

#include "fphase/grassmann.hpp"
#include "fphase/modes.hpp"

namespace fphase {

// Grassmann-odd spectral function: one odd element per mode.  star() is the
// component-wise conjugate; the contraction helpers below never conjugate on
// their own, so A* diamond B is spelled contract(A.star(), B).
template <class R>
struct ParameterFunction {
  const ModeSet* modes = nullptr;
  std::vector<GrassmannElement<R>> comp;

  static ParameterFunction fresh(Workspace& ws, const ModeSet& ms, const std::string& prefix) {
    ParameterFunction f;
    f.modes = &ms;
    auto ids = ws.fresh_set(prefix, ms.modes(), GenClass::fock_param);
    for (GenId id : ids) f.comp.push_back(GrassmannElement<R>::generator(ws, id));
    return f;
  }

  // Generic-position sample: each component is a fresh generator scaled by a
  // nonzero small Gaussian rational.
  static ParameterFunction random(Workspace& ws, const ModeSet& ms, const std::string& prefix,
                                  std::mt19937_64& rng) {
    ParameterFunction f = fresh(ws, ms, prefix);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    for (auto& c : f.comp) {
      R k = R::zero();
      while (k.is_zero())
        k = R::from_gaussian(rat(num(rng), den(rng)), rat(num(rng), den(rng)));
      c = c.scaled(k);
    }
    return f;
  }

  const GrassmannElement<R>& at(int m) const { return comp[m]; }

  ParameterFunction star() const {
    ParameterFunction f = *this;
    for (auto& c : f.comp) c = c.conj();
    return f;
  }

  ParameterFunction scaled(const R& k) const {
    ParameterFunction f = *this;
    for (auto& c : f.comp) c = c.scaled(k);
    return f;
  }

  ParameterFunction operator+(const ParameterFunction& o) const {
    ParameterFunction f = *this;
    for (int m = 0; m < (int)comp.size(); ++m) f.comp[m] = f.comp[m] + o.comp[m];
    return f;
  }

  void check_odd() const {
    for (const auto& c : comp)
      if (!c.is_zero() && !c.is_odd()) fail(ErrorKind::parity, "parameter component must be odd");
  }
};

// X diamond Y = sum_m w_m X_m Y_m (spin sum and weighted k sum).
template <class R>
GrassmannElement<R> contract(const ParameterFunction<R>& x, const ParameterFunction<R>& y) {
  GrassmannElement<R> acc;
  for (int m = 0; m < x.modes->modes(); ++m)
    acc = acc + (x.at(m) * y.at(m)).scaled(R::from_rational(x.modes->weight(m)));
  return acc;
}

// X fdiamond Y = sum_k w_k sum_{r,s} X_{k,r} eps_{r,s} Y_{k,s}.
template <class R>
GrassmannElement<R> contract_eps(const ParameterFunction<R>& x, const ParameterFunction<R>& y) {
  const ModeSet& ms = *x.modes;
  GrassmannElement<R> acc;
  for (int k = 0; k < ms.k_count; ++k)
    for (int r = 0; r < ms.spin_count; ++r)
      for (int s = 0; s < ms.spin_count; ++s) {
        R e = ring_from_cq<R>(ms.eps_at(r, s));
        if (e.is_zero()) continue;
        R w = R::from_rational(ms.weight_k(k));
        acc = acc + (x.at(ms.mode(k, r)) * y.at(ms.mode(k, s))).scaled(e * w);
      }
  return acc;
}

}  // namespace fphase
