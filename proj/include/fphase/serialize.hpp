#pragma once

// Round-trip text forms for the composite objects.  Each parser accepts
// exactly the grammar its printer emits, so print -> parse is lossless in the
// exact rings; parse errors carry the byte offset of the failure.

#include <string>
#include <string_view>

#include "fphase/wigner.hpp"

namespace fphase {

// State grammar:  0  |  [<element>]|<bits>>  { + [<element>]|<bits>> }
// The bit string lists one occupation per mode, mode 0 first.
template <class R>
FockState<R> parse_state(const Workspace& w, const ModeSet& ms, TextCursor& cur) {
  FockState<R> out;
  out.modes = &ms;
  cur.skip_ws();
  if (cur.try_eat('0')) return out;
  do {
    cur.skip_ws();
    cur.expect('[');
    GrassmannElement<R> d = GrassmannElement<R>::parse(w, cur);
    cur.expect(']');
    cur.expect('|');
    Occ n = 0;
    for (int m = 0; m < ms.modes(); ++m) {
      char b = cur.take();
      if (b == '1')
        n |= Occ(1) << m;
      else if (b != '0')
        cur.fail_here("expected occupation bit 0 or 1");
    }
    cur.expect('>');
    auto it = out.amp.find(n);
    if (it == out.amp.end())
      out.amp.emplace(n, d);
    else
      it->second = it->second + d;
    cur.skip_ws();
  } while (cur.try_eat('+'));
  out.prune();
  return out;
}

template <class R>
FockState<R> parse_state(const Workspace& w, const ModeSet& ms, std::string_view s) {
  TextCursor cur(s);
  FockState<R> out = parse_state<R>(w, ms, cur);
  cur.skip_ws();
  if (!cur.done()) cur.fail_here("unexpected trailing input");
  return out;
}

// Operator grammar:  0  |  [<element>] {a[+]<mode>}  { + ... }
// Modes are printed one-based; a trailing '+' on the letter marks a creator.
template <class R>
FockOperator<R> parse_operator(const Workspace& w, const ModeSet& ms, TextCursor& cur) {
  FockOperator<R> out = FockOperator<R>::zero(ms);
  cur.skip_ws();
  if (cur.try_eat('0')) return out;
  do {
    cur.skip_ws();
    cur.expect('[');
    GrassmannElement<R> c = GrassmannElement<R>::parse(w, cur);
    cur.expect(']');
    LadderWord word;
    for (;;) {
      cur.skip_ws();
      if (cur.peek() != 'a') break;
      cur.take();
      bool create = cur.try_eat('+');
      long long m = cur.integer();
      if (m < 1 || m > ms.modes()) cur.fail_here("mode index out of range");
      word.push_back({static_cast<int>(m - 1), create});
    }
    out = out + FockOperator<R>::from_term(ms, c, word);
    cur.skip_ws();
  } while (cur.try_eat('+'));
  return out;
}

template <class R>
FockOperator<R> parse_operator(const Workspace& w, const ModeSet& ms, std::string_view s) {
  TextCursor cur(s);
  FockOperator<R> out = parse_operator<R>(w, ms, cur);
  cur.skip_ws();
  if (!cur.done()) cur.fail_here("unexpected trailing input");
  return out;
}

// Functional grammar:  W{q: g0 g1 ...; p: g2 g3 ...; value: <element>}
// The variable lists name the position and momentum generators in component
// order; the value is an element of the algebra they live in.
template <class R>
std::string functional_text(const PhaseSpaceFunctional<R>& f) {
  std::string out = "W{q:";
  for (GenId g : f.q_vars) out += " g" + std::to_string(g);
  out += "; p:";
  for (GenId g : f.p_vars) out += " g" + std::to_string(g);
  out += "; value: " + f.value.text() + "}";
  return out;
}

namespace detail {

inline std::vector<GenId> parse_gen_list(const Workspace& w, TextCursor& cur) {
  std::vector<GenId> ids;
  for (;;) {
    cur.skip_ws();
    if (cur.peek() != 'g') break;
    cur.take();
    long long id = cur.integer();
    if (id < 0 || id >= static_cast<long long>(w.size()))
      cur.fail_here("generator id out of range");
    ids.push_back(static_cast<GenId>(id));
  }
  return ids;
}

}  // namespace detail

template <class R>
PhaseSpaceFunctional<R> parse_functional(const Workspace& w, TextCursor& cur) {
  cur.skip_ws();
  cur.expect("W{");
  cur.skip_ws();
  cur.expect("q:");
  std::vector<GenId> q = detail::parse_gen_list(w, cur);
  cur.expect(';');
  cur.skip_ws();
  cur.expect("p:");
  std::vector<GenId> p = detail::parse_gen_list(w, cur);
  cur.expect(';');
  cur.skip_ws();
  cur.expect("value:");
  GrassmannElement<R> value = GrassmannElement<R>::parse(w, cur);
  cur.skip_ws();
  cur.expect('}');
  return PhaseSpaceFunctional<R>{value, std::move(q), std::move(p)};
}

template <class R>
PhaseSpaceFunctional<R> parse_functional(const Workspace& w, std::string_view s) {
  TextCursor cur(s);
  PhaseSpaceFunctional<R> out = parse_functional<R>(w, cur);
  cur.skip_ws();
  if (!cur.done()) cur.fail_here("unexpected trailing input");
  return out;
}

}  // namespace fphase
