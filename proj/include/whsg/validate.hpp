#pragma once

#include <string>

#include "whsg/arithmetic.hpp"

namespace whsg {

/// Decidable necessary conditions for s to admit an interpretation, sampled
/// on representatives of bounded length: the table sits inside its frame,
/// every sampled product has a representative, alternative product
/// representatives denote one element, and sampled triples associate.
/// Runs on the normalized structure.
inline Verdict validate_necessary(const WhStructure& input, std::size_t depth) {
  if (depth < 1) throw Error(ErrorKind::precondition, "depth must be at least 1");
  try {
    check_invariants(input);
  } catch (const Error& e) {
    return Verdict::no(e.what());
  }
  std::unique_ptr<WhStructure> holder;
  const WhStructure& s = normalized(input, holder);
  const auto sample = enumerate(s.reps, depth);

  for (const auto& u : sample)
    for (const auto& v : sample) {
      if (u.size() + v.size() > depth) continue;
      Word r;
      try {
        r = multiply(s, u, v);
      } catch (const Error&) {
        return Verdict::no("missing product witness for '" + s.show(u) + "' times '" + s.show(v) + "'")
            .with("left", u)
            .with("right", v);
      }
      // every other representative the table offers must be the same element
      const std::size_t frame = u.size() + v.size() + 2;
      auto alternatives = enumerate(detail::products_reversed(s, u, v), frame + std::max(r.size(), depth));
      for (const auto& alt : alternatives) {
        Word w(alt.begin(), alt.end() - static_cast<long>(frame));
        if (w == r) continue;
        if (!word_eq(s, w, r))
          return Verdict::no("inconsistent products for '" + s.show(u) + "' times '" + s.show(v) + "'")
              .with("left", u)
              .with("right", v)
              .with("product", r)
              .with("other", w);
      }
    }

  for (const auto& u : sample)
    for (const auto& v : sample)
      for (const auto& x : sample) {
        if (u.size() + v.size() + x.size() > depth) continue;
        Word lhs = multiply(s, multiply(s, u, v), x);
        Word rhs = multiply(s, u, multiply(s, v, x));
        if (!word_eq(s, lhs, rhs))
          return Verdict::no("not associative on '" + s.show(u) + "', '" + s.show(v) + "', '" + s.show(x) + "'")
              .with("first", u)
              .with("second", v)
              .with("third", x);
      }
  return Verdict::yes("necessary conditions hold to depth " + std::to_string(depth));
}

/// A necessary check before merging letters a and b: the two must act alike
/// on every letter from both sides. Distinct letters never compare equal
/// through word_eq itself, so this is the strongest test available from
/// the structure alone.
inline Verdict merge_precheck(const WhStructure& s, Sym a, Sym b) {
  for (Sym c : s.letters()) {
    if (!word_eq(s, {a, c}, {b, c}))
      return Verdict::no("'" + s.name(a) + s.name(c) + "' and '" + s.name(b) + s.name(c) + "' differ")
          .with("letter", {c});
    if (!word_eq(s, {c, a}, {c, b}))
      return Verdict::no("'" + s.name(c) + s.name(a) + "' and '" + s.name(c) + s.name(b) + "' differ")
          .with("letter", {c});
  }
  return Verdict::yes("products with every letter agree");
}

}  // namespace whsg
