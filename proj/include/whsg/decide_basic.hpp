#pragma once

#include <memory>
#include <string>

#include "whsg/arithmetic.hpp"

namespace whsg {

namespace detail {

/// Table words with the given left, middle and trailing parts; any part may
/// be a whole language.
inline Cfg table_slice(const WhStructure& s, const Nfa& left, const Nfa& middle, const Nfa& trailing_reversed) {
  return intersect(s.table, table_frame(left, middle, trailing_reversed));
}

/// The middle component of a word left #1 middle #2 trailing.
inline Word middle_part(const Word& w) {
  auto a = std::find(w.begin(), w.end(), kSep1);
  auto b = std::find(w.begin(), w.end(), kSep2);
  return Word(a + 1, b);
}

/// The first component of a word left #1 middle #2 trailing.
inline Word left_part(const Word& w) { return Word(w.begin(), std::find(w.begin(), w.end(), kSep1)); }

}  // namespace detail

/// Identity search: for each letter a, the shortest-lex i with a i = a is a
/// candidate, tested against every letter from both sides.
inline Verdict is_monoid(const WhStructure& input) {
  std::unique_ptr<WhStructure> holder;
  const WhStructure& s = normalized(input, holder);
  std::vector<Word> candidates;
  for (Sym a : s.letters()) {
    Cfg fixers = detail::table_slice(s, nfa_word({a}), s.reps, nfa_word({a}));
    auto w = shortest_word(fixers);
    if (!w) return Verdict::no("no right identity for letter '" + s.name(a) + "'").with("letter", {a});
    candidates.push_back(detail::middle_part(*w));
  }
  for (const auto& i : candidates) {
    bool ok = true;
    for (Sym b : s.letters())
      if (!check_multiply(s, i, {b}, {b}) || !check_multiply(s, {b}, i, {b})) {
        ok = false;
        break;
      }
    if (ok) return Verdict::yes("'" + s.show(i) + "' is a two-sided identity").with("identity", i);
  }
  return Verdict::no("no candidate acts as identity on every letter");
}

enum class Green { R, L, H };

inline const char* to_string(Green g) {
  switch (g) {
    case Green::R: return "R";
    case Green::L: return "L";
    case Green::H: return "H";
  }
  return "?";
}

/// Whether the elements of w and w2 (both in L) are related by the chosen
/// Green relation.
inline bool green_related(const WhStructure& input, const Word& w, const Word& w2, Green rel) {
  detail::require_rep(input, w, "first operand");
  detail::require_rep(input, w2, "second operand");
  std::unique_ptr<WhStructure> holder;
  const WhStructure& s = normalized(input, holder);
  if (rel == Green::H) return green_related(s, w, w2, Green::R) && green_related(s, w, w2, Green::L);
  if (word_eq(s, w, w2)) return true;
  auto reaches = [&](const Word& from, const Word& to) {
    Nfa target = nfa_word(reversed(to));
    Cfg solutions = rel == Green::R ? detail::table_slice(s, nfa_word(from), s.reps, target)
                                    : detail::table_slice(s, s.reps, nfa_word(from), target);
    return !language_empty(solutions);
  };
  return reaches(w, w2) && reaches(w2, w);
}

/// A monoid whose every letter is R- and L-related to the identity.
inline Verdict is_group(const WhStructure& input) {
  std::unique_ptr<WhStructure> holder;
  const WhStructure& s = normalized(input, holder);
  Verdict monoid = is_monoid(s);
  if (!monoid.answer) return Verdict::no("not a monoid: " + monoid.reason);
  const Word identity = *monoid.witness("identity");
  for (Sym a : s.letters()) {
    if (!green_related(s, {a}, identity, Green::R))
      return Verdict::no("letter '" + s.name(a) + "' has no right inverse").with("identity", identity).with("letter", {a});
    if (!green_related(s, {a}, identity, Green::L))
      return Verdict::no("letter '" + s.name(a) + "' has no left inverse").with("identity", identity).with("letter", {a});
  }
  return Verdict::yes("every letter is invertible").with("identity", identity);
}

inline Verdict is_commutative(const WhStructure& input) {
  std::unique_ptr<WhStructure> holder;
  const WhStructure& s = normalized(input, holder);
  const auto letters = s.letters();
  for (std::size_t i = 0; i < letters.size(); ++i)
    for (std::size_t j = i + 1; j < letters.size(); ++j) {
      Sym a = letters[i], b = letters[j];
      if (!word_eq(s, {a, b}, {b, a}))
        return Verdict::no("'" + s.name(a) + "' and '" + s.name(b) + "' do not commute").with("left", {a}).with("right", {b});
    }
  return Verdict::yes("all letters commute");
}

}  // namespace whsg
