#pragma once

#include <mutex>
#include <optional>
#include <string>

#include "whsg/chart.hpp"
#include "whsg/structure.hpp"

namespace whsg {

namespace detail {

inline void require_rep(const WhStructure& s, const Word& w, const char* role) {
  if (!s.in_reps(w)) throw Error(ErrorKind::not_in_reps, std::string(role) + " '" + s.show(w) + "'");
}

inline void require_letters(const WhStructure& s, const Word& w) {
  if (w.empty()) throw Error(ErrorKind::precondition, "empty word");
  for (Sym x : w)
    if (x >= s.size()) throw Error(ErrorKind::unknown_symbol, "letter outside the alphabet");
}

/// Words w with prefix #1 middle #2 w^rev in the table, as a grammar for the
/// reversed table words so that the free component comes first.
inline Cfg products_reversed(const WhStructure& s, const Word& p, const Word& q) {
  Word head = p;
  head.push_back(kSep1);
  head.insert(head.end(), q.begin(), q.end());
  head.push_back(kSep2);
  Cfg g = intersect(s.table, concatenate(nfa_word(head), nfa_universal(s.letters())));
  return reverse(g);
}

}  // namespace detail

/// Whether elt(p) elt(q) = elt(r), by a single membership test.
inline bool check_multiply(const WhStructure& s, const Word& p, const Word& q, const Word& r) {
  detail::require_rep(s, p, "left operand");
  detail::require_rep(s, q, "right operand");
  detail::require_rep(s, r, "product");
  return member(s.table, table_word(p, q, r));
}

/// The shortlex-least r with p #1 q #2 r^rev in the table.
inline Word multiply(const WhStructure& s, const Word& p, const Word& q) {
  auto& memo = s.memo();
  {
    std::lock_guard lock(memo.mutex);
    auto it = memo.product.find({p, q});
    if (it != memo.product.end()) return it->second;
  }
  detail::require_rep(s, p, "left operand");
  detail::require_rep(s, q, "right operand");
  auto w = shortest_word(detail::products_reversed(s, p, q));
  if (!w)
    throw Error(ErrorKind::invalid_structure,
                "no product representative for '" + s.show(p) + "' times '" + s.show(q) + "'");
  Word r(w->begin(), w->end() - static_cast<long>(p.size() + q.size() + 2));
  std::lock_guard lock(memo.mutex);
  memo.product.emplace(std::make_pair(p, q), r);
  return r;
}

/// A representative in L of the product of the letters of w, by halving
/// rounds of pairwise multiplication.
inline Word represent(const WhStructure& s, const Word& w) {
  detail::require_letters(s, w);
  auto& memo = s.memo();
  {
    std::lock_guard lock(memo.mutex);
    auto it = memo.representative.find(w);
    if (it != memo.representative.end()) return it->second;
  }
  std::vector<Word> seq;
  seq.reserve(w.size());
  for (Sym a : w) seq.push_back(s.assignment[a]);
  while (seq.size() > 1) {
    std::vector<Word> next;
    next.reserve((seq.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < seq.size(); i += 2) next.push_back(multiply(s, seq[i], seq[i + 1]));
    if (seq.size() % 2) next.push_back(std::move(seq.back()));
    seq = std::move(next);
  }
  std::lock_guard lock(memo.mutex);
  memo.representative.emplace(w, seq[0]);
  return seq[0];
}

/// Whether w and w2 denote the same element.
inline bool word_eq(const WhStructure& s, const Word& w, const Word& w2) {
  detail::require_letters(s, w);
  detail::require_letters(s, w2);
  if (w.size() == 1 && w2.size() == 1) return w == w2;
  const bool first_longer = w.size() >= w2.size();
  const Word& longer = first_longer ? w : w2;
  const Word& other = first_longer ? w2 : w;
  const auto cut = static_cast<long>(longer.size() / 2);
  Word left(longer.begin(), longer.begin() + cut), right(longer.begin() + cut, longer.end());
  return check_multiply(s, represent(s, left), represent(s, right), represent(s, other));
}

}  // namespace whsg
