#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "whsg/decide_basic.hpp"
#include "whsg/free_group.hpp"
#include "whsg/transducer.hpp"

namespace whsg {

// ------------------------------------------------------------ partitions

/// A set partition of the letters 0..n-1 as a restricted growth string:
/// block[x] is the block of letter x, blocks numbered by first appearance.
using Partition = std::vector<int>;

inline int block_count(const Partition& p) {
  int m = 0;
  for (int b : p) m = std::max(m, b + 1);
  return m;
}

/// All set partitions of n letters, lexicographic in the growth string.
inline std::vector<Partition> set_partitions(std::size_t n) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int)> grow = [&](int blocks) {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      cur.push_back(b);
      grow(std::max(blocks, b + 1));
      cur.pop_back();
    }
  };
  grow(0);
  return out;
}

/// Number of set partitions of n letters.
inline std::uint64_t bell_number(std::size_t n) {
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

namespace detail {

inline std::string describe_blocks(const WhStructure& s, const Partition& p) {
  std::string out;
  for (int b = 0; b < block_count(p); ++b) {
    out += "{";
    bool first = true;
    for (Sym x = 0; x < p.size(); ++x)
      if (p[x] == b) {
        if (!first) out += ",";
        out += s.name(x);
        first = false;
      }
    out += "}";
  }
  return out;
}

inline Word block_letters(const Partition& p, int b) {
  Word w;
  for (Sym x = 0; x < p.size(); ++x)
    if (p[x] == b) w.push_back(x);
  return w;
}

/// Nonempty words whose first letter passes first_ok and last letter
/// passes last_ok.
inline Nfa end_letters(const std::vector<Sym>& letters, const std::function<bool(Sym)>& first_ok,
                       const std::function<bool(Sym)>& last_ok) {
  Nfa n(3);
  n.set_initial(0);
  n.set_accepting(2);
  for (Sym x : letters) {
    const int to = last_ok(x) ? 2 : 1;
    if (first_ok(x)) n.add_transition(0, x, to);
    n.add_transition(1, x, to);
    n.add_transition(2, x, to);
  }
  return n;
}

/// Letter classes of a Green relation as a partition.
inline Partition letter_classes(const WhStructure& s, Green rel) {
  Partition p;
  std::vector<Sym> heads;
  for (Sym a : s.letters()) {
    int found = -1;
    for (std::size_t k = 0; k < heads.size() && found < 0; ++k)
      if (green_related(s, {heads[k]}, {a}, rel)) found = static_cast<int>(k);
    if (found < 0) {
      found = static_cast<int>(heads.size());
      heads.push_back(a);
    }
    p.push_back(found);
  }
  return p;
}

}  // namespace detail

// ------------------------------------------------------ completely simple

/// Row and column of every letter in a putative Rees decomposition.
struct CsSpecies {
  Partition row;
  Partition column;

  int rows() const { return block_count(row); }
  int columns() const { return block_count(column); }
  friend bool operator==(const CsSpecies&, const CsSpecies&) = default;
};

/// Every species for n letters, rows varying slowest.
inline std::vector<CsSpecies> cs_species(std::size_t n) {
  const auto parts = set_partitions(n);
  std::vector<CsSpecies> out;
  for (const auto& r : parts)
    for (const auto& c : parts) out.push_back({r, c});
  return out;
}

/// Whether the structure describes a completely simple semigroup whose
/// letters sit in the given rows and columns.
inline Verdict cs_species_check(const WhStructure& input, const CsSpecies& sp) {
  std::unique_ptr<WhStructure> holder;
  const WhStructure& s = normalized(input, holder);
  const auto letters = s.letters();
  if (sp.row.size() != letters.size() || sp.column.size() != letters.size())
    throw Error(ErrorKind::precondition, "species does not cover the alphabet");
  const int rows = sp.rows(), cols = sp.columns();
  auto cell_name = [](int i, int l) { return "(" + std::to_string(i + 1) + "," + std::to_string(l + 1) + ")"; };
  auto fail = [&](int step, const std::string& what) {
    return Verdict::no("step " + std::to_string(step) + ": " + what);
  };

  // step 1: cell languages
  std::vector<std::vector<Nfa>> cell(static_cast<std::size_t>(rows), std::vector<Nfa>(static_cast<std::size_t>(cols)));
  for (int i = 0; i < rows; ++i)
    for (int l = 0; l < cols; ++l) {
      cell[i][l] = trim(intersect(
          s.reps, detail::end_letters(letters, [&](Sym x) { return sp.row[x] == i; },
                                      [&](Sym x) { return sp.column[x] == l; })));
      if (is_empty(cell[i][l])) return fail(1, "no representative in cell " + cell_name(i, l));
    }

  // step 2: products land in the predicted cell
  for (int i = 0; i < rows; ++i)
    for (int m = 0; m < cols; ++m) {
      const Nfa outside = reverse(difference(s.reps, cell[i][m], letters));
      for (int l = 0; l < cols; ++l)
        for (int j = 0; j < rows; ++j) {
          auto stray = shortest_word(detail::table_slice(s, cell[i][l], cell[j][m], outside));
          if (stray)
            return fail(2, "product of cells " + cell_name(i, l) + " and " + cell_name(j, m) + " leaves cell " +
                               cell_name(i, m))
                .with("table word", *stray);
        }
    }

  // steps 3-4: an idempotent in every cell
  std::vector<std::vector<Word>> unit(static_cast<std::size_t>(rows), std::vector<Word>(static_cast<std::size_t>(cols)));
  for (int i = 0; i < rows; ++i)
    for (int l = 0; l < cols; ++l) {
      const Word w = *shortest_word(cell[i][l]);
      auto fix = shortest_word(detail::table_slice(s, nfa_word(w), cell[i][l], nfa_word(reversed(w))));
      if (!fix) return fail(3, "no right identity for '" + s.show(w) + "' in cell " + cell_name(i, l));
      unit[i][l] = detail::middle_part(*fix);
    }

  // step 5: idempotents act as identities on the letters of their row/column
  for (Sym a : letters) {
    for (int l = 0; l < cols; ++l)
      if (!check_multiply(s, unit[sp.row[a]][l], {a}, {a}))
        return fail(5, "unit " + cell_name(sp.row[a], l) + " does not fix '" + s.name(a) + "' on the left");
    for (int i = 0; i < rows; ++i)
      if (!check_multiply(s, {a}, unit[i][sp.column[a]], {a}))
        return fail(5, "unit " + cell_name(i, sp.column[a]) + " does not fix '" + s.name(a) + "' on the right");
  }

  // steps 6-10: every sandwiched letter is invertible in the group of its cell
  for (Sym a : letters)
    for (int i = 0; i < rows; ++i)
      for (int m = 0; m < cols; ++m) {
        const Word left = multiply(s, unit[i][m], {a});
        for (int l = 0; l < cols; ++l) {
          const Word& e = unit[i][l];
          const std::string at = " for '" + s.name(a) + "', row " + std::to_string(i + 1) + ", columns " +
                                 std::to_string(m + 1) + "," + std::to_string(l + 1);
          const Word h = multiply(s, left, e);
          if (!check_multiply(s, h, unit[i][sp.column[a]], left)) return fail(7, "sandwich mismatch" + at);
          if (!check_multiply(s, e, h, h) || !check_multiply(s, h, e, h))
            return fail(8, "unit does not fix the sandwich" + at);
          // the inverse is sought inside the cell, where the group lives
          auto inv = shortest_word(detail::table_slice(s, nfa_word(h), cell[i][l], nfa_word(reversed(e))));
          if (!inv) return fail(9, "sandwich has no right inverse" + at);
          const Word v = detail::middle_part(*inv);
          // canonical reading: the chosen inverse also inverts from the left
          if (!check_multiply(s, v, h, e)) return fail(10, "right inverse is not a left inverse (canonical reading)" + at);
        }
      }

  Verdict yes = Verdict::yes("completely simple with rows " + detail::describe_blocks(s, sp.row) + " and columns " +
                             detail::describe_blocks(s, sp.column));
  for (int i = 0; i < rows; ++i) yes.with("row " + std::to_string(i + 1), detail::block_letters(sp.row, i));
  for (int l = 0; l < cols; ++l) yes.with("column " + std::to_string(l + 1), detail::block_letters(sp.column, l));
  for (int i = 0; i < rows; ++i)
    for (int l = 0; l < cols; ++l) yes.with("unit " + cell_name(i, l), unit[i][l]);
  return yes;
}

/// Tries every species. In a completely simple semigroup rows are the
/// R-classes and columns the L-classes, so only the species matching the
/// letter R- and L-classes can be accepted; the others are counted but not
/// run.
inline Verdict is_completely_simple(const WhStructure& input, std::uint64_t max_species = 10000) {
  const std::size_t n = input.size();
  const std::uint64_t bell = bell_number(n);
  if (bell > (std::uint64_t{1} << 32) || bell * bell > max_species)
    throw Error(ErrorKind::cap_exceeded, std::to_string(bell) + "^2 species exceed the cap of " + std::to_string(max_species));
  std::unique_ptr<WhStructure> holder;
  const WhStructure& s = normalized(input, holder);
  const Partition rows = detail::letter_classes(s, Green::R);
  const Partition cols = detail::letter_classes(s, Green::L);
  for (const auto& sp : cs_species(n)) {
    if (sp.row != rows || sp.column != cols) continue;
    Verdict v = cs_species_check(s, sp);
    if (v.answer) return v;
    return Verdict::no("species " + detail::describe_blocks(s, rows) + " x " + detail::describe_blocks(s, cols) +
                       " rejected at " + v.reason);
  }
  return Verdict::no("no species accepted");
}

// ---------------------------------------------------------------- clifford

/// A quotient of the free semilattice on the letters, given by its closed
/// letter sets (a family containing every letter, closed under nonempty
/// intersection). Element k of the semilattice is closed[k]; the meet of two
/// elements is the closure of the union of their sets.
struct CliffordSpecies {
  std::size_t letters = 0;
  std::vector<std::uint32_t> closed;

  std::uint32_t closure(std::uint32_t set) const {
    std::uint32_t c = (std::uint32_t{1} << letters) - 1;
    for (auto x : closed)
      if ((x & set) == set) c &= x;
    return c;
  }
  int element(std::uint32_t set) const {
    auto it = std::find(closed.begin(), closed.end(), closure(set));
    return static_cast<int>(it - closed.begin());
  }
  int size() const { return static_cast<int>(closed.size()); }
  int meet(int x, int y) const { return element(closed[x] | closed[y]); }
  int species_of(Sym a) const { return element(std::uint32_t{1} << a); }
  /// Whether the group of letter a lies above element x.
  bool above(Sym a, int x) const { return (closed[x] >> a) & 1u; }

  /// Semilattice element of every nonempty letter set, numbered by first
  /// appearance in increasing set order.
  Partition kernel() const {
    Partition p;
    std::map<std::uint32_t, int> ids;
    for (std::uint32_t m = 1; m < (std::uint32_t{1} << letters); ++m)
      p.push_back(ids.emplace(closure(m), static_cast<int>(ids.size())).first->second);
    return p;
  }
};

/// Every quotient of the free semilattice on n letters. Sets are decided in
/// order of decreasing size, so a set is forced exactly when it is the
/// intersection of two already chosen sets.
inline std::vector<CliffordSpecies> clifford_species(std::size_t n) {
  if (n == 0 || n > 16) throw Error(ErrorKind::precondition, "alphabet size out of range");
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<std::uint32_t> order;
  for (std::uint32_t m = 1; m < full; ++m) order.push_back(m);
  std::stable_sort(order.begin(), order.end(),
                   [](std::uint32_t x, std::uint32_t y) { return std::popcount(x) > std::popcount(y); });
  std::vector<CliffordSpecies> out;
  std::vector<std::uint32_t> chosen{full};
  std::function<void(std::size_t)> decide = [&](std::size_t k) {
    if (k == order.size()) {
      out.push_back({n, chosen});
      return;
    }
    const std::uint32_t x = order[k];
    bool forced = false;
    for (std::size_t i = 0; i < chosen.size() && !forced; ++i)
      for (std::size_t j = i + 1; j < chosen.size() && !forced; ++j) forced = (chosen[i] & chosen[j]) == x;
    if (!forced) decide(k + 1);
    chosen.push_back(x);
    decide(k + 1);
    chosen.pop_back();
  };
  decide(0);
  return out;
}

namespace detail {

inline std::string describe_set(const WhStructure& s, std::uint32_t set) {
  std::string out = "{";
  bool first = true;
  for (Sym x = 0; x < s.size(); ++x)
    if ((set >> x) & 1u) {
      if (!first) out += ",";
      out += s.name(x);
      first = false;
    }
  return out + "}";
}

/// Words of L whose letter set has the given closure.
inline Nfa species_language(const WhStructure& s, const CliffordSpecies& sp, int element) {
  const int subsets = 1 << s.size();
  const int states = static_cast<int>(s.reps.size());
  Nfa n(static_cast<std::size_t>(states * subsets));
  auto id = [&](int q, std::uint32_t m) { return q * subsets + static_cast<int>(m); };
  for (int q : s.reps.initial_states()) n.set_initial(id(q, 0));
  for (int q = 0; q < states; ++q)
    for (std::uint32_t m = 0; m < static_cast<std::uint32_t>(subsets); ++m) {
      if (s.reps.is_accepting(q) && m != 0 && sp.closure(m) == sp.closed[element]) n.set_accepting(id(q, m));
      for (const auto& e : s.reps.edges(q)) n.add_transition(id(q, m), e.symbol, id(e.to, m | (std::uint32_t{1} << e.symbol)));
    }
  return trim(n);
}

}  // namespace detail

/// Whether the structure describes a Clifford semigroup in which letter a
/// lies in the group indexed by the closure of {a}.
inline Verdict clifford_species_check(const WhStructure& input, const CliffordSpecies& sp) {
  std::unique_ptr<WhStructure> holder;
  const WhStructure& s = normalized(input, holder);
  if (sp.letters != s.size()) throw Error(ErrorKind::precondition, "species does not cover the alphabet");
  const auto letters = s.letters();
  const int size = sp.size();
  auto name = [&](int x) { return detail::describe_set(s, sp.closed[x]); };
  auto fail = [&](int step, const std::string& what) {
    return Verdict::no("step " + std::to_string(step) + ": " + what);
  };

  std::vector<Nfa> part(static_cast<std::size_t>(size));
  for (int x = 0; x < size; ++x) {
    part[x] = detail::species_language(s, sp, x);
    if (is_empty(part[x])) return fail(1, "no representative with letter closure " + name(x));
  }

  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y) {
      const int z = sp.meet(x, y);
      const Nfa outside = reverse(difference(s.reps, part[z], letters));
      if (auto stray = shortest_word(detail::table_slice(s, part[x], part[y], outside)))
        return fail(2, "product of " + name(x) + " and " + name(y) + " leaves " + name(z)).with("table word", *stray);
    }

  std::vector<Word> unit(static_cast<std::size_t>(size));
  for (int x = 0; x < size; ++x) {
    const Word w = *shortest_word(part[x]);
    auto fix = shortest_word(detail::table_slice(s, nfa_word(w), part[x], nfa_word(reversed(w))));
    if (!fix) return fail(3, "no right identity for '" + s.show(w) + "' in " + name(x));
    unit[x] = detail::middle_part(*fix);
  }

  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y)
      if (!check_multiply(s, unit[x], unit[y], unit[sp.meet(x, y)]))
        return fail(4, "units of " + name(x) + " and " + name(y) + " do not multiply to the unit of their meet");

  for (Sym a : letters) {
    const Word& e = unit[sp.species_of(a)];
    if (!check_multiply(s, e, {a}, {a}) || !check_multiply(s, {a}, e, {a}))
      return fail(5, "unit of " + name(sp.species_of(a)) + " does not fix '" + s.name(a) + "'");
    for (int x = 0; x < size; ++x)
      if (!check_multiply(s, unit[x], {a}, multiply(s, {a}, unit[x])))
        return fail(5, "unit of " + name(x) + " does not commute with '" + s.name(a) + "'");
  }

  for (int x = 0; x < size; ++x)
    for (Sym a : letters) {
      if (!sp.above(a, x)) continue;
      // trailing representative read reversed, like every table word
      auto inv = shortest_word(detail::table_slice(s, nfa_word({a}), part[x], nfa_word(reversed(unit[x]))));
      if (!inv) return fail(6, "'" + s.name(a) + "' has no inverse in " + name(x));
      if (!check_multiply(s, detail::middle_part(*inv), {a}, unit[x]))
        return fail(7, "inverse of '" + s.name(a) + "' in " + name(x) + " is one-sided");
    }

  Verdict yes = Verdict::yes("Clifford over a semilattice of " + std::to_string(size) + " element(s)");
  for (int x = 0; x < size; ++x) yes.with("unit " + name(x), unit[x]);
  return yes;
}

/// Tries every quotient of the free semilattice. In a Clifford semigroup the
/// groups are the H-classes, so the only candidate is the quotient whose
/// kernel matches the H-classes of the products of letter sets.
inline Verdict is_clifford(const WhStructure& input, std::size_t max_alphabet = 4) {
  const std::size_t n = input.size();
  if (n > max_alphabet)
    throw Error(ErrorKind::cap_exceeded,
                "alphabet of " + std::to_string(n) + " letters exceeds the cap of " + std::to_string(max_alphabet));
  std::unique_ptr<WhStructure> holder;
  const WhStructure& s = normalized(input, holder);

  std::vector<Word> product;
  for (std::uint32_t m = 1; m < (std::uint32_t{1} << n); ++m) {
    Word w;
    for (Sym x = 0; x < n; ++x)
      if ((m >> x) & 1u) w.push_back(x);
    product.push_back(represent(s, w));
  }
  Partition h_classes;
  std::vector<std::size_t> heads;
  for (std::size_t k = 0; k < product.size(); ++k) {
    int found = -1;
    for (std::size_t c = 0; c < heads.size() && found < 0; ++c)
      if (green_related(s, product[heads[c]], product[k], Green::H)) found = static_cast<int>(c);
    if (found < 0) {
      found = static_cast<int>(heads.size());
      heads.push_back(k);
    }
    h_classes.push_back(found);
  }

  for (const auto& sp : clifford_species(n)) {
    if (sp.kernel() != h_classes) continue;
    Verdict v = clifford_species_check(s, sp);
    if (v.answer) return v;
    return Verdict::no("semilattice of " + std::to_string(sp.size()) + " element(s) rejected at " + v.reason);
  }
  return Verdict::no("H-classes of letter-set products do not form a semilattice quotient");
}

// -------------------------------------------------------------------- free

/// Evidence that a grammar contains x #2 y with y not the reverse of x.
struct Defect {
  std::optional<Word> witness;
  std::string certificate;
};

namespace detail {

inline bool is_defect_word(const Word& w) {
  auto it = std::find(w.begin(), w.end(), kSep2);
  if (it == w.end()) return false;
  return Word(it + 1, w.end()) != reversed(Word(w.begin(), it));
}

/// First defect word in shortlex order, searching lengths up to max_len.
inline std::optional<Word> defect_witness(const Cfg& g, std::size_t max_len) {
  std::size_t len = std::min<std::size_t>(4, max_len);
  while (len > 0) {
    for (const auto& w : enumerate(g, len))
      if (is_defect_word(w)) return w;
    if (len == max_len) break;
    len = std::min(len * 2, max_len);
  }
  return std::nullopt;
}

}  // namespace detail

/// For a grammar inside A* #2 A*: nullopt iff every word is x #2 x^rev.
inline std::optional<Defect> palindromic_defect(const Cfg& g, std::size_t witness_len = 12) {
  std::vector<Sym> letters;
  for (Sym x : g.terminals())
    if (x != kSep2) letters.push_back(x);
  std::vector<Sym> alphabet = letters;
  alphabet.push_back(kSep2);
  const Nfa shape = concatenate({nfa_universal(letters, true), nfa_word({kSep2}), nfa_universal(letters, true)});
  if (auto stray = shortest_word(intersect(g, complement(shape, alphabet))))
    throw Error(ErrorKind::precondition, "grammar has a word without exactly one #2");

  const Cfg n = normalize(g);
  if (language_empty(n)) return std::nullopt;
  const std::size_t count = n.nonterminal_count();
  const auto& prods = n.productions();
  auto found = [&](std::string certificate) {
    return Defect{detail::defect_witness(n, witness_len), std::move(certificate)};
  };

  // nonterminals deriving a word with #2
  std::vector<bool> marked(count, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : prods) {
      if (marked[p.head]) continue;
      for (const auto& x : p.body)
        if ((x.nonterminal && marked[x.id]) || (!x.nonterminal && x.id == kSep2)) {
          marked[p.head] = changed = true;
          break;
        }
    }
  }

  // a cycle among the others pumps one side of #2 only
  std::vector<std::vector<std::uint32_t>> next(count);
  for (const auto& p : prods)
    if (!marked[p.head])
      for (const auto& x : p.body)
        if (x.nonterminal) next[p.head].push_back(x.id);
  std::vector<int> colour(count, 0);
  std::optional<std::uint32_t> looping;
  std::function<void(std::uint32_t)> visit = [&](std::uint32_t v) {
    colour[v] = 1;
    for (auto w : next[v]) {
      if (looping) return;
      if (colour[w] == 1) looping = w;
      else if (colour[w] == 0) visit(w);
    }
    colour[v] = 2;
  };
  for (std::uint32_t v = 0; v < count && !looping; ++v)
    if (!marked[v] && colour[v] == 0) visit(v);
  if (looping) return found("self-embedding at nonterminal " + n.name(*looping));

  // the others derive finitely many words
  std::vector<std::optional<std::set<Word>>> finite(count);
  std::function<const std::set<Word>&(std::uint32_t)> words_of = [&](std::uint32_t v) -> const std::set<Word>& {
    if (finite[v]) return *finite[v];
    std::set<Word> all;
    for (const auto& p : prods) {
      if (p.head != v) continue;
      std::set<Word> acc{Word{}};
      for (const auto& x : p.body) {
        std::set<Word> grown;
        if (x.nonterminal) {
          for (const auto& u : acc)
            for (const auto& w : words_of(x.id)) grown.insert(concat(u, w));
        } else {
          for (const auto& u : acc) grown.insert(concat(u, {x.id}));
        }
        acc = std::move(grown);
      }
      all.insert(acc.begin(), acc.end());
    }
    finite[v] = std::move(all);
    return *finite[v];
  };
  auto expand = [&](auto first, auto last) {
    std::set<Word> acc{Word{}};
    for (auto it = first; it != last; ++it) {
      std::set<Word> grown;
      for (const auto& u : acc) {
        if (it->nonterminal)
          for (const auto& w : words_of(it->id)) grown.insert(concat(u, w));
        else
          grown.insert(concat(u, {it->id}));
      }
      acc = std::move(grown);
    }
    return acc;
  };

  // balance of every marked nonterminal in the free group, from the start
  struct Step {
    std::uint32_t head;
    std::optional<std::uint32_t> inner;  // nullopt: the pivot is #2 itself
    std::set<Word> before, after;
  };
  std::vector<Step> steps;
  for (const auto& p : prods) {
    if (!marked[p.head]) continue;
    std::size_t pivot = p.body.size();
    for (std::size_t i = 0; i < p.body.size(); ++i) {
      const auto& x = p.body[i];
      if ((x.nonterminal && marked[x.id]) || (!x.nonterminal && x.id == kSep2)) {
        if (pivot != p.body.size()) throw Error(ErrorKind::precondition, "production with two #2-deriving symbols");
        pivot = i;
      }
    }
    Step st{p.head, std::nullopt, expand(p.body.begin(), p.body.begin() + static_cast<long>(pivot)),
            expand(p.body.begin() + static_cast<long>(pivot) + 1, p.body.end())};
    if (p.body[pivot].nonterminal) st.inner = p.body[pivot].id;
    steps.push_back(std::move(st));
  }
  std::vector<std::optional<FreeGroupWord>> balance(count);
  balance[n.start()] = FreeGroupWord{};
  std::vector<std::uint32_t> work{n.start()};
  while (!work.empty()) {
    const auto v = work.back();
    work.pop_back();
    for (const auto& st : steps) {
      if (st.head != v || !st.inner) continue;
      for (const auto& p : st.before)
        for (const auto& q : st.after) {
          FreeGroupWord z = FreeGroupWord::embed(p, -1) * *balance[v] * FreeGroupWord::embed(reversed(q));
          auto& target = balance[*st.inner];
          if (!target) {
            target = z;
            work.push_back(*st.inner);
          } else if (!(*target == z)) {
            return found("inconsistent balance at nonterminal " + n.name(*st.inner));
          }
        }
    }
  }
  for (const auto& st : steps) {
    if (st.inner) continue;
    for (const auto& p : st.before)
      for (const auto& q : st.after)
        if (!(FreeGroupWord::embed(p, -1) * *balance[st.head] * FreeGroupWord::embed(reversed(q))).is_identity())
          return found("unbalanced #2 production of nonterminal " + n.name(st.head));
  }
  return std::nullopt;
}

namespace detail {

/// Replaces letter a by the given word in each of the three components of a
/// table word (images[k] in component k) and copies the other active letters.
inline Transducer substitution(const std::vector<Sym>& active, Sym a, const std::vector<Word>& images) {
  Transducer t;
  std::vector<int> comp;
  for (std::size_t k = 0; k < images.size(); ++k) comp.push_back(t.add_state());
  t.set_initial(comp[0]);
  t.set_accepting(comp.back());
  for (std::size_t k = 0; k < images.size(); ++k) {
    for (Sym x : active) t.add(comp[k], x, x == a ? images[k] : Word{x}, comp[k]);
    if (k + 1 < images.size()) {
      const Sym sep = k == 0 ? kSep1 : kSep2;
      t.add(comp[k], sep, {sep}, comp[k + 1]);
    }
  }
  return t;
}

/// u #1 v #2 w  to  u v
inline Transducer join_factors(const std::vector<Sym>& active) {
  Transducer t;
  const int left = t.add_state(), right = t.add_state(), tail = t.add_state();
  t.set_initial(left);
  t.set_accepting(tail);
  for (Sym x : active) {
    t.add(left, x, {x}, left);
    t.add(right, x, {x}, right);
    t.add(tail, x, {}, tail);
  }
  t.add(left, kSep1, {}, right);
  t.add(right, kSep2, {}, tail);
  return t;
}

/// Deletes #1, keeps #2 and the letters.
inline Transducer drop_first_separator(const std::vector<Sym>& active) {
  Transducer t;
  const int q = t.add_state();
  t.set_initial(q);
  t.set_accepting(q);
  for (Sym x : active) t.add(q, x, {x}, q);
  t.add(q, kSep1, {}, q);
  t.add(q, kSep2, {kSep2}, q);
  return t;
}

}  // namespace detail

/// Eliminates letters that are products of others, then requires L = A+ and
/// a table whose words all read u v #2 (uv)^rev.
inline Verdict is_free(const WhStructure& input, std::size_t witness_len = 12) {
  std::unique_ptr<WhStructure> holder;
  const WhStructure& s = normalized(input, holder);
  std::vector<Sym> active = s.letters();
  Nfa reps = s.reps;
  Cfg table = s.table;
  std::vector<std::pair<std::string, Word>> eliminated;

  for (Sym a : s.letters()) {
    const Cfg ending = intersect(table, detail::table_frame(reps, reps, nfa_word({a})));
    const auto d = shortest_word(apply(detail::join_factors(active), ending));
    if (!d) continue;
    if (std::find(d->begin(), d->end(), a) != d->end())
      return Verdict::no("step 1: '" + s.name(a) + "' only factors through itself").with("factorization", *d);
    reps = trim(apply(detail::substitution(active, a, {*d}), reps));
    table = normalize(apply(detail::substitution(active, a, {*d, *d, reversed(*d)}), table));
    std::erase(active, a);
    eliminated.emplace_back("factor of " + s.name(a), *d);
  }
  if (!equivalent(reps, nfa_universal(active), s.letters())) {
    Verdict v = Verdict::no("step 2: representatives are not all nonempty words over the remaining letters");
    for (auto& [l, w] : eliminated) v.with(l, w);
    return v;
  }
  const Cfg joined = apply(detail::drop_first_separator(active), table);
  if (auto defect = palindromic_defect(joined, witness_len)) {
    Verdict v = Verdict::no("step 3: " + defect->certificate);
    for (auto& [l, w] : eliminated) v.with(l, w);
    if (defect->witness) v.with("defect", *defect->witness);
    return v;
  }
  Verdict v = Verdict::yes("free on " + std::to_string(active.size()) + " letter(s)");
  for (auto& [l, w] : eliminated) v.with(l, w);
  return v;
}

}  // namespace whsg
