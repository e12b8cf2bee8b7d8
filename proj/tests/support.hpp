// Test-side helpers and brute-force oracles. Nothing here calls into the
// library's language algorithms; the oracles work on raw definitions.
#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "whsg/cfg.hpp"
#include "whsg/nfa.hpp"
#include "whsg/transducer.hpp"

namespace test {

using whsg::Cfg;
using whsg::GSym;
using whsg::Nfa;
using whsg::Sym;
using whsg::Transducer;
using whsg::Word;

/// "ab#1b#2ba": lowercase letters are 0..25, "#1"/"#2" are the separators.
inline Word W(const std::string& s) {
  Word w;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '#') {
      w.push_back(s.at(i + 1) == '1' ? whsg::kSep1 : whsg::kSep2);
      ++i;
    } else {
      w.push_back(static_cast<Sym>(s[i] - 'a'));
    }
  }
  return w;
}

inline std::string S(const Word& w) {
  std::string s;
  for (Sym x : w) {
    if (x == whsg::kSep1)
      s += "#1";
    else if (x == whsg::kSep2)
      s += "#2";
    else
      s += static_cast<char>('a' + x);
  }
  return s;
}

inline GSym T(char c) { return GSym::t(static_cast<Sym>(c - 'a')); }
inline GSym N(std::uint32_t i) { return GSym::n(i); }

/// All words over `alphabet` of length lo..hi, shortlex.
inline std::vector<Word> all_words(const std::vector<Sym>& alphabet, std::size_t lo, std::size_t hi) {
  std::vector<Word> out, layer{{}};
  for (std::size_t len = 0; len <= hi; ++len) {
    if (len >= lo) out.insert(out.end(), layer.begin(), layer.end());
    std::vector<Word> next;
    for (const auto& w : layer)
      for (Sym x : alphabet) {
        Word v = w;
        v.push_back(x);
        next.push_back(v);
      }
    layer = std::move(next);
  }
  return out;
}

/// Direct NFA simulation by depth-first search over runs.
inline bool run_accepts(const Nfa& n, const Word& w) {
  std::set<std::pair<int, std::size_t>> seen;
  std::vector<std::pair<int, std::size_t>> stack;
  for (int s = 0; s < static_cast<int>(n.size()); ++s)
    if (n.is_initial(s)) stack.push_back({s, 0});
  while (!stack.empty()) {
    auto [s, i] = stack.back();
    stack.pop_back();
    if (!seen.insert({s, i}).second) continue;
    if (i == w.size()) {
      if (n.is_accepting(s)) return true;
      continue;
    }
    for (const auto& e : n.edges(s))
      if (e.symbol == w[i]) stack.push_back({e.to, i + 1});
  }
  return false;
}

/// Words of length <= max_len derived by a grammar, by breadth-first
/// leftmost rewriting of sentential forms. Sentential forms longer than
/// `max_len + slack` are dropped, so grammars with epsilon productions need
/// enough slack to be exact.
inline std::set<Word> derive_all(const Cfg& g, std::size_t max_len, std::size_t slack = 0) {
  std::set<Word> out;
  using Form = std::vector<GSym>;
  std::set<Form> seen;
  std::vector<Form> work{{GSym::n(g.start())}};
  seen.insert(work[0]);
  while (!work.empty()) {
    Form f = work.back();
    work.pop_back();
    std::size_t first = f.size(), terminals = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i].nonterminal && first == f.size()) first = i;
      if (!f[i].nonterminal) ++terminals;
    }
    if (terminals > max_len) continue;
    if (first == f.size()) {
      Word w;
      for (const auto& x : f) w.push_back(x.id);
      out.insert(w);
      continue;
    }
    for (const auto& p : g.productions()) {
      if (p.head != f[first].id) continue;
      Form h(f.begin(), f.begin() + static_cast<long>(first));
      h.insert(h.end(), p.body.begin(), p.body.end());
      h.insert(h.end(), f.begin() + static_cast<long>(first) + 1, f.end());
      if (h.size() > max_len + slack) continue;
      if (seen.insert(h).second) work.push_back(std::move(h));
    }
  }
  return out;
}

/// All outputs of a transducer on input u, restricted to length <= max_out.
inline std::set<Word> transduce(const Transducer& t, const Word& u, std::size_t max_out) {
  std::set<Word> out;
  std::set<std::tuple<int, std::size_t, Word>> seen;
  std::vector<std::tuple<int, std::size_t, Word>> stack{{t.initial(), 0, {}}};
  while (!stack.empty()) {
    auto cfg = stack.back();
    stack.pop_back();
    if (!seen.insert(cfg).second) continue;
    auto& [s, i, w] = cfg;
    if (i == u.size() && t.is_accepting(s)) out.insert(w);
    for (const auto& tr : t.transitions()) {
      if (tr.from != s) continue;
      if (tr.input && (i == u.size() || *tr.input != u[i])) continue;
      Word v = w;
      v.insert(v.end(), tr.output.begin(), tr.output.end());
      if (v.size() > max_out) continue;
      stack.push_back({tr.to, tr.input ? i + 1 : i, v});
    }
  }
  return out;
}

/// Seeded operand generators over the two-letter alphabet {a, b}.
struct Gen {
  explicit Gen(unsigned seed) : rng(seed) {}
  std::mt19937 rng;

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Nfa nfa(int states = 4, int edges = 7) {
    Nfa n(static_cast<std::size_t>(states));
    n.set_initial(0);
    for (int s = 0; s < states; ++s)
      if (pick(0, 2) == 0) n.set_accepting(s);
    n.set_accepting(pick(0, states - 1));
    for (int i = 0; i < edges; ++i) n.add_transition(pick(0, states - 1), static_cast<Sym>(pick(0, 1)), pick(0, states - 1));
    return n;
  }

  /// Epsilon-free grammar; unit productions allowed.
  Cfg cfg(int nonterminals = 3) {
    Cfg g;
    for (int i = 1; i < nonterminals; ++i) g.add_nonterminal();
    for (int a = 0; a < nonterminals; ++a) {
      int count = pick(1, 3);
      for (int k = 0; k < count; ++k) {
        std::vector<GSym> body;
        int len = pick(1, 3);
        for (int j = 0; j < len; ++j) {
          if (pick(0, 2) == 0)
            body.push_back(GSym::n(static_cast<std::uint32_t>(pick(0, nonterminals - 1))));
          else
            body.push_back(GSym::t(static_cast<Sym>(pick(0, 1))));
        }
        g.add_production(static_cast<std::uint32_t>(a), body);
      }
    }
    g.add_production(static_cast<std::uint32_t>(pick(0, nonterminals - 1)), {GSym::t(static_cast<Sym>(pick(0, 1)))});
    return g;
  }

  /// Transducer whose input-reading moves write at least one symbol, so
  /// outputs bound inputs; input-free moves may write anything short.
  Transducer transducer(int states = 3) {
    Transducer t;
    for (int i = 0; i < states; ++i) t.add_state();
    t.set_initial(0);
    t.set_accepting(pick(0, states - 1));
    for (int i = 0; i < 6; ++i) {
      Word out;
      int len = pick(1, 2);
      for (int j = 0; j < len; ++j) out.push_back(static_cast<Sym>(pick(0, 1)));
      t.add(pick(0, states - 1), static_cast<Sym>(pick(0, 1)), out, pick(0, states - 1));
    }
    for (int i = 0; i < 2; ++i) {
      Word out;
      int len = pick(0, 1);
      for (int j = 0; j < len; ++j) out.push_back(static_cast<Sym>(pick(0, 1)));
      t.add(pick(0, states - 1), std::nullopt, out, pick(0, states - 1));
    }
    return t;
  }
};

/// Grammar from rules like "O->aOa"; uppercase letters are nonterminals,
/// O is the start, "#2" is the separator, an empty body is allowed.
inline Cfg grammar(const std::vector<std::string>& rules) {
  Cfg g;
  std::map<char, std::uint32_t> nt{{'O', g.start()}};
  auto id = [&](char c) {
    auto it = nt.find(c);
    if (it != nt.end()) return it->second;
    return nt[c] = g.add_nonterminal(std::string(1, c));
  };
  for (const auto& r : rules) {
    const auto arrow = r.find("->");
    const char head = r[0];
    std::vector<GSym> body;
    for (std::size_t i = arrow + 2; i < r.size(); ++i) {
      if (r[i] == '#') {
        body.push_back(GSym::t(r[++i] == '1' ? whsg::kSep1 : whsg::kSep2));
      } else if (std::isupper(static_cast<unsigned char>(r[i]))) {
        body.push_back(GSym::n(id(r[i])));
      } else {
        body.push_back(GSym::t(static_cast<Sym>(r[i] - 'a')));
      }
    }
    g.add_production(id(head), body);
  }
  return g;
}

/// Grammar for {w #2 w^rev : w in {a,b}+}.
inline Cfg palindrome_table() {
  Cfg g;
  const auto O = g.start();
  for (char c : {'a', 'b'}) {
    g.add_production(O, {T(c), GSym::n(O), T(c)});
    g.add_production(O, {T(c), GSym::t(whsg::kSep2), T(c)});
  }
  return g;
}

}  // namespace test
