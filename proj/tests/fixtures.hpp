#pragma once

// Builders for the fixture files under fixtures/. The tool make_fixtures
// writes them; a test checks the checked-in files still match.

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "whsg/whsg.hpp"

namespace fixtures {

using whsg::FiniteSemigroup;
using whsg::GSym;
using whsg::Sym;
using whsg::WhStructure;
using whsg::Word;

inline FiniteSemigroup from_rule(std::vector<std::string> elements, const std::function<std::string(const std::string&, const std::string&)>& mul,
                                 const std::vector<std::string>& generators) {
  FiniteSemigroup t;
  t.elements = std::move(elements);
  for (const auto& x : t.elements) {
    std::vector<int> row;
    for (const auto& y : t.elements) row.push_back(t.index(mul(x, y)));
    t.table.push_back(row);
  }
  for (const auto& g : generators) t.generators.push_back(t.index(g));
  whsg::check_table(t);
  return t;
}

inline FiniteSemigroup z2_table() {
  return from_rule({"e", "g"}, [](const std::string& x, const std::string& y) { return x == y ? "e" : "g"; },
                   {"e", "g"});
}

inline FiniteSemigroup sl2_table() {
  return from_rule({"1", "e"}, [](const std::string& x, const std::string& y) { return x == "1" && y == "1" ? "1" : "e"; },
                   {"1", "e"});
}

/// 2x2 rectangular band on two generators: (i,j)(k,l) = (i,l).
inline FiniteSemigroup rb22_table() {
  return from_rule({"11", "12", "21", "22"},
                   [](const std::string& x, const std::string& y) { return std::string{x[0], y[1]}; }, {"11", "22"});
}

inline FiniteSemigroup null3_table() {
  return from_rule({"x", "y", "0"}, [](const std::string&, const std::string&) { return "0"; }, {"x", "y", "0"});
}

/// 2x3 Rees matrix cells over the trivial group with a zero and an adjoined
/// identity; (i,l)(j,m) is zero when l = j = 1.
inline std::string rees_product(const std::string& x, const std::string& y) {
  if (x == "1") return y;
  if (y == "1") return x;
  if (x == "0" || y == "0") return "0";
  if (x[1] == '1' && y[0] == '1') return "0";
  return std::string{x[0], y[1]};
}

inline FiniteSemigroup rees_table() {
  return from_rule({"1", "0", "11", "12", "13", "21", "22", "23"}, rees_product, {"1", "12", "23", "21"});
}

/// Letters named by single characters.
inline Word chars(const WhStructure& s, const std::string& text) {
  Word w;
  for (char c : text) w.push_back(s.symbol(std::string(1, c)));
  return w;
}

inline void add_terminal_word(WhStructure& s, std::uint32_t head, const Word& w,
                              std::vector<GSym> extra_after = {}) {
  std::vector<GSym> body;
  for (Sym x : w) body.push_back(GSym::t(x));
  body.insert(body.end(), extra_after.begin(), extra_after.end());
  s.table.add_production(head, body);
}

/// The free semigroup on a and b: L = {a,b}+ and the table
/// u #1 v #2 (uv)^rev, generated by O -> xOx | x#1Qx, Q -> yQy | y#2y.
inline WhStructure free2() {
  WhStructure s;
  s.alphabet = {"a", "b"};
  s.reps = whsg::nfa_universal(s.letters());
  const auto O = s.table.start();
  const auto Q = s.table.add_nonterminal("Q");
  for (Sym x : s.letters()) {
    s.table.add_production(O, {GSym::t(x), GSym::n(O), GSym::t(x)});
    s.table.add_production(O, {GSym::t(x), GSym::t(whsg::kSep1), GSym::n(Q), GSym::t(x)});
    s.table.add_production(Q, {GSym::t(x), GSym::n(Q), GSym::t(x)});
    s.table.add_production(Q, {GSym::t(x), GSym::t(whsg::kSep2), GSym::t(x)});
  }
  for (Sym a : s.letters()) s.assignment.push_back({a});
  whsg::check_invariants(s);
  return s;
}

/// free2 with a redundant third letter c assigned to ab.
inline WhStructure free2c() {
  WhStructure base = free2();
  WhStructure s;
  s.alphabet = {"a", "b", "c"};
  s.reps = base.reps;
  s.table = base.table;
  s.assignment = {{0}, {1}, {0, 1}};
  whsg::check_invariants(s);
  return s;
}

/// Three letters, L = A, every product equal to a.
inline WhStructure null3() {
  WhStructure s;
  s.alphabet = {"a", "b", "c"};
  s.reps = whsg::nfa_words({{0}, {1}, {2}});
  const auto O = s.table.start();
  const auto X = s.table.add_nonterminal("X");
  s.table.add_production(O, {GSym::n(X), GSym::t(whsg::kSep1), GSym::n(X), GSym::t(whsg::kSep2), GSym::t(0)});
  for (Sym x : s.letters()) s.table.add_production(X, {GSym::t(x)});
  for (Sym a : s.letters()) s.assignment.push_back({a});
  whsg::check_invariants(s);
  return s;
}

/// The Rees monoid with representatives a b c d bed deb i z da; e is
/// assigned deb. Letter meanings: a=(1,1) b=(1,2) c=(1,3) d=(2,3) e=(2,2)
/// i=identity z=zero.
inline WhStructure rees() {
  WhStructure s;
  s.alphabet = {"a", "b", "c", "d", "e", "i", "z"};
  const std::map<char, std::string> meaning{{'a', "11"}, {'b', "12"}, {'c', "13"}, {'d', "23"},
                                            {'e', "22"}, {'i', "1"},  {'z', "0"}};
  auto value = [&](const std::string& w) {
    std::string v = meaning.at(w[0]);
    for (std::size_t k = 1; k < w.size(); ++k) v = rees_product(v, meaning.at(w[k]));
    return v;
  };
  const std::vector<std::string> reps{"a", "b", "c", "d", "i", "z", "da", "bed", "deb"};
  std::vector<Word> words;
  for (const auto& r : reps) words.push_back(chars(s, r));
  s.reps = whsg::nfa_words(words);
  for (const auto& u : reps)
    for (const auto& v : reps)
      for (const auto& w : reps)
        if (rees_product(value(u), value(v)) == value(w))
          add_terminal_word(s, s.table.start(), whsg::table_word(chars(s, u), chars(s, v), chars(s, w)));
  for (Sym a : s.letters()) s.assignment.push_back({a});
  s.assignment[s.symbol("e")] = chars(s, "deb");
  whsg::check_invariants(s);
  return s;
}

inline std::vector<std::pair<std::string, FiniteSemigroup>> named_tables() {
  return {{"z2", z2_table()}, {"sl2", sl2_table()}, {"rb22", rb22_table()}, {"null3", null3_table()}, {"rees", rees_table()}};
}

/// Relative path and exact contents of every fixture file.
inline std::vector<std::pair<std::string, std::string>> fixture_files() {
  std::vector<std::pair<std::string, std::string>> out{
      {"free2.whs", whsg::save_structure(free2())},
      {"free2c.whs", whsg::save_structure(free2c())},
      {"null3.whs", whsg::save_structure(null3())},
      {"rees.whs", whsg::save_structure(rees())},
  };
  for (const auto& [name, t] : named_tables()) {
    if (name == "null3" || name == "rees") continue;  // the hand-built structures above keep these names
    out.emplace_back(name + ".whs", whsg::save_structure(whsg::structure_from_table(t)));
  }
  for (const auto& [name, t] : named_tables()) out.emplace_back("tables/" + name + ".json", whsg::table_to_json(t).dump(2) + "\n");
  return out;
}

#ifdef WHSG_FIXTURES
inline WhStructure load(const std::string& name) {
  return whsg::load_structure_file(std::string(WHSG_FIXTURES) + "/" + name + ".whs");
}

inline FiniteSemigroup load_table(const std::string& name) {
  return whsg::load_table_file(std::string(WHSG_FIXTURES) + "/tables/" + name + ".json");
}
#endif

}  // namespace fixtures
