#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "whsg/cfg.hpp"
#include "whsg/chart.hpp"
#include "whsg/nfa.hpp"
#include "whsg/transducer.hpp"

namespace whsg {

inline const std::string kSep1Name = "#1";
inline const std::string kSep2Name = "#2";

/// Memo of products and representatives, shared by the arithmetic on one
/// structure value.
struct ArithMemo {
  std::mutex mutex;
  std::map<std::pair<Word, Word>, Word> product;
  std::map<Word, Word> representative;
};

/// An interpreted word-hyperbolic structure. Letter i of the alphabet is the
/// symbol i; `assignment[i]` is the representative in L pinned to letter i.
///
/// Copies start with an empty arithmetic memo, so a copy may be edited
/// freely. Editing a value in place after arithmetic has run on it is not
/// supported.
struct WhStructure {
  std::vector<std::string> alphabet;
  Nfa reps;
  Cfg table;
  std::vector<Word> assignment;

  WhStructure() = default;
  WhStructure(const WhStructure& o)
      : alphabet(o.alphabet), reps(o.reps), table(o.table), assignment(o.assignment) {}
  WhStructure& operator=(const WhStructure& o) {
    alphabet = o.alphabet;
    reps = o.reps;
    table = o.table;
    assignment = o.assignment;
    memo_ = std::make_shared<ArithMemo>();
    return *this;
  }
  WhStructure(WhStructure&&) = default;
  WhStructure& operator=(WhStructure&&) = default;

  std::size_t size() const { return alphabet.size(); }

  std::vector<Sym> letters() const {
    std::vector<Sym> r(alphabet.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<Sym>(i);
    return r;
  }

  /// Letters plus both separators.
  std::vector<Sym> table_alphabet() const {
    auto r = letters();
    r.push_back(kSep1);
    r.push_back(kSep2);
    return r;
  }

  std::string name(Sym x) const {
    if (x == kSep1) return kSep1Name;
    if (x == kSep2) return kSep2Name;
    return alphabet.at(x);
  }

  Sym symbol(const std::string& name) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == name) return static_cast<Sym>(i);
    throw Error(ErrorKind::unknown_symbol, "'" + name + "'");
  }

  /// Reads a word. Tokens separated by commas or spaces are symbol names;
  /// otherwise the text is cut greedily into the longest matching names.
  Word word(const std::string& text) const {
    Word w;
    if (text.find_first_of(", ") != std::string::npos) {
      std::string tok;
      for (char c : text) tok += (c == ',' ? ' ' : c);
      std::istringstream toks(tok);
      std::string t;
      while (toks >> t) w.push_back(symbol(t));
      return w;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t best = 0;
      Sym pick = 0;
      for (std::size_t i = 0; i < alphabet.size(); ++i) {
        const auto& n = alphabet[i];
        if (n.size() > best && text.compare(pos, n.size(), n) == 0) {
          best = n.size();
          pick = static_cast<Sym>(i);
        }
      }
      if (best == 0) throw Error(ErrorKind::unknown_symbol, "cannot read '" + text.substr(pos) + "'");
      w.push_back(pick);
      pos += best;
    }
    return w;
  }

  /// Human-readable word: names run together when all are one character.
  std::string show(const Word& w) const {
    bool short_names = true;
    for (Sym x : w) short_names = short_names && !is_separator(x) && name(x).size() == 1;
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i && !short_names) s += ' ';
      s += name(w[i]);
    }
    return s;
  }

  bool in_reps(const Word& w) const { return accepts(reps, w); }

  ArithMemo& memo() const {
    if (!memo_) memo_ = std::make_shared<ArithMemo>();
    return *memo_;
  }

 private:
  mutable std::shared_ptr<ArithMemo> memo_ = std::make_shared<ArithMemo>();
};

/// Outcome of a decision procedure. Witness labels keep insertion order.
struct Verdict {
  bool answer = false;
  std::vector<std::pair<std::string, Word>> witnesses;
  std::string reason;

  static Verdict yes(std::string reason = {}) { return {true, {}, std::move(reason)}; }
  static Verdict no(std::string reason) { return {false, {}, std::move(reason)}; }

  Verdict& with(std::string label, Word w) {
    witnesses.emplace_back(std::move(label), std::move(w));
    return *this;
  }

  const Word* witness(const std::string& label) const {
    for (const auto& [l, w] : witnesses)
      if (l == label) return &w;
    return nullptr;
  }
};

namespace detail {

/// L #1 L #2 L^rev style products of regular languages.
inline Nfa table_frame(const Nfa& left, const Nfa& middle, const Nfa& right_reversed) {
  return concatenate({left, nfa_word({kSep1}), middle, nfa_word({kSep2}), right_reversed});
}

/// Names made unique and kept away from `forbidden`; clashing names are
/// replaced by prefix + index.
inline std::vector<std::string> unique_names(std::vector<std::string> names, const std::set<std::string>& forbidden,
                                             const std::string& prefix) {
  std::set<std::string> seen;
  bool clash = false;
  for (const auto& n : names) clash = clash || n.empty() || forbidden.count(n) || !seen.insert(n).second;
  if (!clash) return names;
  std::string p = prefix;
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < names.size() && ok; ++i) ok = !forbidden.count(p + std::to_string(i));
    if (ok) break;
    p += "_";
  }
  for (std::size_t i = 0; i < names.size(); ++i) names[i] = p + std::to_string(i);
  return names;
}

}  // namespace detail

/// L #1 L #2 L^rev for the structure.
inline Nfa table_frame(const WhStructure& s) {
  return detail::table_frame(s.reps, s.reps, reverse(s.reps));
}

inline bool is_normalized(const WhStructure& s) {
  for (Sym a : s.letters()) {
    if (s.assignment.at(a) != Word{a}) return false;
    if (!s.in_reps({a})) return false;
  }
  return true;
}

/// Checks every decidable invariant except interpretability. Throws Error
/// naming the first violated one.
inline void check_invariants(const WhStructure& s) {
  if (s.alphabet.empty()) throw Error(ErrorKind::invalid_structure, "empty alphabet");
  std::set<std::string> seen;
  for (const auto& n : s.alphabet) {
    if (n.empty()) throw Error(ErrorKind::parse, "empty symbol name");
    if (n == kSep1Name || n == kSep2Name) throw Error(ErrorKind::reserved_symbol, "'" + n + "' in alphabet");
    if (!seen.insert(n).second) throw Error(ErrorKind::parse, "duplicate symbol '" + n + "'");
  }
  const auto letters = s.letters();
  for (Sym x : s.reps.symbols())
    if (x >= s.size()) throw Error(ErrorKind::unknown_symbol, "reps transition symbol");
  for (Sym x : s.table.terminals())
    if (x >= s.size() && !is_separator(x)) throw Error(ErrorKind::unknown_symbol, "table terminal");
  for (int q : s.reps.initial_states())
    if (s.reps.is_accepting(q)) throw Error(ErrorKind::invalid_structure, "L contains the empty word");
  if (s.assignment.size() != s.size()) throw Error(ErrorKind::invalid_structure, "assignment size");
  for (Sym a : letters)
    if (s.assignment[a].empty() || !s.in_reps(s.assignment[a]))
      throw Error(ErrorKind::assignment_not_in_reps, s.name(a) + " -> " + s.show(s.assignment[a]));
  Nfa outside = complement(table_frame(s), s.table_alphabet());
  Cfg stray = intersect(s.table, outside);
  if (auto w = shortest_word(stray))
    throw Error(ErrorKind::table_not_contained, "'" + s.show(*w) + "'");
}

// ---------------------------------------------------------------- file format

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Reads a grammar object {"nonterminals", "start", "productions"}; body
/// names are nonterminals, "#1", "#2", or letters resolved by `letter`.
inline Cfg grammar_from_json(const json& g, const std::function<Sym(const std::string&)>& letter) {
  Cfg out;
  try {
    std::map<std::string, std::uint32_t> nt;
    bool first = true;
    for (const auto& x : g.at("nonterminals")) {
      auto n = x.get<std::string>();
      if (nt.count(n)) throw Error(ErrorKind::parse, "duplicate nonterminal '" + n + "'");
      if (n == kSep1Name || n == kSep2Name) throw Error(ErrorKind::parse, "nonterminal '" + n + "' clashes with a terminal");
      bool clash = true;
      try {
        letter(n);
      } catch (const Error&) {
        clash = false;
      }
      if (clash) throw Error(ErrorKind::parse, "nonterminal '" + n + "' clashes with a terminal");
      if (first) {
        out.set_name(0, n);
        nt[n] = 0;
        first = false;
      } else {
        nt[n] = out.add_nonterminal(n);
      }
    }
    if (first) throw Error(ErrorKind::parse, "grammar has no nonterminals");
    auto start = nt.find(g.at("start").get<std::string>());
    if (start == nt.end()) throw Error(ErrorKind::parse, "undeclared start symbol");
    out.set_start(start->second);
    for (const auto& p : g.at("productions")) {
      if (p.size() != 2) throw Error(ErrorKind::parse, "production needs [head, [body]]");
      auto head = nt.find(p[0].get<std::string>());
      if (head == nt.end()) throw Error(ErrorKind::parse, "undeclared nonterminal '" + p[0].get<std::string>() + "'");
      std::vector<GSym> body;
      for (const auto& x : p[1]) {
        auto n = x.get<std::string>();
        if (auto it = nt.find(n); it != nt.end())
          body.push_back(GSym::n(it->second));
        else if (n == kSep1Name)
          body.push_back(GSym::t(kSep1));
        else if (n == kSep2Name)
          body.push_back(GSym::t(kSep2));
        else
          body.push_back(GSym::t(letter(n)));
      }
      out.add_production(head->second, std::move(body));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, e.what());
  }
  return out;
}

inline WhStructure structure_from_json(const json& j) {
  WhStructure s;
  try {
    for (const auto& x : j.at("alphabet")) s.alphabet.push_back(x.get<std::string>());
    for (const auto& n : s.alphabet)
      if (n == kSep1Name || n == kSep2Name) throw Error(ErrorKind::reserved_symbol, "'" + n + "' in alphabet");
    std::map<std::string, Sym> sym;
    for (std::size_t i = 0; i < s.alphabet.size(); ++i)
      if (!sym.emplace(s.alphabet[i], static_cast<Sym>(i)).second)
        throw Error(ErrorKind::parse, "duplicate symbol '" + s.alphabet[i] + "'");
    auto letter = [&](const std::string& n) {
      auto it = sym.find(n);
      if (it == sym.end()) throw Error(ErrorKind::unknown_symbol, "'" + n + "'");
      return it->second;
    };

    const auto& r = j.at("reps");
    std::map<std::string, int> state;
    for (const auto& x : r.at("states")) {
      auto n = x.get<std::string>();
      if (state.count(n)) throw Error(ErrorKind::parse, "duplicate state '" + n + "'");
      state[n] = s.reps.add_state(n);
    }
    auto st = [&](const json& x) {
      auto it = state.find(x.get<std::string>());
      if (it == state.end()) throw Error(ErrorKind::parse, "undeclared state '" + x.get<std::string>() + "'");
      return it->second;
    };
    for (const auto& x : r.at("initial")) s.reps.set_initial(st(x));
    for (const auto& x : r.at("accepting")) s.reps.set_accepting(st(x));
    for (const auto& t : r.at("transitions")) {
      if (t.size() != 3) throw Error(ErrorKind::parse, "transition needs [from, symbol, to]");
      s.reps.add_transition(st(t[0]), letter(t[1].get<std::string>()), st(t[2]));
    }

    s.table = grammar_from_json(j.at("table"), letter);

    s.assignment.resize(s.alphabet.size());
    for (Sym a : s.letters()) s.assignment[a] = {a};
    if (j.contains("assignment")) {
      for (const auto& [k, v] : j.at("assignment").items()) {
        Word w;
        for (const auto& x : v) w.push_back(letter(x.get<std::string>()));
        s.assignment[letter(k)] = w;
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, e.what());
  }
  check_invariants(s);
  return s;
}

inline WhStructure load_structure(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, e.what());
  }
  return structure_from_json(j);
}

inline WhStructure load_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  return load_structure(in);
}

inline ordered_json structure_to_json(const WhStructure& s) {
  std::set<std::string> terminals(s.alphabet.begin(), s.alphabet.end());
  terminals.insert(kSep1Name);
  terminals.insert(kSep2Name);
  std::vector<std::string> states(s.reps.size());
  for (std::size_t i = 0; i < states.size(); ++i) states[i] = s.reps.name(static_cast<int>(i));
  states = detail::unique_names(states, {}, "q");
  // start symbol first
  const std::size_t count = s.table.nonterminal_count();
  std::vector<std::uint32_t> order{s.table.start()};
  for (std::uint32_t i = 0; i < count; ++i)
    if (i != s.table.start()) order.push_back(i);
  std::vector<std::uint32_t> rank(count);
  for (std::uint32_t k = 0; k < count; ++k) rank[order[k]] = k;
  std::vector<std::string> nts;
  for (auto i : order) nts.push_back(s.table.name(i));
  nts = detail::unique_names(nts, terminals, "N");

  ordered_json j;
  j["alphabet"] = s.alphabet;
  ordered_json r;
  r["states"] = states;
  std::vector<std::string> init, acc;
  for (int q : s.reps.initial_states()) init.push_back(states[static_cast<std::size_t>(q)]);
  for (int q : s.reps.accepting_states()) acc.push_back(states[static_cast<std::size_t>(q)]);
  r["initial"] = init;
  r["accepting"] = acc;
  std::set<std::tuple<int, Sym, int>> edges;
  for (int q = 0; q < static_cast<int>(s.reps.size()); ++q)
    for (const auto& e : s.reps.edges(q)) edges.insert({q, e.symbol, e.to});
  ordered_json tr = ordered_json::array();
  for (auto [p, x, q] : edges)
    tr.push_back({states[static_cast<std::size_t>(p)], s.name(x), states[static_cast<std::size_t>(q)]});
  r["transitions"] = tr;
  j["reps"] = r;

  ordered_json g;
  g["nonterminals"] = nts;
  g["start"] = nts[0];
  // sort key: head rank, then body with nonterminals by rank before terminals by symbol
  using Key = std::pair<std::uint32_t, std::vector<std::pair<int, std::uint64_t>>>;
  std::set<Key> prods;
  for (const auto& p : s.table.productions()) {
    Key k{rank[p.head], {}};
    for (const auto& x : p.body)
      k.second.push_back(x.nonterminal ? std::pair<int, std::uint64_t>{0, rank[x.id]} : std::pair<int, std::uint64_t>{1, x.id});
    prods.insert(k);
  }
  ordered_json ps = ordered_json::array();
  for (const auto& [head, body] : prods) {
    std::vector<std::string> b;
    for (auto [kind, id] : body) b.push_back(kind == 0 ? nts[id] : s.name(static_cast<Sym>(id)));
    ps.push_back(ordered_json::array({nts[head], b}));
  }
  g["productions"] = ps;
  j["table"] = g;

  ordered_json a = ordered_json::object();
  for (Sym x : s.letters()) {
    std::vector<std::string> w;
    for (Sym y : s.assignment[x]) w.push_back(s.name(y));
    a[s.name(x)] = w;
  }
  j["assignment"] = a;
  return j;
}

inline std::string save_structure(const WhStructure& s) { return structure_to_json(s).dump(2) + "\n"; }

inline void save_structure_file(const WhStructure& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::parse, "cannot write " + path);
  out << save_structure(s);
}

// ---------------------------------------------------------------- rewriting

/// Identifies letter b with letter a: b disappears from the alphabet, every
/// b becomes a, later letters move down by one. The caller vouches that the
/// two letters denote the same element.
inline WhStructure merge_letters(const WhStructure& s, Sym a, Sym b) {
  if (a >= s.size() || b >= s.size()) throw Error(ErrorKind::unknown_symbol, "merge operand");
  if (a == b) throw Error(ErrorKind::precondition, "cannot merge a letter with itself");
  auto f = [&](Sym x) -> Sym {
    if (is_separator(x)) return x;
    if (x == b) x = a;
    return x > b ? x - 1 : x;
  };
  WhStructure r;
  for (Sym x : s.letters())
    if (x != b) r.alphabet.push_back(s.alphabet[x]);
  r.reps = relabel(s.reps, f);
  r.table = relabel(s.table, f);
  for (Sym x : s.letters()) {
    if (x == b) continue;
    Word w;
    for (Sym y : s.assignment[x]) w.push_back(f(y));
    r.assignment.push_back(w);
  }
  return r;
}

/// Transducer that, component by component of u #1 v #2 w^rev, either copies
/// the component or replaces an assigned word (reversed in the last
/// component) by its letter.
inline Transducer generator_rewriter(const WhStructure& s) {
  Transducer t;
  const auto letters = s.letters();
  int entry[3], copy[3], done[3];
  for (int k = 0; k < 3; ++k) {
    entry[k] = t.add_state();
    copy[k] = t.add_state();
    done[k] = t.add_state();
    t.add(entry[k], std::nullopt, {}, copy[k]);
    for (Sym x : letters) t.add(copy[k], x, {x}, copy[k]);
    for (Sym a : letters) {
      Word in = k == 2 ? reversed(s.assignment[a]) : s.assignment[a];
      int cur = entry[k];
      for (std::size_t i = 0; i < in.size(); ++i) {
        const bool last = i + 1 == in.size();
        int nxt = last ? done[k] : t.add_state();
        t.add(cur, in[i], last ? Word{a} : Word{}, nxt);
        cur = nxt;
      }
    }
  }
  t.set_initial(entry[0]);
  for (int k : {0, 1}) {
    const Sym sep = k == 0 ? kSep1 : kSep2;
    t.add(copy[k], sep, {sep}, entry[k + 1]);
    t.add(done[k], sep, {sep}, entry[k + 1]);
  }
  t.set_accepting(copy[2]);
  t.set_accepting(done[2]);
  return t;
}

/// Puts every letter into L and makes the assignment the embedding. The new
/// table is the old one together with every variant obtained by writing a
/// letter in place of its assigned word in any of the three components.
inline WhStructure normalize_generators(const WhStructure& s) {
  WhStructure r;
  r.alphabet = s.alphabet;
  std::vector<Word> singles;
  for (Sym a : s.letters()) singles.push_back({a});
  r.reps = trim(unite(s.reps, nfa_words(singles)));
  for (int q = 0; q < static_cast<int>(r.reps.size()); ++q) r.reps.set_name(q, {});
  r.table = apply(generator_rewriter(s), s.table);
  for (Sym a : s.letters()) r.assignment.push_back({a});
  return r;
}

/// `s` itself when already normalized, otherwise its normalization.
inline const WhStructure& normalized(const WhStructure& s, std::unique_ptr<WhStructure>& holder) {
  if (is_normalized(s)) return s;
  holder = std::make_unique<WhStructure>(normalize_generators(s));
  return *holder;
}

}  // namespace whsg
