#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "whsg/symbol.hpp"

namespace whsg {

/// Nondeterministic finite automaton without epsilon transitions.
///
/// States are dense indices. State names are kept only so that a structure
/// file can be written back unchanged; automata produced by the algebra
/// below get generated names.
class Nfa {
 public:
  struct Edge {
    Sym symbol;
    int to;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  Nfa() = default;
  explicit Nfa(std::size_t states) { resize(states); }

  std::size_t size() const { return edges_.size(); }

  int add_state(std::string name = {}) {
    edges_.emplace_back();
    initial_.push_back(false);
    accepting_.push_back(false);
    names_.push_back(std::move(name));
    return static_cast<int>(edges_.size() - 1);
  }

  void resize(std::size_t states) {
    while (size() < states) add_state();
  }

  void add_transition(int from, Sym symbol, int to) {
    edges_.at(from).push_back(Edge{symbol, to});
  }
  void set_initial(int s, bool v = true) { initial_.at(s) = v; }
  void set_accepting(int s, bool v = true) { accepting_.at(s) = v; }
  void set_name(int s, std::string name) { names_.at(s) = std::move(name); }

  const std::vector<Edge>& edges(int s) const { return edges_[s]; }
  bool is_initial(int s) const { return initial_[s]; }
  bool is_accepting(int s) const { return accepting_[s]; }

  std::string name(int s) const {
    return names_[s].empty() ? "q" + std::to_string(s) : names_[s];
  }

  std::vector<int> initial_states() const { return filter(initial_); }
  std::vector<int> accepting_states() const { return filter(accepting_); }

  /// Symbols occurring on some transition, ascending.
  std::vector<Sym> symbols() const {
    std::set<Sym> s;
    for (const auto& out : edges_)
      for (const auto& e : out) s.insert(e.symbol);
    return {s.begin(), s.end()};
  }

  std::size_t transition_count() const {
    std::size_t n = 0;
    for (const auto& out : edges_) n += out.size();
    return n;
  }

 private:
  std::vector<int> filter(const std::vector<bool>& flags) const {
    std::vector<int> r;
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (flags[i]) r.push_back(static_cast<int>(i));
    return r;
  }

  std::vector<std::vector<Edge>> edges_;
  std::vector<bool> initial_;
  std::vector<bool> accepting_;
  std::vector<std::string> names_;
};

/// Automaton with epsilon moves, used only as a construction scratchpad.
class EpsNfa {
 public:
  int add_state() {
    edges_.emplace_back();
    eps_.emplace_back();
    initial_.push_back(false);
    accepting_.push_back(false);
    return static_cast<int>(edges_.size() - 1);
  }
  std::size_t size() const { return edges_.size(); }
  void add_transition(int from, Sym s, int to) { edges_[from].push_back({s, to}); }
  void add_epsilon(int from, int to) { eps_[from].push_back(to); }
  void set_initial(int s) { initial_[s] = true; }
  void set_accepting(int s) { accepting_[s] = true; }

  /// Emits `out` along a fresh chain from `from` to `to`.
  void add_path(int from, const Word& out, int to) {
    if (out.empty()) {
      add_epsilon(from, to);
      return;
    }
    int cur = from;
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      int nxt = add_state();
      add_transition(cur, out[i], nxt);
      cur = nxt;
    }
    add_transition(cur, out.back(), to);
  }

  Nfa remove_epsilon() const;

 private:
  std::vector<std::vector<Nfa::Edge>> edges_;
  std::vector<std::vector<int>> eps_;
  std::vector<bool> initial_;
  std::vector<bool> accepting_;
};

namespace nfa {

inline std::vector<int> closure_of(const std::vector<std::vector<int>>& eps, int s) {
  std::vector<int> out{s};
  std::vector<bool> seen(eps.size(), false);
  seen[s] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int t : eps[out[i]])
      if (!seen[t]) {
        seen[t] = true;
        out.push_back(t);
      }
  return out;
}

}  // namespace nfa

inline Nfa EpsNfa::remove_epsilon() const {
  Nfa r(size());
  for (std::size_t s = 0; s < size(); ++s) {
    std::set<Nfa::Edge> out;
    bool acc = false;
    for (int t : nfa::closure_of(eps_, static_cast<int>(s))) {
      acc = acc || accepting_[t];
      for (const auto& e : edges_[t]) out.insert(e);
    }
    for (const auto& e : out) r.add_transition(static_cast<int>(s), e.symbol, e.to);
    r.set_accepting(static_cast<int>(s), acc);
    r.set_initial(static_cast<int>(s), initial_[s]);
  }
  return r;
}

namespace nfa {

inline std::vector<int> step(const Nfa& n, const std::vector<int>& from, Sym x) {
  std::set<int> next;
  for (int s : from)
    for (const auto& e : n.edges(s))
      if (e.symbol == x) next.insert(e.to);
  return {next.begin(), next.end()};
}

}  // namespace nfa

inline bool accepts(const Nfa& n, const Word& w) {
  auto cur = n.initial_states();
  for (Sym x : w) {
    cur = nfa::step(n, cur, x);
    if (cur.empty()) return false;
  }
  for (int s : cur)
    if (n.is_accepting(s)) return true;
  return false;
}

/// Removes states that are unreachable from an initial state or cannot reach
/// an accepting one. Keeps at least one state so the result is well formed.
inline Nfa trim(const Nfa& n) {
  const int N = static_cast<int>(n.size());
  std::vector<bool> fwd(N, false), bwd(N, false);
  std::vector<int> stack = n.initial_states();
  for (int s : stack) fwd[s] = true;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (const auto& e : n.edges(s))
      if (!fwd[e.to]) {
        fwd[e.to] = true;
        stack.push_back(e.to);
      }
  }
  std::vector<std::vector<int>> rev(N);
  for (int s = 0; s < N; ++s)
    for (const auto& e : n.edges(s)) rev[e.to].push_back(s);
  stack = n.accepting_states();
  for (int s : stack) bwd[s] = true;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int p : rev[s])
      if (!bwd[p]) {
        bwd[p] = true;
        stack.push_back(p);
      }
  }
  std::vector<int> remap(N, -1);
  Nfa r;
  for (int s = 0; s < N; ++s)
    if (fwd[s] && bwd[s]) remap[s] = r.add_state();
  if (r.size() == 0) {
    r.add_state();
    return r;
  }
  for (int s = 0; s < N; ++s) {
    if (remap[s] < 0) continue;
    r.set_initial(remap[s], n.is_initial(s));
    r.set_accepting(remap[s], n.is_accepting(s));
    std::set<Nfa::Edge> out;
    for (const auto& e : n.edges(s))
      if (remap[e.to] >= 0) out.insert({e.symbol, remap[e.to]});
    for (const auto& e : out) r.add_transition(remap[s], e.symbol, e.to);
  }
  return r;
}

/// Automaton for the single word w.
inline Nfa nfa_word(const Word& w) {
  Nfa r(w.size() + 1);
  r.set_initial(0);
  r.set_accepting(static_cast<int>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i)
    r.add_transition(static_cast<int>(i), w[i], static_cast<int>(i + 1));
  return r;
}

/// Trie automaton for a finite set of words.
inline Nfa nfa_words(const std::vector<Word>& words) {
  Nfa r(1);
  r.set_initial(0);
  std::vector<std::map<Sym, int>> child(1);
  for (const auto& w : words) {
    int cur = 0;
    for (Sym x : w) {
      auto it = child[cur].find(x);
      if (it == child[cur].end()) {
        int nxt = r.add_state();
        child.emplace_back();
        child[cur][x] = nxt;
        r.add_transition(cur, x, nxt);
        cur = nxt;
      } else {
        cur = it->second;
      }
    }
    r.set_accepting(cur);
  }
  return r;
}

/// alphabet^+ (or alphabet^* when `allow_empty`).
inline Nfa nfa_universal(const std::vector<Sym>& alphabet, bool allow_empty = false) {
  Nfa r(2);
  r.set_initial(0);
  r.set_accepting(1);
  if (allow_empty) r.set_accepting(0);
  for (Sym x : alphabet) {
    r.add_transition(0, x, 1);
    r.add_transition(1, x, 1);
  }
  return r;
}

inline Nfa nfa_empty() {
  Nfa r(1);
  r.set_initial(0);
  return r;
}

inline Nfa unite(const Nfa& a, const Nfa& b) {
  Nfa r(a.size() + b.size());
  const int off = static_cast<int>(a.size());
  for (int s = 0; s < static_cast<int>(a.size()); ++s) {
    r.set_initial(s, a.is_initial(s));
    r.set_accepting(s, a.is_accepting(s));
    for (const auto& e : a.edges(s)) r.add_transition(s, e.symbol, e.to);
  }
  for (int s = 0; s < static_cast<int>(b.size()); ++s) {
    r.set_initial(s + off, b.is_initial(s));
    r.set_accepting(s + off, b.is_accepting(s));
    for (const auto& e : b.edges(s)) r.add_transition(s + off, e.symbol, e.to + off);
  }
  return r;
}

inline Nfa concatenate(const Nfa& a, const Nfa& b) {
  Nfa r(a.size() + b.size());
  const int off = static_cast<int>(a.size());
  bool b_nullable = false;
  for (int s : b.initial_states()) b_nullable = b_nullable || b.is_accepting(s);
  const auto b_init = b.initial_states();
  for (int s = 0; s < static_cast<int>(a.size()); ++s) {
    r.set_initial(s, a.is_initial(s));
    r.set_accepting(s, a.is_accepting(s) && b_nullable);
    for (const auto& e : a.edges(s)) r.add_transition(s, e.symbol, e.to);
    if (a.is_accepting(s))
      for (int bi : b_init)
        for (const auto& e : b.edges(bi)) r.add_transition(s, e.symbol, e.to + off);
  }
  for (int s = 0; s < static_cast<int>(b.size()); ++s) {
    r.set_accepting(s + off, b.is_accepting(s));
    for (const auto& e : b.edges(s)) r.add_transition(s + off, e.symbol, e.to + off);
  }
  return trim(r);
}

inline Nfa concatenate(std::initializer_list<Nfa> parts) {
  auto it = parts.begin();
  Nfa r = *it++;
  for (; it != parts.end(); ++it) r = concatenate(r, *it);
  return r;
}

inline Nfa reverse(const Nfa& n) {
  Nfa r(n.size());
  for (int s = 0; s < static_cast<int>(n.size()); ++s) {
    r.set_initial(s, n.is_accepting(s));
    r.set_accepting(s, n.is_initial(s));
    for (const auto& e : n.edges(s)) r.add_transition(e.to, e.symbol, s);
  }
  return r;
}

/// Product automaton, restricted to reachable pairs.
inline Nfa intersect(const Nfa& a, const Nfa& b) {
  std::map<std::pair<int, int>, int> id;
  std::deque<std::pair<int, int>> work;
  Nfa r;
  auto get = [&](int p, int q) {
    auto [it, fresh] = id.try_emplace({p, q}, 0);
    if (fresh) {
      it->second = r.add_state();
      r.set_accepting(it->second, a.is_accepting(p) && b.is_accepting(q));
      work.push_back({p, q});
    }
    return it->second;
  };
  for (int p : a.initial_states())
    for (int q : b.initial_states()) r.set_initial(get(p, q));
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop_front();
    const int from = id[{p, q}];
    for (const auto& ea : a.edges(p))
      for (const auto& eb : b.edges(q))
        if (ea.symbol == eb.symbol) r.add_transition(from, ea.symbol, get(ea.to, eb.to));
  }
  if (r.size() == 0) return nfa_empty();
  return trim(r);
}

/// Complete deterministic automaton over `alphabet` (subset construction).
/// Symbols outside `alphabet` are ignored.
inline Nfa determinize(const Nfa& n, const std::vector<Sym>& alphabet) {
  std::map<std::vector<int>, int> id;
  std::deque<std::vector<int>> work;
  Nfa r;
  auto get = [&](const std::vector<int>& set) {
    auto [it, fresh] = id.try_emplace(set, 0);
    if (fresh) {
      it->second = r.add_state();
      bool acc = false;
      for (int s : set) acc = acc || n.is_accepting(s);
      r.set_accepting(it->second, acc);
      work.push_back(set);
    }
    return it->second;
  };
  r.set_initial(get(n.initial_states()));
  while (!work.empty()) {
    auto set = work.front();
    work.pop_front();
    const int from = id[set];
    for (Sym x : alphabet) r.add_transition(from, x, get(nfa::step(n, set, x)));
  }
  return r;
}

/// alphabet^* minus language(n).
inline Nfa complement(const Nfa& n, const std::vector<Sym>& alphabet) {
  Nfa d = determinize(n, alphabet);
  for (int s = 0; s < static_cast<int>(d.size()); ++s) d.set_accepting(s, !d.is_accepting(s));
  return trim(d);
}

/// a minus b, both read over `alphabet`.
inline Nfa difference(const Nfa& a, const Nfa& b, const std::vector<Sym>& alphabet) {
  return intersect(a, complement(b, alphabet));
}

/// Shortest accepted word, lexicographically least among the shortest.
inline std::optional<Word> shortest_word(const Nfa& n) {
  const int N = static_cast<int>(n.size());
  constexpr int inf = std::numeric_limits<int>::max();
  std::vector<std::vector<std::pair<Sym, int>>> rev(N);
  for (int s = 0; s < N; ++s)
    for (const auto& e : n.edges(s)) rev[e.to].push_back({e.symbol, s});
  // dist[s] = length of a shortest word leading from s to acceptance
  std::vector<int> dist(N, inf);
  std::deque<int> q;
  for (int s : n.accepting_states()) {
    dist[s] = 0;
    q.push_back(s);
  }
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    for (auto [x, p] : rev[s])
      if (dist[p] == inf) {
        dist[p] = dist[s] + 1;
        q.push_back(p);
      }
  }
  int best = inf;
  for (int s : n.initial_states()) best = std::min(best, dist[s]);
  if (best == inf) return std::nullopt;
  std::vector<int> cur;
  for (int s : n.initial_states())
    if (dist[s] == best) cur.push_back(s);
  Word w;
  for (int remaining = best; remaining > 0; --remaining) {
    Sym pick = 0;
    bool found = false;
    for (int s : cur)
      for (const auto& e : n.edges(s))
        if (dist[e.to] == remaining - 1 && (!found || e.symbol < pick)) {
          pick = e.symbol;
          found = true;
        }
    std::set<int> next;
    for (int s : cur)
      for (const auto& e : n.edges(s))
        if (e.symbol == pick && dist[e.to] == remaining - 1) next.insert(e.to);
    cur.assign(next.begin(), next.end());
    w.push_back(pick);
  }
  return w;
}

inline bool is_empty(const Nfa& n) { return !shortest_word(n).has_value(); }

/// Language equality over `alphabet`.
inline bool equivalent(const Nfa& a, const Nfa& b, const std::vector<Sym>& alphabet) {
  return is_empty(difference(a, b, alphabet)) && is_empty(difference(b, a, alphabet));
}

/// Replaces every edge label x by f(x).
inline Nfa relabel(const Nfa& n, const std::function<Sym(Sym)>& f) {
  Nfa out(n.size());
  for (int s = 0; s < static_cast<int>(n.size()); ++s) {
    out.set_initial(s, n.is_initial(s));
    out.set_accepting(s, n.is_accepting(s));
    out.set_name(s, n.name(s));
    std::set<Nfa::Edge> edges;
    for (const auto& e : n.edges(s)) edges.insert({f(e.symbol), e.to});
    for (const auto& e : edges) out.add_transition(s, e.symbol, e.to);
  }
  return out;
}

/// Every accepted word of length at most max_len, in shortlex order.
inline std::vector<Word> enumerate(const Nfa& automaton, std::size_t max_len) {
  const Nfa n = trim(automaton);
  std::vector<Word> out;
  std::map<Word, std::vector<int>> layer;
  layer[{}] = n.initial_states();
  for (std::size_t len = 0;; ++len) {
    for (const auto& [w, states] : layer)
      for (int s : states)
        if (n.is_accepting(s)) {
          out.push_back(w);
          break;
        }
    if (len == max_len) break;
    std::map<Word, std::vector<int>> next;
    for (const auto& [w, states] : layer) {
      std::map<Sym, std::set<int>> by_sym;
      for (int s : states)
        for (const auto& e : n.edges(s)) by_sym[e.symbol].insert(e.to);
      for (auto& [x, to] : by_sym) {
        Word nw = w;
        nw.push_back(x);
        next[std::move(nw)] = std::vector<int>(to.begin(), to.end());
      }
    }
    if (next.empty()) break;
    layer = std::move(next);
  }
  return out;
}

}  // namespace whsg
