#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <tuple>
#include <optional>
#include <set>
#include <vector>

#include "whsg/cfg.hpp"
#include "whsg/chart.hpp"
#include "whsg/nfa.hpp"

namespace whsg {

/// Finite transducer realizing a rational relation. Each transition reads
/// one symbol or nothing (`input` empty) and writes a word.
class Transducer {
 public:
  struct Transition {
    int from;
    std::optional<Sym> input;
    Word output;
    int to;
  };

  int add_state() {
    accepting_.push_back(false);
    return static_cast<int>(accepting_.size() - 1);
  }
  std::size_t size() const { return accepting_.size(); }

  void set_initial(int s) { initial_ = s; }
  void set_accepting(int s, bool v = true) { accepting_.at(s) = v; }
  void add(int from, std::optional<Sym> input, Word output, int to) {
    transitions_.push_back({from, input, std::move(output), to});
  }

  int initial() const { return initial_; }
  bool is_accepting(int s) const { return accepting_[s]; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  /// Epsilon-input closure: for each state, the states reachable by
  /// input-free transitions (itself included).
  std::vector<std::vector<int>> eps_closure() const {
    std::vector<std::vector<int>> adj(size());
    for (const auto& t : transitions_)
      if (!t.input) adj[t.from].push_back(t.to);
    std::vector<std::vector<int>> out(size());
    for (int s = 0; s < static_cast<int>(size()); ++s) out[s] = nfa::closure_of(adj, s);
    return out;
  }

  /// The domain automaton with epsilon moves folded in: p -x-> q whenever
  /// p ~eps~> p' -x-> q' ~eps~> q.
  Nfa input_automaton() const {
    auto cl = eps_closure();
    Nfa n(size());
    n.set_initial(initial_);
    for (int s = 0; s < static_cast<int>(size()); ++s) {
      bool acc = false;
      for (int t : cl[s]) acc = acc || accepting_[t];
      n.set_accepting(s, acc);
    }
    std::set<std::tuple<int, Sym, int>> edges;
    for (int p = 0; p < static_cast<int>(size()); ++p)
      for (int pp : cl[p])
        for (const auto& t : transitions_)
          if (t.from == pp && t.input)
            for (int q : cl[t.to]) edges.insert({p, *t.input, q});
    for (auto [p, x, q] : edges) n.add_transition(p, x, q);
    return n;
  }

 private:
  int initial_ = 0;
  std::vector<bool> accepting_;
  std::vector<Transition> transitions_;
};

/// Identity relation on words over `alphabet` (all lengths).
inline Transducer identity_transducer(const std::vector<Sym>& alphabet) {
  Transducer t;
  int s = t.add_state();
  t.set_initial(s);
  t.set_accepting(s);
  for (Sym x : alphabet) t.add(s, x, {x}, s);
  return t;
}

/// Image of a regular language: { v : exists u in language(n), (u,v) in t }.
inline Nfa apply(const Transducer& t, const Nfa& n) {
  EpsNfa r;
  const int T = static_cast<int>(t.size());
  const int N = static_cast<int>(n.size());
  for (int i = 0; i < T * N; ++i) r.add_state();
  auto id = [&](int ns, int ts) { return ns * T + ts; };
  for (int ns = 0; ns < N; ++ns) {
    for (const auto& tr : t.transitions()) {
      if (!tr.input) {
        r.add_path(id(ns, tr.from), tr.output, id(ns, tr.to));
        continue;
      }
      for (const auto& e : n.edges(ns))
        if (e.symbol == *tr.input) r.add_path(id(ns, tr.from), tr.output, id(e.to, tr.to));
    }
  }
  for (int ns : n.initial_states()) r.set_initial(id(ns, t.initial()));
  for (int ns : n.accepting_states())
    for (int ts = 0; ts < T; ++ts)
      if (t.is_accepting(ts)) r.set_accepting(id(ns, ts));
  return trim(r.remove_epsilon());
}

/// Image of a context-free language. Triple construction against the input
/// automaton of t; each matched terminal is replaced by a nonterminal that
/// derives the outputs of the transducer paths realizing that step.
inline Cfg apply(const Transducer& t, const Cfg& g) {
  const Cnf& c = g.cnf();
  Nfa domain = t.input_automaton();
  auto cl = t.eps_closure();
  Cfg out;
  const std::uint32_t start = out.start();

  // eps_nt[p][q]: outputs of input-free paths p ~> q (created on demand).
  std::map<std::pair<int, int>, std::uint32_t> eps_nt;
  std::function<std::uint32_t(int, int)> eps_between = [&](int p, int q) -> std::uint32_t {
    auto found = eps_nt.find({p, q});
    if (found != eps_nt.end()) return found->second;
    std::uint32_t id = out.add_nonterminal();
    eps_nt[{p, q}] = id;
    if (p == q) out.add_production(id, {});
    for (const auto& tr : t.transitions()) {
      if (tr.input || tr.from != p) continue;
      // only continue along states that still reach q without input
      bool reaches = false;
      for (int s : cl[tr.to]) reaches = reaches || s == q;
      if (!reaches) continue;
      std::vector<GSym> body;
      for (Sym x : tr.output) body.push_back(GSym::t(x));
      body.push_back(GSym::n(eps_between(tr.to, q)));
      out.add_production(id, std::move(body));
    }
    return id;
  };

  // step_nt[(x,p,q)]: outputs of paths p ~eps~> p' -x-> q' ~eps~> q.
  std::map<std::tuple<Sym, int, int>, std::uint32_t> step_nt;
  auto step_between = [&](Sym x, int p, int q) {
    auto found = step_nt.find({x, p, q});
    if (found != step_nt.end()) return found->second;
    std::uint32_t id = out.add_nonterminal();
    step_nt[{x, p, q}] = id;
    for (int pp : cl[p])
      for (const auto& tr : t.transitions()) {
        if (tr.from != pp || !tr.input || *tr.input != x) continue;
        bool reaches = false;
        for (int s : cl[tr.to]) reaches = reaches || s == q;
        if (!reaches) continue;
        std::vector<GSym> body{GSym::n(eps_between(p, pp))};
        for (Sym y : tr.output) body.push_back(GSym::t(y));
        body.push_back(GSym::n(eps_between(tr.to, q)));
        out.add_production(id, std::move(body));
      }
    return id;
  };

  if (c.nullable)
    for (int q : cl[t.initial()])
      if (t.is_accepting(q)) out.add_production(start, {GSym::n(eps_between(t.initial(), q))});
  if (!c.empty) {
    Chart chart(c, domain, true);
    const auto& items = chart.items();
    std::vector<std::uint32_t> nt_of(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) nt_of[i] = out.add_nonterminal();
    for (const auto& lf : chart.leaves()) {
      const auto& it = items[lf.item];
      out.add_production(nt_of[lf.item], {GSym::n(step_between(lf.symbol, static_cast<int>(it.from),
                                                                  static_cast<int>(it.to)))});
    }
    for (const auto& cb : chart.combos())
      out.add_production(nt_of[cb.parent], {GSym::n(nt_of[cb.left]), GSym::n(nt_of[cb.right])});
    for (int q = 0; q < static_cast<int>(domain.size()); ++q) {
      long id = chart.find(c.start, static_cast<std::uint32_t>(t.initial()), static_cast<std::uint32_t>(q));
      if (id < 0) continue;
      for (int f : cl[q])
        if (t.is_accepting(f))
          out.add_production(start, {GSym::n(nt_of[static_cast<std::size_t>(id)]), GSym::n(eps_between(q, f))});
    }
  }
  const bool eps = cfg_detail::nullable(out.nonterminal_count(), out.productions())[start];
  Cfg result = normalize(out);
  if (eps) result.add_production(result.start(), {});
  return result;
}

}  // namespace whsg
