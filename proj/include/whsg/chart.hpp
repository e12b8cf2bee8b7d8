#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "whsg/cfg.hpp"
#include "whsg/nfa.hpp"

namespace whsg {

/// Deduction chart for a normal-form grammar against an automaton: the set
/// of items (A, p, q) such that A derives a word leading from state p to
/// state q. On a straight-line automaton for a single word this is CYK; on
/// a general automaton it is the Bar-Hillel product, computed bottom-up so
/// that only productive triples are ever created.
class Chart {
 public:
  struct Item {
    std::uint32_t nt;
    std::uint32_t from;
    std::uint32_t to;
  };
  struct Combo {
    std::uint32_t parent, left, right;
  };
  struct Leaf {
    std::uint32_t item;
    Sym symbol;
  };

  Chart(const Cnf& g, const Nfa& n, bool record) : g_(g), n_(n), record_(record) { run(); }

  const std::vector<Item>& items() const { return items_; }
  const std::vector<Combo>& combos() const { return combos_; }
  const std::vector<Leaf>& leaves() const { return leaves_; }

  /// Item index, or -1.
  long find(std::uint32_t nt, std::uint32_t from, std::uint32_t to) const {
    auto it = index_.find(key(nt, from, to));
    return it == index_.end() ? -1 : static_cast<long>(it->second);
  }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint32_t>& k) const noexcept {
      std::uint64_t h = k.first * 0x9E3779B97F4A7C15ull;
      h ^= (h >> 29) + k.second * 0xBF58476D1CE4E5B9ull;
      return static_cast<std::size_t>(h ^ (h >> 31));
    }
  };
  using Key = std::pair<std::uint64_t, std::uint32_t>;

  static Key key(std::uint32_t nt, std::uint32_t from, std::uint32_t to) {
    return {(std::uint64_t{nt} << 32) | from, to};
  }
  static std::uint64_t pair_key(std::uint32_t nt, std::uint32_t state) {
    return (std::uint64_t{nt} << 32) | state;
  }

  std::uint32_t add(std::uint32_t nt, std::uint32_t from, std::uint32_t to) {
    auto [it, fresh] = index_.try_emplace(key(nt, from, to), 0);
    if (fresh) {
      it->second = static_cast<std::uint32_t>(items_.size());
      items_.push_back({nt, from, to});
      agenda_.push_back(it->second);
    }
    return it->second;
  }

  void run() {
    if (g_.empty) return;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> by_left(g_.count), by_right(g_.count);
    for (const auto& b : g_.binary) {
      by_left[b.left].push_back({b.head, b.right});
      by_right[b.right].push_back({b.head, b.left});
    }
    std::map<Sym, std::vector<std::uint32_t>> by_term;
    for (const auto& t : g_.terminal) by_term[t.symbol].push_back(t.head);
    for (std::uint32_t s = 0; s < n_.size(); ++s)
      for (const auto& e : n_.edges(static_cast<int>(s))) {
        auto it = by_term.find(e.symbol);
        if (it == by_term.end()) continue;
        for (auto a : it->second) {
          auto id = add(a, s, static_cast<std::uint32_t>(e.to));
          if (record_) leaves_.push_back({id, e.symbol});
        }
      }
    // Items are indexed only once popped, so every pair of items is
    // combined exactly once: when the later of the two is popped.
    while (!agenda_.empty()) {
      const auto id = agenda_.front();
      agenda_.pop_front();
      const Item it = items_[id];
      by_start_[pair_key(it.nt, it.from)].push_back(id);
      by_end_[pair_key(it.nt, it.to)].push_back(id);
      for (auto [head, right] : by_left[it.nt]) {
        auto found = by_start_.find(pair_key(right, it.to));
        if (found == by_start_.end()) continue;
        for (std::size_t k = 0; k < found->second.size(); ++k) {
          const auto other = found->second[k];
          const auto parent = add(head, it.from, items_[other].to);
          if (record_) combos_.push_back({parent, id, other});
        }
      }
      for (auto [head, left] : by_right[it.nt]) {
        auto found = by_end_.find(pair_key(left, it.from));
        if (found == by_end_.end()) continue;
        for (std::size_t k = 0; k < found->second.size(); ++k) {
          const auto other = found->second[k];
          // The self-pairing was already produced through by_left.
          if (other == id) continue;
          const auto parent = add(head, items_[other].from, it.to);
          if (record_) combos_.push_back({parent, other, id});
        }
      }
    }
  }

  const Cnf& g_;
  const Nfa& n_;
  bool record_;
  std::vector<Item> items_;
  std::vector<Combo> combos_;
  std::vector<Leaf> leaves_;
  std::deque<std::uint32_t> agenda_;
  std::unordered_map<Key, std::uint32_t, KeyHash> index_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_start_, by_end_;
};

/// Word membership, cubic in |w| in the worst case.
inline bool member(const Cfg& g, const Word& w) {
  const Cnf& c = g.cnf();
  if (w.empty()) return c.nullable;
  if (c.empty) return false;
  Nfa line = nfa_word(w);
  Chart chart(c, line, false);
  return chart.find(c.start, 0, static_cast<std::uint32_t>(w.size())) >= 0;
}

/// Grammar for language(g) ∩ language(n): nonterminals are the productive
/// and reachable triples of the chart. The output is already free of useless
/// symbols, unit and epsilon productions except for a single start
/// epsilon production when both languages contain the empty word.
inline Cfg intersect(const Cfg& g, const Nfa& n) {
  const Cnf& c = g.cnf();
  Cfg out;  // nonterminal 0 is the new start
  bool eps = false;
  if (c.nullable)
    for (int s : n.initial_states()) eps = eps || n.is_accepting(s);
  if (c.empty) {
    if (eps) out.add_production(0, {});
    return out;
  }
  Chart chart(c, n, true);
  const auto& items = chart.items();
  std::vector<std::vector<std::uint32_t>> combos_of(items.size()), leaves_of(items.size());
  for (std::uint32_t i = 0; i < chart.combos().size(); ++i) combos_of[chart.combos()[i].parent].push_back(i);
  for (std::uint32_t i = 0; i < chart.leaves().size(); ++i) leaves_of[chart.leaves()[i].item].push_back(i);
  std::vector<std::uint32_t> roots;
  for (int p : n.initial_states())
    for (int q : n.accepting_states()) {
      long id = chart.find(c.start, static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q));
      if (id >= 0) roots.push_back(static_cast<std::uint32_t>(id));
    }
  std::vector<std::uint32_t> nt_of(items.size(), 0);
  std::vector<bool> seen(items.size(), false);
  std::vector<std::uint32_t> stack;
  for (auto r : roots) {
    if (seen[r]) continue;
    seen[r] = true;
    nt_of[r] = out.add_nonterminal();
    stack.push_back(r);
  }
  while (!stack.empty()) {
    auto id = stack.back();
    stack.pop_back();
    for (auto ci : combos_of[id])
      for (auto child : {chart.combos()[ci].left, chart.combos()[ci].right})
        if (!seen[child]) {
          seen[child] = true;
          nt_of[child] = out.add_nonterminal();
          stack.push_back(child);
        }
  }
  for (std::uint32_t id = 0; id < items.size(); ++id) {
    if (!seen[id]) continue;
    for (auto li : leaves_of[id]) out.add_production(nt_of[id], {GSym::t(chart.leaves()[li].symbol)});
    for (auto ci : combos_of[id]) {
      const auto& cb = chart.combos()[ci];
      out.add_production(nt_of[id], {GSym::n(nt_of[cb.left]), GSym::n(nt_of[cb.right])});
    }
  }
  // The start inherits the bodies of every root (inline unit elimination).
  std::set<std::vector<GSym>> start_bodies;
  for (const auto& p : out.productions())
    for (auto r : roots)
      if (p.head == nt_of[r]) start_bodies.insert(p.body);
  for (const auto& b : start_bodies) out.add_production(0, b);
  out = normalize(out);
  if (eps) out.add_production(out.start(), {});
  return out;
}

}  // namespace whsg
