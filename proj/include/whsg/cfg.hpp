#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "whsg/symbol.hpp"

namespace whsg {

/// A grammar body symbol: a terminal or a nonterminal index.
struct GSym {
  bool nonterminal = false;
  std::uint32_t id = 0;

  static GSym t(Sym s) { return {false, s}; }
  static GSym n(std::uint32_t i) { return {true, i}; }

  friend bool operator==(const GSym&, const GSym&) = default;
  friend auto operator<=>(const GSym&, const GSym&) = default;
};

struct Production {
  std::uint32_t head = 0;
  std::vector<GSym> body;

  friend bool operator==(const Production&, const Production&) = default;
  friend auto operator<=>(const Production&, const Production&) = default;
};

/// Chomsky normal form without the epsilon production; `nullable` records
/// whether the empty word belongs to the language. Used internally for
/// membership, intersection and witness extraction, never written out.
struct Cnf {
  struct Binary {
    std::uint32_t head, left, right;
  };
  struct Terminal {
    std::uint32_t head;
    Sym symbol;
  };

  std::uint32_t count = 0;
  std::uint32_t start = 0;
  bool nullable = false;
  bool empty = true;  // no nonempty word in the language
  std::vector<Binary> binary;
  std::vector<Terminal> terminal;
};

class Cfg;
Cnf to_cnf(const Cfg& g);

/// Context-free grammar. Nonterminals are dense indices with optional names
/// (kept for file round trips); terminals are `Sym`.
class Cfg {
 public:
  Cfg() { start_ = add_nonterminal("O"); }

  std::uint32_t add_nonterminal(std::string name = {}) {
    invalidate();
    names_.push_back(std::move(name));
    return static_cast<std::uint32_t>(names_.size() - 1);
  }

  void add_production(std::uint32_t head, std::vector<GSym> body) {
    invalidate();
    productions_.push_back({head, std::move(body)});
  }

  void set_start(std::uint32_t s) {
    invalidate();
    start_ = s;
  }

  void set_name(std::uint32_t n, std::string name) { names_.at(n) = std::move(name); }

  std::size_t nonterminal_count() const { return names_.size(); }
  std::uint32_t start() const { return start_; }
  const std::vector<Production>& productions() const { return productions_; }

  std::string name(std::uint32_t n) const {
    return names_[n].empty() ? "N" + std::to_string(n) : names_[n];
  }

  std::vector<Sym> terminals() const {
    std::set<Sym> s;
    for (const auto& p : productions_)
      for (const auto& x : p.body)
        if (!x.nonterminal) s.insert(x.id);
    return {s.begin(), s.end()};
  }

  /// Cached normal form; computed once per grammar value.
  const Cnf& cnf() const {
    std::shared_ptr<CnfCache> cache;
    {
      std::lock_guard lock(cache_mutex());
      if (!cache_) cache_ = std::make_shared<CnfCache>();
      cache = cache_;
    }
    std::call_once(cache->once, [&] { cache->value = to_cnf(*this); });
    return cache->value;
  }

 private:
  struct CnfCache {
    std::once_flag once;
    Cnf value;
  };

  static std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
  }

  void invalidate() { cache_.reset(); }

  std::uint32_t start_ = 0;
  std::vector<std::string> names_;
  std::vector<Production> productions_;
  mutable std::shared_ptr<CnfCache> cache_;
};

namespace cfg_detail {

/// Productive nonterminals of an arbitrary production list.
inline std::vector<bool> productive(std::size_t count, const std::vector<Production>& prods) {
  std::vector<bool> prod(count, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : prods) {
      if (prod[p.head]) continue;
      bool ok = true;
      for (const auto& x : p.body)
        if (x.nonterminal && !prod[x.id]) {
          ok = false;
          break;
        }
      if (ok) {
        prod[p.head] = true;
        changed = true;
      }
    }
  }
  return prod;
}

inline std::vector<bool> reachable(std::size_t count, std::uint32_t start,
                                   const std::vector<Production>& prods) {
  std::vector<std::vector<std::size_t>> by_head(count);
  for (std::size_t i = 0; i < prods.size(); ++i) by_head[prods[i].head].push_back(i);
  std::vector<bool> seen(count, false);
  std::vector<std::uint32_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    auto a = stack.back();
    stack.pop_back();
    for (auto i : by_head[a])
      for (const auto& x : prods[i].body)
        if (x.nonterminal && !seen[x.id]) {
          seen[x.id] = true;
          stack.push_back(x.id);
        }
  }
  return seen;
}

inline std::vector<bool> nullable(std::size_t count, const std::vector<Production>& prods) {
  std::vector<bool> null(count, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : prods) {
      if (null[p.head]) continue;
      bool ok = true;
      for (const auto& x : p.body)
        if (!x.nonterminal || !null[x.id]) {
          ok = false;
          break;
        }
      if (ok) {
        null[p.head] = true;
        changed = true;
      }
    }
  }
  return null;
}

/// Unit-reachability closure: for each A, all B with A =>* B by unit rules.
inline std::vector<std::vector<std::uint32_t>> unit_closure(std::size_t count,
                                                            const std::vector<Production>& prods) {
  std::vector<std::vector<std::uint32_t>> unit(count);
  for (const auto& p : prods)
    if (p.body.size() == 1 && p.body[0].nonterminal && p.body[0].id != p.head)
      unit[p.head].push_back(p.body[0].id);
  std::vector<std::vector<std::uint32_t>> out(count);
  std::vector<std::uint32_t> mark(count, std::numeric_limits<std::uint32_t>::max());
  for (std::uint32_t a = 0; a < count; ++a) {
    std::vector<std::uint32_t> stack{a};
    mark[a] = a;
    while (!stack.empty()) {
      auto b = stack.back();
      stack.pop_back();
      out[a].push_back(b);
      for (auto c : unit[b])
        if (mark[c] != a) {
          mark[c] = a;
          stack.push_back(c);
        }
    }
  }
  return out;
}

inline std::vector<Production> eliminate_units(std::size_t count,
                                               const std::vector<Production>& prods) {
  auto closure = unit_closure(count, prods);
  std::vector<std::vector<std::size_t>> by_head(count);
  for (std::size_t i = 0; i < prods.size(); ++i) {
    const auto& p = prods[i];
    if (p.body.size() == 1 && p.body[0].nonterminal) continue;
    by_head[p.head].push_back(i);
  }
  std::vector<Production> out;
  for (std::uint32_t a = 0; a < count; ++a) {
    std::set<std::vector<GSym>> bodies;
    for (auto b : closure[a])
      for (auto i : by_head[b]) bodies.insert(prods[i].body);
    for (const auto& body : bodies) out.push_back({a, body});
  }
  return out;
}

/// Keeps productive and reachable nonterminals only, renumbering densely with
/// the start symbol first. Returns the number of surviving nonterminals.
struct Pruned {
  std::size_t count = 0;
  std::uint32_t start = 0;
  bool empty = true;
  std::vector<Production> prods;
  std::vector<std::uint32_t> old_of_new;
};

inline Pruned prune(std::size_t count, std::uint32_t start, const std::vector<Production>& prods) {
  Pruned r;
  auto prod = productive(count, prods);
  if (!prod[start]) {
    r.count = 1;
    r.old_of_new = {start};
    return r;
  }
  std::vector<Production> kept;
  for (const auto& p : prods) {
    bool ok = prod[p.head];
    for (const auto& x : p.body) ok = ok && (!x.nonterminal || prod[x.id]);
    if (ok) kept.push_back(p);
  }
  auto reach = reachable(count, start, kept);
  std::vector<std::uint32_t> remap(count, std::numeric_limits<std::uint32_t>::max());
  remap[start] = 0;
  r.old_of_new.push_back(start);
  for (std::uint32_t a = 0; a < count; ++a)
    if (a != start && reach[a]) {
      remap[a] = static_cast<std::uint32_t>(r.old_of_new.size());
      r.old_of_new.push_back(a);
    }
  std::set<Production> seen;
  for (const auto& p : kept) {
    if (!reach[p.head]) continue;
    Production q{remap[p.head], {}};
    for (const auto& x : p.body) q.body.push_back(x.nonterminal ? GSym::n(remap[x.id]) : x);
    if (seen.insert(q).second) r.prods.push_back(std::move(q));
  }
  r.count = r.old_of_new.size();
  r.start = 0;
  r.empty = false;
  return r;
}

}  // namespace cfg_detail

inline Cnf to_cnf(const Cfg& g) {
  using cfg_detail::prune;
  std::size_t count = g.nonterminal_count();
  std::vector<Production> prods;
  std::map<Sym, std::uint32_t> preterminal;
  std::map<std::vector<GSym>, std::uint32_t> prefix;
  auto pre = [&](Sym x) {
    auto [it, fresh] = preterminal.try_emplace(x, 0);
    if (fresh) {
      it->second = static_cast<std::uint32_t>(count++);
      prods.push_back({it->second, {GSym::t(x)}});
    }
    return it->second;
  };
  // Left-branching binarization with shared prefixes: a prefix nonterminal
  // derives exactly the concatenation of its symbols, whatever the head.
  std::function<std::uint32_t(const std::vector<GSym>&)> prefix_of =
      [&](const std::vector<GSym>& seq) -> std::uint32_t {
    auto it = prefix.find(seq);
    if (it != prefix.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(count++);
    prefix.emplace(seq, id);
    if (seq.size() == 2) {
      prods.push_back({id, seq});
    } else {
      std::vector<GSym> head(seq.begin(), seq.end() - 1);
      prods.push_back({id, {GSym::n(prefix_of(head)), seq.back()}});
    }
    return id;
  };
  for (const auto& p : g.productions()) {
    if (p.body.size() <= 1) {
      prods.push_back(p);
      continue;
    }
    std::vector<GSym> body;
    for (const auto& x : p.body) body.push_back(x.nonterminal ? x : GSym::n(pre(x.id)));
    if (body.size() == 2) {
      prods.push_back({p.head, body});
    } else {
      std::vector<GSym> head(body.begin(), body.end() - 1);
      prods.push_back({p.head, {GSym::n(prefix_of(head)), body.back()}});
    }
  }
  auto null = cfg_detail::nullable(count, prods);
  Cnf r;
  r.nullable = null[g.start()];
  std::vector<Production> noeps;
  for (const auto& p : prods) {
    if (p.body.empty()) continue;
    noeps.push_back(p);
    if (p.body.size() == 2) {
      if (null[p.body[0].id]) noeps.push_back({p.head, {p.body[1]}});
      if (null[p.body[1].id]) noeps.push_back({p.head, {p.body[0]}});
    }
  }
  auto nounit = cfg_detail::eliminate_units(count, noeps);
  auto pr = prune(count, g.start(), nounit);
  r.count = static_cast<std::uint32_t>(pr.count);
  r.start = pr.start;
  r.empty = pr.empty;
  for (const auto& p : pr.prods) {
    if (p.body.size() == 1)
      r.terminal.push_back({p.head, p.body[0].id});
    else
      r.binary.push_back({p.head, p.body[0].id, p.body[1].id});
  }
  return r;
}

/// Converts a normal form back to a grammar (no names).
inline Cfg from_cnf(const Cnf& c) {
  Cfg g;
  for (std::uint32_t i = 1; i < c.count; ++i) g.add_nonterminal();
  g.set_start(c.start);
  for (const auto& t : c.terminal) g.add_production(t.head, {GSym::t(t.symbol)});
  for (const auto& b : c.binary) g.add_production(b.head, {GSym::n(b.left), GSym::n(b.right)});
  if (c.nullable) g.add_production(c.start, {});
  return g;
}

/// True iff the grammar derives no word at all (empty word included).
inline bool language_empty(const Cfg& g) {
  const auto& c = g.cnf();
  return c.empty && !c.nullable;
}

/// Removes useless nonterminals, unit productions and epsilon productions,
/// keeping the shape of the remaining bodies. The result generates
/// language(g) minus the empty word. With `strict`, an empty language or an
/// empty word in the language is reported as an error.
inline Cfg normalize(const Cfg& g, bool strict = false) {
  using namespace cfg_detail;
  const std::size_t count = g.nonterminal_count();
  auto first = prune(count, g.start(), g.productions());
  auto null = nullable(first.count, first.prods);
  if (strict && first.empty) throw Error(ErrorKind::precondition, "grammar language is empty");
  if (strict && null[first.start])
    throw Error(ErrorKind::precondition, "grammar language contains the empty word");
  std::vector<Production> expanded;
  std::set<Production> seen;
  for (const auto& p : first.prods) {
    std::vector<std::size_t> opt;
    for (std::size_t i = 0; i < p.body.size(); ++i)
      if (p.body[i].nonterminal && null[p.body[i].id]) opt.push_back(i);
    if (opt.size() > 20) throw Error(ErrorKind::precondition, "too many nullable symbols in a body");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << opt.size()); ++mask) {
      Production q{p.head, {}};
      std::size_t k = 0;
      for (std::size_t i = 0; i < p.body.size(); ++i) {
        if (k < opt.size() && opt[k] == i) {
          bool drop = (mask >> k) & 1u;
          ++k;
          if (drop) continue;
        }
        q.body.push_back(p.body[i]);
      }
      if (q.body.empty()) continue;
      if (q.body.size() == 1 && q.body[0].nonterminal && q.body[0].id == q.head) continue;
      if (seen.insert(q).second) expanded.push_back(std::move(q));
    }
  }
  auto nounit = eliminate_units(first.count, expanded);
  auto second = prune(first.count, first.start, nounit);
  Cfg out;
  for (std::size_t i = 1; i < second.count; ++i) out.add_nonterminal();
  for (std::size_t i = 0; i < second.count; ++i)
    out.set_name(static_cast<std::uint32_t>(i), g.name(first.old_of_new[second.old_of_new[i]]));
  out.set_start(second.start);
  for (auto& p : second.prods) out.add_production(p.head, std::move(p.body));
  return out;
}

/// Shortest word of the language, lexicographically least among the shortest;
/// nullopt iff the language is empty.
inline std::optional<Word> shortest_word(const Cfg& g) {
  const Cnf& c = g.cnf();
  if (c.nullable) return Word{};
  if (c.empty) return std::nullopt;
  constexpr std::uint64_t inf = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> len(c.count, inf);
  std::vector<std::vector<std::size_t>> uses(c.count);
  for (std::size_t i = 0; i < c.binary.size(); ++i) {
    uses[c.binary[i].left].push_back(i);
    uses[c.binary[i].right].push_back(i);
  }
  using QItem = std::pair<std::uint64_t, std::uint32_t>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pq;
  for (const auto& t : c.terminal)
    if (len[t.head] > 1) {
      len[t.head] = 1;
      pq.push({1, t.head});
    }
  std::vector<bool> done(c.count, false);
  while (!pq.empty()) {
    auto [d, a] = pq.top();
    pq.pop();
    if (done[a] || d != len[a]) continue;
    done[a] = true;
    for (auto i : uses[a]) {
      const auto& b = c.binary[i];
      if (!done[b.left] || !done[b.right]) continue;
      std::uint64_t nd = len[b.left] + len[b.right];
      if (nd < len[b.head]) {
        len[b.head] = nd;
        pq.push({nd, b.head});
      }
    }
  }
  if (len[c.start] == inf) return std::nullopt;
  // Nonterminals needed along optimal rules from the start symbol.
  std::vector<std::vector<std::size_t>> opt(c.count);
  for (std::size_t i = 0; i < c.binary.size(); ++i) {
    const auto& b = c.binary[i];
    if (len[b.left] != inf && len[b.right] != inf && len[b.left] + len[b.right] == len[b.head])
      opt[b.head].push_back(i);
  }
  std::vector<bool> need(c.count, false);
  std::vector<std::uint32_t> stack{c.start}, order;
  need[c.start] = true;
  while (!stack.empty()) {
    auto a = stack.back();
    stack.pop_back();
    order.push_back(a);
    for (auto i : opt[a])
      for (auto x : {c.binary[i].left, c.binary[i].right})
        if (!need[x]) {
          need[x] = true;
          stack.push_back(x);
        }
  }
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return len[x] < len[y]; });
  std::vector<std::optional<Word>> best(c.count);
  for (const auto& t : c.terminal)
    if (need[t.head] && len[t.head] == 1 && (!best[t.head] || Word{t.symbol} < *best[t.head]))
      best[t.head] = Word{t.symbol};
  for (auto a : order) {
    for (auto i : opt[a]) {
      const auto& b = c.binary[i];
      Word cand = concat(*best[b.left], *best[b.right]);
      if (!best[a] || cand < *best[a]) best[a] = std::move(cand);
    }
  }
  return best[c.start];
}

/// Every word of the language with length at most max_len, shortlex order.
/// Exponential in max_len; meant for small bounds.
inline std::vector<Word> enumerate(const Cfg& g, std::size_t max_len) {
  const Cnf& c = g.cnf();
  std::vector<Word> out;
  if (c.nullable) out.push_back({});
  if (c.empty || max_len == 0) return out;
  // words[a][l] = words of length l derived from a
  std::vector<std::vector<std::set<Word>>> words(c.count, std::vector<std::set<Word>>(max_len + 1));
  for (const auto& t : c.terminal) words[t.head][1].insert(Word{t.symbol});
  for (std::size_t l = 2; l <= max_len; ++l)
    for (const auto& b : c.binary)
      for (std::size_t i = 1; i < l; ++i)
        for (const auto& x : words[b.left][i])
          for (const auto& y : words[b.right][l - i]) words[b.head][l].insert(concat(x, y));
  for (std::size_t l = 1; l <= max_len; ++l)
    out.insert(out.end(), words[c.start][l].begin(), words[c.start][l].end());
  return out;
}

/// Applies f to every terminal.
inline Cfg relabel(const Cfg& g, const std::function<Sym(Sym)>& f) {
  Cfg out;
  for (std::size_t i = 1; i < g.nonterminal_count(); ++i) out.add_nonterminal();
  for (std::size_t i = 0; i < g.nonterminal_count(); ++i)
    out.set_name(static_cast<std::uint32_t>(i), g.name(static_cast<std::uint32_t>(i)));
  out.set_start(g.start());
  for (const auto& p : g.productions()) {
    std::vector<GSym> body;
    for (const auto& x : p.body) body.push_back(x.nonterminal ? x : GSym::t(f(x.id)));
    out.add_production(p.head, std::move(body));
  }
  return out;
}

/// Grammar for the reversed language.
inline Cfg reverse(const Cfg& g) {
  Cfg out;
  for (std::size_t i = 1; i < g.nonterminal_count(); ++i) out.add_nonterminal();
  for (std::size_t i = 0; i < g.nonterminal_count(); ++i)
    out.set_name(static_cast<std::uint32_t>(i), g.name(static_cast<std::uint32_t>(i)));
  out.set_start(g.start());
  for (const auto& p : g.productions()) out.add_production(p.head, {p.body.rbegin(), p.body.rend()});
  return out;
}

}  // namespace whsg
