#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "whsg/decide_basic.hpp"
#include "whsg/structure.hpp"

namespace whsg {

/// A finite semigroup given by its Cayley table. Elements are indices into
/// `elements`; `generators` lists element indices, in letter order.
struct FiniteSemigroup {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> table;
  std::vector<int> generators;

  int size() const { return static_cast<int>(elements.size()); }
  int mul(int x, int y) const { return table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; }

  int index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (elements[static_cast<std::size_t>(i)] == name) return i;
    throw Error(ErrorKind::unknown_symbol, "element '" + name + "'");
  }

  /// Value of a word whose letters index `generators`.
  int evaluate(const Word& w) const {
    int v = generators.at(w.at(0));
    for (std::size_t i = 1; i < w.size(); ++i) v = mul(v, generators.at(w[i]));
    return v;
  }
};

inline bool is_associative(const FiniteSemigroup& t) {
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y)
      for (int z = 0; z < t.size(); ++z)
        if (t.mul(t.mul(x, y), z) != t.mul(x, t.mul(y, z))) return false;
  return true;
}

/// Throws unless the table is square, associative, and generated.
inline void check_table(const FiniteSemigroup& t) {
  const int n = t.size();
  if (n == 0) throw Error(ErrorKind::invalid_structure, "empty semigroup");
  std::set<std::string> names(t.elements.begin(), t.elements.end());
  if (static_cast<int>(names.size()) != n) throw Error(ErrorKind::parse, "duplicate element name");
  for (const auto& e : t.elements)
    if (e.empty() || e == kSep1Name || e == kSep2Name) throw Error(ErrorKind::reserved_symbol, "element name '" + e + "'");
  if (static_cast<int>(t.table.size()) != n) throw Error(ErrorKind::parse, "table is not square");
  for (const auto& row : t.table) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::parse, "table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error(ErrorKind::parse, "table entry out of range");
  }
  if (!is_associative(t)) throw Error(ErrorKind::invalid_structure, "table is not associative");
  if (t.generators.empty()) throw Error(ErrorKind::invalid_structure, "no generators");
  std::set<int> gens(t.generators.begin(), t.generators.end());
  if (gens.size() != t.generators.size()) throw Error(ErrorKind::parse, "duplicate generator");
  std::set<int> reached = gens;
  std::vector<int> work(gens.begin(), gens.end());
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    for (int g : t.generators)
      if (reached.insert(t.mul(x, g)).second) work.push_back(t.mul(x, g));
  }
  if (static_cast<int>(reached.size()) != n) throw Error(ErrorKind::invalid_structure, "generators do not generate");
}

inline FiniteSemigroup table_from_json(const nlohmann::json& j) {
  FiniteSemigroup t;
  try {
    for (const auto& e : j.at("elements")) t.elements.push_back(e.get<std::string>());
    for (const auto& row : j.at("table")) {
      std::vector<int> r;
      for (const auto& x : row) r.push_back(t.index(x.get<std::string>()));
      t.table.push_back(r);
    }
    for (const auto& g : j.at("generators")) t.generators.push_back(t.index(g.get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, e.what());
  }
  check_table(t);
  return t;
}

inline FiniteSemigroup load_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, e.what());
  }
  return table_from_json(j);
}

inline nlohmann::ordered_json table_to_json(const FiniteSemigroup& t) {
  nlohmann::ordered_json j;
  j["elements"] = t.elements;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.table) {
    std::vector<std::string> r;
    for (int v : row) r.push_back(t.elements[static_cast<std::size_t>(v)]);
    rows.push_back(r);
  }
  j["table"] = rows;
  std::vector<std::string> g;
  for (int x : t.generators) g.push_back(t.elements[static_cast<std::size_t>(x)]);
  j["generators"] = g;
  return j;
}

/// Shortlex-first word over the generator letters for every element.
inline std::vector<Word> table_representatives(const FiniteSemigroup& t) {
  std::vector<std::optional<Word>> rep(static_cast<std::size_t>(t.size()));
  std::vector<Word> layer;
  for (std::size_t i = 0; i < t.generators.size(); ++i) layer.push_back({static_cast<Sym>(i)});
  std::size_t found = 0;
  while (found < rep.size() && !layer.empty()) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      auto& slot = rep[static_cast<std::size_t>(t.evaluate(w))];
      if (slot) continue;
      slot = w;
      ++found;
      // only shortlex-first words are extended; any other word is no shorter
      // than the representative of its value
      for (std::size_t i = 0; i < t.generators.size(); ++i) {
        Word v = w;
        v.push_back(static_cast<Sym>(i));
        next.push_back(v);
      }
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  std::vector<Word> out;
  for (auto& r : rep) out.push_back(*r);
  return out;
}

/// A word-hyperbolic structure for a finite semigroup: one letter per
/// generator, one representative per element, one table production per
/// product.
inline WhStructure structure_from_table(const FiniteSemigroup& t) {
  check_table(t);
  WhStructure s;
  for (int g : t.generators) s.alphabet.push_back(t.elements[static_cast<std::size_t>(g)]);
  const auto rep = table_representatives(t);
  std::vector<Word> sorted = rep;
  std::sort(sorted.begin(), sorted.end(), shortlex_less);
  s.reps = nfa_words(sorted);
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y) {
      Word w = table_word(rep[static_cast<std::size_t>(x)], rep[static_cast<std::size_t>(y)],
                          rep[static_cast<std::size_t>(t.mul(x, y))]);
      std::vector<GSym> body;
      for (Sym c : w) body.push_back(GSym::t(c));
      s.table.add_production(s.table.start(), body);
    }
  for (Sym a : s.letters()) s.assignment.push_back({a});
  return s;
}

enum class Property { monoid, group, commutative, completely_simple, clifford, free };

inline const char* to_string(Property p) {
  switch (p) {
    case Property::monoid: return "monoid";
    case Property::group: return "group";
    case Property::commutative: return "commutative";
    case Property::completely_simple: return "completely-simple";
    case Property::clifford: return "clifford";
    case Property::free: return "free";
  }
  return "?";
}

inline const std::vector<Property>& all_properties() {
  static const std::vector<Property> all{Property::monoid,           Property::group,    Property::commutative,
                                         Property::completely_simple, Property::clifford, Property::free};
  return all;
}

namespace oracle_detail {

inline std::optional<int> identity(const FiniteSemigroup& t) {
  for (int e = 0; e < t.size(); ++e) {
    bool ok = true;
    for (int x = 0; x < t.size() && ok; ++x) ok = t.mul(e, x) == x && t.mul(x, e) == x;
    if (ok) return e;
  }
  return std::nullopt;
}

inline bool idempotent(const FiniteSemigroup& t, int x) { return t.mul(x, x) == x; }

/// S^1 x S^1
inline std::set<int> ideal_of(const FiniteSemigroup& t, int x) {
  std::set<int> r{x};
  for (int s = 0; s < t.size(); ++s) {
    r.insert(t.mul(s, x));
    r.insert(t.mul(x, s));
    for (int u = 0; u < t.size(); ++u) r.insert(t.mul(t.mul(s, x), u));
  }
  return r;
}

}  // namespace oracle_detail

/// Brute-force decision straight from the definitions.
inline Verdict table_decide(const FiniteSemigroup& t, Property p) {
  using namespace oracle_detail;
  const int n = t.size();
  const auto rep = table_representatives(t);
  auto name = [&](int x) { return t.elements[static_cast<std::size_t>(x)]; };
  switch (p) {
    case Property::monoid: {
      auto e = identity(t);
      if (!e) return Verdict::no("no identity element");
      return Verdict::yes("identity " + name(*e)).with("identity", rep[static_cast<std::size_t>(*e)]);
    }
    case Property::group: {
      auto e = identity(t);
      if (!e) return Verdict::no("no identity element");
      for (int x = 0; x < n; ++x) {
        bool inv = false;
        for (int y = 0; y < n && !inv; ++y) inv = t.mul(x, y) == *e && t.mul(y, x) == *e;
        if (!inv) return Verdict::no(name(x) + " has no inverse");
      }
      return Verdict::yes("group").with("identity", rep[static_cast<std::size_t>(*e)]);
    }
    case Property::commutative:
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (t.mul(x, y) != t.mul(y, x)) return Verdict::no(name(x) + " and " + name(y) + " do not commute");
      return Verdict::yes("commutative");
    case Property::completely_simple: {
      for (int x = 0; x < n; ++x)
        if (static_cast<int>(ideal_of(t, x).size()) != n) return Verdict::no("proper ideal generated by " + name(x));
      for (int e = 0; e < n; ++e) {
        if (!idempotent(t, e)) continue;
        bool primitive = true;
        for (int f = 0; f < n && primitive; ++f)
          if (idempotent(t, f) && t.mul(e, f) == f && t.mul(f, e) == f && f != e) primitive = false;
        if (primitive) return Verdict::yes("simple with primitive idempotent " + name(e));
      }
      return Verdict::no("no primitive idempotent");
    }
    case Property::clifford: {
      for (int x = 0; x < n; ++x) {
        bool regular = false;
        for (int y = 0; y < n && !regular; ++y) regular = t.mul(t.mul(x, y), x) == x;
        if (!regular) return Verdict::no(name(x) + " is not regular");
      }
      for (int e = 0; e < n; ++e)
        if (idempotent(t, e))
          for (int x = 0; x < n; ++x)
            if (t.mul(e, x) != t.mul(x, e)) return Verdict::no("idempotent " + name(e) + " is not central");
      return Verdict::yes("regular with central idempotents");
    }
    case Property::free:
      return Verdict::no("finite semigroups are not free");
  }
  return Verdict::no("unknown property");
}

/// Green's relations straight from principal one-sided ideals.
inline bool table_green(const FiniteSemigroup& t, int x, int y, Green rel) {
  if (rel == Green::H) return table_green(t, x, y, Green::R) && table_green(t, x, y, Green::L);
  auto ideal = [&](int z) {
    std::set<int> r{z};
    for (int u = 0; u < t.size(); ++u) r.insert(rel == Green::R ? t.mul(z, u) : t.mul(u, z));
    return r;
  };
  return ideal(x) == ideal(y);
}

/// Every semigroup of order at most max_order up to isomorphism, each with
/// all elements as generators. Elements are named a, b, c, ...
inline std::vector<FiniteSemigroup> semigroup_corpus(int max_order) {
  std::vector<FiniteSemigroup> out;
  for (int n = 1; n <= max_order; ++n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> perms;
    std::iota(perm.begin(), perm.end(), 0);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    std::set<std::vector<int>> seen;
    std::size_t cells = static_cast<std::size_t>(n * n);
    std::vector<int> flat(cells, 0);
    for (;;) {
      FiniteSemigroup t;
      t.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
      for (std::size_t i = 0; i < cells; ++i) t.table[i / static_cast<std::size_t>(n)][i % static_cast<std::size_t>(n)] = flat[i];
      t.elements.resize(static_cast<std::size_t>(n));
      if (is_associative(t)) {
        std::vector<int> best;
        for (const auto& p : perms) {
          // relabel x -> p[x]
          std::vector<int> img(cells);
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
              img[static_cast<std::size_t>(p[static_cast<std::size_t>(x)] * n + p[static_cast<std::size_t>(y)])] =
                  p[static_cast<std::size_t>(t.mul(x, y))];
          if (best.empty() || img < best) best = img;
        }
        if (seen.insert(best).second) {
          FiniteSemigroup c;
          for (int x = 0; x < n; ++x) c.elements.push_back(std::string(1, static_cast<char>('a' + x)));
          c.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
          for (std::size_t i = 0; i < cells; ++i) c.table[i / static_cast<std::size_t>(n)][i % static_cast<std::size_t>(n)] = best[i];
          c.generators.resize(static_cast<std::size_t>(n));
          std::iota(c.generators.begin(), c.generators.end(), 0);
          out.push_back(std::move(c));
        }
      }
      std::size_t k = 0;
      while (k < cells && ++flat[k] == n) flat[k++] = 0;
      if (k == cells) break;
    }
  }
  return out;
}

}  // namespace whsg
