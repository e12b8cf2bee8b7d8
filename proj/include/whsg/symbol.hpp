#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace whsg {

/// Terminal symbols are small integers. The numeric order is the declared
/// order: every shortest-then-lexicographic choice in the library compares
/// symbols by value.
using Sym = std::uint32_t;
using Word = std::vector<Sym>;

/// The two separators of a multiplication-table word u #1 v #2 w^rev. They
/// sort after every alphabet letter.
inline constexpr Sym kSep1 = 0xFFFFFF00u;
inline constexpr Sym kSep2 = 0xFFFFFF01u;

inline bool is_separator(Sym s) { return s == kSep1 || s == kSep2; }

inline Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

inline Word concat(const Word& a, const Word& b) {
  Word r;
  r.reserve(a.size() + b.size());
  r.insert(r.end(), a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

/// Shortest first, then lexicographic.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

/// Table word u #1 v #2 w^rev.
inline Word table_word(const Word& u, const Word& v, const Word& w) {
  Word r;
  r.reserve(u.size() + v.size() + w.size() + 2);
  r.insert(r.end(), u.begin(), u.end());
  r.push_back(kSep1);
  r.insert(r.end(), v.begin(), v.end());
  r.push_back(kSep2);
  r.insert(r.end(), w.rbegin(), w.rend());
  return r;
}

enum class ErrorKind {
  parse,
  reserved_symbol,
  unknown_symbol,
  assignment_not_in_reps,
  table_not_contained,
  precondition,
  not_in_reps,
  invalid_structure,
  cap_exceeded,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse: return "parse error";
    case ErrorKind::reserved_symbol: return "reserved symbol";
    case ErrorKind::unknown_symbol: return "unknown symbol";
    case ErrorKind::assignment_not_in_reps: return "assignment word not in L";
    case ErrorKind::table_not_contained: return "table not inside L#1L#2L^rev";
    case ErrorKind::precondition: return "precondition violated";
    case ErrorKind::not_in_reps: return "operand not in L";
    case ErrorKind::invalid_structure: return "invalid structure";
    case ErrorKind::cap_exceeded: return "enumeration cap exceeded";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace whsg
