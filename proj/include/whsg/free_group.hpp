#pragma once

#include <vector>

#include "whsg/symbol.hpp"

namespace whsg {

/// Element of the free group on the alphabet, stored as a freely reduced
/// word over letters and their formal inverses.
class FreeGroupWord {
 public:
  struct Letter {
    Sym base;
    int sign;  // +1 or -1
    friend bool operator==(const Letter&, const Letter&) = default;
  };

  FreeGroupWord() = default;

  /// The image of a positive word (sign +1) or of its inverse (sign -1).
  static FreeGroupWord embed(const Word& w, int sign = +1) {
    FreeGroupWord r;
    if (sign > 0)
      for (Sym x : w) r.push({x, +1});
    else
      for (auto it = w.rbegin(); it != w.rend(); ++it) r.push({*it, -1});
    return r;
  }

  /// Reduces an arbitrary letter sequence.
  static FreeGroupWord reduce(const std::vector<Letter>& letters) {
    FreeGroupWord r;
    for (const auto& l : letters) r.push(l);
    return r;
  }

  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }

  FreeGroupWord inverse() const {
    FreeGroupWord r;
    r.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back({it->base, -it->sign});
    return r;
  }

  friend FreeGroupWord operator*(const FreeGroupWord& x, const FreeGroupWord& y) {
    FreeGroupWord r = x;
    for (const auto& l : y.letters_) r.push(l);
    return r;
  }

  friend bool operator==(const FreeGroupWord&, const FreeGroupWord&) = default;

 private:
  void push(Letter l) {
    if (!letters_.empty() && letters_.back().base == l.base && letters_.back().sign == -l.sign)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  std::vector<Letter> letters_;
};

}  // namespace whsg
