#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fdl/errors.hpp"

namespace fdl {

using Int = mpz_class;

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int floor_mod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// The four generators of G_s = F *_H F-bar with F = <a,b>.  The barred copy
// is written c := a-bar, d := b-bar in the text syntax.
enum class Letter : std::uint8_t { A = 0, B = 1, Abar = 2, Bbar = 3 };

inline char letter_char(Letter l) {
  switch (l) {
    case Letter::A: return 'a';
    case Letter::B: return 'b';
    case Letter::Abar: return 'c';
    case Letter::Bbar: return 'd';
  }
  return '?';
}

inline Letter involute(Letter l) {
  switch (l) {
    case Letter::A: return Letter::Abar;
    case Letter::B: return Letter::Bbar;
    case Letter::Abar: return Letter::A;
    case Letter::Bbar: return Letter::B;
  }
  return l;
}

inline bool is_barred(Letter l) { return l == Letter::Abar || l == Letter::Bbar; }

struct Run {
  Letter letter;
  Int exp;  // nonzero

  friend bool operator==(const Run& x, const Run& y) {
    return x.letter == y.letter && x.exp == y.exp;
  }
};

// Freely reduced word in run-length form.  Instances are always canonical:
// adjacent runs carry distinct letters and no run has exponent zero, so
// equality of group elements is componentwise equality.
class Word {
 public:
  Word() = default;

  static Word letter(Letter l, Int e = 1) {
    Word w;
    if (e != 0) w.runs_.push_back({l, std::move(e)});
    return w;
  }

  // Canonicalizes an arbitrary run sequence (free reduction).
  static Word reduce(const std::vector<Run>& raw) {
    Word w;
    for (const Run& r : raw) w.push_reduced(r.letter, r.exp);
    return w;
  }

  const std::vector<Run>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }

  Int length() const {
    Int n = 0;
    for (const Run& r : runs_) n += abs(r.exp);
    return n;
  }

  Word inverse() const {
    Word w;
    w.runs_.reserve(runs_.size());
    for (auto it = runs_.rbegin(); it != runs_.rend(); ++it)
      w.runs_.push_back({it->letter, -it->exp});
    return w;
  }

  friend Word operator*(const Word& x, const Word& y) {
    Word w = x;
    for (const Run& r : y.runs_) w.push_reduced(r.letter, r.exp);
    return w;
  }

  // Swaps each letter with its barred partner (the involution a<->a-bar,
  // b<->b-bar of the double).
  Word involution() const {
    Word w;
    w.runs_.reserve(runs_.size());
    for (const Run& r : runs_) w.runs_.push_back({involute(r.letter), r.exp});
    return w;
  }

  bool over_free_factor() const {
    for (const Run& r : runs_)
      if (is_barred(r.letter)) return false;
    return true;
  }

  bool over_bar_factor() const {
    for (const Run& r : runs_)
      if (!is_barred(r.letter)) return false;
    return true;
  }

  Int b_exponent_sum() const {
    if (!over_free_factor())
      fail(ErrorKind::NonFreeFactorWord, "b_exponent_sum needs a word over {a,b}");
    Int s = 0;
    for (const Run& r : runs_)
      if (r.letter == Letter::B) s += r.exp;
    return s;
  }

  // w = conjugator * core * conjugator^{-1} with core cyclically reduced.
  std::pair<Word, Word> cyclic_reduce() const {
    std::vector<Run> rs = runs_;
    Word conj;
    std::size_t lo = 0, hi = rs.size();
    while (hi - lo >= 2) {
      Run& f = rs[lo];
      Run& l = rs[hi - 1];
      if (f.letter != l.letter || sgn(f.exp) == sgn(l.exp)) break;
      Int t = std::min(abs(f.exp), abs(l.exp));
      int s = sgn(f.exp);
      conj = conj * Word::letter(f.letter, s * t);
      f.exp -= s * t;
      l.exp += s * t;
      if (f.exp == 0) ++lo;
      if (l.exp == 0) --hi;
    }
    Word core;
    core.runs_.assign(rs.begin() + static_cast<std::ptrdiff_t>(lo),
                      rs.begin() + static_cast<std::ptrdiff_t>(hi));
    return {core, conj};
  }

  // w^e.  Cheap when the cyclic core is a single run; otherwise the core is
  // materialized |e| times, guarded by a run-count cap.
  Word pow(const Int& e) const {
    if (e == 0 || runs_.empty()) return Word();
    if (e == 1) return *this;
    if (e == -1) return inverse();
    auto [core, conj] = cyclic_reduce();
    if (core.runs_.size() == 1) {
      const Run& r = core.runs_.front();
      return conj * Word::letter(r.letter, r.exp * e) * conj.inverse();
    }
    Int n = abs(e);
    if (n * static_cast<long>(core.runs_.size()) > 1000000)
      fail(ErrorKind::SizeCap, "word power too large to materialize");
    Word base = e > 0 ? core : core.inverse();
    Word acc;
    for (Int i = 0; i < n; ++i) acc = acc * base;
    return conj * acc * conj.inverse();
  }

  friend bool operator==(const Word& x, const Word& y) { return x.runs_ == y.runs_; }
  friend bool operator!=(const Word& x, const Word& y) { return !(x == y); }

  friend bool operator<(const Word& x, const Word& y) {
    const auto &a = x.runs_, &b = y.runs_;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (a[i].letter != b[i].letter) return a[i].letter < b[i].letter;
      if (a[i].exp != b[i].exp) return a[i].exp < b[i].exp;
    }
    return a.size() < b.size();
  }

 private:
  static int sgn(const Int& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

  void push_reduced(Letter l, const Int& e) {
    if (e == 0) return;
    if (!runs_.empty() && runs_.back().letter == l) {
      runs_.back().exp += e;
      if (runs_.back().exp == 0) runs_.pop_back();
      return;
    }
    runs_.push_back({l, e});
  }

  std::vector<Run> runs_;
};

inline Word reduce(const Word& w) { return w; }  // Words are canonical by construction

// ---------------------------------------------------------------------------
// Text syntax: a, b, c (= a-bar), d (= b-bar); uppercase means inverse;
// optional caret exponents, e.g. "a^5 B c^-3".
// ---------------------------------------------------------------------------

inline Word parse_word(const std::string& text) {
  std::vector<Run> raw;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    char ch = text[i];
    Letter l;
    int sign = std::islower(static_cast<unsigned char>(ch)) ? 1 : -1;
    switch (std::tolower(static_cast<unsigned char>(ch))) {
      case 'a': l = Letter::A; break;
      case 'b': l = Letter::B; break;
      case 'c': l = Letter::Abar; break;
      case 'd': l = Letter::Bbar; break;
      default:
        fail(ErrorKind::BadInput, std::string("unexpected character '") + ch + "' in word");
    }
    ++i;
    Int e = 1;
    skip_ws();
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip_ws();
      std::string digits;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) digits += text[i++];
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        digits += text[i++];
      if (digits.empty() || digits == "-" || digits == "+")
        fail(ErrorKind::BadInput, "missing exponent after '^'");
      e = Int(digits);
    }
    raw.push_back({l, sign * e});
    skip_ws();
  }
  return Word::reduce(raw);
}

inline std::string format_word(const Word& w) {
  std::string out;
  for (const Run& r : w.runs()) {
    char c = letter_char(r.letter);
    Int mag = abs(r.exp);
    out += r.exp > 0 ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (mag != 1) {
      out += '^';
      out += mag.get_str();
    }
  }
  return out;
}

}  // namespace fdl
