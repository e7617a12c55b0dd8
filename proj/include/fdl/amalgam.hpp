#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fdl/errors.hpp"
#include "fdl/family.hpp"
#include "fdl/words.hpp"

namespace fdl {

// Maximal block of a G_s word lying in one free factor.
struct Syllable {
  bool barred;  // false: F = <a,b>, true: Fbar
  Word content;
};

inline std::vector<Syllable> syllables(const Word& w) {
  std::vector<Syllable> out;
  std::vector<Run> block;
  bool cur = false;
  for (const Run& r : w.runs()) {
    bool bar = is_barred(r.letter);
    if (!block.empty() && bar != cur) {
      out.push_back({cur, Word::reduce(block)});
      block.clear();
    }
    cur = bar;
    block.push_back(r);
  }
  if (!block.empty()) out.push_back({cur, Word::reduce(block)});
  return out;
}

// One application of the amalgamation relations: a syllable equal to
// h-witness on one side was rewritten as the mirrored witness on the other.
struct PinchLogEntry {
  std::size_t index;  // syllable position at the time of the pinch
  bool from_bar;      // true: an Fbar syllable was moved into F
  std::vector<WitnessRun> witness;
};

struct NormalFormResult {
  bool trivial = false;
  std::vector<Syllable> syllables;
  std::vector<PinchLogEntry> log;
};

// Amalgam normal form by pinching: the leftmost syllable lying in the edge
// subgroup (H_s on the F side, its involution image on the Fbar side) is
// replaced by its mirror and merged with its neighbors.  Each pinch strictly
// decreases the syllable count, so this terminates.
inline NormalFormResult pinch_reduce(const MultiplyingSequence& seq, const Word& w) {
  NormalFormResult res;
  Word cur = w;
  std::size_t guard = syllables(w).size() + 2;
  for (std::size_t step = 0; step <= guard; ++step) {
    std::vector<Syllable> syls = syllables(cur);
    if (syls.size() <= 1) {
      res.trivial = cur.empty();
      res.syllables = std::move(syls);
      return res;
    }
    bool pinched = false;
    for (std::size_t i = 0; i < syls.size() && !pinched; ++i) {
      const Syllable& s = syls[i];
      HsMembership mem = hs_member(seq, s.barred ? s.content.involution() : s.content);
      if (!mem.member) continue;
      Word mirror = witness_to_word(seq, mem.witness, /*mirrored=*/!s.barred);
      Word rebuilt;
      for (std::size_t j = 0; j < syls.size(); ++j)
        rebuilt = rebuilt * (j == i ? mirror : syls[j].content);
      res.log.push_back({i, s.barred, std::move(mem.witness)});
      cur = std::move(rebuilt);
      pinched = true;
    }
    if (!pinched) {
      res.trivial = false;
      res.syllables = std::move(syls);
      return res;
    }
  }
  fail(ErrorKind::BadInput, "pinch reduction failed to terminate");
}

// Word problem for G_s.
inline bool is_trivial(const MultiplyingSequence& seq, const Word& w) {
  return pinch_reduce(seq, w).trivial;
}

// H_s membership reduced to the word problem: w is in H_s iff
// w phi(w)^{-1} represents the identity of G_s.
inline bool membership_via_word_problem(const MultiplyingSequence& seq, const Word& w) {
  if (!w.over_free_factor())
    fail(ErrorKind::NonFreeFactorWord, "membership reduction needs a word over {a,b}");
  return is_trivial(seq, w * w.involution().inverse());
}

// Minimal j with b^p a^j b^{-p} = bbar^p abar^j bbar^{-p} in G_s; the
// intersection <b^p a b^-p> with its barred twin is generated by the s_p-th
// power, so the expected answer is s_p.
inline Int cyclic_intersection_exponent(const MultiplyingSequence& seq, long p, const Int& bound) {
  for (Int j = 1; j <= bound; ++j) {
    Word w = Word::letter(Letter::B, p) * Word::letter(Letter::A, j) *
             Word::letter(Letter::B, -p) * Word::letter(Letter::Bbar, p) *
             Word::letter(Letter::Abar, -j) * Word::letter(Letter::Bbar, -p);
    if (is_trivial(seq, w)) return j;
  }
  fail(ErrorKind::NotFoundWithinBound, "no power identified within the bound");
}

// Minimal r in [1, rmax] with w^r in H_s, if any.
inline std::optional<Int> power_membership(const MultiplyingSequence& seq, const Word& w,
                                           const Int& rmax) {
  if (w.empty()) fail(ErrorKind::BadInput, "power_membership needs a nonidentity word");
  for (Int r = 1; r <= rmax; ++r)
    if (hs_member_bool(seq, w.pow(r))) return r;
  return std::nullopt;
}

// The retraction G_s -> F erasing bars (a-bar -> a, b-bar -> b).
inline Word retract_to_free(const Word& w) {
  std::vector<Run> raw;
  for (const Run& r : w.runs())
    raw.push_back({is_barred(r.letter) ? involute(r.letter) : r.letter, r.exp});
  return Word::reduce(raw);
}

}  // namespace fdl
