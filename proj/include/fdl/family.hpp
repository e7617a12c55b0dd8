#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "fdl/errors.hpp"
#include "fdl/stallings.hpp"
#include "fdl/words.hpp"

namespace fdl {

// Multiplying sequence s: s_0 and every ratio s_{n+1}/s_n is a positive
// integer, described by an eventually periodic ratio list.  Unboundedness
// (some ratio > 1 in the period) is part of validity.
class MultiplyingSequence {
 public:
  static MultiplyingSequence validate(Int s0, std::vector<Int> prefix, std::vector<Int> period) {
    if (s0 < 1) fail(ErrorKind::NonIntegralRatio, "s0 must be a positive integer");
    if (period.empty()) fail(ErrorKind::BadInput, "ratio period must be nonempty");
    bool unbounded = false;
    for (const Int& r : prefix)
      if (r < 1) fail(ErrorKind::NonIntegralRatio, "ratios must be positive integers");
    for (const Int& r : period) {
      if (r < 1) fail(ErrorKind::NonIntegralRatio, "ratios must be positive integers");
      if (r > 1) unbounded = true;
    }
    if (!unbounded) fail(ErrorKind::BoundedSequence, "period ratios are all 1, so s_n is bounded");
    MultiplyingSequence s;
    s.s0_ = std::move(s0);
    s.prefix_ = std::move(prefix);
    s.period_ = std::move(period);
    return s;
  }

  const Int& s0() const { return s0_; }
  const std::vector<Int>& prefix() const { return prefix_; }
  const std::vector<Int>& period() const { return period_; }

  const Int& ratio(std::size_t n) const {
    if (n < prefix_.size()) return prefix_[n];
    return period_[(n - prefix_.size()) % period_.size()];
  }

  // s_n, computed exactly.  n must be desk-scale.
  Int value(std::size_t n) const {
    Int v = s0_;
    for (std::size_t i = 0; i < n; ++i) v *= ratio(i);
    return v;
  }

  // s_n when s_n <= cap, nullopt otherwise.  Values are nondecreasing and
  // eventually exceed any cap, so this terminates for arbitrary n.
  std::optional<Int> value_capped(const Int& n, const Int& cap) const {
    Int v = s0_;
    Int i = 0;
    while (i < n) {
      if (v > cap) return std::nullopt;
      v *= ratio(i.get_ui());
      ++i;
    }
    if (v > cap) return std::nullopt;
    return v;
  }

  // Prefix of values s_0, s_1, ... while <= cap.
  std::vector<Int> values_up_to(const Int& cap) const {
    std::vector<Int> vals;
    Int v = s0_;
    std::size_t i = 0;
    while (v <= cap) {
      vals.push_back(v);
      v *= ratio(i++);
    }
    return vals;
  }

  // First index where the value sequences differ, or nullopt if equal.
  // Eventually periodic ratio streams agree everywhere iff they agree up to
  // max prefix length + lcm of period lengths.
  static std::optional<std::size_t> first_difference(const MultiplyingSequence& s,
                                                     const MultiplyingSequence& t) {
    if (s.s0_ != t.s0_) return 0;
    std::size_t lcm = std::lcm(s.period_.size(), t.period_.size());
    std::size_t bound = std::max(s.prefix_.size(), t.prefix_.size()) + lcm;
    for (std::size_t i = 0; i < bound; ++i)
      if (s.ratio(i) != t.ratio(i)) return i + 1;
    return std::nullopt;
  }

  friend bool operator==(const MultiplyingSequence& s, const MultiplyingSequence& t) {
    return !first_difference(s, t).has_value();
  }

 private:
  MultiplyingSequence() = default;
  Int s0_;
  std::vector<Int> prefix_, period_;
};

// Symbolic core graph of H_s (b-ray with an a-cycle of length s_n at depth
// n) or of S_k (b-cycle of length k with a-cycle s_j at position j).  Cycle
// lengths stay symbolic; nothing is materialized.
struct ImplicitCore {
  enum class Kind { Hs, Sk };
  Kind kind;
  long k = 0;  // Sk only
  MultiplyingSequence seq;

  static ImplicitCore hs(MultiplyingSequence s) { return {Kind::Hs, 0, std::move(s)}; }
  static ImplicitCore sk(MultiplyingSequence s, long k) {
    if (k < 1) fail(ErrorKind::BadInput, "S_k needs k >= 1");
    return {Kind::Sk, k, std::move(s)};
  }
};

struct RewriteTriple {
  Int q, r, f;  // m = q*k + r, 0 <= r < k, f = s_m / s_r
};

// (b^k)^q (b^r a^{s_r} b^{-r})^f (b^{-k})^q, which freely reduces to
// b^m a^{s_m} b^{-m}; witnesses b^m a^{s_m} b^{-m} in S_k for m >= k.
inline std::pair<RewriteTriple, Word> sk_rewrite(const MultiplyingSequence& seq, long k, long m) {
  if (k < 1 || m < k) fail(ErrorKind::BadInput, "sk_rewrite needs 1 <= k <= m");
  RewriteTriple t;
  t.q = m / k;
  t.r = m % k;
  Int sr = seq.value(static_cast<std::size_t>(t.r.get_ui()));
  Int sm = seq.value(static_cast<std::size_t>(m));
  t.f = sm / sr;
  Word mid = Word::letter(Letter::B, t.r) * Word::letter(Letter::A, sr) *
             Word::letter(Letter::B, -t.r);
  Word w = Word::letter(Letter::B, t.q * k) * mid.pow(t.f) * Word::letter(Letter::B, -t.q * k);
  return {t, w};
}

// Membership witness entry: the trace crossed the designated non-tree edge
// of the a-cycle at the given depth `count` times (signed), i.e. a factor
// h_depth^count with h_n = b^n a^{s_n} b^{-n}.
struct WitnessRun {
  Int depth;
  Int count;
};

struct HsMembership {
  bool member = false;
  std::vector<WitnessRun> witness;  // meaningful only when member
};

// Deterministic symbolic trace on the H_s core.  State is (depth, offset on
// the a-cycle at that depth); a-cycles longer than the word's total
// a-length cannot wrap and are treated as lines.
inline HsMembership hs_member(const MultiplyingSequence& seq, const Word& w) {
  if (!w.over_free_factor())
    fail(ErrorKind::NonFreeFactorWord, "H_s membership needs a word over {a,b}");
  Int aweight = 0;
  for (const Run& r : w.runs())
    if (r.letter == Letter::A) aweight += abs(r.exp);
  std::vector<Int> vals = seq.values_up_to(aweight);  // s_n for n < K only
  Int K = static_cast<long>(vals.size());

  Int depth = 0, offset = 0;
  std::vector<WitnessRun> witness;
  for (const Run& r : w.runs()) {
    if (r.letter == Letter::B) {
      if (offset != 0) return {};  // inside an a-cycle, no b-edge
      depth += r.exp;
      if (depth < 0) return {};  // below the base of the ray
    } else {
      if (depth < K) {
        const Int& s = vals[depth.get_ui()];
        Int crossings = floor_div(offset + r.exp, s);
        offset = floor_mod(offset + r.exp, s);
        if (crossings != 0) witness.push_back({depth, crossings});
      } else {
        offset += r.exp;  // cycle longer than the word: a line
      }
    }
  }
  if (depth == 0 && offset == 0) return {true, std::move(witness)};
  return {};
}

inline bool hs_member_bool(const MultiplyingSequence& seq, const Word& w) {
  return hs_member(seq, w).member;
}

// Substitutes h_n = b^n a^{s_n} b^{-n} into a witness and reduces; for a
// valid witness of w this reconstructs w.
inline Word witness_to_word(const MultiplyingSequence& seq, const std::vector<WitnessRun>& wit,
                            bool mirrored = false) {
  Word out;
  Letter la = mirrored ? Letter::Abar : Letter::A;
  Letter lb = mirrored ? Letter::Bbar : Letter::B;
  for (const WitnessRun& e : wit) {
    Int s = seq.value(e.depth.get_ui());
    out = out * Word::letter(lb, e.depth) * Word::letter(la, e.count * s) *
          Word::letter(lb, -e.depth);
  }
  return out;
}

// Symbolic trace on the S_k core: depth is taken modulo k.
inline bool sk_member(const MultiplyingSequence& seq, long k, const Word& w) {
  if (k < 1) fail(ErrorKind::BadInput, "S_k needs k >= 1");
  if (!w.over_free_factor())
    fail(ErrorKind::NonFreeFactorWord, "S_k membership needs a word over {a,b}");
  Int aweight = 0;
  for (const Run& r : w.runs())
    if (r.letter == Letter::A) aweight += abs(r.exp);

  std::vector<std::optional<Int>> s_at(static_cast<std::size_t>(k));
  for (long j = 0; j < k; ++j) s_at[j] = seq.value_capped(j, aweight);

  Int pos = 0, offset = 0;  // position on the b-cycle, offset on its a-cycle
  for (const Run& r : w.runs()) {
    if (r.letter == Letter::B) {
      if (offset != 0) return false;
      pos = floor_mod(pos + r.exp, k);
    } else {
      const std::optional<Int>& s = s_at[pos.get_ui()];
      if (s)
        offset = floor_mod(offset + r.exp, *s);
      else
        offset += r.exp;
    }
  }
  return pos == 0 && offset == 0;
}

// Explicit folded graph of an implicit core, for cross-checks and export.
// The H_s core is truncated at depth_cap.
inline LabeledGraph materialize(const ImplicitCore& core, long depth_cap = 4,
                                long size_cap = kDefaultVertexCap) {
  long depths = core.kind == ImplicitCore::Kind::Hs ? depth_cap + 1 : core.k;
  if (depths < 1) fail(ErrorKind::BadInput, "materialize needs at least depth 0");
  Int count = depths;
  std::vector<Int> svals(static_cast<std::size_t>(depths));
  for (long n = 0; n < depths; ++n) {
    auto v = core.seq.value_capped(n, size_cap);
    if (!v) fail(ErrorKind::SizeCap, "a-cycle length exceeds the size cap");
    svals[n] = *v;
    count += svals[n] - 1;
    if (count > size_cap) fail(ErrorKind::SizeCap, "materialized core exceeds the size cap");
  }

  std::vector<Edge> edges;
  int nv = static_cast<int>(depths);  // ray / b-cycle vertices come first
  for (long n = 0; n < depths; ++n) {
    if (core.kind == ImplicitCore::Kind::Hs) {
      if (n + 1 < depths) edges.push_back({static_cast<int>(n), static_cast<int>(n + 1), Letter::B});
    } else {
      edges.push_back({static_cast<int>(n), static_cast<int>((n + 1) % core.k), Letter::B});
    }
    long len = static_cast<long>(svals[n].get_ui());
    int prev = static_cast<int>(n);
    for (long i = 1; i < len; ++i) {
      edges.push_back({prev, nv, Letter::A});
      prev = nv++;
    }
    edges.push_back({prev, static_cast<int>(n), Letter::A});
  }
  return LabeledGraph(nv, 0, std::move(edges)).fold();
}

// Recovers s_n from any H_s membership oracle by enumerating p until
// b^n a^p b^{-n} is accepted; terminates because h_n is a member.
inline Int recover_sequence(const std::function<bool(const Word&)>& member_oracle, long n) {
  for (Int p = 1;; ++p) {
    Word w = Word::letter(Letter::B, n) * Word::letter(Letter::A, p) * Word::letter(Letter::B, -n);
    if (member_oracle(w)) return p;
  }
}

// True iff s_0 and every ratio is a power of p, the criterion for
// G_s being residually a finite p-group.
inline bool is_residually_p(const MultiplyingSequence& seq, const Int& p) {
  if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) fail(ErrorKind::NotPrime, "p must be prime");
  auto power_of_p = [&](Int v) {
    while (v % p == 0) v /= p;
    return v == 1;
  };
  if (!power_of_p(seq.s0())) return false;
  for (const Int& r : seq.prefix())
    if (!power_of_p(r)) return false;
  for (const Int& r : seq.period())
    if (!power_of_p(r)) return false;
  return true;
}

}  // namespace fdl
