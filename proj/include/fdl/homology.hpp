#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fdl/abelian.hpp"
#include "fdl/errors.hpp"
#include "fdl/family.hpp"
#include "fdl/words.hpp"

namespace fdl {

// The quotient G_s / <<a^m, abar^m>>.
struct QuotientSpec {
  MultiplyingSequence seq;
  Int m;

  QuotientSpec(MultiplyingSequence s, Int mod) : seq(std::move(s)), m(std::move(mod)) {
    if (m < 1) fail(ErrorKind::BadInput, "modulus m must be positive");
  }
};

// H_1 = Z^2 x Z_m x Z_gcd(m, s_0), in invariant-factor form.
inline FinAbelian h1_quotient(const QuotientSpec& q) {
  Int g = gcd(q.m, q.seq.s0());
  return fin_abelian_from_orders({Int(0), Int(0), q.m, g});
}

// H_2 = (+)_{j>=1} Z_{m/gcd(m,s_j)}.  The summand orders are eventually
// constant because gcd(m, s_j) is a nondecreasing divisor of m; the prefix
// runs to the stabilization index.  prefix[i] is the summand at j = i+1.
inline CyclicSum h2_quotient(const QuotientSpec& q) {
  CyclicSum sum;
  if (q.m == 1) return sum;
  const std::size_t P = q.seq.period().size();
  const std::size_t L = std::max<std::size_t>(q.seq.prefix().size(), 1);
  Int residue = floor_mod(q.seq.s0(), q.m);  // s_j mod m suffices for the gcd
  std::vector<Int> gs{gcd(q.m, q.seq.s0())};  // gs[j] = gcd(m, s_j)
  for (std::size_t j = 1;; ++j) {
    residue = floor_mod(residue * q.seq.ratio(j - 1), q.m);
    gs.push_back(residue == 0 ? q.m : gcd(q.m, residue));
    if (gs[j] == q.m || (j >= L + P && gs[j] == gs[j - P])) {
      std::size_t stable = gs[j] == q.m ? j : j - P;
      for (std::size_t i = 1; i < stable; ++i) sum.prefix.push_back(q.m / gs[i]);
      sum.tail_order = q.m / gs[stable];
      return sum;
    }
  }
}

// Abelianized-presentation oracle for H_1: cokernel of the relations
// s_n (e_a - e_abar) for n <= N together with m e_a and m e_abar, over the
// generators a, b, abar, bbar.
inline FinAbelian h1_oracle(const QuotientSpec& q, std::size_t N) {
  IntMatrix M(N + 3, 4);
  for (std::size_t n = 0; n <= N; ++n) {
    Int s = q.seq.value(n);
    M.at(n, 0) = s;
    M.at(n, 2) = -s;
  }
  M.at(N + 1, 0) = q.m;
  M.at(N + 2, 2) = q.m;
  return cokernel(M);
}

// Mayer-Vietoris oracle for H_2 at truncation N: the kernel of
// phi : (+)_{j=0..N} Z_{m/gcd(m,s_j)} -> H_1(F-hat) (+) H_1(Fbar-hat),
// phi(h_j) = (s_j, s_j) in the two Z_m torsion factors and 0 in the free
// factors (carried as zero rows).
inline FinAbelian h2_oracle(const QuotientSpec& q, std::size_t N) {
  if (N < 1) fail(ErrorKind::BadInput, "h2_oracle needs N >= 1");
  std::vector<Int> domain, codomain{Int(0), Int(0), q.m, q.m};
  IntMatrix M(4, N + 1);
  for (std::size_t j = 0; j <= N; ++j) {
    Int s = q.seq.value(j);
    domain.push_back(q.m / gcd(q.m, s));
    M.at(2, j) = floor_mod(s, q.m);
    M.at(3, j) = floor_mod(s, q.m);
  }
  return kernel_of_map(domain, codomain, M);
}

struct DistinguishReport {
  enum class Kind { H1, H2 };
  std::size_t k = 0;  // first index where the sequences differ
  Int m;              // chosen modulus, max(s_k, t_k)
  Kind kind = Kind::H1;
  FinAbelian h1_left, h1_right;  // kind == H1
  CyclicSum h2_left, h2_right;   // kind == H2
  bool non_isomorphic = false;
};

// Certifies G_s and G_t non-isomorphic: quotient both by A_m with m the
// larger of the first differing values; the H_1 formulas differ when k = 0
// and the H_2 formulas differ when k >= 1.
inline DistinguishReport distinguish(const MultiplyingSequence& s, const MultiplyingSequence& t) {
  auto diff = MultiplyingSequence::first_difference(s, t);
  if (!diff) fail(ErrorKind::EqualSequences, "the sequences are equal");
  DistinguishReport rep;
  rep.k = *diff;
  Int sv = s.value(rep.k), tv = t.value(rep.k);
  rep.m = sv > tv ? sv : tv;
  if (rep.k == 0) {
    rep.kind = DistinguishReport::Kind::H1;
    rep.h1_left = h1_quotient({s, rep.m});
    rep.h1_right = h1_quotient({t, rep.m});
    rep.non_isomorphic = rep.h1_left != rep.h1_right;
  } else {
    rep.kind = DistinguishReport::Kind::H2;
    rep.h2_left = h2_quotient({s, rep.m});
    rep.h2_right = h2_quotient({t, rep.m});
    rep.non_isomorphic = !is_isomorphic(rep.h2_left, rep.h2_right);
  }
  return rep;
}

}  // namespace fdl
