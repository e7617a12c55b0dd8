#include <doctest.h>

#include <random>

#include "fdl/homology.hpp"
#include "test_support.hpp"

using namespace fdl;
using testsupport::random_sequence;

namespace {
MultiplyingSequence seq(long s0, std::vector<Int> prefix, std::vector<Int> period) {
  return MultiplyingSequence::validate(s0, std::move(prefix), std::move(period));
}

// the formula's direct sum truncated to j = 1..N, in invariant-factor form
FinAbelian truncated_formula(const CyclicSum& sum, std::size_t N) {
  return fin_abelian_from_orders(sum.truncate(N - 1));
}
}  // namespace

TEST_CASE("h1_quotient formula") {
  CHECK((h1_quotient({seq(2, {}, {2}), 4}) == FinAbelian{2, {2, 4}}));
  CHECK((h1_quotient({seq(2, {}, {2}), 1}) == FinAbelian{2, {}}));
  CHECK((h1_quotient({seq(6, {}, {2}), 4}) == FinAbelian{2, {2, 4}}));
  CHECK((h1_quotient({seq(6, {}, {2}), 4}) == h1_oracle({seq(6, {}, {2}), 4}, 8)));
  CHECK_THROWS_AS((void)QuotientSpec(seq(2, {}, {2}), 0), Error);
}

TEST_CASE("h2_quotient formula") {
  CyclicSum a = h2_quotient({seq(1, {}, {2}), 4});
  CHECK(a.order_at(0) == 2);  // j = 1: 4 / gcd(4, 2)
  CHECK(a.order_at(1) == 1);  // j = 2: 4 / gcd(4, 4)
  CHECK(a.tail_order == 1);
  CHECK(is_isomorphic(a, CyclicSum{{2}, 1}));

  CHECK(h2_quotient({seq(5, {3}, {7}), 1}).trivial());

  CyclicSum c = h2_quotient({seq(1, {}, {3}), 2});
  CHECK(c.tail_order == 2);  // gcd(2, 3^j) = 1 for all j
  CHECK((!is_isomorphic(c, CyclicSum{{}, 1})));
}

TEST_CASE("h1_oracle worked examples") {
  CHECK((h1_oracle({seq(2, {}, {2}), 4}, 0) == FinAbelian{2, {2, 4}}));
  CHECK((h1_oracle({seq(3, {}, {5}), 1}, 3) == FinAbelian{2, {}}));
}

TEST_CASE("h2_oracle worked examples") {
  CHECK((h2_oracle({seq(1, {}, {2}), 4}, 4) == FinAbelian{0, {2}}));
  CHECK((h2_oracle({seq(7, {}, {3}), 1}, 4) == FinAbelian{0, {}}));
  // infinitely many Z_2 summands: the truncation at N = 6 sees six of them
  CHECK((h2_oracle({seq(1, {}, {3}), 2}, 6) == FinAbelian{0, {2, 2, 2, 2, 2, 2}}));
  CHECK_THROWS_AS((void)h2_oracle({seq(1, {}, {2}), 4}, 0), Error);
}

TEST_CASE("formula agrees with the oracle") {
  std::mt19937 rng(401);
  for (int it = 0; it < 20; ++it) {
    auto s = random_sequence(rng);
    for (int rep = 0; rep < 10; ++rep) {
      Int m = 1 + static_cast<long>(rng() % 64);
      QuotientSpec q{s, m};
      CHECK(h1_quotient(q) == h1_oracle(q, 12));
      CHECK(truncated_formula(h2_quotient(q), 12) == h2_oracle(q, 12));
    }
  }
}

TEST_CASE("gcd stabilization and finite support") {
  std::mt19937 rng(409);
  for (int it = 0; it < 40; ++it) {
    auto s = random_sequence(rng);
    Int m = 1 + static_cast<long>(rng() % 64);
    CyclicSum h2 = h2_quotient({s, m});
    // gcd(m, s_j) nondecreasing <=> summand orders m/gcd nonincreasing
    Int prev = m / gcd(m, s.value(0));
    for (std::size_t j = 1; j < h2.prefix.size() + 3; ++j) {
      Int cur = h2.order_at(j - 1);
      CHECK(cur <= prev);
      CHECK(prev % cur == 0);
      CHECK(cur == m / gcd(m, s.value(j)));
      prev = cur;
    }

    // with m = s_k the summands vanish from j = k on
    std::size_t k = 1 + rng() % 5;
    CyclicSum fin = h2_quotient({s, s.value(k)});
    CHECK(fin.tail_order == 1);
    for (std::size_t j = k; j < k + 4; ++j) CHECK(fin.order_at(j - 1) == 1);
  }
}

TEST_CASE("distinguish at index zero uses H1") {
  auto s = seq(2, {}, {2});
  auto t = seq(3, {}, {2});
  DistinguishReport rep = distinguish(s, t);
  CHECK(rep.k == 0);
  CHECK(rep.m == 3);
  CHECK(rep.kind == DistinguishReport::Kind::H1);
  CHECK((rep.h1_left == FinAbelian{2, {3}}));   // gcd(3,2) = 1
  CHECK((rep.h1_right == FinAbelian{2, {3, 3}}));
  CHECK(rep.non_isomorphic);
}

TEST_CASE("distinguish at positive index uses H2") {
  auto s = seq(1, {}, {2});
  auto t = seq(1, {}, {3});
  DistinguishReport rep = distinguish(s, t);
  CHECK(rep.k == 1);
  CHECK(rep.m == 3);
  CHECK(rep.kind == DistinguishReport::Kind::H2);
  CHECK(rep.non_isomorphic);
  CHECK(rep.h2_left.tail_order == 3);   // gcd(3, 2^j) = 1
  CHECK(h2_quotient({t, rep.m}).tail_order == 1);  // summands die at j >= 1

  CHECK_THROWS_AS((void)distinguish(s, seq(1, {}, {2, 2})), Error);
}

TEST_CASE("distinguish verdict is symmetric") {
  std::mt19937 rng(419);
  for (int it = 0; it < 30; ++it) {
    auto s = random_sequence(rng);
    auto t = random_sequence(rng);
    if (s == t) continue;
    DistinguishReport a = distinguish(s, t);
    DistinguishReport b = distinguish(t, s);
    CHECK(a.non_isomorphic);
    CHECK(b.non_isomorphic);
    CHECK(a.k == b.k);
    CHECK(a.m == b.m);
    CHECK(a.kind == b.kind);
  }
}
