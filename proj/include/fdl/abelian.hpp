#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "fdl/errors.hpp"
#include "fdl/words.hpp"

namespace fdl {

struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;  // row-major

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}

  Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
};

// Smith normal form by elimination with minimal-absolute-value pivots.
// Returns the full diagonal (length min(rows, cols)) with d_1 | d_2 | ...,
// all entries nonnegative.  If V is given it receives the accumulated
// unimodular column transform, so ker(A) is spanned by the columns of V
// whose diagonal entry is zero (or which lie past the diagonal).
inline std::vector<Int> smith_normal_form(IntMatrix A, IntMatrix* V = nullptr) {
  const std::size_t R = A.rows, C = A.cols, N = std::min(R, C);
  IntMatrix vt = IntMatrix::identity(C);

  auto swap_rows = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < C; ++j) std::swap(A.at(x, j), A.at(y, j));
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < R; ++i) std::swap(A.at(i, x), A.at(i, y));
    for (std::size_t i = 0; i < C; ++i) std::swap(vt.at(i, x), vt.at(i, y));
  };
  auto row_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < C; ++j) A.at(dst, j) -= q * A.at(src, j);
  };
  auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < R; ++i) A.at(i, dst) -= q * A.at(i, src);
    for (std::size_t i = 0; i < C; ++i) vt.at(i, dst) -= q * vt.at(i, src);
  };

  for (std::size_t t = 0; t < N; ++t) {
    for (;;) {
      // Minimal nonzero pivot in the trailing submatrix.
      std::size_t pi = R, pj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (A.at(i, j) != 0 && (pi == R || abs(A.at(i, j)) < abs(A.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == R) goto done;
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        Int q = floor_div(A.at(i, t), A.at(t, t));
        row_sub(i, t, q);
        if (A.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        Int q = floor_div(A.at(t, j), A.at(t, t));
        col_sub(j, t, q);
        if (A.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;  // smaller pivot now exists

      // Divisibility fix: pull a non-multiple into row t and re-run.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < R && divides_all; ++i)
        for (std::size_t j = t + 1; j < C && divides_all; ++j)
          if (A.at(i, j) % A.at(t, t) != 0) {
            for (std::size_t jj = 0; jj < C; ++jj) A.at(t, jj) += A.at(i, jj);
            divides_all = false;
          }
      if (divides_all) break;
    }
    if (A.at(t, t) < 0)
      for (std::size_t j = 0; j < C; ++j) A.at(t, j) = -A.at(t, j);
  }
done:
  std::vector<Int> diag(N, Int(0));
  for (std::size_t t = 0; t < N; ++t) diag[t] = A.at(t, t) < 0 ? Int(-A.at(t, t)) : A.at(t, t);
  if (V) *V = std::move(vt);
  return diag;
}

// Basis of the integer kernel {x : A x = 0}, as columns.
inline IntMatrix lattice_kernel(const IntMatrix& A) {
  IntMatrix V;
  std::vector<Int> diag = smith_normal_form(A, &V);
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < A.cols; ++j)
    if (j >= diag.size() || diag[j] == 0) keep.push_back(j);
  IntMatrix K(A.cols, keep.size());
  for (std::size_t i = 0; i < A.cols; ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) K.at(i, j) = V.at(i, keep[j]);
  return K;
}

// Finitely generated abelian group in canonical invariant-factor form.
struct FinAbelian {
  long rank = 0;
  std::vector<Int> torsion;  // d_1 | d_2 | ..., each >= 2

  Int order() const {  // torsion subgroup order
    Int n = 1;
    for (const Int& d : torsion) n *= d;
    return n;
  }

  friend bool operator==(const FinAbelian& x, const FinAbelian& y) {
    return x.rank == y.rank && x.torsion == y.torsion;
  }
  friend bool operator!=(const FinAbelian& x, const FinAbelian& y) { return !(x == y); }
};

// Z^cols / rowspace(M).
inline FinAbelian cokernel(const IntMatrix& M) {
  std::vector<Int> diag = smith_normal_form(M);
  FinAbelian g;
  g.rank = static_cast<long>(M.cols);
  for (const Int& d : diag) {
    if (d != 0) --g.rank;
    if (d > 1) g.torsion.push_back(d);
  }
  return g;
}

// Invariant factors of a direct sum of cyclic groups (order 0 meaning Z,
// order 1 meaning the trivial summand).
inline FinAbelian fin_abelian_from_orders(const std::vector<Int>& orders) {
  IntMatrix m(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) m.at(i, i) = orders[i];
  return cokernel(m);
}

// Kernel of a homomorphism (+)Z_domain -> (+)Z_codomain given by a matrix
// whose column i is the image of the i-th domain generator.  Codomain order
// 0 stands for a Z factor.  Domain orders must be finite (>= 1).
inline FinAbelian kernel_of_map(const std::vector<Int>& domain, const std::vector<Int>& codomain,
                                const IntMatrix& M) {
  const std::size_t n = domain.size(), q = codomain.size();
  if (M.rows != q || M.cols != n) fail(ErrorKind::BadInput, "kernel_of_map matrix shape mismatch");
  for (const Int& d : domain)
    if (d < 1) fail(ErrorKind::BadInput, "domain orders must be finite positive");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      Int x = domain[i] * M.at(j, i);
      if (codomain[j] == 0 ? x != 0 : x % codomain[j] != 0)
        fail(ErrorKind::IllDefinedMap, "columns do not respect the cyclic orders");
    }

  // Lattice L = {x in Z^n : M x = 0 modulo the codomain orders}.
  std::size_t z = 0;
  for (const Int& c : codomain)
    if (c != 0) ++z;
  IntMatrix A(q, n + z);
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t i = 0; i < n; ++i) A.at(j, i) = M.at(j, i);
  std::size_t col = n;
  for (std::size_t j = 0; j < q; ++j)
    if (codomain[j] != 0) A.at(j, col++) = codomain[j];
  IntMatrix ker = lattice_kernel(A);
  const std::size_t t = ker.cols;
  IntMatrix S(n, t);  // spanning set of L
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < t; ++j) S.at(i, j) = ker.at(i, j);

  // The kernel group is L / D with D = diag(domain): relations among the
  // spanning columns are {z : S z in D Z^n}.
  IntMatrix B(n, t + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < t; ++j) B.at(i, j) = S.at(i, j);
    B.at(i, t + i) = domain[i];
  }
  IntMatrix rel = lattice_kernel(B);
  IntMatrix relations(rel.cols, t);  // rows = relations over the t generators
  for (std::size_t r = 0; r < rel.cols; ++r)
    for (std::size_t j = 0; j < t; ++j) relations.at(r, j) = rel.at(j, r);
  return cokernel(relations);
}

// Countable direct sum of cyclic groups with an eventually constant tail:
// position j has order prefix[j] while j < prefix.size(), tail_order beyond.
struct CyclicSum {
  std::vector<Int> prefix;
  Int tail_order = 1;

  Int order_at(std::size_t j) const { return j < prefix.size() ? prefix[j] : tail_order; }

  // Summand orders through position n (positions are 0-indexed here).
  std::vector<Int> truncate(std::size_t n) const {
    std::vector<Int> out;
    for (std::size_t j = 0; j <= n; ++j) out.push_back(order_at(j));
    return out;
  }

  bool trivial() const {
    if (tail_order != 1) return false;
    for (const Int& c : prefix)
      if (c != 1) return false;
    return true;
  }
};

namespace detail {
constexpr long kTrialDivisionBound = 1000000;

// prime -> exponent, by trial division.
inline std::map<Int, int> factorize(Int v) {
  std::map<Int, int> f;
  Int p = 2;
  for (; p <= kTrialDivisionBound && p * p <= v; ++p)
    while (v % p == 0) {
      ++f[p];
      v /= p;
    }
  if (v > 1) {
    if (p * p <= v)
      fail(ErrorKind::FactorizationLimit, "cyclic order exceeds the trial-division bound");
    ++f[v];  // certified prime: no divisor up to sqrt(v)
  }
  return f;
}

// Multiplicity of each prime-power summand; -1 stands for infinitely many.
inline std::map<std::pair<Int, int>, long> summand_multiplicities(const CyclicSum& s) {
  std::map<std::pair<Int, int>, long> mult;
  for (const Int& c : s.prefix)
    for (auto& [p, e] : factorize(c)) ++mult[{p, e}];
  if (s.tail_order > 1)
    for (auto& [p, e] : factorize(s.tail_order)) mult[{p, e}] = -1;
  return mult;
}
}  // namespace detail

// Isomorphism test for cyclic sums: compare prime-power multiplicities,
// with the tail contributing infinite multiplicity.
inline bool is_isomorphic(const CyclicSum& x, const CyclicSum& y) {
  auto mx = detail::summand_multiplicities(x);
  auto my = detail::summand_multiplicities(y);
  std::erase_if(mx, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(my, [](const auto& kv) { return kv.second == 0; });
  return mx == my;
}

}  // namespace fdl
