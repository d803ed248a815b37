// oracles.hpp
// Test-only reference computations. These deliberately avoid the library's
// algorithms so they can serve as independent checks.

#pragma once

#include <map>
#include <random>
#include <vector>

#include "cork/exactlin.hpp"

namespace oracle {

using cork::IntMatrix;
using cork::Integer;

// Laplace expansion along the first row.
inline Integer cofactor_determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, cc++) = m(i, j);
      }
    }
    Integer term = m(0, c) * cofactor_determinant(minor);
    if (c % 2) total -= term;
    else total += term;
  }
  return total;
}

// det of the C_p chain by the three-term recurrence
// det_k = -2 det_{k-1} - det_{k-2}, seeded from the (-p-2) end.
inline Integer chain_determinant_recurrence(long p) {
  // handles: u_{p-1} = -p-2, then p-2 copies of -2
  Integer prev2 = 1;          // empty
  Integer prev1 = -(p + 2);   // just the end handle
  for (long k = 2; k <= p - 1; ++k) {
    Integer next = -2 * prev1 - prev2;
    prev2 = prev1;
    prev1 = next;
  }
  return prev1;
}

// Eigenvalue-free signature for diagonal matrices.
inline long diagonal_signature(const std::vector<long>& d) {
  long s = 0;
  for (long v : d) s += (v > 0) - (v < 0);
  return s;
}

// Dense Laurent polynomial product by schoolbook convolution over
// exponent -> coefficient maps.
inline std::map<long, long> laurent_multiply(const std::map<long, long>& a,
                                             const std::map<long, long>& b) {
  std::map<long, long> out;
  for (auto [ea, ca] : a)
    for (auto [eb, cb] : b) out[ea + eb] += ca * cb;
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// (t - 1/t)^k by repeated multiplication.
inline std::map<long, long> elliptic_factor(long k) {
  std::map<long, long> acc{{0, 1}};
  for (long i = 0; i < k; ++i) acc = laurent_multiply(acc, {{1, 1}, {-1, -1}});
  return acc;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

// Product of random elementary matrices; determinant +-1 by construction.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 6) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> f(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t a = idx(rng), b = idx(rng);
    if (a == b) {
      u.negate_row(a);
      continue;
    }
    u.add_row_multiple(a, b, f(rng));
  }
  return u;
}

// Seifert matrix of T(2, 2k+1): -1 on the diagonal, +1 just above it.
inline IntMatrix torus_seifert(long k) {
  const std::size_t n = static_cast<std::size_t>(2 * k);
  IntMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    v(i, i) = -1;
    if (i + 1 < n) v(i, i + 1) = 1;
  }
  return v;
}

// Twist knot with k full twists; k = 1 is the figure-eight.
inline IntMatrix twist_seifert(long k) { return IntMatrix{{-1, 1}, {0, k}}; }

// (t^(2k+1) + 1) / (t + 1) by synthetic division, shifted down by t^k.
inline std::map<long, long> torus_quotient(long k) {
  const long deg = 2 * k + 1;
  std::vector<long> num(deg + 1, 0);
  num[0] = 1;
  num[deg] = 1;
  std::vector<long> q(deg, 0);
  long carry = 0;
  for (long i = deg; i >= 1; --i) {
    long c = num[i] - carry;
    q[i - 1] = c;
    carry = c;
  }
  std::map<long, long> out;
  for (long i = 0; i < deg; ++i)
    if (q[i] != 0) out[i - k] = q[i];
  return out;
}

}  // namespace oracle
