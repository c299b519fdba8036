#include "k3cert/numeric.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <stdexcept>

namespace k3cert {

IntMat identity_matrix(int n) {
  IntMat m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat matrix_product(const IntMat& a, const IntMat& b) {
  const int n = static_cast<int>(a.size());
  const int k = static_cast<int>(b.size());
  const int p = k > 0 ? static_cast<int>(b[0].size()) : 0;
  IntMat c(n, IntVec(p, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j)
      for (int t = 0; t < k; ++t) c[i][j] += a[i][t] * b[t][j];
  return c;
}

IntMat matrix_transpose(const IntMat& a) {
  const int n = static_cast<int>(a.size());
  const int p = n > 0 ? static_cast<int>(a[0].size()) : 0;
  IntMat t(p, IntVec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) t[j][i] = a[i][j];
  return t;
}

IntVec matrix_apply(const IntMat& a, const IntVec& v) {
  const int n = static_cast<int>(a.size());
  IntVec r(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < static_cast<int>(v.size()); ++j) r[i] += a[i][j] * v[j];
  return r;
}

Int determinant(const IntMat& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  IntMat a = m;
  Int sign = 1;
  Int prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Int gcd_vector(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

Int floor_rat(const Rat& r) {
  // cpp_rational keeps the denominator positive.
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  Int q = num / den;
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative value");
  return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Int& n, Int* root) {
  if (n < 0) return false;
  Int r = isqrt(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

RatMat to_rational(const IntMat& m) {
  RatMat r(m.size());
  for (size_t i = 0; i < m.size(); ++i) {
    r[i].reserve(m[i].size());
    for (const Int& x : m[i]) r[i].emplace_back(x);
  }
  return r;
}

RatVec symmetric_diagonalize(const RatMat& input) {
  RatMat m = input;
  const int n = static_cast<int>(m.size());
  RatVec diag(n, Rat(0));

  auto swap_basis = [&](int i, int j) {
    std::swap(m[i], m[j]);
    for (int t = 0; t < n; ++t) std::swap(m[t][i], m[t][j]);
  };
  auto add_basis = [&](int i, int j) {
    // e_i <- e_i + e_j
    for (int t = 0; t < n; ++t) m[i][t] += m[j][t];
    for (int t = 0; t < n; ++t) m[t][i] += m[t][j];
  };

  for (int k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      int diag_pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][i] != 0) {
          diag_pivot = i;
          break;
        }
      if (diag_pivot >= 0) {
        swap_basis(k, diag_pivot);
      } else {
        int pi = -1, pj = -1;
        for (int i = k; i < n && pi < 0; ++i)
          for (int j = i + 1; j < n; ++j)
            if (m[i][j] != 0) {
              pi = i;
              pj = j;
              break;
            }
        if (pi < 0) break;  // remaining block is zero
        add_basis(pi, pj);  // makes m[pi][pi] = 2*m[pi][pj] != 0
        if (pi != k) swap_basis(k, pi);
      }
    }
    const Rat p = m[k][k];
    diag[k] = p;
    for (int i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const Rat f = m[i][k] / p;
      for (int t = 0; t < n; ++t) m[i][t] -= f * m[k][t];
      for (int t = 0; t < n; ++t) m[t][i] -= f * m[t][k];
    }
  }
  return diag;
}

bool lex_less(const IntVec& a, const IntVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace k3cert
