#pragma once

// Brute-force reference implementations used to cross-check the library's
// pruned searches. Deliberately plain: raw box enumeration over int64,
// no slab projection, no reduction theory.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "k3cert/lattice.hpp"

namespace oracle {

using i64 = long long;
using Gram = std::vector<std::vector<i64>>;
using Vec = std::vector<i64>;

inline Gram to_i64(const k3cert::IntMat& m) {
  Gram g(m.size(), std::vector<i64>(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j) g[i][j] = static_cast<i64>(m[i][j]);
  return g;
}

inline i64 form(const Gram& g, const Vec& v, const Vec& w) {
  i64 s = 0;
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j) s += v[i] * g[i][j] * w[j];
  return s;
}

inline i64 form(const Gram& g, const Vec& v) { return form(g, v, v); }

inline void for_each_in_box(int rank, i64 bound, const std::function<void(const Vec&)>& fn) {
  Vec v(rank, 0);
  std::function<void(int)> scan = [&](int i) {
    if (i == rank) {
      fn(v);
      return;
    }
    for (i64 x = -bound; x <= bound; ++x) {
      v[i] = x;
      scan(i + 1);
    }
    v[i] = 0;
  };
  scan(0);
}

inline bool is_zero(const Vec& v) {
  for (i64 x : v)
    if (x != 0) return false;
  return true;
}

// Nonzero v with v.v = 0, |coords| <= bound.
inline bool brute_isotropic(const Gram& g, i64 bound) {
  bool found = false;
  for_each_in_box(static_cast<int>(g.size()), bound, [&](const Vec& v) {
    if (!found && !is_zero(v) && form(g, v) == 0) found = true;
  });
  return found;
}

// Rank-4 sweep with the last coordinate solved from the quadratic, so the
// |coords| <= 200 confirmation stays tractable.
inline bool brute_isotropic_rank4(const Gram& g, i64 bound) {
  for (i64 x0 = -bound; x0 <= bound; ++x0)
    for (i64 x1 = -bound; x1 <= bound; ++x1)
      for (i64 x2 = -bound; x2 <= bound; ++x2) {
        // q(x0..x2, t) = a t^2 + b t + c
        const i64 a = g[3][3];
        i64 b = 0, c = 0;
        const Vec head{x0, x1, x2, 0};
        for (int i = 0; i < 3; ++i) b += 2 * g[3][i] * head[i];
        c = form(g, head);
        if (a == 0) {
          if (b == 0) {
            if (c == 0 && !is_zero(head)) return true;
            continue;
          }
          if (c % b == 0) {
            const i64 t = -c / b;
            if (t >= -bound && t <= bound && !(is_zero(head) && t == 0)) return true;
          }
          continue;
        }
        const i64 disc = b * b - 4 * a * c;
        if (disc < 0) continue;
        const i64 s = static_cast<i64>(std::sqrt(static_cast<double>(disc)));
        for (i64 r = std::max<i64>(0, s - 2); r <= s + 2; ++r) {
          if (r * r != disc) continue;
          for (int sign = -1; sign <= 1; sign += 2) {
            const i64 num = -b + sign * r;
            if (num % (2 * a) != 0) continue;
            const i64 t = num / (2 * a);
            if (t < -bound || t > bound) continue;
            if (is_zero(head) && t == 0) continue;
            return true;
          }
          break;
        }
      }
  return false;
}

// All v with v.v = norm and 0 < deg(v) <= deg_max, degrees against `ample`.
inline std::vector<Vec> brute_norm_vectors(const Gram& g, const Vec& ample, i64 norm, i64 deg_max,
                                           i64 box) {
  std::vector<Vec> out;
  for_each_in_box(static_cast<int>(g.size()), box, [&](const Vec& v) {
    if (form(g, v) != norm) return;
    const i64 deg = form(g, ample, v);
    if (deg > 0 && deg <= deg_max) out.push_back(v);
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Does some nonzero v in the box have v.v = n?
inline bool brute_represents(const Gram& g, i64 n, i64 box) {
  bool found = false;
  for_each_in_box(static_cast<int>(g.size()), box, [&](const Vec& v) {
    if (!found && !is_zero(v) && form(g, v) == n) found = true;
  });
  return found;
}

// All (-2)-classes of positive ample degree found in the box.
inline std::vector<Vec> brute_positive_roots(const Gram& g, const Vec& ample, i64 box) {
  std::vector<Vec> roots;
  for_each_in_box(static_cast<int>(g.size()), box, [&](const Vec& r) {
    if (form(g, r) == -2 && form(g, ample, r) > 0) roots.push_back(r);
  });
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Boxes are heuristics; a verdict is only trusted when doubling the box does
// not change the root list below the relevant degree.
inline bool root_list_stable(const Gram& g, const Vec& ample, i64 box, i64 degree_cap) {
  auto trim = [&](std::vector<Vec> roots) {
    std::vector<Vec> out;
    for (auto& r : roots)
      if (form(g, ample, r) <= degree_cap) out.push_back(std::move(r));
    return out;
  };
  return trim(brute_positive_roots(g, ample, box)) ==
         trim(brute_positive_roots(g, ample, 2 * box));
}

inline bool nef_against(const Gram& g, const Vec& ample, const std::vector<Vec>& roots,
                        const Vec& v) {
  if (is_zero(v)) return true;
  if (form(g, v) < 0 || form(g, ample, v) < 0) return false;
  for (const auto& r : roots)
    if (form(g, v, r) < 0) return false;
  return true;
}

// Effectivity in rank 2: nef part plus nonnegative root combination.
inline bool brute_effective_rank2(const Gram& g, const Vec& ample, const std::vector<Vec>& roots,
                                  const Vec& v) {
  if (is_zero(v)) return true;
  const i64 deg = form(g, ample, v);
  if (deg <= 0) return false;
  if (form(g, v) >= -2) return true;
  std::function<bool(size_t, Vec)> descend = [&](size_t i, Vec rest) -> bool {
    const i64 rest_deg = form(g, ample, rest);
    if (rest_deg < 0) return false;
    if (is_zero(rest) || nef_against(g, ample, roots, rest)) return true;
    if (i == roots.size()) return false;
    const i64 d = form(g, ample, roots[i]);
    for (i64 m = rest_deg / d; m >= 0; --m) {
      Vec next = rest;
      for (size_t t = 0; t < next.size(); ++t) next[t] -= m * roots[i][t];
      if (descend(i + 1, next)) return true;
    }
    return false;
  };
  return descend(0, v);
}

inline bool brute_minimal_nef_rank2(const Gram& g, const Vec& ample,
                                    const std::vector<Vec>& roots, const Vec& v, i64 box) {
  if (is_zero(v) || !nef_against(g, ample, roots, v)) return false;
  const i64 deg_v = form(g, ample, v);
  bool minimal = true;
  for_each_in_box(2, box, [&](const Vec& m) {
    if (!minimal || is_zero(m) || m == v) return;
    const i64 deg_m = form(g, ample, m);
    if (deg_m <= 0 || deg_m >= deg_v) return;
    if (!nef_against(g, ample, roots, m)) return;
    Vec rest(v.size());
    for (size_t i = 0; i < v.size(); ++i) rest[i] = v[i] - m[i];
    if (brute_effective_rank2(g, ample, roots, rest)) minimal = false;
  });
  return minimal;
}

// Random even rank-2 Gram of signature (1,1).
inline k3cert::IntMat random_hyperbolic_rank2(std::mt19937& rng) {
  std::uniform_int_distribution<int> small(-5, 5), mid(-8, 8);
  for (;;) {
    const int d = small(rng), b = small(rng), a = mid(rng);
    const long long det = 4LL * d * b - 1LL * a * a;
    if (det >= 0) continue;
    return {{2 * d, a}, {a, 2 * b}};
  }
}

inline k3cert::IntMat random_unimodular(int n, std::mt19937& rng, int shears = 6) {
  using k3cert::Int;
  k3cert::IntMat t = k3cert::identity_matrix(n);
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2);
  for (int s = 0; s < shears; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const int k = coef(rng);
    for (int col = 0; col < n; ++col) t[i][col] += Int(k) * t[j][col];
  }
  return t;
}

}  // namespace oracle
