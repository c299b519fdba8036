#include "binary_forms.hpp"

#include <stdexcept>

#include "k3cert/errors.hpp"

namespace k3cert::detail {

namespace {

Int mod_pos(const Int& x, const Int& m) {
  Int r = x % m;
  if (r < 0) r += m;
  return r;
}

struct Mat2 {
  Int a{1}, b{0}, c{0}, d{1};  // [[a, b], [c, d]]
};

Mat2 mul(const Mat2& u, const Mat2& v) {
  return {u.a * v.a + u.b * v.c, u.a * v.b + u.b * v.d, u.c * v.a + u.d * v.c,
          u.c * v.b + u.d * v.d};
}

Mat2 inverse_unimodular(const Mat2& u) {
  const Int det = u.a * u.d - u.b * u.c;
  if (det == 1) return {u.d, -u.b, -u.c, u.a};
  if (det == -1) return {-u.d, u.b, u.c, -u.a};
  throw Error("internal: matrix is not unimodular");
}

BinaryForm transform(const BinaryForm& f, const Mat2& u) {
  BinaryForm g;
  g.a = f.eval(u.a, u.c);
  g.c = f.eval(u.b, u.d);
  g.b = 2 * f.a * u.a * u.b + f.b * (u.a * u.d + u.b * u.c) + 2 * f.c * u.c * u.d;
  return g;
}

bool is_reduced(const BinaryForm& f, const Int& disc, const Int& sqrt_floor) {
  if (f.b <= 0 || f.b * f.b >= disc) return false;
  const Int two_abs_a = 2 * abs(f.a);
  if (two_abs_a - f.b > sqrt_floor) return false;  // need 2|a| - b < sqrt(disc)
  if (two_abs_a + f.b <= sqrt_floor) return false; // need 2|a| + b > sqrt(disc)
  return true;
}

// One reduction step: (a,b,c) -> (c,b',c') via [[0,-1],[1,n]], n = (b+b')/2c.
std::pair<BinaryForm, Mat2> rho(const BinaryForm& f, const Int& disc, const Int& sqrt_floor) {
  if (f.c == 0) throw Error("internal: rho on a form with vanishing last coefficient");
  const Int abs_c = abs(f.c);
  const Int two_c = 2 * abs_c;
  const Int r = mod_pos(-f.b, two_c);
  Int b_next;
  if (abs_c > sqrt_floor) {
    b_next = (r > abs_c) ? r - two_c : r;  // |b'| minimal
  } else {
    b_next = sqrt_floor - mod_pos(sqrt_floor - r, two_c);  // largest b' <= floor(sqrt(disc))
  }
  BinaryForm g{f.c, b_next, (b_next * b_next - disc) / (4 * f.c)};
  const Int n = (f.b + b_next) / (2 * f.c);
  Mat2 step{0, -1, 1, n};
  return {g, step};
}

// Reduce f, accumulating the transform: f o u = reduced.
std::pair<BinaryForm, Mat2> reduce(BinaryForm f, const Int& disc, const Int& sqrt_floor) {
  Mat2 u;
  for (int guard = 0; guard < 100000; ++guard) {
    if (is_reduced(f, disc, sqrt_floor)) return {f, u};
    auto [g, step] = rho(f, disc, sqrt_floor);
    f = g;
    u = mul(u, step);
  }
  throw Error("internal: binary form reduction did not terminate");
}

// Proper equivalence by cycle comparison; the witness transform satisfies
// f o u = g.
std::optional<Mat2> properly_equivalent(const BinaryForm& f, const BinaryForm& g, const Int& disc,
                                        const Int& sqrt_floor) {
  auto [rf, uf] = reduce(f, disc, sqrt_floor);
  auto [rg, ug] = reduce(g, disc, sqrt_floor);
  const Int cycle_guard = 16 * (sqrt_floor + 2) * (sqrt_floor + 2) + 1000;
  BinaryForm h = rf;
  Mat2 walk;
  for (Int i = 0; i < cycle_guard; ++i) {
    if (h == rg) {
      const Mat2 u = mul(mul(uf, walk), inverse_unimodular(ug));
      if (!(transform(f, u) == g)) throw Error("internal: tracked transform failed to verify");
      return u;
    }
    auto [next, step] = rho(h, disc, sqrt_floor);
    h = next;
    walk = mul(walk, step);
    if (h == rf) return std::nullopt;  // full cycle traversed
  }
  throw Error("internal: reduction cycle walk did not terminate");
}

std::optional<std::array<Int, 2>> solve_linear(const Int& p, const Int& q, const Int& s) {
  // p x + q y = s, p and q not both zero.
  Int old_r = p, r = q;
  Int old_u = 1, u = 0;
  Int old_v = 0, v = 1;
  while (r != 0) {
    const Int quot = old_r / r;
    Int tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_u - quot * u;
    old_u = u;
    u = tmp;
    tmp = old_v - quot * v;
    old_v = v;
    v = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_u = -old_u;
    old_v = -old_v;
  }
  if (old_r == 0 || s % old_r != 0) return std::nullopt;
  const Int scale = s / old_r;
  return std::array<Int, 2>{old_u * scale, old_v * scale};
}

std::optional<std::array<Int, 2>> represent_definite(const BinaryForm& f, const Int& m,
                                                     const Int& disc) {
  // disc < 0, a != 0: 4a*q = (2ax+by)^2 - disc*y^2.
  if (m == 0) return std::nullopt;  // callers handle m = 0 separately
  const Int four_am = 4 * f.a * m;
  if (four_am < 0) return std::nullopt;  // sign(q) = sign(a)
  const Int y_max = isqrt(four_am / (-disc));
  for (Int y = -y_max; y <= y_max; ++y) {
    const Int rhs = four_am + disc * y * y;
    Int t;
    if (!is_perfect_square(rhs, &t)) continue;
    for (int sign = 0; sign < (t == 0 ? 1 : 2); ++sign) {
      const Int tt = sign == 0 ? t : -t;
      const Int num = tt - f.b * y;
      if (num % (2 * f.a) != 0) continue;
      return std::array<Int, 2>{num / (2 * f.a), y};
    }
  }
  return std::nullopt;
}

std::vector<Int> divisors_of(const Int& n) {
  std::vector<Int> divs;
  const Int a = abs(n);
  for (Int d = 1; d * d <= a; ++d) {
    if (a % d != 0) continue;
    divs.push_back(d);
    if (d * d != a) divs.push_back(a / d);
  }
  return divs;
}

std::optional<std::array<Int, 2>> represent_split(const BinaryForm& f, const Int& m, const Int& s) {
  // disc = s^2 > 0: the form factors into two linear forms.
  if (f.a == 0) {
    // q = y (b x + c y), b != 0.
    if (m == 0) return std::array<Int, 2>{1, 0};
    for (const Int& d : divisors_of(m)) {
      for (int sign = 0; sign < 2; ++sign) {
        const Int y = sign == 0 ? d : -d;
        const Int num = m / y - f.c * y;
        if (num % f.b != 0) continue;
        return std::array<Int, 2>{num / f.b, y};
      }
    }
    return std::nullopt;
  }
  if (m == 0) {
    Int x = s - f.b, y = 2 * f.a;
    const Int g = gcd(gcd(abs(x), abs(y)), Int(0));
    if (g > 1) {
      x /= g;
      y /= g;
    }
    return std::array<Int, 2>{x, y};
  }
  // 4a*q = (2ax + (b-s)y)(2ax + (b+s)y) = 4am; loop over factor pairs.
  const Int target = 4 * f.a * m;
  for (const Int& d : divisors_of(target)) {
    for (int sign = 0; sign < 2; ++sign) {
      const Int u = sign == 0 ? d : -d;
      const Int w = target / u;
      const Int ydiff = w - u;  // = 2 s y
      if (ydiff % (2 * s) != 0) continue;
      const Int y = ydiff / (2 * s);
      const Int xnum = u - (f.b - s) * y;
      if (xnum % (2 * f.a) != 0) continue;
      const Int x = xnum / (2 * f.a);
      if (f.eval(x, y) == m) return std::array<Int, 2>{x, y};
    }
  }
  return std::nullopt;
}

std::optional<std::array<Int, 2>> represent_degenerate(const BinaryForm& f, const Int& m) {
  // disc = 0.
  if (f.a == 0) {
    // then b = 0; q = c y^2
    if (f.c == 0) {
      if (m == 0) return std::array<Int, 2>{1, 0};
      return std::nullopt;
    }
    if (m == 0) return std::array<Int, 2>{1, 0};
    if (m % f.c != 0) return std::nullopt;
    Int y;
    if (!is_perfect_square(m / f.c, &y)) return std::nullopt;
    return std::array<Int, 2>{0, y};
  }
  // 4a*q = (2ax + by)^2.
  if (m == 0) {
    Int x = f.b, y = -2 * f.a;
    const Int g = gcd(abs(x), abs(y));
    return std::array<Int, 2>{x / g, y / g};
  }
  Int s;
  if (!is_perfect_square(4 * f.a * m, &s)) return std::nullopt;
  for (int sign = 0; sign < (s == 0 ? 1 : 2); ++sign) {
    auto sol = solve_linear(2 * f.a, f.b, sign == 0 ? s : -s);
    if (sol) return sol;
  }
  return std::nullopt;
}

std::optional<std::array<Int, 2>> represent_descent(const BinaryForm& f, const Int& m,
                                                    const Int& disc) {
  // disc > 0 non-square; a, c != 0. m = 0 has no solution.
  if (m == 0) return std::nullopt;
  const Int sqrt_floor = isqrt(disc);
  for (Int e = 1; e * e <= abs(m); ++e) {
    if (m % (e * e) != 0) continue;
    const Int m1 = m / (e * e);
    const Int modulus = 4 * abs(m1);
    for (Int t = 0; t < 2 * abs(m1); ++t) {
      if (mod_pos(t * t - disc, modulus) != 0) continue;
      const BinaryForm g{m1, t, (t * t - disc) / (4 * m1)};
      auto u = properly_equivalent(f, g, disc, sqrt_floor);
      if (!u) continue;
      // f o u = g, so the first column of u represents g(1,0) = m1.
      const Int x = u->a * e;
      const Int y = u->c * e;
      if (f.eval(x, y) != m) throw Error("internal: descent witness failed to verify");
      return std::array<Int, 2>{x, y};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::array<Int, 2>> binary_represent(const BinaryForm& f, const Int& m) {
  if (f.a == 0 && f.b == 0 && f.c == 0) {
    if (m == 0) return std::array<Int, 2>{1, 0};
    return std::nullopt;
  }
  const Int disc = f.disc();
  if (disc < 0) {
    if (m == 0) return std::nullopt;
    return represent_definite(f, m, disc);
  }
  if (disc == 0) return represent_degenerate(f, m);
  Int s;
  if (is_perfect_square(disc, &s)) return represent_split(f, m, s);
  return represent_descent(f, m, disc);
}

}  // namespace k3cert::detail
