#include "k3cert/qform.hpp"

#include <algorithm>
#include <functional>

#include "binary_forms.hpp"
#include "k3cert/errors.hpp"

namespace k3cert::qform {

namespace {

// ---------------------------------------------------------------------------
// Exact enumeration of {x != 0 : x^t Q x <= c} for positive definite rational Q.
// LDL decomposition, then per-level integer intervals scanned outward from the
// rational center; no square roots appear anywhere.
// ---------------------------------------------------------------------------

struct Ldl {
  RatVec d;     // positive pivots
  RatMat mu;    // unit upper-triangular multipliers, mu[i][j] for j > i
};

Ldl ldl_decompose(const RatMat& q) {
  const int n = static_cast<int>(q.size());
  Ldl out;
  out.d.assign(n, Rat(0));
  out.mu.assign(n, RatVec(n, Rat(0)));
  RatMat m = q;
  for (int i = 0; i < n; ++i) {
    Rat piv = m[i][i];
    for (int k = 0; k < i; ++k) piv -= out.d[k] * out.mu[k][i] * out.mu[k][i];
    if (piv <= 0)
      throw InvalidInputError("majorant form is not positive definite (signature is not (1, r-1, 0))");
    out.d[i] = piv;
    for (int j = i + 1; j < n; ++j) {
      Rat v = m[i][j];
      for (int k = 0; k < i; ++k) v -= out.d[k] * out.mu[k][i] * out.mu[k][j];
      out.mu[i][j] = v / piv;
    }
  }
  return out;
}

void enumerate_ball(const Ldl& ldl, const Rat& bound, const std::function<void(const IntVec&)>& emit) {
  const int n = static_cast<int>(ldl.d.size());
  if (bound < 0) return;
  IntVec x(n, 0);

  // level i consumes budget d_i (x_i + t_i)^2 where t_i depends on x_{i+1..}.
  std::function<void(int, const Rat&)> descend = [&](int i, const Rat& budget) {
    if (i < 0) {
      for (const Int& c : x)
        if (c != 0) {
          emit(x);
          return;
        }
      return;
    }
    Rat center = 0;
    for (int j = i + 1; j < n; ++j) center += ldl.mu[i][j] * Rat(x[j]);
    const Int base = floor_rat(-center);
    auto ok = [&](const Int& xi) {
      const Rat dev = Rat(xi) + center;
      return ldl.d[i] * dev * dev <= budget;
    };
    auto recurse = [&](const Int& xi) {
      const Rat dev = Rat(xi) + center;
      x[i] = xi;
      descend(i - 1, budget - ldl.d[i] * dev * dev);
      x[i] = 0;
    };
    for (Int xi = base; ok(xi); --xi) recurse(xi);
    for (Int xi = base + 1; ok(xi); ++xi) recurse(xi);
  };
  descend(n - 1, bound);
}

IntVec gram_times(const Lattice& lattice, const IntVec& v) {
  return matrix_apply(lattice.gram(), v);
}

Int form_value(const Lattice& lattice, const IntVec& v) {
  const IntVec gv = gram_times(lattice, v);
  Int s = 0;
  for (size_t i = 0; i < v.size(); ++i) s += v[i] * gv[i];
  return s;
}

Int degree_against(const IntVec& gram_ample, const IntVec& v) {
  Int s = 0;
  for (size_t i = 0; i < v.size(); ++i) s += gram_ample[i] * v[i];
  return s;
}

// ---------------------------------------------------------------------------
// Local solubility (Hilbert symbols over Q_p).
// ---------------------------------------------------------------------------

Int powmod(Int base, Int exp, const Int& mod) {
  Int r = 1;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp % 2 == 1) r = r * base % mod;
    base = base * base % mod;
    exp /= 2;
  }
  return r;
}

int legendre(const Int& a, const Int& p) {
  Int r = powmod(a, (p - 1) / 2, p);
  if (r == 0) throw Error("internal: Legendre symbol of a multiple of p");
  return r == 1 ? 1 : -1;
}

int valuation(Int& a, const Int& p) {
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

int hilbert_symbol(Int a, Int b, const Int& p) {
  const int alpha = valuation(a, p);
  const int beta = valuation(b, p);
  if (p == 2) {
    auto eps = [](const Int& u) { return static_cast<int>(((u - 1) / 2) % 2 != 0); };
    auto omega = [](const Int& u) { return static_cast<int>(((u * u - 1) / 8) % 2 != 0); };
    const int e = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
    return e % 2 == 0 ? 1 : -1;
  }
  int sign = 1;
  if (alpha % 2 == 1 && beta % 2 == 1 && ((p - 1) / 2) % 2 == 1) sign = -sign;
  if (beta % 2 == 1) sign *= legendre(a, p);
  if (alpha % 2 == 1) sign *= legendre(b, p);
  return sign;
}

bool is_square_in_qp(Int d, const Int& p) {
  const int v = valuation(d, p);
  if (v % 2 == 1) return false;
  if (p == 2) {
    Int r = d % 8;
    if (r < 0) r += 8;
    return r == 1;
  }
  return legendre(d, p) == 1;
}

std::vector<Int> prime_factors(Int n) {
  std::vector<Int> primes;
  n = abs(n);
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    primes.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

// Diagonal entries of the form over Q, scaled to integers in the same square
// classes. Requires a nondegenerate lattice.
IntVec integral_diagonal(const Lattice& lattice) {
  const RatVec diag = symmetric_diagonalize(to_rational(lattice.gram()));
  IntVec out;
  out.reserve(diag.size());
  for (const Rat& d : diag) {
    if (d == 0) throw InvalidInputError("degenerate lattice");
    out.push_back(boost::multiprecision::numerator(d) * boost::multiprecision::denominator(d));
  }
  return out;
}

bool soluble_at_p(const IntVec& diag, const Int& p) {
  const int n = static_cast<int>(diag.size());
  int eps = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) eps *= hilbert_symbol(diag[i], diag[j], p);
  Int d = 1;
  for (const Int& a : diag) d *= a;
  if (n == 3) return hilbert_symbol(-1, -d, p) == eps;
  if (n == 4) return !is_square_in_qp(d, p) || eps == hilbert_symbol(-1, -1, p);
  if (n >= 5) return true;
  // n == 2: represents zero iff -d is a square
  return is_square_in_qp(-d, p);
}

bool soluble_at_reals(const IntVec& diag) {
  bool pos = false, neg = false;
  for (const Int& a : diag) {
    if (a > 0) pos = true;
    if (a < 0) neg = true;
  }
  return pos && neg;
}

IntVec canonical_sign(IntVec v) {
  for (const Int& c : v) {
    if (c > 0) break;
    if (c < 0) {
      for (Int& x : v) x = -x;
      break;
    }
  }
  return v;
}

IntVec primitive_part(IntVec v) {
  const Int g = gcd_vector(v);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

// Smallest positive-square class, used as the reference for expanding degree
// slabs during witness searches.
std::optional<DivisorClass> find_positive_class(const LatticePtr& lattice, const Int& cap) {
  const int r = lattice->rank();
  for (int i = 0; i < r; ++i)
    if (lattice->gram()[i][i] > 0) return basis_class(lattice, i);
  for (Int bound = 1; bound <= cap; bound *= 2) {
    std::optional<IntVec> best;
    IntVec v(r, 0);
    std::function<void(int)> scan = [&](int i) {
      if (i == r) {
        if (form_value(*lattice, v) > 0 && (!best || lex_less(v, *best))) best = v;
        return;
      }
      for (Int x = -bound; x <= bound; ++x) {
        v[i] = x;
        scan(i + 1);
      }
      v[i] = 0;
    };
    scan(0);
    if (best) return DivisorClass(lattice, *best);
  }
  return std::nullopt;
}

std::optional<DivisorClass> find_isotropic_witness(const LatticePtr& lattice, const Int& cap) {
  auto positive = find_positive_class(lattice, cap);
  if (!positive) return std::nullopt;
  for (Int deg = 4; deg <= 64 * cap; deg *= 2) {
    const auto found = enumerate_norm_vectors(*positive, 0, deg);
    if (found.empty()) continue;
    std::optional<IntVec> best;
    for (const auto& w : found) {
      IntVec v = canonical_sign(primitive_part(w.coords()));
      if (!best || lex_less(v, *best)) best = v;
    }
    return DivisorClass(lattice, *best);
  }
  return std::nullopt;
}

IsotropyVerdict isotropy_rank2(const LatticePtr& lattice) {
  const IntMat& g = lattice->gram();
  const Int d = g[0][0] / 2, a = g[0][1], b = g[1][1] / 2;
  const Int disc = a * a - 4 * d * b;
  Int s;
  if (!is_perfect_square(disc, &s))
    return {IsotropyStatus::Anisotropic, IsotropyMethod::ClosedFormRank2, std::nullopt};
  std::vector<IntVec> rays;
  if (d == 0) {
    rays.push_back({1, 0});
    if (a != 0 || b != 0) rays.push_back(canonical_sign(primitive_part({-b, a})));
  } else {
    rays.push_back(canonical_sign(primitive_part({s - a, 2 * d})));
    rays.push_back(canonical_sign(primitive_part({-s - a, 2 * d})));
  }
  std::optional<IntVec> best;
  for (auto& ray : rays) {
    bool zero = true;
    for (const Int& c : ray) zero = zero && c == 0;
    if (zero) continue;
    if (!best || lex_less(ray, *best)) best = ray;
  }
  if (!best) return {IsotropyStatus::Anisotropic, IsotropyMethod::ClosedFormRank2, std::nullopt};
  DivisorClass witness(lattice, *best);
  return {IsotropyStatus::Isotropic, IsotropyMethod::ClosedFormRank2, witness};
}

}  // namespace

std::vector<DivisorClass> slab_vectors(const DivisorClass& ample, const Int& deg_min,
                                       const Int& deg_max, const Int& min_square) {
  const LatticePtr& lattice = ample.lattice_ptr();
  const Int s = square(ample);
  if (s <= 0) throw InvalidAmpleError("reference class must have positive square");
  std::vector<DivisorClass> out;
  if (deg_max < deg_min) return out;

  // Majorant M(v) = 2 (A.v)^2 / s - v.v is positive definite for signature
  // (1, r-1); on the slab it is bounded by 2 deg_max^2 / s - min_square.
  const int r = lattice->rank();
  const IntVec ga = gram_times(*lattice, ample.coords());
  RatMat majorant(r, RatVec(r, Rat(0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      majorant[i][j] = Rat(2 * ga[i] * ga[j], s) - Rat(lattice->gram()[i][j]);
  const Rat bound = Rat(2 * deg_max * deg_max, s) - Rat(min_square);

  const Ldl ldl = ldl_decompose(majorant);
  std::vector<IntVec> raw;
  enumerate_ball(ldl, bound, [&](const IntVec& v) {
    const Int deg = degree_against(ga, v);
    if (deg < deg_min || deg > deg_max) return;
    if (form_value(*lattice, v) < min_square) return;
    raw.push_back(v);
  });
  std::sort(raw.begin(), raw.end(), lex_less);
  out.reserve(raw.size());
  for (auto& v : raw) out.emplace_back(lattice, std::move(v));
  return out;
}

std::vector<DivisorClass> enumerate_norm_vectors(const DivisorClass& ample, const Int& norm,
                                                 const Int& degree_max) {
  if (square(ample) <= 0) throw InvalidAmpleError("ample class must have positive square");
  if (degree_max <= 0) return {};
  std::vector<DivisorClass> out;
  for (auto& v : slab_vectors(ample, 1, degree_max, norm))
    if (square(v) == norm) out.push_back(std::move(v));
  return out;
}

bool locally_soluble_everywhere(const Lattice& lattice) {
  const IntVec diag = integral_diagonal(lattice);
  if (!soluble_at_reals(diag)) return false;
  Int product = 2;
  for (const Int& a : diag) product *= a;
  for (const Int& p : prime_factors(product))
    if (!soluble_at_p(diag, p)) return false;
  return true;
}

IsotropyVerdict isotropic_exists(const LatticePtr& lattice, const SearchOptions& options) {
  if (discriminant(*lattice) == 0) throw InvalidInputError("degenerate lattice");
  const SignatureTriple sig = signature(*lattice);
  const int r = lattice->rank();
  if (!(sig == SignatureTriple{1, r - 1, 0}))
    throw PreconditionError("isotropy test requires signature (1, r-1, 0)");

  if (r == 1) return {IsotropyStatus::Anisotropic, IsotropyMethod::LocalGlobal, std::nullopt};
  if (r == 2) return isotropy_rank2(lattice);

  if (r >= 5) {
    auto witness = find_isotropic_witness(lattice, options.coordinate_cap);
    return {IsotropyStatus::Isotropic, IsotropyMethod::MeyerRank5, witness};
  }

  // rank 3-4: a tiny box scan settles most soluble instances outright
  {
    std::optional<IntVec> best;
    IntVec v(r, 0);
    std::function<void(int)> scan = [&](int i) {
      if (i == r) {
        bool zero = true;
        for (const Int& c : v) zero = zero && c == 0;
        if (zero || form_value(*lattice, v) != 0) return;
        IntVec w = canonical_sign(primitive_part(v));
        if (!best || lex_less(w, *best)) best = w;
        return;
      }
      for (Int x = -2; x <= 2; ++x) {
        v[i] = x;
        scan(i + 1);
      }
      v[i] = 0;
    };
    scan(0);
    if (best)
      return {IsotropyStatus::Isotropic, IsotropyMethod::BoundedSearch,
              DivisorClass(lattice, *best)};
  }

  if (locally_soluble_everywhere(*lattice)) {
    auto witness = find_isotropic_witness(lattice, options.coordinate_cap);
    return {IsotropyStatus::Isotropic, IsotropyMethod::LocalGlobal, witness};
  }
  return {IsotropyStatus::Anisotropic, IsotropyMethod::LocalGlobal, std::nullopt};
}

RepresentsResult represents(const LatticePtr& lattice, const Int& n, const SearchOptions& options) {
  const int r = lattice->rank();
  RepresentsResult result;
  result.cap_used = options.coordinate_cap;

  if (n % 2 != 0) {  // even lattice: all squares are even
    result.conclusion = RepresentsConclusion::NotRepresented;
    return result;
  }

  if (r == 1) {
    const Int two_d = lattice->gram()[0][0];
    result.conclusion = RepresentsConclusion::NotRepresented;
    if (two_d == 0) {
      if (n == 0) {
        result.conclusion = RepresentsConclusion::Represented;
        result.witness = DivisorClass(lattice, {1});
      }
      return result;
    }
    if (n % two_d == 0) {
      Int root;
      if (is_perfect_square(n / two_d, &root) && root != 0) {
        result.conclusion = RepresentsConclusion::Represented;
        result.witness = DivisorClass(lattice, {root});
      }
    }
    return result;
  }

  if (r == 2) {
    const IntMat& g = lattice->gram();
    const detail::BinaryForm half{g[0][0] / 2, g[0][1], g[1][1] / 2};
    auto sol = detail::binary_represent(half, n / 2);
    if (sol) {
      IntVec v = canonical_sign({(*sol)[0], (*sol)[1]});
      result.conclusion = RepresentsConclusion::Represented;
      result.witness = DivisorClass(lattice, std::move(v));
    } else {
      result.conclusion = RepresentsConclusion::NotRepresented;
    }
    return result;
  }

  // rank >= 3: growing box search. An empty result is only a statement about
  // the searched box, whose bound is reported back; the box volume is kept
  // within a fixed work budget.
  const Int work_budget = 4000000;
  Int searched = 0;
  for (Int bound = 1; bound <= options.coordinate_cap; bound *= 2) {
    Int cells = 1;
    for (int i = 0; i < r; ++i) cells *= 2 * bound + 1;
    if (cells > work_budget && searched > 0) break;
    std::optional<IntVec> best;
    IntVec v(r, 0);
    std::function<void(int)> scan = [&](int i) {
      if (i == r) {
        bool zero = true;
        for (const Int& c : v) zero = zero && c == 0;
        if (zero) return;
        if (form_value(*lattice, v) != n) return;
        IntVec w = canonical_sign(v);
        if (!best || lex_less(w, *best)) best = w;
        return;
      }
      for (Int x = -bound; x <= bound; ++x) {
        v[i] = x;
        scan(i + 1);
      }
      v[i] = 0;
    };
    scan(0);
    searched = bound;
    if (best) {
      result.conclusion = RepresentsConclusion::Represented;
      result.witness = DivisorClass(lattice, *best);
      result.cap_used = searched;
      return result;
    }
  }
  result.conclusion = RepresentsConclusion::Inconclusive;
  result.cap_used = searched;
  return result;
}

Rat project_orthogonal(const DivisorClass& H, const DivisorClass& R) {
  require_same_lattice(H, R);
  const Int h = square(H);
  if (h <= 0) throw InvalidInputError("projection requires a class of positive square");
  const Int hr = pair(H, R);
  return Rat(square(R)) - Rat(hr * hr, h);
}

}  // namespace k3cert::qform
