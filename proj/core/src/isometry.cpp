#include "k3cert/isometry.hpp"

#include <algorithm>
#include <functional>

#include "k3cert/errors.hpp"

namespace k3cert {

namespace {

Int form_value(const IntMat& g, const IntVec& v, const IntVec& w) {
  const int r = static_cast<int>(g.size());
  Int result = 0;
  for (int i = 0; i < r; ++i) {
    if (v[i] == 0) continue;
    Int row = 0;
    for (int j = 0; j < r; ++j) row += g[i][j] * w[j];
    result += v[i] * row;
  }
  return result;
}

// All v in [-bound, bound]^r with v^t G v = norm, in lexicographic order.
std::vector<IntVec> vectors_of_norm(const IntMat& g, const Int& norm, int bound) {
  const int r = static_cast<int>(g.size());
  std::vector<IntVec> result;
  IntVec v(r, 0);
  std::function<void(int)> scan = [&](int i) {
    if (i == r) {
      if (form_value(g, v, v) == norm) result.push_back(v);
      return;
    }
    for (int x = -bound; x <= bound; ++x) {
      v[i] = x;
      scan(i + 1);
    }
    v[i] = 0;
  };
  scan(0);
  return result;
}

}  // namespace

std::optional<std::string> isometry_obstruction(const Lattice& a, const Lattice& b) {
  if (a.rank() != b.rank()) return "ranks differ";
  if (discriminant(a) != discriminant(b)) return "discriminants differ";
  if (!(signature(a) == signature(b))) return "signatures differ";
  return std::nullopt;
}

std::optional<IntMat> lattice_isomorphic(const Lattice& a, const Lattice& b,
                                         const IsometryOptions& options) {
  if (a.rank() > 4 || b.rank() > 4)
    throw UnsupportedRankError("isometry search supports rank <= 4 only");
  if (isometry_obstruction(a, b)) return std::nullopt;

  const int r = a.rank();
  const IntMat& ga = a.gram();
  const IntMat& gb = b.gram();

  // Candidate images in `a` for each basis vector of `b`, matched by norm.
  std::vector<std::vector<IntVec>> candidates(r);
  for (int j = 0; j < r; ++j) {
    candidates[j] = vectors_of_norm(ga, gb[j][j], options.coordinate_bound);
    if (candidates[j].empty()) return std::nullopt;
  }

  std::vector<IntVec> chosen;
  std::function<bool(int)> assign = [&](int j) -> bool {
    if (j == r) return true;
    for (const IntVec& cand : candidates[j]) {
      bool ok = true;
      for (int i = 0; i < j; ++i)
        if (form_value(ga, chosen[i], cand) != gb[i][j]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(cand);
      if (assign(j + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;

  // Columns of T are the chosen images.
  IntMat t(r, IntVec(r, 0));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) t[i][j] = chosen[j][i];

  // Nondegenerate equal discriminants force det T = +-1; re-verify the
  // congruence as a whole before returning.
  const IntMat check = matrix_product(matrix_product(matrix_transpose(t), ga), t);
  if (check != gb) return std::nullopt;
  return t;
}

}  // namespace k3cert
