#pragma once

#include <random>
#include <vector>

#include "artifact/complexes.hpp"
#include "artifact/linalg.hpp"
#include "artifact/random_instances.hpp"

namespace testing_helpers {

using artifact::linalg::Rational;
using artifact::linalg::SparseMatrix;

inline SparseMatrix dense(std::vector<std::vector<int>> rows) {
  std::vector<std::vector<Rational>> r;
  for (auto& row : rows) {
    std::vector<Rational> rr;
    for (int x : row) rr.emplace_back(x);
    r.push_back(rr);
  }
  return SparseMatrix::from_dense(r);
}

inline SparseMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, double density = 0.4,
                                  int span = 3) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> v(-span, span);
  SparseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (u(rng) < density) m.set(i, j, v(rng));
  return m;
}

// Dense Gaussian elimination over Q, used as an independent rank oracle.
inline std::size_t dense_rank(const SparseMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols(), 0));
  for (auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// dh + hd for a random h of degree -1: a chain map vanishing in cohomology.
inline artifact::complexes::ChainMap nullhomotopic_map(std::mt19937& rng, const artifact::complexes::GradedComplex& s,
                                                       const artifact::complexes::GradedComplex& t) {
  artifact::complexes::ChainMap f{s, t, {}};
  std::map<int, SparseMatrix> h;
  for (const auto& [n, k] : s.dims) h[n] = random_matrix(rng, t.dim(n - 1), k);
  for (const auto& [n, k] : s.dims) {
    SparseMatrix m = t.differential(n - 1) * h[n];
    if (h.count(n + 1))
      for (const auto& [rc, v] : (h[n + 1] * s.differential(n)).entries()) m.add(rc.first, rc.second, v);
    f.f[n] = m;
  }
  return f;
}

// C_0 -> ... -> C_{N-1} -> 0 with every d-fold composite zero in cohomology
// but (d-1)-fold composites nonzero: C_i = V ⊕ R_i with V = Q^d in degree 0
// (zero differential) carrying a nilpotent Jordan block, plus null-homotopic
// noise on the whole map.
struct VanishingSystem {
  std::vector<artifact::complexes::GradedComplex> cs;
  std::vector<artifact::complexes::ChainMap> maps;
};
inline VanishingSystem vanishing_system(std::uint64_t seed, int d, int n_terms) {
  using artifact::complexes::GradedComplex;
  artifact::instances::RandomComplexParams params;
  params.max_level = 0;
  params.max_dim = 2;
  std::mt19937 rng(static_cast<unsigned>(seed));
  const auto vd = static_cast<std::size_t>(d);
  VanishingSystem v;
  for (int i = 0; i + 1 < n_terms; ++i) {
    GradedComplex r = artifact::instances::random_filtered_complex(seed * 97 + static_cast<std::uint64_t>(i), params).total;
    // V occupies the first d coordinates of degree 0.
    GradedComplex c;
    for (int n = -1; n <= 3; ++n) c.dims[n] = r.dim(n) + (n == 0 ? vd : 0);
    for (int n = -1; n <= 2; ++n) {
      SparseMatrix m(c.dim(n + 1), c.dim(n));
      const std::size_t ro = n + 1 == 0 ? vd : 0, co = n == 0 ? vd : 0;
      for (const auto& [rc, x] : r.differential(n).entries()) m.set(rc.first + ro, rc.second + co, x);
      c.d[n] = m;
    }
    v.cs.push_back(c);
  }
  GradedComplex zero;
  for (const auto& [n, k] : v.cs.back().dims) zero.dims[n] = 0;
  v.cs.push_back(zero);
  for (int i = 0; i + 1 < n_terms; ++i) {
    auto f = nullhomotopic_map(rng, v.cs[i], v.cs[i + 1]);
    if (i + 2 < n_terms)
      for (std::size_t k = 0; k + 1 < vd; ++k) f.f[0].add(k + 1, k, 1);
    else
      for (auto& [n, m] : f.f) m = SparseMatrix(m.rows(), m.cols());
    v.maps.push_back(f);
  }
  return v;
}

}  // namespace testing_helpers
