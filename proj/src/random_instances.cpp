#include "artifact/random_instances.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>

namespace artifact::instances {

using complexes::FilteredChainMap;
using complexes::FilteredComplex;
using linalg::Rational;
using linalg::SparseMatrix;
using linalg::SparseVector;

namespace {

Rational random_coeff(std::mt19937_64& rng, int span) {
  std::uniform_int_distribution<int> v(-span, span);
  int x = 0;
  while (x == 0) x = v(rng);
  return x;
}

}  // namespace

FilteredComplex random_filtered_complex(std::uint64_t seed, const RandomComplexParams& params) {
  std::mt19937_64 rng(seed);
  FilteredComplex c;
  if (params.max_dim == 0 || params.max_degree < params.min_degree) return c;
  std::uniform_int_distribution<std::size_t> dim_dist(0, params.max_dim);
  std::uniform_int_distribution<int> level_dist(0, params.max_level);
  std::uniform_real_distribution<double> u(0, 1);
  for (int n = params.min_degree; n <= params.max_degree; ++n) {
    std::size_t k = dim_dist(rng);
    if (k == 0) continue;
    c.total.dims[n] = k;
    std::vector<int> lv(k);
    for (auto& l : lv) l = level_dist(rng);
    std::sort(lv.begin(), lv.end());
    c.level[n] = std::move(lv);
  }
  for (int n = params.min_degree; n < params.max_degree; ++n) {
    std::size_t cols = c.total.dim(n), rows = c.total.dim(n + 1);
    if (!cols || !rows) continue;
    SparseMatrix prev = c.total.differential(n - 1);
    SparseMatrix d(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      // Allowed support: columns j with level(j) >= level(i).
      std::vector<std::size_t> support;
      for (std::size_t j = 0; j < cols; ++j)
        if (c.level_of(n, j) >= c.level_of(n + 1, i)) support.push_back(j);
      if (support.empty()) continue;
      // Functionals on the support vanishing on im d^{n-1}: kernel of the
      // transpose of the restricted boundary matrix.
      std::vector<std::size_t> all_prev(prev.cols());
      for (std::size_t t = 0; t < all_prev.size(); ++t) all_prev[t] = t;
      SparseMatrix restricted = prev.submatrix(support, all_prev).transpose();
      std::vector<SparseVector> funcs;
      if (restricted.rows() == 0) {
        for (std::size_t t = 0; t < support.size(); ++t) funcs.push_back(SparseVector::unit(static_cast<std::uint32_t>(t)));
      } else {
        funcs = linalg::kernel(restricted).basis;
      }
      SparseVector row;
      for (const auto& f : funcs)
        if (u(rng) < params.density) row.axpy(random_coeff(rng, params.coeff_span), f);
      for (const auto& [t, x] : row.entries) d.set(i, support[t], x);
    }
    if (!d.is_zero()) c.total.d[n] = std::move(d);
  }
  c.validate();
  return c;
}

FilteredChainMap random_chain_map(std::uint64_t seed, const FilteredComplex& source, const FilteredComplex& target) {
  std::mt19937_64 rng(seed);
  FilteredChainMap f{source, target, {}};
  // Unknowns: allowed entries (i, j) of f^n with level_t(i) <= level_s(j).
  std::vector<std::tuple<int, std::size_t, std::size_t>> vars;
  std::map<std::tuple<int, std::size_t, std::size_t>, std::uint32_t> index;
  std::set<int> degs;
  for (const auto& [n, k] : source.total.dims) degs.insert(n);
  for (const auto& [n, k] : target.total.dims) degs.insert(n);
  for (int n : degs)
    for (std::size_t j = 0; j < source.total.dim(n); ++j)
      for (std::size_t i = 0; i < target.total.dim(n); ++i)
        if (target.level_of(n, i) <= source.level_of(n, j)) {
          index[{n, i, j}] = static_cast<std::uint32_t>(vars.size());
          vars.emplace_back(n, i, j);
        }
  if (vars.empty()) return f;
  // Equations: (d_t f^n - f^{n+1} d_s)(i, j) = 0 for each degree n.
  std::vector<SparseVector> eqs;
  for (int n : degs) {
    SparseMatrix dt = target.total.differential(n), ds = source.total.differential(n);
    for (std::size_t i = 0; i < target.total.dim(n + 1); ++i)
      for (std::size_t j = 0; j < source.total.dim(n); ++j) {
        SparseVector e;
        for (std::size_t k = 0; k < target.total.dim(n); ++k) {
          Rational a = dt.get(i, k);
          auto it = index.find({n, k, j});
          if (a != 0 && it != index.end()) e.add(it->second, a);
        }
        for (std::size_t k = 0; k < source.total.dim(n + 1); ++k) {
          Rational b = ds.get(k, j);
          auto it = index.find({n + 1, i, k});
          if (b != 0 && it != index.end()) e.add(it->second, -b);
        }
        e.normalize();
        if (!e.empty()) eqs.push_back(std::move(e));
      }
  }
  std::vector<SparseVector> sols;
  if (eqs.empty()) {
    for (std::size_t t = 0; t < vars.size(); ++t) sols.push_back(SparseVector::unit(static_cast<std::uint32_t>(t)));
  } else {
    SparseMatrix m(eqs.size(), vars.size());
    for (std::size_t r = 0; r < eqs.size(); ++r)
      for (const auto& [t, x] : eqs[r].entries) m.set(r, t, x);
    sols = linalg::kernel(m).basis;
  }
  std::uniform_real_distribution<double> u(0, 1);
  SparseVector pick;
  for (const auto& s : sols)
    if (u(rng) < 0.7) pick.axpy(random_coeff(rng, 2), s);
  for (const auto& [t, x] : pick.entries) {
    auto [n, i, j] = vars[t];
    auto it = f.f.find(n);
    if (it == f.f.end()) it = f.f.emplace(n, SparseMatrix(target.total.dim(n), source.total.dim(n))).first;
    it->second.set(i, j, x);
  }
  f.validate();
  return f;
}

}  // namespace artifact::instances
