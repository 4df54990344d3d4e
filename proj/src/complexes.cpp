#include "artifact/complexes.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace artifact::complexes {

using linalg::Echelon;

// ---------------------------------------------------------------- GradedComplex

std::size_t GradedComplex::dim(int n) const {
  auto it = dims.find(n);
  return it == dims.end() ? 0 : it->second;
}

std::size_t GradedComplex::total_dim() const {
  std::size_t t = 0;
  for (const auto& [n, k] : dims) t += k;
  return t;
}

SparseMatrix GradedComplex::differential(int n) const {
  auto it = d.find(n);
  if (it != d.end()) return it->second;
  return SparseMatrix(dim(n + 1), dim(n));
}

int GradedComplex::min_degree() const {
  for (const auto& [n, k] : dims)
    if (k) return n;
  return 0;
}

int GradedComplex::max_degree() const {
  for (auto it = dims.rbegin(); it != dims.rend(); ++it)
    if (it->second) return it->first;
  return 0;
}

void GradedComplex::validate() const {
  for (const auto& [n, m] : d) {
    if (m.rows() != dim(n + 1) || m.cols() != dim(n))
      throw InvalidComplex("differential in degree " + std::to_string(n) + " has the wrong shape");
  }
  for (const auto& [n, m] : d) {
    auto it = d.find(n + 1);
    if (it == d.end()) continue;
    if (!(it->second * m).is_zero())
      throw InvalidComplex("d∘d != 0 starting in degree " + std::to_string(n));
  }
}

GradedComplex GradedComplex::shift(int k) const {
  GradedComplex s;
  for (const auto& [n, m] : dims) s.dims[n - k] = m;
  for (const auto& [n, m] : d) {
    SparseMatrix mm = m;
    if (k % 2 != 0) {
      for (std::size_t j = 0; j < mm.cols(); ++j) {
        SparseVector c = mm.column(j);
        c.scale(-1);
        mm.set_column(j, std::move(c));
      }
    }
    s.d[n - k] = std::move(mm);
  }
  return s;
}

// ---------------------------------------------------------------- FilteredComplex

int FilteredComplex::p_max() const {
  int m = 0;
  for (const auto& [n, lv] : level)
    for (int l : lv) m = std::max(m, l);
  return m;
}

int FilteredComplex::level_of(int n, std::size_t i) const { return level.at(n).at(i); }

std::vector<std::size_t> FilteredComplex::indices_up_to(int n, int p) const {
  std::vector<std::size_t> out;
  auto it = level.find(n);
  if (it == level.end()) return out;
  for (std::size_t i = 0; i < it->second.size(); ++i)
    if (it->second[i] <= p) out.push_back(i);
  return out;
}

Subspace FilteredComplex::filtration(int p, int n) const {
  Subspace s{total.dim(n), {}};
  for (auto i : indices_up_to(n, p)) s.basis.push_back(SparseVector::unit(static_cast<std::uint32_t>(i)));
  return s;
}

std::size_t FilteredComplex::filtration_dim(int p, int n) const { return indices_up_to(n, p).size(); }

void FilteredComplex::validate() const {
  total.validate();
  for (const auto& [n, k] : total.dims) {
    auto it = level.find(n);
    std::size_t have = it == level.end() ? 0 : it->second.size();
    if (have != k) throw InvalidComplex("filtration levels missing in degree " + std::to_string(n));
  }
  for (const auto& [n, lv] : level) {
    for (int l : lv)
      if (l < 0) throw InvalidComplex("negative filtration level in degree " + std::to_string(n));
    if (lv.size() != total.dim(n)) throw InvalidComplex("filtration size mismatch in degree " + std::to_string(n));
  }
  for (const auto& [n, m] : total.d) {
    const auto& src = level.at(n);
    auto tit = level.find(n + 1);
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& [i, v] : m.column(j).entries)
        if (tit->second[i] > src[j])
          throw InvalidComplex("differential does not preserve the filtration in degree " + std::to_string(n));
  }
}

FilteredComplex FilteredComplex::trivial(const GradedComplex& c) {
  FilteredComplex f;
  f.total = c;
  for (const auto& [n, k] : c.dims) f.level[n] = std::vector<int>(k, 0);
  return f;
}

// ---------------------------------------------------------------- chain maps

namespace {

SparseMatrix map_at(const std::map<int, SparseMatrix>& f, int n, std::size_t rows, std::size_t cols) {
  auto it = f.find(n);
  if (it == f.end()) return SparseMatrix(rows, cols);
  if (it->second.rows() != rows || it->second.cols() != cols)
    throw InvalidComplex("chain map component in degree " + std::to_string(n) + " has the wrong shape");
  return it->second;
}

std::set<int> all_degrees(const GradedComplex& a, const GradedComplex& b) {
  std::set<int> s;
  for (const auto& [n, k] : a.dims) s.insert(n);
  for (const auto& [n, k] : b.dims) s.insert(n);
  return s;
}

}  // namespace

SparseMatrix ChainMap::at(int n) const { return map_at(f, n, target.dim(n), source.dim(n)); }

void ChainMap::validate() const {
  for (int n : all_degrees(source, target)) {
    SparseMatrix lhs = target.differential(n) * at(n);
    SparseMatrix rhs = at(n + 1) * source.differential(n);
    if (!(lhs == rhs)) {
      auto el = lhs.entries(), er = rhs.entries();
      if (el != er) throw InvalidComplex("map does not commute with d in degree " + std::to_string(n));
    }
  }
}

SparseMatrix FilteredChainMap::at(int n) const { return map_at(f, n, target.total.dim(n), source.total.dim(n)); }

ChainMap FilteredChainMap::underlying() const { return ChainMap{source.total, target.total, f}; }

void FilteredChainMap::validate() const {
  underlying().validate();
  for (const auto& [n, m] : f) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& [i, v] : m.column(j).entries)
        if (target.level_of(n, i) > source.level_of(n, j))
          throw InvalidComplex("map does not respect the filtration in degree " + std::to_string(n));
  }
}

FilteredChainMap FilteredChainMap::identity(const FilteredComplex& c) {
  FilteredChainMap m{c, c, {}};
  for (const auto& [n, k] : c.total.dims) m.f[n] = SparseMatrix::identity(k);
  return m;
}

FilteredChainMap FilteredChainMap::zero(const FilteredComplex& s, const FilteredComplex& t) {
  return FilteredChainMap{s, t, {}};
}

// ---------------------------------------------------------------- cohomology

std::map<int, CohomologyGroup> cohomology(const GradedComplex& c) {
  std::map<int, CohomologyGroup> out;
  for (const auto& [n, k] : c.dims) {
    CohomologyGroup g;
    g.representatives = Subspace{k, {}};
    if (k == 0) {
      out[n] = g;
      continue;
    }
    Subspace z = linalg::kernel(c.differential(n));
    Echelon e;
    SparseMatrix dprev = c.differential(n - 1);
    for (std::size_t j = 0; j < dprev.cols(); ++j) e.insert(dprev.column(j));
    for (const auto& v : z.basis)
      if (e.insert(v)) g.representatives.basis.push_back(v);
    g.dim = g.representatives.basis.size();
    out[n] = g;
  }
  return out;
}

std::map<int, std::size_t> cohomology_dims(const GradedComplex& c) {
  std::map<int, std::size_t> out;
  for (const auto& [n, k] : c.dims) {
    if (k == 0) {
      out[n] = 0;
      continue;
    }
    std::size_t z = k - linalg::rank(c.differential(n));
    std::size_t b = linalg::rank(c.differential(n - 1));
    out[n] = z - b;
  }
  return out;
}

bool is_acyclic(const GradedComplex& c) {
  for (const auto& [n, h] : cohomology_dims(c))
    if (h) return false;
  return true;
}

CohomologyCoordinates::CohomologyCoordinates(const GradedComplex& c, int n) : d_(c.differential(n)) {
  const std::size_t k = c.dim(n);
  if (k == 0) return;
  SparseMatrix dprev = c.differential(n - 1);
  std::vector<SparseVector> bs;
  for (std::size_t j = 0; j < dprev.cols(); ++j)
    if (!dprev.column(j).empty()) bs.push_back(dprev.column(j));
  for (const auto& b : bs) boundaries_.insert(b);
  Echelon probe = boundaries_;
  for (const auto& v : linalg::kernel(d_).basis)
    if (probe.insert(v)) reps_.push_back(v);
  const auto nr = static_cast<std::uint32_t>(reps_.size());
  for (std::uint32_t i = 0; i < nr; ++i) echelon_.insert(reps_[i], i);
  for (std::size_t j = 0; j < bs.size(); ++j) echelon_.insert(bs[j], nr + static_cast<std::uint32_t>(j));
}

std::optional<SparseVector> CohomologyCoordinates::coordinates(const SparseVector& v) const {
  if (!d_.apply(v).empty()) return std::nullopt;
  SparseVector out;
  if (v.empty() || reps_.empty()) return out;
  auto sol = echelon_.solve(v);
  if (!sol) throw std::logic_error("cocycle outside the span of representatives and coboundaries");
  for (const auto& [t, x] : sol->entries)
    if (t < reps_.size()) out.entries.emplace_back(t, x);
  return out;
}

bool CohomologyCoordinates::is_coboundary(const SparseVector& v) const { return boundaries_.is_member(v); }

SparseMatrix induced_cohomology_map(const ChainMap& f, int n) {
  CohomologyCoordinates src(f.source, n), tgt(f.target, n);
  SparseMatrix m(tgt.dim(), src.dim());
  SparseMatrix fn = f.at(n);
  for (std::size_t j = 0; j < src.dim(); ++j) m.set_column(j, *tgt.coordinates(fn.apply(src.representatives()[j])));
  return m;
}

// ---------------------------------------------------------------- cones

namespace {

// Block assembly: place `m` (rows x cols) at (row_off, col_off) of `out`, scaled.
void place(SparseMatrix& out, const SparseMatrix& m, std::size_t row_off, std::size_t col_off,
           const Rational& scale = 1) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& [i, v] : m.column(j).entries) out.add(row_off + i, col_off + j, scale * v);
}

void normalize_columns(SparseMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    SparseVector c = m.column(j);
    c.normalize();
    m.set_column(j, std::move(c));
  }
}

}  // namespace

GradedComplex cone(const ChainMap& f) {
  const GradedComplex& a = f.source;
  const GradedComplex& b = f.target;
  std::set<int> degs;
  for (const auto& [n, k] : a.dims) degs.insert(n - 1);
  for (const auto& [n, k] : b.dims) degs.insert(n);
  GradedComplex c;
  for (int n : degs) c.dims[n] = a.dim(n + 1) + b.dim(n);
  for (int n : degs) {
    std::size_t a1 = a.dim(n + 1), b0 = b.dim(n), a2 = a.dim(n + 2), b1 = b.dim(n + 1);
    SparseMatrix m(a2 + b1, a1 + b0);
    place(m, a.differential(n + 1), 0, 0, -1);
    place(m, f.at(n + 1), a2, 0);
    place(m, b.differential(n), a2, a1);
    if (m.rows() == 0 || m.cols() == 0) continue;
    c.dims.try_emplace(n + 1, m.rows());
    c.d[n] = std::move(m);
  }
  for (auto& [n, m] : c.d) normalize_columns(m);
  return c;
}

FilteredComplex r_cone(const FilteredChainMap& f, int r) {
  FilteredComplex out;
  out.total = cone(f.underlying());
  for (const auto& [n, k] : out.total.dims) {
    std::vector<int> lv;
    std::size_t a1 = f.source.total.dim(n + 1);
    for (std::size_t i = 0; i < a1; ++i) lv.push_back(f.source.level_of(n + 1, i) + r);
    for (std::size_t i = 0; i < f.target.total.dim(n); ++i) lv.push_back(f.target.level_of(n, i));
    out.level[n] = std::move(lv);
  }
  out.validate();
  return out;
}

FilteredChainMap cone_inclusion(const FilteredChainMap& f, int r) {
  FilteredComplex c = r_cone(f, r);
  FilteredChainMap inc{f.target, c, {}};
  for (const auto& [n, k] : f.target.total.dims) {
    std::size_t off = f.source.total.dim(n + 1);
    SparseMatrix m(c.total.dim(n), k);
    for (std::size_t i = 0; i < k; ++i) m.set(off + i, i, 1);
    inc.f[n] = std::move(m);
  }
  return inc;
}

FilteredComplex iterated_r_cone(const TwistedSequence& seq, int r) {
  const int N = static_cast<int>(seq.terms.size());
  if (N == 0) return FilteredComplex{};
  std::set<int> degs;
  for (int i = 0; i < N; ++i)
    for (const auto& [n, k] : seq.terms[i].total.dims) degs.insert(n - i);
  // Block order: A_{N-1} first, A_0 last.
  auto offset = [&](int n, int i) {
    std::size_t off = 0;
    for (int t = N - 1; t > i; --t) off += seq.terms[t].total.dim(n + t);
    return off;
  };
  auto dim_at = [&](int n) {
    std::size_t s = 0;
    for (int t = 0; t < N; ++t) s += seq.terms[t].total.dim(n + t);
    return s;
  };
  FilteredComplex out;
  for (int n : degs) {
    out.total.dims[n] = dim_at(n);
    std::vector<int> lv;
    for (int t = N - 1; t >= 0; --t)
      for (std::size_t i = 0; i < seq.terms[t].total.dim(n + t); ++i)
        lv.push_back(seq.terms[t].level_of(n + t, i) + t * r);
    out.level[n] = std::move(lv);
  }
  for (int n : degs) {
    SparseMatrix m(dim_at(n + 1), dim_at(n));
    for (int i = 0; i < N; ++i) {
      const auto& A = seq.terms[i].total;
      place(m, A.differential(n + i), offset(n + 1, i), offset(n, i), (i % 2) ? -1 : 1);
    }
    for (const auto& [ij, comps] : seq.maps) {
      auto [i, j] = ij;
      if (i <= j || i >= N || j < 0) throw InvalidComplex("twisted sequence component must go from A_i to A_j with i > j");
      auto it = comps.find(n + i);
      if (it == comps.end()) continue;
      std::size_t rows = seq.terms[j].total.dim(n + 1 + j), cols = seq.terms[i].total.dim(n + i);
      if (it->second.rows() != rows || it->second.cols() != cols)
        throw InvalidComplex("component A_" + std::to_string(i) + " -> A_" + std::to_string(j) +
                             " has the wrong shape at total degree " + std::to_string(n));
      place(m, it->second, offset(n + 1, j), offset(n, i));
    }
    normalize_columns(m);
    if (m.rows() && m.cols()) out.total.d[n] = std::move(m);
  }
  for (int n : degs) {
    auto it = out.total.d.find(n), it2 = out.total.d.find(n + 1);
    if (it == out.total.d.end() || it2 == out.total.d.end()) continue;
    SparseMatrix sq = it2->second * it->second;
    if (sq.is_zero()) continue;
    // Name the first failing block.
    auto e = sq.entries().begin()->first;
    auto block_of = [&](int deg, std::size_t idx) {
      for (int t = N - 1; t >= 0; --t) {
        std::size_t d = seq.terms[t].total.dim(deg + t);
        if (idx < d) return t;
        idx -= d;
      }
      return -1;
    };
    throw InvalidComplex("iterated cone: d^2 != 0 at total degree " + std::to_string(n) + ", from A_" +
                         std::to_string(block_of(n, e.second)) + " to A_" + std::to_string(block_of(n + 2, e.first)));
  }
  out.validate();
  return out;
}

FilteredComplex hocolim(const std::vector<GradedComplex>& cs, const std::vector<ChainMap>& maps,
                        std::size_t n_terms) {
  if (n_terms == 0) return FilteredComplex{};
  if (cs.size() < n_terms || maps.size() + 1 < n_terms)
    throw std::invalid_argument("hocolim: prefix longer than the supplied sequence");
  const std::size_t N = n_terms - 1;
  std::set<int> degs;
  for (std::size_t i = 0; i <= N; ++i)
    for (const auto& [n, k] : cs[i].dims) {
      degs.insert(n);
      degs.insert(n - 1);
    }
  auto dom_off = [&](int n, std::size_t i) {  // domain copies C_i^{n+1}, i < N
    std::size_t off = 0;
    for (std::size_t t = 0; t < i; ++t) off += cs[t].dim(n + 1);
    return off;
  };
  auto dom_dim = [&](int n) { return dom_off(n, N); };
  auto cod_off = [&](int n, std::size_t i) {
    std::size_t off = dom_dim(n);
    for (std::size_t t = 0; t < i; ++t) off += cs[t].dim(n);
    return off;
  };
  auto dim_at = [&](int n) { return cod_off(n, N + 1); };
  FilteredComplex out;
  for (int n : degs) {
    if (dim_at(n) == 0) continue;
    out.total.dims[n] = dim_at(n);
    std::vector<int> lv;
    for (std::size_t i = 0; i < N; ++i) lv.insert(lv.end(), cs[i].dim(n + 1), static_cast<int>(i + 1));
    for (std::size_t i = 0; i <= N; ++i) lv.insert(lv.end(), cs[i].dim(n), static_cast<int>(i));
    out.level[n] = std::move(lv);
  }
  for (int n : degs) {
    std::size_t rows = dim_at(n + 1), cols = dim_at(n);
    if (!rows || !cols) continue;
    SparseMatrix m(rows, cols);
    for (std::size_t i = 0; i < N; ++i) {
      place(m, cs[i].differential(n + 1), dom_off(n + 1, i), dom_off(n, i), -1);
      place(m, maps[i].at(n + 1), cod_off(n + 1, i + 1), dom_off(n, i));
      place(m, SparseMatrix::identity(cs[i].dim(n + 1)), cod_off(n + 1, i), dom_off(n, i), -1);
    }
    for (std::size_t i = 0; i <= N; ++i) place(m, cs[i].differential(n), cod_off(n + 1, i), cod_off(n, i));
    normalize_columns(m);
    out.total.d[n] = std::move(m);
  }
  out.validate();
  return out;
}

// ---------------------------------------------------------------- directed systems

namespace {
std::size_t dim_in(const std::map<int, std::size_t>& sp, int n) {
  auto it = sp.find(n);
  return it == sp.end() ? 0 : it->second;
}
std::set<int> degrees_of(const std::vector<std::map<int, std::size_t>>& spaces) {
  std::set<int> s;
  for (const auto& sp : spaces)
    for (const auto& [n, k] : sp) s.insert(n);
  return s;
}
}  // namespace

SparseMatrix DirectedSystem::map_at(std::size_t s, int n) const {
  return complexes::map_at(maps.at(s), n, dim_in(spaces.at(s + 1), n), dim_in(spaces.at(s), n));
}

void DirectedSystem::validate() const {
  if (!spaces.empty() && maps.size() + 1 < spaces.size())
    throw InvalidComplex("directed system: missing transition maps");
  for (std::size_t s = 0; s + 1 < spaces.size(); ++s)
    for (int n : degrees_of(spaces)) (void)map_at(s, n);
}

void WeakMorphism::validate(const DirectedSystem& v, const DirectedSystem& w) const {
  const std::size_t C = scaling_constant;
  if (C < 1) throw InvalidComplex("weak morphism: scaling constant must be >= 1");
  std::set<int> degs = degrees_of(v.spaces);
  for (int n : degrees_of(w.spaces)) degs.insert(n);
  auto comp = [&](std::size_t s, int n) {
    return complexes::map_at(components.at(s), n, dim_in(w.spaces.at(C * s), n), dim_in(v.spaces.at(s), n));
  };
  for (std::size_t s = 0; s + 1 < components.size() && s + 1 < v.length(); ++s) {
    if (C * (s + 1) >= w.length()) break;
    for (int n : degs) {
      SparseMatrix lhs = comp(s + 1, n) * v.map_at(s, n);
      SparseMatrix rhs = comp(s, n);
      for (std::size_t t = C * s; t < C * (s + 1); ++t) rhs = w.map_at(t, n) * rhs;
      if (lhs.entries() != rhs.entries())
        throw InvalidComplex("weak morphism square fails at index " + std::to_string(s) + ", degree " +
                             std::to_string(n));
    }
  }
}

DirectedSystem cohomology_system(const std::vector<GradedComplex>& cs, const std::vector<ChainMap>& maps) {
  DirectedSystem sys;
  for (const auto& c : cs) {
    std::map<int, std::size_t> h;
    for (const auto& [n, k] : cohomology_dims(c))
      if (k) h[n] = k;
    sys.spaces.push_back(std::move(h));
  }
  for (std::size_t i = 0; i + 1 < cs.size() && i < maps.size(); ++i) {
    std::map<int, SparseMatrix> m;
    for (const auto& [n, k] : sys.spaces[i]) {
      if (!dim_in(sys.spaces[i + 1], n)) continue;
      m[n] = induced_cohomology_map(maps[i], n);
    }
    sys.maps.push_back(std::move(m));
  }
  return sys;
}

std::size_t DsColimit::total(std::size_t p) const {
  std::size_t t = 0;
  for (const auto& [n, k] : filtration.at(p)) t += k;
  return t;
}

DsColimit ds_colimit(const DirectedSystem& sys, std::size_t window) {
  sys.validate();
  DsColimit out;
  out.window = window;
  if (sys.spaces.empty()) return out;
  const std::size_t P = sys.spaces.size() - 1;
  out.last = P;
  std::set<int> degs = degrees_of(sys.spaces);
  out.image_dims.resize(P + 1);
  for (std::size_t p = 0; p <= P; ++p) {
    std::map<int, SparseMatrix> comp;
    for (int n : degs) comp[n] = SparseMatrix::identity(dim_in(sys.spaces[p], n));
    for (std::size_t q = p; q <= P; ++q) {
      std::map<int, std::size_t> dims;
      for (int n : degs) dims[n] = linalg::rank(comp[n]);
      out.image_dims[p].push_back(std::move(dims));
      if (q < P)
        for (int n : degs) comp[n] = sys.map_at(q, n) * comp[n];
    }
    out.filtration.push_back(out.image_dims[p].back());
  }
  out.stabilized.assign(P + 1, false);
  for (std::size_t p = 0; p <= P; ++p) {
    if (P < window || p > P - window) continue;
    bool same = true;
    for (std::size_t q = P - window; q <= P; ++q)
      if (out.image_dims[p][q - p] != out.image_dims[p][P - p]) same = false;
    out.stabilized[p] = same;
  }
  std::size_t ref = P >= window ? P - window : 0;
  out.colimit_dims = out.filtration[ref];
  out.all_stabilized = P >= window;
  for (std::size_t p = 0; P >= window && p <= P - window; ++p)
    if (!out.stabilized[p]) out.all_stabilized = false;
  return out;
}

// ---------------------------------------------------------------- filtered cohomology

namespace {

// Kernel of d restricted to F^P C^n, found in order of increasing level so
// that the first cuts[p] vectors span Z(F^p C^n).
struct NestedKernel {
  std::vector<SparseVector> vectors;
  std::vector<std::size_t> cuts;  // cuts[p] for p = 0..P
};

NestedKernel nested_kernel(const FilteredComplex& c, int n, int P) {
  NestedKernel nk;
  std::vector<std::size_t> cols = c.indices_up_to(n, P);
  std::stable_sort(cols.begin(), cols.end(),
                   [&](std::size_t a, std::size_t b) { return c.level_of(n, a) < c.level_of(n, b); });
  SparseMatrix d = c.total.differential(n);
  Echelon e(true);
  std::size_t k = 0;
  for (int p = 0; p <= P; ++p) {
    while (k < cols.size() && c.level_of(n, cols[k]) <= p) {
      if (!e.insert(d.column(cols[k]), static_cast<std::uint32_t>(k))) {
        SparseVector v;
        for (const auto& [t, x] : e.last_relation().entries) v.entries.emplace_back(static_cast<std::uint32_t>(cols[t]), x);
        v.normalize();
        nk.vectors.push_back(std::move(v));
      }
      ++k;
    }
    nk.cuts.push_back(nk.vectors.size());
  }
  return nk;
}

}  // namespace

std::vector<FilteredImage> filtered_image_table(const FilteredComplex& c, int P) {
  std::vector<FilteredImage> table(static_cast<std::size_t>(P) + 1);
  for (const auto& [n, k] : c.total.dims) {
    if (k == 0) continue;
    NestedKernel nk = nested_kernel(c, n, P);
    Echelon e;
    SparseMatrix dprev = c.total.differential(n - 1);
    for (auto j : c.indices_up_to(n - 1, P)) e.insert(dprev.column(j));
    std::size_t r0 = e.rank();
    std::size_t used = 0;
    for (int p = 0; p <= P; ++p) {
      for (; used < nk.cuts[p]; ++used) e.insert(nk.vectors[used]);
      std::size_t dimp = e.rank() - r0;
      table[p].per_degree[n] = dimp;
      table[p].total += dimp;
    }
  }
  return table;
}

FilteredImage filtered_cohomology_image(const FilteredComplex& c, int p) {
  int P = std::max(c.p_max(), p);
  return filtered_image_table(c, P)[p];
}

FilteredComplex truncate(const FilteredComplex& c, int P) {
  FilteredComplex out;
  std::map<int, std::vector<std::size_t>> keep;
  for (const auto& [n, k] : c.total.dims) {
    keep[n] = c.indices_up_to(n, P);
    out.total.dims[n] = keep[n].size();
    std::vector<int> lv;
    for (auto i : keep[n]) lv.push_back(c.level_of(n, i));
    out.level[n] = std::move(lv);
  }
  for (const auto& [n, m] : c.total.d) {
    auto kt = keep.find(n + 1);
    if (kt == keep.end()) continue;
    out.total.d[n] = m.submatrix(kt->second, keep[n]);
  }
  return out;
}

// ---------------------------------------------------------------- boundary depth

std::string BoundaryDepth::describe() const {
  switch (kind) {
    case Kind::Value: return std::to_string(depth);
    case Kind::ExceedsMax: return "exceeds max_d";
    case Kind::NotAcyclic: return "not acyclic";
  }
  return "";
}

BoundaryDepth boundary_depth(const FilteredComplex& c, int max_d) {
  if (!is_acyclic(c.total)) return {BoundaryDepth::Kind::NotAcyclic, 0};
  const int P = c.p_max();
  std::map<int, NestedKernel> kernels;
  for (const auto& [n, k] : c.total.dims)
    if (k) kernels[n] = nested_kernel(c, n, P);
  for (int dd = 0; dd <= max_d; ++dd) {
    bool ok = true;
    for (const auto& [n, nk] : kernels) {
      SparseMatrix dprev = c.total.differential(n - 1);
      for (int p = 0; p <= P && ok; ++p) {
        Echelon e;
        for (auto j : c.indices_up_to(n - 1, p + dd)) e.insert(dprev.column(j));
        for (std::size_t t = 0; t < nk.cuts[p] && ok; ++t)
          if (!e.is_member(nk.vectors[t])) ok = false;
      }
      if (!ok) break;
    }
    if (ok) return {BoundaryDepth::Kind::Value, dd};
  }
  return {BoundaryDepth::Kind::ExceedsMax, max_d};
}

}  // namespace artifact::complexes
