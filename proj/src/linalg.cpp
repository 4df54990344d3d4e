#include "artifact/linalg.hpp"

#include <algorithm>

namespace artifact::linalg {

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t.push_back(c);
  if (t.empty()) throw std::invalid_argument("empty rational");
  auto slash = t.find('/');
  auto valid_int = [](const std::string& x) {
    std::size_t i = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
    if (i >= x.size()) return false;
    for (; i < x.size(); ++i)
      if (x[i] < '0' || x[i] > '9') return false;
    return true;
  };
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed rational '" + s + "'");
  if (num[0] == '+') num = num.substr(1);
  if (den[0] == '+') den = den.substr(1);
  Integer n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// ---------------------------------------------------------------- SparseVector

Rational SparseVector::get(std::uint32_t i) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), i,
                             [](const auto& e, std::uint32_t k) { return e.first < k; });
  if (it != entries.end() && it->first == i) return it->second;
  return 0;
}

void SparseVector::add(std::uint32_t i, const Rational& v) {
  if (v == 0) return;
  if (entries.empty() || entries.back().first < i) {
    entries.emplace_back(i, v);
    return;
  }
  auto it = std::lower_bound(entries.begin(), entries.end(), i,
                             [](const auto& e, std::uint32_t k) { return e.first < k; });
  if (it != entries.end() && it->first == i) {
    it->second += v;
    if (it->second == 0) entries.erase(it);
  } else {
    entries.insert(it, {i, v});
  }
}

void SparseVector::normalize() {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<std::uint32_t, Rational>> out;
  out.reserve(entries.size());
  for (auto& e : entries) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(std::move(e));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return e.second == 0; }),
            out.end());
  entries = std::move(out);
}

void SparseVector::scale(const Rational& c) {
  if (c == 0) {
    entries.clear();
    return;
  }
  for (auto& e : entries) e.second *= c;
}

void SparseVector::axpy(const Rational& c, const SparseVector& other) {
  if (c == 0 || other.empty()) return;
  std::vector<std::pair<std::uint32_t, Rational>> out;
  out.reserve(entries.size() + other.entries.size());
  std::size_t i = 0, j = 0;
  while (i < entries.size() || j < other.entries.size()) {
    if (j == other.entries.size() || (i < entries.size() && entries[i].first < other.entries[j].first)) {
      out.push_back(std::move(entries[i++]));
    } else if (i == entries.size() || other.entries[j].first < entries[i].first) {
      out.emplace_back(other.entries[j].first, c * other.entries[j].second);
      ++j;
    } else {
      Rational v = entries[i].second + c * other.entries[j].second;
      if (v != 0) out.emplace_back(entries[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  entries = std::move(out);
}

SparseVector SparseVector::unit(std::uint32_t i) {
  SparseVector v;
  v.entries.emplace_back(i, 1);
  return v;
}

SparseVector SparseVector::from_dense(const std::vector<Rational>& v) {
  SparseVector s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.entries.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return s;
}

std::vector<Rational> SparseVector::to_dense(std::size_t n) const {
  std::vector<Rational> d(n, 0);
  for (const auto& [i, v] : entries) {
    if (i >= n) throw DimensionMismatch("vector index out of range");
    d[i] = v;
  }
  return d;
}

// ---------------------------------------------------------------- SparseMatrix

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols_[i] = SparseVector::unit(static_cast<std::uint32_t>(i));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows[0].size() : 0;
  SparseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged dense matrix");
    for (std::size_t j = 0; j < c; ++j)
      if (rows[i][j] != 0) m.cols_[j].entries.emplace_back(static_cast<std::uint32_t>(i), rows[i][j]);
  }
  return m;
}

void SparseMatrix::set_column(std::size_t c, SparseVector v) {
  if (c >= cols_.size()) throw DimensionMismatch("column index out of range");
  if (!v.entries.empty() && v.entries.back().first >= rows_)
    throw DimensionMismatch("column entry exceeds row count");
  cols_[c] = std::move(v);
}

Rational SparseMatrix::get(std::size_t r, std::size_t c) const {
  return cols_.at(c).get(static_cast<std::uint32_t>(r));
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_.size()) throw DimensionMismatch("matrix index out of range");
  Rational old = get(r, c);
  cols_[c].add(static_cast<std::uint32_t>(r), v - old);
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_.size()) throw DimensionMismatch("matrix index out of range");
  cols_[c].add(static_cast<std::uint32_t>(r), v);
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.nnz();
  return n;
}

bool SparseMatrix::is_zero() const { return nnz() == 0; }

SparseVector SparseMatrix::apply(const SparseVector& v) const {
  SparseVector out;
  for (const auto& [i, x] : v.entries) {
    if (i >= cols_.size()) throw DimensionMismatch("vector longer than matrix columns");
    out.axpy(x, cols_[i]);
  }
  return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols() != o.rows()) throw DimensionMismatch("matrix product shape mismatch");
  SparseMatrix m(rows_, o.cols());
  for (std::size_t j = 0; j < o.cols(); ++j) m.cols_[j] = apply(o.cols_[j]);
  return m;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols(), rows_);
  for (std::size_t j = 0; j < cols_.size(); ++j)
    for (const auto& [i, v] : cols_[j].entries) t.cols_[i].entries.emplace_back(static_cast<std::uint32_t>(j), v);
  return t;
}

SparseMatrix SparseMatrix::submatrix(const std::vector<std::size_t>& row_idx,
                                     const std::vector<std::size_t>& col_idx) const {
  std::vector<std::int64_t> rmap(rows_, -1);
  for (std::size_t k = 0; k < row_idx.size(); ++k) rmap.at(row_idx[k]) = static_cast<std::int64_t>(k);
  SparseMatrix m(row_idx.size(), col_idx.size());
  for (std::size_t k = 0; k < col_idx.size(); ++k) {
    SparseVector v;
    for (const auto& [i, x] : cols_.at(col_idx[k]).entries)
      if (rmap[i] >= 0) v.entries.emplace_back(static_cast<std::uint32_t>(rmap[i]), x);
    v.normalize();
    m.cols_[k] = std::move(v);
  }
  return m;
}

std::map<std::pair<std::size_t, std::size_t>, Rational> SparseMatrix::entries() const {
  std::map<std::pair<std::size_t, std::size_t>, Rational> e;
  for (std::size_t j = 0; j < cols_.size(); ++j)
    for (const auto& [i, v] : cols_[j].entries) e[{i, j}] = v;
  return e;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  return rows_ == o.rows_ && cols_.size() == o.cols_.size() && cols_ == o.cols_;
}

// ---------------------------------------------------------------- Echelon

Echelon::IVec Echelon::to_int(const SparseVector& v, Integer* denom) {
  Integer l = 1;
  for (const auto& e : v.entries) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
  IVec out;
  out.reserve(v.entries.size());
  for (const auto& [i, q] : v.entries) out.emplace_back(i, Integer(q.get_num() * (l / q.get_den())));
  if (denom) *denom = l;
  return out;
}

SparseVector Echelon::to_rat(const IVec& v) {
  SparseVector s;
  s.entries.reserve(v.size());
  for (const auto& [i, z] : v) s.entries.emplace_back(i, Rational(z));
  return s;
}

// a <- ca*a + cb*b, both sorted.
void Echelon::combine(IVec& a, const Integer& ca, const IVec& b, const Integer& cb) {
  IVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.emplace_back(a[i].first, Integer(ca * a[i].second));
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, Integer(cb * b[j].second));
      ++j;
    } else {
      Integer v = ca * a[i].second + cb * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

void Echelon::make_primitive(IVec& v, IVec* comb) {
  Integer g = 0;
  for (const auto& e : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
  if (comb)
    for (const auto& e : *comb) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
  if (g <= 1) return;
  for (auto& e : v) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  if (comb)
    for (auto& e : *comb) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

void Echelon::reduce_int(IVec& v, IVec* comb) const {
  while (!v.empty()) {
    auto it = rows_.find(v.back().first);
    if (it == rows_.end()) return;
    const Row& r = it->second;
    Integer a = v.back().second;
    Integer b = r.v.back().second;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer fa = b / g, fb = -(a / g);
    combine(v, fa, r.v, fb);
    if (comb) combine(*comb, fa, r.comb, fb);
    make_primitive(v, comb);
  }
}

bool Echelon::insert(const SparseVector& vin, std::uint32_t tag) {
  Integer den;
  IVec v = to_int(vin, &den);
  IVec comb;
  if (track_) comb.emplace_back(tag, den);
  while (!v.empty()) {
    auto it = rows_.find(v.back().first);
    if (it == rows_.end()) {
      make_primitive(v, track_ ? &comb : nullptr);
      std::uint32_t piv = v.back().first;
      rows_[piv] = Row{std::move(v), std::move(comb)};
      return true;
    }
    Row& r = it->second;
    if (v.size() < r.v.size()) {  // keep the sparser row as pivot row
      std::swap(v, r.v);
      std::swap(comb, r.comb);
    }
    Integer a = v.back().second;
    Integer b = r.v.back().second;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer fa = b / g, fb = -(a / g);
    combine(v, fa, r.v, fb);
    if (track_) combine(comb, fa, r.comb, fb);
    make_primitive(v, track_ ? &comb : nullptr);
  }
  relation_ = to_rat(comb);
  return false;
}

bool Echelon::is_member(const SparseVector& vin) const {
  IVec v = to_int(vin);
  reduce_int(v, nullptr);
  return v.empty();
}

SparseVector Echelon::reduce(const SparseVector& vin) const {
  IVec v = to_int(vin);
  reduce_int(v, nullptr);
  return to_rat(v);
}

std::optional<SparseVector> Echelon::solve(const SparseVector& vin) const {
  if (!track_) throw std::logic_error("Echelon::solve needs tracking");
  Integer den;
  IVec v = to_int(vin, &den);
  // Invariant: scale * vin*den == v + sum comb_t * orig_t  (so vin = -comb/(scale*den) at the end)
  Integer scale = 1;
  IVec comb;
  while (!v.empty()) {
    auto it = rows_.find(v.back().first);
    if (it == rows_.end()) return std::nullopt;
    const Row& r = it->second;
    Integer a = v.back().second;
    Integer b = r.v.back().second;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer fa = b / g, fb = -(a / g);
    combine(v, fa, r.v, fb);
    // fa*(scale*vin*den) = fa*v_old + fa*comb ; v_new = fa*v_old + fb*r.v
    // => fa*scale*vin*den = v_new - fb*r.v + fa*comb
    combine(comb, fa, r.comb, Integer(-fb));
    scale *= fa;
  }
  SparseVector out = to_rat(comb);
  out.scale(Rational(1) / Rational(Integer(scale * den)));
  out.normalize();
  return out;
}

std::vector<SparseVector> Echelon::basis() const {
  std::vector<SparseVector> b;
  for (const auto& [p, r] : rows_) b.push_back(to_rat(r.v));
  return b;
}

// ---------------------------------------------------------------- Subspace & ops

Subspace Subspace::full(std::size_t n) {
  Subspace s{n, {}};
  for (std::size_t i = 0; i < n; ++i) s.basis.push_back(SparseVector::unit(static_cast<std::uint32_t>(i)));
  return s;
}

Subspace Subspace::span(std::size_t n, const std::vector<SparseVector>& vs) {
  Subspace s{n, {}};
  Echelon e;
  for (const auto& v : vs) {
    if (!v.entries.empty() && v.entries.back().first >= n)
      throw DimensionMismatch("vector exceeds ambient dimension");
    if (e.insert(v)) s.basis.push_back(v);
  }
  return s;
}

bool Subspace::contains(const SparseVector& v) const {
  Echelon e;
  for (const auto& b : basis) e.insert(b);
  return e.is_member(v);
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim != ambient_dim) throw DimensionMismatch("subspaces in different ambients");
  Echelon e;
  for (const auto& b : basis) e.insert(b);
  for (const auto& v : other.basis)
    if (!e.is_member(v)) return false;
  return true;
}

std::size_t rank(const SparseMatrix& m) {
  Echelon e;
  for (std::size_t j = 0; j < m.cols(); ++j) e.insert(m.column(j));
  return e.rank();
}

std::pair<Subspace, Subspace> kernel_image(const SparseMatrix& m) {
  Echelon e(true);
  Subspace ker{m.cols(), {}}, im{m.rows(), {}};
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (e.insert(m.column(j), static_cast<std::uint32_t>(j)))
      im.basis.push_back(m.column(j));
    else
      ker.basis.push_back(e.last_relation());
  }
  return {ker, im};
}

Subspace kernel(const SparseMatrix& m) { return kernel_image(m).first; }

Subspace image(const SparseMatrix& m) {
  Subspace im{m.rows(), {}};
  Echelon e;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (e.insert(m.column(j))) im.basis.push_back(m.column(j));
  return im;
}

std::size_t induced_image_dim(const SparseMatrix& f, const Subspace& source_sub,
                              const Subspace& target_sub, const Subspace& target_quot) {
  if (f.cols() != source_sub.ambient_dim || f.rows() != target_sub.ambient_dim ||
      target_quot.ambient_dim != target_sub.ambient_dim)
    throw DimensionMismatch("induced_image_dim: ambient dimensions disagree");
  Echelon e;
  for (const auto& q : target_quot.basis) e.insert(q);
  std::size_t r0 = e.rank();
  for (const auto& b : source_sub.basis) e.insert(f.apply(b));
  return e.rank() - r0;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim != b.ambient_dim) throw DimensionMismatch("sum of subspaces in different ambients");
  std::vector<SparseVector> vs = a.basis;
  vs.insert(vs.end(), b.basis.begin(), b.basis.end());
  return Subspace::span(a.ambient_dim, vs);
}

Subspace intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim != b.ambient_dim) throw DimensionMismatch("intersection in different ambients");
  // Relations sum x_i a_i - sum y_j b_j = 0 give the intersection as sum x_i a_i.
  Echelon e(true);
  std::uint32_t na = static_cast<std::uint32_t>(a.basis.size());
  for (std::uint32_t i = 0; i < na; ++i) e.insert(a.basis[i], i);
  std::vector<SparseVector> out;
  for (std::uint32_t j = 0; j < b.basis.size(); ++j) {
    if (e.insert(b.basis[j], na + j)) continue;
    SparseVector v;
    for (const auto& [t, c] : e.last_relation().entries)
      if (t < na) v.axpy(c, a.basis[t]);
    out.push_back(std::move(v));
  }
  return Subspace::span(a.ambient_dim, out);
}

Subspace apply(const SparseMatrix& f, const Subspace& s) {
  if (f.cols() != s.ambient_dim) throw DimensionMismatch("apply: ambient mismatch");
  std::vector<SparseVector> vs;
  for (const auto& b : s.basis) vs.push_back(f.apply(b));
  return Subspace::span(f.rows(), vs);
}

std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b) {
  Echelon e(true);
  for (std::size_t j = 0; j < m.cols(); ++j) e.insert(m.column(j), static_cast<std::uint32_t>(j));
  return e.solve(b);
}

}  // namespace artifact::linalg
