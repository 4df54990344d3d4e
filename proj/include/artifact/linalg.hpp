#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace artifact::linalg {

// mpq_class keeps itself canonical: positive denominator, reduced by gcd.
using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(const std::string& s);  // "n", "n/d", "-n/d"
std::string to_string(const Rational& q);

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sorted by index, no stored zeros.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, Rational>> entries;

  bool empty() const { return entries.empty(); }
  std::size_t nnz() const { return entries.size(); }
  Rational get(std::uint32_t i) const;
  void add(std::uint32_t i, const Rational& v);  // unsorted-safe accumulate
  void normalize();                              // sort, merge, drop zeros
  void scale(const Rational& c);
  void axpy(const Rational& c, const SparseVector& other);  // this += c*other
  bool operator==(const SparseVector& o) const { return entries == o.entries; }

  static SparseVector unit(std::uint32_t i);
  static SparseVector from_dense(const std::vector<Rational>& v);
  std::vector<Rational> to_dense(std::size_t n) const;
};

// Column-compressed storage; entry (r, c) lives in column c.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  const SparseVector& column(std::size_t c) const { return cols_.at(c); }
  void set_column(std::size_t c, SparseVector v);
  Rational get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  void add(std::size_t r, std::size_t c, const Rational& v);
  std::size_t nnz() const;
  bool is_zero() const;

  SparseVector apply(const SparseVector& v) const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix transpose() const;
  // Rows/cols restricted to the given index lists (in order).
  SparseMatrix submatrix(const std::vector<std::size_t>& row_idx,
                         const std::vector<std::size_t>& col_idx) const;
  std::map<std::pair<std::size_t, std::size_t>, Rational> entries() const;
  bool operator==(const SparseMatrix& o) const;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector> cols_;
};

struct Subspace {
  std::size_t ambient_dim = 0;
  std::vector<SparseVector> basis;  // linearly independent

  std::size_t dim() const { return basis.size(); }
  static Subspace zero(std::size_t n) { return {n, {}}; }
  static Subspace full(std::size_t n);
  // Span of arbitrary vectors; dependent ones are dropped.
  static Subspace span(std::size_t n, const std::vector<SparseVector>& vs);
  bool contains(const SparseVector& v) const;
  bool contains(const Subspace& other) const;
};

// Incremental row echelon form over the integers (fraction-free).  Each stored
// row has a pivot at its largest index; when two candidate rows share a pivot
// the sparser one is kept, which keeps fill low on the structured matrices
// produced by bar complexes.  Optionally tracks, for each stored row, the
// combination of inserted vectors that produced it.
class Echelon {
 public:
  explicit Echelon(bool track = false) : track_(track) {}

  // Returns true if v was independent of the rows so far.  With tracking, the
  // tag identifies v in combinations; a dependent v yields a relation
  // (retrievable by last_relation()).
  bool insert(const SparseVector& v, std::uint32_t tag = 0);
  bool is_member(const SparseVector& v) const;
  // Remainder of v after reduction (scaled by a nonzero integer).
  SparseVector reduce(const SparseVector& v) const;
  // Express v as a rational combination of the inserted tags; nullopt if not
  // in the span.  Requires tracking.
  std::optional<SparseVector> solve(const SparseVector& v) const;
  std::size_t rank() const { return rows_.size(); }
  const SparseVector& last_relation() const { return relation_; }
  std::vector<SparseVector> basis() const;

 private:
  struct Row {
    std::vector<std::pair<std::uint32_t, Integer>> v;
    std::vector<std::pair<std::uint32_t, Integer>> comb;
  };
  using IVec = std::vector<std::pair<std::uint32_t, Integer>>;
  static IVec to_int(const SparseVector& v, Integer* denom = nullptr);
  static SparseVector to_rat(const IVec& v);
  static void combine(IVec& a, const Integer& ca, const IVec& b, const Integer& cb);
  static void make_primitive(IVec& v, IVec* comb);
  void reduce_int(IVec& v, IVec* comb) const;

  bool track_;
  std::map<std::uint32_t, Row> rows_;  // pivot -> row
  SparseVector relation_;
};

std::size_t rank(const SparseMatrix& m);
// (ker m, im m)
std::pair<Subspace, Subspace> kernel_image(const SparseMatrix& m);
Subspace kernel(const SparseMatrix& m);
Subspace image(const SparseMatrix& m);
// dim of (f(source_sub) + target_quot) / target_quot inside target_sub.
std::size_t induced_image_dim(const SparseMatrix& f, const Subspace& source_sub,
                              const Subspace& target_sub, const Subspace& target_quot);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersection(const Subspace& a, const Subspace& b);
Subspace apply(const SparseMatrix& f, const Subspace& s);
// Some x with m x = b, if one exists.
std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b);

}  // namespace artifact::linalg
