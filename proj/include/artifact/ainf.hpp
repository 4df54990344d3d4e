#pragma once

#include <any>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "artifact/complexes.hpp"

namespace artifact::ainf {

using complexes::GradedComplex;
using linalg::Rational;
using linalg::SparseMatrix;
using linalg::SparseVector;

class AInfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Products follow Seidel's conventions: mu^d(a_d, ..., a_1) with
// a_k in hom(X_{k-1}, X_k), of degree sum |a_k| + 2 - d.  Throughout the code
// a chain is passed as objs = X_0..X_d and idx with idx[k-1] the basis index
// of a_k, i.e. the rightmost input comes first.
class CategoryView {
 public:
  virtual ~CategoryView() = default;
  virtual std::size_t object_count() const = 0;
  virtual std::string object_name(std::size_t x) const = 0;
  virtual std::size_t hom_dim(std::size_t x, std::size_t y) const = 0;
  virtual int degree(std::size_t x, std::size_t y, std::uint32_t i) const = 0;
  // Largest d with mu^d possibly nonzero; 0 when unbounded.
  virtual int max_arity() const = 0;
  virtual SparseVector mu(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const = 0;
};

// Multilinear extension of mu to arbitrary vectors.
SparseVector mu_linear(const CategoryView& v, const std::vector<std::size_t>& objs,
                       const std::vector<SparseVector>& args);

// (hom(x, y), mu^1) as a graded complex; position[i] = (degree, index within
// that degree) of basis element i, and by_degree is the inverse.
struct HomComplex {
  GradedComplex complex;
  std::vector<std::pair<int, std::size_t>> position;
  std::map<int, std::vector<std::uint32_t>> by_degree;

  SparseVector to_graded(const SparseVector& v, int n) const;  // restrict to degree n, local coordinates
  SparseVector from_graded(const SparseVector& v, int n) const;
};
HomComplex hom_complex(const CategoryView& v, std::size_t x, std::size_t y);

struct Morphism {
  std::string name;
  int degree = 0;
};

class AInfCategory : public CategoryView {
 public:
  std::size_t add_object(const std::string& name);
  std::uint32_t add_morphism(std::size_t x, std::size_t y, const std::string& name, int degree);
  // Sets mu^d on a basis tuple (replacing any previous value).
  void set_product(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx, SparseVector value);
  void set_arity_bound(int d) { arity_bound_ = d; }
  void set_unit(std::size_t x, std::uint32_t i) { units_[x] = i; }

  std::size_t object_count() const override { return objects_.size(); }
  std::string object_name(std::size_t x) const override { return objects_.at(x); }
  std::size_t hom_dim(std::size_t x, std::size_t y) const override;
  int degree(std::size_t x, std::size_t y, std::uint32_t i) const override;
  int max_arity() const override { return arity_bound_; }
  SparseVector mu(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const override;

  int arity_bound() const { return arity_bound_; }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Morphism>& morphisms(std::size_t x, std::size_t y) const;
  std::optional<std::size_t> find_object(const std::string& name) const;
  std::optional<std::uint32_t> find_morphism(std::size_t x, std::size_t y, const std::string& name) const;
  std::optional<std::uint32_t> unit(std::size_t x) const;
  const std::map<std::size_t, std::uint32_t>& units() const { return units_; }
  // Nonzero product table entries keyed by (objs, idx).
  const std::map<std::pair<std::vector<std::size_t>, std::vector<std::uint32_t>>, SparseVector>& products() const {
    return products_;
  }
  bool operator==(const AInfCategory& o) const;

 private:
  std::vector<std::string> objects_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Morphism>> homs_;
  std::map<std::pair<std::vector<std::size_t>, std::vector<std::uint32_t>>, SparseVector> products_;
  std::map<std::size_t, std::uint32_t> units_;
  int arity_bound_ = 2;
};

struct AinftyFailure {
  std::size_t arity = 0;
  std::vector<std::size_t> objs;
  std::vector<std::uint32_t> idx;
  SparseVector residual;
  std::string describe(const CategoryView& v) const;
};

struct AinftyCheck {
  bool ok = true;
  std::size_t relations_checked = 0;
  std::optional<AinftyFailure> failure;
};

struct AinftyCheckOptions {
  // Optional weight of a basis element; tuples whose total weight exceeds
  // `budget` are skipped (used for length-truncated quotients).
  std::function<int(std::size_t, std::size_t, std::uint32_t)> weight;
  int budget = 0;
  // Restrict object chains to these objects (all when empty).
  std::vector<std::size_t> objects;
};

// Verifies the A-infinity relations on all basis tuples of total arity
// <= check_arity; stops at the first violated relation.
AinftyCheck check_ainfty(const CategoryView& v, std::size_t check_arity, const AinftyCheckOptions& opts = {});

// Formal cohomology category: homs H(hom), mu^1 = 0, mu^2 induced, higher
// products dropped.
AInfCategory cohomology_category(const CategoryView& v);

// ---------------------------------------------------------------- twisted complexes

// A formal sum of shifted objects X_j[n_j] of a base category with a
// strictly level-decreasing differential delta.  delta[{j, i}] is the
// component from summand j to summand i, a vector in hom(X_j, X_i) of the
// base category (its degree in Tw is 1).
struct TwistedComplex {
  struct Summand {
    std::size_t object = 0;
    int shift = 0;
    int level = 0;
  };
  std::string name;
  std::vector<Summand> summands;
  std::map<std::pair<std::size_t, std::size_t>, SparseVector> delta;
  std::any origin;  // builder-specific description (e.g. a complex of line bundles)

  int length() const;  // number of distinct levels
  TwistedComplex shifted(int s) const;
  static TwistedComplex object(std::size_t x, const std::string& name, int shift = 0);
  void validate_shape(const CategoryView& base) const;  // indices, level-decrease, component degrees
};

TwistedComplex direct_sum(const std::vector<TwistedComplex>& parts, const std::string& name = "");

// The category view whose objects are twisted complexes over `base`.  Hom
// basis of (T, T'): triples (j, i, b) with b a base basis element of
// hom(T_j, T'_i), of degree |b| + n_j - m_i.  Products insert delta in all
// possible ways (finitely many by lower-triangularity).
class TwView : public CategoryView {
 public:
  struct BasisElement {
    std::uint32_t source;  // summand of the source complex
    std::uint32_t target;  // summand of the target complex
    std::uint32_t base;    // base basis element
  };

  TwView(std::shared_ptr<const CategoryView> base, std::vector<TwistedComplex> objects);

  std::size_t object_count() const override { return objects_.size(); }
  std::string object_name(std::size_t x) const override { return objects_.at(x).name; }
  std::size_t hom_dim(std::size_t x, std::size_t y) const override { return basis(x, y).size(); }
  int degree(std::size_t x, std::size_t y, std::uint32_t i) const override;
  int max_arity() const override { return base_->max_arity(); }
  SparseVector mu(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const override;

  const TwistedComplex& object(std::size_t x) const { return objects_.at(x); }
  const std::vector<BasisElement>& basis(std::size_t x, std::size_t y) const;
  std::optional<std::uint32_t> index_of(std::size_t x, std::size_t y, const BasisElement& e) const;
  const CategoryView& base() const { return *base_; }
  std::shared_ptr<const CategoryView> base_ptr() const { return base_; }
  // Sum over all delta paths of length >= 1 (the Maurer-Cartan expression),
  // as an element of hom(T, T) in this view's basis.
  SparseVector mc_residual(std::size_t x) const;

 private:
  struct PathStep {
    std::uint32_t to;
    const SparseVector* entry;
  };
  void ensure_basis(std::size_t x, std::size_t y) const;
  SparseVector compute_mu(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const;

  std::shared_ptr<const CategoryView> base_;
  std::vector<TwistedComplex> objects_;
  std::vector<std::vector<std::vector<PathStep>>> out_;  // out_[x][j]: delta edges from summand j
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<BasisElement>> basis_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t>> index_;
  mutable std::unordered_map<std::string, SparseVector> cache_;
};

// Throws AInfError naming the first failing entry if T violates Maurer-Cartan.
void check_maurer_cartan(const std::shared_ptr<const CategoryView>& base, const TwistedComplex& t);

// The hom complex of Tw(base) between X and Y (MC verified on both).
GradedComplex tw_hom(const TwistedComplex& x, const TwistedComplex& y, const std::shared_ptr<const CategoryView>& base);
// mu^k in Tw(base) along chain[0] -> ... -> chain[k]; args[i] in hom(chain[i], chain[i+1]).
SparseVector tw_product(const std::vector<TwistedComplex>& chain, const std::vector<SparseVector>& args,
                        const std::shared_ptr<const CategoryView>& base);

// Basis of hom(X, Y) in Tw(base), in the order used by TwView.
std::vector<TwView::BasisElement> tw_basis(const CategoryView& base, const TwistedComplex& x, const TwistedComplex& y);

// The unit of X in Tw(base): the base unit on each summand X_j[n_j], with sign (-1)^{n_j}.
SparseVector tw_identity(const AInfCategory& base, const TwistedComplex& x);

// cone of a closed degree-0 f in hom(X, Y): X[1] ⊕ Y, levels of X raised above Y.
TwistedComplex tw_cone(const CategoryView& base, const TwistedComplex& x, const TwistedComplex& y,
                       const SparseVector& f, const std::string& name = "");

// Finds a closed element of the given degree in hom(x, y) of `view` whose
// coordinates agree with `fixed` outside `free` (indices that may be chosen);
// nullopt if none exists.
std::optional<SparseVector> solve_closed_extension(const CategoryView& view, std::size_t x, std::size_t y,
                                                   const SparseVector& fixed, const std::vector<std::uint32_t>& free);

// H(f∘-) : H(hom(z, x)) -> H(hom(z, y)) is an isomorphism for every z in
// `probes` (f closed of degree 0 in hom(x, y)).
bool is_quasi_iso_on(const CategoryView& view, std::size_t x, std::size_t y, const SparseVector& f,
                     const std::vector<std::size_t>& probes);

// Chain map hom(z, x) -> hom(z, y), a ↦ (-1)^{|a|} mu^2(f, a), for f closed of degree 0.
complexes::ChainMap postcomposition(const CategoryView& view, std::size_t z, std::size_t x, std::size_t y,
                                    const SparseVector& f);

struct ExceptionalCollection {
  std::vector<TwistedComplex> objects;
  // Throws AInfError unless H(E_i, E_i) = Q in degree 0 and H(E_i, E_j) = 0 for j < i.
  void validate(const std::shared_ptr<const CategoryView>& base) const;
};

struct Resolution {
  TwistedComplex complex;                  // over the collection, flattened to the base
  std::vector<std::size_t> collection_of;  // per summand of `complex`: index into the collection
  SparseVector witness;                    // closed degree-0 quasi-isomorphism complex -> T
  int length = 0;
};

// Cascade of evaluation cones E_i ⊗ H(E_i, -) -> (-) for i = l..1; throws
// AInfError("not generated") if a nonzero residue remains.
Resolution exceptional_resolve(const TwistedComplex& t, const ExceptionalCollection& coll,
                               const std::shared_ptr<const CategoryView>& base);

// ---------------------------------------------------------------- minimal models

// Homotopy transfer of an A-infinity structure onto cohomology.  For each
// hom complex a splitting V = B ⊕ H ⊕ L is chosen with mu^1 : L -> B
// invertible; h inverts mu^1 on B and vanishes on H ⊕ L.  Products are
// lambda^1 = i, lambda^d = sign * sum h mu^r(lambda, ..., lambda),
// mu_min^d = sum p mu^r(lambda, ..., lambda), memoized per basis tuple.
class MinimalModel : public CategoryView {
 public:
  explicit MinimalModel(std::shared_ptr<const CategoryView> v, int h_sign = -1);

  std::size_t object_count() const override { return v_->object_count(); }
  std::string object_name(std::size_t x) const override { return v_->object_name(x); }
  std::size_t hom_dim(std::size_t x, std::size_t y) const override { return data(x, y).reps.size(); }
  int degree(std::size_t x, std::size_t y, std::uint32_t i) const override { return data(x, y).degrees.at(i); }
  int max_arity() const override { return 0; }
  SparseVector mu(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const override;

  // The chain-level representative of basis element i (the map i).
  const SparseVector& representative(std::size_t x, std::size_t y, std::uint32_t i) const {
    return data(x, y).reps.at(i);
  }
  // lambda^d on a basis tuple: an element of the original hom(X_0, X_d).
  SparseVector lambda(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const;
  // Cohomology coordinates of a cocycle of the original hom(x, y).
  SparseVector project(std::size_t x, std::size_t y, const SparseVector& v) const;
  const CategoryView& original() const { return *v_; }

 private:
  struct PairData {
    std::vector<SparseVector> reps;
    std::vector<int> degrees;
    // Per degree: echelon over [reps | boundaries | complement] tracking the
    // decomposition; h and p are read off from it.
    std::map<int, std::shared_ptr<linalg::Echelon>> decomposition;
    std::map<int, std::vector<SparseVector>> complement;   // L^n basis (global coordinates)
    std::map<int, std::vector<SparseVector>> boundary;     // mu^1 of complement, B^{n+1} basis
    std::map<int, std::size_t> rep_offset;                 // first rep index in degree n
    std::map<int, std::size_t> rep_count;
    HomComplex hc;
  };
  const PairData& data(std::size_t x, std::size_t y) const;
  SparseVector apply_h(std::size_t x, std::size_t y, const SparseVector& v) const;
  SparseVector apply_p(std::size_t x, std::size_t y, const SparseVector& v) const;
  // sum over r >= 2 and compositions of d of mu^r(lambda, ..., lambda).
  SparseVector tree_sum(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const;

  std::shared_ptr<const CategoryView> v_;
  int h_sign_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<PairData>> data_;
  mutable std::unordered_map<std::string, SparseVector> lambda_cache_, mu_cache_;
};

// Cache key for a basis tuple.
std::string tuple_key(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx);

}  // namespace artifact::ainf
