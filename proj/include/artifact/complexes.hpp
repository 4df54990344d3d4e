#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "artifact/linalg.hpp"

namespace artifact::complexes {

using linalg::Rational;
using linalg::SparseMatrix;
using linalg::SparseVector;
using linalg::Subspace;

class InvalidComplex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cochain complex over Q; d[n] : C^n -> C^{n+1}.
struct GradedComplex {
  std::map<int, std::size_t> dims;
  std::map<int, SparseMatrix> d;

  std::size_t dim(int n) const;
  std::size_t total_dim() const;
  SparseMatrix differential(int n) const;  // zero matrix of the right shape if absent
  int min_degree() const;                  // over nonzero components; 0 if empty
  int max_degree() const;
  void validate() const;                   // shapes and d∘d = 0
  GradedComplex shift(int k) const;        // C[k]^n = C^{n+k}, d -> (-1)^k d
};

// Filtration given on an adapted basis: level[n][i] is the least p with basis
// vector i of C^n in F^p.  F^p is the span of basis vectors of level <= p.
struct FilteredComplex {
  GradedComplex total;
  std::map<int, std::vector<int>> level;

  int p_max() const;  // least p with F^p = total (0 for the empty complex)
  int level_of(int n, std::size_t i) const;
  std::vector<std::size_t> indices_up_to(int n, int p) const;  // basis of F^pC^n
  Subspace filtration(int p, int n) const;
  std::size_t filtration_dim(int p, int n) const;
  void validate() const;  // complex invariants plus d(F^p) ⊆ F^p, levels >= 0

  static FilteredComplex trivial(const GradedComplex& c);  // F^0 = C
};

struct ChainMap {
  GradedComplex source, target;
  std::map<int, SparseMatrix> f;  // f[n] : source^n -> target^n

  SparseMatrix at(int n) const;
  void validate() const;  // shapes and d f = f d
};

struct FilteredChainMap {
  FilteredComplex source, target;
  std::map<int, SparseMatrix> f;

  SparseMatrix at(int n) const;
  ChainMap underlying() const;
  void validate() const;  // chain map and F^p -> F^p

  static FilteredChainMap identity(const FilteredComplex& c);
  static FilteredChainMap zero(const FilteredComplex& s, const FilteredComplex& t);
};

struct CohomologyGroup {
  std::size_t dim = 0;
  Subspace representatives;  // cocycles spanning a complement of the coboundaries
};

std::map<int, CohomologyGroup> cohomology(const GradedComplex& c);
std::map<int, std::size_t> cohomology_dims(const GradedComplex& c);
bool is_acyclic(const GradedComplex& c);

// Coordinates of cocycles of C^n in the basis of cohomology() representatives.
class CohomologyCoordinates {
 public:
  CohomologyCoordinates(const GradedComplex& c, int n);
  std::size_t dim() const { return reps_.size(); }
  const std::vector<SparseVector>& representatives() const { return reps_; }
  // nullopt if v is not a cocycle.
  std::optional<SparseVector> coordinates(const SparseVector& v) const;
  bool is_coboundary(const SparseVector& v) const;

 private:
  SparseMatrix d_;
  std::vector<SparseVector> reps_;
  linalg::Echelon echelon_{true};
  linalg::Echelon boundaries_;
};

// Matrix of H^n(f) in the representative bases of source and target.
SparseMatrix induced_cohomology_map(const ChainMap& f, int n);

// C1[1] ⊕ C2 with d(x, y) = (-d x, f x + d y); the C1 block comes first.
GradedComplex cone(const ChainMap& f);
// F^p = F^{p-r} C1[1] ⊕ F^p C2.
FilteredComplex r_cone(const FilteredChainMap& f, int r);
// The inclusion C2 -> cone_r(f).
FilteredChainMap cone_inclusion(const FilteredChainMap& f, int r);

// A_n -> ... -> A_0 with components maps[{i, j}] : A_i -> A_j (i > j) of degree
// j - i + 1.  The total space is ⊕ A_i[i], blocks ordered from A_n down to A_0,
// with diagonal blocks (-1)^i d_{A_i}.
struct TwistedSequence {
  std::vector<FilteredComplex> terms;  // terms[i] = A_i
  std::map<std::pair<int, int>, std::map<int, SparseMatrix>> maps;  // {i,j} -> degree n of A_i -> matrix
};
FilteredComplex iterated_r_cone(const TwistedSequence& seq, int r);

// Telescope cone(⊕_{i<N} C_i --(f-1)--> ⊕_{i<=N} C_i) on the first n_terms
// complexes, filtered by stage.
FilteredComplex hocolim(const std::vector<GradedComplex>& cs, const std::vector<ChainMap>& maps,
                        std::size_t n_terms);

// Graded vector spaces with transitions V_s -> V_{s+1}, indexed from 0.
struct DirectedSystem {
  std::vector<std::map<int, std::size_t>> spaces;
  std::vector<std::map<int, SparseMatrix>> maps;  // maps[s][n] : V_s^n -> V_{s+1}^n

  std::size_t length() const { return spaces.size(); }
  SparseMatrix map_at(std::size_t s, int n) const;
  void validate() const;
};

// The system of cohomologies H(C_0) -> H(C_1) -> ... of a chain-map sequence.
DirectedSystem cohomology_system(const std::vector<GradedComplex>& cs, const std::vector<ChainMap>& maps);

struct WeakMorphism {
  std::size_t scaling_constant = 1;  // V_s -> W_{C s}
  std::vector<std::map<int, SparseMatrix>> components;

  void validate(const DirectedSystem& v, const DirectedSystem& w) const;  // commuting squares
};

struct DsColimit {
  std::size_t last = 0;  // index P of the last stored space
  std::size_t window = 3;
  // image_dims[p][q - p] = per-degree dim im(V_p -> V_q), q = p..P
  std::vector<std::vector<std::map<int, std::size_t>>> image_dims;
  std::vector<std::map<int, std::size_t>> filtration;  // dim im(V_p -> V_P)
  std::vector<bool> stabilized;  // image dims constant for targets q in [P - window, P]
  std::map<int, std::size_t> colimit_dims;  // dims of the union of images in V_P
  bool all_stabilized = false;

  std::size_t total(std::size_t p) const;
};
DsColimit ds_colimit(const DirectedSystem& sys, std::size_t window = 3);

struct BoundaryDepth {
  enum class Kind { Value, ExceedsMax, NotAcyclic };
  Kind kind = Kind::Value;
  int depth = 0;
  std::string describe() const;
};
BoundaryDepth boundary_depth(const FilteredComplex& c, int max_d);

struct FilteredImage {
  std::size_t total = 0;
  std::map<int, std::size_t> per_degree;
};
// dim F^pH(C) = dim im(H(F^p C) -> H(C)).
FilteredImage filtered_cohomology_image(const FilteredComplex& c, int p);
// dim im(H(F^p C) -> H(F^P C)) for p = 0..P, per degree, in one pass.
std::vector<FilteredImage> filtered_image_table(const FilteredComplex& c, int P);

// Restriction to F^P C as a filtered complex.
FilteredComplex truncate(const FilteredComplex& c, int P);

}  // namespace artifact::complexes
