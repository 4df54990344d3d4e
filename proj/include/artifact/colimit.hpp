#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "artifact/ainf.hpp"
#include "artifact/complexes.hpp"
#include "artifact/growth.hpp"
#include "artifact/localization.hpp"

namespace artifact::colimit {

using ainf::CategoryView;
using ainf::TwistedComplex;
using linalg::SparseVector;

class ColimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An endofunctor S of Tw(base), given on objects.  hom_action, when
// supplied, maps a morphism f in hom(X, Y) to S(f) in hom(S X, S Y) (tw_basis
// coordinates); it is only needed for the S^k(s_L) diagnostic.
struct EndofunctorData {
  std::string name;
  std::function<TwistedComplex(const TwistedComplex&)> object_map;
  std::function<SparseVector(const TwistedComplex&, const TwistedComplex&, const SparseVector&)> hom_action;

  TwistedComplex power(const TwistedComplex& x, int k) const;
};

// s : id -> S, component s_L a closed degree-0 element of hom(L, S L).
struct NaturalTransformationData {
  std::function<SparseVector(const TwistedComplex&)> component;
};

// A quasi-isomorphism cone(s_L) -> target with target a direct sum of shifted
// members of D; `members` lists (member index, shift) in summand order.  An
// empty member list asserts that the cone is acyclic.
struct ConeWitness {
  TwistedComplex cone;
  TwistedComplex target;
  SparseVector map;
  std::vector<std::pair<std::size_t, int>> members;
};
using WitnessProvider = std::function<ConeWitness(const TwistedComplex&)>;

// The functor and transformation an instance contributes, with the base
// objects used as quasi-isomorphism probes.
struct TwistData {
  std::shared_ptr<const CategoryView> base;
  EndofunctorData functor;
  NaturalTransformationData transformation;
  WitnessProvider witness;  // may be empty
  std::vector<TwistedComplex> probes;
};

// The spaces H(hom(K, S^k L)), k = 0..n, with transitions postcomposition by
// s_{S^k L}.
complexes::DirectedSystem iterate_system(const TwistData& t, const TwistedComplex& k, const TwistedComplex& l, int n);

struct HypothesisFailure {
  int k = 0;
  std::string object;     // the D member (or "cone") involved
  std::string condition;  // "transition", "cone", "sigma-on-D"
  std::string detail;
};

struct HypothesisReport {
  bool ok = true;
  int range = 0;
  std::size_t checks = 0;
  std::optional<HypothesisFailure> failure;
  std::string describe() const;
};

// For k < n: (1) H(hom(E, S^k L)) -> H(hom(E, S^{k+1} L)) vanishes for every
// E in D; (2) cone(s_{S^k L}) is quasi-isomorphic to a sum of shifted D members
// via the supplied witness (acyclic when no witness is supplied); and s_E
// vanishes in cohomology for every E in D.  Stops at the first failure.  K
// enters only through its Maurer-Cartan check.
HypothesisReport verify_colimit_hypotheses(const TwistData& t, const localization::GeneratorSet& d,
                                           const TwistedComplex& k, const TwistedComplex& l, int n);

// gamma(p) = dim im(H(hom(K, S^p L)) -> H(hom(K, S^horizon L))), stabilized
// when unchanged with target horizon + window.
growth::GrowthFunction growth_colimit(const TwistData& t, const TwistedComplex& k, const TwistedComplex& l, int p_max,
                                      int horizon, int window = 3);

struct EntropyEstimate {
  double h_estimate = 0;      // tail slope of log dim against n
  double h_pol_estimate = 0;  // tail slope of log dim against log n
  std::vector<std::size_t> dims;
  std::string describe() const;
};

// Heuristic tail-half regressions over dims H(hom(G, S^n G)), n = 0..n_max.
EntropyEstimate entropy_estimate(const TwistData& t, const TwistedComplex& g, int n_max);
// The same regressions on a given dimension sequence.
EntropyEstimate entropy_from_dims(const std::vector<std::size_t>& dims);

// Whether postcomposition with s_{S^k L} and with S^k(s_L) induce the same
// map H(hom(K, S^k L)) -> H(hom(K, S^{k+1} L)); requires hom_action.
bool transitions_agree(const TwistData& t, const TwistedComplex& k, const TwistedComplex& l, int kk);

// S = identity, s = unit.
TwistData identity_twist(std::shared_ptr<const ainf::AInfCategory> base);
// S(X) = X ⊕ X, s = diagonal: dims double at every step.
TwistData doubling_twist(std::shared_ptr<const ainf::AInfCategory> base);

}  // namespace artifact::colimit
