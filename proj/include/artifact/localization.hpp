#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "artifact/ainf.hpp"
#include "artifact/growth.hpp"

namespace artifact::localization {

using ainf::CategoryView;
using ainf::TwistedComplex;
using complexes::FilteredChainMap;
using complexes::FilteredComplex;
using linalg::SparseVector;

class LocalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A twisted complex over the members of a generating set: pieces are
// (unshifted) members, delta'[{j, i}] is a degree-1 element of
// hom_Tw(piece j, piece i) in tw_basis order, strictly lowering the level.
struct Presentation {
  std::vector<std::size_t> pieces;
  std::vector<int> levels;
  std::map<std::pair<std::size_t, std::size_t>, SparseVector> delta;

  int length() const;
  static Presentation single(std::size_t member);
};

struct GeneratorSet {
  std::vector<TwistedComplex> members;
  int length_bound = 1;
  // Optional presentation of each member over another generating set (used
  // by the splitting map); empty when not supplied.
  std::vector<std::optional<Presentation>> presentations;

  std::size_t size() const { return members.size(); }
  void validate(const std::shared_ptr<const CategoryView>& base) const;  // MC for every member
};

// Flattens a presentation over `over` to a twisted complex over the base.
TwistedComplex flatten(const Presentation& pr, const GeneratorSet& over, const CategoryView& base,
                       const std::string& name);

// The quotient of a view by a set of its objects, truncated at word length
// `truncation`.  A morphism X -> Y of length k is a word a_k ⊗ ... ⊗ a_0
// through X -> E_1 -> ... -> E_k -> Y with E_i in D, of degree
// sum |a_i| - k; mu^1 applies mu to every contiguous substring, mu^d with
// d >= 2 to every substring covering all junctions, with sign
// (-1)^{sum of |a| - 1 over the elements to the right}.
class QuotientView : public CategoryView {
 public:
  struct Word {
    std::vector<std::size_t> objs;    // X, E_1, ..., E_k, Y
    std::vector<std::uint32_t> idx;   // a_0 first
    std::size_t length() const { return idx.size() - 1; }
  };

  QuotientView(std::shared_ptr<const CategoryView> base, std::vector<std::size_t> d_objects, int truncation);

  std::size_t object_count() const override { return base_->object_count(); }
  std::string object_name(std::size_t x) const override { return base_->object_name(x); }
  std::size_t hom_dim(std::size_t x, std::size_t y) const override { return words(x, y).size(); }
  int degree(std::size_t x, std::size_t y, std::uint32_t i) const override;
  int max_arity() const override { return base_->max_arity(); }
  // Throws LocalizationError on truncation overflow.
  SparseVector mu(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const override;

  const std::vector<Word>& words(std::size_t x, std::size_t y) const;  // ordered by length
  std::optional<std::uint32_t> index_of(std::size_t x, std::size_t y, const Word& w) const;
  int truncation() const { return truncation_; }
  const std::vector<std::size_t>& d_objects() const { return d_; }
  const CategoryView& base() const { return *base_; }
  // Word-length weight for check_ainfty.
  ainf::AinftyCheckOptions check_options() const;

 private:
  struct Table {
    std::vector<Word> words;
    std::vector<int> degrees;
    std::unordered_map<std::string, std::uint32_t> index;
  };
  const Table& table(std::size_t x, std::size_t y) const;

  std::shared_ptr<const CategoryView> base_;
  std::vector<std::size_t> d_;
  int truncation_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<Table>> tables_;
};

// F^p (B/D)(x, y) with the word-length filtration.
FilteredComplex quotient_hom(const QuotientView& q, std::size_t x, std::size_t y);
FilteredComplex quotient_hom(const std::shared_ptr<const CategoryView>& base, std::size_t x, std::size_t y,
                             const std::vector<std::size_t>& d_objects, int p);

// mu^k of the quotient on arbitrary word sums; the result must fit in length p.
SparseVector quotient_product(const QuotientView& q, const std::vector<std::size_t>& objs,
                              const std::vector<SparseVector>& args, int p);

// Dimensions of the words of length exactly k per degree, counted over the
// cohomology category of `base` (the E_1 page of quotient_hom by Kunneth).
std::map<std::pair<int, int>, std::size_t> cohomology_word_counts(const CategoryView& base, std::size_t x,
                                                                   std::size_t y,
                                                                   const std::vector<std::size_t>& d_objects, int p);

// Filtered chain map Q_M(x, y) -> Q_V(x, y) induced by the transfer maps
// lambda of a minimal model M of V (grouping consecutive letters).
FilteredChainMap minimal_comparison_map(const ainf::MinimalModel& m, std::size_t x, std::size_t y,
                                        const std::vector<std::size_t>& d_objects, int p);

// Word inclusion Q_{D}(x, y) -> Q_{D'}(x, y) for D ⊆ D'.
FilteredChainMap word_inclusion(const QuotientView& small, const QuotientView& large, std::size_t x, std::size_t y);

// The splitting map r : F^p (B/D')(x, y) -> F^{pl} (B/D)(x, y) of a view in
// which every D' object has a presentation over D: each letter's D'
// endpoints are expanded into D-pieces joined by delta' paths.  `d_prime`
// lists view objects with presentation[i] over the view objects `d`.  The
// target filtration is rescaled to ceil(length / l) so that r is filtered.
struct SplittingData {
  std::vector<std::size_t> d;
  std::vector<std::size_t> d_prime;
  std::vector<Presentation> presentations;  // pieces index into d
  int length_bound = 1;
};
FilteredChainMap splitting_map(const std::shared_ptr<const ainf::TwView>& view, std::size_t x, std::size_t y,
                               const SplittingData& data, int p);

// A cocycle of F^p in degree n whose class in H(F^horizon) is not in the
// image of H(F^{p-1}); empty if every class of F^p comes from F^{p-1}.
SparseVector fresh_class(const FilteredComplex& c, int n, int p, int horizon);

struct ClassLevel {
  int level = 0;
  bool stabilized = false;
  bool zero_class = false;
};

// Least p with [v] in im(H^n(F^p) -> H^n(F^horizon)); the stabilized flag
// compares against horizon + window (c must contain those levels).
ClassLevel class_filtration_level(const FilteredComplex& c, int n, const SparseVector& v, int horizon, int window);

enum class Model { Minimal, Literal };

struct GrowthOptions {
  int window = 3;
  Model model = Model::Minimal;
};

// gamma(p) = dim im(H(F^p) -> H(F^horizon)) on the quotient view over `base`
// (minimal model or literal), with stabilization against horizon + window.
growth::GrowthFunction growth_localization(const std::shared_ptr<const CategoryView>& view, std::size_t k, std::size_t l,
                                           const std::vector<std::size_t>& d_objects, int p_max, int horizon,
                                           const GrowthOptions& opts = {});
// Convenience form over a base category: builds Tw(base) on {K, L, D}.
growth::GrowthFunction growth_localization(const std::shared_ptr<const CategoryView>& base, const TwistedComplex& k,
                                           const TwistedComplex& l, const GeneratorSet& d, int p_max, int horizon,
                                           const GrowthOptions& opts = {});

}  // namespace artifact::localization
