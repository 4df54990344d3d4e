#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "artifact/complexes.hpp"

namespace artifact::spectral {

using complexes::FilteredChainMap;
using complexes::FilteredComplex;
using linalg::SparseVector;

// Entries are keyed by (p, n) with n the total degree; q = n - p.
// d_r : E_r^{p,n} -> E_r^{p-r,n+1}.
struct SpectralPage {
  int r = 0;
  std::map<std::pair<int, int>, std::size_t> dims;
  std::map<std::pair<int, int>, std::size_t> d_ranks;  // rank of d_r leaving (p, n)
  std::map<std::pair<int, int>, std::vector<SparseVector>> representatives;  // Z_r classes mod B_r

  std::size_t dim(int p, int n) const;
  std::size_t dim_pq(int p, int q) const { return dim(p, p + q); }
  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  std::string to_csv() const;
  std::string to_json() const;
};

SpectralPage page(const FilteredComplex& c, int r);

struct PageMap {
  int r = 0;
  std::map<std::pair<int, int>, std::size_t> source_dims, target_dims, ranks;
  bool is_iso() const;
  // Isomorphism on the entries with p <= p_limit only.
  bool is_iso_up_to(int p_limit) const;
};

PageMap induced_page_map(const FilteredChainMap& f, int r);

// E_{r+1}(c) = 0.
bool is_er_acyclic(const FilteredComplex& c, int r);
// f induces an isomorphism on E_{r+1}.
bool is_er_quasi_iso(const FilteredChainMap& f, int r);
// Same, comparing only filtration levels p <= p_limit.  For truncations
// F^P of larger complexes the E_{r+1} entries with p <= P - r are those of
// the untruncated complex.
bool is_er_quasi_iso(const FilteredChainMap& f, int r, int p_limit);

// E_{r+1} dims from E_r dims and d_r ranks (homology of the page); used to
// cross-check the closed-form pages.
std::map<std::pair<int, int>, std::size_t> next_page_dims(const SpectralPage& e);

// Whether d_r ∘ d_r vanishes on the stored representatives.
bool dr_squares_to_zero(const FilteredComplex& c, int r);

}  // namespace artifact::spectral
