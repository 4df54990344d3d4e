#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace artifact::growth {

class GrowthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// gamma(p) for p = 0..p_max with per-degree breakdown and stabilization flags.
struct GrowthFunction {
  std::vector<std::size_t> samples;
  std::vector<std::map<int, std::size_t>> per_degree;
  std::vector<bool> stabilized;
  std::string provenance;
  int horizon = 0;

  std::size_t size() const { return samples.size(); }
  int p_max() const { return static_cast<int>(samples.size()) - 1; }
  bool all_stabilized() const;
  bool is_monotone() const;
  std::string to_csv() const;
  std::string to_json() const;
  // Builds an unlabeled, fully stabilized function from values.
  static GrowthFunction from_values(const std::vector<std::size_t>& values, const std::string& provenance = "");
};

struct GrowthVerdict {
  enum class Kind { Translation, Scaling, Inconsistent };
  Kind kind = Kind::Inconsistent;
  int a = 0;
  int b = 0;
  int window = 0;  // number of stabilized samples the verdict is scoped to
  std::string describe() const;
};

// Searches integer witnesses a in [1, a_max], b in [0, b_max] with
// g1(p) <= a g2(ap+b) + b and g2(p) <= a g1(ap+b) + b at every p where all
// referenced samples are stabilized; arguments ap+b beyond the window are
// clamped to the last sample.  a = 1 is reported as a translation witness.
GrowthVerdict compare_growth(const GrowthFunction& g1, const GrowthFunction& g2, int a_max = 4, int b_max = 4);

// Least d such that the d-th finite difference of the trailing stabilized
// samples is a nonzero constant (degree 0 for a constant function).
std::optional<int> detect_poly_degree(const GrowthFunction& g);

}  // namespace artifact::growth
