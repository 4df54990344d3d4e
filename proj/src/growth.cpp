#include "artifact/growth.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace artifact::growth {

bool GrowthFunction::all_stabilized() const {
  return std::all_of(stabilized.begin(), stabilized.end(), [](bool b) { return b; });
}

bool GrowthFunction::is_monotone() const {
  for (std::size_t p = 1; p < samples.size(); ++p)
    if (samples[p] < samples[p - 1]) return false;
  return true;
}

std::string GrowthFunction::to_csv() const {
  std::ostringstream os;
  os << "p,degree,dim,stabilized\n";
  for (std::size_t p = 0; p < samples.size(); ++p) {
    os << p << ",total," << samples[p] << "," << (stabilized.at(p) ? 1 : 0) << "\n";
    if (p < per_degree.size())
      for (const auto& [n, k] : per_degree[p]) os << p << "," << n << "," << k << "," << (stabilized[p] ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string GrowthFunction::to_json() const {
  nlohmann::json j;
  j["provenance"] = provenance;
  j["horizon"] = horizon;
  j["gamma"] = samples;
  j["stabilized"] = stabilized;
  nlohmann::json pd = nlohmann::json::array();
  for (const auto& m : per_degree) {
    nlohmann::json e = nlohmann::json::object();
    for (const auto& [n, k] : m) e[std::to_string(n)] = k;
    pd.push_back(e);
  }
  j["per_degree"] = pd;
  return j.dump();
}

GrowthFunction GrowthFunction::from_values(const std::vector<std::size_t>& values, const std::string& provenance) {
  GrowthFunction g;
  g.samples = values;
  g.stabilized.assign(values.size(), true);
  g.provenance = provenance;
  g.horizon = static_cast<int>(values.size()) - 1;
  return g;
}

std::string GrowthVerdict::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Translation: os << "translation-witness(b=" << b << ")"; break;
    case Kind::Scaling: os << "scaling-witness(a=" << a << ", b=" << b << ")"; break;
    case Kind::Inconsistent: os << "inconsistent-on-window"; break;
  }
  os << " on " << window << " stabilized samples";
  return os.str();
}

namespace {

// Number of leading samples that are stabilized.
std::size_t stable_prefix(const GrowthFunction& g) {
  std::size_t n = 0;
  while (n < g.samples.size() && n < g.stabilized.size() && g.stabilized[n]) ++n;
  return n;
}

bool one_sided(const GrowthFunction& g1, const GrowthFunction& g2, std::size_t w1, std::size_t w2, int a, int b) {
  for (std::size_t p = 0; p < w1; ++p) {
    std::size_t arg = std::min<std::size_t>(static_cast<std::size_t>(a) * p + b, w2 - 1);
    if (g1.samples[p] > static_cast<std::size_t>(a) * g2.samples[arg] + b) return false;
  }
  return true;
}

}  // namespace

GrowthVerdict compare_growth(const GrowthFunction& g1, const GrowthFunction& g2, int a_max, int b_max) {
  std::size_t w1 = stable_prefix(g1), w2 = stable_prefix(g2);
  if (w1 == 0 || w2 == 0) throw GrowthError("compare_growth: no stabilized samples to compare");
  GrowthVerdict v;
  v.window = static_cast<int>(std::min(w1, w2));
  for (int a = 1; a <= a_max; ++a)
    for (int b = 0; b <= b_max; ++b)
      if (one_sided(g1, g2, w1, w2, a, b) && one_sided(g2, g1, w2, w1, a, b)) {
        v.kind = a == 1 ? GrowthVerdict::Kind::Translation : GrowthVerdict::Kind::Scaling;
        v.a = a;
        v.b = b;
        return v;
      }
  return v;
}

std::optional<int> detect_poly_degree(const GrowthFunction& g) {
  std::size_t w = stable_prefix(g);
  std::vector<long long> diff(g.samples.begin(), g.samples.begin() + static_cast<long>(w));
  // The d-th difference needs at least two values to be called constant.
  for (int d = 0; diff.size() >= 2; ++d) {
    bool constant = std::all_of(diff.begin(), diff.end(), [&](long long x) { return x == diff.front(); });
    if (constant) {
      if (diff.front() != 0) return d;
      return d == 0 ? std::optional<int>(0) : std::nullopt;
    }
    std::vector<long long> next(diff.size() - 1);
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) next[i] = diff[i + 1] - diff[i];
    diff = std::move(next);
  }
  return std::nullopt;
}

}  // namespace artifact::growth
