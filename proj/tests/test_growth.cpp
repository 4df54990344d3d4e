#include <json.hpp>

#include "artifact/growth.hpp"
#include "doctest.h"

using namespace artifact::growth;

namespace {

GrowthFunction tabulate(std::size_t n, const std::function<std::size_t(std::size_t)>& f) {
  std::vector<std::size_t> v;
  for (std::size_t p = 0; p < n; ++p) v.push_back(f(p));
  return GrowthFunction::from_values(v);
}

}  // namespace

TEST_CASE("identical functions are translation-equivalent with b = 0") {
  auto g = tabulate(12, [](std::size_t p) { return 2 * p + 1; });
  auto v = compare_growth(g, g);
  CHECK(v.kind == GrowthVerdict::Kind::Translation);
  CHECK(v.b == 0);
  CHECK(v.window == 12);
}

TEST_CASE("shifted functions need a translation") {
  auto g = tabulate(12, [](std::size_t p) { return p + 1; });
  auto h = tabulate(12, [](std::size_t p) { return p + 3; });
  auto v = compare_growth(g, h);
  CHECK(v.kind == GrowthVerdict::Kind::Translation);
  CHECK(v.b >= 1);
}

TEST_CASE("2p+1 against p+1 needs scaling by 2") {
  auto g = tabulate(21, [](std::size_t p) { return 2 * p + 1; });
  auto h = tabulate(21, [](std::size_t p) { return p + 1; });
  auto v = compare_growth(g, h);
  CHECK(v.kind == GrowthVerdict::Kind::Scaling);
  CHECK(v.a == 2);
  auto w = compare_growth(h, g);
  CHECK(w.kind == v.kind);
  CHECK(w.a == v.a);
  CHECK(w.b == v.b);
}

TEST_CASE("polynomial against exponential is inconsistent on a long window") {
  auto g = tabulate(21, [](std::size_t p) { return p * p; });
  auto h = tabulate(21, [](std::size_t p) { return std::size_t{1} << p; });
  auto v = compare_growth(g, h);
  CHECK(v.kind == GrowthVerdict::Kind::Inconsistent);
  CHECK(v.describe().find("inconsistent") != std::string::npos);
  // A short window cannot separate them.
  auto gs = tabulate(6, [](std::size_t p) { return p * p; });
  auto hs = tabulate(6, [](std::size_t p) { return std::size_t{1} << p; });
  CHECK(compare_growth(gs, hs).kind != GrowthVerdict::Kind::Inconsistent);
}

TEST_CASE("comparison uses only the stabilized prefix") {
  auto g = tabulate(10, [](std::size_t p) { return p + 1; });
  auto h = g;
  h.samples[7] = 1000;
  h.stabilized[7] = false;
  auto v = compare_growth(g, h);
  CHECK(v.kind == GrowthVerdict::Kind::Translation);
  CHECK(v.window == 7);
  h.stabilized[0] = false;
  CHECK_THROWS_AS(compare_growth(g, h), GrowthError);
}

TEST_CASE("polynomial degree detection") {
  CHECK(detect_poly_degree(tabulate(8, [](std::size_t) { return 5; })) == 0);
  CHECK(detect_poly_degree(tabulate(8, [](std::size_t) { return 0; })) == 0);
  CHECK(detect_poly_degree(tabulate(8, [](std::size_t p) { return 2 * p + 1; })) == 1);
  CHECK(detect_poly_degree(tabulate(8, [](std::size_t p) { return p * p + 1; })) == 2);
  CHECK_FALSE(detect_poly_degree(tabulate(8, [](std::size_t p) { return std::size_t{1} << p; })).has_value());
}

TEST_CASE("serialization and monotonicity") {
  auto g = tabulate(4, [](std::size_t p) { return 2 * p + 1; });
  g.per_degree = {{{0, 1}}, {{0, 3}}, {{0, 5}}, {{0, 7}}};
  auto j = nlohmann::json::parse(g.to_json());
  CHECK(j["gamma"] == nlohmann::json({1, 3, 5, 7}));
  CHECK(j["per_degree"][2]["0"] == 5);
  CHECK(g.to_csv().rfind("p,degree,dim,stabilized\n", 0) == 0);
  CHECK(g.is_monotone());
  g.samples[2] = 0;
  CHECK_FALSE(g.is_monotone());
}
