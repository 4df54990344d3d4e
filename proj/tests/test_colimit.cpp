#include <chrono>
#include <cmath>

#include "artifact/colimit.hpp"
#include "artifact/instances.hpp"
#include "doctest.h"

using namespace artifact;
using namespace artifact::colimit;
using instances::line_bundle;
using instances::Point;
using instances::skyscraper;

namespace {

std::size_t total_dim(const std::map<int, std::size_t>& m) {
  std::size_t t = 0;
  for (const auto& [n, k] : m) t += k;
  return t;
}

std::size_t total_rank(const complexes::DirectedSystem& sys, std::size_t s) {
  std::size_t r = 0;
  for (const auto& [n, k] : sys.spaces[s]) r += linalg::rank(sys.map_at(s, n));
  return r;
}

std::size_t h_total(const TwistData& t, const TwistedComplex& k, const TwistedComplex& l) {
  return total_dim(complexes::cohomology_dims(ainf::tw_hom(k, l, t.base)));
}

}  // namespace

TEST_CASE("identity functor gives a constant system") {
  auto t = identity_twist(instances::p1_category());
  auto sys = iterate_system(t, line_bundle(0), line_bundle(1), 3);
  sys.validate();
  for (std::size_t s = 0; s < sys.length(); ++s) CHECK(total_dim(sys.spaces[s]) == 2);
  for (std::size_t s = 0; s + 1 < sys.length(); ++s) CHECK(total_rank(sys, s) == 2);
  auto g = growth_colimit(t, line_bundle(0), line_bundle(1), 3, 4, 2);
  CHECK(g.samples == std::vector<std::size_t>{2, 2, 2, 2});
  CHECK(g.all_stabilized());
}

TEST_CASE("twist by O(0 + inf) on the structure sheaf") {
  auto inst = instances::build_p1("0,inf");
  auto t = inst.twist_data();
  auto o = line_bundle(0);
  auto sys = iterate_system(t, o, o, 5);
  for (std::size_t s = 0; s < sys.length(); ++s) CHECK(total_dim(sys.spaces[s]) == 2 * s + 1);
  for (std::size_t s = 0; s + 1 < sys.length(); ++s) CHECK(total_rank(sys, s) == 2 * s + 1);

  auto t0 = std::chrono::steady_clock::now();
  auto g = growth_colimit(t, o, o, 4, 9);
  MESSAGE(g.to_json());
  CHECK(g.samples == std::vector<std::size_t>{1, 3, 5, 7, 9});
  CHECK(g.all_stabilized());
  CHECK(g.is_monotone());
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 60.0);
  for (int p = 0; p <= 4; ++p) CHECK(g.samples[p] <= h_total(t, o, inst.twist_power(o, p)));
}

TEST_CASE("skyscrapers on and off the divisor") {
  auto inst = instances::build_p1("0,inf");
  auto t = inst.twist_data();
  auto z1 = skyscraper(Point::parse("1"));
  auto sys = iterate_system(t, z1, z1, 3);
  for (std::size_t s = 0; s < sys.length(); ++s) CHECK(total_dim(sys.spaces[s]) == 2);
  for (std::size_t s = 0; s + 1 < sys.length(); ++s) CHECK(total_rank(sys, s) == 2);
  CHECK(growth_colimit(t, z1, z1, 3, 5, 2).samples == std::vector<std::size_t>{2, 2, 2, 2});
  CHECK(growth_colimit(t, line_bundle(0), z1, 3, 5, 2).samples == std::vector<std::size_t>{1, 1, 1, 1});

  auto z0 = skyscraper(Point::parse("0"));
  auto g = growth_colimit(t, line_bundle(0), z0, 3, 5, 2);
  CHECK(g.samples == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK(g.all_stabilized());
  // Transitions out of a D object vanish.
  auto sd = iterate_system(t, z0, line_bundle(0), 3);
  for (std::size_t s = 0; s + 1 < sd.length(); ++s) CHECK(total_rank(sd, s) == 0);
}

TEST_CASE("colimit hypotheses on P1 with D = {O_0, O_inf}") {
  auto inst = instances::build_p1("0,inf");
  auto t = inst.twist_data();
  auto rep = verify_colimit_hypotheses(t, inst.generators, line_bundle(0), line_bundle(0), 5);
  CHECK_MESSAGE(rep.ok, rep.describe());
  CHECK(rep.checks > 10);

  SUBCASE("empty D fails the cone condition") {
    localization::GeneratorSet empty;
    auto bad = verify_colimit_hypotheses(t, empty, line_bundle(0), line_bundle(0), 2);
    REQUIRE_FALSE(bad.ok);
    CHECK(bad.failure->condition == "cone");
    CHECK(bad.failure->k == 0);
  }
  SUBCASE("a wrong witness is rejected") {
    auto broken = t;
    broken.witness = [&](const TwistedComplex& l) {
      auto w = inst.cone_witness(l);
      w.map.scale(0);
      w.map.normalize();
      return w;
    };
    auto bad = verify_colimit_hypotheses(broken, inst.generators, line_bundle(0), line_bundle(0), 1);
    REQUIRE_FALSE(bad.ok);
    CHECK(bad.failure->condition == "cone");
  }
}

TEST_CASE("identity functor violates the transition condition") {
  auto t = identity_twist(instances::p1_category());
  localization::GeneratorSet d;
  d.members.push_back(skyscraper(Point::parse("0")));
  auto rep = verify_colimit_hypotheses(t, d, line_bundle(0), line_bundle(0), 2);
  REQUIRE_FALSE(rep.ok);
  CHECK(rep.failure->condition == "transition");
  CHECK(rep.failure->k == 0);
  CHECK(rep.describe().find("k = 0") != std::string::npos);

  localization::GeneratorSet empty;
  CHECK(verify_colimit_hypotheses(t, empty, line_bundle(0), line_bundle(0), 2).ok);
}

TEST_CASE("colimit and localization growth agree where the hypotheses hold") {
  auto inst = instances::build_p1("0,inf");
  auto t = inst.twist_data();
  auto z1 = skyscraper(Point::parse("1"));
  auto o = line_bundle(0);
  for (auto [k, l] : std::vector<std::pair<TwistedComplex, TwistedComplex>>{{o, o}, {z1, z1}, {o, z1}}) {
    REQUIRE(verify_colimit_hypotheses(t, inst.generators, k, l, 4).ok);
    auto gc = growth_colimit(t, k, l, 3, 6);
    auto gl = localization::growth_localization(inst.category, k, l, inst.generators, 3, 6);
    CHECK(gc.samples == gl.samples);
    CHECK(gc.per_degree == gl.per_degree);
  }
}

TEST_CASE("entropy estimates") {
  SUBCASE("identity") {
    auto e = entropy_estimate(identity_twist(instances::p1_category()), line_bundle(0), 8);
    CHECK(std::abs(e.h_estimate) < 1e-12);
    CHECK(std::abs(e.h_pol_estimate) < 1e-12);
  }
  SUBCASE("P1 twist on O + O(1)") {
    auto inst = instances::build_p1("0,inf");
    auto e = entropy_estimate(inst.twist_data(), inst.object("O+O(1)"), 12);
    for (std::size_t n = 0; n < e.dims.size(); ++n) CHECK(e.dims[n] == 8 * n + 4);
    CHECK(e.h_estimate < 0.2);
    CHECK(e.h_pol_estimate > 0.8);
  }
  SUBCASE("doubling") {
    auto e = entropy_estimate(doubling_twist(instances::build_an_quiver(1)), ainf::TwistedComplex::object(0, "1"), 8);
    for (std::size_t n = 0; n < e.dims.size(); ++n) CHECK(e.dims[n] == (std::size_t{1} << n));
    CHECK(std::abs(e.h_estimate - std::log(2.0)) < 1e-9);
  }
  CHECK_THROWS_AS(entropy_from_dims({0, 0, 0, 0, 0}), ColimitError);
  CHECK_THROWS_AS(entropy_from_dims({1, 2, 3}), ColimitError);
}

TEST_CASE("s of S^k L against S^k of s_L") {
  auto a1 = instances::build_an_quiver(1);
  auto x = ainf::TwistedComplex::object(0, "1");
  CHECK(transitions_agree(identity_twist(a1), x, x, 2));
  auto dbl = doubling_twist(a1);
  CHECK(transitions_agree(dbl, x, x, 0));
  CHECK_FALSE(transitions_agree(dbl, x, x, 1));
  auto inst = instances::build_p1("0,inf");
  CHECK_THROWS_AS(transitions_agree(inst.twist_data(), line_bundle(0), line_bundle(0), 1), ColimitError);
}
