#include "artifact/instances.hpp"
#include "doctest.h"

using namespace artifact;
using namespace artifact::instances;
using complexes::cohomology_dims;

namespace {

std::size_t h(const std::map<int, std::size_t>& m, int n) {
  auto it = m.find(n);
  return it == m.end() ? 0 : it->second;
}

}  // namespace

TEST_CASE("P1 base category") {
  auto c = p1_category();
  CHECK(ainf::check_ainfty(*c, 4).ok);
  CHECK(c->hom_dim(0, 1) == 2);
  CHECK(c->hom_dim(1, 0) == 0);
}

TEST_CASE("Beilinson presentations reproduce line bundle cohomology") {
  auto c = p1_category();
  for (int n = -10; n <= 10; ++n) {
    auto hd = cohomology_dims(ainf::tw_hom(line_bundle(0), line_bundle(n), c));
    CHECK(h(hd, 0) == static_cast<std::size_t>(std::max(0, n + 1)));
    CHECK(h(hd, 1) == static_cast<std::size_t>(std::max(0, -n - 1)));
    auto self = cohomology_dims(ainf::tw_hom(line_bundle(n), line_bundle(n), c));
    CHECK(h(self, 0) == 1);
    CHECK(h(self, 1) == 0);
  }
  // hom(O(1), O(n)) = H^*(O(n - 1)).
  for (int n = -3; n <= 6; ++n) {
    auto hd = cohomology_dims(ainf::tw_hom(line_bundle(1), line_bundle(n), c));
    CHECK(h(hd, 0) == static_cast<std::size_t>(std::max(0, n)));
    CHECK(h(hd, 1) == static_cast<std::size_t>(std::max(0, -n)));
  }
}

TEST_CASE("multiplication maps are closed and compose like polynomials") {
  auto c = p1_category();
  Poly x = Poly::monomial(1, 1), y = Poly::monomial(1, 0);
  for (int n = 0; n <= 4; ++n)
    for (const Poly& f : {x, y, x * y, x * x}) {
      SparseVector phi = multiplication_map(n, f);
      ainf::TwView v(c, {line_bundle(n), line_bundle(n + f.deg), line_bundle(0)});
      CHECK(ainf::mu_linear(v, {0, 1}, {phi}).empty());
      // Induced map on global sections H^0(O(n)) -> H^0(O(n + deg f)) is injective.
      auto m = ainf::postcomposition(v, 2, 0, 1, phi);
      CHECK(linalg::rank(complexes::induced_cohomology_map(m, 0)) == static_cast<std::size_t>(n + 1));
    }
}

TEST_CASE("skyscrapers") {
  auto c = p1_category();
  auto s0 = skyscraper(Point::parse("0"));
  REQUIRE(s0.summands.size() == 2);
  CHECK(s0.delta.at({0, 1}) == SparseVector::unit(0));  // x
  auto self = cohomology_dims(ainf::tw_hom(s0, s0, c));
  CHECK(h(self, 0) == 1);
  CHECK(h(self, 1) == 1);
  auto s1 = skyscraper(Point::parse("1"));
  CHECK(s1.delta.at({0, 1}).nnz() == 2);
  CHECK(complexes::is_acyclic(ainf::tw_hom(s0, s1, c)));
  CHECK(Point::parse("inf").label() == "inf");
  CHECK(Point::parse("1/2") == Point::parse("2:4"));
  CHECK_THROWS_AS(Point::parse("abc"), InstanceError);
}

TEST_CASE("double points have length 2 and self-extensions of rank 2") {
  auto c = p1_category();
  auto dp = double_point(Point::parse("0"));
  ainf::check_maurer_cartan(c, dp);
  auto self = cohomology_dims(ainf::tw_hom(dp, dp, c));
  CHECK(h(self, 0) == 2);
  CHECK(h(self, 1) == 2);
  auto sec = cohomology_dims(ainf::tw_hom(line_bundle(0), dp, c));
  CHECK(h(sec, 0) == 2);
  auto dpi = double_point(Point::parse("inf"));
  CHECK(h(cohomology_dims(ainf::tw_hom(line_bundle(0), dpi, c)), 0) == 2);
}

TEST_CASE("twist instance on {0, inf}") {
  P1Instance inst = build_p1("0,inf");
  CHECK(inst.sigma.deg == 2);
  CHECK(inst.generators.size() == 2);
  auto c = inst.category;
  for (int k = 0; k <= 5; ++k) {
    auto l = inst.twist_power(line_bundle(0), k);
    CHECK(h(cohomology_dims(ainf::tw_hom(line_bundle(0), l, c)), 0) == static_cast<std::size_t>(2 * k + 1));
    SparseVector s = inst.sigma_component(l);
    CHECK_FALSE(s.empty());
  }
  auto w = inst.cone_witness(line_bundle(0));
  CHECK(w.target.summands.size() == 4);
  auto sky = inst.object("sky:1");
  SparseVector s = inst.sigma_component(sky);
  ainf::TwView v(c, {sky, inst.twist(sky), line_bundle(0), line_bundle(1)});
  CHECK(ainf::is_quasi_iso_on(v, 0, 1, s, {2, 3}));
  auto w2 = inst.cone_witness(sky);
  CHECK(w2.target.summands.empty());
}

TEST_CASE("exceptional resolution of twisted line bundles") {
  auto c = p1_category();
  ainf::ExceptionalCollection coll{{line_bundle(0), line_bundle(1)}};
  for (int n = 2; n <= 5; ++n) {
    auto r = ainf::exceptional_resolve(line_bundle(n), coll, c);
    std::size_t c0 = 0, c1 = 0;
    for (auto i : r.collection_of) (i == 0 ? c0 : c1)++;
    CHECK(c0 == static_cast<std::size_t>(n - 1));
    CHECK(c1 == static_cast<std::size_t>(n));
    CHECK(r.length == 2);
  }
  auto r = ainf::exceptional_resolve(line_bundle(1).shifted(3), coll, c);
  CHECK(r.complex.summands.size() == 1);
  CHECK(r.complex.summands[0].shift == 3);
}

TEST_CASE("A_n quivers") {
  auto a1 = build_an_quiver(1);
  CHECK(a1->object_count() == 1);
  CHECK(a1->hom_dim(0, 0) == 1);
  auto a2 = build_an_quiver(2);
  CHECK(a2->hom_dim(0, 1) == 1);
  auto a3 = build_an_quiver(3);
  CHECK(ainf::check_ainfty(*a3, 4).ok);
  CHECK(a3->hom_dim(0, 2) == 1);
}
