#include <memory>

#include "artifact/ainf.hpp"
#include "doctest.h"

using namespace artifact::ainf;
using artifact::complexes::cohomology_dims;

namespace {

// P^1 with objects O, O(1); hom(O, O(1)) = <x, y>; strictly associative.
std::shared_ptr<AInfCategory> p1() {
  auto c = std::make_shared<AInfCategory>();
  auto o = c->add_object("O"), o1 = c->add_object("O(1)");
  auto e0 = c->add_morphism(o, o, "1", 0), e1 = c->add_morphism(o1, o1, "1", 0);
  c->add_morphism(o, o1, "x", 0);
  c->add_morphism(o, o1, "y", 0);
  c->set_unit(o, e0);
  c->set_unit(o1, e1);
  c->set_product({o, o, o}, {e0, e0}, SparseVector::unit(e0));
  c->set_product({o1, o1, o1}, {e1, e1}, SparseVector::unit(e1));
  for (std::uint32_t m = 0; m < 2; ++m) {
    c->set_product({o, o, o1}, {e0, m}, SparseVector::unit(m));
    c->set_product({o, o1, o1}, {m, e1}, SparseVector::unit(m));
  }
  return c;
}

TwistedComplex skyscraper(int a, int b, const std::string& name) {
  TwistedComplex t;
  t.name = name;
  t.summands = {{0, 1, 1}, {1, 0, 0}};
  SparseVector s;
  s.add(0, b);
  s.add(1, -a);
  s.normalize();
  t.delta[{0, 1}] = s;
  return t;
}

// Kronecker-type category with a degree-1 arrow and a planted mu^3.
std::shared_ptr<AInfCategory> chain_with_mu3(bool consistent) {
  auto c = std::make_shared<AInfCategory>();
  auto a = c->add_object("A"), b = c->add_object("B");
  auto ea = c->add_morphism(a, a, "1", 0), eb = c->add_morphism(b, b, "1", 0);
  auto f = c->add_morphism(a, b, "f", 0);
  c->add_morphism(a, b, "g", 1);
  auto h = c->add_morphism(a, b, "h", -1);
  c->set_product({a, a, a}, {ea, ea}, SparseVector::unit(ea));
  c->set_product({b, b, b}, {eb, eb}, SparseVector::unit(eb));
  c->set_product({a, a, b}, {ea, f}, SparseVector::unit(f));
  c->set_product({a, b, b}, {f, eb}, SparseVector::unit(f));
  c->set_arity_bound(3);
  if (!consistent) c->set_product({a, a, a, b}, {ea, ea, f}, SparseVector::unit(h));
  return c;
}

}  // namespace

TEST_CASE("strictly associative category satisfies the relations") {
  auto c = p1();
  AinftyCheck r = check_ainfty(*c, 4);
  CHECK(r.ok);
  CHECK(r.relations_checked > 0);
  CHECK(check_ainfty(*chain_with_mu3(true), 4).ok);
}

TEST_CASE("a planted inconsistent mu^3 is detected") {
  auto c = chain_with_mu3(false);
  AinftyCheck r = check_ainfty(*c, 4);
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.failure);
  CHECK(r.failure->arity == 4);
  CHECK(r.failure->describe(*c).find("arity 4") != std::string::npos);
}

TEST_CASE("set_product rejects wrong degrees") {
  auto c = chain_with_mu3(true);
  CHECK_THROWS_AS(c->set_product({0, 0, 1}, {0, 0}, SparseVector::unit(1)), AInfError);
  CHECK_THROWS_AS(c->set_product({0, 0, 1}, {0, 5}, SparseVector::unit(0)), AInfError);
}

TEST_CASE("hom complexes between line bundles and skyscrapers") {
  auto c = p1();
  auto O = TwistedComplex::object(0, "O");
  auto O0 = skyscraper(0, 1, "O0");
  auto h = cohomology_dims(tw_hom(O, O0, c));
  CHECK(h[0] == 1);
  CHECK(h[-1] == 0);
  auto h2 = cohomology_dims(tw_hom(O0, O, c));
  CHECK(h2[1] == 1);
  CHECK(h2[0] == 0);
  auto h3 = cohomology_dims(tw_hom(O0, O0, c));
  CHECK(h3[0] == 1);
  CHECK(h3[1] == 1);
  auto Oinf = skyscraper(1, 0, "Oinf");
  CHECK(artifact::complexes::is_acyclic(tw_hom(O0, Oinf, c)));
}

TEST_CASE("Maurer-Cartan violations are reported") {
  auto c = p1();
  TwistedComplex t = skyscraper(0, 1, "bad");
  t.summands.push_back({0, 2, 2});
  t.delta[{2, 0}] = SparseVector::unit(0);  // O[2] -> O[1] by the identity; composite with x is nonzero
  CHECK_THROWS_AS(check_maurer_cartan(c, t), AInfError);
}

TEST_CASE("twisted complexes satisfy the A-infinity relations") {
  auto c = p1();
  std::vector<TwistedComplex> objs{TwistedComplex::object(0, "O"), TwistedComplex::object(1, "O(1)"),
                                   skyscraper(0, 1, "O0"), skyscraper(1, 0, "Oinf"), skyscraper(1, 1, "O1")};
  objs.push_back(skyscraper(0, 1, "O0").shifted(1));
  TwView v(c, objs);
  CHECK(check_ainfty(v, 3).ok);
}

TEST_CASE("Leibniz rule for tw_product") {
  auto c = p1();
  auto O = TwistedComplex::object(0, "O");
  auto O0 = skyscraper(0, 1, "O0");
  TwView v(c, {O, O0, O0});
  HomComplex a = hom_complex(v, 0, 1), b = hom_complex(v, 1, 2);
  int tested = 0;
  for (std::uint32_t i = 0; i < v.hom_dim(0, 1); ++i)
    for (std::uint32_t j = 0; j < v.hom_dim(1, 2); ++j) {
      SparseVector ai = SparseVector::unit(i), bj = SparseVector::unit(j);
      SparseVector lhs = mu_linear(v, {0, 2}, {tw_product({O, O0, O0}, {ai, bj}, c)});
      SparseVector r1 = tw_product({O, O0, O0}, {ai, mu_linear(v, {1, 2}, {bj})}, c);
      SparseVector r2 = tw_product({O, O0, O0}, {mu_linear(v, {0, 1}, {ai}), bj}, c);
      int sign = ((v.degree(0, 1, i) - 1) % 2 == 0) ? 1 : -1;
      SparseVector sum = lhs;
      sum.axpy(Rational(sign), r1);
      sum.axpy(Rational(1), r2);
      sum.normalize();
      CHECK(sum.empty());
      ++tested;
    }
  CHECK(tested > 0);
}

TEST_CASE("cones and quasi-isomorphism probes") {
  auto c = p1();
  auto O = TwistedComplex::object(0, "O"), O1 = TwistedComplex::object(1, "O(1)");
  // cone(x : O -> O(1)) is the skyscraper at 0.
  TwistedComplex k = tw_cone(*c, O, O1, SparseVector::unit(0), "cone(x)");
  check_maurer_cartan(c, k);
  auto h = cohomology_dims(tw_hom(k, skyscraper(0, 1, "O0"), c));
  CHECK(h[0] == 1);
  // The identity of O0 is a quasi-iso; zero is not.
  auto O0 = skyscraper(0, 1, "O0");
  TwView v(c, {O, O1, O0, O0});
  SparseVector id = tw_identity(*c, O0);
  CHECK(mu_linear(v, {2, 3}, {id}).empty());
  CHECK(is_quasi_iso_on(v, 2, 3, id, {0, 1}));
  CHECK_FALSE(is_quasi_iso_on(v, 2, 3, SparseVector{}, {0, 1}));
  auto closed = solve_closed_extension(v, 2, 3, id, {});
  REQUIRE(closed);
  CHECK(*closed == id);
}

TEST_CASE("exceptional resolution of skyscrapers and twists") {
  auto c = p1();
  ExceptionalCollection coll{{TwistedComplex::object(0, "O"), TwistedComplex::object(1, "O(1)")}};
  coll.validate(c);
  Resolution r = exceptional_resolve(skyscraper(0, 1, "O0"), coll, c);
  CHECK(r.length == 2);
  TwView v(c, {r.complex, skyscraper(0, 1, "O0"), TwistedComplex::object(0, "O"), TwistedComplex::object(1, "O(1)")});
  CHECK(is_quasi_iso_on(v, 0, 1, r.witness, {2, 3}));
  ExceptionalCollection bad{{TwistedComplex::object(1, "O(1)"), TwistedComplex::object(0, "O")}};
  CHECK_THROWS_AS(bad.validate(c), AInfError);
  ExceptionalCollection partial{{TwistedComplex::object(1, "O(1)")}};
  CHECK_THROWS_AS(exceptional_resolve(skyscraper(0, 1, "O0"), partial, c), AInfError);
}

TEST_CASE("minimal model of twisted complexes") {
  auto c = p1();
  auto tw = std::make_shared<TwView>(
      c, std::vector<TwistedComplex>{TwistedComplex::object(0, "O"), skyscraper(0, 1, "O0"), skyscraper(1, 0, "Oinf"),
                                     skyscraper(0, 1, "O0").shifted(-1)});
  MinimalModel m(tw);
  CHECK(m.hom_dim(1, 1) == 2);
  CHECK(m.hom_dim(0, 1) == 1);
  CHECK(m.hom_dim(1, 2) == 0);
  AinftyCheck r = check_ainfty(m, 4);
  if (!r.ok) MESSAGE(r.failure->describe(m));
  CHECK(r.ok);
  // mu^2 on the minimal model agrees with the cohomology category.
  AInfCategory h = cohomology_category(*tw);
  for (std::uint32_t i = 0; i < m.hom_dim(0, 1); ++i)
    for (std::uint32_t j = 0; j < m.hom_dim(1, 1); ++j)
      CHECK(m.mu({0, 1, 1}, {i, j}).nnz() == h.mu({0, 1, 1}, {i, j}).nnz());
}

TEST_CASE("minimal models for both homotopy signs") {
  auto c = p1();
  std::vector<TwistedComplex> objs{TwistedComplex::object(0, "O"), TwistedComplex::object(1, "O(1)"),
                                   skyscraper(0, 1, "O0"), skyscraper(1, 0, "Oinf"), skyscraper(1, 1, "O1")};
  auto tw = std::make_shared<TwView>(c, objs);
  MinimalModel good(tw, -1), bad(tw, 1);
  std::size_t nonzero_mu3 = 0;
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b)
      for (std::size_t d = 0; d < 5; ++d)
        for (std::size_t e = 0; e < 5; ++e)
          for (std::uint32_t i = 0; i < good.hom_dim(a, b); ++i)
            for (std::uint32_t j = 0; j < good.hom_dim(b, d); ++j)
              for (std::uint32_t k = 0; k < good.hom_dim(d, e); ++k)
                if (auto m3 = good.mu({a, b, d, e}, {i, j, k}); !m3.empty()) {
                  ++nonzero_mu3;
                  m3.scale(-1);
                  CHECK(bad.mu({a, b, d, e}, {i, j, k}) == m3);
                }
  CHECK(check_ainfty(good, 5).ok);
  CHECK(check_ainfty(bad, 5).ok);
  CHECK(nonzero_mu3 > 0);
}
