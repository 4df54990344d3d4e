#pragma once

#include <memory>
#include <string>
#include <vector>

#include "artifact/ainf.hpp"
#include "artifact/colimit.hpp"
#include "artifact/localization.hpp"
#include "artifact/random_instances.hpp"

namespace artifact::instances {

using ainf::AInfCategory;
using ainf::TwistedComplex;
using linalg::Rational;
using linalg::SparseVector;

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Q-rational point [a:b] of P^1; 0 = [0:1], inf = [1:0].
struct Point {
  Rational a, b;
  static Point parse(const std::string& s);  // "0", "inf", "t", "p/q", "a:b"
  std::string label() const;
  bool operator==(const Point& o) const { return a * o.b == b * o.a; }
};

// Homogeneous polynomial in x, y: coefficient of x^i y^(deg - i) at index i.
struct Poly {
  int deg = 0;
  std::vector<Rational> coeffs;
  static Poly monomial(int deg, int xpow, const Rational& c = 1);
  static Poly linear(const Point& z);  // b x - a y, vanishing at z
  Poly operator*(const Poly& o) const;
  bool is_zero() const;
};

// Base category of P^1: objects O (0), O(1) (1), hom(O, O(1)) = <x, y>.
std::shared_ptr<AInfCategory> p1_category();

// Complex of line bundles, the `origin` of twisted complexes built here:
// either O(n)[shift] or the cone of a polynomial map O(n) -> O(m), shifted;
// direct sums list several blocks.
struct LBBlock {
  int n = 0;
  int shift = 0;
  bool is_cone = false;
  int m = 0;  // target degree of the cone map
  Poly f;     // cone map, degree m - n
};
struct LBComplex {
  std::vector<LBBlock> blocks;
};

// Beilinson presentation of O(n) over {O, O(1)}.
TwistedComplex line_bundle(int n);
// Realization of a line-bundle complex (cones flattened with tw_cone).
TwistedComplex realize(const LBComplex& c, const std::string& name);
// Closed degree-0 lift of multiplication by f in hom(B(n), B(n + deg f)), n >= 0.
SparseVector multiplication_map(int n, const Poly& f);
// {O -> O(1)} by b x - a y.
TwistedComplex skyscraper(const Point& z);
// Length-2 double point at z: two copies of O_z joined by a non-exact
// degree-1 self-extension, presented over the single generator O_z.
localization::Presentation double_point_presentation(const Point& z);
TwistedComplex double_point(const Point& z);

struct P1Instance {
  std::shared_ptr<AInfCategory> category;
  std::vector<Point> divisor;
  Poly sigma;  // defining polynomial of the divisor
  localization::GeneratorSet generators;  // skyscrapers at the divisor points (distinct)

  int twist_degree() const { return sigma.deg; }
  // S(L) = L ⊗ O(D) on line-bundle complexes.
  TwistedComplex twist(const TwistedComplex& l) const;
  TwistedComplex twist_power(const TwistedComplex& l, int k) const;
  // s_L : L -> S(L) induced by sigma, closed of degree 0.
  SparseVector sigma_component(const TwistedComplex& l) const;
  // A closed degree-0 element of hom(cone(s_L), ⊕ skyscrapers) that is a
  // quasi-isomorphism (probes O, O(1)); the target lists the generator
  // members with multiplicity.  Throws if none is found.
  using ConeWitness = colimit::ConeWitness;
  ConeWitness cone_witness(const TwistedComplex& l) const;
  // S = twist, s = sigma, witnesses from cone_witness, probes O and O(1).
  // The functor's hom action is not realized.
  colimit::TwistData twist_data() const;
  TwistedComplex object(const std::string& label) const;  // "O", "O(n)", "sky:z", "dp:z"
};

P1Instance build_p1(const std::vector<Point>& divisor);
P1Instance build_p1(const std::string& divisor);  // comma-separated points

// Path category of A_n: objects 1..n, one arrow i -> j for each i < j.
std::shared_ptr<AInfCategory> build_an_quiver(int n);

}  // namespace artifact::instances
