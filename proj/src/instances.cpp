#include "artifact/instances.hpp"

#include <algorithm>
#include <sstream>

namespace artifact::instances {

using ainf::TwView;
using localization::GeneratorSet;
using localization::Presentation;

namespace {

constexpr std::size_t kO = 0, kO1 = 1;
constexpr std::uint32_t kUnit = 0, kX = 0, kY = 1;

Rational parse_rational(const std::string& s) {
  try {
    Rational q(s);
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    throw InstanceError("not a rational number: " + s);
  }
}

std::shared_ptr<const ainf::CategoryView> as_view(const std::shared_ptr<AInfCategory>& c) { return c; }

}  // namespace

// ---------------------------------------------------------------- points and polynomials

Point Point::parse(const std::string& s) {
  if (s == "inf" || s == "∞") return {1, 0};
  auto colon = s.find(':');
  Point p;
  if (colon != std::string::npos) {
    p = {parse_rational(s.substr(0, colon)), parse_rational(s.substr(colon + 1))};
  } else {
    p = {parse_rational(s), 1};
  }
  if (p.a == 0 && p.b == 0) throw InstanceError("[0:0] is not a point");
  return p;
}

std::string Point::label() const {
  if (b == 0) return "inf";
  Rational t = a / b;
  return t.get_str();
}

Poly Poly::monomial(int deg, int xpow, const Rational& c) {
  Poly p;
  p.deg = deg;
  p.coeffs.assign(deg + 1, 0);
  p.coeffs.at(xpow) = c;
  return p;
}

Poly Poly::linear(const Point& z) {
  Poly p;
  p.deg = 1;
  p.coeffs = {-z.a, z.b};
  return p;
}

Poly Poly::operator*(const Poly& o) const {
  Poly p;
  p.deg = deg + o.deg;
  p.coeffs.assign(p.deg + 1, 0);
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; j <= o.deg; ++j) p.coeffs[i + j] += coeffs[i] * o.coeffs[j];
  return p;
}

bool Poly::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

// ---------------------------------------------------------------- base category

std::shared_ptr<AInfCategory> p1_category() {
  auto c = std::make_shared<AInfCategory>();
  auto o = c->add_object("O"), o1 = c->add_object("O(1)");
  c->add_morphism(o, o, "1", 0);
  c->add_morphism(o1, o1, "1", 0);
  c->add_morphism(o, o1, "x", 0);
  c->add_morphism(o, o1, "y", 0);
  c->set_unit(o, kUnit);
  c->set_unit(o1, kUnit);
  c->set_product({o, o, o}, {kUnit, kUnit}, SparseVector::unit(kUnit));
  c->set_product({o1, o1, o1}, {kUnit, kUnit}, SparseVector::unit(kUnit));
  for (std::uint32_t m : {kX, kY}) {
    c->set_product({o, o, o1}, {kUnit, m}, SparseVector::unit(m));
    c->set_product({o, o1, o1}, {m, kUnit}, SparseVector::unit(m));
  }
  return c;
}

// ---------------------------------------------------------------- line bundles

TwistedComplex line_bundle(int n) {
  TwistedComplex t;
  t.name = "O(" + std::to_string(n) + ")";
  if (n == 0) {
    t = TwistedComplex::object(kO, "O");
  } else if (n == 1) {
    t = TwistedComplex::object(kO1, "O(1)");
  } else if (n >= 2) {
    // u_1..u_{n-1} in O[1], e_1..e_n in O(1); u_i -> y e_i - x e_{i+1}.
    for (int i = 0; i < n - 1; ++i) t.summands.push_back({kO, 1, 1});
    for (int i = 0; i < n; ++i) t.summands.push_back({kO1, 0, 0});
    const std::size_t e0 = n - 1;
    for (int i = 0; i < n - 1; ++i) {
      t.delta[{i, e0 + i}] = SparseVector::unit(kY);
      SparseVector mx;
      mx.add(kX, -1);
      t.delta[{i, e0 + i + 1}] = mx;
    }
  } else {
    // v_0..v_m in O, f_1..f_m in O(1)[-1]; v_i -> x f_i - y f_{i+1}.
    const int m = -n;
    for (int i = 0; i <= m; ++i) t.summands.push_back({kO, 0, 1});
    for (int i = 0; i < m; ++i) t.summands.push_back({kO1, -1, 0});
    const std::size_t f0 = m + 1;
    for (int i = 0; i <= m; ++i) {
      if (i >= 1) t.delta[{i, f0 + i - 1}] = SparseVector::unit(kX);
      if (i < m) {
        SparseVector my;
        my.add(kY, -1);
        t.delta[{i, f0 + i}] = my;
      }
    }
  }
  t.origin = LBComplex{{LBBlock{n, 0, false, 0, {}}}};
  return t;
}

SparseVector multiplication_map(int n, const Poly& f) {
  if (n < 0) throw InstanceError("multiplication maps are built for n >= 0");
  const int m = n + f.deg;
  auto base = as_view(p1_category());
  TwistedComplex src = line_bundle(n), tgt = line_bundle(m);
  TwView view(base, {src, tgt});
  // Index of e'_j (1-based) in the target, and of e_i in the source.
  auto e_index = [](int deg, int j) { return static_cast<std::uint32_t>((deg >= 2 ? deg - 1 : 0) + j - 1); };
  SparseVector fixed;
  auto put = [&](std::uint32_t s, std::uint32_t t, std::uint32_t b, const Rational& c) {
    if (c == 0) return;
    auto id = view.index_of(0, 1, {s, t, b});
    if (!id) throw InstanceError("multiplication map component missing");
    fixed.add(*id, c);
  };
  if (n == 0) {
    if (m == 0) {
      put(0, 0, kUnit, f.coeffs[0]);
    } else {
      // x^a y^b = pi(e'_b) y for b >= 1, and pi(e'_1) x for b = 0.
      for (int a = 0; a <= m; ++a) {
        int b = m - a;
        if (b >= 1)
          put(0, e_index(m, b), kY, f.coeffs[a]);
        else
          put(0, e_index(m, 1), kX, f.coeffs[a]);
      }
    }
  } else {
    // e_i -> f pi(e_i) written in the e'_j, pi(e_i) = x^{n-i} y^{i-1}.
    for (int i = 1; i <= n; ++i)
      for (int a = 0; a <= f.deg; ++a) {
        int yb = (f.deg - a) + i - 1;  // y-power of the product monomial, of degree m - 1
        put(e_index(n, i), e_index(m, yb + 1), kUnit, f.coeffs[a]);
      }
  }
  fixed.normalize();
  std::vector<std::uint32_t> free;
  const auto& basis = view.basis(0, 1);
  for (std::uint32_t t = 0; t < basis.size(); ++t)
    if (src.summands[basis[t].source].object == kO && tgt.summands[basis[t].target].object == kO &&
        src.summands[basis[t].source].shift == 1)
      free.push_back(t);
  auto closed = ainf::solve_closed_extension(view, 0, 1, fixed, free);
  if (!closed) throw InstanceError("no closed lift of a multiplication map");
  return *closed;
}

TwistedComplex realize(const LBComplex& c, const std::string& name) {
  auto base = p1_category();
  std::vector<TwistedComplex> parts;
  for (const auto& b : c.blocks) {
    TwistedComplex t;
    if (!b.is_cone) {
      t = line_bundle(b.n);
    } else {
      if (b.f.deg != b.m - b.n) throw InstanceError("cone map has the wrong degree");
      t = ainf::tw_cone(*base, line_bundle(b.n), line_bundle(b.m), multiplication_map(b.n, b.f));
    }
    parts.push_back(b.shift ? t.shifted(b.shift) : t);
  }
  TwistedComplex out = parts.size() == 1 ? parts.front() : ainf::direct_sum(parts);
  out.name = name;
  out.origin = c;
  return out;
}

TwistedComplex skyscraper(const Point& z) {
  LBComplex c{{LBBlock{0, 0, true, 1, Poly::linear(z)}}};
  return realize(c, "sky:" + z.label());
}

Presentation double_point_presentation(const Point& z) {
  auto base = p1_category();
  TwistedComplex s = skyscraper(z);
  auto basis = ainf::tw_basis(*base, s, s);
  // The self-extension O[1] -> O(1) by a linear form independent of b x - a y.
  std::uint32_t form = z.a == 0 ? kY : kX;
  Presentation p;
  p.pieces = {0, 0};
  p.levels = {1, 0};
  for (std::uint32_t t = 0; t < basis.size(); ++t)
    if (basis[t].source == 0 && basis[t].target == 1 && basis[t].base == form) p.delta[{0, 1}] = SparseVector::unit(t);
  return p;
}

TwistedComplex double_point(const Point& z) {
  GeneratorSet g;
  g.members = {skyscraper(z)};
  TwistedComplex t = localization::flatten(double_point_presentation(z), g, *p1_category(), "dp:" + z.label());
  return t;
}

// ---------------------------------------------------------------- the twist instance

namespace {

const LBComplex& origin_of(const TwistedComplex& t) {
  const auto* c = std::any_cast<LBComplex>(&t.origin);
  if (!c) throw InstanceError(t.name + " is not a complex of line bundles");
  return *c;
}

// Summand offsets of the blocks of a realized complex.
std::vector<std::size_t> block_offsets(const LBComplex& c) {
  std::vector<std::size_t> off;
  std::size_t o = 0;
  for (const auto& b : c.blocks) {
    off.push_back(o);
    o += line_bundle(b.n).summands.size() + (b.is_cone ? line_bundle(b.m).summands.size() : 0);
  }
  return off;
}

}  // namespace

TwistedComplex P1Instance::twist(const TwistedComplex& l) const { return twist_power(l, 1); }

TwistedComplex P1Instance::twist_power(const TwistedComplex& l, int k) const {
  LBComplex c = origin_of(l);
  for (auto& b : c.blocks) {
    b.n += k * sigma.deg;
    b.m += k * sigma.deg;
  }
  if (k == 0) return l;
  return realize(c, l.name + "(" + std::to_string(k * sigma.deg) + ")");
}

SparseVector P1Instance::sigma_component(const TwistedComplex& l) const {
  const LBComplex& c = origin_of(l);
  TwistedComplex sl = twist(l);
  auto base = as_view(category);
  TwView view(base, {l, sl});
  auto off = block_offsets(c);
  auto soff = block_offsets(origin_of(sl));
  SparseVector total;
  for (std::size_t k = 0; k < c.blocks.size(); ++k) {
    const LBBlock& b = c.blocks[k];
    LBBlock sb = b;
    sb.n += sigma.deg;
    sb.m += sigma.deg;
    TwistedComplex x = realize({{b}}, "x"), y = realize({{sb}}, "y");
    TwView bv(base, {x, y});
    SparseVector comp;
    if (!b.is_cone) {
      comp = multiplication_map(b.n, sigma);
    } else {
      // X[1] ⊕ Y -> X'[1] ⊕ Y': diagonal lifts of sigma plus a solved cross term.
      const std::size_t nx = line_bundle(b.n).summands.size(), nsx = line_bundle(sb.n).summands.size();
      TwView xv(base, {line_bundle(b.n), line_bundle(sb.n)}), yv(base, {line_bundle(b.m), line_bundle(sb.m)});
      SparseVector fx = multiplication_map(b.n, sigma), fy = multiplication_map(b.m, sigma);
      std::vector<std::uint32_t> cross;
      const auto& bb = bv.basis(0, 1);
      for (std::uint32_t t = 0; t < bb.size(); ++t)
        if (bb[t].source < nx && bb[t].target >= nsx) cross.push_back(t);
      std::optional<SparseVector> found;
      for (int sign : {1, -1}) {
        SparseVector fixed;
        for (const auto& [t, v] : fx.entries) {
          const auto& e = xv.basis(0, 1)[t];
          fixed.add(*bv.index_of(0, 1, {e.source, e.target, e.base}), Rational(sign) * v);
        }
        for (const auto& [t, v] : fy.entries) {
          const auto& e = yv.basis(0, 1)[t];
          fixed.add(*bv.index_of(0, 1, {static_cast<std::uint32_t>(e.source + nx),
                                        static_cast<std::uint32_t>(e.target + nsx), e.base}),
                    v);
        }
        fixed.normalize();
        found = ainf::solve_closed_extension(bv, 0, 1, fixed, cross);
        if (found) break;
      }
      if (!found) throw InstanceError("no closed lift of sigma on " + l.name);
      comp = *found;
    }
    for (const auto& [t, v] : comp.entries) {
      const auto& e = bv.basis(0, 1)[t];
      total.add(*view.index_of(0, 1, {static_cast<std::uint32_t>(e.source + off[k]),
                                      static_cast<std::uint32_t>(e.target + soff[k]), e.base}),
                v);
    }
  }
  total.normalize();
  if (!ainf::mu_linear(view, {0, 1}, {total}).empty()) throw InstanceError("sigma component is not closed");
  return total;
}

P1Instance::ConeWitness P1Instance::cone_witness(const TwistedComplex& l) const {
  const LBComplex& c = origin_of(l);
  auto base = as_view(category);
  ConeWitness w;
  w.cone = ainf::tw_cone(*category, l, twist(l), sigma_component(l), "cone(s_" + l.name + ")");
  std::vector<TwistedComplex> parts;
  for (std::size_t i = 0; i + 1 < divisor.size(); ++i)
    for (std::size_t j = i + 1; j < divisor.size(); ++j)
      if (divisor[i] == divisor[j]) throw InstanceError("cone witnesses are supplied for reduced divisors only");
  for (const auto& b : c.blocks) {
    if (b.is_cone) {
      TwistedComplex block = realize({{b}}, "b");
      TwistedComplex cb = ainf::tw_cone(*category, block, twist(block), sigma_component(block));
      if (!complexes::is_acyclic(ainf::tw_hom(cb, cb, base)))
        throw InstanceError("no cone witness for a non-acyclic cone block");
      continue;
    }
    for (std::size_t zi = 0; zi < divisor.size(); ++zi) {
      parts.push_back(skyscraper(divisor[zi]).shifted(b.shift));
      w.members.push_back({zi, b.shift});
    }
  }
  if (parts.empty()) {
    w.target.name = "0";
    return w;
  }
  w.target = parts.size() == 1 ? parts.front() : ainf::direct_sum(parts);
  TwView view(base, {w.cone, w.target, line_bundle(0), line_bundle(1)});
  ainf::HomComplex hc = ainf::hom_complex(view, 0, 1);
  complexes::CohomologyCoordinates cc(hc.complex, 0);
  const auto& reps = cc.representatives();
  const std::size_t k = reps.size();
  if (k == 0) throw InstanceError("no degree-0 maps from the cone of sigma");
  // Deterministic search over small integer combinations of H^0 representatives.
  const std::vector<int> choices{1, 2, -1, 3};
  std::vector<std::size_t> digit(k, 0);
  for (std::size_t tries = 0; tries < 4096; ++tries) {
    SparseVector f;
    for (std::size_t i = 0; i < k; ++i) f.axpy(Rational(choices[digit[i]]), reps[i]);
    f = hc.from_graded(f, 0);
    if (ainf::is_quasi_iso_on(view, 0, 1, f, {2, 3})) {
      w.map = f;
      return w;
    }
    std::size_t i = 0;
    while (i < k && ++digit[i] == choices.size()) digit[i++] = 0;
    if (i == k) break;
  }
  throw InstanceError("no quasi-isomorphism from the cone of sigma was found");
}

colimit::TwistData P1Instance::twist_data() const {
  auto self = std::make_shared<const P1Instance>(*this);
  colimit::TwistData t;
  t.base = category;
  std::string label;
  for (const auto& z : divisor) label += (label.empty() ? "" : ",") + z.label();
  t.functor.name = "twist(" + label + ")";
  t.functor.object_map = [self](const TwistedComplex& l) { return self->twist(l); };
  t.transformation.component = [self](const TwistedComplex& l) { return self->sigma_component(l); };
  t.witness = [self](const TwistedComplex& l) { return self->cone_witness(l); };
  t.probes = {TwistedComplex::object(0, "O"), TwistedComplex::object(1, "O(1)")};
  return t;
}

TwistedComplex P1Instance::object(const std::string& label) const {
  auto plus = label.find('+');
  if (plus != std::string::npos) {
    std::vector<TwistedComplex> parts;
    std::size_t start = 0;
    while (true) {
      auto end = label.find('+', start);
      parts.push_back(object(label.substr(start, end == std::string::npos ? std::string::npos : end - start)));
      if (end == std::string::npos) break;
      start = end + 1;
    }
    LBComplex c;
    for (const auto& p : parts) {
      const LBComplex& pc = origin_of(p);
      c.blocks.insert(c.blocks.end(), pc.blocks.begin(), pc.blocks.end());
    }
    return realize(c, label);
  }
  if (label == "O") return line_bundle(0);
  if (label.rfind("O(", 0) == 0 && label.back() == ')') {
    try {
      return line_bundle(std::stoi(label.substr(2, label.size() - 3)));
    } catch (const std::exception&) {
      throw InstanceError("bad line bundle label " + label);
    }
  }
  if (label.rfind("sky:", 0) == 0) return skyscraper(Point::parse(label.substr(4)));
  if (label.rfind("dp:", 0) == 0) return double_point(Point::parse(label.substr(3)));
  throw InstanceError("unknown object label " + label);
}

P1Instance build_p1(const std::vector<Point>& divisor) {
  if (divisor.empty()) throw InstanceError("the divisor must be nonempty");
  P1Instance inst;
  inst.category = p1_category();
  inst.divisor = divisor;
  inst.sigma = Poly::linear(divisor.front());
  for (std::size_t i = 1; i < divisor.size(); ++i) inst.sigma = inst.sigma * Poly::linear(divisor[i]);
  std::vector<Point> distinct;
  for (const auto& z : divisor)
    if (std::find(distinct.begin(), distinct.end(), z) == distinct.end()) distinct.push_back(z);
  for (const auto& z : distinct) inst.generators.members.push_back(skyscraper(z));
  inst.generators.length_bound = 1;
  return inst;
}

P1Instance build_p1(const std::string& divisor) {
  std::vector<Point> pts;
  std::stringstream ss(divisor);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) pts.push_back(Point::parse(item));
  return build_p1(pts);
}

// ---------------------------------------------------------------- A_n quiver

std::shared_ptr<AInfCategory> build_an_quiver(int n) {
  if (n < 1) throw InstanceError("A_n needs n >= 1");
  auto c = std::make_shared<AInfCategory>();
  for (int i = 1; i <= n; ++i) c->add_object(std::to_string(i));
  for (int i = 0; i < n; ++i) {
    c->add_morphism(i, i, "e" + std::to_string(i + 1), 0);
    c->set_unit(i, 0);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c->add_morphism(i, j, "a" + std::to_string(i + 1) + std::to_string(j + 1), 0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        // (i -> j) then (j -> k); index 0 is the unit on the diagonal.
        std::uint32_t a = 0, b = 0, out = 0;
        c->set_product({static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k)}, {a, b},
                       SparseVector::unit(out));
      }
  return c;
}

}  // namespace artifact::instances
