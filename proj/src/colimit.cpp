#include "artifact/colimit.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace artifact::colimit {

using ainf::TwView;
using complexes::ChainMap;
using complexes::DirectedSystem;
using complexes::GradedComplex;
using linalg::Rational;
using linalg::SparseMatrix;

TwistedComplex EndofunctorData::power(const TwistedComplex& x, int k) const {
  if (k < 0) throw ColimitError("negative functor power");
  TwistedComplex y = x;
  for (int i = 0; i < k; ++i) y = object_map(y);
  return y;
}

namespace {

std::vector<TwistedComplex> orbit(const TwistData& t, const TwistedComplex& l, int n) {
  std::vector<TwistedComplex> out{l};
  for (int k = 0; k < n; ++k) out.push_back(t.functor.object_map(out.back()));
  return out;
}

// Degrees where either complex is nonzero.
std::vector<int> degrees_of(const ChainMap& f) {
  std::set<int> s;
  for (const auto& [n, d] : f.source.dims)
    if (d > 0) s.insert(n);
  for (const auto& [n, d] : f.target.dims)
    if (d > 0) s.insert(n);
  return {s.begin(), s.end()};
}

std::size_t cohomology_rank(const ChainMap& f) {
  std::size_t r = 0;
  for (int n : degrees_of(f)) r += linalg::rank(complexes::induced_cohomology_map(f, n));
  return r;
}

bool same_complex(const TwistedComplex& a, const TwistedComplex& b) {
  if (a.summands.size() != b.summands.size()) return false;
  for (std::size_t i = 0; i < a.summands.size(); ++i) {
    const auto &x = a.summands[i], &y = b.summands[i];
    if (x.object != y.object || x.shift != y.shift || x.level != y.level) return false;
  }
  auto nz = [](const TwistedComplex& t) {
    std::map<std::pair<std::size_t, std::size_t>, SparseVector> m;
    for (const auto& [k, v] : t.delta)
      if (!v.empty()) m[k] = v;
    return m;
  };
  return nz(a) == nz(b);
}

// Postcomposition with f in hom(x, y) on hom(z, -).
ChainMap post(const TwistData& t, const TwistedComplex& z, const TwistedComplex& x, const TwistedComplex& y,
              const SparseVector& f) {
  TwView view(t.base, {z, x, y});
  return ainf::postcomposition(view, 0, 1, 2, f);
}

}  // namespace

DirectedSystem iterate_system(const TwistData& t, const TwistedComplex& k, const TwistedComplex& l, int n) {
  if (n < 0) throw ColimitError("negative system length");
  auto ls = orbit(t, l, n);
  std::vector<TwistedComplex> objs{k};
  objs.insert(objs.end(), ls.begin(), ls.end());
  TwView view(t.base, objs);
  std::vector<GradedComplex> cs;
  std::vector<ChainMap> maps;
  for (int i = 0; i <= n; ++i) cs.push_back(ainf::hom_complex(view, 0, i + 1).complex);
  for (int i = 0; i < n; ++i) maps.push_back(ainf::postcomposition(view, 0, i + 1, i + 2, t.transformation.component(ls[i])));
  return complexes::cohomology_system(cs, maps);
}

std::string HypothesisReport::describe() const {
  std::ostringstream os;
  if (ok) {
    os << "hypotheses hold for k < " << range << " (" << checks << " checks)";
  } else {
    os << "condition '" << failure->condition << "' fails at k = " << failure->k << " for " << failure->object;
    if (!failure->detail.empty()) os << ": " << failure->detail;
  }
  return os.str();
}

HypothesisReport verify_colimit_hypotheses(const TwistData& t, const localization::GeneratorSet& d,
                                           const TwistedComplex& k, const TwistedComplex& l, int n) {
  ainf::check_maurer_cartan(t.base, k);
  HypothesisReport r;
  r.range = n;
  auto fail = [&](int kk, const std::string& obj, const std::string& cond, const std::string& detail) {
    r.ok = false;
    r.failure = HypothesisFailure{kk, obj, cond, detail};
    return r;
  };

  auto ls = orbit(t, l, n);
  std::vector<std::size_t> probe_ids;
  for (std::size_t i = 0; i < t.probes.size(); ++i) probe_ids.push_back(2 + i);
  for (int kk = 0; kk < n; ++kk) {
    const TwistedComplex& lk = ls[kk];
    const TwistedComplex& lk1 = ls[kk + 1];
    SparseVector s = t.transformation.component(lk);

    // (1) transitions vanish on D.
    for (const auto& e : d.members) {
      ++r.checks;
      if (cohomology_rank(post(t, e, lk, lk1, s)) != 0)
        return fail(kk, e.name, "transition", "H(hom(E, S^k L)) -> H(hom(E, S^{k+1} L)) is nonzero");
    }

    // (2) the cone lies in D up to quasi-isomorphism.
    ++r.checks;
    TwistedComplex cone = ainf::tw_cone(*t.base, lk, lk1, s, "cone(s_" + lk.name + ")");
    std::optional<ConeWitness> w;
    if (t.witness) {
      try {
        w = t.witness(lk);
      } catch (const std::exception& ex) {
        return fail(kk, "cone", "cone", std::string("no witness: ") + ex.what());
      }
    }
    if (!w || w->members.empty()) {
      if (!complexes::is_acyclic(ainf::tw_hom(cone, cone, t.base)))
        return fail(kk, "cone", "cone", "no D-witness and the cone is not acyclic");
      continue;
    }
    if (!same_complex(w->cone, cone)) return fail(kk, "cone", "cone", "witness source is not cone(s_{S^k L})");
    std::vector<TwistedComplex> parts;
    for (const auto& [m, shift] : w->members) {
      if (m >= d.members.size()) return fail(kk, "cone", "cone", "witness names a member outside D");
      parts.push_back(d.members[m].shifted(shift));
    }
    TwistedComplex expect = parts.size() == 1 ? parts.front() : ainf::direct_sum(parts);
    if (!same_complex(w->target, expect)) return fail(kk, "cone", "cone", "witness target is not the declared sum of D members");
    std::vector<TwistedComplex> objs{cone, w->target};
    objs.insert(objs.end(), t.probes.begin(), t.probes.end());
    TwView view(t.base, objs);
    auto hc = ainf::hom_complex(view, 0, 1);
    for (const auto& [i, c] : w->map.entries)
      if (hc.position.at(i).first != 0) return fail(kk, "cone", "cone", "witness map is not of degree 0");
    if (!hc.complex.differential(0).apply(hc.to_graded(w->map, 0)).empty())
      return fail(kk, "cone", "cone", "witness map is not closed");
    if (!ainf::is_quasi_iso_on(view, 0, 1, w->map, probe_ids))
      return fail(kk, "cone", "cone", "witness map is not a quasi-isomorphism on the probes");
  }

  // s_E vanishes in cohomology for E in D.
  for (const auto& e : d.members) {
    ++r.checks;
    TwistedComplex se = t.functor.object_map(e);
    TwView view(t.base, {e, se});
    auto hc = ainf::hom_complex(view, 0, 1);
    complexes::CohomologyCoordinates cc(hc.complex, 0);
    if (!cc.is_coboundary(hc.to_graded(t.transformation.component(e), 0)))
      return fail(0, e.name, "sigma-on-D", "s_E is nonzero in cohomology");
  }
  return r;
}

growth::GrowthFunction growth_colimit(const TwistData& t, const TwistedComplex& k, const TwistedComplex& l, int p_max,
                                      int horizon, int window) {
  if (p_max < 0 || horizon < p_max || window < 0) throw ColimitError("need 0 <= p_max <= horizon and window >= 0");
  DirectedSystem sys = iterate_system(t, k, l, horizon + window);
  auto ds = complexes::ds_colimit(sys, static_cast<std::size_t>(window));
  auto nonzero = [](std::map<int, std::size_t> m) {
    for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
    return m;
  };
  growth::GrowthFunction g;
  g.horizon = horizon;
  g.provenance = "colimit/" + t.functor.name + " horizon=" + std::to_string(horizon) + " window=" + std::to_string(window);
  for (int p = 0; p <= p_max; ++p) {
    auto at_h = nonzero(ds.image_dims[p][horizon - p]);
    auto at_w = nonzero(ds.image_dims[p][horizon + window - p]);
    std::size_t total = 0;
    for (const auto& [n, c] : at_h) total += c;
    g.samples.push_back(total);
    g.per_degree.push_back(at_h);
    g.stabilized.push_back(at_h == at_w);
  }
  return g;
}

std::string EntropyEstimate::describe() const {
  std::ostringstream os;
  os << "h ~ " << h_estimate << ", h_pol ~ " << h_pol_estimate << " (tail-half regression over " << dims.size()
     << " samples; heuristic)";
  return os.str();
}

EntropyEstimate entropy_from_dims(const std::vector<std::size_t>& dims) {
  if (dims.size() < 5) throw ColimitError("entropy needs n_max >= 4");
  bool any = false;
  for (auto d : dims) any = any || d > 0;
  if (!any) throw ColimitError("degenerate: all dimensions vanish");
  auto slope = [](const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sx += x[i];
      sy += y[i];
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    return den == 0 ? 0.0 : (n * sxy - sx * sy) / den;
  };
  std::vector<double> n_lin, n_log, log_d;
  const std::size_t n_max = dims.size() - 1;
  for (std::size_t n = std::max<std::size_t>(1, n_max / 2); n <= n_max; ++n) {
    if (dims[n] == 0) continue;
    n_lin.push_back(static_cast<double>(n));
    n_log.push_back(std::log(static_cast<double>(n)));
    log_d.push_back(std::log(static_cast<double>(dims[n])));
  }
  if (log_d.size() < 2) throw ColimitError("degenerate: fewer than two nonzero tail dimensions");
  EntropyEstimate e;
  e.dims = dims;
  e.h_estimate = slope(n_lin, log_d);
  e.h_pol_estimate = slope(n_log, log_d);
  return e;
}

EntropyEstimate entropy_estimate(const TwistData& t, const TwistedComplex& g, int n_max) {
  if (n_max < 4) throw ColimitError("entropy needs n_max >= 4");
  std::vector<std::size_t> dims;
  TwistedComplex sg = g;
  for (int n = 0; n <= n_max; ++n) {
    std::size_t total = 0;
    for (const auto& [deg, c] : complexes::cohomology_dims(ainf::tw_hom(g, sg, t.base))) total += c;
    dims.push_back(total);
    if (n < n_max) sg = t.functor.object_map(sg);
  }
  return entropy_from_dims(dims);
}

bool transitions_agree(const TwistData& t, const TwistedComplex& k, const TwistedComplex& l, int kk) {
  if (!t.functor.hom_action) throw ColimitError("S^k(s_L) needs the functor's hom action");
  auto ls = orbit(t, l, kk + 1);
  SparseVector f = t.transformation.component(l);
  for (int j = 0; j < kk; ++j) f = t.functor.hom_action(ls[j], ls[j + 1], f);
  ChainMap a = post(t, k, ls[kk], ls[kk + 1], t.transformation.component(ls[kk]));
  ChainMap b = post(t, k, ls[kk], ls[kk + 1], f);
  for (int n : degrees_of(a))
    if (!(complexes::induced_cohomology_map(a, n) == complexes::induced_cohomology_map(b, n))) return false;
  return true;
}

namespace {

std::vector<TwistedComplex> base_probes(const CategoryView& base) {
  std::vector<TwistedComplex> out;
  for (std::size_t i = 0; i < base.object_count(); ++i) out.push_back(TwistedComplex::object(i, base.object_name(i)));
  return out;
}

}  // namespace

TwistData identity_twist(std::shared_ptr<const ainf::AInfCategory> base) {
  TwistData t;
  t.base = base;
  t.functor.name = "id";
  t.functor.object_map = [](const TwistedComplex& x) { return x; };
  t.functor.hom_action = [](const TwistedComplex&, const TwistedComplex&, const SparseVector& f) { return f; };
  t.transformation.component = [base](const TwistedComplex& x) { return ainf::tw_identity(*base, x); };
  t.probes = base_probes(*base);
  return t;
}

TwistData doubling_twist(std::shared_ptr<const ainf::AInfCategory> base) {
  TwistData t;
  t.base = base;
  t.functor.name = "double";
  t.functor.object_map = [](const TwistedComplex& x) { return ainf::direct_sum({x, x}, x.name + "^2"); };
  // Basis index of (j, i, b) in hom(x, y).
  auto lookup = [base](const TwistedComplex& x, const TwistedComplex& y) {
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t> idx;
    auto bs = ainf::tw_basis(*base, x, y);
    for (std::uint32_t q = 0; q < bs.size(); ++q) idx[{bs[q].source, bs[q].target, bs[q].base}] = q;
    return idx;
  };
  t.functor.hom_action = [base, lookup](const TwistedComplex& x, const TwistedComplex& y, const SparseVector& f) {
    auto bs = ainf::tw_basis(*base, x, y);
    TwistedComplex sx = ainf::direct_sum({x, x}), sy = ainf::direct_sum({y, y});
    auto idx = lookup(sx, sy);
    const auto nx = static_cast<std::uint32_t>(x.summands.size()), ny = static_cast<std::uint32_t>(y.summands.size());
    SparseVector out;
    for (const auto& [q, c] : f.entries) {
      const auto& e = bs.at(q);
      out.add(idx.at({e.source, e.target, e.base}), c);
      out.add(idx.at({e.source + nx, e.target + ny, e.base}), c);
    }
    out.normalize();
    return out;
  };
  t.transformation.component = [base, lookup](const TwistedComplex& x) {
    SparseVector id = ainf::tw_identity(*base, x);
    auto bs = ainf::tw_basis(*base, x, x);
    auto idx = lookup(x, ainf::direct_sum({x, x}));
    const auto nx = static_cast<std::uint32_t>(x.summands.size());
    SparseVector out;
    for (const auto& [q, c] : id.entries) {
      const auto& e = bs.at(q);
      out.add(idx.at({e.source, e.target, e.base}), c);
      out.add(idx.at({e.source, e.target + nx, e.base}), c);
    }
    out.normalize();
    return out;
  };
  t.probes = base_probes(*base);
  return t;
}

}  // namespace artifact::colimit
