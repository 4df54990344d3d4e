// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "artifact/colimit.hpp"
#include "artifact/instances.hpp"
#include "artifact/localization.hpp"
#include "artifact/random_instances.hpp"
#include "artifact/spectral.hpp"
#include "helpers.hpp"

using namespace artifact;
using complexes::FilteredChainMap;
using complexes::FilteredComplex;
using complexes::GradedComplex;
using instances::line_bundle;
using instances::Point;
using instances::skyscraper;
using localization::GrowthOptions;
using localization::Model;
using localization::QuotientView;

namespace {

// Collects failed conditions; a criterion passes when none failed.
struct Check {
  std::vector<std::string> failures;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

std::map<int, std::size_t> nonzero(std::map<int, std::size_t> m) {
  for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
  return m;
}

std::size_t total(const std::map<int, std::size_t>& m) {
  std::size_t t = 0;
  for (const auto& [n, k] : m) t += k;
  return t;
}

std::shared_ptr<ainf::TwView> p1_view(const std::vector<ainf::TwistedComplex>& objs) {
  return std::make_shared<ainf::TwView>(instances::p1_category(), objs);
}

// O, O_0, O_inf, O_1: indices 0..3.
std::shared_ptr<ainf::TwView> gm_view() {
  return p1_view({line_bundle(0), skyscraper(Point::parse("0")), skyscraper(Point::parse("inf")),
                  skyscraper(Point::parse("1"))});
}

const std::vector<std::size_t> kGamma{1, 3, 5, 7, 9};

void criterion1(Check& c) {
  auto g = localization::growth_localization(gm_view(), 0, 0, {1, 2}, 4, 9);
  auto inst = instances::build_p1("0,inf");
  auto h = colimit::growth_colimit(inst.twist_data(), line_bundle(0), line_bundle(0), 4, 9);
  c.require(g.samples == kGamma && g.all_stabilized(), "localization " + join(g.samples));
  c.require(h.samples == kGamma && h.all_stabilized(), "colimit " + join(h.samples));
  c.note << "localization " << join(g.samples) << ", colimit " << join(h.samples);
}

void criterion2(Check& c) {
  auto v = gm_view();
  auto o = localization::growth_localization(v, 0, 0, {1, 2}, 4, 9);
  auto sky = localization::growth_localization(v, 3, 3, {1, 2}, 4, 9);
  auto mixed = localization::growth_localization(v, 0, 3, {1, 2}, 4, 9);
  auto d_o = growth::detect_poly_degree(o), d_s = growth::detect_poly_degree(sky),
       d_m = growth::detect_poly_degree(mixed);
  c.require(d_o == 1, "degree of gamma_{O,O}");
  c.require(sky.samples == std::vector<std::size_t>(5, 2) && d_s == 0, "skyscraper pair " + join(sky.samples));
  c.require(mixed.samples == std::vector<std::size_t>(5, 1) && d_m == 0, "O, skyscraper " + join(mixed.samples));
  c.note << "degrees " << d_o.value_or(-1) << "," << d_s.value_or(-1) << "," << d_m.value_or(-1);
}

void criterion3(Check& c) {
  auto z0 = Point::parse("0"), zi = Point::parse("inf");
  auto v = p1_view({line_bundle(0), skyscraper(z0), skyscraper(zi), instances::double_point(z0),
                    instances::double_point(zi)});
  auto gd = localization::growth_localization(v, 0, 0, {1, 2}, 4, 9);
  auto gp = localization::growth_localization(v, 0, 0, {1, 2, 3, 4}, 4, 6, GrowthOptions{1, Model::Minimal});
  auto verdict = growth::compare_growth(gd, gp);
  c.require(verdict.kind != growth::GrowthVerdict::Kind::Inconsistent && verdict.a <= 2,
            "compare_growth: " + verdict.describe());
  c.note << "D " << join(gd.samples) << ", D' " << join(gp.samples) << ", " << verdict.describe();

  localization::SplittingData data;
  data.d = {1, 2};
  data.d_prime = {1, 2, 3, 4};
  auto dpi = instances::double_point_presentation(zi);
  for (auto& pc : dpi.pieces) pc = 1;
  data.presentations = {localization::Presentation::single(0), localization::Presentation::single(1),
                        instances::double_point_presentation(z0), dpi};
  data.length_bound = 2;
  std::size_t words = 0;
  for (int p = 0; p <= 2; ++p) {
    auto r = localization::splitting_map(v, 0, 0, data, p);
    r.validate();
    QuotientView small(v, data.d, p), large(v, data.d_prime, p), tgt(v, data.d, p * data.length_bound);
    auto iota = localization::word_inclusion(small, large, 0, 0);
    auto hs = ainf::hom_complex(small, 0, 0), ht = ainf::hom_complex(tgt, 0, 0);
    const auto& ws = small.words(0, 0);
    for (std::uint32_t i = 0; i < ws.size(); ++i) {
      auto [n, local] = hs.position.at(i);
      auto image = r.f.at(n).apply(iota.f.at(n).column(local));
      auto t = tgt.index_of(0, 0, ws[i]);
      c.require(t.has_value() && image == linalg::SparseVector::unit(ht.position.at(*t).second),
                "r o iota at p = " + std::to_string(p));
      ++words;
    }
  }
  c.note << ", r o iota = id on " << words << " words";
}

void criterion4(Check& c) {
  instances::RandomComplexParams params;
  params.max_level = 3;
  int complexes_checked = 0, depth_checked = 0, cone_pairs = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    FilteredComplex f = instances::random_filtered_complex(seed, params);
    for (const auto& [n, m] : f.total.d)
      if (f.total.d.count(n + 1)) c.require((f.total.d.at(n + 1) * m).entries().empty(), "d^2 = 0");
    const int P = f.p_max();
    const int r_inf = P + (f.total.max_degree() - f.total.min_degree() + 1) + 1;
    std::vector<spectral::SpectralPage> pages;
    for (int r = 0; r <= r_inf; ++r) pages.push_back(spectral::page(f, r));
    for (int r = 0; r < r_inf; ++r)
      for (const auto& [k, v] : pages[r + 1].dims) c.require(v <= pages[r].dim(k.first, k.second), "monotone pages");
    for (int p = 0; p <= P; ++p) {
      // gr^p as an independent complex.
      GradedComplex gr;
      std::map<int, std::vector<std::size_t>> idx;
      for (const auto& [n, k] : f.total.dims) {
        for (std::size_t i = 0; i < k; ++i)
          if (f.level_of(n, i) == p) idx[n].push_back(i);
        gr.dims[n] = idx[n].size();
      }
      for (const auto& [n, m] : f.total.d)
        if (idx.count(n + 1)) gr.d[n] = m.submatrix(idx[n + 1], idx[n]);
      auto h = complexes::cohomology_dims(gr);
      for (const auto& [n, k] : f.total.dims) c.require(pages[1].dim(p, n) == h[n], "E1 = H(gr)");
    }
    auto table = complexes::filtered_image_table(f, P);
    for (const auto& [n, k] : f.total.dims)
      for (int p = 0; p <= P; ++p) {
        std::size_t prev = p ? table[p - 1].per_degree[n] : 0;
        c.require(pages[r_inf].dim(p, n) == table[p].per_degree[n] - prev, "E_inf = gr of filtered image");
      }
    ++complexes_checked;

    FilteredComplex cone = complexes::r_cone(FilteredChainMap::identity(f), static_cast<int>(seed % 3));
    auto bd = complexes::boundary_depth(cone, 8);
    if (bd.kind == complexes::BoundaryDepth::Kind::Value) {
      c.require(spectral::is_er_acyclic(cone, bd.depth), "boundary depth implies E_d-acyclic");
      ++depth_checked;
    }
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    FilteredComplex a = instances::random_filtered_complex(300 + seed);
    FilteredComplex c2 = instances::random_filtered_complex(400 + seed);
    for (int r = 1; r <= 2; ++r) {
      FilteredComplex c1 = complexes::r_cone(FilteredChainMap::identity(a), r);
      c.require(spectral::is_er_acyclic(c1, r), "r-cone of identity is E_r-acyclic");
      auto f = instances::random_chain_map(500 + seed, c1, c2);
      c.require(spectral::is_er_quasi_iso(complexes::cone_inclusion(f, r), r), "cone with E_r-acyclic source");
      ++cone_pairs;
    }
  }
  c.require(complexes_checked >= 100 && depth_checked >= 100 && cone_pairs >= 30, "instance counts");
  c.note << complexes_checked << " complexes, " << depth_checked << " depth checks, " << cone_pairs << " cone pairs";
}

void criterion5(Check& c) {
  instances::RandomComplexParams params;
  params.max_level = 0;
  params.max_dim = 3;
  int systems = 0, vanishing = 0, deepest = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::vector<FilteredComplex> fcs;
    std::vector<GradedComplex> cs;
    std::vector<complexes::ChainMap> maps;
    for (int i = 0; i < 5; ++i) fcs.push_back(instances::random_filtered_complex(1000 * seed + i, params));
    for (auto& f : fcs) cs.push_back(f.total);
    for (int i = 0; i < 4; ++i) maps.push_back(instances::random_chain_map(77 * seed + i, fcs[i], fcs[i + 1]).underlying());
    auto sys = complexes::cohomology_system(cs, maps);
    auto col = complexes::ds_colimit(sys);
    for (std::size_t n_terms = 1; n_terms <= 5; ++n_terms) {
      auto h = complexes::hocolim(cs, maps, n_terms);
      // H of the prefix telescope is the colimit of the prefix, i.e. H(C_{n-1}).
      c.require(nonzero(complexes::cohomology_dims(h.total)) == nonzero(sys.spaces[n_terms - 1]), "H(hocolim prefix)");
    }
    auto h = complexes::hocolim(cs, maps, 5);
    auto table = complexes::filtered_image_table(h, h.p_max());
    for (std::size_t p = 0; p < 5; ++p)
      c.require(nonzero(table[p].per_degree) == nonzero(col.filtration[p]), "ds_colimit filtration");
    ++systems;
  }
  for (int d = 1; d <= 3; ++d)
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      auto v = testing_helpers::vanishing_system(seed + 10 * static_cast<std::uint64_t>(d), d, 7);
      auto h = complexes::hocolim(v.cs, v.maps, v.cs.size());
      auto bd = complexes::boundary_depth(h, 8);
      c.require(bd.kind == complexes::BoundaryDepth::Kind::Value && bd.depth <= d, "colimit depth <= d");
      deepest = std::max(deepest, bd.depth);
      ++vanishing;
    }
  c.require(systems >= 50 && vanishing >= 20 && deepest == 3, "instance counts");
  c.note << systems << " systems, " << vanishing << " vanishing systems, max depth " << deepest;
}

void criterion6(Check& c) {
  auto v = gm_view();
  auto check = [&](const QuotientView& q, int arity, const std::string& name) {
    auto r = ainf::check_ainfty(q, arity, q.check_options());
    c.require(r.ok, name + ": " + (r.failure ? r.failure->describe(q) : std::string()));
  };
  check(QuotientView(v, {1, 2}, 2), 3, "P1 literal arity 3");
  check(QuotientView(std::make_shared<ainf::MinimalModel>(v), {1, 2}, 2), 4, "P1 minimal arity 4");
  check(QuotientView(instances::build_an_quiver(3), {1}, 3), 4, "A3 arity 4");
  c.note << "A-infinity ok";

  const int P = 3;
  int pairs = 0;
  for (std::size_t x : {0, 1, 3})
    for (std::size_t y : {0, 2, 3}) {
      auto e1 = spectral::page(localization::quotient_hom(v, x, y, {1, 2}, P), 1);
      std::map<std::pair<int, int>, std::size_t> nz;
      for (const auto& [k, d] : e1.dims)
        if (d > 0) nz[k] = d;
      c.require(nz == localization::cohomology_word_counts(*v, x, y, {1, 2}, P), "E1 vs word counts");
      ++pairs;
    }
  c.note << ", E1 = word counts on " << pairs << " pairs";

  auto z0 = skyscraper(Point::parse("0"));
  auto w = p1_view({line_bundle(0), z0, skyscraper(Point::parse("inf")), z0.shifted(1)});
  QuotientView small(w, {1, 2}, P), large(w, {1, 2, 3}, P);
  auto f = localization::word_inclusion(small, large, 0, 0);
  // Entries of E_2 with p <= P - 1 are those of the untruncated quotients.
  c.require(spectral::is_er_quasi_iso(f, 1, P - 1), "adding O_0[1] is an E1-quasi-isomorphism");
  c.note << ", shifted summand E1-qi";
}

void criterion7(Check& c) {
  auto inst = instances::build_p1("0,inf");
  auto t = inst.twist_data();
  auto g = inst.object("O+O(1)");
  auto e = colimit::entropy_estimate(t, g, 50);
  bool dims_ok = e.dims.size() == 51;
  for (std::size_t n = 0; n < e.dims.size(); ++n) dims_ok = dims_ok && e.dims[n] == 8 * n + 4;
  c.require(dims_ok, "dims 8n+4");
  c.require(e.h_pol_estimate >= 0.85 && e.h_pol_estimate <= 1.15, "h_pol = " + std::to_string(e.h_pol_estimate));
  auto gc = colimit::growth_colimit(t, g, g, 10, 13, 2);
  for (int p = 0; p <= 10; ++p) {
    auto h = total(complexes::cohomology_dims(ainf::tw_hom(g, inst.twist_power(g, p), t.base)));
    c.require(gc.samples[p] <= h, "lower bound at p = " + std::to_string(p));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "h = %.4f, h_pol = %.4f, colim ", e.h_estimate, e.h_pol_estimate);
  c.note << buf << join(gc.samples);
}

void criterion8(Check& c) {
  auto m = std::make_shared<ainf::MinimalModel>(gm_view());
  const int H = 5, W = 2;
  // x^2 is the fresh level-2 class supported on words through O_inf alone.
  QuotientView sub(m, {2}, H + W), full(m, {1, 2}, H + W);
  auto v2 = localization::fresh_class(localization::quotient_hom(sub, 0, 0), 0, 2, H);
  c.require(!v2.empty(), "x^2 representative");
  if (v2.empty()) return;
  auto inc = localization::word_inclusion(sub, full, 0, 0);
  auto lv = localization::class_filtration_level(localization::quotient_hom(full, 0, 0), 0, inc.f.at(0).apply(v2), H, W);
  c.require(!lv.zero_class && lv.level == 2 && lv.stabilized, "level " + std::to_string(lv.level));
  c.note << "level " << lv.level << (lv.stabilized ? ", stabilized" : ", not stabilized");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "P1 minus {0,inf}: growth of O", 60, criterion1},
      {2, "polynomial degree equals support dimension", 60, criterion2},
      {3, "generator change is a scaling", 120, criterion3},
      {4, "spectral sequence properties", 120, criterion4},
      {5, "homotopy colimit properties", 60, criterion5},
      {6, "quotient correctness", 120, criterion6},
      {7, "entropy of the twist", 60, criterion7},
      {8, "x^2 has filtration level 2", 30, criterion8},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.limit) c.failures.push_back("over time limit");
    bool ok = c.failures.empty();
    failed += !ok;
    char timing[48];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, cr.limit);
    std::cout << (ok ? "PASS" : "FAIL") << " " << cr.id << " " << cr.name << " [" << timing << "] " << c.note.str();
    if (!ok) std::cout << " | first failure: " << c.failures.front() << " (" << c.failures.size() << " total)";
    std::cout << std::endl;
  }
  return failed ? 1 : 0;
}
