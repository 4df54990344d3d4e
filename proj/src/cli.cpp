#include "artifact/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "artifact/colimit.hpp"
#include "artifact/growth.hpp"
#include "artifact/instances.hpp"
#include "artifact/localization.hpp"
#include "artifact/random_instances.hpp"
#include "artifact/spectral.hpp"

namespace artifact::cli {

using ainf::AInfCategory;
using ainf::TwistedComplex;
using linalg::Rational;
using linalg::SparseVector;
using nlohmann::json;

// ---------------------------------------------------------------- spec files

json category_to_json(const AInfCategory& c, int check_arity) {
  json j;
  j["schema"] = kSchemaVersion;
  j["objects"] = c.objects();
  j["arity_bound"] = c.arity_bound();
  j["check_arity"] = check_arity;
  const std::size_t n = c.object_count();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (c.hom_dim(x, y) > 0) pairs.emplace_back(x, y);
  std::sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
    return std::make_pair(c.object_name(a.first), c.object_name(a.second)) <
           std::make_pair(c.object_name(b.first), c.object_name(b.second));
  });
  json homs = json::array();
  for (auto [x, y] : pairs) {
    json els = json::array();
    for (const auto& m : c.morphisms(x, y)) els.push_back({{"name", m.name}, {"degree", m.degree}});
    homs.push_back({{"source", c.object_name(x)}, {"target", c.object_name(y)}, {"elements", els}});
  }
  j["homs"] = homs;
  std::vector<json> prods;
  for (const auto& [key, value] : c.products()) {
    const auto& [objs, idx] = key;
    json names = json::array(), inputs = json::array();
    for (auto o : objs) names.push_back(c.object_name(o));
    for (std::size_t k = 0; k < idx.size(); ++k) inputs.push_back(c.morphisms(objs[k], objs[k + 1]).at(idx[k]).name);
    for (const auto& [b, coeff] : value.entries)
      prods.push_back({{"arity", idx.size()},
                       {"objects", names},
                       {"inputs", inputs},
                       {"output", c.morphisms(objs.front(), objs.back()).at(b).name},
                       {"coefficient", linalg::to_string(coeff)}});
  }
  std::sort(prods.begin(), prods.end(), [](const json& a, const json& b) { return a.dump() < b.dump(); });
  j["products"] = prods;
  json units = json::object();
  for (const auto& [x, i] : c.units()) units[c.object_name(x)] = c.morphisms(x, x).at(i).name;
  j["units"] = units;
  return j;
}

namespace {

const json& field(const json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) throw SpecError(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SpecError(at + "/" + key, "missing field");
  return *it;
}

std::string string_at(const json& j, const std::string& at) {
  if (!j.is_string()) throw SpecError(at, "expected a string");
  return j.get<std::string>();
}

int int_at(const json& j, const std::string& at) {
  if (!j.is_number_integer()) throw SpecError(at, "expected an integer");
  return j.get<int>();
}

const json& array_at(const json& j, const std::string& at) {
  if (!j.is_array()) throw SpecError(at, "expected an array");
  return j;
}

}  // namespace

LoadedCategory category_from_json(const json& j) {
  if (j.contains("schema") && int_at(j["schema"], "/schema") != kSchemaVersion)
    throw SpecError("/schema", "unsupported schema version");
  auto cat = std::make_shared<AInfCategory>();
  const json& objs = array_at(field(j, "objects", ""), "/objects");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    std::string name = string_at(objs[i], "/objects/" + std::to_string(i));
    if (cat->find_object(name)) throw SpecError("/objects/" + std::to_string(i), "duplicate object " + name);
    cat->add_object(name);
  }
  auto object = [&](const json& v, const std::string& at) {
    auto o = cat->find_object(string_at(v, at));
    if (!o) throw SpecError(at, "unknown object " + v.get<std::string>());
    return *o;
  };
  const json& homs = array_at(field(j, "homs", ""), "/homs");
  for (std::size_t h = 0; h < homs.size(); ++h) {
    const std::string at = "/homs/" + std::to_string(h);
    std::size_t x = object(field(homs[h], "source", at), at + "/source");
    std::size_t y = object(field(homs[h], "target", at), at + "/target");
    const json& els = array_at(field(homs[h], "elements", at), at + "/elements");
    for (std::size_t e = 0; e < els.size(); ++e) {
      const std::string eat = at + "/elements/" + std::to_string(e);
      std::string name = string_at(field(els[e], "name", eat), eat + "/name");
      if (cat->find_morphism(x, y, name)) throw SpecError(eat, "duplicate element " + name);
      cat->add_morphism(x, y, name, int_at(field(els[e], "degree", eat), eat + "/degree"));
    }
  }
  LoadedCategory out;
  if (j.contains("arity_bound")) cat->set_arity_bound(int_at(j["arity_bound"], "/arity_bound"));
  if (j.contains("check_arity")) out.check_arity = int_at(j["check_arity"], "/check_arity");
  // Products accumulate per input tuple.
  std::map<std::pair<std::vector<std::size_t>, std::vector<std::uint32_t>>, SparseVector> table;
  std::map<std::pair<std::vector<std::size_t>, std::vector<std::uint32_t>>, std::string> where;
  if (j.contains("products")) {
    const json& prods = array_at(j["products"], "/products");
    for (std::size_t p = 0; p < prods.size(); ++p) {
      const std::string at = "/products/" + std::to_string(p);
      const json& ch = array_at(field(prods[p], "objects", at), at + "/objects");
      const json& ins = array_at(field(prods[p], "inputs", at), at + "/inputs");
      int arity = int_at(field(prods[p], "arity", at), at + "/arity");
      if (arity < 1 || static_cast<std::size_t>(arity) != ins.size() || ch.size() != ins.size() + 1)
        throw SpecError(at, "arity does not match objects and inputs");
      std::vector<std::size_t> os;
      for (std::size_t k = 0; k < ch.size(); ++k) os.push_back(object(ch[k], at + "/objects/" + std::to_string(k)));
      std::vector<std::uint32_t> idx;
      for (std::size_t k = 0; k < ins.size(); ++k) {
        const std::string iat = at + "/inputs/" + std::to_string(k);
        auto m = cat->find_morphism(os[k], os[k + 1], string_at(ins[k], iat));
        if (!m) throw SpecError(iat, "unknown element " + ins[k].get<std::string>());
        idx.push_back(*m);
      }
      const std::string oat = at + "/output";
      auto outm = cat->find_morphism(os.front(), os.back(), string_at(field(prods[p], "output", at), oat));
      if (!outm) throw SpecError(oat, "unknown element " + prods[p]["output"].get<std::string>());
      Rational c;
      try {
        c = linalg::parse_rational(string_at(field(prods[p], "coefficient", at), at + "/coefficient"));
      } catch (const std::invalid_argument&) {
        throw SpecError(at + "/coefficient", "expected a \"num/den\" rational");
      }
      table[{os, idx}].add(*outm, c);
      where[{os, idx}] = at;
    }
  }
  for (auto& [key, value] : table) {
    value.normalize();
    try {
      cat->set_product(key.first, key.second, value);
    } catch (const ainf::AInfError& e) {
      throw SpecError(where[key], e.what());
    }
  }
  if (j.contains("units")) {
    const json& units = j["units"];
    if (!units.is_object()) throw SpecError("/units", "expected an object");
    for (const auto& [name, el] : units.items()) {
      const std::string at = "/units/" + name;
      auto x = cat->find_object(name);
      if (!x) throw SpecError(at, "unknown object " + name);
      auto m = cat->find_morphism(*x, *x, string_at(el, at));
      if (!m) throw SpecError(at, "unknown element");
      cat->set_unit(*x, *m);
    }
  }
  out.category = cat;
  return out;
}

LoadedCategory category_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SpecError("line " + std::to_string(line) + ", column " + std::to_string(col), "malformed JSON");
  }
  return category_from_json(j);
}

LoadedCategory load_category_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return category_from_text(ss.str());
}

// ---------------------------------------------------------------- commands

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string instance;
  std::string divisor = "0,inf";
  int n = 3;
  std::string file;
  std::string json_out;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--instance", o.instance, "builtin instance: p1 or an");
  sub->add_option("--divisor", o.divisor, "divisor of the p1 instance, comma-separated points");
  sub->add_option("--n", o.n, "size of the an instance");
  sub->add_option("--file", o.file, "category spec file");
  sub->add_option("--json-out", o.json_out, "write the JSON report to this path (- for stdout)");
  sub->add_option("--seed", o.seed, "seed for randomized inputs");
}

struct Workspace {
  std::shared_ptr<const AInfCategory> base;
  std::optional<instances::P1Instance> p1;

  TwistedComplex object(const std::string& label) const {
    if (p1) {
      try {
        return p1->object(label);
      } catch (const instances::InstanceError& e) {
        throw UsageError(e.what());
      }
    }
    auto plus = label.find('+');
    if (plus != std::string::npos) return ainf::direct_sum({object(label.substr(0, plus)), object(label.substr(plus + 1))}, label);
    auto o = base->find_object(label);
    if (!o) throw UsageError("unknown object " + label);
    return TwistedComplex::object(*o, label);
  }

  localization::GeneratorSet generators(const std::vector<std::string>& labels) const {
    if (labels.empty()) {
      if (p1) return p1->generators;
      return {};
    }
    localization::GeneratorSet d;
    for (const auto& l : labels) d.members.push_back(object(l));
    return d;
  }
};

Workspace make_workspace(const CommonOptions& o) {
  Workspace w;
  if (!o.file.empty()) {
    if (!o.instance.empty()) throw UsageError("--file and --instance are exclusive");
    auto loaded = load_category_file(o.file);
    auto check = ainf::check_ainfty(*loaded.category, static_cast<std::size_t>(loaded.check_arity));
    if (!check.ok) throw ainf::AInfError("A-infinity relation violated: " + check.failure->describe(*loaded.category));
    w.base = loaded.category;
    return w;
  }
  if (o.instance == "p1") {
    w.p1 = instances::build_p1(o.divisor);
    w.base = w.p1->category;
  } else if (o.instance == "an") {
    if (o.n < 1) throw UsageError("--n must be positive");
    w.base = instances::build_an_quiver(o.n);
  } else {
    throw UsageError("need --instance p1|an or --file");
  }
  return w;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void emit(const json& report, const std::string& path, std::ostream& out) {
  if (path.empty()) return;
  if (path == "-") {
    out << report.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << report.dump(2) << "\n";
}

json dims_json(const std::map<int, std::size_t>& m) {
  json j = json::object();
  for (const auto& [n, k] : m)
    if (k > 0) j[std::to_string(n)] = k;
  return j;
}

void print_growth(const growth::GrowthFunction& g, std::ostream& out) {
  out << std::setw(4) << "p" << std::setw(8) << "gamma" << "  stabilized  per-degree\n";
  for (std::size_t p = 0; p < g.size(); ++p) {
    out << std::setw(4) << p << std::setw(8) << g.samples[p] << "  " << std::setw(10) << (g.stabilized[p] ? "yes" : "no")
        << "  ";
    for (const auto& [n, k] : g.per_degree[p]) out << n << ":" << k << " ";
    out << "\n";
  }
}

growth::GrowthFunction growth_from_json(const json& j, const std::string& path) {
  const json& g = j.contains("growth") ? j["growth"] : j;
  if (!g.contains("gamma") || !g["gamma"].is_array()) throw SpecError(path, "no growth table (gamma) found");
  growth::GrowthFunction f;
  f.samples = g["gamma"].get<std::vector<std::size_t>>();
  f.stabilized = g.contains("stabilized") ? g["stabilized"].get<std::vector<bool>>()
                                          : std::vector<bool>(f.samples.size(), true);
  if (f.stabilized.size() != f.samples.size()) throw SpecError(path, "stabilized flags do not match gamma");
  return f;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(path, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Localization and colimit filtrations on desk-scale A-infinity categories"};
  app.require_subcommand(1);

  CommonOptions co;
  std::string k_label = "O", l_label = "O", g_label = "O+O(1)", d_labels, model = "localization", quotient = "minimal";
  std::string functor = "twist", out_path, a_path, b_path;
  int p_max = 4, horizon = -1, window = 3, r_min = 0, r_max = 2, n_max = 50, a_max = 4, b_max = 4;
  bool random = false;

  auto* coh = app.add_subcommand("cohomology", "per-degree dims of H(hom(K, L))");
  add_common(coh, co);
  coh->add_option("--K", k_label);
  coh->add_option("--L", l_label);

  auto* gro = app.add_subcommand("growth", "growth function of the localization or colimit filtration");
  add_common(gro, co);
  gro->add_option("--model", model)->check(CLI::IsMember({"localization", "colimit"}));
  gro->add_option("--quotient", quotient, "quotient model")->check(CLI::IsMember({"minimal", "literal"}));
  gro->add_option("--K", k_label);
  gro->add_option("--L", l_label);
  gro->add_option("--D", d_labels, "comma-separated generators (default: the instance's)");
  gro->add_option("--pmax", p_max);
  gro->add_option("--horizon", horizon, "default pmax + 5");
  gro->add_option("--window", window);

  auto* cmp = app.add_subcommand("compare", "scaling comparison of two growth reports");
  cmp->add_option("--a", a_path)->required();
  cmp->add_option("--b", b_path)->required();
  cmp->add_option("--amax", a_max);
  cmp->add_option("--bmax", b_max);
  cmp->add_option("--json-out", co.json_out);

  auto* ss = app.add_subcommand("ss", "spectral sequence pages of the truncated quotient hom");
  add_common(ss, co);
  ss->add_option("--K", k_label);
  ss->add_option("--L", l_label);
  ss->add_option("--D", d_labels);
  ss->add_option("--pmax", p_max);
  ss->add_option("--rmin", r_min);
  ss->add_option("--rmax", r_max);
  ss->add_flag("--random", random, "use random_filtered_complex(--seed) instead");

  auto* ent = app.add_subcommand("entropy", "entropy estimates from dims H(hom(G, S^n G))");
  add_common(ent, co);
  ent->add_option("--G", g_label);
  ent->add_option("--nmax", n_max);
  ent->add_option("--functor", functor)->check(CLI::IsMember({"twist", "identity", "double"}));

  auto* exp = app.add_subcommand("export", "write the instance as a category spec file");
  add_common(exp, co);
  exp->add_option("--out", out_path)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    json report;
    report["schema"] = kSchemaVersion;
    if (*coh) {
      Workspace w = make_workspace(co);
      auto dims = complexes::cohomology_dims(ainf::tw_hom(w.object(k_label), w.object(l_label), w.base));
      report["command"] = "cohomology";
      report["K"] = k_label;
      report["L"] = l_label;
      report["dims"] = dims_json(dims);
      out << "H(hom(" << k_label << ", " << l_label << "))\n degree  dim\n";
      for (const auto& [n, k] : dims)
        if (k > 0) out << std::setw(7) << n << std::setw(5) << k << "\n";
    } else if (*gro) {
      Workspace w = make_workspace(co);
      if (horizon < 0) horizon = p_max + 5;
      TwistedComplex k = w.object(k_label), l = w.object(l_label);
      auto d = w.generators(split(d_labels));
      report["command"] = "growth";
      report["model"] = model;
      report["K"] = k_label;
      report["L"] = l_label;
      report["window"] = window;
      growth::GrowthFunction g;
      if (model == "localization") {
        localization::GrowthOptions opts{window, quotient == "literal" ? localization::Model::Literal
                                                                        : localization::Model::Minimal};
        g = localization::growth_localization(w.base, k, l, d, p_max, horizon, opts);
      } else {
        if (!w.p1) throw std::runtime_error("the colimit model needs an instance with a twist (--instance p1)");
        auto t = w.p1->twist_data();
        auto rep = colimit::verify_colimit_hypotheses(t, d, k, l, horizon);
        report["hypotheses"] = {{"ok", rep.ok}, {"checks", rep.checks}, {"report", rep.describe()}};
        out << "colimit hypotheses: " << rep.describe() << "\n";
        g = colimit::growth_colimit(t, k, l, p_max, horizon, window);
      }
      report["growth"] = json::parse(g.to_json());
      out << "growth (" << model << ", K = " << k_label << ", L = " << l_label << ", horizon " << horizon << ")\n";
      print_growth(g, out);
    } else if (*cmp) {
      auto ga = growth_from_json(read_json_file(a_path), a_path);
      auto gb = growth_from_json(read_json_file(b_path), b_path);
      auto v = growth::compare_growth(ga, gb, a_max, b_max);
      const char* kinds[] = {"translation", "scaling", "inconsistent"};
      report["command"] = "compare";
      report["verdict"] = {{"kind", kinds[static_cast<int>(v.kind)]}, {"a", v.a}, {"b", v.b}, {"window", v.window}};
      out << v.describe() << "\n";
    } else if (*ss) {
      complexes::FilteredComplex c;
      if (random) {
        c = instances::random_filtered_complex(co.seed);
      } else {
        Workspace w = make_workspace(co);
        TwistedComplex k = w.object(k_label), l = w.object(l_label);
        auto d = w.generators(split(d_labels));
        std::vector<TwistedComplex> objs{k, l};
        std::vector<std::size_t> ds;
        for (const auto& m : d.members) {
          ds.push_back(objs.size());
          objs.push_back(m);
        }
        auto view = std::make_shared<ainf::TwView>(w.base, objs);
        c = localization::quotient_hom(view, 0, 1, ds, p_max);
      }
      report["command"] = "ss";
      json pages = json::array();
      for (int r = r_min; r <= r_max; ++r) {
        auto pg = spectral::page(c, r);
        json pj = json::parse(pg.to_json());
        if (!random) pj["exact_up_to_p"] = p_max - std::max(r - 1, 0);
        pages.push_back(pj);
        out << "E_" << r << " (total " << pg.total_dim() << ")";
        if (!random) out << ", entries with p > " << p_max - std::max(r - 1, 0) << " reflect the truncation";
        out << "\n";
        for (const auto& [pn, dim] : pg.dims)
          if (dim > 0) out << "  p=" << pn.first << " n=" << pn.second << " dim=" << dim << "\n";
        if (pg.is_zero()) out << "  empty\n";
      }
      report["pages"] = pages;
    } else if (*ent) {
      Workspace w = make_workspace(co);
      colimit::TwistData t;
      if (functor == "twist") {
        if (!w.p1) throw std::runtime_error("the twist functor needs --instance p1");
        t = w.p1->twist_data();
      } else if (functor == "identity") {
        t = colimit::identity_twist(w.base);
      } else {
        t = colimit::doubling_twist(w.base);
      }
      auto e = colimit::entropy_estimate(t, w.object(g_label), n_max);
      report["command"] = "entropy";
      report["G"] = g_label;
      report["h_estimate"] = e.h_estimate;
      report["h_pol_estimate"] = e.h_pol_estimate;
      report["dims"] = e.dims;
      report["note"] = "tail-half regression; heuristic extrapolation";
      out << e.describe() << "\n n  dim\n";
      for (std::size_t n = 0; n < e.dims.size(); ++n) out << std::setw(3) << n << "  " << e.dims[n] << "\n";
    } else if (*exp) {
      Workspace w = make_workspace(co);
      std::ofstream f(out_path);
      if (!f) throw UsageError("cannot write " + out_path);
      f << category_to_json(*w.base).dump(2) << "\n";
      report["command"] = "export";
      report["path"] = out_path;
      out << "wrote " << out_path << "\n";
    }
    emit(report, co.json_out, out);
    return kOk;
  } catch (const SpecError& e) {
    err << "schema error at " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ainf::AInfError& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    err << "precondition failure: " << e.what() << "\n";
    return kPrecondition;
  }
}

}  // namespace artifact::cli
