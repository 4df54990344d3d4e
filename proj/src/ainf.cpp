#include "artifact/ainf.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace artifact::ainf {

using linalg::Echelon;

std::string tuple_key(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) {
  std::string k;
  k.reserve(4 * (objs.size() + idx.size()) + 1);
  auto put = [&](std::uint32_t x) { k.append(reinterpret_cast<const char*>(&x), sizeof x); };
  for (auto o : objs) put(static_cast<std::uint32_t>(o));
  k.push_back('|');
  for (auto i : idx) put(i);
  return k;
}

// ---------------------------------------------------------------- multilinear helpers

namespace {

void mu_linear_rec(const CategoryView& v, const std::vector<std::size_t>& objs, const std::vector<SparseVector>& args,
                   std::size_t k, std::vector<std::uint32_t>& idx, const Rational& coeff, SparseVector& out) {
  if (k == args.size()) {
    SparseVector r = v.mu(objs, idx);
    if (!r.empty()) out.axpy(coeff, r);
    return;
  }
  for (const auto& [i, c] : args[k].entries) {
    idx[k] = i;
    mu_linear_rec(v, objs, args, k + 1, idx, coeff * c, out);
  }
}

}  // namespace

SparseVector mu_linear(const CategoryView& v, const std::vector<std::size_t>& objs,
                       const std::vector<SparseVector>& args) {
  SparseVector out;
  for (const auto& a : args)
    if (a.empty()) return out;
  std::vector<std::uint32_t> idx(args.size());
  mu_linear_rec(v, objs, args, 0, idx, Rational(1), out);
  out.normalize();
  return out;
}

SparseVector HomComplex::to_graded(const SparseVector& v, int n) const {
  SparseVector out;
  for (const auto& [i, c] : v.entries)
    if (position.at(i).first == n) out.entries.emplace_back(static_cast<std::uint32_t>(position[i].second), c);
  out.normalize();
  return out;
}

SparseVector HomComplex::from_graded(const SparseVector& v, int n) const {
  SparseVector out;
  const auto& ids = by_degree.at(n);
  for (const auto& [i, c] : v.entries) out.entries.emplace_back(ids.at(i), c);
  out.normalize();
  return out;
}

HomComplex hom_complex(const CategoryView& v, std::size_t x, std::size_t y) {
  HomComplex hc;
  const std::size_t n = v.hom_dim(x, y);
  hc.position.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    int g = v.degree(x, y, i);
    hc.position[i] = {g, hc.by_degree[g].size()};
    hc.by_degree[g].push_back(i);
  }
  for (const auto& [g, ids] : hc.by_degree) hc.complex.dims[g] = ids.size();
  for (const auto& [g, ids] : hc.by_degree) {
    auto it = hc.by_degree.find(g + 1);
    if (it == hc.by_degree.end()) {
      for (auto i : ids)
        if (!v.mu({x, y}, {i}).empty()) throw AInfError("mu^1 does not raise degree by one on " + v.object_name(x) + " -> " + v.object_name(y));
      continue;
    }
    SparseMatrix m(it->second.size(), ids.size());
    for (std::size_t c = 0; c < ids.size(); ++c) {
      SparseVector img = v.mu({x, y}, {ids[c]});
      for (const auto& [r, val] : img.entries) {
        if (hc.position.at(r).first != g + 1) throw AInfError("mu^1 does not raise degree by one");
        m.set(hc.position[r].second, c, val);
      }
    }
    if (!m.is_zero()) hc.complex.d[g] = std::move(m);
  }
  return hc;
}

// ---------------------------------------------------------------- AInfCategory

std::size_t AInfCategory::add_object(const std::string& name) {
  if (find_object(name)) throw AInfError("duplicate object " + name);
  objects_.push_back(name);
  return objects_.size() - 1;
}

std::uint32_t AInfCategory::add_morphism(std::size_t x, std::size_t y, const std::string& name, int degree) {
  if (x >= objects_.size() || y >= objects_.size()) throw AInfError("unknown object in add_morphism");
  auto& v = homs_[{x, y}];
  for (const auto& m : v)
    if (m.name == name) throw AInfError("duplicate morphism " + name);
  v.push_back({name, degree});
  return static_cast<std::uint32_t>(v.size() - 1);
}

void AInfCategory::set_product(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx,
                               SparseVector value) {
  if (objs.size() != idx.size() + 1 || idx.empty()) throw AInfError("product chain has the wrong shape");
  int deg = 2 - static_cast<int>(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= hom_dim(objs[k], objs[k + 1])) throw AInfError("product input out of range");
    deg += degree(objs[k], objs[k + 1], idx[k]);
  }
  value.normalize();
  for (const auto& [i, c] : value.entries) {
    if (i >= hom_dim(objs.front(), objs.back())) throw AInfError("product output out of range");
    if (degree(objs.front(), objs.back(), i) != deg) throw AInfError("product output has the wrong degree");
  }
  auto key = std::make_pair(objs, idx);
  if (value.empty())
    products_.erase(key);
  else
    products_[key] = std::move(value);
}

std::size_t AInfCategory::hom_dim(std::size_t x, std::size_t y) const {
  auto it = homs_.find({x, y});
  return it == homs_.end() ? 0 : it->second.size();
}

int AInfCategory::degree(std::size_t x, std::size_t y, std::uint32_t i) const { return homs_.at({x, y}).at(i).degree; }

SparseVector AInfCategory::mu(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const {
  if (arity_bound_ > 0 && static_cast<int>(idx.size()) > arity_bound_) return {};
  auto it = products_.find(std::make_pair(objs, idx));
  return it == products_.end() ? SparseVector{} : it->second;
}

const std::vector<Morphism>& AInfCategory::morphisms(std::size_t x, std::size_t y) const {
  static const std::vector<Morphism> empty;
  auto it = homs_.find({x, y});
  return it == homs_.end() ? empty : it->second;
}

std::optional<std::size_t> AInfCategory::find_object(const std::string& name) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::uint32_t> AInfCategory::find_morphism(std::size_t x, std::size_t y, const std::string& name) const {
  const auto& v = morphisms(x, y);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i].name == name) return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

std::optional<std::uint32_t> AInfCategory::unit(std::size_t x) const {
  auto it = units_.find(x);
  if (it == units_.end()) return std::nullopt;
  return it->second;
}

bool AInfCategory::operator==(const AInfCategory& o) const {
  if (objects_ != o.objects_ || arity_bound_ != o.arity_bound_ || units_ != o.units_ || products_ != o.products_)
    return false;
  auto nonempty = [](const auto& homs) {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::string, int>>> out;
    for (const auto& [k, v] : homs)
      for (const auto& m : v) out[k].emplace_back(m.name, m.degree);
    return out;
  };
  return nonempty(homs_) == nonempty(o.homs_);
}

// ---------------------------------------------------------------- check_ainfty

std::string AinftyFailure::describe(const CategoryView& v) const {
  std::ostringstream os;
  os << "A-infinity relation fails at arity " << arity << " on objects";
  for (auto o : objs) os << " " << v.object_name(o);
  os << " with inputs (a_1 first)";
  for (std::size_t k = 0; k < idx.size(); ++k) os << " #" << idx[k] << "[deg " << v.degree(objs[k], objs[k + 1], idx[k]) << "]";
  os << "; residual has " << residual.nnz() << " nonzero coordinates";
  return os.str();
}

namespace {

SparseVector relation(const CategoryView& v, const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) {
  const std::size_t d = idx.size();
  const int A = v.max_arity();
  SparseVector r;
  int dagger = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (i > 0) dagger += v.degree(objs[i - 1], objs[i], idx[i - 1]) - 1;
    const Rational sign = (dagger % 2 == 0) ? 1 : -1;
    for (std::size_t j = 1; i + j <= d; ++j) {
      if (A > 0 && (static_cast<int>(j) > A || static_cast<int>(d - j + 1) > A)) continue;
      std::vector<std::size_t> in_objs(objs.begin() + i, objs.begin() + i + j + 1);
      std::vector<std::uint32_t> in_idx(idx.begin() + i, idx.begin() + i + j);
      SparseVector inner = v.mu(in_objs, in_idx);
      if (inner.empty()) continue;
      std::vector<std::size_t> out_objs(objs.begin(), objs.begin() + i + 1);
      out_objs.insert(out_objs.end(), objs.begin() + i + j, objs.end());
      std::vector<std::uint32_t> out_idx(idx.begin(), idx.begin() + i);
      out_idx.push_back(0);
      out_idx.insert(out_idx.end(), idx.begin() + i + j, idx.end());
      for (const auto& [b, c] : inner.entries) {
        out_idx[i] = b;
        SparseVector o = v.mu(out_objs, out_idx);
        if (!o.empty()) r.axpy(sign * c, o);
      }
    }
  }
  r.normalize();
  return r;
}

struct Enumerator {
  const CategoryView& v;
  const AinftyCheckOptions& opts;
  std::vector<std::size_t> pool;
  AinftyCheck result;

  bool run_tuples(const std::vector<std::size_t>& objs, std::vector<std::uint32_t>& idx, std::size_t k, int weight) {
    if (k == idx.size()) {
      ++result.relations_checked;
      SparseVector r = relation(v, objs, idx);
      if (!r.empty()) {
        result.ok = false;
        result.failure = AinftyFailure{idx.size(), objs, idx, r};
        return false;
      }
      return true;
    }
    const auto n = static_cast<std::uint32_t>(v.hom_dim(objs[k], objs[k + 1]));
    for (std::uint32_t i = 0; i < n; ++i) {
      int w = weight;
      if (opts.weight) {
        w += opts.weight(objs[k], objs[k + 1], i);
        if (w > opts.budget) continue;
      }
      idx[k] = i;
      if (!run_tuples(objs, idx, k + 1, w)) return false;
    }
    return true;
  }

  bool run_chains(std::vector<std::size_t>& objs, std::size_t d) {
    if (objs.size() == d + 1) {
      std::vector<std::uint32_t> idx(d);
      return run_tuples(objs, idx, 0, 0);
    }
    for (auto o : pool) {
      if (!objs.empty() && v.hom_dim(objs.back(), o) == 0) continue;
      objs.push_back(o);
      bool ok = run_chains(objs, d);
      objs.pop_back();
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace

AinftyCheck check_ainfty(const CategoryView& v, std::size_t check_arity, const AinftyCheckOptions& opts) {
  Enumerator e{v, opts, opts.objects, {}};
  if (e.pool.empty())
    for (std::size_t x = 0; x < v.object_count(); ++x) e.pool.push_back(x);
  for (std::size_t d = 1; d <= check_arity; ++d) {
    std::vector<std::size_t> objs;
    if (!e.run_chains(objs, d)) break;
  }
  return e.result;
}

// ---------------------------------------------------------------- cohomology category

AInfCategory cohomology_category(const CategoryView& v) {
  AInfCategory h;
  const std::size_t N = v.object_count();
  for (std::size_t x = 0; x < N; ++x) h.add_object(v.object_name(x));
  struct PairH {
    HomComplex hc;
    std::map<int, std::shared_ptr<complexes::CohomologyCoordinates>> coords;
    std::vector<std::pair<int, SparseVector>> reps;  // (degree, global representative)
    std::map<int, std::size_t> offset;
  };
  std::map<std::pair<std::size_t, std::size_t>, PairH> data;
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) {
      if (v.hom_dim(x, y) == 0) continue;
      PairH p{hom_complex(v, x, y), {}, {}, {}};
      for (const auto& [g, k] : p.hc.complex.dims) {
        auto cc = std::make_shared<complexes::CohomologyCoordinates>(p.hc.complex, g);
        p.offset[g] = p.reps.size();
        for (std::size_t t = 0; t < cc->dim(); ++t) {
          p.reps.emplace_back(g, p.hc.from_graded(cc->representatives()[t], g));
          h.add_morphism(x, y, v.object_name(x) + "->" + v.object_name(y) + ":" + std::to_string(g) + "." + std::to_string(t), g);
        }
        p.coords[g] = cc;
      }
      data.emplace(std::make_pair(x, y), std::move(p));
    }
  for (auto& [xy, a] : data)
    for (std::size_t z = 0; z < N; ++z) {
      auto it = data.find({xy.second, z});
      auto out = data.find({xy.first, z});
      if (it == data.end() || out == data.end()) continue;
      for (std::uint32_t i = 0; i < a.reps.size(); ++i)
        for (std::uint32_t j = 0; j < it->second.reps.size(); ++j) {
          SparseVector prod = mu_linear(v, {xy.first, xy.second, z}, {a.reps[i].second, it->second.reps[j].second});
          if (prod.empty()) continue;
          int g = a.reps[i].first + it->second.reps[j].first;
          const auto& oc = out->second;
          auto coords = oc.coords.at(g)->coordinates(oc.hc.to_graded(prod, g));
          if (!coords) throw AInfError("mu^2 of cocycles is not closed");
          SparseVector value;
          for (const auto& [t, c] : coords->entries)
            value.entries.emplace_back(static_cast<std::uint32_t>(oc.offset.at(g) + t), c);
          if (!value.empty()) h.set_product({xy.first, xy.second, z}, {i, j}, value);
        }
    }
  h.set_arity_bound(2);
  return h;
}

// ---------------------------------------------------------------- twisted complexes

int TwistedComplex::length() const {
  std::set<int> lv;
  for (const auto& s : summands) lv.insert(s.level);
  return static_cast<int>(lv.size());
}

TwistedComplex TwistedComplex::shifted(int s) const {
  TwistedComplex t = *this;
  for (auto& x : t.summands) x.shift += s;
  if (s != 0) t.name = name + "[" + std::to_string(s) + "]";
  t.origin.reset();
  return t;
}

TwistedComplex TwistedComplex::object(std::size_t x, const std::string& name, int shift) {
  TwistedComplex t;
  t.name = name;
  t.summands.push_back({x, shift, 0});
  return t;
}

void TwistedComplex::validate_shape(const CategoryView& base) const {
  for (const auto& s : summands)
    if (s.object >= base.object_count()) throw AInfError(name + ": summand object out of range");
  for (const auto& [ji, v] : delta) {
    auto [j, i] = ji;
    if (j >= summands.size() || i >= summands.size()) throw AInfError(name + ": delta index out of range");
    if (summands[j].level <= summands[i].level)
      throw AInfError(name + ": delta component " + std::to_string(j) + " -> " + std::to_string(i) + " does not lower the level");
    for (const auto& [b, c] : v.entries) {
      if (b >= base.hom_dim(summands[j].object, summands[i].object)) throw AInfError(name + ": delta entry out of range");
      int deg = base.degree(summands[j].object, summands[i].object, b) + summands[j].shift - summands[i].shift;
      if (deg != 1) throw AInfError(name + ": delta component " + std::to_string(j) + " -> " + std::to_string(i) + " has degree " + std::to_string(deg));
    }
  }
}

TwistedComplex direct_sum(const std::vector<TwistedComplex>& parts, const std::string& name) {
  TwistedComplex t;
  t.name = name;
  std::size_t off = 0;
  for (const auto& p : parts) {
    if (name.empty()) t.name += (t.name.empty() ? "" : "+") + p.name;
    for (const auto& s : p.summands) t.summands.push_back(s);
    for (const auto& [ji, v] : p.delta) t.delta[{ji.first + off, ji.second + off}] = v;
    off += p.summands.size();
  }
  return t;
}

std::vector<TwView::BasisElement> tw_basis(const CategoryView& base, const TwistedComplex& x, const TwistedComplex& y) {
  std::vector<TwView::BasisElement> out;
  for (std::uint32_t j = 0; j < x.summands.size(); ++j)
    for (std::uint32_t i = 0; i < y.summands.size(); ++i) {
      auto n = static_cast<std::uint32_t>(base.hom_dim(x.summands[j].object, y.summands[i].object));
      for (std::uint32_t b = 0; b < n; ++b) out.push_back({j, i, b});
    }
  return out;
}

TwView::TwView(std::shared_ptr<const CategoryView> base, std::vector<TwistedComplex> objects)
    : base_(std::move(base)), objects_(std::move(objects)) {
  if (base_->max_arity() <= 0) throw AInfError("twisted complexes need a base category with a finite arity bound");
  for (const auto& t : objects_) {
    t.validate_shape(*base_);
    std::vector<std::vector<PathStep>> out(t.summands.size());
    for (const auto& [ji, v] : t.delta)
      if (!v.empty()) out[ji.first].push_back({static_cast<std::uint32_t>(ji.second), &v});
    out_.push_back(std::move(out));
  }
}

void TwView::ensure_basis(std::size_t x, std::size_t y) const {
  auto key = std::make_pair(x, y);
  if (basis_.count(key)) return;
  auto b = tw_basis(*base_, objects_.at(x), objects_.at(y));
  auto& idx = index_[key];
  for (std::uint32_t t = 0; t < b.size(); ++t) idx[{b[t].source, b[t].target, b[t].base}] = t;
  basis_[key] = std::move(b);
}

const std::vector<TwView::BasisElement>& TwView::basis(std::size_t x, std::size_t y) const {
  std::lock_guard<std::mutex> lock(mutex_);
  ensure_basis(x, y);
  return basis_.at({x, y});
}

std::optional<std::uint32_t> TwView::index_of(std::size_t x, std::size_t y, const BasisElement& e) const {
  std::lock_guard<std::mutex> lock(mutex_);
  ensure_basis(x, y);
  const auto& idx = index_.at({x, y});
  auto it = idx.find({e.source, e.target, e.base});
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

int TwView::degree(std::size_t x, std::size_t y, std::uint32_t i) const {
  const auto& e = basis(x, y).at(i);
  const auto& sx = objects_[x].summands[e.source];
  const auto& sy = objects_[y].summands[e.target];
  return base_->degree(sx.object, sy.object, e.base) + sx.shift - sy.shift;
}

SparseVector TwView::mu(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const {
  std::string key = tuple_key(objs, idx);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  SparseVector r = compute_mu(objs, idx);
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(std::move(key), r);
  return r;
}

namespace {

// All delta paths inside one twisted complex, as (summand sequence, entries).
struct DeltaPath {
  std::vector<std::uint32_t> summands;
  std::vector<const SparseVector*> entries;
};

}  // namespace

SparseVector TwView::compute_mu(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const {
  const std::size_t d = idx.size();
  std::vector<BasisElement> e(d);
  for (std::size_t k = 0; k < d; ++k) e[k] = basis(objs[k], objs[k + 1]).at(idx[k]);
  const int budget = base_->max_arity() - static_cast<int>(d);
  if (budget < 0) return {};

  // paths_from(x, start, max_len, end or -1): enumerate delta paths in object x.
  auto paths = [&](std::size_t x, std::uint32_t start, int max_len) {
    std::vector<DeltaPath> out;
    std::vector<DeltaPath> stack{{{start}, {}}};
    while (!stack.empty()) {
      DeltaPath p = std::move(stack.back());
      stack.pop_back();
      if (static_cast<int>(p.entries.size()) < max_len)
        for (const auto& step : out_[x][p.summands.back()]) {
          DeltaPath q = p;
          q.summands.push_back(step.to);
          q.entries.push_back(step.entry);
          stack.push_back(std::move(q));
        }
      out.push_back(std::move(p));
    }
    return out;
  };

  SparseVector result;
  const TwistedComplex& t0 = objects_[objs.front()];
  const TwistedComplex& td = objects_[objs.back()];
  std::vector<std::size_t> bobjs;
  std::vector<SparseVector> bargs;

  // Recursive over segments: segment 0 is the prefix (ends at e[0].source),
  // segment k (1..d-1) joins e[k-1].target to e[k].source, segment d is the suffix.
  std::function<void(std::size_t, int, std::uint32_t)> rec = [&](std::size_t seg, int left, std::uint32_t first) {
    if (seg == d) {
      for (const auto& p : paths(objs.back(), e[d - 1].target, left)) {
        std::size_t nb = bobjs.size(), na = bargs.size();
        for (std::size_t s = 0; s < p.entries.size(); ++s) {
          bobjs.push_back(td.summands[p.summands[s + 1]].object);
          bargs.push_back(*p.entries[s]);
        }
        SparseVector val = mu_linear(*base_, bobjs, bargs);
        if (!val.empty()) {
          std::uint32_t last = p.summands.back();
          Rational sign = (t0.summands[first].shift % 2 == 0) ? 1 : -1;
          for (const auto& [b, c] : val.entries) {
            auto it = index_.at({objs.front(), objs.back()}).find({first, last, b});
            result.add(it->second, sign * c);
          }
        }
        bobjs.resize(nb);
        bargs.resize(na);
      }
      return;
    }
    // Segment seg (1..d-1): path in objs[seg] from e[seg-1].target to e[seg].source.
    for (const auto& p : paths(objs[seg], e[seg - 1].target, left)) {
      if (p.summands.back() != e[seg].source) continue;
      std::size_t nb = bobjs.size(), na = bargs.size();
      const TwistedComplex& t = objects_[objs[seg]];
      for (std::size_t s = 0; s < p.entries.size(); ++s) {
        bobjs.push_back(t.summands[p.summands[s + 1]].object);
        bargs.push_back(*p.entries[s]);
      }
      const TwistedComplex& tn = objects_[objs[seg + 1]];
      bobjs.push_back(tn.summands[e[seg].target].object);
      bargs.push_back(SparseVector::unit(e[seg].base));
      rec(seg + 1, left - static_cast<int>(p.entries.size()), first);
      bobjs.resize(nb);
      bargs.resize(na);
    }
  };

  {
    std::lock_guard<std::mutex> lock(mutex_);
    ensure_basis(objs.front(), objs.back());
  }
  // Prefix: paths in T_0 ending at e[0].source, enumerated from every start.
  for (std::uint32_t s = 0; s < t0.summands.size(); ++s) {
    for (const auto& p : paths(objs.front(), s, budget)) {
      if (p.summands.back() != e[0].source) continue;
      bobjs.clear();
      bargs.clear();
      bobjs.push_back(t0.summands[s].object);
      for (std::size_t k = 0; k < p.entries.size(); ++k) {
        bobjs.push_back(t0.summands[p.summands[k + 1]].object);
        bargs.push_back(*p.entries[k]);
      }
      bobjs.push_back(objects_[objs[1]].summands[e[0].target].object);
      bargs.push_back(SparseVector::unit(e[0].base));
      rec(1, budget - static_cast<int>(p.entries.size()), s);
    }
  }
  result.normalize();
  return result;
}

SparseVector TwView::mc_residual(std::size_t x) const {
  const TwistedComplex& t = objects_.at(x);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    ensure_basis(x, x);
  }
  SparseVector result;
  const int A = base_->max_arity();
  for (std::uint32_t s = 0; s < t.summands.size(); ++s) {
    std::vector<DeltaPath> stack{{{s}, {}}};
    while (!stack.empty()) {
      DeltaPath p = std::move(stack.back());
      stack.pop_back();
      if (!p.entries.empty()) {
        std::vector<std::size_t> bobjs;
        std::vector<SparseVector> bargs;
        for (auto u : p.summands) bobjs.push_back(t.summands[u].object);
        for (auto* en : p.entries) bargs.push_back(*en);
        SparseVector val = mu_linear(*base_, bobjs, bargs);
        Rational sign = (t.summands[s].shift % 2 == 0) ? 1 : -1;
        for (const auto& [b, c] : val.entries) {
          auto it = index_.at({x, x}).find({s, p.summands.back(), b});
          result.add(it->second, sign * c);
        }
      }
      if (static_cast<int>(p.entries.size()) < A)
        for (const auto& step : out_[x][p.summands.back()]) {
          DeltaPath q = p;
          q.summands.push_back(step.to);
          q.entries.push_back(step.entry);
          stack.push_back(std::move(q));
        }
    }
  }
  result.normalize();
  return result;
}

void check_maurer_cartan(const std::shared_ptr<const CategoryView>& base, const TwistedComplex& t) {
  TwView v(base, {t});
  SparseVector r = v.mc_residual(0);
  if (r.empty()) return;
  const auto& e = v.basis(0, 0).at(r.entries.front().first);
  throw AInfError("Maurer-Cartan equation fails for " + t.name + " at component " + std::to_string(e.source) + " -> " +
                  std::to_string(e.target));
}

GradedComplex tw_hom(const TwistedComplex& x, const TwistedComplex& y, const std::shared_ptr<const CategoryView>& base) {
  check_maurer_cartan(base, x);
  check_maurer_cartan(base, y);
  TwView v(base, {x, y});
  GradedComplex c = hom_complex(v, 0, 1).complex;
  c.validate();
  return c;
}

SparseVector tw_product(const std::vector<TwistedComplex>& chain, const std::vector<SparseVector>& args,
                        const std::shared_ptr<const CategoryView>& base) {
  if (chain.size() != args.size() + 1 || args.empty()) throw AInfError("tw_product: inputs are not composable");
  for (const auto& t : chain) check_maurer_cartan(base, t);
  TwView v(base, chain);
  std::vector<std::size_t> objs(chain.size());
  for (std::size_t i = 0; i < objs.size(); ++i) objs[i] = i;
  for (std::size_t k = 0; k < args.size(); ++k)
    for (const auto& [i, c] : args[k].entries)
      if (i >= v.hom_dim(k, k + 1)) throw AInfError("tw_product: input " + std::to_string(k) + " is not composable");
  return mu_linear(v, objs, args);
}

SparseVector tw_identity(const AInfCategory& base, const TwistedComplex& x) {
  auto basis = tw_basis(base, x, x);
  SparseVector id;
  for (std::uint32_t t = 0; t < basis.size(); ++t) {
    const auto& e = basis[t];
    if (e.source != e.target) continue;
    auto u = base.unit(x.summands[e.source].object);
    if (!u) throw AInfError("tw_identity: object " + base.object_name(x.summands[e.source].object) + " has no unit");
    if (*u == e.base) id.add(t, x.summands[e.source].shift % 2 == 0 ? 1 : -1);
  }
  id.normalize();
  return id;
}

TwistedComplex tw_cone(const CategoryView& base, const TwistedComplex& x, const TwistedComplex& y,
                       const SparseVector& f, const std::string& name) {
  TwistedComplex c;
  c.name = name.empty() ? "cone(" + x.name + "->" + y.name + ")" : name;
  int top = 0;
  for (const auto& s : y.summands) top = std::max(top, s.level + 1);
  for (auto s : x.summands) {
    s.shift += 1;
    s.level += top;
    c.summands.push_back(s);
  }
  const std::size_t off = x.summands.size();
  for (const auto& s : y.summands) c.summands.push_back(s);
  for (const auto& [ji, v] : x.delta) c.delta[ji] = v;
  for (const auto& [ji, v] : y.delta) c.delta[{ji.first + off, ji.second + off}] = v;
  auto basis = tw_basis(base, x, y);
  for (const auto& [t, coeff] : f.entries) {
    const auto& e = basis.at(t);
    c.delta[{e.source, e.target + off}].add(e.base, coeff);
  }
  for (auto& [ji, v] : c.delta) v.normalize();
  for (auto it = c.delta.begin(); it != c.delta.end();)
    it = it->second.empty() ? c.delta.erase(it) : std::next(it);
  return c;
}

std::optional<SparseVector> solve_closed_extension(const CategoryView& view, std::size_t x, std::size_t y,
                                                   const SparseVector& fixed, const std::vector<std::uint32_t>& free) {
  SparseVector rhs = mu_linear(view, {x, y}, {fixed});
  rhs.scale(-1);
  const std::size_t n = view.hom_dim(x, y);
  SparseMatrix m(n, free.size());
  for (std::size_t c = 0; c < free.size(); ++c) m.set_column(c, view.mu({x, y}, {free[c]}));
  SparseVector out = fixed;
  if (rhs.empty()) return out;
  auto sol = linalg::solve(m, rhs);
  if (!sol) return std::nullopt;
  for (const auto& [c, v] : sol->entries) out.add(free[c], v);
  out.normalize();
  return out;
}

complexes::ChainMap postcomposition(const CategoryView& view, std::size_t z, std::size_t x, std::size_t y,
                                    const SparseVector& f) {
  HomComplex src = hom_complex(view, z, x), tgt = hom_complex(view, z, y);
  complexes::ChainMap m{src.complex, tgt.complex, {}};
  for (const auto& [g, ids] : src.by_degree) {
    SparseMatrix mat(tgt.complex.dim(g), ids.size());
    for (std::size_t c = 0; c < ids.size(); ++c) {
      SparseVector img = mu_linear(view, {z, x, y}, {SparseVector::unit(ids[c]), f});
      if (g % 2) img.scale(-1);
      for (const auto& [t, v] : img.entries) {
        if (tgt.position.at(t).first != g) throw AInfError("postcomposition with a map that is not of degree 0");
        mat.set(tgt.position[t].second, c, v);
      }
    }
    m.f[g] = std::move(mat);
  }
  return m;
}

bool is_quasi_iso_on(const CategoryView& view, std::size_t x, std::size_t y, const SparseVector& f,
                     const std::vector<std::size_t>& probes) {
  for (auto z : probes) {
    complexes::ChainMap m = postcomposition(view, z, x, y, f);
    m.validate();
    std::set<int> degs;
    for (const auto& [g, k] : m.source.dims) degs.insert(g);
    for (const auto& [g, k] : m.target.dims) degs.insert(g);
    auto hs = complexes::cohomology_dims(m.source), ht = complexes::cohomology_dims(m.target);
    for (int g : degs) {
      std::size_t a = hs.count(g) ? hs[g] : 0, b = ht.count(g) ? ht[g] : 0;
      if (a != b) return false;
      if (a == 0) continue;
      if (linalg::rank(complexes::induced_cohomology_map(m, g)) != a) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- exceptional collections

void ExceptionalCollection::validate(const std::shared_ptr<const CategoryView>& base) const {
  for (std::size_t i = 0; i < objects.size(); ++i) {
    auto h = complexes::cohomology_dims(tw_hom(objects[i], objects[i], base));
    std::size_t total = 0;
    for (const auto& [g, k] : h) total += k;
    if (total != 1 || h[0] != 1) throw AInfError("collection member " + objects[i].name + " is not exceptional");
    for (std::size_t j = 0; j < i; ++j)
      if (!complexes::is_acyclic(tw_hom(objects[i], objects[j], base)))
        throw AInfError("collection is not ordered: H(" + objects[i].name + ", " + objects[j].name + ") != 0");
  }
}

Resolution exceptional_resolve(const TwistedComplex& t, const ExceptionalCollection& coll,
                               const std::shared_ptr<const CategoryView>& base) {
  check_maurer_cartan(base, t);
  TwistedComplex r = t;
  std::vector<long> tag(t.summands.size(), -1);  // collection index of each summand of r, -1 for t
  for (std::size_t step = coll.objects.size(); step-- > 0;) {
    const TwistedComplex& e = coll.objects[step];
    TwView view(base, {e, r});
    HomComplex hc = hom_complex(view, 0, 1);
    std::vector<TwistedComplex> parts;
    std::vector<SparseVector> maps;
    for (const auto& [g, k] : hc.complex.dims) {
      complexes::CohomologyCoordinates cc(hc.complex, g);
      for (const auto& rep : cc.representatives()) {
        parts.push_back(e.shifted(-g));
        maps.push_back(hc.from_graded(rep, g));
      }
    }
    if (parts.empty()) continue;
    TwistedComplex s = direct_sum(parts, e.name + "^" + std::to_string(parts.size()));
    // ev : s -> r, block a is the representative maps[a].
    auto sb = tw_basis(*base, s, r);
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t> sidx;
    for (std::uint32_t q = 0; q < sb.size(); ++q) sidx[{sb[q].source, sb[q].target, sb[q].base}] = q;
    const auto& eb = view.basis(0, 1);
    SparseVector ev;
    std::uint32_t off = 0;
    for (std::size_t a = 0; a < parts.size(); ++a) {
      for (const auto& [q, c] : maps[a].entries) {
        const auto& be = eb.at(q);
        ev.add(sidx.at({be.source + off, be.target, be.base}), c);
      }
      off += static_cast<std::uint32_t>(e.summands.size());
    }
    ev.normalize();
    r = tw_cone(*base, s, r, ev, "R" + std::to_string(step));
    std::vector<long> nt(s.summands.size(), static_cast<long>(step));
    nt.insert(nt.end(), tag.begin(), tag.end());
    tag = std::move(nt);
  }
  check_maurer_cartan(base, r);
  for (const auto& e : coll.objects)
    if (!complexes::is_acyclic(tw_hom(e, r, base))) throw AInfError("not generated: residue maps from " + e.name);
  if (!complexes::is_acyclic(tw_hom(r, r, base))) throw AInfError("not generated: nonzero residue after the cascade");

  Resolution res;
  std::vector<std::size_t> keep, tpart;
  for (std::size_t i = 0; i < tag.size(); ++i) (tag[i] >= 0 ? keep : tpart).push_back(i);
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t k = 0; k < keep.size(); ++k) pos[keep[k]] = k;
  res.complex.name = "res(" + t.name + ")";
  std::set<long> used;
  for (auto i : keep) {
    auto s = r.summands[i];
    s.shift -= 1;
    res.complex.summands.push_back(s);
    res.collection_of.push_back(static_cast<std::size_t>(tag[i]));
    used.insert(tag[i]);
  }
  for (const auto& [ji, v] : r.delta)
    if (pos.count(ji.first) && pos.count(ji.second)) res.complex.delta[{pos[ji.first], pos[ji.second]}] = v;
  res.length = static_cast<int>(used.size());
  auto wb = tw_basis(*base, res.complex, t);
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t> widx;
  for (std::uint32_t q = 0; q < wb.size(); ++q) widx[{wb[q].source, wb[q].target, wb[q].base}] = q;
  const std::size_t toff = r.summands.size() - t.summands.size();
  for (const auto& [ji, v] : r.delta) {
    if (!pos.count(ji.first) || ji.second < toff) continue;
    for (const auto& [b, c] : v.entries)
      res.witness.add(widx.at({static_cast<std::uint32_t>(pos[ji.first]), static_cast<std::uint32_t>(ji.second - toff), b}), c);
  }
  res.witness.normalize();
  check_maurer_cartan(base, res.complex);
  return res;
}

// ---------------------------------------------------------------- minimal models

MinimalModel::MinimalModel(std::shared_ptr<const CategoryView> v, int h_sign) : v_(std::move(v)), h_sign_(h_sign) {
  if (h_sign != 1 && h_sign != -1) throw AInfError("h_sign must be +1 or -1");
}

const MinimalModel::PairData& MinimalModel::data(std::size_t x, std::size_t y) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = data_.find({x, y});
    if (it != data_.end()) return *it->second;
  }
  auto pd = std::make_shared<PairData>();
  pd->hc = hom_complex(*v_, x, y);
  const GradedComplex& c = pd->hc.complex;
  // Complements L^n: greedy columns whose images stay independent.
  for (const auto& [n, k] : c.dims) {
    SparseMatrix d = c.differential(n);
    Echelon img;
    for (std::uint32_t j = 0; j < k; ++j) {
      SparseVector col = d.rows() ? d.column(j) : SparseVector{};
      if (col.empty() || !img.insert(col)) continue;
      pd->complement[n].push_back(SparseVector::unit(j));
      pd->boundary[n].push_back(col);
    }
  }
  for (const auto& [n, k] : c.dims) {
    complexes::CohomologyCoordinates cc(c, n);
    pd->rep_offset[n] = pd->reps.size();
    pd->rep_count[n] = cc.dim();
    auto e = std::make_shared<Echelon>(true);
    std::uint32_t tag = 0;
    for (const auto& r : cc.representatives()) {
      e->insert(r, tag++);
      pd->reps.push_back(pd->hc.from_graded(r, n));
      pd->degrees.push_back(n);
    }
    if (pd->boundary.count(n - 1))
      for (const auto& b : pd->boundary[n - 1]) e->insert(b, tag++);
    if (pd->complement.count(n))
      for (const auto& l : pd->complement[n]) e->insert(l, tag++);
    if (e->rank() != k) throw AInfError("hom splitting failed");
    pd->decomposition[n] = e;
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = data_.emplace(std::make_pair(x, y), pd);
  return *it->second;
}

SparseVector MinimalModel::apply_h(std::size_t x, std::size_t y, const SparseVector& v) const {
  const PairData& pd = data(x, y);
  SparseVector out;
  std::map<int, SparseVector> parts;
  for (const auto& [i, c] : v.entries) parts[pd.hc.position.at(i).first].entries.emplace_back(pd.hc.position[i].second, c);
  for (auto& [n, part] : parts) {
    part.normalize();
    auto comb = pd.decomposition.at(n)->solve(part);
    const std::size_t h0 = pd.rep_count.at(n);
    auto bit = pd.boundary.find(n - 1);
    const std::size_t nb = bit == pd.boundary.end() ? 0 : bit->second.size();
    SparseVector local;
    for (const auto& [t, c] : comb->entries)
      if (t >= h0 && t < h0 + nb) local.axpy(c, pd.complement.at(n - 1)[t - h0]);
    local.normalize();
    if (!local.empty()) out.axpy(Rational(1), pd.hc.from_graded(local, n - 1));
  }
  out.normalize();
  return out;
}

SparseVector MinimalModel::apply_p(std::size_t x, std::size_t y, const SparseVector& v) const {
  const PairData& pd = data(x, y);
  std::map<int, SparseVector> parts;
  for (const auto& [i, c] : v.entries) parts[pd.hc.position.at(i).first].entries.emplace_back(pd.hc.position[i].second, c);
  SparseVector out;
  for (auto& [n, part] : parts) {
    part.normalize();
    auto comb = pd.decomposition.at(n)->solve(part);
    const std::size_t h0 = pd.rep_count.at(n), off = pd.rep_offset.at(n);
    for (const auto& [t, c] : comb->entries)
      if (t < h0) out.add(static_cast<std::uint32_t>(off + t), c);
  }
  out.normalize();
  return out;
}

SparseVector MinimalModel::project(std::size_t x, std::size_t y, const SparseVector& v) const { return apply_p(x, y, v); }

SparseVector MinimalModel::tree_sum(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const {
  const std::size_t d = idx.size();
  const int A = v_->max_arity();
  SparseVector total;
  std::vector<std::size_t> cuts{0};
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == d) {
      const std::size_t r = cuts.size() - 1;
      if (r < 2 || (A > 0 && static_cast<int>(r) > A)) return;
      std::vector<std::size_t> bobjs;
      std::vector<SparseVector> args;
      for (std::size_t g = 0; g < r; ++g) {
        std::vector<std::size_t> so(objs.begin() + cuts[g], objs.begin() + cuts[g + 1] + 1);
        std::vector<std::uint32_t> si(idx.begin() + cuts[g], idx.begin() + cuts[g + 1]);
        SparseVector l = lambda(so, si);
        if (l.empty()) return;
        bobjs.push_back(objs[cuts[g]]);
        args.push_back(std::move(l));
      }
      bobjs.push_back(objs.back());
      SparseVector val = mu_linear(*v_, bobjs, args);
      if (!val.empty()) total.axpy(Rational(1), val);
      return;
    }
    const bool last_group = A > 0 && static_cast<int>(cuts.size()) == A;
    for (std::size_t next = last_group ? d : pos + 1; next <= d; ++next) {
      if (next - pos == d) continue;  // r >= 2
      cuts.push_back(next);
      rec(next);
      cuts.pop_back();
    }
  };
  rec(0);
  total.normalize();
  return total;
}

SparseVector MinimalModel::lambda(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const {
  if (idx.size() == 1) return data(objs[0], objs[1]).reps.at(idx[0]);
  std::string key = tuple_key(objs, idx);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = lambda_cache_.find(key);
    if (it != lambda_cache_.end()) return it->second;
  }
  SparseVector r = apply_h(objs.front(), objs.back(), tree_sum(objs, idx));
  if (h_sign_ < 0) r.scale(-1);
  std::lock_guard<std::mutex> lock(mutex_);
  lambda_cache_.emplace(std::move(key), r);
  return r;
}

SparseVector MinimalModel::mu(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const {
  if (idx.size() < 2) return {};
  std::string key = tuple_key(objs, idx);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = mu_cache_.find(key);
    if (it != mu_cache_.end()) return it->second;
  }
  SparseVector r = apply_p(objs.front(), objs.back(), tree_sum(objs, idx));
  std::lock_guard<std::mutex> lock(mutex_);
  mu_cache_.emplace(std::move(key), r);
  return r;
}

}  // namespace artifact::ainf
