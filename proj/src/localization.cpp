#include "artifact/localization.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace artifact::localization {

using ainf::AInfError;
using ainf::tuple_key;
using complexes::GradedComplex;
using linalg::Echelon;
using linalg::Rational;
using linalg::SparseMatrix;

// ---------------------------------------------------------------- generators

int Presentation::length() const {
  std::set<int> lv(levels.begin(), levels.end());
  return static_cast<int>(lv.size());
}

Presentation Presentation::single(std::size_t member) {
  Presentation p;
  p.pieces = {member};
  p.levels = {0};
  return p;
}

void GeneratorSet::validate(const std::shared_ptr<const CategoryView>& base) const {
  for (const auto& m : members) ainf::check_maurer_cartan(base, m);
  if (!presentations.empty() && presentations.size() != members.size())
    throw LocalizationError("presentations must be given for every member or none");
  for (const auto& p : presentations)
    if (p && p->length() > length_bound)
      throw LocalizationError("a presentation exceeds the declared length bound");
}

TwistedComplex flatten(const Presentation& pr, const GeneratorSet& over, const CategoryView& base,
                       const std::string& name) {
  if (pr.pieces.size() != pr.levels.size()) throw LocalizationError("presentation levels do not match its pieces");
  TwistedComplex t;
  t.name = name;
  int span = 1;
  for (auto m : pr.pieces)
    for (const auto& s : over.members.at(m).summands) span = std::max(span, s.level + 1);
  std::vector<std::size_t> offset;
  for (std::size_t a = 0; a < pr.pieces.size(); ++a) {
    const TwistedComplex& m = over.members[pr.pieces[a]];
    offset.push_back(t.summands.size());
    for (auto s : m.summands) {
      s.level += pr.levels[a] * span;
      t.summands.push_back(s);
    }
    for (const auto& [ji, v] : m.delta) t.delta[{ji.first + offset[a], ji.second + offset[a]}] = v;
  }
  for (const auto& [ab, v] : pr.delta) {
    auto [a, b] = ab;
    if (pr.levels.at(a) <= pr.levels.at(b)) throw LocalizationError("presentation delta does not lower the level");
    auto basis = ainf::tw_basis(base, over.members[pr.pieces[a]], over.members[pr.pieces[b]]);
    for (const auto& [q, c] : v.entries) {
      const auto& e = basis.at(q);
      t.delta[{e.source + offset[a], e.target + offset[b]}].add(e.base, c);
    }
  }
  for (auto& [k, v] : t.delta) v.normalize();
  t.validate_shape(base);
  return t;
}

// ---------------------------------------------------------------- quotient view

QuotientView::QuotientView(std::shared_ptr<const CategoryView> base, std::vector<std::size_t> d_objects, int truncation)
    : base_(std::move(base)), d_(std::move(d_objects)), truncation_(truncation) {
  if (truncation < 0) throw LocalizationError("negative truncation");
  for (auto e : d_)
    if (e >= base_->object_count()) throw LocalizationError("quotient object out of range");
}

const QuotientView::Table& QuotientView::table(std::size_t x, std::size_t y) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = tables_.find({x, y});
    if (it != tables_.end()) return *it->second;
  }
  auto t = std::make_shared<Table>();
  // Object chains x -> E_1 -> ... -> E_k -> y with all homs nonzero, then
  // all index tuples; grouped by length.
  for (int k = 0; k <= truncation_; ++k) {
    std::vector<std::size_t> objs{x};
    std::function<void()> chains = [&]() {
      if (static_cast<int>(objs.size()) == k + 1) {
        if (base_->hom_dim(objs.back(), y) == 0) return;
        objs.push_back(y);
        std::vector<std::uint32_t> idx(k + 1);
        std::function<void(std::size_t, int)> tuples = [&](std::size_t pos, int deg) {
          if (pos == idx.size()) {
            std::uint32_t id = static_cast<std::uint32_t>(t->words.size());
            t->index.emplace(tuple_key(objs, idx), id);
            t->words.push_back({objs, idx});
            t->degrees.push_back(deg - k);
            return;
          }
          const auto n = static_cast<std::uint32_t>(base_->hom_dim(objs[pos], objs[pos + 1]));
          for (std::uint32_t i = 0; i < n; ++i) {
            idx[pos] = i;
            tuples(pos + 1, deg + base_->degree(objs[pos], objs[pos + 1], i));
          }
        };
        tuples(0, 0);
        objs.pop_back();
        return;
      }
      for (auto e : d_) {
        if (base_->hom_dim(objs.back(), e) == 0) continue;
        objs.push_back(e);
        chains();
        objs.pop_back();
      }
    };
    chains();
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = tables_.emplace(std::make_pair(x, y), t);
  return *it->second;
}

const std::vector<QuotientView::Word>& QuotientView::words(std::size_t x, std::size_t y) const {
  return table(x, y).words;
}

std::optional<std::uint32_t> QuotientView::index_of(std::size_t x, std::size_t y, const Word& w) const {
  const Table& t = table(x, y);
  auto it = t.index.find(tuple_key(w.objs, w.idx));
  if (it == t.index.end()) return std::nullopt;
  return it->second;
}

int QuotientView::degree(std::size_t x, std::size_t y, std::uint32_t i) const { return table(x, y).degrees.at(i); }

SparseVector QuotientView::mu(const std::vector<std::size_t>& objs, const std::vector<std::uint32_t>& idx) const {
  const std::size_t d = idx.size();
  const int A = base_->max_arity();
  // Concatenate the input words into one letter sequence.
  std::vector<std::size_t> fo{objs.front()};
  std::vector<std::uint32_t> fi;
  std::vector<std::size_t> boundaries;  // letter positions b with a junction between b-1 and b
  for (std::size_t k = 0; k < d; ++k) {
    const Word& w = words(objs[k], objs[k + 1]).at(idx[k]);
    if (k > 0) boundaries.push_back(fi.size());
    fo.insert(fo.end(), w.objs.begin() + 1, w.objs.end());
    fi.insert(fi.end(), w.idx.begin(), w.idx.end());
  }
  const std::size_t n = fi.size();
  std::vector<int> shifted(n);
  for (std::size_t t = 0; t < n; ++t) shifted[t] = base_->degree(fo[t], fo[t + 1], fi[t]) - 1;
  const Table& out = table(objs.front(), objs.back());
  SparseVector result;
  int dagger = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (s > 0) dagger += shifted[s - 1];
    if (d >= 2 && s + 1 > boundaries.front()) break;
    std::size_t e_min = d >= 2 ? boundaries.back() + 1 : s + 1;
    for (std::size_t e = std::max(e_min, s + 1); e <= n; ++e) {
      if (A > 0 && static_cast<int>(e - s) > A) break;
      std::vector<std::size_t> so(fo.begin() + s, fo.begin() + e + 1);
      std::vector<std::uint32_t> si(fi.begin() + s, fi.begin() + e);
      SparseVector val = base_->mu(so, si);
      if (val.empty()) continue;
      if (static_cast<int>(n - (e - s)) > truncation_) throw LocalizationError("quotient product overflows the truncation");
      std::vector<std::size_t> wo(fo.begin(), fo.begin() + s + 1);
      wo.insert(wo.end(), fo.begin() + e, fo.end());
      std::vector<std::uint32_t> wi(fi.begin(), fi.begin() + s);
      wi.push_back(0);
      wi.insert(wi.end(), fi.begin() + e, fi.end());
      const Rational sign = dagger % 2 == 0 ? 1 : -1;
      for (const auto& [b, c] : val.entries) {
        wi[s] = b;
        auto it = out.index.find(tuple_key(wo, wi));
        if (it == out.index.end()) throw LocalizationError("quotient product left the word basis");
        result.add(it->second, sign * c);
      }
    }
  }
  result.normalize();
  return result;
}

ainf::AinftyCheckOptions QuotientView::check_options() const {
  ainf::AinftyCheckOptions o;
  o.weight = [this](std::size_t x, std::size_t y, std::uint32_t i) {
    return static_cast<int>(words(x, y).at(i).length());
  };
  o.budget = truncation_;
  return o;
}

FilteredComplex quotient_hom(const QuotientView& q, std::size_t x, std::size_t y) {
  ainf::HomComplex hc = ainf::hom_complex(q, x, y);
  FilteredComplex c;
  c.total = hc.complex;
  const auto& ws = q.words(x, y);
  for (const auto& [n, ids] : hc.by_degree) {
    auto& lv = c.level[n];
    for (auto i : ids) lv.push_back(static_cast<int>(ws[i].length()));
  }
  return c;
}

FilteredComplex quotient_hom(const std::shared_ptr<const CategoryView>& base, std::size_t x, std::size_t y,
                             const std::vector<std::size_t>& d_objects, int p) {
  QuotientView q(base, d_objects, p);
  return quotient_hom(q, x, y);
}

SparseVector quotient_product(const QuotientView& q, const std::vector<std::size_t>& objs,
                              const std::vector<SparseVector>& args, int p) {
  SparseVector r = ainf::mu_linear(q, objs, args);
  const auto& ws = q.words(objs.front(), objs.back());
  for (const auto& [i, c] : r.entries)
    if (static_cast<int>(ws[i].length()) > p) throw LocalizationError("quotient product overflows the truncation");
  return r;
}

std::map<std::pair<int, int>, std::size_t> cohomology_word_counts(const CategoryView& base, std::size_t x,
                                                                   std::size_t y,
                                                                   const std::vector<std::size_t>& d_objects, int p) {
  ainf::AInfCategory h = ainf::cohomology_category(base);
  auto hp = std::make_shared<ainf::AInfCategory>(h);
  QuotientView q(hp, d_objects, p);
  std::map<std::pair<int, int>, std::size_t> out;
  const auto& ws = q.words(x, y);
  for (std::uint32_t i = 0; i < ws.size(); ++i) ++out[{static_cast<int>(ws[i].length()), q.degree(x, y, i)}];
  return out;
}

// ---------------------------------------------------------------- maps between quotients

namespace {

// Multilinear expansion of a letter sequence into words of `q`.
void expand_into(const QuotientView& q, std::size_t x, std::size_t y, const std::vector<std::size_t>& objs,
                 const std::vector<SparseVector>& letters, const Rational& coeff, SparseVector& out) {
  for (const auto& l : letters)
    if (l.empty()) return;
  QuotientView::Word w{objs, std::vector<std::uint32_t>(letters.size())};
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t k, Rational c) {
    if (k == letters.size()) {
      auto id = q.index_of(x, y, w);
      if (!id) throw LocalizationError("word outside the target truncation");
      out.add(*id, c);
      return;
    }
    for (const auto& [i, v] : letters[k].entries) {
      w.idx[k] = i;
      rec(k + 1, c * v);
    }
  };
  rec(0, coeff);
}

// Assembles a filtered chain map from per-word images (global indices).
FilteredChainMap assemble(const FilteredComplex& src, const FilteredComplex& tgt, const ainf::HomComplex& hs,
                          const ainf::HomComplex& ht, const std::function<SparseVector(std::uint32_t)>& image) {
  FilteredChainMap f{src, tgt, {}};
  for (const auto& [n, ids] : hs.by_degree) {
    SparseMatrix m(tgt.total.dim(n), ids.size());
    for (std::size_t c = 0; c < ids.size(); ++c) {
      SparseVector img = image(ids[c]);
      img.normalize();
      m.set_column(c, ht.to_graded(img, n));
      for (const auto& [t, v] : img.entries)
        if (ht.position.at(t).first != n) throw LocalizationError("map between quotients does not preserve degree");
    }
    f.f[n] = std::move(m);
  }
  return f;
}

}  // namespace

FilteredChainMap minimal_comparison_map(const ainf::MinimalModel& m, std::size_t x, std::size_t y,
                                        const std::vector<std::size_t>& d_objects, int p) {
  // Non-owning handles; both views outlive this call.
  std::shared_ptr<const CategoryView> mp(&m, [](const CategoryView*) {});
  std::shared_ptr<const CategoryView> vp(&m.original(), [](const CategoryView*) {});
  QuotientView qm(mp, d_objects, p), qv(vp, d_objects, p);
  ainf::HomComplex hs = ainf::hom_complex(qm, x, y), ht = ainf::hom_complex(qv, x, y);
  FilteredComplex src = quotient_hom(qm, x, y), tgt = quotient_hom(qv, x, y);
  const auto& ws = qm.words(x, y);
  return assemble(src, tgt, hs, ht, [&](std::uint32_t id) {
    const auto& w = ws[id];
    const std::size_t n = w.idx.size();
    SparseVector out;
    // Group consecutive letters; cut positions are letter boundaries.
    std::vector<std::size_t> cuts{0};
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      if (pos == n) {
        std::vector<std::size_t> objs;
        std::vector<SparseVector> letters;
        for (std::size_t g = 0; g + 1 < cuts.size(); ++g) {
          std::vector<std::size_t> so(w.objs.begin() + cuts[g], w.objs.begin() + cuts[g + 1] + 1);
          std::vector<std::uint32_t> si(w.idx.begin() + cuts[g], w.idx.begin() + cuts[g + 1]);
          objs.push_back(w.objs[cuts[g]]);
          letters.push_back(m.lambda(so, si));
        }
        objs.push_back(w.objs.back());
        expand_into(qv, x, y, objs, letters, Rational(1), out);
        return;
      }
      for (std::size_t next = pos + 1; next <= n; ++next) {
        cuts.push_back(next);
        rec(next);
        cuts.pop_back();
      }
    };
    rec(0);
    return out;
  });
}

FilteredChainMap word_inclusion(const QuotientView& small, const QuotientView& large, std::size_t x, std::size_t y) {
  ainf::HomComplex hs = ainf::hom_complex(small, x, y), ht = ainf::hom_complex(large, x, y);
  FilteredComplex src = quotient_hom(small, x, y), tgt = quotient_hom(large, x, y);
  const auto& ws = small.words(x, y);
  return assemble(src, tgt, hs, ht, [&](std::uint32_t id) {
    auto t = large.index_of(x, y, ws[id]);
    if (!t) throw LocalizationError("word inclusion: word missing from the larger quotient");
    return SparseVector::unit(*t);
  });
}

FilteredChainMap splitting_map(const std::shared_ptr<const ainf::TwView>& view, std::size_t x, std::size_t y,
                               const SplittingData& data, int p) {
  if (data.presentations.size() != data.d_prime.size())
    throw LocalizationError("splitting map: one presentation per D' object is required");
  std::map<std::size_t, std::size_t> dp_index;
  for (std::size_t i = 0; i < data.d_prime.size(); ++i) {
    dp_index[data.d_prime[i]] = i;
    const Presentation& pr = data.presentations[i];
    if (pr.length() > data.length_bound)
      throw LocalizationError("splitting map: a D' object exceeds the declared length bound");
    // Piece summand ranges must tile the D' object in order.
    std::size_t total = 0;
    for (auto piece : pr.pieces) total += view->object(data.d.at(piece)).summands.size();
    if (total != view->object(data.d_prime[i]).summands.size())
      throw LocalizationError("splitting map: presentation does not match the D' object");
  }
  QuotientView src_q(view, data.d_prime, p), tgt_q(view, data.d, p * data.length_bound);
  ainf::HomComplex hs = ainf::hom_complex(src_q, x, y), ht = ainf::hom_complex(tgt_q, x, y);
  FilteredComplex src = quotient_hom(src_q, x, y), tgt = quotient_hom(tgt_q, x, y);

  // Piece structure of an endpoint: (view object, summand offset) per piece.
  struct Piece {
    std::size_t object;
    std::size_t offset;
    std::size_t size;
  };
  auto pieces_of = [&](std::size_t obj, bool is_endpoint) {
    std::vector<Piece> out;
    if (is_endpoint) {
      out.push_back({obj, 0, view->object(obj).summands.size()});
      return out;
    }
    const Presentation& pr = data.presentations[dp_index.at(obj)];
    std::size_t off = 0;
    for (auto piece : pr.pieces) {
      std::size_t o = data.d.at(piece), sz = view->object(o).summands.size();
      out.push_back({o, off, sz});
      off += sz;
    }
    return out;
  };

  for (auto& [n, lv] : tgt.level)
    for (auto& l : lv) l = (l + data.length_bound - 1) / data.length_bound;
  const auto& ws = src_q.words(x, y);
  return assemble(src, tgt, hs, ht, [&](std::uint32_t id) {
    const auto& w = ws[id];
    const std::size_t n = w.idx.size();
    std::vector<std::vector<Piece>> pcs(w.objs.size());
    for (std::size_t k = 0; k < w.objs.size(); ++k) pcs[k] = pieces_of(w.objs[k], k == 0 || k + 1 == w.objs.size());
    // Block components of each letter: (source piece, target piece) -> vector.
    std::vector<std::map<std::pair<std::size_t, std::size_t>, SparseVector>> blocks(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& e = view->basis(w.objs[k], w.objs[k + 1]).at(w.idx[k]);
      std::size_t sp = 0, tp = 0;
      while (e.source >= pcs[k][sp].offset + pcs[k][sp].size) ++sp;
      while (e.target >= pcs[k + 1][tp].offset + pcs[k + 1][tp].size) ++tp;
      ainf::TwView::BasisElement local{static_cast<std::uint32_t>(e.source - pcs[k][sp].offset),
                                       static_cast<std::uint32_t>(e.target - pcs[k + 1][tp].offset), e.base};
      auto li = view->index_of(pcs[k][sp].object, pcs[k + 1][tp].object, local);
      blocks[k][{sp, tp}] = SparseVector::unit(*li);
    }
    SparseVector out;
    std::vector<std::size_t> objs{x};
    std::vector<SparseVector> letters;
    // Letter k enters D'-object k+1 at piece `in`; walk delta' paths to the
    // piece where letter k+1 leaves.
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t in_piece) {
      if (k == n) {
        objs.push_back(y);
        expand_into(tgt_q, x, y, objs, letters, Rational(1), out);
        objs.pop_back();
        return;
      }
      for (const auto& [st, v] : blocks[k]) {
        if (st.first != in_piece) continue;
        letters.push_back(v);
        if (k + 1 == n) {
          rec(k + 1, 0);
        } else {
          const Presentation& pr = data.presentations[dp_index.at(w.objs[k + 1])];
          const auto& ps = pcs[k + 1];
          // Depth-first over delta' paths starting at st.second.
          std::function<void(std::size_t)> walk = [&](std::size_t cur) {
            objs.push_back(ps[cur].object);
            rec(k + 1, cur);
            for (const auto& [ab, dv] : pr.delta) {
              if (ab.first != cur || dv.empty()) continue;
              letters.push_back(dv);
              walk(ab.second);
              letters.pop_back();
            }
            objs.pop_back();
          };
          walk(st.second);
        }
        letters.pop_back();
      }
    };
    rec(0, 0);
    return out;
  });
}

// ---------------------------------------------------------------- class levels and growth

namespace {

// Whether v is in Z^n(F^p) + B^n(F^P).
bool in_level(const FilteredComplex& c, int n, const SparseVector& v, int p, int P) {
  Echelon e;
  SparseMatrix prev = c.total.differential(n - 1);
  for (auto j : c.indices_up_to(n - 1, P)) e.insert(prev.column(j));
  auto cols = c.indices_up_to(n, p);
  SparseMatrix d = c.total.differential(n);
  std::vector<std::size_t> rows(d.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  if (!cols.empty()) {
    if (d.rows() == 0) {
      for (auto j : cols) e.insert(SparseVector::unit(static_cast<std::uint32_t>(j)));
    } else {
      for (const auto& k : linalg::kernel(d.submatrix(rows, cols)).basis) {
        SparseVector g;
        for (const auto& [t, x] : k.entries) g.add(static_cast<std::uint32_t>(cols[t]), x);
        g.normalize();
        e.insert(g);
      }
    }
  }
  return e.is_member(v);
}

SparseVector cocycle_basis_member(const FilteredComplex& c, int n, int p, int P, int lower) {
  // Echelon over Z(F^lower) + B(F^P); return the first cocycle of F^p outside it.
  Echelon e;
  SparseMatrix prev = c.total.differential(n - 1);
  for (auto j : c.indices_up_to(n - 1, P)) e.insert(prev.column(j));
  SparseMatrix d = c.total.differential(n);
  std::vector<std::size_t> rows(d.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  auto cocycles = [&](int q) {
    std::vector<SparseVector> out;
    auto cols = c.indices_up_to(n, q);
    if (cols.empty()) return out;
    if (d.rows() == 0) {
      for (auto j : cols) out.push_back(SparseVector::unit(static_cast<std::uint32_t>(j)));
      return out;
    }
    for (const auto& k : linalg::kernel(d.submatrix(rows, cols)).basis) {
      SparseVector g;
      for (const auto& [t, x] : k.entries) g.add(static_cast<std::uint32_t>(cols[t]), x);
      g.normalize();
      out.push_back(g);
    }
    return out;
  };
  if (lower >= 0)
    for (const auto& z : cocycles(lower)) e.insert(z);
  for (const auto& z : cocycles(p))
    if (!e.is_member(z)) return z;
  return {};
}

ClassLevel level_at(const FilteredComplex& c, int n, const SparseVector& v, int P) {
  ClassLevel r;
  if (in_level(c, n, v, -1, P)) {
    r.zero_class = true;
    return r;
  }
  if (!in_level(c, n, v, P, P)) throw LocalizationError("class is not supported in F^horizon");
  int lo = 0, hi = P;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (in_level(c, n, v, mid, P))
      hi = mid;
    else
      lo = mid + 1;
  }
  r.level = lo;
  return r;
}

}  // namespace

SparseVector fresh_class(const FilteredComplex& c, int n, int p, int horizon) {
  return cocycle_basis_member(c, n, p, horizon, p - 1);
}

ClassLevel class_filtration_level(const FilteredComplex& c, int n, const SparseVector& v, int horizon, int window) {
  if (!c.total.differential(n).apply(v).empty()) throw LocalizationError("not closed");
  ClassLevel a = level_at(c, n, v, horizon);
  ClassLevel b = level_at(c, n, v, horizon + window);
  a.stabilized = a.level == b.level && a.zero_class == b.zero_class;
  return a;
}

growth::GrowthFunction growth_localization(const std::shared_ptr<const CategoryView>& view, std::size_t k, std::size_t l,
                                           const std::vector<std::size_t>& d_objects, int p_max, int horizon,
                                           const GrowthOptions& opts) {
  if (horizon < p_max) throw LocalizationError("horizon must be at least p_max");
  std::shared_ptr<const CategoryView> base = view;
  if (opts.model == Model::Minimal) base = std::make_shared<ainf::MinimalModel>(view);
  QuotientView q(base, d_objects, horizon + opts.window);
  FilteredComplex big = quotient_hom(q, k, l);
  auto at_h = complexes::filtered_image_table(complexes::truncate(big, horizon), horizon);
  auto at_w = complexes::filtered_image_table(big, horizon + opts.window);
  growth::GrowthFunction g;
  g.horizon = horizon;
  g.provenance = std::string("localization/") + (opts.model == Model::Minimal ? "minimal" : "literal") +
                 " horizon=" + std::to_string(horizon) + " window=" + std::to_string(opts.window);
  for (int p = 0; p <= p_max; ++p) {
    g.samples.push_back(at_h[p].total);
    auto pd = at_h[p].per_degree;
    for (auto it = pd.begin(); it != pd.end();) it = it->second == 0 ? pd.erase(it) : std::next(it);
    g.per_degree.push_back(pd);
    auto qd = at_w[p].per_degree;
    for (auto it = qd.begin(); it != qd.end();) it = it->second == 0 ? qd.erase(it) : std::next(it);
    g.stabilized.push_back(pd == qd);
  }
  return g;
}

growth::GrowthFunction growth_localization(const std::shared_ptr<const CategoryView>& base, const TwistedComplex& k,
                                           const TwistedComplex& l, const GeneratorSet& d, int p_max, int horizon,
                                           const GrowthOptions& opts) {
  d.validate(base);
  std::vector<TwistedComplex> objs{k, l};
  std::vector<std::size_t> ds;
  for (const auto& m : d.members) {
    ds.push_back(objs.size());
    objs.push_back(m);
  }
  auto view = std::make_shared<ainf::TwView>(base, objs);
  return growth_localization(view, 0, 1, ds, p_max, horizon, opts);
}

}  // namespace artifact::localization
