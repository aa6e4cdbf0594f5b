#pragma once

// Constructions on presentations: shifts, truncations, Veronese and
// subalgebra presentations, restriction of scalars and tensor products.
// Everything derived degreewise is valid only through its stated window.

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gradreg/errors.hpp"
#include "gradreg/freemod.hpp"
#include "gradreg/resolution.hpp"

namespace gradreg {

template <class Field>
ModulePresentation<Field> shift_module(ModulePresentation<Field> m, int l) {
  for (auto& s : m.cover.shifts) s -= l;
  if (l != 0) m.label += "(" + std::to_string(l) + ")";
  return m;
}

/// A module presentation whose relations are only known through a degree.
template <class Field>
struct WindowedModule {
  ModulePresentation<Field> module;
  int valid_through = INT_MAX;
};

namespace detail {

/// Minimal generators (as polynomial vectors) of ker(G -> F/K), where the
/// columns of `eval` give G -> F and `rel` spans K.
template <class Field>
std::vector<std::pair<int, PolyVector<typename Field::scalar>>> kernel_relations(const FreeMap<Field>& eval,
                                                                                 const FreeMap<Field>& rel,
                                                                                 int top) {
  using K = typename Field::scalar;
  const auto& g = eval.source().algebra();
  int lo = eval.source().module().min_shift();
  auto found = minimal_generators<Field>(eval.source(), lo, top, [&](int n) {
    Echelon<K> kn;
    for (const auto& c : rel.columns(n)) kn.insert(c);
    std::vector<SparseVector<K>> cols;
    for (const auto& c : eval.columns(n)) cols.push_back(kn.reduce(c));
    return kernel_of_columns(eval.target().dim(n), cols, g.one());
  });
  std::vector<std::pair<int, PolyVector<K>>> out;
  for (std::size_t k = 0; k < found.degrees.size(); ++k)
    out.emplace_back(found.degrees[k], eval.source().element(found.vectors[k], found.degrees[k]));
  return out;
}

}  // namespace detail

/// Presentation of M_{>=s}, valid through the returned degree.
template <class Field>
WindowedModule<Field> truncate_module(const ModulePresentation<Field>& m, int s, const GroebnerData<Field>& g) {
  using K = typename Field::scalar;
  int spread = std::max(1, g.gens().max_degree());
  auto rel = relation_map(m, g);
  const auto& F = rel.target();
  if (s + spread - 1 > F.top_degree())
    throw WindowError("truncation at " + std::to_string(s) + " needs degrees through " +
                      std::to_string(s + spread - 1) + " beyond the window");
  FreeModule G;
  std::vector<PolyVector<K>> images;
  for (int t = s; t < s + spread; ++t) {
    Echelon<K> kt;
    for (const auto& c : rel.columns(t)) kt.insert(c);
    for (std::uint32_t c = 0; c < F.dim(t); ++c) {
      if (kt.is_pivot(c)) continue;
      G.shifts.push_back(t);
      images.push_back(F.element(unit_vector(c, g.one()), t));
    }
  }
  for (std::size_t j = 0; j < m.cover.rank(); ++j) {
    if (m.cover.shifts[j] < s + spread) continue;
    G.shifts.push_back(m.cover.shifts[j]);
    PolyVector<K> v(m.cover.rank());
    v[j] = NcPolynomial<K>::monomial(Word{}, g.one());
    images.push_back(std::move(v));
  }
  WindowedModule<Field> out;
  out.module.algebra = m.algebra;
  out.module.side = m.side;
  out.module.label = m.label + ">=" + std::to_string(s);
  if (G.empty()) return out;
  int top = std::min(F.top_degree(), g.dmax() + G.min_shift());
  FreeMap<Field> eval(g, m.side, G, m.cover, images);
  for (auto& [d, row] : detail::kernel_relations(eval, rel, top)) out.module.relations.push_back(std::move(row));
  out.module.cover = G;
  out.valid_through = top;
  return out;
}

/// An algebra given by generators and relations together with the images of
/// its generators in some ambient algebra, valid through a degree.
template <class Field>
struct EmbeddedPresentation {
  using K = typename Field::scalar;
  AlgebraPresentation<Field> presentation;
  std::vector<NcPolynomial<K>> images;  // one per generator, in the ambient algebra
  int valid_through = 0;                // relations/generators complete through this degree
};

namespace detail {

/// Degreewise generators and relations of the subalgebra of A generated by
/// `seed` (native degrees scaled by `scale`). When `complete` is set, new
/// generators are added in every degree <= gen_bound until the subalgebra
/// fills A_{scale*n}.
template <class Field>
EmbeddedPresentation<Field> degreewise_presentation(const GroebnerData<Field>& g,
                                                    std::vector<std::pair<int, NcPolynomial<typename Field::scalar>>> seed,
                                                    int scale, bool complete, int gen_bound, int rel_bound,
                                                    const std::string& prefix, const std::string& label) {
  using K = typename Field::scalar;
  const auto& field = g.field();
  int nmax = std::max(gen_bound, rel_bound);
  if (scale * nmax > g.dmax())
    throw WindowError("needs ambient degree " + std::to_string(scale * nmax) + " beyond dmax " +
                      std::to_string(g.dmax()));
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::vector<NcPolynomial<K>> images;
  std::vector<NcPolynomial<K>> relations;
  std::stable_sort(seed.begin(), seed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t next_seed = 0;

  for (int n = 1; n <= nmax; ++n) {
    AlgebraPresentation<Field> cur{field, GeneratorSet(names, degrees), relations, label};
    auto gc = compute_groebner(cur, std::max(n, cur.max_relation_degree()));
    const auto& words = gc.normal_words(n);
    int an = scale * n;
    // Evaluate normal words of the partial presentation into A_{an}.
    std::vector<SparseVector<K>> cols;
    for (const auto& w : words) {
      auto p = NcPolynomial<K>::monomial(Word{}, g.one());
      for (auto x : w) p = g.normal_form(multiply(g.gens(), p, images[x]));
      cols.push_back(g.to_vector(p, an));
    }
    // Columns in descending word order so the relation pivots are leading words.
    std::vector<std::size_t> order(words.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = order.size() - 1 - k;
    Echelon<K> span;
    for (const auto& c : cols) span.insert(c);

    // Generators of degree n: supplied ones first, then completions.
    std::vector<std::pair<NcPolynomial<K>, SparseVector<K>>> fresh;
    while (next_seed < seed.size() && seed[next_seed].first == n) {
      const auto& p = seed[next_seed++].second;
      auto v = g.to_vector(p, an);
      if (!span.insert(v).empty()) fresh.emplace_back(g.normal_form(p), v);
    }
    if (complete && n <= gen_bound) {
      for (std::uint32_t c = 0; c < g.dim(an); ++c) {
        auto u = unit_vector(c, g.one());
        if (!span.insert(u).empty()) fresh.emplace_back(g.from_vector(u, an), u);
      }
    }
    if (n <= rel_bound && !cols.empty()) {
      std::vector<SparseVector<K>> ordered;
      for (auto k : order) ordered.push_back(cols[k]);
      auto ker = kernel_of_columns(g.dim(an), ordered, g.one());
      for (const auto& v : ker) {
        std::vector<Term<K>> raw;
        for (const auto& e : v) raw.push_back({words[order[e.idx]], e.val});
        relations.push_back(NcPolynomial<K>::from_terms(cur.gens, std::move(raw)).monic());
      }
    }
    for (auto& [p, v] : fresh) {
      names.push_back(prefix + std::to_string(names.size() + 1));
      degrees.push_back(n);
      images.push_back(std::move(p));
    }
  }
  if (next_seed < seed.size()) throw InputError("supplied generator degree exceeds gen_bound");
  EmbeddedPresentation<Field> out;
  out.presentation = AlgebraPresentation<Field>{field, GeneratorSet(names, degrees), {}, label};
  // Relations were written over a prefix of the final generator list.
  out.presentation.relations = relations;
  out.images = images;
  out.valid_through = rel_bound;
  return out;
}

}  // namespace detail

/// A^{(d)} regraded so A_{di} sits in degree i.
template <class Field>
EmbeddedPresentation<Field> veronese_presentation(const GroebnerData<Field>& g, int d, int gen_bound, int rel_bound) {
  using K = typename Field::scalar;
  if (d < 1) throw InputError("Veronese degree must be positive");
  if (d * rel_bound > g.dmax() || d * gen_bound > g.dmax())
    throw WindowError("Veronese bounds exceed the Groebner window");
  std::vector<std::pair<int, NcPolynomial<K>>> seed;
  for (const auto& w : g.normal_words(d)) seed.emplace_back(1, NcPolynomial<K>::monomial(w, g.one()));
  return detail::degreewise_presentation(g, std::move(seed), d, true, std::max(1, gen_bound), rel_bound, "v",
                                         g.algebra().label + "_ver" + std::to_string(d));
}

/// Subalgebra of A generated by homogeneous elements, at their native degrees.
template <class Field>
EmbeddedPresentation<Field> subalgebra_presentation(const GroebnerData<Field>& g,
                                                    const std::vector<NcPolynomial<typename Field::scalar>>& subgens,
                                                    int gen_bound, int rel_bound) {
  using K = typename Field::scalar;
  std::vector<std::pair<int, NcPolynomial<K>>> seed;
  for (const auto& p : subgens) {
    if (p.is_zero() || !p.is_homogeneous(g.gens()) || p.degree(g.gens()) < 1)
      throw InputError("subalgebra generators must be nonzero homogeneous of positive degree");
    if (p.degree(g.gens()) > gen_bound) throw InputError("subalgebra generator degree exceeds gen_bound");
    seed.emplace_back(p.degree(g.gens()), p);
  }
  return detail::degreewise_presentation(g, std::move(seed), 1, false, gen_bound, rel_bound, "s",
                                         g.algebra().label + "_sub");
}

template <class Field>
struct AlgebraMap {
  using K = typename Field::scalar;
  AlgebraPresentation<Field> source;
  AlgebraPresentation<Field> target;
  std::vector<NcPolynomial<K>> images;  // one per source generator
};

/// phi(p) reduced in the target.
template <class Field>
NcPolynomial<typename Field::scalar> apply_map(const AlgebraMap<Field>& phi, const GroebnerData<Field>& gA,
                                               const NcPolynomial<typename Field::scalar>& p) {
  using K = typename Field::scalar;
  std::vector<Term<K>> raw;
  for (const auto& t : p.terms()) {
    auto q = NcPolynomial<K>::monomial(Word{}, t.coef);
    for (auto x : t.word) q = gA.normal_form(multiply(gA.gens(), q, phi.images[x]));
    for (const auto& s : q.terms()) raw.push_back(s);
  }
  return gA.normal_form(NcPolynomial<K>::from_terms(gA.gens(), std::move(raw)));
}

/// Checks degrees and that source relations map to zero through gA's window.
template <class Field>
void validate_map(const AlgebraMap<Field>& phi, const GroebnerData<Field>& gA) {
  if (phi.images.size() != phi.source.gens.size()) throw InputError("map needs one image per source generator");
  for (std::size_t x = 0; x < phi.images.size(); ++x) {
    const auto& p = phi.images[x];
    if (p.is_zero()) continue;
    if (!p.is_homogeneous(gA.gens()) || p.degree(gA.gens()) != phi.source.gens.degree(x))
      throw InputError("image of '" + phi.source.gens.name(x) + "' has the wrong degree");
  }
  for (const auto& r : phi.source.relations)
    if (r.degree(phi.source.gens) <= gA.dmax() && !apply_map(phi, gA, r).is_zero())
      throw InputError("relation '" + to_string(phi.source.gens, r) + "' does not map to zero");
}

namespace detail {

/// Coordinates of M = F/K over A, acted on by source-algebra polynomials via phi.
template <class Field>
SparseVector<typename Field::scalar> poly_act(const GradedFree<Field>& F, const NcPolynomial<typename Field::scalar>& p,
                                              const SparseVector<typename Field::scalar>& v, int n) {
  using K = typename Field::scalar;
  const auto& gens = F.algebra().gens();
  std::vector<Entry<K>> raw;
  for (const auto& t : p.terms()) {
    SparseVector<K> cur = v;
    int m = n;
    if (F.side() == Side::left) {
      for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
        cur = F.act(*it, cur, m);
        m += gens.degree(*it);
      }
    } else {
      for (auto x : t.word) {
        cur = F.act(x, cur, m);
        m += gens.degree(x);
      }
    }
    for (auto& e : cur) raw.push_back({e.idx, e.val * t.coef});
  }
  return canonicalize(std::move(raw));
}

}  // namespace detail

/// M over A viewed as a module over the source of phi.
template <class Field>
WindowedModule<Field> restrict_scalars(const GroebnerData<Field>& gA, const GroebnerData<Field>& gT,
                                       const AlgebraMap<Field>& phi, const ModulePresentation<Field>& M, int gen_bound,
                                       int rel_bound) {
  using K = typename Field::scalar;
  validate_map(phi, gA);
  if (!(gT.gens() == phi.source.gens)) throw InputError("source Groebner data does not match the map");
  auto rel = relation_map(M, gA);
  const auto& F = rel.target();
  int top = std::min(rel_bound, F.top_degree());
  if (top < rel_bound || gen_bound > top) throw WindowError("restriction bounds exceed the target window");
  const auto& Tg = gT.gens();
  int lo = M.cover.empty() ? 0 : M.cover.min_shift();

  std::map<int, Echelon<K>> kernel_span;
  auto kspan = [&](int n) -> const Echelon<K>& {
    auto it = kernel_span.find(n);
    if (it != kernel_span.end()) return it->second;
    Echelon<K> e;
    for (const auto& c : rel.columns(n)) e.insert(c);
    return kernel_span.emplace(n, std::move(e)).first->second;
  };

  // Generators: complement of phi(T_+) * M inside each M_n.
  std::vector<int> gdeg;
  std::vector<SparseVector<K>> gvec;
  std::map<int, std::vector<SparseVector<K>>> basis;  // reduced representatives spanning M_n
  for (int n = lo; n <= gen_bound; ++n) {
    const auto& kn = kspan(n);
    Echelon<K> span;
    for (std::size_t x = 0; x < Tg.size(); ++x) {
      auto it = basis.find(n - Tg.degree(x));
      if (it == basis.end()) continue;
      for (const auto& v : it->second) span.insert(kn.reduce(detail::poly_act(F, phi.images[x], v, n - Tg.degree(x))));
    }
    std::vector<SparseVector<K>> bn;
    for (std::uint32_t c = 0; c < F.dim(n); ++c) {
      if (kn.is_pivot(c)) continue;
      auto u = unit_vector(c, gA.one());
      bn.push_back(u);
      if (!span.insert(u).empty()) {
        gdeg.push_back(n);
        gvec.push_back(u);
      }
    }
    basis.emplace(n, std::move(bn));
  }

  WindowedModule<Field> out;
  out.module.algebra = phi.source;
  out.module.side = M.side;
  out.module.label = M.label + "_restricted";
  out.valid_through = top;
  if (gdeg.empty()) return out;
  out.module.cover.shifts = gdeg;
  GradedFree<Field> G(gT, M.side, out.module.cover);
  if (top > G.top_degree()) throw WindowError("restriction bounds exceed the source window");

  // Evaluation of the source-free cover, degree by degree.
  std::map<int, std::vector<SparseVector<K>>> cols;
  std::function<const std::vector<SparseVector<K>>&(int)> columns =
      [&](int n) -> const std::vector<SparseVector<K>>& {
    if (auto it = cols.find(n); it != cols.end()) return it->second;
    std::vector<SparseVector<K>> here;
    for (std::size_t k = 0; k < gdeg.size(); ++k) {
      int m = n - gdeg[k];
      if (m < 0) continue;
      for (const auto& w : gT.normal_words(m)) {
        if (w.empty()) {
          here.push_back(gvec[k]);
          continue;
        }
        std::size_t x = M.side == Side::left ? w.front() : w.back();
        Word rest = M.side == Side::left ? Word(w.begin() + 1, w.end()) : Word(w.begin(), w.end() - 1);
        int dx = Tg.degree(x);
        const auto& lower = columns(n - dx);
        auto pos = G.offsets(n - dx)[k] + *gT.word_index(rest);
        here.push_back(kspan(n).reduce(detail::poly_act(F, phi.images[x], lower[pos], n - dx)));
      }
    }
    return cols.emplace(n, std::move(here)).first->second;
  };
  auto found = detail::minimal_generators<Field>(G, out.module.cover.min_shift(), top, [&](int n) {
    return kernel_of_columns(F.dim(n), columns(n), gA.one());
  });
  for (std::size_t k = 0; k < found.degrees.size(); ++k)
    out.module.relations.push_back(G.element(found.vectors[k], found.degrees[k]));
  return out;
}

/// Generators of T followed by those of A, both relation sets, and all
/// cross commutators.
template <class Field>
AlgebraPresentation<Field> tensor_algebra(const AlgebraPresentation<Field>& t, const AlgebraPresentation<Field>& a) {
  using K = typename Field::scalar;
  if (!(t.field == a.field)) throw InputError("tensor factors are over different fields");
  std::vector<std::string> names = t.gens.names();
  std::vector<int> degrees = t.gens.degrees();
  for (std::size_t i = 0; i < a.gens.size(); ++i) {
    std::string n = a.gens.name(i);
    while (std::find(names.begin(), names.end(), n) != names.end()) n += "_2";
    names.push_back(n);
    degrees.push_back(a.gens.degree(i));
  }
  GeneratorSet gens(names, degrees);
  auto off = static_cast<std::uint16_t>(t.gens.size());
  std::vector<NcPolynomial<K>> rels = t.relations;
  for (const auto& r : a.relations) {
    std::vector<Term<K>> raw;
    for (const auto& term : r.terms()) {
      Word w;
      for (auto x : term.word) w.push_back(static_cast<std::uint16_t>(x + off));
      raw.push_back({w, term.coef});
    }
    rels.push_back(NcPolynomial<K>::from_terms(gens, std::move(raw)));
  }
  auto one = t.field.from_int(1);
  for (std::uint16_t x = 0; x < t.gens.size(); ++x)
    for (std::uint16_t y = 0; y < a.gens.size(); ++y) {
      std::uint16_t yy = y + off;
      rels.push_back(NcPolynomial<K>::from_terms(gens, {{Word{x, yy}, one}, {Word{yy, x}, -one}}));
    }
  std::string label = t.label.empty() ? a.label : (a.label.empty() ? t.label : t.label + "_x_" + a.label);
  return AlgebraPresentation<Field>{t.field, gens, rels, label};
}

}  // namespace gradreg
