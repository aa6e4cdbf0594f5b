#pragma once

// Minimal graded free resolutions by degreewise linear algebra, Betti
// tables, Hom(-, A) duals and cohomology of free complexes.

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gradreg/errors.hpp"
#include "gradreg/freemod.hpp"

namespace gradreg {

/// Bounded complex of free modules. Term p sits at cohomological position p
/// and the differential leaving it lands in position p + 1.
template <class Field>
struct FreeComplex {
  using K = typename Field::scalar;
  Side side = Side::left;
  int p_lo = 0;
  std::vector<FreeModule> terms;
  // diffs[p - p_lo][k][j]: component of d(e_k) on generator j of term p + 1.
  std::vector<std::vector<PolyVector<K>>> diffs;
  bool minimal = true;

  int p_hi() const { return p_lo + static_cast<int>(terms.size()) - 1; }
  bool empty() const { return terms.empty(); }
  const FreeModule& term(int p) const {
    static const FreeModule zero;
    if (p < p_lo || p > p_hi()) return zero;
    return terms[p - p_lo];
  }
  /// Differential leaving position p (empty images when it is zero).
  std::vector<PolyVector<K>> differential(int p) const {
    if (p < p_lo || p >= p_hi()) return std::vector<PolyVector<K>>(term(p).rank(), PolyVector<K>(term(p + 1).rank()));
    return diffs[p - p_lo];
  }
  FreeMap<Field> map(const GroebnerData<Field>& g, int p) const {
    return FreeMap<Field>(g, side, term(p), term(p + 1), differential(p));
  }
};

/// True when no differential entry is a nonzero constant.
template <class Field>
bool is_minimal_complex(const FreeComplex<Field>& f, const GeneratorSet& gens) {
  for (const auto& d : f.diffs)
    for (const auto& row : d)
      for (const auto& e : row)
        if (!e.is_zero() && e.degree(gens) == 0) return false;
  return true;
}

/// d o d vanishes in every degree up to n_hi that fits the window.
template <class Field>
bool check_dd(const FreeComplex<Field>& f, const GroebnerData<Field>& g, int n_hi) {
  for (int p = f.p_lo; p + 2 <= f.p_hi(); ++p) {
    auto a = f.map(g, p), b = f.map(g, p + 1);
    int lo = f.term(p).min_shift();
    int hi = std::min({n_hi, a.source().top_degree(), a.target().top_degree(), b.target().top_degree()});
    for (int n = lo; n <= hi; ++n)
      for (const auto& c : a.columns(n))
        if (!b.apply(c, n).empty()) return false;
  }
  return true;
}

struct BettiTable {
  std::map<std::pair<int, int>, long> entries;  // (i, j) -> beta
  int hmax = 0;
  int dmax = 0;
  std::optional<int> terminated_at;
  std::set<int> complete_rows;

  long beta(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
  }
  bool row_nonzero(int i) const {
    for (const auto& [k, v] : entries)
      if (k.first == i && v) return true;
    return false;
  }
  /// Largest internal degree in row i (deg Tor_i).
  std::optional<int> t(int i) const {
    std::optional<int> r;
    for (const auto& [k, v] : entries)
      if (k.first == i && v) r = r ? std::max(*r, k.second) : k.second;
    return r;
  }
  /// Smallest internal degree in row i (ged Tor_i).
  std::optional<int> ged(int i) const {
    std::optional<int> r;
    for (const auto& [k, v] : entries)
      if (k.first == i && v) r = r ? std::min(*r, k.second) : k.second;
    return r;
  }
  std::optional<int> max_row() const {
    std::optional<int> r;
    for (const auto& [k, v] : entries)
      if (v) r = r ? std::max(*r, k.first) : k.first;
    return r;
  }
  long row_total(int i) const {
    long s = 0;
    for (const auto& [k, v] : entries)
      if (k.first == i) s += v;
    return s;
  }
  bool exact() const { return terminated_at.has_value(); }
};

template <class Field>
struct Resolution {
  FreeComplex<Field> complex;  // P_i at position -i
  BettiTable betti;
  int degree_top = 0;          // internal degrees examined: <= degree_top
  std::vector<std::string> notes;
};

namespace detail {

template <class Field>
struct GeneratorSearch {
  using K = typename Field::scalar;
  std::vector<int> degrees;
  std::vector<SparseVector<K>> vectors;
};

/// Minimal generators of a graded submodule Z of a free module P, given a
/// basis of each Z_n for n in [lo, hi].
template <class Field, class KernelFn>
GeneratorSearch<Field> minimal_generators(const GradedFree<Field>& P, int lo, int hi, KernelFn&& kernel) {
  using K = typename Field::scalar;
  GeneratorSearch<Field> out;
  const auto& gens = P.algebra().gens();
  std::map<int, std::vector<SparseVector<K>>> Z;
  for (int n = lo; n <= hi; ++n) {
    auto zn = kernel(n);
    if (zn.empty()) {
      Z.emplace(n, std::move(zn));
      continue;
    }
    Echelon<K> lower;
    for (std::size_t x = 0; x < gens.size(); ++x) {
      auto it = Z.find(n - gens.degree(x));
      if (it == Z.end()) continue;
      for (const auto& z : it->second) lower.insert(P.act(x, z, n - gens.degree(x)));
    }
    for (const auto& z : zn) {
      auto r = lower.insert(z);
      if (!r.empty()) {
        out.degrees.push_back(n);
        out.vectors.push_back(std::move(r));
      }
    }
    Z.emplace(n, std::move(zn));
  }
  return out;
}

}  // namespace detail

/// Euler characteristic check: sum_i (-1)^i beta_i(t) * h_A(t) = h_M(t) through degree `through`.
template <class Field>
bool euler_identity_holds(const BettiTable& b, const GroebnerData<Field>& g, const std::map<int, std::size_t>& hm,
                          int from, int through) {
  for (int n = from; n <= through; ++n) {
    long lhs = 0;
    for (const auto& [k, v] : b.entries) {
      int m = n - k.second;
      if (m < 0) continue;
      if (m > g.dmax()) return false;
      lhs += (k.first % 2 ? -1 : 1) * v * static_cast<long>(g.dim(m));
    }
    auto it = hm.find(n);
    long rhs = it == hm.end() ? 0 : static_cast<long>(it->second);
    if (lhs != rhs) return false;
  }
  return true;
}

/// Minimal free resolution of a finitely presented module through
/// homological degree hmax and internal degree dmax.
template <class Field>
Resolution<Field> minimal_free_resolution(const ModulePresentation<Field>& m, const GroebnerData<Field>& g, int hmax,
                                          int dmax) {
  using K = typename Field::scalar;
  if (hmax < 0) throw InputError("hmax must be nonnegative");
  if (!(m.algebra.gens == g.gens())) throw InputError("module is over a different algebra");
  Resolution<Field> res;
  res.complex.side = m.side;
  res.betti.hmax = hmax;
  auto rel = relation_map(m, g);
  const auto& F = rel.target();
  int top = std::min(dmax, F.top_degree());
  res.degree_top = top;
  res.betti.dmax = top;

  // Minimal generators of M among the cover generators.
  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t j = 0; j < m.cover.rank(); ++j) by_degree[m.cover.shifts[j]].push_back(j);
  std::set<std::size_t> dropped;
  for (const auto& [n, js] : by_degree) {
    if (n > top) {
      res.notes.push_back("cover generator in degree " + std::to_string(n) + " lies beyond the window");
      continue;
    }
    auto off = F.offsets(n);
    std::map<std::size_t, std::uint32_t> local;
    for (std::uint32_t k = 0; k < js.size(); ++k) local[off[js[k]]] = k;
    Echelon<K> e;
    for (const auto& c : rel.columns(n)) {
      std::vector<Entry<K>> proj;
      for (const auto& x : c)
        if (auto it = local.find(x.idx); it != local.end()) proj.push_back({it->second, x.val});
      e.insert(canonicalize(std::move(proj)));
    }
    for (std::uint32_t k = 0; k < js.size(); ++k)
      if (e.is_pivot(k)) dropped.insert(js[k]);
  }
  FreeModule P0;
  std::vector<PolyVector<K>> iota;
  for (std::size_t j = 0; j < m.cover.rank(); ++j) {
    if (dropped.count(j)) continue;
    P0.shifts.push_back(m.cover.shifts[j]);
    PolyVector<K> v(m.cover.rank());
    v[j] = NcPolynomial<K>::monomial(Word{}, g.one());
    iota.push_back(std::move(v));
  }
  FreeMap<Field> inc(g, m.side, P0, m.cover, iota);

  std::vector<FreeModule> terms{P0};
  std::vector<std::vector<PolyVector<K>>> diffs;  // diffs[i]: P_{i+1} -> P_i
  for (std::size_t k = 0; k < P0.rank(); ++k) res.betti.entries[{0, P0.shifts[k]}] += 1;
  if (P0.empty()) res.betti.terminated_at = 0;

  std::optional<FreeMap<Field>> d;  // d_i: P_i -> P_{i-1}
  for (int i = 0; i <= hmax && !P0.empty(); ++i) {
    GradedFree<Field> Pi(g, m.side, terms[i]);
    int lo = terms[i].min_shift();
    detail::GeneratorSearch<Field> found;
    if (i == 0) {
      found = detail::minimal_generators<Field>(Pi, lo, top, [&](int n) {
        Echelon<K> kn;
        for (const auto& c : rel.columns(n)) kn.insert(c);
        std::vector<SparseVector<K>> cols;
        for (const auto& c : inc.columns(n)) cols.push_back(kn.reduce(c));
        return kernel_of_columns(F.dim(n), cols, g.one());
      });
    } else {
      found = detail::minimal_generators<Field>(Pi, lo + 1, top, [&](int n) { return d->kernel(n); });
    }
    if (found.degrees.empty()) {
      // Only claim termination when the window reaches past the last
      // generator degree by the largest degree jump seen so far.
      int gap = 1;
      for (int j = 1; j <= i; ++j) gap = std::max(gap, terms[j].max_shift() - terms[j - 1].max_shift());
      if (top >= terms[i].max_shift() + gap)
        res.betti.terminated_at = i;
      else
        res.notes.push_back("no syzygies of P_" + std::to_string(i) + " through degree " + std::to_string(top) +
                            ", window too short to claim termination");
      break;
    }
    if (i == hmax) break;
    FreeModule next{found.degrees};
    std::vector<PolyVector<K>> images;
    for (std::size_t k = 0; k < found.vectors.size(); ++k) images.push_back(Pi.element(found.vectors[k], found.degrees[k]));
    for (int s : next.shifts) res.betti.entries[{i + 1, s}] += 1;
    d.emplace(g, m.side, next, terms[i], images);
    terms.push_back(next);
    diffs.push_back(std::move(images));
  }

  // A finite resolution must also reproduce dim M_n through the window.
  if (res.betti.terminated_at && *res.betti.terminated_at > 0) {
    std::map<int, std::size_t> hm;
    for (int n = std::min(0, F.module().min_shift()); n <= top; ++n) hm[n] = F.dim(n) - rel.rank(n);
    if (!euler_identity_holds(res.betti, g, hm, hm.begin()->first, top)) {
      res.betti.terminated_at.reset();
      res.notes.push_back("Euler characteristic check failed through degree " + std::to_string(top));
    }
  }
  if (res.betti.terminated_at)
    for (int i = 0; i <= *res.betti.terminated_at; ++i) res.betti.complete_rows.insert(i);
  else
    res.betti.complete_rows.insert(0);

  // Lay out P_h .. P_0 at positions -h .. 0.
  int h = static_cast<int>(terms.size()) - 1;
  res.complex.p_lo = -h;
  res.complex.terms.assign(terms.rbegin(), terms.rend());
  res.complex.diffs.clear();
  for (int i = h; i >= 1; --i) res.complex.diffs.push_back(diffs[i - 1]);
  res.complex.minimal = true;
  return res;
}

/// Hom(-, A): transpose, swap sides, negate shifts; term p goes to -p.
template <class Field>
FreeComplex<Field> dualize(const FreeComplex<Field>& f) {
  using K = typename Field::scalar;
  FreeComplex<Field> out;
  out.side = opposite(f.side);
  out.minimal = f.minimal;
  if (f.empty()) return out;
  out.p_lo = -f.p_hi();
  for (int p = f.p_hi(); p >= f.p_lo; --p) {
    FreeModule t;
    for (int s : f.term(p).shifts) t.shifts.push_back(-s);
    out.terms.push_back(std::move(t));
  }
  // Dual of d^{p}: term(p) -> term(p+1) is the map from position -(p+1) to -p.
  for (int q = out.p_lo; q < out.p_hi(); ++q) {
    int p = -q - 1;
    const auto& D = f.diffs[p - f.p_lo];
    std::size_t rows = f.term(p + 1).rank(), cols = f.term(p).rank();
    std::vector<PolyVector<K>> T(rows, PolyVector<K>(cols));
    for (std::size_t k = 0; k < cols; ++k)
      for (std::size_t j = 0; j < rows; ++j) T[j][k] = D[k][j];
    out.diffs.push_back(std::move(T));
  }
  return out;
}

/// Value of ged/deg of one cohomology group, with how much the window proves.
struct DegreeBound {
  std::optional<int> value;  // nullopt: no nonzero degree found
  bool certified = false;
};

struct ExtDegreeTable {
  int n_lo = 0, n_hi = 0;
  std::map<int, std::map<int, long>> dims;  // position -> degree -> dim H
  std::map<int, DegreeBound> ged, deg;

  long dim(int p, int n) const {
    auto it = dims.find(p);
    if (it == dims.end()) return 0;
    auto jt = it->second.find(n);
    return jt == it->second.end() ? 0 : jt->second;
  }
  /// Nonzero (position, degree, dim) triples.
  std::vector<std::tuple<int, int, long>> support() const {
    std::vector<std::tuple<int, int, long>> out;
    for (const auto& [p, row] : dims)
      for (const auto& [n, v] : row)
        if (v) out.emplace_back(p, n, v);
    return out;
  }
};

/// Cohomology of a free complex in internal degrees [n_lo, n_hi].
template <class Field>
ExtDegreeTable complex_cohomology(const FreeComplex<Field>& f, const GroebnerData<Field>& g, int n_lo, int n_hi) {
  ExtDegreeTable t;
  t.n_lo = n_lo;
  t.n_hi = n_hi;
  if (f.empty()) return t;
  for (int p = f.p_lo; p <= f.p_hi(); ++p) {
    for (int q : {p - 1, p, p + 1}) {
      const auto& m = f.term(q);
      if (!m.empty() && n_hi - m.min_shift() > g.dmax())
        throw WindowError("degree window [" + std::to_string(n_lo) + ", " + std::to_string(n_hi) +
                          "] exceeds the Groebner window at position " + std::to_string(q));
    }
  }
  for (int p = f.p_lo; p <= f.p_hi(); ++p) {
    auto out = f.map(g, p);
    auto in = f.map(g, p - 1);
    auto& row = t.dims[p];
    for (int n = n_lo; n <= n_hi; ++n) {
      long dim = static_cast<long>(out.source().dim(n));
      if (dim == 0) {
        row[n] = 0;
        continue;
      }
      long ker = dim - static_cast<long>(f.term(p + 1).empty() ? 0 : out.rank(n));
      long img = f.term(p - 1).empty() ? 0 : static_cast<long>(in.rank(n));
      row[n] = ker - img;
    }
    DegreeBound lo, hi;
    for (const auto& [n, v] : row)
      if (v) {
        if (!lo.value) lo.value = n;
        hi.value = n;
      }
    const auto& term = f.term(p);
    auto top = g.top_degree();
    // Below the lowest shift a term vanishes; above the highest shift plus
    // the top degree of A it vanishes as well.
    bool floor_ok = term.empty() || n_lo <= term.min_shift();
    bool ceiling_ok = term.empty() || (top && n_hi >= term.max_shift() + *top);
    lo.certified = floor_ok && (lo.value.has_value() || ceiling_ok);
    hi.certified = ceiling_ok;
    t.ged[p] = lo;
    t.deg[p] = hi;
  }
  return t;
}

/// Betti table read off a minimal complex: term at position -s contributes
/// its shifts to homological index s.
template <class Field>
BettiTable tor_table_of_minimal_complex(const FreeComplex<Field>& f, const GeneratorSet& gens) {
  if (!is_minimal_complex(f, gens)) throw Refusal("complex is not minimal");
  BettiTable b;
  for (int p = f.p_lo; p <= f.p_hi(); ++p)
    for (int s : f.term(p).shifts) b.entries[{-p, s}] += 1;
  if (!f.empty()) {
    b.hmax = -f.p_lo;
    for (int p = f.p_lo; p <= f.p_hi(); ++p) b.complete_rows.insert(-p);
    b.terminated_at = -f.p_lo;
  }
  return b;
}

inline std::string betti_text(const BettiTable& b) {
  std::set<int> rows, cols;
  for (const auto& [k, v] : b.entries)
    if (v) rows.insert(k.first), cols.insert(k.second);
  std::size_t w = 4;
  for (int j : cols) w = std::max(w, std::to_string(j).size() + 1);
  for (const auto& [k, v] : b.entries) w = std::max(w, std::to_string(v).size() + 1);
  auto pad = [&](const std::string& s) { return std::string(w - std::min(w, s.size()), ' ') + s; };
  std::string out = pad("i\\j");
  for (int j : cols) out += pad(std::to_string(j));
  out += "\n";
  for (int i : rows) {
    out += pad(std::to_string(i));
    for (int j : cols) {
      long v = b.beta(i, j);
      out += pad(v ? std::to_string(v) : ".");
    }
    out += "\n";
  }
  out += "window: hmax=" + std::to_string(b.hmax) + " dmax=" + std::to_string(b.dmax);
  out += b.terminated_at ? ", terminated at " + std::to_string(*b.terminated_at) : ", not terminated";
  out += "\n";
  return out;
}

}  // namespace gradreg
