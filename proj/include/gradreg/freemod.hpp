#pragma once

// Graded free modules over a truncated algebra, maps between them and
// finitely presented modules, all handled one internal degree at a time.
//
// Coordinates of (+)_j A(-s_j) in degree n are the blocks A_{n-s_j}
// concatenated in generator order, each in normal-word coordinates.

#include <algorithm>
#include <climits>
#include <map>
#include <string>
#include <vector>

#include "gradreg/errors.hpp"
#include "gradreg/gbasis.hpp"
#include "gradreg/sparse.hpp"

namespace gradreg {

struct FreeModule {
  std::vector<int> shifts;

  std::size_t rank() const { return shifts.size(); }
  bool empty() const { return shifts.empty(); }
  int min_shift() const { return shifts.empty() ? INT_MAX : *std::min_element(shifts.begin(), shifts.end()); }
  int max_shift() const { return shifts.empty() ? INT_MIN : *std::max_element(shifts.begin(), shifts.end()); }
  friend bool operator==(const FreeModule& a, const FreeModule& b) { return a.shifts == b.shifts; }
};

template <class K>
using PolyVector = std::vector<NcPolynomial<K>>;

template <class Field>
class GradedFree {
 public:
  using K = typename Field::scalar;

  GradedFree(const GroebnerData<Field>& g, Side side, FreeModule f) : g_(&g), side_(side), f_(std::move(f)) {}

  const FreeModule& module() const { return f_; }
  Side side() const { return side_; }
  const GroebnerData<Field>& algebra() const { return *g_; }

  /// Largest degree whose piece is fully inside the algebra window.
  int top_degree() const { return f_.empty() ? INT_MAX : g_->dmax() + f_.min_shift(); }

  std::size_t block_dim(std::size_t j, int n) const {
    int m = n - f_.shifts[j];
    if (m < 0) return 0;
    return g_->dim(m);
  }

  std::vector<std::size_t> offsets(int n) const {
    std::vector<std::size_t> off(f_.rank() + 1, 0);
    for (std::size_t j = 0; j < f_.rank(); ++j) off[j + 1] = off[j] + block_dim(j, n);
    return off;
  }

  std::size_t dim(int n) const { return offsets(n).back(); }

  /// Generator (block) and word index of a coordinate.
  std::pair<std::size_t, std::uint32_t> locate(std::uint32_t idx, const std::vector<std::size_t>& off) const {
    auto it = std::upper_bound(off.begin(), off.end(), static_cast<std::size_t>(idx));
    std::size_t j = static_cast<std::size_t>(it - off.begin()) - 1;
    return {j, static_cast<std::uint32_t>(idx - off[j])};
  }

  /// Multiply by a generator of A on the module's side: F_n -> F_{n+deg x}.
  SparseVector<K> act(std::size_t x, const SparseVector<K>& v, int n) const {
    int dx = g_->gens().degree(x);
    auto off = offsets(n);
    auto off2 = offsets(n + dx);
    std::vector<Entry<K>> raw;
    for (const auto& e : v) {
      auto [j, w] = locate(e.idx, off);
      const auto& cols = g_->mult_columns(side_, n - f_.shifts[j], x);
      for (const auto& c : cols[w]) raw.push_back({static_cast<std::uint32_t>(off2[j] + c.idx), c.val * e.val});
    }
    return canonicalize(std::move(raw));
  }

  /// Coordinates of a homogeneous element given as one polynomial per generator.
  SparseVector<K> coords(const PolyVector<K>& p, int n) const {
    if (p.size() != f_.rank()) throw std::invalid_argument("polynomial vector has wrong length");
    auto off = offsets(n);
    std::vector<Entry<K>> raw;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j].is_zero()) continue;
      auto v = g_->to_vector(p[j], n - f_.shifts[j]);
      for (auto& e : v) raw.push_back({static_cast<std::uint32_t>(off[j] + e.idx), e.val});
    }
    return canonicalize(std::move(raw));
  }

  PolyVector<K> element(const SparseVector<K>& v, int n) const {
    auto off = offsets(n);
    std::vector<std::vector<Entry<K>>> parts(f_.rank());
    for (const auto& e : v) {
      auto [j, w] = locate(e.idx, off);
      parts[j].push_back({w, e.val});
    }
    PolyVector<K> out(f_.rank());
    for (std::size_t j = 0; j < f_.rank(); ++j)
      if (!parts[j].empty()) out[j] = g_->from_vector(parts[j], n - f_.shifts[j]);
    return out;
  }

 private:
  const GroebnerData<Field>* g_;
  Side side_;
  FreeModule f_;
};

/// A homogeneous map of free modules given by the images of the source
/// generators. On the left side a*e_k maps to a*images[k]; on the right
/// e_k*a maps to images[k]*a.
template <class Field>
class FreeMap {
 public:
  using K = typename Field::scalar;

  FreeMap(const GroebnerData<Field>& g, Side side, FreeModule source, FreeModule target,
          std::vector<PolyVector<K>> images)
      : src_(g, side, std::move(source)), dst_(g, side, std::move(target)), images_(std::move(images)) {
    if (images_.size() != src_.module().rank()) throw std::invalid_argument("one image per source generator required");
  }

  const GradedFree<Field>& source() const { return src_; }
  const GradedFree<Field>& target() const { return dst_; }
  const std::vector<PolyVector<K>>& images() const { return images_; }

  /// Column c = image of source coordinate c, in target coordinates of degree n.
  const std::vector<SparseVector<K>>& columns(int n) const {
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    const auto& g = src_.algebra();
    const auto& gens = g.gens();
    std::vector<SparseVector<K>> cols;
    const auto& shifts = src_.module().shifts;
    for (std::size_t k = 0; k < shifts.size(); ++k) {
      int m = n - shifts[k];
      if (m < 0) continue;
      const auto& words = g.normal_words(m);
      for (const auto& w : words) {
        if (w.empty()) {
          cols.push_back(dst_.coords(images_[k], n));
          continue;
        }
        std::size_t x = src_.side() == Side::left ? w.front() : w.back();
        Word rest = src_.side() == Side::left ? Word(w.begin() + 1, w.end()) : Word(w.begin(), w.end() - 1);
        int dx = gens.degree(x);
        const auto& lower = columns(n - dx);
        std::size_t pos = src_.offsets(n - dx)[k] + *g.word_index(rest);
        cols.push_back(dst_.act(x, lower[pos], n - dx));
      }
    }
    return cache_.emplace(n, std::move(cols)).first->second;
  }

  SparseVector<K> apply(const SparseVector<K>& v, int n) const {
    const auto& cols = columns(n);
    std::vector<Entry<K>> raw;
    for (const auto& e : v)
      for (const auto& c : cols[e.idx]) raw.push_back({c.idx, c.val * e.val});
    return canonicalize(std::move(raw));
  }

  std::vector<SparseVector<K>> kernel(int n) const {
    return kernel_of_columns(dst_.dim(n), columns(n), src_.algebra().one());
  }

  std::size_t rank(int n) const {
    Echelon<K> e;
    for (const auto& c : columns(n)) e.insert(c);
    return e.rank();
  }

 private:
  GradedFree<Field> src_, dst_;
  std::vector<PolyVector<K>> images_;
  mutable std::map<int, std::vector<SparseVector<K>>> cache_;
};

/// Degree of a homogeneous row of a presentation matrix, or nullopt for a zero row.
template <class K>
std::optional<int> row_degree(const GeneratorSet& gens, const FreeModule& cover, const PolyVector<K>& row) {
  std::optional<int> d;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j].is_zero()) continue;
    if (!row[j].is_homogeneous(gens)) throw InputError("relation entry is not homogeneous");
    int e = row[j].degree(gens) + cover.shifts[j];
    if (d && *d != e) throw InputError("relation row is not homogeneous with respect to the generator shifts");
    d = e;
  }
  return d;
}

template <class Field>
struct ModulePresentation {
  using K = typename Field::scalar;
  AlgebraPresentation<Field> algebra;
  Side side = Side::left;
  FreeModule cover;
  std::vector<PolyVector<K>> relations;
  std::string label;

  /// Checks row lengths and homogeneity; returns the nonzero rows with their degrees.
  std::vector<std::pair<int, PolyVector<K>>> graded_rows() const {
    std::vector<std::pair<int, PolyVector<K>>> out;
    for (const auto& r : relations) {
      if (r.size() != cover.rank()) throw InputError("relation row length differs from the number of generators");
      if (auto d = row_degree(algebra.gens, cover, r)) out.emplace_back(*d, r);
    }
    return out;
  }
};

/// The module A(-s) ... as the free module on the given shifts.
template <class Field>
ModulePresentation<Field> free_module_presentation(const AlgebraPresentation<Field>& a, FreeModule f,
                                                   Side side = Side::left, std::string label = "A") {
  return {a, side, std::move(f), {}, std::move(label)};
}

/// The trivial module k = A/m in degree 0.
template <class Field>
ModulePresentation<Field> trivial_module(const AlgebraPresentation<Field>& a, Side side = Side::left) {
  using K = typename Field::scalar;
  ModulePresentation<Field> m{a, side, FreeModule{{0}}, {}, "k"};
  for (std::size_t x = 0; x < a.gens.size(); ++x)
    m.relations.push_back({NcPolynomial<K>::monomial(Word{static_cast<std::uint16_t>(x)}, a.field.from_int(1))});
  return m;
}

/// Relation submodule K of the cover, as a map from a free module on the rows.
template <class Field>
FreeMap<Field> relation_map(const ModulePresentation<Field>& m, const GroebnerData<Field>& g) {
  FreeModule src;
  std::vector<PolyVector<typename Field::scalar>> images;
  for (auto& [d, row] : m.graded_rows()) {
    src.shifts.push_back(d);
    images.push_back(row);
  }
  return FreeMap<Field>(g, m.side, std::move(src), m.cover, std::move(images));
}

/// dim M_n for n in [lo, hi].
template <class Field>
std::map<int, std::size_t> module_dims(const ModulePresentation<Field>& m, const GroebnerData<Field>& g, int lo,
                                       int hi) {
  auto rel = relation_map(m, g);
  std::map<int, std::size_t> out;
  for (int n = lo; n <= hi; ++n) out[n] = rel.target().dim(n) - rel.rank(n);
  return out;
}

}  // namespace gradreg
