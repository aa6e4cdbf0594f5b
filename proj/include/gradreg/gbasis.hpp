#pragma once

// Degree-truncated noncommutative Groebner bases of homogeneous two-sided
// ideals, normal-word bases of each graded piece and multiplication
// matrices in normal-word coordinates.
//
// Everything in a GroebnerData is valid for degrees <= dmax only.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "gradreg/errors.hpp"
#include "gradreg/freealg.hpp"
#include "gradreg/sparse.hpp"

namespace gradreg {

inline constexpr int kGbFormatVersion = 1;

template <class Field>
struct AlgebraPresentation {
  using K = typename Field::scalar;
  Field field;
  GeneratorSet gens;
  std::vector<NcPolynomial<K>> relations;
  std::string label;

  int max_relation_degree() const {
    int d = 0;
    for (const auto& r : relations) d = std::max(d, r.degree(gens));
    return d;
  }

  /// Throws InputError unless every relation is homogeneous of degree >= 2.
  void validate() const {
    for (const auto& r : relations) {
      if (r.is_zero()) continue;
      if (!r.is_homogeneous(gens))
        throw InputError("relation '" + to_string(gens, r) + "' is not homogeneous");
      if (r.degree(gens) < 2)
        throw InputError("relation '" + to_string(gens, r) + "' has degree < 2");
    }
  }
};

enum class Side { left, right };

inline const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }
inline Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

template <class Field>
class GroebnerData {
 public:
  using K = typename Field::scalar;

  const AlgebraPresentation<Field>& algebra() const { return algebra_; }
  const Field& field() const { return algebra_.field; }
  const GeneratorSet& gens() const { return algebra_.gens; }
  int dmax() const { return dmax_; }
  const std::vector<NcPolynomial<K>>& gb() const { return gb_; }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t dim(int n) const {
    if (n < 0) return 0;
    if (n > dmax_) throw WindowError("degree " + std::to_string(n) + " beyond dmax " + std::to_string(dmax_));
    return static_cast<std::size_t>(dims_[n]);
  }
  const std::vector<Word>& normal_words(int n) const { return normal_words_.at(n); }
  K one() const { return algebra_.field.from_int(1); }

  std::optional<std::uint32_t> word_index(const Word& w) const {
    int n = gens().degree(w);
    if (n > dmax_) return std::nullopt;
    const auto& m = word_index_[n];
    auto it = m.find(w);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }

  NcPolynomial<K> normal_form(const NcPolynomial<K>& p) const { return reduce(gens(), p, gb_, index_); }

  /// Normal-word coordinates of a homogeneous polynomial of degree n.
  SparseVector<K> to_vector(const NcPolynomial<K>& p, int n) const {
    auto nf = normal_form(p);
    std::vector<Entry<K>> raw;
    for (const auto& t : nf.terms()) {
      if (gens().degree(t.word) != n) throw std::invalid_argument("polynomial not homogeneous of the expected degree");
      auto idx = word_index(t.word);
      if (!idx) throw WindowError("word beyond the Groebner window");
      raw.push_back({*idx, t.coef});
    }
    return canonicalize(std::move(raw));
  }

  NcPolynomial<K> from_vector(const SparseVector<K>& v, int n) const {
    std::vector<Term<K>> raw;
    for (const auto& e : v) raw.push_back({normal_words_.at(n).at(e.idx), e.val});
    return NcPolynomial<K>::from_terms(gens(), std::move(raw));
  }

  /// Column j = coordinates of generator*w_j (left) or w_j*generator (right).
  const std::vector<SparseVector<K>>& mult_columns(Side side, int n, std::size_t gen) const {
    if (n < 0 || n + gens().degree(gen) > dmax_)
      throw WindowError("multiplication from degree " + std::to_string(n) + " exceeds dmax");
    return (side == Side::left ? left_ : right_)[n][gen];
  }

  /// Multiplication by a generator as a SparseMatrix A_n -> A_{n+deg}.
  SparseMatrix<K> mult_matrix(Side side, int n, std::size_t gen) const {
    const auto& cols = mult_columns(side, n, gen);
    return SparseMatrix<K>::from_columns(dim(n + gens().degree(gen)), cols);
  }

  /// Apply a generator to a vector of A_n.
  SparseVector<K> act(Side side, std::size_t gen, const SparseVector<K>& v, int n) const {
    const auto& cols = mult_columns(side, n, gen);
    std::vector<Entry<K>> raw;
    for (const auto& e : v)
      for (const auto& c : cols[e.idx]) raw.push_back({c.idx, c.val * e.val});
    return canonicalize(std::move(raw));
  }

  /// Highest degree where A can be nonzero, when a run of zero pieces inside
  /// the window proves that A is finite dimensional.
  std::optional<int> top_degree() const {
    int run = std::max(1, gens().max_degree());
    if (gens().empty()) return 0;
    int zeros = 0;
    for (int n = 0; n <= dmax_; ++n) {
      zeros = dims_[n] == 0 ? zeros + 1 : 0;
      if (zeros == run) {
        int top = n - run;
        while (top > 0 && dims_[top] == 0) --top;
        return top;
      }
    }
    return std::nullopt;
  }

  template <class F>
  friend GroebnerData<F> compute_groebner(const AlgebraPresentation<F>& a, int dmax);
  template <class F>
  friend GroebnerData<F> groebner_from_basis(const AlgebraPresentation<F>& a, int dmax,
                                             std::vector<NcPolynomial<typename F::scalar>> gb);

 private:
  void finish();

  AlgebraPresentation<Field> algebra_;
  int dmax_ = 0;
  std::vector<NcPolynomial<K>> gb_;
  ReducerIndex<K> index_;
  std::vector<std::vector<Word>> normal_words_;
  std::vector<std::unordered_map<Word, std::uint32_t, WordHash>> word_index_;
  std::vector<int> dims_;
  std::vector<std::vector<std::vector<SparseVector<K>>>> left_, right_;
};

namespace detail {

struct Overlap {
  std::size_t first, second;  // indices into gb
  std::size_t shared;         // length of the shared subword
  Word word;
};

template <class K>
void collect_overlaps(const GeneratorSet& gens, const std::vector<NcPolynomial<K>>& gb, std::size_t fresh_from,
                      int dmax, std::map<int, std::vector<Overlap>>& buckets) {
  auto try_pair = [&](std::size_t i, std::size_t j) {
    const Word& a = gb[i].leading_word();
    const Word& b = gb[j].leading_word();
    std::size_t lim = std::min(a.size(), b.size());
    for (std::size_t s = 1; s < lim; ++s) {
      if (!std::equal(a.end() - s, a.end(), b.begin())) continue;
      Word w = concat(a, Word(b.begin() + s, b.end()));
      int d = gens.degree(w);
      if (d <= dmax) buckets[d].push_back({i, j, s, std::move(w)});
    }
  };
  for (std::size_t i = 0; i < gb.size(); ++i)
    for (std::size_t j = 0; j < gb.size(); ++j)
      if (i >= fresh_from || j >= fresh_from) try_pair(i, j);
}

}  // namespace detail

/// Truncated reduced Groebner basis, computed degree by degree.
template <class Field>
GroebnerData<Field> compute_groebner(const AlgebraPresentation<Field>& a, int dmax) {
  using K = typename Field::scalar;
  a.validate();
  if (dmax < a.max_relation_degree())
    throw WindowError("dmax " + std::to_string(dmax) + " is below the largest relation degree");
  const auto& gens = a.gens;
  GroebnerData<Field> g;
  g.algebra_ = a;
  g.dmax_ = dmax;

  std::map<int, std::vector<detail::Overlap>> buckets;
  for (int D = 1; D <= dmax; ++D) {
    std::vector<NcPolynomial<K>> cands;
    for (const auto& r : a.relations)
      if (!r.is_zero() && r.degree(gens) == D) cands.push_back(r);
    if (auto it = buckets.find(D); it != buckets.end()) {
      auto& ov = it->second;
      std::stable_sort(ov.begin(), ov.end(), [&](const auto& x, const auto& y) {
        int c = monomial_compare(gens, x.word, y.word);
        if (c != 0) return c < 0;
        return std::tie(x.first, x.second, x.shared) < std::tie(y.first, y.second, y.shared);
      });
      for (const auto& o : ov) {
        const auto& f = g.gb_[o.first];
        const auto& h = g.gb_[o.second];
        Word u(f.leading_word().begin(), f.leading_word().end() - o.shared);
        Word v(h.leading_word().begin() + o.shared, h.leading_word().end());
        auto s = add(gens, sandwich(gens, Word{}, f, v), sandwich(gens, u, h, Word{}), a.field.from_int(-1));
        cands.push_back(std::move(s));
      }
      buckets.erase(it);
    }
    if (cands.empty()) continue;

    // Reduce by the lower-degree basis, then interreduce within degree D.
    std::vector<NcPolynomial<K>> reduced;
    for (const auto& c : cands) {
      auto r = g.normal_form(c);
      if (!r.is_zero()) reduced.push_back(std::move(r));
    }
    if (reduced.empty()) continue;
    std::map<Word, std::uint32_t, WordLess> cols(WordLess{&gens});
    for (const auto& r : reduced)
      for (const auto& t : r.terms()) cols.emplace(t.word, 0);
    std::vector<Word> col_words;
    for (auto it = cols.rbegin(); it != cols.rend(); ++it) {
      it->second = static_cast<std::uint32_t>(col_words.size());
      col_words.push_back(it->first);
    }
    Echelon<K> ech;
    for (const auto& r : reduced) {
      std::vector<Entry<K>> raw;
      for (const auto& t : r.terms()) raw.push_back({cols[t.word], t.coef});
      ech.insert(canonicalize(std::move(raw)));
    }
    auto rows = ech.rref_rows();
    std::size_t fresh_from = g.gb_.size();
    // Ascending leading word inside a degree.
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
      std::vector<Term<K>> raw;
      for (const auto& e : *it) raw.push_back({col_words[e.idx], e.val});
      auto p = NcPolynomial<K>::from_terms(gens, std::move(raw));
      g.index_.add(p.leading_word(), g.gb_.size());
      g.gb_.push_back(std::move(p));
    }
    detail::collect_overlaps(gens, g.gb_, fresh_from, dmax, buckets);
  }
  g.finish();
  return g;
}

/// Rebuilds GroebnerData from an already reduced basis (cache load).
template <class Field>
GroebnerData<Field> groebner_from_basis(const AlgebraPresentation<Field>& a, int dmax,
                                        std::vector<NcPolynomial<typename Field::scalar>> gb) {
  GroebnerData<Field> g;
  g.algebra_ = a;
  g.dmax_ = dmax;
  g.gb_ = std::move(gb);
  for (std::size_t i = 0; i < g.gb_.size(); ++i) {
    if (g.gb_[i].is_zero() || !g.gb_[i].leading_coef().is_one()) throw InputError("cached basis element not monic");
    g.index_.add(g.gb_[i].leading_word(), i);
  }
  g.finish();
  return g;
}

template <class Field>
void GroebnerData<Field>::finish() {
  const auto& gs = gens();
  normal_words_.assign(dmax_ + 1, {});
  word_index_.assign(dmax_ + 1, {});
  normal_words_[0].push_back(Word{});
  std::vector<std::size_t> lead_lengths;
  std::unordered_map<Word, int, WordHash> leads;
  for (const auto& p : gb_) {
    leads.emplace(p.leading_word(), 0);
    if (std::find(lead_lengths.begin(), lead_lengths.end(), p.leading_word().size()) == lead_lengths.end())
      lead_lengths.push_back(p.leading_word().size());
  }
  for (int n = 1; n <= dmax_; ++n) {
    auto& out = normal_words_[n];
    for (std::size_t x = 0; x < gs.size(); ++x) {
      int m = n - gs.degree(x);
      if (m < 0) continue;
      for (const auto& w : normal_words_[m]) {
        Word cand;
        cand.reserve(w.size() + 1);
        cand.push_back(static_cast<std::uint16_t>(x));
        cand.insert(cand.end(), w.begin(), w.end());
        bool ok = true;
        for (auto len : lead_lengths) {
          if (len > cand.size()) continue;
          if (leads.count(Word(cand.begin(), cand.begin() + len))) {
            ok = false;
            break;
          }
        }
        if (ok) out.push_back(std::move(cand));
      }
    }
    std::sort(out.begin(), out.end(), WordLess{&gs});
  }
  dims_.assign(dmax_ + 1, 0);
  for (int n = 0; n <= dmax_; ++n) {
    dims_[n] = static_cast<int>(normal_words_[n].size());
    for (std::uint32_t i = 0; i < normal_words_[n].size(); ++i) word_index_[n].emplace(normal_words_[n][i], i);
  }
  left_.assign(dmax_ + 1, {});
  right_.assign(dmax_ + 1, {});
  for (int n = 0; n <= dmax_; ++n) {
    left_[n].resize(gs.size());
    right_[n].resize(gs.size());
    for (std::size_t x = 0; x < gs.size(); ++x) {
      int target = n + gs.degree(x);
      if (target > dmax_) continue;
      Word gx{static_cast<std::uint16_t>(x)};
      for (const auto& w : normal_words_[n]) {
        left_[n][x].push_back(to_vector(NcPolynomial<K>::monomial(concat(gx, w), one()), target));
        right_[n][x].push_back(to_vector(NcPolynomial<K>::monomial(concat(w, gx), one()), target));
      }
    }
  }
}

template <class Field>
std::vector<int> hilbert_series(const GroebnerData<Field>& g) {
  return g.dims();
}

/// Per generator, left multiplication A_n -> A_{n+deg(gen)}.
template <class Field>
std::vector<SparseMatrix<typename Field::scalar>> mult_matrices(const GroebnerData<Field>& g, int n,
                                                                Side side = Side::left) {
  if (n < 0 || n + g.gens().max_degree() > g.dmax())
    throw WindowError("mult_matrices: degree " + std::to_string(n) + " plus generator degree exceeds dmax");
  std::vector<SparseMatrix<typename Field::scalar>> out;
  for (std::size_t x = 0; x < g.gens().size(); ++x) out.push_back(g.mult_matrix(side, n, x));
  return out;
}

/// Canonical text of a presentation, used for cache keys.
template <class Field>
std::string canonical_text(const AlgebraPresentation<Field>& a, int dmax) {
  std::ostringstream os;
  os << "v" << kGbFormatVersion << ";field=" << a.field.name() << ";gens=";
  for (std::size_t i = 0; i < a.gens.size(); ++i) os << a.gens.name(i) << ":" << a.gens.degree(i) << ",";
  std::vector<std::string> rels;
  for (const auto& r : a.relations)
    if (!r.is_zero()) rels.push_back(to_string(a.gens, r.monic()));
  std::sort(rels.begin(), rels.end());
  os << ";rels=";
  for (const auto& r : rels) os << r << "|";
  os << ";dmax=" << dmax;
  return os.str();
}

inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

template <class Field>
std::string cache_key(const AlgebraPresentation<Field>& a, int dmax) {
  return fnv1a_hex(canonical_text(a, dmax));
}

}  // namespace gradreg
