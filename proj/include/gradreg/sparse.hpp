#pragma once

// Deterministic sparse linear algebra over an exact field.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gradreg {

template <class K>
struct Entry {
  std::uint32_t idx;
  K val;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sorted by index, no stored zeros.
template <class K>
using SparseVector = std::vector<Entry<K>>;

template <class K>
SparseVector<K> axpy(const SparseVector<K>& x, const K& a, const SparseVector<K>& y) {
  // x + a*y
  SparseVector<K> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].idx < y[j].idx)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].idx < x[i].idx) {
      K v = a * y[j].val;
      if (!v.is_zero()) out.push_back({y[j].idx, std::move(v)});
      ++j;
    } else {
      K v = x[i].val + a * y[j].val;
      if (!v.is_zero()) out.push_back({x[i].idx, std::move(v)});
      ++i, ++j;
    }
  }
  return out;
}

template <class K>
void scale_in_place(SparseVector<K>& v, const K& a) {
  for (auto& e : v) e.val *= a;
}

/// Sort by index and merge duplicates; drops zeros.
template <class K>
SparseVector<K> canonicalize(std::vector<Entry<K>> raw) {
  std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.idx < b.idx; });
  SparseVector<K> out;
  out.reserve(raw.size());
  for (auto& e : raw) {
    if (!out.empty() && out.back().idx == e.idx) {
      out.back().val += e.val;
      if (out.back().val.is_zero()) out.pop_back();
    } else if (!e.val.is_zero()) {
      out.push_back(std::move(e));
    }
  }
  return out;
}

template <class K>
SparseVector<K> unit_vector(std::uint32_t idx, const K& one) {
  return {{idx, one}};
}

template <class K>
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  const SparseVector<K>& row(std::size_t r) const { return rows_.at(r); }
  void set_row(std::size_t r, SparseVector<K> v) {
    for (const auto& e : v)
      if (e.idx >= cols_ || e.val.is_zero()) throw std::out_of_range("sparse row entry out of bounds");
    rows_.at(r) = std::move(v);
  }
  void set(std::size_t r, std::size_t c, const K& v) {
    if (r >= rows() || c >= cols_) throw std::out_of_range("matrix index");
    auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t k) { return e.idx < k; });
    if (it != row.end() && it->idx == c) {
      if (v.is_zero()) row.erase(it); else it->val = v;
    } else if (!v.is_zero()) {
      row.insert(it, {static_cast<std::uint32_t>(c), v});
    }
  }
  K get(std::size_t r, std::size_t c) const {
    const auto& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t k) { return e.idx < k; });
    return (it != row.end() && it->idx == c) ? it->val : K{};
  }
  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  /// Build from column vectors (each indexed by row).
  static SparseMatrix from_columns(std::size_t rows, const std::vector<SparseVector<K>>& columns) {
    SparseMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
      for (const auto& e : columns[c]) {
        if (e.idx >= rows) throw std::out_of_range("column entry out of bounds");
        m.rows_[e.idx].push_back({static_cast<std::uint32_t>(c), e.val});
      }
    return m;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.cols_ || a.rows_.size() != b.rows_.size()) return false;
    for (std::size_t r = 0; r < a.rows_.size(); ++r) {
      if (a.rows_[r].size() != b.rows_[r].size()) return false;
      for (std::size_t k = 0; k < a.rows_[r].size(); ++k)
        if (a.rows_[r][k].idx != b.rows_[r][k].idx || a.rows_[r][k].val != b.rows_[r][k].val) return false;
    }
    return true;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<SparseVector<K>> rows_;
};

/// Incrementally built row-echelon basis of a subspace. Stored rows are
/// monic at their pivot and carry no entries left of it.
template <class K>
class Echelon {
 public:
  /// Eliminate every pivot column from v.
  SparseVector<K> reduce(SparseVector<K> v) const {
    std::size_t i = 0;
    while (i < v.size()) {
      auto it = pivot_row_.find(v[i].idx);
      if (it == pivot_row_.end()) {
        ++i;
        continue;
      }
      K c = -v[i].val;
      v = axpy(v, c, rows_[it->second]);
    }
    return v;
  }

  /// Adds v to the span. Returns the normalized remainder, empty if v was dependent.
  SparseVector<K> insert(SparseVector<K> v) {
    v = reduce(std::move(v));
    if (v.empty()) return v;
    K inv = v.front().val.inverse();
    scale_in_place(v, inv);
    pivot_row_.emplace(v.front().idx, rows_.size());
    rows_.push_back(v);
    return v;
  }

  bool contains(const SparseVector<K>& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseVector<K>>& rows() const { return rows_; }
  bool is_pivot(std::uint32_t col) const { return pivot_row_.count(col) != 0; }

  /// Rows of the reduced row-echelon form, sorted by pivot column.
  std::vector<SparseVector<K>> rref_rows() const {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rows_[a].front().idx < rows_[b].front().idx; });
    // Back-substitute from the largest pivot down.
    Echelon tail;
    std::vector<SparseVector<K>> out(order.size());
    for (std::size_t k = order.size(); k-- > 0;) {
      const auto& r = rows_[order[k]];
      SparseVector<K> rest(r.begin() + 1, r.end());
      rest = tail.reduce(std::move(rest));
      SparseVector<K> full;
      full.reserve(rest.size() + 1);
      full.push_back(r.front());
      full.insert(full.end(), rest.begin(), rest.end());
      tail.pivot_row_.emplace(full.front().idx, tail.rows_.size());
      tail.rows_.push_back(full);
      out[k] = std::move(full);
    }
    return out;
  }

 private:
  std::vector<SparseVector<K>> rows_;
  std::unordered_map<std::uint32_t, std::size_t> pivot_row_;
};

template <class K>
struct RowReduction {
  SparseMatrix<K> reduced;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col), increasing col
  std::size_t rank = 0;
};

/// Reduced row-echelon form. Unique, hence deterministic.
template <class K>
RowReduction<K> row_reduce(const SparseMatrix<K>& m) {
  Echelon<K> ech;
  for (std::size_t r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
  auto rows = ech.rref_rows();
  RowReduction<K> out;
  out.reduced = SparseMatrix<K>(m.rows(), m.cols());
  out.rank = rows.size();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.pivots.emplace_back(k, rows[k].front().idx);
    out.reduced.set_row(k, std::move(rows[k]));
  }
  return out;
}

/// Basis of the right null space {x : m x = 0}; one vector per free column,
/// in increasing column order, with that free variable set to 1.
template <class K>
std::vector<SparseVector<K>> kernel_basis(const SparseMatrix<K>& m, const K& one) {
  auto rr = row_reduce(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto [r, c] : rr.pivots) is_pivot[c] = 1;
  std::vector<std::int64_t> free_slot(m.cols(), -1);
  std::vector<std::vector<Entry<K>>> raw;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) {
      free_slot[c] = static_cast<std::int64_t>(raw.size());
      raw.push_back({{static_cast<std::uint32_t>(c), one}});
    }
  for (auto [r, pc] : rr.pivots)
    for (const auto& e : rr.reduced.row(r))
      if (e.idx != pc) raw[free_slot[e.idx]].push_back({static_cast<std::uint32_t>(pc), -e.val});
  std::vector<SparseVector<K>> out;
  out.reserve(raw.size());
  for (auto& v : raw) out.push_back(canonicalize(std::move(v)));
  return out;
}

template <class K>
std::size_t rank_of(const SparseMatrix<K>& m) {
  Echelon<K> ech;
  for (std::size_t r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
  return ech.rank();
}

/// Kernel of the map whose columns are given (column c = image of basis vector c).
template <class K>
std::vector<SparseVector<K>> kernel_of_columns(std::size_t target_dim, const std::vector<SparseVector<K>>& columns,
                                               const K& one) {
  return kernel_basis(SparseMatrix<K>::from_columns(target_dim, columns), one);
}

}  // namespace gradreg
