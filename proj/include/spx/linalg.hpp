#pragma once
// Sparse exact linear algebra: integer Smith normal form and echelon data
// over a field, both with deterministic pivoting.

#include "spx/arith.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>
#include <vector>

namespace spx {

/// Coordinate-list matrix.  Entries are kept sorted by (row, col) with no
/// stored zeros and at most one entry per coordinate.
template <class T>
class SparseMatrix {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    T value;
  };

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  /// Adds v to the entry at (r, c).
  void add(std::size_t r, std::size_t c, const T& v) {
    if (r >= rows_ || c >= cols_) throw InvalidArgument("matrix coordinate out of range");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{r, c},
                               [](const Entry& e, const std::pair<std::size_t, std::size_t>& k) {
                                 return std::pair{e.row, e.col} < k;
                               });
    if (it != entries_.end() && it->row == r && it->col == c) {
      it->value += v;
      if (it->value == 0) entries_.erase(it);
    } else if (v != 0) {
      entries_.insert(it, Entry{r, c, v});
    }
  }

  T at(std::size_t r, std::size_t c) const {
    for (const auto& e : entries_)
      if (e.row == r && e.col == c) return e.value;
    return T(0);
  }

  /// Rows as ordered maps col -> value.
  std::vector<std::map<std::size_t, T>> row_maps() const {
    std::vector<std::map<std::size_t, T>> out(rows_);
    for (const auto& e : entries_) out[e.row].emplace(e.col, e.value);
    return out;
  }

  SparseMatrix transposed() const {
    SparseMatrix t(cols_, rows_);
    t.entries_.reserve(entries_.size());
    for (const auto& e : entries_) t.entries_.push_back(Entry{e.col, e.row, e.value});
    std::sort(t.entries_.begin(), t.entries_.end(), [](const Entry& a, const Entry& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    return t;
  }

  static SparseMatrix from_dense(const std::vector<std::vector<T>>& d) {
    std::size_t cols = d.empty() ? 0 : d.front().size();
    SparseMatrix m(d.size(), cols);
    for (std::size_t r = 0; r < d.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (d[r][c] != 0) m.entries_.push_back(Entry{r, c, d[r][c]});
    return m;
  }

  /// MatrixMarket-style coordinate dump (1-based), for debugging.
  void write_coordinate(std::ostream& os) const {
    os << "%%MatrixMarket matrix coordinate integer general\n";
    os << rows_ << ' ' << cols_ << ' ' << entries_.size() << '\n';
    for (const auto& e : entries_) os << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

using IntegerMatrix = SparseMatrix<Integer>;

struct SNFResult {
  std::vector<Integer> invariant_factors;  // d1 | d2 | ... | ds, all >= 1
  std::size_t rank() const { return invariant_factors.size(); }
};

namespace detail {

inline Integer abs_int(const Integer& v) { return v < 0 ? Integer(-v) : v; }

// Floor-free quotient that rounds toward zero; remainders keep the pivot's
// magnitude bound |r| < |p| which is all the elimination needs.
inline Integer trunc_div(const Integer& a, const Integer& b) { return a / b; }

// Puts a diagonal of positive integers into divisibility-chain form.
inline std::vector<Integer> to_invariant_chain(std::vector<Integer> d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Integer g = boost::multiprecision::gcd(d[i], d[j]);
      Integer l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  return d;
}

}  // namespace detail

/// Invariant factors of an integer matrix.
///
/// Elimination repeatedly picks the entry of least absolute value (ties by
/// row, then column), clears its column with row operations and its row with
/// column operations, and retires the pivot once both are clean.  Nonzero
/// remainders make the next pivot strictly smaller, so the loop terminates.
/// All arithmetic is exact; the transforms are not kept.
inline SNFResult smith_normal_form(const IntegerMatrix& m) {
  using detail::abs_int;
  auto rows = m.row_maps();
  std::vector<Integer> diag;

  while (true) {
    // Pivot search.
    bool found = false;
    std::size_t pr = 0, pc = 0;
    Integer best;
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [c, v] : rows[r]) {
        Integer a = abs_int(v);
        if (!found || a < best) {
          found = true;
          best = a;
          pr = r;
          pc = c;
        }
      }
    if (!found) break;

    const Integer pivot = rows[pr].at(pc);
    bool clean = true;

    // Row operations clear the pivot column.
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == pr) continue;
      auto it = rows[r].find(pc);
      if (it == rows[r].end()) continue;
      Integer q = detail::trunc_div(it->second, pivot);
      if (q != 0) {
        for (const auto& [c, v] : rows[pr]) {
          Integer& slot = rows[r][c];
          slot -= q * v;
          if (slot == 0) rows[r].erase(c);
        }
      }
      if (rows[r].count(pc)) clean = false;
    }
    if (!clean) continue;

    // Column operations clear the pivot row; the pivot column now only meets
    // the pivot row, so only that row changes.
    std::vector<std::size_t> others;
    for (const auto& [c, v] : rows[pr])
      if (c != pc) others.push_back(c);
    for (std::size_t c : others) {
      Integer& slot = rows[pr][c];
      slot -= detail::trunc_div(slot, pivot) * pivot;
      if (slot == 0)
        rows[pr].erase(c);
      else
        clean = false;
    }
    if (!clean) continue;

    diag.push_back(abs_int(pivot));
    rows[pr].clear();
  }

  return SNFResult{detail::to_invariant_chain(std::move(diag))};
}

/// Echelon data of a matrix over a field.
template <class Field>
struct EchelonResult {
  using value_type = typename Field::value_type;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  std::vector<std::size_t> pivot_rows;           // original row chosen for each pivot
  std::vector<std::vector<value_type>> kernel;   // basis, each of length cols
  std::vector<std::vector<value_type>> image;    // original pivot columns, each of length rows
};

/// Reduced row echelon form over a field.  Columns are scanned left to right;
/// the pivot in a column is the smallest-index row not yet used.
template <class Field>
EchelonResult<Field> field_rank_kernel(const std::vector<std::map<std::size_t, typename Field::value_type>>& input,
                                       std::size_t cols, const Field& F) {
  using V = typename Field::value_type;
  auto rows = input;
  const std::size_t nrows = rows.size();
  std::vector<bool> used(nrows, false);
  EchelonResult<Field> res;
  std::vector<std::size_t> pivot_row_of_col(cols, nrows);

  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t pr = nrows;
    for (std::size_t r = 0; r < nrows; ++r)
      if (!used[r] && rows[r].count(c)) {
        pr = r;
        break;
      }
    if (pr == nrows) continue;
    used[pr] = true;
    V inv = F.inv(rows[pr].at(c));
    for (auto& [cc, v] : rows[pr]) v = F.mul(v, inv);
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == pr) continue;
      auto it = rows[r].find(c);
      if (it == rows[r].end()) continue;
      V factor = it->second;
      for (const auto& [cc, v] : rows[pr]) {
        V nv = F.sub(rows[r].count(cc) ? rows[r][cc] : F.zero(), F.mul(factor, v));
        if (F.is_zero(nv))
          rows[r].erase(cc);
        else
          rows[r][cc] = nv;
      }
    }
    res.pivot_columns.push_back(c);
    res.pivot_rows.push_back(pr);
    pivot_row_of_col[c] = pr;
  }
  res.rank = res.pivot_columns.size();

  for (std::size_t f = 0; f < cols; ++f) {
    if (pivot_row_of_col[f] != nrows) continue;
    std::vector<V> v(cols, F.zero());
    v[f] = F.one();
    for (std::size_t i = 0; i < res.pivot_columns.size(); ++i) {
      const auto& row = rows[res.pivot_rows[i]];
      auto it = row.find(f);
      if (it != row.end()) v[res.pivot_columns[i]] = F.neg(it->second);
    }
    res.kernel.push_back(std::move(v));
  }

  for (std::size_t c : res.pivot_columns) {
    std::vector<V> col(nrows, F.zero());
    for (std::size_t r = 0; r < nrows; ++r) {
      auto it = input[r].find(c);
      if (it != input[r].end()) col[r] = it->second;
    }
    res.image.push_back(std::move(col));
  }
  return res;
}

/// Integer matrix reduced into the field, then eliminated.
template <class Field>
EchelonResult<Field> field_rank_kernel(const IntegerMatrix& m, const Field& F) {
  std::vector<std::map<std::size_t, typename Field::value_type>> rows(m.rows());
  for (const auto& e : m.entries()) {
    auto v = F.from(e.value);
    if (!F.is_zero(v)) rows[e.row].emplace(e.col, v);
  }
  return field_rank_kernel(rows, m.cols(), F);
}

template <class Field>
std::size_t field_rank(const IntegerMatrix& m, const Field& F) {
  return field_rank_kernel(m, F).rank;
}

/// Incrementally built basis of a subspace of F^dim that remembers, for each
/// echelon vector, its expression in terms of the vectors inserted so far.
/// reduce() splits a vector into (combination of inserted vectors, residue).
template <class Field>
class SpanTracker {
 public:
  using V = typename Field::value_type;
  using Vec = std::vector<V>;

  SpanTracker(std::size_t dim, Field F) : dim_(dim), F_(std::move(F)) {}

  std::size_t size() const { return inserted_; }
  std::size_t rank() const { return echelon_.size(); }

  /// Reduces v against the echelon; returns the coefficients (over inserted
  /// vectors) of the part removed, leaving the residue in v.
  Vec reduce(Vec& v) const {
    Vec coeffs(inserted_, F_.zero());
    for (const auto& row : echelon_) {
      const V& lead = v[row.pivot];
      if (F_.is_zero(lead)) continue;
      V factor = lead;  // echelon rows are monic at their pivot
      for (std::size_t i = 0; i < dim_; ++i)
        if (!F_.is_zero(row.vec[i])) v[i] = F_.sub(v[i], F_.mul(factor, row.vec[i]));
      for (std::size_t i = 0; i < row.combo.size(); ++i)
        if (!F_.is_zero(row.combo[i])) coeffs[i] = F_.add(coeffs[i], F_.mul(factor, row.combo[i]));
    }
    return coeffs;
  }

  bool contains(Vec v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [&](const V& x) { return F_.is_zero(x); });
  }

  /// Inserts v; returns false (and records nothing new in the echelon) when v
  /// is already in the span.  The vector still counts as inserted.
  bool insert(Vec v) {
    Vec coeffs = reduce(v);
    ++inserted_;
    for (auto& row : echelon_) row.combo.resize(inserted_, F_.zero());
    std::size_t piv = dim_;
    for (std::size_t i = 0; i < dim_; ++i)
      if (!F_.is_zero(v[i])) {
        piv = i;
        break;
      }
    if (piv == dim_) return false;
    // residue = v_new - sum coeffs * inserted  (the combo is negated coeffs plus e_new)
    Vec combo(inserted_, F_.zero());
    for (std::size_t i = 0; i < coeffs.size(); ++i) combo[i] = F_.neg(coeffs[i]);
    combo[inserted_ - 1] = F_.one();
    V inv = F_.inv(v[piv]);
    for (auto& x : v) x = F_.mul(x, inv);
    for (auto& x : combo) x = F_.mul(x, inv);
    // Clear the new pivot from the existing rows so every row stays zero at
    // every other pivot and reduce() is a single pass.
    for (auto& row : echelon_) {
      V f = row.vec[piv];
      if (F_.is_zero(f)) continue;
      for (std::size_t i = 0; i < dim_; ++i)
        if (!F_.is_zero(v[i])) row.vec[i] = F_.sub(row.vec[i], F_.mul(f, v[i]));
      for (std::size_t i = 0; i < inserted_; ++i)
        if (!F_.is_zero(combo[i])) row.combo[i] = F_.sub(row.combo[i], F_.mul(f, combo[i]));
    }
    echelon_.push_back(Row{piv, std::move(v), std::move(combo)});
    return true;
  }

 private:
  struct Row {
    std::size_t pivot;
    Vec vec;
    Vec combo;
  };

  std::size_t dim_;
  Field F_;
  std::size_t inserted_ = 0;
  std::vector<Row> echelon_;
};

}  // namespace spx
