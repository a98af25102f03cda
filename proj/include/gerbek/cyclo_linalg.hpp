#pragma once

// Exact Gaussian elimination over Q(zeta_n).
//
// RowSpace is an incremental reduced row echelon form: rows are inserted one
// at a time (sparse), reduced against the current pivots, and merged when
// independent. The systems solved here (centres, commutators, equivariance
// constraints) have rows with very few nonzero entries, so sparse rows keep
// the eliminations fast without giving up exactness.

#include "gerbek/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace gerbek {

// Sparse row: (column, value) pairs sorted by column, values nonzero.
using SparseRow = std::vector<std::pair<int, Cyc>>;

inline SparseRow make_sparse(const std::vector<Cyc>& dense) {
  SparseRow r;
  for (int i = 0; i < (int)dense.size(); ++i)
    if (!dense[i].is_zero()) r.emplace_back(i, dense[i]);
  return r;
}

// dst -= coeff * src
inline SparseRow sparse_axpy(const SparseRow& dst, const Cyc& coeff, const SparseRow& src) {
  SparseRow out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j >= src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i >= dst.size() || src[j].first < dst[i].first) {
      Cyc v = -(coeff * src[j].second);
      if (!v.is_zero()) out.emplace_back(src[j].first, std::move(v));
      ++j;
    } else {
      Cyc v = dst[i].second - coeff * src[j].second;
      if (!v.is_zero()) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

class RowSpace {
 public:
  explicit RowSpace(int cols) : cols_(cols) {}

  // Returns true when the row was independent of the span so far.
  bool insert(SparseRow row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    // normalize so the leading coefficient is 1
    Cyc lead_inv = row.front().second.inverse();
    for (auto& e : row) e.second = lead_inv * e.second;
    int pivot = row.front().first;
    // eliminate the new pivot column from the stored rows
    for (auto& [p, r] : rows_) {
      auto it = std::lower_bound(r.begin(), r.end(), pivot,
                                 [](const auto& e, int c) { return e.first < c; });
      if (it != r.end() && it->first == pivot) {
        Cyc c = it->second;
        r = sparse_axpy(r, c, row);
      }
    }
    rows_.emplace(pivot, std::move(row));
    return true;
  }

  SparseRow reduce(SparseRow row) const {
    std::size_t scan = 0;
    while (scan < row.size()) {
      auto it = rows_.find(row[scan].first);
      if (it == rows_.end()) {
        ++scan;
        continue;
      }
      Cyc c = row[scan].second;
      row = sparse_axpy(row, c, it->second);
      // all columns before the eliminated pivot are untouched; rescan from it
    }
    return row;
  }

  int rank() const { return (int)rows_.size(); }
  int cols() const { return cols_; }
  const std::map<int, SparseRow>& rows() const { return rows_; }

  // Basis of {x : R x = 0} for the row space R, one vector per free column.
  std::vector<std::vector<Cyc>> nullspace_basis(const CycField& f) const {
    std::vector<bool> is_pivot(cols_, false);
    for (const auto& [p, r] : rows_) is_pivot[p] = true;
    std::vector<std::vector<Cyc>> basis;
    for (int free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Cyc> v(cols_, Cyc::zero(f));
      v[free] = Cyc::one(f);
      for (const auto& [p, r] : rows_) {
        for (const auto& [c, val] : r)
          if (c == free) v[p] = -val;
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  int cols_;
  std::map<int, SparseRow> rows_;  // pivot column -> normalized reduced row
};

inline int rank_of_rows(int cols, const std::vector<std::vector<Cyc>>& rows) {
  RowSpace rs(cols);
  for (const auto& r : rows) rs.insert(make_sparse(r));
  return rs.rank();
}

}  // namespace gerbek
