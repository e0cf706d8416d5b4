#pragma once

#include <algorithm>
#include <cassert>
#include <variant>
#include <vector>

#include "markev/errors.hpp"

namespace markev {

// Column-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(idx rows, idx cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), fill) {}

  static DenseMatrix identity(idx n) {
    DenseMatrix m(n, n);
    for (idx i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  idx rows() const { return rows_; }
  idx cols() const { return cols_; }

  double& operator()(idx i, idx j) { return a_[static_cast<std::size_t>(j * rows_ + i)]; }
  double operator()(idx i, idx j) const { return a_[static_cast<std::size_t>(j * rows_ + i)]; }

  double* col(idx j) { return a_.data() + j * rows_; }
  const double* col(idx j) const { return a_.data() + j * rows_; }

  std::vector<double>& data() { return a_; }
  const std::vector<double>& data() const { return a_; }

  DenseMatrix transposed() const {
    DenseMatrix r(cols_, rows_);
    for (idx j = 0; j < cols_; ++j)
      for (idx i = 0; i < rows_; ++i) r(j, i) = (*this)(i, j);
    return r;
  }

  DenseMatrix multiply(const DenseMatrix& b) const;

  // y = A x
  std::vector<double> apply(const std::vector<double>& x) const;

 private:
  idx rows_, cols_;
  std::vector<double> a_;
};

// Compressed sparse column storage. Row indices are sorted within each
// column and values are strictly nonzero.
struct CscMatrix {
  idx rows = 0, cols = 0;
  std::vector<idx> col_ptr;  // size cols + 1
  std::vector<idx> row_idx;
  std::vector<double> val;

  CscMatrix() : col_ptr(1, 0) {}
  CscMatrix(idx r, idx c) : rows(r), cols(c), col_ptr(static_cast<std::size_t>(c) + 1, 0) {}

  idx nnz() const { return static_cast<idx>(row_idx.size()); }

  double entry(idx i, idx j) const {
    const idx lo = col_ptr[j], hi = col_ptr[j + 1];
    auto it = std::lower_bound(row_idx.begin() + lo, row_idx.begin() + hi, i);
    if (it != row_idx.begin() + hi && *it == i)
      return val[static_cast<std::size_t>(it - row_idx.begin())];
    return 0.0;
  }
};

// Builder that accumulates triplets and emits sorted CSC.
class CscBuilder {
 public:
  CscBuilder(idx rows, idx cols) : rows_(rows), cols_(cols) {}
  void add(idx i, idx j, double v) {
    if (v != 0.0) trip_.push_back({i, j, v});
  }
  CscMatrix build();

 private:
  struct Trip {
    idx i, j;
    double v;
  };
  idx rows_, cols_;
  std::vector<Trip> trip_;
};

// Transition-matrix storage: dense below the configured threshold, CSC
// above. Columns index the source state, rows the destination.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  explicit TransitionMatrix(DenseMatrix m) : m_(std::move(m)) {}
  explicit TransitionMatrix(CscMatrix m) : m_(std::move(m)) {}

  bool is_dense() const { return std::holds_alternative<DenseMatrix>(m_); }
  const DenseMatrix& dense() const { return std::get<DenseMatrix>(m_); }
  const CscMatrix& csc() const { return std::get<CscMatrix>(m_); }

  idx rows() const {
    return is_dense() ? dense().rows() : csc().rows;
  }
  idx cols() const {
    return is_dense() ? dense().cols() : csc().cols;
  }

  double entry(idx i, idx j) const {
    return is_dense() ? dense()(i, j) : csc().entry(i, j);
  }

  idx nnz() const;

  // Visit structural nonzeros of column j as f(row, value).
  template <class F>
  void for_col(idx j, F&& f) const {
    if (is_dense()) {
      const DenseMatrix& d = dense();
      const double* c = d.col(j);
      for (idx i = 0; i < d.rows(); ++i)
        if (c[i] != 0.0) f(i, c[i]);
    } else {
      const CscMatrix& s = csc();
      for (idx k = s.col_ptr[j]; k < s.col_ptr[j + 1]; ++k)
        f(s.row_idx[k], s.val[k]);
    }
  }

  double col_sum(idx j) const;

  // y = T x
  std::vector<double> apply(const std::vector<double>& x) const;

  double frobenius_norm() const;

 private:
  std::variant<DenseMatrix, CscMatrix> m_;
};

}  // namespace markev
