#include "markev/matrix.hpp"

#include <cmath>

#include "markev/kernels.hpp"

namespace markev {

DenseMatrix DenseMatrix::multiply(const DenseMatrix& b) const {
  assert(cols_ == b.rows());
  DenseMatrix r(rows_, b.cols());
  for (idx j = 0; j < b.cols(); ++j) {
    double* rj = r.col(j);
    for (idx k = 0; k < cols_; ++k) {
      const double bkj = b(k, j);
      if (bkj != 0.0)
        kernels::axpy(bkj, col(k), rj, static_cast<std::size_t>(rows_));
    }
  }
  return r;
}

std::vector<double> DenseMatrix::apply(const std::vector<double>& x) const {
  assert(static_cast<idx>(x.size()) == cols_);
  std::vector<double> y(static_cast<std::size_t>(rows_), 0.0);
  for (idx j = 0; j < cols_; ++j)
    if (x[static_cast<std::size_t>(j)] != 0.0)
      kernels::axpy(x[static_cast<std::size_t>(j)], col(j), y.data(),
                    static_cast<std::size_t>(rows_));
  return y;
}

CscMatrix CscBuilder::build() {
  std::sort(trip_.begin(), trip_.end(), [](const Trip& a, const Trip& b) {
    return a.j != b.j ? a.j < b.j : a.i < b.i;
  });
  CscMatrix m(rows_, cols_);
  m.row_idx.reserve(trip_.size());
  m.val.reserve(trip_.size());
  std::size_t k = 0;
  for (idx j = 0; j < cols_; ++j) {
    while (k < trip_.size() && trip_[k].j == j) {
      // merge duplicates
      if (!m.row_idx.empty() && m.col_ptr[static_cast<std::size_t>(j)] <
                                    static_cast<idx>(m.row_idx.size()) &&
          m.row_idx.back() == trip_[k].i) {
        m.val.back() += trip_[k].v;
      } else {
        m.row_idx.push_back(trip_[k].i);
        m.val.push_back(trip_[k].v);
      }
      ++k;
    }
    m.col_ptr[static_cast<std::size_t>(j) + 1] = static_cast<idx>(m.row_idx.size());
  }
  return m;
}

idx TransitionMatrix::nnz() const {
  if (!is_dense()) return csc().nnz();
  idx count = 0;
  const DenseMatrix& d = dense();
  for (const double v : d.data())
    if (v != 0.0) ++count;
  return count;
}

double TransitionMatrix::col_sum(idx j) const {
  if (is_dense())
    return kernels::sum(dense().col(j), static_cast<std::size_t>(rows()));
  double s = 0.0;
  const CscMatrix& m = csc();
  for (idx k = m.col_ptr[j]; k < m.col_ptr[j + 1]; ++k) s += m.val[k];
  return s;
}

std::vector<double> TransitionMatrix::apply(const std::vector<double>& x) const {
  if (is_dense()) return dense().apply(x);
  const CscMatrix& m = csc();
  std::vector<double> y(static_cast<std::size_t>(m.rows), 0.0);
  for (idx j = 0; j < m.cols; ++j) {
    const double xj = x[static_cast<std::size_t>(j)];
    if (xj == 0.0) continue;
    for (idx k = m.col_ptr[j]; k < m.col_ptr[j + 1]; ++k)
      y[static_cast<std::size_t>(m.row_idx[k])] += m.val[k] * xj;
  }
  return y;
}

double TransitionMatrix::frobenius_norm() const {
  double s = 0.0;
  if (is_dense()) {
    for (const double v : dense().data()) s += v * v;
  } else {
    for (const double v : csc().val) s += v * v;
  }
  return std::sqrt(s);
}

}  // namespace markev
