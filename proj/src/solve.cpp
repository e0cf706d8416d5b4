#include "markev/solve.hpp"

#include <cmath>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "markev/kernels.hpp"

namespace markev {

const char* solver_name(SolverKind k) {
  switch (k) {
    case SolverKind::householder_qr: return "householder-qr";
    case SolverKind::pivotfree_lu: return "pivotfree-lu";
    case SolverKind::sparse_lu: return "sparse-lu";
  }
  return "?";
}

HouseholderQr::HouseholderQr(DenseMatrix f, double diag_tol) : a_(std::move(f)) {
  const idx t = a_.rows();
  tau_.assign(static_cast<std::size_t>(t), 0.0);
  for (idx k = 0; k < t; ++k) {
    double* ck = a_.col(k);
    const double x0 = ck[k];
    const std::size_t tail = static_cast<std::size_t>(t - k - 1);
    const double sigma2 = kernels::dot(ck + k + 1, ck + k + 1, tail);
    const double normx = std::sqrt(x0 * x0 + sigma2);
    if (normx == 0.0) throw SingularSystemError(0.0);
    const double alpha = x0 >= 0.0 ? -normx : normx;
    const double v0 = x0 - alpha;
    // reflector tail normalized so its leading entry is 1
    if (tail > 0) kernels::scal(1.0 / v0, ck + k + 1, tail);
    tau_[static_cast<std::size_t>(k)] = (normx + std::abs(x0)) / normx;
    ck[k] = alpha;
    if (std::abs(alpha) < diag_tol) throw SingularSystemError(std::abs(alpha));
    // apply reflector to the trailing columns
    const double tk = tau_[static_cast<std::size_t>(k)];
    for (idx j = k + 1; j < t; ++j) {
      double* cj = a_.col(j);
      const double s = cj[k] + kernels::dot(ck + k + 1, cj + k + 1, tail);
      cj[k] -= tk * s;
      kernels::axpy(-tk * s, ck + k + 1, cj + k + 1, tail);
    }
  }
}

void HouseholderQr::apply_qt(std::span<double> x) const {
  const idx t = a_.rows();
  for (idx k = 0; k < t; ++k) {
    const double* ck = a_.col(k);
    const std::size_t tail = static_cast<std::size_t>(t - k - 1);
    const double s = x[static_cast<std::size_t>(k)] +
                     kernels::dot(ck + k + 1, x.data() + k + 1, tail);
    const double tk = tau_[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(k)] -= tk * s;
    kernels::axpy(-tk * s, ck + k + 1, x.data() + k + 1, tail);
  }
}

void HouseholderQr::apply_q(std::span<double> x) const {
  const idx t = a_.rows();
  for (idx k = t - 1; k >= 0; --k) {
    const double* ck = a_.col(k);
    const std::size_t tail = static_cast<std::size_t>(t - k - 1);
    const double s = x[static_cast<std::size_t>(k)] +
                     kernels::dot(ck + k + 1, x.data() + k + 1, tail);
    const double tk = tau_[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(k)] -= tk * s;
    kernels::axpy(-tk * s, ck + k + 1, x.data() + k + 1, tail);
  }
}

void HouseholderQr::back_substitute(std::span<double> x) const {
  for (idx j = a_.rows() - 1; j >= 0; --j) {
    const double* cj = a_.col(j);
    double& xj = x[static_cast<std::size_t>(j)];
    xj /= cj[j];
    kernels::axpy(-xj, cj, x.data(), static_cast<std::size_t>(j));
  }
}

void HouseholderQr::forward_substitute(std::span<double> x) const {
  const idx t = a_.rows();
  for (idx j = 0; j < t; ++j) {
    const double* cj = a_.col(j);
    const double s = kernels::dot(cj, x.data(), static_cast<std::size_t>(j));
    x[static_cast<std::size_t>(j)] = (x[static_cast<std::size_t>(j)] - s) / cj[j];
  }
}

void HouseholderQr::solve(std::span<double> x) const {
  apply_qt(x);
  back_substitute(x);
}

void HouseholderQr::solve_transposed(std::span<double> x) const {
  forward_substitute(x);
  apply_q(x);
}

void HouseholderQr::gram_inverse_apply(std::span<double> x) const {
  forward_substitute(x);
  back_substitute(x);
}

PivotFreeLu::PivotFreeLu(DenseMatrix f, double diag_tol) : a_(std::move(f)) {
  const idx t = a_.rows();
  for (idx k = 0; k < t; ++k) {
    double* ck = a_.col(k);
    const double pivot = ck[k];
    if (std::abs(pivot) < diag_tol) throw SingularSystemError(std::abs(pivot));
    const std::size_t tail = static_cast<std::size_t>(t - k - 1);
    kernels::scal(1.0 / pivot, ck + k + 1, tail);
    for (idx j = k + 1; j < t; ++j) {
      double* cj = a_.col(j);
      if (cj[k] != 0.0) kernels::axpy(-cj[k], ck + k + 1, cj + k + 1, tail);
    }
  }
}

void PivotFreeLu::solve(std::span<double> x) const {
  const idx t = a_.rows();
  for (idx k = 0; k < t; ++k) {
    const double xk = x[static_cast<std::size_t>(k)];
    if (xk != 0.0)
      kernels::axpy(-xk, a_.col(k) + k + 1, x.data() + k + 1,
                    static_cast<std::size_t>(t - k - 1));
  }
  for (idx j = t - 1; j >= 0; --j) {
    const double* cj = a_.col(j);
    double& xj = x[static_cast<std::size_t>(j)];
    xj /= cj[j];
    kernels::axpy(-xj, cj, x.data(), static_cast<std::size_t>(j));
  }
}

void PivotFreeLu::solve_transposed(std::span<double> x) const {
  const idx t = a_.rows();
  // U' w = b (lower triangular with U's diagonal)
  for (idx j = 0; j < t; ++j) {
    const double* cj = a_.col(j);
    const double s = kernels::dot(cj, x.data(), static_cast<std::size_t>(j));
    x[static_cast<std::size_t>(j)] = (x[static_cast<std::size_t>(j)] - s) / cj[j];
  }
  // L' z = w (unit upper triangular)
  for (idx j = t - 1; j >= 0; --j) {
    const double* cj = a_.col(j);
    const std::size_t tail = static_cast<std::size_t>(t - j - 1);
    x[static_cast<std::size_t>(j)] -= kernels::dot(cj + j + 1, x.data() + j + 1, tail);
  }
}

void PivotFreeLu::gram_inverse_apply(std::span<double> x) const {
  std::vector<double> tmp(x.begin(), x.end());
  solve_transposed(tmp);
  std::copy(tmp.begin(), tmp.end(), x.begin());
  solve(x);
}

struct SparseLuFactor::Impl {
  Eigen::SparseMatrix<double> f;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
};

SparseLuFactor::SparseLuFactor(const CscMatrix& f) : impl_(std::make_unique<Impl>()) {
  impl_->f.resize(static_cast<Eigen::Index>(f.rows), static_cast<Eigen::Index>(f.cols));
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(f.row_idx.size());
  for (idx j = 0; j < f.cols; ++j)
    for (idx k = f.col_ptr[j]; k < f.col_ptr[j + 1]; ++k)
      trips.emplace_back(static_cast<int>(f.row_idx[static_cast<std::size_t>(k)]),
                         static_cast<int>(j), f.val[static_cast<std::size_t>(k)]);
  impl_->f.setFromTriplets(trips.begin(), trips.end());
  impl_->f.makeCompressed();
  impl_->lu.compute(impl_->f);
  if (impl_->lu.info() != Eigen::Success)
    throw SingularSystemError(std::string(impl_->lu.lastErrorMessage()));
}

SparseLuFactor::~SparseLuFactor() = default;

idx SparseLuFactor::size() const { return static_cast<idx>(impl_->f.rows()); }

void SparseLuFactor::solve(std::span<double> x) const {
  Eigen::Map<Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXd out = impl_->lu.solve(v);
  v = out;
}

void SparseLuFactor::solve_transposed(std::span<double> x) const {
  Eigen::Map<Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXd out = impl_->lu.transpose().solve(v);
  v = out;
}

void SparseLuFactor::gram_inverse_apply(std::span<double> x) const {
  solve_transposed(x);
  solve(x);
}

}  // namespace markev
