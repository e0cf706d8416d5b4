#pragma once

#include <memory>
#include <span>

#include "markev/matrix.hpp"

namespace markev {

enum class SolverKind { householder_qr, pivotfree_lu, sparse_lu };

const char* solver_name(SolverKind k);

// Factorization of a square nonsingular matrix F. Solves run in place.
class Factorization {
 public:
  virtual ~Factorization() = default;
  virtual idx size() const = 0;
  virtual void solve(std::span<double> x) const = 0;             // F x = b
  virtual void solve_transposed(std::span<double> x) const = 0;  // F' x = b
  // x := F^{-1} F^{-T} x, the map whose dominant eigenvalue is the
  // squared 2-norm of F^{-1}.
  virtual void gram_inverse_apply(std::span<double> x) const = 0;
  virtual SolverKind kind() const = 0;
};

// Orthogonal-triangular factorization via Householder reflections.
// gram_inverse_apply reduces to two triangular solves with R because
// F^{-1}F^{-T} = R^{-1}R^{-T}.
class HouseholderQr final : public Factorization {
 public:
  // Throws SingularSystemError if a diagonal of R falls below diag_tol.
  explicit HouseholderQr(DenseMatrix f, double diag_tol = 1e-14);

  idx size() const override { return a_.rows(); }
  void solve(std::span<double> x) const override;
  void solve_transposed(std::span<double> x) const override;
  void gram_inverse_apply(std::span<double> x) const override;
  SolverKind kind() const override { return SolverKind::householder_qr; }

 private:
  void apply_qt(std::span<double> x) const;
  void apply_q(std::span<double> x) const;
  void back_substitute(std::span<double> x) const;     // R x = b
  void forward_substitute(std::span<double> x) const;  // R' x = b
  DenseMatrix a_;  // R in the upper triangle, reflector tails below
  std::vector<double> tau_;
};

// LU without pivoting; valid for matrices diagonally dominant by columns
// such as I - A_T.
class PivotFreeLu final : public Factorization {
 public:
  explicit PivotFreeLu(DenseMatrix f, double diag_tol = 1e-14);

  idx size() const override { return a_.rows(); }
  void solve(std::span<double> x) const override;
  void solve_transposed(std::span<double> x) const override;
  void gram_inverse_apply(std::span<double> x) const override;
  SolverKind kind() const override { return SolverKind::pivotfree_lu; }

 private:
  DenseMatrix a_;  // U upper including diagonal, unit-L strictly below
};

// Sparse LU (Eigen) for CSC-stored chains.
class SparseLuFactor final : public Factorization {
 public:
  explicit SparseLuFactor(const CscMatrix& f);
  ~SparseLuFactor() override;

  idx size() const override;
  void solve(std::span<double> x) const override;
  void solve_transposed(std::span<double> x) const override;
  void gram_inverse_apply(std::span<double> x) const override;
  SolverKind kind() const override { return SolverKind::sparse_lu; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace markev
