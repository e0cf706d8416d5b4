#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "markev/matrix.hpp"

namespace markev {

struct ChainOptions {
  double tol = 1e-9;           // stochastic validation tolerance
  idx dense_threshold = 512;   // CSC storage above this state count
  idx max_states = 2'000'000;  // guard for composite construction
};

// Nonnegative vector summing to 1 (within tolerance at construction,
// renormalized exactly afterwards).
class DistributionVector {
 public:
  static DistributionVector validate(std::vector<double> mu, double tol = 1e-9);
  static DistributionVector delta(idx n, idx state);

  idx n() const { return static_cast<idx>(mu_.size()); }
  double operator[](idx i) const { return mu_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return mu_; }

 private:
  explicit DistributionVector(std::vector<double> mu) : mu_(std::move(mu)) {}
  std::vector<double> mu_;
};

// Validated column-stochastic transition matrix with state labels.
// Immutable after construction; safe to share across threads.
class StochasticChain {
 public:
  static StochasticChain validate(DenseMatrix raw, std::vector<std::string> labels = {},
                                  ChainOptions opts = {});
  static StochasticChain validate(CscMatrix raw, std::vector<std::string> labels = {},
                                  ChainOptions opts = {});

  idx n() const { return T_.rows(); }
  const TransitionMatrix& T() const { return T_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(idx i) const { return labels_[static_cast<std::size_t>(i)]; }
  idx index_of(std::string_view name) const;  // throws UnknownStateError
  // Accepts a label or a decimal index.
  idx resolve_state(std::string_view name_or_index) const;
  double tol() const { return tol_; }
  std::uint64_t token() const { return token_; }

  static std::vector<std::string> default_labels(idx n);

 private:
  StochasticChain(TransitionMatrix T, std::vector<std::string> labels, double tol);
  TransitionMatrix T_;
  std::vector<std::string> labels_;
  double tol_;
  std::uint64_t token_;
};

// Kronecker composition: state (i1, i2) of the composite maps to index
// i1 * n2 + i2, and T[(i1,i2),(j1,j2)] = T1[i1,j1] * T2[i2,j2].
StochasticChain kron_compose(const StochasticChain& c1, const StochasticChain& c2,
                             ChainOptions opts = {});
DistributionVector kron_distribution(const DistributionVector& mu1,
                                     const DistributionVector& mu2);

}  // namespace markev
