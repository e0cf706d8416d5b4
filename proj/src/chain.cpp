#include "markev/chain.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <unordered_set>

namespace markev {

namespace {

std::atomic<std::uint64_t> g_next_token{1};

void check_labels(const std::vector<std::string>& labels, idx n) {
  if (static_cast<idx>(labels.size()) != n)
    throw ValidationError("label count does not match state count");
  std::unordered_set<std::string_view> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second)
      throw ValidationError("duplicate state label: " + l);
}

}  // namespace

DistributionVector DistributionVector::validate(std::vector<double> mu, double tol) {
  if (mu.empty()) throw ValidationError("distribution is empty");
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!std::isfinite(mu[i]))
      throw ValidationError("distribution entry " + std::to_string(i) + " is not finite");
    if (mu[i] < -tol)
      throw NegativeEntryError(static_cast<idx>(i), 0, mu[i]);
    if (mu[i] < 0.0) mu[i] = 0.0;
    s += mu[i];
  }
  if (std::abs(s - 1.0) > tol)
    throw ValidationError("distribution sums to " + std::to_string(s) + ", not 1");
  for (double& v : mu) v /= s;
  return DistributionVector(std::move(mu));
}

DistributionVector DistributionVector::delta(idx n, idx state) {
  if (state < 0 || state >= n) throw UnknownStateError(state);
  std::vector<double> mu(static_cast<std::size_t>(n), 0.0);
  mu[static_cast<std::size_t>(state)] = 1.0;
  return DistributionVector(std::move(mu));
}

StochasticChain::StochasticChain(TransitionMatrix T, std::vector<std::string> labels,
                                 double tol)
    : T_(std::move(T)),
      labels_(std::move(labels)),
      tol_(tol),
      token_(g_next_token.fetch_add(1)) {}

std::vector<std::string> StochasticChain::default_labels(idx n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (idx i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i + 1));
  return labels;
}

StochasticChain StochasticChain::validate(DenseMatrix raw, std::vector<std::string> labels,
                                          ChainOptions opts) {
  if (raw.rows() != raw.cols()) throw NonSquareError(raw.rows(), raw.cols());
  const idx n = raw.rows();
  if (n < 1) throw ValidationError("chain must have at least one state");
  if (labels.empty()) labels = default_labels(n);
  check_labels(labels, n);

  for (idx j = 0; j < n; ++j) {
    double* c = raw.col(j);
    double s = 0.0;
    for (idx i = 0; i < n; ++i) {
      if (!std::isfinite(c[i]))
        throw ValidationError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is not finite");
      if (c[i] < -opts.tol) throw NegativeEntryError(i, j, c[i]);
      if (c[i] < 0.0) c[i] = 0.0;
      s += c[i];
    }
    if (std::abs(s - 1.0) > opts.tol) throw NonStochasticError(j, std::abs(s - 1.0));
    for (idx i = 0; i < n; ++i) c[i] /= s;
  }

  if (n > opts.dense_threshold) {
    CscBuilder b(n, n);
    for (idx j = 0; j < n; ++j) {
      const double* c = raw.col(j);
      for (idx i = 0; i < n; ++i)
        if (c[i] != 0.0) b.add(i, j, c[i]);
    }
    return StochasticChain(TransitionMatrix(b.build()), std::move(labels), opts.tol);
  }
  return StochasticChain(TransitionMatrix(std::move(raw)), std::move(labels), opts.tol);
}

StochasticChain StochasticChain::validate(CscMatrix raw, std::vector<std::string> labels,
                                          ChainOptions opts) {
  if (raw.rows != raw.cols) throw NonSquareError(raw.rows, raw.cols);
  const idx n = raw.rows;
  if (n < 1) throw ValidationError("chain must have at least one state");
  if (labels.empty()) labels = default_labels(n);
  check_labels(labels, n);

  bool has_zero = false;
  for (idx j = 0; j < n; ++j) {
    double s = 0.0;
    idx prev_row = -1;
    for (idx k = raw.col_ptr[j]; k < raw.col_ptr[j + 1]; ++k) {
      const idx i = raw.row_idx[static_cast<std::size_t>(k)];
      if (i < 0 || i >= n) throw SchemaError("row index out of range in column " + std::to_string(j));
      if (i <= prev_row) throw SchemaError("unsorted or duplicate row indices in column " + std::to_string(j));
      prev_row = i;
      double& v = raw.val[static_cast<std::size_t>(k)];
      if (!std::isfinite(v))
        throw ValidationError("entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") is not finite");
      if (v < -opts.tol) throw NegativeEntryError(i, j, v);
      if (v < 0.0) v = 0.0;
      if (v == 0.0) has_zero = true;
      s += v;
    }
    if (std::abs(s - 1.0) > opts.tol) throw NonStochasticError(j, std::abs(s - 1.0));
    for (idx k = raw.col_ptr[j]; k < raw.col_ptr[j + 1]; ++k)
      raw.val[static_cast<std::size_t>(k)] /= s;
  }
  if (has_zero) {
    CscMatrix compact(n, n);
    compact.row_idx.reserve(raw.row_idx.size());
    compact.val.reserve(raw.val.size());
    for (idx j = 0; j < n; ++j) {
      for (idx k = raw.col_ptr[j]; k < raw.col_ptr[j + 1]; ++k)
        if (raw.val[static_cast<std::size_t>(k)] != 0.0) {
          compact.row_idx.push_back(raw.row_idx[static_cast<std::size_t>(k)]);
          compact.val.push_back(raw.val[static_cast<std::size_t>(k)]);
        }
      compact.col_ptr[static_cast<std::size_t>(j) + 1] = static_cast<idx>(compact.row_idx.size());
    }
    raw = std::move(compact);
  }

  if (n <= opts.dense_threshold) {
    DenseMatrix d(n, n);
    for (idx j = 0; j < n; ++j)
      for (idx k = raw.col_ptr[j]; k < raw.col_ptr[j + 1]; ++k)
        d(raw.row_idx[k], j) = raw.val[static_cast<std::size_t>(k)];
    return StochasticChain(TransitionMatrix(std::move(d)), std::move(labels), opts.tol);
  }
  return StochasticChain(TransitionMatrix(std::move(raw)), std::move(labels), opts.tol);
}

idx StochasticChain::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == name) return static_cast<idx>(i);
  throw UnknownStateError(std::string(name));
}

idx StochasticChain::resolve_state(std::string_view name_or_index) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == name_or_index) return static_cast<idx>(i);
  idx value = -1;
  auto [p, ec] = std::from_chars(name_or_index.data(),
                                 name_or_index.data() + name_or_index.size(), value);
  if (ec == std::errc() && p == name_or_index.data() + name_or_index.size() &&
      value >= 0 && value < n())
    return value;
  throw UnknownStateError(std::string(name_or_index));
}

StochasticChain kron_compose(const StochasticChain& c1, const StochasticChain& c2,
                             ChainOptions opts) {
  const idx n1 = c1.n(), n2 = c2.n();
  if (n1 > opts.max_states / n2) throw SizeLimitError(n1 * n2, opts.max_states);
  const idx n = n1 * n2;

  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (idx i1 = 0; i1 < n1; ++i1)
    for (idx i2 = 0; i2 < n2; ++i2)
      labels.push_back("(" + c1.label(i1) + "," + c2.label(i2) + ")");

  const double tol = std::max(c1.tol(), c2.tol());
  ChainOptions out_opts = opts;
  out_opts.tol = 2 * tol;

  if (n <= opts.dense_threshold && c1.T().is_dense() && c2.T().is_dense()) {
    DenseMatrix d(n, n);
    for (idx j1 = 0; j1 < n1; ++j1)
      for (idx j2 = 0; j2 < n2; ++j2) {
        const idx j = j1 * n2 + j2;
        c1.T().for_col(j1, [&](idx i1, double v1) {
          c2.T().for_col(j2, [&](idx i2, double v2) { d(i1 * n2 + i2, j) = v1 * v2; });
        });
      }
    return StochasticChain::validate(std::move(d), std::move(labels), out_opts);
  }

  CscMatrix m(n, n);
  idx nnz = 0;
  const std::size_t total = static_cast<std::size_t>(c1.T().nnz()) *
                            static_cast<std::size_t>(c2.T().nnz());
  m.row_idx.reserve(total);
  m.val.reserve(total);
  for (idx j1 = 0; j1 < n1; ++j1)
    for (idx j2 = 0; j2 < n2; ++j2) {
      const idx j = j1 * n2 + j2;
      c1.T().for_col(j1, [&](idx i1, double v1) {
        c2.T().for_col(j2, [&](idx i2, double v2) {
          m.row_idx.push_back(i1 * n2 + i2);
          m.val.push_back(v1 * v2);
          ++nnz;
        });
      });
      m.col_ptr[static_cast<std::size_t>(j) + 1] = nnz;
    }
  return StochasticChain::validate(std::move(m), std::move(labels), out_opts);
}

DistributionVector kron_distribution(const DistributionVector& mu1,
                                     const DistributionVector& mu2) {
  std::vector<double> mu;
  mu.reserve(static_cast<std::size_t>(mu1.n() * mu2.n()));
  for (idx i1 = 0; i1 < mu1.n(); ++i1)
    for (idx i2 = 0; i2 < mu2.n(); ++i2) mu.push_back(mu1[i1] * mu2[i2]);
  return DistributionVector::validate(std::move(mu), 1e-12 + 1e-9);
}

}  // namespace markev
