#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "markev/classify.hpp"

namespace markev {

struct MaskEntry {
  idx i, j;  // weight applies to the transition j -> i
  double w;
};

// Transition weights M. Only values at structural nonzeros of T influence
// an expectation, so masks are stored as a pure weight function evaluated
// lazily; small masks additionally carry a dense table so the evaluator
// can run contiguous column dots.
class Mask {
 public:
  using WeightFn = std::function<double(idx i, idx j)>;

  Mask(std::string kind, std::uint64_t chain_token, WeightFn fn,
       bool time_average_only = false, std::string note = {});

  static Mask from_entries(std::uint64_t chain_token, std::vector<MaskEntry> entries,
                           bool time_average_only = false);

  double weight(idx i, idx j) const {
    if (dense_) return (*dense_)(i, j);
    return fn_(i, j);
  }

  const std::string& kind() const { return kind_; }
  bool time_average_only() const { return time_average_only_; }
  std::uint64_t chain_token() const { return chain_token_; }
  const std::string& note() const { return note_; }

  // Explicit entry list; null for builder masks.
  const std::vector<MaskEntry>* entries() const {
    return entries_ ? entries_.get() : nullptr;
  }

  // Dense table covering every (i, j); null until materialized.
  const DenseMatrix* dense() const { return dense_ ? dense_.get() : nullptr; }

  // Evaluate the weight function into a dense n x n table. Cheap for the
  // chains that keep dense storage; keeps lazy masks lazy above that.
  Mask materialized(idx n) const;

 private:
  std::string kind_;
  std::uint64_t chain_token_;
  WeightFn fn_;
  bool time_average_only_;
  std::string note_;
  std::shared_ptr<const std::vector<MaskEntry>> entries_;
  std::shared_ptr<const DenseMatrix> dense_;
};

// --- builders for the canonical events -------------------------------

Mask mask_steps_to_absorption(const StateClassification& cls);
Mask mask_absorption_probability(const StateClassification& cls, idx ergodic_class);
Mask mask_arrivals(const StateClassification& cls, idx state);
Mask mask_departures(const StateClassification& cls, idx state);

// d maps (from, to) pairs to distances; must cover every structural
// nonzero of T with a transient source.
using DistanceTable = std::unordered_map<std::uint64_t, double>;
inline std::uint64_t transition_key(idx from, idx to) {
  return (static_cast<std::uint64_t>(from) << 32) | static_cast<std::uint64_t>(to);
}
Mask mask_distance(const StochasticChain& chain, const StateClassification& cls,
                   const DistanceTable& d);

Mask mask_transition_set(std::uint64_t chain_token,
                         std::function<bool(idx, idx)> predicate, double weight);
Mask mask_transition_set(std::uint64_t chain_token,
                         std::function<bool(idx, idx)> predicate,
                         std::function<double(idx, idx)> weight);

Mask mask_steady_state_loop(const StateClassification& cls, idx state);

// --- lead changes on composite chains --------------------------------

// The composite chain must be the p-fold Kronecker power of an n0-state
// game whose states are ordered so that higher indices are closer to
// winning; `ordering` can override the ranking (ordering[b] = rank of
// base state b), empty means ranking by index.
Mask mask_lead_changes_2p(const StateClassification& cls, idx n0,
                          std::vector<idx> ordering = {});

enum class LeadVariant { leader_passing, permutation_count };

Mask mask_lead_changes_p(const StateClassification& cls, idx n0, int p,
                         LeadVariant variant, std::vector<idx> ordering = {});

}  // namespace markev
