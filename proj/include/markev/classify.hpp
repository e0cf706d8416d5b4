#pragma once

#include <vector>

#include "markev/chain.hpp"

namespace markev {

struct StateClass {
  std::vector<idx> states;  // original indices, ascending
  bool ergodic = false;
  double leak = 0.0;        // largest per-column probability mass leaving the class
  bool leak_warning = false;  // ergodic with leak in (tol, 1e-6)
};

// Partition of the states into strongly connected classes, ordered
// canonically: transient classes first in a topological order of the
// condensation (predecessors before successors, ties by smallest original
// state index), ergodic classes last. Applying perm to T produces the
// block lower-triangular canonical form.
class StateClassification {
 public:
  StateClassification(std::vector<StateClass> classes, idx n, std::uint64_t token);

  const std::vector<StateClass>& classes() const { return classes_; }
  idx n() const { return n_; }
  idx transient_count() const { return t_; }

  // perm[k] = original index of the state at canonical position k.
  const std::vector<idx>& perm() const { return perm_; }
  idx canonical_position(idx original) const { return inv_perm_[static_cast<std::size_t>(original)]; }

  idx class_of(idx original) const { return class_of_[static_cast<std::size_t>(original)]; }
  bool is_ergodic_state(idx original) const {
    return classes_[static_cast<std::size_t>(class_of(original))].ergodic;
  }
  bool is_absorbing_state(idx original) const;

  std::vector<idx> transient_states() const;  // canonical order
  std::vector<idx> absorbing_states() const;

  idx ergodic_class_count() const { return static_cast<idx>(classes_.size()) - first_ergodic_; }
  // Index into classes() of the m-th ergodic class (m = 0, 1, ...).
  idx ergodic_class(idx m) const;

  std::uint64_t chain_token() const { return chain_token_; }

 private:
  std::vector<StateClass> classes_;
  std::vector<idx> perm_, inv_perm_;
  std::vector<idx> class_of_;
  idx n_, t_;
  idx first_ergodic_;
  std::uint64_t chain_token_;
};

StateClassification classify_states(const StochasticChain& chain);

// Blocks of the canonical form [A_T 0; B_T E_T], all in canonical state
// order and in the same storage kind as the chain.
struct CanonicalBlocks {
  TransitionMatrix a_t;  // t x t
  TransitionMatrix b_t;  // (n-t) x t
  TransitionMatrix e_t;  // (n-t) x (n-t), block diagonal
};

CanonicalBlocks canonical_blocks(const StochasticChain& chain,
                                 const StateClassification& cls);

}  // namespace markev
