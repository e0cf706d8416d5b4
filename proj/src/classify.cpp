#include "markev/classify.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace markev {

namespace {

// Iterative Tarjan SCC over the directed graph of structural nonzeros
// with probability > tol. Edge j -> i for T[i][j] > tol (movement of
// probability mass from state j to state i).
struct Tarjan {
  const TransitionMatrix& T;
  double tol;
  idx n;
  std::vector<idx> low, num, comp;
  std::vector<idx> stack;
  std::vector<bool> on_stack;
  idx counter = 0, ncomp = 0;

  explicit Tarjan(const TransitionMatrix& T, double tol)
      : T(T),
        tol(tol),
        n(T.cols()),
        low(static_cast<std::size_t>(n)),
        num(static_cast<std::size_t>(n), -1),
        comp(static_cast<std::size_t>(n), -1),
        on_stack(static_cast<std::size_t>(n), false) {}

  void run() {
    // explicit DFS stack: (node, child cursor into adjacency)
    std::vector<std::vector<idx>> adj(static_cast<std::size_t>(n));
    for (idx j = 0; j < n; ++j)
      T.for_col(j, [&](idx i, double v) {
        if (v > tol && i != j) adj[static_cast<std::size_t>(j)].push_back(i);
      });

    std::vector<std::pair<idx, std::size_t>> dfs;
    for (idx root = 0; root < n; ++root) {
      if (num[static_cast<std::size_t>(root)] != -1) continue;
      dfs.emplace_back(root, 0);
      while (!dfs.empty()) {
        auto& [v, cursor] = dfs.back();
        if (cursor == 0) {
          num[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
          stack.push_back(v);
          on_stack[static_cast<std::size_t>(v)] = true;
        }
        const auto& edges = adj[static_cast<std::size_t>(v)];
        bool descended = false;
        while (cursor < edges.size()) {
          const idx w = edges[cursor++];
          if (num[static_cast<std::size_t>(w)] == -1) {
            dfs.emplace_back(w, 0);
            descended = true;
            break;
          }
          if (on_stack[static_cast<std::size_t>(w)])
            low[static_cast<std::size_t>(v)] =
                std::min(low[static_cast<std::size_t>(v)], num[static_cast<std::size_t>(w)]);
        }
        if (descended) continue;
        if (low[static_cast<std::size_t>(v)] == num[static_cast<std::size_t>(v)]) {
          while (true) {
            const idx w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            comp[static_cast<std::size_t>(w)] = ncomp;
            if (w == v) break;
          }
          ++ncomp;
        }
        const idx child = v;
        dfs.pop_back();
        if (!dfs.empty()) {
          idx parent = dfs.back().first;
          low[static_cast<std::size_t>(parent)] = std::min(
              low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(child)]);
        }
      }
    }
  }
};

}  // namespace

StateClassification classify_states(const StochasticChain& chain) {
  const idx n = chain.n();
  const double tol = chain.tol();
  Tarjan tarjan(chain.T(), tol);
  tarjan.run();
  const idx ncomp = tarjan.ncomp;
  const std::vector<idx>& comp = tarjan.comp;

  std::vector<StateClass> classes(static_cast<std::size_t>(ncomp));
  for (idx v = 0; v < n; ++v)
    classes[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].states.push_back(v);
  for (auto& c : classes) std::sort(c.states.begin(), c.states.end());

  // Per-column mass leaving the class decides ergodicity.
  for (auto& c : classes) {
    double max_leak = 0.0;
    for (const idx j : c.states) {
      double out = 0.0;
      chain.T().for_col(j, [&](idx i, double v) {
        if (comp[static_cast<std::size_t>(i)] != comp[static_cast<std::size_t>(j)]) out += v;
      });
      max_leak = std::max(max_leak, out);
    }
    c.leak = max_leak;
    c.ergodic = max_leak <= tol;
    // Leak in (tol, 1e-6]: transient by the rule, but close enough to
    // closed that the caller should know ("numerically ergodic").
    c.leak_warning = !c.ergodic && max_leak <= 1e-6;
  }

  // Condensation edges between transient classes, for the topological
  // ordering (predecessors first). Kahn with a min-heap on the smallest
  // original state index keeps the order deterministic.
  std::vector<idx> class_min(static_cast<std::size_t>(ncomp));
  for (idx c = 0; c < ncomp; ++c)
    class_min[static_cast<std::size_t>(c)] = classes[static_cast<std::size_t>(c)].states.front();

  std::vector<std::vector<idx>> succ(static_cast<std::size_t>(ncomp));
  std::vector<idx> indeg(static_cast<std::size_t>(ncomp), 0);
  for (idx j = 0; j < n; ++j) {
    const idx cj = comp[static_cast<std::size_t>(j)];
    if (classes[static_cast<std::size_t>(cj)].ergodic) continue;
    chain.T().for_col(j, [&](idx i, double v) {
      const idx ci = comp[static_cast<std::size_t>(i)];
      if (v > tol && ci != cj && !classes[static_cast<std::size_t>(ci)].ergodic)
        succ[static_cast<std::size_t>(cj)].push_back(ci);
    });
  }
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (const idx c : s) ++indeg[static_cast<std::size_t>(c)];
  }

  auto cmp = [&](idx a, idx b) {
    return class_min[static_cast<std::size_t>(a)] > class_min[static_cast<std::size_t>(b)];
  };
  std::priority_queue<idx, std::vector<idx>, decltype(cmp)> ready(cmp);
  for (idx c = 0; c < ncomp; ++c)
    if (!classes[static_cast<std::size_t>(c)].ergodic && indeg[static_cast<std::size_t>(c)] == 0)
      ready.push(c);

  std::vector<StateClass> ordered;
  ordered.reserve(static_cast<std::size_t>(ncomp));
  while (!ready.empty()) {
    const idx c = ready.top();
    ready.pop();
    ordered.push_back(std::move(classes[static_cast<std::size_t>(c)]));
    for (const idx s : succ[static_cast<std::size_t>(c)])
      if (--indeg[static_cast<std::size_t>(s)] == 0) ready.push(s);
  }

  // Ergodic classes last, by smallest original index.
  std::vector<idx> ergodic_ids;
  for (idx c = 0; c < ncomp; ++c)
    if (classes[static_cast<std::size_t>(c)].ergodic) ergodic_ids.push_back(c);
  std::sort(ergodic_ids.begin(), ergodic_ids.end(), [&](idx a, idx b) {
    return class_min[static_cast<std::size_t>(a)] < class_min[static_cast<std::size_t>(b)];
  });
  for (const idx c : ergodic_ids) ordered.push_back(std::move(classes[static_cast<std::size_t>(c)]));

  return StateClassification(std::move(ordered), n, chain.token());
}

StateClassification::StateClassification(std::vector<StateClass> classes, idx n,
                                         std::uint64_t token)
    : classes_(std::move(classes)), n_(n), chain_token_(token) {
  perm_.reserve(static_cast<std::size_t>(n));
  class_of_.assign(static_cast<std::size_t>(n), -1);
  t_ = 0;
  first_ergodic_ = static_cast<idx>(classes_.size());
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    if (!classes_[c].ergodic) {
      t_ += static_cast<idx>(classes_[c].states.size());
    } else {
      first_ergodic_ = std::min<idx>(first_ergodic_, static_cast<idx>(c));
    }
    for (const idx s : classes_[c].states) {
      perm_.push_back(s);
      class_of_[static_cast<std::size_t>(s)] = static_cast<idx>(c);
    }
  }
  inv_perm_.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t k = 0; k < perm_.size(); ++k)
    inv_perm_[static_cast<std::size_t>(perm_[k])] = static_cast<idx>(k);
}

bool StateClassification::is_absorbing_state(idx original) const {
  const StateClass& c = classes_[static_cast<std::size_t>(class_of(original))];
  return c.ergodic && c.states.size() == 1;
}

std::vector<idx> StateClassification::transient_states() const {
  return {perm_.begin(), perm_.begin() + t_};
}

std::vector<idx> StateClassification::absorbing_states() const {
  std::vector<idx> out;
  for (const auto& c : classes_)
    if (c.ergodic && c.states.size() == 1) out.push_back(c.states.front());
  return out;
}

idx StateClassification::ergodic_class(idx m) const {
  const idx id = first_ergodic_ + m;
  if (m < 0 || id >= static_cast<idx>(classes_.size())) throw UnknownClassError(m);
  return id;
}

CanonicalBlocks canonical_blocks(const StochasticChain& chain,
                                 const StateClassification& cls) {
  const idx n = chain.n();
  const idx t = cls.transient_count();
  const std::vector<idx>& perm = cls.perm();

  // Every transient class must leak; otherwise the classification is
  // inconsistent and rho(A_T) < 1 cannot be argued.
  for (const auto& c : cls.classes())
    if (!c.ergodic && c.leak <= chain.tol())
      throw std::logic_error("transient class with no outgoing mass: classification bug");

  auto canon = [&](idx k) { return perm[static_cast<std::size_t>(k)]; };

  if (chain.T().is_dense()) {
    DenseMatrix a(t, t), b(n - t, t), e(n - t, n - t);
    for (idx l = 0; l < t; ++l) {
      const idx j = canon(l);
      chain.T().for_col(j, [&](idx i, double v) {
        const idx ki = cls.canonical_position(i);
        if (ki < t)
          a(ki, l) = v;
        else
          b(ki - t, l) = v;
      });
    }
    for (idx l = t; l < n; ++l) {
      const idx j = canon(l);
      chain.T().for_col(j, [&](idx i, double v) {
        const idx ki = cls.canonical_position(i);
        if (ki >= t) e(ki - t, l - t) = v;
        // entries with ki < t would sit in the structurally-zero upper
        // block; they can only be sub-tolerance leak and are dropped.
      });
    }
    return CanonicalBlocks{TransitionMatrix(std::move(a)), TransitionMatrix(std::move(b)),
                           TransitionMatrix(std::move(e))};
  }

  CscBuilder a(t, t), b(n - t, t), e(n - t, n - t);
  for (idx l = 0; l < n; ++l) {
    const idx j = canon(l);
    chain.T().for_col(j, [&](idx i, double v) {
      const idx ki = cls.canonical_position(i);
      if (l < t) {
        if (ki < t)
          a.add(ki, l, v);
        else
          b.add(ki - t, l, v);
      } else if (ki >= t) {
        e.add(ki - t, l - t, v);
      }
    });
  }
  return CanonicalBlocks{TransitionMatrix(a.build()), TransitionMatrix(b.build()),
                         TransitionMatrix(e.build())};
}

}  // namespace markev
