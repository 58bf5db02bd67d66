#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rado/linear_system.hpp"
#include "rado/solutions.hpp"

namespace rado {

/// Search tuning knobs. Defaults are the deterministic sequential setup.
struct search_config {
  /// Cap on the interval length probed; the search never claims anything
  /// about n > max_n.
  int max_n = 64;
  /// Cap on search-tree nodes (color-assignment trials); 0 means unlimited.
  /// In deterministic parallel runs the budget applies per work item so
  /// outcomes stay schedule-independent.
  std::uint64_t node_budget = 0;
  bool symmetry_breaking = true;
  /// Depth at which subtrees become independent work items (0 = sequential).
  int parallel_depth = 0;
  /// When on, witnesses are the lexicographically least valid colorings and
  /// repeated runs return identical outcomes regardless of scheduling.
  bool deterministic_witness = true;
  /// Worker threads for parallel subtree search.
  int jobs = 1;
  /// Cap on stored solution vectors when building the index.
  std::uint64_t index_cap = default_index_cap;
};

/// Node budget ran out before the question was settled. Distinct from
/// "no valid coloring exists": this is an unknown, not a negative.
class budget_exhausted : public std::runtime_error {
 public:
  budget_exhausted(int best_depth, std::uint64_t nodes)
      : std::runtime_error("node budget exhausted after " + std::to_string(nodes) +
                           " nodes; deepest valid prefix " + std::to_string(best_depth)),
        best_depth_(best_depth),
        nodes_(nodes) {}

  int best_depth() const { return best_depth_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  int best_depth_;
  std::uint64_t nodes_;
};

enum class outcome_kind { exact, lower_bound };

/// Result of a Rado-number search. Exact(v) proves v is the least interval
/// length forcing a solution, with an extremal witness of [1,v-1]; Exact(1)
/// carries the empty witness. LowerBound(b) carries a valid coloring of
/// [1,b], so the number, if it exists, exceeds b; `incomplete` marks bounds
/// produced by budget exhaustion rather than by hitting max_n.
struct search_outcome {
  outcome_kind kind;
  int value;
  coloring witness;
  bool incomplete = false;
  std::uint64_t nodes = 0;

  bool trivial_one() const { return kind == outcome_kind::exact && value == 1; }

  static search_outcome exact(int v, coloring w, std::uint64_t nodes) {
    return {outcome_kind::exact, v, std::move(w), false, nodes};
  }
  static search_outcome lower_bound(int b, coloring w, bool incomplete, std::uint64_t nodes) {
    return {outcome_kind::lower_bound, b, std::move(w), incomplete, nodes};
  }
};

/// Verification result: valid, or the lexicographically first solution that
/// is monochromatic (Mono) / zero-sum (ZeroSum) under the coloring.
struct certificate {
  bool valid = false;
  std::optional<solution_vector> violation;
};

/// Color maps that provably preserve the forbidden-solution structure for
/// k-variable solutions: every permutation of the r colors for Mono(r); the
/// affine maps x -> u*x + c (mod m) with u a unit and k*c = 0 (mod m) for
/// ZeroSum(m). Includes the identity; sorted lexicographically.
inline std::vector<std::vector<std::uint8_t>> symmetry_group(const coloring_mode& mode, int k) {
  const int m = mode.colors();
  std::set<std::vector<std::uint8_t>> perms;
  if (mode.kind() == coloring_mode::kind_t::mono) {
    std::vector<std::uint8_t> p(static_cast<std::size_t>(m));
    std::iota(p.begin(), p.end(), std::uint8_t{0});
    do {
      perms.insert(p);
    } while (std::next_permutation(p.begin(), p.end()));
  } else {
    for (int u = 1; u < m; ++u) {
      if (std::gcd(u, m) != 1) continue;
      for (int c = 0; c < m; ++c) {
        if ((static_cast<long long>(k) * c) % m != 0) continue;
        std::vector<std::uint8_t> p(static_cast<std::size_t>(m));
        for (int x = 0; x < m; ++x)
          p[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>((u * x + c) % m);
        perms.insert(std::move(p));
      }
    }
  }
  return {perms.begin(), perms.end()};
}

namespace detail {

// Solution index flattened to contiguous storage for the hot DFS loop.
struct flat_index {
  int k = 0;
  int n = 0;
  std::vector<std::int32_t> entries;       // bucket t occupies solution slots
  std::vector<std::uint32_t> bucket_begin;  // [bucket_begin[t], bucket_begin[t+1])

  explicit flat_index(const solution_index& idx) : k(idx.k()), n(idx.n()) {
    bucket_begin.assign(static_cast<std::size_t>(n) + 2, 0);
    std::uint32_t count = 0;
    for (int t = 1; t <= n; ++t) {
      bucket_begin[static_cast<std::size_t>(t)] = count;
      count += static_cast<std::uint32_t>(idx.bucket(t).size());
    }
    bucket_begin[static_cast<std::size_t>(n) + 1] = count;
    entries.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(k));
    for (int t = 1; t <= n; ++t)
      for (const auto& sol : idx.bucket(t))
        for (int e : sol.entries) entries.push_back(e);
  }
};

struct run_limits {
  std::atomic<std::uint64_t>* node_counter = nullptr;
  std::uint64_t node_budget = 0;  // 0 = unlimited
  const std::atomic<int>* winner_index = nullptr;
  int my_index = 0;
  std::atomic<int>* global_best = nullptr;
};

struct run_result {
  int best_depth = 0;
  std::vector<std::uint8_t> witness;  // colors of 1..best_depth, when recorded
  bool witness_recorded = false;
  bool reached_limit = false;
  bool complete = false;
  bool budget_hit = false;
  bool cancelled = false;
  std::uint64_t nodes = 0;
};

inline int atomic_fetch_max(std::atomic<int>& a, int v) {
  int prev = a.load(std::memory_order_relaxed);
  while (prev < v && !a.compare_exchange_weak(prev, v, std::memory_order_relaxed)) {
  }
  return prev;  // last observed value; <= v iff v is now the max
}

// Depth-first search over colorings of [1, limit], assigning colors to
// 1,2,3,... in ascending color order and pruning a branch as soon as a
// solution whose maximum coordinate is the just-colored integer becomes
// forbidden. With symmetry breaking only prefixes that are lexicographically
// minimal within their color-group orbit are explored.
class prefix_dfs {
 public:
  prefix_dfs(const flat_index& idx, const coloring_mode& mode,
             const std::vector<std::vector<std::uint8_t>>& group, bool use_symmetry, int limit)
      : idx_(idx),
        mono_(mode.kind() == coloring_mode::kind_t::mono),
        m_(mode.colors()),
        limit_(limit) {
    if (use_symmetry) {
      for (const auto& p : group) {
        bool identity = true;
        for (std::size_t i = 0; i < p.size(); ++i)
          if (p[i] != i) identity = false;
        if (!identity) perms_.push_back(p);
      }
    }
  }

  // seed: colors of 1..s, assumed valid and canonical (validated here).
  // root_depth: backtracking floor; pass s to confine the run to the seed's
  // subtree, or 0 to let the run continue past it (resume semantics).
  run_result run(const std::vector<std::uint8_t>& seed, int root_depth, const run_limits& lim,
                 const std::function<void(int, const std::uint8_t*)>& on_new_best = {},
                 std::vector<std::vector<std::uint8_t>>* collect_terminals = nullptr) {
    run_result res;
    const int s = static_cast<int>(seed.size());
    colors_.assign(static_cast<std::size_t>(limit_) + 2, 0);
    try_from_.assign(static_cast<std::size_t>(limit_) + 2, 0);
    untied_at_.assign(perms_.size(), -1);
    became_untied_.assign(static_cast<std::size_t>(limit_) + 2, {});

    // Replay the seed: apply symmetry transitions and re-check validity.
    for (int t = 1; t <= s; ++t) {
      int c = seed[static_cast<std::size_t>(t - 1)];
      if (c >= m_) throw std::invalid_argument("search seed: color out of range");
      for (std::size_t pi = 0; pi < perms_.size(); ++pi) {
        if (untied_at_[pi] != -1) continue;
        int gc = perms_[pi][static_cast<std::size_t>(c)];
        if (gc < c) throw std::invalid_argument("search seed: prefix not canonical");
        if (gc > c) {
          untied_at_[pi] = t;
          became_untied_[static_cast<std::size_t>(t)].push_back(static_cast<int>(pi));
        }
      }
      colors_[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(c);
      try_from_[static_cast<std::size_t>(t)] = c;
      if (forbidden_at(t)) throw std::invalid_argument("search seed: prefix already forbidden");
    }

    res.best_depth = s;
    if (lim.global_best) atomic_fetch_max(*lim.global_best, s);
    record_witness(res, s);
    if (s == limit_ && limit_ >= 0) {
      // Degenerate: the seed is already terminal.
      res.reached_limit = true;
      if (collect_terminals) collect_terminals->push_back(res.witness);
      return res;
    }

    int level = s;
    try_from_[static_cast<std::size_t>(s + 1)] = 0;
    while (true) {
      const int t = level + 1;
      bool extended = false;
      for (int c = try_from_[static_cast<std::size_t>(t)]; c < m_; ++c) {
        ++res.nodes;
        if (lim.node_counter) {
          std::uint64_t used = lim.node_counter->fetch_add(1, std::memory_order_relaxed) + 1;
          if (lim.node_budget && used > lim.node_budget) {
            res.budget_hit = true;
            return res;
          }
        }
        if (lim.winner_index && (res.nodes & 1023) == 0 &&
            lim.winner_index->load(std::memory_order_relaxed) < lim.my_index) {
          res.cancelled = true;
          return res;
        }
        if (!canonical_color(c)) continue;
        colors_[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(c);
        if (forbidden_at(t)) continue;
        // Valid extension.
        if (t > res.best_depth) {
          res.best_depth = t;
          bool record = true;
          if (lim.global_best) record = atomic_fetch_max(*lim.global_best, t) <= t;
          if (t == limit_) record = true;
          if (record) record_witness(res, t);
          if (on_new_best) on_new_best(t, colors_.data() + 1);
        }
        if (t == limit_) {
          if (collect_terminals) {
            collect_terminals->emplace_back(colors_.begin() + 1, colors_.begin() + 1 + limit_);
            continue;  // treat as a leaf; try the next color
          }
          res.reached_limit = true;
          return res;
        }
        apply_transitions(t, c);
        try_from_[static_cast<std::size_t>(t)] = c;
        try_from_[static_cast<std::size_t>(t + 1)] = 0;
        level = t;
        extended = true;
        break;
      }
      if (extended) continue;
      if (level == root_depth) {
        res.complete = true;
        return res;
      }
      undo_transitions(level);
      try_from_[static_cast<std::size_t>(level)] = colors_[static_cast<std::size_t>(level)] + 1;
      --level;
    }
  }

 private:
  void record_witness(run_result& res, int depth) {
    res.witness.assign(colors_.begin() + 1, colors_.begin() + 1 + depth);
    res.witness_recorded = true;
  }

  // With every still-tied permutation g, a canonical prefix must not map to
  // something lexicographically smaller: reject c when g[c] < c.
  bool canonical_color(int c) const {
    for (std::size_t pi = 0; pi < perms_.size(); ++pi) {
      if (untied_at_[pi] != -1) continue;
      if (perms_[pi][static_cast<std::size_t>(c)] < c) return false;
    }
    return true;
  }

  void apply_transitions(int t, int c) {
    auto& log = became_untied_[static_cast<std::size_t>(t)];
    log.clear();
    for (std::size_t pi = 0; pi < perms_.size(); ++pi) {
      if (untied_at_[pi] != -1) continue;
      if (perms_[pi][static_cast<std::size_t>(c)] > c) {
        untied_at_[pi] = t;
        log.push_back(static_cast<int>(pi));
      }
    }
  }

  void undo_transitions(int t) {
    for (int pi : became_untied_[static_cast<std::size_t>(t)])
      untied_at_[static_cast<std::size_t>(pi)] = -1;
    became_untied_[static_cast<std::size_t>(t)].clear();
  }

  // Scan the solutions whose maximum coordinate is t; all their entries are
  // colored once level t is assigned.
  bool forbidden_at(int t) const {
    const std::uint32_t begin = idx_.bucket_begin[static_cast<std::size_t>(t)];
    const std::uint32_t end = idx_.bucket_begin[static_cast<std::size_t>(t) + 1];
    const int k = idx_.k;
    const std::int32_t* base = idx_.entries.data();
    if (mono_) {
      const std::uint8_t c = colors_[static_cast<std::size_t>(t)];
      for (std::uint32_t s = begin; s != end; ++s) {
        const std::int32_t* sol = base + static_cast<std::size_t>(s) * k;
        bool all = true;
        for (int i = 0; i < k; ++i) {
          if (colors_[static_cast<std::size_t>(sol[i])] != c) {
            all = false;
            break;
          }
        }
        if (all) return true;
      }
      return false;
    }
    for (std::uint32_t s = begin; s != end; ++s) {
      const std::int32_t* sol = base + static_cast<std::size_t>(s) * k;
      int sum = 0;
      for (int i = 0; i < k; ++i) sum += colors_[static_cast<std::size_t>(sol[i])];
      if (sum % m_ == 0) return true;
    }
    return false;
  }

  const flat_index& idx_;
  bool mono_;
  int m_;
  int limit_;
  std::vector<std::vector<std::uint8_t>> perms_;
  std::vector<std::uint8_t> colors_;
  std::vector<int> try_from_;
  std::vector<int> untied_at_;
  std::vector<std::vector<int>> became_untied_;
};

struct driver_result {
  int best_depth = 0;
  std::vector<std::uint8_t> witness;
  bool reached_limit = false;
  bool complete = false;  // exhausted everything that was needed
  bool budget_hit = false;
  std::uint64_t nodes = 0;
};

// Runs the full search to `limit`, sequential or parallel per cfg, stopping
// at the first coloring of [1,limit] (the lexicographically least one in
// deterministic mode). Aggregation is schedule-independent when
// cfg.deterministic_witness is on.
inline driver_result run_search(const constraint_system& sys, const coloring_mode& mode, int limit,
                                const search_config& cfg,
                                const std::function<void(int, const std::uint8_t*)>& on_new_best = {}) {
  solution_index idx = solutions_up_to(sys, std::max(limit, 1), cfg.index_cap);
  flat_index flat(idx);
  auto group = symmetry_group(mode, sys.k());
  prefix_dfs dfs(flat, mode, group, cfg.symmetry_breaking, limit);

  driver_result out;
  std::atomic<std::uint64_t> shared_nodes{0};

  const int p = std::min(cfg.parallel_depth, std::max(limit - 1, 0));
  const bool parallel = p > 0 && cfg.jobs > 1 && limit > 1;

  if (!parallel) {
    run_limits lim;
    lim.node_counter = &shared_nodes;
    lim.node_budget = cfg.node_budget;
    run_result r = dfs.run({}, 0, lim, on_new_best);
    out.best_depth = r.best_depth;
    out.witness = r.witness;
    out.reached_limit = r.reached_limit;
    out.complete = r.complete;
    out.budget_hit = r.budget_hit;
    out.nodes = r.nodes;
    return out;
  }

  // Phase 1: enumerate the valid canonical prefixes at depth p, in
  // lexicographic order. These are the independent work items.
  std::vector<std::vector<std::uint8_t>> seeds;
  prefix_dfs seeder(flat, mode, group, cfg.symmetry_breaking, p);
  run_limits seed_lim;
  seed_lim.node_counter = &shared_nodes;
  seed_lim.node_budget = cfg.node_budget;
  run_result seed_run = seeder.run({}, 0, seed_lim, {}, &seeds);
  out.nodes = seed_run.nodes;
  if (seed_run.budget_hit) {
    out.best_depth = seed_run.best_depth;
    out.witness = seed_run.witness;
    out.budget_hit = true;
    return out;
  }
  if (seeds.empty()) {
    // The whole tree dies above the distribution depth.
    out.best_depth = seed_run.best_depth;
    out.witness = seed_run.witness;
    out.complete = true;
    return out;
  }

  // Phase 2: workers consume subtree tasks; results are merged by task index.
  std::vector<run_result> results(seeds.size());
  std::vector<std::unique_ptr<prefix_dfs>> engines;
  std::atomic<std::size_t> next_task{0};
  std::atomic<int> winner{std::numeric_limits<int>::max()};
  std::atomic<int> global_best{0};
  std::vector<std::unique_ptr<std::atomic<std::uint64_t>>> task_nodes;
  if (cfg.deterministic_witness)
    for (std::size_t i = 0; i < seeds.size(); ++i)
      task_nodes.push_back(std::make_unique<std::atomic<std::uint64_t>>(0));

  const int workers = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(seeds.size())));
  auto worker_fn = [&]() {
    prefix_dfs local(flat, mode, group, cfg.symmetry_breaking, limit);
    while (true) {
      std::size_t i = next_task.fetch_add(1);
      if (i >= seeds.size()) return;
      if (winner.load(std::memory_order_relaxed) < static_cast<int>(i)) {
        results[i].cancelled = true;
        continue;
      }
      run_limits lim;
      lim.node_counter = cfg.deterministic_witness ? task_nodes[i].get() : &shared_nodes;
      lim.node_budget = cfg.node_budget;
      lim.winner_index = &winner;
      lim.my_index = static_cast<int>(i);
      lim.global_best = &global_best;
      results[i] = local.run(seeds[i], p, lim);
      if (results[i].reached_limit) {
        int prev = winner.load(std::memory_order_relaxed);
        while (static_cast<int>(i) < prev &&
               !winner.compare_exchange_weak(prev, static_cast<int>(i),
                                             std::memory_order_relaxed)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
  for (auto& th : pool) th.join();

  for (const auto& r : results) out.nodes += r.nodes;

  // Merge in task-index order. Tasks below the eventual winner index are
  // never cancelled and (in deterministic mode) carry their own budgets, so
  // the first index reaching the limit is schedule-independent.
  int first_winner = -1;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].reached_limit) {
      first_winner = static_cast<int>(i);
      break;
    }
  }
  if (first_winner >= 0) {
    out.reached_limit = true;
    out.best_depth = limit;
    out.witness = results[static_cast<std::size_t>(first_winner)].witness;
    return out;
  }
  // No winner means no task was ever cancelled: every result stands on its
  // own, so take the first task attaining the overall deepest level.
  int best = seed_run.best_depth;
  const std::vector<std::uint8_t>* best_witness = &seed_run.witness;
  bool any_budget = false;
  for (const auto& r : results) {
    if (r.budget_hit) any_budget = true;
    if (r.witness_recorded && r.best_depth > best) {
      best = r.best_depth;
      best_witness = &r.witness;
    }
  }
  out.best_depth = best;
  out.witness = *best_witness;
  out.budget_hit = any_budget;
  out.complete = !any_budget;
  return out;
}

}  // namespace detail

/// A coloring of [1,n] admitting no forbidden solution, or nullopt when the
/// search proves none exists. With deterministic_witness on, the returned
/// coloring is the lexicographically least valid one. Budget exhaustion
/// throws budget_exhausted: an unknown, never conflated with "none exists".
inline std::optional<coloring> exists_valid_coloring(const constraint_system& sys,
                                                     const coloring_mode& mode, int n,
                                                     const search_config& cfg) {
  if (n < 1) throw std::invalid_argument("exists_valid_coloring: n must be >= 1");
  if (n > cfg.max_n) throw std::invalid_argument("exists_valid_coloring: n exceeds cfg.max_n");
  auto res = detail::run_search(sys, mode, n, cfg);
  if (res.reached_limit)
    return coloring(std::move(res.witness));
  if (res.budget_hit) throw budget_exhausted(res.best_depth, res.nodes);
  return std::nullopt;
}

/// Computes R(sys, mode) by one depth-first search over colorings of
/// [1, max_n]: the answer is 1 + the deepest level at which a valid prefix
/// exists. Hitting max_n with a valid coloring in hand yields a LowerBound
/// (never a claim of nonexistence).
inline search_outcome rado_number(const constraint_system& sys, const coloring_mode& mode,
                                  const search_config& cfg) {
  if (cfg.max_n < 1) throw std::invalid_argument("rado_number: max_n must be >= 1");
  auto res = detail::run_search(sys, mode, cfg.max_n, cfg);
  if (res.reached_limit)
    return search_outcome::lower_bound(cfg.max_n, coloring(std::move(res.witness)), false,
                                       res.nodes);
  if (res.budget_hit)
    return search_outcome::lower_bound(res.best_depth, coloring(std::move(res.witness)), true,
                                       res.nodes);
  return search_outcome::exact(res.best_depth + 1, coloring(std::move(res.witness)), res.nodes);
}

/// "Valid", or the lexicographically first solution inside [1, chi.n()] that
/// the mode forbids.
inline certificate verify_coloring(const constraint_system& sys, const coloring& chi,
                                   const coloring_mode& mode) {
  if (chi.max_color() >= mode.colors())
    throw std::invalid_argument("verify_coloring: color out of range for mode");
  const bool mono = mode.kind() == coloring_mode::kind_t::mono;
  const int m = mode.colors();
  certificate cert;
  cert.valid = true;
  detail::for_each_solution_lex(sys, chi.n(), [&](const std::vector<int>& point) {
    bool bad;
    if (mono) {
      bad = true;
      int first = chi.values[static_cast<std::size_t>(point[0]) - 1];
      for (int e : point)
        if (chi.values[static_cast<std::size_t>(e) - 1] != first) {
          bad = false;
          break;
        }
    } else {
      int sum = 0;
      for (int e : point) sum += chi.values[static_cast<std::size_t>(e) - 1];
      bad = sum % m == 0;
    }
    if (bad) {
      cert.valid = false;
      cert.violation = solution_vector(point);
      return false;
    }
    return true;
  });
  return cert;
}

}  // namespace rado
