#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rado/linear_system.hpp"

namespace rado {

/// A point of [1,n]^k satisfying a system's relation and order constraints.
struct solution_vector {
  std::vector<int> entries;

  solution_vector() = default;
  explicit solution_vector(std::vector<int> e) : entries(std::move(e)) {}

  int max_entry() const {
    int m = 0;
    for (int e : entries) m = std::max(m, e);
    return m;
  }

  friend bool operator==(const solution_vector&, const solution_vector&) = default;
  friend auto operator<=>(const solution_vector& a, const solution_vector& b) {
    return a.entries <=> b.entries;
  }
};

/// Checked constructor: rejects entries that do not solve the system.
inline solution_vector make_solution(const constraint_system& sys, std::vector<int> entries) {
  if (!sys.satisfied_by(entries))
    throw std::invalid_argument("solution_vector: entries do not satisfy the system");
  return solution_vector(std::move(entries));
}

/// Raised when enumeration exceeds its vector cap. The index is unusable;
/// `reached` is only a scale hint (solutions are produced in lexicographic,
/// not max-coordinate, order).
class index_budget_error : public std::runtime_error {
 public:
  index_budget_error(int reached, std::uint64_t cap)
      : std::runtime_error("solution index cap of " + std::to_string(cap) +
                           " vectors exceeded near max coordinate " + std::to_string(reached)),
        reached_(reached) {}

  /// Max coordinate of the solution that tripped the cap.
  int reached() const { return reached_; }

 private:
  int reached_;
};

namespace detail {

// Visits solutions in lexicographic order of the full vector. For equality
// relations the last coordinate is solved from the first k-1 (and accepted
// only when the residual is divisible and lands in [1,n]); strict
// inequalities enumerate all k coordinates. Visitor returns false to stop.
template <typename Visitor>
bool for_each_solution_lex(const constraint_system& sys, int n, Visitor&& visit) {
  const int k = sys.k();
  if (n < 1) return true;
  std::vector<int> point(static_cast<std::size_t>(k), 1);
  if (sys.rel() == relation::equal) {
    const long long ck = sys.coeff(k - 1);
    const int free_vars = k - 1;
    if (free_vars == 0) {
      // Single variable: c*x + d = 0.
      long long residual = -sys.constant();
      if (residual % ck == 0) {
        long long x = residual / ck;
        if (x >= 1 && x <= n) {
          point[0] = static_cast<int>(x);
          if (sys.order_holds(point)) return visit(point);
        }
      }
      return true;
    }
    std::vector<int> free_point(static_cast<std::size_t>(free_vars), 1);
    while (true) {
      long long partial = sys.constant();
      for (int i = 0; i < free_vars; ++i)
        partial += sys.coeff(i) * free_point[static_cast<std::size_t>(i)];
      long long residual = -partial;
      if (residual % ck == 0) {
        long long last = residual / ck;
        if (last >= 1 && last <= n) {
          for (int i = 0; i < free_vars; ++i) point[static_cast<std::size_t>(i)] = free_point[static_cast<std::size_t>(i)];
          point[static_cast<std::size_t>(k - 1)] = static_cast<int>(last);
          if (sys.order_holds(point) && !visit(point)) return false;
        }
      }
      int pos = free_vars - 1;
      while (pos >= 0 && free_point[static_cast<std::size_t>(pos)] == n) {
        free_point[static_cast<std::size_t>(pos)] = 1;
        --pos;
      }
      if (pos < 0) break;
      ++free_point[static_cast<std::size_t>(pos)];
    }
    return true;
  }
  // Strict inequality: full odometer.
  while (true) {
    if (sys.relation_holds(sys.evaluate(point)) && sys.order_holds(point)) {
      if (!visit(point)) return false;
    }
    int pos = k - 1;
    while (pos >= 0 && point[static_cast<std::size_t>(pos)] == n) {
      point[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++point[static_cast<std::size_t>(pos)];
  }
  return true;
}

}  // namespace detail

/// Complete solution set of [1,n]^k, bucketed by the maximum coordinate so
/// constraints can be checked incrementally as an interval grows. Immutable
/// once built.
class solution_index {
 public:
  solution_index(const constraint_system& sys, int n, std::uint64_t cap)
      : n_(n), k_(sys.k()), buckets_(static_cast<std::size_t>(n) + 1) {
    std::uint64_t count = 0;
    detail::for_each_solution_lex(sys, n, [&](const std::vector<int>& point) {
      int mx = 0;
      for (int e : point) mx = std::max(mx, e);
      if (++count > cap) throw index_budget_error(mx, cap);
      buckets_[static_cast<std::size_t>(mx)].emplace_back(point);
      return true;
    });
    total_ = count;
  }

  int n() const { return n_; }
  int k() const { return k_; }
  std::uint64_t total() const { return total_; }

  /// Solutions whose maximum coordinate equals t, in lexicographic order.
  const std::vector<solution_vector>& bucket(int t) const {
    if (t < 1 || t > n_) throw std::out_of_range("solution_index: bucket out of range");
    return buckets_[static_cast<std::size_t>(t)];
  }

 private:
  int n_;
  int k_;
  std::uint64_t total_ = 0;
  std::vector<std::vector<solution_vector>> buckets_;
};

inline constexpr std::uint64_t default_index_cap = 100'000'000;

/// Build the complete, duplicate-free index of solutions inside [1,n]^k.
inline solution_index solutions_up_to(const constraint_system& sys, int n,
                                      std::uint64_t cap = default_index_cap) {
  if (n < 1) throw std::invalid_argument("solutions_up_to: n must be >= 1");
  return solution_index(sys, n, cap);
}

/// Stream the solutions whose maximum coordinate is exactly t, without
/// materializing an index. Order is unspecified; every solution is visited
/// exactly once. Visitor returns false to stop early; the call returns false
/// iff the visitor stopped it.
template <typename Visitor>
bool for_each_solution_with_max(const constraint_system& sys, int t, Visitor&& visit) {
  const int k = sys.k();
  if (t < 1) return true;
  std::vector<int> point(static_cast<std::size_t>(k), 1);

  if (sys.rel() == relation::equal && k >= 2) {
    // Stratify by the first position pinned to t; positions before it stay
    // below t, positions after may reach t. One non-pinned coordinate is
    // solved from the rest, so each stratum costs O(t^(k-2)).
    for (int pinned = 0; pinned < k; ++pinned) {
      int solved = (pinned == k - 1) ? k - 2 : k - 1;
      const long long cs = sys.coeff(solved);
      std::vector<int> free_pos;
      for (int i = 0; i < k; ++i)
        if (i != pinned && i != solved) free_pos.push_back(i);
      point[static_cast<std::size_t>(pinned)] = t;
      // Odometer over the free positions (each with its stratum range).
      std::vector<int> vals(free_pos.size(), 1);
      bool empty_range = false;
      auto upper = [&](int pos) { return pos < pinned ? t - 1 : t; };
      for (std::size_t i = 0; i < free_pos.size(); ++i)
        if (upper(free_pos[i]) < 1) empty_range = true;
      if (empty_range) continue;
      while (true) {
        for (std::size_t i = 0; i < free_pos.size(); ++i)
          point[static_cast<std::size_t>(free_pos[i])] = vals[i];
        long long partial = sys.constant();
        for (int i = 0; i < k; ++i)
          if (i != solved) partial += sys.coeff(i) * point[static_cast<std::size_t>(i)];
        long long residual = -partial;
        if (residual % cs == 0) {
          long long v = residual / cs;
          long long hi = (solved < pinned) ? t - 1 : t;
          if (v >= 1 && v <= hi) {
            point[static_cast<std::size_t>(solved)] = static_cast<int>(v);
            if (sys.order_holds(point) && !visit(point)) return false;
          }
        }
        bool advanced = false;
        std::size_t pos = vals.size();
        while (pos > 0) {
          --pos;
          if (vals[pos] < upper(free_pos[pos])) {
            ++vals[pos];
            advanced = true;
            break;
          }
          vals[pos] = 1;
        }
        if (!advanced) break;
      }
    }
    return true;
  }

  // General case: odometer over [1,t]^k, keeping only max == t.
  while (true) {
    int mx = 0;
    for (int e : point) mx = std::max(mx, e);
    if (mx == t && sys.relation_holds(sys.evaluate(point)) && sys.order_holds(point)) {
      if (!visit(point)) return false;
    }
    int pos = k - 1;
    while (pos >= 0 && point[static_cast<std::size_t>(pos)] == t) {
      point[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++point[static_cast<std::size_t>(pos)];
  }
  return true;
}

/// True iff every entry of v received the same color.
inline bool is_monochromatic(const coloring& chi, const solution_vector& v) {
  if (v.entries.empty()) throw std::invalid_argument("is_monochromatic: empty vector");
  int first = chi.color_of(v.entries.front());
  for (std::size_t i = 1; i < v.entries.size(); ++i)
    if (chi.color_of(v.entries[i]) != first) return false;
  return true;
}

/// True iff the color sum over v's entries is 0 mod m.
inline bool is_zero_sum(const coloring& chi, const solution_vector& v, int m) {
  if (m < 2) throw std::invalid_argument("is_zero_sum: modulus must be >= 2");
  long long sum = 0;
  for (int e : v.entries) {
    int c = chi.color_of(e);
    if (c >= m) throw std::invalid_argument("is_zero_sum: color outside [0,m)");
    sum += c;
  }
  return sum % m == 0;
}

}  // namespace rado
