#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rado/linear_system.hpp"
#include "rado/search.hpp"

namespace rado {

/// Floor division against a negative divisor-source: q = floor(B / -A) for
/// A < 0, the unique integer with A*(q+1) + B < 0 <= A*q + B.
inline long long floor_div_neg(long long a, long long b) {
  if (a >= 0) throw std::invalid_argument("floor_div_neg: A must be negative");
  const long long den = -a;
  long long q = b / den;
  if (b % den != 0 && b < 0) --q;
  return q;
}

/// Parameters of the three-variable inequality a*x + b*y + c*z + d < 0 with
/// nonzero coefficients, normalized so a <= b <= c.
struct l3_params {
  long long a, b, c, d;

  l3_params(long long a_, long long b_, long long c_, long long d_) : a(a_), b(b_), c(c_), d(d_) {
    if (a == 0 || b == 0 || c == 0)
      throw std::invalid_argument("l3_params: coefficients must be nonzero");
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
  }

  /// Adapts a parsed system of the right shape: three variables, strict
  /// inequality, no order constraints.
  static l3_params from_system(const constraint_system& sys) {
    if (sys.k() != 3 || sys.rel() != relation::strict_less || !sys.order().empty())
      throw std::invalid_argument("l3_params: system is not a plain 3-variable strict inequality");
    return {sys.coeff(0), sys.coeff(1), sys.coeff(2), sys.constant()};
  }

  long long sigma() const { return a + b + c + d; }
};

/// True iff a*x + b*y + c*z + d < 0 has a solution in positive integers:
/// either some coefficient is negative (grow that variable) or the minimum
/// over positives, sigma at (1,1,1), is already negative.
inline bool has_positive_solution(const l3_params& p) { return p.a < 0 || p.sigma() < 0; }

enum class l3_case { sigma_negative, all_negative, two_negative, one_negative };

/// The closed-form value for an l3 inequality together with the intermediate
/// quantities of the matching case, for inspection and table output.
struct closed_form_breakdown {
  l3_case kind;
  std::optional<long long> k0, k1, k2, k3, k4;
  long long value;
};

/// Closed form for R(a*x+b*y+c*z+d < 0) — the same value under Mono(2) and
/// ZeroSum(3). Absent when the inequality has no positive solution (the
/// number is undefined); never an error.
inline std::optional<closed_form_breakdown> rado_l3(const l3_params& p) {
  if (!has_positive_solution(p)) return std::nullopt;
  closed_form_breakdown out{};
  if (p.sigma() < 0) {
    out.kind = l3_case::sigma_negative;
    out.value = 1;
    return out;
  }
  // From here sigma >= 0, so at least one coefficient is negative and the
  // numerators below are positive.
  if (p.c < 0) {
    out.kind = l3_case::all_negative;
    out.k0 = floor_div_neg(p.a + p.b + p.c, p.d) + 1;
    out.value = *out.k0;
  } else if (p.b < 0) {
    out.kind = l3_case::two_negative;
    out.k1 = floor_div_neg(p.a + p.b, p.c + p.d) + 1;
    out.k2 = floor_div_neg(p.a + p.b, p.c * *out.k1 + p.d) + 1;
    out.value = *out.k2;
  } else {
    out.kind = l3_case::one_negative;
    out.k3 = floor_div_neg(p.a, p.b + p.c + p.d) + 1;
    out.k4 = floor_div_neg(p.a, (p.b + p.c) * *out.k3 + p.d) + 1;
    out.value = *out.k4;
  }
  return out;
}

/// The two-block witness coloring of [1, value-1] taken from the matching
/// case: all-zero below the block boundary (k1 or k3), one at and above it;
/// the all-negative case is entirely zero. Value 1 yields the empty coloring.
inline coloring extremal_coloring_l3(const l3_params& p) {
  auto bd = rado_l3(p);
  if (!bd) throw std::invalid_argument("extremal_coloring_l3: number undefined (no positive solution)");
  const long long v = bd->value;
  if (v <= 1) return coloring{{}};
  if (v - 1 > 100'000'000)
    throw std::length_error("extremal_coloring_l3: witness interval too large to materialize");
  const auto n = static_cast<std::size_t>(v - 1);
  std::vector<std::uint8_t> chi(n, 0);
  long long boundary = v;  // all-negative case: no one-block
  if (bd->kind == l3_case::two_negative) boundary = *bd->k1;
  if (bd->kind == l3_case::one_negative) boundary = *bd->k3;
  for (std::size_t x = static_cast<std::size_t>(boundary); x <= n; ++x) chi[x - 1] = 1;
  return coloring{std::move(chi)};
}

namespace detail {

// Decides whether sum(coeffs[i] * x_i) == target has a solution in positive
// integers. Mixed signs: solvable iff gcd | target (shift two opposite-sign
// variables along the kernel). Same sign: a bounded coin-representation DP.
inline bool equation_has_positive_solution(std::vector<long long> coeffs, long long target) {
  if (coeffs.empty()) throw std::invalid_argument("equation solvability: no coefficients");
  long long g = 0;
  bool pos = false, neg = false;
  for (long long a : coeffs) {
    if (a == 0) throw std::invalid_argument("equation solvability: zero coefficient");
    g = std::gcd(g, a < 0 ? -a : a);
    (a > 0 ? pos : neg) = true;
  }
  if (target % g != 0) return false;
  if (pos && neg) return true;
  if (neg) {
    for (long long& a : coeffs) a = -a;
    target = -target;
  }
  long long d0 = target;
  for (long long a : coeffs) d0 -= a;  // switch to nonnegative multiplicities
  if (d0 < 0) return false;
  if (d0 == 0) return true;
  d0 /= g;
  if (d0 > 50'000'000)
    throw std::runtime_error("equation solvability: target too large to decide");
  std::vector<char> reach(static_cast<std::size_t>(d0) + 1, 0);
  reach[0] = 1;
  for (long long a : coeffs) {
    const long long coin = a / g;
    if (coin > d0) continue;
    for (long long v = coin; v <= d0; ++v)
      reach[static_cast<std::size_t>(v)] |= reach[static_cast<std::size_t>(v - coin)];
  }
  return reach[static_cast<std::size_t>(d0)] != 0;
}

}  // namespace detail

/// 2 * R(a*x+b*y+c*z = d/2, Mono(2)) for odd a,b,c and even d: a lower bound
/// on R(a*x+b*y+c*z = d, ZeroSum(3)) by the parity-doubling construction.
/// Throws invalid_argument when the half equation has no positive solution
/// and budget_exhausted when its Rado number is not Exact within cfg.
inline long long doubling_lower_bound(long long a, long long b, long long c, long long d,
                                      const search_config& cfg) {
  if ((a % 2 == 0) || (b % 2 == 0) || (c % 2 == 0))
    throw std::invalid_argument("doubling_lower_bound: coefficients must be odd");
  if (d % 2 != 0) throw std::invalid_argument("doubling_lower_bound: constant must be even");
  const long long half = d / 2;
  if (!detail::equation_has_positive_solution({a, b, c}, half))
    throw std::invalid_argument("doubling_lower_bound: half equation has no positive solution");
  constraint_system sys({a, b, c}, -half, relation::equal);
  search_outcome out = rado_number(sys, coloring_mode::mono(2), cfg);
  if (out.kind != outcome_kind::exact)
    throw budget_exhausted(out.value, out.nodes);
  return 2LL * out.value;
}

/// Cited two-color values for x + y - z = d: 5 - 4d for negative d, 5 at
/// d = 0, d - ceil(d/5) + 1 for positive d.
inline long long cited_nonhomog_r2(long long d) {
  if (d < 0) return 5 - 4 * d;
  if (d == 0) return 5;
  return d - (d + 4) / 5 + 1;
}

/// Comparison of the two-color and zero-sum-over-Z/3 numbers. admits_egz is
/// set only when both sides resolved to Exact values; `unknown` flags a
/// partial record.
struct egz_report {
  std::optional<long long> r2;
  std::optional<long long> rz3;
  bool unknown = false;
  std::optional<bool> admits_egz;
};

/// Computes R(sys,2) and R(sys,Z/3Z) and reports whether they coincide.
/// Plain 3-variable strict inequalities take the closed-form fast path
/// (which settles both sides at once); everything else runs two searches.
inline egz_report egz_check(const constraint_system& sys, const search_config& cfg) {
  egz_report rep;
  if (sys.k() == 3 && sys.rel() == relation::strict_less && sys.order().empty()) {
    auto bd = rado_l3(l3_params::from_system(sys));
    if (bd) {
      rep.r2 = bd->value;
      rep.rz3 = bd->value;
      rep.admits_egz = true;
      return rep;
    }
    // No positive solution: neither number exists; fall through to the
    // searches, which will report lower bounds (unknown), never nonexistence.
  }
  search_outcome r2 = rado_number(sys, coloring_mode::mono(2), cfg);
  search_outcome rz3 = rado_number(sys, coloring_mode::zero_sum(3), cfg);
  if (r2.kind == outcome_kind::exact) rep.r2 = r2.value;
  if (rz3.kind == outcome_kind::exact) rep.rz3 = rz3.value;
  rep.unknown = !(rep.r2 && rep.rz3);
  if (!rep.unknown) rep.admits_egz = (*rep.r2 == *rep.rz3);
  return rep;
}

}  // namespace rado
