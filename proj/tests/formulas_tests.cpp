#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "rado/constructions.hpp"
#include "rado/formulas.hpp"
#include "support/naive_oracle.hpp"

using namespace rado;

namespace {

search_config capped(int max_n) {
  search_config cfg;
  cfg.max_n = max_n;
  return cfg;
}

// Every grid point with a,b,c in [-3,3]\{0} sorted ascending and d in [-6,6].
template <typename Fn>
void for_each_l3(Fn&& fn) {
  for (int a = -3; a <= 3; ++a) {
    if (a == 0) continue;
    for (int b = a; b <= 3; ++b) {
      if (b == 0) continue;
      for (int c = b; c <= 3; ++c) {
        if (c == 0) continue;
        for (int d = -6; d <= 6; ++d) fn(l3_params(a, b, c, d));
      }
    }
  }
}

}  // namespace

TEST_CASE("floor_div_neg floors toward minus infinity", "[formulas]") {
  CHECK(floor_div_neg(-3, 3) == 1);
  CHECK(floor_div_neg(-3, 4) == 1);
  CHECK(floor_div_neg(-1, 0) == 0);
  CHECK(floor_div_neg(-2, -3) == -2);  // floor(-3/2) = -2, not truncation's -1
  CHECK(floor_div_neg(-5, -10) == -2);
  CHECK_THROWS_AS(floor_div_neg(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(floor_div_neg(2, 1), std::invalid_argument);
}

TEST_CASE("floor_div_neg satisfies both defining inequalities on the grid", "[formulas][props]") {
  for (long long a = -10; a <= -1; ++a) {
    for (long long b = -50; b <= 50; ++b) {
      const long long q = floor_div_neg(a, b);
      REQUIRE(a * (q + 1) + b < 0);
      REQUIRE(a * q + b >= 0);
    }
  }
}

TEST_CASE("l3_params normalizes and validates", "[formulas]") {
  l3_params p(3, -1, 1, 4);
  CHECK(p.a == -1);
  CHECK(p.b == 1);
  CHECK(p.c == 3);
  CHECK(p.sigma() == 7);
  CHECK_THROWS_AS(l3_params(0, 1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(l3_params(1, 0, 1, 0), std::invalid_argument);

  auto sys = parse_system("-x + y + z - 1 < 0");
  auto q = l3_params::from_system(sys);
  CHECK(q.a == -1);
  CHECK(q.d == -1);
  CHECK_THROWS_AS(l3_params::from_system(parse_system("x + y = z")), std::invalid_argument);
  CHECK_THROWS_AS(l3_params::from_system(parse_system("x1 + x2 < x3, x1 < x2")),
                  std::invalid_argument);
  CHECK_THROWS_AS(l3_params::from_system(parse_system("x1 + x2 + x3 < x4")),
                  std::invalid_argument);
}

TEST_CASE("has_positive_solution covers the sign cases", "[formulas]") {
  CHECK(has_positive_solution(l3_params(1, 1, 1, -4)));        // (1,1,1) lands below zero
  CHECK_FALSE(has_positive_solution(l3_params(1, 1, 1, -3)));  // minimum is exactly zero
  CHECK(has_positive_solution(l3_params(-1, 1, 1, 5)));        // grow the negative variable
}

TEST_CASE("rado_l3 evaluates the four cases", "[formulas]") {
  SECTION("negative sigma is immediately forced") {
    auto bd = rado_l3(l3_params(1, 1, 1, -10));
    REQUIRE(bd.has_value());
    CHECK(bd->kind == l3_case::sigma_negative);
    CHECK(bd->value == 1);
  }
  SECTION("all-negative case") {
    auto bd = rado_l3(l3_params(-1, -1, -1, 3));
    REQUIRE(bd.has_value());
    CHECK(bd->kind == l3_case::all_negative);
    REQUIRE(bd->k0.has_value());
    CHECK(*bd->k0 == 2);
    CHECK(bd->value == 2);
  }
  SECTION("two-negative case") {
    auto bd = rado_l3(l3_params(-2, -1, 1, 2));
    REQUIRE(bd.has_value());
    CHECK(bd->kind == l3_case::two_negative);
    CHECK(*bd->k1 == 2);
    CHECK(*bd->k2 == 2);
    CHECK(bd->value == 2);
  }
  SECTION("one-negative case") {
    auto bd = rado_l3(l3_params(-1, 1, 1, -1));
    REQUIRE(bd.has_value());
    CHECK(bd->kind == l3_case::one_negative);
    CHECK(*bd->k3 == 2);
    CHECK(*bd->k4 == 4);
    CHECK(bd->value == 4);
  }
  SECTION("no positive solution means no value") {
    CHECK_FALSE(rado_l3(l3_params(1, 1, 1, 0)).has_value());
    CHECK_FALSE(rado_l3(l3_params(1, 2, 3, -3)).has_value());
  }
}

TEST_CASE("closed-form intermediates stay ordered and above one", "[formulas][props]") {
  for_each_l3([](const l3_params& p) {
    auto bd = rado_l3(p);
    if (!bd) return;
    switch (bd->kind) {
      case l3_case::sigma_negative:
        REQUIRE(bd->value == 1);
        break;
      case l3_case::all_negative:
        REQUIRE(*bd->k0 > 1);
        break;
      case l3_case::two_negative:
        REQUIRE(*bd->k1 > 1);
        REQUIRE(*bd->k1 <= *bd->k2);
        break;
      case l3_case::one_negative:
        REQUIRE(*bd->k3 > 1);
        REQUIRE(*bd->k3 <= *bd->k4);
        break;
    }
  });
}

TEST_CASE("closed form matches exhaustive search in both modes across the grid",
          "[formulas][props]") {
  int points = 0;
  for_each_l3([&](const l3_params& p) {
    auto bd = rado_l3(p);
    if (!bd || bd->value > 12) return;
    ++points;
    constraint_system sys({p.a, p.b, p.c}, p.d, relation::strict_less);
    auto m2 = rado_number(sys, coloring_mode::mono(2), capped(static_cast<int>(bd->value)));
    auto z3 = rado_number(sys, coloring_mode::zero_sum(3), capped(static_cast<int>(bd->value)));
    INFO("(" << p.a << "," << p.b << "," << p.c << "," << p.d << ")");
    REQUIRE(m2.kind == outcome_kind::exact);
    REQUIRE(m2.value == bd->value);
    REQUIRE(z3.kind == outcome_kind::exact);
    REQUIRE(z3.value == bd->value);
  });
  CHECK(points > 400);  // the filter keeps the bulk of the grid
}

TEST_CASE("extremal_coloring_l3 reproduces the proof witnesses", "[formulas]") {
  CHECK(extremal_coloring_l3(l3_params(-1, 1, 1, -1)).values ==
        std::vector<std::uint8_t>{0, 1, 1});
  CHECK(extremal_coloring_l3(l3_params(-1, -1, -1, 3)).values == std::vector<std::uint8_t>{0});
  CHECK(extremal_coloring_l3(l3_params(-2, -1, 1, 2)).values == std::vector<std::uint8_t>{0});
  CHECK(extremal_coloring_l3(l3_params(1, 1, 1, -10)).values.empty());
  CHECK_THROWS_AS(extremal_coloring_l3(l3_params(1, 1, 1, 0)), std::invalid_argument);
}

TEST_CASE("extremal colorings verify under both modes and match two_block", "[formulas][props]") {
  for_each_l3([](const l3_params& p) {
    auto bd = rado_l3(p);
    if (!bd || bd->value < 2 || bd->value > 40) return;
    auto chi = extremal_coloring_l3(p);
    const int n = static_cast<int>(bd->value) - 1;
    REQUIRE(chi.n() == n);
    constraint_system sys({p.a, p.b, p.c}, p.d, relation::strict_less);
    INFO("(" << p.a << "," << p.b << "," << p.c << "," << p.d << ")");
    REQUIRE(verify_coloring(sys, chi, coloring_mode::mono(2)).valid);
    // a {0,1} coloring is zero-sum-free over Z/3 iff it is mono-free (k=3)
    REQUIRE(verify_coloring(sys, chi, coloring_mode::zero_sum(3)).valid);
    int boundary = n + 1;
    if (bd->kind == l3_case::two_negative) boundary = static_cast<int>(*bd->k1);
    if (bd->kind == l3_case::one_negative) boundary = static_cast<int>(*bd->k3);
    REQUIRE(chi == two_block(boundary, n));
  });
}

TEST_CASE("doubling_lower_bound doubles the half equation's number", "[formulas]") {
  CHECK(doubling_lower_bound(1, 1, -1, 0, capped(8)) == 10);    // 2 * Schur
  CHECK(doubling_lower_bound(1, 1, -1, -2, capped(12)) == 18);  // 2 * 9
  CHECK_THROWS_AS(doubling_lower_bound(1, 1, 1, 0, capped(8)), std::invalid_argument);
  CHECK_THROWS_AS(doubling_lower_bound(2, 1, -1, 0, capped(8)), std::invalid_argument);
  CHECK_THROWS_AS(doubling_lower_bound(1, 1, -1, 1, capped(8)), std::invalid_argument);
  // half equation forced only beyond the cap -> unknown
  CHECK_THROWS_AS(doubling_lower_bound(1, 1, -1, -2, capped(4)), budget_exhausted);
}

TEST_CASE("the doubled bound is sharp for the homogeneous case", "[formulas]") {
  auto sys = parse_system("x + y = z");
  auto z3 = rado_number(sys, coloring_mode::zero_sum(3), capped(12));
  REQUIRE(z3.kind == outcome_kind::exact);
  CHECK(doubling_lower_bound(1, 1, -1, 0, capped(8)) == z3.value);
}

TEST_CASE("doubling bound never exceeds the zero-sum number on the odd grid",
          "[formulas][props]") {
  int points = 0;
  for (int a : {-3, -1, 1, 3})
    for (int b : {-3, -1, 1, 3})
      for (int c : {-3, -1, 1, 3})
        for (int d : {-4, -2, 0, 2}) {
          long long bound = 0;
          try {
            bound = doubling_lower_bound(a, b, c, d, capped(20));
          } catch (const std::exception&) {
            continue;  // undefined or not exact within the cap
          }
          constraint_system full({a, b, c}, -static_cast<long long>(d), relation::equal);
          auto z3 = rado_number(full, coloring_mode::zero_sum(3), capped(20));
          if (z3.kind != outcome_kind::exact) continue;
          ++points;
          INFO("(" << a << "," << b << "," << c << ") = " << d);
          REQUIRE(bound <= z3.value);
          if (d == 0) {
            // with odd coefficients the gap is forced: no EGZ-generalization
            constraint_system half = full;
            auto r2 = rado_number(half, coloring_mode::mono(2), capped(20));
            REQUIRE(r2.kind == outcome_kind::exact);
            REQUIRE(2 * r2.value <= z3.value);
            REQUIRE(r2.value < z3.value);
          }
        }
  CHECK(points >= 80);
}

TEST_CASE("cited_nonhomog_r2 reproduces the cited values", "[formulas]") {
  CHECK(cited_nonhomog_r2(-2) == 13);
  CHECK(cited_nonhomog_r2(0) == 5);
  CHECK(cited_nonhomog_r2(10) == 9);
  CHECK(cited_nonhomog_r2(-1) == 9);
  CHECK(cited_nonhomog_r2(6) == 5);
  CHECK(cited_nonhomog_r2(1) == 1);
}

TEST_CASE("cited_nonhomog_r2 agrees with search, odd negatives included", "[formulas][props]") {
  // The source states the negative-offset formula for even offsets; odd
  // offsets are an extrapolation we pin down by search as well.
  for (int d = -4; d <= 8; ++d) {
    auto sys = constraint_system({1, 1, -1}, -d, relation::equal);  // x + y - z = d
    auto out = rado_number(sys, coloring_mode::mono(2), capped(24));
    REQUIRE(out.kind == outcome_kind::exact);
    INFO("d = " << d);
    REQUIRE(out.value == cited_nonhomog_r2(d));
  }
}

TEST_CASE("egz_check compares the two numbers", "[formulas]") {
  auto schur = egz_check(parse_system("x + y = z"), capped(12));
  REQUIRE_FALSE(schur.unknown);
  CHECK(*schur.r2 == 5);
  CHECK(*schur.rz3 == 10);
  CHECK(schur.admits_egz.has_value());
  CHECK_FALSE(*schur.admits_egz);

  auto ap3 = egz_check(parse_system("x + y = 2z, x < y"), capped(12));
  REQUIRE_FALSE(ap3.unknown);
  CHECK(*ap3.r2 == 9);
  CHECK(*ap3.rz3 == 9);
  CHECK(*ap3.admits_egz);

  auto l3 = egz_check(parse_system("-x + y + z - 1 < 0"), capped(8));
  REQUIRE_FALSE(l3.unknown);
  CHECK(*l3.r2 == 4);
  CHECK(*l3.rz3 == 4);
  CHECK(*l3.admits_egz);

  // cap too small for either side: partial record, verdict withheld
  auto tight = egz_check(parse_system("x + y = z"), capped(4));
  CHECK(tight.unknown);
  CHECK_FALSE(tight.r2.has_value());
  CHECK_FALSE(tight.rz3.has_value());
  CHECK_FALSE(tight.admits_egz.has_value());
}

TEST_CASE("the closed-form fast path agrees with plain searches", "[formulas][props]") {
  for_each_l3([](const l3_params& p) {
    auto bd = rado_l3(p);
    if (!bd || bd->value > 9) return;
    constraint_system sys({p.a, p.b, p.c}, p.d, relation::strict_less);
    auto fast = egz_check(sys, capped(10));
    REQUIRE_FALSE(fast.unknown);
    REQUIRE(*fast.r2 == bd->value);
    REQUIRE(*fast.rz3 == bd->value);
    REQUIRE(*fast.admits_egz);
    // the fast path must never disagree with what the engine would say
    auto m2 = rado_number(sys, coloring_mode::mono(2), capped(10));
    auto z3 = rado_number(sys, coloring_mode::zero_sum(3), capped(10));
    REQUIRE(m2.kind == outcome_kind::exact);
    REQUIRE(z3.kind == outcome_kind::exact);
    REQUIRE(*fast.r2 == m2.value);
    REQUIRE(*fast.rz3 == z3.value);
  });
}
