#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "rado/solutions.hpp"
#include "support/naive_oracle.hpp"
#include "support/random_systems.hpp"

using namespace rado;

namespace {

std::vector<std::vector<int>> lex_stream(const constraint_system& sys, int n) {
  std::vector<std::vector<int>> out;
  detail::for_each_solution_lex(sys, n, [&](const std::vector<int>& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

}  // namespace

TEST_CASE("make_solution accepts solutions and rejects non-solutions", "[solutions]") {
  auto sys = parse_system("x + y = z");
  CHECK(make_solution(sys, {1, 2, 3}).entries == std::vector<int>{1, 2, 3});
  CHECK(make_solution(sys, {2, 2, 4}).max_entry() == 4);
  CHECK_THROWS_AS(make_solution(sys, {1, 2, 4}), std::invalid_argument);
  CHECK_THROWS_AS(make_solution(sys, {1, 2}), std::invalid_argument);
}

TEST_CASE("lex enumeration matches the naive tuple scan", "[solutions]") {
  testsupport::rng64 rng(2024);
  for (int i = 0; i < 120; ++i) {
    auto sys = testsupport::random_system(rng);
    const int n = rng.range(1, 6);
    auto expect = oracle::all_solutions(sys, n);
    auto got = lex_stream(sys, n);
    REQUIRE(got == expect);
    REQUIRE(std::is_sorted(got.begin(), got.end()));
  }
}

TEST_CASE("lex enumeration stops when the visitor declines", "[solutions]") {
  auto sys = parse_system("x + y = z");
  int seen = 0;
  detail::for_each_solution_lex(sys, 6, [&](const std::vector<int>&) { return ++seen < 3; });
  CHECK(seen == 3);
  CHECK(lex_stream(sys, 0).empty());
}

TEST_CASE("solution_index buckets by maximum coordinate", "[solutions]") {
  auto sys = parse_system("x + y = z");
  auto idx = solutions_up_to(sys, 6);
  CHECK(idx.n() == 6);
  CHECK(idx.k() == 3);

  std::uint64_t count = 0;
  for (int t = 1; t <= 6; ++t) {
    for (const auto& sol : idx.bucket(t)) {
      CHECK(sol.max_entry() == t);
      CHECK(sys.satisfied_by(sol.entries));
      ++count;
    }
  }
  CHECK(count == idx.total());
  CHECK(count == oracle::all_solutions(sys, 6).size());

  CHECK(idx.bucket(1).empty());              // x+y=z has no solution inside [1,1]
  CHECK(idx.bucket(2).size() == 1);          // (1,1,2)
  CHECK_THROWS_AS(idx.bucket(0), std::out_of_range);
  CHECK_THROWS_AS(idx.bucket(7), std::out_of_range);
  CHECK_THROWS_AS(solutions_up_to(sys, 0), std::invalid_argument);
}

TEST_CASE("bucket union reproduces the naive scan on random systems", "[solutions][props]") {
  testsupport::rng64 rng(99);
  for (int i = 0; i < 120; ++i) {
    auto sys = testsupport::random_system(rng);
    const int n = rng.range(1, 6);
    auto idx = solutions_up_to(sys, n);
    std::vector<std::vector<int>> flat;
    for (int t = 1; t <= n; ++t)
      for (const auto& sol : idx.bucket(t)) {
        REQUIRE(sol.max_entry() == t);
        flat.push_back(sol.entries);
      }
    std::sort(flat.begin(), flat.end());
    auto expect = oracle::all_solutions(sys, n);
    std::sort(expect.begin(), expect.end());
    REQUIRE(flat == expect);
  }
}

TEST_CASE("streaming per-bucket enumeration agrees with the index", "[solutions][props]") {
  testsupport::rng64 rng(123);
  for (int i = 0; i < 120; ++i) {
    auto sys = testsupport::random_system(rng);
    const int n = rng.range(1, 6);
    auto idx = solutions_up_to(sys, n);
    for (int t = 1; t <= n; ++t) {
      std::vector<std::vector<int>> streamed;
      for_each_solution_with_max(sys, t, [&](const std::vector<int>& p) {
        streamed.push_back(p);
        return true;
      });
      std::sort(streamed.begin(), streamed.end());
      std::vector<std::vector<int>> expect;
      for (const auto& sol : idx.bucket(t)) expect.push_back(sol.entries);
      std::sort(expect.begin(), expect.end());
      REQUIRE(streamed == expect);
    }
  }
}

TEST_CASE("index cap trips with the reached depth", "[solutions]") {
  auto sys = parse_system("x1 + x2 < x3");  // cubically many solutions
  try {
    solutions_up_to(sys, 60, 100);
    FAIL("expected index_budget_error");
  } catch (const index_budget_error& e) {
    CHECK(e.reached() >= 1);
    CHECK(e.reached() <= 60);
  }
}

TEST_CASE("single-variable and two-variable systems enumerate correctly", "[solutions]") {
  auto even = parse_system("2x = 6");
  auto sols = lex_stream(even, 8);
  REQUIRE(sols == std::vector<std::vector<int>>{{3}});

  auto ratio = parse_system("x = 2y");
  CHECK(lex_stream(ratio, 8) ==
        std::vector<std::vector<int>>{{2, 1}, {4, 2}, {6, 3}, {8, 4}});

  auto diag = parse_system("x = y");
  CHECK(lex_stream(diag, 3) == std::vector<std::vector<int>>{{1, 1}, {2, 2}, {3, 3}});
}

TEST_CASE("strict inequalities enumerate the full box", "[solutions]") {
  auto sys = parse_system("x1 + x2 < x3");
  auto sols = lex_stream(sys, 4);
  REQUIRE(sols == std::vector<std::vector<int>>{{1, 1, 3}, {1, 1, 4}, {1, 2, 4}, {2, 1, 4}});
}

TEST_CASE("order constraints filter enumeration", "[solutions]") {
  auto ap3 = parse_system("x + y = 2z, x < y");
  auto sols = lex_stream(ap3, 5);
  for (const auto& s : sols) CHECK(s[0] < s[1]);
  // (1,3,2), (1,5,3), (2,4,3), (3,5,4) inside [1,5]
  CHECK(sols.size() == 4);
}

TEST_CASE("is_monochromatic and is_zero_sum check their inputs", "[solutions]") {
  coloring chi{{0, 1, 0, 2}};
  CHECK(is_monochromatic(chi, solution_vector({1, 3})));
  CHECK_FALSE(is_monochromatic(chi, solution_vector({1, 2})));
  CHECK(is_zero_sum(chi, solution_vector({1, 2, 4}), 3));   // 0+1+2
  CHECK_FALSE(is_zero_sum(chi, solution_vector({1, 2, 3}), 3));
  CHECK(is_zero_sum(chi, solution_vector({2, 2}), 2));      // 1+1
  CHECK_THROWS_AS(is_monochromatic(chi, solution_vector{}), std::invalid_argument);
  CHECK_THROWS_AS(is_zero_sum(chi, solution_vector({1}), 1), std::invalid_argument);
  CHECK_THROWS_AS(is_zero_sum(chi, solution_vector({1, 5}), 3), std::out_of_range);
  coloring big{{5}};
  CHECK_THROWS_AS(is_zero_sum(big, solution_vector({1}), 3), std::invalid_argument);
}
