// Walks a few classic systems through the library: the two-color number, the
// zero-sum number over Z/3, and the three-color number, then shows the
// closed form at work on a strict inequality.

#include <cstdio>
#include <string>

#include "rado/formulas.hpp"
#include "rado/search.hpp"

using namespace rado;

namespace {

std::string show(const search_outcome& out) {
  if (out.kind == outcome_kind::exact) return std::to_string(out.value);
  return ">=" + std::to_string(out.value + 1);
}

void tour(const char* text) {
  const auto sys = parse_system(text);
  search_config cfg;
  cfg.max_n = 24;
  const auto r2 = rado_number(sys, coloring_mode::mono(2), cfg);
  const auto rz3 = rado_number(sys, coloring_mode::zero_sum(3), cfg);
  const auto r3 = rado_number(sys, coloring_mode::mono(3), cfg);
  std::printf("%-22s  two-color %-5s  zero-sum/3 %-5s  three-color %-5s\n", text,
              show(r2).c_str(), show(rz3).c_str(), show(r3).c_str());
}

}  // namespace

int main() {
  std::printf("Rado numbers over [1,n], capped at n = 24:\n\n");
  tour("x + y = z");
  tour("x + y = 2z, x < y");
  tour("x + 2y = 4z");
  tour("x + y + 2 = z");

  std::printf("\nClosed form for a*x + b*y + c*z + d < 0, here (-1,1,1,-1):\n");
  const l3_params p(-1, 1, 1, -1);
  const auto bd = rado_l3(p);
  const auto chi = extremal_coloring_l3(p);
  std::printf("value %lld, certified by the two-block coloring of [1,%d]\n", bd->value, chi.n());
  return 0;
}
