#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rado/linear_system.hpp"

namespace rado {

/// A coloring with a name and the (system, mode) claims it is asserted valid
/// for. Claims are certified by verify_coloring, never trusted.
struct named_construction {
  std::string name;
  coloring chi;
  std::vector<std::pair<constraint_system, coloring_mode>> claims;
};

/// Color 0 on [1, boundary-1] and color 1 on [boundary, n]. boundary = 1
/// degenerates to all-one, boundary = n+1 to all-zero.
inline coloring two_block(int boundary, int n) {
  if (n < 0) throw std::invalid_argument("two_block: n must be >= 0");
  if (boundary < 1 || boundary > n + 1) throw std::invalid_argument("two_block: boundary out of range");
  std::vector<std::uint8_t> chi(static_cast<std::size_t>(n), 0);
  for (int x = boundary; x <= n; ++x) chi[static_cast<std::size_t>(x) - 1] = 1;
  return coloring{std::move(chi)};
}

/// Parity expansion of a two-coloring of [1,R-1] into a three-coloring of
/// [1,2R-1]: even n inherits base(n/2), odd n gets the fresh color 2.
inline coloring doubling(const coloring& base) {
  if (base.max_color() >= 2) throw std::invalid_argument("doubling: base must use colors 0 and 1 only");
  const std::size_t r = base.values.size() + 1;
  std::vector<std::uint8_t> chi(2 * r - 1, 2);
  for (std::size_t x = 2; x <= 2 * r - 1; x += 2) chi[x - 1] = base.values[x / 2 - 1];
  return coloring{std::move(chi)};
}

/// Colors x by its 2-adic valuation mod 3.
inline coloring ord2_coloring(int n) {
  if (n < 0) throw std::invalid_argument("ord2_coloring: n must be >= 0");
  std::vector<std::uint8_t> chi(static_cast<std::size_t>(n));
  for (int x = 1; x <= n; ++x)
    chi[static_cast<std::size_t>(x) - 1] =
        static_cast<std::uint8_t>(std::countr_zero(static_cast<unsigned>(x)) % 3);
  return coloring{std::move(chi)};
}

/// The fixed coloring of [1,7] certifying that x + 2y - 4z = 0 admits no
/// zero-sum solution over Z/3Z below 8.
inline named_construction proposition_coloring() {
  named_construction nc;
  nc.name = "proposition";
  nc.chi = coloring{{0, 1, 2, 0, 1, 1, 0}};
  nc.claims.emplace_back(constraint_system({1, 2, -4}, 0, relation::equal),
                         coloring_mode::zero_sum(3));
  return nc;
}

}  // namespace rado
