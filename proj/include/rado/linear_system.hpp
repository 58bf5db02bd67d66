#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rado {

/// Relation of the normalized left-hand side against zero.
enum class relation { equal, strict_less };

/// Order side constraint: x[smaller] < x[larger] (strict), indices into the
/// variable list.
struct order_constraint {
  int smaller = 0;
  int larger = 0;

  friend bool operator==(const order_constraint&, const order_constraint&) = default;
};

/// A single linear constraint over k positive-integer variables,
///
///   sum_i coeffs[i] * x_i + constant  REL  0,
///
/// where REL is "= 0" or "< 0", plus optional strict order constraints
/// between variables. Immutable after construction and safe to share
/// across threads.
class constraint_system {
 public:
  constraint_system(std::vector<long long> coeffs, long long constant, relation rel,
                    std::vector<order_constraint> order = {})
      : coeffs_(std::move(coeffs)), constant_(constant), rel_(rel), order_(std::move(order)) {
    validate();
  }

  int k() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<long long>& coeffs() const { return coeffs_; }
  long long coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  long long constant() const { return constant_; }
  relation rel() const { return rel_; }
  const std::vector<order_constraint>& order() const { return order_; }

  /// Value of the normalized left-hand side at the given point.
  long long evaluate(const std::vector<int>& entries) const {
    long long acc = constant_;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) acc += coeffs_[i] * entries[i];
    return acc;
  }

  bool relation_holds(long long lhs_value) const {
    return rel_ == relation::equal ? lhs_value == 0 : lhs_value < 0;
  }

  bool order_holds(const std::vector<int>& entries) const {
    for (const auto& oc : order_) {
      if (!(entries[static_cast<std::size_t>(oc.smaller)] <
            entries[static_cast<std::size_t>(oc.larger)]))
        return false;
    }
    return true;
  }

  /// True iff entries satisfies both the relation and every order constraint.
  bool satisfied_by(const std::vector<int>& entries) const {
    if (static_cast<int>(entries.size()) != k())
      throw std::invalid_argument("constraint_system: wrong arity");
    return relation_holds(evaluate(entries)) && order_holds(entries);
  }

  friend bool operator==(const constraint_system&, const constraint_system&) = default;

 private:
  void validate() const {
    if (coeffs_.empty()) throw std::invalid_argument("constraint_system: no variables");
    for (long long c : coeffs_)
      if (c == 0) throw std::invalid_argument("constraint_system: zero coefficient");
    const int n = k();
    for (const auto& oc : order_) {
      if (oc.smaller < 0 || oc.smaller >= n || oc.larger < 0 || oc.larger >= n)
        throw std::invalid_argument("constraint_system: order index out of range");
      if (oc.smaller == oc.larger)
        throw std::invalid_argument("constraint_system: order constraint on one variable");
    }
    if (order_cyclic()) throw std::invalid_argument("constraint_system: cyclic order constraints");
  }

  bool order_cyclic() const {
    // Kahn's algorithm over the order digraph.
    const int n = k();
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (const auto& oc : order_) ++indeg[static_cast<std::size_t>(oc.larger)];
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
      if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    int seen = 0;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      ++seen;
      for (const auto& oc : order_) {
        if (oc.smaller != v) continue;
        if (--indeg[static_cast<std::size_t>(oc.larger)] == 0) queue.push_back(oc.larger);
      }
    }
    return seen != n;
  }

  std::vector<long long> coeffs_;
  long long constant_;
  relation rel_;
  std::vector<order_constraint> order_;
};

/// Total map [1,n] -> {0,...,m-1}; values[i] is the color of the integer i+1.
/// The color bound m is supplied by whichever mode the coloring is used with.
struct coloring {
  std::vector<std::uint8_t> values;

  coloring() = default;
  explicit coloring(std::vector<std::uint8_t> v) : values(std::move(v)) {}

  int n() const { return static_cast<int>(values.size()); }

  /// Color of x, 1-indexed, bounds-checked.
  int color_of(int x) const {
    if (x < 1 || x > n()) throw std::out_of_range("coloring: integer outside [1,n]");
    return values[static_cast<std::size_t>(x - 1)];
  }

  int max_color() const {
    int m = -1;
    for (auto v : values) m = std::max(m, static_cast<int>(v));
    return m;
  }

  friend bool operator==(const coloring&, const coloring&) = default;
};

/// Forbidden-solution regime: Mono(r) forbids monochromatic solutions under
/// r-colorings; ZeroSum(m) forbids solutions whose color sum is 0 mod m.
class coloring_mode {
 public:
  enum class kind_t { mono, zero_sum };

  static coloring_mode mono(int r) { return coloring_mode(kind_t::mono, r); }
  static coloring_mode zero_sum(int m) { return coloring_mode(kind_t::zero_sum, m); }

  kind_t kind() const { return kind_; }
  /// Number of available colors: r for Mono, the modulus m for ZeroSum.
  int colors() const { return colors_; }

  std::string key() const {
    return (kind_ == kind_t::mono ? "mono:" : "zsum:") + std::to_string(colors_);
  }

  /// Inverse of key(): accepts "mono:R" and "zsum:M".
  static coloring_mode from_key(const std::string& key) {
    auto bad = [&] { return std::invalid_argument("coloring_mode: bad key '" + key + "'"); };
    if (key.size() < 6 || key[4] != ':') throw bad();
    const std::string tag = key.substr(0, 4);
    if (tag != "mono" && tag != "zsum") throw bad();
    int c = 0;
    for (std::size_t i = 5; i < key.size(); ++i) {
      if (key[i] < '0' || key[i] > '9' || c > 255) throw bad();
      c = c * 10 + (key[i] - '0');
    }
    return tag == "mono" ? mono(c) : zero_sum(c);
  }

  friend bool operator==(const coloring_mode&, const coloring_mode&) = default;

 private:
  coloring_mode(kind_t k, int c) : kind_(k), colors_(c) {
    if (c < 2) throw std::invalid_argument("coloring_mode: need at least 2 colors");
    if (c > 255) throw std::invalid_argument("coloring_mode: at most 255 colors supported");
  }

  kind_t kind_;
  int colors_;
};

/// Parse failure, carrying the byte offset into the input text.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error("syntax error at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

struct token {
  enum class type { integer, ident, plus, minus, star, eq, lt, comma, end };
  type t;
  std::size_t pos;
  long long value = 0;   // for integer
  std::string text;      // for ident
};

inline std::vector<token> tokenize(std::string_view text) {
  std::vector<token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      long long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        int digit = text[i] - '0';
        if (v > (9'000'000'000'000'000'000LL - digit) / 10)
          throw parse_error("integer literal too large", start);
        v = v * 10 + digit;
        ++i;
      }
      out.push_back({token::type::integer, start, v, {}});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      std::string name;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        name.push_back(text[i]);
        ++i;
      }
      out.push_back({token::type::ident, start, 0, std::move(name)});
      continue;
    }
    token::type t;
    switch (c) {
      case '+': t = token::type::plus; break;
      case '-': t = token::type::minus; break;
      case '*': t = token::type::star; break;
      case '=': t = token::type::eq; break;
      case '<': t = token::type::lt; break;
      case ',': t = token::type::comma; break;
      default: throw parse_error(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({t, i, 0, {}});
    ++i;
  }
  out.push_back({token::type::end, text.size(), 0, {}});
  return out;
}

}  // namespace detail

/// Parse the one-line constraint DSL:
///
///   <linear expr> (= | <) <linear expr> [, <var> < <var>]...
///
/// Terms are integer multiples of single identifiers ("2x", "3 * y", "z") or
/// bare integers; variables are ordered by first appearance. Everything is
/// moved to the left-hand side; a variable whose coefficient cancels to zero
/// is rejected.
inline constraint_system parse_system(std::string_view text) {
  using detail::token;
  auto toks = detail::tokenize(text);
  std::size_t idx = 0;

  std::vector<std::string> var_names;
  std::vector<long long> coeffs;
  long long constant = 0;

  auto var_index = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < var_names.size(); ++i)
      if (var_names[i] == name) return static_cast<int>(i);
    return -1;
  };

  // Accumulates one side of the relation; sign = +1 for LHS, -1 for RHS.
  auto parse_side = [&](long long side_sign) {
    bool first_term = true;
    bool saw_term = false;
    while (true) {
      const token& t = toks[idx];
      if (t.t == token::type::eq || t.t == token::type::lt || t.t == token::type::comma ||
          t.t == token::type::end) {
        if (!saw_term) throw parse_error("expected a term", t.pos);
        return;
      }
      long long sign = side_sign;
      if (t.t == token::type::plus || t.t == token::type::minus) {
        if (first_term && t.t == token::type::plus)
          throw parse_error("unexpected leading '+'", t.pos);
        while (toks[idx].t == token::type::plus || toks[idx].t == token::type::minus) {
          if (toks[idx].t == token::type::minus) sign = -sign;
          ++idx;
        }
      } else if (!first_term) {
        throw parse_error("expected '+' or '-' between terms", t.pos);
      }
      const token& head = toks[idx];
      if (head.t == token::type::integer) {
        long long magnitude = head.value;
        ++idx;
        if (toks[idx].t == token::type::star) ++idx;
        if (toks[idx].t == token::type::ident) {
          const std::string& name = toks[idx].text;
          int vi = var_index(name);
          if (vi < 0) {
            var_names.push_back(name);
            coeffs.push_back(0);
            vi = static_cast<int>(var_names.size()) - 1;
          }
          coeffs[static_cast<std::size_t>(vi)] += sign * magnitude;
          ++idx;
        } else {
          constant += sign * magnitude;
        }
      } else if (head.t == token::type::ident) {
        int vi = var_index(head.text);
        if (vi < 0) {
          var_names.push_back(head.text);
          coeffs.push_back(0);
          vi = static_cast<int>(var_names.size()) - 1;
        }
        coeffs[static_cast<std::size_t>(vi)] += sign;
        ++idx;
      } else {
        throw parse_error("expected a term", head.pos);
      }
      first_term = false;
      saw_term = true;
    }
  };

  parse_side(+1);
  relation rel;
  if (toks[idx].t == token::type::eq) {
    rel = relation::equal;
  } else if (toks[idx].t == token::type::lt) {
    rel = relation::strict_less;
  } else {
    throw parse_error("expected '=' or '<' relation", toks[idx].pos);
  }
  ++idx;
  parse_side(-1);

  if (var_names.empty()) throw parse_error("no variables in system", toks[idx].pos);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0)
      throw parse_error("coefficient of '" + var_names[i] + "' cancels to zero", toks[idx].pos);
  }

  std::vector<order_constraint> order;
  while (toks[idx].t == token::type::comma) {
    ++idx;
    if (toks[idx].t != token::type::ident)
      throw parse_error("expected a variable in order clause", toks[idx].pos);
    const token& lo = toks[idx];
    int li = var_index(lo.text);
    if (li < 0) throw parse_error("unknown variable '" + lo.text + "' in order clause", lo.pos);
    ++idx;
    if (toks[idx].t != token::type::lt)
      throw parse_error("expected '<' in order clause", toks[idx].pos);
    ++idx;
    if (toks[idx].t != token::type::ident)
      throw parse_error("expected a variable in order clause", toks[idx].pos);
    const token& hi = toks[idx];
    int hi_i = var_index(hi.text);
    if (hi_i < 0) throw parse_error("unknown variable '" + hi.text + "' in order clause", hi.pos);
    ++idx;
    order.push_back({li, hi_i});
  }
  if (toks[idx].t != token::type::end)
    throw parse_error("unexpected trailing input", toks[idx].pos);

  try {
    return constraint_system(std::move(coeffs), constant, rel, std::move(order));
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what(), text.size());
  }
}

/// Canonical one-line text form, "c1 x1 + c2 x2 + ... + d REL 0, xi < xj".
/// parse_system(print_system(s)) == s for every valid system.
inline std::string print_system(const constraint_system& sys) {
  std::string out;
  for (int i = 0; i < sys.k(); ++i) {
    long long c = sys.coeff(i);
    if (i == 0) {
      if (c < 0) out += "-";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    long long mag = c < 0 ? -c : c;
    if (mag != 1) out += std::to_string(mag);
    out += "x" + std::to_string(i + 1);
  }
  if (sys.constant() != 0) {
    out += (sys.constant() < 0) ? " - " : " + ";
    long long mag = sys.constant() < 0 ? -sys.constant() : sys.constant();
    out += std::to_string(mag);
  }
  out += (sys.rel() == relation::equal) ? " = 0" : " < 0";
  for (const auto& oc : sys.order())
    out += ", x" + std::to_string(oc.smaller + 1) + " < x" + std::to_string(oc.larger + 1);
  return out;
}

/// Deterministic cache key. Systems identical up to a variable permutation
/// (consistent with the order constraints) share a key: coefficients are
/// sorted when no order constraints are present, kept positional otherwise.
inline std::string canonical_key(const constraint_system& sys) {
  std::vector<long long> cs = sys.coeffs();
  if (sys.order().empty()) std::sort(cs.begin(), cs.end());
  std::string key = sys.rel() == relation::equal ? "eq|" : "lt|";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) key += ",";
    key += std::to_string(cs[i]);
  }
  key += "|" + std::to_string(sys.constant()) + "|";
  for (std::size_t i = 0; i < sys.order().size(); ++i) {
    if (i) key += ",";
    key += std::to_string(sys.order()[i].smaller) + "<" + std::to_string(sys.order()[i].larger);
  }
  return key;
}

}  // namespace rado
