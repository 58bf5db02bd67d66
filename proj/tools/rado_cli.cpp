// rado: compute, bound, and certify Rado numbers from the command line.
//
// Subcommands:
//   compute    Rado number of a system (JSON record; cached)
//   egz        compare the two-color and zero-sum-over-Z/3 numbers
//   l3-table   closed-form table for a*x + b*y + c*z + d < 0 over a grid
//   certify    check a named or file-based coloring against a system
//   probe      grow n while a valid coloring exists (checkpointable)
//   solutions  dump the solution index as JSON lines
//
// Exit codes: 0 success / Exact; 10 LowerBound (or probe still alive, or
// egz unknown); 2 system parse error; 1 everything else.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rado/cache.hpp"
#include "rado/constructions.hpp"
#include "rado/formulas.hpp"
#include "rado/json_io.hpp"
#include "rado/linear_system.hpp"
#include "rado/search.hpp"
#include "rado/solutions.hpp"
#include "rado/version.hpp"

namespace {

using namespace rado;

// ---------------------------------------------------------------- options

struct mode_options {
  std::string mode = "mono";
  int colors = 2;
  int modulus = 3;
};

void add_mode_flags(CLI::App* cmd, mode_options& mo) {
  cmd->add_option("--mode", mo.mode, "Forbidden-solution regime")
      ->check(CLI::IsMember({"mono", "zero-sum"}))
      ->capture_default_str();
  cmd->add_option("--colors", mo.colors, "Number of colors (mono mode)")->capture_default_str();
  cmd->add_option("--modulus", mo.modulus, "Group modulus (zero-sum mode)")
      ->capture_default_str();
}

coloring_mode resolve_mode(const mode_options& mo) {
  return mo.mode == "mono" ? coloring_mode::mono(mo.colors)
                           : coloring_mode::zero_sum(mo.modulus);
}

struct engine_options {
  int max_n = 64;
  std::uint64_t budget = 0;
  int jobs = 1;
  bool deterministic = false;
};

void add_engine_flags(CLI::App* cmd, engine_options& eo) {
  cmd->add_option("--max-n", eo.max_n, "Cap on the interval length")->capture_default_str();
  cmd->add_option("--budget", eo.budget, "Search-node budget (0 = unlimited)")
      ->capture_default_str();
  cmd->add_option("--jobs", eo.jobs, "Worker threads for the search")->capture_default_str();
  cmd->add_flag("--deterministic", eo.deterministic,
                "Force single-threaded, reproducible runs (CI mode)");
}

search_config resolve_engine(const engine_options& eo) {
  search_config cfg;
  cfg.max_n = eo.max_n;
  cfg.node_budget = eo.budget;
  cfg.jobs = eo.deterministic ? 1 : eo.jobs;
  cfg.parallel_depth = cfg.jobs > 1 ? 3 : 0;
  return cfg;
}

// The published result schema; the cache rows additionally carry the
// canonical key and the engine version.
json published(const result_record& rec) {
  json j;
  j["system"] = rec.system_text;
  j["mode"] = rec.mode;
  j["outcome"] = outcome_to_json(rec.outcome);
  j["witness"] = coloring_to_json(rec.outcome.witness);
  j["nodes"] = rec.outcome.nodes;
  j["ms"] = rec.ms;
  return j;
}

std::string format_vector(const solution_vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.entries.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v.entries[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------- compute

int cmd_compute(const std::string& text, const mode_options& mo, const engine_options& eo,
                const std::string& cache_path) {
  const constraint_system sys = parse_system(text);
  const coloring_mode mode = resolve_mode(mo);
  result_cache cache(cache_path);

  result_record rec;
  if (auto hit = cache.lookup(sys, mode)) {
    rec = *hit;
  } else {
    const auto t0 = std::chrono::steady_clock::now();
    const search_outcome out = rado_number(sys, mode, resolve_engine(eo));
    const auto elapsed = std::chrono::steady_clock::now() - t0;
    rec.system_text = print_system(sys);
    rec.key = canonical_key(sys);
    rec.mode = mode.key();
    rec.outcome = out;
    rec.ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
    cache.append(rec);
  }
  std::cout << published(rec).dump() << '\n';
  return rec.outcome.kind == outcome_kind::exact ? 0 : 10;
}

// ---------------------------------------------------------------- egz

int cmd_egz(const std::string& text, const engine_options& eo) {
  const constraint_system sys = parse_system(text);
  const egz_report rep = egz_check(sys, resolve_engine(eo));
  auto num = [](const std::optional<long long>& v) {
    return v ? std::to_string(*v) : std::string("?");
  };
  const std::string verdict = rep.admits_egz ? (*rep.admits_egz ? "yes" : "no") : "unknown";
  std::cout << "R2=" << num(rep.r2) << " RZ3=" << num(rep.rz3) << " EGZ=" << verdict << '\n';
  return rep.unknown ? 10 : 0;
}

// ---------------------------------------------------------------- l3-table

struct int_range {
  long long lo = 0;
  long long hi = 0;
};

int_range parse_range(const std::string& text) {
  const auto colon = text.find(':');
  int_range r;
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    r.lo = std::stoll(text.substr(0, colon));
    r.hi = std::stoll(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("l3-table: expected a LO:HI range, got '" + text + "'");
  }
  if (r.lo > r.hi) throw std::invalid_argument("l3-table: empty range '" + text + "'");
  return r;
}

const char* case_name(l3_case kind) {
  switch (kind) {
    case l3_case::sigma_negative: return "SigmaNegative";
    case l3_case::all_negative: return "AllNegative";
    case l3_case::two_negative: return "TwoNegative";
    case l3_case::one_negative: return "OneNegative";
  }
  return "?";
}

int cmd_l3_table(const std::string& coeffs_text, const std::string& d_text, bool check,
                 const std::string& format, const engine_options& eo) {
  const int_range cr = parse_range(coeffs_text);
  const int_range dr = parse_range(d_text);
  if (cr.hi - cr.lo > 40 || dr.hi - dr.lo > 200)
    throw std::invalid_argument("l3-table: range too large to enumerate");

  bool mismatch = false;
  if (format == "csv") std::cout << "a,b,c,d,case,k0,k1,k2,k3,k4,value,check\n";

  for (long long a = cr.lo; a <= cr.hi; ++a) {
    if (a == 0) continue;
    for (long long b = a; b <= cr.hi; ++b) {
      if (b == 0) continue;
      for (long long c = b; c <= cr.hi; ++c) {
        if (c == 0) continue;
        for (long long d = dr.lo; d <= dr.hi; ++d) {
          const l3_params p(a, b, c, d);
          const auto bd = rado_l3(p);

          std::string check_status;
          if (check && bd) {
            if (bd->value > eo.max_n) {
              check_status = "unchecked";
            } else {
              engine_options capped = eo;
              capped.max_n = static_cast<int>(bd->value);
              const constraint_system sys({a, b, c}, d, relation::strict_less);
              const auto cfg = resolve_engine(capped);
              const auto m2 = rado_number(sys, coloring_mode::mono(2), cfg);
              const auto z3 = rado_number(sys, coloring_mode::zero_sum(3), cfg);
              if (m2.kind != outcome_kind::exact || z3.kind != outcome_kind::exact) {
                check_status = "unchecked";
              } else if (m2.value == bd->value && z3.value == bd->value) {
                check_status = "match";
              } else {
                check_status = "MISMATCH";
                mismatch = true;
              }
            }
          }

          auto opt = [](const std::optional<long long>& v) {
            return v ? std::to_string(*v) : std::string();
          };
          if (format == "csv") {
            std::cout << a << ',' << b << ',' << c << ',' << d << ',';
            if (bd)
              std::cout << case_name(bd->kind) << ',' << opt(bd->k0) << ',' << opt(bd->k1)
                        << ',' << opt(bd->k2) << ',' << opt(bd->k3) << ',' << opt(bd->k4) << ','
                        << bd->value;
            else
              std::cout << "NoPositiveSolution,,,,,,";
            std::cout << ',' << check_status << '\n';
          } else if (format == "json") {
            json row;
            row["a"] = a;
            row["b"] = b;
            row["c"] = c;
            row["d"] = d;
            if (bd) {
              row["case"] = case_name(bd->kind);
              row["value"] = bd->value;
              if (bd->k0) row["k0"] = *bd->k0;
              if (bd->k1) row["k1"] = *bd->k1;
              if (bd->k2) row["k2"] = *bd->k2;
              if (bd->k3) row["k3"] = *bd->k3;
              if (bd->k4) row["k4"] = *bd->k4;
            } else {
              row["case"] = "NoPositiveSolution";
            }
            if (!check_status.empty()) row["check"] = check_status;
            std::cout << row.dump() << '\n';
          } else {
            std::cout << '(' << a << ',' << b << ',' << c << ',' << d << ")  ";
            if (bd) {
              std::cout << case_name(bd->kind);
              if (bd->k0) std::cout << " k0=" << *bd->k0;
              if (bd->k1) std::cout << " k1=" << *bd->k1;
              if (bd->k2) std::cout << " k2=" << *bd->k2;
              if (bd->k3) std::cout << " k3=" << *bd->k3;
              if (bd->k4) std::cout << " k4=" << *bd->k4;
              std::cout << "  value=" << bd->value;
              if (!check_status.empty()) std::cout << "  check=" << check_status;
            } else {
              std::cout << "no positive solution";
            }
            std::cout << '\n';
          }
        }
      }
    }
  }
  return mismatch ? 1 : 0;
}

// ---------------------------------------------------------------- certify

coloring load_coloring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("certify: cannot open coloring file '" + path + "'");
  json j;
  in >> j;
  return coloring_from_json(j);
}

int cmd_certify(const std::string& what, const std::string& text, const mode_options& mo,
                int n, int boundary, const std::string& base_path) {
  const constraint_system sys = parse_system(text);
  const coloring_mode mode = resolve_mode(mo);

  coloring chi;
  if (what == "proposition") {
    chi = proposition_coloring().chi;
  } else if (what == "ord2") {
    if (n < 0) throw std::invalid_argument("certify ord2: --n is required");
    chi = ord2_coloring(n);
  } else if (what == "two-block") {
    if (n < 0 || boundary < 0)
      throw std::invalid_argument("certify two-block: --n and --boundary are required");
    chi = two_block(boundary, n);
  } else if (what == "doubling") {
    if (base_path.empty())
      throw std::invalid_argument("certify doubling: --base FILE is required");
    chi = doubling(load_coloring_file(base_path));
  } else {
    chi = load_coloring_file(what);
  }

  const certificate cert = verify_coloring(sys, chi, mode);
  if (cert.valid) {
    std::cout << "VALID\n";
    return 0;
  }
  std::cout << "violation " << format_vector(*cert.violation) << '\n';
  return 1;
}

// ---------------------------------------------------------------- probe

// True iff no solution with maximum coordinate exactly t is forbidden.
bool bucket_clean(const constraint_system& sys, const coloring& chi, const coloring_mode& mode,
                  int t) {
  return for_each_solution_with_max(sys, t, [&](const std::vector<int>& v) {
    if (mode.kind() == coloring_mode::kind_t::mono) {
      const int first = chi.color_of(v.front());
      for (int e : v)
        if (chi.color_of(e) != first) return true;
      return false;
    }
    long long sum = 0;
    for (int e : v) sum += chi.color_of(e);
    return sum % mode.colors() != 0;
  });
}

void write_checkpoint(const std::string& path, const constraint_system& sys,
                      const coloring_mode& mode, int n, const coloring& chi) {
  json j;
  j["system"] = print_system(sys);
  j["key"] = canonical_key(sys);
  j["mode"] = mode.key();
  j["engine"] = engine_version;
  j["n"] = n;
  j["witness"] = coloring_to_json(chi);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("probe: cannot write checkpoint '" + path + "'");
  out << j.dump() << '\n';
}

// Loads and revalidates a checkpoint; nullopt means "no usable checkpoint"
// with the reason in `why`.
std::optional<coloring> load_checkpoint(const std::string& path, const constraint_system& sys,
                                        const coloring_mode& mode, std::string& why) {
  std::ifstream in(path);
  json j;
  try {
    in >> j;
    if (j.at("key").get<std::string>() != canonical_key(sys) ||
        j.at("mode").get<std::string>() != mode.key() ||
        j.at("engine").get<std::string>() != engine_version) {
      why = "checkpoint belongs to a different run";
      return std::nullopt;
    }
    coloring chi = coloring_from_json(j.at("witness"));
    if (chi.n() != j.at("n").get<int>() || chi.n() < 1) {
      why = "checkpoint length disagrees with its witness";
      return std::nullopt;
    }
    if (!verify_coloring(sys, chi, mode).valid) {
      why = "checkpoint witness fails re-verification";
      return std::nullopt;
    }
    return chi;
  } catch (const std::exception& e) {
    why = e.what();
    return std::nullopt;
  }
}

int cmd_probe(const std::string& text, const mode_options& mo, const engine_options& eo,
              const std::string& checkpoint, bool fresh) {
  const constraint_system sys = parse_system(text);
  const coloring_mode mode = resolve_mode(mo);

  coloring chi;  // current witness, valid on [1, chi.n()]
  if (!checkpoint.empty() && !fresh && std::filesystem::exists(checkpoint)) {
    std::string why;
    auto loaded = load_checkpoint(checkpoint, sys, mode, why);
    if (!loaded) {
      std::cerr << "probe: unusable checkpoint '" << checkpoint << "' (" << why
                << "); rerun with --fresh to discard it\n";
      return 1;
    }
    chi = *loaded;
  }

  // The 2-adic valuation coloring survives forever on some systems; tracking
  // it as a second candidate keeps those probes cheap where search stalls.
  bool ord2_alive = mode.colors() >= 3;
  coloring o2 = ord2_coloring(chi.n());
  if (ord2_alive && chi.n() > 0) ord2_alive = verify_coloring(sys, o2, mode).valid;

  const search_config cfg = resolve_engine(eo);
  for (int n = chi.n() + 1; n <= eo.max_n; ++n) {
    if (ord2_alive) {
      o2.values.push_back(
          static_cast<std::uint8_t>(std::countr_zero(static_cast<unsigned>(n)) % 3));
      if (!bucket_clean(sys, o2, mode, n)) ord2_alive = false;
    }

    // cheapest first: extend the current witness by one entry
    bool ok = false;
    chi.values.push_back(0);
    for (int c = 0; c < mode.colors(); ++c) {
      chi.values.back() = static_cast<std::uint8_t>(c);
      if (bucket_clean(sys, chi, mode, n)) {
        ok = true;
        break;
      }
    }
    if (!ok) chi.values.pop_back();

    if (!ok && ord2_alive) {
      chi = o2;
      ok = true;
    }
    if (!ok) {  // no shortcut left: full search at this level
      auto found = exists_valid_coloring(sys, mode, n, cfg);
      if (found) {
        chi = *found;
        ok = true;
      }
    }
    if (!ok) {
      std::cout << "no valid coloring of [1," << n << "]: value " << n << '\n';
      return 0;
    }
    std::cout << "valid coloring exists at n=" << n << std::endl;
    if (!checkpoint.empty()) write_checkpoint(checkpoint, sys, mode, n, chi);
  }
  std::cout << "still alive at n=" << eo.max_n << '\n';
  return 10;
}

// ---------------------------------------------------------------- solutions

int cmd_solutions(const std::string& text, int max_n, int bucket) {
  const constraint_system sys = parse_system(text);
  const solution_index index = solutions_up_to(sys, max_n);
  const int lo = bucket > 0 ? bucket : 1;
  const int hi = bucket > 0 ? bucket : max_n;
  for (int t = lo; t <= hi; ++t)
    for (const auto& v : index.bucket(t)) {
      json arr = json::array();
      for (int e : v.entries) arr.push_back(e);
      std::cout << arr.dump() << '\n';
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rado number toolkit: compute, bound, and certify"};
  app.require_subcommand(1);

  std::string system_text;
  mode_options mo;
  engine_options eo;
  std::string cache_path = result_cache::default_path();

  auto* compute = app.add_subcommand("compute", "Rado number of a system (JSON record)");
  compute->add_option("system", system_text, "Constraint system, e.g. \"x + y = z\"")
      ->required();
  add_mode_flags(compute, mo);
  add_engine_flags(compute, eo);
  compute->add_option("--cache", cache_path, "Results cache path (env: RADO_CACHE)")
      ->capture_default_str();

  auto* egz = app.add_subcommand("egz", "Compare two-color and zero-sum numbers");
  egz->add_option("system", system_text, "Constraint system")->required();
  add_engine_flags(egz, eo);

  std::string coeffs_range = "-3:3";
  std::string d_range = "-6:6";
  bool check = false;
  std::string format = "text";
  auto* table = app.add_subcommand("l3-table", "Closed-form table for ax+by+cz+d < 0");
  table->add_option("--coeffs", coeffs_range, "Coefficient range LO:HI")->capture_default_str();
  table->add_option("--d", d_range, "Constant range LO:HI")->capture_default_str();
  table->add_flag("--check", check, "Cross-check each row against the search engine");
  table->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  add_engine_flags(table, eo);

  std::string what;
  int certify_n = -1;
  int certify_boundary = -1;
  std::string base_path;
  auto* certify = app.add_subcommand(
      "certify", "Verify a coloring: two-block | doubling | ord2 | proposition | FILE");
  certify->add_option("coloring", what, "Construction name or JSON coloring file")->required();
  certify->add_option("system", system_text, "Constraint system")->required();
  add_mode_flags(certify, mo);
  certify->add_option("--n", certify_n, "Interval length (ord2, two-block)");
  certify->add_option("--boundary", certify_boundary, "First integer of the second block");
  certify->add_option("--base", base_path, "JSON two-coloring file to double");

  std::string checkpoint;
  bool fresh = false;
  auto* probe = app.add_subcommand("probe", "Grow n while a valid coloring exists");
  probe->add_option("system", system_text, "Constraint system")->required();
  add_mode_flags(probe, mo);
  add_engine_flags(probe, eo);
  probe->add_option("--checkpoint", checkpoint, "Resume file for long probes");
  probe->add_flag("--fresh", fresh, "Ignore an existing checkpoint");

  int dump_n = 0;
  int dump_bucket = 0;
  auto* solutions = app.add_subcommand("solutions", "Dump the solution index as JSON lines");
  solutions->add_option("system", system_text, "Constraint system")->required();
  solutions->add_option("--max-n", dump_n, "Interval bound")->required();
  solutions->add_option("--bucket", dump_bucket, "Only the bucket with this max coordinate");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) return cmd_compute(system_text, mo, eo, cache_path);
    if (egz->parsed()) return cmd_egz(system_text, eo);
    if (table->parsed()) return cmd_l3_table(coeffs_range, d_range, check, format, eo);
    if (certify->parsed())
      return cmd_certify(what, system_text, mo, certify_n, certify_boundary, base_path);
    if (probe->parsed()) return cmd_probe(system_text, mo, eo, checkpoint, fresh);
    if (solutions->parsed()) return cmd_solutions(system_text, dump_n, dump_bucket);
  } catch (const parse_error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
