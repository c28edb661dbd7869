#include "sl2grow/app/cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <utility>

#include "sl2grow/app/json.hpp"
#include "sl2grow/app/verify.hpp"
#include "sl2grow/error.hpp"
#include "sl2grow/io.hpp"

namespace sl2grow::app {

namespace {

constexpr std::uint32_t kPrimeCap = 101;

struct Globals {
  bool json = false;
  bool allow_large = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Aligned "key  value" lines for the human-readable output.
using Rows = std::vector<std::pair<std::string, std::string>>;

void print_rows(std::ostream& out, const Rows& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) fmt::print(out, "{:<{}}  {}\n", k, width, v);
}

Rows report_rows(const GrowthReport& r) {
  const auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {{"sizeS", std::to_string(r.sizeS)},
          {"sizeS2", std::to_string(r.sizeS2)},
          {"sizeS3", std::to_string(r.sizeS3)},
          {"delta_ratio", fmt::format("{:.12f}", r.delta_ratio)},
          {"generates", b(r.generates)},
          {"symmetric", b(r.symmetric)},
          {"contains_identity", b(r.contains_identity)}};
}

void check_prime(std::uint32_t p, const Globals& g) {
  if (p > kPrimeCap && !g.allow_large) {
    throw UsageError(fmt::format("p={} exceeds the cap of {}; pass --allow-large to override", p, kPrimeCap));
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw UsageError(fmt::format("cannot write '{}'", path));
  f << text;
}

bool is_usage_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime:
    case ErrorCode::ParseError:
    case ErrorCode::NotRealizable:
    case ErrorCode::ModulusMismatch:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::DomainError:
    case ErrorCode::BadIndex:
    case ErrorCode::NotInSL2:
    case ErrorCode::XInH:
    case ErrorCode::XSquaredNotInH:
    case ErrorCode::OrderTwo:
      return true;
    default:
      return false;
  }
}

// construct ---------------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  std::uint32_t p = 0;
  std::optional<std::string> with_x;
  bool coset_core = false;
  std::optional<std::string> write_set;
};

int do_construct(const ConstructArgs& a, const Globals& g, std::ostream& out) {
  check_prime(a.p, g);
  if (a.coset_core && !a.with_x) throw UsageError("--coset-core needs --with-x");
  const auto table = GroupTable::create(a.p);
  const SubgroupSpec spec = build_subgroup(SubgroupKind::parse(a.kind), table);
  Json j{{"subgroup", to_json(spec)}};
  Rows rows{{"kind", spec.kind.to_string()},
            {"p", std::to_string(spec.p)},
            {"order", std::to_string(spec.group.order())}};
  for (const auto& gen : spec.generators) rows.emplace_back("generator", gen.to_string());

  if (a.with_x) {
    GroupElement x = GroupElement::identity(table->field());
    if (*a.with_x == "auto") {
      x = find_good_x(spec.group).front().x;
    } else {
      x = GroupElement::parse(*a.with_x, table->field());
    }
    const std::size_t c = conjugate_index(spec.group, x);
    const ElementSet s = a.coset_core ? coset_core_set(spec.group, x) : splus2(spec.group, x);
    const GrowthReport r = analyze(s);
    j["x"] = x.to_string();
    j["c"] = c;
    j["set"] = a.coset_core ? "coset_core" : "subgroup_plus_two";
    j["report"] = to_json(r);
    rows.emplace_back("x", x.to_string());
    rows.emplace_back("c", std::to_string(c));
    rows.emplace_back("set", a.coset_core ? "coset_core" : "subgroup_plus_two");
    for (auto& row : report_rows(r)) rows.push_back(std::move(row));
    if (a.write_set) write_file(*a.write_set, format_set(s));
  } else if (a.write_set) {
    write_file(*a.write_set, format_set(spec.group.elements()));
  }
  if (g.json) {
    out << j.dump(2) << '\n';
  } else {
    print_rows(out, rows);
  }
  return kSuccess;
}

// analyze -----------------------------------------------------------------

struct AnalyzeArgs {
  std::optional<std::uint32_t> p;
  std::string set;
  std::optional<std::string> write_set;
};

ElementSet load_named_set(const AnalyzeArgs& a, const Globals& g) {
  const auto need_p = [&]() {
    if (!a.p) throw UsageError(fmt::format("--set {} needs --p", a.set));
    check_prime(*a.p, g);
    return GroupTable::create(*a.p);
  };
  if (a.set == "optimal") return optimal_set(need_p());
  if (a.set == "evdlt") return evdlt_set(need_p());
  if (a.set == "published") {
    if (a.p && *a.p != 5) throw UsageError("--set published exists only for p=5");
    return published_optimum(GroupTable::create(5));
  }
  ElementSet s = read_set_file(a.set);
  check_prime(s.table().prime(), g);
  if (a.p && *a.p != s.table().prime()) {
    throw UsageError(fmt::format("--p {} disagrees with the file header p={}", *a.p, s.table().prime()));
  }
  return s;
}

int do_analyze(const AnalyzeArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const ElementSet s = load_named_set(a, g);
  const GrowthReport r = analyze(s);
  if (a.write_set) write_file(*a.write_set, format_set(s));
  if (g.json) {
    out << to_json(r).dump(2) << '\n';
  } else {
    print_rows(out, report_rows(r));
  }
  if (!r.symmetric) {
    fmt::print(err, "sl2grow: SymmetryViolation: the set is not closed under inversion\n");
    return kCheckFailed;
  }
  return kSuccess;
}

// search ------------------------------------------------------------------

struct SearchArgs {
  std::uint32_t p = 5;
  std::string half = "both";
  unsigned prune_depth = 3;
  unsigned frontier_depth = 2;
  unsigned workers = 1;
  std::optional<std::string> out;
};

int do_search(const SearchArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  check_prime(a.p, g);
  SearchConfig config;
  config.p = a.p;
  config.half = parse_search_half(a.half);
  config.conjugacy_prune_depth = a.prune_depth;
  config.frontier_depth = a.frontier_depth;
  config.worker_count = a.workers;
  fmt::print(err, "sl2grow: searching SL(2,{}) ({}, prune depth {}, {} workers)\n", a.p, a.half, a.prune_depth,
             a.workers);
  const SearchResult r = backtrack_search(config);
  fmt::print(err, "sl2grow: search finished in {:.2f} s\n", r.wall_time.count());
  const Json j = to_json(r);
  if (a.out) write_file(*a.out, j.dump(2) + "\n");
  if (g.json) {
    out << j.dump(2) << '\n';
  } else {
    print_rows(out, {{"best_delta", fmt::format("{:.12f}", r.best_delta)},
                     {"best_size", std::to_string(r.best_size)},
                     {"best_cube", std::to_string(r.best_cube)},
                     {"witnesses", std::to_string(r.witnesses.size())},
                     {"nodes_visited", std::to_string(r.nodes_visited)},
                     {"nodes_cut", std::to_string(r.nodes_cut)}});
  }
  return r.witnesses.empty() ? kCheckFailed : kSuccess;
}

// perturb -----------------------------------------------------------------

struct PerturbArgs {
  std::uint32_t p = 17;
  std::string kind;
  bool exhaustive = false;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  unsigned workers = 1;
  std::optional<std::string> out;
};

int do_perturb(const PerturbArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  check_prime(a.p, g);
  const auto table = GroupTable::create(a.p);
  const ElementSet s = optimal_set(table);
  const PerturbKind kind = parse_perturb_kind(a.kind);
  PerturbationReport r = [&] {
    switch (kind) {
      case PerturbKind::Add: return perturb_add(s, a.workers);
      case PerturbKind::Remove: return perturb_remove(s, a.workers);
      case PerturbKind::Swap:
        return perturb_swap(s, a.exhaustive ? std::nullopt : std::optional<std::size_t>(a.samples), a.seed,
                            a.workers);
    }
    throw Error(ErrorCode::DomainError, "unknown perturbation kind");
  }();
  const Json j = to_json(r);
  if (a.out) write_file(*a.out, j.dump(2) + "\n");
  if (g.json) {
    out << j.dump(2) << '\n';
  } else {
    print_rows(out, {{"kind", std::string(to_string(r.kind))},
                     {"trials", std::to_string(r.trials)},
                     {"base_delta", fmt::format("{:.12f}", r.base_delta)},
                     {"min_delta_seen", fmt::format("{:.12f}", r.min_delta_seen)},
                     {"all_exceed_base", r.all_exceed_base ? "true" : "false"},
                     {"worst_size", std::to_string(r.worst_size)},
                     {"worst_cube", std::to_string(r.worst_cube)},
                     {"min_cube_seen", std::to_string(r.min_cube_seen)},
                     {"cube_invariant", r.cube_invariant ? "true" : "false"}});
  }
  bool ok = r.all_exceed_base;
  if (kind == PerturbKind::Remove) ok = ok && r.cube_invariant;
  if (kind == PerturbKind::Swap) ok = ok && r.min_cube_seen >= r.base_cube + 14;
  if (!ok) fmt::print(err, "sl2grow: perturbation check failed\n");
  return ok ? kSuccess : kCheckFailed;
}

// catalog -----------------------------------------------------------------

int do_catalog(std::uint32_t p, const Globals& g, std::ostream& out, std::ostream& err) {
  check_prime(p, g);
  const auto table = GroupTable::create(p);
  Json rows = Json::array();
  std::vector<std::array<std::string, 3>> lines;
  bool ok = true;
  for (const auto& kind : realizable_kinds(p)) {
    std::string status = "ok";
    std::size_t order = 0;
    try {
      order = build_subgroup(kind, table).group.order();
      if (order != kind.expected_order(p)) {
        status = "order mismatch";
        ok = false;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SearchExhausted) throw;
      status = "unavailable";
      fmt::print(err, "sl2grow: {}: {}\n", kind.to_string(), e.what());
    }
    rows.push_back(Json{{"kind", kind.to_string()}, {"order", kind.expected_order(p)}, {"status", status}});
    lines.push_back({kind.to_string(), std::to_string(kind.expected_order(p)), status});
  }
  if (g.json) {
    out << Json{{"p", p}, {"subgroups", rows}}.dump(2) << '\n';
  } else {
    std::size_t w = 4;
    for (const auto& l : lines) w = std::max(w, l[0].size());
    fmt::print(out, "{:<{}}  {:>6}  {}\n", "kind", w, "order", "status");
    for (const auto& l : lines) fmt::print(out, "{:<{}}  {:>6}  {}\n", l[0], w, l[1], l[2]);
  }
  return ok ? kSuccess : kCheckFailed;
}

// verify-all --------------------------------------------------------------

struct VerifyArgs {
  bool skip_search = false;
  bool exhaustive_swap = false;
  unsigned workers = 1;
  std::vector<int> only;
};

int do_verify(const VerifyArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  VerifyOptions opts;
  opts.include_search = !a.skip_search;
  opts.exhaustive_swap = a.exhaustive_swap;
  opts.workers = a.workers;
  opts.only = a.only;
  opts.on_result = [&](const CheckOutcome& o) {
    fmt::print(err, "sl2grow: {} {} ({:.2f} s)\n", o.name, o.skipped ? "skipped" : o.passed ? "passed" : "FAILED",
               o.seconds);
  };
  const auto outcomes = run_checks(opts);
  const bool all = std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.passed; });
  if (g.json) {
    Json checks = Json::array();
    Json timing = Json::object();
    for (const auto& o : outcomes) {
      checks.push_back(Json{{"number", o.number},
                            {"name", o.name},
                            {"passed", o.passed},
                            {"skipped", o.skipped},
                            {"details", o.details}});
      timing[o.name] = o.seconds;
    }
    out << Json{{"passed", all}, {"checks", checks}, {"timing", timing}}.dump(2) << '\n';
  } else {
    std::size_t w = 5;
    for (const auto& o : outcomes) w = std::max(w, o.name.size());
    fmt::print(out, "{:>2}  {:<{}}  {}\n", "#", "check", w, "result");
    for (const auto& o : outcomes) {
      fmt::print(out, "{:>2}  {:<{}}  {}\n", o.number, o.name, w, o.skipped ? "SKIP" : o.passed ? "PASS" : "FAIL");
      for (const auto& d : o.details) fmt::print(out, "    {}\n", d);
    }
  }
  return all ? kSuccess : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Growth of small subsets of SL(2,p)", "sl2grow"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_flag("--allow-large", g.allow_large, "Allow primes above 101");

  unsigned default_workers = 1;
  if (const char* env = std::getenv("SL2GROW_WORKERS"); env != nullptr) {
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), default_workers);
    if (ec != std::errc{} || ptr != text.data() + text.size() || default_workers == 0) {
      fmt::print(err, "sl2grow: SL2GROW_WORKERS must be a positive integer, got '{}'\n", text);
      return kUsage;
    }
  }
  const auto add_workers = [&](CLI::App* sub, unsigned& workers) {
    workers = default_workers;
    sub->add_option("--workers", workers, "Worker threads (default: $SL2GROW_WORKERS or 1)")
        ->check(CLI::PositiveNumber);
  };

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a catalog subgroup and optionally a set from it");
  construct->add_option("--kind", ca.kind, "upper_triangular, unipotent, diagonal, qr_index2, cyclic:N, "
                                           "gen_quaternion:N, two_dot_S4, two_dot_A4, two_dot_A5")
      ->required();
  construct->add_option("--p", ca.p, "Prime")->required();
  construct->add_option("--with-x", ca.with_x, "'auto' or a matrix [[a,b],[c,d]]; builds H u {x, x^-1}");
  construct->add_flag("--coset-core", ca.coset_core, "Build H u (xH n Hx) instead");
  construct->add_option("--write-set", ca.write_set, "Write the resulting set to a file");

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "Report |S|, |S^2|, |S^3| and the growth ratio");
  analyze_cmd->add_option("--p", aa.p, "Prime (for named sets)");
  analyze_cmd->add_option("--set", aa.set, "optimal, evdlt, published, or a set file")->required();
  analyze_cmd->add_option("--write-set", aa.write_set, "Write the analysed set to a file");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Exhaustive search for the smallest growth ratio");
  search->add_option("--p", sa.p, "Prime")->capture_default_str();
  search->add_option("--half", sa.half, "with-center, without-center or both")
      ->check(CLI::IsMember({"with-center", "without-center", "both"}))
      ->capture_default_str();
  search->add_option("--prune-depth", sa.prune_depth, "Conjugacy pruning depth")->capture_default_str();
  search->add_option("--frontier-depth", sa.frontier_depth, "Depth at which work is split")->capture_default_str();
  add_workers(search, sa.workers);
  search->add_option("--out", sa.out, "Write the JSON result to a file");

  PerturbArgs pa;
  auto* perturb = app.add_subcommand("perturb", "Perturb the optimal set by one inverse pair");
  perturb->add_option("--p", pa.p, "Prime, 1 mod 16")->capture_default_str();
  perturb->add_option("--kind", pa.kind, "add, remove or swap")
      ->check(CLI::IsMember({"add", "remove", "swap"}))
      ->required();
  perturb->add_flag("--exhaustive", pa.exhaustive, "Swap: try every combination");
  perturb->add_option("--seed", pa.seed, "Swap sampling seed")->capture_default_str();
  perturb->add_option("--samples", pa.samples, "Swap sample size")->capture_default_str();
  add_workers(perturb, pa.workers);
  perturb->add_option("--out", pa.out, "Write the JSON report to a file");

  std::uint32_t catalog_p = 0;
  auto* catalog = app.add_subcommand("catalog", "List the subgroup kinds realizable at a prime");
  catalog->add_option("--p", catalog_p, "Prime")->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify-all", "Run every reproduction check");
  verify->add_flag("--skip-search", va.skip_search, "Skip the exhaustive p = 5 search");
  verify->add_flag("--exhaustive-swap", va.exhaustive_swap, "Run every swap perturbation");
  verify->add_option("--only", va.only, "Check numbers to run");
  add_workers(verify, va.workers);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (construct->parsed()) return do_construct(ca, g, out);
    if (analyze_cmd->parsed()) return do_analyze(aa, g, out, err);
    if (search->parsed()) return do_search(sa, g, out, err);
    if (perturb->parsed()) return do_perturb(pa, g, out, err);
    if (catalog->parsed()) return do_catalog(catalog_p, g, out, err);
    if (verify->parsed()) return do_verify(va, g, out, err);
  } catch (const UsageError& e) {
    fmt::print(err, "sl2grow: {}\n", e.what());
    return kUsage;
  } catch (const Error& e) {
    fmt::print(err, "sl2grow: {}\n", e.what());
    return is_usage_code(e.code()) ? kUsage : kCheckFailed;
  }
  return kUsage;
}

}  // namespace sl2grow::app
