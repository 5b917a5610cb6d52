// ucsize: command-line front end for the union-closed size toolkit.
//
//   ucsize fm 12                         f(m) and its extremal family
//   ucsize colex 9 --list                ||I(m)|| and the colex bound
//   ucsize analyze family.txt            JSON analysis of one family
//   ucsize verify --n 3                  run the lemma suite
//   ucsize search --n 4 --m 12           brute-force minimizers
//   ucsize gen --n 5 --mode random       print families
//
// Exit codes: 0 success, 1 check failure, 2 usage or parse error, 3 capacity.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ucs/colex.hpp"
#include "ucs/compression.hpp"
#include "ucs/core.hpp"
#include "ucs/enumerate.hpp"
#include "ucs/family_io.hpp"
#include "ucs/stability.hpp"
#include "ucs/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace ucs;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

std::string frac(const Rational& r) { return ucs::to_fraction(r); }

json set_list(const Family& f) {
  json out = json::array();
  f.for_each([&](ElementSet x) { out.push_back(to_string(x)); });
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
}

UpOrder parse_up_order(const std::string& s) {
  if (s == "ascending") return UpOrder::ascending;
  if (s == "descending") return UpOrder::descending;
  throw DomainError("--up-order must be ascending or descending");
}

EnumerationMode parse_mode(const std::string& s) {
  if (s == "exhaustive") return EnumerationMode::exhaustive;
  if (s == "random") return EnumerationMode::random;
  throw DomainError("--mode must be exhaustive or random");
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// ---- fm ---------------------------------------------------------------------

int cmd_fm(std::uint64_t m, const std::string& emit, bool as_json) {
  if (m == 0) throw DomainError("fm needs m >= 1");
  const auto shape = extremal_shape(m);
  const auto value = f_extremal(m);
  std::optional<Family> fam;
  if (shape.n <= kMaxGround) fam = extremal_construction(m);
  if (!emit.empty()) {
    if (!fam) throw CapacityError("extremal family too large to write");
    write_text(emit, format_family(*fam));
  }
  if (as_json) {
    json j;
    j["m"] = m;
    j["n"] = shape.n;
    j["m_prime"] = shape.m_prime;
    j["f"] = value;
    if (fam && fam->size() <= 4096) j["family"] = set_list(*fam);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "m = " << m << "\nn = " << shape.n << "\nm' = " << shape.m_prime << "\nf(m) = " << value << "\n";
    if (fam && fam->size() <= 64) std::cout << format_family(*fam);
  }
  return 0;
}

// ---- colex --------------------------------------------------------------------

int cmd_colex(std::uint64_t m, bool list, bool as_json) {
  json j;
  j["m"] = m;
  j["total_size"] = colex_total_size(m);
  if (m >= 2) {
    const auto b = colex_upper_bound(m);
    j["r"] = b.r;
    j["m_prime"] = frac(b.m_prime);
    j["bound"] = frac(b.value);
    j["tight"] = Rational(colex_total_size(m)) == b.value;
    j["equality_form"] = colex_bound_equality_form(m);
  }
  if (list) {
    if (m > 4096) throw CapacityError("--list is limited to m <= 4096");
    j["sets"] = set_list(initial_segment(m));
  }
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "||I(" << m << ")|| = " << j["total_size"].get<std::int64_t>() << "\n";
  if (m >= 2) {
    std::cout << "r = " << j["r"].get<int>() << ", m' = " << j["m_prime"].get<std::string>()
              << ", bound = " << j["bound"].get<std::string>() << (j["tight"].get<bool>() ? " (tight)" : "") << "\n";
  }
  if (list) {
    for (const auto& s : j["sets"]) std::cout << s.get<std::string>() << "\n";
  }
  return 0;
}

// ---- analyze ------------------------------------------------------------------

json analyze_rooted(const Family& f, std::optional<ElementSet> s) {
  const RootedAnalysis a(f);
  const auto& st = a.stats();
  json j;
  j["rooted_counts"] = st.rooted_counts;
  j["max_rooted"] = st.max_rooted;
  j["max_rooted_fraction"] = frac(st.max_rooted_fraction);
  j["full_shadow"] = a.full_shadow().size();
  j["fixed"] = a.fixed().size();
  j["bad"] = a.bad().size();
  j["good"] = a.good().size();
  j["bad_sets"] = set_list(a.bad());
  j["good_sets"] = set_list(a.good());
  j["y"] = a.y().size();
  j["deficiency"] = deficiency(f);
  j["largest_down_set"] = largest_downset(f).size();

  const auto search = partition_search(a);
  const Partition p = s ? Partition::from_s(*s, f.ground()) : search.partition;
  const PartitionAnalysis pa(a, p);
  json part;
  part["S"] = to_string(p.s);
  part["T"] = to_string(p.t);
  part["searched"] = !s.has_value();
  part["certified"] = search.certified;
  part["B_S"] = pa.b_s().size();
  part["B_T"] = pa.b_t().size();
  part["b1"] = pa.b1();
  part["b2"] = pa.b2();
  part["b3"] = pa.b3();
  part["z"] = pa.z().size();
  j["partition"] = part;

  json ineq = json::array();
  for (const auto& r : bad_set_lower_bounds(a, pa)) {
    json e;
    e["name"] = r.name;
    e["lhs"] = frac(r.lhs);
    e["rhs"] = frac(r.rhs);
    e["precondition"] = r.precondition;
    e["holds"] = !r.precondition || r.lhs <= r.rhs;
    ineq.push_back(e);
  }
  j["inequalities"] = ineq;

  json stab = json::array();
  for (auto v : {StabilityVariant::twelfth, StabilityVariant::eighth}) {
    const auto b = stability_bound(a, v);
    json e;
    e["constant"] = stability_constant(v);
    e["p"] = frac(b.p);
    e["bound"] = frac(b.value);
    e["holds"] = b.holds;
    stab.push_back(e);
  }
  j["stability"] = stab;

  json trace = json::array();
  const auto& d = a.down();
  for (std::size_t k = 0; k < d.sources().size(); ++k) {
    trace.push_back(to_string(d.sources()[k]) + " -> " + to_string(d.images()[k]));
  }
  j["compression_trace"] = trace;
  return j;
}

int cmd_analyze(const std::string& path, const std::string& partition, const std::string& order) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read '" + path + "'");
  const Family f = parse_family(in);
  const UpOrder up = parse_up_order(order);
  std::optional<ElementSet> s;
  if (!partition.empty()) s = detail::parse_set(partition, f.ground(), 0);

  json j;
  j["n"] = f.ground();
  j["size"] = f.size();
  j["total_size"] = f.total_size();
  const auto st = stats(f);
  j["degrees"] = st.degrees;
  j["colex_total_size"] = colex_total_size(f.size());
  const bool closed = is_union_closed(f);
  const bool rooted = is_simply_rooted(f);
  j["union_closed"] = closed;
  j["simply_rooted"] = rooted;
  j["down_set"] = is_downset(f);
  if (closed && !f.empty()) {
    json u;
    u["f"] = f_extremal(f.size());
    u["excess"] = f.total_size() - f_extremal(f.size());
    const ReimerDecomposition r(f, up);
    u["reimer_disjoint"] = r.disjoint();
    json cubes = json::array();
    for (const auto& c : r.cubes()) cubes.push_back("[" + to_string(c.bottom) + ", " + to_string(c.top) + "]");
    u["reimer_cubes"] = cubes;
    j["union_closed_analysis"] = u;
  }
  if (rooted) j["simply_rooted_analysis"] = analyze_rooted(f, s);
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ---- verify -------------------------------------------------------------------

struct VerifyArgs {
  int n = 3;
  std::string mode = "exhaustive";
  std::uint64_t samples = 10000;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> checks;
  unsigned parallel = 1;
  std::string report;
  bool as_json = false;
  std::string up_order = "ascending";
  std::optional<std::uint64_t> size;
  std::optional<bool> contains_empty;
  bool list = false;
};

int cmd_verify(const VerifyArgs& args) {
  if (args.list) {
    for (const auto& d : check_catalog()) {
      std::cout << d.id << "  [" << d.anchor << "]" << (d.conjecture ? "  (conjecture)" : "") << "\n    "
                << d.statement << "\n";
    }
    return 0;
  }
  SuiteConfig cfg;
  cfg.plan.n = args.n;
  cfg.plan.mode = parse_mode(args.mode);
  cfg.plan.sample_count = args.samples;
  cfg.plan.seed = args.seed ? *args.seed : fresh_seed();
  cfg.plan.size = args.size;
  cfg.plan.contains_empty = args.contains_empty;
  cfg.checks = args.checks;
  cfg.parallelism = std::max(1u, args.parallel);
  cfg.up_order = parse_up_order(args.up_order);
  if (cfg.plan.mode == EnumerationMode::random) std::cerr << "seed " << cfg.plan.seed << "\n";

  const SuiteReport r = run_suite(cfg);
  const std::string doc = to_json(r).dump(2) + "\n";
  if (!args.report.empty()) write_text(args.report, doc);
  if (args.as_json) {
    std::cout << doc;
  } else {
    std::cout << format_table(r);
  }
  return r.passed() ? 0 : kExitFailure;
}

// ---- search -------------------------------------------------------------------

int cmd_search(int n, std::uint64_t m, const std::string& emit, bool as_json) {
  if (n > kMaxExhaustiveGround) throw DomainError("search is limited to n <= 4");
  const auto r = extremal_search(n, m);
  std::string blocks;
  for (std::size_t k = 0; k < r.minimizers.size(); ++k) {
    if (k) blocks += "\n";
    blocks += format_family(r.minimizers[k].representative);
  }
  if (!emit.empty()) write_text(emit, blocks);
  const bool in_range = (std::uint64_t{1} << n) >= m && 2 * m > (std::uint64_t{1} << n);
  if (as_json) {
    json j;
    j["n"] = n;
    j["m"] = m;
    j["min_total"] = r.min_total;
    j["classes"] = r.minimizers.size();
    if (in_range) j["f"] = f_extremal(m);
    json fams = json::array();
    for (const auto& c : r.minimizers) fams.push_back(set_list(c.representative));
    j["minimizers"] = fams;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "min total size " << r.min_total << ", " << r.minimizers.size() << " class"
              << (r.minimizers.size() == 1 ? "" : "es") << "\n";
    if (in_range) std::cout << "f(" << m << ") = " << f_extremal(m) << "\n";
    std::cout << "\n" << blocks;
  }
  return 0;
}

// ---- gen ----------------------------------------------------------------------

int cmd_gen(int n, const std::string& mode, std::uint64_t samples, std::optional<std::uint64_t> seed,
            const std::string& kind, std::optional<std::uint64_t> size, std::optional<bool> contains_empty) {
  EnumerationPlan plan;
  plan.n = n;
  plan.mode = parse_mode(mode);
  plan.sample_count = samples;
  plan.seed = seed ? *seed : fresh_seed();
  plan.size = size;
  plan.contains_empty = contains_empty;
  if (kind != "union_closed" && kind != "simply_rooted") {
    throw DomainError("--kind must be union_closed or simply_rooted");
  }
  if (plan.mode == EnumerationMode::random) std::cerr << "seed " << plan.seed << "\n";
  FamilyStream stream(plan, kind == "union_closed" ? FamilyKind::union_closed : FamilyKind::simply_rooted);
  bool first = true;
  while (auto item = stream.next()) {
    if (!first) std::cout << "\n";
    first = false;
    std::cout << format_family(item->second);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Union-closed size problem toolkit"};
  app.require_subcommand(1);

  std::uint64_t fm_m = 0;
  std::string fm_emit;
  bool fm_json = false;
  auto* fm = app.add_subcommand("fm", "f(m) and the extremal union-closed family");
  fm->add_option("m", fm_m, "number of sets")->required();
  fm->add_option("--emit-family", fm_emit, "write the extremal family to this file");
  fm->add_flag("--json", fm_json, "JSON output");

  std::uint64_t colex_m = 0;
  bool colex_list = false;
  bool colex_json = false;
  auto* colex = app.add_subcommand("colex", "total size of a colex initial segment and its bound");
  colex->add_option("m", colex_m, "segment length")->required();
  colex->add_flag("--list", colex_list, "list the sets of I(m)");
  colex->add_flag("--json", colex_json, "JSON output");

  std::string an_path;
  std::string an_partition;
  std::string an_order = "ascending";
  auto* analyze = app.add_subcommand("analyze", "JSON analysis of a family file");
  analyze->add_option("path", an_path, "family file")->required();
  analyze->add_option("--partition", an_partition, "part S of the partition, e.g. {1,3}; default: searched");
  analyze->add_option("--up-order", an_order, "ascending or descending");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the lemma suite");
  verify->add_option("--n", va.n, "ground set size");
  verify->add_option("--mode", va.mode, "exhaustive or random");
  verify->add_option("--samples", va.samples, "number of random samples");
  verify->add_option("--seed", va.seed, "random seed (printed when omitted)");
  verify->add_option("--checks", va.checks, "check ids, comma separated")->delimiter(',');
  verify->add_option("--parallel", va.parallel, "worker threads");
  verify->add_option("--report", va.report, "write the JSON report to this file");
  verify->add_flag("--json", va.as_json, "print the JSON report instead of the table");
  verify->add_option("--up-order", va.up_order, "ascending or descending");
  verify->add_option("--size", va.size, "only families with this many sets");
  verify->add_option("--contains-empty", va.contains_empty, "only families with (true) or without (false) the empty set");
  verify->add_flag("--list", va.list, "list the checks and exit");

  int s_n = 0;
  std::uint64_t s_m = 0;
  std::string s_emit;
  bool s_json = false;
  auto* search = app.add_subcommand("search", "exhaustive minimum total size for m sets in P(n)");
  search->add_option("--n", s_n, "ground set size (<= 4)")->required();
  search->add_option("--m", s_m, "number of sets")->required();
  search->add_option("--emit", s_emit, "write the minimizers to this file");
  search->add_flag("--json", s_json, "JSON output");

  int g_n = 0;
  std::string g_mode = "exhaustive";
  std::uint64_t g_samples = 10;
  std::optional<std::uint64_t> g_seed;
  std::string g_kind = "union_closed";
  std::optional<std::uint64_t> g_size;
  std::optional<bool> g_empty;
  auto* gen = app.add_subcommand("gen", "print union-closed or simply rooted families");
  gen->add_option("--n", g_n, "ground set size")->required();
  gen->add_option("--mode", g_mode, "exhaustive or random");
  gen->add_option("--samples", g_samples, "number of random samples");
  gen->add_option("--seed", g_seed, "random seed (printed when omitted)");
  gen->add_option("--kind", g_kind, "union_closed or simply_rooted");
  gen->add_option("--size", g_size, "only families with this many sets");
  gen->add_option("--contains-empty", g_empty, "only families with (true) or without (false) the empty set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*fm) return cmd_fm(fm_m, fm_emit, fm_json);
    if (*colex) return cmd_colex(colex_m, colex_list, colex_json);
    if (*analyze) return cmd_analyze(an_path, an_partition, an_order);
    if (*verify) return cmd_verify(va);
    if (*search) return cmd_search(s_n, s_m, s_emit, s_json);
    if (*gen) return cmd_gen(g_n, g_mode, g_samples, g_seed, g_kind, g_size, g_empty);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
