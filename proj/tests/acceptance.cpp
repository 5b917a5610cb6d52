// Acceptance run: one PASS/FAIL line per criterion, details indented below.
//
// Exit status is 0 when every criterion passes except those listed in
// kKnownUnattainable, whose FAIL lines are still printed. See README.md.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ucs/colex.hpp"
#include "ucs/constants.hpp"
#include "ucs/enumerate.hpp"
#include "ucs/verify.hpp"

namespace {

using namespace ucs;
using Clock = std::chrono::steady_clock;

// Criterion 3 asks for equality exactly on the stated form set; the bound is
// also tight elsewhere (powers of two among others). Criterion 6 expects no
// violations of the max-rooted conjecture for n <= 4, but P(4) contains
// counterexamples (samples/max_rooted_counterexample.txt).
const std::set<int> kKnownUnattainable = {3, 6};

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    pass = pass && ok;
  }
  void info(const std::string& what) { details.push_back("     " + what); }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fixed(double x) {
  std::ostringstream s;
  s.precision(1);
  s << std::fixed << x;
  return s.str();
}

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---- 1 ----------------------------------------------------------------------

Outcome criterion_extremal() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t cases = 0;
  bool all = true;
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t m = (std::uint64_t{1} << (n - 1)) + 1; m <= (std::uint64_t{1} << n); ++m) {
      const auto r = extremal_search(n, m);
      const bool ok = r.min_total == f_extremal(m);
      if (!ok) o.require(false, "n=" + std::to_string(n) + " m=" + std::to_string(m));
      all = all && ok;
      ++cases;
    }
  }
  o.require(all, "exhaustive minimum equals f(m) for all " + std::to_string(cases) + " pairs (n, m), n <= 4");
  for (auto [m, f] : {std::pair{3, 3}, {6, 9}, {8, 12}, {12, 24}}) {
    o.require(f_extremal(m) == f, "f(" + std::to_string(m) + ") = " + std::to_string(f));
  }
  const double t = seconds_since(start);
  o.require(t < 120, "runtime " + fixed(t) + " s < 120 s");
  return o;
}

// ---- 2 ----------------------------------------------------------------------

Outcome criterion_colex() {
  Outcome o;
  const std::vector<ElementSet> listing = {
      ElementSet{},          ElementSet::of({1}),    ElementSet::of({2}),    ElementSet::of({1, 2}),
      ElementSet::of({3}),   ElementSet::of({1, 3}), ElementSet::of({2, 3}), ElementSet::of({1, 2, 3}),
      ElementSet::of({4})};
  o.require(initial_segment(9).members() == listing, "I(9) = {}, 1, 2, 12, 3, 13, 23, 123, 4 in order");
  o.require(colex_total_size(9) == 13, "||I(9)|| = 13");

  std::int64_t running = 0;
  std::uint64_t mismatch = 0;
  for (std::uint64_t m = 0; m <= (std::uint64_t{1} << 20); ++m) {
    if (colex_total_size(m) != running) ++mismatch;
    running += std::popcount(m);
  }
  o.require(mismatch == 0, "closed form equals digit-sum total for all m <= 2^20");

  std::uint64_t bad = 0;
  for (std::uint64_t a = 1; a <= 512; ++a) {
    for (std::uint64_t b = 1; b <= 512; ++b) bad += colex_superadditivity(a, b) < 0;
  }
  o.require(bad == 0, "||I(a)|| + ||I(b)|| <= ||I(a+b)|| - min(a,b) for all a, b <= 512");
  return o;
}

// ---- 3 ----------------------------------------------------------------------

Outcome criterion_lemma_bound() {
  Outcome o;
  constexpr std::int64_t kMax = std::int64_t{1} << 20;
  std::int64_t total = 0;  // ||I(m)||
  std::uint64_t above = 0;
  std::vector<std::int64_t> equal_not_form;
  std::uint64_t form_not_equal = 0;
  std::uint64_t form_count = 0;
  std::uint64_t powers = 0;
  for (std::int64_t m = 1; m <= kMax; ++m) {
    if (m > 1) total += std::popcount(static_cast<std::uint64_t>(m - 1));
    if (m < 2) continue;
    // 2^r <= 3m <= 2^{r+1}; 6 * bound = 3mr + 3m - 3 * 2^r.
    const int r = std::bit_width(static_cast<std::uint64_t>(3 * m)) - 1;
    const std::int64_t six_bound = 3 * m * r + 3 * m - 3 * (std::int64_t{1} << r);
    const std::int64_t six_total = 6 * total;
    if (six_total > six_bound) ++above;
    const bool equal = six_total == six_bound;
    const bool form = colex_bound_equality_form(static_cast<std::uint64_t>(m));
    form_count += form;
    if (form && !equal) ++form_not_equal;
    if (equal && !form) {
      equal_not_form.push_back(m);
      powers += std::has_single_bit(static_cast<std::uint64_t>(m));
    }
  }
  o.require(above == 0, "||I(m)|| <= m(r/2 - 1) + 3m'/2 for all 2 <= m <= 2^20 (sixth-scaled integers)");
  o.require(form_not_equal == 0, "equality at all " + std::to_string(form_count) + " form-set values in range");
  std::string sample;
  for (std::size_t k = 0; k < equal_not_form.size() && k < 8; ++k) sample += " " + std::to_string(equal_not_form[k]);
  o.require(equal_not_form.empty(), "equality only on the form set: " + std::to_string(equal_not_form.size()) +
                                         " further equality values (" + std::to_string(powers) +
                                         " powers of two), first:" + sample);

  // ||I(m)|| > mr/2 iff 3m > 2^{r+2}, for 1 <= r <= 18 and m <= 2^{r+4}.
  constexpr int kMaxR = 18;
  std::uint64_t cms_bad = 0;
  total = 0;
  for (std::int64_t m = 1; m <= (std::int64_t{1} << (kMaxR + 4)); ++m) {
    if (m > 1) total += std::popcount(static_cast<std::uint64_t>(m - 1));
    for (int r = 1; r <= kMaxR; ++r) {
      if (m > (std::int64_t{1} << (r + 4))) continue;
      const bool lhs = 2 * total > m * r;
      const bool rhs = 3 * m > (std::int64_t{1} << (r + 2));
      cms_bad += lhs != rhs;
    }
  }
  o.require(cms_bad == 0, "||I(m)|| > mr/2 iff m > 2^{r+2}/3 for r <= 18, m <= 2^{r+4}");
  return o;
}

// ---- 4 and 6 ----------------------------------------------------------------

SuiteReport suite(int n, EnumerationMode mode, std::uint64_t samples, std::uint64_t seed) {
  SuiteConfig cfg;
  cfg.plan.n = n;
  cfg.plan.mode = mode;
  cfg.plan.sample_count = samples;
  cfg.plan.seed = seed;
  cfg.parallelism = threads();
  return run_suite(cfg);
}

std::vector<SuiteReport> g_exhaustive;  // n = 0..4, shared with criterion 6

void describe_failures(Outcome& o, const SuiteReport& r) {
  for (const auto& c : r.checks) {
    if (c.status == CheckStatus::fail) {
      o.info(c.descriptor.id + ": " + std::to_string(c.violation_count) + " violations");
    }
  }
}

Outcome criterion_suite() {
  Outcome o;
  const auto missing = missing_anchors(check_catalog());
  o.require(missing.empty(), "catalog covers all " + std::to_string(kRequiredAnchors.size()) + " anchors");

  const auto start = Clock::now();
  std::uint64_t rooted = 0;
  bool all = true;
  for (int n = 0; n <= 4; ++n) {
    g_exhaustive.push_back(suite(n, EnumerationMode::exhaustive, 0, 0));
    rooted += g_exhaustive.back().families_rooted;
    all = all && g_exhaustive.back().passed();
    describe_failures(o, g_exhaustive.back());
  }
  const double t = seconds_since(start);
  o.require(all, "zero violations over all " + std::to_string(rooted) + " simply rooted families, n <= 4");
  o.require(t < 600, "exhaustive pass " + fixed(t) + " s < 600 s");

  for (int n = 5; n <= 8; ++n) {
    const auto s = Clock::now();
    const auto r = suite(n, EnumerationMode::random, 100000, 20240000 + static_cast<std::uint64_t>(n));
    std::uint64_t instances = 0;
    for (const auto& c : r.checks) instances += c.instances_tested;
    o.require(r.passed() && r.families_rooted == 100000,
              "n=" + std::to_string(n) + ": zero violations over " + std::to_string(r.families_rooted) +
                  " random simply rooted families (seed " + std::to_string(r.config.plan.seed) + ", " +
                  std::to_string(instances) + " check instances, " + fixed(seconds_since(s)) + " s)");
    describe_failures(o, r);
    for (const auto& p : r.probes) {
      if (p.violation_count > 0) {
        o.info("probe " + p.descriptor.id + " at n=" + std::to_string(n) + ": " +
               std::to_string(p.violation_count) + " violations (finding, not counted)");
      }
    }
  }
  return o;
}

Outcome criterion_probes() {
  Outcome o;
  for (const std::string id : {"conj_degree_bound", "conj_max_rooted"}) {
    std::uint64_t instances = 0;
    std::uint64_t violations = 0;
    bool labeled = false;
    for (const auto& r : g_exhaustive) {
      for (const auto& p : r.probes) {
        if (p.descriptor.id != id) continue;
        labeled = p.descriptor.conjecture;
        instances += p.instances_tested;
        violations += p.violation_count;
      }
    }
    o.require(labeled && violations == 0 && instances > 0,
              id + ": " + std::to_string(violations) + " violations over " + std::to_string(instances) +
                  " instances, n <= 4");
  }
  // A report whose only violations are probe violations still passes.
  SuiteConfig cfg;
  cfg.plan.n = 5;
  cfg.plan.mode = EnumerationMode::random;
  cfg.plan.sample_count = 20000;
  cfg.plan.seed = 1;
  cfg.checks = {"conj_max_rooted", "rooted_bound"};
  const auto r = run_suite(cfg);
  o.require(r.passed() && r.probes.size() == 1 && r.checks.size() == 1,
            "probes are reported separately and do not affect the exit status (n=5 probe violations: " +
                std::to_string(r.probes.empty() ? 0 : r.probes[0].violation_count) + ")");
  return o;
}

// ---- 5 ----------------------------------------------------------------------

Outcome criterion_constants() {
  Outcome o;
  ConstantChain chain;
  const auto d = derive_constants(chain);
  const auto& q = d.threshold;
  o.require(q.a * 3 == 9 && q.b * 3 == 36 && q.c * 3 == -1, "t=3, c=12, alpha=2/3 gives 9p^2 + 36p - 1 (x 1/3)");
  o.require(q.compare(BigRational(1, 37)) < 0, "p = 1/37 lies on the failing side");
  o.require(c2_from_c1(BigRational(1, 37)) == BigRational(2, 327), "c1 = 1/37 gives c2 = 2/327");
  o.info("certified c1 >= " + to_decimal(d.c1_lower, 8));

  chain.constant = 8;
  chain.feedback = true;
  const auto e = derive_constants(chain);
  o.require(e.c1_lower >= BigRational(1, 24), "c = 8 with feedback: c1 >= " + to_decimal(e.c1_lower, 6) + " >= 1/24");
  o.require(e.c2_lower >= BigRational(1, 104), "c = 8 with feedback: c2 >= " + to_decimal(e.c2_lower, 6) + " >= 1/104");
  o.info(std::to_string(e.rounds.size()) + " feedback rounds");
  return o;
}

// ---- 7 ----------------------------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(UCSIZE_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / ("ucs_accept_p1_" + std::to_string(::getpid()) + ".json");
  const auto b = dir / ("ucs_accept_p8_" + std::to_string(::getpid()) + ".json");
  const std::string base = "verify --n 6 --mode random --samples 100000 --seed 7 ";
  const auto start = Clock::now();
  const int ca = run_cli(base + "--parallel 1 --report " + a.string());
  const int cb = run_cli(base + "--parallel 8 --report " + b.string());
  o.require(ca == 0 && cb == 0, "both runs exit 0");
  const std::string ja = slurp(a);
  const std::string jb = slurp(b);
  o.require(!ja.empty() && ja == jb,
            "reports byte-identical (" + std::to_string(ja.size()) + " bytes, " + fixed(seconds_since(start)) + " s)");
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"extremal values by exhaustive search", criterion_extremal},
      {"colex exactness", criterion_colex},
      {"colex upper bound and threshold", criterion_lemma_bound},
      {"lemma suite", criterion_suite},
      {"constant chain", criterion_constants},
      {"conjecture probes", criterion_probes},
      {"determinism across parallelism", criterion_determinism},
  };
  // Criterion 6 reuses the exhaustive reports of criterion 4.
  bool ok = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    const auto start = Clock::now();
    const Outcome o = criteria[k].second();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << criteria[k].first << " ("
              << fixed(seconds_since(start)) << " s)";
    if (!o.pass && kKnownUnattainable.count(id)) std::cout << " [known unattainable, see README]";
    std::cout << "\n";
    for (const auto& d : o.details) std::cout << "    " << d << "\n";
    std::cout.flush();
    if (!o.pass && !kKnownUnattainable.count(id)) ok = false;
  }
  return ok ? 0 : 1;
}
