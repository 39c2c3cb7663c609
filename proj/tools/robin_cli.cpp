// robin_cli: scans, single-n checks, canonicalization, eps traces, bound
// suites and family generation over the robin headers.
//
// Option precedence (CLI11 semantics): command-line flag, then --config file,
// then ROBIN_* environment variable, then the built-in default.

#include "robin/robin.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace robin;
using nlohmann::json;

enum ExitCode : int { kPositive = 0, kError = 1, kNegative = 2, kIndeterminate = 3 };

struct Settings {
  std::string emit = "csv";
  double tolerance = 1e-30;
  int max_escalations = 4;
  unsigned threads = 1;
  LabConfig lab;

  EvalOptions eval() const { return {tolerance, max_escalations}; }
  bool json() const { return emit == "json"; }
};

struct Input {
  std::string text;
  std::string integer;

  void attach(CLI::App* cmd) {
    cmd->add_option("factorization", text, "factorization such as 2^4*3^2*5*7");
    cmd->add_option("-n,--n", integer, "plain integer, factored by trial division");
  }

  Factorization resolve() const {
    if (text.empty() == integer.empty()) throw ParseError("give exactly one of a factorization or --n");
    if (!text.empty()) return parse_factorization(text);
    BigN n;
    if (n.set_str(integer, 10) != 0 || n < 1) throw ParseError("--n expects a positive decimal integer");
    return factorize(n);
  }
};

void emit_reports(const Settings& s, const std::vector<RobinReport>& reports) {
  if (s.json()) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    std::cout << arr.dump(2) << '\n';
  } else {
    write_robin_csv(std::cout, reports);
  }
}

void emit_bounds(const Settings& s, const std::vector<BoundReport>& bounds) {
  if (s.json()) {
    json arr = json::array();
    for (const auto& b : bounds) arr.push_back(to_json(b));
    std::cout << arr.dump(2) << '\n';
  } else {
    write_bound_csv(std::cout, bounds);
  }
}

int exit_for(Sign sign) {
  switch (sign) {
    case Sign::Positive: return kPositive;
    case Sign::Negative: return kNegative;
    case Sign::Indeterminate: return kIndeterminate;
  }
  return kIndeterminate;
}

int run_check(const Settings& s, const Input& in) {
  const RobinReport report = robin_report(in.resolve(), s.eval());
  emit_reports(s, {report});
  return exit_for(report.d_sign);
}

int run_scan(const Settings& s, std::uint64_t lo, std::uint64_t hi) {
  const ScanResult result = scan(lo, hi, s.threads, s.eval());
  std::vector<std::uint64_t> listed = result.violators;
  listed.insert(listed.end(), result.indeterminate.begin(), result.indeterminate.end());
  std::sort(listed.begin(), listed.end());
  std::vector<RobinReport> reports;
  for (std::uint64_t n : listed) reports.push_back(robin_report(factorize(n), s.eval()));

  if (s.json()) {
    json out = {{"lo", lo},
                {"hi", hi},
                {"violators", result.violators},
                {"indeterminate", result.indeterminate},
                {"record_holders", result.record_holders}};
    out["reports"] = json::array();
    for (const auto& r : reports) out["reports"].push_back(to_json(r));
    std::cout << out.dump(2) << '\n';
  } else {
    write_robin_csv(std::cout, reports);
  }
  std::cerr << "scan [" << lo << ", " << hi << "]: " << result.violators.size() << " violators, "
            << result.indeterminate.size() << " indeterminate, " << result.seconds << " s on " << result.threads
            << " thread(s)\n";
  return result.indeterminate.empty() ? 0 : kIndeterminate;
}

int run_canon(const Settings& s, const Input& in) {
  const Factorization f = in.resolve();
  const Factorization canonical = canonicalize(f).to_factorization();
  const Theorem1Gap gap = theorem1_gap_pair(f, s.tolerance);
  std::vector<RobinReport> reports{robin_report(f, s.eval()), robin_report(canonical, s.eval())};
  if (s.json()) {
    json out = {{"original", to_json(reports[0])},
                {"canonical", to_json(reports[1])},
                {"ordering", to_string(gap.ordering)},
                {"dominance_certified", gap.dominance_certified()}};
    std::cout << out.dump(2) << '\n';
  } else {
    write_robin_csv(std::cout, reports);
  }
  return gap.dominance_certified() ? 0 : kIndeterminate;
}

int run_epsilon(const Settings& s, const Input& in, bool trace, std::uint32_t shift) {
  Factorization f = in.resolve();
  if (shift > 0) {
    if (f.empty() || !f.has_canonical_support()) {
      throw DomainError("eps requires canonical support (the first m primes); canonicalize first");
    }
    std::vector<std::uint32_t> exps = f.exponents();
    for (auto& e : exps) e += shift;
    f = Factorization::on_first_primes(exps);
  }
  const EpsilonTrace tr = epsilon_trace(f, s.eval());
  const std::size_t first = trace ? 0 : tr.values.size() - 1;
  if (s.json()) {
    json rows = json::array();
    for (std::size_t i = first; i < tr.values.size(); ++i) {
      rows.push_back({{"s", i + 1}, {"epsilon", interval_json(tr.values[i])}});
    }
    std::cout << json{{"factorization", f.to_string()}, {"epsilon", rows}}.dump(2) << '\n';
  } else {
    std::cout << "# precision_bits=" << tr.values.back().precision() << '\n' << "s,epsilon_lo,epsilon_hi\n";
    for (std::size_t i = first; i < tr.values.size(); ++i) {
      std::cout << i + 1 << ',' << tr.values[i].lower_string(kCsvDigits) << ','
                << tr.values[i].upper_string(kCsvDigits) << '\n';
    }
  }
  return 0;
}

struct BoundsArgs {
  std::string suite = "all";
  std::uint64_t theta_lo = 10'544'112;
  std::uint64_t theta_hi = 12'000'000;
  std::uint64_t k_max = 100'000;
  std::uint64_t mertens_x = 10'000'000;
  std::uint64_t rs_lo = 59;
  std::uint64_t rs_hi = 10'000'000;
};

int run_bounds(const Settings& s, const BoundsArgs& a) {
  const auto wants = [&](const char* name) { return a.suite == "all" || a.suite == name; };
  std::uint64_t limit = 1000;
  if (wants("theta")) limit = std::max(limit, a.theta_hi);
  if (wants("dusart")) limit = std::max(limit, nth_prime_upper_bound(a.k_max));
  if (wants("mertens")) limit = std::max(limit, a.mertens_x);
  if (wants("rosser")) limit = std::max(limit, a.rs_hi);
  const PrimeTable table = sieve(limit, s.threads);

  std::vector<BoundReport> out;
  if (wants("theta")) {
    out.push_back(check_theta_relative(table, a.theta_lo, a.theta_hi, 1e-20, s.lab));
    out.push_back(check_theta_additive(table, a.theta_lo, a.theta_hi, 1e-20, s.lab));
  }
  if (wants("dusart")) out.push_back(check_dusart(table, a.k_max));
  if (wants("rosser")) {
    auto rs = check_rosser_schoenfeld(table, a.rs_lo, a.rs_hi);
    out.push_back(std::move(rs.lower));
    out.push_back(std::move(rs.upper));
  }
  if (wants("mertens")) out.push_back(check_mertens(table, a.mertens_x, s.lab));
  if (out.empty()) throw std::invalid_argument("unknown suite '" + a.suite + "'");
  emit_bounds(s, out);
  return std::all_of(out.begin(), out.end(), [](const BoundReport& b) { return b.pass; }) ? 0 : kNegative;
}

int run_generate(const Settings& s, const std::string& family, std::size_t count,
                 const std::vector<std::uint32_t>& exponents) {
  CandidateFamily gen(parse_family_tag(family), exponents);
  std::vector<RobinReport> reports;
  while (reports.size() < count) {
    auto next = gen.next();
    if (!next) break;
    reports.push_back(robin_report(*next, s.eval()));
  }
  emit_reports(s, reports);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified Robin-inequality toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file");

  Settings s;
  app.add_option("--emit", s.emit, "output format")->check(CLI::IsMember({"csv", "json"}))->envname("ROBIN_EMIT");
  app.add_option("--tolerance", s.tolerance, "target enclosure width")
      ->check(CLI::PositiveNumber)
      ->envname("ROBIN_TOLERANCE");
  app.add_option("--max-precision-escalations", s.max_escalations, "precision doublings allowed")
      ->check(CLI::NonNegativeNumber)
      ->envname("ROBIN_MAX_PRECISION_ESCALATIONS");
  app.add_option("--threads", s.threads, "worker threads for scan and sieving")
      ->check(CLI::PositiveNumber)
      ->envname("ROBIN_THREADS");
  app.add_option("--mertens-envelope", s.lab.mertens_envelope, "Mertens product envelope")
      ->envname("ROBIN_MERTENS_ENVELOPE");
  app.add_option("--theta-additive-constant", s.lab.theta_additive_constant, "c in p +- c p / ln p")
      ->envname("ROBIN_THETA_ADDITIVE_CONSTANT");

  std::uint64_t scan_lo = 3, scan_hi = 0;
  auto* scan_cmd = app.add_subcommand("scan", "list Robin violators in [lo, hi]");
  scan_cmd->add_option("lo", scan_lo, "lower end (>= 3)")->required();
  scan_cmd->add_option("hi", scan_hi, "upper end")->required();

  Input check_in;
  auto* check_cmd = app.add_subcommand("check", "certified report for one n; exit 0/2/3 for D > 0, D < 0, unresolved");
  check_in.attach(check_cmd);

  Input canon_in;
  auto* canon_cmd = app.add_subcommand("canon", "report n and its canonical form");
  canon_in.attach(canon_cmd);

  Input eps_in;
  bool eps_trace = false;
  std::uint32_t eps_shift = 0;
  auto* eps_cmd = app.add_subcommand("epsilon", "eps_m of a number on the first m primes");
  eps_in.attach(eps_cmd);
  eps_cmd->add_flag("--trace", eps_trace, "print every prefix eps_1 ... eps_m");
  eps_cmd->add_option("--shift", eps_shift, "raise every exponent by t first");

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "prime-counting bound suites");
  bounds_cmd->add_option("--suite", bounds.suite)->check(CLI::IsMember({"all", "theta", "dusart", "rosser", "mertens"}));
  bounds_cmd->add_option("--theta-lo", bounds.theta_lo);
  bounds_cmd->add_option("--theta-hi", bounds.theta_hi);
  bounds_cmd->add_option("--kmax", bounds.k_max);
  bounds_cmd->add_option("--x", bounds.mertens_x);
  bounds_cmd->add_option("--rs-lo", bounds.rs_lo);
  bounds_cmd->add_option("--rs-hi", bounds.rs_hi);

  std::string family;
  std::size_t count = 8;
  std::vector<std::uint32_t> exponents;
  auto* gen_cmd = app.add_subcommand("generate", "reports along a candidate family");
  gen_cmd->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"primorial", "descending", "factorial", "ca"}));
  gen_cmd->add_option("--count", count)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--exponents", exponents, "beta for the descending family, e.g. 3,2,1")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kError;
  }

  try {
    if (*scan_cmd) return run_scan(s, scan_lo, scan_hi);
    if (*check_cmd) return run_check(s, check_in);
    if (*canon_cmd) return run_canon(s, canon_in);
    if (*eps_cmd) return run_epsilon(s, eps_in, eps_trace, eps_shift);
    if (*bounds_cmd) return run_bounds(s, bounds);
    if (*gen_cmd) return run_generate(s, family, count, exponents);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
