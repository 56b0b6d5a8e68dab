#include "chsh/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "chsh/angle_parse.hpp"
#include "chsh/csv.hpp"
#include "chsh/inequalities.hpp"
#include "chsh/montecarlo.hpp"
#include "chsh/pathmodel.hpp"

namespace chsh {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class Int>
Int parse_unsigned(const std::string& key, const std::string& value) {
  Int v{};
  const auto t = trim(value);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw InvalidInput("bad value for " + key + ": '" + value + "'");
  return v;
}

}  // namespace

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "angles") {
    config.angles = value;
  } else if (key == "grid") {
    config.grid = value;
  } else if (key == "kind") {
    parse_inequality_kind(trim(value));
    config.kind = trim(value);
  } else if (key == "pattern") {
    parse_sign_pattern(trim(value));
    config.pattern = trim(value);
  } else if (key == "mode") {
    const auto v = trim(value);
    if (v != "both") parse_estimator_mode(v);
    config.mode = v;
  } else if (key == "sampling") {
    parse_sampling_mode(trim(value));
    config.sampling = trim(value);
  } else if (key == "samples") {
    config.samples = parse_unsigned<std::size_t>(key, value);
    if (config.samples < 1) throw InvalidInput("samples must be at least 1");
  } else if (key == "draws") {
    config.draws = parse_unsigned<std::size_t>(key, value);
    if (config.draws < 1) throw InvalidInput("draws must be at least 1");
  } else if (key == "seed") {
    config.seed = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "out") {
    config.out = trim(value);
  } else if (key == "threads") {
    config.threads = parse_unsigned<unsigned>(key, value);
    if (config.threads == 0) config.threads = std::max(1U, std::thread::hardware_concurrency());
  } else {
    throw InvalidInput("unknown setting '" + key + "'");
  }
}

std::vector<Setting> read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot read config file '" + path + "'");
  std::vector<Setting> out;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidInput(path + ":" + std::to_string(lineno) + ": expected key=value");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

RunConfig resolve_config(const std::vector<Setting>& file_settings, const std::vector<Setting>& flag_settings) {
  RunConfig config;
  for (const auto& [k, v] : file_settings) apply_setting(config, k, v);
  for (const auto& [k, v] : flag_settings) apply_setting(config, k, v);
  return config;
}

// ---------------------------------------------------------------- solve

namespace {

std::string str(const Rational& x) { return to_string(x); }
std::string str(double x) { return format_real(x); }

template <class T>
T pattern_combination(const std::array<T, 4>& e, SignPattern pattern) {
  return pattern == SignPattern::kPlusMinusPlusPlus ? e[0] - e[1] + e[2] + e[3] : -e[0] + e[1] + e[2] + e[3];
}

template <class T>
bool exceeds_two(const T& x) {
  if constexpr (ScalarTraits<T>::kExact)
    return ScalarTraits<T>::abs(x) > 2;
  else
    return std::fabs(x) > 2.0 + kViolationTolerance;
}

template <class T>
void print_expectations(std::ostream& os, const std::array<T, 4>& e) {
  os << "E13=" << str(e[0]) << " E14=" << str(e[1]) << " E23=" << str(e[2]) << " E24=" << str(e[3]);
}

template <class T>
QuasiDistribution<T> solve_and_report(const MarginalVector<T>& p, SignPattern pattern, std::ostream& os) {
  const CoefficientMatrix sigma = build_sigma();
  os << "arithmetic: " << (ScalarTraits<T>::kExact ? "exact" : "floating") << '\n';
  os << "rank: " << rank(sigma.as<T>()) << '\n';
  os << "augmented_rank: " << augmented_rank(sigma, p) << '\n';

  os << "marginals:\n";
  static constexpr const char* kOutcomes[] = {"--", "-+", "+-", "++"};
  for (std::size_t pair = 0; pair < 4; ++pair) {
    os << "  " << kMeasuredPairs[pair].first << kMeasuredPairs[pair].second << ':';
    for (std::size_t o = 0; o < 4; ++o) os << ' ' << kOutcomes[o] << '=' << str(p.values[4 * pair + o]);
    os << '\n';
  }

  const auto q = solve_family(p, FreeAssignment<T>::zero());
  os << "quasi_distribution (free outcomes set to 0):\n";
  for (std::size_t i = 0; i < kJointOutcomes; ++i) os << "  " << joint_label(i) << ' ' << str(q.weights[i]) << '\n';
  os << "residual: " << str(residual(sigma, q, p)) << '\n';

  const auto report = kolmogorov_check(q);
  os << "kolmogorov: min_entry=" << str(report.min_entry) << " negative=" << report.negative_indices.size();
  if (!report.negative_indices.empty()) {
    os << " [";
    for (std::size_t i = 0; i < report.negative_indices.size(); ++i)
      os << (i ? " " : "") << joint_label(report.negative_indices[i]);
    os << ']';
  }
  os << " total_mass=" << str(report.total_mass) << " nonneg_ok=" << format_bool(report.nonneg_ok)
     << " total_ok=" << format_bool(report.total_ok) << '\n';

  const auto e = expectations_from_quasi(q);
  const T chsh = pattern_combination(e, pattern);
  os << "expectations: ";
  print_expectations(os, e);
  os << '\n';
  os << "chsh[" << to_string(pattern) << "]: " << str(chsh) << " violated=" << format_bool(exceeds_two(chsh)) << '\n';

  const auto qa = abs_variant(q);
  const auto ra = kolmogorov_check(qa);
  const auto ea = expectations_from_quasi(qa);
  const T chsh_a = pattern_combination(ea, pattern);
  os << "abs_variant: total_mass=" << str(ra.total_mass) << " total_ok=" << format_bool(ra.total_ok) << ' ';
  print_expectations(os, ea);
  os << " chsh[" << to_string(pattern) << "]=" << str(chsh_a) << " violated=" << format_bool(exceeds_two(chsh_a))
     << '\n';
  return q;
}

template <class T>
void write_solve_outputs(const std::string& path, const QuasiDistribution<T>& q) {
  write_text_file(path, quasi_csv(q));
  write_text_file(companion_path(path, "kolmogorov"), kolmogorov_report_csv(kolmogorov_check(q)));
}

SignPattern pattern_or(const RunConfig& config, SignPattern fallback) {
  return config.pattern.empty() ? fallback : parse_sign_pattern(config.pattern);
}

}  // namespace

int cmd_solve(const RunConfig& config, std::ostream& out) {
  if (config.angles.empty()) throw InvalidInput("solve needs --angles");
  const auto parsed = parse_angle_set(config.angles);
  const SignPattern pattern = pattern_or(config, SignPattern::kPlusMinusPlusPlus);

  std::optional<MarginalVector<Rational>> exact;
  if (parsed.exact) exact = build_marginals(*parsed.exact);
  out << "angles:";
  for (int j = 1; j <= 4; ++j) {
    out << ' ';
    if (parsed.exact)
      out << format_pi_multiple(parsed.exact->pi_multiple[std::size_t(j - 1)]);
    else
      out << format_real(parsed.angles.theta(j));
  }
  out << '\n';

  if (exact) {
    const auto q = solve_and_report(*exact, pattern, out);
    if (!config.out.empty()) write_solve_outputs(config.out, q);
  } else {
    const auto q = solve_and_report(build_marginals(parsed.angles), pattern, out);
    if (!config.out.empty()) write_solve_outputs(config.out, q);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- scan

namespace {

ScanGrid grid_from(const RunConfig& config) {
  if (!config.grid.empty()) return parse_grid(config.grid);
  if (!config.angles.empty()) return ScanGrid::single(parse_angle_set(config.angles).angles);
  return ScanGrid::standard();
}

}  // namespace

int cmd_scan(const RunConfig& config, std::ostream& out) {
  const ScanGrid grid = grid_from(config);
  const InequalityKind kind = parse_inequality_kind(config.kind);
  const SignPattern pattern = pattern_or(config, SignPattern::kMinusPlusPlusPlus);
  const auto entries = scan(grid, kind, pattern, config.threads);
  const std::string csv = scan_csv(entries);
  if (config.out.empty()) {
    out << csv;
    return kExitOk;
  }
  write_text_file(config.out, csv);
  if (kind == InequalityKind::kChsh)
    write_text_file(companion_path(config.out, "kolmogorov"), kolmogorov_csv(kolmogorov_rows(entries, config.threads)));
  std::size_t violated = 0;
  for (const auto& e : entries) violated += e.report.violated ? 1 : 0;
  out << "wrote " << entries.size() << " rows to " << config.out << " (" << violated << " violated)\n";
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  std::vector<AngleSet> points;
  if (!config.grid.empty() || config.angles.empty()) {
    const ScanGrid grid = config.grid.empty() ? ScanGrid::standard() : parse_grid(config.grid);
    for (std::size_t i = 0; i < grid.size(); ++i) points.push_back(grid.point(i));
  }
  if (!config.angles.empty()) points.push_back(parse_angle_set(config.angles).angles);

  SimConfig sim;
  sim.n_samples = config.samples;
  sim.draws_per_sample = config.draws;
  sim.seed = config.seed;
  sim.sampling = parse_sampling_mode(config.sampling);
  const SignPattern pattern = pattern_or(config, SignPattern::kMinusPlusPlusPlus);

  std::vector<EstimatorMode> modes;
  if (config.mode == "both")
    modes = {EstimatorMode::kConditional, EstimatorMode::kUnconditional};
  else
    modes = {parse_estimator_mode(config.mode)};

  std::vector<SimulationSummary> rows;
  for (EstimatorMode mode : modes) {
    auto part = run_experiment(sim, points, mode, pattern, config.threads);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  const std::string csv =
      simulation_csv(rows, {sim.n_samples, sim.draws_per_sample, sim.seed, sim.sampling, pattern});
  if (config.out.empty()) {
    out << csv;
  } else {
    write_text_file(config.out, csv);
    std::size_t flagged = 0;
    for (const auto& r : rows) flagged += r.undefined_samples > 0 ? 1 : 0;
    out << "wrote " << rows.size() << " rows to " << config.out << " (" << flagged
        << " with undefined estimates)\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

namespace {

struct CheckLog {
  std::ostream& os;
  int failures = 0;

  void record(int id, const std::string& name, bool ok, const std::string& detail) {
    os << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << detail << '\n';
    if (!ok) ++failures;
  }
};

template <class Fn>
void run_check(CheckLog& log, int id, const std::string& name, Fn&& fn) {
  std::string detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  log.record(id, name, ok, detail);
}

ExactAngleSet example_angles() { return {{Rational(-1, 3), Rational(0), Rational(1, 3), Rational(2, 3)}}; }

std::array<Rational, 16> expected_example_quasi() {
  const Rational e(1, 8), q(1, 4), h(1, 2);
  return {-e, -e, q, 0, q, e, e, 0, -e, h, e, 0, 0, 0, 0, 0};
}

}  // namespace

int cmd_verify(std::ostream& out, const CoefficientMatrix& sigma) {
  CheckLog log{out};
  const auto p = build_marginals(example_angles());

  run_check(log, 1, "exact rank", [&](std::string& d) {
    if (!p) throw NoSolution("example marginals are not rational");
    const auto r = rank(sigma.as<Rational>());
    const auto ra = augmented_rank(sigma, *p);
    d = "rank=" + std::to_string(r) + " augmented=" + std::to_string(ra);
    return r == kSystemRank && ra == kSystemRank;
  });

  run_check(log, 2, "worked example", [&](std::string& d) {
    if (!p) throw NoSolution("example marginals are not rational");
    const Rational e(1, 8), t(3, 8), h(1, 2);
    const std::array<Rational, 16> expected_p = {e, t, t, e, h, 0, 0, h, e, t, t, e, e, t, t, e};
    const auto q = solve_family(*p, FreeAssignment<Rational>::zero());
    const bool p_ok = p->values == expected_p;
    const bool q_ok = q.weights == expected_example_quasi();
    const bool back = sigma.apply(q.weights) == p->values;
    Rational sum = 0;
    int eighths = 0;
    for (const auto& w : q.weights) {
      sum += w;
      eighths += (w == -e) ? 1 : 0;
    }
    d = "marginals " + std::string(p_ok ? "match" : "differ") + ", quasi " + (q_ok ? "match" : "differ") +
        ", back-substitution " + (back ? "exact" : "off") + ", sum=" + to_string(sum) +
        ", entries -1/8: " + std::to_string(eighths);
    return p_ok && q_ok && back && sum == 1 && eighths == 3;
  });

  run_check(log, 3, "expectations and chsh", [&](std::string& d) {
    if (!p) throw NoSolution("example marginals are not rational");
    const auto q = solve_family(*p, FreeAssignment<Rational>::zero());
    const auto ev = expectations_from_quasi(q);
    const Rational c = chsh_from_quasi(q);
    d = "E=(" + to_string(ev[0]) + "," + to_string(ev[1]) + "," + to_string(ev[2]) + "," + to_string(ev[3]) +
        ") chsh=" + to_string(c);
    const std::array<Rational, 4> want = {Rational(-1, 2), Rational(1), Rational(-1, 2), Rational(-1, 2)};
    return ev == want && c == Rational(-5, 2) && boost::multiprecision::abs(c) > 2;
  });

  run_check(log, 4, "absolute-value variant", [&](std::string& d) {
    if (!p) throw NoSolution("example marginals are not rational");
    const auto qa = abs_variant(solve_family(*p, FreeAssignment<Rational>::zero()));
    const auto r = kolmogorov_check(qa);
    const auto ev = expectations_from_quasi(qa);
    const Rational c = chsh_from_quasi(qa);
    d = "mass=" + to_string(r.total_mass) + " E=(" + to_string(ev[0]) + "," + to_string(ev[1]) + "," +
        to_string(ev[2]) + "," + to_string(ev[3]) + ") chsh=" + to_string(c);
    const std::array<Rational, 4> want = {Rational(-1, 4), Rational(3, 4), Rational(1, 4), Rational(-1, 4)};
    return r.total_mass == Rational(7, 4) && !r.total_ok && ev == want && c == -1;
  });

  run_check(log, 5, "violation implies negative quasi-probability", [&](std::string& d) {
    const auto entries = scan(ScanGrid::standard(), InequalityKind::kChsh, SignPattern::kMinusPlusPlusPlus);
    const auto rows = kolmogorov_rows(entries);
    std::size_t violated = 0, bad = 0;
    for (const auto& row : rows) {
      const bool v = row.first_member < -kViolationTolerance;
      violated += v ? 1 : 0;
      if (v && !(row.report.min_entry < 0.0)) ++bad;
      if (row.report.genuine() && row.first_member < -kViolationTolerance) ++bad;
    }
    d = std::to_string(rows.size()) + " points, " + std::to_string(violated) + " violated, " +
        std::to_string(bad) + " counterexamples";
    return rows.size() == 343 && bad == 0;
  });

  run_check(log, 6, "conditional-model bound", [&](std::string& d) {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> prob(0.0, 1.0), angle(-4.0, 4.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const PathParams params(prob(rng), prob(rng));
      const AngleSet a(angle(rng), angle(rng), angle(rng), angle(rng));
      worst = std::max(worst, std::fabs(weighted_combination(params, a)));
    }
    const auto naive = naive_combination_max();
    const bool witness = naive.witness_cosines == std::array<double, 4>{1.0, -1.0, 1.0, 1.0};
    d = "max |combination|=" + format_real(worst) + ", naive maximum=" + format_real(naive.value);
    return worst <= 1.0 + 1e-12 && naive.value == 4.0 && witness;
  });

  run_check(log, 7, "unconditional estimator bound", [&](std::string& d) {
    std::mt19937_64 rng(977);
    std::uniform_int_distribution<int> shape(0, 3);
    double lowest = 2.0;
    for (int i = 0; i < 10000; ++i) {
      CountsTable t;
      const int s = shape(rng);
      std::uniform_int_distribution<std::uint64_t> count(0, s == 0 ? 3 : 1000);
      for (auto& row : t.n)
        for (auto& c : row) c = (s == 3 && (rng() & 1U)) ? 0 : count(rng);
      if (t.total() == 0) t.n[rng() % 4][rng() % 4] = 1;
      for (SignPattern pat : {SignPattern::kMinusPlusPlusPlus, SignPattern::kPlusMinusPlusPlus})
        lowest = std::min(lowest, first_member(t, EstimatorMode::kUnconditional, pat));
    }
    d = "min first member=" + format_real(lowest);
    return lowest >= 1.0;
  });

  out << (log.failures == 0 ? "all checks passed" : std::to_string(log.failures) + " check(s) failed") << '\n';
  return log.failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace chsh
