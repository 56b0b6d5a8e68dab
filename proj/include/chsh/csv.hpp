#pragma once

// CSV serialization. Comma separated, LF line endings, header first, reals
// with 17 significant digits, rationals as "num/den".

#include <string>
#include <vector>

#include "chsh/inequalities.hpp"
#include "chsh/montecarlo.hpp"
#include "chsh/quasiprob.hpp"

namespace chsh {

std::string format_real(double x);
inline std::string format_bool(bool b) { return b ? "true" : "false"; }

std::string scan_csv(const std::vector<ScanEntry>& entries);

/// Per grid point: zero-assignment quasi-distribution summary next to the
/// CHSH first member of the same row in `entries`.
struct KolmogorovRow {
  AngleSet angles;
  double first_member = 0.0;
  KolmogorovReport<double> report;
};

std::vector<KolmogorovRow> kolmogorov_rows(const std::vector<ScanEntry>& entries, unsigned threads = 1);
std::string kolmogorov_csv(const std::vector<KolmogorovRow>& rows);

template <class T>
std::string quasi_csv(const QuasiDistribution<T>& q);

template <class T>
std::string kolmogorov_report_csv(const KolmogorovReport<T>& report);

struct SimulationRunInfo {
  std::size_t n_samples = 0;
  std::size_t draws_per_sample = 0;
  std::uint64_t seed = 0;
  SamplingMode sampling = SamplingMode::kIntegerFaithful;
  SignPattern pattern = SignPattern::kMinusPlusPlusPlus;
};

std::string simulation_csv(const std::vector<SimulationSummary>& rows, const SimulationRunInfo& info);

/// "out/scan.csv" -> "out/scan.kolmogorov.csv".
std::string companion_path(const std::string& path, const std::string& tag);

/// Writes `contents` to `path`; throws OutputError on failure.
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace chsh
