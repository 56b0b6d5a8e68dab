#include "chsh/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chsh/errors.hpp"
#include "chsh/parallel.hpp"

namespace chsh {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

namespace {

std::string value_string(double x) { return format_real(x); }
std::string value_string(const Rational& x) { return to_string(x); }

}  // namespace

std::string scan_csv(const std::vector<ScanEntry>& entries) {
  std::ostringstream os;
  os << "theta2,theta3,theta4,kind,first_member,violated\n";
  for (const auto& e : entries) {
    os << format_real(e.angles.theta(2)) << ',' << format_real(e.angles.theta(3)) << ','
       << format_real(e.angles.theta(4)) << ',' << to_string(e.report.kind) << ','
       << format_real(e.report.first_member) << ',' << format_bool(e.report.violated) << '\n';
  }
  return os.str();
}

std::vector<KolmogorovRow> kolmogorov_rows(const std::vector<ScanEntry>& entries, unsigned threads) {
  std::vector<KolmogorovRow> rows(entries.size());
  parallel_for(entries.size(), threads, [&](std::size_t i) {
    const auto q = solve_family(build_marginals(entries[i].angles), FreeAssignment<double>::zero());
    rows[i] = {entries[i].angles, entries[i].report.first_member, kolmogorov_check(q)};
  });
  return rows;
}

std::string kolmogorov_csv(const std::vector<KolmogorovRow>& rows) {
  std::ostringstream os;
  os << "theta2,theta3,theta4,first_member,min_entry,negative_count,total_mass,nonneg_ok,total_ok\n";
  for (const auto& r : rows) {
    os << format_real(r.angles.theta(2)) << ',' << format_real(r.angles.theta(3)) << ','
       << format_real(r.angles.theta(4)) << ',' << format_real(r.first_member) << ','
       << format_real(r.report.min_entry) << ',' << r.report.negative_indices.size() << ','
       << format_real(r.report.total_mass) << ',' << format_bool(r.report.nonneg_ok) << ','
       << format_bool(r.report.total_ok) << '\n';
  }
  return os.str();
}

template <class T>
std::string quasi_csv(const QuasiDistribution<T>& q) {
  std::ostringstream os;
  os << "index,outcome,weight\n";
  for (std::size_t i = 0; i < kJointOutcomes; ++i)
    os << i << ',' << joint_label(i) << ',' << value_string(q.weights[i]) << '\n';
  return os.str();
}

template <class T>
std::string kolmogorov_report_csv(const KolmogorovReport<T>& report) {
  std::ostringstream os;
  os << "min_entry,negative_count,negative_outcomes,total_mass,nonneg_ok,total_ok\n";
  std::string labels;
  for (std::size_t i : report.negative_indices) labels += (labels.empty() ? "" : " ") + joint_label(i);
  os << value_string(report.min_entry) << ',' << report.negative_indices.size() << ',' << labels << ','
     << value_string(report.total_mass) << ',' << format_bool(report.nonneg_ok) << ','
     << format_bool(report.total_ok) << '\n';
  return os.str();
}

template std::string quasi_csv(const QuasiDistribution<double>&);
template std::string quasi_csv(const QuasiDistribution<Rational>&);
template std::string kolmogorov_report_csv(const KolmogorovReport<double>&);
template std::string kolmogorov_report_csv(const KolmogorovReport<Rational>&);

std::string simulation_csv(const std::vector<SimulationSummary>& rows, const SimulationRunInfo& info) {
  std::ostringstream os;
  os << "theta2,theta3,theta4,mode,mean_first_member,std_first_member,n_samples,draws_per_sample,seed,"
        "undefined_samples,std_divisor,theta1,sampling,pattern\n";
  for (const auto& r : rows) {
    os << format_real(r.angles.theta(2)) << ',' << format_real(r.angles.theta(3)) << ','
       << format_real(r.angles.theta(4)) << ',' << to_string(r.mode) << ',' << format_real(r.mean_first_member)
       << ',' << format_real(r.std_first_member) << ',' << info.n_samples << ',' << info.draws_per_sample << ','
       << info.seed << ',' << r.undefined_samples << ",population," << format_real(r.angles.theta(1)) << ','
       << to_string(info.sampling) << ',' << to_string(info.pattern) << '\n';
  }
  return os.str();
}

std::string companion_path(const std::string& path, const std::string& tag) {
  std::filesystem::path p(path);
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  p.replace_extension();
  return p.string() + "." + tag + ext;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw OutputError("cannot open '" + path + "' for writing");
  f << contents;
  f.flush();
  if (!f) throw OutputError("failed writing '" + path + "'");
}

}  // namespace chsh
