#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "chsh/angle_parse.hpp"
#include "chsh/commands.hpp"
#include "chsh/csv.hpp"
#include "chsh/errors.hpp"

using namespace chsh;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("chsh_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

RunConfig config_with(std::vector<Setting> flags) { return resolve_config({}, flags); }

int run_binary(const std::string& args, const fs::path& capture) {
  const std::string cmd = std::string(CHSH_BINARY) + " " + args + " > " + capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(AngleParse, SymbolicAndDecimal) {
  auto a = parse_angle("-pi/3");
  EXPECT_EQ(*a.pi_multiple, Rational(-1, 3));
  EXPECT_DOUBLE_EQ(a.radians, -kPi / 3);
  EXPECT_EQ(*parse_angle("2*pi/3").pi_multiple, Rational(2, 3));
  EXPECT_EQ(*parse_angle("3pi/16").pi_multiple, Rational(3, 16));
  EXPECT_EQ(*parse_angle("pi").pi_multiple, Rational(1));
  EXPECT_EQ(*parse_angle("+pi/2").pi_multiple, Rational(1, 2));
  EXPECT_EQ(*parse_angle("4*pi/8").pi_multiple, Rational(1, 2));
  EXPECT_EQ(*parse_angle("0").pi_multiple, Rational(0));
  EXPECT_FALSE(parse_angle("0.5").pi_multiple);
  EXPECT_DOUBLE_EQ(parse_angle("-1.25e-1").radians, -0.125);
  for (const char* bad : {"", "pi/0", "pie", "1/3", "x", "nan", "inf", "pi/3.5", "2**pi"})
    EXPECT_THROW(parse_angle(bad), InvalidInput) << bad;
}

TEST(AngleParse, SetsAndGrids) {
  const auto s = parse_angle_set("-pi/3 0 pi/3 2*pi/3");
  ASSERT_TRUE(s.exact);
  EXPECT_EQ(s.exact->pi_multiple[3], Rational(2, 3));
  EXPECT_FALSE(parse_angle_set("0, 0.1, 0.2, 0.3").exact);
  EXPECT_THROW(parse_angle_set("0 0 0"), InvalidInput);

  const auto g = parse_grid("0;pi/16,pi/8;pi/4;pi/2,3*pi/4,pi");
  EXPECT_EQ(g.size(), 6u);
  EXPECT_DOUBLE_EQ(g.theta4[2], kPi);
  EXPECT_EQ(parse_grid("default").size(), 343u);
  EXPECT_THROW(parse_grid("0;pi"), InvalidInput);
  EXPECT_THROW(parse_grid("0;;pi;pi"), InvalidInput);
  EXPECT_EQ(format_pi_multiple(Rational(-1, 3)), "-pi/3");
  EXPECT_EQ(format_pi_multiple(Rational(2, 3)), "2*pi/3");
  EXPECT_EQ(format_pi_multiple(Rational(1)), "pi");
  EXPECT_EQ(format_pi_multiple(Rational(0)), "0");
}

TEST(Config, FileThenFlags) {
  TempDir dir;
  const auto path = dir / "run.conf";
  std::ofstream(path) << "# comment\nsamples = 20\nseed=9\n\nmode = unconditional  # trailing\n";
  const auto file = read_config_file(path.string());
  ASSERT_EQ(file.size(), 3u);
  const auto cfg = resolve_config(file, {{"seed", "11"}});
  EXPECT_EQ(cfg.samples, 20u);
  EXPECT_EQ(cfg.seed, 11u);
  EXPECT_EQ(cfg.mode, "unconditional");
  EXPECT_THROW(resolve_config({{"colour", "red"}}, {}), InvalidInput);
  EXPECT_THROW(resolve_config({}, {{"samples", "0"}}), InvalidInput);
  EXPECT_THROW(resolve_config({}, {{"samples", "-3"}}), InvalidInput);
  EXPECT_THROW(resolve_config({}, {{"kind", "nope"}}), InvalidInput);
  std::ofstream(dir / "bad.conf") << "samples\n";
  EXPECT_THROW(read_config_file((dir / "bad.conf").string()), InvalidInput);
}

TEST(Csv, Formatting) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(-0.0), "0");
  EXPECT_EQ(format_real(2.0), "2");
  EXPECT_EQ(companion_path("out/scan.csv", "kolmogorov"), "out/scan.kolmogorov.csv");
  EXPECT_EQ(companion_path("scan", "kolmogorov"), "scan.kolmogorov.csv");
  EXPECT_THROW(write_text_file("/nonexistent-dir/x.csv", "a"), OutputError);
}

TEST(Solve, WorkedExampleIsExact) {
  std::ostringstream os;
  EXPECT_EQ(cmd_solve(config_with({{"angles", "-pi/3 0 pi/3 2*pi/3"}}), os), kExitOk);
  const std::string out = os.str();
  EXPECT_NE(out.find("arithmetic: exact"), std::string::npos);
  EXPECT_NE(out.find("chsh[pmpp]: -5/2"), std::string::npos);
  EXPECT_NE(out.find("negative=3 [---- ---+ +---]"), std::string::npos);
  EXPECT_NE(out.find("total_mass=7/4"), std::string::npos);
  EXPECT_EQ(out.find('.'), std::string::npos) << "exact report printed a decimal";
}

TEST(Solve, EqualAnglesAndFloating) {
  std::ostringstream os;
  cmd_solve(config_with({{"angles", "0 0 0 0"}}), os);
  EXPECT_NE(os.str().find("chsh[pmpp]: 2/1"), std::string::npos);
  std::ostringstream fl;
  cmd_solve(config_with({{"angles", "0 pi/8 pi/4 3*pi/8"}}), fl);
  const std::string out = fl.str();
  EXPECT_NE(out.find("arithmetic: floating"), std::string::npos);
  const auto pos = out.find("residual: ");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_LE(std::stod(out.substr(pos + 10)), 1e-10);
  std::ostringstream none;
  EXPECT_THROW(cmd_solve(config_with({}), none), InvalidInput);
  EXPECT_THROW(cmd_solve(config_with({{"angles", "0 0 zero 0"}}), none), InvalidInput);
}

TEST(Solve, WritesQuasiCsv) {
  TempDir dir;
  std::ostringstream os;
  cmd_solve(config_with({{"angles", "-pi/3 0 pi/3 2*pi/3"}, {"out", (dir / "p.csv").string()}}), os);
  const auto csv = slurp(dir / "p.csv");
  EXPECT_EQ(lines(csv), 17u);
  EXPECT_NE(csv.find("0,----,-1/8\n"), std::string::npos);
  EXPECT_NE(csv.find("9,+--+,1/2\n"), std::string::npos);
  const auto rep = slurp(dir / "p.kolmogorov.csv");
  EXPECT_NE(rep.find("-1/8,3,---- ---+ +---,1/1,false,true"), std::string::npos);
}

TEST(Scan, DefaultGridAndCompanion) {
  TempDir dir;
  std::ostringstream os;
  ASSERT_EQ(cmd_scan(config_with({{"out", (dir / "scan.csv").string()}, {"threads", "2"}}), os), kExitOk);
  const auto csv = slurp(dir / "scan.csv");
  EXPECT_EQ(lines(csv), 344u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "theta2,theta3,theta4,kind,first_member,violated");
  const auto kol = slurp(dir / "scan.kolmogorov.csv");
  EXPECT_EQ(lines(kol), 344u);
  std::ostringstream again;
  cmd_scan(config_with({{"out", (dir / "scan2.csv").string()}, {"threads", "1"}}), again);
  EXPECT_EQ(csv, slurp(dir / "scan2.csv"));
}

TEST(Scan, ConditionalKindAndSinglePoint) {
  std::ostringstream os;
  cmd_scan(config_with({{"kind", "chsh_conditional"}}), os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const auto fields = line.rfind(',');
    const auto prev = line.rfind(',', fields - 1);
    EXPECT_GE(std::stod(line.substr(prev + 1, fields - prev - 1)), 1.0 - 1e-12);
  }
  EXPECT_EQ(rows, 343u);
  std::ostringstream one;
  cmd_scan(config_with({{"grid", "0;pi/16;pi/16;pi/16"}}), one);
  EXPECT_EQ(lines(one.str()), 2u);
  TempDir dir;
  std::ostringstream os2;
  EXPECT_THROW(cmd_scan(config_with({{"out", "/nonexistent-dir/s.csv"}}), os2), OutputError);
}

TEST(Simulate, ByteIdenticalAcrossRunsAndThreads) {
  TempDir dir;
  std::ostringstream os;
  const std::vector<Setting> base = {{"mode", "both"}, {"samples", "8"}, {"draws", "300"}, {"seed", "17"}};
  auto with = [&](const std::string& file, const std::string& threads) {
    auto flags = base;
    flags.emplace_back("out", (dir / file).string());
    flags.emplace_back("threads", threads);
    return config_with(flags);
  };
  cmd_simulate(with("a.csv", "1"), os);
  cmd_simulate(with("b.csv", "1"), os);
  cmd_simulate(with("c.csv", "3"), os);
  const auto a = slurp(dir / "a.csv");
  EXPECT_EQ(a, slurp(dir / "b.csv"));
  EXPECT_EQ(a, slurp(dir / "c.csv"));
  EXPECT_EQ(lines(a), 1u + 2 * 343);
  EXPECT_EQ(a.substr(0, a.find('\n')),
            "theta2,theta3,theta4,mode,mean_first_member,std_first_member,n_samples,draws_per_sample,seed,"
            "undefined_samples,std_divisor,theta1,sampling,pattern");
}

TEST(Simulate, UnconditionalMeansAtLeastOneAndAppendedPoint) {
  std::ostringstream os;
  cmd_simulate(config_with({{"mode", "unconditional"},
                            {"samples", "5"},
                            {"draws", "200"},
                            {"grid", "default"},
                            {"angles", "-pi/3 0 pi/3 2*pi/3"}}),
               os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    EXPECT_GE(std::stod(f[4]), 1.0);
  }
  EXPECT_EQ(rows, 344u);
}

TEST(Verify, PassesAndDetectsCorruption) {
  std::ostringstream a, b;
  EXPECT_EQ(cmd_verify(a), kExitOk);
  EXPECT_EQ(cmd_verify(b), kExitOk);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(lines(a.str()), 8u);

  auto sigma = build_sigma();
  sigma(0, 15) = 1;
  std::ostringstream c;
  EXPECT_EQ(cmd_verify(c, sigma), kExitFailure);
  EXPECT_NE(c.str().find("FAIL [1] exact rank"), std::string::npos);
}

TEST(Binary, ExitCodes) {
  TempDir dir;
  const auto log = dir / "log.txt";
  EXPECT_EQ(run_binary("verify", log), 0);
  EXPECT_EQ(run_binary("solve --angles \"-pi/3 0 pi/3 2*pi/3\"", log), 0);
  EXPECT_NE(slurp(log).find("-5/2"), std::string::npos);
  EXPECT_EQ(run_binary("solve --angles \"0 0 nope 0\"", log), 2);
  EXPECT_EQ(run_binary("solve", log), 2);
  EXPECT_EQ(run_binary("", log), 2);
  EXPECT_EQ(run_binary("scan --kind bogus", log), 2);
  EXPECT_EQ(run_binary("scan --out /nonexistent-dir/x.csv", log), 1);
  EXPECT_EQ(run_binary("--help", log), 0);

  std::ofstream(dir / "c.conf") << "angles = -pi/3 0 pi/3 2*pi/3\npattern = mppp\n";
  EXPECT_EQ(run_binary("solve --config " + (dir / "c.conf").string(), log), 0);
  EXPECT_NE(slurp(log).find("chsh[mppp]: 1/2"), std::string::npos);
  EXPECT_EQ(run_binary("solve --pattern pmpp --config " + (dir / "c.conf").string(), log), 0);
  EXPECT_NE(slurp(log).find("chsh[pmpp]: -5/2"), std::string::npos);
}
