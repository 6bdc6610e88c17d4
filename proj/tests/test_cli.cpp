#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcorr_app.hpp"
#include "test_support.hpp"

using namespace qcorr;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qcorr");
  std::ostringstream out, err;
  const int code = app::run(args, out, err);
  return {code, out.str(), err.str()};
}

/// Value printed after `key` on its own line of `measures` output.
double field(const std::string& out, const std::string& key) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string k;
    double v = 0.0;
    if (fields >> k && k == key && fields >> v) return v;
  }
  ADD_FAILURE() << "no field " << key << " in:\n" << out;
  return std::nan("");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("qcorr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

} // namespace

TEST_F(CliTest, MeasuresModelPoint) {
  const auto r = run_cli({"measures", "--model", "isodm", "--j", "1", "--d", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(field(r.out, "C"), 0.4224691884551877, 1e-11);
  EXPECT_NEAR(field(r.out, "N"), 0.1890998674775939, 1e-11);
  EXPECT_NE(r.out.find("C        0.422469188455\n"), std::string::npos);
}

TEST_F(CliTest, MeasuresStateFile) {
  const auto r = run_cli({"measures", "--state", QCORR_DATA_DIR "/bell.txt"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(field(r.out, "C"), 1.0, 1e-11);
  EXPECT_NEAR(field(r.out, "N"), 0.5, 1e-11);
  EXPECT_NE(r.out.find("branch   x_zero"), std::string::npos);
}

TEST_F(CliTest, MeasuresXxzWithoutExchangeIsZero) {
  const auto r = run_cli({"measures", "--model", "xxz", "--j", "0", "--delta", "1", "--b", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* key : {"C", "N", "Q", "Q_paper", "D_exact"}) EXPECT_EQ(field(r.out, key), 0.0) << key;
}

TEST_F(CliTest, MeasuresErrors) {
  std::ofstream(dir_ / "bad.txt") << "1 0\n0 0\n";
  EXPECT_EQ(run_cli({"measures", "--state", (dir_ / "bad.txt").string()}).code, 2);

  std::ofstream neg(dir_ / "neg.txt");
  for (double d : {0.6, 0.0, 0.0, 0.0, 0.0, 0.6, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.2})
    neg << d << " 0\n";
  neg.close();
  EXPECT_EQ(run_cli({"measures", "--state", (dir_ / "neg.txt").string()}).code, 2);

  EXPECT_EQ(run_cli({"measures", "--model", "isodm", "--j", "nan"}).code, 3);
  EXPECT_EQ(run_cli({"measures", "--model", "heisenberg"}).code, 3);
  EXPECT_EQ(run_cli({"measures", "--state", (dir_ / "missing.txt").string()}).code, 4);
  EXPECT_EQ(run_cli({}).code, 3);
}

TEST_F(CliTest, SweepWritesDeterministicCsv) {
  const auto a = dir_ / "a.csv";
  const auto b = dir_ / "b.csv";
  const std::vector<std::string> base{"sweep", "--model", "xxz", "--j-start", "-1", "--j-end", "1",
                                      "--j-steps", "5", "--series", "0:0,-2:5"};
  auto args = base;
  args.insert(args.end(), {"--out", a.string()});
  ASSERT_EQ(run_cli(args).code, 0);
  args = base;
  args.insert(args.end(), {"--out", b.string()});
  ASSERT_EQ(run_cli(args).code, 0);

  const std::string csv = slurp(a);
  EXPECT_EQ(csv, slurp(b));
  EXPECT_EQ(csv.find('\r'), std::string::npos);

  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "j,series,C,N,Q,D_exact");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0].rfind("-1.00000000000,delta=0.00000000000e+00;b=0.00000000000e+00,", 0), 0u);
  EXPECT_EQ(rows[1].rfind("-1.00000000000,delta=-2.00000000000;b=5.00000000000,", 0), 0u);
  EXPECT_EQ(rows[4].rfind("0.00000000000e+00,", 0), 0u);
}

TEST_F(CliTest, SweepErrorsLeaveNoFile) {
  const auto out = dir_ / "x.csv";
  EXPECT_EQ(run_cli({"sweep", "--series", "0", "--j-steps", "1", "--out", out.string()}).code, 3);
  EXPECT_EQ(run_cli({"sweep", "--series", "0", "--j-start", "2", "--j-end", "1", "--out", out.string()}).code, 3);
  EXPECT_EQ(run_cli({"sweep", "--series", "", "--out", out.string()}).code, 3);
  EXPECT_EQ(run_cli({"sweep", "--model", "xxz", "--series", "0", "--out", out.string()}).code, 3);
  EXPECT_FALSE(std::filesystem::exists(out));

  const auto unwritable = dir_ / "no" / "such" / "dir.csv";
  EXPECT_EQ(run_cli({"sweep", "--series", "0", "--out", unwritable.string()}).code, 4);
  EXPECT_FALSE(std::filesystem::exists(unwritable));
}

TEST_F(CliTest, Critical) {
  auto r = run_cli({"critical", "--model", "isodm", "--d", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0.549306144\n");
  r = run_cli({"critical", "--model", "isodm", "--d", "2"});
  EXPECT_EQ(r.out, "-2.531473698\n");
  r = run_cli({"critical", "--model", "xxz", "--delta", "0", "--b", "0"});
  EXPECT_EQ(r.out, "0.549306144\n");
  EXPECT_EQ(run_cli({"critical", "--model", "isodm", "--d", "10"}).code, 5);
}

TEST_F(CliTest, VerifyIsDeterministic) {
  const auto a = run_cli({"verify", "--seed", "42", "--count", "100"});
  const auto b = run_cli({"verify", "--seed", "42", "--count", "100"});
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("verify: ok"), std::string::npos);
  EXPECT_EQ(run_cli({"verify", "--count", "0"}).code, 3);
}

TEST_F(CliTest, ConfigFileFlagsWin) {
  std::ofstream(dir_ / "c.conf") << "# threshold run\nmodel = isodm\nd = 2\n";
  const std::string conf = (dir_ / "c.conf").string();
  EXPECT_EQ(run_cli({"critical", "--config", conf}).out, "-2.531473698\n");
  EXPECT_EQ(run_cli({"critical", "--config", conf, "--d", "0"}).out, "0.549306144\n");
  EXPECT_EQ(run_cli({"critical", "--config=" + conf, "--d=0"}).out, "0.549306144\n");

  std::ofstream(dir_ / "bad.conf") << "no equals sign\n";
  EXPECT_EQ(run_cli({"critical", "--config", (dir_ / "bad.conf").string()}).code, 3);
  std::ofstream(dir_ / "unknown.conf") << "colour = red\n";
  EXPECT_EQ(run_cli({"critical", "--config", (dir_ / "unknown.conf").string()}).code, 3);
  EXPECT_EQ(run_cli({"critical", "--config", (dir_ / "absent.conf").string()}).code, 4);
}

TEST_F(CliTest, BundledSweepConfig) {
  const auto out = dir_ / "fig1.csv";
  ASSERT_EQ(run_cli({"sweep", "--config", QCORR_DATA_DIR "/fig1.conf", "--out", out.string()}).code, 0);
  std::istringstream lines(slurp(out));
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) ++n;
  EXPECT_EQ(n, 1u + 201u * 2u);
}
