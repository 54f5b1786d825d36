#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "degenlag/cli/commands.hpp"
#include "degenlag/cli/config.hpp"

namespace degenlag::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("degenlag_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int run_cli(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  static std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST(Config, DefaultsAndPresets) {
  const ExperimentConfig fig = preset("pendulum-fig1b");
  EXPECT_EQ(fig.method, MethodId::Trapezoidal);
  EXPECT_EQ(fig.initial_state, (std::vector<double>{3.0, 0.0}));
  EXPECT_EQ(fig.h, 0.35);
  EXPECT_EQ(preset("pendulum-fig1c").initial_state, (std::vector<double>{1.5, 0.0}));
  EXPECT_EQ(preset("pendulum-fig1c").method, MethodId::Midpoint);
  const ExperimentConfig vortex = preset("vortex-leapfrog");
  EXPECT_EQ(vortex.vortex_gamma, (std::vector<double>{1.0, -1.0, 2.0, -2.0}));
  EXPECT_DOUBLE_EQ(vortex.h * static_cast<double>(vortex.steps), 80.0);
  EXPECT_THROW((void)preset("nope"), ConfigError);
  for (const auto name : preset_names()) EXPECT_NO_THROW(validate(preset(name)));
}

TEST(Config, RoundTrip) {
  const std::vector<std::string> docs = {
      R"({"preset": "vortex-leapfrog", "method": "trapezoidal"})",
      R"({"system": "toy", "toy_v": [0, 0, 0.5], "toy_u": "pendulum", "initial_state": [0.5, -1],
          "starter": "perturbed", "starter_epsilon": 1e-4, "starter_direction": [0.1, 0.2],
          "truncation": "zero", "newton_jacobian": "finite-difference", "h_list": [0.2, 0.1, 0.05]})",
      R"({"preset": "quadratic-zero", "h": 0.123456789012345678})",
  };
  for (const auto& text : docs) {
    const ExperimentConfig a = parse_config_text(text);
    const ExperimentConfig b = parse_config_text(to_json(a).dump());
    EXPECT_EQ(a, b) << text;
    EXPECT_EQ(to_json(a), to_json(b));
  }
}

TEST(Config, Rejections) {
  EXPECT_THROW((void)parse_config_text("{"), ConfigError);
  EXPECT_THROW((void)parse_config_text("[]"), ConfigError);
  EXPECT_THROW((void)parse_config_text(R"({"colour": 1})"), ConfigError);
  EXPECT_THROW((void)parse_config_text(R"({"h": -0.1})"), ConfigError);
  EXPECT_THROW((void)parse_config_text(R"({"h": "big"})"), ConfigError);
  EXPECT_THROW((void)parse_config_text(R"({"steps": 0})"), ConfigError);
  EXPECT_THROW((void)parse_config_text(R"({"method": "euler"})"), ConfigError);
  EXPECT_THROW((void)parse_config_text(R"({"starter_epsilon": 0.1})"), ConfigError);
  EXPECT_THROW((void)parse_config_text(R"({"preset": "vortex-leapfrog", "vortex_positions": [[0,0],[0,0],[1,1],[2,2]]})"),
               ConfigError);
  EXPECT_THROW((void)parse_config_text(R"({"system": "quadratic", "quadratic_a": [[1,0],[0,1]],
                                          "quadratic_s": [[0,0],[0,0]], "initial_state": [0,0]})"),
               ConfigError);
  EXPECT_THROW((void)parse_config_text(R"({"initial_state": [1, 2, 3]})"), ConfigError);
}

TEST_F(CliTest, SimulateWritesDeterministicFiles) {
  const fs::path cfg = write_config("c.json", R"({"preset": "pendulum-fig1a", "steps": 20})");
  const std::string prefix = (dir_ / "run").string();
  ASSERT_EQ(run_cli({"simulate", "--config", cfg.string(), "--output", prefix}), 0) << err_.str();
  const std::string first = slurp(prefix + "_discrete.csv");
  EXPECT_EQ(first.substr(0, first.find('\n')), "t,q_1,q_2");
  EXPECT_EQ(count_lines(first), 22u);
  EXPECT_EQ(first.find('\r'), std::string::npos);
  EXPECT_NE(first.find("3,0\n"), std::string::npos);  // t = 0 row: "0,3,0"
  EXPECT_EQ(count_lines(slurp(prefix + "_exact.csv")), 22u);
  EXPECT_EQ(count_lines(slurp(prefix + "_modified.csv")), 22u);
  EXPECT_TRUE(fs::exists(prefix + ".gp"));
  ASSERT_EQ(run_cli({"simulate", "--config", cfg.string(), "--output", prefix}), 0);
  EXPECT_EQ(slurp(prefix + "_discrete.csv"), first);
}

TEST_F(CliTest, SingleStepGivesTwoRows) {
  const fs::path cfg = write_config("c.json", R"({"steps": 1})");
  const std::string prefix = (dir_ / "one").string();
  ASSERT_EQ(run_cli({"simulate", "--config", cfg.string(), "--output", prefix}), 0) << err_.str();
  EXPECT_EQ(count_lines(slurp(prefix + "_discrete.csv")), 3u);
}

TEST_F(CliTest, VortexPresetRunsToEighty) {
  const fs::path cfg = write_config("c.json", R"({"preset": "vortex-leapfrog"})");
  const std::string prefix = (dir_ / "vortex").string();
  ASSERT_EQ(run_cli({"simulate", "--config", cfg.string(), "--output", prefix}), 0) << err_.str();
  const std::string csv = slurp(prefix + "_discrete.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,q_1,q_2,q_3,q_4,q_5,q_6,q_7,q_8");
  const auto last = csv.rfind('\n', csv.size() - 2);
  EXPECT_EQ(csv.substr(last + 1, 3), "80,");
}

TEST_F(CliTest, ParasitesWritesDecompositionAndIndicator) {
  const fs::path cfg = write_config(
      "c.json", R"({"preset": "pendulum-fig1b", "starter": "perturbed", "starter_epsilon": 1e-4, "subtract_baseline": true})");
  const std::string prefix = (dir_ / "par").string();
  ASSERT_EQ(run_cli({"parasites", "--config", cfg.string(), "--output", prefix}), 0) << err_.str();
  const std::string csv = slurp(prefix + "_parasites.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,x_1,x_2,y_1,y_2,amplitude");
  EXPECT_EQ(count_lines(csv), 200u);  // 199 interior points + header
  const std::string ind = slurp(prefix + "_indicator.csv");
  EXPECT_EQ(ind.substr(0, ind.find('\n')), "t,indicator");
  EXPECT_NE(out_.str().find("envelope"), std::string::npos);
}

TEST_F(CliTest, DefectOrderSlopeAndFooter) {
  const fs::path cfg = write_config(
      "c.json", R"({"method": "trapezoidal", "truncation": "zero", "initial_state": [1.5, 0], "t_end": 2})");
  const std::string prefix = (dir_ / "def").string();
  ASSERT_EQ(run_cli({"defect-order", "--config", cfg.string(), "--output", prefix, "--h-list", "0.2,0.1,0.05"}), 0)
      << err_.str();
  const std::string text = out_.str();
  const auto pos = text.find("slope: ");
  ASSERT_NE(pos, std::string::npos);
  const double slope = std::stod(text.substr(pos + 7));
  EXPECT_GE(slope, 1.8);
  EXPECT_LE(slope, 2.2);
  const std::string csv = slurp(prefix + "_defect.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "h,defect");
  EXPECT_EQ(count_lines(csv), 5u);
  EXPECT_NE(csv.find("\nslope,"), std::string::npos);
}

TEST_F(CliTest, DefectOrderMidpointOrderTwo) {
  const fs::path cfg = write_config(
      "c.json", R"({"method": "midpoint", "truncation": "two", "initial_state": [1.5, 0], "h_list": [0.2, 0.1, 0.05]})");
  ASSERT_EQ(run_cli({"defect-order", "--config", cfg.string(), "--output", (dir_ / "d").string()}), 0);
  const double slope = std::stod(out_.str().substr(out_.str().find("slope: ") + 7));
  EXPECT_GE(slope, 3.6);
  EXPECT_LE(slope, 4.4);
}

TEST_F(CliTest, DefectOrderDegenerate) {
  const fs::path cfg = write_config("c.json", R"({"preset": "quadratic-zero", "h_list": [0.2, 0.1, 0.05]})");
  ASSERT_EQ(run_cli({"defect-order", "--config", cfg.string(), "--output", (dir_ / "q").string()}), 0);
  EXPECT_NE(out_.str().find("degenerate: zero defect"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run_cli({"simulate", "--config", (dir_ / "missing.json").string()}), kExitConfigError);
  EXPECT_EQ(run_cli({"simulate", "--config", write_config("bad.json", "{ nope").string()}), kExitConfigError);
  EXPECT_EQ(run_cli({"simulate"}), kExitConfigError);
  EXPECT_EQ(run_cli({"frobnicate"}), kExitConfigError);
  EXPECT_EQ(run_cli({"defect-order", "--config", write_config("few.json", "{}").string(), "--output",
                     (dir_ / "x").string()}),
            kExitConfigError);

  const fs::path diverge = write_config("div.json", R"({"newton_tol": 1e-30, "newton_max_iter": 2, "steps": 5})");
  EXPECT_EQ(run_cli({"simulate", "--config", diverge.string(), "--output", (dir_ / "div").string()}),
            kExitNumericalFailure);
  EXPECT_NE(err_.str().find("step"), std::string::npos);
  EXPECT_NE(err_.str().find("NewtonDiverged"), std::string::npos);
}

TEST_F(CliTest, Selftest) {
  EXPECT_EQ(run_cli({"selftest"}), 0) << out_.str();
  for (const auto name : selftest_suites()) EXPECT_NE(out_.str().find("PASS " + std::string(name)), std::string::npos);

  EXPECT_EQ(run_cli({"selftest", "--only", "vortex"}), 0);
  EXPECT_EQ(count_lines(out_.str()), 1u);
  EXPECT_NE(out_.str().find("vortex"), std::string::npos);

  EXPECT_EQ(run_cli({"selftest", "--mutate", "f2-sign"}), kExitSelftestFailed);
  EXPECT_NE(out_.str().find("FAIL toy-closed-form"), std::string::npos);

  EXPECT_EQ(run_cli({"selftest", "--only", "nope"}), kExitConfigError);
}

TEST_F(CliTest, SelftestSeedFromEnvironment) {
  ::setenv("DEGENLAG_SEED", "42", 1);
  EXPECT_EQ(run_cli({"selftest", "--only", "recombination"}), 0);
  const std::string a = out_.str();
  EXPECT_EQ(run_cli({"selftest", "--only", "recombination"}), 0);
  EXPECT_EQ(out_.str(), a);
  ::setenv("DEGENLAG_SEED", "forty-two", 1);
  EXPECT_EQ(run_cli({"selftest", "--only", "recombination"}), kExitConfigError);
  ::unsetenv("DEGENLAG_SEED");
}

TEST_F(CliTest, ExecutableExitStatus) {
  const char* bin = std::getenv("DEGENLAG_BIN");
  if (bin == nullptr) GTEST_SKIP() << "DEGENLAG_BIN not set";
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status(std::string(bin) + " selftest --only vortex"), 0);
  EXPECT_EQ(status(std::string(bin) + " selftest --mutate f2-sign"), 1);
  EXPECT_EQ(status(std::string(bin) + " simulate --config /nonexistent.json"), 2);
}

}  // namespace
}  // namespace degenlag::cli
