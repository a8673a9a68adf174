#include "conicflow/cross_section.hpp"
#include "conicflow/keyvalue.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

using namespace conicflow;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CONICFLOW_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = std::filesystem::temp_directory_path() /
              ("conicflow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir);
    }
    void TearDown() override { std::filesystem::remove_all(dir); }

    std::string file(const std::string& name, const std::string& text) {
        const auto p = (dir / name).string();
        write_text_file(p, text);
        return p;
    }

    std::filesystem::path dir;
};

}  // namespace

TEST_F(Cli, SuccessfulCommands) {
    EXPECT_EQ(run_cli("stability table"), 0);
    EXPECT_EQ(run_cli("oracle selftest"), 0);
    EXPECT_EQ(run_cli("weights --n 3 --u0 3 --u1 8 --gamma 2 --json"), 0);
    EXPECT_EQ(run_cli("stability check " + file("s3.cs", serialize_cross_section(make_round_sphere(3, 6)))), 0);
}

TEST_F(Cli, ConfigErrorsExitOne) {
    EXPECT_EQ(run_cli("flow run " + file("bad.cfg", "gird.N = 10\n")), 1);
    EXPECT_EQ(run_cli("flow run " + (dir / "missing.cfg").string()), 1);
    EXPECT_EQ(run_cli("weights --n 3 --u0 x --u1 8 --gamma 2"), 1);
    EXPECT_EQ(run_cli("no-such-command"), 1);
}

TEST_F(Cli, NumericalFailureExitsTwo) {
    const auto cfg = file("blowup.cfg", "initial.profile = perturbed_cone\ninitial.amplitude = 0.5\nbackground = exact_cone\n"
                                        "grid.N = 40\ndt = 0.05\nt_end = 1\n");
    EXPECT_EQ(run_cli("flow run " + cfg), 2);
}

TEST_F(Cli, MissingSpectralDataExitsThree) {
    const auto cs = file("thin.cs", "name = thin\nn = 3\nscalar_spectrum = 0, 3\ncomplete_below = 4\n");
    EXPECT_EQ(run_cli("stability check " + cs), 3);
}

TEST_F(Cli, RunWritesArtifactsAndResumes) {
    const auto out = dir / "out";
    const auto cfg = file("run.cfg", "initial.profile = perturbed_cone\nbackground = exact_cone\ngrid.N = 32\n"
                                     "t_end = 2e-4\ncheckpoint_interval = 1e-4\noutput_dir = " + out.string() + "\n");
    ASSERT_EQ(run_cli("flow run " + cfg), 0);
    for (const char* name : {"config.txt", "series.csv", "checkpoint_0001.csv", "checkpoint_0001.meta", "checkpoint_0002.meta",
                             "plot_series.py", "report.json", "report.txt"})
        EXPECT_TRUE(std::filesystem::exists(out / name)) << name;
    EXPECT_EQ(run_cli("flow resume " + (out / "checkpoint_0001.meta").string() + " --t-end 3e-4"), 0);
    EXPECT_EQ(run_cli("flow resume " + (dir / "nothing.meta").string()), 1);
}
