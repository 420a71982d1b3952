#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(SIEVEBOOT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("sieveboot_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST(Cli, SubcommandsSucceed) {
    const fs::path dir = scratch("ok");
    const std::string y = (dir / "y.csv").string();
    EXPECT_EQ(run("simulate --d 0.3 --phi 0.3 --T 120 --seed 4 --out " + y), 0);
    EXPECT_EQ(run("acvf --d 0.3 --phi 0.3 --maxlag 10"), 0);
    EXPECT_EQ(run("fit --input " + y), 0);
    EXPECT_EQ(run("bootstrap --input " + y + " --method pfsbs --B 50 --statistic mean --statistic 'acf(1)' --out-dir " +
                  (dir / "bs").string()),
              0);
    EXPECT_TRUE(fs::exists(dir / "bs" / "manifest.json"));
    EXPECT_EQ(run("edgeworth --d 0.08 --phi 0.3 --T 100 --k 2 --out " + (dir / "ew.csv").string()), 0);
    std::ofstream(dir / "cfg.json") << R"j({"name": "tiny", "d": 0.2, "T": 60, "R": 4, "B": 10,
        "statistics": ["mean", "acf(1)"], "methods": ["sbs", "fpfbs"]})j";
    EXPECT_EQ(run("experiment --quiet --threads 2 --config " + (dir / "cfg.json").string() + " --out-dir " +
                  (dir / "exp").string()),
              0);
    EXPECT_TRUE(fs::exists(dir / "exp" / "tiny" / "draws_sbs_mean.csv"));
    EXPECT_TRUE(fs::exists(dir / "exp" / "stdev_ratio.csv"));
    EXPECT_EQ(run("report " + (dir / "exp").string() + " --out-dir " + (dir / "rep").string()), 0);
    EXPECT_TRUE(fs::exists(dir / "rep" / "gof.csv"));
}

TEST(Cli, PresetWithOverrides) {
    const fs::path dir = scratch("preset");
    EXPECT_EQ(run("experiment --quiet --preset table1 --only t1_phi0.3_T100_d0.4 --R 3 --B 5 --seed 9 --out-dir " +
                  dir.string()),
              0);
    EXPECT_TRUE(fs::exists(dir / "t1_phi0.3_T100_d0.4" / "manifest.json"));
}

TEST(Cli, ConfigErrorsExitTwo) {
    const fs::path dir = scratch("bad");
    EXPECT_EQ(run("acvf --d 0.7"), 2);
    EXPECT_EQ(run("experiment --config " + (dir / "missing.json").string()), 2);
    std::ofstream(dir / "bad.json") << R"j({"T": 4})j";
    EXPECT_EQ(run("experiment --config " + (dir / "bad.json").string()), 2);
    EXPECT_EQ(run("experiment --preset table9"), 2);
    EXPECT_EQ(run("edgeworth --d 0.2 --T 50"), 2);
    EXPECT_EQ(run("nonsense"), 2);
}

TEST(Cli, NumericalFailureExitsThree) {
    const fs::path dir = scratch("num");
    {
        std::ofstream f(dir / "const.csv");
        f << "t,value\n";
        for (int t = 1; t <= 30; ++t) f << t << ",1.5\n";
    }
    EXPECT_EQ(run("fit --input " + (dir / "const.csv").string()), 3);
}
