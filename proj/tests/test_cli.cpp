#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "fvimex/config.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("fvimex_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    // Runs the CLI inside the scratch directory; returns the exit status.
    int run(const std::string& args) {
        const std::string cmd = "cd '" + dir_.string() + "' && '" FVIMEX_CLI_PATH "' " + args + " > stdout.txt 2> stderr.txt";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    std::string read(const std::string& name) const {
        std::ifstream in(dir_ / name);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    fs::path dir_;
};

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

TEST_F(Cli, TinyMeshIsAConfigError) {
    EXPECT_EQ(run("solve --preset test2 --mesh 1"), 2);
    EXPECT_NE(read("stderr.txt").find("[grid]"), std::string::npos) << read("stderr.txt");
}

TEST_F(Cli, UnknownKeyIsAConfigError) {
    EXPECT_EQ(run("solve --preset test2 --set volatility=0.3"), 2);
    EXPECT_NE(read("stderr.txt").find("volatility"), std::string::npos);
    EXPECT_EQ(run("solve --preset test4 --set sigma1=0.3"), 2);
    EXPECT_EQ(run("solve --bogus-flag"), 2);
}

TEST_F(Cli, SolverFailureIsRuntimeError) {
    EXPECT_EQ(run("solve --preset test2 --mesh 20 --maxit 1"), 1);
    EXPECT_NE(read("stderr.txt").find("[linsolve]"), std::string::npos) << read("stderr.txt");
}

TEST_F(Cli, SolveWritesFieldAndStats) {
    ASSERT_EQ(run("solve --preset test2 --mesh 10 --out u.dat"), 0) << read("stderr.txt");
    const fvimex::FieldFile f = fvimex::read_field_file((dir_ / "u.dat").string());
    EXPECT_EQ(f.grid.nx(), 10);
    EXPECT_EQ(f.grid.xmax(), 150.0);
    const std::string out = read("stdout.txt");
    EXPECT_NE(out.find("field=u.dat"), std::string::npos);
    EXPECT_NE(out.find("steps="), std::string::npos);
}

TEST_F(Cli, ConfigFileAndFlagsCombine) {
    std::ofstream(dir_ / "run.cfg") << "preset = test3\n# coarse\nmesh = 8\nK = 90\n";
    ASSERT_EQ(run("reference --config run.cfg --nx 6 --out ref.dat"), 0) << read("stderr.txt");
    const fvimex::FieldFile f = fvimex::read_field_file((dir_ / "ref.dat").string());
    EXPECT_EQ(f.grid.nx(), 6);
    EXPECT_EQ(f.grid.ny(), 8);
    EXPECT_EQ(f.grid.ymax(), 4.0);
}

TEST_F(Cli, ConvergeWritesCsv) {
    ASSERT_EQ(run("converge --preset test2 --scheme imex --meshes 10,20,40"), 0) << read("stderr.txt");
    const auto rows = lines(read("stdout.txt"));
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], "nx,ny,l1,linf,rel,mae,order,dt,seconds");
    EXPECT_EQ(rows[1].rfind("10,10,", 0), 0u);
    EXPECT_EQ(rows[3].rfind("40,40,", 0), 0u);
}

TEST_F(Cli, CutWritesNumericAndReference) {
    ASSERT_EQ(run("cut --preset test3 --mesh 16 --axis x --at-y 0.04"), 0) << read("stderr.txt");
    for (const char* name : {"cut_numeric.dat", "cut_reference.dat"}) {
        const auto rows = lines(read(name));
        ASSERT_EQ(rows.size(), 17u) << name;
        EXPECT_EQ(rows[0], "# x price");
        double s = 0, v = 0;
        std::istringstream(rows[1]) >> s >> v;
        EXPECT_DOUBLE_EQ(s, 25.0);
    }
    EXPECT_EQ(run("cut --preset test3 --mesh 16 --axis z"), 2);
}

TEST_F(Cli, GreeksFromSavedField) {
    ASSERT_EQ(run("solve --preset test3 --mesh 12 --out u.dat"), 0) << read("stderr.txt");
    ASSERT_EQ(run("greeks --preset test3 --field u.dat --out g"), 0) << read("stderr.txt");
    const fvimex::FieldFile d = fvimex::read_field_file((dir_ / "g_delta.dat").string());
    const fvimex::FieldFile g = fvimex::read_field_file((dir_ / "g_gamma.dat").string());
    EXPECT_EQ(d.grid.nx(), 10);
    EXPECT_EQ(g.grid.ny(), 12);
    EXPECT_NE(read("stdout.txt").find("gamma_oscillation="), std::string::npos);
}

// A field written by solve is what cut reads back, bit for bit.
TEST_F(Cli, CutOfSavedFieldMatchesFile) {
    ASSERT_EQ(run("solve --preset test1 --mesh 9 --out u.dat"), 0) << read("stderr.txt");
    ASSERT_EQ(run("cut --preset test1 --field u.dat --axis y --at-x 80"), 0) << read("stderr.txt");
    const fvimex::FieldFile f = fvimex::read_field_file((dir_ / "u.dat").string());
    const auto rows = lines(read("cut_numeric.dat"));
    ASSERT_EQ(rows.size(), 10u);
    for (int j = 0; j < 9; ++j) {
        double y = 0, v = 0;
        std::istringstream(rows[j + 1]) >> y >> v;
        EXPECT_EQ(v, f.field(4, j));
    }
}

TEST_F(Cli, HelpExitsZero) { EXPECT_EQ(run("--help"), 0); }

}  // namespace
