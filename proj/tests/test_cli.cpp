#include "qpuzzle/qpuzzle.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

namespace {

const std::string kSource = QPUZZLE_SOURCE_DIR;

struct CliResult {
    int code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + QPUZZLE_CLI + "\" " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, Dimensions) {
    EXPECT_EQ(run_cli("dims --board " + kSource + "/boards/2x2_gg_bb.json").out, "6\n");
    EXPECT_EQ(run_cli("dims --sites 4 --counts 1,1,1,1").out, "24\n");
    EXPECT_EQ(run_cli("dims --square 10 --colors 2").out, "100891344545564193334812497256\n");
}

TEST(Cli, MatricesMatchFixtures) {
    for (const char* op : {"S_U", "S_D", "S_L", "S_R"}) {
        const CliResult r = run_cli("matrices --board " + kSource + "/boards/2x2_gg_bb_fermion.json --op " + op);
        EXPECT_EQ(r.code, 0);
        EXPECT_EQ(r.out, read_file(kSource + "/fixtures/2x2_fermion_" + op + ".json")) << op;
    }
    const CliResult cube = run_cli("matrices --cube --op P_U");
    EXPECT_EQ(cube.out, read_file(kSource + "/fixtures/cube_P_U.json"));
}

TEST(Cli, CubeGodsNumber) { EXPECT_EQ(run_cli("cube --gods-number").out, "3\n"); }

TEST(Cli, SolveBasisState) {
    const CliResult r = run_cli("solve --board " + kSource + "/boards/2x2_gg_bb.json --start-basis 4");
    ASSERT_EQ(r.code, 0) << r.out;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["combined"]["word"], nlohmann::json::array({"S_R"}));
    EXPECT_EQ(j["quantum"]["expected_cost"], 3.0);
}

TEST(Cli, ErrorsExitNonzero) {
    EXPECT_NE(run_cli("dims --bogus").code, 0);
    const CliResult r = run_cli("dims --board /nonexistent.json");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("\"error\""), std::string::npos);
    EXPECT_EQ(run_cli("matrices --board " + kSource + "/boards/2x2_gg_bb.json --op S_Z").code, 2);
}
