#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "edgelab/report.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = EDGELAB_CLI_PATH;
const std::string kData = EDGELAB_TEST_DATA;

fs::path workdir() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / ("edgelab_cli_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd =
        "cd '" + workdir().string() + "' && '" + kCli + "' " + args + " >last.out 2>last.err";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string err() { return slurp(workdir() / "last.err"); }

int count_rows(const std::string& csv) {
    int n = 0;
    for (std::size_t p = csv.find("\r\n"); p != std::string::npos; p = csv.find("\r\n", p + 2)) ++n;
    return n - 1;
}

// a quick, well-resolved classification
const std::string kSmall = "--n-points 64 --levels 3";

}  // namespace

TEST(CliExit, SuccessIsZero) {
    EXPECT_EQ(run("edge classify --gamma 1.0 --xi 1 --sigma0 1 " + kSmall + " --out ok"), 0);
    const auto j = nlohmann::json::parse(slurp(workdir() / "ok/edge_classify.json"));
    EXPECT_EQ(j.at(0).at("case_label"), "Case3");
    EXPECT_TRUE(fs::exists(workdir() / "ok/edge_classify.csv"));
    EXPECT_TRUE(fs::exists(workdir() / "ok/edge_classify.manifest.json"));
}

TEST(CliExit, ConfigErrorsNameTheField) {
    EXPECT_EQ(run("edge classify --sigma0 0"), 1);
    EXPECT_NE(err().find("edge.sigma0"), std::string::npos);
    EXPECT_EQ(run("edge classify --xi -1"), 1);
    EXPECT_NE(err().find("edge.xi_norm"), std::string::npos);
    EXPECT_EQ(run("edge classify --n-points 8"), 1);
    EXPECT_NE(err().find("mesh.n_points"), std::string::npos);
    EXPECT_EQ(run("edge classify --levels 2"), 1);
    EXPECT_NE(err().find("mesh.levels"), std::string::npos);
    EXPECT_EQ(run("edge classify --format xml"), 1);
    EXPECT_NE(err().find("output.formats"), std::string::npos);
    EXPECT_EQ(run("edge augment --mode sideways"), 1);
    EXPECT_NE(err().find("borders.mode"), std::string::npos);
    EXPECT_EQ(run("space member -s 3"), 1);
    EXPECT_NE(err().find("space.s"), std::string::npos);
    EXPECT_EQ(run("dtn spectrum"), 1);
    EXPECT_NE(err().find("dtn.profile"), std::string::npos);
    EXPECT_EQ(run("dtn spectrum --profile missing.json"), 1);
    EXPECT_EQ(run("dtn compare --profiles " + kData + "/unit.json"), 1);
    EXPECT_EQ(run("algebra splitting-check --dim-j 0"), 1);
    EXPECT_NE(err().find("algebra.dim_j"), std::string::npos);
    EXPECT_EQ(run("edge sweep-gamma --steps 0"), 1);
    EXPECT_NE(err().find("edge.gamma_sweep.steps"), std::string::npos);
    EXPECT_EQ(run("edge classify --no-such-flag"), 1);
    EXPECT_EQ(run(""), 1);
    EXPECT_EQ(run("edge"), 1);
}

TEST(CliExit, BadConfigFile) {
    std::ofstream(workdir() / "typo.json") << R"({"edge": {"gama": 1}})";
    EXPECT_EQ(run("edge classify --config typo.json"), 1);
    EXPECT_NE(err().find("edge.gama"), std::string::npos);
    std::ofstream(workdir() / "wrongtype.json") << R"({"mesh": {"n_points": "many"}})";
    EXPECT_EQ(run("edge classify --config wrongtype.json"), 1);
    EXPECT_NE(err().find("mesh.n_points"), std::string::npos);
    std::ofstream(workdir() / "broken.json") << "{";
    EXPECT_EQ(run("edge classify --config broken.json"), 1);
    EXPECT_EQ(run("edge classify --config nothere.json"), 1);
}

TEST(CliExit, UnclassifiableIsTwo) {
    // truncation at |xi| r_max = 2 leaves a decaying direction that matches neither profile
    EXPECT_EQ(run("edge classify --gamma -6 --r-max 2 --n-points 16 --grading 2 --levels 3"), 2);
    EXPECT_NE(err().find("unclassifiable"), std::string::npos);
}

TEST(CliExit, NotCertifiedIsThree) {
    EXPECT_EQ(run("edge augment --gamma 0.5 --mode boundary_row --out aug"), 3);
    const auto j = nlohmann::json::parse(slurp(workdir() / "aug/edge_augment.json"));
    EXPECT_EQ(j.at("certified"), false);
}

TEST(Cli, AugmentCertifiesAtQuarter) {
    EXPECT_EQ(run("edge augment --gamma 0.25 --mode boundary_row --out aug"), 0);
    const auto j = nlohmann::json::parse(slurp(workdir() / "aug/edge_augment.json"));
    EXPECT_EQ(j.at("certified"), true);
    EXPECT_EQ(j.at("mode"), "boundary_row");
}

TEST(Cli, AugmentWithTabulatedPhi) {
    EXPECT_EQ(run("edge augment --gamma 0.25 --phi " + kData + "/phi_hat.json --out tab"), 0);
    const auto m = nlohmann::json::parse(slurp(workdir() / "tab/edge_augment.manifest.json"));
    EXPECT_EQ(m.at("input_digests").size(), 1u);
}

TEST(Cli, SweepRowCount) {
    EXPECT_EQ(run("edge sweep-gamma --from 0.25 --to 1.75 --steps 7 --out sw --format csv"), 0);
    const std::string csv = slurp(workdir() / "sw/edge_sweep_gamma.csv");
    EXPECT_EQ(count_rows(csv), 7);
    EXPECT_FALSE(fs::exists(workdir() / "sw/edge_sweep_gamma.json"));
}

TEST(Cli, SpaceMemberAndDual) {
    EXPECT_EQ(run("space member --gamma 0.6 --out sp"), 0);
    auto j = nlohmann::json::parse(slurp(workdir() / "sp/space_member.json"));
    EXPECT_EQ(j.at("verdict"), "divergent");
    EXPECT_EQ(run("space member --gamma 1.6 --dual --out sp"), 0);
    j = nlohmann::json::parse(slurp(workdir() / "sp/space_member.json"));
    EXPECT_EQ(j.at("verdict"), "member");
    EXPECT_EQ(j.at("s"), 2);
}

TEST(Cli, DtnSpectrumUnitConductivity) {
    EXPECT_EQ(run("dtn spectrum --profile " + kData + "/unit.json -N 8 --out dtn"), 0);
    const std::string csv = slurp(workdir() / "dtn/dtn_spectrum.csv");
    EXPECT_EQ(count_rows(csv), 9);
    EXPECT_EQ(csv.substr(0, csv.find("\r\n")), "n,lambda_n");
    const auto j = nlohmann::json::parse(slurp(workdir() / "dtn/dtn_spectrum.json"));
    for (int n = 0; n <= 8; ++n)
        EXPECT_NEAR(j.at("modes").at(n).at("lambda_n").get<double>(), n, 1e-6);
    EXPECT_EQ(j.at("sigma_at_boundary"), 1.0);
}

TEST(Cli, DtnCompare) {
    EXPECT_EQ(run("dtn compare --profiles " + kData + "/unit.json " + kData + "/unit.json --out cmp"), 0);
    auto j = nlohmann::json::parse(slurp(workdir() / "cmp/dtn_compare.json"));
    EXPECT_EQ(j.at("distinguishable"), false);
    EXPECT_EQ(run("dtn compare --profiles " + kData + "/two_layer_a.json " + kData +
                  "/two_layer_b.json --out cmp"),
              0);
    j = nlohmann::json::parse(slurp(workdir() / "cmp/dtn_compare.json"));
    EXPECT_EQ(j.at("distinguishable"), true);
}

TEST(Cli, SplittingCheck) {
    EXPECT_EQ(run("algebra splitting-check --dim-j 8 --dim-o 8 --trials 100 --seed 3 --out alg"), 0);
    const auto j = nlohmann::json::parse(slurp(workdir() / "alg/algebra_splitting_check.json"));
    EXPECT_EQ(j.at("passed"), 100);
    EXPECT_EQ(j.at("scaled_phi_rejected"), 100);
    EXPECT_LE(j.at("max_deviation").get<double>(), 1e-10);
    const auto m = nlohmann::json::parse(slurp(workdir() / "alg/algebra_splitting_check.manifest.json"));
    EXPECT_EQ(m.at("seed"), 3);
}

TEST(Cli, FlagsOverrideConfig) {
    EXPECT_EQ(run("edge classify --config " + kData + "/classify.json --out cfg"), 0);
    auto m = nlohmann::json::parse(slurp(workdir() / "cfg/edge_classify.manifest.json"));
    EXPECT_EQ(m.at("config").at("edge").at("gamma"), 0.75);
    EXPECT_EQ(m.at("config").at("edge").at("sigma0"), 2);
    EXPECT_EQ(m.at("config").at("mesh").at("n_points"), 64);
    EXPECT_EQ(m.at("input_digests").size(), 1u);
    EXPECT_EQ(run("edge classify --config " + kData + "/classify.json --gamma 1.0 --out cfg"), 0);
    m = nlohmann::json::parse(slurp(workdir() / "cfg/edge_classify.manifest.json"));
    EXPECT_EQ(m.at("config").at("edge").at("gamma"), 1.0);
    EXPECT_EQ(m.at("config").at("edge").at("sigma0"), 2);
}

TEST(Cli, ManifestReproducesOutputs) {
    ASSERT_EQ(run("dtn spectrum --profile " + kData + "/two_layer_a.json -N 6 --out rep"), 0);
    const std::string csv = slurp(workdir() / "rep/dtn_spectrum.csv");
    const std::string json = slurp(workdir() / "rep/dtn_spectrum.json");
    fs::copy_file(workdir() / "rep/dtn_spectrum.manifest.json", workdir() / "rep.manifest.json",
                  fs::copy_options::overwrite_existing);
    fs::remove_all(workdir() / "rep");
    ASSERT_EQ(run("dtn spectrum --config rep.manifest.json"), 0);
    EXPECT_EQ(slurp(workdir() / "rep/dtn_spectrum.csv"), csv);
    EXPECT_EQ(slurp(workdir() / "rep/dtn_spectrum.json"), json);
    // a manifest is bound to its command
    EXPECT_EQ(run("edge classify --config rep.manifest.json"), 1);
    EXPECT_NE(err().find("command"), std::string::npos);
}

TEST(Cli, InputsAreNotModified) {
    const std::string before = edgelab::file_digest(kData + "/two_layer_a.json");
    const std::string cfg = edgelab::file_digest(kData + "/classify.json");
    ASSERT_EQ(run("dtn spectrum --profile " + kData + "/two_layer_a.json --out keep"), 0);
    ASSERT_EQ(run("edge classify --config " + kData + "/classify.json --out keep"), 0);
    EXPECT_EQ(edgelab::file_digest(kData + "/two_layer_a.json"), before);
    EXPECT_EQ(edgelab::file_digest(kData + "/classify.json"), cfg);
}

TEST(Cli, HelpAndVersion) {
    EXPECT_EQ(run("--help"), 0);
    EXPECT_EQ(run("--version"), 0);
    EXPECT_NE(slurp(workdir() / "last.out").find(edgelab::kToolVersion), std::string::npos);
}
