#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <microlocal/cli/commands.hpp>

using namespace microlocal;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("microlocal_test_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run(const std::string& cmd, const fs::path& out, std::map<std::string, std::string> set = {},
        bool deterministic = true) {
    std::ostringstream log;
    return run_command({cmd, std::move(set), out, deterministic}, log);
}

} // namespace

TEST(ConfigText, ParsesCommentsAndWhitespace) {
    const auto kv = parse_config_text("# header\n k_max = 4 \n\ntol=1e-7 # trailing\n", "t");
    ASSERT_EQ(kv.size(), 2u);
    EXPECT_EQ(kv[0], std::make_pair(std::string("k_max"), std::string("4")));
    EXPECT_EQ(kv[1], std::make_pair(std::string("tol"), std::string("1e-7")));
}

TEST(ConfigText, EmptyOrMalformedIsUsageError) {
    EXPECT_THROW(parse_config_text("", "t"), UsageError);
    EXPECT_THROW(parse_config_text("# only a comment\n\n", "t"), UsageError);
    EXPECT_THROW(parse_config_text("k_max 4\n", "t"), UsageError);
    EXPECT_THROW(parse_config_text("=4\n", "t"), UsageError);
    EXPECT_THROW(parse_config_file("/nonexistent/microlocal.cfg"), UsageError);
}

TEST(Params, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(Params("figure1", {{"bogus", "1"}}), UsageError);
    EXPECT_THROW(Params("no-such-command", {}), UsageError);
    const Params p("airy-moments", {{"k_max", "x"}, {"tol", "1e-3z"}});
    EXPECT_THROW(p.integer("k_max"), UsageError);
    EXPECT_THROW(p.num("tol"), UsageError);
    const Params q("wfa-scan", {{"x0", "0,0.5,-1"}});
    EXPECT_EQ(q.num_list("x0"), (std::vector<double>{0.0, 0.5, -1.0}));
    EXPECT_EQ(q.list("functions").size(), 3u);
}

TEST(Params, EveryCommandHasDefaults) {
    for (const auto& c : command_names()) EXPECT_FALSE(command_params(c).empty()) << c;
}

TEST(RunCommand, Figure1WritesCsvAndManifest) {
    const auto out = scratch("figure1");
    ASSERT_EQ(run("figure1", out), 0);
    const auto csv = slurp(out / "figure1_characteristic.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "operator,x1,theta,dtheta_dt,dx1_dt");
    // Keldysh rows at x1 = 0 sit at theta = 0 and pi.
    EXPECT_NE(csv.find("keldysh,0,0,"), std::string::npos);
    EXPECT_NE(csv.find("keldysh,0,3.1415926535897931,"), std::string::npos);
    const auto m = nlohmann::json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(m["command"], "figure1");
    EXPECT_EQ(m["version"], MICROLOCAL_VERSION);
    EXPECT_EQ(m["parameters"]["n_x1"], "41");
    EXPECT_TRUE(m["pass"].get<bool>());
    EXPECT_FALSE(m.contains("started_utc"));
}

TEST(RunCommand, DeterministicRunsAreByteIdentical) {
    for (const std::string cmd : {"figure1", "airy-moments", "weights-verify"}) {
        const auto a = scratch(cmd + "_a"), b = scratch(cmd + "_b");
        ASSERT_EQ(run(cmd, a), 0);
        ASSERT_EQ(run(cmd, b), 0);
        for (const auto& e : fs::directory_iterator(a))
            EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << cmd << " " << e.path().filename();
    }
}

TEST(RunCommand, NonDeterministicManifestHasTiming) {
    const auto out = scratch("timing");
    ASSERT_EQ(run("figure1", out, {}, false), 0);
    const auto m = nlohmann::json::parse(slurp(out / "manifest.json"));
    EXPECT_TRUE(m.contains("started_utc"));
    EXPECT_TRUE(m.contains("seconds"));
}

TEST(RunCommand, FailingCheckGivesExitOneAndNamesIt) {
    const auto out = scratch("fail");
    std::ostringstream log;
    EXPECT_EQ(run_command({"airy-moments", {{"tol", "1e-17"}}, out, true}, log), 1);
    EXPECT_NE(log.str().find("first failing check growth_matches_(2k)!"), std::string::npos) << log.str();
    EXPECT_FALSE(nlohmann::json::parse(slurp(out / "manifest.json"))["pass"].get<bool>());
}

TEST(RunCommand, OutOfRangeParameterIsUsageError) {
    EXPECT_THROW(run("airy-moments", scratch("range"), {{"k_max", "9"}}), UsageError);
    EXPECT_THROW(run("wfa-scan", scratch("range2"), {{"functions", "sinc"}}), UsageError);
}

TEST(RunCommand, AiryMomentsSevenOfSeven) {
    const auto out = scratch("airy");
    std::ostringstream log;
    ASSERT_EQ(run_command({"airy-moments", {{"k_max", "6"}}, out, true}, log), 0);
    EXPECT_NE(log.str().find("7/7 within"), std::string::npos);
}
