#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lcu/harness/cli.hpp"
#include "lcu/harness/runner.hpp"

using namespace lcu;
using namespace lcu::harness;

namespace {

std::filesystem::path temp_path(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("lcu_harness_" + std::to_string(::getpid()) + "_" + name);
}

void write_file(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream f(p);
    f << text;
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream f(p);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> csv_rows(const std::string& csv)
{
    std::vector<std::string> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            rows.push_back(line);
        }
    }
    return rows;
}

} // namespace

TEST(Config, ParsesFlags)
{
    const ExperimentConfig c = parse_config({"gsp", "--eps", "0.1", "--delta", "0.05", "--seed", "7"});
    EXPECT_EQ(c.subcommand(), "gsp");
    EXPECT_DOUBLE_EQ(c.real("eps"), 0.1);
    EXPECT_DOUBLE_EQ(c.real("delta"), 0.05);
    EXPECT_EQ(c.integer("seed"), 7);
    EXPECT_EQ(c.text("observable"), "ZI");
    EXPECT_FALSE(c.flag("imperfect"));
}

TEST(Config, RejectsDuplicatesUnknownAndBadTypes)
{
    EXPECT_THROW(parse_config({"gsp", "--eps", "0.1", "--eps", "0.2"}), ConfigError);
    EXPECT_THROW(parse_config({"gsp", "--nonsense", "1"}), ConfigError);
    EXPECT_THROW(parse_config({"hamsim", "--time", "abc"}), ConfigError);
    EXPECT_THROW(parse_config({"hamsim", "--seed", "1.5"}), ConfigError);
    EXPECT_THROW(parse_config({}), ConfigError);
    ExperimentConfig c("qls");
    EXPECT_THROW(c.set("gap", "1"), ConfigError);
    EXPECT_THROW(c.real("gap"), ConfigError);
    EXPECT_THROW(ExperimentConfig("bogus"), ConfigError);
    EXPECT_THROW(parse_config_text("eps = 0.1\neps = 0.2\n"), ConfigError);
    EXPECT_THROW(parse_config_text("no equals sign\n"), ConfigError);
    EXPECT_THROW(read_config_file("/nonexistent/lcu.cfg"), ConfigError);
}

TEST(Config, FileThenFlagPrecedence)
{
    const auto path = temp_path("cfg.txt");
    write_file(path, "# comment\neps = 0.2\nseed=11\n\nobservable = XI\n");
    const ExperimentConfig c = parse_config({"gsp", "--config", path.string(), "--eps", "0.05"});
    EXPECT_DOUBLE_EQ(c.real("eps"), 0.05);
    EXPECT_EQ(c.integer("seed"), 11);
    EXPECT_EQ(c.text("observable"), "XI");
    EXPECT_DOUBLE_EQ(c.real("delta"), 0.1);
    write_file(path, "eta = 0.5\nbanana = 1\n");
    EXPECT_THROW(parse_config({"gsp", "--config", path.string()}), ConfigError);
    std::filesystem::remove(path);
}

TEST(Config, EverySubcommandHasCommonKeys)
{
    for (const auto& s : subcommands()) {
        const ExperimentConfig c(s);
        for (const char* k : {"seed", "eps", "delta", "mode", "out", "trace", "threads", "repetitions"}) {
            EXPECT_TRUE(c.has(k)) << s << " " << k;
        }
    }
}

TEST(Runner, ReportEnvelope)
{
    const RunReport r = run(parse_config({"hamsim", "--seed", "3"}));
    const json& d = r.document;
    EXPECT_EQ(d["tool"], kToolName);
    EXPECT_EQ(d["subcommand"], "hamsim");
    EXPECT_EQ(d["config"]["seed"], 3);
    EXPECT_TRUE(d["timings"].contains("wall_seconds"));
    EXPECT_LE(d["results"]["abs_error"].get<double>(), 0.05);
}

TEST(Runner, SameSeedSameResults)
{
    for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
             {"hamsim", "--seed", "9", "--threads", "1"},
             {"gsp", "--seed", "9", "--eps", "0.2"},
             {"walks-search", "--seed", "9", "--graph", "cycle:8", "--trials", "300"},
         }) {
        const RunReport a = run(parse_config(args));
        const RunReport b = run(parse_config(args));
        EXPECT_EQ(a.document["results"], b.document["results"]) << args[0];
        EXPECT_EQ(a.document["config"], b.document["config"]) << args[0];
    }
}

TEST(Runner, ThreadCountDoesNotChangeResults)
{
    const RunReport a = run(parse_config({"hamsim", "--seed", "4", "--threads", "1"}));
    const RunReport b = run(parse_config({"hamsim", "--seed", "4", "--threads", "4"}));
    EXPECT_EQ(a.document["results"], b.document["results"]);
}

TEST(Runner, TraceRowsMatchRepetitions)
{
    const RunReport r = run(parse_config({"hamsim", "--seed", "2", "--trace", "--repetitions", "50"}));
    const auto used = r.document["results"]["estimate"]["T_used"].get<std::size_t>();
    EXPECT_EQ(used, 50U);
    EXPECT_EQ(r.trace.size(), used);
    const auto rows = csv_rows(trace_csv(r.trace));
    EXPECT_EQ(rows.front(), "index,term_id_1,term_id_2,value,cost");
    EXPECT_EQ(rows.size(), used + 1);
}

TEST(Sweep, TimeAxisRows)
{
    const SweepOutput s = run_sweep(parse_config({"sweep", "--target", "hamsim", "--axis", "time", "--values", "0.25,0.5,1,2", "--seed", "5"}));
    const auto rows = csv_rows(s.csv);
    ASSERT_EQ(rows.size(), 5U);
    EXPECT_EQ(rows.front().rfind("time,seed,", 0), 0U);
    ASSERT_EQ(s.points.size(), 4U);
    double prev = 0.0;
    std::set<std::int64_t> seeds;
    for (const auto& p : s.points) {
        const double tau = p["results"]["estimate"]["tau_max"].get<double>();
        EXPECT_GE(tau, prev);
        prev = tau;
        seeds.insert(p["config"]["seed"].get<std::int64_t>());
    }
    EXPECT_EQ(seeds.size(), 4U);
}

TEST(Sweep, HalvingEpsQuadruplesRepetitions)
{
    const SweepOutput s = run_sweep(parse_config({"sweep", "--target", "gsp", "--axis", "eps", "--values", "0.4,0.2"}));
    ASSERT_EQ(s.points.size(), 2U);
    const double t1 = s.points[0]["results"]["estimate"]["T_required"].get<double>();
    const double t2 = s.points[1]["results"]["estimate"]["T_required"].get<double>();
    EXPECT_NEAR(t2 / t1, 4.0, 0.01);
}

TEST(Sweep, RejectsBadAxisAndSelfTarget)
{
    EXPECT_THROW(run_sweep(parse_config({"sweep", "--axis", "kappa"})), ConfigError);
    EXPECT_THROW(run_sweep(parse_config({"sweep", "--target", "sweep"})), ConfigError);
    EXPECT_THROW(run_sweep(parse_config({"sweep", "--set", "nokeyvalue"})), ConfigError);
}

TEST(Binary, WritesReportAndExitCodes)
{
    const auto out = temp_path("report.json");
    const std::string lab = LCU_LAB_PATH;
    const std::string ok = lab + " decomp-check --kind gaussian --t 4 --out " + out.string();
    ASSERT_EQ(std::system(ok.c_str()), 0);
    const json doc = json::parse(read_file(out));
    EXPECT_EQ(doc["subcommand"], "decomp-check");
    EXPECT_LE(doc["results"]["scalar_sup_error"].get<double>(), 1e-3);
    std::filesystem::remove(out);
    const auto code = [&](const std::string& args) {
        const int status = std::system((lab + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    EXPECT_EQ(code("hamsim --bogus 1"), kExitConfig);
    EXPECT_EQ(code("hamsim --eps 2"), kExitPrecondition);
    EXPECT_EQ(code("analog-gsp --z_max 2"), kExitConvergence);
}
