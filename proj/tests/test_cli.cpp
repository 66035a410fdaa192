#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sumprod/cli.hpp"

using namespace sumprod;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() / ("sumprod_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, GenWritesDeterministicFiles) {
    TempDir tmp;
    std::string out1 = tmp.file("a.txt"), out2 = tmp.file("b.txt");
    EXPECT_EQ(run_cli({"gen", "--family", "ap,n=10,start=1,step=3", "--out", out1}), 0);
    RSet a = read_set_file(out1);
    EXPECT_EQ(a.size(), 10u);
    EXPECT_EQ(a.min(), Rational(1));
    EXPECT_EQ(a.max(), Rational(28));

    EXPECT_EQ(run_cli({"gen", "--family", "random,n=8,lo=1,hi=1000,seed=5", "--out", out1}), 0);
    EXPECT_EQ(run_cli({"gen", "--family", "random,n=8,lo=1,hi=1000,seed=5", "--out", out2}), 0);
    EXPECT_EQ(slurp(out1), slurp(out2));

    EXPECT_NE(run_cli({"gen", "--family", "gp,n=4,start=1,ratio=1", "--out", out1}), 0);
    EXPECT_NE(run_cli({"gen"}), 0);  // --family required
}

TEST(Cli, StatsHeadlineQuantities) {
    TempDir tmp;
    std::string out = tmp.file("stats.json");
    EXPECT_EQ(run_cli({"stats", "--family", "ap,n=3,start=1,step=1", "--out", out,
                       "--omit-timing"}),
              0);
    ojson rep = ojson::parse(slurp(out));
    EXPECT_EQ(rep["schema_version"], "1");
    EXPECT_EQ(rep["command"], "stats");
    EXPECT_FALSE(rep.contains("timing"));
    const ojson& card = rep["results"]["cardinalities"];
    EXPECT_EQ(card["A+A"], 5);
    EXPECT_EQ(card["AA"], 6);
    EXPECT_EQ(card["A:A"], 7);
    EXPECT_EQ(rep["results"]["energies"]["E+_2"], "19");
    EXPECT_TRUE(rep["results"].contains("doubling_bound"));

    EXPECT_EQ(run_cli({"stats", "--family", "ap,n=1,start=1,step=1", "--out", out}), 0);
    ojson one = ojson::parse(slurp(out));
    EXPECT_EQ(one["results"]["cardinalities"]["A+A"], 1);
    EXPECT_EQ(one["results"]["energies"]["E+_2"], "1");
    EXPECT_TRUE(one.contains("timing"));

    EXPECT_NE(run_cli({"stats"}), 0);  // needs a source
    EXPECT_NE(run_cli({"stats", "--set", tmp.file("missing.txt")}), 0);
}

TEST(Cli, StatsOnGp4) {
    TempDir tmp;
    std::string out = tmp.file("gp4.json");
    EXPECT_EQ(run_cli({"stats", "--family", "gp,n=4,start=1,ratio=2", "--out", out}), 0);
    ojson rep = ojson::parse(slurp(out));
    EXPECT_EQ(rep["results"]["cardinalities"]["AA"], 7);
    // {1,2,4,8}+{1,2,4,8} = {2,3,4,5,6,8,9,10,12,16}
    EXPECT_EQ(rep["results"]["cardinalities"]["A+A"], 10);
}

TEST(Cli, CheckFilterAndFormats) {
    TempDir tmp;
    std::string out = tmp.file("check.json");
    EXPECT_EQ(run_cli({"check", "--family", "ap,n=5,start=1,step=1", "--family",
                       "gp,n=5,start=1,ratio=2", "--registry", "ruzsa.triangle", "--out", out,
                       "--omit-timing"}),
              0);
    ojson rep = ojson::parse(slurp(out));
    for (const auto& rec : rep["results"]["records"])
        EXPECT_EQ(rec["check_id"], "ruzsa.triangle");

    std::string csv = tmp.file("check.csv");
    EXPECT_EQ(run_cli({"check", "--family", "ap,n=5,start=1,step=1", "--family",
                       "gp,n=5,start=1,ratio=2", "--registry", "ruzsa.triangle", "--format",
                       "csv", "--out", csv}),
              0);
    std::string body = slurp(csv);
    EXPECT_EQ(body.rfind("check_id,kind,lhs,rhs_core,ratio,verdict\n", 0), 0u);
    EXPECT_NE(body.find("ruzsa.triangle,exact"), std::string::npos);

    EXPECT_NE(run_cli({"check", "--registry", "no.such.check", "--family",
                       "ap,n=4,start=1,step=1"}),
              0);
}

TEST(Cli, CheckRejectsCorruptSetFile) {
    TempDir tmp;
    std::string bad = tmp.file("bad.txt");
    std::ofstream(bad) << "1\nnot-a-number\n";
    EXPECT_NE(run_cli({"check", "--set", bad}), 0);
}

TEST(Cli, CheckReportRoundTrips) {
    TempDir tmp;
    std::string out = tmp.file("check2.json");
    EXPECT_EQ(run_cli({"check", "--family", "ap,n=6,start=1,step=1", "--family",
                       "random,n=6,lo=1,hi=60,seed=3", "--registry",
                       "chain.ratio,pair_chain.product,solymosi.tau_count", "--out", out,
                       "--omit-timing"}),
              0);
    ojson rep = ojson::parse(slurp(out));
    EXPECT_EQ(ojson::parse(rep.dump()).dump(), rep.dump());
    EXPECT_EQ(rep["results"]["exact_failures"], 0);
}

TEST(Cli, SearchReportAndBestSet) {
    TempDir tmp;
    std::string out = tmp.file("search.json");
    std::string best = tmp.file("best.txt");
    std::vector<std::string> args = {"search", "--objective", "A+A", "--exponent", "1",
                                     "--family", "random,n=5,lo=1,hi=30,seed=2", "--budget",
                                     "1500", "--restarts", "2", "--seed", "2", "--window-hi",
                                     "30", "--cardinality-preserving", "--out", out,
                                     "--set-out", best, "--omit-timing"};
    EXPECT_EQ(run_cli(args), 0);
    std::string first = slurp(out);
    ojson rep = ojson::parse(first);
    RSet best_set = read_set_file(best);
    EXPECT_EQ(best_set.size(), 5u);
    const auto& trace = rep["results"]["trace"];
    ASSERT_GE(trace.size(), 1u);
    double prev = trace[0]["score"];
    for (const auto& t : trace) {
        double s = t["score"];
        EXPECT_LE(s, prev + 1e-12);
        prev = s;
    }
    // byte-identical rerun
    EXPECT_EQ(run_cli(args), 0);
    EXPECT_EQ(slurp(out), first);

    EXPECT_NE(run_cli({"search", "--objective", "bogus", "--family", "ap,n=4,start=1,step=1"}),
              0);
    EXPECT_NE(run_cli({"search", "--objective", "AA+A", "--family", "ap,n=4,start=1,step=1",
                       "--budget", "0"}),
              0);
}

TEST(Cli, BudgetOneEchoesInit) {
    TempDir tmp;
    std::string out = tmp.file("b1.json");
    EXPECT_EQ(run_cli({"search", "--objective", "AA+A", "--family", "gp,n=4,start=1,ratio=2",
                       "--budget", "1", "--out", out, "--omit-timing"}),
              0);
    ojson rep = ojson::parse(slurp(out));
    EXPECT_EQ(rep["results"]["best_set"].size(), 4u);
    EXPECT_EQ(rep["results"]["evaluations"], 1);
}
