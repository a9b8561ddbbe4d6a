#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "common.hpp"

using namespace unrefinable;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(UNREFINABLE_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    char buf[4096];
    for (std::size_t got; (got = fread(buf, 1, sizeof buf, pipe)) > 0;)
        r.out.append(buf, got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

} // namespace

TEST(Cli, CountUnrefinable45)
{
    const auto r = run("count --unrefinable --N 45");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "45 11\n");
}

TEST(Cli, CountRangeMatchesLibrary)
{
    const auto r = run("count --unrefinable --N 1..30");
    ASSERT_EQ(r.status, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 30U);
    for (Int N = 1; N <= 30; ++N)
        EXPECT_EQ(ls[static_cast<std::size_t>(N - 1)],
                  std::to_string(N) + " " + std::to_string(oracle::unrefinable_partitions(N).size()));
}

TEST(Cli, MaximalCsvFor27HasClassColumn)
{
    const auto r = run("maximal --tri 27 --format csv");
    ASSERT_EQ(r.status, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 22U);
    EXPECT_EQ(ls[0], "n,parts,N,t,lambda_t,m,mex,class");
    std::map<std::string, int> classes;
    for (std::size_t i = 1; i < ls.size(); ++i)
        ++classes[ls[i].substr(ls[i].rfind(',') + 1)];
    const std::map<std::string, int> want{{"pi_tilde", 1}, {"A4", 1}, {"B4", 1}, {"C4", 1},
                                          {"A5", 3},       {"B5", 3}, {"C5", 4}, {"D5", 3},
                                          {"B6", 1},       {"C6", 1}, {"D6", 2}};
    EXPECT_EQ(classes, want);
}

TEST(Cli, SigmaEmitsJsonObjects)
{
    const auto r = run("sigma --tri 13");
    ASSERT_EQ(r.status, 0);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 4U);
    std::map<std::string, std::string> image_class_of;
    for (const auto& l : ls) {
        const auto j = nlohmann::json::parse(l);
        EXPECT_EQ(j.at("n"), 13);
        EXPECT_TRUE(j.at("maximal").is_array());
        image_class_of[j.at("class").get<std::string>()] = j.at("image_class").get<std::string>();
        EXPECT_EQ(j.at("image").get<std::vector<Int>>().size() >= 2, true);
    }
    EXPECT_EQ(image_class_of.at("A4"), "Abar");
    EXPECT_EQ(image_class_of.at("B4"), "Bbar");
    EXPECT_EQ(image_class_of.at("C4"), "Cbar");
    EXPECT_EQ(image_class_of.at("pi_tilde"), "Dbar");
}

TEST(Cli, SigmaSinglePartitionAndInverse)
{
    const auto fwd = run("sigma --parts 1,2,3,4,5,6,8,12,13,15,22");
    ASSERT_EQ(fwd.status, 0);
    EXPECT_EQ(nlohmann::json::parse(fwd.out).at("image"), nlohmann::json({1, 2, 4}));
    const auto inv = run("sigma --inverse 7 --parts 1,2,4");
    ASSERT_EQ(inv.status, 0);
    EXPECT_EQ(nlohmann::json::parse(inv.out).at("maximal"),
              nlohmann::json({1, 2, 3, 4, 5, 6, 8, 12, 13, 15, 22}));
}

TEST(Cli, VerifyBijectionPasses)
{
    const auto r = run("verify --suite bijection --k 7..40");
    EXPECT_EQ(r.status, 0) << r.out;
    for (const auto& l : lines(r.out))
        EXPECT_NE(l.find(" PASS "), std::string::npos) << l;
}

TEST(Cli, VerifySmallRangesOfEverySuite)
{
    const auto r = run("verify --N 1..15 --search-N 1..30 --bounds-N 1..60 --tri 1..31 --k 7..12 --format jsonl");
    EXPECT_EQ(r.status, 0) << r.out;
    std::map<std::string, int> suites;
    for (const auto& l : lines(r.out)) {
        const auto j = nlohmann::json::parse(l);
        ++suites[j.at("suite").get<std::string>()];
        EXPECT_EQ(j.at("status"), "PASS") << l;
        EXPECT_TRUE(j.at("counterexample").is_null());
    }
    EXPECT_EQ(suites.size(), 4U);
}

TEST(Cli, SequenceMupCountsEqualDistinctCounts)
{
    const auto mup = run("sequence --kind mup-counts --k 7..20");
    const auto dis = run("sequence --kind distinct-counts --k 7..20");
    ASSERT_EQ(mup.status, 0);
    ASSERT_EQ(dis.status, 0);
    EXPECT_EQ(mup.out, dis.out);
    const auto ls = lines(mup.out);
    ASSERT_EQ(ls.size(), 14U);
    EXPECT_EQ(ls[7], "14 21");
}

TEST(Cli, SequenceUnrefinableCountsCarryProvenance)
{
    const auto r = run("sequence --kind unrefinable-counts --N 44..46 --format csv");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "N,count,provenance\n44,22,derived\n45,11,published\n46,20,derived\n");
}

TEST(Cli, OutputIndependentOfThreads)
{
    const auto one = run("enumerate --N 150 --threads 1");
    const auto four = run("enumerate --N 150 --threads 4");
    ASSERT_EQ(one.status, 0);
    EXPECT_EQ(one.out, four.out);
    EXPECT_EQ(lines(one.out).size(), count_unrefinable(150));
    EXPECT_EQ(run("maximal --tri 41 --threads 1").out, run("maximal --tri 41 --threads 3").out);
}

TEST(Cli, EnumerateFormats)
{
    const auto j = run("enumerate --N 45 --largest 14");
    ASSERT_EQ(j.status, 0);
    const auto first = nlohmann::json::parse(lines(j.out).at(0));
    EXPECT_EQ(first.at("parts"), nlohmann::json({1, 2, 3, 4, 5, 6, 10, 14}));
    EXPECT_EQ(first.at("mex"), 7);
    const auto c = run("enumerate --N 6 --all-distinct --format csv");
    EXPECT_EQ(c.out, "parts,N,t,lambda_t,m,mex\n1;2;3,6,3,3,0,0\n1;5,6,2,5,3,2\n2;4,6,2,4,2,1\n6,6,1,6,5,1\n");
    const auto t = run("count --distinct --N 10 --format table");
    EXPECT_EQ(t.out, "N   count\n10  10\n");
}

TEST(Cli, ClassifyReportsWitness)
{
    const auto r = run("classify --parts 3,4");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("unrefinable"), false);
    EXPECT_EQ(j.at("witness"), nlohmann::json({1, 2, 3}));
    EXPECT_EQ(j.at("distinct_class"), "Dbar2");
    const auto m = nlohmann::json::parse(run("classify --parts 1,2,4,5,8,11,14").out);
    EXPECT_EQ(m.at("maximal_class"), "C4");
}

TEST(Cli, UsageErrorsExitWithTwo)
{
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("count --N 45").status, 2);
    EXPECT_EQ(run("count --unrefinable --N 0").status, 2);
    EXPECT_EQ(run("count --unrefinable --N 9..3").status, 2);
    EXPECT_EQ(run("count --unrefinable --N 4294967296").status, 2);
    EXPECT_EQ(run("count --unrefinable --N 45 --format xml").status, 2);
    EXPECT_EQ(run("classify --parts 1,1").status, 2);
    EXPECT_EQ(run("sigma --parts 1,2,3").status, 2);
    EXPECT_EQ(run("sigma --inverse 6 --parts 1,5").status, 2);
    EXPECT_EQ(run("verify --suite nope").status, 2);
    EXPECT_EQ(run("sequence --kind nope --k 1..3").status, 2);
    EXPECT_EQ(run("count --unrefinable --N 45 --threads 0").status, 2);
}

TEST(Cli, HelpExitsZero)
{
    EXPECT_EQ(run("--help").status, 0);
    EXPECT_EQ(run("verify --help").status, 0);
}
