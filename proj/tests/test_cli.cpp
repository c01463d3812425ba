#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "frac/cli.hpp"

using namespace frac;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run_args(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"frac"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("frac_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
    static inline int counter_ = 0;
};

std::string slurp(const std::string& p) { return read_file(p); }

}  // namespace

TEST(ParseArgs, ComputeExample) {
    const auto c = parse_args({"compute", "deriv", "--alpha", "0.5", "--side", "left", "--scheme", "rl", "--fn",
                               "const:1", "--grid", "0,1,1024", "--out", "d.csv"});
    EXPECT_EQ(c.command, "compute");
    EXPECT_EQ(c.target, "deriv");
    EXPECT_EQ(c.fns, std::vector<std::string>{"const:1"});
    EXPECT_EQ(c.grid.n, 1024);
    EXPECT_EQ(c.out, "d.csv");
}

TEST(ParseArgs, VerifyAndNormExamples) {
    const auto v = parse_args({"verify", "ftwfc", "--alpha", "0.5", "--fn", "kappa:alpha=0.5;side=left", "--grid",
                               "0,1,2048", "--json", "report.json"});
    EXPECT_EQ(v.command, "verify");
    EXPECT_EQ(v.target, "ftwfc");
    EXPECT_EQ(v.json, "report.json");
    const auto n = parse_args({"norm", "--space", "gagliardo", "--alpha", "0.5", "--p", "2", "--fn", "gauss:mu=0;s=1",
                               "--line", "16,4096"});
    EXPECT_EQ(n.command, "norm");
    ASSERT_TRUE(n.line);
    EXPECT_EQ(n.line->n, 4096);
    EXPECT_EQ(*n.p, 2.0);
}

TEST(ParseArgs, UsageErrors) {
    EXPECT_THROW(parse_args({"compute", "deriv", "--bogus", "1", "--fn", "const:1"}), UsageError);
    EXPECT_THROW(parse_args({"compute", "deriv"}), UsageError);
    EXPECT_THROW(parse_args({"compute", "deriv", "--fn", "const:1", "--csv", "x.csv"}), UsageError);
    EXPECT_THROW(parse_args({"compute", "slope", "--fn", "const:1"}), UsageError);
    EXPECT_THROW(parse_args({"compute", "deriv", "--fn", "wave:1"}), UsageError);
    EXPECT_THROW(parse_args({"compute", "deriv", "--fn", "const:1", "--alpha", "-1"}), UsageError);
    EXPECT_THROW(parse_args({"compute", "deriv", "--fn", "const:1", "--grid", "1,0,10"}), UsageError);
    EXPECT_THROW(parse_args({"verify", "nonsense"}), UsageError);
    EXPECT_THROW(parse_args({"norm", "--fn", "const:1", "--space", "nowhere"}), UsageError);
    EXPECT_THROW(parse_args({"launch"}), UsageError);
    EXPECT_THROW(parse_args(std::vector<std::string>{}), UsageError);
}

TEST(ParseArgs, DefaultGridFromEnvironment) {
    ::setenv("FRAC_DEFAULT_N", "333", 1);
    EXPECT_EQ(parse_args({"compute", "deriv", "--fn", "const:1"}).grid.n, 333);
    EXPECT_EQ(parse_args({"suite", "all", "--n", "64"}).grid.n, 64);
    ::unsetenv("FRAC_DEFAULT_N");
    EXPECT_EQ(parse_args({"compute", "deriv", "--fn", "const:1"}).grid.n, 2048);
}

TEST(ParseArgs, ConfigFile) {
    TempDir t;
    const auto cfg = t.file("run.toml");
    std::ofstream(cfg) << "alpha = 0.25\np = 2\nspace = \"one_sided_left\"\nfn = [\"const:1\"]\ngrid = \"0,1,256\"\n";
    const auto c = parse_args({"norm", "--config", cfg});
    EXPECT_EQ(c.alpha, 0.25);
    EXPECT_EQ(c.grid.n, 256);
    const auto r = run_args({"norm", "--config", cfg});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_NEAR(std::stod(r.out), 1.5296, 1e-2);
    EXPECT_EQ(run_args({"norm", "--config", t.file("missing.toml")}).code, kExitIo);
}

TEST(Run, ComputeSpotValue) {
    const auto r = run_args({"compute", "deriv", "--alpha", "0.5", "--fn", "const:1", "--grid", "0,1,1024"});
    ASSERT_EQ(r.code, kExitPass) << r.err;
    const auto u = parse_csv(r.out);
    EXPECT_NEAR(u.values.back(), 0.5642, 1e-3);
    EXPECT_TRUE(u.is_flagged(0));
    EXPECT_NE(r.out.find("# flagged x=0"), std::string::npos);
    EXPECT_EQ(r.out.rfind("x,value\n", 0), 0u);
}

TEST(Run, ComputeOtherSchemes) {
    for (const char* s : {"gl", "caputo", "oracle"}) {
        const auto r = run_args({"compute", "deriv", "--alpha", "0.5", "--scheme", s, "--fn", "pow:a=0;terms=1*1",
                                 "--grid", "0,1,512"});
        ASSERT_EQ(r.code, kExitPass) << s << r.err;
        EXPECT_NEAR(parse_csv(r.out).values.back(), 1.1283791670955126, 5e-3) << s;
    }
    const auto m = run_args({"compute", "deriv", "--scheme", "marchaud", "--fn", "gauss:mu=0;s=1", "--line", "8,512"});
    EXPECT_EQ(m.code, kExitPass) << m.err;
    const auto i = run_args({"compute", "integral", "--fn", "const:1", "--grid", "0,1,64", "--format", "json"});
    ASSERT_EQ(i.code, kExitPass);
    const auto j = nlohmann::json::parse(i.out);
    EXPECT_NEAR(j["value"].back().get<double>(), 1.1283791670955126, 1e-12);
}

TEST(Run, CsvRoundTripIsBitIdentical) {
    TempDir t;
    const auto a = t.file("a.csv"), b = t.file("b.csv");
    ASSERT_EQ(run_args({"compute", "deriv", "--alpha", "0.37", "--fn", "pow:a=0;terms=1*1.3 + const:1", "--grid",
                        "0,1,300", "--out", a})
                  .code,
              kExitPass);
    const auto u = read_csv(a);
    write_csv(b, u);
    EXPECT_EQ(slurp(a), slurp(b));
    const auto v = read_csv(b);
    for (std::size_t j = 0; j < u.size(); ++j) EXPECT_EQ(std::memcmp(&u.values[j], &v.values[j], sizeof(double)), 0);
    // the written file feeds back in as an input
    const auto r = run_args({"compute", "integral", "--alpha", "0.37", "--csv", a});
    EXPECT_EQ(r.code, kExitPass) << r.err;
}

TEST(Run, CsvRejectsBadInput) {
    EXPECT_THROW(parse_csv("x,y\n0,1\n"), IoError);
    EXPECT_THROW(parse_csv("x,value\n0,1\n0.5,1\n0.7,1\n"), IoError);
    EXPECT_THROW(parse_csv("x,value\n0,1\n"), IoError);
    EXPECT_THROW(parse_csv("x,value\n0,1\n1,abc\n2,3\n"), IoError);
    TempDir t;
    EXPECT_EQ(run_args({"compute", "deriv", "--csv", t.file("none.csv")}).code, kExitIo);
}

TEST(Run, NormPrintsValueAndJson) {
    TempDir t;
    const auto js = t.file("n.json");
    const auto r = run_args({"norm", "--space", "gagliardo", "--alpha", "0.5", "--p", "2", "--fn", "gauss:mu=0;s=1",
                             "--line", "16,4096", "--json", js});
    ASSERT_EQ(r.code, kExitPass) << r.err;
    EXPECT_GT(std::stod(r.out), 0.0);
    const auto j = nlohmann::json::parse(slurp(js));
    EXPECT_EQ(j["space"], "gagliardo");
    EXPECT_TRUE(j["finite"].get<bool>());
}

TEST(Run, NormDivergent) {
    const auto r = run_args({"norm", "--alpha", "0.6", "--p", "2", "--fn", "const:1", "--grid", "0,1,128"});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_EQ(r.out, "inf\n");
}

TEST(Run, VerifyFtwfcReport) {
    TempDir t;
    const auto js = t.file("r.json");
    const auto r = run_args({"verify", "ftwfc", "--alpha", "0.5", "--fn",
                             "2*kappa:alpha=0.5;side=left + bump:c=0.5;r=0.2", "--grid", "0,1,2048", "--json", js});
    EXPECT_EQ(r.code, kExitPass) << r.err;
    EXPECT_EQ(r.out.rfind("PASS", 0), 0u);
    const auto j = nlohmann::json::parse(slurp(js));
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_NEAR(j["recovered_c"].get<double>(), 2.0, 0.02);
    EXPECT_EQ(j["theorem_id"], "ftwfc");
    EXPECT_EQ(j["version"], kVersion);
}

TEST(Run, ExitCodes) {
    EXPECT_EQ(run_args({"verify", "weak_pairing", "--fn", "const:1", "--fn", "const:0", "--grid", "0,1,256"}).code,
              kExitFail);
    EXPECT_EQ(run_args({"compute", "deriv", "--nope"}).code, kExitUsage);
    EXPECT_EQ(run_args({"verify", "extend_exterior", "--alpha", "0.6", "--p", "2", "--mu", "5", "--fn", "const:1"}).code,
              kExitUsage);
    EXPECT_EQ(run_args({"compute", "deriv", "--fn", "const:1", "--grid", "0,1,16", "--out", "/nonexistent/dir/x.csv"}).code,
              kExitIo);
    EXPECT_EQ(run_args({"--help"}).code, kExitPass);
}

TEST(Run, AtomicWriteLeavesNoTemp) {
    TempDir t;
    const auto out = t.file("d.csv");
    ASSERT_EQ(run_args({"compute", "deriv", "--fn", "const:1", "--grid", "0,1,16", "--out", out}).code, kExitPass);
    EXPECT_TRUE(fs::exists(out));
    EXPECT_FALSE(fs::exists(out + ".tmp"));
}

TEST(Run, Deterministic) {
    const std::vector<std::string> args{"verify", "density", "--fn", "bump:c=0.5;r=0.3", "--grid", "0,1,512",
                                        "--json", "-"};
    TempDir t;
    const auto a = t.file("a.json"), b = t.file("b.json");
    auto with = [&](const std::string& path) {
        auto v = args;
        v.back() = path;
        return run_args(v);
    };
    EXPECT_EQ(with(a).out, with(b).out);
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Binary, SuiteSingleCheck) {
    TempDir t;
    const auto js = t.file("s.json");
    const std::string cmd = std::string(FRAC_CLI_PATH) + " suite ftwfc --n 512 --json " + js + " > " + t.file("o.txt");
    EXPECT_EQ(std::system(cmd.c_str()), 0);
    const auto j = nlohmann::json::parse(slurp(js));
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_EQ(j["reports"].size(), 1u);
    EXPECT_NE(slurp(t.file("o.txt")).find("1/1 passed"), std::string::npos);
    const std::string bad = std::string(FRAC_CLI_PATH) + " frobnicate 2> /dev/null";
    const int status = std::system(bad.c_str());
    EXPECT_EQ(WEXITSTATUS(status), kExitUsage);
}
