#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "isg/json_io.hpp"

namespace {

namespace fs = std::filesystem;

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string>& args, const std::string& input = {}) {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = isg::cli::run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("isg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }

    std::string canned(const std::string& name, const std::string& profile = {}) const {
        std::vector<std::string> args{"gen", "canned", "--name", name};
        if (!profile.empty()) args.insert(args.end(), {"--profile", profile});
        const Outcome r = run(args);
        EXPECT_EQ(r.code, 0) << r.err;
        return write(profile.empty() ? name + ".json" : name + "_" + profile + ".json", r.out);
    }

    fs::path dir_;
};

std::string run_value(const Outcome& r) { return isg::parse_json_text(r.out).at("value").get<std::string>(); }

void expect_error_object(const Outcome& r, const std::string& code) {
    const isg::Json doc = isg::parse_json_text(r.err);
    ASSERT_TRUE(doc.is_object());
    EXPECT_EQ(doc.at("error"), code);
    EXPECT_TRUE(doc.at("message").is_string());
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST_F(CliTest, EvalExample1) {
    const Outcome r = run({"eval", "--instance", canned("example1"), "--profile", canned("example1", "pi")});
    ASSERT_EQ(r.code, 0) << r.err;
    const isg::Json doc = isg::parse_json_text(r.out);
    EXPECT_EQ(doc.at("welfare"), "336");
    EXPECT_EQ(doc.at("utilities").at("P1"), "33");
    EXPECT_EQ(doc.at("utilities").at("P2"), "303");
    EXPECT_TRUE(r.err.empty());
}

TEST_F(CliTest, EvalPiPrimeFromStdin) {
    std::ifstream file(canned("example1", "pi_prime"));
    const std::string profile((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    const Outcome r = run({"eval", "--instance", canned("example1"), "--profile", "-"}, profile);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(isg::parse_json_text(r.out).at("welfare"), "516");
}

TEST_F(CliTest, EnumerateNoPne) {
    const Outcome r = run({"pne", "enumerate", "--instance", canned("no_pne")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "{\"pne\":[]}\n");
}

TEST_F(CliTest, EnumerateSummaryAndCsv) {
    const std::string csv = path("rows.csv");
    const Outcome r = run({"pne", "enumerate", "--instance", canned("pos_example"), "--summary", "--csv", csv});
    ASSERT_EQ(r.code, 0) << r.err;
    const isg::Json doc = isg::parse_json_text(r.out);
    EXPECT_EQ(doc.at("profiles"), 1296);
    EXPECT_EQ(doc.at("max_welfare"), "23");
    EXPECT_FALSE(doc.at("pne").empty());

    std::ifstream rows(csv);
    std::string line;
    std::getline(rows, line);
    EXPECT_EQ(line, "profile,welfare,is_pne");
    std::size_t count = 0, pne = 0;
    while (std::getline(rows, line)) {
        ++count;
        if (line.ends_with(",true")) ++pne;
    }
    EXPECT_EQ(count, 1296u);
    EXPECT_EQ(pne, doc.at("pne").size());
}

TEST_F(CliTest, MissingFileIsIoError) {
    const Outcome r = run({"eval", "--instance", path("missing.json")});
    EXPECT_EQ(r.code, 5);
    expect_error_object(r, "IoError");
}

TEST_F(CliTest, UnwritableOutputIsIoError) {
    const Outcome r = run({"emit-lp", "--instance", canned("example1"), "--out", path("no/such/dir/model.lp")});
    EXPECT_EQ(r.code, 5);
    expect_error_object(r, "IoError");
}

TEST_F(CliTest, UsageErrors) {
    for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
             {},
             {"frobnicate"},
             {"pne"},
             {"eval", "--instance", "x.json", "--bogus"},
             {"br", "--instance", "x.json", "--profile", "p.json"},
             {"--tiebreak", "middle", "gen", "random"},
             {"gen", "random", "--rewards", "50-100"},
             {"gen", "random", "--rewards", "5x:100"},
             {"--cap", "lots", "gen", "random"},
         }) {
        const Outcome r = run(args);
        EXPECT_EQ(r.code, 2) << ::testing::PrintToString(args);
        expect_error_object(r, "UsageError");
        EXPECT_TRUE(r.out.empty());
    }
}

TEST_F(CliTest, DomainErrors) {
    const std::string ex1 = canned("example1");
    const std::string pi = canned("example1", "pi");

    Outcome r = run({"br", "--instance", ex1, "--profile", pi, "--player", "P1", "--method", "greedy"});
    EXPECT_EQ(r.code, 3);
    expect_error_object(r, "NotUniform");

    r = run({"br", "--instance", ex1, "--profile", pi, "--player", "P9"});
    EXPECT_EQ(r.code, 3);
    expect_error_object(r, "UnknownPlayer");

    r = run({"analyze", "pos", "--instance", canned("no_pne")});
    EXPECT_EQ(r.code, 3);
    expect_error_object(r, "NoEquilibriumExists");

    const std::string cyclic = write("cyclic.json", R"({"players":[{"name":"A","services":[{"id":"u"},{"id":"v"}]}],
        "edges":[["u","v"],["v","u"]]})");
    r = run({"validate", "--instance", cyclic});
    EXPECT_EQ(r.code, 3);
    expect_error_object(r, "CyclicDependencies");

    r = run({"validate", "--instance", write("bad.json", "{\"players\": [")});
    EXPECT_EQ(r.code, 3);
    expect_error_object(r, "ParseError");

    r = run({"gen", "canned", "--name", "nope"});
    EXPECT_EQ(r.code, 3);
    expect_error_object(r, "UnknownCannedName");

    r = run({"gen", "min2sat", "--cnf", "-"}, "p cnf 3 1\n1 2 3 0\n");
    EXPECT_EQ(r.code, 3);
    expect_error_object(r, "MalformedFormula");
}

TEST_F(CliTest, SizeGuard) {
    const Outcome big = run({"gen", "random", "--k", "3", "--q", "6"});
    ASSERT_EQ(big.code, 0);
    const std::string file = write("big.json", big.out);
    for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
             {"pne", "enumerate", "--instance", file},
             {"welfare", "oracle", "--instance", file},
             {"analyze", "poa", "--instance", file},
             {"--cap", "100", "welfare", "exact", "--instance", file},
         }) {
        const Outcome r = run(args);
        EXPECT_EQ(r.code, 4) << ::testing::PrintToString(args);
        expect_error_object(r, "SizeGuardExceeded");
    }
    // the cap is a flag, so raising it admits the instance
    const Outcome ok = run({"--cap", "1000", "pne", "enumerate", "--instance", canned("example1")});
    EXPECT_EQ(ok.code, 0) << ok.err;
}

TEST_F(CliTest, ByteIdenticalRepeats) {
    const std::string pos = canned("pos_example");
    for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
             {"--seed", "17", "gen", "random", "--k", "3", "--q", "4", "--rewards", "50:100"},
             {"pne", "enumerate", "--instance", pos, "--summary"},
             {"welfare", "exact", "--instance", pos},
             {"dynamics", "--instance", canned("br_cycle"), "--start", canned("br_cycle", "A")},
             {"emit-lp", "--instance", canned("example1")},
         }) {
        const Outcome a = run(args), b = run(args);
        EXPECT_EQ(a.code, 0) << a.err;
        EXPECT_EQ(a.out, b.out);
    }
    const Outcome threaded = run({"--threads", "4", "pne", "enumerate", "--instance", pos, "--summary"});
    EXPECT_EQ(threaded.out, run({"pne", "enumerate", "--instance", pos, "--summary"}).out);
}

TEST_F(CliTest, SeedChangesRandomInstance) {
    const Outcome a = run({"--seed", "1", "gen", "random", "--rewards", "1:1000"});
    const Outcome b = run({"gen", "random", "--rewards", "1:1000", "--seed", "2"});
    EXPECT_NE(a.out, b.out);
    const isg::Json doc = isg::parse_json_text(b.out);
    EXPECT_EQ(doc.at("meta").at("seed"), 2);
    EXPECT_EQ(doc.at("meta").at("engine"), "mt19937_64");
    // generated files load back
    EXPECT_EQ(run({"validate", "--instance", "-"}, b.out).code, 0);
}

TEST_F(CliTest, BestResponseMethodsAgree) {
    const std::string inst = canned("br_cycle");
    const std::string profile = canned("br_cycle", "A");
    std::set<std::string> values;
    for (const char* method : {"auto", "greedy", "exact", "oracle"}) {
        const Outcome r = run({"br", "--instance", inst, "--profile", profile, "--player", "P2", "--method", method});
        ASSERT_EQ(r.code, 0) << r.err;
        values.insert(isg::parse_json_text(r.out).at("value").get<std::string>());
    }
    EXPECT_EQ(values, std::set<std::string>{"10"});
}

TEST_F(CliTest, PneCommands) {
    const std::string cycle = canned("br_cycle");
    Outcome r = run({"pne", "verify", "--instance", cycle, "--profile", canned("br_cycle", "pne")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(isg::parse_json_text(r.out).at("is_pne").get<bool>());

    r = run({"pne", "construct", "--instance", canned("pos_example")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(isg::parse_json_text(r.out).at("is_pne").get<bool>());

    r = run({"pne", "construct", "--instance", canned("example1")});
    EXPECT_EQ(r.code, 3);
}

TEST_F(CliTest, WelfareAndAnalyze) {
    const std::string ex1 = canned("example1");
    Outcome r = run({"welfare", "exact", "--instance", ex1, "--threshold", "516"});
    ASSERT_EQ(r.code, 0) << r.err;
    isg::Json doc = isg::parse_json_text(r.out);
    EXPECT_EQ(doc.at("value"), run_value(run({"welfare", "oracle", "--instance", ex1})));
    EXPECT_TRUE(doc.at("meets_threshold").get<bool>());

    r = run({"analyze", "poa", "--instance", canned("pos_example")});
    ASSERT_EQ(r.code, 0) << r.err;
    doc = isg::parse_json_text(r.out);
    EXPECT_EQ(doc.at("max_welfare"), "23");

    r = run({"gen", "canned", "--name", "poa_family", "--k", "2", "--q", "3"});
    r = run({"analyze", "poa", "--instance", "-"}, r.out);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(isg::parse_json_text(r.out).at("value"), "4/3");
}

TEST_F(CliTest, EmitLpToFile) {
    const std::string lp = path("model.lp");
    const Outcome r = run({"emit-lp", "--instance", canned("example1"), "--out", lp});
    ASSERT_EQ(r.code, 0) << r.err;
    const isg::Json doc = isg::parse_json_text(r.out);
    EXPECT_EQ(doc.at("variables"), 36);
    EXPECT_EQ(doc.at("constraints"), 42);
    std::ifstream file(lp);
    std::string first;
    std::getline(file, first);
    EXPECT_EQ(first.rfind("\\", 0), 0u);
}

TEST_F(CliTest, ReductionsCarryMeta) {
    Outcome r = run({"gen", "min2sat", "--cnf", "-"}, "c tiny\np cnf 2 1\n1 -2 0\n");
    ASSERT_EQ(r.code, 0) << r.err;
    isg::Json doc = isg::parse_json_text(r.out);
    EXPECT_EQ(doc.at("meta").at("kind"), "min2sat");
    EXPECT_EQ(doc.at("meta").at("thresholds").at("base"), "9");
    EXPECT_TRUE(doc.at("meta").at("mapping").contains("c1"));

    r = run({"welfare", "exact", "--instance", "-", "--threshold", "9"}, r.out);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(isg::parse_json_text(r.out).at("value"), "9");

    const std::string jobs = write("jobs.json", R"({"jobs":[{"id":"a","weight":"1"},{"id":"b","weight":"3"}],
        "precedence":[["a","b"]]})");
    r = run({"gen", "wct", "--jobs", jobs});
    ASSERT_EQ(r.code, 0) << r.err;
    doc = isg::parse_json_text(r.out);
    EXPECT_EQ(doc.at("meta").at("thresholds").at("base"), "12");
    r = run({"welfare", "single", "--instance", "-"}, r.out);
    ASSERT_EQ(r.code, 0) << r.err;
    // a then b: completion 1*1 + 3*2 = 7, welfare 12 - 7
    EXPECT_EQ(isg::parse_json_text(r.out).at("value"), "5");

    r = run({"gen", "3sat", "--cnf", "-"}, "p cnf 3 1\n1 2 3 0\n");
    ASSERT_EQ(r.code, 0) << r.err;
    doc = isg::parse_json_text(r.out);
    EXPECT_EQ(doc.at("meta").at("kind"), "3sat");
    EXPECT_TRUE(doc.at("meta").at("thresholds").is_null());
}

TEST_F(CliTest, Dynamics) {
    const Outcome r = run({"dynamics", "--instance", canned("br_cycle"), "--start", canned("br_cycle", "A"),
                       "--max-iters", "50"});
    ASSERT_EQ(r.code, 0) << r.err;
    const isg::Json doc = isg::parse_json_text(r.out);
    EXPECT_EQ(doc.at("policy"), "round-robin");
    EXPECT_EQ(doc.at("iterations"), doc.at("steps").size());
    EXPECT_LE(doc.at("iterations").get<int>(), 50);
}

TEST(CliHelp, EveryCommandDocumentsExactlyItsFlags) {
    const std::regex flag("--[a-z][a-z-]*");
    const auto table = isg::cli::command_flags();
    ASSERT_GT(table.size(), 15u);
    for (const auto& [path, accepted] : table) {
        std::vector<std::string> args = path;
        args.push_back("--help");
        const Outcome r = run(args);
        ASSERT_EQ(r.code, 0) << ::testing::PrintToString(path);
        std::set<std::string> documented;
        for (auto it = std::sregex_iterator(r.out.begin(), r.out.end(), flag); it != std::sregex_iterator(); ++it) {
            documented.insert(it->str());
        }
        EXPECT_EQ(documented, std::set<std::string>(accepted.begin(), accepted.end()))
            << ::testing::PrintToString(path);
        // every flag shown in help is accepted by the parser (value or not)
        for (const std::string& f : accepted) {
            if (f == "--help") continue;
            std::vector<std::string> probe = path;
            probe.push_back(f);
            const Outcome p = run(probe);
            EXPECT_EQ(p.err.find("following argument"), std::string::npos) << f;
            EXPECT_EQ(p.err.find("was not expected"), std::string::npos) << f;
        }
    }
}

TEST(CliHelp, TopLevelListsEverySubcommand) {
    const Outcome r = run({"--help"});
    ASSERT_EQ(r.code, 0);
    for (const auto& [path, flags] : isg::cli::command_flags()) {
        if (path.size() == 1) EXPECT_NE(r.out.find(path[0]), std::string::npos) << path[0];
        if (path.size() == 2) {
            const Outcome sub = run({path[0], "--help"});
            EXPECT_NE(sub.out.find(path[1]), std::string::npos) << path[1];
        }
    }
}

}  // namespace
