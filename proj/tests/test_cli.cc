#include "support.hh"

#include <sepsys/cli.hh>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace testing;
using nlohmann::json;

namespace
{
    struct Run
    {
        int code;
        std::string out, err;
    };

    Run run(const std::vector<std::string> & args)
    {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return {code, out.str(), err.str()};
    }

    std::string at(const std::string & file)
    {
        return fixtures + "/" + file;
    }

    struct TempFile
    {
        std::filesystem::path path;

        explicit TempFile(const std::string & name, const std::string & content)
            : path(std::filesystem::temp_directory_path() / name)
        {
            std::ofstream(path) << content;
        }
        ~TempFile() { std::filesystem::remove(path); }
    };
}

TEST_CASE("tot emits the tree and certificates")
{
    auto r = run({"tot", at("inst-2tri.json")});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["format"] == "sepsys-tree");
    CHECK(j["instance"] == "INST-2TRI");
    CHECK(j["tree"].size() == 4);
    CHECK(j["certificates"].size() == 4);
    CHECK(j["tree"][0]["label"] == "abc|cdef");
    CHECK(j["tree"][0]["order"] == 1);
}

TEST_CASE("tot output is deterministic")
{
    for (const char * file : {"inst-2tri.json", "inst-k4pair.json", "nonreg-bip2.json"}) {
        auto a = run({"tot", at(file), "--seed", "7"});
        auto b = run({"tot", at(file), "--seed", "7"});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("tot formats")
{
    auto dot = run({"tot", at("inst-2tri.json"), "--dot"});
    CHECK(dot.code == 0);
    CHECK(dot.out.rfind("graph tree {", 0) == 0);
    CHECK(dot.out.find("abc|cdef") != std::string::npos);
    CHECK(run({"tot", at("inst-2tri.json"), "--format", "dot"}).out == dot.out);

    auto text = run({"tot", at("inst-2tri.json"), "--format", "text"});
    CHECK(text.out.find("5 abc|cdef distinguishes") != std::string::npos);

    CHECK(run({"tot", at("inst-2tri.json"), "--format", "yaml"}).code == 2);
}

TEST_CASE("tot on a system that is not orderly reports a witness")
{
    auto r = run({"tot", at("nonreg-comparable3.json")});
    CHECK(r.code == 1);
    CHECK(r.err.find("witness") != std::string::npos);
}

TEST_CASE("verify accepts tot output and rejects a damaged tree")
{
    auto tot = run({"tot", at("inst-k4pair.json")});
    REQUIRE(tot.code == 0);
    TempFile good("sepsys-good-tree.json", tot.out);
    auto ok = run({"verify", at("inst-k4pair.json"), good.path.string()});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("FAIL") == std::string::npos);

    auto j = json::parse(tot.out);
    j["tree"] = json::array({j["tree"][0]});
    TempFile bad("sepsys-bad-tree.json", j.dump());
    auto broken = run({"verify", at("inst-k4pair.json"), bad.path.string()});
    CHECK(broken.code == 1);
    CHECK(broken.out.find("violation ") != std::string::npos);

    TempFile plain("sepsys-plain-tree.json", R"({"tree": [0, 99999]})");
    CHECK(run({"verify", at("inst-k4pair.json"), plain.path.string()}).code == 1);

    TempFile garbage("sepsys-garbage-tree.json", "{\"tree\": ");
    CHECK(run({"verify", at("inst-k4pair.json"), garbage.path.string()}).code == 2);
}

TEST_CASE("profiles listing")
{
    auto r = run({"profiles", at("inst-2tri.json"), "--regular-only", "--robust-only"});
    CHECK(r.code == 0);
    CHECK(r.out.find("order 2: 3 profiles") != std::string::npos);
    CHECK(r.out.find("order 4: 0 profiles") != std::string::npos);

    auto capped = run({"profiles", at("inst-set4.json"), "--max-order", "1"});
    CHECK(capped.code == 0);
    CHECK(capped.out.find("order 2") == std::string::npos);
}

TEST_CASE("regularize and quotient")
{
    auto r = run({"regularize", at("nonreg-bip2.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("regular yes") != std::string::npos);

    auto g = run({"regularize", at("inst-2tri.json"), "--order", "2", "--corners", "poset_sup"});
    CHECK(g.code == 0);

    auto q = run({"quotient", at("inst-2tri.json"), "--order", "2"});
    CHECK(q.code == 0);
    CHECK(q.out.find("orderly yes") != std::string::npos);
    CHECK(q.out.find("tree ") != std::string::npos);

    auto c = run({"quotient", at("nonreg-comparable3.json")});
    CHECK(c.code == 0);
    // only the regular profiles are considered here, and those are orderly
    CHECK(c.out.find("weakly-submodular no") != std::string::npos);
    CHECK(c.out.find("orderly yes") != std::string::npos);

    CHECK(run({"quotient", at("inst-2tri.json"), "--corners", "widest"}).code == 2);
}

TEST_CASE("fuzz")
{
    auto r = run({"fuzz", "--seed", "3", "--count", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("violations 0") != std::string::npos);
    CHECK(r.out.find("violation ") == std::string::npos);
}

TEST_CASE("input errors exit with 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"tot"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"tot", at("missing.json")}).code == 2);
    CHECK(run({"tot", at("inst-2tri.json"), "--max-order", "x"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    TempFile multigraph("sepsys-multigraph.json", R"({"kind": "graph", "edges": [["a", "b"], ["b", "a"]]})");
    auto r = run({"tot", multigraph.path.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("multigraph") != std::string::npos);
}

TEST_CASE("SEPSYS_LIMITS tightens the size limits")
{
    ::setenv("SEPSYS_LIMITS", "graph_vertices=5", 1);
    auto r = run({"tot", at("inst-k4pair.json")});
    ::setenv("SEPSYS_LIMITS", "nonsense", 1);
    auto bad = run({"tot", at("inst-2tri.json")});
    ::unsetenv("SEPSYS_LIMITS");
    CHECK(r.code == 2);
    CHECK(bad.code == 2);
    CHECK(run({"tot", at("inst-k4pair.json")}).code == 0);
}
