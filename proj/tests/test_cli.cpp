#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "setm/cli.hpp"
#include "setm/hfset.hpp"

using namespace setm;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    std::filesystem::path path;
    TempDir() : path(std::filesystem::temp_directory_path() / ("setm-cli-" + std::to_string(::getpid()))) {
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name, const std::string& text) const {
        const auto p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

}  // namespace

TEST_CASE("decode prints canonical literals") {
    TempDir d;
    const auto f = d.file("two.txt", "0:[]\n0:[0]\n0:[1]\n0:[1,0]\n");
    const auto r = call({"decode", "-i", f});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "{{},{{}}}\n");
    const auto bad = call({"decode", "-i", d.file("bad.txt", "0:[1]\n")});
    CHECK(bad.code == exit_usage);
}

TEST_CASE("run end on the code of 1") {
    TempDir d;
    const auto table = d.file("end.stm", "start l0\nl0 1 => * z l1\nl1 0 => ** u H\nl1 1 => 1 + l1\n");
    const auto trace = (d.path / "t.txt").string();
    const auto r = call({"run", "-m", table, "-i", "{{}}", "--fuel", "10", "--trace", trace});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "0:[] = *\n0:[0]\n0:[1] = **\n# steps 3\n# decode 0: {{}}\n");
    std::ifstream t(trace);
    std::stringstream s;
    s << t.rdbuf();
    CHECK(s.str() == "0 0 [] l0 l0/1 * z\n1 0 [0] l1 l1/1 1 +\n2 0 [1] l1 l1/0 ** u\n");
    CHECK(call({"run", "-m", "end", "-i", "{{}}", "--fuel", "10"}).out == r.out);
}

TEST_CASE("run failures and usage errors") {
    CHECK(call({"run"}).code == exit_usage);
    CHECK(call({"run", "-i", "{}"}).code == exit_usage);
    CHECK(call({"run", "-m", "no-such", "-i", "{}"}).code == exit_usage);
    CHECK(call({"run", "-m", "end", "-i", "{"}).code == exit_usage);
    CHECK(call({"frobnicate"}).code == exit_usage);
    CHECK(call({}).code == exit_usage);
    const auto fuel = call({"run", "-m", "member", "-i", "{}", "-i", "{{}}", "--fuel", "5"});
    CHECK(fuel.code == exit_undefined);
    CHECK_FALSE(fuel.err.empty());
    CHECK(fuel.out.empty());
    const auto crash = call({"run", "-m", "erase", "-i", "{}"});
    CHECK(crash.code == exit_undefined);
}

TEST_CASE("encode and decode round trip through files") {
    TempDir d;
    for (const auto& x : enumerate_universe(3))
        for (const char* seed : {"0", "1", "2"}) {
            const auto e = call({"encode", "-i", x.to_string(), "--seed", seed});
            REQUIRE(e.code == exit_ok);
            CHECK(call({"decode", "-i", d.file("c.txt", e.out)}).out == x.to_string() + "\n");
        }
    CHECK(call({"decode", "-i", d.file("c.txt", call({"encode", "-i", "{{{}},{}}"}).out)}).out ==
          "{{},{{}}}\n");
}

TEST_CASE("stdlib listing") {
    const auto l = call({"stdlib", "--list"});
    CHECK(l.code == exit_ok);
    CHECK(l.out.find("copy\n") != std::string::npos);
    const auto e = call({"stdlib", "--emit", "end"});
    CHECK(e.out == "start l0\nl0 1 => * z l1\nl1 0 => ** u H\nl1 1 => 1 + l1\n");
    CHECK(call({"stdlib"}).code == exit_usage);
}

TEST_CASE("rec eval, compile and equiv") {
    TempDir d;
    const auto succ = d.file("succ.rec", "(vn_succ (proj 1 1))\n");
    const auto r = call({"rec", "eval", "-e", succ, "-a", "{{}}"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "{{},{{}}}\n");
    CHECK(call({"rec", "eval", "-e", succ}).code == exit_usage);

    const auto mu = d.file("mu.rec", "(mu (char_in (proj 2 2) (proj 2 1)))\n");
    CHECK(call({"rec", "eval", "-e", mu, "-a", "{}", "--tier", "pREC"}).code == exit_usage);
    CHECK(call({"rec", "eval", "-e", mu, "-a", "{{},{{}}}"}).out == "{{},{{}}}\n");
    const auto loop = d.file("loop.rec", "(mu (vn_succ (proj 2 1)))\n");
    CHECK(call({"rec", "eval", "-e", loop, "-a", "{}", "--fuel", "1000"}).code == exit_undefined);

    const auto table = (d.path / "succ.stm").string();
    CHECK(call({"rec", "compile", "-e", succ, "-o", table}).code == exit_ok);
    const auto run = call({"run", "-m", table, "-i", "{{}}"});
    CHECK(run.code == exit_ok);
    CHECK(run.out.find("# decode 0: {{},{{}}}\n") != std::string::npos);

    const auto report = (d.path / "r.json").string();
    const auto eq = call({"equiv", "-e", succ, "--rank", "1", "--seeds", "2", "--report", report});
    CHECK(eq.code == exit_ok);
    CHECK(eq.out.find("disagree 0") != std::string::npos);
    CHECK(std::filesystem::exists(report));
    CHECK(call({"equiv", "-e", succ, "--rank", "9"}).code == exit_usage);
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"run", "-m", "copy", "-i", "{{},{{}}}", "-i", "{}", "--delimit"};
    CHECK(call(args).out == call(args).out);
    CHECK(call(args).code == exit_ok);
}

TEST_CASE("selftest") {
    const auto r = call({"selftest"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("FAIL") == std::string::npos);
}
