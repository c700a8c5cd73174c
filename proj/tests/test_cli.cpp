#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string tool() {
    const char* p = std::getenv("ADEGTOOL");
    REQUIRE_MESSAGE(p != nullptr, "ADEGTOOL must point at the command-line binary");
    return p;
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = tool() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp_path(const std::string& name) {
    return std::string("/tmp/adegtool_test_") + name;
}

}  // namespace

TEST_CASE("degree computation prints the exact error table") {
    RunResult r = run("adeg OR:4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("3/4") != std::string::npos);
    CHECK(r.output.find("1/3") != std::string::npos);
    CHECK(r.output.find("2") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("adeg").exit_code == 2);             // missing argument
    CHECK(run("adeg 'OR:'").exit_code == 2);       // malformed spec
    CHECK(run("adeg 'XYZ:3'").exit_code == 2);     // unknown function
    CHECK(run("no-such-command").exit_code == 2);  // unknown subcommand
    CHECK(run("build nonsense").exit_code == 2);   // unknown build kind
}

TEST_CASE("build then verify round trips with exit 0") {
    std::string cert = tmp_path("omega.cert");
    RunResult b = run("build omega --k 2 --t 4 --n 16 --out " + cert);
    REQUIRE(b.exit_code == 0);
    RunResult v = run("verify " + cert);
    CHECK(v.exit_code == 0);
    CHECK(v.output.find("CERTIFIED") != std::string::npos);
    std::remove(cert.c_str());
}

TEST_CASE("a tampered certificate is rejected with exit 1") {
    std::string cert = tmp_path("tamper.cert");
    REQUIRE(run("build omega --k 2 --t 4 --n 16 --out " + cert).exit_code == 0);
    std::string text = slurp(cert);
    auto pos = text.find("1/2");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 3, "1/3");
    {
        std::ofstream out(cert);
        out << text;
    }
    RunResult v = run("verify " + cert);
    CHECK(v.exit_code == 1);
    CHECK(v.output.find("FAILED") != std::string::npos);
    std::remove(cert.c_str());
}

TEST_CASE("certificates are byte-for-byte deterministic") {
    std::string a = tmp_path("det_a.cert"), b = tmp_path("det_b.cert");
    REQUIRE(run("build gamma --r 16 --k 2 --out " + a).exit_code == 0);
    REQUIRE(run("build gamma --r 16 --k 2 --out " + b).exit_code == 0);
    std::string ta = slurp(a), tb = slurp(b);
    CHECK(!ta.empty());
    CHECK(ta == tb);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("composed-witness certificate re-verifies from its payload") {
    std::string cert = tmp_path("gamma.cert");
    REQUIRE(run("build gamma --r 16 --k 2 --out " + cert).exit_code == 0);
    std::string text = slurp(cert);
    CHECK(text.find("witness begin") != std::string::npos);
    CHECK(text.find("composed") != std::string::npos);
    RunResult v = run("verify " + cert);
    CHECK(v.exit_code == 0);
    std::remove(cert.c_str());
}

TEST_CASE("approximant certificates build and verify") {
    std::string cert = tmp_path("upper.cert");
    REQUIRE(run("build upper --k 2 --n 4 --r 2 --out " + cert).exit_code == 0);
    RunResult v = run("verify " + cert);
    CHECK(v.exit_code == 0);
    std::remove(cert.c_str());
}

TEST_CASE("reproduction suites pass") {
    RunResult r = run("reproduce all");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS") != std::string::npos);
    CHECK(r.output.find("FAIL ") == std::string::npos);
}

TEST_CASE("LP dump prints an exact-rational program") {
    RunResult r = run("dump-lp OR:2 --d 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("minimize") != std::string::npos);
    // Same dump twice: deterministic.
    CHECK(r.output == run("dump-lp OR:2 --d 1").output);
}
