#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(NICHECK_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        output.append(buf.data(), n);
    int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), output};
}

std::string net(const std::string& name) {
    return std::string(NICHECK_NETS_DIR) + "/" + name;
}

} // namespace

TEST_CASE("exit codes encode the verdict") {
    CHECK(run("check --property ndc " + net("token_race.net")).exit_code == 0);
    CHECK(run("check --property bndc " + net("token_race.net")).exit_code == 1);
    CHECK(run("check --property ndc " + net("chain_high_then_low.net")).exit_code == 1);
    CHECK(run("check --property ini " + net("shop.net")).exit_code == 0);
}

TEST_CASE("json output carries the witness split") {
    RunResult r = run("check --property sbndc --json " + net("side_loop_leak.net"));
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("\"h\": \"h\"") != std::string::npos);
    CHECK(r.output.find("\"l\": \"l\"") != std::string::npos);
    CHECK(r.output.find("\"w\": []") != std::string::npos);
    CHECK(r.output.find("\"s\": [") != std::string::npos);
    CHECK(r.output.find("\"k\"") != std::string::npos);
}

TEST_CASE("identical invocations produce identical bytes") {
    std::string cmd = "check --property bini --json " + net("shop.net");
    CHECK(run(cmd).output == run(cmd).output);
}

TEST_CASE("usage and parse failures exit with 3") {
    CHECK(run("check --property nope " + net("token_race.net")).exit_code == 3);
    CHECK(run("check --property ndc " + net("shop.net")).exit_code == 3);
    CHECK(run("check --property ndc /no/such/file.net").exit_code == 3);
    CHECK(run("check " + net("token_race.net")).exit_code == 3); // missing property
    CHECK(run("construct --pcheck h,l --nd d1 " + net("shop.net")).exit_code == 3);
}

TEST_CASE("parse errors carry positions") {
    std::string bad = "/tmp/nicheck_cli_bad.net";
    FILE* f = fopen(bad.c_str(), "w");
    REQUIRE(f);
    fputs("place s 1\narc s -> t\n", f);
    fclose(f);
    RunResult r = run("check --property ndc " + bad);
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("line 2") != std::string::npos);
}

TEST_CASE("construct emits the derived nets") {
    RunResult p = run("construct --pcheck h,l " + net("side_loop_leak.net"));
    CHECK(p.exit_code == 0);
    CHECK(p.output.find("place x@ 1") != std::string::npos);
    CHECK(p.output.find("place y@ 0") != std::string::npos);
    CHECK(p.output.find("trans h' H") != std::string::npos);

    RunResult nd = run("construct --nd d1 " + net("shop.net"));
    CHECK(nd.exit_code == 0);
    CHECK(nd.output.find("place pd@ 1") != std::string::npos);
    CHECK(nd.output.find("place pd'@ 0") != std::string::npos);

    CHECK(run("construct --pcheck h,l " + net("shop.net")).exit_code == 3);

    RunResult prod = run("construct --product " + net("chain_high_then_low.net"));
    CHECK(prod.exit_code == 0);
    CHECK(prod.output.find("place a#1 1") != std::string::npos);
    CHECK(prod.output.find("place a#2 1") != std::string::npos);
}

TEST_CASE("constructed nets replay through the reader with the opt-in flag") {
    std::string out = "/tmp/nicheck_cli_constructed.net";
    CHECK(run("construct --pcheck h,l " + net("side_loop_leak.net") + " -o " + out)
              .exit_code == 0);
    CHECK(run("dot " + out).exit_code == 3); // reserved names rejected by default
    CHECK(run("dot --allow-constructed " + out).exit_code == 0);
}

TEST_CASE("check can write the structure graph on the side") {
    std::string out = "/tmp/nicheck_cli_check.dot";
    RunResult r =
        run("check --property ndc --dot " + out + " " + net("token_race.net"));
    CHECK(r.exit_code == 0);
    FILE* f = fopen(out.c_str(), "r");
    REQUIRE(f);
    char buf[64];
    REQUIRE(fgets(buf, sizeof buf, f));
    CHECK(std::string(buf).find("digraph") != std::string::npos);
    fclose(f);
}

TEST_CASE("dot export modes") {
    RunResult structure = run("dot " + net("token_race.net"));
    CHECK(structure.exit_code == 0);
    CHECK(structure.output.find("shape=circle") != std::string::npos);

    RunResult rg = run("dot --reachability " + net("chain_low_then_high.net"));
    CHECK(rg.exit_code == 0);
    CHECK(rg.output.find("s2") != std::string::npos);

    RunResult unbounded = run("dot --reachability " + net("pump_disconnected.net"));
    CHECK(unbounded.exit_code == 3);
    CHECK(unbounded.output.find("h_mid") != std::string::npos);
}

TEST_CASE("the oracle engine and the agreement mode") {
    CHECK(run("check --engine oracle --property sbndc " + net("token_race.net"))
              .exit_code == 1);
    CHECK(run("check --engine both --property ndc " + net("token_race.net"))
              .exit_code == 0);
    RunResult skipped =
        run("check --engine both --property ndc " + net("pump_disconnected.net"));
    CHECK(skipped.exit_code == 0);
    CHECK(skipped.output.find("skipped") != std::string::npos);
}

TEST_CASE("the state bound environment override is honored") {
    std::string cmd = "NICHECK_STATE_BOUND=2 " + std::string(NICHECK_CLI_PATH) +
                      " check --property sbndc " + net("side_loop_leak.net") + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string output;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        output.append(buf.data(), n);
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 2);
    CHECK(output.find("unknown") != std::string::npos);

    // An explicit flag wins over the environment.
    std::string cmd2 = "NICHECK_STATE_BOUND=2 " + std::string(NICHECK_CLI_PATH) +
                       " check --state-bound 100000 --property sbndc " +
                       net("side_loop_leak.net") + " >/dev/null 2>&1";
    int status2 = std::system(cmd2.c_str());
    CHECK(WEXITSTATUS(status2) == 1);
}
