#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "streamcalc/canonical.hpp"
#include "streamcalc/eval.hpp"
#include "streamcalc/parser.hpp"
#include "streamcalc/printer.hpp"

using namespace streamcalc;

namespace {

const std::string cli = STREAMCALC_CLI_PATH;
const std::string corpus_path = STREAMCALC_CORPUS_DIR "/streams.sc";

struct cli_result {
    int exit_code;
    std::string out;
    std::string err;
};

std::string shell_quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) {
        if (c == '\'')
            q += "'\\''";
        else
            q += c;
    }
    return q + "'";
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

cli_result run_cli(const std::vector<std::string>& args, const std::string& env_prefix = "") {
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / ("streamcalc_cli_" + std::to_string(getpid()));
    fs::path out_file = base.string() + "_out.txt";
    fs::path err_file = base.string() + "_err.txt";
    std::string cmd = env_prefix + shell_quote(cli);
    for (const auto& a : args) cmd += " " + shell_quote(a);
    cmd += " > " + shell_quote(out_file.string()) + " 2> " + shell_quote(err_file.string());
    int status = std::system(cmd.c_str());
    cli_result r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    fs::remove(out_file);
    fs::remove(err_file);
    return r;
}

std::filesystem::path write_temp_program(const std::string& text) {
    namespace fs = std::filesystem;
    fs::path p = fs::temp_directory_path() /
                 ("streamcalc_prog_" + std::to_string(getpid()) + ".sc");
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("run prints the canonical capsule") {
    auto r = run_cli({"run", corpus_path, "--eval", "nat()"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "v0 where { v0 = 0:(v0 [+] v1), v1 = 1:v1 }\n");
    CHECK(r.err.empty());

    CHECK(run_cli({"run", corpus_path, "--eval", "repeat(0)"}).out ==
          "v0 where { v0 = 0:v0 }\n");
    CHECK(run_cli({"run", corpus_path, "--eval", "one_two()"}).out ==
          "v0 where { v0 = 1:v1, v1 = 2:v0 }\n");
    CHECK(run_cli({"run", corpus_path, "--eval", "fib()"}).out ==
          "v0 where { v0 = 0:1:(v0 [+] v0^) }\n");
    CHECK(run_cli({"run", corpus_path, "--eval", "fact()"}).out ==
          "v0 where { v0 = 1:((v1 [+] v3) [*] v0), v1 = 0:(v1 [+] v2), v2 = 1:v2, v3 = 1:v3 }\n");
    CHECK(run_cli({"run", corpus_path, "--eval", "repeat(7)(0)+1"}).out == "8\n");
}

TEST_CASE("json output and the dump default") {
    const std::string golden =
        R"json({"value":"v0","env":{"v0":"0:(v0 [+] v1)","v1":"1:v1"}})json"
        "\n";
    auto r = run_cli({"run", corpus_path, "--eval", "nat()", "--format", "json"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == golden);
    CHECK(run_cli({"dump", corpus_path, "--eval", "nat()"}).out == golden);
    CHECK(run_cli({"dump", corpus_path, "--eval", "nat()", "--format", "text"}).out ==
          "v0 where { v0 = 0:(v0 [+] v1), v1 = 1:v1 }\n");
}

TEST_CASE("dumped json parses back to an equivalent capsule") {
    auto r = run_cli({"dump", corpus_path, "--eval", "fib()"});
    REQUIRE(r.exit_code == 0);
    capsule round_tripped = capsule_from_json(r.out);
    std::ifstream in(corpus_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    program p = parse_program(buf.str());
    validate(p);
    CHECK(capsule_alpha_equal(round_tripped, evaluate(p, parse_expr("fib()"))));
}

TEST_CASE("at prints a single element") {
    auto r = run_cli({"at", corpus_path, "--eval", "nat_to_pow(2)", "--index", "7"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "49\n");
    CHECK(run_cli({"at", corpus_path, "--eval", "fib()", "--index", "30"}).out == "832040\n");
    CHECK(run_cli({"at", corpus_path, "--eval", "sum_expn(1)", "--index", "4"}).out == "65/24\n");
    CHECK(run_cli({"at", corpus_path, "--eval", "avg(3, nat())", "--index", "9"}).out == "10\n");
}

TEST_CASE("prefix prints space-separated elements") {
    auto r = run_cli({"prefix", corpus_path, "--eval", "fib()", "--count", "8"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0 1 1 2 3 5 8 13\n");
    CHECK(run_cli({"prefix", corpus_path, "--eval", "nat()", "--count", "1"}).out == "0\n");
    CHECK(run_cli({"prefix", corpus_path, "--eval", "nat()", "--count", "0"}).out == "\n");
}

TEST_CASE("prefix --oracle cross-checks against the fixpoint") {
    auto r = run_cli({"prefix", corpus_path, "--eval", "sum(nat())", "--count", "8", "--oracle"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0 1 3 6 10 15 21 28\n");
    r = run_cli({"prefix", corpus_path, "--eval", "aggr(3, nat())", "--count", "8", "--oracle"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "3 6 9 12 15 18 21 24\n");
    r = run_cli({"prefix", corpus_path, "--eval", "sum_expn(1)", "--count", "6", "--oracle",
                 "--precision", "30"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1 2 5/2 8/3 65/24 163/60\n");
}

TEST_CASE("check reports the verdict") {
    auto r = run_cli({"check", corpus_path, "--eval", "nat()"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "well-defined\n");
    // numeric results have nothing to reject
    CHECK(run_cli({"check", corpus_path, "--eval", "1+1"}).out == "well-defined\n");
}

TEST_CASE("rejected streams fail with NotWellDefined") {
    auto r = run_cli({"run", corpus_path, "--eval", "zeros()"});
    CHECK(r.exit_code == 1);
    CHECK(r.out.empty());
    CHECK(r.err ==
          "error: NotWellDefined: binding v0 = v1 [*] v0 rejected: variable v0 re-entered with "
          "constructor balance 0\n");
    r = run_cli({"check", corpus_path, "--eval", "bad_stream()"});
    CHECK(r.exit_code == 1);
    CHECK(r.err ==
          "error: NotWellDefined: binding v0 = 0:v0^ rejected: variable v0 re-entered with "
          "constructor balance 0\n");
}

TEST_CASE("runtime faults exit 1") {
    auto r = run_cli({"run", corpus_path, "--eval", "undef()"});
    CHECK(r.exit_code == 1);
    CHECK(r.err == "error: UndefinedVariable: variable v0 is not bound in the environment\n");

    r = run_cli({"run", corpus_path, "--eval", "incr_reg(one_two())", "--fuel", "1000"});
    CHECK(r.exit_code == 1);
    CHECK(r.err ==
          "error: FuelExhausted: call budget of 1000 expansions exhausted at first-time call of "
          "incr_reg\n");

    r = run_cli({"at", corpus_path, "--eval", "nat()", "--index", "0-1"});
    CHECK(r.exit_code == 2);  // the option itself rejects non-numeric input

    r = run_cli({"run", corpus_path, "--eval", "1/0"});
    CHECK(r.exit_code == 1);
    CHECK(r.err == "error: DivisionByZero: division by zero\n");
}

TEST_CASE("static errors exit 2") {
    auto r = run_cli({"run", corpus_path, "--eval", "nope()"});
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error: UnknownFunction:") == 0);

    r = run_cli({"run", corpus_path, "--eval", "x"});
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error: UnknownIdentifier:") == 0);

    r = run_cli({"run", corpus_path, "--eval", "repeat(1, 2)"});
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error: ArityError:") == 0);

    r = run_cli({"at", corpus_path, "--eval", "1+1", "--index", "0"});
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error: SortError:") == 0);

    r = run_cli({"run", "/nonexistent/path.sc", "--eval", "nat()"});
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error: IOError: cannot open") == 0);

    auto bad = write_temp_program("f() = 0:");
    r = run_cli({"run", bad.string(), "--eval", "f()"});
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error: ParseError: line 1") == 0);
    std::filesystem::remove(bad);
}

TEST_CASE("argument errors exit 2, help exits 0") {
    CHECK(run_cli({"frobnicate", corpus_path}).exit_code == 2);
    CHECK(run_cli({}).exit_code == 2);
    CHECK(run_cli({"run", corpus_path}).exit_code == 2);  // --eval missing
    CHECK(run_cli({"run", corpus_path, "--eval", "nat()", "--fuel", "0"}).exit_code == 2);
    CHECK(run_cli({"run", corpus_path, "--eval", "nat()", "--format", "xml"}).exit_code == 2);
    auto r = run_cli({"--help"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("interpreter and analyzer") != std::string::npos);
}

TEST_CASE("fuel comes from the environment unless the flag overrides it") {
    auto r = run_cli({"run", corpus_path, "--eval", "one_two()"}, "STREAMCALC_FUEL=1 ");
    CHECK(r.exit_code == 1);
    CHECK(r.err ==
          "error: FuelExhausted: call budget of 1 expansions exhausted at first-time call of "
          "two_one\n");
    r = run_cli({"run", corpus_path, "--eval", "one_two()"}, "STREAMCALC_FUEL=2 ");
    CHECK(r.exit_code == 0);
    r = run_cli({"run", corpus_path, "--eval", "one_two()", "--fuel", "2"},
                "STREAMCALC_FUEL=1 ");
    CHECK(r.exit_code == 0);
}

TEST_CASE("deep expansion chains run on the widened stack") {
    auto r = run_cli({"run", corpus_path, "--eval", "incr_reg(nat())", "--fuel", "6000"});
    CHECK(r.exit_code == 1);
    CHECK(r.err ==
          "error: FuelExhausted: call budget of 6000 expansions exhausted at first-time call of "
          "incr_reg\n");
}
