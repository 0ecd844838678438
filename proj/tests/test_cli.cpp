// End-to-end checks of the command-line surface: exit codes, diagnostics,
// determinism, and schema conformance of every subcommand's JSON output.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "schema_validator.hpp"

using nlohmann::json;
using clickstate::testing::SchemaValidator;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
    std::string command = std::string(CLICKSTATE_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string temp_path(const std::string& name) {
    return std::string("/tmp/clickstate_cli_test_") + name;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

json load_schema(const std::string& name) {
    std::ifstream in(std::string(CLICKSTATE_SCHEMA_DIR) + "/" + name + ".schema.json");
    REQUIRE(in.good());
    json schema;
    in >> schema;
    return schema;
}

void expect_schema(const std::string& schema_name, const std::string& text) {
    std::string error;
    SchemaValidator validator(load_schema(schema_name));
    json doc = json::parse(text);
    INFO(schema_name << ": " << error << "\n" << text.substr(0, 400));
    CHECK(validator.validate(doc, &error));
    if (!error.empty()) { INFO(error); CHECK(error.empty()); }
}

const char* kSessionJson = R"({
  "dimension": 2,
  "default_seed": 7,
  "instruments": [
    {"id": "A", "eigen_symbols": ["a0", "a1"], "spectral_labels": ["0", "1"]},
    {"id": "B", "eigen_symbols": ["b0", "b1"], "spectral_labels": ["-1", "1"]}
  ],
  "basis_changes": [
    {"from": "A", "to": "B", "matrix": [
      [{"n": "1", "m": "0"}, {"n": "1", "m": "0"}],
      [{"n": "1", "m": "0"}, {"n": "-1", "m": "0"}]
    ]}
  ]
})";

struct Fixture {
    std::string session = temp_path("session.json");
    Fixture() { write_file(session, kSessionJson); }
};

} // namespace

TEST_CASE_FIXTURE(Fixture, "usage errors exit with code 2") {
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("simulate --sigma 10 --instrument A").exit_code == 2); // missing --nu
    CHECK(run_cli("ordinal 40").exit_code == 2);                        // depth guard
    RunResult missing = run_cli("measure --state /nonexistent.json --instrument A --session " +
                                session);
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("error:") != std::string::npos);
}

TEST_CASE_FIXTURE(Fixture, "help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("simulate --help").exit_code == 0);
}

TEST_CASE_FIXTURE(Fixture, "ordinal rendering and JSON") {
    RunResult text = run_cli("ordinal 2");
    CHECK(text.exit_code == 0);
    CHECK(text.output == "{∅,{∅}}\n");

    RunResult doc = run_cli("ordinal 2 --format json");
    CHECK(doc.exit_code == 0);
    expect_schema("ordinal", doc.output);
}

TEST_CASE_FIXTURE(Fixture, "simulate is deterministic and schema-clean per line") {
    std::string args = "simulate --nu 3/10,7/10 --sigma 500 --instrument A --seed 42";
    RunResult first = run_cli(args);
    RunResult second = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);

    SchemaValidator validator(load_schema("click_record"));
    std::istringstream lines(first.output);
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        std::string error;
        CHECK(validator.validate(json::parse(line), &error));
        ++count;
    }
    CHECK(count == 500);

    RunResult reseeded = run_cli("simulate --nu 3/10,7/10 --sigma 500 --instrument A --seed 43");
    CHECK(first.output != reseeded.output);
}

TEST_CASE_FIXTURE(Fixture, "ingest and extract produce schema-conformant documents") {
    std::string clicks = temp_path("clicks.jsonl");
    RunResult sim = run_cli("simulate --nu 1/2,1/2 --sigma 400 --instrument A --seed 5 --out " +
                            clicks);
    REQUIRE(sim.exit_code == 0);

    std::string brace = temp_path("brace.json");
    RunResult ingest = run_cli("ingest --stream " + clicks + " --instrument A --kappa 1/2,1/3" +
                               " --session " + session + " --out " + brace);
    REQUIRE(ingest.exit_code == 0);
    {
        std::ifstream in(brace);
        std::stringstream buffer;
        buffer << in.rdbuf();
        expect_schema("brace", buffer.str());
    }

    RunResult extract = run_cli("extract --brace " + brace);
    CHECK(extract.exit_code == 0);
    expect_schema("stats", extract.output);

    // byte-identical on identical inputs
    CHECK(run_cli("extract --brace " + brace).output == extract.output);
}

TEST_CASE_FIXTURE(Fixture, "verification subcommands: verdicts and schemas") {
    RunResult algebra = run_cli("algebra-verify --trials 300 --seed 7");
    CHECK(algebra.exit_code == 0);
    expect_schema("algebra_report", algebra.output);

    RunResult ansatz = run_cli("ansatz-search --trials 100 --seed 7");
    CHECK(ansatz.exit_code == 0);
    expect_schema("survivor_report", ansatz.output);
    json report = json::parse(ansatz.output);
    CHECK(report.at("pass_invertibility").size() == 2);

    RunResult lvs = run_cli("lvs-verify --trials 200 --seed 7 --session " + session);
    CHECK(lvs.exit_code == 0);
    expect_schema("lvs_report", lvs.output);
}

TEST_CASE_FIXTURE(Fixture, "measure: document output and zero-vector diagnostic") {
    std::string state = temp_path("state.json");
    write_file(state, R"({"basis":"A","coords":[{"n":"1","m":"0"},{"n":"1","m":"0"}]})");
    RunResult measured = run_cli("measure --state " + state + " --instrument B --session " +
                                 session);
    CHECK(measured.exit_code == 0);
    expect_schema("measurement", measured.output);

    std::string zero = temp_path("zero_state.json");
    write_file(zero, R"({"basis":"A","coords":[{"n":"0","m":"0"},{"n":"0","m":"0"}]})");
    RunResult rejected = run_cli("measure --state " + zero + " --instrument A --session " +
                                 session);
    CHECK(rejected.exit_code == 2);
    CHECK(rejected.output.find("zero vector has no statistics") != std::string::npos);
}

TEST_CASE_FIXTURE(Fixture, "mix: brace mixtures and state mixtures") {
    std::string braces = temp_path("brace_mixture.json");
    write_file(braces, R"({"components":[
        {"brace":{"entries":[{"outcome":"a0","psi":"1","phi":"1"}]},"weight":"1/2"},
        {"brace":{"entries":[{"outcome":"a1","psi":"3","phi":"0"}]},"weight":"1/2"}]})");
    RunResult mixed = run_cli("mix --braces " + braces);
    CHECK(mixed.exit_code == 0);
    expect_schema("mix_result", mixed.output);

    std::string states = temp_path("state_mixture.json");
    write_file(states, R"({"components":[
        {"state":{"basis":"A","coords":[{"n":"1","m":"0"},{"n":"0","m":"0"}]},"weight":"1/2"},
        {"state":{"basis":"A","coords":[{"n":"0","m":"0"},{"n":"1","m":"0"}]},"weight":"1/2"}]})");
    RunResult measured = run_cli("mix --states " + states + " --instrument A --session " +
                                 session);
    CHECK(measured.exit_code == 0);
    expect_schema("measurement", measured.output);

    CHECK(run_cli("mix --braces " + braces + " --states " + states).exit_code == 2);
    CHECK(run_cli("mix").exit_code == 2);
}

TEST_CASE_FIXTURE(Fixture, "interfere and converge emit experiment reports") {
    RunResult demo = run_cli("interfere --session " + session +
                             " --from A --to B --coeffs "
                             "'[{\"n\":\"1\",\"m\":\"0\"},{\"n\":\"1\",\"m\":\"0\"}]'");
    CHECK(demo.exit_code == 0);
    expect_schema("experiment_report", demo.output);
    json report = json::parse(demo.output);
    CHECK(report.at("observations").at("interference_zero_outcomes") == json::array({1}));

    RunResult study = run_cli("converge --nu 3/10,7/10 --schedule 100,10000 --seed 9");
    CHECK(study.exit_code == 0);
    expect_schema("experiment_report", study.output);

    CHECK(run_cli("converge --nu 3/10,7/10 --schedule 100,50 --seed 9").exit_code == 2);
}

TEST_CASE_FIXTURE(Fixture, "text format renders reports without JSON punctuation") {
    RunResult text = run_cli("algebra-verify --trials 50 --seed 7 --format text");
    CHECK(text.exit_code == 0);
    CHECK(text.output.find("verdict: true") != std::string::npos);
    CHECK(text.output.find('{') == std::string::npos);
}
