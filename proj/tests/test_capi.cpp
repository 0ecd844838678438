#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <string>

#include "clickstate.h"

using nlohmann::json;

namespace {

// RAII around the C surface so test bodies stay small.
struct Out {
    char* ptr = nullptr;
    ~Out() { cst_string_free(ptr); }
    std::string str() const { return ptr ? std::string(ptr) : std::string(); }
    json doc() const { return json::parse(str()); }
};

struct SessionHandle {
    cst_session* ptr = nullptr;
    ~SessionHandle() { cst_session_close(ptr); }
};

const char* kConfig = R"({
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

SessionHandle open_config() {
    SessionHandle session;
    REQUIRE(cst_session_open(kConfig, &session.ptr) == CST_OK);
    return session;
}

} // namespace

TEST_CASE("session lifecycle and validation errors") {
    SessionHandle ok = open_config();
    Out described;
    CHECK(cst_session_describe(ok.ptr, &described.ptr) == CST_OK);
    CHECK(described.doc().at("dimension") == 2);

    cst_session* bad = nullptr;
    CHECK(cst_session_open("{\"dimension\": 1}", &bad) == CST_ERR_INVALID);
    CHECK(bad == nullptr);
    CHECK(std::string(cst_last_error()).find("dimension") != std::string::npos);

    CHECK(cst_session_open("not json", &bad) == CST_ERR_INVALID);
    CHECK(cst_session_open(nullptr, &bad) == CST_ERR_INVALID);
    cst_session_close(nullptr); // harmless
}

TEST_CASE("simulate -> ingest -> extract through the C surface") {
    SessionHandle session = open_config();

    Out stream;
    REQUIRE(cst_simulate_clicks(R"({"nu":["3/10","7/10"],"sigma":"2000","instrument":"A"})", 11,
                                &stream.ptr) == CST_OK);

    Out brace;
    REQUIRE(cst_ingest_clicks(session.ptr, "A", stream.ptr, R"(["1/2","1/2"])", &brace.ptr) ==
            CST_OK);
    json brace_doc = brace.doc();
    CHECK(brace_doc.at("sigma") == "2000");
    CHECK_FALSE(brace_doc.at("zero_class").get<bool>());

    Out stats;
    REQUIRE(cst_extract_stats(brace.str().c_str(), &stats.ptr) == CST_OK);
    CHECK(stats.doc().at("outcomes").size() == 2);

    // same spec + seed is byte-identical
    Out again;
    REQUIRE(cst_simulate_clicks(R"({"nu":["3/10","7/10"],"sigma":"2000","instrument":"A"})", 11,
                                &again.ptr) == CST_OK);
    CHECK(stream.str() == again.str());
}

TEST_CASE("brace algebra through the C surface") {
    const char* a = R"({"entries":[{"outcome":"a0","psi":"2","phi":"3"},
                                   {"outcome":"a1","psi":"1","phi":"0"}]})";
    const char* b = R"({"entries":[{"outcome":"a0","psi":"1","phi":"1"}]})";

    Out merged;
    REQUIRE(cst_union_braces(a, b, &merged.ptr) == CST_OK);
    CHECK(merged.doc().at("sigma") == "8");

    Out doubled;
    REQUIRE(cst_replicate_brace(a, "2", &doubled.ptr) == CST_OK);
    CHECK(doubled.doc().at("sigma") == "12");
    Out rejected;
    CHECK(cst_replicate_brace(a, "1/7", &rejected.ptr) == CST_ERR_INVALID);

    Out mixed;
    const char* mixture = R"({"components":[
        {"brace":{"entries":[{"outcome":"a0","psi":"1","phi":"1"}]},"weight":"1/2"},
        {"brace":{"entries":[{"outcome":"a1","psi":"2","phi":"0"}]},"weight":"1/2"}]})";
    REQUIRE(cst_mix_braces(mixture, &mixed.ptr) == CST_OK);
    json mix_doc = mixed.doc();
    CHECK(mix_doc.at("outcomes") == json::array({"a0", "a1"}));
    CHECK(mix_doc.at("nu")[0].at("num") == "1");
    CHECK(mix_doc.at("nu")[0].at("den") == "2");
}

TEST_CASE("verification entry points return verdict-coded statuses") {
    Out algebra;
    CHECK(cst_verify_algebra(500, 3, &algebra.ptr) == CST_OK);
    CHECK(algebra.doc().at("verdict") == true);
    Out bad_trials;
    CHECK(cst_verify_algebra(0, 3, &bad_trials.ptr) == CST_ERR_INVALID);

    Out survivors;
    CHECK(cst_ansatz_search(200, 9, &survivors.ptr) == CST_OK);
    json report = survivors.doc();
    CHECK(report.at("isomorphism_classes") == 1);
    CHECK(report.at("standard_survives") == true);

    SessionHandle session = open_config();
    Out lvs;
    CHECK(cst_verify_lvs(session.ptr, 300, 5, &lvs.ptr) == CST_OK);
    CHECK(lvs.doc().at("dimension") == 2);
}

TEST_CASE("measurement through the C surface") {
    SessionHandle session = open_config();

    Out result;
    REQUIRE(cst_measure(session.ptr, R"({"basis":"A","coords":[
        {"n":"1","m":"0"},{"n":"1","m":"0"}]})", "A", &result.ptr) == CST_OK);
    json doc = result.doc();
    CHECK(doc.at("nu")[0].at("den") == "2");

    // basis conversion A -> B through the registered change
    Out converted;
    REQUIRE(cst_measure(session.ptr, R"({"basis":"A","coords":[
        {"n":"1","m":"0"},{"n":"1","m":"0"}]})", "B", &converted.ptr) == CST_OK);
    CHECK(converted.doc().at("nu")[0].at("num") == "1");
    CHECK(converted.doc().at("nu")[1].at("num") == "0");

    Out zero;
    CHECK(cst_measure(session.ptr, R"({"basis":"A","coords":[
        {"n":"0","m":"0"},{"n":"0","m":"0"}]})", "A", &zero.ptr) == CST_ERR_INVALID);
    CHECK(std::string(cst_last_error()).find("no statistics") != std::string::npos);

    Out mixture;
    REQUIRE(cst_measure_mixture(session.ptr, R"({"components":[
        {"state":{"basis":"A","coords":[{"n":"1","m":"0"},{"n":"0","m":"0"}]},"weight":"1/2"},
        {"state":{"basis":"A","coords":[{"n":"0","m":"0"},{"n":"1","m":"0"}]},"weight":"1/2"}]})",
                               "A", &mixture.ptr) == CST_OK);
    CHECK(mixture.doc().at("nu")[0].at("den") == "2");
}

TEST_CASE("experiments through the C surface") {
    SessionHandle session = open_config();
    Out interference;
    CHECK(cst_two_slit(session.ptr, "A", "B", R"([{"n":"1","m":"0"},{"n":"1","m":"0"}])",
                       &interference.ptr) == CST_OK);
    CHECK(interference.doc().at("verdict") == true);

    Out missing_change;
    CHECK(cst_two_slit(session.ptr, "B", "A2", "[]", &missing_change.ptr) == CST_ERR_INVALID);

    Out positivity;
    CHECK(cst_classical_positivity(200, 4, &positivity.ptr) == CST_OK);

    Out convergence;
    CHECK(cst_convergence(R"(["3/10","7/10"])", "[100, 10000]", 8, &convergence.ptr) == CST_OK);
    CHECK(convergence.doc().at("verdict") == true);
    Out bad_schedule;
    CHECK(cst_convergence(R"(["1"])", "[100, 50]", 8, &bad_schedule.ptr) == CST_ERR_INVALID);
}

TEST_CASE("ordinal endpoint") {
    Out two;
    REQUIRE(cst_ordinal(2, &two.ptr) == CST_OK);
    json doc = two.doc();
    CHECK(doc.at("rendering") == "{∅,{∅}}");
    CHECK(doc.at("cardinality") == 2);
    CHECK(doc.at("set") == json::parse("[[],[[]]]"));

    Out too_deep;
    CHECK(cst_ordinal(13, &too_deep.ptr) == CST_ERR_INVALID);
}

TEST_CASE("version string is present") {
    CHECK(std::string(cst_version()).find('.') != std::string::npos);
}
