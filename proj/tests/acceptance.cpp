// Acceptance suite: each criterion prints exactly one PASS/FAIL line and
// the binary exits nonzero if any criterion fails. Budgets are enforced
// here, not merely reported.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ensemble.hpp"
#include "experiments.hpp"
#include "json_codec.hpp"
#include "oracles.hpp"
#include "pairnum.hpp"
#include "session.hpp"
#include "statespace.hpp"

using namespace clickstate;
using namespace clickstate::testing;

namespace {

struct Criterion {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<Criterion> g_results;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void record(const std::string& name, bool pass, const std::string& detail) {
    g_results.push_back({name, pass, detail});
    std::printf("[%s] %-28s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string seconds_str(double s) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2fs", s);
    return buffer;
}

// --- criterion 1: exact field axioms, inverse formula, involution laws ----

void algebra_suite() {
    Timer timer;
    AlgebraReport report = verify_field_axioms(10000, 1);
    double elapsed = timer.seconds();
    std::uint32_t failures = 0;
    for (const auto& check : report.checks) failures += check.failures;
    bool pass = report.verdict && failures == 0 && elapsed < 10.0;
    std::ostringstream detail;
    detail << report.checks.size() << " laws x 10^4 samples, " << failures << " failures, "
           << seconds_str(elapsed) << " (budget 10s)";
    record("algebra-axioms", pass, detail.str());
}

// --- criterion 2: multiplication against the hand-expanded oracle ---------

void oracle_equivalence() {
    Timer timer;
    std::uint64_t state = 2;
    std::uint32_t mismatches = 0;
    for (int t = 0; t < 10000; ++t) {
        PairNumber a = random_pair(state);
        PairNumber b = random_pair(state);
        if (pair_mul(a, b) != complex_mul_oracle(a, b)) ++mismatches;
    }
    std::ostringstream detail;
    detail << "10^4 samples, " << mismatches << " mismatches, " << seconds_str(timer.seconds());
    record("oracle-equivalence", mismatches == 0, detail.str());
}

// --- criterion 3: exhaustive elimination of the 16 candidates --------------

void ansatz_elimination() {
    Timer timer;
    SurvivorReport report = ansatz_search(1000, 7);
    double elapsed = timer.seconds();

    bool pass = report.total_candidates == 16 && report.candidates.size() == 16;
    pass = pass && report.standard_survives;
    pass = pass && report.isomorphism_classes == 1;
    pass = pass && report.pass_invertibility.size() == 2;

    // every delta = n^2 - m^2 assignment (s2 = s1 among the associative,
    // unital rules) must fail invertibility exactly at the witness (1,1)
    for (const auto& v : report.candidates) {
        if (!(v.distributive && v.associative && v.has_unity)) continue;
        if (v.signs.s2 == v.signs.s1) {
            pass = pass && !v.invertible && v.invertibility_witness &&
                   *v.invertibility_witness == PairNumber{Rational(1), Rational(1)};
        }
    }
    pass = pass && elapsed < 5.0;

    std::ostringstream detail;
    detail << "16 candidates -> " << report.pass_associativity_unity.size()
           << " associative+unital -> " << report.pass_invertibility.size() << " survivors, "
           << report.isomorphism_classes << " class, " << seconds_str(elapsed)
           << " (budget 5s)";
    record("ansatz-elimination", pass, detail.str());
}

// --- criterion 4: vector-space axioms at D in {2,3,8} + planted mutation ---

void lvs_suite() {
    Timer timer;
    bool pass = true;
    std::uint32_t total_failures = 0;
    for (std::size_t d : {2u, 3u, 8u}) {
        LvsReport report = verify_lvs_axioms(d, 10000, 4);
        if (!report.verdict) pass = false;
        for (const auto& check : report.checks) total_failures += check.failures;
    }

    ScalarAction mutant = [](const PairNumber& c, const PairNumber& x) {
        return PairNumber{c.n * x.n - c.m * x.m, c.n * x.m}; // cross term dropped
    };
    LvsReport mutated = verify_lvs_axioms(2, 2000, 4, mutant);
    bool mutation_detected = !mutated.verdict;
    for (const auto& check : mutated.checks)
        if (check.failures > 0 && check.witness.empty()) mutation_detected = false;
    pass = pass && total_failures == 0 && mutation_detected;

    std::ostringstream detail;
    detail << "D in {2,3,8} x 10^4 samples, " << total_failures << " failures; planted mutation "
           << (mutation_detected ? "detected" : "MISSED") << ", " << seconds_str(timer.seconds());
    record("lvs-axioms", pass, detail.str());
}

// --- criterion 5: ray and involution invariance of measurement -------------

void ray_invariance() {
    Timer timer;
    InstrumentRep instrument("A", {"a0", "a1", "a2"},
                             {Rational(0), Rational(1), Rational(2)});
    std::uint64_t state = 5;
    std::uint32_t violations = 0;
    for (int t = 0; t < 1000; ++t) {
        StateVector v{"A", {}};
        do {
            v.coords.clear();
            for (int i = 0; i < 3; ++i) v.coords.push_back(random_pair(state));
        } while (v.is_zero());
        MeasurementResult base = measure(v, instrument);

        PairNumber c = random_nonzero_pair(state);
        if (measure(scale_state(c, v), instrument).nu != base.nu) ++violations;

        StateVector conjed{"A", {}}, swapped{"A", {}};
        for (const auto& x : v.coords) {
            conjed.coords.push_back(involution(x, Involution::conj));
            swapped.coords.push_back(involution(x, Involution::swap));
        }
        if (measure(conjed, instrument).nu != base.nu) ++violations;
        if (measure(swapped, instrument).nu != base.nu) ++violations;
    }
    std::ostringstream detail;
    detail << "10^3 random (v, c) pairs + involutions, " << violations << " violations, "
           << seconds_str(timer.seconds());
    record("ray-invariance", violations == 0, detail.str());
}

// --- criterion 6: scale invariance of extraction ----------------------------

void sigma_scale_invariance() {
    Timer timer;
    std::uint64_t state = 6;
    std::uint32_t violations = 0;
    for (int t = 0; t < 1000; ++t) {
        std::uint64_t q = test_range(state, 1, 6);
        EnsembleBrace b = random_brace(state, q);
        Rational k(Integer(test_range(state, 1, 12)), Integer(q));
        BraceStatistics before = extract_stats(b);
        BraceStatistics after = extract_stats(replicate_brace(b, k));
        if (before.nu != after.nu || before.kappa != after.kappa) ++violations;
    }
    std::ostringstream detail;
    detail << "10^3 random (brace, k) pairs, " << violations << " violations, "
           << seconds_str(timer.seconds());
    record("sigma-scale-invariance", violations == 0, detail.str());
}

// --- criterion 7: interference contrast ------------------------------------

void interference_contrast() {
    Timer timer;
    BasisChange change("A", "B", {{PairNumber::one(), PairNumber::one()},
                                  {PairNumber::one(), PairNumber{Rational(-1), Rational(0)}}});
    InstrumentRep target("B", {"b0", "b1"}, {Rational(0), Rational(1)});
    ExperimentReport report =
        two_slit_demo(change, {PairNumber::one(), PairNumber::one()}, target);
    double elapsed = timer.seconds();

    json obs = parse_json(report.observations_json, "observations");
    bool zero_found = obs.at("interference_zero_outcomes") == json::array({1});
    bool components_even = true;
    for (int k = 0; k < 2; ++k)
        components_even = components_even &&
                          rational_seq_from_json(obs.at("component_nu")[k], "nu") ==
                              std::vector<Rational>{Rational(1, 2), Rational(1, 2)};
    bool grid_clean = obs.at("grid_all_positive") == true &&
                      obs.at("grid_contains_superposed") == false;
    bool pass = report.verdict && zero_found && components_even && grid_clean && elapsed < 1.0;

    std::ostringstream detail;
    detail << "exact zero at outcome 1, components (1/2,1/2), 1/128 grid clean, "
           << seconds_str(elapsed) << " (budget 1s)";
    record("interference-contrast", pass, detail.str());
}

// --- criterion 8: statistical round trip ------------------------------------

void statistical_round_trip() {
    Timer timer;
    const std::vector<Rational> nu{Rational(3, 10), Rational(7, 10)};
    IngestTarget target{"A", {"a0", "a1"}};
    const std::vector<Rational> kappa{Rational(1, 2), Rational(1, 2)};
    const Rational bound_rhs = Rational(9) * Rational(21, 100); // (3 sigma)^2 * sigma

    int passing = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        SimulationSpec spec{nu, 1000000, "A"};
        auto stream = simulate_clicks(spec, seed);
        BraceStatistics stats = extract_stats(ingest_clicks(stream, target, kappa));
        Rational err = max_abs_deviation(nu, target.outcome_symbols, stats.nu,
                                         stats.outcome_symbols);
        if (err * err * Rational(1000000) <= bound_rhs) ++passing;
    }
    double elapsed = timer.seconds();
    bool pass = passing >= 99 && elapsed < 30.0;
    std::ostringstream detail;
    detail << passing << "/100 seeds within 3*sqrt(0.21/10^6) at sigma=10^6, "
           << seconds_str(elapsed) << " (budget 30s)";
    record("statistical-round-trip", pass, detail.str());
}

// --- criterion 9: ordinals ---------------------------------------------------

void ordinals() {
    Timer timer;
    bool pass = true;
    for (unsigned n = 0; n <= 11; ++n) {
        OrdinalSet current = ordinal_encode(n);
        OrdinalSet singleton;
        singleton.insert(current);
        if (!(ordinal_encode(n + 1) == ordinal_union(current, singleton))) pass = false;
        if (ordinal_encode(n).cardinality() != n) pass = false;
    }
    std::ostringstream detail;
    detail << "successor law and cardinality for n <= 11, " << seconds_str(timer.seconds());
    record("ordinals", pass, detail.str());
}

// --- criterion 10: CLI determinism ------------------------------------------

std::string run_capture(const std::string& command) {
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string output;
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        output.append(buffer.data(), n);
    pclose(pipe);
    return output;
}

void cli_determinism() {
    Timer timer;
    const std::string cli = CLICKSTATE_CLI_PATH;
    const std::string session_path = "/tmp/clickstate_acceptance_session.json";
    {
        std::ofstream out(session_path);
        out << R"({"dimension":2,"default_seed":7,
                   "instruments":[{"id":"A","eigen_symbols":["a0","a1"],
                                   "spectral_labels":["0","1"]}]})";
    }
    const std::vector<std::string> commands{
        cli + " ansatz-search --trials 400 --seed 7",
        cli + " simulate --nu 3/10,7/10 --sigma 2000 --instrument A --seed 11",
        cli + " algebra-verify --trials 500 --seed 3",
        cli + " lvs-verify --trials 300 --seed 5 --session " + session_path,
        cli + " ordinal 8 --format json",
    };
    bool pass = true;
    for (const auto& command : commands) {
        std::string first = run_capture(command);
        std::string second = run_capture(command);
        if (first.empty() || first != second) pass = false;
    }
    std::ostringstream detail;
    detail << commands.size() << " subcommands, two runs each, byte-identical, "
           << seconds_str(timer.seconds());
    record("cli-determinism", pass, detail.str());
}

} // namespace

int main() {
    algebra_suite();
    oracle_equivalence();
    ansatz_elimination();
    lvs_suite();
    ray_invariance();
    sigma_scale_invariance();
    interference_contrast();
    statistical_round_trip();
    ordinals();
    cli_determinism();

    int failed = 0;
    for (const auto& criterion : g_results)
        if (!criterion.pass) ++failed;
    std::printf("%zu criteria, %d failed\n", g_results.size(), failed);
    return failed == 0 ? 0 : 1;
}
