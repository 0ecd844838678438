#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json_codec.hpp"

namespace clickstate {

namespace {

void require(bool cond, const std::string& message) {
    if (!cond) throw invariant_violation(message);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    return seed ^ (0x9E3779B97F4A7C15ULL * (salt + 1));
}

bool strictly_positive(const std::vector<Rational>& seq) {
    return std::all_of(seq.begin(), seq.end(), [](const Rational& v) { return v > 0; });
}

} // namespace

Rational max_abs_deviation(const std::vector<Rational>& expected,
                           const std::vector<Primitive>& expected_symbols,
                           const std::vector<Rational>& observed,
                           const std::vector<Primitive>& observed_symbols) {
    require(expected.size() == expected_symbols.size(), "deviation: expected sequences disagree");
    require(observed.size() == observed_symbols.size(), "deviation: observed sequences disagree");
    Rational worst = 0;
    for (std::size_t s = 0; s < expected.size(); ++s) {
        Rational got = 0;
        auto it = std::find(observed_symbols.begin(), observed_symbols.end(), expected_symbols[s]);
        if (it != observed_symbols.end()) got = observed[it - observed_symbols.begin()];
        Rational err = got > expected[s] ? got - expected[s] : expected[s] - got;
        if (err > worst) worst = err;
    }
    return worst;
}

bool within_binomial_bound(const std::vector<Rational>& expected,
                           const std::vector<Rational>& observed, std::uint64_t sigma) {
    require(expected.size() == observed.size(), "bound check: length mismatch");
    Rational worst = 0, spread = 0;
    for (std::size_t s = 0; s < expected.size(); ++s) {
        Rational err = observed[s] > expected[s] ? observed[s] - expected[s]
                                                 : expected[s] - observed[s];
        if (err > worst) worst = err;
        Rational p = expected[s] * (1 - expected[s]);
        if (p > spread) spread = p;
    }
    // err <= 3*sqrt(spread/sigma), squared so it stays rational
    return worst * worst * Rational(Integer(sigma)) <= 9 * spread;
}

ExperimentReport two_slit_demo(const BasisChange& u, const std::vector<PairNumber>& coeffs,
                               const InstrumentRep& target) {
    require(coeffs.size() == 2, "two-slit demo runs at dimension 2");
    require(u.matrix().size() == 2, "two-slit demo needs a 2x2 basis change");
    require(target.id == u.to_id(),
            "target instrument '" + target.id + "' is not the change's destination basis");
    require(target.dimension() == 2, "target instrument must have dimension 2");
    require(!(coeffs[0].is_zero() && coeffs[1].is_zero()),
            "two-slit demo needs at least one nonzero coefficient");

    auto slit_state = [&](std::size_t k) {
        StateVector v = zero_state(u.from_id(), 2);
        v.coords[k] = coeffs[k];
        return v;
    };
    auto measured_nu = [&](const StateVector& v) {
        return measure(change_basis(v, u), target).nu;
    };

    StateVector both = zero_state(u.from_id(), 2);
    both.coords[0] = coeffs[0];
    both.coords[1] = coeffs[1];
    std::vector<Rational> superposed = measured_nu(both);

    std::optional<std::vector<Rational>> slit[2];
    for (std::size_t k = 0; k < 2; ++k)
        if (!coeffs[k].is_zero()) slit[k] = measured_nu(slit_state(k));

    json observations;
    observations["superposed_nu"] = json_of(superposed);
    observations["component_nu"] =
        json::array({slit[0] ? json_of(*slit[0]) : json(nullptr),
                     slit[1] ? json_of(*slit[1]) : json(nullptr)});

    bool verdict = true;
    json zero_outcomes = json::array();
    if (slit[0] && slit[1]) {
        for (std::size_t s = 0; s < superposed.size(); ++s)
            if (superposed[s] == 0 && (*slit[0])[s] > 0 && (*slit[1])[s] > 0)
                zero_outcomes.push_back(s);
        bool zero_present = !zero_outcomes.empty();

        // classical w-combinations on the 1/128 grid
        bool grid_all_positive = true;
        bool grid_contains_superposed = false;
        for (int k = 0; k <= 128; ++k) {
            std::vector<Rational> combo = convex_mix(*slit[0], *slit[1], Rational(k, 128));
            if (strictly_positive(*slit[0]) && strictly_positive(*slit[1]) &&
                !strictly_positive(combo))
                grid_all_positive = false;
            if (combo == superposed) grid_contains_superposed = true;
        }
        observations["interference_zero_outcomes"] = zero_outcomes;
        observations["grid_step"] = "1/128";
        observations["grid_all_positive"] = grid_all_positive;
        observations["grid_contains_superposed"] = grid_contains_superposed;
        verdict = grid_all_positive && (!zero_present || !grid_contains_superposed);
    } else {
        // one slit: no interference, the superposition is the lone component
        const auto& lone = slit[0] ? *slit[0] : *slit[1];
        observations["matches_single_component"] = (superposed == lone);
        verdict = (superposed == lone);
    }

    ExperimentReport report;
    report.name = "two_slit_demo";
    report.inputs_json = json{{"basis_change", json_of(u)},
                              {"coeffs", json::array({json_of(coeffs[0]), json_of(coeffs[1])})},
                              {"target", target.id}}
                             .dump();
    report.observations_json = observations.dump();
    report.verdict = verdict;
    return report;
}

ExperimentReport classical_positivity_check(std::uint32_t trials, std::uint64_t seed) {
    require(trials >= 1, "positivity check needs trials >= 1");
    std::uint64_t state = seed;
    auto draw = [&state](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return lo + z % (hi - lo + 1);
    };
    auto random_positive_stats = [&](std::size_t k) {
        std::vector<Integer> raw(k);
        Integer total = 0;
        for (auto& v : raw) {
            v = Integer(draw(1, 1000));
            total += v;
        }
        std::vector<Rational> nu;
        nu.reserve(k);
        for (const auto& v : raw) nu.emplace_back(v, total);
        return nu;
    };

    std::uint32_t zeros = 0;
    std::uint32_t boundary_failures = 0;
    for (std::uint32_t t = 0; t < trials; ++t) {
        std::size_t k = static_cast<std::size_t>(draw(2, 4));
        std::vector<Rational> s1 = random_positive_stats(k);
        std::vector<Rational> s2 = random_positive_stats(k);
        std::uint64_t q = draw(2, 1000);
        Rational w(Integer(draw(1, q - 1)), Integer(q));
        if (!strictly_positive(convex_mix(s1, s2, w))) ++zeros;
        if (convex_mix(s1, s2, Rational(0)) != s2) ++boundary_failures;
    }

    ExperimentReport report;
    report.name = "classical_positivity_check";
    report.inputs_json = json{{"trials", trials}, {"seed", seed}}.dump();
    report.observations_json = json{{"zero_count", zeros},
                                    {"boundary_w0_failures", boundary_failures}}
                                   .dump();
    report.verdict = (zeros == 0 && boundary_failures == 0);
    return report;
}

ExperimentReport convergence_study(const std::vector<Rational>& nu,
                                   const std::vector<std::uint64_t>& sigma_schedule,
                                   std::uint64_t seed) {
    require(!sigma_schedule.empty(), "convergence study needs a non-empty schedule");
    for (std::size_t i = 1; i < sigma_schedule.size(); ++i)
        require(sigma_schedule[i] > sigma_schedule[i - 1],
                "convergence schedule must be strictly increasing");

    IngestTarget target;
    target.instrument_id = "convergence";
    for (std::size_t s = 0; s < nu.size(); ++s)
        target.outcome_symbols.push_back("o" + std::to_string(s));
    std::vector<Rational> kappa_spec(nu.size(), Rational(1, 2));

    Rational spread = 0;
    for (const auto& p : nu)
        if (p * (1 - p) > spread) spread = p * (1 - p);

    bool verdict = true;
    json rounds = json::array();
    for (std::size_t i = 0; i < sigma_schedule.size(); ++i) {
        std::uint64_t sigma = sigma_schedule[i];
        SimulationSpec spec{nu, sigma, target.instrument_id};
        auto stream = simulate_clicks(spec, mix_seed(seed, i));
        EnsembleBrace brace = ingest_clicks(stream, target, kappa_spec);
        BraceStatistics stats = extract_stats(brace);
        Rational err =
            max_abs_deviation(nu, target.outcome_symbols, stats.nu, stats.outcome_symbols);
        bool within = err * err * Rational(Integer(sigma)) <= 9 * spread;
        if (!within) verdict = false;
        rounds.push_back(json{{"sigma", sigma},
                              {"max_error", json_of(err)},
                              {"max_error_approx", to_double(err)},
                              {"bound_approx", 3.0 * std::sqrt(to_double(spread) /
                                                               static_cast<double>(sigma))},
                              {"within_bound", within}});
    }

    ExperimentReport report;
    report.name = "convergence_study";
    report.inputs_json =
        json{{"nu", json_of(nu)}, {"schedule", sigma_schedule}, {"seed", seed}}.dump();
    report.observations_json = json{{"rounds", rounds}}.dump();
    report.verdict = verdict;
    return report;
}

} // namespace clickstate
