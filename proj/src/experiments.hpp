#ifndef CLICKSTATE_EXPERIMENTS_HPP
#define CLICKSTATE_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ensemble.hpp"
#include "statespace.hpp"

namespace clickstate {

/// Scripted desk-scale demonstration with a machine-checkable verdict.
/// The verdict is derived purely from the recorded observations.
struct ExperimentReport {
    std::string name;
    std::string inputs_json;       // serialized parameters, for reproduction
    std::string observations_json; // named numeric results
    bool verdict = false;
};

/// D=2 interference contrast. Sends each component coefficient through the
/// basis change alone and superposed, measures all three in the target
/// basis, and reports whether the superposition shows an exact zero where
/// both lone components are nonzero. Also scans the classical
/// w-combinations of the component statistics on a 1/128 grid: none may
/// contain a zero, and none may reproduce the superposed statistics.
ExperimentReport two_slit_demo(const BasisChange& u, const std::vector<PairNumber>& coeffs,
                               const InstrumentRep& target);

/// Convex combinations of strictly positive statistics stay strictly
/// positive: over `trials` random pairs and weights, any zero fails.
ExperimentReport classical_positivity_check(std::uint32_t trials, std::uint64_t seed);

/// simulate -> ingest -> extract at each scheduled sigma, recording the
/// worst-case deviation from the requested nu. Passes when every deviation
/// stays within the 3-sigma binomial bound.
ExperimentReport convergence_study(const std::vector<Rational>& nu,
                                   const std::vector<std::uint64_t>& sigma_schedule,
                                   std::uint64_t seed);

/// Exact check: max_s |observed_s - expected_s| <= 3*sqrt(max_p p(1-p)/sigma),
/// compared as squared rationals so no square root is ever taken.
bool within_binomial_bound(const std::vector<Rational>& expected,
                           const std::vector<Rational>& observed, std::uint64_t sigma);

/// Worst-case |observed - expected| over the expected sequence; outcomes
/// missing from `observed_symbols` count as observed 0.
Rational max_abs_deviation(const std::vector<Rational>& expected,
                           const std::vector<Primitive>& expected_symbols,
                           const std::vector<Rational>& observed,
                           const std::vector<Primitive>& observed_symbols);

} // namespace clickstate

#endif
