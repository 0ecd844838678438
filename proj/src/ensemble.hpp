#ifndef CLICKSTATE_ENSEMBLE_HPP
#define CLICKSTATE_ENSEMBLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rational.hpp"

namespace clickstate {

/// Opaque outcome identifier; compared by exact equality only.
using Primitive = std::string;

/// One micro-event: which instrument clicked, and at which outcome.
struct ClickRecord {
    std::string instrument_id;
    std::uint32_t outcome_index = 0;

    bool operator==(const ClickRecord& o) const {
        return instrument_id == o.instrument_id && outcome_index == o.outcome_index;
    }
};

/// Single-outcome building block: two upper counts over one outcome symbol.
struct UnitaryBrace {
    Primitive outcome;
    Integer count_psi; // copies of the first ingoing primitive
    Integer count_phi; // copies of the second

    Integer total() const { return count_psi + count_phi; }
};

/// Per-outcome aggregate of unitary braces; the raw statistical object.
/// Outcome symbols are pairwise distinct; the empty brace is the zero class.
class EnsembleBrace {
public:
    EnsembleBrace() = default;
    explicit EnsembleBrace(std::vector<UnitaryBrace> entries);

    const std::vector<UnitaryBrace>& entries() const { return entries_; }
    Integer sigma() const;
    bool is_zero_class() const { return entries_.empty(); }

    bool operator==(const EnsembleBrace& o) const;

private:
    std::vector<UnitaryBrace> entries_;
};

/// The (nu, kappa) data extracted from a brace. nu sums to exactly 1 and
/// every kappa lies in [0,1]; the three sequences run in parallel.
struct BraceStatistics {
    std::vector<Primitive> outcome_symbols;
    std::vector<Rational> nu;
    std::vector<Rational> kappa;
};

/// A finite (kappa, sigma) composition element. Realizable: kappa*sigma is
/// an integer, so the pair is backed by integer cardinals.
struct KappaSigmaPair {
    Rational kappa;
    Integer sigma;

    KappaSigmaPair(Rational kappa_, Integer sigma_);
};

struct BraceMixture {
    struct Component {
        EnsembleBrace brace;
        Rational weight; // in (0,1]
    };
    explicit BraceMixture(std::vector<Component> components);
    const std::vector<Component>& components() const { return components_; }

private:
    std::vector<Component> components_;
};

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------

/// Componentwise union; missing outcomes count as (0,0). Commutative and
/// associative; sigma adds.
EnsembleBrace union_braces(const EnsembleBrace& a, const EnsembleBrace& b);

/// Scales every count by k (a positive rational). Rejects k that would
/// produce fractional counts; the extracted statistics are unchanged.
EnsembleBrace replicate_brace(const EnsembleBrace& b, const Rational& k);

/// Exact (nu, kappa) extraction. Rejects the zero-class brace and braces
/// with an empty entry (kappa is undefined there).
BraceStatistics extract_stats(const EnsembleBrace& b);

/// ((k'S' + k''S'')/(S'+S''), S'+S''); agrees with pooling the underlying
/// integer cardinals.
KappaSigmaPair compose_kappa(const KappaSigmaPair& p, const KappaSigmaPair& q);

/// w*s1 + (1-w)*s2 componentwise; both inputs must sum to 1 and have equal
/// length, and the result sums to 1.
std::vector<Rational> convex_mix(const std::vector<Rational>& s1, const std::vector<Rational>& s2,
                                 const Rational& w);

struct SimulationSpec {
    std::vector<Rational> nu; // must sum to exactly 1, entries in [0,1]
    std::uint64_t sigma = 0;  // >= 1
    std::string instrument_id;
};

/// Draws exactly sigma records i.i.d. from nu. Pure function of
/// (spec, seed): the same arguments always produce the same stream.
std::vector<ClickRecord> simulate_clicks(const SimulationSpec& spec, std::uint64_t seed);

/// Instrument arity is all ingestion needs to know about the instrument.
struct IngestTarget {
    std::string instrument_id;
    std::vector<Primitive> outcome_symbols;
};

/// Builds a brace from a click stream. Entry totals are the click counts
/// per outcome (outcomes with no clicks are omitted); the upper counts are
/// apportioned from kappa_spec by round-half-up, remainder to count_phi.
EnsembleBrace ingest_clicks(const std::vector<ClickRecord>& stream, const IngestTarget& target,
                            const std::vector<Rational>& kappa_spec);

/// Weighted nu of a mixture: sum of rho_i * extract_stats(component_i).nu.
/// All components must share one outcome-symbol universe; the result is
/// aligned to the first component's symbol order.
std::vector<Rational> mix_braces(const BraceMixture& m);

/// Symbol order of the first component (the alignment used by mix_braces).
std::vector<Primitive> mixture_outcome_universe(const BraceMixture& m);

} // namespace clickstate

#endif
