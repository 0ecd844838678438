#ifndef CLICKSTATE_STATESPACE_HPP
#define CLICKSTATE_STATESPACE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ensemble.hpp"
#include "pairnum.hpp"
#include "rational.hpp"

namespace clickstate {

/// Session-level dimension constant. Finite at desk scale; every vector
/// and instrument must conform to it.
struct DimensionConfig {
    std::size_t dimension = 2;

    explicit DimensionConfig(std::size_t d = 2);
    static constexpr std::size_t kMin = 2;
    static constexpr std::size_t kMax = 64;
};

/// D eigen symbols with numeric spectral labels. Symbols are pairwise
/// distinct; labels may repeat (degeneracy: a coarser instrument).
struct InstrumentRep {
    std::string id;
    std::vector<Primitive> eigen_symbols;
    std::vector<Rational> spectral_labels;

    InstrumentRep() = default;
    InstrumentRep(std::string id_, std::vector<Primitive> symbols, std::vector<Rational> labels);

    std::size_t dimension() const { return eigen_symbols.size(); }
};

/// Coordinates of a state in a named instrument basis.
struct StateVector {
    std::string basis_id;
    std::vector<PairNumber> coords;

    bool is_zero() const;
    bool operator==(const StateVector& o) const {
        return basis_id == o.basis_id && coords == o.coords;
    }
};

using PairMatrix = std::vector<std::vector<PairNumber>>;

/// Exact inverse over the pair-number field; empty when singular.
std::optional<PairMatrix> invert_matrix(const PairMatrix& matrix);

PairMatrix identity_matrix(std::size_t d);

/// An invertible coordinate transformation between two instrument bases.
/// Singular matrices are rejected at construction, and the exact inverse
/// is computed once and kept.
class BasisChange {
public:
    BasisChange(std::string from_id, std::string to_id, PairMatrix matrix);

    const std::string& from_id() const { return from_; }
    const std::string& to_id() const { return to_; }
    const PairMatrix& matrix() const { return matrix_; }

    /// The reverse transformation (to -> from) with the inverse matrix.
    BasisChange inverted() const;

private:
    std::string from_;
    std::string to_;
    PairMatrix matrix_;
    PairMatrix inverse_;
};

/// Fine-grained nu per eigen symbol plus the push-forward onto distinct
/// spectral labels (degenerate labels aggregate their nu).
struct MeasurementResult {
    std::vector<Primitive> outcome_symbols;
    std::vector<Rational> nu;
    std::vector<std::pair<Rational, Rational>> label_stats; // (label, summed nu), sorted by label
};

struct MixtureState {
    struct Component {
        StateVector state;
        Rational weight;
    };
    explicit MixtureState(std::vector<Component> components);
    const std::vector<Component>& components() const { return components_; }

private:
    std::vector<Component> components_;
};

/// Lookup of registered basis changes; direct and inverse directions both
/// resolve. Implemented by the session registry.
class BasisResolver {
public:
    virtual ~BasisResolver() = default;
    virtual std::optional<BasisChange> resolve(const std::string& from,
                                               const std::string& to) const = 0;
};

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------

StateVector zero_state(const std::string& basis_id, std::size_t dimension);

/// Coordinatewise vector addition in a shared basis.
StateVector add_states(const StateVector& a, const StateVector& b);

/// Scalar action: every coordinate multiplied by c.
StateVector scale_state(const PairNumber& c, const StateVector& v);

/// Sum of scalar_i * vector_i. All vectors must share a basis, or be
/// convertible to the first term's basis through `resolver`.
StateVector superpose(const std::vector<std::pair<PairNumber, StateVector>>& terms,
                      const BasisResolver* resolver = nullptr);

/// Matrix-vector product over the pair-number field; the round trip
/// through the inverted change restores the input exactly.
StateVector change_basis(const StateVector& v, const BasisChange& u);

/// Expresses v in `basis_id`, using the resolver when the bases differ.
StateVector express_in_basis(const StateVector& v, const std::string& basis_id,
                             const BasisResolver* resolver);

/// The scalar c with w = c*v, when one exists. Both vectors must be
/// nonzero and share a basis.
std::optional<PairNumber> ray_equivalent(const StateVector& v, const StateVector& w);

/// Per-coordinate weight behind the measurement map. The default is
/// |c|^2 = n^2 + m^2; replacements are admissible only when they keep the
/// induced statistics ray- and involution-invariant (see
/// verify_measurement_map).
using CoordinateWeight = std::function<Rational(const PairNumber&)>;

CoordinateWeight default_measurement_weight();

/// Default measurement map: nu_s = |c_s|^2 / sum_k |c_k|^2, exactly.
/// Rejects the zero vector ("no statistics") and basis mismatches that the
/// resolver cannot bridge. Invariant under nonzero scaling of v and under
/// both componentwise involutions.
MeasurementResult measure(const StateVector& v, const InstrumentRep& instrument,
                          const BasisResolver* resolver = nullptr);

/// Measurement with a caller-supplied coordinate weight.
MeasurementResult measure_with_map(const StateVector& v, const InstrumentRep& instrument,
                                   const CoordinateWeight& weight,
                                   const BasisResolver* resolver = nullptr);

struct MapConstraintReport {
    std::vector<AxiomCheck> checks; // ray_invariance, involution_invariance
    bool verdict = false;
};

/// The two hard constraints any measurement map must satisfy: statistics
/// unchanged under nonzero scaling of the state and under componentwise
/// conjugation/swap. Randomized and exact; a map that throws or deviates
/// on any sample fails.
MapConstraintReport verify_measurement_map(const CoordinateWeight& weight,
                                           std::size_t dimension, std::uint32_t trials,
                                           std::uint64_t seed);

/// Basis vector: (1,0) at `index`, (0,0) elsewhere.
StateVector eigenstate(const InstrumentRep& instrument, std::size_t index);

/// Relabels the spectrum through `merge` (which must cover every distinct
/// label); eigen symbols are untouched. Measuring with the coarse
/// instrument aggregates label_stats exactly as `merge` dictates.
InstrumentRep coarse_grain(const InstrumentRep& instrument,
                           const std::vector<std::pair<Rational, Rational>>& merge);

/// Classical w-combination of the component measurements.
MeasurementResult measure_mixture(const MixtureState& m, const InstrumentRep& instrument,
                                  const BasisResolver* resolver = nullptr);

// ---------------------------------------------------------------------------
// Axiom verification.
// ---------------------------------------------------------------------------

using ScalarAction = std::function<PairNumber(const PairNumber&, const PairNumber&)>;

struct LvsReport {
    std::size_t dimension = 0;
    std::uint32_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<AxiomCheck> checks;
    bool verdict = false;
};

/// Randomized exact check of the vector-space identities: the additive
/// group laws and the four scalar-action compatibility rules. The scalar
/// action is injectable so a planted mutation is provably detected.
LvsReport verify_lvs_axioms(std::size_t dimension, std::uint32_t trials, std::uint64_t seed,
                            const ScalarAction& action);
LvsReport verify_lvs_axioms(std::size_t dimension, std::uint32_t trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Statistics round-trip tooling (never used by the algebra core).
// ---------------------------------------------------------------------------

/// Encodes extracted (nu, kappa) statistics into coordinates
/// (r*cos(2*pi*kappa), r*sin(2*pi*kappa)) with r^2 = nu, rationalized by
/// nearest-rational rounding at `denominator_bound`. Outcomes the brace
/// never saw get zero coordinates.
StateVector state_from_stats(const BraceStatistics& stats, const InstrumentRep& instrument,
                             const Integer& denominator_bound);

} // namespace clickstate

#endif
