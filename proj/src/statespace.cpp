#include "statespace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace clickstate {

namespace {

void require(bool cond, const std::string& message) {
    if (!cond) throw invariant_violation(message);
}

std::string render_pair(const PairNumber& a) {
    return "(" + to_string(a.n) + "," + to_string(a.m) + ")";
}

std::string render_state(const StateVector& v) {
    std::string out = v.basis_id + ":[";
    for (std::size_t i = 0; i < v.coords.size(); ++i) {
        if (i) out += ",";
        out += render_pair(v.coords[i]);
    }
    return out + "]";
}

} // namespace

DimensionConfig::DimensionConfig(std::size_t d) : dimension(d) {
    if (d < kMin || d > kMax) {
        std::ostringstream msg;
        msg << "dimension must lie in [" << kMin << "," << kMax << "], got " << d;
        throw invariant_violation(msg.str());
    }
}

InstrumentRep::InstrumentRep(std::string id_, std::vector<Primitive> symbols,
                             std::vector<Rational> labels)
    : id(std::move(id_)), eigen_symbols(std::move(symbols)), spectral_labels(std::move(labels)) {
    require(eigen_symbols.size() >= DimensionConfig::kMin,
            "instrument '" + id + "' needs at least 2 eigen symbols");
    require(spectral_labels.size() == eigen_symbols.size(),
            "instrument '" + id + "': one spectral label per eigen symbol");
    for (std::size_t i = 0; i < eigen_symbols.size(); ++i)
        for (std::size_t j = i + 1; j < eigen_symbols.size(); ++j)
            require(eigen_symbols[i] != eigen_symbols[j],
                    "instrument '" + id + "': eigen symbols must be pairwise distinct");
}

bool StateVector::is_zero() const {
    for (const auto& c : coords)
        if (!c.is_zero()) return false;
    return true;
}

PairMatrix identity_matrix(std::size_t d) {
    PairMatrix m(d, std::vector<PairNumber>(d, PairNumber::zero()));
    for (std::size_t i = 0; i < d; ++i) m[i][i] = PairNumber::one();
    return m;
}

std::optional<PairMatrix> invert_matrix(const PairMatrix& matrix) {
    const std::size_t d = matrix.size();
    for (const auto& row : matrix)
        if (row.size() != d) throw invariant_violation("basis-change matrix must be square");

    // Gauss-Jordan over the exact pair-number field.
    PairMatrix a = matrix;
    PairMatrix inv = identity_matrix(d);
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        while (pivot < d && a[pivot][col].is_zero()) ++pivot;
        if (pivot == d) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        PairNumber scale = pair_inverse(a[col][col]);
        for (std::size_t j = 0; j < d; ++j) {
            a[col][j] = pair_mul(scale, a[col][j]);
            inv[col][j] = pair_mul(scale, inv[col][j]);
        }
        for (std::size_t row = 0; row < d; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            PairNumber factor = a[row][col];
            for (std::size_t j = 0; j < d; ++j) {
                a[row][j] = pair_sub(a[row][j], pair_mul(factor, a[col][j]));
                inv[row][j] = pair_sub(inv[row][j], pair_mul(factor, inv[col][j]));
            }
        }
    }
    return inv;
}

BasisChange::BasisChange(std::string from_id, std::string to_id, PairMatrix matrix)
    : from_(std::move(from_id)), to_(std::move(to_id)), matrix_(std::move(matrix)) {
    require(!matrix_.empty(), "basis-change matrix must be non-empty");
    auto inv = invert_matrix(matrix_);
    if (!inv)
        throw invariant_violation("basis change " + from_ + "->" + to_ +
                                  ": matrix is singular over the pair-number field");
    inverse_ = std::move(*inv);
}

BasisChange BasisChange::inverted() const {
    BasisChange out(to_, from_, inverse_);
    return out;
}

MixtureState::MixtureState(std::vector<Component> components)
    : components_(std::move(components)) {
    require(!components_.empty(), "mixture needs at least one component");
    Rational sum = 0;
    for (const auto& c : components_) {
        require(c.weight > 0 && c.weight <= 1, "mixture weights must lie in (0,1]");
        sum += c.weight;
    }
    require(sum == 1, "mixture weights must sum to exactly 1");
}

StateVector zero_state(const std::string& basis_id, std::size_t dimension) {
    return StateVector{basis_id, std::vector<PairNumber>(dimension, PairNumber::zero())};
}

StateVector add_states(const StateVector& a, const StateVector& b) {
    require(a.basis_id == b.basis_id, "vector addition needs a shared basis");
    require(a.coords.size() == b.coords.size(), "vector addition needs equal dimensions");
    StateVector out{a.basis_id, {}};
    out.coords.reserve(a.coords.size());
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        out.coords.push_back(pair_add(a.coords[i], b.coords[i]));
    return out;
}

StateVector scale_state(const PairNumber& c, const StateVector& v) {
    StateVector out{v.basis_id, {}};
    out.coords.reserve(v.coords.size());
    for (const auto& x : v.coords) out.coords.push_back(pair_mul(c, x));
    return out;
}

StateVector change_basis(const StateVector& v, const BasisChange& u) {
    require(v.basis_id == u.from_id(),
            "state is in basis '" + v.basis_id + "', change expects '" + u.from_id() + "'");
    require(!u.matrix().empty() && u.matrix().size() == v.coords.size(),
            "basis-change matrix dimension does not match the state");
    StateVector out{u.to_id(), std::vector<PairNumber>(v.coords.size(), PairNumber::zero())};
    for (std::size_t i = 0; i < u.matrix().size(); ++i)
        for (std::size_t j = 0; j < v.coords.size(); ++j)
            out.coords[i] = pair_add(out.coords[i], pair_mul(u.matrix()[i][j], v.coords[j]));
    return out;
}

StateVector express_in_basis(const StateVector& v, const std::string& basis_id,
                             const BasisResolver* resolver) {
    if (v.basis_id == basis_id) return v;
    if (resolver) {
        if (auto u = resolver->resolve(v.basis_id, basis_id)) return change_basis(v, *u);
    }
    throw invariant_violation("no registered basis change from '" + v.basis_id + "' to '" +
                              basis_id + "'");
}

StateVector superpose(const std::vector<std::pair<PairNumber, StateVector>>& terms,
                      const BasisResolver* resolver) {
    require(!terms.empty(), "superposition needs at least one term");
    const std::string& basis = terms.front().second.basis_id;
    StateVector acc = zero_state(basis, terms.front().second.coords.size());
    for (const auto& [scalar, vector] : terms) {
        StateVector aligned = express_in_basis(vector, basis, resolver);
        require(aligned.coords.size() == acc.coords.size(),
                "superposition terms must share the dimension");
        acc = add_states(acc, scale_state(scalar, aligned));
    }
    return acc;
}

std::optional<PairNumber> ray_equivalent(const StateVector& v, const StateVector& w) {
    if (v.is_zero() || w.is_zero())
        throw invariant_violation("ray comparison is undefined for the zero vector");
    require(v.basis_id == w.basis_id, "ray comparison needs a shared basis");
    require(v.coords.size() == w.coords.size(), "ray comparison needs equal dimensions");
    std::size_t anchor = 0;
    while (v.coords[anchor].is_zero()) ++anchor;
    PairNumber c = pair_mul(w.coords[anchor], pair_inverse(v.coords[anchor]));
    if (scale_state(c, v) == w && !c.is_zero()) return c;
    return std::nullopt;
}

CoordinateWeight default_measurement_weight() {
    return [](const PairNumber& c) { return pair_norm_sq(c); };
}

MeasurementResult measure(const StateVector& v, const InstrumentRep& instrument,
                          const BasisResolver* resolver) {
    return measure_with_map(v, instrument, default_measurement_weight(), resolver);
}

MeasurementResult measure_with_map(const StateVector& v, const InstrumentRep& instrument,
                                   const CoordinateWeight& weight,
                                   const BasisResolver* resolver) {
    if (v.is_zero()) throw invariant_violation("zero vector has no statistics");
    StateVector aligned = express_in_basis(v, instrument.id, resolver);
    require(aligned.coords.size() == instrument.dimension(),
            "state dimension does not match instrument '" + instrument.id + "'");

    Rational total = 0;
    std::vector<Rational> weights;
    weights.reserve(aligned.coords.size());
    for (const auto& c : aligned.coords) {
        weights.push_back(weight(c));
        require(weights.back() >= 0, "measurement map produced a negative weight");
        total += weights.back();
    }
    require(total > 0, "measurement map assigns zero total weight to a nonzero state");

    MeasurementResult result;
    result.outcome_symbols = instrument.eigen_symbols;
    std::map<Rational, Rational> by_label;
    for (std::size_t s = 0; s < weights.size(); ++s) {
        Rational nu = weights[s] / total;
        result.nu.push_back(nu);
        by_label[instrument.spectral_labels[s]] += nu;
    }
    result.label_stats.assign(by_label.begin(), by_label.end());
    return result;
}

StateVector eigenstate(const InstrumentRep& instrument, std::size_t index) {
    if (index >= instrument.dimension()) {
        std::ostringstream msg;
        msg << "eigenstate index " << index << " out of range for instrument '" << instrument.id
            << "' (dimension " << instrument.dimension() << ")";
        throw invariant_violation(msg.str());
    }
    StateVector v = zero_state(instrument.id, instrument.dimension());
    v.coords[index] = PairNumber::one();
    return v;
}

InstrumentRep coarse_grain(const InstrumentRep& instrument,
                           const std::vector<std::pair<Rational, Rational>>& merge) {
    std::map<Rational, Rational> map(merge.begin(), merge.end());
    std::vector<Rational> relabeled;
    relabeled.reserve(instrument.spectral_labels.size());
    for (const auto& label : instrument.spectral_labels) {
        auto it = map.find(label);
        require(it != map.end(),
                "coarse_grain: merge map must cover spectral label " + to_string(label));
        relabeled.push_back(it->second);
    }
    return InstrumentRep(instrument.id, instrument.eigen_symbols, std::move(relabeled));
}

MeasurementResult measure_mixture(const MixtureState& m, const InstrumentRep& instrument,
                                  const BasisResolver* resolver) {
    MeasurementResult result;
    result.outcome_symbols = instrument.eigen_symbols;
    result.nu.assign(instrument.dimension(), Rational(0));
    for (const auto& component : m.components()) {
        MeasurementResult part = measure(component.state, instrument, resolver);
        for (std::size_t s = 0; s < result.nu.size(); ++s)
            result.nu[s] += component.weight * part.nu[s];
    }
    std::map<Rational, Rational> by_label;
    for (std::size_t s = 0; s < result.nu.size(); ++s)
        by_label[instrument.spectral_labels[s]] += result.nu[s];
    result.label_stats.assign(by_label.begin(), by_label.end());
    return result;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t lvs_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

StateVector random_state(std::uint64_t& state, const std::string& basis, std::size_t d) {
    StateVector v{basis, {}};
    v.coords.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        // one coordinate in eight is exactly zero, to exercise the edges
        if (lvs_next(state) % 8 == 0)
            v.coords.push_back(PairNumber::zero());
        else
            v.coords.push_back(random_pair(state));
    }
    return v;
}

StateVector act(const ScalarAction& action, const PairNumber& c, const StateVector& v) {
    StateVector out{v.basis_id, {}};
    out.coords.reserve(v.coords.size());
    for (const auto& x : v.coords) out.coords.push_back(action(c, x));
    return out;
}

} // namespace

LvsReport verify_lvs_axioms(std::size_t dimension, std::uint32_t trials, std::uint64_t seed,
                            const ScalarAction& action) {
    require(trials >= 1, "axiom verification needs trials >= 1");
    DimensionConfig config(dimension);
    LvsReport report;
    report.dimension = dimension;
    report.trials = trials;
    report.seed = seed;

    const char* names[] = {
        "vector_add_commutative", "vector_add_associative", "vector_add_zero",
        "vector_add_inverse",     "unity_scalar_action",    "scalar_action_composes",
        "scalar_add_distributes", "vector_add_distributes",
    };
    for (const char* name : names) report.checks.push_back(AxiomCheck{name, trials, 0, ""});

    const std::string basis = "lvs";
    const StateVector zero = zero_state(basis, dimension);
    std::uint64_t state = seed;
    for (std::uint32_t t = 0; t < trials; ++t) {
        StateVector v = random_state(state, basis, dimension);
        StateVector w = random_state(state, basis, dimension);
        StateVector x = random_state(state, basis, dimension);
        PairNumber a = random_pair(state);
        PairNumber b = random_pair(state);

        const bool results[] = {
            add_states(v, w) == add_states(w, v),
            add_states(add_states(v, w), x) == add_states(v, add_states(w, x)),
            add_states(v, zero) == v,
            add_states(v, act(action, pair_neg(PairNumber::one()), v)) == zero,
            act(action, PairNumber::one(), v) == v,
            act(action, a, act(action, b, v)) == act(action, pair_mul(a, b), v),
            act(action, pair_add(a, b), v) == add_states(act(action, a, v), act(action, b, v)),
            act(action, a, add_states(v, w)) == add_states(act(action, a, v), act(action, a, w)),
        };
        for (std::size_t k = 0; k < std::size(results); ++k) {
            if (!results[k]) {
                auto& chk = report.checks[k];
                if (chk.failures == 0) {
                    std::ostringstream wtn;
                    wtn << "a=" << render_pair(a) << " b=" << render_pair(b)
                        << " v=" << render_state(v) << " w=" << render_state(w);
                    chk.witness = wtn.str();
                }
                ++chk.failures;
            }
        }
    }

    report.verdict = true;
    for (const auto& chk : report.checks)
        if (chk.failures != 0) report.verdict = false;
    return report;
}

LvsReport verify_lvs_axioms(std::size_t dimension, std::uint32_t trials, std::uint64_t seed) {
    return verify_lvs_axioms(dimension, trials, seed,
                             [](const PairNumber& c, const PairNumber& x) { return pair_mul(c, x); });
}

MapConstraintReport verify_measurement_map(const CoordinateWeight& weight,
                                           std::size_t dimension, std::uint32_t trials,
                                           std::uint64_t seed) {
    require(trials >= 1, "map verification needs trials >= 1");
    DimensionConfig config(dimension);
    InstrumentRep probe = [&] {
        std::vector<Primitive> symbols;
        std::vector<Rational> labels;
        for (std::size_t s = 0; s < dimension; ++s) {
            symbols.push_back("p" + std::to_string(s));
            labels.emplace_back(static_cast<long>(s));
        }
        return InstrumentRep("p", symbols, labels);
    }();

    MapConstraintReport report;
    report.checks.push_back(AxiomCheck{"ray_invariance", trials, 0, ""});
    report.checks.push_back(AxiomCheck{"involution_invariance", trials, 0, ""});

    std::uint64_t state = seed;
    for (std::uint32_t t = 0; t < trials; ++t) {
        StateVector v{"p", {}};
        do {
            v.coords.clear();
            for (std::size_t i = 0; i < dimension; ++i) v.coords.push_back(random_pair(state));
        } while (v.is_zero());
        PairNumber c = random_nonzero_pair(state);

        StateVector conjed{"p", {}}, swapped{"p", {}};
        for (const auto& x : v.coords) {
            conjed.coords.push_back(involution(x, Involution::conj));
            swapped.coords.push_back(involution(x, Involution::swap));
        }

        auto note_failure = [&](std::size_t which) {
            auto& chk = report.checks[which];
            if (chk.failures == 0) {
                std::ostringstream wtn;
                wtn << "c=" << render_pair(c) << " v=" << render_state(v);
                chk.witness = wtn.str();
            }
            ++chk.failures;
        };

        try {
            MeasurementResult base = measure_with_map(v, probe, weight);
            if (measure_with_map(scale_state(c, v), probe, weight).nu != base.nu)
                note_failure(0);
            if (measure_with_map(conjed, probe, weight).nu != base.nu ||
                measure_with_map(swapped, probe, weight).nu != base.nu)
                note_failure(1);
        } catch (const invariant_violation&) {
            // a map that cannot even produce statistics fails both constraints
            note_failure(0);
            note_failure(1);
        }
    }

    report.verdict = report.checks[0].failures == 0 && report.checks[1].failures == 0;
    return report;
}

StateVector state_from_stats(const BraceStatistics& stats, const InstrumentRep& instrument,
                             const Integer& denominator_bound) {
    StateVector v = zero_state(instrument.id, instrument.dimension());
    for (std::size_t k = 0; k < stats.outcome_symbols.size(); ++k) {
        auto it = std::find(instrument.eigen_symbols.begin(), instrument.eigen_symbols.end(),
                            stats.outcome_symbols[k]);
        if (it == instrument.eigen_symbols.end())
            throw invariant_violation("statistics mention outcome '" + stats.outcome_symbols[k] +
                                      "' unknown to instrument '" + instrument.id + "'");
        std::size_t s = static_cast<std::size_t>(it - instrument.eigen_symbols.begin());
        double r = std::sqrt(to_double(stats.nu[k]));
        double phase = 2.0 * M_PI * to_double(stats.kappa[k]);
        v.coords[s] = PairNumber{nearest_rational(r * std::cos(phase), denominator_bound),
                                 nearest_rational(r * std::sin(phase), denominator_bound)};
    }
    return v;
}

} // namespace clickstate
