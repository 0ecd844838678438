#include "ensemble.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace clickstate {

namespace {

void require(bool cond, const std::string& message) {
    if (!cond) throw invariant_violation(message);
}

void check_nu_sequence(const std::vector<Rational>& nu, const std::string& who) {
    Rational sum = 0;
    for (const auto& v : nu) {
        require(v >= 0 && v <= 1, who + ": nu entry outside [0,1]");
        sum += v;
    }
    require(sum == 1, who + ": nu entries must sum to exactly 1");
}

} // namespace

EnsembleBrace::EnsembleBrace(std::vector<UnitaryBrace> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        require(entries_[i].count_psi >= 0 && entries_[i].count_phi >= 0,
                "brace counts must be non-negative");
        for (std::size_t j = i + 1; j < entries_.size(); ++j)
            require(entries_[i].outcome != entries_[j].outcome,
                    "outcome symbols within one brace must be pairwise distinct: " +
                        entries_[i].outcome);
    }
}

Integer EnsembleBrace::sigma() const {
    Integer total = 0;
    for (const auto& e : entries_) total += e.total();
    return total;
}

bool EnsembleBrace::operator==(const EnsembleBrace& o) const {
    if (entries_.size() != o.entries_.size()) return false;
    // order-insensitive: braces are sets of per-outcome entries
    for (const auto& e : entries_) {
        auto it = std::find_if(o.entries_.begin(), o.entries_.end(),
                               [&](const UnitaryBrace& u) { return u.outcome == e.outcome; });
        if (it == o.entries_.end() || it->count_psi != e.count_psi ||
            it->count_phi != e.count_phi)
            return false;
    }
    return true;
}

KappaSigmaPair::KappaSigmaPair(Rational kappa_, Integer sigma_)
    : kappa(std::move(kappa_)), sigma(std::move(sigma_)) {
    require(sigma > 0, "kappa-sigma pair needs a positive sigma");
    require(kappa >= 0 && kappa <= 1, "kappa must lie in [0,1]");
    require(is_integer(kappa * Rational(sigma)),
            "kappa*sigma must be an integer (pair not realizable by cardinals)");
}

BraceMixture::BraceMixture(std::vector<Component> components)
    : components_(std::move(components)) {
    require(!components_.empty(), "mixture needs at least one component");
    Rational sum = 0;
    for (const auto& c : components_) {
        require(c.weight > 0 && c.weight <= 1, "mixture weights must lie in (0,1]");
        sum += c.weight;
    }
    require(sum == 1, "mixture weights must sum to exactly 1");
}

EnsembleBrace union_braces(const EnsembleBrace& a, const EnsembleBrace& b) {
    std::vector<UnitaryBrace> merged = a.entries();
    for (const auto& e : b.entries()) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const UnitaryBrace& u) { return u.outcome == e.outcome; });
        if (it == merged.end())
            merged.push_back(e);
        else {
            it->count_psi += e.count_psi;
            it->count_phi += e.count_phi;
        }
    }
    return EnsembleBrace(std::move(merged));
}

EnsembleBrace replicate_brace(const EnsembleBrace& b, const Rational& k) {
    require(k > 0, "replication factor must be a positive rational");
    std::vector<UnitaryBrace> scaled;
    scaled.reserve(b.entries().size());
    for (const auto& e : b.entries()) {
        Rational psi = k * Rational(e.count_psi);
        Rational phi = k * Rational(e.count_phi);
        if (!is_integer(psi) || !is_integer(phi)) {
            std::ostringstream msg;
            msg << "replication by " << to_string(k) << " is not realizable: outcome '"
                << e.outcome << "' would get fractional counts (" << to_string(psi) << ", "
                << to_string(phi) << ")";
            throw invariant_violation(msg.str());
        }
        scaled.push_back(UnitaryBrace{e.outcome, num(psi), num(phi)});
    }
    return EnsembleBrace(std::move(scaled));
}

BraceStatistics extract_stats(const EnsembleBrace& b) {
    if (b.is_zero_class())
        throw invariant_violation("zero-class brace: no statistics can be extracted");
    Integer sigma = b.sigma();
    BraceStatistics stats;
    for (const auto& e : b.entries()) {
        Integer total = e.total();
        if (total == 0)
            throw invariant_violation("outcome '" + e.outcome +
                                      "' has no events; kappa is undefined there");
        stats.outcome_symbols.push_back(e.outcome);
        stats.nu.emplace_back(total, sigma);
        stats.kappa.emplace_back(e.count_psi, total);
    }
    return stats;
}

KappaSigmaPair compose_kappa(const KappaSigmaPair& p, const KappaSigmaPair& q) {
    Integer sigma = p.sigma + q.sigma;
    Rational kappa =
        (p.kappa * Rational(p.sigma) + q.kappa * Rational(q.sigma)) / Rational(sigma);
    return KappaSigmaPair(kappa, sigma);
}

std::vector<Rational> convex_mix(const std::vector<Rational>& s1, const std::vector<Rational>& s2,
                                 const Rational& w) {
    require(s1.size() == s2.size(), "convex_mix: statistics length mismatch");
    require(w >= 0 && w <= 1, "convex_mix: weight must lie in [0,1]");
    check_nu_sequence(s1, "convex_mix");
    check_nu_sequence(s2, "convex_mix");
    std::vector<Rational> out;
    out.reserve(s1.size());
    for (std::size_t i = 0; i < s1.size(); ++i) out.push_back(w * s1[i] + (1 - w) * s2[i]);
    return out;
}

std::vector<ClickRecord> simulate_clicks(const SimulationSpec& spec, std::uint64_t seed) {
    require(spec.sigma >= 1, "simulation needs sigma >= 1");
    require(!spec.nu.empty(), "simulation needs a non-empty nu");
    check_nu_sequence(spec.nu, "simulate_clicks");

    // Cumulative thresholds scaled to 2^64 so the hot loop is a plain
    // integer comparison. An exact cumulative of 1 is flagged instead of
    // truncated, which keeps degenerate distributions exact.
    struct Threshold {
        std::uint64_t below;
        bool covers_all;
    };
    std::vector<Threshold> thresholds;
    thresholds.reserve(spec.nu.size());
    const Integer two64 = Integer(1) << 64;
    Rational cum = 0;
    for (const auto& v : spec.nu) {
        cum += v;
        Integer scaled = rational_floor(cum * Rational(two64));
        if (scaled >= two64)
            thresholds.push_back({0, true});
        else
            thresholds.push_back({static_cast<std::uint64_t>(scaled), false});
    }

    std::mt19937_64 engine(seed);
    std::vector<ClickRecord> stream;
    stream.reserve(spec.sigma);
    const std::size_t last = spec.nu.size() - 1;
    for (std::uint64_t i = 0; i < spec.sigma; ++i) {
        std::uint64_t u = engine();
        std::size_t s = last;
        for (std::size_t k = 0; k < last; ++k) {
            if (thresholds[k].covers_all || u < thresholds[k].below) {
                s = k;
                break;
            }
        }
        stream.push_back(ClickRecord{spec.instrument_id, static_cast<std::uint32_t>(s)});
    }
    return stream;
}

EnsembleBrace ingest_clicks(const std::vector<ClickRecord>& stream, const IngestTarget& target,
                            const std::vector<Rational>& kappa_spec) {
    require(kappa_spec.size() == target.outcome_symbols.size(),
            "kappa_spec length must equal the instrument arity");
    for (const auto& k : kappa_spec)
        require(k >= 0 && k <= 1, "kappa_spec entries must lie in [0,1]");

    std::vector<Integer> counts(target.outcome_symbols.size(), Integer(0));
    for (std::size_t pos = 0; pos < stream.size(); ++pos) {
        const auto& rec = stream[pos];
        if (rec.instrument_id != target.instrument_id) {
            std::ostringstream msg;
            msg << "click record at position " << pos << " references instrument '"
                << rec.instrument_id << "', expected '" << target.instrument_id << "'";
            throw invariant_violation(msg.str());
        }
        if (rec.outcome_index >= counts.size()) {
            std::ostringstream msg;
            msg << "click record at position " << pos << ": outcome index " << rec.outcome_index
                << " out of range for instrument '" << target.instrument_id << "' (arity "
                << counts.size() << ")";
            throw invariant_violation(msg.str());
        }
        ++counts[rec.outcome_index];
    }

    std::vector<UnitaryBrace> entries;
    for (std::size_t s = 0; s < counts.size(); ++s) {
        if (counts[s] == 0) continue;
        Integer psi = round_half_up(kappa_spec[s] * Rational(counts[s]));
        entries.push_back(UnitaryBrace{target.outcome_symbols[s], psi, counts[s] - psi});
    }
    return EnsembleBrace(std::move(entries));
}

std::vector<Primitive> mixture_outcome_universe(const BraceMixture& m) {
    std::vector<Primitive> universe;
    for (const auto& component : m.components())
        for (const auto& e : component.brace.entries())
            if (std::find(universe.begin(), universe.end(), e.outcome) == universe.end())
                universe.push_back(e.outcome);
    return universe;
}

std::vector<Rational> mix_braces(const BraceMixture& m) {
    const auto universe = mixture_outcome_universe(m);
    std::vector<Rational> mixed(universe.size(), Rational(0));
    for (const auto& component : m.components()) {
        BraceStatistics stats = extract_stats(component.brace);
        // an outcome a component never saw contributes nu = 0 there
        for (std::size_t i = 0; i < universe.size(); ++i) {
            auto it = std::find(stats.outcome_symbols.begin(), stats.outcome_symbols.end(),
                                universe[i]);
            if (it != stats.outcome_symbols.end())
                mixed[i] += component.weight * stats.nu[it - stats.outcome_symbols.begin()];
        }
    }
    return mixed;
}

} // namespace clickstate
