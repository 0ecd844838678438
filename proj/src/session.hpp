#ifndef CLICKSTATE_SESSION_HPP
#define CLICKSTATE_SESSION_HPP

#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json_codec.hpp"
#include "statespace.hpp"

namespace clickstate {

/// Session-scoped dimension constant plus the instrument and basis-change
/// registries. Reads are concurrent; registration is exclusive. Loaded
/// from an explicit config document so every run is self-contained.
///
/// Config shape:
///   {"dimension": 2, "default_seed": 7,
///    "instruments": [{"id","eigen_symbols","spectral_labels"}...],
///    "basis_changes": [{"from","to","matrix"}...]}
///
/// An instrument listed with fewer than `dimension` eigen symbols is padded
/// up to the session dimension with generated symbols carrying a duplicate
/// of its last spectral label (an indiscernible extension of the scale).
class Session : public BasisResolver {
public:
    explicit Session(const json& config);

    static std::unique_ptr<Session> from_text(const std::string& config_text);

    std::size_t dimension() const { return config_.dimension; }
    std::uint64_t default_seed() const { return default_seed_; }

    bool has_instrument(const std::string& id) const;
    InstrumentRep instrument(const std::string& id) const; // throws when unknown
    std::vector<std::string> instrument_ids() const;

    void register_instrument(InstrumentRep rep);
    void register_basis_change(BasisChange change);

    std::optional<BasisChange> resolve(const std::string& from,
                                       const std::string& to) const override;

    json to_json() const;

private:
    InstrumentRep pad_instrument(InstrumentRep rep) const;

    mutable std::shared_mutex mutex_;
    DimensionConfig config_;
    std::uint64_t default_seed_ = 0;
    std::vector<InstrumentRep> instruments_;
    std::vector<BasisChange> changes_;
};

} // namespace clickstate

#endif
