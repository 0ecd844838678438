#include "session.hpp"

#include <algorithm>
#include <mutex>

namespace clickstate {

namespace {

void require(bool cond, const std::string& message) {
    if (!cond) throw invariant_violation(message);
}

} // namespace

Session::Session(const json& config) : config_(2) {
    require(config.is_object(), "session config must be a JSON object");
    std::size_t d = 2;
    if (config.contains("dimension")) {
        const json& dim = config.at("dimension");
        require(dim.is_number_integer() || dim.is_number_unsigned(),
                "session config: 'dimension' must be an integer");
        long long value = dim.get<long long>();
        require(value >= 2, "session config: dimension must be >= 2");
        d = static_cast<std::size_t>(value);
    }
    config_ = DimensionConfig(d);
    if (config.contains("default_seed"))
        default_seed_ = config.at("default_seed").get<std::uint64_t>();

    if (config.contains("instruments")) {
        const json& list = config.at("instruments");
        require(list.is_array(), "session config: 'instruments' must be an array");
        for (const auto& item : list) register_instrument(instrument_from_json(item));
    }
    if (config.contains("basis_changes")) {
        const json& list = config.at("basis_changes");
        require(list.is_array(), "session config: 'basis_changes' must be an array");
        for (const auto& item : list) {
            BasisChange change = basis_change_from_json(item);
            require(has_instrument(change.from_id()),
                    "session config: basis change references unknown instrument '" +
                        change.from_id() + "'");
            require(has_instrument(change.to_id()),
                    "session config: basis change references unknown instrument '" +
                        change.to_id() + "'");
            register_basis_change(std::move(change));
        }
    }
}

std::unique_ptr<Session> Session::from_text(const std::string& config_text) {
    return std::make_unique<Session>(parse_json(config_text, "session config"));
}

InstrumentRep Session::pad_instrument(InstrumentRep rep) const {
    const std::size_t d = config_.dimension;
    require(rep.dimension() <= d, "instrument '" + rep.id + "' has more eigen symbols (" +
                                      std::to_string(rep.dimension()) +
                                      ") than the session dimension (" + std::to_string(d) + ")");
    unsigned pad = 0;
    while (rep.dimension() < d) {
        rep.eigen_symbols.push_back(rep.id + ".pad" + std::to_string(pad++));
        rep.spectral_labels.push_back(rep.spectral_labels.back());
    }
    return InstrumentRep(rep.id, rep.eigen_symbols, rep.spectral_labels);
}

bool Session::has_instrument(const std::string& id) const {
    std::shared_lock lock(mutex_);
    return std::any_of(instruments_.begin(), instruments_.end(),
                       [&](const InstrumentRep& r) { return r.id == id; });
}

InstrumentRep Session::instrument(const std::string& id) const {
    std::shared_lock lock(mutex_);
    auto it = std::find_if(instruments_.begin(), instruments_.end(),
                           [&](const InstrumentRep& r) { return r.id == id; });
    if (it == instruments_.end())
        throw invariant_violation("unknown instrument '" + id + "'");
    return *it;
}

std::vector<std::string> Session::instrument_ids() const {
    std::shared_lock lock(mutex_);
    std::vector<std::string> ids;
    ids.reserve(instruments_.size());
    for (const auto& r : instruments_) ids.push_back(r.id);
    return ids;
}

void Session::register_instrument(InstrumentRep rep) {
    rep = pad_instrument(std::move(rep));
    std::unique_lock lock(mutex_);
    for (const auto& existing : instruments_)
        require(existing.id != rep.id, "instrument '" + rep.id + "' is already registered");
    instruments_.push_back(std::move(rep));
}

void Session::register_basis_change(BasisChange change) {
    require(change.matrix().size() == config_.dimension,
            "basis change " + change.from_id() + "->" + change.to_id() +
                ": matrix must match the session dimension");
    std::unique_lock lock(mutex_);
    for (const auto& existing : changes_)
        require(!(existing.from_id() == change.from_id() && existing.to_id() == change.to_id()),
                "basis change " + change.from_id() + "->" + change.to_id() +
                    " is already registered");
    changes_.push_back(std::move(change));
}

std::optional<BasisChange> Session::resolve(const std::string& from,
                                            const std::string& to) const {
    std::shared_lock lock(mutex_);
    for (const auto& change : changes_) {
        if (change.from_id() == from && change.to_id() == to) return change;
        if (change.from_id() == to && change.to_id() == from) return change.inverted();
    }
    return std::nullopt;
}

json Session::to_json() const {
    std::shared_lock lock(mutex_);
    json instruments = json::array();
    for (const auto& r : instruments_) instruments.push_back(json_of(r));
    json changes = json::array();
    for (const auto& u : changes_) changes.push_back(json_of(u));
    return json{{"dimension", config_.dimension},
                {"default_seed", default_seed_},
                {"instruments", instruments},
                {"basis_changes", changes}};
}

} // namespace clickstate
