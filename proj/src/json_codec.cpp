#include "json_codec.hpp"

#include <sstream>

namespace clickstate {

namespace {

[[noreturn]] void fail(const char* what, const std::string& detail) {
    throw invariant_violation(std::string(what) + ": " + detail);
}

const json& member(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        fail(what, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string string_member(const json& j, const char* key, const char* what) {
    const json& v = member(j, key, what);
    if (!v.is_string()) fail(what, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

} // namespace

json json_of(const Integer& v) { return v.str(); }

Integer integer_from_json(const json& j, const char* what) {
    try {
        if (j.is_string()) return Integer(j.get<std::string>());
        if (j.is_number_integer()) return Integer(j.get<long long>());
        if (j.is_number_unsigned()) return Integer(j.get<unsigned long long>());
    } catch (const std::runtime_error& e) {
        fail(what, e.what());
    }
    fail(what, "expected an integer (number or decimal string)");
}

json json_of(const Rational& r) {
    return json{{"num", num(r).str()}, {"den", den(r).str()}};
}

Rational rational_from_json(const json& j, const char* what) {
    try {
        if (j.is_object()) {
            Integer n = integer_from_json(member(j, "num", what), what);
            Integer d = integer_from_json(member(j, "den", what), what);
            if (d == 0) fail(what, "rational with zero denominator");
            return Rational(n, d);
        }
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
    } catch (const invariant_violation&) {
        throw;
    } catch (const std::runtime_error& e) {
        fail(what, e.what());
    }
    fail(what, "expected a rational ({num,den}, \"p/q\", or integer)");
}

json json_of(const PairNumber& p) {
    return json{{"n", json_of(p.n)}, {"m", json_of(p.m)}};
}

PairNumber pair_from_json(const json& j, const char* what) {
    if (!j.is_object()) fail(what, "expected a pair number object {n,m}");
    return PairNumber{rational_from_json(member(j, "n", what), what),
                      rational_from_json(member(j, "m", what), what)};
}

json json_of(const std::vector<Rational>& seq) {
    json out = json::array();
    for (const auto& r : seq) out.push_back(json_of(r));
    return out;
}

std::vector<Rational> rational_seq_from_json(const json& j, const char* what) {
    if (!j.is_array()) fail(what, "expected an array of rationals");
    std::vector<Rational> out;
    out.reserve(j.size());
    for (const auto& item : j) out.push_back(rational_from_json(item, what));
    return out;
}

json json_of(const ClickRecord& r) {
    return json{{"instrument", r.instrument_id}, {"outcome", r.outcome_index}};
}

ClickRecord click_from_json(const json& j, const char* what) {
    const json& outcome = member(j, "outcome", what);
    if (!outcome.is_number_unsigned() && !outcome.is_number_integer())
        fail(what, "field 'outcome' must be a non-negative integer");
    long long idx = outcome.get<long long>();
    if (idx < 0) fail(what, "field 'outcome' must be non-negative");
    return ClickRecord{string_member(j, "instrument", what), static_cast<std::uint32_t>(idx)};
}

std::string to_jsonl(const std::vector<ClickRecord>& stream) {
    std::string out;
    for (const auto& r : stream) {
        out += json_of(r).dump();
        out += '\n';
    }
    return out;
}

std::vector<ClickRecord> clicks_from_jsonl(const std::string& text) {
    std::vector<ClickRecord> stream;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            std::ostringstream msg;
            msg << "click stream line " << line_no << ": " << e.what();
            throw invariant_violation(msg.str());
        }
        stream.push_back(click_from_json(j, "click record"));
    }
    return stream;
}

json json_of(const EnsembleBrace& b) {
    json entries = json::array();
    for (const auto& e : b.entries())
        entries.push_back(json{{"outcome", e.outcome},
                               {"psi", json_of(e.count_psi)},
                               {"phi", json_of(e.count_phi)}});
    return json{{"entries", entries},
                {"sigma", json_of(b.sigma())},
                {"zero_class", b.is_zero_class()}};
}

EnsembleBrace brace_from_json(const json& j) {
    const char* what = "ensemble brace";
    const json& entries = member(j, "entries", what);
    if (!entries.is_array()) fail(what, "'entries' must be an array");
    std::vector<UnitaryBrace> parsed;
    parsed.reserve(entries.size());
    for (const auto& e : entries)
        parsed.push_back(UnitaryBrace{string_member(e, "outcome", what),
                                      integer_from_json(member(e, "psi", what), what),
                                      integer_from_json(member(e, "phi", what), what)});
    EnsembleBrace brace(std::move(parsed));
    if (j.contains("sigma")) {
        Integer declared = integer_from_json(j.at("sigma"), what);
        if (declared != brace.sigma())
            fail(what, "declared sigma does not equal the sum of entry totals");
    }
    return brace;
}

json json_of(const BraceStatistics& s) {
    json out;
    out["outcomes"] = s.outcome_symbols;
    out["nu"] = json_of(s.nu);
    out["kappa"] = json_of(s.kappa);
    return out;
}

BraceStatistics stats_from_json(const json& j) {
    const char* what = "brace statistics";
    BraceStatistics s;
    const json& outcomes = member(j, "outcomes", what);
    if (!outcomes.is_array()) fail(what, "'outcomes' must be an array");
    for (const auto& o : outcomes) s.outcome_symbols.push_back(o.get<std::string>());
    s.nu = rational_seq_from_json(member(j, "nu", what), what);
    s.kappa = rational_seq_from_json(member(j, "kappa", what), what);
    if (s.nu.size() != s.outcome_symbols.size() || s.kappa.size() != s.outcome_symbols.size())
        fail(what, "outcomes, nu, and kappa must have equal lengths");
    return s;
}

json json_of(const KappaSigmaPair& p) {
    return json{{"kappa", json_of(p.kappa)}, {"sigma", json_of(p.sigma)}};
}

KappaSigmaPair kappa_sigma_from_json(const json& j) {
    const char* what = "kappa-sigma pair";
    return KappaSigmaPair(rational_from_json(member(j, "kappa", what), what),
                          integer_from_json(member(j, "sigma", what), what));
}

json json_of(const BraceMixture& m) {
    json components = json::array();
    for (const auto& c : m.components())
        components.push_back(json{{"brace", json_of(c.brace)}, {"weight", json_of(c.weight)}});
    return json{{"components", components}};
}

BraceMixture brace_mixture_from_json(const json& j) {
    const char* what = "brace mixture";
    const json& components = member(j, "components", what);
    if (!components.is_array()) fail(what, "'components' must be an array");
    std::vector<BraceMixture::Component> parsed;
    for (const auto& c : components)
        parsed.push_back(BraceMixture::Component{brace_from_json(member(c, "brace", what)),
                                                 rational_from_json(member(c, "weight", what), what)});
    return BraceMixture(std::move(parsed));
}

json json_of(const StateVector& v) {
    json coords = json::array();
    for (const auto& c : v.coords) coords.push_back(json_of(c));
    return json{{"basis", v.basis_id}, {"coords", coords}};
}

StateVector state_from_json(const json& j) {
    const char* what = "state vector";
    StateVector v;
    v.basis_id = string_member(j, "basis", what);
    const json& coords = member(j, "coords", what);
    if (!coords.is_array()) fail(what, "'coords' must be an array");
    for (const auto& c : coords) v.coords.push_back(pair_from_json(c, what));
    return v;
}

json json_of(const InstrumentRep& rep) {
    return json{{"id", rep.id},
                {"eigen_symbols", rep.eigen_symbols},
                {"spectral_labels", json_of(rep.spectral_labels)}};
}

InstrumentRep instrument_from_json(const json& j) {
    const char* what = "instrument";
    std::vector<Primitive> symbols;
    const json& syms = member(j, "eigen_symbols", what);
    if (!syms.is_array()) fail(what, "'eigen_symbols' must be an array");
    for (const auto& s : syms) symbols.push_back(s.get<std::string>());
    return InstrumentRep(string_member(j, "id", what), std::move(symbols),
                         rational_seq_from_json(member(j, "spectral_labels", what), what));
}

json json_of(const BasisChange& u) {
    json rows = json::array();
    for (const auto& row : u.matrix()) {
        json cells = json::array();
        for (const auto& cell : row) cells.push_back(json_of(cell));
        rows.push_back(cells);
    }
    return json{{"from", u.from_id()}, {"to", u.to_id()}, {"matrix", rows}};
}

BasisChange basis_change_from_json(const json& j) {
    const char* what = "basis change";
    const json& rows = member(j, "matrix", what);
    if (!rows.is_array() || rows.empty()) fail(what, "'matrix' must be a non-empty array");
    PairMatrix matrix;
    for (const auto& row : rows) {
        if (!row.is_array()) fail(what, "matrix rows must be arrays");
        std::vector<PairNumber> cells;
        for (const auto& cell : row) cells.push_back(pair_from_json(cell, what));
        matrix.push_back(std::move(cells));
    }
    return BasisChange(string_member(j, "from", what), string_member(j, "to", what),
                       std::move(matrix));
}

json json_of(const MeasurementResult& r) {
    json labels = json::array();
    for (const auto& [label, mass] : r.label_stats)
        labels.push_back(json{{"label", json_of(label)}, {"nu", json_of(mass)}});
    return json{{"outcomes", r.outcome_symbols}, {"nu", json_of(r.nu)}, {"label_stats", labels}};
}

json json_of(const MixtureState& m) {
    json components = json::array();
    for (const auto& c : m.components())
        components.push_back(json{{"state", json_of(c.state)}, {"weight", json_of(c.weight)}});
    return json{{"components", components}};
}

MixtureState state_mixture_from_json(const json& j) {
    const char* what = "state mixture";
    const json& components = member(j, "components", what);
    if (!components.is_array()) fail(what, "'components' must be an array");
    std::vector<MixtureState::Component> parsed;
    for (const auto& c : components)
        parsed.push_back(MixtureState::Component{state_from_json(member(c, "state", what)),
                                                 rational_from_json(member(c, "weight", what), what)});
    return MixtureState(std::move(parsed));
}

json json_of(const SignAssignment& s) { return json::array({s.s1, s.s2, s.s3, s.s4}); }

json json_of(const SurvivorReport& r) {
    json candidates = json::array();
    for (const auto& v : r.candidates) {
        json c{{"signs", json_of(v.signs)},
               {"distributive", v.distributive},
               {"associative", v.associative},
               {"has_unity", v.has_unity},
               {"unity", v.unity ? json_of(*v.unity) : json(nullptr)},
               {"invertible", v.invertible}};
        if (v.associativity_witness) {
            const auto& w = *v.associativity_witness;
            c["associativity_witness"] =
                json{{"a", json_of(w[0])}, {"b", json_of(w[1])}, {"c", json_of(w[2])}};
        } else {
            c["associativity_witness"] = nullptr;
        }
        c["invertibility_witness"] =
            v.invertibility_witness ? json_of(*v.invertibility_witness) : json(nullptr);
        c["isomorphic_to_standard_via"] =
            v.isomorphism_to_standard
                ? json::array({v.isomorphism_to_standard->eps, v.isomorphism_to_standard->delta})
                : json(nullptr);
        candidates.push_back(std::move(c));
    }
    json pass_au = json::array();
    for (const auto& s : r.pass_associativity_unity) pass_au.push_back(json_of(s));
    json pass_inv = json::array();
    for (const auto& s : r.pass_invertibility) pass_inv.push_back(json_of(s));
    return json{{"total_candidates", r.total_candidates},
                {"trials_per_candidate", r.trials_per_candidate},
                {"seed", r.seed},
                {"candidates", candidates},
                {"pass_associativity_unity", pass_au},
                {"pass_invertibility", pass_inv},
                {"isomorphism_classes", r.isomorphism_classes},
                {"standard_survives", r.standard_survives}};
}

json json_of(const AxiomCheck& c) {
    return json{{"name", c.name},
                {"trials", c.trials},
                {"failures", c.failures},
                {"witness", c.failures ? json(c.witness) : json(nullptr)}};
}

json json_of(const AlgebraReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(json_of(c));
    return json{{"trials", r.trials}, {"seed", r.seed}, {"checks", checks}, {"verdict", r.verdict}};
}

json json_of(const LvsReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(json_of(c));
    return json{{"dimension", r.dimension},
                {"trials", r.trials},
                {"seed", r.seed},
                {"checks", checks},
                {"verdict", r.verdict}};
}

json json_of(const OrdinalSet& s) {
    json out = json::array();
    for (const auto& e : s.elements()) out.push_back(json_of(e));
    return out;
}

json json_of(const ExperimentReport& r) {
    return json{{"name", r.name},
                {"inputs", parse_json(r.inputs_json, "experiment inputs")},
                {"observations", parse_json(r.observations_json, "experiment observations")},
                {"verdict", r.verdict}};
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(what, e.what());
    }
}

} // namespace clickstate
