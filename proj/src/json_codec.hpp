#ifndef CLICKSTATE_JSON_CODEC_HPP
#define CLICKSTATE_JSON_CODEC_HPP

#include <json.hpp>

#include "ensemble.hpp"
#include "experiments.hpp"
#include "pairnum.hpp"
#include "statespace.hpp"

namespace clickstate {

using nlohmann::json;

// Wire conventions: counts as decimal strings (arbitrary precision),
// rationals as {"num","den"} objects. Parsers additionally accept "p/q"
// strings and plain JSON integers where a rational is expected.

json json_of(const Integer& v);
Integer integer_from_json(const json& j, const char* what);

json json_of(const Rational& r);
Rational rational_from_json(const json& j, const char* what);

json json_of(const PairNumber& p);
PairNumber pair_from_json(const json& j, const char* what);

json json_of(const std::vector<Rational>& seq);
std::vector<Rational> rational_seq_from_json(const json& j, const char* what);

json json_of(const ClickRecord& r);
ClickRecord click_from_json(const json& j, const char* what);

/// One record per line: {"instrument":"A","outcome":2}.
std::string to_jsonl(const std::vector<ClickRecord>& stream);
std::vector<ClickRecord> clicks_from_jsonl(const std::string& text);

json json_of(const EnsembleBrace& b);
EnsembleBrace brace_from_json(const json& j);

json json_of(const BraceStatistics& s);
BraceStatistics stats_from_json(const json& j);

json json_of(const KappaSigmaPair& p);
KappaSigmaPair kappa_sigma_from_json(const json& j);

json json_of(const BraceMixture& m);
BraceMixture brace_mixture_from_json(const json& j);

json json_of(const StateVector& v);
StateVector state_from_json(const json& j);

json json_of(const InstrumentRep& rep);
InstrumentRep instrument_from_json(const json& j);

json json_of(const BasisChange& u);
BasisChange basis_change_from_json(const json& j);

json json_of(const MeasurementResult& r);

json json_of(const MixtureState& m);
MixtureState state_mixture_from_json(const json& j);

json json_of(const SignAssignment& s);
json json_of(const SurvivorReport& r);

json json_of(const AxiomCheck& c);
json json_of(const AlgebraReport& r);
json json_of(const LvsReport& r);

json json_of(const OrdinalSet& s);

json json_of(const ExperimentReport& r);

/// Canonical serialization used everywhere output must be byte-stable:
/// two-space indent, sorted keys, trailing newline.
std::string dump_canonical(const json& j);

/// Parses with a context tag folded into any error message.
json parse_json(const std::string& text, const char* what);

} // namespace clickstate

#endif
