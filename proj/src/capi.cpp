#include "clickstate.h"

#include <cstring>
#include <limits>
#include <memory>
#include <string>

#include "ensemble.hpp"
#include "experiments.hpp"
#include "json_codec.hpp"
#include "pairnum.hpp"
#include "session.hpp"
#include "statespace.hpp"

using namespace clickstate;

struct cst_session {
    std::unique_ptr<Session> impl;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

cst_status set_error(cst_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

template <typename Fn>
cst_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const invariant_violation& e) {
        return set_error(CST_ERR_INVALID, e.what());
    } catch (const std::exception& e) {
        return set_error(CST_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(CST_ERR_INTERNAL, "unknown failure");
    }
}

cst_status require_out(char** out) {
    if (!out) return set_error(CST_ERR_INVALID, "output parameter must not be null");
    *out = nullptr;
    return CST_OK;
}

cst_status require_text(const char* text, const char* name) {
    if (!text) return set_error(CST_ERR_INVALID, std::string(name) + " must not be null");
    return CST_OK;
}

const Session& session_of(const cst_session* session) {
    if (!session || !session->impl) throw invariant_violation("session handle must not be null");
    return *session->impl;
}

} // namespace

extern "C" {

const char* cst_version(void) { return "1.0.0"; }

const char* cst_last_error(void) { return g_last_error.c_str(); }

void cst_string_free(char* text) { delete[] text; }

cst_status cst_session_open(const char* config_json, cst_session** out) {
    if (!out) return set_error(CST_ERR_INVALID, "output parameter must not be null");
    *out = nullptr;
    if (cst_status s = require_text(config_json, "config_json"); s != CST_OK) return s;
    return guarded([&] {
        auto handle = std::make_unique<cst_session>();
        handle->impl = Session::from_text(config_json);
        *out = handle.release();
        return CST_OK;
    });
}

void cst_session_close(cst_session* session) { delete session; }

cst_status cst_session_describe(const cst_session* session, char** config_json_out) {
    if (cst_status s = require_out(config_json_out); s != CST_OK) return s;
    return guarded([&] {
        *config_json_out = dup_string(dump_canonical(session_of(session).to_json()));
        return CST_OK;
    });
}

cst_status cst_simulate_clicks(const char* spec_json, uint64_t seed, char** jsonl_out) {
    if (cst_status s = require_out(jsonl_out); s != CST_OK) return s;
    if (cst_status s = require_text(spec_json, "spec_json"); s != CST_OK) return s;
    return guarded([&] {
        json j = parse_json(spec_json, "simulation spec");
        SimulationSpec spec;
        if (!j.is_object() || !j.contains("nu") || !j.contains("sigma") ||
            !j.contains("instrument"))
            throw invariant_violation("simulation spec needs fields nu, sigma, instrument");
        spec.nu = rational_seq_from_json(j.at("nu"), "simulation spec nu");
        Integer sigma = integer_from_json(j.at("sigma"), "simulation spec sigma");
        if (sigma < 1 || sigma > Integer(std::numeric_limits<std::uint64_t>::max()))
            throw invariant_violation("simulation sigma must be a positive machine integer");
        spec.sigma = static_cast<std::uint64_t>(sigma);
        spec.instrument_id = j.at("instrument").get<std::string>();
        *jsonl_out = dup_string(to_jsonl(simulate_clicks(spec, seed)));
        return CST_OK;
    });
}

cst_status cst_ingest_clicks(const cst_session* session, const char* instrument_id,
                             const char* clicks_jsonl, const char* kappa_json,
                             char** brace_json_out) {
    if (cst_status s = require_out(brace_json_out); s != CST_OK) return s;
    if (cst_status s = require_text(instrument_id, "instrument_id"); s != CST_OK) return s;
    if (cst_status s = require_text(clicks_jsonl, "clicks_jsonl"); s != CST_OK) return s;
    if (cst_status s = require_text(kappa_json, "kappa_json"); s != CST_OK) return s;
    return guarded([&] {
        InstrumentRep rep = session_of(session).instrument(instrument_id);
        IngestTarget target{rep.id, rep.eigen_symbols};
        auto stream = clicks_from_jsonl(clicks_jsonl);
        auto kappa =
            rational_seq_from_json(parse_json(kappa_json, "kappa spec"), "kappa spec");
        EnsembleBrace brace = ingest_clicks(stream, target, kappa);
        *brace_json_out = dup_string(dump_canonical(json_of(brace)));
        return CST_OK;
    });
}

cst_status cst_extract_stats(const char* brace_json, char** stats_json_out) {
    if (cst_status s = require_out(stats_json_out); s != CST_OK) return s;
    if (cst_status s = require_text(brace_json, "brace_json"); s != CST_OK) return s;
    return guarded([&] {
        EnsembleBrace brace = brace_from_json(parse_json(brace_json, "ensemble brace"));
        *stats_json_out = dup_string(dump_canonical(json_of(extract_stats(brace))));
        return CST_OK;
    });
}

cst_status cst_union_braces(const char* brace_a_json, const char* brace_b_json,
                            char** brace_json_out) {
    if (cst_status s = require_out(brace_json_out); s != CST_OK) return s;
    if (cst_status s = require_text(brace_a_json, "brace_a_json"); s != CST_OK) return s;
    if (cst_status s = require_text(brace_b_json, "brace_b_json"); s != CST_OK) return s;
    return guarded([&] {
        EnsembleBrace a = brace_from_json(parse_json(brace_a_json, "ensemble brace"));
        EnsembleBrace b = brace_from_json(parse_json(brace_b_json, "ensemble brace"));
        *brace_json_out = dup_string(dump_canonical(json_of(union_braces(a, b))));
        return CST_OK;
    });
}

cst_status cst_replicate_brace(const char* brace_json, const char* factor,
                               char** brace_json_out) {
    if (cst_status s = require_out(brace_json_out); s != CST_OK) return s;
    if (cst_status s = require_text(brace_json, "brace_json"); s != CST_OK) return s;
    if (cst_status s = require_text(factor, "factor"); s != CST_OK) return s;
    return guarded([&] {
        EnsembleBrace brace = brace_from_json(parse_json(brace_json, "ensemble brace"));
        *brace_json_out =
            dup_string(dump_canonical(json_of(replicate_brace(brace, parse_rational(factor)))));
        return CST_OK;
    });
}

cst_status cst_mix_braces(const char* mixture_json, char** result_json_out) {
    if (cst_status s = require_out(result_json_out); s != CST_OK) return s;
    if (cst_status s = require_text(mixture_json, "mixture_json"); s != CST_OK) return s;
    return guarded([&] {
        BraceMixture mixture = brace_mixture_from_json(parse_json(mixture_json, "brace mixture"));
        json out{{"outcomes", mixture_outcome_universe(mixture)},
                 {"nu", json_of(mix_braces(mixture))}};
        *result_json_out = dup_string(dump_canonical(out));
        return CST_OK;
    });
}

cst_status cst_verify_algebra(uint32_t trials, uint64_t seed, char** report_json_out) {
    if (cst_status s = require_out(report_json_out); s != CST_OK) return s;
    return guarded([&] {
        AlgebraReport report = verify_field_axioms(trials, seed);
        *report_json_out = dup_string(dump_canonical(json_of(report)));
        return report.verdict ? CST_OK : CST_VERDICT_FAIL;
    });
}

cst_status cst_ansatz_search(uint32_t trials, uint64_t seed, char** report_json_out) {
    if (cst_status s = require_out(report_json_out); s != CST_OK) return s;
    return guarded([&] {
        SurvivorReport report = ansatz_search(trials, seed);
        *report_json_out = dup_string(dump_canonical(json_of(report)));
        bool ok = report.standard_survives && report.isomorphism_classes == 1;
        return ok ? CST_OK : CST_VERDICT_FAIL;
    });
}

cst_status cst_ordinal(uint32_t n, char** json_out) {
    if (cst_status s = require_out(json_out); s != CST_OK) return s;
    return guarded([&] {
        OrdinalSet ordinal = ordinal_encode(n);
        json out{{"n", n},
                 {"cardinality", ordinal.cardinality()},
                 {"rendering", ordinal.render()},
                 {"set", json_of(ordinal)}};
        *json_out = dup_string(dump_canonical(out));
        return CST_OK;
    });
}

cst_status cst_verify_lvs(const cst_session* session, uint32_t trials, uint64_t seed,
                          char** report_json_out) {
    if (cst_status s = require_out(report_json_out); s != CST_OK) return s;
    return guarded([&] {
        LvsReport report = verify_lvs_axioms(session_of(session).dimension(), trials, seed);
        *report_json_out = dup_string(dump_canonical(json_of(report)));
        return report.verdict ? CST_OK : CST_VERDICT_FAIL;
    });
}

cst_status cst_measure(const cst_session* session, const char* state_json,
                       const char* instrument_id, char** result_json_out) {
    if (cst_status s = require_out(result_json_out); s != CST_OK) return s;
    if (cst_status s = require_text(state_json, "state_json"); s != CST_OK) return s;
    if (cst_status s = require_text(instrument_id, "instrument_id"); s != CST_OK) return s;
    return guarded([&] {
        const Session& reg = session_of(session);
        StateVector state = state_from_json(parse_json(state_json, "state vector"));
        MeasurementResult result = measure(state, reg.instrument(instrument_id), &reg);
        *result_json_out = dup_string(dump_canonical(json_of(result)));
        return CST_OK;
    });
}

cst_status cst_measure_mixture(const cst_session* session, const char* mixture_json,
                               const char* instrument_id, char** result_json_out) {
    if (cst_status s = require_out(result_json_out); s != CST_OK) return s;
    if (cst_status s = require_text(mixture_json, "mixture_json"); s != CST_OK) return s;
    if (cst_status s = require_text(instrument_id, "instrument_id"); s != CST_OK) return s;
    return guarded([&] {
        const Session& reg = session_of(session);
        MixtureState mixture = state_mixture_from_json(parse_json(mixture_json, "state mixture"));
        MeasurementResult result = measure_mixture(mixture, reg.instrument(instrument_id), &reg);
        *result_json_out = dup_string(dump_canonical(json_of(result)));
        return CST_OK;
    });
}

cst_status cst_two_slit(const cst_session* session, const char* from_id, const char* to_id,
                        const char* coeffs_json, char** report_json_out) {
    if (cst_status s = require_out(report_json_out); s != CST_OK) return s;
    if (cst_status s = require_text(from_id, "from_id"); s != CST_OK) return s;
    if (cst_status s = require_text(to_id, "to_id"); s != CST_OK) return s;
    if (cst_status s = require_text(coeffs_json, "coeffs_json"); s != CST_OK) return s;
    return guarded([&] {
        const Session& reg = session_of(session);
        auto change = reg.resolve(from_id, to_id);
        if (!change)
            throw invariant_violation(std::string("no registered basis change from '") + from_id +
                                      "' to '" + to_id + "'");
        json coeffs_doc = parse_json(coeffs_json, "coefficients");
        if (!coeffs_doc.is_array() || coeffs_doc.size() != 2)
            throw invariant_violation("two-slit demo needs exactly two coefficients");
        std::vector<PairNumber> coeffs{pair_from_json(coeffs_doc[0], "coefficients"),
                                       pair_from_json(coeffs_doc[1], "coefficients")};
        ExperimentReport report = two_slit_demo(*change, coeffs, reg.instrument(to_id));
        *report_json_out = dup_string(dump_canonical(json_of(report)));
        return report.verdict ? CST_OK : CST_VERDICT_FAIL;
    });
}

cst_status cst_classical_positivity(uint32_t trials, uint64_t seed, char** report_json_out) {
    if (cst_status s = require_out(report_json_out); s != CST_OK) return s;
    return guarded([&] {
        ExperimentReport report = classical_positivity_check(trials, seed);
        *report_json_out = dup_string(dump_canonical(json_of(report)));
        return report.verdict ? CST_OK : CST_VERDICT_FAIL;
    });
}

cst_status cst_convergence(const char* nu_json, const char* schedule_json, uint64_t seed,
                           char** report_json_out) {
    if (cst_status s = require_out(report_json_out); s != CST_OK) return s;
    if (cst_status s = require_text(nu_json, "nu_json"); s != CST_OK) return s;
    if (cst_status s = require_text(schedule_json, "schedule_json"); s != CST_OK) return s;
    return guarded([&] {
        auto nu = rational_seq_from_json(parse_json(nu_json, "nu"), "nu");
        json sched_doc = parse_json(schedule_json, "schedule");
        if (!sched_doc.is_array()) throw invariant_violation("schedule must be a JSON array");
        std::vector<std::uint64_t> schedule;
        for (const auto& item : sched_doc) {
            Integer v = integer_from_json(item, "schedule entry");
            if (v < 1 || v > Integer(std::numeric_limits<std::uint64_t>::max()))
                throw invariant_violation("schedule entries must be positive machine integers");
            schedule.push_back(static_cast<std::uint64_t>(v));
        }
        ExperimentReport report = convergence_study(nu, schedule, seed);
        *report_json_out = dup_string(dump_canonical(json_of(report)));
        return report.verdict ? CST_OK : CST_VERDICT_FAIL;
    });
}

} // extern "C"
