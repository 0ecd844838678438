// Command-line front end. Everything goes through the C API in
// clickstate.h; this translation unit never touches the library's C++
// internals.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "clickstate.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerdictFail = 1;
constexpr int kExitUsage = 2;

struct CliError {
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{"cannot open input file: " + path};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw CliError{"cannot open output file: " + out_path};
    out << text;
}

// "3/10,7/10" -> ["3/10","7/10"]; the library parses the literals exactly.
json rational_list(const std::string& csv) {
    json out = json::array();
    std::stringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty()) throw CliError{"expected a comma-separated list of rationals"};
    return out;
}

std::vector<std::uint64_t> integer_list(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::stringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw CliError{"malformed integer in list: " + item};
        }
    }
    if (out.empty()) throw CliError{"expected a comma-separated list of integers"};
    return out;
}

// RAII for strings handed out by the library.
struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { cst_string_free(ptr); }
    std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct OwnedSession {
    cst_session* ptr = nullptr;
    ~OwnedSession() { cst_session_close(ptr); }
};

OwnedSession open_session(const std::string& path) {
    if (path.empty()) throw CliError{"this subcommand needs --session <config.json>"};
    OwnedSession session;
    if (cst_session_open(read_file(path).c_str(), &session.ptr) != CST_OK)
        throw CliError{cst_last_error()};
    return session;
}

void render_text(const json& value, std::ostream& out, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (value.is_object()) {
        for (const auto& [key, item] : value.items()) {
            if (item.is_object() || item.is_array()) {
                out << pad << key << ":\n";
                render_text(item, out, depth + 1);
            } else {
                out << pad << key << ": " << item.dump() << "\n";
            }
        }
    } else if (value.is_array()) {
        for (const auto& item : value) {
            if (item.is_object() || item.is_array()) {
                out << pad << "-\n";
                render_text(item, out, depth + 1);
            } else {
                out << pad << "- " << item.dump() << "\n";
            }
        }
    } else {
        out << pad << value.dump() << "\n";
    }
}

// JSON passes through untouched (byte-identical runs); text is a readable
// re-rendering of the same document.
std::string format_document(const std::string& json_text, const std::string& format) {
    if (format == "json") return json_text;
    std::ostringstream out;
    render_text(json::parse(json_text), out, 0);
    return out.str();
}

int finish(cst_status status, const OwnedString& result, const std::string& out_path,
           const std::string& format) {
    if (status == CST_ERR_INVALID || status == CST_ERR_INTERNAL) throw CliError{cst_last_error()};
    write_output(out_path, format_document(result.str(), format));
    return status == CST_VERDICT_FAIL ? kExitVerdictFail : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ensemble statistics, the emergent pair-number algebra, and the "
                 "state space assembled from detector clicks"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name

    std::string session_path;
    std::string out_path;
    std::string format; // per-subcommand default: json everywhere, text for ordinal
    std::uint64_t seed = 0;
    app.add_option("--session", session_path, "session config file");
    app.add_option("--out", out_path, "write output to this file instead of stdout");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    auto* seed_option = app.add_option("--seed", seed, "seed for randomized subcommands");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "draw a deterministic click stream");
    std::string sim_nu, sim_instrument = "A";
    std::string sim_sigma = "1000";
    simulate->add_option("--nu", sim_nu, "outcome statistics, e.g. 3/10,7/10")->required();
    simulate->add_option("--sigma", sim_sigma, "number of clicks")->required();
    simulate->add_option("--instrument", sim_instrument, "instrument id");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "build an ensemble brace from a click stream");
    std::string ing_stream, ing_instrument, ing_kappa;
    ingest->add_option("--stream", ing_stream, "JSON Lines click file")->required();
    ingest->add_option("--instrument", ing_instrument, "instrument id")->required();
    ingest->add_option("--kappa", ing_kappa, "per-outcome kappa, e.g. 1/2,1/2")->required();

    // extract
    auto* extract = app.add_subcommand("extract", "extract (nu, kappa) statistics from a brace");
    std::string ext_brace;
    extract->add_option("--brace", ext_brace, "brace JSON file")->required();

    // algebra-verify
    auto* algebra = app.add_subcommand("algebra-verify",
                                       "randomized exact check of the pair-number field axioms");
    std::uint32_t alg_trials = 10000;
    algebra->add_option("--trials", alg_trials, "samples per axiom");

    // ansatz-search
    auto* ansatz = app.add_subcommand("ansatz-search",
                                      "enumerate the 16 candidate multiplications and filter");
    std::uint32_t ans_trials = 1000;
    ansatz->add_option("--trials", ans_trials, "randomized probes per candidate");

    // lvs-verify
    auto* lvs = app.add_subcommand("lvs-verify", "vector-space axiom suite");
    std::uint32_t lvs_trials = 10000;
    lvs->add_option("--trials", lvs_trials, "samples per identity");

    // measure
    auto* measure = app.add_subcommand("measure", "measurement statistics of a state");
    std::string meas_state, meas_instrument;
    measure->add_option("--state", meas_state, "state JSON file")->required();
    measure->add_option("--instrument", meas_instrument, "instrument id")->required();

    // mix
    auto* mix = app.add_subcommand("mix", "classical mixture statistics");
    std::string mix_braces_path, mix_states_path, mix_instrument;
    mix->add_option("--braces", mix_braces_path, "brace mixture JSON file");
    mix->add_option("--states", mix_states_path, "state mixture JSON file");
    mix->add_option("--instrument", mix_instrument, "instrument id (state mixtures)");

    // interfere
    auto* interfere = app.add_subcommand("interfere", "two-slit interference demo (D=2)");
    std::string int_from, int_to, int_coeffs;
    interfere->add_option("--from", int_from, "source basis id")->required();
    interfere->add_option("--to", int_to, "target basis id")->required();
    interfere->add_option("--coeffs", int_coeffs,
                          "JSON array of two pair numbers, e.g. "
                          "[{\"n\":\"1\",\"m\":\"0\"},{\"n\":\"1\",\"m\":\"0\"}]")
        ->required();

    // converge
    auto* converge = app.add_subcommand("converge", "simulate->ingest->extract convergence study");
    std::string conv_nu, conv_schedule;
    converge->add_option("--nu", conv_nu, "target statistics, e.g. 3/10,7/10")->required();
    converge->add_option("--schedule", conv_schedule, "increasing sigmas, e.g. 100,10000,1000000")
        ->required();

    // ordinal
    auto* ordinal = app.add_subcommand("ordinal", "nested-set encoding of a natural number");
    std::uint32_t ord_n = 0;
    ordinal->add_option("n", ord_n, "number to encode (<= 12)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (seed_option->count() == 0) seed = 1;
    if (format.empty()) format = "json";

    try {
        if (*simulate) {
            json spec{{"nu", rational_list(sim_nu)},
                      {"sigma", sim_sigma},
                      {"instrument", sim_instrument}};
            OwnedString result;
            cst_status status = cst_simulate_clicks(spec.dump().c_str(), seed, &result.ptr);
            if (status != CST_OK) throw CliError{cst_last_error()};
            write_output(out_path, result.str()); // already a JSONL document
            return kExitOk;
        }
        if (*ingest) {
            auto session = open_session(session_path);
            OwnedString result;
            cst_status status =
                cst_ingest_clicks(session.ptr, ing_instrument.c_str(),
                                  read_file(ing_stream).c_str(),
                                  rational_list(ing_kappa).dump().c_str(), &result.ptr);
            return finish(status, result, out_path, format);
        }
        if (*extract) {
            OwnedString result;
            cst_status status = cst_extract_stats(read_file(ext_brace).c_str(), &result.ptr);
            return finish(status, result, out_path, format);
        }
        if (*algebra) {
            OwnedString result;
            cst_status status = cst_verify_algebra(alg_trials, seed, &result.ptr);
            return finish(status, result, out_path, format);
        }
        if (*ansatz) {
            OwnedString result;
            cst_status status = cst_ansatz_search(ans_trials, seed, &result.ptr);
            return finish(status, result, out_path, format);
        }
        if (*lvs) {
            auto session = open_session(session_path);
            OwnedString result;
            cst_status status =
                cst_verify_lvs(session.ptr, lvs_trials, seed, &result.ptr);
            return finish(status, result, out_path, format);
        }
        if (*measure) {
            auto session = open_session(session_path);
            OwnedString result;
            cst_status status = cst_measure(session.ptr, read_file(meas_state).c_str(),
                                            meas_instrument.c_str(), &result.ptr);
            return finish(status, result, out_path, format);
        }
        if (*mix) {
            if (mix_braces_path.empty() == mix_states_path.empty())
                throw CliError{"mix needs exactly one of --braces or --states"};
            OwnedString result;
            cst_status status;
            if (!mix_braces_path.empty()) {
                status = cst_mix_braces(read_file(mix_braces_path).c_str(), &result.ptr);
            } else {
                if (mix_instrument.empty())
                    throw CliError{"state mixtures need --instrument"};
                auto session = open_session(session_path);
                status = cst_measure_mixture(session.ptr, read_file(mix_states_path).c_str(),
                                             mix_instrument.c_str(), &result.ptr);
            }
            return finish(status, result, out_path, format);
        }
        if (*interfere) {
            auto session = open_session(session_path);
            OwnedString result;
            cst_status status = cst_two_slit(session.ptr, int_from.c_str(), int_to.c_str(),
                                             int_coeffs.c_str(), &result.ptr);
            return finish(status, result, out_path, format);
        }
        if (*converge) {
            json schedule = json::array();
            for (auto sigma : integer_list(conv_schedule)) schedule.push_back(sigma);
            OwnedString result;
            cst_status status =
                cst_convergence(rational_list(conv_nu).dump().c_str(), schedule.dump().c_str(),
                                seed, &result.ptr);
            return finish(status, result, out_path, format);
        }
        if (*ordinal) {
            OwnedString result;
            cst_status status = cst_ordinal(ord_n, &result.ptr);
            if (status != CST_OK) throw CliError{cst_last_error()};
            // default rendering is the nested-brace text form
            bool as_json = format == "json" && app.count("--format") > 0;
            if (as_json) {
                write_output(out_path, result.str());
            } else {
                json doc = json::parse(result.str());
                write_output(out_path, doc.at("rendering").get<std::string>() + "\n");
            }
            return kExitOk;
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
