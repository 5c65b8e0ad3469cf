#include "json_io.hpp"

#include <json.hpp>

namespace specres {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IoError, std::string("malformed JSON: ") + e.what());
    }
}

double get_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw Error(ErrorCode::IoError, std::string("missing numeric field '") + key + "'");
    }
    return j[key].get<double>();
}

}  // namespace

std::string signal_to_json(const Signal& signal) {
    json spikes = json::array();
    for (const Spike& s : signal.spikes()) {
        spikes.push_back({{"re", s.amplitude.real()},
                          {"im", s.amplitude.imag()},
                          {"f", s.location}});
    }
    return json{{"spikes", spikes}}.dump();
}

Signal signal_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.contains("spikes") || !j["spikes"].is_array()) {
        throw Error(ErrorCode::IoError, "signal JSON needs a 'spikes' array");
    }
    std::vector<Spike> spikes;
    for (const json& s : j["spikes"]) {
        spikes.push_back({Complex{get_number(s, "re"), get_number(s, "im")},
                          get_number(s, "f")});
    }
    return Signal(std::move(spikes));
}

std::string measurement_to_json(const MeasurementSet& meas) {
    json values = json::array();
    for (const Complex& v : meas.values) {
        values.push_back({{"re", v.real()}, {"im", v.imag()}});
    }
    json j{{"n", meas.half_width}, {"sigma", meas.noise_sigma}, {"values", values}};
    if (meas.rng_seed) {
        j["seed"] = *meas.rng_seed;
    }
    return j.dump();
}

MeasurementSet measurement_from_json(const std::string& text) {
    const json j = parse(text);
    MeasurementSet meas;
    meas.half_width = static_cast<long>(get_number(j, "n"));
    meas.noise_sigma = get_number(j, "sigma");
    if (j.contains("seed") && !j["seed"].is_null()) {
        meas.rng_seed = j["seed"].get<std::uint64_t>();
    }
    if (!j.contains("values") || !j["values"].is_array()) {
        throw Error(ErrorCode::IoError, "measurement JSON needs a 'values' array");
    }
    for (const json& v : j["values"]) {
        meas.values.emplace_back(get_number(v, "re"), get_number(v, "im"));
    }
    if (meas.half_width < 0 ||
        meas.values.size() != static_cast<std::size_t>(2 * meas.half_width + 1)) {
        throw Error(ErrorCode::IoError, "measurement JSON needs 2n+1 values");
    }
    return meas;
}

std::string recovery_to_json(const RecoveryResult& result) {
    json spikes = json::array();
    for (const Spike& s : result.spikes.spikes()) {
        spikes.push_back({{"re", s.amplitude.real()},
                          {"im", s.amplitude.imag()},
                          {"f", s.location}});
    }
    json diagnostics = json::object();
    const RecoveryDiagnostics& d = result.diagnostics;
    if (d.sigma_min_est) diagnostics["sigma_min_est"] = *d.sigma_min_est;
    if (d.kappa_est) diagnostics["kappa_est"] = *d.kappa_est;
    if (d.gamma_bound) diagnostics["gamma_bound"] = *d.gamma_bound;
    if (d.zeta_bound) diagnostics["zeta_bound"] = *d.zeta_bound;
    return json{{"spikes", spikes},
                {"diagnostics", diagnostics},
                {"warnings", result.warnings}}
        .dump();
}

std::string refine_outcome_to_json(const RefineOutcome& outcome) {
    return json{{"locations", outcome.locations},
                {"oracle_calls", outcome.oracle_calls},
                {"gamma_trace", outcome.gamma_trace}}
        .dump();
}

}  // namespace specres
