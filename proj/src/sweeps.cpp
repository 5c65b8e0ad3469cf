#include "sweeps.hpp"

#include <cstdio>

#include <json.hpp>

#include "json_io.hpp"
#include "mpm.hpp"
#include "parallel.hpp"
#include "refine.hpp"
#include "rng.hpp"

namespace specres {

namespace {

using nlohmann::json;

std::string config_header(const char* command, const json& config) {
    return std::string("# specres ") + command + "\n# config: " + config.dump() + "\n";
}

}  // namespace

std::string format_sci(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.16e", value);
    return buffer;
}

std::vector<NoiseSweepRow> noise_sweep(const Signal& signal, long half_width,
                                       std::span<const double> sigmas, int trials,
                                       RecoveryAlgo algo, double refine_eps,
                                       std::uint64_t seed) {
    if (sigmas.empty() || trials < 1) {
        throw Error(ErrorCode::InvalidArgument, "need at least one sigma and one trial");
    }
    const int k = signal.size();
    const double delta = min_separation(signal);
    const std::vector<double> truth_locations = signal.locations();

    RefineConfig refine_config;
    if (algo == RecoveryAlgo::Refine) {
        refine_config = RefineConfig::for_separation(k, delta, refine_eps);
        if (half_width < static_cast<long>(refine_config.r) * refine_config.ell) {
            throw Error(ErrorCode::InsufficientMeasurements,
                        "half_width below r*ell for the requested accuracy");
        }
    }

    const std::size_t jobs = sigmas.size() * static_cast<std::size_t>(trials);
    std::vector<NoiseSweepRow> rows(jobs);
    parallel_for(jobs, [&](std::size_t job) {
        const std::size_t trial = job % static_cast<std::size_t>(trials);
        const std::size_t si = job / static_cast<std::size_t>(trials);
        const std::uint64_t trial_seed = derive_seed(seed, {si, trial});
        const MeasurementSet meas = measure(signal, half_width, sigmas[si], trial_seed);

        double distance = 0.0;
        if (algo == RecoveryAlgo::Mpm) {
            const RecoveryResult result = recover(meas, PencilConfig{k, 0});
            distance = matching_distance(result.spikes, signal);
        } else {
            const RefineOutcome outcome = recover_refine(meas, refine_config);
            distance = location_matching_distance(outcome.locations, truth_locations);
        }
        rows[job] = NoiseSweepRow{sigmas[si], static_cast<long>(trial), distance};
    });
    return rows;
}

std::string phase_sweep_csv(std::span<const double> deltas, std::span<const long> row_counts,
                            int k, int trials, std::uint64_t seed) {
    const std::vector<PhaseSweepRow> rows = phase_sweep(deltas, row_counts, k, trials, seed);

    json config{{"deltas", std::vector<double>(deltas.begin(), deltas.end())},
                {"ms", std::vector<long>(row_counts.begin(), row_counts.end())},
                {"k", k},
                {"trials", trials},
                {"seed", seed}};
    std::string out = config_header("phase-sweep", config);
    out += "delta,m,trial,kappa,selberg_bound,sigma_min,sigma_max\n";
    for (const PhaseSweepRow& row : rows) {
        out += format_sci(row.delta) + "," + std::to_string(row.rows) + "," +
               std::to_string(row.trial) + "," + format_sci(row.kappa) + "," +
               format_sci(row.selberg_bound) + "," + format_sci(row.sigma_min) + "," +
               format_sci(row.sigma_max) + "\n";
    }
    return out;
}

std::string noise_sweep_csv(const Signal& signal, long half_width,
                            std::span<const double> sigmas, int trials, RecoveryAlgo algo,
                            double refine_eps, std::uint64_t seed) {
    const std::vector<NoiseSweepRow> rows =
        noise_sweep(signal, half_width, sigmas, trials, algo, refine_eps, seed);

    json config{{"signal", json::parse(signal_to_json(signal))},
                {"n", half_width},
                {"sigmas", std::vector<double>(sigmas.begin(), sigmas.end())},
                {"trials", trials},
                {"algo", algo == RecoveryAlgo::Mpm ? "mpm" : "refine"},
                {"seed", seed}};
    if (algo == RecoveryAlgo::Refine) {
        config["eps"] = refine_eps;
    }
    std::string out = config_header("noise-sweep", config);
    out += "sigma,trial,matching_distance\n";
    for (const NoiseSweepRow& row : rows) {
        out += format_sci(row.sigma) + "," + std::to_string(row.trial) + "," +
               format_sci(row.matching_distance) + "\n";
    }
    return out;
}

}  // namespace specres
