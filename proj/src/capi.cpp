#include "specres.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <optional>
#include <string>

#include "json_io.hpp"
#include "mpm.hpp"
#include "refine.hpp"
#include "signal.hpp"
#include "sweeps.hpp"
#include "vandermonde.hpp"

// extern-C surface of the shared library. Exceptions from the core are
// mapped to status codes; error text goes to a thread-local buffer.

struct specres_signal_s {
    specres::Signal value;
};

struct specres_measurement_s {
    specres::MeasurementSet value;
};

struct specres_recovery_s {
    std::optional<specres::RecoveryResult> pencil;
    std::optional<specres::RefineOutcome> refine;
};

namespace {

thread_local std::string g_last_error;

specres_status status_from(specres::ErrorCode code) {
    return static_cast<specres_status>(static_cast<int>(code));
}

template <typename Fn>
specres_status guarded(Fn&& fn) {
    try {
        fn();
        return SPECRES_OK;
    } catch (const specres::Error& e) {
        g_last_error = e.what();
        return status_from(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SPECRES_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return SPECRES_ERROR_INTERNAL;
    }
}

specres_status fail_invalid(const char* message) {
    g_last_error = message;
    return SPECRES_ERROR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* specres_status_name(specres_status status) {
    if (status == SPECRES_OK) return "Ok";
    if (status == SPECRES_ERROR_INTERNAL) return "InternalError";
    return specres::error_code_name(static_cast<specres::ErrorCode>(static_cast<int>(status)));
}

const char* specres_last_error(void) { return g_last_error.c_str(); }

void specres_string_free(char* text) { delete[] text; }

/* signals ----------------------------------------------------------- */

specres_status specres_signal_create(const double* amp_re, const double* amp_im,
                                     const double* locations, size_t k,
                                     specres_signal** out) {
    if (!amp_re || !amp_im || !locations || !out) return fail_invalid("null pointer argument");
    return guarded([&] {
        std::vector<specres::Spike> spikes(k);
        for (size_t j = 0; j < k; ++j) {
            spikes[j] = {specres::Complex{amp_re[j], amp_im[j]}, locations[j]};
        }
        *out = new specres_signal_s{specres::Signal(std::move(spikes))};
    });
}

specres_status specres_signal_random(size_t k, double min_separation, double amp_min,
                                     double amp_max, int random_phase, uint64_t seed,
                                     specres_signal** out) {
    if (!out) return fail_invalid("null pointer argument");
    return guarded([&] {
        std::mt19937_64 rng(seed);
        *out = new specres_signal_s{specres::random_signal(
            static_cast<int>(k), min_separation, amp_min, amp_max, random_phase != 0, rng)};
    });
}

specres_status specres_signal_from_json(const char* json_text, specres_signal** out) {
    if (!json_text || !out) return fail_invalid("null pointer argument");
    return guarded([&] { *out = new specres_signal_s{specres::signal_from_json(json_text)}; });
}

specres_status specres_signal_to_json(const specres_signal* signal, char** json_out) {
    if (!signal || !json_out) return fail_invalid("null pointer argument");
    return guarded([&] { *json_out = copy_string(specres::signal_to_json(signal->value)); });
}

size_t specres_signal_size(const specres_signal* signal) {
    return signal ? static_cast<size_t>(signal->value.size()) : 0;
}

double specres_signal_min_separation(const specres_signal* signal) {
    return signal ? specres::min_separation(signal->value) : 0.0;
}

specres_status specres_signal_spike(const specres_signal* signal, size_t index,
                                    double* amp_re, double* amp_im, double* location) {
    if (!signal || !amp_re || !amp_im || !location) return fail_invalid("null pointer argument");
    if (index >= signal->value.spikes().size()) return fail_invalid("spike index out of range");
    const specres::Spike& s = signal->value.spikes()[index];
    *amp_re = s.amplitude.real();
    *amp_im = s.amplitude.imag();
    *location = s.location;
    return SPECRES_OK;
}

void specres_signal_free(specres_signal* signal) { delete signal; }

/* measurements ------------------------------------------------------ */

specres_status specres_measure(const specres_signal* signal, long half_width,
                               double noise_sigma, uint64_t seed, int use_seed,
                               specres_measurement** out) {
    if (!signal || !out) return fail_invalid("null pointer argument");
    if (!use_seed && noise_sigma > 0.0) {
        return fail_invalid("noisy measurements need a seed for reproducibility");
    }
    return guarded([&] {
        std::optional<std::uint64_t> maybe_seed;
        if (use_seed) maybe_seed = seed;
        *out = new specres_measurement_s{
            specres::measure(signal->value, half_width, noise_sigma, maybe_seed)};
    });
}

specres_status specres_measurement_from_json(const char* json_text,
                                             specres_measurement** out) {
    if (!json_text || !out) return fail_invalid("null pointer argument");
    return guarded(
        [&] { *out = new specres_measurement_s{specres::measurement_from_json(json_text)}; });
}

specres_status specres_measurement_to_json(const specres_measurement* meas, char** json_out) {
    if (!meas || !json_out) return fail_invalid("null pointer argument");
    return guarded(
        [&] { *json_out = copy_string(specres::measurement_to_json(meas->value)); });
}

long specres_measurement_half_width(const specres_measurement* meas) {
    return meas ? meas->value.half_width : -1;
}

void specres_measurement_free(specres_measurement* meas) { delete meas; }

/* conditioning ------------------------------------------------------ */

specres_status specres_condition_report(const specres_signal* signal, long rows,
                                        int centered, specres_cond_report* out) {
    if (!signal || !out) return fail_invalid("null pointer argument");
    return guarded([&] {
        specres::VandermondeSpec spec;
        spec.locations = signal->value.locations();
        spec.rows = rows;
        spec.indexing = centered ? specres::Indexing::Centered : specres::Indexing::FromZero;
        const specres::VandermondeReport report = specres::condition_number(spec);
        *out = specres_cond_report{report.sigma_max,
                                   report.sigma_min,
                                   report.kappa,
                                   report.selberg_bound,
                                   report.selberg_feasible ? 1 : 0,
                                   report.rank_deficient ? 1 : 0,
                                   report.separation,
                                   report.rows};
    });
}

specres_status specres_adversarial_report_compute(size_t k, double epsilon,
                                                  specres_adversarial_report* out) {
    if (!out) return fail_invalid("null pointer argument");
    return guarded([&] {
        const specres::AdversarialInstance inst =
            specres::adversarial_instance(static_cast<int>(k), epsilon);
        const specres::ComplexMatrix v = specres::build(inst.spec);
        const std::vector<specres::Complex> vu = specres::linalg::mat_vec(v, inst.witness);
        const std::vector<double> sv = specres::linalg::singular_values(v);
        const double sigma_min = inst.spec.rows >= static_cast<long>(k) ? sv.back() : 0.0;
        const double kappa =
            sigma_min > 0.0 ? sv.front() / sigma_min : std::numeric_limits<double>::infinity();

        specres_adversarial_report report{};
        report.ell = inst.ell;
        report.r = inst.r;
        report.grid_modulus = inst.grid_modulus;
        report.half_width = inst.half_width;
        report.rows = inst.spec.rows;
        report.witness_residual = specres::linalg::two_norm(vu);
        report.residual_bound =
            2.0 * std::pow(4.0, -2.0 * inst.r) * std::sqrt(static_cast<double>(inst.spec.rows));
        report.kappa = kappa;
        report.log2_kappa = std::log2(kappa);
        report.sigma_min = sigma_min;
        report.sigma_max = sv.front();
        *out = report;
    });
}

/* recovery ---------------------------------------------------------- */

specres_status specres_recover_mpm(const specres_measurement* meas, size_t k,
                                   long pencil_order, specres_recovery** out) {
    if (!meas || !out) return fail_invalid("null pointer argument");
    return guarded([&] {
        specres::PencilConfig config{static_cast<int>(k), pencil_order > 0 ? pencil_order : 0};
        auto* handle = new specres_recovery_s;
        handle->pencil = specres::recover(meas->value, config);
        *out = handle;
    });
}

specres_status specres_recover_refine(const specres_measurement* meas, size_t k,
                                      double delta, double epsilon, double noise_bound,
                                      specres_recovery** out) {
    if (!meas || !out) return fail_invalid("null pointer argument");
    return guarded([&] {
        specres::RefineConfig config =
            specres::RefineConfig::for_separation(static_cast<int>(k), delta, epsilon);
        config.noise_bound = noise_bound;
        auto* handle = new specres_recovery_s;
        handle->refine = specres::recover_refine(meas->value, config);
        *out = handle;
    });
}

specres_status specres_recovery_to_json(const specres_recovery* recovery, char** json_out) {
    if (!recovery || !json_out) return fail_invalid("null pointer argument");
    return guarded([&] {
        *json_out = copy_string(recovery->refine
                                    ? specres::refine_outcome_to_json(*recovery->refine)
                                    : specres::recovery_to_json(*recovery->pencil));
    });
}

specres_status specres_recovery_signal(const specres_recovery* recovery,
                                       specres_signal** out) {
    if (!recovery || !out) return fail_invalid("null pointer argument");
    return guarded([&] {
        if (recovery->refine) {
            std::vector<specres::Spike> spikes;
            spikes.reserve(recovery->refine->locations.size());
            for (double f : recovery->refine->locations) {
                spikes.push_back({specres::Complex{1.0, 0.0}, f});
            }
            *out = new specres_signal_s{specres::Signal::unchecked(std::move(spikes))};
        } else {
            *out = new specres_signal_s{recovery->pencil->spikes};
        }
    });
}

long specres_recovery_oracle_calls(const specres_recovery* recovery) {
    if (!recovery || !recovery->refine) return -1;
    return recovery->refine->oracle_calls;
}

void specres_recovery_free(specres_recovery* recovery) { delete recovery; }

/* metrics ------------------------------------------------------------ */

specres_status specres_matching_distance(const specres_signal* a, const specres_signal* b,
                                         double* out) {
    if (!a || !b || !out) return fail_invalid("null pointer argument");
    return guarded([&] { *out = specres::matching_distance(a->value, b->value); });
}

specres_status specres_location_matching_distance(const specres_signal* a,
                                                  const specres_signal* b, double* out) {
    if (!a || !b || !out) return fail_invalid("null pointer argument");
    return guarded([&] {
        const std::vector<double> la = a->value.locations();
        const std::vector<double> lb = b->value.locations();
        *out = specres::location_matching_distance(la, lb);
    });
}

/* sweeps ------------------------------------------------------------- */

specres_status specres_phase_sweep_csv(const double* deltas, size_t n_deltas,
                                       const long* row_counts, size_t n_rows, size_t k,
                                       size_t trials, uint64_t seed, char** csv_out) {
    if (!deltas || !row_counts || !csv_out) return fail_invalid("null pointer argument");
    return guarded([&] {
        *csv_out = copy_string(specres::phase_sweep_csv(
            std::span<const double>(deltas, n_deltas), std::span<const long>(row_counts, n_rows),
            static_cast<int>(k), static_cast<int>(trials), seed));
    });
}

specres_status specres_noise_sweep_csv(const specres_signal* signal, long half_width,
                                       const double* sigmas, size_t n_sigmas,
                                       size_t trials, const char* algo, double refine_eps,
                                       uint64_t seed, char** csv_out) {
    if (!signal || !sigmas || !algo || !csv_out) return fail_invalid("null pointer argument");
    specres::RecoveryAlgo parsed;
    if (std::strcmp(algo, "mpm") == 0) {
        parsed = specres::RecoveryAlgo::Mpm;
    } else if (std::strcmp(algo, "refine") == 0) {
        parsed = specres::RecoveryAlgo::Refine;
    } else {
        return fail_invalid("algo must be 'mpm' or 'refine'");
    }
    return guarded([&] {
        *csv_out = copy_string(specres::noise_sweep_csv(signal->value, half_width,
                                                        std::span<const double>(sigmas, n_sigmas),
                                                        static_cast<int>(trials), parsed,
                                                        refine_eps, seed));
    });
}

} /* extern "C" */
