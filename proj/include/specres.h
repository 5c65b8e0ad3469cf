/*
 * specres - noisy super-resolution of point sources from low-frequency
 * Fourier measurements.
 *
 * C interface to the shared library. All objects are opaque handles created
 * and destroyed by the library; every fallible call returns a status code
 * and leaves a human-readable message in specres_last_error() (thread
 * local). Strings returned through char** arguments are heap-allocated and
 * must be released with specres_string_free().
 */

#ifndef SPECRES_H
#define SPECRES_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum specres_status {
    SPECRES_OK = 0,
    SPECRES_ERROR_INVALID_ARGUMENT = 1,
    SPECRES_ERROR_MISMATCHED_CARDINALITY = 2,
    SPECRES_ERROR_INSUFFICIENT_MEASUREMENTS = 3,
    SPECRES_ERROR_PENCIL_SINGULAR = 4,
    SPECRES_ERROR_REGIME_VIOLATION = 5,
    SPECRES_ERROR_PRECONDITION_VIOLATION = 6,
    SPECRES_ERROR_RANK_DEFICIENT = 7,
    SPECRES_ERROR_SINGULAR = 8,
    SPECRES_ERROR_CONVERGENCE_FAILURE = 9,
    SPECRES_ERROR_SEPARATION_INFEASIBLE = 10,
    SPECRES_ERROR_INFEASIBLE_PARAMETERS = 11,
    SPECRES_ERROR_ORACLE_REGIME_VIOLATION = 12,
    SPECRES_ERROR_NOISE_BUDGET_EXCEEDED = 13,
    SPECRES_ERROR_IO = 14,
    SPECRES_ERROR_INTERNAL = 15
} specres_status;

/* Stable identifier for a status value, e.g. "PencilSingular". */
const char* specres_status_name(specres_status status);

/* Message from the most recent failing call on this thread. */
const char* specres_last_error(void);

void specres_string_free(char* text);

/* ------------------------------------------------------------------ */
/* signals                                                             */

typedef struct specres_signal_s specres_signal;

/* k spikes with complex amplitudes and locations in [0,1) (locations are
 * wrapped into the unit interval). */
specres_status specres_signal_create(const double* amp_re, const double* amp_im,
                                     const double* locations, size_t k,
                                     specres_signal** out);

/* Random signal with pairwise wrap-around separation strictly above
 * min_separation. Magnitudes are uniform in [amp_min, amp_max]; phases are
 * uniform when random_phase is nonzero, otherwise zero. */
specres_status specres_signal_random(size_t k, double min_separation, double amp_min,
                                     double amp_max, int random_phase, uint64_t seed,
                                     specres_signal** out);

specres_status specres_signal_from_json(const char* json_text, specres_signal** out);
specres_status specres_signal_to_json(const specres_signal* signal, char** json_out);

size_t specres_signal_size(const specres_signal* signal);
double specres_signal_min_separation(const specres_signal* signal);
specres_status specres_signal_spike(const specres_signal* signal, size_t index,
                                    double* amp_re, double* amp_im, double* location);
void specres_signal_free(specres_signal* signal);

/* ------------------------------------------------------------------ */
/* measurements                                                        */

typedef struct specres_measurement_s specres_measurement;

/* v_ell = sum_j u_j e^{i 2 pi f_j ell} + eta_ell for |ell| <= half_width,
 * with eta_ell complex Gaussian of per-component deviation noise_sigma drawn
 * from the seeded generator (use_seed = 0 records no seed; sigma must then
 * be zero). */
specres_status specres_measure(const specres_signal* signal, long half_width,
                               double noise_sigma, uint64_t seed, int use_seed,
                               specres_measurement** out);

specres_status specres_measurement_from_json(const char* json_text,
                                             specres_measurement** out);
specres_status specres_measurement_to_json(const specres_measurement* meas,
                                           char** json_out);
long specres_measurement_half_width(const specres_measurement* meas);
void specres_measurement_free(specres_measurement* meas);

/* ------------------------------------------------------------------ */
/* Vandermonde conditioning                                            */

typedef struct specres_cond_report {
    double sigma_max;
    double sigma_min;
    double kappa;         /* +inf when rank deficient or rows < k */
    double selberg_bound; /* +inf when infeasible (rows <= 1/separation + 1) */
    int selberg_feasible;
    int rank_deficient;
    double separation;
    long rows;
} specres_cond_report;

/* Conditioning of the Vandermonde matrix at the signal's locations with the
 * given row count; centered selects symmetric powers -n..n (odd rows). */
specres_status specres_condition_report(const specres_signal* signal, long rows,
                                        int centered, specres_cond_report* out);

typedef struct specres_adversarial_report {
    int ell;
    int r;
    long grid_modulus;       /* node spacing is 1/grid_modulus */
    long half_width;         /* measurement window; rows = 2*half_width + 1 */
    long rows;
    double witness_residual; /* |V u|_2 for the unit witness u */
    double residual_bound;   /* 2 * 4^{-2r} * sqrt(rows) */
    double kappa;
    double log2_kappa;
    double sigma_min;
    double sigma_max;
} specres_adversarial_report;

/* Conditioning of the below-threshold adversarial instance at the given
 * sparsity and slack epsilon in (0,1); k must be at least
 * 2*ceil(4/epsilon) + 1. */
specres_status specres_adversarial_report_compute(size_t k, double epsilon,
                                                  specres_adversarial_report* out);

/* ------------------------------------------------------------------ */
/* recovery                                                            */

typedef struct specres_recovery_s specres_recovery;

/* Modified matrix pencil method; pencil_order <= 0 selects the full
 * measurement half width. */
specres_status specres_recover_mpm(const specres_measurement* meas, size_t k,
                                   long pencil_order, specres_recovery** out);

/* Fejer-preconditioned iterative refinement for unit-amplitude signals.
 * delta is the assumed minimum separation, epsilon the target accuracy and
 * noise_bound the declared per-entry noise magnitude (at most
 * epsilon^2/(4k)). */
specres_status specres_recover_refine(const specres_measurement* meas, size_t k,
                                      double delta, double epsilon, double noise_bound,
                                      specres_recovery** out);

specres_status specres_recovery_to_json(const specres_recovery* recovery, char** json_out);
/* Estimated spikes as a new signal handle (refine results carry unit
 * amplitudes). */
specres_status specres_recovery_signal(const specres_recovery* recovery,
                                       specres_signal** out);
/* Oracle evaluations spent by the refinement search; -1 for pencil results. */
long specres_recovery_oracle_calls(const specres_recovery* recovery);
void specres_recovery_free(specres_recovery* recovery);

/* ------------------------------------------------------------------ */
/* metrics                                                             */

/* min over permutations of the max per-spike error
 * max(|u_a - u_b|, d_w(f_a, f_b)); both signals need equal size. */
specres_status specres_matching_distance(const specres_signal* a, const specres_signal* b,
                                         double* out);
/* Same, locations only. */
specres_status specres_location_matching_distance(const specres_signal* a,
                                                  const specres_signal* b, double* out);

/* ------------------------------------------------------------------ */
/* sweeps                                                              */

/* CSV with columns delta,m,trial,kappa,selberg_bound,sigma_min,sigma_max;
 * '#' header lines embed the resolved configuration. Deterministic for a
 * fixed seed. */
specres_status specres_phase_sweep_csv(const double* deltas, size_t n_deltas,
                                       const long* row_counts, size_t n_rows, size_t k,
                                       size_t trials, uint64_t seed, char** csv_out);

/* CSV with columns sigma,trial,matching_distance. algo is "mpm" or
 * "refine"; refine_eps is the refinement accuracy target (ignored for
 * "mpm"). */
specres_status specres_noise_sweep_csv(const specres_signal* signal, long half_width,
                                       const double* sigmas, size_t n_sigmas,
                                       size_t trials, const char* algo, double refine_eps,
                                       uint64_t seed, char** csv_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPECRES_H */
