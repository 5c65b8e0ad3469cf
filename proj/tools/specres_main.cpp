// Command-line harness for the specres shared library: instance generation,
// measurement synthesis, both recovery algorithms, conditioning reports, and
// reproducible experiment sweeps. Exit codes: 0 success, 1 domain error
// (machine-readable JSON on stderr), 2 invalid arguments.

#include <specres.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using nlohmann::json;

struct DomainError {
    std::string name;
    std::string message;
};

[[noreturn]] void fail(specres_status status) {
    throw DomainError{specres_status_name(status), specres_last_error()};
}

void check(specres_status status) {
    if (status != SPECRES_OK) fail(status);
}

template <typename T, void (*FreeFn)(T*)>
struct Handle {
    T* ptr = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    Handle(Handle&& other) noexcept : ptr(other.ptr) { other.ptr = nullptr; }
    Handle& operator=(Handle&& other) noexcept {
        std::swap(ptr, other.ptr);
        return *this;
    }
    ~Handle() {
        if (ptr) FreeFn(ptr);
    }
    operator T*() const { return ptr; }
};

using SignalHandle = Handle<specres_signal, specres_signal_free>;
using MeasurementHandle = Handle<specres_measurement, specres_measurement_free>;
using RecoveryHandle = Handle<specres_recovery, specres_recovery_free>;

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { specres_string_free(ptr); }
    std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError{"IoError", "cannot open " + path};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError{"IoError", "cannot write " + path};
    out << content;
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content << "\n";
    } else {
        write_file(path, content);
    }
}

// "start:stop" geometric sequence with an explicit point count.
std::vector<double> geometric_range(const std::string& range, int count) {
    const auto colon = range.find(':');
    if (colon == std::string::npos) {
        throw DomainError{"InvalidArgument", "range must look like start:stop, got " + range};
    }
    double start = 0.0, stop = 0.0;
    try {
        start = std::stod(range.substr(0, colon));
        stop = std::stod(range.substr(colon + 1));
    } catch (const std::exception&) {
        throw DomainError{"InvalidArgument", "cannot parse range " + range};
    }
    if (start <= 0.0 || stop <= 0.0 || count < 1) {
        throw DomainError{"InvalidArgument", "geometric ranges need positive endpoints"};
    }
    std::vector<double> points(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        points[static_cast<std::size_t>(i)] = start * std::pow(stop / start, t);
    }
    return points;
}

std::vector<long> integer_range(const std::string& range, int count) {
    std::vector<long> out;
    for (double v : geometric_range(range, count)) {
        const long rounded = std::lround(v);
        if (out.empty() || out.back() != rounded) out.push_back(rounded);
    }
    return out;
}

SignalHandle load_signal(const std::string& path) {
    SignalHandle signal;
    check(specres_signal_from_json(read_file(path).c_str(), &signal.ptr));
    return signal;
}

MeasurementHandle load_measurement(const std::string& path) {
    MeasurementHandle meas;
    check(specres_measurement_from_json(read_file(path).c_str(), &meas.ptr));
    return meas;
}

json with_config(const std::string& payload, json config) {
    json j = json::parse(payload);
    j["config"] = std::move(config);
    return j;
}

json signal_to_json_handle(const specres_signal* signal) {
    OwnedString text;
    check(specres_signal_to_json(signal, &text.ptr));
    return json::parse(text.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"specres: super-resolution of point sources from low-frequency measurements"};
    app.require_subcommand(1);
    int exit_code = 0;
    std::string active_command;

    // generate -------------------------------------------------------
    auto* generate = app.add_subcommand("generate", "draw a random well-separated signal");
    struct {
        std::size_t k = 2;
        double delta = 0.1;
        std::uint64_t seed = 0;
        double amp_min = 1.0, amp_max = 1.0;
        bool random_phase = false;
        std::string output;
    } gen;
    generate->add_option("--k", gen.k, "spike count")->required();
    generate->add_option("--delta", gen.delta, "minimum wrap-around separation")->required();
    generate->add_option("--seed", gen.seed, "RNG seed")->required();
    generate->add_option("--amp-min", gen.amp_min, "smallest amplitude magnitude");
    generate->add_option("--amp-max", gen.amp_max, "largest amplitude magnitude");
    generate->add_flag("--random-phase", gen.random_phase, "randomize amplitude phases");
    generate->add_option("--output", gen.output, "signal JSON path")->required();
    generate->callback([&] {
        SignalHandle signal;
        check(specres_signal_random(gen.k, gen.delta, gen.amp_min, gen.amp_max,
                                    gen.random_phase ? 1 : 0, gen.seed, &signal.ptr));
        OwnedString text;
        check(specres_signal_to_json(signal, &text.ptr));
        json out = with_config(text.str(), json{{"command", "generate"},
                                                {"k", gen.k},
                                                {"delta", gen.delta},
                                                {"seed", gen.seed},
                                                {"amp_min", gen.amp_min},
                                                {"amp_max", gen.amp_max},
                                                {"random_phase", gen.random_phase}});
        write_output(gen.output, out.dump(2));
        std::cout << "wrote " << gen.output << " (k=" << gen.k
                  << ", min separation=" << specres_signal_min_separation(signal) << ")\n";
    });

    // measure --------------------------------------------------------
    auto* measure_cmd = app.add_subcommand("measure", "synthesize noisy Fourier measurements");
    struct {
        std::string signal_path;
        long n = 0;
        double sigma = 0.0;
        std::uint64_t seed = 0;
        std::string output;
    } mea;
    measure_cmd->add_option("--signal", mea.signal_path, "signal JSON path")->required();
    measure_cmd->add_option("--n", mea.n, "measurement half width")->required();
    measure_cmd->add_option("--sigma", mea.sigma, "per-component noise deviation")->required();
    measure_cmd->add_option("--seed", mea.seed, "RNG seed")->required();
    measure_cmd->add_option("--output", mea.output, "measurement JSON path")->required();
    measure_cmd->callback([&] {
        SignalHandle signal = load_signal(mea.signal_path);
        MeasurementHandle meas;
        check(specres_measure(signal, mea.n, mea.sigma, mea.seed, 1, &meas.ptr));
        OwnedString text;
        check(specres_measurement_to_json(meas, &text.ptr));
        json out = with_config(text.str(), json{{"command", "measure"},
                                                {"signal", mea.signal_path},
                                                {"n", mea.n},
                                                {"sigma", mea.sigma},
                                                {"seed", mea.seed}});
        write_output(mea.output, out.dump(2));
    });

    // cond -----------------------------------------------------------
    auto* cond = app.add_subcommand("cond", "Vandermonde conditioning report");
    struct {
        std::string signal_path;
        long rows = 0;
        bool centered = false;
        std::string output = "-";
    } con;
    cond->add_option("--signal", con.signal_path, "signal JSON path")->required();
    cond->add_option("--m", con.rows, "row count of the Vandermonde matrix")->required();
    cond->add_flag("--centered", con.centered, "use symmetric powers -n..n (odd m)");
    cond->add_option("--output", con.output, "report path, '-' for stdout");
    cond->callback([&] {
        SignalHandle signal = load_signal(con.signal_path);
        specres_cond_report report{};
        check(specres_condition_report(signal, con.rows, con.centered ? 1 : 0, &report));
        json out{{"rows", report.rows},
                 {"kappa", report.kappa},
                 {"sigma_min", report.sigma_min},
                 {"sigma_max", report.sigma_max},
                 {"separation", report.separation},
                 {"rank_deficient", report.rank_deficient != 0},
                 {"selberg_feasible", report.selberg_feasible != 0},
                 {"config", {{"command", "cond"},
                             {"signal", con.signal_path},
                             {"m", con.rows},
                             {"centered", con.centered}}}};
        if (report.selberg_feasible) {
            out["selberg_bound"] = report.selberg_bound;
            out["kappa_le_selberg"] = report.kappa <= report.selberg_bound;
        } else {
            out["selberg_bound"] = nullptr;
        }
        write_output(con.output, out.dump(2));
    });

    // lower-bound ----------------------------------------------------
    auto* lower = app.add_subcommand("lower-bound", "below-threshold adversarial instance");
    struct {
        std::size_t k = 17;
        double epsilon = 0.5;
        std::string output = "-";
    } low;
    lower->add_option("--k", low.k, "spike count (>= 2*ceil(4/epsilon)+1)")->required();
    lower->add_option("--epsilon", low.epsilon, "separation slack in (0,1)")->required();
    lower->add_option("--output", low.output, "report path, '-' for stdout");
    lower->callback([&] {
        specres_adversarial_report report{};
        check(specres_adversarial_report_compute(low.k, low.epsilon, &report));
        json out{{"ell", report.ell},
                 {"r", report.r},
                 {"grid_modulus", report.grid_modulus},
                 {"half_width", report.half_width},
                 {"rows", report.rows},
                 {"witness_residual", report.witness_residual},
                 {"residual_bound", report.residual_bound},
                 {"bound_satisfied", report.witness_residual <= report.residual_bound},
                 {"kappa", report.kappa},
                 {"log2_kappa", report.log2_kappa},
                 {"sigma_min", report.sigma_min},
                 {"sigma_max", report.sigma_max},
                 {"config",
                  {{"command", "lower-bound"}, {"k", low.k}, {"epsilon", low.epsilon}}}};
        write_output(low.output, out.dump(2));
    });

    // recover-mpm ----------------------------------------------------
    auto* rec_mpm = app.add_subcommand("recover-mpm", "matrix pencil recovery");
    struct {
        std::string input;
        std::size_t k = 1;
        long pencil_order = 0;
        std::string output;
    } rm;
    rec_mpm->add_option("--input", rm.input, "measurement JSON path")->required();
    rec_mpm->add_option("--k", rm.k, "spike count")->required();
    rec_mpm->add_option("--pencil-order", rm.pencil_order, "Toeplitz size (default: half width)");
    rec_mpm->add_option("--output", rm.output, "result JSON path")->required();
    rec_mpm->callback([&] {
        MeasurementHandle meas = load_measurement(rm.input);
        RecoveryHandle recovery;
        check(specres_recover_mpm(meas, rm.k, rm.pencil_order, &recovery.ptr));
        OwnedString text;
        check(specres_recovery_to_json(recovery, &text.ptr));
        json out = with_config(text.str(), json{{"command", "recover-mpm"},
                                                {"input", rm.input},
                                                {"k", rm.k},
                                                {"pencil_order", rm.pencil_order}});
        write_output(rm.output, out.dump(2));
    });

    // recover-refine -------------------------------------------------
    auto* rec_ref = app.add_subcommand("recover-refine", "Fejer-preconditioned refinement");
    struct {
        std::string input;
        std::size_t k = 1;
        double delta = 0.1;
        double eps = 1e-3;
        double noise_bound = 0.0;
        std::string output;
    } rr;
    rec_ref->add_option("--input", rr.input, "measurement JSON path")->required();
    rec_ref->add_option("--k", rr.k, "spike count")->required();
    rec_ref->add_option("--delta", rr.delta, "assumed minimum separation")->required();
    rec_ref->add_option("--eps", rr.eps, "target location accuracy")->required();
    rec_ref->add_option("--noise-bound", rr.noise_bound, "declared per-entry noise magnitude");
    rec_ref->add_option("--output", rr.output, "result JSON path")->required();
    rec_ref->callback([&] {
        MeasurementHandle meas = load_measurement(rr.input);
        RecoveryHandle recovery;
        check(specres_recover_refine(meas, rr.k, rr.delta, rr.eps, rr.noise_bound,
                                     &recovery.ptr));
        OwnedString text;
        check(specres_recovery_to_json(recovery, &text.ptr));
        json out = with_config(text.str(), json{{"command", "recover-refine"},
                                                {"input", rr.input},
                                                {"k", rr.k},
                                                {"delta", rr.delta},
                                                {"eps", rr.eps},
                                                {"noise_bound", rr.noise_bound}});
        write_output(rr.output, out.dump(2));
    });

    // phase-sweep ----------------------------------------------------
    auto* phase = app.add_subcommand("phase-sweep", "conditioning sweep over (delta, m)");
    struct {
        std::string deltas;
        int delta_count = 0;
        std::string ms;
        int m_count = 0;
        std::size_t k = 2;
        std::size_t trials = 1;
        std::uint64_t seed = 0;
        std::string output;
    } ps;
    phase->add_option("--deltas", ps.deltas, "separation range start:stop (geometric)")->required();
    phase->add_option("--delta-count", ps.delta_count, "points in the delta range")->required();
    phase->add_option("--ms", ps.ms, "row-count range start:stop (geometric)")->required();
    phase->add_option("--m-count", ps.m_count, "points in the m range")->required();
    phase->add_option("--k", ps.k, "spike count")->required();
    phase->add_option("--trials", ps.trials, "instances per (delta, m) cell")->required();
    phase->add_option("--seed", ps.seed, "RNG seed")->required();
    phase->add_option("--output", ps.output, "CSV path")->required();
    phase->callback([&] {
        const std::vector<double> deltas = geometric_range(ps.deltas, ps.delta_count);
        const std::vector<long> rows = integer_range(ps.ms, ps.m_count);
        OwnedString csv;
        check(specres_phase_sweep_csv(deltas.data(), deltas.size(), rows.data(), rows.size(),
                                      ps.k, ps.trials, ps.seed, &csv.ptr));
        write_output(ps.output, csv.str());
    });

    // noise-sweep ----------------------------------------------------
    auto* noise = app.add_subcommand("noise-sweep", "recovery error vs noise level");
    struct {
        std::string signal_path;
        std::string sigmas;
        int sigma_count = 0;
        std::size_t trials = 1;
        std::string algo = "mpm";
        long n = 0;
        double eps = 1e-3;
        std::uint64_t seed = 0;
        std::string output;
    } ns;
    noise->add_option("--signal", ns.signal_path, "signal JSON path")->required();
    noise->add_option("--sigmas", ns.sigmas, "noise range start:stop (geometric)")->required();
    noise->add_option("--sigma-count", ns.sigma_count, "points in the noise range")->required();
    noise->add_option("--trials", ns.trials, "seeds per noise level")->required();
    noise->add_option("--algo", ns.algo, "recovery algorithm: mpm or refine")->required();
    noise->add_option("--n", ns.n, "measurement half width")->required();
    noise->add_option("--eps", ns.eps, "refine accuracy target");
    noise->add_option("--seed", ns.seed, "RNG seed")->required();
    noise->add_option("--output", ns.output, "CSV path")->required();
    noise->callback([&] {
        SignalHandle signal = load_signal(ns.signal_path);
        const std::vector<double> sigmas = geometric_range(ns.sigmas, ns.sigma_count);
        OwnedString csv;
        check(specres_noise_sweep_csv(signal, ns.n, sigmas.data(), sigmas.size(), ns.trials,
                                      ns.algo.c_str(), ns.eps, ns.seed, &csv.ptr));
        write_output(ns.output, csv.str());
    });

    // bench ----------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "time both recovery algorithms on one instance");
    struct {
        std::string signal_path;
        long n = 0;
        double sigma = 0.0;
        std::uint64_t seed = 0;
        double delta = 0.1;
        double eps = 1e-3;
        std::string output = "-";
    } be;
    bench->add_option("--signal", be.signal_path, "signal JSON path")->required();
    bench->add_option("--n", be.n, "measurement half width")->required();
    bench->add_option("--sigma", be.sigma, "noise deviation")->required();
    bench->add_option("--seed", be.seed, "RNG seed")->required();
    bench->add_option("--delta", be.delta, "assumed separation for refine")->required();
    bench->add_option("--eps", be.eps, "refine accuracy target")->required();
    bench->add_option("--output", be.output, "report path, '-' for stdout");
    bench->callback([&] {
        SignalHandle signal = load_signal(be.signal_path);
        const std::size_t k = specres_signal_size(signal);
        MeasurementHandle meas;
        check(specres_measure(signal, be.n, be.sigma, be.seed, 1, &meas.ptr));

        using clock = std::chrono::steady_clock;
        const auto t0 = clock::now();
        RecoveryHandle mpm_result;
        check(specres_recover_mpm(meas, k, 0, &mpm_result.ptr));
        const auto t1 = clock::now();
        RecoveryHandle refine_result;
        check(specres_recover_refine(meas, k, be.delta, be.eps, 0.0, &refine_result.ptr));
        const auto t2 = clock::now();

        SignalHandle mpm_signal, refine_signal;
        check(specres_recovery_signal(mpm_result, &mpm_signal.ptr));
        check(specres_recovery_signal(refine_result, &refine_signal.ptr));
        double mpm_distance = 0.0, refine_distance = 0.0;
        check(specres_matching_distance(mpm_signal, signal, &mpm_distance));
        check(specres_location_matching_distance(refine_signal, signal, &refine_distance));

        const auto ms = [](auto a, auto b) {
            return std::chrono::duration<double, std::milli>(b - a).count();
        };
        json out{{"mpm_ms", ms(t0, t1)},
                 {"refine_ms", ms(t1, t2)},
                 {"refine_oracle_calls", specres_recovery_oracle_calls(refine_result)},
                 {"mpm_matching_distance", mpm_distance},
                 {"refine_location_matching_distance", refine_distance},
                 {"config",
                  {{"command", "bench"},
                   {"signal", be.signal_path},
                   {"n", be.n},
                   {"sigma", be.sigma},
                   {"seed", be.seed},
                   {"delta", be.delta},
                   {"eps", be.eps}}}};
        write_output(be.output, out.dump(2));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const DomainError& e) {
        for (const CLI::App* sub : app.get_subcommands()) active_command = sub->get_name();
        std::cerr << json{{"error", e.name}, {"message", e.message}, {"command", active_command}}
                         .dump()
                  << "\n";
        return 1;
    }
    return exit_code;
}
