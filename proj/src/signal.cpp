#include "signal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

#include "rng.hpp"

namespace specres {

namespace {

void validate_spikes(const std::vector<Spike>& spikes) {
    if (spikes.empty()) {
        throw Error(ErrorCode::InvalidArgument, "signal needs at least one spike");
    }
    for (const Spike& s : spikes) {
        if (!std::isfinite(s.amplitude.real()) || !std::isfinite(s.amplitude.imag()) ||
            !std::isfinite(s.location)) {
            throw Error(ErrorCode::InvalidArgument, "spike fields must be finite");
        }
    }
}

std::vector<Spike> normalized(std::vector<Spike> spikes) {
    for (Spike& s : spikes) {
        s.location = wrap_to_unit(s.location);
    }
    return spikes;
}

}  // namespace

Signal::Signal(std::vector<Spike> spikes) {
    validate_spikes(spikes);
    spikes_ = normalized(std::move(spikes));
    std::vector<double> locs = locations();
    std::sort(locs.begin(), locs.end());
    for (std::size_t i = 1; i < locs.size(); ++i) {
        if (locs[i] == locs[i - 1]) {
            throw Error(ErrorCode::InvalidArgument, "spike locations must be distinct");
        }
    }
}

Signal Signal::unchecked(std::vector<Spike> spikes) {
    validate_spikes(spikes);
    Signal s;
    s.spikes_ = normalized(std::move(spikes));
    return s;
}

std::vector<double> Signal::locations() const {
    std::vector<double> out;
    out.reserve(spikes_.size());
    for (const Spike& s : spikes_) out.push_back(s.location);
    return out;
}

std::vector<Complex> Signal::amplitudes() const {
    std::vector<Complex> out;
    out.reserve(spikes_.size());
    for (const Spike& s : spikes_) out.push_back(s.amplitude);
    return out;
}

double wrap_to_unit(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // guards floor rounding for tiny negative x
    return f;
}

double wrap_distance(double a, double b) {
    const double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

double min_separation(std::span<const double> locations) {
    const std::size_t k = locations.size();
    if (k <= 1) {
        return 0.5;  // metric diameter; keeps bound formulas finite
    }
    std::vector<double> sorted(locations.begin(), locations.end());
    std::sort(sorted.begin(), sorted.end());
    double best = wrap_distance(sorted.front(), sorted.back());
    for (std::size_t i = 1; i < k; ++i) {
        best = std::min(best, sorted[i] - sorted[i - 1]);
    }
    return best;
}

double min_separation(const Signal& signal) {
    const std::vector<double> locs = signal.locations();
    return min_separation(locs);
}

MeasurementSet measure(const Signal& signal, long half_width, double noise_sigma,
                       std::optional<std::uint64_t> seed) {
    if (half_width < 0) {
        throw Error(ErrorCode::InvalidArgument, "half_width must be nonnegative");
    }
    if (noise_sigma < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "noise_sigma must be nonnegative");
    }
    MeasurementSet meas;
    meas.half_width = half_width;
    meas.noise_sigma = noise_sigma;
    meas.rng_seed = seed;
    meas.values.resize(static_cast<std::size_t>(2 * half_width + 1));

    std::mt19937_64 rng(seed.value_or(0));
    const double two_pi = 2.0 * std::numbers::pi;
    for (long ell = -half_width; ell <= half_width; ++ell) {
        Complex v{0.0, 0.0};
        for (const Spike& s : signal.spikes()) {
            v += s.amplitude * std::polar(1.0, two_pi * s.location * static_cast<double>(ell));
        }
        if (noise_sigma > 0.0) {
            v += complex_gaussian(rng, noise_sigma);
        }
        meas.values[static_cast<std::size_t>(ell + half_width)] = v;
    }
    return meas;
}

namespace detail {

double matching_bruteforce(const std::vector<std::vector<double>>& cost) {
    const std::size_t k = cost.size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            worst = std::max(worst, cost[i][perm[i]]);
            if (worst >= best) break;
        }
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

namespace {

// Kuhn's augmenting-path matching restricted to edges with cost <= limit.
bool perfect_matching_below(const std::vector<std::vector<double>>& cost, double limit) {
    const std::size_t k = cost.size();
    std::vector<int> match_right(k, -1);
    std::vector<char> visited;

    std::function<bool(std::size_t)> try_augment = [&](std::size_t left) -> bool {
        for (std::size_t right = 0; right < k; ++right) {
            if (cost[left][right] <= limit && !visited[right]) {
                visited[right] = 1;
                if (match_right[right] < 0 ||
                    try_augment(static_cast<std::size_t>(match_right[right]))) {
                    match_right[right] = static_cast<int>(left);
                    return true;
                }
            }
        }
        return false;
    };

    for (std::size_t left = 0; left < k; ++left) {
        visited.assign(k, 0);
        if (!try_augment(left)) return false;
    }
    return true;
}

}  // namespace

double matching_bottleneck(const std::vector<std::vector<double>>& cost) {
    std::vector<double> thresholds;
    thresholds.reserve(cost.size() * cost.size());
    for (const auto& row : cost) {
        thresholds.insert(thresholds.end(), row.begin(), row.end());
    }
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    std::size_t lo = 0, hi = thresholds.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (perfect_matching_below(cost, thresholds[mid])) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return thresholds[lo];
}

}  // namespace detail

namespace {

double matching_from_cost(std::vector<std::vector<double>> cost) {
    if (cost.size() <= 8) {
        return detail::matching_bruteforce(cost);
    }
    return detail::matching_bottleneck(cost);
}

}  // namespace

double matching_distance(const Signal& est, const Signal& truth) {
    if (est.size() != truth.size()) {
        throw Error(ErrorCode::MismatchedCardinality, "signals have different spike counts");
    }
    const std::size_t k = static_cast<std::size_t>(est.size());
    std::vector<std::vector<double>> cost(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const Spike& e = est.spikes()[i];
            const Spike& t = truth.spikes()[j];
            cost[i][j] = std::max(std::abs(e.amplitude - t.amplitude),
                                  wrap_distance(e.location, t.location));
        }
    }
    return matching_from_cost(std::move(cost));
}

double location_matching_distance(std::span<const double> est, std::span<const double> truth) {
    if (est.size() != truth.size()) {
        throw Error(ErrorCode::MismatchedCardinality, "location sets have different sizes");
    }
    const std::size_t k = est.size();
    if (k == 0) return 0.0;
    std::vector<std::vector<double>> cost(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            cost[i][j] = wrap_distance(wrap_to_unit(est[i]), wrap_to_unit(truth[j]));
        }
    }
    return matching_from_cost(std::move(cost));
}

std::vector<double> sample_separated_locations(int k, double min_sep, std::mt19937_64& rng,
                                               long max_tries) {
    if (k < 1) {
        throw Error(ErrorCode::InvalidArgument, "k must be positive");
    }
    if (min_sep <= 0.0) {
        throw Error(ErrorCode::InvalidArgument, "min_sep must be positive");
    }
    if (k > 1 && static_cast<double>(k) * min_sep >= 1.0) {
        throw Error(ErrorCode::SeparationInfeasible,
                    "cannot place k points on the circle at this separation");
    }
    std::vector<double> locs(static_cast<std::size_t>(k));
    for (long attempt = 0; attempt < max_tries; ++attempt) {
        for (double& f : locs) f = uniform01(rng);
        if (k == 1 || min_separation(locs) > min_sep) {
            return locs;
        }
    }
    throw Error(ErrorCode::SeparationInfeasible, "rejection sampling exceeded the trial cap");
}

Signal random_signal(int k, double min_sep, double amp_min, double amp_max, bool random_phase,
                     std::mt19937_64& rng) {
    if (amp_min <= 0.0 || amp_max < amp_min) {
        throw Error(ErrorCode::InvalidArgument, "need 0 < amp_min <= amp_max");
    }
    const std::vector<double> locs = sample_separated_locations(k, min_sep, rng);
    std::vector<Spike> spikes(locs.size());
    for (std::size_t j = 0; j < locs.size(); ++j) {
        const double mag =
            (amp_min == amp_max) ? amp_min : uniform_in(rng, amp_min, amp_max);
        const double phase =
            random_phase ? uniform_in(rng, 0.0, 2.0 * std::numbers::pi) : 0.0;
        spikes[j] = {std::polar(mag, phase), locs[j]};
    }
    return Signal(std::move(spikes));
}

}  // namespace specres
