#ifndef LPCS_EXPERIMENTS_HPP
#define LPCS_EXPERIMENTS_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gd_estimator.hpp"
#include "noise.hpp"
#include "random.hpp"
#include "reconstruction.hpp"
#include "signal.hpp"
#include "support.hpp"

namespace lpcs {

/// One Monte Carlo campaign. noise == nullopt means noiseless measurements.
struct ExperimentConfig {
    std::size_t                    n_len{128};
    std::size_t                    m{64};
    std::vector<SpectralComponent> components{reference_components()};
    std::optional<NoiseSpec>       noise{};
    std::vector<NormExponent>      norms{NormExponent{1.0}, NormExponent{2.0}, NormExponent{3.0}};
    ThresholdStrategy              strategy{};
    std::size_t                    trials{200};
    std::uint64_t                  master_seed{0};
    unsigned                       threads{0}; // 0: hardware concurrency; never affects results

    void validate() const {
        if (n_len == 0) throw std::invalid_argument("n must be positive");
        if (m < 2) throw std::invalid_argument("m must be at least 2");
        if (m > n_len) throw std::invalid_argument("m = " + std::to_string(m) + " exceeds n = " + std::to_string(n_len));
        if (trials == 0) throw std::invalid_argument("trials must be at least 1");
        if (norms.empty()) throw std::invalid_argument("norms must be nonempty");
        for (const auto& c : components) {
            if (c.bin >= n_len) throw std::invalid_argument("component bin " + std::to_string(c.bin) + " >= n");
        }
    }

    [[nodiscard]] std::vector<std::size_t> true_support() const {
        std::vector<std::size_t> bins;
        for (const auto& c : components) bins.push_back(c.bin);
        std::sort(bins.begin(), bins.end());
        return bins;
    }
};

/// Cauchy noise, sigma1 = sigma2 = 1.
[[nodiscard]] inline ExperimentConfig example1_config() {
    ExperimentConfig cfg;
    cfg.noise = NoiseSpec{NoiseFamily::Cauchy, 1.0, 1.0};
    return cfg;
}

/// Cubic Gaussian noise, sigma1 = sigma2 = 1.
[[nodiscard]] inline ExperimentConfig example2_config() {
    ExperimentConfig cfg;
    cfg.noise = NoiseSpec{NoiseFamily::CubicGaussian, 1.0, 1.0};
    return cfg;
}

[[nodiscard]] inline ExperimentConfig noiseless_config() { return ExperimentConfig{}; }

enum class FailureReason { None, EmptySupport, OversizedSupport, RankDeficient };

[[nodiscard]] constexpr std::string_view to_string(FailureReason r) noexcept {
    switch (r) {
    case FailureReason::None: return "none";
    case FailureReason::EmptySupport: return "empty_support";
    case FailureReason::OversizedSupport: return "oversized_support";
    case FailureReason::RankDeficient: return "rank_deficient";
    }
    return "unknown";
}

struct NormOutcome {
    NormExponent      norm{2.0};
    SupportSet        support;
    bool              support_exact{false};
    double            mse_time{0.0}; // mean |x_hat(n) - x_clean(n)|^2 over all N samples
    double            mse_freq{0.0}; // mean |X_hat(k) - X_clean(k)|^2 over all N bins
    FailureReason     failure{FailureReason::None};
    std::vector<cplx> coefficients;
};

struct TrialResult {
    std::size_t              trial_index{0};
    std::uint64_t            seed{0};
    std::vector<NormOutcome> outcomes;

    friend bool operator==(const TrialResult& a, const TrialResult& b) {
        if (a.trial_index != b.trial_index || a.seed != b.seed || a.outcomes.size() != b.outcomes.size()) return false;
        for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
            const auto& x = a.outcomes[i];
            const auto& y = b.outcomes[i];
            if (!(x.norm == y.norm && x.support == y.support && x.support_exact == y.support_exact && x.mse_time == y.mse_time &&
                  x.mse_freq == y.mse_freq && x.failure == y.failure && x.coefficients == y.coefficients)) {
                return false;
            }
        }
        return true;
    }
};

/// Per-norm intermediates of one trial, kept for figure output.
struct NormDetail {
    GDProfile     profile;
    double        threshold{0.0};
    Spectrum      spectrum;
    ComplexSignal signal;
};

struct TrialDetail {
    ComplexSignal           clean;
    Spectrum                clean_spectrum;
    MeasurementSet          measurements;
    std::vector<NormDetail> norms;
    TrialResult             result;
};

namespace detail {

[[nodiscard]] inline double mean_squared_error(std::span<const cplx> a, std::span<const cplx> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
    return acc / static_cast<double>(a.size());
}

[[nodiscard]] inline double median_of(std::vector<double> v) { return v.empty() ? 0.0 : median(std::move(v)); }

} // namespace detail

/**
 * One paired trial. The random stream is seeded from (master_seed,
 * trial_index); one measurement subset and one noise realization are drawn
 * and shared by every norm. Each norm then runs GD -> threshold -> support ->
 * least squares and is scored against the clean signal. A norm that yields no
 * usable support is recorded as a failure scored with the zero reconstruction.
 */
[[nodiscard]] inline TrialDetail run_trial_detailed(const ExperimentConfig& config, std::size_t trial_index) {
    config.validate();
    const auto seed = derive_seed(config.master_seed, trial_index);
    Rng        rng(seed);

    TrialDetail d{synthesize_sparse_signal(config.components, config.n_len), Spectrum{}, MeasurementSet({}, {}, config.n_len), {}, {}};
    d.clean_spectrum = dft(d.clean);
    d.measurements   = sample_measurements(d.clean, config.m, rng);
    if (config.noise) {
        d.measurements = add_noise(d.measurements, *config.noise, rng);
    }
    d.result.trial_index = trial_index;
    d.result.seed        = seed;

    const auto truth = config.true_support();
    for (const auto& norm : config.norms) {
        NormDetail  nd{generalized_deviation(d.measurements, norm), 0.0, Spectrum(config.n_len), ComplexSignal(config.n_len)};
        NormOutcome out;
        out.norm          = norm;
        nd.threshold      = compute_threshold(nd.profile, config.strategy);
        out.support       = detect_support(nd.profile, config.strategy);
        out.support_exact = out.support.bins == truth;

        if (out.support.empty()) {
            out.failure = FailureReason::EmptySupport;
        } else if (out.support.size() > d.measurements.size()) {
            out.failure = FailureReason::OversizedSupport;
        } else {
            try {
                out.coefficients = least_squares_solve(build_cs_system(d.measurements, out.support, config.n_len));
                nd.spectrum      = spectrum_from_coefficients(out.coefficients, out.support, config.n_len);
                nd.signal        = idft(nd.spectrum);
            } catch (const RankDeficientError&) {
                out.failure = FailureReason::RankDeficient;
            }
        }
        out.mse_time = detail::mean_squared_error(nd.signal.samples, d.clean.samples);
        out.mse_freq = detail::mean_squared_error(nd.spectrum.bins, d.clean_spectrum.bins);
        d.result.outcomes.push_back(std::move(out));
        d.norms.push_back(std::move(nd));
    }
    return d;
}

[[nodiscard]] inline TrialResult run_single_trial(const ExperimentConfig& config, std::size_t trial_index) {
    return run_trial_detailed(config, trial_index).result;
}

/// Runs trials 0..trials-1, in parallel when threads != 1. Results are stored
/// by trial index, so the output does not depend on scheduling.
[[nodiscard]] inline std::vector<TrialResult> run_trials(const ExperimentConfig& config) {
    config.validate();
    std::vector<TrialResult> results(config.trials);
    unsigned                 workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers                          = static_cast<unsigned>(std::min<std::size_t>(workers, config.trials));

    if (workers <= 1) {
        for (std::size_t t = 0; t < config.trials; ++t) results[t] = run_single_trial(config, t);
        return results;
    }
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < config.trials; t = next++) {
                    results[t] = run_single_trial(config, t);
                }
            });
        }
    }
    return results;
}

struct NormSummary {
    NormExponent norm{2.0};
    double       success_rate{0.0}; // support-exact rate
    double       median_mse_time{0.0};
    double       median_mse_freq{0.0};
    double       mean_mse_time{0.0}; // reported only; never used for ranking
    std::size_t  failures_empty{0};
    std::size_t  failures_oversized{0};
    std::size_t  failures_rank{0};
};

struct CampaignSummary {
    ThresholdStrategy         strategy{};
    std::size_t               trials{0};
    std::vector<NormSummary>  norms;
    std::vector<NormExponent> ranking; // best first, by median time-domain MSE
};

[[nodiscard]] inline CampaignSummary summarize(const ExperimentConfig& config, std::span<const TrialResult> trials) {
    CampaignSummary s{config.strategy, trials.size(), {}, {}};
    for (std::size_t i = 0; i < config.norms.size(); ++i) {
        NormSummary         ns;
        std::vector<double> mse_t;
        std::vector<double> mse_f;
        std::size_t         exact = 0;
        ns.norm                   = config.norms[i];
        for (const auto& tr : trials) {
            const auto& o = tr.outcomes.at(i);
            exact += o.support_exact ? 1 : 0;
            mse_t.push_back(o.mse_time);
            mse_f.push_back(o.mse_freq);
            ns.failures_empty += o.failure == FailureReason::EmptySupport ? 1 : 0;
            ns.failures_oversized += o.failure == FailureReason::OversizedSupport ? 1 : 0;
            ns.failures_rank += o.failure == FailureReason::RankDeficient ? 1 : 0;
        }
        if (!trials.empty()) {
            ns.success_rate = static_cast<double>(exact) / static_cast<double>(trials.size());
            // summed in trial order, so the mean is independent of scheduling
            double total = 0.0;
            for (double v : mse_t) total += v;
            ns.mean_mse_time = total / static_cast<double>(trials.size());
        }
        ns.median_mse_time = detail::median_of(std::move(mse_t));
        ns.median_mse_freq = detail::median_of(std::move(mse_f));
        s.norms.push_back(ns);
    }
    std::vector<std::size_t> order(s.norms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.norms[a].median_mse_time < s.norms[b].median_mse_time; });
    for (auto i : order) s.ranking.push_back(s.norms[i].norm);
    return s;
}

[[nodiscard]] inline CampaignSummary run_campaign(const ExperimentConfig& config) {
    const auto trials = run_trials(config);
    return summarize(config, trials);
}

/// One campaign per strategy over identical trial streams.
[[nodiscard]] inline std::vector<CampaignSummary> compare_thresholds(const ExperimentConfig& config, std::span<const ThresholdStrategy> strategies) {
    if (strategies.empty()) {
        throw std::invalid_argument("compare_thresholds: no strategies");
    }
    std::vector<CampaignSummary> out;
    for (const auto& st : strategies) {
        ExperimentConfig c = config;
        c.strategy         = st;
        out.push_back(run_campaign(c));
    }
    return out;
}

} // namespace lpcs

#endif // LPCS_EXPERIMENTS_HPP
