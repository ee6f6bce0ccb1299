#ifndef LPCS_SUPPORT_HPP
#define LPCS_SUPPORT_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gd_estimator.hpp"

namespace lpcs {

enum class ThresholdKind { MaxScaled, MeanScaled, MedianScaled };

[[nodiscard]] constexpr std::string_view to_string(ThresholdKind k) noexcept {
    switch (k) {
    case ThresholdKind::MaxScaled: return "max";
    case ThresholdKind::MeanScaled: return "mean";
    case ThresholdKind::MedianScaled: return "median";
    }
    return "unknown";
}

[[nodiscard]] inline std::optional<ThresholdKind> parse_threshold_kind(std::string_view name) {
    if (name == "max") return ThresholdKind::MaxScaled;
    if (name == "mean") return ThresholdKind::MeanScaled;
    if (name == "median") return ThresholdKind::MedianScaled;
    return std::nullopt;
}

/// T = alpha * {max | mean | median} of the GD profile.
struct ThresholdStrategy {
    ThresholdKind kind{ThresholdKind::MaxScaled};
    double        alpha{0.89};

    ThresholdStrategy() = default;
    ThresholdStrategy(ThresholdKind k, double a) : kind(k), alpha(a) {
        if (!(a > 0.0 && a <= 1.0)) {
            throw std::invalid_argument("ThresholdStrategy: alpha must lie in (0, 1], got " + std::to_string(a));
        }
    }

    friend bool operator==(const ThresholdStrategy&, const ThresholdStrategy&) = default;
};

/// Sorted, duplicate-free frequency bins.
struct SupportSet {
    std::vector<std::size_t> bins;

    [[nodiscard]] std::size_t size() const noexcept { return bins.size(); }
    [[nodiscard]] bool        empty() const noexcept { return bins.empty(); }

    friend bool operator==(const SupportSet&, const SupportSet&) = default;
};

[[nodiscard]] inline double compute_threshold(const GDProfile& profile, const ThresholdStrategy& strategy) {
    if (profile.size() == 0) {
        throw std::invalid_argument("compute_threshold: empty profile");
    }
    const auto& v = profile.values;
    double      level{};
    switch (strategy.kind) {
    case ThresholdKind::MaxScaled: level = *std::max_element(v.begin(), v.end()); break;
    case ThresholdKind::MeanScaled: level = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); break;
    case ThresholdKind::MedianScaled: level = detail::median(v); break;
    }
    return strategy.alpha * level;
}

/// All bins with GD(k) strictly below the threshold, in one pass.
[[nodiscard]] inline SupportSet detect_support(const GDProfile& profile, const ThresholdStrategy& strategy) {
    const double threshold = compute_threshold(profile, strategy);
    SupportSet   out;
    for (std::size_t k = 0; k < profile.size(); ++k) {
        if (profile[k] < threshold) {
            out.bins.push_back(k);
        }
    }
    return out;
}

} // namespace lpcs

#endif // LPCS_SUPPORT_HPP
