#ifndef LPCS_NOISE_HPP
#define LPCS_NOISE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "random.hpp"
#include "signal.hpp"

namespace lpcs {

enum class NoiseFamily { Gaussian, Laplace, Cauchy, CubicGaussian };

[[nodiscard]] constexpr std::string_view to_string(NoiseFamily f) noexcept {
    switch (f) {
    case NoiseFamily::Gaussian: return "gaussian";
    case NoiseFamily::Laplace: return "laplace";
    case NoiseFamily::Cauchy: return "cauchy";
    case NoiseFamily::CubicGaussian: return "cubic";
    }
    return "unknown";
}

[[nodiscard]] inline std::optional<NoiseFamily> parse_noise_family(std::string_view name) {
    if (name == "gaussian") return NoiseFamily::Gaussian;
    if (name == "laplace") return NoiseFamily::Laplace;
    if (name == "cauchy") return NoiseFamily::Cauchy;
    if (name == "cubic" || name == "cubic_gaussian") return NoiseFamily::CubicGaussian;
    return std::nullopt;
}

/// Noise family with separate scales for the real (sigma1) and imaginary (sigma2) parts.
struct NoiseSpec {
    NoiseFamily family{NoiseFamily::Gaussian};
    double      sigma1{1.0};
    double      sigma2{1.0};

    NoiseSpec() = default;
    NoiseSpec(NoiseFamily f, double s1, double s2) : family(f), sigma1(s1), sigma2(s2) {
        if (!(s1 > 0.0) || !(s2 > 0.0)) {
            throw std::invalid_argument("NoiseSpec: sigma1 and sigma2 must be positive");
        }
    }
};

/**
 * Draws n_len complex noise values.
 *
 *   Gaussian       s1*g + j*s2*g'
 *   Laplace        s1*l + j*s2*l'
 *   Cauchy         (s1*g1 + j*s2*g2) / (s1*g3 + j*s2*g4), four independent draws
 *   CubicGaussian  (s1*g1)^3 + j*(s2*g2)^3
 *
 * Each vector is drawn in full before the next one, so e.g. the real parts of
 * a Gaussian realization are the first n_len normals of the stream.
 */
[[nodiscard]] inline std::vector<cplx> generate_noise(const NoiseSpec& spec, std::size_t n_len, Rng& rng) {
    if (n_len == 0) {
        throw std::invalid_argument("generate_noise: length must be positive");
    }
    auto draw = [&](double scale, auto&& sampler) {
        std::vector<double> v(n_len);
        for (auto& x : v) {
            x = scale * sampler();
        }
        return v;
    };
    auto normal  = [&] { return rng.normal(); };
    auto laplace = [&] { return rng.laplace(); };

    std::vector<cplx> out(n_len);
    switch (spec.family) {
    case NoiseFamily::Gaussian: {
        const auto re = draw(spec.sigma1, normal);
        const auto im = draw(spec.sigma2, normal);
        for (std::size_t i = 0; i < n_len; ++i) out[i] = {re[i], im[i]};
        break;
    }
    case NoiseFamily::Laplace: {
        const auto re = draw(spec.sigma1, laplace);
        const auto im = draw(spec.sigma2, laplace);
        for (std::size_t i = 0; i < n_len; ++i) out[i] = {re[i], im[i]};
        break;
    }
    case NoiseFamily::Cauchy: {
        const auto num_re = draw(spec.sigma1, normal);
        const auto num_im = draw(spec.sigma2, normal);
        const auto den_re = draw(spec.sigma1, normal);
        const auto den_im = draw(spec.sigma2, normal);
        for (std::size_t i = 0; i < n_len; ++i) out[i] = cplx{num_re[i], num_im[i]} / cplx{den_re[i], den_im[i]};
        break;
    }
    case NoiseFamily::CubicGaussian: {
        const auto re = draw(spec.sigma1, normal);
        const auto im = draw(spec.sigma2, normal);
        for (std::size_t i = 0; i < n_len; ++i) out[i] = {re[i] * re[i] * re[i], im[i] * im[i] * im[i]};
        break;
    }
    }
    return out;
}

[[nodiscard]] inline MeasurementSet add_noise(const MeasurementSet& ms, const NoiseSpec& spec, Rng& rng) {
    if (ms.size() == 0) {
        return ms;
    }
    auto noise = generate_noise(spec, ms.size(), rng);
    for (std::size_t i = 0; i < noise.size(); ++i) {
        noise[i] += ms.values()[i];
    }
    return ms.with_values(std::move(noise));
}

struct NormRecommendation {
    double           exponent;
    bool             maximum_likelihood; // false: empirical choice, no finite-L ML match
    std::string_view note;
};

/// Maps a noise density to the norm exponent L whose |e|^L equals -log p(e).
[[nodiscard]] constexpr NormRecommendation ml_norm_for(NoiseFamily family) noexcept {
    switch (family) {
    case NoiseFamily::Gaussian: return {2.0, true, "p(e) ~ exp(-|e|^2): |e|^2 is the ML estimator"};
    case NoiseFamily::Laplace: return {1.0, true, "p(e) ~ exp(-|e|): |e| is the ML estimator"};
    case NoiseFamily::Cauchy: return {3.0, false, "no finite-L ML match; empirical choice is 3"};
    case NoiseFamily::CubicGaussian: return {3.0, false, "no finite-L ML match; empirical choice is 3"};
    }
    return {2.0, true, ""};
}

} // namespace lpcs

#endif // LPCS_NOISE_HPP
