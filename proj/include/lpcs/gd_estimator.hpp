#ifndef LPCS_GD_ESTIMATOR_HPP
#define LPCS_GD_ESTIMATOR_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "signal.hpp"

namespace lpcs {

/// Exponent L of the error functional sum |e(n)|^L. L = 1, 2, 3 are the
/// l1, l2 and l3 minimization norms.
class NormExponent {
public:
    explicit NormExponent(double value) : _value(value) {
        if (!(value >= 1.0) || !std::isfinite(value)) {
            throw std::invalid_argument("NormExponent: L must be a finite value >= 1, got " + std::to_string(value));
        }
    }

    [[nodiscard]] double value() const noexcept { return _value; }

    /// |r|^L with exact fast paths for the integer exponents used in practice.
    [[nodiscard]] double cost(double magnitude) const {
        if (_value == 1.0) return magnitude;
        if (_value == 2.0) return magnitude * magnitude;
        if (_value == 3.0) return magnitude * magnitude * magnitude;
        return std::pow(magnitude, _value);
    }

    friend bool operator==(NormExponent, NormExponent) = default;

private:
    double _value;
};

/// Generalized deviation per frequency bin.
struct GDProfile {
    std::vector<double> values;
    NormExponent        norm{2.0};
    std::size_t         m_used{0};

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double      operator[](std::size_t k) const { return values[k]; }
};

/// x(n_m) * exp(-j*2*pi*k*n_m/N) for every available sample n_m.
[[nodiscard]] inline std::vector<cplx> rotated_samples(const MeasurementSet& ms, std::size_t k) {
    const std::size_t n_len = ms.ambient_length();
    if (k >= n_len) {
        throw std::invalid_argument("rotated_samples: bin " + std::to_string(k) + " >= N");
    }
    std::vector<cplx> out(ms.size());
    for (std::size_t m = 0; m < ms.size(); ++m) {
        out[m] = ms.values()[m] * dft_kernel(k, ms.indices()[m], n_len, -1);
    }
    return out;
}

namespace detail {

[[nodiscard]] inline cplx mean(std::span<const cplx> v) {
    cplx acc{0.0, 0.0};
    for (auto x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

[[nodiscard]] inline double median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

[[nodiscard]] inline double lp_objective(std::span<const cplx> v, cplx mu, const NormExponent& norm) {
    double acc = 0.0;
    for (auto x : v) acc += norm.cost(std::abs(x - mu));
    return acc;
}

/// Location minimizing sum |v_i - mu|^L by iteratively reweighted averaging
/// (weights |v_i - mu|^(L-2)), started at the mean. A step that would raise
/// the objective is halved until it does not.
[[nodiscard]] inline cplx lp_location(std::span<const cplx> v, const NormExponent& norm, double rel_tol = 1e-9, int max_iter = 200) {
    cplx   mu    = mean(v);
    double scale = 0.0;
    for (auto x : v) scale = std::max(scale, std::abs(x - mu));
    if (scale == 0.0) {
        return mu;
    }
    const double floor_residual = 1e-12 * scale;
    const double exponent       = norm.value() - 2.0;
    double       objective      = lp_objective(v, mu, norm);

    for (int iter = 0; iter < max_iter; ++iter) {
        cplx   weighted{0.0, 0.0};
        double total = 0.0;
        for (auto x : v) {
            const double w = std::pow(std::max(std::abs(x - mu), floor_residual), exponent);
            weighted += w * x;
            total += w;
        }
        if (total == 0.0) {
            break;
        }
        cplx   step      = weighted / total - mu;
        cplx   candidate = mu + step;
        double cand_obj  = lp_objective(v, candidate, norm);
        for (int halvings = 0; cand_obj > objective && halvings < 60; ++halvings) {
            step *= 0.5;
            candidate = mu + step;
            cand_obj  = lp_objective(v, candidate, norm);
        }
        if (cand_obj > objective) {
            break;
        }
        const bool converged = std::abs(step) <= rel_tol * std::max(std::abs(candidate), scale);
        mu                   = candidate;
        objective            = cand_obj;
        if (converged) {
            break;
        }
    }
    return mu;
}

} // namespace detail

/**
 * Robust estimate of spectral bin k from the available samples: the location
 * mu minimizing sum |x(n_m) exp(-j2pi k n_m/N) - mu|^L.
 *
 * L = 2 gives the sample mean (the DFT bin restricted to the available
 * samples). L = 1 gives the componentwise median, median of the real parts
 * plus j times median of the imaginary parts. Other L use iteratively
 * reweighted averaging to relative tolerance 1e-9, at most 200 iterations.
 */
[[nodiscard]] inline cplx robust_transform_estimate(const MeasurementSet& ms, std::size_t k, const NormExponent& norm) {
    if (ms.size() == 0) {
        throw std::invalid_argument("robust_transform_estimate: empty measurement set");
    }
    const auto rotated = rotated_samples(ms, k);
    if (norm.value() == 2.0) {
        return detail::mean(rotated);
    }
    if (norm.value() == 1.0) {
        std::vector<double> re(rotated.size());
        std::vector<double> im(rotated.size());
        for (std::size_t i = 0; i < rotated.size(); ++i) {
            re[i] = rotated[i].real();
            im[i] = rotated[i].imag();
        }
        return {detail::median(std::move(re)), detail::median(std::move(im))};
    }
    return detail::lp_location(rotated, norm);
}

/**
 * GD(k) = (1/M) sum_m |r_m(k) - mean_m r_m(k)|^L for k = 0..N-1, where r_m(k)
 * are the rotated samples. The center is always the sample mean, whatever L.
 * Bins holding a signal component have depressed GD.
 */
[[nodiscard]] inline GDProfile generalized_deviation(const MeasurementSet& ms, const NormExponent& norm) {
    if (ms.size() < 2) {
        throw std::invalid_argument("generalized_deviation: need at least 2 measurements, got " + std::to_string(ms.size()));
    }
    const std::size_t n_len = ms.ambient_length();
    const double      inv_m = 1.0 / static_cast<double>(ms.size());

    GDProfile profile{std::vector<double>(n_len), norm, ms.size()};
    std::vector<cplx> rotated(ms.size());
    for (std::size_t k = 0; k < n_len; ++k) {
        cplx center{0.0, 0.0};
        for (std::size_t m = 0; m < ms.size(); ++m) {
            rotated[m] = ms.values()[m] * dft_kernel(k, ms.indices()[m], n_len, -1);
            center += rotated[m];
        }
        center *= inv_m;
        double acc = 0.0;
        for (auto r : rotated) {
            acc += norm.cost(std::abs(r - center));
        }
        profile.values[k] = acc * inv_m;
    }
    return profile;
}

/**
 * Expected GD at component j relative to GD at a non-signal bin:
 * (sum_{i != j} A_i^L) / (sum_i A_i^L). The M(M-N)/(N-1) prefactor of the
 * closed forms cancels. Exact in expectation for L = 2 only; for other L it
 * is a heuristic.
 */
[[nodiscard]] inline double analytic_gd_ratio(std::span<const SpectralComponent> components, std::size_t j, const NormExponent& norm) {
    if (components.empty()) {
        throw std::invalid_argument("analytic_gd_ratio: no components");
    }
    if (j >= components.size()) {
        throw std::invalid_argument("analytic_gd_ratio: component index out of range");
    }
    double total = 0.0;
    double other = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const double p = norm.cost(components[i].amplitude);
        total += p;
        if (i != j) other += p;
    }
    return total == 0.0 ? 0.0 : other / total;
}

} // namespace lpcs

#endif // LPCS_GD_ESTIMATOR_HPP
