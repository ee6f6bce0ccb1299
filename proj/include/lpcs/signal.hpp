#ifndef LPCS_SIGNAL_HPP
#define LPCS_SIGNAL_HPP

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "random.hpp"

namespace lpcs {

using cplx = std::complex<double>;

/// exp(sign * j*2*pi*q/n_len). The product k*n is reduced mod n_len before the
/// angle is formed so that large indices keep full precision.
[[nodiscard]] inline cplx dft_kernel(std::size_t k, std::size_t n, std::size_t n_len, int sign) {
    const std::size_t q     = (k % n_len) * (n % n_len) % n_len;
    const double      angle = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n_len);
    return std::polar(1.0, sign < 0 ? -angle : angle);
}

/// One complex exponential A * exp(j(2*pi*k*n/N + phase)).
struct SpectralComponent {
    std::size_t bin{0};
    double      amplitude{0.0};
    double      phase{0.0};

    [[nodiscard]] cplx complex_amplitude() const { return std::polar(amplitude, phase); }
};

struct ComplexSignal {
    std::vector<cplx> samples;

    ComplexSignal() = default;
    explicit ComplexSignal(std::size_t n_len) : samples(n_len) {}
    explicit ComplexSignal(std::vector<cplx> s) : samples(std::move(s)) {}

    [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
    [[nodiscard]] cplx        operator[](std::size_t n) const { return samples[n]; }
    [[nodiscard]] cplx&       operator[](std::size_t n) { return samples[n]; }
};

struct Spectrum {
    std::vector<cplx> bins;

    Spectrum() = default;
    explicit Spectrum(std::size_t n_len) : bins(n_len) {}
    explicit Spectrum(std::vector<cplx> b) : bins(std::move(b)) {}

    [[nodiscard]] std::size_t size() const noexcept { return bins.size(); }
    [[nodiscard]] cplx        operator[](std::size_t k) const { return bins[k]; }
    [[nodiscard]] cplx&       operator[](std::size_t k) { return bins[k]; }
};

/// M available samples of a length-N signal: strictly increasing indices and
/// their (possibly noisy) values.
class MeasurementSet {
public:
    MeasurementSet(std::vector<std::size_t> indices, std::vector<cplx> values, std::size_t n_len)
        : _indices(std::move(indices)), _values(std::move(values)), _n_len(n_len) {
        if (_indices.size() != _values.size()) {
            throw std::invalid_argument("MeasurementSet: index and value counts differ");
        }
        if (_indices.size() > _n_len) {
            throw std::invalid_argument("MeasurementSet: more measurements than samples");
        }
        for (std::size_t i = 0; i < _indices.size(); ++i) {
            if (_indices[i] >= _n_len) {
                throw std::invalid_argument("MeasurementSet: index " + std::to_string(_indices[i]) + " out of range");
            }
            if (i > 0 && _indices[i] <= _indices[i - 1]) {
                throw std::invalid_argument("MeasurementSet: indices must be strictly increasing");
            }
        }
    }

    [[nodiscard]] std::span<const std::size_t> indices() const noexcept { return _indices; }
    [[nodiscard]] std::span<const cplx>        values() const noexcept { return _values; }
    [[nodiscard]] std::size_t                  size() const noexcept { return _indices.size(); }
    [[nodiscard]] std::size_t                  ambient_length() const noexcept { return _n_len; }

    /// Same indices, new values. Used by noise injection.
    [[nodiscard]] MeasurementSet with_values(std::vector<cplx> values) const {
        return MeasurementSet(_indices, std::move(values), _n_len);
    }

    /// Multiplies every value by a scalar.
    [[nodiscard]] MeasurementSet scaled(cplx factor) const {
        std::vector<cplx> v(_values);
        for (auto& x : v) {
            x *= factor;
        }
        return with_values(std::move(v));
    }

    friend bool operator==(const MeasurementSet&, const MeasurementSet&) = default;

private:
    std::vector<std::size_t> _indices;
    std::vector<cplx>        _values;
    std::size_t              _n_len;
};

[[nodiscard]] inline ComplexSignal synthesize_sparse_signal(std::span<const SpectralComponent> components, std::size_t n_len) {
    if (n_len == 0) {
        throw std::invalid_argument("synthesize_sparse_signal: signal length must be positive");
    }
    std::unordered_set<std::size_t> seen;
    for (const auto& c : components) {
        if (c.bin >= n_len) {
            throw std::invalid_argument("synthesize_sparse_signal: bin " + std::to_string(c.bin) + " >= N = " + std::to_string(n_len));
        }
        if (c.amplitude < 0.0) {
            throw std::invalid_argument("synthesize_sparse_signal: negative amplitude");
        }
        if (!seen.insert(c.bin).second) {
            throw std::invalid_argument("synthesize_sparse_signal: duplicate bin " + std::to_string(c.bin));
        }
    }

    ComplexSignal out(n_len);
    for (std::size_t n = 0; n < n_len; ++n) {
        cplx acc{0.0, 0.0};
        for (const auto& c : components) {
            acc += c.complex_amplitude() * dft_kernel(c.bin, n, n_len, +1);
        }
        out[n] = acc;
    }
    return out;
}

/// Forward DFT with 1/N normalization: a unit exponential at bin k0 maps to X(k0) = 1.
[[nodiscard]] inline Spectrum dft(const ComplexSignal& signal) {
    const std::size_t n_len = signal.size();
    Spectrum          out(n_len);
    for (std::size_t k = 0; k < n_len; ++k) {
        cplx acc{0.0, 0.0};
        for (std::size_t n = 0; n < n_len; ++n) {
            acc += signal[n] * dft_kernel(k, n, n_len, -1);
        }
        out[k] = acc / static_cast<double>(n_len);
    }
    return out;
}

[[nodiscard]] inline ComplexSignal idft(const Spectrum& spectrum) {
    const std::size_t n_len = spectrum.size();
    ComplexSignal     out(n_len);
    for (std::size_t n = 0; n < n_len; ++n) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < n_len; ++k) {
            acc += spectrum[k] * dft_kernel(k, n, n_len, +1);
        }
        out[n] = acc;
    }
    return out;
}

/// Draws m distinct indices uniformly without replacement (partial
/// Fisher-Yates) and returns them sorted with the matching signal values.
[[nodiscard]] inline MeasurementSet sample_measurements(const ComplexSignal& signal, std::size_t m, Rng& rng) {
    const std::size_t n_len = signal.size();
    if (m > n_len) {
        throw std::invalid_argument("sample_measurements: m = " + std::to_string(m) + " exceeds N = " + std::to_string(n_len));
    }
    std::vector<std::size_t> pool(n_len);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < m; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n_len - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(m);
    std::sort(pool.begin(), pool.end());

    std::vector<cplx> values;
    values.reserve(m);
    for (auto idx : pool) {
        values.push_back(signal[idx]);
    }
    return MeasurementSet(std::move(pool), std::move(values), n_len);
}

/// The three-component test signal: bins 16, 32, 64 with amplitudes 4, 3, 2.
[[nodiscard]] inline std::vector<SpectralComponent> reference_components() {
    return {{16, 4.0, 0.0}, {32, 3.0, 0.0}, {64, 2.0, 0.0}};
}

} // namespace lpcs

#endif // LPCS_SIGNAL_HPP
