// Test-only reference implementations. These deliberately avoid the library's
// kernel helpers and evaluate the defining formulas directly.
#ifndef LPCS_TESTS_ORACLES_HPP
#define LPCS_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline cplx expj(double angle) { return std::exp(cplx{0.0, angle}); }

/// GD(k) straight from its definition, for one subset.
inline std::vector<double> direct_gd(const std::vector<std::size_t>& idx, const std::vector<cplx>& x_full, std::size_t N, double L) {
    std::vector<double> gd(N);
    const double        M = static_cast<double>(idx.size());
    for (std::size_t k = 0; k < N; ++k) {
        cplx mean{0.0, 0.0};
        for (auto n : idx) mean += x_full[n] * expj(-2.0 * std::numbers::pi * static_cast<double>(k * n) / static_cast<double>(N));
        mean /= M;
        double acc = 0.0;
        for (auto n : idx) {
            const cplx e = x_full[n] * expj(-2.0 * std::numbers::pi * static_cast<double>(k * n) / static_cast<double>(N)) - mean;
            acc += std::pow(std::abs(e), L);
        }
        gd[k] = acc / M;
    }
    return gd;
}

/// Calls visit(subset) for every size-m subset of {0..n-1} in lexicographic order.
inline void for_each_subset(std::size_t n, std::size_t m, const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> cur(m);
    for (std::size_t i = 0; i < m; ++i) cur[i] = i;
    while (true) {
        visit(cur);
        std::size_t i = m;
        while (i > 0 && cur[i - 1] == n - m + (i - 1)) --i;
        if (i == 0) return;
        ++cur[i - 1];
        for (std::size_t j = i; j < m; ++j) cur[j] = cur[j - 1] + 1;
    }
}

/// Solves the 2x2 complex system [a b; c d] x = (e, f) by Cramer's rule.
inline std::pair<cplx, cplx> solve2x2(cplx a, cplx b, cplx c, cplx d, cplx e, cplx f) {
    const cplx det = a * d - b * c;
    return {(e * d - b * f) / det, (a * f - e * c) / det};
}

/// Lp location by a shrinking grid search over the complex plane.
inline cplx grid_lp_location(const std::vector<cplx>& v, double L) {
    auto cost = [&](cplx mu) {
        double acc = 0.0;
        for (auto x : v) acc += std::pow(std::abs(x - mu), L);
        return acc;
    };
    cplx   best{0.0, 0.0};
    double span = 0.0;
    for (auto x : v) {
        best += x;
        span = std::max(span, std::abs(x));
    }
    best /= static_cast<double>(v.size());
    span *= 2.0;
    for (int round = 0; round < 60; ++round) {
        cplx         center = best;
        double       best_c = cost(best);
        const int    G      = 20;
        const double step   = span / G;
        for (int i = -G; i <= G; ++i) {
            for (int j = -G; j <= G; ++j) {
                const cplx   mu = center + cplx{i * step, j * step};
                const double c  = cost(mu);
                if (c < best_c) {
                    best_c = c;
                    best   = mu;
                }
            }
        }
        span *= 0.25;
    }
    return best;
}

} // namespace oracle

#endif // LPCS_TESTS_ORACLES_HPP
