#ifndef LPCS_RECONSTRUCTION_HPP
#define LPCS_RECONSTRUCTION_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "signal.hpp"
#include "support.hpp"

namespace lpcs {

/// More support bins than measurements: the least-squares system has no unique solution.
class SupportTooLargeError : public std::invalid_argument {
public:
    SupportTooLargeError(std::size_t support, std::size_t measurements)
        : std::invalid_argument("support of " + std::to_string(support) + " bins exceeds " + std::to_string(measurements) + " measurements") {}
};

class RankDeficientError : public std::runtime_error {
public:
    RankDeficientError(double condition, std::vector<std::size_t> bins) : std::runtime_error(describe(condition, bins)), _condition(condition), _bins(std::move(bins)) {}

    [[nodiscard]] double                          condition() const noexcept { return _condition; }
    [[nodiscard]] const std::vector<std::size_t>& collinear_bins() const noexcept { return _bins; }

private:
    static std::string describe(double condition, const std::vector<std::size_t>& bins) {
        std::string msg = "rank-deficient partial DFT system (condition " + std::to_string(condition) + "), collinear support bins:";
        for (auto b : bins) msg += " " + std::to_string(b);
        return msg;
    }

    double                   _condition;
    std::vector<std::size_t> _bins;
};

/// y = A X with A(m, i) = exp(j*2*pi*k_i*n_m/N): rows are measurements,
/// columns are support bins. No 1/N factor, so X holds A_i * exp(j*phi_i).
struct PartialDftSystem {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd rhs;
    SupportSet       support;
    std::size_t      n_len{0};
};

inline constexpr double kMaxCondition = 1e12;

[[nodiscard]] inline PartialDftSystem build_cs_system(const MeasurementSet& ms, const SupportSet& support, std::size_t n_len) {
    if (support.empty()) {
        throw std::invalid_argument("build_cs_system: empty support");
    }
    if (support.size() > ms.size()) {
        throw SupportTooLargeError(support.size(), ms.size());
    }
    if (ms.ambient_length() != n_len) {
        throw std::invalid_argument("build_cs_system: measurement set length differs from N");
    }
    const auto rows = static_cast<Eigen::Index>(ms.size());
    const auto cols = static_cast<Eigen::Index>(support.size());

    PartialDftSystem sys{Eigen::MatrixXcd(rows, cols), Eigen::VectorXcd(rows), support, n_len};
    for (Eigen::Index m = 0; m < rows; ++m) {
        const auto n = ms.indices()[static_cast<std::size_t>(m)];
        for (Eigen::Index i = 0; i < cols; ++i) {
            const auto k = support.bins[static_cast<std::size_t>(i)];
            if (k >= n_len) {
                throw std::invalid_argument("build_cs_system: support bin " + std::to_string(k) + " >= N");
            }
            sys.matrix(m, i) = dft_kernel(k, n, n_len, +1);
        }
        sys.rhs(m) = ms.values()[static_cast<std::size_t>(m)];
    }
    return sys;
}

/**
 * Least-squares minimizer of ||A X - y||_2, i.e. the normal-equation solution
 * X = (A^H A)^-1 A^H y, computed by column-pivoted Householder QR instead of an
 * explicit inverse. Throws RankDeficientError when the 2-norm condition number
 * of A exceeds 1e12; the diagnostic lists the bins spanning the numerical null
 * space.
 */
[[nodiscard]] inline std::vector<cplx> least_squares_solve(const PartialDftSystem& sys) {
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys.matrix, Eigen::ComputeThinV);
    const auto&                              sv    = svd.singularValues();
    const double                             s_max = sv(0);
    const double                             s_min = sv(sv.size() - 1);
    const double condition = s_min > 0.0 ? s_max / s_min : std::numeric_limits<double>::infinity();
    if (!(condition <= kMaxCondition)) {
        std::vector<std::size_t> bins;
        const auto               null_dir = svd.matrixV().col(sv.size() - 1);
        for (Eigen::Index i = 0; i < null_dir.size(); ++i) {
            if (std::abs(null_dir(i)) > 1e-6) {
                bins.push_back(sys.support.bins[static_cast<std::size_t>(i)]);
            }
        }
        throw RankDeficientError(condition, std::move(bins));
    }

    const Eigen::VectorXcd x = sys.matrix.colPivHouseholderQr().solve(sys.rhs);
    return {x.data(), x.data() + x.size()};
}

/// Embeds support coefficients into a length-N spectrum; all other bins are zero.
[[nodiscard]] inline Spectrum spectrum_from_coefficients(std::span<const cplx> coeffs, const SupportSet& support, std::size_t n_len) {
    if (coeffs.size() != support.size()) {
        throw std::invalid_argument("spectrum_from_coefficients: coefficient and support counts differ");
    }
    Spectrum out(n_len);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (support.bins[i] >= n_len) {
            throw std::invalid_argument("spectrum_from_coefficients: bin out of range");
        }
        out[support.bins[i]] = coeffs[i];
    }
    return out;
}

} // namespace lpcs

#endif // LPCS_RECONSTRUCTION_HPP
