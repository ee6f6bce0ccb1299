#ifndef LPCS_REPORT_HPP
#define LPCS_REPORT_HPP

#include <charconv>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "experiments.hpp"

namespace lpcs {

/// Shortest decimal that parses back to the same double.
[[nodiscard]] inline std::string format_exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

/// "1", "2", "3" for integral exponents; the shortest round-trip form otherwise.
[[nodiscard]] inline std::string norm_label(const NormExponent& norm) { return format_exact(norm.value()); }

[[nodiscard]] inline std::string format_support(const SupportSet& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(s.bins[i]);
    }
    return out;
}

inline void write_trials_csv(std::ostream& os, std::span<const TrialResult> trials, const ThresholdStrategy& strategy) {
    os << "trial,L,strategy,alpha,support,exact,mse_time,mse_freq,failure\n";
    for (const auto& tr : trials) {
        for (const auto& o : tr.outcomes) {
            os << tr.trial_index << ',' << norm_label(o.norm) << ',' << to_string(strategy.kind) << ',' << format_exact(strategy.alpha) << ','
               << format_support(o.support) << ',' << (o.support_exact ? 1 : 0) << ',' << format_exact(o.mse_time) << ','
               << format_exact(o.mse_freq) << ',' << to_string(o.failure) << '\n';
        }
    }
}

inline void write_summary_csv_header(std::ostream& os) {
    os << "strategy,alpha,L,trials,success_rate,median_mse_time,median_mse_freq,mean_mse_time,fail_empty,fail_oversized,fail_rank,rank\n";
}

inline void write_summary_csv_rows(std::ostream& os, const CampaignSummary& s) {
    for (const auto& ns : s.norms) {
        std::size_t rank = 0;
        while (rank < s.ranking.size() && !(s.ranking[rank] == ns.norm)) ++rank;
        os << to_string(s.strategy.kind) << ',' << format_exact(s.strategy.alpha) << ',' << norm_label(ns.norm) << ',' << s.trials << ','
           << format_exact(ns.success_rate) << ',' << format_exact(ns.median_mse_time) << ',' << format_exact(ns.median_mse_freq) << ','
           << format_exact(ns.mean_mse_time) << ',' << ns.failures_empty << ',' << ns.failures_oversized << ',' << ns.failures_rank << ','
           << rank + 1 << '\n';
    }
}

/// Columns: k, then GD(k) and T for each norm in config order.
inline void write_gd_plot(std::ostream& os, const TrialDetail& d, std::uint64_t master_seed) {
    os << "# seed " << master_seed << " trial " << d.result.trial_index << "\n# k";
    for (const auto& n : d.norms) os << " GD_L" << norm_label(n.profile.norm) << " T_L" << norm_label(n.profile.norm);
    os << '\n';
    const std::size_t n_len = d.clean.size();
    for (std::size_t k = 0; k < n_len; ++k) {
        os << k;
        for (const auto& n : d.norms) os << ' ' << format_exact(n.profile[k]) << ' ' << format_exact(n.threshold);
        os << '\n';
    }
}

/// Columns: k, |X_desired(k)|, |X_reconstructed(k)|.
inline void write_spectrum_plot(std::ostream& os, const TrialDetail& d, std::size_t norm_index, std::uint64_t master_seed) {
    const auto& nd = d.norms.at(norm_index);
    os << "# seed " << master_seed << " trial " << d.result.trial_index << " L " << norm_label(nd.profile.norm) << "\n# k abs_desired abs_reconstructed\n";
    for (std::size_t k = 0; k < d.clean_spectrum.size(); ++k) {
        os << k << ' ' << format_exact(std::abs(d.clean_spectrum[k])) << ' ' << format_exact(std::abs(nd.spectrum[k])) << '\n';
    }
}

/// Columns: n, Re x_desired(n), Re x_reconstructed(n).
inline void write_time_plot(std::ostream& os, const TrialDetail& d, std::size_t norm_index, std::uint64_t master_seed) {
    const auto& nd = d.norms.at(norm_index);
    os << "# seed " << master_seed << " trial " << d.result.trial_index << " L " << norm_label(nd.profile.norm) << "\n# n re_desired re_reconstructed\n";
    for (std::size_t n = 0; n < d.clean.size(); ++n) {
        os << n << ' ' << format_exact(d.clean[n].real()) << ' ' << format_exact(nd.signal[n].real()) << '\n';
    }
}

/// Human-readable table, 6 significant digits.
inline void print_summary_table(std::ostream& os, const CampaignSummary& s) {
    std::ostringstream line;
    os << "strategy " << to_string(s.strategy.kind) << " alpha " << std::setprecision(6) << s.strategy.alpha << ", " << s.trials << " trials\n";
    os << std::left << std::setw(6) << "L" << std::setw(14) << "exact_rate" << std::setw(16) << "median_mse_t" << std::setw(16) << "median_mse_f"
       << std::setw(10) << "failures" << '\n';
    for (const auto& ns : s.norms) {
        os << std::left << std::setprecision(6) << std::setw(6) << norm_label(ns.norm) << std::setw(14) << ns.success_rate << std::setw(16)
           << ns.median_mse_time << std::setw(16) << ns.median_mse_freq << std::setw(10)
           << ns.failures_empty + ns.failures_oversized + ns.failures_rank << '\n';
    }
    os << "ranking (best first):";
    for (const auto& n : s.ranking) os << " l" << norm_label(n);
    os << '\n';
}

} // namespace lpcs

#endif // LPCS_REPORT_HPP
