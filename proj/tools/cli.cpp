#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>

#include <lpcs/report.hpp>

namespace lpcs::cli {

namespace {

const std::vector<std::string> kKeys = {"preset", "n",   "m",    "noise", "sigma1",  "sigma2", "norms",   "strategy", "alpha",
                                        "trials", "seed", "out", "threads", "figures", "trial",  "samples", "compare"};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(const std::string& key, const std::pair<std::string, std::string>& entry, const std::string& what) {
    throw ConfigError(entry.second + ": " + key + " = '" + entry.first + "': " + what);
}

template<typename T>
T parse_number(const std::string& key, const std::pair<std::string, std::string>& entry) {
    const std::string& s = entry.first;
    T                  value{};
    const auto         res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty()) {
        fail(key, entry, "not a valid number");
    }
    return value;
}

bool parse_bool(const std::string& key, const std::pair<std::string, std::string>& entry) {
    const auto& v = entry.first;
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    fail(key, entry, "expected true or false");
}

std::vector<NormExponent> parse_norms(const std::string& key, const std::pair<std::string, std::string>& entry) {
    std::vector<NormExponent> norms;
    std::stringstream         ss(entry.first);
    std::string               item;
    while (std::getline(ss, item, ',')) {
        const auto token = trim(item);
        const auto value = parse_number<double>(key, {token, entry.second});
        try {
            norms.emplace_back(value);
        } catch (const std::invalid_argument& e) {
            fail(key, entry, e.what());
        }
    }
    if (norms.empty()) fail(key, entry, "at least one norm required");
    return norms;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << contents;
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

/// Output files are rendered in memory and written only after every step succeeded.
using FileSet = std::vector<std::pair<std::string, std::string>>;

void commit(const std::filesystem::path& dir, const FileSet& files, std::ostream& out) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, contents] : files) {
        write_file(dir / name, contents);
        out << "wrote " << (dir / name).string() << '\n';
    }
}

int cmd_gd(const CliConfig& cfg, std::ostream& out) {
    const auto&  exp = cfg.experiment;
    const auto   d   = run_trial_detailed(exp, cfg.trial_index);
    std::ostringstream gd;
    write_gd_plot(gd, d, exp.master_seed);

    for (std::size_t i = 0; i < d.norms.size(); ++i) {
        const auto& o = d.result.outcomes[i];
        out << "L=" << norm_label(o.norm) << " threshold " << std::setprecision(6) << d.norms[i].threshold << " support {"
            << format_support(o.support) << "}" << (o.support_exact ? " exact" : "") << '\n';
    }
    commit(cfg.out_dir, {{"gd_profile.dat", gd.str()}}, out);
    return 0;
}

int cmd_reconstruct(const CliConfig& cfg, std::ostream& out) {
    const auto& exp = cfg.experiment;
    const auto  d   = run_trial_detailed(exp, cfg.trial_index);

    FileSet files;
    if (cfg.figures) {
        for (std::size_t i = 0; i < d.norms.size(); ++i) {
            const auto         label = norm_label(exp.norms[i]);
            std::ostringstream spec;
            std::ostringstream time;
            write_spectrum_plot(spec, d, i, exp.master_seed);
            write_time_plot(time, d, i, exp.master_seed);
            files.emplace_back("spectrum_L" + label + ".dat", spec.str());
            files.emplace_back("time_L" + label + ".dat", time.str());
        }
    }

    bool any_ok = false;
    out << "seed " << exp.master_seed << " trial " << cfg.trial_index << '\n';
    out << std::left << std::setw(6) << "L" << std::setw(16) << "support" << std::setw(14) << "mse_time" << std::setw(14) << "mse_freq"
        << "status\n";
    for (const auto& o : d.result.outcomes) {
        any_ok = any_ok || o.failure == FailureReason::None;
        out << std::left << std::setprecision(6) << std::setw(6) << norm_label(o.norm) << std::setw(16) << format_support(o.support) << std::setw(14)
            << o.mse_time << std::setw(14) << o.mse_freq << to_string(o.failure) << '\n';
    }
    commit(cfg.out_dir, files, out);
    return any_ok ? 0 : 1;
}

int cmd_bench(const CliConfig& cfg, std::ostream& out) {
    std::vector<ThresholdStrategy> strategies{cfg.experiment.strategy};
    if (cfg.compare_thresholds) {
        const double a = cfg.experiment.strategy.alpha;
        strategies     = {{ThresholdKind::MaxScaled, a}, {ThresholdKind::MeanScaled, a}, {ThresholdKind::MedianScaled, a}};
    }

    std::ostringstream trials_csv;
    std::ostringstream summary_csv;
    write_summary_csv_header(summary_csv);
    bool header_done = false;
    for (const auto& st : strategies) {
        ExperimentConfig exp = cfg.experiment;
        exp.strategy         = st;
        const auto trials    = run_trials(exp);
        const auto summary   = summarize(exp, trials);

        std::ostringstream rows;
        write_trials_csv(rows, trials, st);
        auto text = rows.str();
        if (header_done) text.erase(0, text.find('\n') + 1);
        header_done = true;
        trials_csv << text;
        write_summary_csv_rows(summary_csv, summary);
        print_summary_table(out, summary);
    }
    commit(cfg.out_dir, {{"trials.csv", trials_csv.str()}, {"summary.csv", summary_csv.str()}}, out);
    return 0;
}

int cmd_noise(const CliConfig& cfg, std::ostream& out) {
    if (!cfg.experiment.noise) {
        throw ConfigError("noise: a noise family is required for noise sampling");
    }
    Rng                rng(derive_seed(cfg.experiment.master_seed, 0));
    const auto         noise = generate_noise(*cfg.experiment.noise, cfg.noise_samples, rng);
    std::ostringstream os;
    os << "# " << to_string(cfg.experiment.noise->family) << " sigma1 " << format_exact(cfg.experiment.noise->sigma1) << " sigma2 "
       << format_exact(cfg.experiment.noise->sigma2) << " seed " << cfg.experiment.master_seed << "\n# i re im\n";
    for (std::size_t i = 0; i < noise.size(); ++i) {
        os << i << ' ' << format_exact(noise[i].real()) << ' ' << format_exact(noise[i].imag()) << '\n';
    }
    commit(cfg.out_dir, {{"noise.dat", os.str()}}, out);
    return 0;
}

} // namespace

Settings parse_settings_text(const std::string& text, const std::string& source_name) {
    Settings           settings;
    std::istringstream in(text);
    std::string        line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto body = trim(line);
        if (body.empty()) continue;
        const auto where = source_name + ":" + std::to_string(lineno);
        const auto eq    = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value', got '" + body + "'");
        }
        const auto key   = trim(std::string_view(body).substr(0, eq));
        const auto value = trim(std::string_view(body).substr(eq + 1));
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
        if (value.empty()) {
            throw ConfigError(where + ": empty value for '" + key + "'");
        }
        if (!settings.emplace(key, std::make_pair(value, where)).second) {
            throw ConfigError(where + ": duplicate key '" + key + "'");
        }
    }
    return settings;
}

CliConfig build_config(const Settings& settings) {
    CliConfig cfg;
    auto      get = [&](const std::string& key) -> const std::pair<std::string, std::string>* {
        const auto it = settings.find(key);
        return it == settings.end() ? nullptr : &it->second;
    };

    if (const auto* e = get("preset")) {
        if (e->first == "example1") cfg.experiment = example1_config();
        else if (e->first == "example2") cfg.experiment = example2_config();
        else if (e->first == "noiseless") cfg.experiment = noiseless_config();
        else fail("preset", *e, "expected example1, example2 or noiseless");
    }
    auto& exp = cfg.experiment;

    if (const auto* e = get("n")) exp.n_len = parse_number<std::size_t>("n", *e);
    if (const auto* e = get("m")) exp.m = parse_number<std::size_t>("m", *e);
    if (const auto* e = get("trials")) exp.trials = parse_number<std::size_t>("trials", *e);
    if (const auto* e = get("seed")) exp.master_seed = parse_number<std::uint64_t>("seed", *e);
    if (const auto* e = get("threads")) exp.threads = parse_number<unsigned>("threads", *e);
    if (const auto* e = get("trial")) cfg.trial_index = parse_number<std::size_t>("trial", *e);
    if (const auto* e = get("samples")) cfg.noise_samples = parse_number<std::size_t>("samples", *e);
    if (const auto* e = get("figures")) cfg.figures = parse_bool("figures", *e);
    if (const auto* e = get("compare")) cfg.compare_thresholds = parse_bool("compare", *e);
    if (const auto* e = get("out")) cfg.out_dir = e->first;
    if (const auto* e = get("norms")) exp.norms = parse_norms("norms", *e);

    if (const auto* e = get("noise")) {
        if (e->first == "none") {
            exp.noise.reset();
        } else if (const auto family = parse_noise_family(e->first)) {
            const auto sigmas = exp.noise ? std::make_pair(exp.noise->sigma1, exp.noise->sigma2) : std::make_pair(1.0, 1.0);
            exp.noise         = NoiseSpec{*family, sigmas.first, sigmas.second};
        } else {
            fail("noise", *e, "expected gaussian, laplace, cauchy, cubic or none");
        }
    }
    for (const char* key : {"sigma1", "sigma2"}) {
        if (const auto* e = get(key)) {
            if (!exp.noise) fail(key, *e, "no noise family selected");
            const double v = parse_number<double>(key, *e);
            try {
                exp.noise = std::string_view(key) == "sigma1" ? NoiseSpec{exp.noise->family, v, exp.noise->sigma2}
                                                              : NoiseSpec{exp.noise->family, exp.noise->sigma1, v};
            } catch (const std::invalid_argument& ex) {
                fail(key, *e, ex.what());
            }
        }
    }

    {
        auto kind  = exp.strategy.kind;
        auto alpha = exp.strategy.alpha;
        if (const auto* e = get("strategy")) {
            const auto parsed = parse_threshold_kind(e->first);
            if (!parsed) fail("strategy", *e, "expected max, mean or median");
            kind = *parsed;
        }
        if (const auto* e = get("alpha")) {
            alpha = parse_number<double>("alpha", *e);
            if (!(alpha > 0.0 && alpha <= 1.0)) fail("alpha", *e, "must lie in (0, 1]");
        }
        exp.strategy = ThresholdStrategy{kind, alpha};
    }

    try {
        exp.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    if (cfg.noise_samples == 0) throw ConfigError("samples must be positive");
    return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Non-iterative compressive-sensing reconstruction with selectable Lp norms"};
    app.require_subcommand(1);

    std::map<std::string, std::string> flags;
    std::string                        config_file;
    std::vector<CLI::App*>             subs;
    subs.push_back(app.add_subcommand("gd", "GD profile and detected support for one trial (gd_profile.dat)"));
    subs.push_back(app.add_subcommand("reconstruct", "one full trial; spectrum_L*.dat, time_L*.dat and an MSE table"));
    subs.push_back(app.add_subcommand("bench", "Monte Carlo campaign; trials.csv and summary.csv"));
    subs.push_back(app.add_subcommand("noise", "noise realization for the configured family (noise.dat)"));

    const std::vector<std::pair<std::string, std::string>> options = {
        {"preset", "example1 | example2 | noiseless"},
        {"n", "signal length N"},
        {"m", "number of measurements M"},
        {"noise", "gaussian | laplace | cauchy | cubic | none"},
        {"sigma1", "real-part noise scale"},
        {"sigma2", "imaginary-part noise scale"},
        {"norms", "comma-separated norm exponents, e.g. 1,2,3"},
        {"strategy", "max | mean | median"},
        {"alpha", "threshold scale in (0, 1]"},
        {"trials", "Monte Carlo trial count"},
        {"seed", "master seed"},
        {"out", "output directory"},
        {"threads", "worker threads (0 = all cores); never changes results"},
        {"figures", "emit figure data files (true/false)"},
        {"trial", "trial index used by gd / reconstruct"},
        {"samples", "number of values drawn by the noise command"},
        {"compare", "bench: run all three threshold strategies (true/false)"},
    };
    for (auto* sub : subs) {
        sub->add_option("--config", config_file, "key = value configuration file; flags override it");
        for (const auto& [name, help] : options) {
            sub->add_option("--" + name, flags[name], help);
        }
    }

    std::vector<std::string> argv_storage{"lpcs"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        Settings settings;
        if (!config_file.empty()) {
            std::ifstream f(config_file);
            if (!f) throw ConfigError("cannot read config file " + config_file);
            std::stringstream buf;
            buf << f.rdbuf();
            settings = parse_settings_text(buf.str(), config_file);
        }
        for (auto* sub : subs) {
            if (!sub->parsed()) continue;
            for (const auto& [name, help] : options) {
                if (sub->get_option("--" + name)->count() > 0) {
                    settings[name] = {flags[name], "--" + name};
                }
            }
        }
        const auto cfg = build_config(settings);

        if (subs[0]->parsed()) return cmd_gd(cfg, out);
        if (subs[1]->parsed()) return cmd_reconstruct(cfg, out);
        if (subs[2]->parsed()) return cmd_bench(cfg, out);
        return cmd_noise(cfg, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace lpcs::cli
