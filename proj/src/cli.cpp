#include "cauchy_gof/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "cauchy_gof/classical_tests.hpp"
#include "cauchy_gof/errors.hpp"
#include "cauchy_gof/report.hpp"
#include "cauchy_gof/simulation.hpp"

namespace cauchy_gof {

namespace {

namespace fs = std::filesystem;

struct InputArgs {
    std::string path;
    std::string column = "0";
    bool header = false;
    std::string kind = "returns";

    void attach(CLI::App* cmd) {
        cmd->add_option("input", path, "CSV file with one numeric column")->required();
        cmd->add_option("--column", column, "0-based column index or header name");
        cmd->add_flag("--header", header, "first non-blank row is a header");
        cmd->add_option("--kind", kind, "prices are converted to simple returns")
            ->check(CLI::IsMember({"returns", "prices"}));
    }

    [[nodiscard]] Sample load() const {
        InputOptions opts;
        opts.column = column;
        opts.has_header = header;
        opts.kind = kind == "prices" ? InputKind::prices : InputKind::returns;
        return parse_input(path, opts);
    }
};

KernelMode to_mode(const std::string& text) {
    return parse_mode(text).value_or(KernelMode::sym6);
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    f << content;
}

std::vector<std::size_t> parse_sizes(const std::vector<std::string>& items) {
    std::vector<std::size_t> out;
    for (const auto& s : items) {
        std::size_t v = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || v == 0) {
            throw CLI::ValidationError("--sizes", "'" + s + "' is not a positive integer");
        }
        out.push_back(v);
    }
    return out;
}

std::vector<TestId> parse_tests_flag(const std::string& text) {
    try {
        return parse_test_list(text);
    } catch (const ValidationError& e) {
        throw CLI::ValidationError("--tests", e.what());
    }
}

// `--standardize` may appear without a value; give it one so that a
// following positional argument is not swallowed.
std::vector<std::string> normalize_args(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        out.push_back(args[i]);
        if (args[i] == "--standardize") {
            const bool has_value = i + 1 < args.size() &&
                                   (args[i + 1] == "on" || args[i + 1] == "off" ||
                                    args[i + 1] == "both");
            if (!has_value) {
                out.emplace_back("on");
            }
        }
    }
    return out;
}

void require_el_ready(const Sample& s, const std::vector<TestId>& tests, const std::string& what) {
    if (std::none_of(tests.begin(), tests.end(), is_el_test)) {
        return;
    }
    if (s.size() < 4) {
        throw ValidationError(what + ": JEL/AJEL need at least 4 observations, got " +
                              std::to_string(s.size()));
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 0.0) {
            throw ValidationError(
                what + ": observation " + std::to_string(i + 1) +
                " is zero; the characterization requires every observation to be nonzero "
                "(X2 != 0)");
        }
    }
}

struct TestCommand {
    InputArgs input;
    std::string mode = "sym6";
    double alpha = 0.05;
    std::string standardize = "off";
    std::string tests = "all";
    std::uint64_t seed = 20240707;
    bool mc_pvalues = false;
    std::string cache_dir;
    std::size_t B = 10000;
    unsigned threads = 1;
    std::string out_path;

    int run(std::ostream& out, std::ostream& err) const {
        const Sample raw = input.load();
        BatteryConfig cfg;
        cfg.tests = parse_tests_flag(tests);
        cfg.alpha = alpha;
        cfg.mode = to_mode(mode);
        cfg.mc_pvalues = mc_pvalues;
        cfg.B = B;
        cfg.seed = seed;
        cfg.threads = threads;
        CriticalValueCache cache = cache_dir.empty() ? CriticalValueCache()
                                                     : CriticalValueCache(cache_dir);

        std::vector<std::string> variants;
        if (standardize == "off" || standardize == "both") variants.emplace_back("raw");
        if (standardize == "on" || standardize == "both") variants.emplace_back("standardized");

        std::vector<ReportDocument> docs;
        for (const auto& variant : variants) {
            ReportDocument doc;
            doc.path = input.path;
            doc.preprocessing = variant;
            doc.mode = std::string(mode_name(cfg.mode));
            doc.alpha = alpha;
            doc.seed = seed;
            doc.B = B;
            doc.mc_pvalues = mc_pvalues;
            std::optional<Sample> data;
            if (variant == "raw") {
                data = raw;
            } else {
                Standardized st = standardize_sample(raw);
                doc.location = st.location;
                doc.scale = st.scale;
                data = std::move(st.sample);
            }
            require_el_ready(*data, cfg.tests, variant + " data");
            doc.n = data->size();
            doc.outcomes = run_battery(*data, cfg, cache);
            out << format_report(doc);
            if (variants.size() > 1) {
                out << '\n';
            }
            docs.push_back(std::move(doc));
        }
        if (cache.misses() > 0) {
            err << "computed " << cache.misses() << " critical-value table(s)\n";
        }

        if (!out_path.empty()) {
            nlohmann::ordered_json j;
            if (docs.size() == 1) {
                j = report_to_json(docs.front());
            } else {
                j = nlohmann::ordered_json::array();
                for (const auto& d : docs) j.push_back(report_to_json(d));
            }
            write_file(out_path, j.dump(2) + "\n");
        }
        return kExitOk;
    }

    static Standardized standardize_sample(const Sample& s) { return cauchy_gof::standardize(s); }
};

struct SimulateCommand {
    std::vector<std::string> sizes;
    std::size_t reps = 2000;
    std::vector<std::string> alts;
    double alpha = 0.05;
    std::uint64_t seed = 20240707;
    std::string tests = "all";
    unsigned threads = 1;
    bool paper_scale = false;
    std::string mode = "sym6";
    std::size_t B = 10000;
    std::string csv_path;
    std::string json_path;
    std::string cache_dir;
    CLI::Option* reps_opt = nullptr;
    CLI::Option* sizes_opt = nullptr;

    int run(std::ostream& out, std::ostream& err) const {
        StudyConfig cfg;
        cfg.alternatives.clear();
        if (alts.empty()) {
            cfg.alternatives.push_back(DistributionSpec::standard_cauchy());
        }
        for (const auto& a : alts) {
            try {
                cfg.alternatives.push_back(DistributionSpec::parse(a));
            } catch (const ValidationError& e) {
                throw CLI::ValidationError("--alts", e.what());
            }
        }
        cfg.sizes = sizes.empty() ? std::vector<std::size_t>{20, 40, 60, 100} : parse_sizes(sizes);
        cfg.reps = reps;
        if (paper_scale) {
            if (reps_opt->count() == 0) cfg.reps = 10000;
            if (sizes_opt->count() == 0) cfg.sizes = {20, 40, 60, 80, 100};
        }
        cfg.alpha = alpha;
        cfg.master_seed = seed;
        cfg.tests = parse_tests_flag(tests);
        cfg.threads = threads;
        cfg.mode = to_mode(mode);
        cfg.B = B;
        if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
        try {
            cfg.validate();
        } catch (const ValidationError& e) {
            throw CLI::ValidationError("simulate", e.what());
        }

        const StudyResult result = run_study(cfg, [&](std::string_view msg) {
            err << msg << '\n';
        });
        const std::string csv = study_to_csv(result);
        if (csv_path.empty() && json_path.empty()) {
            out << csv;
        }
        if (!csv_path.empty()) write_file(csv_path, csv);
        if (!json_path.empty()) write_file(json_path, study_to_json(result));
        return kExitOk;
    }
};

struct CritvalsCommand {
    std::string tests = "all";
    std::vector<std::string> sizes;
    std::size_t B = 10000;
    std::uint64_t seed = 20240707;
    std::string cache_dir = "cvcache";
    std::string mode = "sym6";
    unsigned threads = 1;

    int run(std::ostream& out, std::ostream& err) const {
        const std::vector<TestId> ids = parse_tests_flag(tests);
        const std::vector<std::size_t> ns = parse_sizes(sizes);
        const KernelMode km = to_mode(mode);
        for (std::size_t n : ns) {
            CriticalValueCache cache(cache_dir);
            std::vector<TestId> missing;
            for (TestId t : ids) {
                const fs::path p = fs::path(cache_dir) /
                                   table_file_name(table_key(t, km), n, B, seed);
                bool hit = false;
                if (fs::exists(p)) {
                    try {
                        const CriticalValueTable tab = load_table(p);
                        hit = tab.test_id == table_key(t, km) && tab.n == n && tab.B == B &&
                              tab.seed == seed;
                    } catch (const ValidationError&) {
                        hit = false;
                    }
                }
                if (hit) {
                    err << "cache hit: " << p.string() << '\n';
                } else {
                    missing.push_back(t);
                }
            }
            if (missing.empty()) {
                continue;
            }
            cache.prepare(missing, n, B, seed, km, threads);
            for (TestId t : missing) {
                out << (fs::path(cache_dir) / table_file_name(table_key(t, km), n, B, seed))
                           .string()
                    << '\n';
            }
        }
        return kExitOk;
    }
};

struct PlotdataCommand {
    InputArgs input;
    std::string standardize = "off";
    std::size_t bins = 20;
    std::string qq_path;
    std::string hist_path;

    int run(std::ostream& out, std::ostream& /*err*/) const {
        Sample s = input.load();
        if (standardize == "on") {
            s = standardize_copy(s);
        } else if (standardize == "both") {
            throw CLI::ValidationError("--standardize", "plotdata accepts on or off");
        }
        const std::string qq = qq_to_csv(qq_points(s));
        const std::string hist = histogram_to_csv(histogram(s, bins));
        if (qq_path.empty() && hist_path.empty()) {
            out << qq << '\n' << hist;
        }
        if (!qq_path.empty()) write_file(qq_path, qq);
        if (!hist_path.empty()) write_file(hist_path, hist);
        return kExitOk;
    }

    static Sample standardize_copy(const Sample& s) { return cauchy_gof::standardize(s).sample; }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Goodness-of-fit tests for the standard Cauchy distribution", "cauchy-gof"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    const auto modes = CLI::IsMember({"literal", "sym3", "sym6"});

    TestCommand test;
    auto* test_cmd = app.add_subcommand("test", "run the test battery on a data file");
    test.input.attach(test_cmd);
    test_cmd->add_option("--mode", test.mode, "U-statistic kernel")->check(modes);
    test_cmd->add_option("--alpha", test.alpha, "significance level")
        ->check(CLI::Range(0.0, 1.0));
    test_cmd->add_option("--standardize", test.standardize,
                         "median/half-IQR standardization: on, off or both")
        ->check(CLI::IsMember({"on", "off", "both"}));
    test_cmd->add_option("--tests", test.tests, "comma-separated test ids or 'all'");
    test_cmd->add_option("--seed", test.seed, "seed of the Monte Carlo critical values");
    test_cmd->add_flag("--mc-pvalues", test.mc_pvalues,
                       "calibrate JEL/AJEL by simulation instead of chi^2_1");
    test_cmd->add_option("--cache-dir", test.cache_dir, "critical-value cache directory");
    test_cmd->add_option("--B", test.B, "null replications per table")
        ->check(CLI::Range(std::size_t{100}, std::size_t{100000000}));
    test_cmd->add_option("--threads", test.threads, "worker threads (0 = all cores)");
    test_cmd->add_option("--out", test.out_path, "write the JSON report here");

    SimulateCommand sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo size/power study");
    sim.sizes_opt = sim_cmd->add_option("--sizes", sim.sizes, "sample sizes, e.g. 20,40,60")
                        ->delimiter(',');
    sim.reps_opt = sim_cmd->add_option("--reps", sim.reps, "replications per cell")
                       ->check(CLI::PositiveNumber);
    sim_cmd->add_option("--alts", sim.alts, "alternatives as family:param,param (repeatable)");
    sim_cmd->add_option("--alpha", sim.alpha, "significance level")->check(CLI::Range(0.0, 1.0));
    sim_cmd->add_option("--seed", sim.seed, "master seed");
    sim_cmd->add_option("--tests", sim.tests, "comma-separated test ids or 'all'");
    sim_cmd->add_option("--threads", sim.threads, "worker threads (0 = all cores)");
    sim_cmd->add_flag("--paper-scale", sim.paper_scale,
                      "10,000 replications at n = 20, 40, 60, 80, 100");
    sim_cmd->add_option("--mode", sim.mode, "U-statistic kernel")->check(modes);
    sim_cmd->add_option("--B", sim.B, "null replications per critical-value table")
        ->check(CLI::Range(std::size_t{100}, std::size_t{100000000}));
    sim_cmd->add_option("--csv", sim.csv_path, "CSV output file");
    sim_cmd->add_option("--json", sim.json_path, "JSON output file");
    sim_cmd->add_option("--cache-dir", sim.cache_dir, "critical-value cache directory");

    CritvalsCommand cv;
    auto* cv_cmd = app.add_subcommand("critvals", "build or refresh critical-value tables");
    cv_cmd->add_option("--tests", cv.tests, "comma-separated test ids or 'all'");
    cv_cmd->add_option("--sizes", cv.sizes, "sample sizes")->delimiter(',')->required();
    cv_cmd->add_option("--B", cv.B, "null replications per table")
        ->check(CLI::Range(std::size_t{100}, std::size_t{100000000}));
    cv_cmd->add_option("--seed", cv.seed, "table seed");
    cv_cmd->add_option("--cache-dir", cv.cache_dir, "output directory");
    cv_cmd->add_option("--mode", cv.mode, "kernel for JEL/AJEL tables")->check(modes);
    cv_cmd->add_option("--threads", cv.threads, "worker threads (0 = all cores)");

    PlotdataCommand plot;
    auto* plot_cmd = app.add_subcommand("plotdata", "emit Q-Q and histogram data as CSV");
    plot.input.attach(plot_cmd);
    plot_cmd->add_option("--standardize", plot.standardize, "on or off")
        ->check(CLI::IsMember({"on", "off", "both"}));
    plot_cmd->add_option("--bins", plot.bins, "histogram bins")->check(CLI::PositiveNumber);
    plot_cmd->add_option("--qq", plot.qq_path, "Q-Q CSV output file");
    plot_cmd->add_option("--hist", plot.hist_path, "histogram CSV output file");

    try {
        std::vector<std::string> reversed = normalize_args(args);
        std::reverse(reversed.begin(), reversed.end());
        app.parse(reversed);
        if (test_cmd->parsed()) return test.run(out, err);
        if (sim_cmd->parsed()) return sim.run(out, err);
        if (cv_cmd->parsed()) return cv.run(out, err);
        if (plot_cmd->parsed()) return plot.run(out, err);
        return kExitUsage;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace cauchy_gof
