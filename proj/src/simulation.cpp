#include "cauchy_gof/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cauchy_gof/errors.hpp"
#include "cauchy_gof/parallel.hpp"
#include "cauchy_gof/seeding.hpp"
#include "json.hpp"

namespace cauchy_gof {

namespace {

constexpr std::uint64_t fnv1a(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t kTableStream = fnv1a("critical-value-tables");

enum RepFlags : std::uint8_t { kReject = 1, kHull = 2, kFailed = 4 };

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::uint64_t derive_rep_seed(std::uint64_t master_seed, std::uint64_t cell,
                              std::uint64_t rep_index) noexcept {
    return mix_seed(master_seed, cell, rep_index);
}

std::uint64_t cell_id(const DistributionSpec& alt, std::size_t n) noexcept {
    return fnv1a(alt.to_string() + "|n=" + std::to_string(n));
}

std::uint64_t table_seed(std::uint64_t master_seed, std::size_t n) noexcept {
    return derive_rep_seed(master_seed, kTableStream, n);
}

void StudyConfig::validate() const {
    if (reps < 1) {
        throw ValidationError("reps must be at least 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("alpha must lie in (0, 1)");
    }
    if (alternatives.empty() || sizes.empty() || tests.empty()) {
        throw ValidationError("study needs at least one alternative, size and test");
    }
    for (const auto& alt : alternatives) {
        alt.validate();
    }
    const bool el = std::any_of(tests.begin(), tests.end(), is_el_test);
    for (std::size_t n : sizes) {
        if (el && n < 4) {
            throw ValidationError("sample sizes must be >= 4 when JEL/AJEL are enabled");
        }
        if (n < 2) {
            throw ValidationError("sample sizes must be >= 2");
        }
    }
    if (B < 100) {
        throw ValidationError("critical-value tables need B >= 100");
    }
}

const StudyCell* StudyResult::find(const DistributionSpec& alt, std::size_t n,
                                   TestId test) const {
    for (const auto& c : cells) {
        if (c.alternative == alt && c.n == n && c.test == test) {
            return &c;
        }
    }
    return nullptr;
}

StudyResult run_study(const StudyConfig& config, const ProgressFn& progress) {
    config.validate();
    auto report = [&](const std::string& msg) {
        if (progress) {
            progress(msg);
        }
    };

    std::vector<TestId> classical;
    for (TestId t : config.tests) {
        if (!is_el_test(t)) {
            classical.push_back(t);
        }
    }
    CriticalValueCache cache =
        config.cache_dir ? CriticalValueCache(*config.cache_dir) : CriticalValueCache();
    if (!classical.empty()) {
        for (std::size_t n : config.sizes) {
            report("critical values: n=" + std::to_string(n) + " B=" + std::to_string(config.B));
            cache.prepare(classical, n, config.B, table_seed(config.master_seed, n), config.mode,
                          config.threads);
        }
    }

    const std::size_t T = config.tests.size();
    const double mc_se = std::sqrt(config.alpha * (1.0 - config.alpha) /
                                   static_cast<double>(config.reps));
    StudyResult result;

    for (const auto& alt : config.alternatives) {
        for (std::size_t n : config.sizes) {
            const auto start = std::chrono::steady_clock::now();
            const std::uint64_t cell = cell_id(alt, n);
            std::vector<const CriticalValueTable*> tables(T, nullptr);
            for (std::size_t k = 0; k < T; ++k) {
                if (!is_el_test(config.tests[k])) {
                    tables[k] = &cache.get(config.tests[k], n, config.B,
                                           table_seed(config.master_seed, n), config.mode);
                }
            }

            std::vector<std::uint8_t> flags(config.reps * T, 0);
            parallel_for(config.reps, config.threads, [&](std::size_t rep) {
                const Sample s = sample_distribution(
                    alt, n, derive_rep_seed(config.master_seed, cell, rep));
                const std::vector<StatValue> stats =
                    compute_statistics(s, config.tests, config.mode);
                for (std::size_t k = 0; k < T; ++k) {
                    const StatValue& sv = stats[k];
                    std::uint8_t f = 0;
                    if (sv.failed) {
                        f = kFailed;
                    } else if (is_el_test(config.tests[k])) {
                        if (sv.hull_violation) {
                            f = kReject | kHull;
                        } else if (chisq1_sf(std::max(sv.value, 0.0)) < config.alpha) {
                            f = kReject;
                        }
                    } else if (mc_p_value(*tables[k], sv.value, default_tail(config.tests[k])) <
                               config.alpha) {
                        f = kReject;
                    }
                    flags[rep * T + k] = f;
                }
            });

            const double seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            for (std::size_t k = 0; k < T; ++k) {
                StudyCell c;
                c.alternative = alt;
                c.n = n;
                c.test = config.tests[k];
                c.reps = config.reps;
                c.mc_se = mc_se;
                c.wall_seconds = seconds;
                for (std::size_t rep = 0; rep < config.reps; ++rep) {
                    const std::uint8_t f = flags[rep * T + k];
                    c.rejections += (f & kReject) ? 1 : 0;
                    c.hull_violations += (f & kHull) ? 1 : 0;
                    c.failures += (f & kFailed) ? 1 : 0;
                }
                c.proportion = static_cast<double>(c.rejections) / static_cast<double>(c.reps);
                result.cells.push_back(std::move(c));
            }
            std::ostringstream msg;
            msg << alt.to_string() << " n=" << n << ": " << config.reps << " reps in " << seconds
                << " s";
            report(msg.str());
        }
    }
    return result;
}

StudyResult size_study(StudyConfig config, const ProgressFn& progress) {
    config.alternatives = {DistributionSpec::standard_cauchy()};
    return run_study(config, progress);
}

StudyResult power_study(const StudyConfig& config, const ProgressFn& progress) {
    return run_study(config, progress);
}

std::string study_to_csv(const StudyResult& result) {
    std::string out = "alternative,n,test,reps,rejections,proportion,mc_se,hull_violations\n";
    for (const auto& c : result.cells) {
        out += csv_quote(c.alternative.to_string());
        out += ',' + std::to_string(c.n);
        out += ',' + std::string(test_name(c.test));
        out += ',' + std::to_string(c.reps);
        out += ',' + std::to_string(c.rejections);
        out += ',' + format_double(c.proportion);
        out += ',' + format_double(c.mc_se);
        out += ',' + std::to_string(c.hull_violations);
        out += '\n';
    }
    return out;
}

std::string study_to_json(const StudyResult& result) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : result.cells) {
        nlohmann::ordered_json j;
        j["alternative"] = c.alternative.to_string();
        j["n"] = c.n;
        j["test"] = std::string(test_name(c.test));
        j["reps"] = c.reps;
        j["rejections"] = c.rejections;
        j["proportion"] = c.proportion;
        j["mc_se"] = c.mc_se;
        j["hull_violations"] = c.hull_violations;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

}  // namespace cauchy_gof
