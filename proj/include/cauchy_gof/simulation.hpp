#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cauchy_gof/classical_tests.hpp"
#include "cauchy_gof/distributions.hpp"
#include "cauchy_gof/ustat.hpp"

namespace cauchy_gof {

/// Per-replication seed from (master seed, cell, replication index).
[[nodiscard]] std::uint64_t derive_rep_seed(std::uint64_t master_seed, std::uint64_t cell_id,
                                            std::uint64_t rep_index) noexcept;

/// Stable cell identifier derived from the alternative's canonical text and n.
[[nodiscard]] std::uint64_t cell_id(const DistributionSpec& alt, std::size_t n) noexcept;

/// Seed of the critical-value tables shared by every cell with sample size n.
[[nodiscard]] std::uint64_t table_seed(std::uint64_t master_seed, std::size_t n) noexcept;

struct StudyConfig {
    std::vector<DistributionSpec> alternatives{DistributionSpec::standard_cauchy()};
    std::vector<std::size_t> sizes{20, 40, 60, 100};
    std::size_t reps = 2000;
    double alpha = 0.05;
    std::vector<TestId> tests = all_tests();
    std::uint64_t master_seed = 20240707;
    KernelMode mode = KernelMode::sym6;
    std::size_t B = 10000;  ///< null replications per classical critical-value table
    unsigned threads = 1;
    std::optional<std::filesystem::path> cache_dir;

    /// @throws ValidationError when a field is out of range.
    void validate() const;
};

struct StudyCell {
    DistributionSpec alternative;
    std::size_t n = 0;
    TestId test = TestId::jel;
    std::size_t reps = 0;
    std::size_t rejections = 0;
    double proportion = 0.0;
    double mc_se = 0.0;  ///< sqrt(alpha (1 - alpha) / reps)
    std::size_t hull_violations = 0;
    std::size_t failures = 0;  ///< replications whose statistic could not be computed
    double wall_seconds = 0.0;
};

struct StudyResult {
    std::vector<StudyCell> cells;

    [[nodiscard]] const StudyCell* find(const DistributionSpec& alt, std::size_t n,
                                        TestId test) const;
};

using ProgressFn = std::function<void(std::string_view)>;

/// Rejection proportions for every (alternative, n, test). EL tests use the
/// chi^2_1 calibration, where a hull violation counts as a rejection; the
/// classical tests use Monte Carlo tables shared across cells.
[[nodiscard]] StudyResult run_study(const StudyConfig& config, const ProgressFn& progress = {});

/// run_study with the alternatives replaced by C(0,1).
[[nodiscard]] StudyResult size_study(StudyConfig config, const ProgressFn& progress = {});
[[nodiscard]] StudyResult power_study(const StudyConfig& config, const ProgressFn& progress = {});

/// `alternative,n,test,reps,rejections,proportion,mc_se,hull_violations`
[[nodiscard]] std::string study_to_csv(const StudyResult& result);
[[nodiscard]] std::string study_to_json(const StudyResult& result);

}  // namespace cauchy_gof
