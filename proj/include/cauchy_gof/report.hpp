#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cauchy_gof/classical_tests.hpp"
#include "cauchy_gof/distributions.hpp"
#include "json.hpp"

namespace cauchy_gof {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class InputKind { returns, prices };

struct InputOptions {
    /// 0-based column index, or a header name when has_header is set.
    std::string column = "0";
    bool has_header = false;
    InputKind kind = InputKind::returns;
};

/// Reads one numeric column from delimited text (comma, semicolon or tab,
/// detected from the first row). Blank lines are skipped. With
/// kind = prices the column is converted to simple returns.
/// @throws ValidationError listing offending line numbers, or on empty input.
[[nodiscard]] Sample parse_input_text(std::string_view text, const InputOptions& options);
[[nodiscard]] Sample parse_input(const std::filesystem::path& path, const InputOptions& options);

struct ReportDocument {
    std::string path;
    std::size_t n = 0;
    std::string preprocessing = "raw";  ///< "raw" or "standardized"
    std::optional<double> location;     ///< set when standardized
    std::optional<double> scale;
    std::vector<TestOutcome> outcomes;
    std::string mode = "sym6";
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::size_t B = 0;
    bool mc_pvalues = false;
    std::string tool_version{kToolVersion};

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

/// Non-finite numbers are encoded as the strings "inf", "-inf" and "nan".
[[nodiscard]] nlohmann::ordered_json report_to_json(const ReportDocument& doc);
/// @throws ValidationError on a document that does not match the schema.
[[nodiscard]] ReportDocument report_from_json(const nlohmann::ordered_json& j);

/// Fixed-width table for terminals.
[[nodiscard]] std::string format_report(const ReportDocument& doc);

struct QQPoint {
    double theoretical;
    double empirical;
};
/// (cauchy_quantile((i - 0.5) / n), X_(i)) for i = 1..n.
[[nodiscard]] std::vector<QQPoint> qq_points(const Sample& s);

struct HistogramBin {
    double left;
    double right;
    std::size_t count;
    double density;     ///< count / (n * width)
    double cauchy_pdf;  ///< reference density at the bin midpoint
};
/// Equal-width bins over [min, max]; the last bin is closed on the right.
/// @throws ValidationError if bins == 0.
[[nodiscard]] std::vector<HistogramBin> histogram(const Sample& s, std::size_t bins);

[[nodiscard]] std::string qq_to_csv(const std::vector<QQPoint>& points);
[[nodiscard]] std::string histogram_to_csv(const std::vector<HistogramBin>& bins);

}  // namespace cauchy_gof
