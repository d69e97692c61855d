#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cauchy_gof {

/// An ordered, non-empty sequence of finite observations.
///
/// Order is kept exactly as supplied: the literal kernel mode of the
/// U-statistic depends on it.
class Sample {
public:
    /// @throws ValidationError if `values` is empty or holds a NaN/infinity.
    explicit Sample(std::vector<double> values);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

    /// Copy of the values in ascending order.
    [[nodiscard]] std::vector<double> sorted() const;

    friend bool operator==(const Sample&, const Sample&) = default;

private:
    std::vector<double> values_;
};

// Standard Cauchy reference functions.
[[nodiscard]] double cauchy_pdf(double x) noexcept;
[[nodiscard]] double cauchy_cdf(double x) noexcept;
/// Upper tail 1 - F(x), computed without cancellation for large x.
[[nodiscard]] double cauchy_sf(double x) noexcept;
/// @throws ValidationError unless 0 < p < 1.
[[nodiscard]] double cauchy_quantile(double p);

/// P(chi^2_1 > x) = erfc(sqrt(x / 2)). Returns 0 for x = +inf.
/// @throws ValidationError for x < 0 or NaN.
[[nodiscard]] double chisq1_sf(double x);
[[nodiscard]] double chisq1_cdf(double x);

/// Simple returns r_d = (P_d - P_{d-1}) / P_{d-1}.
/// @throws ValidationError for fewer than two prices or a nonpositive price.
[[nodiscard]] Sample compute_returns(std::span<const double> prices);

struct Standardized {
    Sample sample;
    double location;
    double scale;
};

/// Centres on the sample median and divides by half the interquartile range
/// (type-7 linear-interpolation quantiles).
/// @throws ValidationError for n < 2 or zero scale.
[[nodiscard]] Standardized standardize(const Sample& s);

/// Type-7 quantile of already sorted data.
[[nodiscard]] double quantile_type7(std::span<const double> sorted, double prob);

enum class Family { cauchy, student_t, normal, gamma, laplace, beta, uniform };

/// A sampling distribution with family-specific parameters.
///
/// | family    | params                      |
/// |-----------|-----------------------------|
/// | cauchy    | location, scale             |
/// | student_t | degrees of freedom r        |
/// | normal    | mean, variance              |
/// | gamma     | shape, rate                 |
/// | laplace   | location, scale             |
/// | beta      | shape1, shape2              |
/// | uniform   | lower, upper                |
struct DistributionSpec {
    Family family = Family::cauchy;
    std::vector<double> params{0.0, 1.0};

    /// @throws ValidationError on a wrong parameter count or an invalid value.
    void validate() const;

    /// Canonical `family:p1,p2` form, accepted back by parse().
    [[nodiscard]] std::string to_string() const;

    /// Parses `family:param,param`, e.g. `cauchy:0,1`, `student_t:3`, `t:3`.
    /// @throws ValidationError on a malformed string.
    [[nodiscard]] static DistributionSpec parse(std::string_view text);

    static DistributionSpec standard_cauchy() { return {Family::cauchy, {0.0, 1.0}}; }

    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

[[nodiscard]] std::string_view family_name(Family f) noexcept;

/// Draws `n` independent values. Identical (spec, n, seed) always gives
/// identical output within one build.
/// @throws ValidationError if n == 0 or the spec is invalid.
[[nodiscard]] Sample sample_distribution(const DistributionSpec& spec, std::size_t n,
                                         std::uint64_t seed);

}  // namespace cauchy_gof
