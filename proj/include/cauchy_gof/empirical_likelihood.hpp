#pragma once

#include <span>
#include <string>
#include <vector>

#include "cauchy_gof/distributions.hpp"
#include "cauchy_gof/ustat.hpp"

namespace cauchy_gof {

/// Solution of max prod(m p_i) subject to sum p_i = 1, sum p_i v_i = 0.
struct ELSolution {
    double lambda = 0.0;
    std::vector<double> weights;  ///< p_i = 1 / (m (1 + lambda v_i))
    double neg2logR = 0.0;        ///< +inf when the hull condition fails
    double p_value = 1.0;         ///< chi^2_1 upper tail of neg2logR
    bool hull_ok = true;
    double delta = 0.0;           ///< the U-statistic the pseudo-values average to
    std::vector<std::string> warnings;
};

/// Root of g(lambda) = mean(v_i / (1 + lambda v_i)) on the interval where
/// every 1 + lambda v_i > 0. Bracketed Newton with bisection fallback.
///
/// All-zero input returns 0.
/// @throws ValidationError on empty or non-finite input.
/// @throws HullViolation when zero is not strictly inside the hull of v.
/// @throws NumericalError if the iteration does not converge.
[[nodiscard]] double solve_lambda(std::span<const double> v);

/// g(lambda) as above; exposed for verification.
[[nodiscard]] double lambda_equation(std::span<const double> v, double lambda) noexcept;

/// Empirical likelihood for the zero-mean constraint on `v`. A hull
/// violation is reported through hull_ok = false, neg2logR = +inf,
/// p_value = 0 and a warning, never by throwing.
[[nodiscard]] ELSolution el_zero_mean(std::span<const double> v);

/// AJEL adjustment factor max(1, log(n) / 2).
[[nodiscard]] double ajel_factor(std::size_t n) noexcept;

/// Appends -ajel_factor(n) * mean(J) to the pseudo-values.
[[nodiscard]] std::vector<double> adjusted_values(std::span<const double> J);

/// Jackknife empirical likelihood test on pseudo-values of the sample.
/// @throws ValidationError if n < 4 or a value is zero.
[[nodiscard]] ELSolution jel_test(const Sample& s, KernelMode mode = KernelMode::sym6);
[[nodiscard]] ELSolution jel_from_pseudo(const PseudoValues& pv);

/// Adjusted JEL: one extra pseudo-value keeps zero inside the hull.
/// @throws ValidationError if n < 4 or a value is zero.
[[nodiscard]] ELSolution ajel_test(const Sample& s, KernelMode mode = KernelMode::sym6);
[[nodiscard]] ELSolution ajel_from_pseudo(const PseudoValues& pv);

}  // namespace cauchy_gof
