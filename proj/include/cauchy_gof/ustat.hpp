#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cauchy_gof/distributions.hpp"

namespace cauchy_gof {

/// How the asymmetric characterization indicator is turned into a kernel.
///
/// - literal: one indicator per index-ordered triple, the later-indexed
///   observations taking the X1, X2 roles. Depends on data order.
/// - sym3: the three-term kernel that rotates which argument plays X3.
/// - sym6: the average over all six argument permutations. Order-invariant.
enum class KernelMode { literal, sym3, sym6 };

[[nodiscard]] std::string_view mode_name(KernelMode m) noexcept;
[[nodiscard]] std::optional<KernelMode> parse_mode(std::string_view text) noexcept;

/// Number of indicator terms a mode sums per triple (1, 3 or 6).
[[nodiscard]] int mode_weight(KernelMode m) noexcept;

/// I{(xi*xj - 1) / (2*xj) <= xk}.
/// @throws ValidationError if xj == 0.
[[nodiscard]] bool kernel_indicator(double xi, double xj, double xk);

/// Kernel value of one triple, arguments given in sample order (x earliest).
/// Returns a multiple of 1/mode_weight(mode) in [0, 1].
/// @throws ValidationError if any argument is zero.
[[nodiscard]] double symmetrized_kernel(double x, double y, double z, KernelMode mode);

/// Integer-valued kernel sums from a single pass over all C(n,3) triples.
struct KernelSums {
    std::int64_t total = 0;               ///< S: fired indicators over all triples
    std::vector<std::int64_t> per_index;  ///< T_i: fired indicators in triples holding i
    int weight = 1;                       ///< indicators per triple
    std::uint64_t evaluations = 0;        ///< triples visited
};

/// @throws ValidationError if n < 3 or a value is zero.
[[nodiscard]] KernelSums kernel_sums(const Sample& s, KernelMode mode);

/// Average kernel over all index-ordered triples, minus 1/2.
/// @throws ValidationError if n < 3 or a value is zero.
[[nodiscard]] double delta_star(const Sample& s, KernelMode mode = KernelMode::sym6);

/// Element i is delta_star of the sample with observation i removed.
/// @throws ValidationError if n < 4 or a value is zero.
[[nodiscard]] std::vector<double> leave_one_out_deltas(const Sample& s,
                                                       KernelMode mode = KernelMode::sym6);

struct PseudoValues {
    std::vector<double> J;
    double delta = 0.0;
    KernelMode mode = KernelMode::sym6;
};

/// Jackknife pseudo-values J_i = n*delta - (n-1)*delta_(-i), from one triple pass.
/// @throws ValidationError if n < 4 or a value is zero.
[[nodiscard]] PseudoValues pseudo_values(const Sample& s, KernelMode mode = KernelMode::sym6);

/// Process-wide tally of triples visited by kernel_sums; used to pin the
/// single-pass cost in tests.
[[nodiscard]] std::uint64_t kernel_evaluation_count() noexcept;
void reset_kernel_evaluation_count() noexcept;

/// C(n, k) for small k as a 64-bit integer.
[[nodiscard]] std::int64_t binomial(std::int64_t n, int k) noexcept;

}  // namespace cauchy_gof
