#include "cauchy_gof/ustat.hpp"

#include <atomic>
#include <string>

#include "cauchy_gof/errors.hpp"

namespace cauchy_gof {

namespace {

std::atomic<std::uint64_t> g_kernel_evaluations{0};

void require_nonzero(const Sample& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 0.0) {
            throw ValidationError(
                "observation " + std::to_string(i + 1) +
                " is exactly zero; the Cauchy characterization divides by X2, so every "
                "observation must be nonzero");
        }
    }
}

void require_size(const Sample& s, std::size_t min_n, const char* what) {
    if (s.size() < min_n) {
        throw ValidationError(std::string(what) + " needs at least " + std::to_string(min_n) +
                              " observations, got " + std::to_string(s.size()));
    }
}

// pseudo-observation (x_a x_b - 1) / (2 x_b), the same expression kernel_indicator uses
inline double pseudo_obs(double xa, double xb) noexcept {
    return (xa * xb - 1.0) / (2.0 * xb);
}

template <KernelMode Mode>
KernelSums accumulate(std::span<const double> x) {
    const std::size_t n = x.size();
    // y[a*n+b] = pseudo_obs(x_a, x_b); yt is its transpose so that every
    // inner-loop read is contiguous in c.
    std::vector<double> y(n * n, 0.0);
    std::vector<double> yt(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b) {
                const double v = pseudo_obs(x[a], x[b]);
                y[a * n + b] = v;
                yt[b * n + a] = v;
            }
        }
    }

    KernelSums out;
    out.per_index.assign(n, 0);
    out.weight = mode_weight(Mode);
    std::int64_t total = 0;
    std::uint64_t visited = 0;

    for (std::size_t a = 0; a < n; ++a) {
        const double xa = x[a];
        const double* ya = &y[a * n];
        const double* yta = &yt[a * n];
        for (std::size_t b = a + 1; b < n; ++b) {
            const double xb = x[b];
            const double* yb = &y[b * n];
            const double* ytb = &yt[b * n];
            const double y_ba = y[b * n + a];
            const double y_ab = ya[b];
            std::int64_t pair_sum = 0;
            for (std::size_t c = b + 1; c < n; ++c) {
                const double xc = x[c];
                // indices a < b < c; the latest index takes the X1 role.
                int cnt = static_cast<int>(ytb[c] <= xa);  // I{(x_c x_b - 1)/(2 x_b) <= x_a}
                if constexpr (Mode != KernelMode::literal) {
                    cnt += static_cast<int>(yta[c] <= xb);  // (c, a | b)
                    cnt += static_cast<int>(y_ba <= xc);    // (b, a | c)
                }
                if constexpr (Mode == KernelMode::sym6) {
                    cnt += static_cast<int>(y_ab <= xc);   // (a, b | c)
                    cnt += static_cast<int>(ya[c] <= xb);  // (a, c | b)
                    cnt += static_cast<int>(yb[c] <= xa);  // (b, c | a)
                }
                pair_sum += cnt;
                out.per_index[c] += cnt;
            }
            out.per_index[a] += pair_sum;
            out.per_index[b] += pair_sum;
            total += pair_sum;
            visited += n - b - 1;
        }
    }
    out.total = total;
    out.evaluations = visited;
    g_kernel_evaluations.fetch_add(visited, std::memory_order_relaxed);
    return out;
}

double delta_from_counts(std::int64_t sum, std::int64_t n, int weight) {
    const auto denom = static_cast<double>(binomial(n, 3) * weight);
    return static_cast<double>(sum) / denom - 0.5;
}

}  // namespace

std::string_view mode_name(KernelMode m) noexcept {
    switch (m) {
        case KernelMode::literal: return "literal";
        case KernelMode::sym3: return "sym3";
        case KernelMode::sym6: return "sym6";
    }
    return "unknown";
}

std::optional<KernelMode> parse_mode(std::string_view text) noexcept {
    if (text == "literal") return KernelMode::literal;
    if (text == "sym3") return KernelMode::sym3;
    if (text == "sym6") return KernelMode::sym6;
    return std::nullopt;
}

int mode_weight(KernelMode m) noexcept {
    switch (m) {
        case KernelMode::literal: return 1;
        case KernelMode::sym3: return 3;
        case KernelMode::sym6: return 6;
    }
    return 1;
}

std::int64_t binomial(std::int64_t n, int k) noexcept {
    if (k < 0 || n < k) {
        return 0;
    }
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

bool kernel_indicator(double xi, double xj, double xk) {
    if (xj == 0.0) {
        throw ValidationError("kernel_indicator: X2 must be nonzero");
    }
    return pseudo_obs(xi, xj) <= xk;
}

double symmetrized_kernel(double x, double y, double z, KernelMode mode) {
    if (x == 0.0 || y == 0.0 || z == 0.0) {
        throw ValidationError("symmetrized_kernel: arguments must be nonzero");
    }
    // x, y, z arrive in sample order, so the latest (z) plays X1.
    int cnt = kernel_indicator(z, y, x);
    if (mode == KernelMode::literal) {
        return cnt;
    }
    cnt += kernel_indicator(z, x, y);
    cnt += kernel_indicator(y, x, z);
    if (mode == KernelMode::sym3) {
        return cnt / 3.0;
    }
    cnt += kernel_indicator(x, y, z);
    cnt += kernel_indicator(x, z, y);
    cnt += kernel_indicator(y, z, x);
    return cnt / 6.0;
}

KernelSums kernel_sums(const Sample& s, KernelMode mode) {
    require_size(s, 3, "the U-statistic");
    require_nonzero(s);
    switch (mode) {
        case KernelMode::literal: return accumulate<KernelMode::literal>(s.values());
        case KernelMode::sym3: return accumulate<KernelMode::sym3>(s.values());
        case KernelMode::sym6: return accumulate<KernelMode::sym6>(s.values());
    }
    return {};
}

double delta_star(const Sample& s, KernelMode mode) {
    const KernelSums k = kernel_sums(s, mode);
    return delta_from_counts(k.total, static_cast<std::int64_t>(s.size()), k.weight);
}

std::vector<double> leave_one_out_deltas(const Sample& s, KernelMode mode) {
    require_size(s, 4, "leave-one-out recomputation");
    const KernelSums k = kernel_sums(s, mode);
    const auto reduced_n = static_cast<std::int64_t>(s.size()) - 1;
    std::vector<double> out;
    out.reserve(s.size());
    for (std::int64_t t : k.per_index) {
        out.push_back(delta_from_counts(k.total - t, reduced_n, k.weight));
    }
    return out;
}

PseudoValues pseudo_values(const Sample& s, KernelMode mode) {
    require_size(s, 4, "jackknife pseudo-values");
    const KernelSums k = kernel_sums(s, mode);
    const auto n = static_cast<std::int64_t>(s.size());

    // n*delta - (n-1)*delta_(-i) reduces to
    //   n * ((n-1) T_i - 2 S) / (w C(n,3) (n-3)) - 1/2,
    // which keeps the numerator an exact integer.
    const double scale =
        static_cast<double>(n) / (static_cast<double>(k.weight) *
                                  static_cast<double>(binomial(n, 3)) *
                                  static_cast<double>(n - 3));
    PseudoValues pv;
    pv.mode = mode;
    pv.delta = delta_from_counts(k.total, n, k.weight);
    pv.J.reserve(s.size());
    for (std::int64_t t : k.per_index) {
        const std::int64_t num = (n - 1) * t - 2 * k.total;
        pv.J.push_back(static_cast<double>(num) * scale - 0.5);
    }
    return pv;
}

std::uint64_t kernel_evaluation_count() noexcept {
    return g_kernel_evaluations.load(std::memory_order_relaxed);
}

void reset_kernel_evaluation_count() noexcept {
    g_kernel_evaluations.store(0, std::memory_order_relaxed);
}

}  // namespace cauchy_gof
