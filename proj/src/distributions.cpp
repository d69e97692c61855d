#include "cauchy_gof/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "cauchy_gof/errors.hpp"
#include "cauchy_gof/seeding.hpp"

namespace cauchy_gof {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw ValidationError("sample is empty");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ValidationError("sample value at position " + std::to_string(i + 1) +
                                  " is not finite");
        }
    }
}

std::vector<double> Sample::sorted() const {
    std::vector<double> out = values_;
    std::sort(out.begin(), out.end());
    return out;
}

double cauchy_pdf(double x) noexcept {
    return 1.0 / (std::numbers::pi * (1.0 + x * x));
}

// atan2 form keeps full relative precision in the lower tail, where
// 1/2 + atan(x)/pi cancels.
double cauchy_cdf(double x) noexcept {
    return std::atan2(1.0, -x) / std::numbers::pi;
}

double cauchy_sf(double x) noexcept {
    return std::atan2(1.0, x) / std::numbers::pi;
}

double cauchy_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw ValidationError("cauchy_quantile: probability must lie in (0, 1)");
    }
    if (p == 0.5) {
        return 0.0;
    }
    // tan(pi (p - 1/2)) written against the nearer tail.
    if (p < 0.5) {
        return -1.0 / std::tan(std::numbers::pi * p);
    }
    return 1.0 / std::tan(std::numbers::pi * (1.0 - p));
}

double chisq1_sf(double x) {
    if (std::isnan(x) || x < 0.0) {
        throw ValidationError("chisq1_sf: argument must be nonnegative");
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    return std::erfc(std::sqrt(0.5 * x));
}

double chisq1_cdf(double x) {
    if (std::isnan(x) || x < 0.0) {
        throw ValidationError("chisq1_cdf: argument must be nonnegative");
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    return std::erf(std::sqrt(0.5 * x));
}

Sample compute_returns(std::span<const double> prices) {
    if (prices.size() < 2) {
        throw ValidationError("at least two prices are needed to form a return");
    }
    std::vector<double> out;
    out.reserve(prices.size() - 1);
    for (std::size_t d = 0; d < prices.size(); ++d) {
        if (!(prices[d] > 0.0) || !std::isfinite(prices[d])) {
            throw ValidationError("price at position " + std::to_string(d + 1) +
                                  " is not a positive finite number");
        }
        if (d > 0) {
            out.push_back((prices[d] - prices[d - 1]) / prices[d - 1]);
        }
    }
    return Sample(std::move(out));
}

double quantile_type7(std::span<const double> sorted, double prob) {
    if (sorted.empty()) {
        throw ValidationError("quantile of empty data");
    }
    const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Standardized standardize(const Sample& s) {
    if (s.size() < 2) {
        throw ValidationError("standardize needs at least two observations");
    }
    const std::vector<double> sorted = s.sorted();
    const double location = quantile_type7(sorted, 0.5);
    const double scale =
        0.5 * (quantile_type7(sorted, 0.75) - quantile_type7(sorted, 0.25));
    if (!(scale > 0.0)) {
        throw ValidationError("standardize: interquartile range is zero");
    }
    std::vector<double> out;
    out.reserve(s.size());
    for (double x : s.values()) {
        out.push_back((x - location) / scale);
    }
    return {Sample(std::move(out)), location, scale};
}

std::string_view family_name(Family f) noexcept {
    switch (f) {
        case Family::cauchy: return "cauchy";
        case Family::student_t: return "student_t";
        case Family::normal: return "normal";
        case Family::gamma: return "gamma";
        case Family::laplace: return "laplace";
        case Family::beta: return "beta";
        case Family::uniform: return "uniform";
    }
    return "unknown";
}

namespace {

std::size_t expected_param_count(Family f) {
    return f == Family::student_t ? 1 : 2;
}

std::string format_param(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Uniform on the open interval (0, 1) from the top 53 bits.
double open_unit(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

void DistributionSpec::validate() const {
    const std::string name(family_name(family));
    if (params.size() != expected_param_count(family)) {
        throw ValidationError(name + " expects " +
                              std::to_string(expected_param_count(family)) + " parameter(s)");
    }
    for (double p : params) {
        if (!std::isfinite(p)) {
            throw ValidationError(name + ": parameters must be finite");
        }
    }
    switch (family) {
        case Family::cauchy:
        case Family::laplace:
        case Family::normal:
            if (!(params[1] > 0.0)) {
                throw ValidationError(name + ": scale/variance must be positive");
            }
            break;
        case Family::student_t:
            if (!(params[0] > 0.0)) {
                throw ValidationError(name + ": degrees of freedom must be positive");
            }
            break;
        case Family::gamma:
        case Family::beta:
            if (!(params[0] > 0.0 && params[1] > 0.0)) {
                throw ValidationError(name + ": shape parameters must be positive");
            }
            break;
        case Family::uniform:
            if (!(params[0] < params[1])) {
                throw ValidationError(name + ": requires lower < upper");
            }
            break;
    }
}

std::string DistributionSpec::to_string() const {
    std::string out(family_name(family));
    out += ':';
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += format_param(params[i]);
    }
    return out;
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ValidationError("distribution '" + std::string(text) +
                              "' must have the form family:param,param");
    }
    const std::string_view fam = text.substr(0, colon);
    DistributionSpec spec;
    if (fam == "cauchy") {
        spec.family = Family::cauchy;
    } else if (fam == "student_t" || fam == "t") {
        spec.family = Family::student_t;
    } else if (fam == "normal" || fam == "norm") {
        spec.family = Family::normal;
    } else if (fam == "gamma") {
        spec.family = Family::gamma;
    } else if (fam == "laplace") {
        spec.family = Family::laplace;
    } else if (fam == "beta") {
        spec.family = Family::beta;
    } else if (fam == "uniform" || fam == "unif") {
        spec.family = Family::uniform;
    } else {
        throw ValidationError("unknown distribution family '" + std::string(fam) + "'");
    }

    spec.params.clear();
    std::string_view rest = text.substr(colon + 1);
    while (true) {
        const auto comma = rest.find(',');
        const std::string_view field = rest.substr(0, comma);
        double v = 0.0;
        const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
            throw ValidationError("bad parameter '" + std::string(field) + "' in '" +
                                  std::string(text) + "'");
        }
        spec.params.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        rest = rest.substr(comma + 1);
    }
    spec.validate();
    return spec;
}

Sample sample_distribution(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw ValidationError("sample size must be at least 1");
    }
    spec.validate();
    std::mt19937_64 rng(splitmix64(seed));
    std::vector<double> out(n);
    const auto& p = spec.params;

    switch (spec.family) {
        case Family::cauchy:
            for (auto& x : out) x = p[0] + p[1] * cauchy_quantile(open_unit(rng));
            break;
        case Family::uniform:
            for (auto& x : out) x = p[0] + (p[1] - p[0]) * open_unit(rng);
            break;
        case Family::laplace:
            for (auto& x : out) {
                const double u = open_unit(rng) - 0.5;
                x = p[0] - p[1] * std::copysign(1.0, u) * std::log1p(-2.0 * std::abs(u));
            }
            break;
        case Family::normal: {
            std::normal_distribution<double> dist(p[0], std::sqrt(p[1]));
            for (auto& x : out) x = dist(rng);
            break;
        }
        case Family::student_t: {
            std::student_t_distribution<double> dist(p[0]);
            for (auto& x : out) x = dist(rng);
            break;
        }
        case Family::gamma: {
            std::gamma_distribution<double> dist(p[0], 1.0 / p[1]);
            for (auto& x : out) x = dist(rng);
            break;
        }
        case Family::beta: {
            std::gamma_distribution<double> ga(p[0], 1.0);
            std::gamma_distribution<double> gb(p[1], 1.0);
            for (auto& x : out) {
                const double a = ga(rng);
                const double b = gb(rng);
                x = a / (a + b);
            }
            break;
        }
    }
    return Sample(std::move(out));
}

}  // namespace cauchy_gof
