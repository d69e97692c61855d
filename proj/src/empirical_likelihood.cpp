#include "cauchy_gof/empirical_likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cauchy_gof/errors.hpp"

namespace cauchy_gof {

namespace {

constexpr double kTolerance = 1e-10;
constexpr int kMaxIterations = 200;

struct GValue {
    double g;
    double dg;
};

GValue evaluate(std::span<const double> v, double lambda) noexcept {
    double g = 0.0;
    double dg = 0.0;
    for (double vi : v) {
        const double r = vi / (1.0 + lambda * vi);
        g += r;
        dg -= r * r;
    }
    const auto m = static_cast<double>(v.size());
    return {g / m, dg / m};
}

}  // namespace

double lambda_equation(std::span<const double> v, double lambda) noexcept {
    return evaluate(v, lambda).g;
}

double solve_lambda(std::span<const double> v) {
    if (v.empty()) {
        throw ValidationError("solve_lambda: no values");
    }
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    for (double vi : v) {
        if (!std::isfinite(vi)) {
            throw ValidationError("solve_lambda: values must be finite");
        }
        vmin = std::min(vmin, vi);
        vmax = std::max(vmax, vi);
    }
    if (vmin == 0.0 && vmax == 0.0) {
        return 0.0;
    }
    if (!(vmin < 0.0 && vmax > 0.0)) {
        throw HullViolation("zero is not inside the convex hull of the constrained values");
    }

    // g is strictly decreasing on (-1/vmax, -1/vmin).
    const double left = -1.0 / vmax;
    const double right = -1.0 / vmin;
    const double shrink = 1e-12 * (right - left);
    double lo = left + shrink;
    double hi = right - shrink;

    double lambda = 0.0;
    GValue gv = evaluate(v, lambda);
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        if (std::abs(gv.g) < kTolerance) {
            return lambda;
        }
        if (gv.g > 0.0) {
            lo = lambda;
        } else {
            hi = lambda;
        }
        double next = lambda - gv.g / gv.dg;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next == lambda) {
            // bracket exhausted at double resolution
            break;
        }
        lambda = next;
        gv = evaluate(v, lambda);
    }
    if (std::abs(gv.g) < kTolerance) {
        return lambda;
    }
    throw NumericalError("solve_lambda: no convergence within " +
                         std::to_string(kMaxIterations) + " iterations");
}

ELSolution el_zero_mean(std::span<const double> v) {
    ELSolution out;
    const auto m = static_cast<double>(v.size());
    try {
        out.lambda = solve_lambda(v);
    } catch (const HullViolation& e) {
        out.hull_ok = false;
        out.lambda = std::numeric_limits<double>::quiet_NaN();
        out.neg2logR = std::numeric_limits<double>::infinity();
        out.p_value = 0.0;
        out.warnings.emplace_back(std::string("convex hull violation: ") + e.what() +
                                  "; treated as rejection");
        return out;
    }
    out.weights.reserve(v.size());
    double sum_log = 0.0;
    for (double vi : v) {
        const double t = 1.0 + out.lambda * vi;
        out.weights.push_back(1.0 / (m * t));
        sum_log += std::log1p(out.lambda * vi);
    }
    out.neg2logR = 2.0 * sum_log;
    out.p_value = chisq1_sf(std::max(out.neg2logR, 0.0));
    return out;
}

double ajel_factor(std::size_t n) noexcept {
    return std::max(1.0, 0.5 * std::log(static_cast<double>(n)));
}

std::vector<double> adjusted_values(std::span<const double> J) {
    std::vector<double> w(J.begin(), J.end());
    double mean = 0.0;
    for (double j : J) {
        mean += j;
    }
    mean /= static_cast<double>(J.size());
    w.push_back(-ajel_factor(J.size()) * mean);
    return w;
}

ELSolution jel_from_pseudo(const PseudoValues& pv) {
    ELSolution out = el_zero_mean(pv.J);
    out.delta = pv.delta;
    return out;
}

ELSolution ajel_from_pseudo(const PseudoValues& pv) {
    const std::vector<double> w = adjusted_values(pv.J);
    ELSolution out = el_zero_mean(w);
    out.delta = pv.delta;
    return out;
}

ELSolution jel_test(const Sample& s, KernelMode mode) {
    return jel_from_pseudo(pseudo_values(s, mode));
}

ELSolution ajel_test(const Sample& s, KernelMode mode) {
    return ajel_from_pseudo(pseudo_values(s, mode));
}

}  // namespace cauchy_gof
