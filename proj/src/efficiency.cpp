#include "mixeff/efficiency.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mixeff/error.hpp"
#include "mixeff/mixture.hpp"

namespace mixeff {

namespace {

void require_shape(double mu, double sigma, const char* who) {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0))
        throw DomainError(std::string(who) + ": mu must be finite and sigma positive");
}

std::vector<double> linspace(AxisRange r, std::size_t steps) {
    std::vector<double> axis(steps);
    const double width = r.hi - r.lo;
    for (std::size_t i = 0; i < steps; ++i)
        axis[i] = r.lo + width * static_cast<double>(i) / static_cast<double>(steps - 1);
    axis.back() = r.hi;
    return axis;
}

void require_range(AxisRange r, std::size_t steps, const char* axis) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi))
        throw DomainError(std::string("dominance_grid: ") + axis + " range must satisfy lo < hi");
    if (steps < 2) throw DomainError(std::string("dominance_grid: ") + axis + " needs at least two steps");
}

}  // namespace

std::string_view AreVariant::name() const noexcept {
    return tag_ == Tag::efficacy_derived ? "efficacy_derived" : "as_printed";
}

Efficacy efficacy_t(double mu, double sigma) {
    require_shape(mu, sigma, "efficacy_t");
    return {mu, 1.0, mu};
}

Efficacy efficacy_w(double mu, double sigma) {
    require_shape(mu, sigma, "efficacy_w");
    const double slope = xi_w_slope_at_null(mu, sigma);
    const double null_sd = std::sqrt(1.0 / 3.0);
    return {slope, null_sd, slope / null_sd};
}

double are_small_shift_limit(double sigma, AreVariant variant) {
    require_shape(0.0, sigma, "are_small_shift_limit");
    return 2.0 * variant.constant() / std::numbers::pi / (1.0 + sigma * sigma);
}

double are(double mu, double sigma, AreVariant variant) {
    require_shape(mu, sigma, "are");
    if (mu == 0.0) return are_small_shift_limit(sigma, variant);
    const double ratio = xi_w_slope_at_null(mu, sigma) / mu;
    return variant.constant() * ratio * ratio;
}

EfficiencyGrid dominance_grid(AxisRange mu_range, AxisRange sigma_range, std::size_t steps_mu,
                              std::size_t steps_sigma, AreVariant variant) {
    require_range(mu_range, steps_mu, "mu");
    require_range(sigma_range, steps_sigma, "sigma");
    if (!(sigma_range.lo > 0.0)) throw DomainError("dominance_grid: sigma range must be positive");

    EfficiencyGrid grid{linspace(mu_range, steps_mu), linspace(sigma_range, steps_sigma), {}, variant};
    grid.values.reserve(steps_mu * steps_sigma);
    for (double mu : grid.mu_axis)
        for (double sigma : grid.sigma_axis) grid.values.push_back(are(mu, sigma, variant));
    return grid;
}

std::optional<double> dominance_boundary(double sigma, AreVariant variant) {
    require_shape(0.0, sigma, "dominance_boundary");
    constexpr double tolerance = 1e-9;
    // are(., sigma) decreases strictly from its mu -> 0 limit towards 0.
    if (!(are_small_shift_limit(sigma, variant) > 1.0)) return std::nullopt;

    double lo = 1e-8;
    if (are(lo, sigma, variant) <= 1.0) return std::nullopt;
    double hi = 1.0;
    while (are(hi, sigma, variant) >= 1.0) hi *= 2.0;

    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double value = are(mid, sigma, variant);
        if (std::fabs(value - 1.0) <= tolerance) break;
        if (value > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

}  // namespace mixeff
