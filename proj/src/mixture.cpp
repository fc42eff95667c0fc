#include "mixeff/mixture.hpp"

#include <cmath>
#include <string>

#include "mixeff/error.hpp"
#include "mixeff/normal.hpp"

namespace mixeff {

MixtureParams::MixtureParams(double theta, double mu, double sigma) : theta_(theta), mu_(mu), sigma_(sigma) {
    if (!std::isfinite(theta) || !std::isfinite(mu) || !std::isfinite(sigma))
        throw DomainError("MixtureParams: parameters must be finite");
    if (theta < 0.0 || theta > 1.0)
        throw DomainError("MixtureParams: theta must lie in [0, 1], got " + std::to_string(theta));
    if (!(sigma > 0.0)) throw DomainError("MixtureParams: sigma must be positive, got " + std::to_string(sigma));
}

MixtureParams MixtureParams::from_variance(double theta, double mu, double variance) {
    if (!std::isfinite(variance) || !(variance > 0.0))
        throw DomainError("MixtureParams: variance must be positive and finite");
    return {theta, mu, std::sqrt(variance)};
}

double pdf(const MixtureParams& p, double x) {
    if (!std::isfinite(x)) throw DomainError("pdf: x must be finite");
    return (1.0 - p.theta()) * normal_pdf(x) + p.theta() / p.sigma() * normal_pdf((x - p.mu()) / p.sigma());
}

double cdf(const MixtureParams& p, double x) noexcept {
    return (1.0 - p.theta()) * normal_cdf(x) + p.theta() * normal_cdf((x - p.mu()) / p.sigma());
}

void sample_into(const MixtureParams& p, std::span<double> out, RandomStream& stream) noexcept {
    const double theta = p.theta();
    const double mu = p.mu();
    const double sigma = p.sigma();
    for (double& x : out) {
        const bool alternative = stream.uniform() < theta;
        const double z = stream.standard_normal();
        x = alternative ? mu + sigma * z : z;
    }
}

std::vector<double> sample(const MixtureParams& p, std::size_t n, RandomStream& stream) {
    if (n == 0) throw DomainError("sample: n must be positive");
    std::vector<double> out(n);
    sample_into(p, out, stream);
    return out;
}

Moments moments(const MixtureParams& p) noexcept {
    const double theta = p.theta();
    const double mu = p.mu();
    const double s2 = p.sigma() * p.sigma();
    // (1 - theta) + theta (sigma^2 + mu^2) - theta^2 mu^2, with the mu^2 terms grouped as theta (1 - theta) mu^2
    const double variance = (1.0 - theta) + theta * s2 + theta * (1.0 - theta) * mu * mu;
    return {theta * mu, variance};
}

double xi_t(const MixtureParams& p, MeanFunctionVariant variant) noexcept {
    const double theta = p.theta();
    const double numerator = theta * p.mu();
    if (variant == MeanFunctionVariant::simplified)
        return numerator / std::sqrt((1.0 - theta) + theta * p.sigma() * p.sigma());
    return numerator / std::sqrt(moments(p).variance);
}

double xi_w(const MixtureParams& p) noexcept { return xi_w_at(p.theta(), p.mu(), p.sigma()); }

double xi_w_at(double theta, double mu, double sigma) noexcept {
    const double cross = normal_cdf(mu / std::sqrt(1.0 + sigma * sigma));
    const double both = normal_cdf(kSqrt2 * mu / sigma);
    return theta * theta * both - 0.5 * (theta - 1.0) * (1.0 - theta + 4.0 * theta * cross);
}

double xi_w_slope_at_null(double mu, double sigma) {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0))
        throw DomainError("xi_w_slope_at_null: mu must be finite and sigma positive");
    return normal_central_mass(mu / std::sqrt(1.0 + sigma * sigma));
}

}  // namespace mixeff
