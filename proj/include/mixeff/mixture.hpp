#pragma once

#include <span>
#include <vector>

#include "mixeff/random.hpp"

namespace mixeff {

// Parameters of the two-component mixture (1 - theta) N(0, 1) + theta N(mu, sigma^2).
// theta = 0 is the null. Construction validates eagerly.
class MixtureParams {
public:
    // Throws DomainError unless 0 <= theta <= 1, sigma > 0 and all values are finite.
    MixtureParams(double theta, double mu, double sigma);

    // Second parameter given as a variance, as in the N(mu, sigma^2) notation.
    static MixtureParams from_variance(double theta, double mu, double variance);

    double theta() const noexcept { return theta_; }
    double mu() const noexcept { return mu_; }
    double sigma() const noexcept { return sigma_; }

    MixtureParams with_theta(double theta) const { return {theta, mu_, sigma_}; }

    friend bool operator==(const MixtureParams&, const MixtureParams&) = default;

private:
    double theta_;
    double mu_;
    double sigma_;
};

struct Moments {
    double mean;
    double variance;
};

// Which denominator the t-statistic mean function uses.
//   simplified: sqrt((1 - theta) + theta sigma^2)
//   exact: the true mixture standard deviation
enum class MeanFunctionVariant { simplified, exact };

double pdf(const MixtureParams& params, double x);
double cdf(const MixtureParams& params, double x) noexcept;

// Draws n observations. Each one consumes exactly two stream values: a uniform that
// selects the component, then a standard normal. Throws DomainError for n == 0.
std::vector<double> sample(const MixtureParams& params, std::size_t n, RandomStream& stream);

// Fills `out` in place with the same draw sequence as sample().
void sample_into(const MixtureParams& params, std::span<double> out, RandomStream& stream) noexcept;

Moments moments(const MixtureParams& params) noexcept;

// Mean function of the t-statistic: theta mu / sd.
double xi_t(const MixtureParams& params, MeanFunctionVariant variant = MeanFunctionVariant::exact) noexcept;

// P(X1 + X2 > 0) for two independent draws from the mixture.
double xi_w(const MixtureParams& params) noexcept;

// The same closed form as a quadratic in theta, evaluated for any real theta
// (outside [0, 1] it is an analytic continuation, not a probability).
double xi_w_at(double theta, double mu, double sigma) noexcept;

// d/dtheta xi_w at theta = 0, equal to 2 Phi(mu / sqrt(1 + sigma^2)) - 1.
double xi_w_slope_at_null(double mu, double sigma);

}  // namespace mixeff
