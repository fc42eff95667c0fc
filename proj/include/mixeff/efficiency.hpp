#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace mixeff {

struct Efficacy {
    double slope;    // derivative of the mean function at the null
    double null_sd;  // asymptotic null standard deviation
    double efficacy; // slope / null_sd
};

// Leading constant of the closed-form efficiency. efficacy_derived (3) follows from the
// squared efficacy ratio; as_printed (9) is the constant as published.
class AreVariant {
public:
    enum class Tag { efficacy_derived, as_printed };

    constexpr AreVariant(Tag tag = Tag::efficacy_derived) noexcept : tag_(tag) {}

    static constexpr AreVariant efficacy_derived() noexcept { return AreVariant{Tag::efficacy_derived}; }
    static constexpr AreVariant as_printed() noexcept { return AreVariant{Tag::as_printed}; }

    constexpr Tag tag() const noexcept { return tag_; }
    constexpr double constant() const noexcept { return tag_ == Tag::efficacy_derived ? 3.0 : 9.0; }
    std::string_view name() const noexcept;

    friend constexpr bool operator==(AreVariant, AreVariant) = default;

private:
    Tag tag_;
};

Efficacy efficacy_t(double mu, double sigma);
Efficacy efficacy_w(double mu, double sigma);

// c / mu^2 * (2 Phi(mu / sqrt(1 + sigma^2)) - 1)^2, with the limit (2c / pi) / (1 + sigma^2) at mu = 0.
double are(double mu, double sigma, AreVariant variant = AreVariant::efficacy_derived());

// Value of are() as mu -> 0.
double are_small_shift_limit(double sigma, AreVariant variant = AreVariant::efficacy_derived());

struct AxisRange {
    double lo;
    double hi;
};

struct EfficiencyGrid {
    std::vector<double> mu_axis;
    std::vector<double> sigma_axis;
    std::vector<double> values;  // row-major: values[i * sigma_axis.size() + j] at (mu_axis[i], sigma_axis[j])
    AreVariant variant;

    double at(std::size_t mu_index, std::size_t sigma_index) const {
        return values.at(mu_index * sigma_axis.size() + sigma_index);
    }
};

// Evenly spaced lattice including both endpoints. Throws DomainError for steps < 2,
// lo > hi, non-finite bounds or a non-positive sigma range.
EfficiencyGrid dominance_grid(AxisRange mu_range, AxisRange sigma_range, std::size_t steps_mu,
                              std::size_t steps_sigma, AreVariant variant = AreVariant::efficacy_derived());

// Positive mu* with are(mu*, sigma) = 1 (|are - 1| <= 1e-9), or nullopt when the
// signed-rank side never reaches efficiency 1 at this sigma.
std::optional<double> dominance_boundary(double sigma, AreVariant variant = AreVariant::efficacy_derived());

}  // namespace mixeff
