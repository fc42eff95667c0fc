#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "mixeff/error.hpp"
#include "mixeff/mixture.hpp"
#include "mixeff/rank_tests.hpp"

namespace mixeff {

enum class TestKind { t, wilcoxon };
std::string_view to_string(TestKind k) noexcept;

struct SimConfig {
    double alpha = 0.05;
    Sidedness sidedness = Sidedness::greater;
    std::uint64_t nreps = 10000;
    std::uint64_t master_seed = 20130101;
    unsigned max_parallelism = 1;
    WilcoxonMode wilcoxon_mode = WilcoxonMode::automatic;

    // Throws DomainError unless 0 < alpha < 1, 1 <= nreps < 2^32 and max_parallelism >= 1.
    void validate() const;
};

// One-sided "greater" for mu > 0, "less" for mu < 0, two-sided for mu == 0.
Sidedness default_sidedness(double mu) noexcept;

struct PowerEstimate {
    double power = 0.0;
    double mc_se = 0.0;          // sqrt(power (1 - power) / nreps)
    std::uint64_t nreps = 0;
    TestKind test_kind = TestKind::t;
    std::uint64_t rejections = 0;
    std::uint64_t degenerate = 0; // replications where the statistic was undefined; counted as non-rejections
};

PowerEstimate make_power_estimate(TestKind kind, std::uint64_t rejections, std::uint64_t degenerate,
                                  std::uint64_t nreps);

// Replication r of cell c draws its sample from RandomStream{seed, c, r}; the first n values of
// that stream are the observations, so the same cell shares replications across n.
// Results do not depend on config.max_parallelism.
PowerEstimate estimate_power(TestKind kind, const MixtureParams& params, std::size_t n,
                             const SimConfig& config, std::uint32_t cell = 0);

PowerEstimate estimate_size(TestKind kind, std::size_t n, const SimConfig& config,
                            std::uint32_t cell = 0);

// Both tests evaluated on the same replications.
struct PairedPower {
    PowerEstimate wilcoxon;
    PowerEstimate t;
};
PairedPower estimate_paired_power(const MixtureParams& params, std::size_t n, const SimConfig& config,
                                  std::uint32_t cell = 0);

struct PowerRatioRow {
    double theta = 0.0;
    std::size_t n = 0;
    double power_w = 0.0;
    double power_t = 0.0;
    double ratio = 0.0;     // power_w / power_t; NaN when power_t == 0
    double se_w = 0.0;
    double se_t = 0.0;
    bool near_null = false; // theta == 0 or power_t < 10 se_t: the ratio is not a power comparison
    std::uint64_t degenerate = 0;

    // Delta-method standard error of the ratio, treating the two estimates as independent.
    double ratio_se() const noexcept;
};

// One row per (theta, n), theta-major. Cell index of each row is its theta index.
std::vector<PowerRatioRow> power_ratio_surface(double mu, double sigma, const std::vector<double>& theta_axis,
                                               const std::vector<std::size_t>& n_axis, const SimConfig& config);

struct PowerProbe {
    std::size_t n;
    PowerEstimate estimate;
};

struct SampleSizeResult {
    std::size_t n_min = 0;
    std::pair<double, double> achieved_power_ci{0.0, 0.0}; // 99% bounds at n_min
    std::vector<PowerProbe> search_trace;                  // in probe order
};

inline constexpr std::size_t kDefaultMaxSampleSize = 1'000'000;
inline constexpr double kSampleSizeConfidenceZ = 2.3263478740408408; // one-sided 99%
inline constexpr double kSampleSizeSlack = 0.01;

// Thrown when the bracket passes the sample-size cap. Carries every probe made.
class SearchOverflowError : public Error {
public:
    SearchOverflowError(const std::string& what, std::vector<PowerProbe> trace)
        : Error(what), trace_(std::move(trace)) {}
    const std::vector<PowerProbe>& trace() const noexcept { return trace_; }

private:
    std::vector<PowerProbe> trace_;
};

// Smallest n whose estimated power has lower 99% bound >= target_power - 0.01,
// found by doubling from n = 2 and then bisecting.
SampleSizeResult min_sample_size(TestKind kind, const MixtureParams& params, double target_power,
                                 const SimConfig& config, std::uint32_t cell = 0,
                                 std::size_t max_n = kDefaultMaxSampleSize);

struct EmpiricalAreRow {
    double theta = 0.0;
    std::size_t n_t = 0;
    std::size_t n_w = 0;
    double ratio = 0.0; // n_t / n_w
    SampleSizeResult search_t;
    SampleSizeResult search_w;
};

class EmpiricalAreOverflow : public SearchOverflowError {
public:
    EmpiricalAreOverflow(const SearchOverflowError& cause, double theta, std::vector<EmpiricalAreRow> partial)
        : SearchOverflowError(cause), theta_(theta), partial_(std::move(partial)) {}
    double failed_theta() const noexcept { return theta_; }
    const std::vector<EmpiricalAreRow>& partial() const noexcept { return partial_; }

private:
    double theta_;
    std::vector<EmpiricalAreRow> partial_;
};

// Ratio of minimal sample sizes along a strictly decreasing positive theta schedule.
// Row i uses cell i for both tests. Throws DomainError for a malformed schedule and
// EmpiricalAreOverflow (with rows completed so far) when a search overflows.
std::vector<EmpiricalAreRow> empirical_are(double mu, double sigma, const std::vector<double>& theta_sequence,
                                           double target_power, const SimConfig& config,
                                           std::size_t max_n = kDefaultMaxSampleSize);

}  // namespace mixeff
