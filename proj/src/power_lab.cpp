#include "mixeff/power_lab.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <string>
#include <thread>

namespace mixeff {

namespace {

struct Tally {
    std::uint64_t rejected_t = 0;
    std::uint64_t degenerate_t = 0;
    std::uint64_t rejected_w = 0;
    std::uint64_t degenerate_w = 0;

    Tally& operator+=(const Tally& o) noexcept {
        rejected_t += o.rejected_t;
        degenerate_t += o.degenerate_t;
        rejected_w += o.rejected_w;
        degenerate_w += o.degenerate_w;
        return *this;
    }
};

// Splits [0, nreps) into contiguous chunks, one per worker. Integer tallies make the
// merged result independent of the split.
template <class ChunkFn>
Tally run_replications(std::uint64_t nreps, unsigned parallelism, ChunkFn&& chunk) {
    const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(parallelism, nreps));
    if (workers == 1) return chunk(std::uint64_t{0}, nreps);

    std::vector<Tally> partial(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::uint64_t base = nreps / workers;
    const std::uint64_t extra = nreps % workers;
    std::uint64_t begin = 0;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t end = begin + base + (w < extra ? 1 : 0);
        threads.emplace_back([&, w, begin, end] {
            try {
                partial[w] = chunk(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    Tally total;
    for (const auto& p : partial) total += p;
    return total;
}

Tally simulate(const MixtureParams& params, std::size_t n, const SimConfig& config, std::uint32_t cell,
               bool run_t, bool run_w) {
    return run_replications(config.nreps, config.max_parallelism, [&](std::uint64_t begin, std::uint64_t end) {
        Tally tally;
        std::vector<double> x(n);
        for (std::uint64_t rep = begin; rep < end; ++rep) {
            RandomStream stream({config.master_seed, cell, static_cast<std::uint32_t>(rep)});
            sample_into(params, x, stream);
            if (run_t) {
                try {
                    if (t_test(x, config.sidedness).p_value <= config.alpha) ++tally.rejected_t;
                } catch (const DegenerateSampleError&) {
                    ++tally.degenerate_t;
                }
            }
            if (run_w) {
                try {
                    if (wilcoxon_test(x, config.sidedness, config.wilcoxon_mode).p_value <= config.alpha)
                        ++tally.rejected_w;
                } catch (const DegenerateSampleError&) {
                    ++tally.degenerate_w;
                }
            }
        }
        return tally;
    });
}

void require_n(std::size_t n) {
    if (n < 2) throw DomainError("estimate_power: n must be at least 2");
}

}  // namespace

std::string_view to_string(TestKind k) noexcept { return k == TestKind::t ? "t" : "wilcoxon"; }

void SimConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("SimConfig: alpha must lie in (0, 1)");
    if (nreps < 1 || nreps > std::numeric_limits<std::uint32_t>::max())
        throw DomainError("SimConfig: nreps must lie in [1, 2^32 - 1]");
    if (max_parallelism < 1) throw DomainError("SimConfig: max_parallelism must be at least 1");
}

Sidedness default_sidedness(double mu) noexcept {
    if (mu > 0.0) return Sidedness::greater;
    if (mu < 0.0) return Sidedness::less;
    return Sidedness::two_sided;
}

PowerEstimate make_power_estimate(TestKind kind, std::uint64_t rejections, std::uint64_t degenerate,
                                  std::uint64_t nreps) {
    const double p = static_cast<double>(rejections) / static_cast<double>(nreps);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(nreps)), nreps, kind, rejections, degenerate};
}

PowerEstimate estimate_power(TestKind kind, const MixtureParams& params, std::size_t n, const SimConfig& config,
                             std::uint32_t cell) {
    config.validate();
    require_n(n);
    const bool is_t = kind == TestKind::t;
    const Tally tally = simulate(params, n, config, cell, is_t, !is_t);
    return is_t ? make_power_estimate(kind, tally.rejected_t, tally.degenerate_t, config.nreps)
                : make_power_estimate(kind, tally.rejected_w, tally.degenerate_w, config.nreps);
}

PowerEstimate estimate_size(TestKind kind, std::size_t n, const SimConfig& config, std::uint32_t cell) {
    return estimate_power(kind, MixtureParams(0.0, 0.0, 1.0), n, config, cell);
}

PairedPower estimate_paired_power(const MixtureParams& params, std::size_t n, const SimConfig& config,
                                  std::uint32_t cell) {
    config.validate();
    require_n(n);
    const Tally tally = simulate(params, n, config, cell, true, true);
    return {make_power_estimate(TestKind::wilcoxon, tally.rejected_w, tally.degenerate_w, config.nreps),
            make_power_estimate(TestKind::t, tally.rejected_t, tally.degenerate_t, config.nreps)};
}

double PowerRatioRow::ratio_se() const noexcept {
    if (!(power_w > 0.0) || !(power_t > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double rw = se_w / power_w;
    const double rt = se_t / power_t;
    return ratio * std::sqrt(rw * rw + rt * rt);
}

std::vector<PowerRatioRow> power_ratio_surface(double mu, double sigma, const std::vector<double>& theta_axis,
                                               const std::vector<std::size_t>& n_axis, const SimConfig& config) {
    if (theta_axis.empty() || n_axis.empty()) throw DomainError("power_ratio_surface: axes must be nonempty");
    if (theta_axis.size() > std::numeric_limits<std::uint32_t>::max())
        throw DomainError("power_ratio_surface: theta axis too long");
    std::vector<MixtureParams> params;
    params.reserve(theta_axis.size());
    for (double theta : theta_axis) params.emplace_back(theta, mu, sigma);
    for (std::size_t n : n_axis) require_n(n);
    config.validate();

    std::vector<PowerRatioRow> rows;
    rows.reserve(theta_axis.size() * n_axis.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        for (std::size_t n : n_axis) {
            const PairedPower paired = estimate_paired_power(params[i], n, config, static_cast<std::uint32_t>(i));
            PowerRatioRow row;
            row.theta = theta_axis[i];
            row.n = n;
            row.power_w = paired.wilcoxon.power;
            row.power_t = paired.t.power;
            row.se_w = paired.wilcoxon.mc_se;
            row.se_t = paired.t.mc_se;
            row.ratio = row.power_t > 0.0 ? row.power_w / row.power_t : std::numeric_limits<double>::quiet_NaN();
            row.near_null = row.theta == 0.0 || row.power_t < 10.0 * row.se_t;
            row.degenerate = paired.wilcoxon.degenerate + paired.t.degenerate;
            rows.push_back(row);
        }
    }
    return rows;
}

SampleSizeResult min_sample_size(TestKind kind, const MixtureParams& params, double target_power,
                                 const SimConfig& config, std::uint32_t cell, std::size_t max_n) {
    if (!(target_power > 0.0 && target_power < 1.0))
        throw DomainError("min_sample_size: target power must lie in (0, 1)");
    if (!(params.theta() > 0.0)) throw DomainError("min_sample_size: theta must be positive");
    if (max_n < 2) throw DomainError("min_sample_size: max_n must be at least 2");
    config.validate();

    SampleSizeResult result;
    std::map<std::size_t, PowerEstimate> seen;
    const auto lower_bound = [](const PowerEstimate& e) { return e.power - kSampleSizeConfidenceZ * e.mc_se; };
    const auto passes = [&](std::size_t n) {
        auto it = seen.find(n);
        if (it == seen.end()) {
            const PowerEstimate est = estimate_power(kind, params, n, config, cell);
            it = seen.emplace(n, est).first;
            result.search_trace.push_back({n, est});
        }
        return lower_bound(it->second) >= target_power - kSampleSizeSlack;
    };

    std::size_t lo = 2;
    std::size_t hi = 2;
    if (!passes(lo)) {
        for (;;) {
            hi = std::min(lo * 2, max_n);
            if (passes(hi)) break;
            if (hi == max_n)
                throw SearchOverflowError("min_sample_size: power target not reached by n = " + std::to_string(max_n),
                                          result.search_trace);
            lo = hi;
        }
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (passes(mid))
                hi = mid;
            else
                lo = mid;
        }
    }

    const PowerEstimate& at_min = seen.at(hi);
    result.n_min = hi;
    result.achieved_power_ci = {std::max(0.0, lower_bound(at_min)),
                                std::min(1.0, at_min.power + kSampleSizeConfidenceZ * at_min.mc_se)};
    return result;
}

std::vector<EmpiricalAreRow> empirical_are(double mu, double sigma, const std::vector<double>& theta_sequence,
                                           double target_power, const SimConfig& config, std::size_t max_n) {
    if (theta_sequence.empty()) throw DomainError("empirical_are: theta sequence must be nonempty");
    for (std::size_t i = 0; i < theta_sequence.size(); ++i) {
        const double theta = theta_sequence[i];
        if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("empirical_are: theta values must lie in (0, 1]");
        if (i > 0 && !(theta < theta_sequence[i - 1]))
            throw DomainError("empirical_are: theta sequence must be strictly decreasing");
    }
    if (theta_sequence.size() > std::numeric_limits<std::uint32_t>::max())
        throw DomainError("empirical_are: theta sequence too long");

    std::vector<EmpiricalAreRow> rows;
    for (std::size_t i = 0; i < theta_sequence.size(); ++i) {
        const MixtureParams params(theta_sequence[i], mu, sigma);
        const auto cell = static_cast<std::uint32_t>(i);
        EmpiricalAreRow row;
        row.theta = theta_sequence[i];
        try {
            row.search_t = min_sample_size(TestKind::t, params, target_power, config, cell, max_n);
            row.search_w = min_sample_size(TestKind::wilcoxon, params, target_power, config, cell, max_n);
        } catch (const SearchOverflowError& e) {
            throw EmpiricalAreOverflow(e, row.theta, rows);
        }
        row.n_t = row.search_t.n_min;
        row.n_w = row.search_w.n_min;
        row.ratio = static_cast<double>(row.n_t) / static_cast<double>(row.n_w);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace mixeff
