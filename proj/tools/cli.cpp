#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixeff/efficiency.hpp"
#include "mixeff/error.hpp"
#include "mixeff/power_lab.hpp"
#include "mixeff/rank_tests.hpp"

#ifndef MIXEFF_VERSION
#define MIXEFF_VERSION "0.0.0"
#endif

namespace mixeff::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// --- failure categories, mapped to exit codes in run() ---

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ComputeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- formatting ---

std::string g9(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Sidedness parse_sidedness(const std::string& s) {
    if (s == "greater") return Sidedness::greater;
    if (s == "less") return Sidedness::less;
    if (s == "two" || s == "two_sided") return Sidedness::two_sided;
    throw UsageError("--sided must be one of greater, less, two");
}

AreVariant parse_variant(const std::string& s) {
    if (s == "derived") return AreVariant::efficacy_derived();
    if (s == "printed") return AreVariant::as_printed();
    throw UsageError("--variant must be derived or printed");
}

WilcoxonMode parse_mode(const std::string& s) {
    if (s == "exact") return WilcoxonMode::exact;
    if (s == "normal") return WilcoxonMode::normal_approx;
    if (s == "auto") return WilcoxonMode::automatic;
    throw UsageError("--mode must be exact, normal or auto");
}

std::string_view mode_name(WilcoxonMode m) {
    switch (m) {
        case WilcoxonMode::exact: return "exact";
        case WilcoxonMode::normal_approx: return "normal";
        case WilcoxonMode::automatic: return "auto";
    }
    return "?";
}

TestKind parse_test_kind(const std::string& s) {
    if (s == "t") return TestKind::t;
    if (s == "wilcoxon") return TestKind::wilcoxon;
    throw UsageError("--test must be t or wilcoxon");
}

ordered_json to_json(const Efficacy& e) {
    return {{"slope", e.slope}, {"null_sd", e.null_sd}, {"efficacy", e.efficacy}};
}

ordered_json to_json(const TestOutcome& o) {
    return {{"statistic", o.statistic},
            {"n_effective", o.n_effective},
            {"p_value", o.p_value},
            {"sidedness", to_string(o.sidedness)},
            {"method", to_string(o.method)}};
}

ordered_json to_json(const PowerEstimate& e) {
    return {{"power", e.power},     {"mc_se", e.mc_se},           {"nreps", e.nreps},
            {"test_kind", to_string(e.test_kind)}, {"rejections", e.rejections}, {"degenerate", e.degenerate}};
}

ordered_json to_json(const std::vector<PowerProbe>& trace) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : trace) {
        ordered_json item = {{"n", p.n}};
        item.update(to_json(p.estimate));
        arr.push_back(std::move(item));
    }
    return arr;
}

ordered_json to_json(const SampleSizeResult& r) {
    return {{"n_min", r.n_min},
            {"achieved_power_ci", {r.achieved_power_ci.first, r.achieved_power_ci.second}},
            {"search_trace", to_json(r.search_trace)}};
}

ordered_json to_json(const EmpiricalAreRow& row) {
    return {{"theta", row.theta},
            {"n_t", row.n_t},
            {"n_w", row.n_w},
            {"ratio", row.ratio},
            {"search_t", to_json(row.search_t)},
            {"search_w", to_json(row.search_w)}};
}

// --- output with manifest sidecar ---

struct RunContext {
    std::vector<std::string> argv;
    std::ostream& out;
};

std::string manifest_path(const std::string& out_path) { return out_path + ".manifest.json"; }

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot open '" + path + "' for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.close();
    if (!f) throw DataError("failed writing '" + path + "'");
}

// Writes payload to out_path (plus manifest), or to stdout when out_path is empty.
void emit(const RunContext& ctx, const std::string& subcommand, const std::string& out_path, const std::string& payload,
          ordered_json parameters, std::optional<std::uint64_t> seed = std::nullopt,
          std::optional<unsigned> parallelism = std::nullopt) {
    if (out_path.empty()) {
        ctx.out << payload;
        return;
    }
    write_file(out_path, payload);
    ordered_json manifest = {{"subcommand", subcommand},
                             {"parameters", std::move(parameters)},
                             {"master_seed", seed ? json(*seed) : json(nullptr)},
                             {"parallelism", parallelism ? json(*parallelism) : json(nullptr)},
                             {"tool_version", MIXEFF_VERSION},
                             {"output_path", out_path},
                             {"output_checksum", "sha256:" + sha256_hex(payload)},
                             {"argv", ctx.argv}};
    write_file(manifest_path(out_path), manifest.dump(2) + "\n");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// --- shared option groups ---

struct ShapeOptions {
    double mu = 0.0;
    std::optional<double> sigma;
    std::optional<double> sigma2;

    void add(CLI::App* app, bool with_mu = true) {
        if (with_mu) app->add_option("--mu", mu, "Mean of the alternative component")->required();
        auto* s = app->add_option("--sigma", sigma, "Standard deviation of the alternative component");
        auto* v = app->add_option("--sigma2", sigma2, "Variance of the alternative component (alternative to --sigma)");
        s->excludes(v);
    }

    double resolved_sigma() const {
        if (sigma) return *sigma;
        if (sigma2) {
            if (!(*sigma2 > 0.0)) throw UsageError("--sigma2 must be positive");
            return std::sqrt(*sigma2);
        }
        throw UsageError("one of --sigma or --sigma2 is required");
    }
};

struct SimOptions {
    double alpha = 0.05;
    std::string sided;
    std::uint64_t nreps = 10000;
    std::uint64_t seed = 20130101;
    unsigned threads = 1;
    std::string mode = "auto";

    void add(CLI::App* app) {
        app->add_option("--alpha", alpha, "Significance level")->capture_default_str();
        app->add_option("--sided", sided, "greater | less | two (default: from the sign of mu)");
        app->add_option("--nreps", nreps, "Monte Carlo replications")->capture_default_str();
        app->add_option("--seed", seed, "Master seed")->capture_default_str();
        app->add_option("--threads", threads, "Worker threads")->capture_default_str();
        app->add_option("--mode", mode, "Wilcoxon null: exact | normal | auto")->capture_default_str();
    }

    SimConfig config(double mu) const {
        SimConfig c;
        c.alpha = alpha;
        c.sidedness = sided.empty() ? default_sidedness(mu) : parse_sidedness(sided);
        c.nreps = nreps;
        c.master_seed = seed;
        c.max_parallelism = threads;
        c.wilcoxon_mode = parse_mode(mode);
        c.validate();
        return c;
    }
};

ordered_json config_json(const SimConfig& c) {
    return {{"alpha", c.alpha},
            {"sidedness", to_string(c.sidedness)},
            {"nreps", c.nreps},
            {"master_seed", c.master_seed},
            {"max_parallelism", c.max_parallelism},
            {"wilcoxon_mode", mode_name(c.wilcoxon_mode)}};
}

// --- subcommands ---

void cmd_are(const RunContext& ctx, double mu, double sigma, const std::string& variant_name, bool as_json,
             const std::string& out_path) {
    const AreVariant variant = parse_variant(variant_name);
    const double value = are(mu, sigma, variant);
    const Efficacy et = efficacy_t(mu, sigma);
    const Efficacy ew = efficacy_w(mu, sigma);
    ordered_json params = {{"mu", mu}, {"sigma", sigma}, {"variant", variant.name()}};
    std::string payload;
    if (as_json) {
        ordered_json report = params;
        report["are"] = value;
        report["small_shift_limit"] = are_small_shift_limit(sigma, variant);
        report["efficacy_t"] = to_json(et);
        report["efficacy_w"] = to_json(ew);
        payload = report.dump(2) + "\n";
    } else {
        std::ostringstream s;
        s << "are " << g9(value) << "\n"
          << "variant " << variant.name() << " (constant " << g9(variant.constant()) << ")\n"
          << "efficacy_t slope=" << g9(et.slope) << " null_sd=" << g9(et.null_sd) << " efficacy=" << g9(et.efficacy)
          << "\n"
          << "efficacy_w slope=" << g9(ew.slope) << " null_sd=" << g9(ew.null_sd) << " efficacy=" << g9(ew.efficacy)
          << "\n";
        payload = s.str();
    }
    emit(ctx, "are", out_path, payload, params);
}

void cmd_boundary(const RunContext& ctx, double sigma, const std::string& variant_name, const std::string& out_path) {
    const AreVariant variant = parse_variant(variant_name);
    const std::optional<double> mu_star = dominance_boundary(sigma, variant);
    ordered_json params = {{"sigma", sigma}, {"variant", variant.name()}};
    ordered_json report = params;
    report["small_shift_limit"] = are_small_shift_limit(sigma, variant);
    report["mu_star"] = mu_star ? json(*mu_star) : json(nullptr);
    report["coefficient_of_variation"] = mu_star ? json(sigma / *mu_star) : json(nullptr);
    emit(ctx, "boundary", out_path, report.dump(2) + "\n", params);
}

void cmd_grid(const RunContext& ctx, const std::vector<double>& mu_range, const std::vector<double>& sigma_range,
              std::size_t steps, std::size_t steps_mu, std::size_t steps_sigma, const std::string& variant_name,
              const std::string& out_path) {
    if (mu_range.size() != 2 || sigma_range.size() != 2) throw UsageError("ranges take exactly two values: lo,hi");
    const AreVariant variant = parse_variant(variant_name);
    const std::size_t sm = steps_mu ? steps_mu : steps;
    const std::size_t ss = steps_sigma ? steps_sigma : steps;
    const EfficiencyGrid grid =
        dominance_grid({mu_range[0], mu_range[1]}, {sigma_range[0], sigma_range[1]}, sm, ss, variant);

    std::string payload = "mu,sigma,are\n";
    for (std::size_t i = 0; i < grid.mu_axis.size(); ++i)
        for (std::size_t j = 0; j < grid.sigma_axis.size(); ++j)
            payload += g9(grid.mu_axis[i]) + "," + g9(grid.sigma_axis[j]) + "," + g9(grid.at(i, j)) + "\n";

    emit(ctx, "grid", out_path, payload,
         {{"mu_range", mu_range}, {"sigma_range", sigma_range}, {"steps_mu", sm}, {"steps_sigma", ss},
          {"variant", variant.name()}});
}

void cmd_curve(const RunContext& ctx, const ShapeOptions& shape, const std::vector<double>& thetas,
               const std::vector<std::size_t>& ns, const SimOptions& sim, const std::string& out_path) {
    if (thetas.empty() || ns.empty()) throw UsageError("--theta and --n lists are required");
    const double sigma = shape.resolved_sigma();
    const SimConfig config = sim.config(shape.mu);
    const auto rows = power_ratio_surface(shape.mu, sigma, thetas, ns, config);

    std::string payload = "theta,n,power_w,se_w,power_t,se_t,ratio,flag\n";
    std::uint64_t degenerate = 0;
    for (const auto& r : rows) {
        payload += g9(r.theta) + "," + std::to_string(r.n) + "," + g9(r.power_w) + "," + g9(r.se_w) + "," +
                   g9(r.power_t) + "," + g9(r.se_t) + "," + g9(r.ratio) + "," + (r.near_null ? "near_null" : "ok") +
                   "\n";
        degenerate += r.degenerate;
    }
    emit(ctx, "curve", out_path, payload,
         {{"mu", shape.mu}, {"sigma", sigma}, {"theta", thetas}, {"n", ns}, {"config", config_json(config)}},
         config.master_seed, config.max_parallelism);
    if (degenerate > 0)
        throw ComputeError(std::to_string(degenerate) + " degenerate replications (zero variance or all zeros)");
}

void cmd_nmin(const RunContext& ctx, const ShapeOptions& shape, double theta, const std::string& test,
              double target_power, std::size_t max_n, const SimOptions& sim, const std::string& out_path) {
    const double sigma = shape.resolved_sigma();
    const SimConfig config = sim.config(shape.mu);
    const TestKind kind = parse_test_kind(test);
    const MixtureParams params(theta, shape.mu, sigma);
    ordered_json inputs = {{"test_kind", to_string(kind)}, {"theta", theta},          {"mu", shape.mu},
                           {"sigma", sigma},              {"target_power", target_power}, {"max_n", max_n},
                           {"config", config_json(config)}};
    ordered_json report = inputs;
    std::optional<std::string> failure;
    try {
        const SampleSizeResult r = min_sample_size(kind, params, target_power, config, 0, max_n);
        report["result"] = to_json(r);
        std::uint64_t degenerate = 0;
        for (const auto& p : r.search_trace) degenerate += p.estimate.degenerate;
        if (degenerate > 0) failure = std::to_string(degenerate) + " degenerate replications";
    } catch (const SearchOverflowError& e) {
        report["result"] = nullptr;
        report["search_trace"] = to_json(e.trace());
        failure = e.what();
    }
    report["complete"] = !failure;
    if (failure) report["error"] = *failure;
    emit(ctx, "nmin", out_path, report.dump(2) + "\n", inputs, config.master_seed, config.max_parallelism);
    if (failure) throw ComputeError(*failure);
}

void cmd_emp_are(const RunContext& ctx, const ShapeOptions& shape, const std::vector<double>& thetas,
                 double target_power, std::size_t max_n, const SimOptions& sim, const std::string& out_path) {
    const double sigma = shape.resolved_sigma();
    const SimConfig config = sim.config(shape.mu);
    ordered_json inputs = {{"mu", shape.mu}, {"sigma", sigma}, {"theta", thetas}, {"target_power", target_power},
                           {"max_n", max_n}, {"config", config_json(config)}};
    ordered_json report = inputs;
    report["are_efficacy_derived"] = are(shape.mu, sigma, AreVariant::efficacy_derived());
    report["are_as_printed"] = are(shape.mu, sigma, AreVariant::as_printed());
    std::optional<std::string> failure;
    ordered_json rows = ordered_json::array();
    try {
        for (const auto& row : empirical_are(shape.mu, sigma, thetas, target_power, config, max_n))
            rows.push_back(to_json(row));
    } catch (const EmpiricalAreOverflow& e) {
        for (const auto& row : e.partial()) rows.push_back(to_json(row));
        report["failed_theta"] = e.failed_theta();
        report["failed_search_trace"] = to_json(e.trace());
        failure = e.what();
    }
    report["rows"] = std::move(rows);
    report["complete"] = !failure;
    if (failure) report["error"] = *failure;
    emit(ctx, "emp-are", out_path, report.dump(2) + "\n", inputs, config.master_seed, config.max_parallelism);
    if (failure) throw ComputeError(*failure);
}

void cmd_test(const RunContext& ctx, const std::string& data_path, const std::string& which, const std::string& sided,
              const std::string& mode_name_str, const std::string& out_path) {
    if (which != "t" && which != "wilcoxon" && which != "both") throw UsageError("--test must be t, wilcoxon or both");
    const Sidedness sidedness = sided.empty() ? Sidedness::two_sided : parse_sidedness(sided);
    const WilcoxonMode mode = parse_mode(mode_name_str);

    std::vector<double> values;
    try {
        values = parse_data(read_file(data_path));
    } catch (const DataError&) {
        throw;
    } catch (const std::runtime_error& e) {
        throw DataError(data_path + ": " + e.what());
    }
    const Sample sample(std::move(values));

    ordered_json report = {{"data", data_path}, {"n", sample.size()}};
    try {
        if (which == "t" || which == "both") report["t"] = to_json(t_test(sample, sidedness));
        if (which == "wilcoxon" || which == "both") report["wilcoxon"] = to_json(wilcoxon_test(sample, sidedness, mode));
    } catch (const mixeff::Error& e) {
        throw DataError(e.what());
    }
    emit(ctx, "test", out_path, report.dump(2) + "\n",
         {{"data", data_path}, {"test", which}, {"sidedness", to_string(sidedness)}, {"mode", mode_name(mode)}});
}

void cmd_null_dist(const RunContext& ctx, int n, const std::string& out_path) {
    const NullPmf pmf = exact_null_pmf(n);
    std::string payload = "k,count,probability\n";
    for (int k = 0; k <= pmf.max_statistic(); ++k)
        payload += std::to_string(k) + "," + std::to_string(pmf.count(k)) + "," + g17(pmf.probability(k)) + "\n";
    emit(ctx, "null-dist", out_path, payload, {{"n", n}});
}

int cmd_replay(const std::string& manifest_file, const std::string& out_override, std::ostream& out,
               std::ostream& err) {
    ordered_json manifest;
    try {
        manifest = ordered_json::parse(read_file(manifest_file));
    } catch (const ordered_json::exception& e) {
        throw DataError(manifest_file + ": " + e.what());
    }
    if (!manifest.contains("argv") || !manifest.contains("output_checksum") || !manifest.contains("output_path"))
        throw DataError(manifest_file + ": not a run manifest");
    auto argv = manifest["argv"].get<std::vector<std::string>>();
    const std::string original = manifest["output_path"].get<std::string>();
    const std::string target = out_override.empty() ? original + ".replay" : out_override;
    bool replaced = false;
    for (std::size_t i = 0; i + 1 < argv.size(); ++i)
        if (argv[i] == "--out") {
            argv[i + 1] = target;
            replaced = true;
        }
    if (!replaced) throw DataError(manifest_file + ": manifest argv has no --out");

    std::ostringstream sink;
    const int code = run(argv, sink, err);
    if (code != kOk && code != kCompute) return code;
    const std::string actual = "sha256:" + sha256_hex(read_file(target));
    const std::string expected = manifest["output_checksum"].get<std::string>();
    out << (actual == expected ? "match " : "MISMATCH ") << actual << " " << target << "\n";
    return actual == expected ? code : kCompute;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> md(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!md || EVP_DigestInit_ex(md.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(md.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(md.get(), digest, &length) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
    return hex.str();
}

std::vector<double> parse_data(const std::string& text) {
    std::vector<double> values;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string_view token(line.data() + first, last - first + 1);
        if (token.front() == '#') continue;
        double v = 0.0;
        const char* begin = token.data();
        const char* end = begin + token.size();
        if (*begin == '+') ++begin;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end || !std::isfinite(v))
            throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse '" + std::string(token) +
                                     "' as a finite decimal number");
        values.push_back(v);
    }
    if (values.empty()) throw std::runtime_error("no observations found");
    return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Signed-rank versus t-test efficiency under Gaussian mixture alternatives", "mixeff"};
    app.set_version_flag("--version", std::string(MIXEFF_VERSION));
    app.require_subcommand(1);

    std::string out_path;
    std::string variant = "derived";

    // are
    auto* are_cmd = app.add_subcommand("are", "Closed-form asymptotic relative efficiency (signed-rank vs t)");
    ShapeOptions are_shape;
    are_shape.add(are_cmd);
    bool are_json = false;
    are_cmd->add_option("--variant", variant, "derived | printed")->capture_default_str();
    are_cmd->add_flag("--json", are_json, "Emit JSON");
    are_cmd->add_option("--out", out_path, "Output file");

    // boundary
    auto* boundary_cmd = app.add_subcommand("boundary", "mu at which the efficiency crosses 1 for a given sigma");
    ShapeOptions boundary_shape;
    boundary_shape.add(boundary_cmd, false);
    boundary_cmd->add_option("--variant", variant, "derived | printed")->capture_default_str();
    boundary_cmd->add_option("--out", out_path, "Output file");

    // grid
    auto* grid_cmd = app.add_subcommand("grid", "Efficiency over a (mu, sigma) lattice as CSV");
    std::vector<double> mu_range{0.05, 3.0};
    std::vector<double> sigma_range{0.05, 3.0};
    std::size_t steps = 60, steps_mu = 0, steps_sigma = 0;
    grid_cmd->add_option("--mu-range", mu_range, "lo,hi")->delimiter(',')->expected(2)->capture_default_str();
    grid_cmd->add_option("--sigma-range", sigma_range, "lo,hi")->delimiter(',')->expected(2)->capture_default_str();
    grid_cmd->add_option("--steps", steps, "Points per axis")->capture_default_str();
    grid_cmd->add_option("--steps-mu", steps_mu, "Points on the mu axis (overrides --steps)");
    grid_cmd->add_option("--steps-sigma", steps_sigma, "Points on the sigma axis (overrides --steps)");
    grid_cmd->add_option("--variant", variant, "derived | printed")->capture_default_str();
    grid_cmd->add_option("--out", out_path, "Output CSV");

    // curve / power
    auto* curve_cmd = app.add_subcommand("curve", "Monte Carlo power ratio surface over (theta, n) as CSV");
    curve_cmd->alias("power");
    ShapeOptions curve_shape;
    curve_shape.add(curve_cmd);
    std::vector<double> thetas;
    std::vector<std::size_t> ns;
    SimOptions curve_sim;
    curve_cmd->add_option("--theta", thetas, "Mixing proportions, comma separated")->delimiter(',')->required();
    curve_cmd->add_option("--n", ns, "Sample sizes, comma separated")->delimiter(',')->required();
    curve_sim.add(curve_cmd);
    curve_cmd->add_option("--out", out_path, "Output CSV");

    // nmin
    auto* nmin_cmd = app.add_subcommand("nmin", "Minimal sample size for a target power");
    ShapeOptions nmin_shape;
    nmin_shape.add(nmin_cmd);
    double nmin_theta = 0.0, target_power = 0.8;
    std::string test_kind = "t";
    std::size_t max_n = kDefaultMaxSampleSize;
    SimOptions nmin_sim;
    nmin_cmd->add_option("--theta", nmin_theta, "Mixing proportion")->required();
    nmin_cmd->add_option("--test", test_kind, "t | wilcoxon")->capture_default_str();
    nmin_cmd->add_option("--power", target_power, "Target power")->capture_default_str();
    nmin_cmd->add_option("--max-n", max_n, "Largest sample size probed")->capture_default_str();
    nmin_sim.add(nmin_cmd);
    nmin_cmd->add_option("--out", out_path, "Output JSON");

    // emp-are
    auto* emp_cmd = app.add_subcommand("emp-are", "Empirical efficiency: ratio of minimal sample sizes as theta decreases");
    emp_cmd->alias("emp_are");
    ShapeOptions emp_shape;
    emp_shape.add(emp_cmd);
    std::vector<double> emp_thetas;
    SimOptions emp_sim;
    emp_cmd->add_option("--theta", emp_thetas, "Strictly decreasing mixing proportions")->delimiter(',')->required();
    emp_cmd->add_option("--power", target_power, "Target power")->capture_default_str();
    emp_cmd->add_option("--max-n", max_n, "Largest sample size probed")->capture_default_str();
    emp_sim.add(emp_cmd);
    emp_cmd->add_option("--out", out_path, "Output JSON");

    // test
    auto* test_cmd = app.add_subcommand("test", "Run the t and/or signed-rank test on a data file");
    std::string data_path, which = "both", test_sided, test_mode = "auto";
    test_cmd->add_option("--data", data_path, "Newline-delimited decimal values")->required();
    test_cmd->add_option("--test", which, "t | wilcoxon | both")->capture_default_str();
    test_cmd->add_option("--sided", test_sided, "greater | less | two (default two)");
    test_cmd->add_option("--mode", test_mode, "Wilcoxon null: exact | normal | auto")->capture_default_str();
    test_cmd->add_option("--out", out_path, "Output JSON");

    // null-dist
    auto* null_cmd = app.add_subcommand("null-dist", "Exact null distribution of the signed-rank statistic as CSV");
    null_cmd->alias("null_dist");
    int null_n = 0;
    null_cmd->add_option("--n", null_n, "Number of nonzero observations (1..60)")->required();
    null_cmd->add_option("--out", out_path, "Output CSV");

    // replay
    auto* replay_cmd = app.add_subcommand("replay", "Re-run a manifest and verify its output checksum");
    std::string manifest_file, replay_out;
    replay_cmd->add_option("--manifest", manifest_file, "Manifest JSON")->required();
    replay_cmd->add_option("--out", replay_out, "Where to write the regenerated output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    const RunContext ctx{args, out};
    try {
        if (are_cmd->parsed()) {
            cmd_are(ctx, are_shape.mu, are_shape.resolved_sigma(), variant, are_json, out_path);
        } else if (boundary_cmd->parsed()) {
            cmd_boundary(ctx, boundary_shape.resolved_sigma(), variant, out_path);
        } else if (grid_cmd->parsed()) {
            cmd_grid(ctx, mu_range, sigma_range, steps, steps_mu, steps_sigma, variant, out_path);
        } else if (curve_cmd->parsed()) {
            cmd_curve(ctx, curve_shape, thetas, ns, curve_sim, out_path);
        } else if (nmin_cmd->parsed()) {
            cmd_nmin(ctx, nmin_shape, nmin_theta, test_kind, target_power, max_n, nmin_sim, out_path);
        } else if (emp_cmd->parsed()) {
            cmd_emp_are(ctx, emp_shape, emp_thetas, target_power, max_n, emp_sim, out_path);
        } else if (test_cmd->parsed()) {
            cmd_test(ctx, data_path, which, test_sided, test_mode, out_path);
        } else if (null_cmd->parsed()) {
            cmd_null_dist(ctx, null_n, out_path);
        } else if (replay_cmd->parsed()) {
            return cmd_replay(manifest_file, replay_out, out, err);
        }
    } catch (const UsageError& e) {
        err << "mixeff: " << e.what() << "\n";
        return kUsage;
    } catch (const DataError& e) {
        err << "mixeff: " << e.what() << "\n";
        return kData;
    } catch (const ComputeError& e) {
        err << "mixeff: " << e.what() << "\n";
        return kCompute;
    } catch (const SearchOverflowError& e) {
        err << "mixeff: " << e.what() << "\n";
        return kCompute;
    } catch (const mixeff::DomainError& e) {
        err << "mixeff: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "mixeff: " << e.what() << "\n";
        return kCompute;
    }
    return kOk;
}

}  // namespace mixeff::cli
