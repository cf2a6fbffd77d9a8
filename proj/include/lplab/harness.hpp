#pragma once

#include "lplab/family.hpp"
#include "lplab/grid.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lplab {

enum class SuiteId {
    Thm11,
    Cor12,
    Lem31,
    Lem32,
    Lem41,
    Thm13,
    Cor14,
    Bernstein,
    Eq971,
    KernelHypothesis,
};

/// How a suite's records are reduced to a verdict.
enum class Statistic {
    /// Max over the family at each sweep point x, then max/median across x per series.
    Envelope,
    /// Max/median across family members per series; zero ratios are excluded.
    Family,
    /// Every record states an expected and an observed pass flag; they must agree.
    Hypothesis,
};

struct SuiteInfo {
    SuiteId id;
    const char* name;
    const char* statement;  // the inequality being measured, in one line
    Statistic statistic;
    bool slope_law;         // a 2^{-sk} law is asserted: |slope| of the envelope is checked
    int min_dimension;
};

const std::vector<SuiteInfo>& suite_catalog();
const SuiteInfo& suite_info(SuiteId id);
const char* to_string(SuiteId id) noexcept;
/// Throws std::invalid_argument listing the valid ids.
SuiteId parse_suite(const std::string& name);

struct Exponents {
    double p = 2.0;
    double q = 2.0;
    double r = 1.0;
};

/// Parameter grids. Each suite reads the fields it needs and ignores the rest.
struct SweepParams {
    std::vector<int> k;
    std::vector<double> s;
    std::vector<double> a;
    std::vector<double> gamma;
    std::vector<double> d;
    std::vector<double> R;
    std::vector<double> eps;
    std::vector<double> K;  // Bernstein cut-offs, powers of two
    std::vector<Exponents> pqr;
    std::vector<std::array<double, 2>> pq;
    std::vector<std::string> kernels;
    /// Sweep over the dilation orbit f(2^{x - anchor} .) instead of fixed members.
    bool orbit = false;
    int orbit_anchor = 0;
    bool mean_free = false;
    /// Repeat the sweep on the grid with 2N samples (refinement stability).
    bool refine = false;
    std::size_t pairs = 100000;
};

struct Tolerances {
    double max_over_median = 3.0;
    double slope = 0.15;
    double skip_fraction = 0.2;
    double refinement = 0.1;
    /// Energy fraction a product may leave beyond the grid (see AliasingGuard).
    double aliasing = 1e-10;
};

struct GridConfig {
    int n = 1;
    int N = 1024;
    double L = 16.0;

    GridSpec spec() const { return GridSpec(n, N, L); }
};

struct SweepConfig {
    SuiteId suite = SuiteId::Cor12;
    GridConfig grid;
    SweepParams params;
    std::vector<MemberSpec> family;
    Tolerances tolerances;
    std::uint64_t seed = 0;
};

/// A config that is well formed but violates a suite's validity window.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string pointer, const std::string& message)
        : std::runtime_error(pointer + ": " + message), pointer_(std::move(pointer)) {}
    /// JSON pointer of the offending field, e.g. "/params/s/2".
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

/// Default sweep for a suite; `dimension` selects the n = 1 or n = 2 variant where both exist.
SweepConfig default_config(SuiteId suite, int dimension = 0);
/// Throws ConfigError.
void validate(const SweepConfig& config);

struct Record {
    std::string kind = "ratio";  // "ratio" or "hypothesis"
    std::string series;
    std::string member;
    double x = 0.0;
    bool refined = false;
    std::map<std::string, double> params;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double tail = 0.0;
    bool skipped = false;
    std::string reason;
};

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;  // value <= threshold
};

struct CurvePoint {
    std::string series;
    double x = 0.0;
    double y = 0.0;
};

struct Aggregates {
    std::size_t records = 0;
    std::size_t skipped = 0;
    double max = 0.0;
    double median = 0.0;
    double max_over_median = 0.0;
    /// Steepest envelope slope (log2 C against x) over all series, when one applies.
    std::optional<double> slope;
    std::optional<double> slope_stderr;
    std::string slope_series;
};

enum class Verdict { Pass, Fail, Inconclusive };
const char* to_string(Verdict v) noexcept;
Verdict parse_verdict(const std::string& name);

struct VerificationReport {
    SweepConfig config;
    std::vector<Record> records;
    std::vector<CurvePoint> curves;
    Aggregates aggregates;
    std::vector<Check> checks;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> notes;
    // metadata: excluded from reproducibility comparisons
    std::string timestamp;
    double runtime_seconds = 0.0;
};

struct Regression {
    double slope;
    double intercept;
    double stderr_slope;
};

/// Least squares of log2(value) on x. Needs >= 3 points and positive values
/// (std::invalid_argument otherwise).
Regression slope_regression(const std::vector<std::pair<double, double>>& series);

/// Worker count: LPLAB_THREADS when set to a positive integer, else the hardware concurrency.
unsigned worker_threads();
/// Runs body(i) for i in [0, count) on worker_threads() threads; rethrows the first exception.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Fills aggregates, curves, checks and verdict from config + records alone.
void evaluate(VerificationReport& report);

/// Test kernels by name: "lp" (lp_kernel(0)), "gaussian" exp(-pi|x|^2), "ball" (normalized
/// indicator of the unit ball) and "power" (1 + |x|)^{-(n + 1/2)}, a control that decays too
/// slowly once s + eps >= 1/2.
SampledField build_kernel(const std::string& name, const GridSpec& spec);
/// Whether the annulus-mass hypothesis should hold for the named kernel.
bool kernel_expected_to_pass(const std::string& name, double s, double eps);

using ProgressFn = std::function<void(const std::string&)>;

/// Validates, runs the sweep and evaluates it.
VerificationReport run_suite(const SweepConfig& config, const ProgressFn& progress = {});

}  // namespace lplab
