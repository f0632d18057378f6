#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nds/rng.hpp"

namespace nds {

// One evaluated model reduced to what the statistics need.
struct PoolEntry {
    double error = 0.0;       // test error, percent
    double complexity = 0.0;  // flops or params, chosen by the caller
};

// Entries with normalization weights. Weights are nonnegative and sum to 1
// over the whole pool; entries excluded by a complexity range carry weight 0.
class WeightedPool {
public:
    struct Entry {
        double error = 0.0;
        double complexity = 0.0;
        double weight = 0.0;
    };

    // Equal weights 1/n.
    static WeightedPool uniform(std::span<const PoolEntry> entries);

    // Explicit weights; validates and rescales so the total is exactly 1.
    static WeightedPool with_weights(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    // Kish effective sample size 1 / sum(w^2); equals size() under uniform
    // weights and shrinks as the weights grow uneven.
    double effective_size() const;

private:
    explicit WeightedPool(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    std::vector<Entry> entries_;
};

enum class BinSpacing { Log, Linear };

// Left-continuous step function F(x) = sum of weights of values < x.
class EdfCurve {
public:
    struct Point {
        double threshold = 0.0;
        double cumulative = 0.0;  // total mass at values <= threshold
    };

    static EdfCurve from_values(std::span<const double> values);  // unit weights
    static EdfCurve from_weighted(std::span<const double> values, std::span<const double> weights);

    // Mass strictly below x.
    double value_at(double x) const;

    const std::vector<Point>& points() const { return points_; }

private:
    std::vector<Point> points_;
};

// Error EDF of a pool: uniform weights give the plain fraction-below-e
// curve, normalized weights give the complexity-conditioned one.
EdfCurve edf(const WeightedPool& pool);

// Same step construction over complexities instead of errors.
EdfCurve complexity_edf(const WeightedPool& pool);

// Maximum vertical discrepancy sup |F1 - F2|, evaluated just below and at
// every breakpoint of both curves.
double ks_statistic(const EdfCurve& f1, const EdfCurve& f2);

// Two-sample asymptotic significance of a KS statistic: with effective size
// n_e = n1*n2/(n1+n2) and lambda = (sqrt(n_e) + 0.12 + 0.11/sqrt(n_e)) * d,
// p = 2 * sum_{j>=1} (-1)^(j-1) exp(-2 j^2 lambda^2), the series truncated
// once terms drop below 1e-12 and the result clamped to [0, 1]. Sizes may be
// non-integer so weighted pools can pass their effective sizes.
double ks_pvalue(double d, double n1, double n2);

// Weights that flatten the complexity distribution: the range [lo, hi) is
// cut into `bins` bins (log-spaced by default) and each of the m_j entries
// of bin j gets weight 1/(k'*m_j), where k' counts nonempty bins. Entries
// outside the range stay in the pool with weight 0.
WeightedPool normalize_weights(std::span<const PoolEntry> entries, double lo, double hi, int bins,
                               BinSpacing spacing = BinSpacing::Log);

// Average area under the error EDF up to eps: 1 - sum_i w_i * min(1, e_i/eps).
double edf_area(const WeightedPool& pool, double eps);

struct RandomSearchResult {
    std::size_t num_samples = 0;  // models per simulated experiment
    std::size_t trials = 0;
    double mean_min_error = 0.0;
    double p25 = 0.0;  // interquartile band of the per-trial minima
    double p75 = 0.0;
    double stddev = 0.0;
};

// Simulates random-search experiments of size m: each trial draws m entries
// by pool weight (with replacement) and keeps their minimum error. Trials
// default to max(ceil(n/m), 32). Trial t draws from a generator derived from
// (rng, t), so results do not depend on execution order.
RandomSearchResult random_search_sim(const WeightedPool& pool, std::size_t m,
                                     std::optional<std::size_t> trials, Rng& rng);

struct BucketStat {
    int bin = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
    double mean_error = 0.0;  // NaN when count == 0
    double stddev = 0.0;      // population deviation; NaN when count == 0
};

// Stratified per-bin statistics: unweighted mean and standard deviation of
// error within each complexity bin. Empty bins are reported with count 0.
std::vector<BucketStat> bucket_stats(std::span<const PoolEntry> entries, double lo, double hi,
                                     int bins, BinSpacing spacing = BinSpacing::Log);

struct SubsampleKs {
    std::size_t n = 0;
    double mean_d = 0.0;
    double stderr_d = 0.0;
};

// Mean KS distance between the full pool and random subsamples (without
// replacement) of each requested size. Weights are ignored: this measures
// raw sampling convergence. Default 20 repeats per size.
std::vector<SubsampleKs> subsample_ks(const WeightedPool& pool, std::span<const std::size_t> sizes,
                                      Rng& rng, int repeats = 20);

}  // namespace nds
