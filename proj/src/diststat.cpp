#include "nds/diststat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nds/errors.hpp"

namespace nds {

namespace {

void check_entry(double error, double complexity) {
    if (!(error >= 0.0 && error <= 100.0))
        throw InvalidConfigError("pool entry: error must lie in [0, 100]");
    if (!(complexity >= 0.0)) throw InvalidConfigError("pool entry: complexity must be nonnegative");
}

constexpr double kWeightSumTolerance = 1e-9;

}  // namespace

WeightedPool WeightedPool::uniform(std::span<const PoolEntry> entries) {
    if (entries.empty()) throw EmptyPoolError("uniform pool: no entries");
    std::vector<Entry> weighted;
    weighted.reserve(entries.size());
    const double w = 1.0 / static_cast<double>(entries.size());
    for (const auto& e : entries) {
        check_entry(e.error, e.complexity);
        weighted.push_back({e.error, e.complexity, w});
    }
    return WeightedPool(std::move(weighted));
}

WeightedPool WeightedPool::with_weights(std::vector<Entry> entries) {
    if (entries.empty()) throw EmptyPoolError("weighted pool: no entries");
    double total = 0.0;
    for (const auto& e : entries) {
        check_entry(e.error, e.complexity);
        if (!(e.weight >= 0.0)) throw InvalidConfigError("pool entry: weight must be nonnegative");
        total += e.weight;
    }
    if (std::abs(total - 1.0) > kWeightSumTolerance)
        throw InvalidConfigError("pool weights must sum to 1");
    for (auto& e : entries) e.weight /= total;
    return WeightedPool(std::move(entries));
}

double WeightedPool::effective_size() const {
    double sq = 0.0;
    for (const auto& e : entries_) sq += e.weight * e.weight;
    return sq > 0.0 ? 1.0 / sq : 0.0;
}

EdfCurve EdfCurve::from_values(std::span<const double> values) {
    std::vector<double> weights(values.size(), 1.0 / static_cast<double>(values.size()));
    return from_weighted(values, weights);
}

EdfCurve EdfCurve::from_weighted(std::span<const double> values, std::span<const double> weights) {
    if (values.empty() || values.size() != weights.size())
        throw EmptyPoolError("edf: need matching nonempty values and weights");
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(values.size());
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (weights[i] < 0.0) throw InvalidConfigError("edf: negative weight");
        total += weights[i];
        if (weights[i] > 0.0) pairs.emplace_back(values[i], weights[i]);
    }
    if (pairs.empty() || total <= 0.0) throw EmptyPoolError("edf: no positive-weight values");
    std::sort(pairs.begin(), pairs.end());

    EdfCurve curve;
    double cum = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        cum += pairs[i].second;
        if (i + 1 == pairs.size() || pairs[i + 1].first != pairs[i].first)
            curve.points_.push_back({pairs[i].first, cum / total});
    }
    curve.points_.back().cumulative = 1.0;  // pin the terminal value against roundoff
    return curve;
}

double EdfCurve::value_at(double x) const {
    // Largest breakpoint strictly below x carries the mass of everything < x.
    auto it = std::lower_bound(points_.begin(), points_.end(), x,
                               [](const Point& p, double v) { return p.threshold < v; });
    if (it == points_.begin()) return 0.0;
    return std::prev(it)->cumulative;
}

EdfCurve edf(const WeightedPool& pool) {
    std::vector<double> values, weights;
    values.reserve(pool.size());
    weights.reserve(pool.size());
    for (const auto& e : pool.entries()) {
        values.push_back(e.error);
        weights.push_back(e.weight);
    }
    return EdfCurve::from_weighted(values, weights);
}

EdfCurve complexity_edf(const WeightedPool& pool) {
    std::vector<double> values, weights;
    values.reserve(pool.size());
    weights.reserve(pool.size());
    for (const auto& e : pool.entries()) {
        values.push_back(e.complexity);
        weights.push_back(e.weight);
    }
    return EdfCurve::from_weighted(values, weights);
}

double ks_statistic(const EdfCurve& f1, const EdfCurve& f2) {
    const auto& a = f1.points();
    const auto& b = f2.points();
    std::size_t i = 0, j = 0;
    double c1 = 0.0, c2 = 0.0;  // mass through the breakpoints consumed so far
    double d = 0.0;
    while (i < a.size() || j < b.size()) {
        const double va = i < a.size() ? a[i].threshold : std::numeric_limits<double>::infinity();
        const double vb = j < b.size() ? b[j].threshold : std::numeric_limits<double>::infinity();
        const double v = std::min(va, vb);
        d = std::max(d, std::abs(c1 - c2));  // value just below / at v (left limit)
        if (va == v) c1 = a[i++].cumulative;
        if (vb == v) c2 = b[j++].cumulative;
        d = std::max(d, std::abs(c1 - c2));  // value just above v
    }
    return std::min(d, 1.0);
}

double ks_pvalue(double d, double n1, double n2) {
    if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("ks_pvalue: d must lie in [0, 1]");
    if (!(n1 > 0.0 && n2 > 0.0)) throw std::invalid_argument("ks_pvalue: sizes must be positive");
    const double ne = n1 * n2 / (n1 + n2);
    const double sqrt_ne = std::sqrt(ne);
    const double lambda = (sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d;
    if (lambda < 1e-9) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100000; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

// Bin index in [0, bins) for an in-range value, or -1 outside [lo, hi).
int bin_index(double value, double lo, double hi, int bins, BinSpacing spacing) {
    if (!(value >= lo && value < hi)) return -1;
    double frac = 0.0;
    if (spacing == BinSpacing::Log) {
        frac = (std::log(value) - std::log(lo)) / (std::log(hi) - std::log(lo));
    } else {
        frac = (value - lo) / (hi - lo);
    }
    const int idx = static_cast<int>(frac * bins);
    return std::clamp(idx, 0, bins - 1);
}

void check_range(double lo, double hi, int bins, BinSpacing spacing) {
    if (bins < 1) throw std::invalid_argument("bin count must be positive");
    if (!(lo < hi)) throw std::invalid_argument("range requires lo < hi");
    if (spacing == BinSpacing::Log && !(lo > 0.0))
        throw std::invalid_argument("log-spaced bins require lo > 0");
}

}  // namespace

WeightedPool normalize_weights(std::span<const PoolEntry> entries, double lo, double hi, int bins,
                               BinSpacing spacing) {
    check_range(lo, hi, bins, spacing);
    if (entries.empty()) throw EmptyPoolError("normalize_weights: no entries");

    std::vector<int> bin_of(entries.size());
    std::vector<std::size_t> occupancy(static_cast<std::size_t>(bins), 0);
    std::size_t in_range = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        bin_of[i] = bin_index(entries[i].complexity, lo, hi, bins, spacing);
        if (bin_of[i] >= 0) {
            ++occupancy[static_cast<std::size_t>(bin_of[i])];
            ++in_range;
        }
    }
    if (in_range == 0) throw EmptyRangeError("normalize_weights: no record falls in [lo, hi)");

    // Empty bins hold no mass to hand out, so renormalize over nonempty ones.
    const auto nonempty =
        static_cast<std::size_t>(std::count_if(occupancy.begin(), occupancy.end(),
                                               [](std::size_t m) { return m > 0; }));
    std::vector<WeightedPool::Entry> weighted;
    weighted.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        double w = 0.0;
        if (bin_of[i] >= 0)
            w = 1.0 / (static_cast<double>(nonempty) *
                       static_cast<double>(occupancy[static_cast<std::size_t>(bin_of[i])]));
        weighted.push_back({entries[i].error, entries[i].complexity, w});
    }
    return WeightedPool::with_weights(std::move(weighted));
}

double edf_area(const WeightedPool& pool, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("edf_area: eps must be positive");
    double acc = 0.0;
    for (const auto& e : pool.entries()) acc += e.weight * std::min(1.0, e.error / eps);
    return 1.0 - acc;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto i = static_cast<std::size_t>(h);
    if (i + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(i);
    return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
}

}  // namespace

RandomSearchResult random_search_sim(const WeightedPool& pool, std::size_t m,
                                     std::optional<std::size_t> trials, Rng& rng) {
    if (m < 1) throw std::invalid_argument("random_search_sim: m must be positive");
    const auto& entries = pool.entries();

    std::vector<double> cumulative;
    std::vector<double> errors;
    cumulative.reserve(entries.size());
    errors.reserve(entries.size());
    double total = 0.0;
    for (const auto& e : entries) {
        if (e.weight <= 0.0) continue;
        total += e.weight;
        cumulative.push_back(total);
        errors.push_back(e.error);
    }
    if (errors.empty()) throw EmptyPoolError("random_search_sim: no positive-weight entries");
    cumulative.back() = total;  // guard the final edge against roundoff

    const std::size_t num_trials =
        trials.value_or(std::max<std::size_t>((pool.size() + m - 1) / m, 32));
    const std::uint64_t base = rng.next();

    std::vector<double> minima(num_trials);
    for (std::size_t t = 0; t < num_trials; ++t) {
        Rng trial_rng(mix64(base, t));
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < m; ++s) {
            const double u = trial_rng.uniform01() * total;
            const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            const auto idx = std::min<std::size_t>(
                static_cast<std::size_t>(it - cumulative.begin()), errors.size() - 1);
            best = std::min(best, errors[idx]);
        }
        minima[t] = best;
    }

    std::sort(minima.begin(), minima.end());
    const double mean = std::accumulate(minima.begin(), minima.end(), 0.0) /
                        static_cast<double>(num_trials);
    double var = 0.0;
    for (double v : minima) var += (v - mean) * (v - mean);
    var /= static_cast<double>(num_trials);

    RandomSearchResult result;
    result.num_samples = m;
    result.trials = num_trials;
    result.mean_min_error = mean;
    result.p25 = quantile_sorted(minima, 0.25);
    result.p75 = quantile_sorted(minima, 0.75);
    result.stddev = std::sqrt(var);
    return result;
}

std::vector<BucketStat> bucket_stats(std::span<const PoolEntry> entries, double lo, double hi,
                                     int bins, BinSpacing spacing) {
    check_range(lo, hi, bins, spacing);
    if (entries.empty()) throw EmptyPoolError("bucket_stats: no entries");

    std::vector<std::vector<double>> bucket(static_cast<std::size_t>(bins));
    std::size_t in_range = 0;
    for (const auto& e : entries) {
        const int b = bin_index(e.complexity, lo, hi, bins, spacing);
        if (b >= 0) {
            bucket[static_cast<std::size_t>(b)].push_back(e.error);
            ++in_range;
        }
    }
    if (in_range == 0) throw EmptyRangeError("bucket_stats: no record falls in [lo, hi)");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<BucketStat> stats;
    stats.reserve(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        BucketStat s;
        s.bin = b;
        if (spacing == BinSpacing::Log) {
            const double step = (std::log(hi) - std::log(lo)) / bins;
            s.lo = std::exp(std::log(lo) + step * b);
            s.hi = std::exp(std::log(lo) + step * (b + 1));
        } else {
            const double step = (hi - lo) / bins;
            s.lo = lo + step * b;
            s.hi = lo + step * (b + 1);
        }
        const auto& values = bucket[static_cast<std::size_t>(b)];
        s.count = values.size();
        if (values.empty()) {
            s.mean_error = nan;
            s.stddev = nan;
        } else {
            const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                                static_cast<double>(values.size());
            double var = 0.0;
            for (double v : values) var += (v - mean) * (v - mean);
            s.mean_error = mean;
            s.stddev = std::sqrt(var / static_cast<double>(values.size()));
        }
        stats.push_back(s);
    }
    return stats;
}

std::vector<SubsampleKs> subsample_ks(const WeightedPool& pool, std::span<const std::size_t> sizes,
                                      Rng& rng, int repeats) {
    if (repeats < 1) throw std::invalid_argument("subsample_ks: repeats must be positive");
    std::vector<double> errors;
    errors.reserve(pool.size());
    for (const auto& e : pool.entries()) errors.push_back(e.error);
    for (std::size_t n : sizes) {
        if (n < 1 || n > errors.size())
            throw std::invalid_argument("subsample_ks: sizes must lie in [1, pool size]");
    }
    const EdfCurve full = EdfCurve::from_values(errors);
    const std::uint64_t base = rng.next();

    std::vector<SubsampleKs> out;
    std::vector<std::size_t> indices(errors.size());
    for (std::size_t size_idx = 0; size_idx < sizes.size(); ++size_idx) {
        const std::size_t n = sizes[size_idx];
        std::vector<double> ds(static_cast<std::size_t>(repeats));
        for (int r = 0; r < repeats; ++r) {
            Rng sub_rng(mix64(base, size_idx * 1000003ULL + static_cast<std::uint64_t>(r)));
            std::iota(indices.begin(), indices.end(), 0);
            std::vector<double> sample(n);
            for (std::size_t i = 0; i < n; ++i) {  // partial Fisher-Yates
                const std::size_t j = i + sub_rng.uniform_index(indices.size() - i);
                std::swap(indices[i], indices[j]);
                sample[i] = errors[indices[i]];
            }
            ds[static_cast<std::size_t>(r)] = ks_statistic(EdfCurve::from_values(sample), full);
        }
        const double mean = std::accumulate(ds.begin(), ds.end(), 0.0) / static_cast<double>(repeats);
        double var = 0.0;
        for (double v : ds) var += (v - mean) * (v - mean);
        const double sd = repeats > 1 ? std::sqrt(var / static_cast<double>(repeats - 1)) : 0.0;
        out.push_back({n, mean, sd / std::sqrt(static_cast<double>(repeats))});
    }
    return out;
}

}  // namespace nds
