// Command-line surface: sampling, sizing, evaluation, and the distribution
// comparison reports. Curves go out as CSV, scalar reports as JSON.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nds/archspace.hpp"
#include "nds/complexity.hpp"
#include "nds/diststat.hpp"
#include "nds/errors.hpp"
#include "nds/evaluator.hpp"
#include "nds/nascell.hpp"
#include "nds/pool.hpp"
#include "nds/presets.hpp"
#include "nds/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitEmptyRange = 4;
constexpr int kExitEvaluator = 5;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Bare file names resolve under NDS_POOL_DIR when it is set.
std::filesystem::path resolve_pool_path(const std::string& name) {
    if (name.find('/') == std::string::npos) {
        if (const char* dir = std::getenv("NDS_POOL_DIR"); dir != nullptr && *dir != '\0')
            return std::filesystem::path(dir) / name;
    }
    return name;
}

struct RangeOption {
    std::optional<double> lo;
    std::optional<double> hi;
};

RangeOption parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw nds::InvalidConfigError("bad --range, expected lo:hi: " + text);
    try {
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::logic_error&) {
        throw nds::InvalidConfigError("bad --range, expected lo:hi: " + text);
    }
}

std::vector<std::uint64_t> parse_uint_list(const std::string& text, const char* flag) {
    std::vector<std::uint64_t> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(static_cast<std::uint64_t>(std::stoull(item)));
        } catch (const std::logic_error&) {
            throw nds::InvalidConfigError(std::string("bad ") + flag + " entry: " + item);
        }
    }
    if (values.empty()) throw nds::InvalidConfigError(std::string(flag) + " must not be empty");
    return values;
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw nds::SchemaError("cannot write output file: " + out_path);
    out << text;
    out.flush();
    if (!out) throw nds::SchemaError("short write to output file: " + out_path);
}

std::string edf_csv(const nds::EdfCurve& curve) {
    std::string csv = "threshold,fraction\n";
    for (const auto& p : curve.points())
        csv += fmt_double(p.threshold) + "," + fmt_double(p.cumulative) + "\n";
    return csv;
}

// ---------------------------------------------------------------------------
// Shared analysis plumbing

struct PoolArgs {
    std::string path;
    bool allow_mixed = false;

    std::vector<nds::ModelRecord> load() const {
        auto records = nds::read_pool(resolve_pool_path(path));
        nds::check_single_source(records, allow_mixed);
        return records;
    }
};

struct BinArgs {
    std::string metric_name = "params";
    std::string range_text;
    int bins = 10;
    bool linear = false;

    nds::Metric metric() const { return nds::metric_from_string(metric_name); }
    nds::BinSpacing spacing() const {
        return linear ? nds::BinSpacing::Linear : nds::BinSpacing::Log;
    }
    RangeOption range() const {
        return range_text.empty() ? RangeOption{} : parse_range(range_text);
    }
};

std::vector<nds::PoolEntry> evaluated_entries(const std::vector<nds::ModelRecord>& records,
                                              nds::Metric metric) {
    auto entries = nds::pool_entries(records, metric);
    if (entries.empty()) throw nds::EmptyPoolError("pool has no evaluated records");
    return entries;
}

// Fills in whichever range ends the user left open, from the entries' own
// complexity span (upper end widened so the max stays inside [lo, hi)).
std::pair<double, double> complete_range(const RangeOption& opt,
                                         std::span<const nds::PoolEntry> entries) {
    double lo = opt.lo.value_or(std::numeric_limits<double>::infinity());
    double hi = opt.hi.value_or(-std::numeric_limits<double>::infinity());
    if (!opt.lo || !opt.hi) {
        for (const auto& e : entries) {
            if (!opt.lo) lo = std::min(lo, e.complexity);
            if (!opt.hi) hi = std::max(hi, e.complexity);
        }
        if (!opt.hi) hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
    }
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// Subcommand state

struct SizeCmd {
    std::string space;
    bool full = false;
    std::string format = "text";
};

struct SampleCmd {
    std::string space;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::string out;
};

struct EvalCmd {
    PoolArgs pool;
    std::string out;
    bool synthetic = false;
    std::string evaluator;
    std::string requests_out;
    std::string results_in;
    std::uint64_t timeout_ms = 60'000;
    int retries = 0;
};

struct CompareCmd {
    PoolArgs pool_a;
    PoolArgs pool_b;
    BinArgs bins;
    double eps = 100.0;
    std::string out;
};

struct EdfCmd {
    PoolArgs pool;
    BinArgs bins;
    bool normalize = false;
    std::string out;
};

struct RsCmd {
    PoolArgs pool;
    BinArgs bins;
    bool normalize = false;
    std::string m_list = "1,10,100,1000";
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;  // 0 -> default rule
    std::string out;
    std::string format = "csv";
};

struct BucketsCmd {
    PoolArgs pool;
    BinArgs bins;
    std::string out;
    std::string format = "csv";
};

struct SubsampleCmd {
    PoolArgs pool;
    std::string sizes = "10,100,1000";
    std::uint64_t seed = 0;
    int repeats = 20;
    std::string out;
};

// ---------------------------------------------------------------------------
// Command implementations

int run_size(const SizeCmd& cmd) {
    const nds::DesignSpace space = nds::load_space(cmd.space);
    const mpz_class size = nds::design_space_size(space, cmd.full);
    if (cmd.format == "json") {
        nlohmann::json j{{"space", space.name}, {"size", size.get_str()}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << size.get_str() << "\n";
    }
    return kExitOk;
}

nds::ModelRecord sample_record(const nds::DesignSpace& space, std::uint64_t base_seed,
                               std::uint64_t index) {
    nds::ModelRecord record;
    record.design_space = space.name;
    record.seed = nds::mix64(base_seed, index);
    nds::Rng rng(record.seed);
    if (const auto* std_spec = std::get_if<nds::StandardSpaceSpec>(&space.spec)) {
        record.arch.arch = nds::sample_standard(*std_spec, rng);
    } else {
        record.arch.arch = nds::sample_nas_network(std::get<nds::NasSpaceSpec>(space.spec), rng);
    }
    record.arch.eval = space.eval;
    const nds::ComplexityReport report = nds::recompute_complexity(record.arch);
    record.flops = report.flops;
    record.params = report.params;
    char run_id[128];
    std::snprintf(run_id, sizeof(run_id), "%s-%llu-%06llu", space.name.c_str(),
                  static_cast<unsigned long long>(base_seed),
                  static_cast<unsigned long long>(index));
    record.run_id = run_id;
    return record;
}

int run_sample(const SampleCmd& cmd) {
    const nds::DesignSpace space = nds::load_space(cmd.space);
    std::vector<nds::ModelRecord> records;
    records.reserve(cmd.n);
    for (std::uint64_t i = 0; i < cmd.n; ++i) records.push_back(sample_record(space, cmd.seed, i));
    nds::write_pool(resolve_pool_path(cmd.out), records);
    std::cerr << "wrote " << records.size() << " record(s) to " << cmd.out << "\n";
    return kExitOk;
}

int run_eval(const EvalCmd& cmd) {
    auto records = nds::read_pool(resolve_pool_path(cmd.pool.path));
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < records.size(); ++i)
        if (!records[i].evaluated()) todo.push_back(i);

    const int modes = int(cmd.synthetic) + int(!cmd.evaluator.empty()) +
                      int(!cmd.requests_out.empty()) + int(!cmd.results_in.empty());
    if (modes != 1)
        throw nds::InvalidConfigError(
            "eval: pick exactly one of --synthetic, --evaluator, --requests-out, --results-in");

    if (!cmd.requests_out.empty()) {
        std::vector<nds::EvalRequest> requests;
        for (std::size_t i : todo)
            requests.push_back({records[i].run_id, nds::arch_to_json(records[i].arch),
                                records[i].seed});
        nds::write_requests(cmd.requests_out, requests);
        std::cerr << "wrote " << requests.size() << " request(s) to " << cmd.requests_out << "\n";
        return kExitOk;
    }

    if (cmd.out.empty()) throw nds::InvalidConfigError("eval: --out is required");

    if (cmd.synthetic) {
        for (std::size_t i : todo) {
            auto& r = records[i];
            r.error = nds::synthetic_error(r.arch, r.flops, r.params, r.seed);
            r.source = nds::Source::Synthetic;
        }
    } else {
        std::vector<nds::EvalResult> results;
        std::vector<nds::EvalRequest> requests;
        for (std::size_t i : todo)
            requests.push_back({records[i].run_id, nds::arch_to_json(records[i].arch),
                                records[i].seed});
        if (!cmd.evaluator.empty()) {
            nds::EvaluatorOptions options;
            options.timeout = std::chrono::milliseconds(cmd.timeout_ms);
            options.retries = cmd.retries;
            results = nds::run_subprocess_evaluator(cmd.evaluator, requests, options);
        } else {
            results = nds::read_results(cmd.results_in);
        }
        std::unordered_map<std::string, std::size_t> by_run_id;
        for (std::size_t i : todo) by_run_id.emplace(records[i].run_id, i);
        for (const auto& result : results) {
            const auto it = by_run_id.find(result.run_id);
            if (it == by_run_id.end())
                throw nds::EvaluatorError("result for unknown or already-evaluated run_id " +
                                          result.run_id);
            auto& r = records[it->second];
            if (r.evaluated()) continue;  // duplicate result lines are idempotent
            if (!(result.error >= 0.0 && result.error <= 100.0))
                throw nds::EvaluatorError("error outside [0, 100] for run_id " + result.run_id);
            r.error = result.error;
            r.source = nds::Source::External;
        }
    }

    nds::write_pool(resolve_pool_path(cmd.out), records);
    std::size_t evaluated = 0;
    for (const auto& r : records) evaluated += r.evaluated() ? 1 : 0;
    std::cerr << "pool now holds " << evaluated << "/" << records.size()
              << " evaluated record(s)\n";
    return kExitOk;
}

int run_compare(const CompareCmd& cmd) {
    const auto records_a = cmd.pool_a.load();
    const auto records_b = cmd.pool_b.load();
    const nds::Metric metric = cmd.bins.metric();
    const auto entries_a = evaluated_entries(records_a, metric);
    const auto entries_b = evaluated_entries(records_b, metric);

    // Both pools are reweighted over one shared range; by default the overlap
    // of their complexity spans.
    auto range = cmd.bins.range();
    if (!range.lo || !range.hi) {
        const auto [lo_a, hi_a] = complete_range({}, entries_a);
        const auto [lo_b, hi_b] = complete_range({}, entries_b);
        if (!range.lo) range.lo = std::max(lo_a, lo_b);
        if (!range.hi) range.hi = std::min(hi_a, hi_b);
        if (!(*range.lo < *range.hi))
            throw nds::EmptyRangeError("pools have no overlapping complexity range; pass --range");
    }

    const auto pool_a =
        nds::normalize_weights(entries_a, *range.lo, *range.hi, cmd.bins.bins, cmd.bins.spacing());
    const auto pool_b =
        nds::normalize_weights(entries_b, *range.lo, *range.hi, cmd.bins.bins, cmd.bins.spacing());
    const nds::EdfCurve edf_a = nds::edf(pool_a);
    const nds::EdfCurve edf_b = nds::edf(pool_b);
    const double d = nds::ks_statistic(edf_a, edf_b);
    // Normalization reweights records, so significance uses the pools'
    // effective sizes rather than raw counts.
    const double p = nds::ks_pvalue(d, pool_a.effective_size(), pool_b.effective_size());

    nlohmann::json j;
    j["metric"] = nds::to_string(metric);
    j["range"] = {{"lo", *range.lo}, {"hi", *range.hi}};
    j["bins"] = cmd.bins.bins;
    j["d"] = d;
    j["p_value"] = p;
    j["n_a"] = entries_a.size();
    j["n_b"] = entries_b.size();
    j["effective_n_a"] = pool_a.effective_size();
    j["effective_n_b"] = pool_b.effective_size();
    j["eps"] = cmd.eps;
    j["area_a"] = nds::edf_area(pool_a, cmd.eps);
    j["area_b"] = nds::edf_area(pool_b, cmd.eps);
    std::cout << j.dump() << "\n";

    if (!cmd.out.empty()) {
        write_text(cmd.out + ".edf-a.csv", edf_csv(edf_a));
        write_text(cmd.out + ".edf-b.csv", edf_csv(edf_b));
    }
    return kExitOk;
}

nds::WeightedPool build_pool(const std::vector<nds::PoolEntry>& entries, const BinArgs& bins,
                             bool normalize) {
    if (!normalize) return nds::WeightedPool::uniform(entries);
    const auto [lo, hi] = complete_range(bins.range(), entries);
    return nds::normalize_weights(entries, lo, hi, bins.bins, bins.spacing());
}

int run_edf(const EdfCmd& cmd) {
    const auto records = cmd.pool.load();
    const auto entries = evaluated_entries(records, cmd.bins.metric());
    const auto pool = build_pool(entries, cmd.bins, cmd.normalize);
    write_text(cmd.out, edf_csv(nds::edf(pool)));
    return kExitOk;
}

int run_rs(const RsCmd& cmd) {
    const auto records = cmd.pool.load();
    const auto entries = evaluated_entries(records, cmd.bins.metric());
    const auto pool = build_pool(entries, cmd.bins, cmd.normalize);
    const auto ms = parse_uint_list(cmd.m_list, "--m");

    nds::Rng rng(cmd.seed);
    std::vector<nds::RandomSearchResult> results;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        nds::Rng m_rng = rng.child(i);
        results.push_back(nds::random_search_sim(
            pool, ms[i], cmd.trials ? std::optional<std::size_t>(cmd.trials) : std::nullopt, m_rng));
    }

    if (cmd.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : results)
            j.push_back({{"m", r.num_samples},
                         {"trials", r.trials},
                         {"mean_min_error", r.mean_min_error},
                         {"p25", r.p25},
                         {"p75", r.p75},
                         {"stddev", r.stddev}});
        write_text(cmd.out, j.dump() + "\n");
    } else {
        std::string csv = "m,trials,mean_min_error,p25,p75,stddev\n";
        for (const auto& r : results) {
            csv += std::to_string(r.num_samples) + "," + std::to_string(r.trials) + "," +
                   fmt_double(r.mean_min_error) + "," + fmt_double(r.p25) + "," +
                   fmt_double(r.p75) + "," + fmt_double(r.stddev) + "\n";
        }
        write_text(cmd.out, csv);
    }
    return kExitOk;
}

int run_buckets(const BucketsCmd& cmd) {
    const auto records = cmd.pool.load();
    const auto entries = evaluated_entries(records, cmd.bins.metric());
    const auto [lo, hi] = complete_range(cmd.bins.range(), entries);
    const auto stats = nds::bucket_stats(entries, lo, hi, cmd.bins.bins, cmd.bins.spacing());

    if (cmd.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& s : stats) {
            nlohmann::json row{{"bin", s.bin}, {"lo", s.lo}, {"hi", s.hi}, {"count", s.count}};
            if (s.count > 0) {
                row["mean_error"] = s.mean_error;
                row["stddev"] = s.stddev;
            } else {
                row["mean_error"] = nullptr;
                row["stddev"] = nullptr;
            }
            j.push_back(row);
        }
        write_text(cmd.out, j.dump() + "\n");
    } else {
        std::string csv = "bin,lo,hi,count,mean_error,stddev\n";
        for (const auto& s : stats) {
            csv += std::to_string(s.bin) + "," + fmt_double(s.lo) + "," + fmt_double(s.hi) + "," +
                   std::to_string(s.count) + ",";
            if (s.count > 0)
                csv += fmt_double(s.mean_error) + "," + fmt_double(s.stddev);
            else
                csv += ",";
            csv += "\n";
        }
        write_text(cmd.out, csv);
    }
    return kExitOk;
}

int run_subsample(const SubsampleCmd& cmd) {
    const auto records = cmd.pool.load();
    const auto entries = evaluated_entries(records, nds::Metric::Params);
    const auto pool = nds::WeightedPool::uniform(entries);
    const auto sizes64 = parse_uint_list(cmd.sizes, "--sizes");
    std::vector<std::size_t> sizes(sizes64.begin(), sizes64.end());

    nds::Rng rng(cmd.seed);
    const auto rows = nds::subsample_ks(pool, sizes, rng, cmd.repeats);
    std::string csv = "n,mean_d,stderr_d\n";
    for (const auto& r : rows)
        csv += std::to_string(r.n) + "," + fmt_double(r.mean_d) + "," + fmt_double(r.stderr_d) + "\n";
    write_text(cmd.out, csv);
    return kExitOk;
}

void add_pool_options(CLI::App* cmd, PoolArgs& args, const char* flag = "--pool") {
    cmd->add_option(flag, args.path, "pool file (bare names resolve under NDS_POOL_DIR)")
        ->required();
    cmd->add_flag("--allow-mixed", args.allow_mixed,
                  "permit pools mixing synthetic and external records");
}

void add_bin_options(CLI::App* cmd, BinArgs& args, bool with_range = true) {
    cmd->add_option("--metric", args.metric_name, "complexity metric: flops or params")
        ->check(CLI::IsMember({"flops", "params"}));
    if (with_range) cmd->add_option("--range", args.range_text, "complexity range lo:hi");
    cmd->add_option("--bins", args.bins, "number of complexity bins")->check(CLI::PositiveNumber);
    cmd->add_flag("--linear", args.linear, "linear instead of log-spaced bins");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distribution estimates for network design spaces"};
    app.require_subcommand(1);

    SizeCmd size_cmd;
    auto* size = app.add_subcommand("size", "print a design space's exact cardinality");
    size->add_option("--space", size_cmd.space, "space preset or config path")->required();
    size->add_flag("--full", size_cmd.full, "for NAS spaces, count whole networks instead of cells");
    size->add_option("--format", size_cmd.format)->check(CLI::IsMember({"text", "json"}));

    SampleCmd sample_cmd;
    auto* sample = app.add_subcommand("sample", "sample architectures into an unevaluated pool");
    sample->add_option("--space", sample_cmd.space, "space preset or config path")->required();
    sample->add_option("--n", sample_cmd.n, "number of records")->required();
    sample->add_option("--seed", sample_cmd.seed, "base seed");
    sample->add_option("--out", sample_cmd.out, "pool file to write")->required();

    EvalCmd eval_cmd;
    auto* eval = app.add_subcommand("eval", "fill in errors for unevaluated records");
    add_pool_options(eval, eval_cmd.pool);
    eval->add_option("--out", eval_cmd.out, "evaluated pool file to write");
    eval->add_flag("--synthetic", eval_cmd.synthetic, "use the built-in synthetic oracle");
    eval->add_option("--evaluator", eval_cmd.evaluator,
                     "shell command evaluating JSON requests on stdin to results on stdout");
    eval->add_option("--requests-out", eval_cmd.requests_out,
                     "write a request file instead of evaluating");
    eval->add_option("--results-in", eval_cmd.results_in, "ingest a result file");
    eval->add_option("--timeout-ms", eval_cmd.timeout_ms, "evaluator silence timeout");
    eval->add_option("--retries", eval_cmd.retries, "evaluator restarts before giving up");

    CompareCmd compare_cmd;
    auto* compare = app.add_subcommand("compare", "complexity-normalized two-pool comparison");
    add_pool_options(compare, compare_cmd.pool_a, "--pool-a");
    compare->add_option("--pool-b", compare_cmd.pool_b.path, "second pool file")->required();
    add_bin_options(compare, compare_cmd.bins);
    compare->add_option("--eps", compare_cmd.eps, "EDF area horizon (error percent)");
    compare->add_option("--out", compare_cmd.out, "basename for normalized EDF CSVs");

    EdfCmd edf_cmd;
    auto* edf = app.add_subcommand("edf", "emit an error EDF as CSV");
    add_pool_options(edf, edf_cmd.pool);
    edf->add_flag("--normalize", edf_cmd.normalize, "reweight for a flat complexity distribution");
    add_bin_options(edf, edf_cmd.bins);
    edf->add_option("--out", edf_cmd.out, "CSV path (default stdout)");

    RsCmd rs_cmd;
    auto* rs = app.add_subcommand("rs", "random-search efficiency curve");
    add_pool_options(rs, rs_cmd.pool);
    rs->add_option("--m", rs_cmd.m_list, "comma-separated experiment sizes");
    rs->add_option("--seed", rs_cmd.seed, "simulation seed");
    rs->add_option("--trials", rs_cmd.trials, "trials per size (default max(n/m, 32))");
    rs->add_flag("--normalize", rs_cmd.normalize, "weight draws for a flat complexity distribution");
    add_bin_options(rs, rs_cmd.bins);
    rs->add_option("--out", rs_cmd.out, "output path (default stdout)");
    rs->add_option("--format", rs_cmd.format)->check(CLI::IsMember({"csv", "json"}));

    BucketsCmd buckets_cmd;
    auto* buckets = app.add_subcommand("buckets", "per-bin error statistics");
    add_pool_options(buckets, buckets_cmd.pool);
    add_bin_options(buckets, buckets_cmd.bins);
    buckets->add_option("--out", buckets_cmd.out, "output path (default stdout)");
    buckets->add_option("--format", buckets_cmd.format)->check(CLI::IsMember({"csv", "json"}));

    SubsampleCmd subsample_cmd;
    auto* subsample =
        app.add_subcommand("subsample-ks", "KS distance between the full pool and subsamples");
    add_pool_options(subsample, subsample_cmd.pool);
    subsample->add_option("--sizes", subsample_cmd.sizes, "comma-separated subsample sizes");
    subsample->add_option("--seed", subsample_cmd.seed, "subsampling seed");
    subsample->add_option("--repeats", subsample_cmd.repeats, "repeats per size")
        ->check(CLI::PositiveNumber);
    subsample->add_option("--out", subsample_cmd.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (size->parsed()) return run_size(size_cmd);
        if (sample->parsed()) return run_sample(sample_cmd);
        if (eval->parsed()) return run_eval(eval_cmd);
        if (compare->parsed()) return run_compare(compare_cmd);
        if (edf->parsed()) return run_edf(edf_cmd);
        if (rs->parsed()) return run_rs(rs_cmd);
        if (buckets->parsed()) return run_buckets(buckets_cmd);
        if (subsample->parsed()) return run_subsample(subsample_cmd);
        return kExitParse;
    } catch (const nds::EmptyRangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEmptyRange;
    } catch (const nds::EmptyPoolError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEmptyRange;
    } catch (const nds::EvaluatorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEvaluator;
    } catch (const nds::InfeasibleGridError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const nds::InvalidConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const nds::UnknownOpError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
