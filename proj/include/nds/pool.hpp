#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nds/complexity.hpp"
#include "nds/diststat.hpp"
#include "nds/presets.hpp"

namespace nds {

// Where a record's error came from. Synthetic errors are produced by the
// built-in oracle; external ones by a real trainer.
enum class Source { Synthetic, External };

std::string to_string(Source s);
Source source_from_string(const std::string& s);

// A sampled architecture together with the evaluation context needed to
// recompute its complexity without any outside state.
struct ModelArch {
    std::variant<ArchConfig, NasNetworkConfig> arch;
    EvalSettings eval;
};

// One model of a design-space dataset. flops/params always match
// recomputation from the arch; error and source appear once evaluated.
struct ModelRecord {
    std::string design_space;
    ModelArch arch;
    std::uint64_t flops = 0;
    std::uint64_t params = 0;
    std::optional<double> error;
    std::uint64_t seed = 0;
    std::optional<Source> source;
    std::string run_id;

    bool evaluated() const { return error.has_value(); }
};

nlohmann::json arch_to_json(const ModelArch& arch);
ModelArch arch_from_json(const nlohmann::json& j);
nlohmann::json record_to_json(const ModelRecord& record);
ModelRecord record_from_json(const nlohmann::json& j);

// Canonical one-line serialization; also the basis of the dedup key.
std::string record_line(const ModelRecord& record);
std::string record_key(const ModelRecord& record);  // (design_space, arch, seed)

ComplexityReport recompute_complexity(const ModelArch& arch);

inline constexpr int kPoolSchemaVersion = 1;

// Pool files are line-delimited JSON: a schema_version header line followed
// by one record per line.
std::vector<ModelRecord> read_pool(const std::filesystem::path& path);
void write_pool(const std::filesystem::path& path, std::span<const ModelRecord> records);

enum class RejectReason { MalformedLine, BadComplexity, Duplicate, OutOfRangeError };

std::string to_string(RejectReason r);

struct IngestReject {
    std::size_t line = 0;  // 1-based line number in the input
    RejectReason reason = RejectReason::MalformedLine;
    std::string detail;
};

struct IngestResult {
    std::size_t accepted = 0;
    std::vector<IngestReject> rejects;
};

// Validates record lines from `in` and appends the survivors to the pool at
// `path` (created with a header if absent). Stored complexities must match
// recomputation exactly; duplicate (design_space, arch, seed) keys and
// out-of-range errors are rejected; malformed lines are reported and
// skipped without stopping ingestion.
IngestResult ingest(std::istream& in, const std::filesystem::path& path);

// Records strictly below the ceiling; input order preserved.
std::vector<ModelRecord> filter_pool(std::span<const ModelRecord> records,
                                     const ComplexityCeiling& ceiling);

// Deterministic stand-in for a trained model's error: a per-family base
// falling with log(params), plus an intrinsic per-architecture offset and
// per-seed training noise, clamped to [1, 95] percent.
double synthetic_error(const ModelArch& arch, std::uint64_t flops, std::uint64_t params,
                       std::uint64_t seed);

// Bridge to the statistics layer: evaluated records only.
std::vector<PoolEntry> pool_entries(std::span<const ModelRecord> records, Metric metric);

// Analyses refuse pools mixing synthetic and external errors unless the
// caller explicitly allows it.
void check_single_source(std::span<const ModelRecord> records, bool allow_mixed);

}  // namespace nds
