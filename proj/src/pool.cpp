#include "nds/pool.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "nds/errors.hpp"
#include "nds/rng.hpp"

namespace nds {

std::string to_string(Source s) { return s == Source::Synthetic ? "synthetic" : "external"; }

Source source_from_string(const std::string& s) {
    if (s == "synthetic") return Source::Synthetic;
    if (s == "external") return Source::External;
    throw SchemaError("unknown source: " + s);
}

std::string to_string(RejectReason r) {
    switch (r) {
        case RejectReason::MalformedLine: return "malformed-line";
        case RejectReason::BadComplexity: return "bad-complexity";
        case RejectReason::Duplicate: return "duplicate";
        case RejectReason::OutOfRangeError: return "out-of-range-error";
    }
    return "unknown";
}

nlohmann::json arch_to_json(const ModelArch& arch) {
    nlohmann::json j;
    j["resolution"] = arch.eval.resolution;
    j["classes"] = arch.eval.num_classes;
    j["stem"] = to_string(arch.eval.stem);
    if (const auto* cfg = std::get_if<ArchConfig>(&arch.arch)) {
        j["kind"] = "standard";
        j["family"] = to_string(cfg->family);
        j["depths"] = cfg->depths;
        j["widths"] = cfg->widths;
        if (cfg->family == Family::ResNeXt) {
            j["ratios"] = cfg->ratios;
            j["groups"] = cfg->groups;
        }
    } else {
        const auto& net = std::get<NasNetworkConfig>(arch.arch);
        j["kind"] = "nas";
        if (net.opset.name == "custom") {
            std::vector<std::string> names;
            for (const auto& op : net.opset.ops) names.push_back(op.name);
            j["ops"] = names;
        }
        j["opset"] = net.opset.name;
        j["width"] = net.init_width;
        j["depth"] = net.depth;
        j["normal"] = net.normal_cell.to_string();
        j["reduction"] = net.reduction_cell.to_string();
    }
    return j;
}

ModelArch arch_from_json(const nlohmann::json& j) {
    try {
        ModelArch arch;
        arch.eval.resolution = j.at("resolution").get<int>();
        arch.eval.num_classes = j.at("classes").get<int>();
        arch.eval.stem = stem_from_string(j.at("stem").get<std::string>());
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "standard") {
            ArchConfig cfg;
            cfg.family = family_from_string(j.at("family").get<std::string>());
            cfg.depths = j.at("depths").get<std::vector<int>>();
            cfg.widths = j.at("widths").get<std::vector<int>>();
            if (cfg.family == Family::ResNeXt) {
                cfg.ratios = j.at("ratios").get<std::vector<int>>();
                cfg.groups = j.at("groups").get<std::vector<int>>();
            }
            arch.arch = std::move(cfg);
        } else if (kind == "nas") {
            NasNetworkConfig net;
            const auto opset_name = j.at("opset").get<std::string>();
            if (opset_name == "custom") {
                net.opset.name = "custom";
                for (const auto& op : j.at("ops"))
                    net.opset.ops.push_back(op_from_name(op.get<std::string>()));
            } else {
                net.opset = opset_preset(opset_name);
            }
            net.init_width = j.at("width").get<int>();
            net.depth = j.at("depth").get<int>();
            net.normal_cell = CellGenotype::parse(j.at("normal").get<std::string>());
            net.reduction_cell = CellGenotype::parse(j.at("reduction").get<std::string>());
            net.reduction_positions = reduction_positions(net.depth);
            net.validate();
            arch.arch = std::move(net);
        } else {
            throw SchemaError("unknown arch kind: " + kind);
        }
        return arch;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad arch: ") + e.what());
    }
}

nlohmann::json record_to_json(const ModelRecord& record) {
    nlohmann::json j;
    j["design_space"] = record.design_space;
    j["arch"] = arch_to_json(record.arch);
    j["flops"] = record.flops;
    j["params"] = record.params;
    if (record.error) j["error"] = *record.error;
    j["seed"] = record.seed;
    if (record.source) j["source"] = to_string(*record.source);
    j["run_id"] = record.run_id;
    return j;
}

ModelRecord record_from_json(const nlohmann::json& j) {
    try {
        ModelRecord r;
        r.design_space = j.at("design_space").get<std::string>();
        r.arch = arch_from_json(j.at("arch"));
        r.flops = j.at("flops").get<std::uint64_t>();
        r.params = j.at("params").get<std::uint64_t>();
        if (j.contains("error")) r.error = j.at("error").get<double>();
        r.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("source")) r.source = source_from_string(j.at("source").get<std::string>());
        r.run_id = j.value("run_id", std::string());
        if (r.error.has_value() != r.source.has_value())
            throw SchemaError("record: error and source must appear together");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad record: ") + e.what());
    }
}

std::string record_line(const ModelRecord& record) { return record_to_json(record).dump(); }

std::string record_key(const ModelRecord& record) {
    return record.design_space + '\x1f' + arch_to_json(record.arch).dump() + '\x1f' +
           std::to_string(record.seed);
}

ComplexityReport recompute_complexity(const ModelArch& arch) {
    if (const auto* cfg = std::get_if<ArchConfig>(&arch.arch))
        return standard_complexity(*cfg, arch.eval.resolution, arch.eval.num_classes, arch.eval.stem);
    return nas_complexity(std::get<NasNetworkConfig>(arch.arch), arch.eval.resolution,
                          arch.eval.num_classes, arch.eval.stem);
}

namespace {

nlohmann::json header_json() { return nlohmann::json{{"schema_version", kPoolSchemaVersion}}; }

void check_header_line(const std::string& line, const std::filesystem::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
        throw SchemaError("pool " + path.string() + ": bad header line");
    }
    if (!j.contains("schema_version"))
        throw SchemaError("pool " + path.string() + ": missing schema_version header");
    if (j.at("schema_version").get<int>() != kPoolSchemaVersion)
        throw SchemaError("pool " + path.string() + ": unsupported schema_version");
}

bool looks_like_header(const std::string& line) {
    return line.find("schema_version") != std::string::npos &&
           line.find("design_space") == std::string::npos;
}

}  // namespace

std::vector<ModelRecord> read_pool(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open pool file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("pool " + path.string() + ": empty file");
    check_header_line(line, path);
    std::vector<ModelRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            records.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw SchemaError("pool " + path.string() + " line " + std::to_string(line_no) + ": " +
                              e.what());
        }
    }
    return records;
}

void write_pool(const std::filesystem::path& path, std::span<const ModelRecord> records) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw SchemaError("cannot write pool file: " + path.string());
    out << header_json().dump() << '\n';
    for (const auto& r : records) out << record_line(r) << '\n';
    out.flush();
    if (!out) throw SchemaError("short write to pool file: " + path.string());
}

IngestResult ingest(std::istream& in, const std::filesystem::path& path) {
    std::unordered_set<std::string> keys;
    std::vector<ModelRecord> existing;
    if (std::filesystem::exists(path) && std::filesystem::file_size(path) > 0) {
        existing = read_pool(path);
        for (const auto& r : existing) keys.insert(record_key(r));
    }

    std::ofstream out;
    if (existing.empty() && (!std::filesystem::exists(path) || std::filesystem::file_size(path) == 0)) {
        out.open(path, std::ios::trunc);
        if (out) out << header_json().dump() << '\n';
    } else {
        out.open(path, std::ios::app);
    }
    if (!out) throw SchemaError("cannot open pool file for append: " + path.string());

    IngestResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1 && looks_like_header(line)) {
            check_header_line(line, path);
            continue;
        }
        ModelRecord record;
        try {
            record = record_from_json(nlohmann::json::parse(line));
        } catch (const std::exception& e) {
            result.rejects.push_back({line_no, RejectReason::MalformedLine, e.what()});
            continue;
        }
        if (record.error && !(*record.error >= 0.0 && *record.error <= 100.0)) {
            result.rejects.push_back({line_no, RejectReason::OutOfRangeError,
                                      "error " + std::to_string(*record.error) + " outside [0, 100]"});
            continue;
        }
        ComplexityReport report;
        try {
            report = recompute_complexity(record.arch);
        } catch (const std::exception& e) {
            result.rejects.push_back({line_no, RejectReason::MalformedLine, e.what()});
            continue;
        }
        if (report.flops != record.flops || report.params != record.params) {
            std::ostringstream detail;
            detail << "stored flops/params " << record.flops << "/" << record.params
                   << " do not match recomputed " << report.flops << "/" << report.params;
            result.rejects.push_back({line_no, RejectReason::BadComplexity, detail.str()});
            continue;
        }
        const std::string key = record_key(record);
        if (!keys.insert(key).second) {
            result.rejects.push_back({line_no, RejectReason::Duplicate,
                                      "duplicate (design_space, arch, seed) key"});
            continue;
        }
        out << record_line(record) << '\n';
        ++result.accepted;
    }
    out.flush();
    if (!out) throw SchemaError("short write to pool file: " + path.string());
    return result;
}

std::vector<ModelRecord> filter_pool(std::span<const ModelRecord> records,
                                     const ComplexityCeiling& ceiling) {
    std::vector<ModelRecord> kept;
    for (const auto& r : records) {
        ComplexityReport report;
        report.flops = r.flops;
        report.params = r.params;
        if (within_ceiling(report, ceiling)) kept.push_back(r);
    }
    return kept;
}

namespace {

// Standard normal from a 64-bit hash via Box-Muller.
double hash_normal(std::uint64_t h) {
    const std::uint64_t a = mix64(h, 0x9d5f);
    const std::uint64_t b = mix64(h, 0x6b43);
    const double u1 = (static_cast<double>(a >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

double family_base_error(const ModelArch& arch) {
    if (const auto* cfg = std::get_if<ArchConfig>(&arch.arch)) {
        switch (cfg->family) {
            case Family::Vanilla: return 16.0;
            case Family::ResNet: return 9.0;
            case Family::ResNeXt: return 8.5;
        }
    }
    return 8.0;  // NAS cells
}

}  // namespace

double synthetic_error(const ModelArch& arch, std::uint64_t /*flops*/, std::uint64_t params,
                       std::uint64_t seed) {
    if (params == 0) throw InvalidConfigError("synthetic_error: params must be positive");
    const std::uint64_t arch_hash = fnv1a64(arch_to_json(arch).dump());
    const double base = family_base_error(arch);
    const double capacity = 2.2 * (std::log10(static_cast<double>(params)) - 5.0);
    const double intrinsic = 1.2 * hash_normal(arch_hash);
    const double run_noise = 0.35 * hash_normal(mix64(arch_hash, seed));
    return std::clamp(base - capacity + intrinsic + run_noise, 1.0, 95.0);
}

std::vector<PoolEntry> pool_entries(std::span<const ModelRecord> records, Metric metric) {
    std::vector<PoolEntry> entries;
    entries.reserve(records.size());
    for (const auto& r : records) {
        if (!r.evaluated()) continue;
        entries.push_back({*r.error, static_cast<double>(metric == Metric::Flops ? r.flops : r.params)});
    }
    return entries;
}

void check_single_source(std::span<const ModelRecord> records, bool allow_mixed) {
    if (allow_mixed) return;
    std::optional<Source> seen;
    for (const auto& r : records) {
        if (!r.source) continue;
        if (!seen) {
            seen = r.source;
        } else if (*seen != *r.source) {
            throw InvalidConfigError(
                "pool mixes synthetic and external records; pass --allow-mixed to analyze anyway");
        }
    }
}

}  // namespace nds
