#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace nds {

// External-evaluator protocol: requests and results travel as line-delimited
// JSON. A request asks a trainer to evaluate one architecture; the matching
// result carries the observed error. Requests can be streamed over a child
// process's stdin/stdout or exchanged through paired files.

struct EvalRequest {
    std::string run_id;
    nlohmann::json arch;  // same shape as the pool record arch field
    std::uint64_t seed = 0;
};

struct EvalResult {
    std::string run_id;
    double error = 0.0;
    nlohmann::json metadata;  // free-form, optional
};

nlohmann::json to_json(const EvalRequest& request);
EvalRequest request_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EvalResult& result);
EvalResult result_from_json(const nlohmann::json& j);

struct EvaluatorOptions {
    // Longest silence tolerated while results are outstanding.
    std::chrono::milliseconds timeout{60'000};
    // Process restarts (resending unanswered requests) before giving up.
    int retries = 0;
};

// Runs `command` through /bin/sh, streams one request per line to its stdin,
// and reads one result line per request from its stdout. Results may arrive
// in any order; repeats of an already-answered run_id are ignored, results
// for unknown run_ids or with errors outside [0, 100] abort with
// EvaluatorError. Returns results in arrival order, one per request.
std::vector<EvalResult> run_subprocess_evaluator(const std::string& command,
                                                 std::span<const EvalRequest> requests,
                                                 const EvaluatorOptions& options = {});

// File pairing mode: write the request batch, later ingest the result file.
void write_requests(const std::filesystem::path& path, std::span<const EvalRequest> requests);
std::vector<EvalResult> read_results(const std::filesystem::path& path);

}  // namespace nds
