#include "nds/evaluator.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "nds/errors.hpp"

namespace nds {

nlohmann::json to_json(const EvalRequest& request) {
    return nlohmann::json{{"run_id", request.run_id}, {"arch", request.arch}, {"seed", request.seed}};
}

EvalRequest request_from_json(const nlohmann::json& j) {
    try {
        EvalRequest r;
        r.run_id = j.at("run_id").get<std::string>();
        r.arch = j.at("arch");
        r.seed = j.at("seed").get<std::uint64_t>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad eval request: ") + e.what());
    }
}

nlohmann::json to_json(const EvalResult& result) {
    nlohmann::json j{{"run_id", result.run_id}, {"error", result.error}};
    if (!result.metadata.is_null()) j["metadata"] = result.metadata;
    return j;
}

EvalResult result_from_json(const nlohmann::json& j) {
    try {
        EvalResult r;
        r.run_id = j.at("run_id").get<std::string>();
        r.error = j.at("error").get<double>();
        if (j.contains("metadata")) r.metadata = j.at("metadata");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad eval result: ") + e.what());
    }
}

namespace {

struct ChildProcess {
    pid_t pid = -1;
    int to_child = -1;    // we write requests here
    int from_child = -1;  // we read results here

    ~ChildProcess() { shutdown(); }

    void shutdown() {
        if (to_child >= 0) close(to_child);
        if (from_child >= 0) close(from_child);
        to_child = from_child = -1;
        if (pid > 0) {
            kill(pid, SIGKILL);
            waitpid(pid, nullptr, 0);
            pid = -1;
        }
    }
};

ChildProcess spawn(const std::string& command) {
    int in_pipe[2];   // parent -> child stdin
    int out_pipe[2];  // child stdout -> parent
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
        throw EvaluatorError("evaluator: pipe() failed: " + std::string(std::strerror(errno)));

    const pid_t pid = fork();
    if (pid < 0) throw EvaluatorError("evaluator: fork() failed: " + std::string(std::strerror(errno)));
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);

    ChildProcess child;
    child.pid = pid;
    child.to_child = in_pipe[1];
    child.from_child = out_pipe[0];
    // Broken pipes surface as EPIPE on write instead of killing the parent.
    signal(SIGPIPE, SIG_IGN);
    return child;
}

// One spawn/stream/collect round. Returns the results received; leaves
// unanswered run_ids in `outstanding`.
std::vector<EvalResult> run_round(const std::string& command,
                                  const std::vector<const EvalRequest*>& pending,
                                  std::unordered_set<std::string>& outstanding,
                                  std::unordered_set<std::string>& answered,
                                  const EvaluatorOptions& options) {
    ChildProcess child = spawn(command);

    std::string send_buffer;
    for (const auto* request : pending) send_buffer += to_json(*request).dump() + '\n';
    std::size_t sent = 0;

    std::vector<EvalResult> results;
    std::string recv_buffer;
    bool child_eof = false;

    auto handle_line = [&](const std::string& line) {
        if (line.empty()) return;
        EvalResult result;
        try {
            result = result_from_json(nlohmann::json::parse(line));
        } catch (const std::exception& e) {
            throw EvaluatorError(std::string("evaluator: unparseable result line: ") + e.what());
        }
        if (answered.count(result.run_id)) return;  // idempotent dedup
        if (!outstanding.count(result.run_id))
            throw EvaluatorError("evaluator: result for unknown run_id " + result.run_id);
        if (!(result.error >= 0.0 && result.error <= 100.0))
            throw EvaluatorError("evaluator: error outside [0, 100] for run_id " + result.run_id);
        outstanding.erase(result.run_id);
        answered.insert(result.run_id);
        results.push_back(std::move(result));
    };

    while (!outstanding.empty() && !child_eof) {
        pollfd fds[2];
        nfds_t nfds = 0;
        const int read_slot = static_cast<int>(nfds);
        fds[nfds++] = {child.from_child, POLLIN, 0};
        int write_slot = -1;
        if (sent < send_buffer.size()) {
            write_slot = static_cast<int>(nfds);
            fds[nfds++] = {child.to_child, POLLOUT, 0};
        }

        const int ready = poll(fds, nfds, static_cast<int>(options.timeout.count()));
        if (ready < 0) {
            if (errno == EINTR) continue;
            throw EvaluatorError("evaluator: poll() failed: " + std::string(std::strerror(errno)));
        }
        if (ready == 0) break;  // silence exceeded the timeout

        if (write_slot >= 0 && (fds[write_slot].revents & (POLLOUT | POLLERR))) {
            const ssize_t n =
                write(child.to_child, send_buffer.data() + sent, send_buffer.size() - sent);
            if (n > 0) {
                sent += static_cast<std::size_t>(n);
                if (sent == send_buffer.size()) {
                    close(child.to_child);  // signal end of requests
                    child.to_child = -1;
                }
            } else if (n < 0 && errno != EAGAIN && errno != EINTR) {
                // Child stopped reading; keep draining its stdout for results
                // it may already have produced.
                close(child.to_child);
                child.to_child = -1;
                sent = send_buffer.size();
            }
        }

        if (fds[read_slot].revents & (POLLIN | POLLHUP)) {
            char chunk[4096];
            const ssize_t n = read(child.from_child, chunk, sizeof(chunk));
            if (n > 0) {
                recv_buffer.append(chunk, static_cast<std::size_t>(n));
                std::size_t start = 0;
                for (std::size_t nl = recv_buffer.find('\n', start); nl != std::string::npos;
                     nl = recv_buffer.find('\n', start)) {
                    handle_line(recv_buffer.substr(start, nl - start));
                    start = nl + 1;
                }
                recv_buffer.erase(0, start);
            } else if (n == 0) {
                child_eof = true;
            } else if (errno != EAGAIN && errno != EINTR) {
                child_eof = true;
            }
        }
    }
    if (!recv_buffer.empty()) handle_line(recv_buffer);
    return results;
}

}  // namespace

std::vector<EvalResult> run_subprocess_evaluator(const std::string& command,
                                                 std::span<const EvalRequest> requests,
                                                 const EvaluatorOptions& options) {
    std::unordered_set<std::string> outstanding;
    std::unordered_map<std::string, const EvalRequest*> by_id;
    for (const auto& request : requests) {
        if (!outstanding.insert(request.run_id).second)
            throw EvaluatorError("evaluator: duplicate run_id in request batch: " + request.run_id);
        by_id.emplace(request.run_id, &request);
    }

    std::unordered_set<std::string> answered;
    std::vector<EvalResult> results;
    for (int attempt = 0; attempt <= options.retries; ++attempt) {
        std::vector<const EvalRequest*> pending;
        pending.reserve(outstanding.size());
        for (const auto& request : requests)
            if (outstanding.count(request.run_id)) pending.push_back(by_id.at(request.run_id));
        if (pending.empty()) break;

        auto round = run_round(command, pending, outstanding, answered, options);
        results.insert(results.end(), std::make_move_iterator(round.begin()),
                       std::make_move_iterator(round.end()));
        if (outstanding.empty()) break;
    }
    if (!outstanding.empty())
        throw EvaluatorError("evaluator: " + std::to_string(outstanding.size()) +
                             " request(s) left unanswered after " +
                             std::to_string(options.retries + 1) + " attempt(s)");
    return results;
}

void write_requests(const std::filesystem::path& path, std::span<const EvalRequest> requests) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw SchemaError("cannot write request file: " + path.string());
    for (const auto& request : requests) out << to_json(request).dump() << '\n';
    out.flush();
    if (!out) throw SchemaError("short write to request file: " + path.string());
}

std::vector<EvalResult> read_results(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open result file: " + path.string());
    std::vector<EvalResult> results;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            results.push_back(result_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw SchemaError("result file " + path.string() + " line " + std::to_string(line_no) +
                              ": " + e.what());
        }
    }
    return results;
}

}  // namespace nds
