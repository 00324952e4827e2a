#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <sys/types.h>

namespace seglex {

// One external solver child speaking SMT-LIB2 over stdin/stdout.
class SolverProcess {
  public:
    explicit SolverProcess(const std::vector<std::string>& argv);
    ~SolverProcess();
    SolverProcess(const SolverProcess&) = delete;
    SolverProcess& operator=(const SolverProcess&) = delete;

    void writeAll(const std::string& s);
    // One line without the newline; nullopt on deadline expiry; throws
    // SolverCrashed on EOF or read error.
    std::optional<std::string> readLine(std::chrono::steady_clock::time_point deadline);
    void kill();
    bool alive() const { return pid_ > 0 && !dead_; }

  private:
    pid_t pid_{-1};
    int inFd_{-1};  // child's stdin (we write)
    int outFd_{-1}; // child's stdout (we read)
    bool dead_{false};
    std::string buf_;
};

} // namespace seglex
