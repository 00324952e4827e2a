#include "SolverProcess.h"

#include <csignal>
#include <cstring>
#include <mutex>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "../lia/Errors.h"

namespace seglex {

namespace {
std::once_flag sigpipeOnce;
void ignoreSigpipe() {
    std::call_once(sigpipeOnce, [] { ::signal(SIGPIPE, SIG_IGN); });
}
} // namespace

SolverProcess::SolverProcess(const std::vector<std::string>& argv) {
    if (argv.empty()) throw SolverCrashed("empty solver command");
    ignoreSigpipe();

    int toChild[2], fromChild[2];
    if (pipe(toChild) != 0 || pipe(fromChild) != 0)
        throw SolverCrashed("pipe failed");

    pid_ = fork();
    if (pid_ < 0) throw SolverCrashed("fork failed");
    if (pid_ == 0) {
        dup2(toChild[0], STDIN_FILENO);
        dup2(fromChild[1], STDOUT_FILENO);
        close(toChild[0]);
        close(toChild[1]);
        close(fromChild[0]);
        close(fromChild[1]);
        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        execvp(cargv[0], cargv.data());
        _exit(127);
    }
    close(toChild[0]);
    close(fromChild[1]);
    inFd_ = toChild[1];
    outFd_ = fromChild[0];
}

SolverProcess::~SolverProcess() {
    kill();
    if (inFd_ >= 0) close(inFd_);
    if (outFd_ >= 0) close(outFd_);
    if (pid_ > 0) waitpid(pid_, nullptr, 0);
}

void SolverProcess::writeAll(const std::string& s) {
    if (getenv("SEGLEX_SMT_TRACE")) fprintf(stderr, "--> %s", s.c_str());
    size_t off = 0;
    while (off < s.size()) {
        ssize_t n = write(inFd_, s.data() + off, s.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            dead_ = true;
            throw SolverCrashed(std::string("solver write failed: ") + strerror(errno));
        }
        off += static_cast<size_t>(n);
    }
}

std::optional<std::string> SolverProcess::readLine(std::chrono::steady_clock::time_point deadline) {
    using namespace std::chrono;
    for (;;) {
        auto nl = buf_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buf_.substr(0, nl);
            buf_.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return line;
        }
        auto left = duration_cast<milliseconds>(deadline - steady_clock::now()).count();
        if (left <= 0) return std::nullopt;
        struct pollfd pfd{outFd_, POLLIN, 0};
        int pr = poll(&pfd, 1, static_cast<int>(std::min<long long>(left, 1000)));
        if (pr < 0) {
            if (errno == EINTR) continue;
            dead_ = true;
            throw SolverCrashed("solver poll failed");
        }
        if (pr == 0) continue;
        char chunk[4096];
        ssize_t n = read(outFd_, chunk, sizeof chunk);
        if (n < 0) {
            if (errno == EINTR) continue;
            dead_ = true;
            throw SolverCrashed("solver read failed");
        }
        if (n == 0) {
            dead_ = true;
            throw SolverCrashed("solver exited");
        }
        buf_.append(chunk, static_cast<size_t>(n));
    }
}

void SolverProcess::kill() {
    if (pid_ > 0 && !dead_) {
        ::kill(pid_, SIGKILL);
        dead_ = true;
    }
}

} // namespace seglex
