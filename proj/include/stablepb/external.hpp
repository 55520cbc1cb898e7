#pragma once

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "stablepb/solver.hpp"

namespace stablepb {

struct BackendConfig {
    enum class Kind { Builtin, External };
    Kind kind = Kind::Builtin;
    std::string command;  // template with an {opb} placeholder
    double timeout_s = 0;  // 0 = no limit
};

namespace detail {

inline std::string substitute_placeholder(const std::string& tmpl, const std::string& path) {
    std::string out;
    std::size_t pos = 0;
    for (;;) {
        std::size_t hit = tmpl.find("{opb}", pos);
        if (hit == std::string::npos) {
            out += tmpl.substr(pos);
            return out;
        }
        out += tmpl.substr(pos, hit - pos);
        out += path;
        pos = hit + 5;
    }
}

inline bool run_with_timeout(const std::string& command, const std::string& out_path,
                             double timeout_s, std::string& error) {
    pid_t pid = fork();
    if (pid < 0) {
        error = "fork failed";
        return false;
    }
    if (pid == 0) {
        setpgid(0, 0);
        if (!std::freopen(out_path.c_str(), "w", stdout))
            _exit(127);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    const auto start = std::chrono::steady_clock::now();
    for (;;) {
        int status = 0;
        pid_t r = waitpid(pid, &status, WNOHANG);
        if (r == pid) {
            if (WIFEXITED(status) && WEXITSTATUS(status) == 127) {
                error = "command could not be executed";
                return false;
            }
            return true;
        }
        if (r < 0) {
            error = "waitpid failed";
            return false;
        }
        if (timeout_s > 0) {
            std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
            if (el.count() > timeout_s) {
                kill(-pid, SIGKILL);  // the whole process group
                kill(pid, SIGKILL);
                waitpid(pid, &status, 0);
                error = "timeout";
                return false;
            }
        }
        usleep(2000);
    }
}

}  // namespace detail

/// Run an external PB solver on the theory: write OPB to a temp file,
/// substitute it into the command template, and parse PB-competition output
/// (an `s` status line plus `v` literal lines; unmentioned variables are 0).
inline SolveResult solve_external(const PBTheory& t, const BackendConfig& cfg) {
    SolveResult res;
    if (cfg.kind != BackendConfig::Kind::External || cfg.command.empty()) {
        res.diagnostic = "external backend requires a command template";
        return res;
    }
    char opb_path[] = "/tmp/stablepb_XXXXXX";
    int fd = mkstemp(opb_path);
    if (fd < 0) {
        res.diagnostic = "could not create temp file";
        return res;
    }
    {
        std::string text = emit_opb(t);
        ssize_t ignored = write(fd, text.data(), text.size());
        (void)ignored;
        close(fd);
    }
    std::string out_path = std::string(opb_path) + ".out";
    std::string command = detail::substitute_placeholder(cfg.command, opb_path);

    auto start = std::chrono::steady_clock::now();
    std::string error;
    bool ran = detail::run_with_timeout(command, out_path, cfg.timeout_s, error);
    std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
    res.stats.seconds = el.count();

    if (ran) {
        std::ifstream in(out_path);
        std::string line;
        bool have_status = false;
        std::vector<std::uint8_t> assignment(static_cast<std::size_t>(t.num_vars()), 0);
        while (std::getline(in, line)) {
            if (line.rfind("s ", 0) == 0) {
                std::string word = line.substr(2);
                while (!word.empty() && (word.back() == '\r' || word.back() == ' '))
                    word.pop_back();
                if (word == "SATISFIABLE")
                    res.status = SolveStatus::Sat;
                else if (word == "UNSATISFIABLE")
                    res.status = SolveStatus::Unsat;
                else
                    res.status = SolveStatus::Unknown;
                have_status = true;
            } else if (line.rfind("v", 0) == 0 && (line.size() == 1 || line[1] == ' ')) {
                std::istringstream ls(line.substr(1));
                std::string lit;
                while (ls >> lit) {
                    bool neg = !lit.empty() && lit[0] == '-';
                    std::string name = neg ? lit.substr(1) : lit;
                    if (name.size() < 2 || name[0] != 'x')
                        continue;
                    int var = std::atoi(name.c_str() + 1) - 1;
                    if (var >= 0 && var < t.num_vars())
                        assignment[static_cast<std::size_t>(var)] = neg ? 0 : 1;
                }
            }
        }
        if (!have_status) {
            res.status = SolveStatus::Unknown;
            res.diagnostic = "no status line in solver output";
        } else if (res.status == SolveStatus::Sat) {
            res.assignment = std::move(assignment);
        }
    } else {
        res.status = SolveStatus::Unknown;
        res.diagnostic = error;
    }
    std::remove(opb_path);
    std::remove(out_path.c_str());
    return res;
}

}  // namespace stablepb
