#include "fsmkit/smt.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace fsmkit {

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content) {
    const char* dir = std::getenv("TMPDIR");
    std::string templ = std::string(dir && *dir ? dir : "/tmp") + "/fsmkit-XXXXXX.smt2";
    std::vector<char> buf(templ.begin(), templ.end());
    buf.push_back('\0');
    int fd = mkstemps(buf.data(), 5);
    if (fd < 0) throw ConfigError(std::string("cannot create a temporary file: ") + std::strerror(errno));
    path = buf.data();
    std::size_t off = 0;
    while (off < content.size()) {
      ssize_t n = ::write(fd, content.data() + off, content.size() - off);
      if (n <= 0) {
        ::close(fd);
        throw ConfigError("cannot write " + path);
      }
      off += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempFile() { ::unlink(path.c_str()); }
};

}  // namespace

std::optional<SolverConfig> solver_from_env(const std::optional<std::string>& fallback) {
  const char* env = std::getenv("FSMKIT_SOLVER");
  SolverConfig cfg;
  if (env && *env) cfg.path = env;
  else if (fallback && !fallback->empty()) cfg.path = *fallback;
  else return std::nullopt;
  if (const char* t = std::getenv("FSMKIT_SOLVER_TIMEOUT_MS"); t && *t) cfg.timeout_ms = std::atoi(t);
  return cfg;
}

SolverResult run_solver(const SolverConfig& solver, const std::string& script_text) {
  TempFile file(script_text);
  int fds[2];
  if (::pipe(fds) != 0) throw ConfigError("cannot create a pipe");
  pid_t pid = ::fork();
  if (pid < 0) throw ConfigError("cannot fork");
  if (pid == 0) {
    ::dup2(fds[1], STDOUT_FILENO);
    ::dup2(fds[1], STDERR_FILENO);
    ::close(fds[0]);
    ::close(fds[1]);
    ::execlp(solver.path.c_str(), solver.path.c_str(), file.path.c_str(), static_cast<char*>(nullptr));
    std::fprintf(stderr, "cannot run %s: %s\n", solver.path.c_str(), std::strerror(errno));
    ::_exit(127);
  }
  ::close(fds[1]);
  std::string out;
  auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(solver.timeout_ms);
  bool timed_out = false;
  char buf[4096];
  while (true) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd p{fds[0], POLLIN, 0};
    int r = ::poll(&p, 1, static_cast<int>(left.count()));
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) {
      timed_out = r == 0;
      break;
    }
    ssize_t n = ::read(fds[0], buf, sizeof buf);
    if (n <= 0) break;
    out.append(buf, static_cast<std::size_t>(n));
  }
  ::close(fds[0]);
  if (timed_out) ::kill(pid, SIGKILL);
  int status = 0;
  ::waitpid(pid, &status, 0);
  if (timed_out) throw ConfigError("solver " + solver.path + " ran past " + std::to_string(solver.timeout_ms) + " ms");
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127) throw ConfigError(out.empty() ? "cannot run " + solver.path : out);

  SolverResult res;
  res.output = out;
  std::istringstream lines(out);
  std::string first;
  while (std::getline(lines, first) && first.find_first_not_of(" \t\r") == std::string::npos) {
  }
  first.erase(first.find_last_not_of(" \t\r") + 1);
  if (first == "sat") res.verdict = SolverVerdict::Sat;
  else if (first == "unsat") res.verdict = SolverVerdict::Unsat;
  else if (first != "unknown") throw ConfigError("unexpected solver output: " + out.substr(0, 200));
  return res;
}

std::vector<SmtModel> all_smt_models(const SolverConfig& solver, const SmtScript& script, std::size_t limit) {
  const std::string base = script.render(false);
  std::string blocks;
  std::vector<SmtModel> out;
  while (out.size() < limit) {
    SolverResult r = run_solver(solver, base + blocks + "(check-sat)\n(get-model)\n");
    if (r.verdict == SolverVerdict::Unsat) break;
    if (r.verdict == SolverVerdict::Unknown) throw ConfigError("solver answered unknown");
    out.push_back(parse_smt_model(r.output, script));
    blocks += blocking_clause(script, out.back()) + "\n";
  }
  return out;
}

}  // namespace fsmkit
