#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "hflmc/checker.hpp"
#include "hflmc/errors.hpp"
#include "hflmc/selftest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hflmc::Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json report_json(const hflmc::RunReport& r) {
  return json{{"verdict", hflmc::verdict_str(r.verdict)},
              {"order", r.order},
              {"num_eqs", r.num_eqs},
              {"hes_size", r.hes_size},
              {"lts_states", r.lts_states},
              {"alternations", r.alternations},
              {"gamma_size", r.gamma_size},
              {"game_positions", r.game_positions},
              {"game_edges", r.game_edges},
              {"iterations", r.iterations},
              {"parse_ms", r.parse_ms},
              {"kind_ms", r.kind_ms},
              {"flow_ms", r.flow_ms},
              {"sat_ms", r.sat_ms},
              {"game_ms", r.game_ms},
              {"solve_ms", r.solve_ms},
              {"total_ms", r.total_ms}};
}

struct CheckFlags {
  std::string hes_path, lts_path, dump_game;
  bool naive = false, no_call_graph = false, no_subsume = false;
  bool trace = false, dump_types = false, dump_flow = false, stats = false;
};

int cmd_check(const CheckFlags& f) {
  try {
    hflmc::CheckOptions opts;
    opts.naive_oracle = f.naive;
    opts.saturation.restrict_gamma0 = !f.no_call_graph;
    opts.saturation.subsume_prune = !f.no_subsume;
    opts.saturation.trace = f.trace;
    auto r = hflmc::check_text(slurp(f.hes_path), slurp(f.lts_path), opts);

    if (f.dump_flow && r.flow) std::cout << hflmc::dump_flow(*r.flow, r.hes);
    if (f.trace && r.saturation) std::cout << hflmc::trace_string(*r.saturation, r.lts, r.hes);
    if (f.dump_types && r.saturation) std::cout << hflmc::dump_types(*r.saturation, r.lts, r.hes);
    if (!f.dump_game.empty() && r.game) {
      std::ofstream out(f.dump_game);
      if (!out) throw hflmc::Error("cannot write " + f.dump_game);
      out << hflmc::to_pgsolver(r.game->arena);
    }
    std::cout << hflmc::verdict_str(r.verdict) << std::endl;
    if (f.stats) std::cerr << report_json(r.report).dump() << std::endl;
    return r.verdict == hflmc::Verdict::Valid ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
}

const char* kCsvHeader =
    "name,status,verdict,order,num_eqs,hes_size,lts_states,alternations,gamma_size,game_positions,game_edges,"
    "iterations,parse_ms,kind_ms,flow_ms,sat_ms,game_ms,solve_ms,total_ms";

std::string csv_row(const std::string& name, const std::string& status, const json& j) {
  std::ostringstream os;
  os << name << ',' << status;
  static const char* fields[] = {"verdict",        "order",      "num_eqs",    "hes_size", "lts_states",
                                 "alternations",   "gamma_size", "game_positions", "game_edges", "iterations",
                                 "parse_ms",       "kind_ms",    "flow_ms",    "sat_ms",   "game_ms",
                                 "solve_ms",       "total_ms"};
  for (const char* k : fields) {
    os << ',';
    if (!j.contains(k)) continue;
    if (j[k].is_string())
      os << j[k].get<std::string>();
    else
      os << j[k].dump();
  }
  return os.str();
}

struct Job {
  std::string name;
  pid_t pid = -1;
  int fd = -1;
  std::string output;
  std::chrono::steady_clock::time_point start;
  std::string status;
};

void start_job(Job& job, const fs::path& dir) {
  int pipefd[2];
  if (pipe(pipefd) != 0) throw hflmc::Error("pipe failed");
  job.start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) throw hflmc::Error("fork failed");
  if (pid == 0) {
    close(pipefd[0]);
    std::string out;
    int code = 0;
    try {
      auto r = hflmc::check_text(slurp((dir / (job.name + ".hes")).string()), slurp((dir / (job.name + ".lts")).string()));
      out = report_json(r.report).dump();
    } catch (const std::exception& e) {
      out = json{{"error", e.what()}}.dump();
      code = 2;
    }
    out += "\n";
    std::size_t off = 0;
    while (off < out.size()) {
      ssize_t n = write(pipefd[1], out.data() + off, out.size() - off);
      if (n <= 0) break;
      off += static_cast<std::size_t>(n);
    }
    _exit(code);
  }
  close(pipefd[1]);
  job.pid = pid;
  job.fd = pipefd[0];
}

int cmd_bench(const std::string& dir, double timeout, const std::string& csv_path, int jobs) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    std::cerr << "error: cannot read directory " << dir << std::endl;
    return 2;
  }
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (e.path().extension() != ".hes") continue;
    fs::path lts = e.path();
    lts.replace_extension(".lts");
    if (fs::exists(lts)) names.push_back(e.path().stem().string());
  }
  if (ec) {
    std::cerr << "error: cannot read directory " << dir << ": " << ec.message() << std::endl;
    return 2;
  }
  std::sort(names.begin(), names.end());

  std::vector<Job> all(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) all[i].name = names[i];
  std::size_t next = 0;
  std::vector<std::size_t> running;
  jobs = std::max(1, jobs);

  while (next < all.size() || !running.empty()) {
    while (next < all.size() && static_cast<int>(running.size()) < jobs) {
      start_job(all[next], dir);
      running.push_back(next++);
    }
    std::vector<pollfd> fds;
    for (auto i : running) fds.push_back(pollfd{all[i].fd, POLLIN, 0});
    poll(fds.data(), fds.size(), 50);
    auto now = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < running.size();) {
      Job& job = all[running[k]];
      bool done = false;
      if (fds[k].revents & (POLLIN | POLLHUP | POLLERR)) {
        char buf[4096];
        ssize_t n = read(job.fd, buf, sizeof buf);
        if (n > 0) {
          job.output.append(buf, static_cast<std::size_t>(n));
        } else {
          int st = 0;
          waitpid(job.pid, &st, 0);
          job.status = WIFEXITED(st) && WEXITSTATUS(st) == 0 ? "ok" : "error";
          done = true;
        }
      }
      if (!done && std::chrono::duration<double>(now - job.start).count() > timeout) {
        kill(job.pid, SIGKILL);
        waitpid(job.pid, nullptr, 0);
        job.status = "timeout";
        done = true;
      }
      if (done) {
        close(job.fd);
        running.erase(running.begin() + static_cast<std::ptrdiff_t>(k));
        fds.erase(fds.begin() + static_cast<std::ptrdiff_t>(k));
      } else {
        ++k;
      }
    }
  }

  std::ostringstream csv;
  csv << kCsvHeader << "\n";
  bool any_error = false;
  for (const auto& job : all) {
    json j = json::object();
    if (job.status == "ok") {
      j = json::parse(job.output, nullptr, false);
      if (j.is_discarded()) j = json::object();
    } else if (job.status == "error") {
      any_error = true;
      auto e = json::parse(job.output, nullptr, false);
      if (!e.is_discarded() && e.contains("error"))
        std::cerr << job.name << ": " << e["error"].get<std::string>() << std::endl;
    }
    csv << csv_row(job.name, job.status, j) << "\n";
  }
  if (csv_path.empty() || csv_path == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(csv_path);
    if (!out) {
      std::cerr << "error: cannot write " << csv_path << std::endl;
      return 2;
    }
    out << csv.str();
  }
  return any_error ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hflmc: model checker for higher-order modal fixpoint logic"};
  app.require_subcommand(1);

  CheckFlags cf;
  auto* check = app.add_subcommand("check", "Decide whether an LTS satisfies an HES");
  check->add_option("hes", cf.hes_path, "HES file")->required();
  check->add_option("lts", cf.lts_path, "LTS file")->required();
  check->add_flag("--naive-oracle", cf.naive, "Decide with the semantic oracle");
  check->add_flag("--no-call-graph-opt", cf.no_call_graph, "Use every nu-equation in the initial environment");
  check->add_flag("--no-subsume", cf.no_subsume, "Keep bindings dominated by stronger ones");
  check->add_flag("--trace", cf.trace, "Print the saturation log");
  check->add_flag("--dump-types", cf.dump_types, "Print the final type environment");
  check->add_flag("--dump-flow", cf.dump_flow, "Print the flow map");
  check->add_option("--dump-game", cf.dump_game, "Write the subgame in pgsolver format");
  check->add_flag("--stats", cf.stats, "Print a JSON run report on stderr");

  std::string dir, csv = "-";
  double timeout = 10;
  int jobs = 1;
  auto* bench = app.add_subcommand("bench", "Check every NAME.hes/NAME.lts pair in a directory");
  bench->add_option("dir", dir, "Directory")->required();
  bench->add_option("--timeout", timeout, "Per-instance wall-clock limit in seconds");
  bench->add_option("--csv", csv, "CSV output path ('-' for stdout)");
  bench->add_option("--jobs", jobs, "Parallel workers");

  std::string mutate;
  auto* self = app.add_subcommand("selftest", "Run the embedded golden and oracle suites");
  self->add_option("--mutate", mutate, "Inject a fault (priorities)")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*check) return cmd_check(cf);
  if (*bench) return cmd_bench(dir, timeout, csv, jobs);
  if (*self) {
    hflmc::SelftestHooks hooks;
    if (mutate == "priorities") hooks.priorities = [](const hflmc::Hes& h) { return std::vector<int>(h.size(), 0); };
    return hflmc::run_selftest(std::cout, hooks) ? 0 : 1;
  }
  return 2;
}
