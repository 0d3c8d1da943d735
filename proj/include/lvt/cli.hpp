#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lvt/potentials.hpp"
#include "lvt/render.hpp"

namespace lvt {

// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,  // a verification clause or certificate failed
  kExitUsage = 2,   // bad arguments
  kExitError = 3,   // construction, IO or integrity error
};

struct RunConfig {
  std::string command;
  Integer max_entry = 0;              // 0 when not given
  std::vector<MarkovTriple> triples;  // explicit triples, if any
  std::vector<std::size_t> dims{2};
  std::optional<std::filesystem::path> out;  // --out, or $LVT_OUT
  unsigned workers = 1;
  std::string format = "json";  // or "table"
  RenderOptions render;
  bool timing = false;  // include wall-clock timings in verify output

  // Explicit triples, or all triples up to max_entry, in sorted-triple order.
  std::vector<MarkovTriple> selected_triples() const;
};

// Runs f(0), ..., f(count - 1) on up to `workers` threads. The first
// exception thrown by a task is rethrown after all threads have joined.
void run_parallel(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& f);

// Entry point behind the executable: parses argv, dispatches, and returns
// the exit code. Diagnostics go to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_tree(const RunConfig& cfg, std::ostream& out);
int cmd_potential(const RunConfig& cfg, std::ostream& out);
int cmd_newton(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_distinguish(const RunConfig& cfg, std::ostream& out);
int cmd_render(const RunConfig& cfg, std::ostream& out);

}  // namespace lvt
