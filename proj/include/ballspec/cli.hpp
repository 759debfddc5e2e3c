#ifndef BALLSPEC_CLI_HPP
#define BALLSPEC_CLI_HPP

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballspec::cli {

enum class Command { check, project, solve_helmholtz, solve_biharmonic, convergence };

std::string command_name(Command c);

struct RunConfig {
  Command command = Command::check;
  int d = 0;  // 0: taken from the example (manufactured defaults to 2)
  int n = 8;
  std::vector<int> n_list;
  std::optional<int> grid_n;

  // exam1a | exam1b | exam2 | manufactured
  std::string example;
  std::string problem;  // convergence with manufactured: helmholtz | biharmonic
  int degree = 6;      // manufactured solution degree
  unsigned seed = 1;

  std::optional<double> lambda, eta, lambda1, lambda0;

  // project
  std::string family = "classical";  // classical | sobolev
  double mu = 0.0;
  int s = 1;
  std::vector<double> lambdas;  // Sobolev lambda_k; empty means all d
  bool cutoff = false;

  // check
  int s_max = 4;
  int nmax = 10;

  std::string out_dir = ".";
  std::string prefix;  // file stem; defaults to the command name
  bool timing = false;  // wall_ms is 0 unless set, so CSVs stay byte-stable
  bool field = false;   // solve: also write the sampled solution
};

/// Invalid configuration; code is a short machine-readable token.
struct ConfigError : std::runtime_error {
  std::string code;
  ConfigError(std::string c, const std::string& what) : std::runtime_error(what), code(std::move(c)) {}
};

/// "3..10", "3..10:2" or "4,6,8".
std::vector<int> parse_n_list(const std::string& text);

/// Parses argv, including an optional --config TOML file.  Returns nullopt
/// when help was printed.  Throws ConfigError.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Runs the command and writes its artifacts.  Returns the exit status:
/// 0 when every internal check passed, 1 otherwise.  Error lines go to err.
int run(const RunConfig& cfg, std::ostream& log, std::ostream& err);

struct Series {
  std::string name;
  std::vector<double> x, y;
  bool dashed = false;
};

/// Line chart; with log_y the vertical axis is log10 y (values <= 1e-17 are
/// drawn at 1e-17).
void write_svg_chart(std::ostream& os, const std::string& title, const std::string& xlabel,
                     const std::string& ylabel, const std::vector<Series>& series, bool log_y);

/// Full entry point used by the executable.
int main_entry(int argc, const char* const* argv);

}  // namespace ballspec::cli

#endif  // BALLSPEC_CLI_HPP
