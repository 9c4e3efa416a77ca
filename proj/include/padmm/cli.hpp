#ifndef PADMM_CLI_HPP_
#define PADMM_CLI_HPP_

#include <string>
#include <vector>

namespace padmm::cli {

//! Exit-code contract shared by every subcommand: 0 success, 1 usage or
//! config error, 2 non-convergence or incomplete result, 3 verification
//! failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIncomplete = 2;
inline constexpr int kExitVerifyFailed = 3;

struct SolveArgs {
  std::string config_path;
  std::string trace_path = "trace.csv";
  std::string report_path;  // default: trace path + ".report.json"
  double tol = 1e-8;
  size_t max_iter = 10000;
  bool store_iterates = false;
  std::string ergodic_path;  // needs store_iterates
  size_t ergodic_k = 0;      // 0: the last iterate index
};

struct RegularizeArgs {
  std::string config_path;
  double delta = 0.0;
  double c_stop = 1.0;
  uint64_t seed = 0;
  size_t max_iter = 0;  // used when delta == 0
  std::string trace_path = "reg_trace.csv";
  std::string summary_path;  // default: trace path + ".summary.json"
};

struct GravityArgs {
  double delta = 1e-2;
  uint64_t seed = 0;
  long n = 600;
  double rho1 = 10.0;
  double rho2 = 1.0;
  size_t max_iter = 0;  // 0: the per-level cap
  std::string out_prefix = "gravity";
};

struct Table1Args {
  std::vector<double> levels;  // empty: the default ladder
  bool deep = false;
  uint64_t seed = 0;
  long n = 600;
  std::string out = "table1.csv";
};

struct VerifyArgs {
  std::string trace_path;
  std::string reference_path;  // optional JSON with gamma / H_star / delta / rho1
  std::string report_path;     // optional; report always goes to stdout
};

int cmd_solve(const SolveArgs& args);
int cmd_regularize(const RegularizeArgs& args);
int cmd_gravity(const GravityArgs& args);
int cmd_table1(const Table1Args& args);
int cmd_verify(const VerifyArgs& args);

}  // namespace padmm::cli

#endif  // PADMM_CLI_HPP_
