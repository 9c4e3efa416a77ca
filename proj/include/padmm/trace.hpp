#ifndef PADMM_TRACE_HPP_
#define PADMM_TRACE_HPP_

#include <string>
#include <vector>

#include "padmm/problem.hpp"

namespace padmm {

//! Per-iteration scalar records of a proximal ADMM run. Index 0 is the
//! initial state; entries that are undefined there (step-difference
//! quantities) hold NaN. When a reference KKT point is supplied to the run,
//! the distance and lower-bound series are populated as well.
struct IterationTrace {
  std::vector<double> du_G2;        // ||du^k||_G^2
  std::vector<double> objective;    // H(x^k, y^k), +inf outside indicator domains
  std::vector<double> feasibility;  // ||A x^k + B y^k - c||
  std::vector<double> kkt_norm2;    // canonical KKT element squared norm
  std::vector<double> dy_Q2;        // ||dy^k||_Q^2

  // Present only when a reference KKT point was supplied.
  std::vector<double> dist_ref_G2;      // ||u^k - u_ref||_G^2
  std::vector<double> dist_ref;         // ||u^k - u_ref||
  std::vector<double> lower_bound_gap;  // H - H_* + <lam_ref, A x + B y - c>

  // Present only when iterate storage was requested.
  std::vector<Vector> xs, ys, lams;

  bool stores_iterates = false;
  bool converged = false;
  PadmmState final_state;

  size_t records() const { return du_G2.size(); }
  size_t iterations() const { return records() == 0 ? 0 : records() - 1; }
  bool has_reference() const { return !dist_ref_G2.empty(); }
};

//! Per-iteration records of a regularized (inverse-problem) run.
//! Phi requires a source certificate, the err_* series a known solution;
//! missing series are NaN-filled.
struct RegTrace {
  std::vector<double> energy;   // E_k, NaN at k = 0
  std::vector<double> phi;      // Phi_k
  std::vector<double> err_x;    // ||x^k - x_true||
  std::vector<double> err_y;    // ||y^k - L x_true||
  std::vector<double> err_z;    // ||z^k - x_true||
  std::vector<double> feas;     // ||A z^k - b_delta||

  bool has_phi = false;
  bool has_err = false;

  size_t records() const { return energy.size(); }
};

void write_trace_csv(const std::string& path, const IterationTrace& trace);
void write_reg_trace_csv(const std::string& path, const RegTrace& trace);

//! Generic column table, used by the verify command to consume trace CSVs.
struct CsvTable {
  std::vector<std::string> headers;
  std::vector<std::vector<double>> columns;

  bool has(const std::string& name) const;
  const std::vector<double>& column(const std::string& name) const;
  size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

CsvTable read_csv(const std::string& path);

}  // namespace padmm

#endif  // PADMM_TRACE_HPP_
