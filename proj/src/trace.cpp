#include "padmm/trace.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace padmm {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_rows(std::ofstream& out, const std::vector<std::string>& headers,
                const std::vector<const std::vector<double>*>& cols, size_t n) {
  for (size_t j = 0; j < headers.size(); ++j)
    out << headers[j] << (j + 1 < headers.size() ? "," : "\n");
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < cols.size(); ++j)
      out << fmt((*cols[j])[i]) << (j + 1 < cols.size() ? "," : "\n");
  }
}

}  // namespace

void write_trace_csv(const std::string& path, const IterationTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file: " + path);
  const size_t n = trace.records();
  std::vector<double> ks(n);
  for (size_t i = 0; i < n; ++i) ks[i] = static_cast<double>(i);

  std::vector<std::string> headers = {"k", "du_G2", "objective", "feasibility",
                                      "kkt_norm2"};
  std::vector<const std::vector<double>*> cols = {&ks, &trace.du_G2, &trace.objective,
                                                  &trace.feasibility, &trace.kkt_norm2};
  if (trace.has_reference()) {
    headers.push_back("dist_ref_G2");
    cols.push_back(&trace.dist_ref_G2);
  }
  headers.push_back("dy_Q2");
  cols.push_back(&trace.dy_Q2);
  write_rows(out, headers, cols, n);
}

void write_reg_trace_csv(const std::string& path, const RegTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file: " + path);
  const size_t n = trace.records();
  std::vector<double> ks(n);
  for (size_t i = 0; i < n; ++i) ks[i] = static_cast<double>(i);
  write_rows(out, {"k", "E", "Phi", "err_x", "err_y", "err_z", "feas_Az"},
             {&ks, &trace.energy, &trace.phi, &trace.err_x, &trace.err_y, &trace.err_z,
              &trace.feas},
             n);
}

bool CsvTable::has(const std::string& name) const {
  for (const auto& h : headers)
    if (h == name) return true;
  return false;
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < headers.size(); ++i)
    if (headers[i] == name) return columns[i];
  throw std::invalid_argument("csv: no column named " + name);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv file: " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line) || line.empty())
    throw std::runtime_error("csv: empty file: " + path);
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.headers.push_back(cell);
  }
  if (table.headers.empty()) throw std::runtime_error("csv: no header row");
  table.columns.resize(table.headers.size());
  size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    size_t j = 0;
    while (std::getline(ss, cell, ',')) {
      if (j >= table.headers.size())
        throw std::runtime_error("csv: too many cells in row " + std::to_string(row));
      try {
        table.columns[j].push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error("csv: bad number '" + cell + "' in row " +
                                 std::to_string(row));
      }
      ++j;
    }
    if (j != table.headers.size())
      throw std::runtime_error("csv: short row " + std::to_string(row));
  }
  return table;
}

}  // namespace padmm
