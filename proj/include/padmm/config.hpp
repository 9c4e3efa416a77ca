#ifndef PADMM_CONFIG_HPP_
#define PADMM_CONFIG_HPP_

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

#include "padmm/illposed.hpp"

namespace padmm {

//! JSON descriptions of maps, functions and metrics. Dense matrices are
//! inline row-major arrays or references to CSV files (resolved against the
//! config file's directory); diagonals are value lists.
nlohmann::json linear_map_to_json(const LinearMap& map);
LinearMap linear_map_from_json(const nlohmann::json& j, const std::string& base_dir = "");

nlohmann::json prox_to_json(const ProxFunction& f);
ProxFunction prox_from_json(const nlohmann::json& j);

nlohmann::json psd_map_to_json(const PsdMap& p);
PsdMap psd_map_from_json(const nlohmann::json& j, const std::string& base_dir = "");

//! A solve-problem config: the problem itself plus the optional initial
//! state and reference KKT point.
struct ProblemConfig {
  SeparableProblem problem;
  PadmmState init;
  std::optional<KktPoint> reference;
};

nlohmann::json problem_config_to_json(const ProblemConfig& config);
ProblemConfig problem_config_from_json(const nlohmann::json& j,
                                       const std::string& base_dir = "");
ProblemConfig load_problem_config(const std::string& path);
void save_problem_config(const std::string& path, const ProblemConfig& config);

//! A regularize-problem config: the inverse problem, exact or noisy data,
//! and optionally the true solution and its source certificate.
struct InverseConfig {
  LinearMap A;
  LinearMap L;
  ProxFunction constraint;
  ProxFunction f;
  double rho1, rho2, rho3;
  PsdMap Q;
  Vector b;                      // exact data; noise is applied by the caller
  std::optional<Vector> b_delta; // overrides generated noise when present
  std::optional<Vector> x_true;
  std::optional<SourceCertificate> certificate;
  RegScheme scheme = RegScheme::kGeneral;

  InverseProblemSpec spec_with(Vector b_delta_vec, double delta) const;
};

InverseConfig load_inverse_config(const std::string& path);
nlohmann::json inverse_config_to_json(const InverseConfig& config);
void save_inverse_config(const std::string& path, const InverseConfig& config);

Matrix read_matrix_csv(const std::string& path);

}  // namespace padmm

#endif  // PADMM_CONFIG_HPP_
