#include "padmm/config.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace padmm {

namespace {

using nlohmann::json;

std::vector<double> to_std(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Vector to_vec(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("config: expected an array of numbers");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = j[i].get<double>();
  return v;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (fs::path(base_dir) / p).string();
}

bool all_infinite(const Vector& v, double sign) {
  for (Index i = 0; i < v.size(); ++i)
    if (v[i] != sign * std::numeric_limits<double>::infinity()) return false;
  return true;
}

}  // namespace

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix csv: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("matrix csv: ragged rows in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("matrix csv: empty file " + path);
  Matrix m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

json linear_map_to_json(const LinearMap& map) {
  switch (map.kind()) {
    case LinearMap::Kind::kDense: {
      const Matrix& m = map.dense_matrix();
      std::vector<double> data;
      data.reserve(static_cast<size_t>(m.size()));
      for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
      return {{"kind", "dense"}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
    }
    case LinearMap::Kind::kDiagonal:
      return {{"kind", "diagonal"}, {"values", to_std(map.diagonal_values())}};
    case LinearMap::Kind::kScaledIdentity:
      return {{"kind", "scaled_identity"}, {"dim", map.rows()}, {"scale", map.scale()}};
    case LinearMap::Kind::kZero:
      return {{"kind", "zero"}, {"rows", map.rows()}, {"cols", map.cols()}};
    default:
      // Structural maps are materialized on write; configs stay standalone.
      return linear_map_to_json(LinearMap::dense(map.to_dense()));
  }
}

LinearMap linear_map_from_json(const json& j, const std::string& base_dir) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "dense") {
    if (j.contains("csv"))
      return LinearMap::dense(read_matrix_csv(resolve(base_dir, j.at("csv"))));
    return LinearMap::dense_row_major(j.at("rows").get<Index>(), j.at("cols").get<Index>(),
                                      j.at("data").get<std::vector<double>>());
  }
  if (kind == "diagonal") return LinearMap::diagonal(to_vec(j.at("values")));
  if (kind == "scaled_identity")
    return LinearMap::scaled_identity(j.at("dim").get<Index>(), j.at("scale").get<double>());
  if (kind == "identity") return LinearMap::identity(j.at("dim").get<Index>());
  if (kind == "zero")
    return LinearMap::zero(j.at("rows").get<Index>(), j.at("cols").get<Index>());
  if (kind == "sum")
    return LinearMap::sum(linear_map_from_json(j.at("a"), base_dir),
                          linear_map_from_json(j.at("b"), base_dir));
  if (kind == "compose")
    return LinearMap::compose(linear_map_from_json(j.at("outer"), base_dir),
                              linear_map_from_json(j.at("inner"), base_dir));
  throw std::invalid_argument("config: unknown map kind '" + kind + "'");
}

json prox_to_json(const ProxFunction& f) {
  switch (f.kind()) {
    case ProxFunction::Kind::kQuadratic:
      return {{"kind", "quadratic"}, {"center", to_std(f.quadratic_center())}};
    case ProxFunction::Kind::kL1:
      return {{"kind", "l1"}, {"dim", f.dim()}, {"weight", f.l1_weight()}};
    case ProxFunction::Kind::kBox: {
      if (all_infinite(f.box_lower(), -1.0) && all_infinite(f.box_upper(), 1.0))
        return {{"kind", "free"}, {"dim", f.dim()}};
      return {{"kind", "box"},
              {"lower", to_std(f.box_lower())},
              {"upper", to_std(f.box_upper())}};
    }
    case ProxFunction::Kind::kNonneg:
      return {{"kind", "nonneg"}, {"dim", f.dim()}};
    case ProxFunction::Kind::kZero:
      return {{"kind", "zero"}, {"dim", f.dim()}};
    case ProxFunction::Kind::kSumSeparable: {
      json parts = json::array();
      for (const auto& p : f.parts()) parts.push_back(prox_to_json(p));
      return {{"kind", "sum_separable"}, {"parts", parts}};
    }
  }
  throw std::logic_error("unreachable");
}

ProxFunction prox_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "quadratic") return ProxFunction::quadratic(to_vec(j.at("center")));
  if (kind == "l1")
    return ProxFunction::l1(j.at("dim").get<Index>(), j.at("weight").get<double>());
  if (kind == "box")
    return ProxFunction::box(to_vec(j.at("lower")), to_vec(j.at("upper")));
  if (kind == "nonneg") return ProxFunction::nonneg(j.at("dim").get<Index>());
  if (kind == "free") return ProxFunction::free(j.at("dim").get<Index>());
  if (kind == "zero") return ProxFunction::zero(j.at("dim").get<Index>());
  if (kind == "sum_separable") {
    std::vector<ProxFunction> parts;
    for (const auto& p : j.at("parts")) parts.push_back(prox_from_json(p));
    return ProxFunction::sum_separable(std::move(parts));
  }
  throw std::invalid_argument("config: unknown prox kind '" + kind + "'");
}

json psd_map_to_json(const PsdMap& p) {
  switch (p.kind()) {
    case PsdMap::Kind::kZero:
      return {{"kind", "zero"}, {"dim", p.dim()}};
    case PsdMap::Kind::kDiagonal:
      return {{"kind", "diagonal"}, {"values", to_std(p.diagonal_values())}};
    case PsdMap::Kind::kScaledIdentity:
      return {{"kind", "scaled_identity"}, {"dim", p.dim()}, {"scale", p.scale()}};
    case PsdMap::Kind::kGram:
      return {{"kind", "gram"}, {"weight", p.weight()}, {"map", linear_map_to_json(p.base())}};
    case PsdMap::Kind::kShiftedGram:
      return {{"kind", "shifted_gram"},
              {"tau", p.shift()},
              {"weight", p.weight()},
              {"map", linear_map_to_json(p.base())}};
    case PsdMap::Kind::kSum: {
      auto [a, b] = p.summands();
      return {{"kind", "sum"}, {"a", psd_map_to_json(a)}, {"b", psd_map_to_json(b)}};
    }
  }
  throw std::logic_error("unreachable");
}

PsdMap psd_map_from_json(const json& j, const std::string& base_dir) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return PsdMap::zero(j.at("dim").get<Index>());
  if (kind == "diagonal") return PsdMap::diagonal(to_vec(j.at("values")));
  if (kind == "scaled_identity")
    return PsdMap::scaled_identity(j.at("dim").get<Index>(), j.at("scale").get<double>());
  if (kind == "gram")
    return PsdMap::gram(linear_map_from_json(j.at("map"), base_dir),
                        j.at("weight").get<double>());
  if (kind == "shifted_gram")
    return PsdMap::shifted_gram(j.at("tau").get<double>(), j.at("weight").get<double>(),
                                linear_map_from_json(j.at("map"), base_dir));
  if (kind == "sum")
    return PsdMap::sum(psd_map_from_json(j.at("a"), base_dir),
                       psd_map_from_json(j.at("b"), base_dir));
  throw std::invalid_argument("config: unknown psd kind '" + kind + "'");
}

namespace {

SubproblemStrategy strategy_from_string(const std::string& s) {
  if (s == "direct") return SubproblemStrategy::kDirect;
  if (s == "linearized") return SubproblemStrategy::kLinearized;
  throw std::invalid_argument("config: unknown strategy '" + s + "'");
}

std::string strategy_to_string(SubproblemStrategy s) {
  return s == SubproblemStrategy::kDirect ? "direct" : "linearized";
}

//! Builds the proximal metric for one block. "linearized" resolves the
//! (yhc) pattern tau*I - rho*Op^T Op; tau defaults to a 5% margin above
//! rho*||Op||^2.
PsdMap metric_from_json(const json& problem, const char* key, const LinearMap& op,
                        double rho, SubproblemStrategy strategy,
                        const std::string& base_dir) {
  if (!problem.contains(key)) {
    if (strategy == SubproblemStrategy::kDirect) return PsdMap::zero(op.cols());
    const double nrm = op.operator_norm();
    return PsdMap::shifted_gram(1.05 * rho * nrm * nrm + 1e-12, rho, op);
  }
  const json& j = problem.at(key);
  if (j.at("kind").get<std::string>() == "linearized")
    return PsdMap::shifted_gram(j.at("tau").get<double>(), rho, op);
  return psd_map_from_json(j, base_dir);
}

}  // namespace

json problem_config_to_json(const ProblemConfig& config) {
  const SeparableProblem& p = config.problem;
  json j;
  j["problem"] = {{"rho", p.rho()},
                  {"c", to_std(p.c())},
                  {"A", linear_map_to_json(p.A())},
                  {"B", linear_map_to_json(p.B())},
                  {"f", prox_to_json(p.f())},
                  {"g", prox_to_json(p.g())},
                  {"x_strategy", strategy_to_string(p.x_strategy())},
                  {"y_strategy", strategy_to_string(p.y_strategy())},
                  {"P", psd_map_to_json(p.P())},
                  {"Q", psd_map_to_json(p.Q())}};
  j["init"] = {{"x", to_std(config.init.x)},
               {"y", to_std(config.init.y)},
               {"lambda", to_std(config.init.lam)}};
  if (config.reference) {
    j["reference"] = {{"x", to_std(config.reference->x)},
                      {"y", to_std(config.reference->y)},
                      {"lambda", to_std(config.reference->lam)}};
  }
  return j;
}

ProblemConfig problem_config_from_json(const json& j, const std::string& base_dir) {
  const json& pj = j.at("problem");
  const double rho = pj.at("rho").get<double>();
  if (!(rho > 0.0)) throw std::invalid_argument("config: rho must be positive");
  LinearMap a = linear_map_from_json(pj.at("A"), base_dir);
  LinearMap b = linear_map_from_json(pj.at("B"), base_dir);
  const auto xs = strategy_from_string(pj.value("x_strategy", "direct"));
  const auto ys = strategy_from_string(pj.value("y_strategy", "direct"));
  PsdMap P = metric_from_json(pj, "P", a, rho, xs, base_dir);
  PsdMap Q = metric_from_json(pj, "Q", b, rho, ys, base_dir);

  SeparableProblem problem(std::move(a), std::move(b), to_vec(pj.at("c")),
                           prox_from_json(pj.at("f")), prox_from_json(pj.at("g")),
                           std::move(P), std::move(Q), rho, xs, ys);

  PadmmState init = PadmmState::zero(problem);
  if (j.contains("init")) {
    const json& ij = j.at("init");
    init = PadmmState::initial(to_vec(ij.at("x")), to_vec(ij.at("y")),
                               to_vec(ij.at("lambda")));
  }
  std::optional<KktPoint> ref;
  if (j.contains("reference")) {
    const json& rj = j.at("reference");
    ref = KktPoint{to_vec(rj.at("x")), to_vec(rj.at("y")), to_vec(rj.at("lambda"))};
  }
  return ProblemConfig{std::move(problem), std::move(init), std::move(ref)};
}

namespace {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace

ProblemConfig load_problem_config(const std::string& path) {
  return problem_config_from_json(load_json_file(path),
                                  std::filesystem::path(path).parent_path().string());
}

void save_problem_config(const std::string& path, const ProblemConfig& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config: " + path);
  out << problem_config_to_json(config).dump(2) << "\n";
}

InverseProblemSpec InverseConfig::spec_with(Vector b_delta_vec, double delta) const {
  return InverseProblemSpec(A, L, constraint, f, rho1, rho2, rho3, Q,
                            std::move(b_delta_vec), delta);
}

InverseConfig load_inverse_config(const std::string& path) {
  const json j = load_json_file(path);
  const std::string base_dir = std::filesystem::path(path).parent_path().string();
  const json& ij = j.at("inverse_problem");

  LinearMap a = linear_map_from_json(ij.at("A"), base_dir);
  LinearMap l = ij.contains("L") ? linear_map_from_json(ij.at("L"), base_dir)
                                 : LinearMap::identity(a.cols());
  ProxFunction constraint = ij.contains("constraint")
                                ? prox_from_json(ij.at("constraint"))
                                : ProxFunction::free(a.cols());
  InverseConfig config{std::move(a),
                       std::move(l),
                       std::move(constraint),
                       prox_from_json(ij.at("f")),
                       ij.at("rho1").get<double>(),
                       ij.at("rho2").get<double>(),
                       ij.value("rho3", ij.at("rho2").get<double>()),
                       ij.contains("Q") ? psd_map_from_json(ij.at("Q"), base_dir)
                                        : PsdMap::zero(0),
                       Vector(),
                       std::nullopt,
                       std::nullopt,
                       std::nullopt,
                       RegScheme::kGeneral};
  if (!ij.contains("Q")) config.Q = PsdMap::zero(config.A.cols());
  if (ij.contains("b")) config.b = to_vec(ij.at("b"));
  if (ij.contains("b_delta")) config.b_delta = to_vec(ij.at("b_delta"));
  if (config.b.size() == 0 && !config.b_delta)
    throw std::invalid_argument("config: inverse problem needs b or b_delta");
  if (config.b.size() == 0 && config.b_delta) config.b = *config.b_delta;
  if (ij.contains("x_true")) config.x_true = to_vec(ij.at("x_true"));
  if (ij.contains("certificate")) {
    const json& cj = ij.at("certificate");
    config.certificate = SourceCertificate{to_vec(cj.at("lambda")), to_vec(cj.at("mu")),
                                           to_vec(cj.at("nu"))};
  }
  const std::string scheme = ij.value("scheme", "general");
  if (scheme == "simplified")
    config.scheme = RegScheme::kSimplified;
  else if (scheme != "general")
    throw std::invalid_argument("config: unknown scheme '" + scheme + "'");
  return config;
}

json inverse_config_to_json(const InverseConfig& config) {
  json ij;
  ij["A"] = linear_map_to_json(config.A);
  ij["L"] = linear_map_to_json(config.L);
  ij["constraint"] = prox_to_json(config.constraint);
  ij["f"] = prox_to_json(config.f);
  ij["rho1"] = config.rho1;
  ij["rho2"] = config.rho2;
  ij["rho3"] = config.rho3;
  ij["Q"] = psd_map_to_json(config.Q);
  ij["b"] = to_std(config.b);
  if (config.b_delta) ij["b_delta"] = to_std(*config.b_delta);
  if (config.x_true) ij["x_true"] = to_std(*config.x_true);
  if (config.certificate) {
    ij["certificate"] = {{"lambda", to_std(config.certificate->lam_dag)},
                         {"mu", to_std(config.certificate->mu_dag)},
                         {"nu", to_std(config.certificate->nu_dag)}};
  }
  ij["scheme"] = config.scheme == RegScheme::kSimplified ? "simplified" : "general";
  return json{{"inverse_problem", ij}};
}

void save_inverse_config(const std::string& path, const InverseConfig& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config: " + path);
  out << inverse_config_to_json(config).dump(2) << "\n";
}

}  // namespace padmm
