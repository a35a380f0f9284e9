// scenario.cpp — scenario validation, population oracles, sample generation, JSON config.
#include "ecdm/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "ecdm/detail/scenario_json.hpp"
#include "ecdm/errors.hpp"
#include "ecdm/normal.hpp"

namespace ecdm {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_scenario(const SimScenario& s) {
  if (s.cov.p1 < 1 || s.cov.p2 < 1) {
    throw ArgumentError("scenario: block dimensions must be at least 1");
  }
  if (s.coupling == Coupling::shared_coordinate_case_b &&
      (s.cov.p1 < 3 || s.cov.p2 < 3)) {
    throw ArgumentError(
        "scenario: shared_coordinate_case_b couples the third eigen-coordinate, "
        "so both blocks need p_i >= 3");
  }
  if (s.n && *s.n < 4) {
    throw ArgumentError("scenario: explicit n must be at least 4");
  }
  if (s.replications < 1) {
    throw ArgumentError("scenario: replications must be at least 1");
  }
  if (!(s.alpha > 0.0 && s.alpha < 0.5)) {
    throw ArgumentError("scenario: alpha must lie in (0, 0.5)");
  }
}

// Deterministic eigenvector orientation: largest-magnitude entry positive.
void fix_signs(Matrix& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index idx = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&idx);
    if (vectors(idx, j) < 0.0) vectors.col(j) = -vectors.col(j);
  }
}

Vector clamped_sqrt(const Vector& values, const char* which) {
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  Vector root(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] < -1e-8 * scale) {
      throw Error(std::string("scenario: ") + which +
                  " is not positive semidefinite");
    }
    root[i] = std::sqrt(std::max(values[i], 0.0));
  }
  return root;
}

}  // namespace

const char* coupling_name(Coupling c) {
  switch (c) {
    case Coupling::null_case_a:
      return "null_case_a";
    case Coupling::shared_coordinate_case_b:
      return "shared_coordinate_case_b";
  }
  throw ArgumentError("unknown coupling value");
}

const char* family_name(WFamily f) {
  switch (f) {
    case WFamily::gaussian_I:
      return "gaussian_I";
    case WFamily::chisq_II:
      return "chisq_II";
    case WFamily::t10_III:
      return "t10_III";
  }
  throw ArgumentError("unknown distribution value");
}

int scenario_n(const SimScenario& scenario) {
  if (scenario.n) return *scenario.n;
  const double root = std::sqrt(static_cast<double>(scenario.cov.p1));
  return 4 * static_cast<int>(std::ceil(root));
}

double OracleQuantities::k_pop() const {
  if (!k_opt) {
    throw UnsupportedAssumption(
        "K is undefined for this scenario: the latent coordinates are not "
        "independent with finite known fourth moment");
  }
  return *k_opt;
}

double OracleQuantities::l_pop() const {
  if (!l_opt) {
    throw UnsupportedAssumption(
        "L is undefined for this scenario: the latent coordinates are not "
        "independent with finite known fourth moment");
  }
  return *l_opt;
}

PreparedScenario prepare_scenario(const SimScenario& scenario) {
  check_scenario(scenario);

  PreparedScenario prep;
  prep.scenario = scenario;
  prep.n = scenario_n(scenario);

  auto sigmas = build_sigma(scenario.cov);
  prep.sigma1 = std::move(sigmas.first);
  prep.sigma2 = std::move(sigmas.second);

  SymEig eig1 = sym_eig(prep.sigma1);
  SymEig eig2 = sym_eig(prep.sigma2);
  fix_signs(eig1.vectors);
  fix_signs(eig2.vectors);
  prep.lambda1 = std::move(eig1.values);
  prep.lambda2 = std::move(eig2.values);

  const Vector root1 = clamped_sqrt(prep.lambda1, "sigma1");
  const Vector root2 = clamped_sqrt(prep.lambda2, "sigma2");
  prep.gamma1 = eig1.vectors * root1.asDiagonal();
  prep.gamma2 = eig2.vectors * root2.asDiagonal();

  const bool coupled = scenario.coupling == Coupling::shared_coordinate_case_b;
  if (coupled) {
    if (!(prep.lambda1[2] > 0.0 && prep.lambda2[2] > 0.0)) {
      throw Error("scenario: third eigenvalues must be positive to share a coordinate");
    }
    prep.sigma_star = prep.gamma1.col(2) * prep.gamma2.col(2).transpose();
  } else {
    prep.sigma_star = Matrix::Zero(scenario.cov.p1, scenario.cov.p2);
  }

  OracleQuantities& o = prep.oracle;
  o.trace_sq1 = prep.sigma1.squaredNorm();
  o.trace_sq2 = prep.sigma2.squaredNorm();
  o.psi = o.trace_sq1 * o.trace_sq2;
  o.delta = coupled ? prep.lambda1[2] * prep.lambda2[2] : 0.0;
  const double n = static_cast<double>(prep.n);
  o.delta_scale_pop = std::sqrt(2.0 * o.psi) / n;
  o.rho_pop = o.delta / std::sqrt(o.psi);
  o.a3_ratio_1 =
      prep.lambda1.array().pow(4).sum() / (o.trace_sq1 * o.trace_sq1);
  o.a3_ratio_2 =
      prep.lambda2.array().pow(4).sum() / (o.trace_sq2 * o.trace_sq2);
  if (o.delta > 0.0) {
    o.a45_ratio = o.psi / (n * n * o.delta * o.delta);
  }

  if (scenario.distribution != WFamily::t10_III) {
    // Fourth-moment constant M = Var(w²): 2 for the normal, 14 for (χ²₁−1)/√2.
    const double m = scenario.distribution == WFamily::gaussian_I ? 2.0 : 14.0;
    double quad = 0.0;   // tr(Σ₁ Σ* Σ₂ Σ*ᵀ)
    double quart = 0.0;  // tr((Σ*Σ*ᵀ)²)
    double shared = 0.0; // Σ_j (M−2)(γ₁ⱼᵀ Σ* γ₂ⱼ)² over shared coordinates
    if (coupled) {
      quad = (prep.sigma1 * prep.sigma_star * prep.sigma2)
                 .cwiseProduct(prep.sigma_star)
                 .sum();
      quart = (prep.sigma_star.transpose() * prep.sigma_star).squaredNorm();
      const double g =
          prep.gamma1.col(2).dot(prep.sigma_star * prep.gamma2.col(2));
      shared = (m - 2.0) * g * g;
    }
    const double k_sq = 4.0 * (quad + quart + shared) / n +
                        2.0 * (o.psi + o.delta * o.delta) / (n * n);
    const double k = std::sqrt(k_sq);
    o.k_opt = k;
    const double z = normal_quantile(scenario.alpha);
    o.l_opt = normal_cdf(o.delta / k - z * o.delta_scale_pop / k);
  }

  return prep;
}

OracleQuantities oracle_quantities(const SimScenario& scenario) {
  return prepare_scenario(scenario).oracle;
}

PairedSample draw_sample(const PreparedScenario& prep, Philox4x32& rng) {
  const int n = prep.n;
  const int p1 = prep.scenario.cov.p1;
  const int p2 = prep.scenario.cov.p2;
  const bool coupled =
      prep.scenario.coupling == Coupling::shared_coordinate_case_b;
  const WFamily family = prep.scenario.distribution;

  Matrix w1(n, p1);
  Matrix w2(n, p2);
  for (int obs = 0; obs < n; ++obs) {
    double scale = 1.0;
    if (family == WFamily::t10_III) {
      // t₁₀ coordinates: one χ²₁₀ mixing draw shared by the whole observation,
      // standardized to unit variance by √((ν−2)/u).
      scale = std::sqrt(8.0 / rng.next_chi_squared(10));
    }
    auto coordinate = [&]() {
      const double g = rng.next_gaussian();
      if (family == WFamily::chisq_II) return (g * g - 1.0) * kInvSqrt2;
      return scale * g;
    };
    for (int r = 0; r < p1; ++r) w1(obs, r) = coordinate();
    for (int r = 0; r < p2; ++r) {
      if (coupled && r == 2) {
        w2(obs, r) = w1(obs, 2);
        continue;
      }
      w2(obs, r) = coordinate();
    }
  }

  Matrix data(n, p1 + p2);
  data.leftCols(p1).noalias() = w1 * prep.gamma1.transpose();
  data.rightCols(p2).noalias() = w2 * prep.gamma2.transpose();
  return PairedSample(std::move(data), p1);
}

namespace detail {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& what) {
  throw ArgumentError(context + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& context) {
  auto it = j.find(key);
  if (it == j.end()) fail(context, std::string("missing field '") + key + "'");
  return *it;
}

double number_field(const json& j, const char* key, const std::string& context) {
  const json& v = require(j, key, context);
  if (!v.is_number()) fail(context, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

int int_field(const json& j, const char* key, const std::string& context) {
  const json& v = require(j, key, context);
  if (!v.is_number_integer()) {
    fail(context, std::string("field '") + key + "' must be an integer");
  }
  return v.get<int>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& context) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(context, "unknown field '" + it.key() + "'");
  }
}

Coupling parse_coupling(const std::string& name, const std::string& context) {
  if (name == "null_case_a") return Coupling::null_case_a;
  if (name == "shared_coordinate_case_b") return Coupling::shared_coordinate_case_b;
  fail(context, "field 'coupling' must be 'null_case_a' or 'shared_coordinate_case_b', got '" +
                    name + "'");
}

WFamily parse_family(const std::string& name, const std::string& context) {
  if (name == "gaussian_I") return WFamily::gaussian_I;
  if (name == "chisq_II") return WFamily::chisq_II;
  if (name == "t10_III") return WFamily::t10_III;
  fail(context,
       "field 'distribution' must be 'gaussian_I', 'chisq_II' or 't10_III', got '" +
           name + "'");
}

}  // namespace

json scenario_to_json(const SimScenario& s) {
  json cov{{"p1", s.cov.p1},
           {"p2", s.cov.p2},
           {"base1", s.cov.base1},
           {"base2", s.cov.base2},
           {"scaled", s.cov.scaled}};
  json j{{"cov", std::move(cov)},
         {"coupling", coupling_name(s.coupling)},
         {"distribution", family_name(s.distribution)},
         {"replications", s.replications},
         {"seed", s.seed},
         {"alpha", s.alpha}};
  if (s.n) j["n"] = *s.n;
  if (!s.label.empty()) j["label"] = s.label;
  return j;
}

SimScenario scenario_from_json(const json& j, const std::string& context) {
  if (!j.is_object()) fail(context, "config root must be a JSON object");
  check_keys(j,
             {"cov", "coupling", "distribution", "n", "replications", "seed",
              "alpha", "label"},
             context);

  SimScenario s;

  const json& cov = require(j, "cov", context);
  if (!cov.is_object()) fail(context, "field 'cov' must be an object");
  check_keys(cov, {"p1", "p2", "base1", "base2", "scaled"}, context + ".cov");
  s.cov.p1 = int_field(cov, "p1", context + ".cov");
  s.cov.p2 = int_field(cov, "p2", context + ".cov");
  if (cov.contains("base1")) s.cov.base1 = number_field(cov, "base1", context + ".cov");
  if (cov.contains("base2")) s.cov.base2 = number_field(cov, "base2", context + ".cov");
  if (cov.contains("scaled")) {
    const json& v = cov["scaled"];
    if (!v.is_boolean()) fail(context, "field 'cov.scaled' must be a boolean");
    s.cov.scaled = v.get<bool>();
  }

  const json& coupling = require(j, "coupling", context);
  if (!coupling.is_string()) fail(context, "field 'coupling' must be a string");
  s.coupling = parse_coupling(coupling.get<std::string>(), context);

  const json& family = require(j, "distribution", context);
  if (!family.is_string()) fail(context, "field 'distribution' must be a string");
  s.distribution = parse_family(family.get<std::string>(), context);

  if (j.contains("n")) s.n = int_field(j, "n", context);
  if (j.contains("replications")) s.replications = int_field(j, "replications", context);
  if (j.contains("seed")) {
    const json& v = j["seed"];
    const bool ok = v.is_number_unsigned() ||
                    (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    if (!ok) fail(context, "field 'seed' must be a non-negative integer");
    s.seed = v.get<std::uint64_t>();
  }
  if (j.contains("alpha")) s.alpha = number_field(j, "alpha", context);
  if (j.contains("label")) {
    const json& v = j["label"];
    if (!v.is_string()) fail(context, "field 'label' must be a string");
    s.label = v.get<std::string>();
  }

  return s;
}

}  // namespace detail

SimScenario scenario_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError(path + ": cannot open scenario config");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError(path + ": " + e.what());
  }
  return detail::scenario_from_json(j, path);
}

}  // namespace ecdm
