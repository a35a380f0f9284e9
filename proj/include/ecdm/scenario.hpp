// scenario.hpp — generative simulation scenarios and their population-level truths.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ecdm/cov_model.hpp"
#include "ecdm/jacobi.hpp"
#include "ecdm/paired_sample.hpp"
#include "ecdm/philox.hpp"

namespace ecdm {

// How the two blocks' latent coordinates relate.
//   null_case_a: disjoint coordinates, Σ* = O, Δ = 0.
//   shared_coordinate_case_b: block 2's third eigen-coordinate reuses block 1's w₃,
//   giving Σ* = √(λ₁₃λ₂₃)·h₁₃h₂₃ᵀ and Δ = λ₁₃λ₂₃.
enum class Coupling { null_case_a, shared_coordinate_case_b };

// Latent coordinate distribution (all standardized to mean 0, variance 1).
//   gaussian_I: standard normal (fourth-moment constant M = 2).
//   chisq_II:   (χ²₁ − 1)/√2 (M = 14).
//   t10_III:    multivariate t with 10 df — coordinates share a χ²₁₀ scale, so the
//               independence assumption behind K and L fails by construction.
enum class WFamily { gaussian_I, chisq_II, t10_III };

const char* coupling_name(Coupling c);
const char* family_name(WFamily f);

struct SimScenario {
  CovSpec cov;
  Coupling coupling = Coupling::null_case_a;
  WFamily distribution = WFamily::gaussian_I;
  std::optional<int> n;  // explicit sample size; empty → n = 4⌈√p1⌉
  int replications = 2000;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  std::string label;  // free-form tag echoed in reports

  int p() const { return cov.p1 + cov.p2; }
};

// Explicit n when given, else the benchmark rule n = 4⌈√p1⌉.
int scenario_n(const SimScenario& scenario);

// Population quantities implied by a scenario. K and L exist only when the latent
// coordinates are independent with known fourth moment (families I and II).
struct OracleQuantities {
  double delta;            // Δ = ‖Σ*‖²_F
  double trace_sq1;        // tr(Σ₁²)
  double trace_sq2;        // tr(Σ₂²)
  double psi;              // tr(Σ₁²)·tr(Σ₂²)
  double delta_scale_pop;  // δ = √(2Ψ)/n
  double rho_pop;          // ρ = Δ/√Ψ
  double a3_ratio_1;       // tr(Σ₁⁴)/tr(Σ₁²)²
  double a3_ratio_2;
  std::optional<double> a45_ratio;  // Ψ/(n²Δ²); empty when Δ = 0
  std::optional<double> k_opt;      // K: asymptotic SD of T̂_n
  std::optional<double> l_opt;      // L = Φ(Δ/K − z_α·δ/K): asymptotic power

  bool k_defined() const { return k_opt.has_value(); }
  double k_pop() const;  // throws UnsupportedAssumption when undefined
  double l_pop() const;
};

// A scenario with its covariances decomposed and oracle quantities evaluated.
// Eigenvector signs are fixed (largest-magnitude entry positive) so the exported
// Σ* and the generator's population Σ* are the same matrix.
struct PreparedScenario {
  SimScenario scenario;
  int n;
  Matrix sigma1, sigma2;
  Vector lambda1, lambda2;  // descending
  Matrix gamma1, gamma2;    // Γ_i = H_i Λ_i^{1/2}, sign-fixed
  Matrix sigma_star;        // p1×p2; zero in case_a
  OracleQuantities oracle;
};

// Validates the scenario (case_b needs p1 ≥ 3 and p2 ≥ 3; explicit n ≥ 4;
// replications ≥ 1; alpha ∈ (0, 0.5)) and computes everything reusable across
// replications. The eigendecompositions make this the expensive one-time step.
PreparedScenario prepare_scenario(const SimScenario& scenario);

OracleQuantities oracle_quantities(const SimScenario& scenario);

// One dataset: n observations of x = (Γ₁w₁, Γ₂w₂) drawn from the rng stream.
// Draw order per observation: [t-family scale], block-1 coordinates, block-2
// coordinates (case_b skips the shared third coordinate).
PairedSample draw_sample(const PreparedScenario& prep, Philox4x32& rng);

// Parse a scenario config file (JSON, fields mirroring SimScenario). Errors carry
// field-level messages.
SimScenario scenario_from_json_file(const std::string& path);

}  // namespace ecdm
