#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ionet/economy.hpp"
#include "ionet/matrix.hpp"

namespace ionet {

struct SimulationOptions {
  int max_steps = 100000;
  /// Convergence is declared when ||x[k+1] - x[k]||_inf <= convergence_tol.
  double convergence_tol = 1e-12;
  int record_every = 1;
};

/// Upper bound on stored trace values (states x dimension).
inline constexpr std::size_t kMaxTraceValues = 1'000'000;
/// Margin below one that the spectral radius must clear for the open model.
inline constexpr double kSpectralRadiusMargin = 1e-9;

struct SimulationTrace {
  std::vector<int> steps;
  std::vector<Vector> states;
  bool converged = false;
  int final_step = 0;
  double final_delta = 0.0;
};

enum class SolveMethod { Direct, Iterative };
std::string_view to_string(SolveMethod m) noexcept;

struct EquilibriumResult {
  Vector x_star;
  SolveMethod method;
  double spectral_radius_estimate;
  bool nonnegative;
  /// ||(I - A_bar) x* - y||_inf
  double residual;
};

struct LayerContribution {
  Vector interlayer;
  Vector intralayer;
  Vector crosslayer;
  Vector demand;
};

/// One round of the update law: A_bar x + y.
Vector step(const LiftedSystem& sys, std::span<const double> x);

/// Iterates step() from x0. Records x0, every record_every-th state and the
/// last state. Raises TraceTooLarge if the recording would exceed
/// kMaxTraceValues values.
SimulationTrace simulate(const LiftedSystem& sys, std::span<const double> x0,
                         const SimulationOptions& opts = {});

/// Limit of the closed model: Perron vector of A_bar (unit 1-norm) scaled by
/// the conserved mass 1^T x0.
Vector closed_equilibrium_predict(const LiftedSystem& sys, std::span<const double> x0);

/// Closed-model limit when every edge carries the same matrix A:
/// (omega kron gamma) 1^T x0, with omega and gamma the Perron vectors of W and A.
Vector kron_equilibrium(const Matrix& w, const Matrix& a, std::span<const double> x0);

/// Equilibrium of x = A_bar x + y. Refuses systems whose spectral radius is
/// not safely below one (SpectralRadiusNotLessThanOne). The iterative method
/// runs the update law from x0 = 0.
EquilibriumResult open_equilibrium(const LiftedSystem& sys, SolveMethod method,
                                   const SimulationOptions& opts = {});

/// Splits agent i's next state into self-trade (interlayer), same-industry
/// imports (intralayer), other-industry imports (crosslayer) and demand.
LayerContribution layer_decomposition(const EconomyNetwork& net, Agent agent,
                                      std::span<const double> x);

}  // namespace ionet
