#include "ionet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ionet/error.hpp"
#include "ionet/matrix_ops.hpp"

namespace ionet {
namespace {

void require_length(std::span<const double> x, std::size_t dim, const char* what) {
  if (x.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has " +
                                                  std::to_string(x.size()) + " entries, expected " +
                                                  std::to_string(dim));
  }
}

void require_options(const SimulationOptions& opts) {
  if (opts.max_steps < 1 || !(opts.convergence_tol > 0.0) || opts.record_every < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "simulation needs max_steps >= 1, convergence_tol > 0, record_every >= 1");
  }
}

double delta_inf(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double fixed_point_residual(const LiftedSystem& sys, std::span<const double> x) {
  return delta_inf(step(sys, x), x);
}

}  // namespace

std::string_view to_string(SolveMethod m) noexcept {
  return m == SolveMethod::Direct ? "direct" : "iterate";
}

Vector step(const LiftedSystem& sys, std::span<const double> x) {
  require_length(x, sys.dimension(), "state");
  Vector next = sys.a_bar * x;
  for (std::size_t k = 0; k < next.size(); ++k) next[k] += sys.demand[k];
  return next;
}

SimulationTrace simulate(const LiftedSystem& sys, std::span<const double> x0,
                         const SimulationOptions& opts) {
  require_options(opts);
  require_length(x0, sys.dimension(), "x0");
  const std::size_t dim = sys.dimension();

  SimulationTrace trace;
  auto record = [&](int k, const Vector& x) {
    if ((trace.states.size() + 1) * dim > kMaxTraceValues) {
      throw Error(ErrorCode::TraceTooLarge,
                  "trace would exceed " + std::to_string(kMaxTraceValues) +
                      " values; raise record_every or lower max_steps");
    }
    trace.steps.push_back(k);
    trace.states.push_back(x);
  };

  Vector x(x0.begin(), x0.end());
  record(0, x);
  int k = 0;
  while (k < opts.max_steps) {
    Vector next = step(sys, x);
    ++k;
    trace.final_delta = delta_inf(next, x);
    x = std::move(next);
    if (trace.final_delta <= opts.convergence_tol) {
      trace.converged = true;
      break;
    }
    if (k % opts.record_every == 0) record(k, x);
  }
  trace.final_step = k;
  if (trace.steps.back() != k) record(k, x);
  return trace;
}

Vector closed_equilibrium_predict(const LiftedSystem& sys, std::span<const double> x0) {
  require_length(x0, sys.dimension(), "x0");
  if (std::any_of(x0.begin(), x0.end(), [](double v) { return v < 0.0; })) {
    throw Error(ErrorCode::ValueError, "x0 must be nonnegative");
  }
  const double mass = sum(x0);
  if (!(mass > 0.0)) throw Error(ErrorCode::ValueError, "x0 must not be zero");
  Vector gamma = power_iteration(sys.a_bar).eigenvector;
  for (double& g : gamma) g *= mass;
  return gamma;
}

Vector kron_equilibrium(const Matrix& w, const Matrix& a, std::span<const double> x0) {
  if (!w.square() || !a.square()) {
    throw Error(ErrorCode::DimensionMismatch, "W and A must be square");
  }
  require_length(x0, w.rows() * a.rows(), "x0");
  const Vector omega = power_iteration(w).eigenvector;
  const Vector gamma = power_iteration(a).eigenvector;
  Vector out = kron(omega, gamma);
  const double mass = sum(x0);
  for (double& v : out) v *= mass;
  return out;
}

EquilibriumResult open_equilibrium(const LiftedSystem& sys, SolveMethod method,
                                   const SimulationOptions& opts) {
  require_options(opts);
  const double rho = estimate_spectral_radius(sys.a_bar);
  if (rho >= 1.0 - kSpectralRadiusMargin) {
    throw Error(ErrorCode::SpectralRadiusNotLessThanOne,
                "spectral radius estimate " + std::to_string(rho) +
                    " is not below one; I - A_bar is not productive");
  }

  const std::size_t dim = sys.dimension();
  EquilibriumResult res{{}, method, rho, false, 0.0};
  if (method == SolveMethod::Direct) {
    res.x_star = solve_linear(Matrix::identity(dim) - sys.a_bar, sys.demand);
  } else {
    Vector x(dim, 0.0);
    bool converged = false;
    for (int k = 0; k < opts.max_steps; ++k) {
      Vector next = step(sys, x);
      const double delta = delta_inf(next, x);
      x = std::move(next);
      if (delta <= opts.convergence_tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw Error(ErrorCode::NoConvergence, "update law did not settle within " +
                                                std::to_string(opts.max_steps) + " steps");
    }
    res.x_star = std::move(x);
  }
  res.residual = fixed_point_residual(sys, res.x_star);
  res.nonnegative = std::all_of(res.x_star.begin(), res.x_star.end(),
                                [](double v) { return v >= -kStochasticTolerance; });
  return res;
}

LayerContribution layer_decomposition(const EconomyNetwork& net, Agent agent,
                                      std::span<const double> x) {
  if (agent >= net.agents()) {
    throw Error(ErrorCode::InvalidArgument, "agent index out of range");
  }
  require_length(x, net.dimension(), "state");
  const std::size_t d = net.industries();
  LayerContribution out{Vector(d, 0.0), Vector(d, 0.0), Vector(d, 0.0),
                        Vector(net.demand().begin() + static_cast<std::ptrdiff_t>(agent * d),
                               net.demand().begin() + static_cast<std::ptrdiff_t>((agent + 1) * d))};
  for (const auto& e : net.edges()) {
    if (e.importer != agent) continue;
    const std::size_t base = e.supplier * d;
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = 0; q < d; ++q) {
        const double term = e.weight * e.coefficients(p, q) * x[base + q];
        if (e.supplier == agent) {
          out.interlayer[p] += term;
        } else if (p == q) {
          out.intralayer[p] += term;
        } else {
          out.crosslayer[p] += term;
        }
      }
    }
  }
  return out;
}

}  // namespace ionet
