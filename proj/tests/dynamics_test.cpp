#include <gtest/gtest.h>

#include "ionet/dynamics.hpp"
#include "ionet/error.hpp"
#include "test_support.hpp"

namespace ionet {
namespace {

using testing::Rng;

LiftedSystem system_of(const Matrix& a, Vector y) {
  return LiftedSystem{a, std::move(y), a.rows(), 1};
}

TEST(Step, OpenScenarioSupplierlessAgentGetsDemand) {
  const auto sys = build_lifted(testing::open_five_agent());
  const auto x1 = step(sys, Vector(15, 0.0));
  EXPECT_EQ(x1[12], 0.5);
  EXPECT_EQ(x1[13], 0.0);
  EXPECT_EQ(x1[14], 0.0);
}

TEST(Step, IdentityWithoutDemand) {
  const auto sys = system_of(Matrix::identity(3), Vector(3, 0.0));
  const Vector x{0.3, 1.5, 2.0};
  EXPECT_EQ(step(sys, x), x);
}

TEST(Step, TwoAgentHandComputed) {
  const auto sys = build_lifted(testing::two_agent_network());
  const auto x = step(sys, Vector{1, 2, 3, 4});
  EXPECT_NEAR(x[0], 2.10, 1e-14);
  EXPECT_NEAR(x[1], 2.90, 1e-14);
  EXPECT_NEAR(x[2], 2.15, 1e-14);
  EXPECT_NEAR(x[3], 2.85, 1e-14);
  EXPECT_THROW(step(sys, Vector{1, 2, 3}), Error);
}

TEST(Simulate, ClosedScenarioNonRootAgentsVanish) {
  const auto net = testing::closed_five_agent();
  const auto trace = simulate(build_lifted(net), net.initial_state());
  ASSERT_TRUE(trace.converged);
  const auto& last = trace.states.back();
  for (std::size_t k = 9; k < 15; ++k) EXPECT_LE(last[k], 1e-8);
  EXPECT_EQ(trace.states.front(), net.initial_state());
  EXPECT_EQ(trace.steps.back(), trace.final_step);
}

TEST(Simulate, OpenScenarioSettles) {
  const auto sys = build_lifted(testing::open_five_agent());
  const auto trace = simulate(sys, Vector(15, 0.0));
  ASSERT_TRUE(trace.converged);
  EXPECT_NEAR(trace.states.back()[12], 0.5, 1e-10);
}

TEST(Simulate, ZeroSystemConvergesInOneStep) {
  const auto trace = simulate(system_of(Matrix(2, 2), Vector(2, 0.0)), Vector(2, 0.0));
  EXPECT_TRUE(trace.converged);
  EXPECT_EQ(trace.final_step, 1);
  EXPECT_EQ(trace.states.back(), Vector(2, 0.0));
}

TEST(Simulate, RecordingCadence) {
  const auto sys = build_lifted(testing::closed_five_agent());
  const auto trace = simulate(sys, testing::five_agent_x0(), {10, 1e-300, 3});
  EXPECT_FALSE(trace.converged);
  EXPECT_EQ(trace.steps, (std::vector<int>{0, 3, 6, 9, 10}));
  EXPECT_GT(trace.final_delta, 0.0);
}

TEST(Simulate, RejectsHugeTracesAndBadOptions) {
  // A cyclic permutation never settles, so the recording keeps growing.
  Matrix cycle(5, 5);
  for (std::size_t k = 0; k < 5; ++k) cycle((k + 1) % 5, k) = 1.0;
  try {
    simulate(system_of(cycle, Vector(5, 0.0)), Vector{1, 0, 0, 0, 0}, {300000, 1e-12, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TraceTooLarge);
  }
  const auto sys = build_lifted(testing::closed_five_agent());
  EXPECT_THROW(simulate(sys, testing::five_agent_x0(), {0, 1e-9, 1}), Error);
  EXPECT_THROW(simulate(sys, testing::five_agent_x0(), {10, 1e-9, 0}), Error);
}

TEST(Simulate, NonnegativityAndMassConservation) {
  Rng rng(201);
  for (int trial = 0; trial < 20; ++trial) {
    const auto net = testing::random_closed_network(rng, testing::random_spec(rng, 5, 4));
    const auto trace = simulate(build_lifted(net), net.initial_state(), {2000, 1e-13, 1});
    const double mass0 = sum(net.initial_state());
    double prev = mass0;
    for (const auto& x : trace.states) {
      for (double v : x) EXPECT_GE(v, 0.0);
      EXPECT_LE(std::abs(sum(x) - prev), 1e-12 * mass0);
      prev = sum(x);
    }
  }
}

TEST(ClosedPrediction, PerronVectorIsFixed) {
  const auto sys = build_lifted(testing::closed_five_agent());
  const auto gamma = power_iteration(sys.a_bar).eigenvector;
  const auto pred = closed_equilibrium_predict(sys, gamma);
  for (std::size_t k = 0; k < 15; ++k) EXPECT_NEAR(pred[k], gamma[k], 1e-12);
}

TEST(ClosedPrediction, MatchesSimulationOnClosedScenario) {
  const auto net = testing::closed_five_agent();
  const auto sys = build_lifted(net);
  const auto trace = simulate(sys, net.initial_state());
  const auto pred = closed_equilibrium_predict(sys, net.initial_state());
  for (std::size_t k = 0; k < 15; ++k) EXPECT_NEAR(pred[k], trace.states.back()[k], 1e-7);
  for (std::size_t k = 9; k < 15; ++k) EXPECT_LE(pred[k], 1e-8);
}

// Oracle: A_bar^1024 x0 by repeated squaring.
TEST(ClosedPrediction, MatchesMatrixPowerOnTwoAgents) {
  const auto net = testing::two_agent_network();
  const auto sys = build_lifted(net);
  Matrix p = sys.a_bar;
  for (int k = 0; k < 10; ++k) p = p * p;
  const Vector x0{0.1, 0.7, 0.4, 0.2};
  const auto limit = p * x0;
  const auto pred = closed_equilibrium_predict(sys, x0);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(pred[k], limit[k], 1e-9);
}

TEST(ClosedPrediction, RejectsZeroOrNegativeStart) {
  const auto sys = build_lifted(testing::two_agent_network());
  EXPECT_THROW(closed_equilibrium_predict(sys, Vector(4, 0.0)), Error);
  EXPECT_THROW(closed_equilibrium_predict(sys, Vector{1, -1, 1, 1}), Error);
}

TEST(ClosedPrediction, SupportedOnRootAgents) {
  Rng rng(203);
  for (int trial = 0; trial < 20; ++trial) {
    const auto net = testing::random_closed_network(rng, testing::random_spec(rng, 5, 4));
    const auto report = validate(net);
    const auto pred = closed_equilibrium_predict(build_lifted(net), net.initial_state());
    for (Agent i = 0; i < net.agents(); ++i) {
      if (std::binary_search(report.root_set.begin(), report.root_set.end(), i)) continue;
      for (Industry p = 0; p < net.industries(); ++p)
        EXPECT_LE(pred[i * net.industries() + p], 1e-8);
    }
  }
}

TEST(KronEquilibrium, SingleEconomy) {
  const Matrix a = testing::three_sector_matrix();
  const Vector x0{1.0, 2.0, 3.0};
  const auto lim = kron_equilibrium(Matrix{{1.0}}, a, x0);
  const auto gamma = power_iteration(a).eigenvector;
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(lim[k], 6.0 * gamma[k], 1e-12);
}

TEST(KronEquilibrium, SharedMatrixOnFiveAgentGraph) {
  const Matrix w = testing::five_agent_weights();
  const Matrix a = testing::shared_matrix();
  std::vector<TradeEdge> edges;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (w(i, j) > 0.0) edges.push_back({i, j, w(i, j), a});
  const EconomyNetwork net(5, 3, edges);
  const auto x0 = testing::five_agent_x0();
  const auto general = closed_equilibrium_predict(build_lifted(net), x0);
  const auto kron_limit = kron_equilibrium(w, a, x0);
  for (std::size_t k = 0; k < 15; ++k) EXPECT_NEAR(kron_limit[k], general[k], 1e-9 * 120);
}

TEST(KronEquilibrium, DoublyStochasticIsUniform) {
  const Matrix half{{0.5, 0.5}, {0.5, 0.5}};
  const Vector x0{0.5, 1.0, 1.5, 1.0};
  for (double v : kron_equilibrium(half, half, x0)) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(OpenEquilibrium, ZeroMatrixReturnsDemand) {
  const Vector y{0.3, 0.0, 1.2};
  const auto sys = system_of(Matrix(3, 3), y);
  for (auto method : {SolveMethod::Direct, SolveMethod::Iterative}) {
    const auto r = open_equilibrium(sys, method);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(r.x_star[k], y[k], 1e-15);
    EXPECT_NEAR(r.spectral_radius_estimate, 0.0, 1e-9);
  }
}

TEST(OpenEquilibrium, TwoByTwoClosedForm) {
  const auto sys = system_of(Matrix{{0.4, 0.2}, {0.3, 0.5}}, Vector{1.0, 0.0});
  for (auto method : {SolveMethod::Direct, SolveMethod::Iterative}) {
    const auto r = open_equilibrium(sys, method, {100000, 1e-14, 1});
    EXPECT_NEAR(r.x_star[0], 0.5 / 0.24, 1e-10);
    EXPECT_NEAR(r.x_star[1], 0.3 / 0.24, 1e-10);
    EXPECT_TRUE(r.nonnegative);
    EXPECT_NEAR(r.spectral_radius_estimate, 0.7, 1e-8);
  }
}

// Equilibrium of the open five-agent scenario, (I - A_bar)^{-1} y from a dense
// LAPACK solve computed once.
const double kFrozenOpenEquilibrium[15] = {
    4.480281959536103,  4.355298862114893,  4.532693615974812, 2.382883835669801,
    1.5957226491753296, 2.955530733967773,  2.449980978030501, 1.4654189002008695,
    3.2687373405815334, 0.15,               0.05,              0.05,
    0.5,                0.0,                0.0};

TEST(OpenEquilibrium, OpenScenario) {
  const auto sys = build_lifted(testing::open_five_agent());
  const auto direct = open_equilibrium(sys, SolveMethod::Direct);
  const auto iter = open_equilibrium(sys, SolveMethod::Iterative);
  for (std::size_t k = 0; k < 15; ++k) {
    EXPECT_NEAR(direct.x_star[k], kFrozenOpenEquilibrium[k], 1e-12);
    EXPECT_NEAR(iter.x_star[k], direct.x_star[k], 1e-8);
  }
  EXPECT_TRUE(direct.nonnegative);
  EXPECT_NEAR(direct.x_star[12], 0.5, 1e-10);
  EXPECT_NEAR(direct.x_star[13], 0.0, 1e-12);
  EXPECT_NEAR(direct.x_star[14], 0.0, 1e-12);
  EXPECT_LE(direct.residual, 1e-12);
  EXPECT_LT(direct.spectral_radius_estimate, 1.0);
}

TEST(OpenEquilibrium, StochasticEdgesWithDemandAreRefused) {
  const auto net = testing::five_agent_network(testing::closed_self_matrix(),
                                               testing::five_agent_demand());
  for (auto method : {SolveMethod::Direct, SolveMethod::Iterative}) {
    try {
      open_equilibrium(build_lifted(net), method);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::SpectralRadiusNotLessThanOne);
    }
  }
}

TEST(OpenEquilibrium, IterationBudgetExhausted) {
  const auto sys = build_lifted(testing::open_five_agent());
  try {
    open_equilibrium(sys, SolveMethod::Iterative, {5, 1e-12, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
  }
}

TEST(OpenEquilibrium, ErrorContracts) {
  const auto sys = build_lifted(testing::open_five_agent());
  const auto xs = open_equilibrium(sys, SolveMethod::Direct).x_star;
  Vector x(15, 0.0);
  std::vector<double> err;
  for (int k = 0; k < 400; ++k) {
    err.push_back(norm_inf(subtract(x, xs)));
    x = step(sys, x);
  }
  for (std::size_t k = 15 + 1; k < err.size(); ++k) EXPECT_LE(err[k], err[k - 1] + 1e-15);
}

TEST(OpenEquilibrium, RandomDirectAndIterativeAgree) {
  Rng rng(211);
  for (int trial = 0; trial < 20; ++trial) {
    const auto net = testing::random_open_network(rng, testing::random_spec(rng, 5, 4));
    ASSERT_EQ(validate(net).model_class, ModelClass::Open);
    const auto sys = build_lifted(net);
    const auto d = open_equilibrium(sys, SolveMethod::Direct);
    const auto it = open_equilibrium(sys, SolveMethod::Iterative, {1000000, 1e-14, 1});
    EXPECT_LE(norm_inf(subtract(d.x_star, it.x_star)), 1e-8);
    EXPECT_LE(d.residual, 1e-10);
    EXPECT_LE(it.residual, 10 * 1e-14);
  }
}

TEST(LayerDecomposition, IsolatedAgentIsLeontief) {
  const EconomyNetwork net(1, 3, {{0, 0, 1.0, testing::three_sector_matrix()}});
  const Vector x{1.0, 2.0, 3.0};
  const auto parts = layer_decomposition(net, 0, x);
  EXPECT_EQ(parts.intralayer, Vector(3, 0.0));
  EXPECT_EQ(parts.crosslayer, Vector(3, 0.0));
  const auto expected = testing::three_sector_matrix() * x;
  for (std::size_t p = 0; p < 3; ++p) EXPECT_DOUBLE_EQ(parts.interlayer[p], expected[p]);
}

TEST(LayerDecomposition, TwoAgentCrossLayerTerm) {
  const auto net = testing::two_agent_network();
  const Vector x{1, 2, 3, 4};
  const auto parts = layer_decomposition(net, 0, x);
  EXPECT_NEAR(parts.interlayer[0], 0.45, 1e-15);
  EXPECT_NEAR(parts.interlayer[1], 1.05, 1e-15);
  EXPECT_NEAR(parts.intralayer[0], 0.5 * 0.3 * 3, 1e-15);
  EXPECT_NEAR(parts.intralayer[1], 0.5 * 0.4 * 4, 1e-15);
  EXPECT_NEAR(parts.crosslayer[0], 0.5 * 0.6 * 4, 1e-15);
  EXPECT_NEAR(parts.crosslayer[1], 0.5 * 0.7 * 3, 1e-15);
}

TEST(LayerDecomposition, PartsSumToStep) {
  Rng rng(223);
  for (int trial = 0; trial < 20; ++trial) {
    const auto net = testing::random_open_network(rng, testing::random_spec(rng, 5, 4));
    const auto x = testing::random_positive_vector(rng, net.dimension());
    const auto next = step(build_lifted(net), x);
    for (Agent i = 0; i < net.agents(); ++i) {
      const auto parts = layer_decomposition(net, i, x);
      for (Industry p = 0; p < net.industries(); ++p) {
        const double total = parts.interlayer[p] + parts.intralayer[p] + parts.crosslayer[p] +
                             parts.demand[p];
        EXPECT_NEAR(total, next[i * net.industries() + p], 1e-14);
      }
    }
  }
}

}  // namespace
}  // namespace ionet
