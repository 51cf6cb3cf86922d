#include <gtest/gtest.h>
#include <omp.h>

#include <stdexcept>

#include "oracles.hpp"
#include "tightpovm/kernels.hpp"
#include "tightpovm/rng.hpp"

using namespace tightpovm;

namespace {

struct Cloud {
  std::vector<StateVector> points;
  std::vector<double> weights;
};

Cloud random_cloud(int d, int n, std::uint64_t seed) {
  Rng rng(seed);
  Cloud c;
  std::uniform_real_distribution<double> u(0.5, 1.5);
  for (int i = 0; i < n; ++i) {
    c.points.push_back(haar_random_state(d, rng));
    c.weights.push_back(u(rng));
  }
  return c;
}

class ThreadCount {
 public:
  explicit ThreadCount(int n) : saved_(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved_); }

 private:
  int saved_;
};

}  // namespace

TEST(Kernels, FramePotentialMatchesNaiveSum) {
  for (int t : {1, 2, 3}) {
    const auto c = random_cloud(3, 25, 10 + t);
    const double expected = oracle::frame_potential(c.points, c.weights, t);
    EXPECT_NEAR(kernels::serial::frame_potential(c.points, c.weights, t), expected, 1e-12 * expected);
  }
}

TEST(Kernels, SerialAndOpenMpAreBitIdentical) {
  ThreadCount threads(4);
  const auto c = random_cloud(3, 70, 21);
  for (int t : {2, 3}) {
    EXPECT_EQ(kernels::serial::frame_potential(c.points, c.weights, t),
              kernels::omp::frame_potential(c.points, c.weights, t));

    std::vector<StateVector> gs, go;
    kernels::serial::frame_potential_gradient(c.points, c.weights, t, gs);
    kernels::omp::frame_potential_gradient(c.points, c.weights, t, go);
    ASSERT_EQ(gs.size(), go.size());
    for (std::size_t k = 0; k < gs.size(); ++k) EXPECT_TRUE(gs[k] == go[k]);

    std::vector<double> ws, wo;
    kernels::serial::frame_potential_weight_gradient(c.points, c.weights, t, ws);
    kernels::omp::frame_potential_weight_gradient(c.points, c.weights, t, wo);
    EXPECT_EQ(ws, wo);
  }
}

TEST(Kernels, GradientMatchesFiniteDifference) {
  const auto c = random_cloud(2, 6, 31);
  Rng rng(32);
  for (int t : {1, 2, 3}) {
    std::vector<StateVector> grad;
    kernels::serial::frame_potential_gradient(c.points, c.weights, t, grad);
    std::vector<StateVector> delta;
    for (std::size_t k = 0; k < c.points.size(); ++k) delta.push_back(complex_gaussian(2, rng));
    // The gradient convention is 2 d/d conj(x): the directional derivative is Re <g, delta>.
    double predicted = 0.0;
    for (std::size_t k = 0; k < grad.size(); ++k) predicted += grad[k].dot(delta[k]).real();
    // The potential is evaluated on unnormalized points, which is what the gradient describes.
    auto f = [&](const std::vector<StateVector>& x) { return oracle::frame_potential(x, c.weights, t); };
    EXPECT_NEAR(oracle::directional_derivative(f, c.points, delta), predicted, 1e-6) << "t=" << t;
  }
}

TEST(Kernels, WeightGradientMatchesFiniteDifference) {
  auto c = random_cloud(3, 5, 41);
  std::vector<double> grad;
  kernels::serial::frame_potential_weight_gradient(c.points, c.weights, 2, grad);
  const double h = 1e-6;
  for (std::size_t k = 0; k < c.weights.size(); ++k) {
    auto wp = c.weights, wm = c.weights;
    wp[k] += h;
    wm[k] -= h;
    const double fd = (oracle::frame_potential(c.points, wp, 2) - oracle::frame_potential(c.points, wm, 2)) / (2 * h);
    EXPECT_NEAR(grad[k], fd, 1e-7);
  }
}

TEST(Kernels, MapIndexedSerialAndParallelAgree) {
  ThreadCount threads(3);
  std::vector<double> a(1000), b(1000);
  auto fn = [](std::size_t i) {
    Rng rng(child_seed(9, i));
    return std::uniform_real_distribution<double>(0, 1)(rng);
  };
  kernels::serial::map_indexed(fn, a);
  kernels::omp::map_indexed(fn, b);
  EXPECT_EQ(a, b);
  EXPECT_EQ(kernels::ordered_sum(a), kernels::ordered_sum(b));
}

TEST(Kernels, MapIndexedPropagatesExceptions) {
  std::vector<double> out(200);
  auto fn = [](std::size_t i) -> double {
    if (i == 137) throw std::runtime_error("boom");
    return 1.0;
  };
  EXPECT_THROW(kernels::omp::map_indexed(fn, out), std::runtime_error);
  EXPECT_THROW(kernels::serial::map_indexed(fn, out), std::runtime_error);
}

TEST(Kernels, OrderedSumIsLeftToRight) {
  const std::vector<double> v{1e16, 1.0, -1e16, 1.0};
  EXPECT_EQ(kernels::ordered_sum(v), ((1e16 + 1.0) - 1e16) + 1.0);
}
