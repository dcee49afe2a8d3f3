#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qsnn/snn/neuron.hpp"
#include "qsnn/snn/provider.hpp"
#include "qsnn/snn/tempotron.hpp"

using namespace qsnn;
using namespace qsnn::snn;
using doctest::Approx;

namespace {

const NeuronParams kParams{};

SpikeConfig random_config(Rng& rng, std::size_t synapses, std::size_t spikes, double w_lo = 0.0,
                          double w_hi = 1.0, double t_hi = 100.0) {
  SpikeConfig c;
  c.synapse_count = synapses;
  c.weights = oracle::random_vector(rng, synapses, w_lo, w_hi);
  for (std::size_t i = 0; i < spikes; ++i)
    c.spikes.push_back({std::size_t(uniform01(rng) * synapses), t_hi * uniform01(rng)});
  return c;
}

SpikeConfig single(double moment, double weight = 1.0) {
  SpikeConfig c;
  c.synapse_count = 1;
  c.weights = {weight};
  c.spikes = {{0, moment}};
  return c;
}

}  // namespace

TEST_SUITE("snn") {

TEST_CASE("parameters") {
  CHECK(kParams.v0() == Approx(5.0));
  CHECK(kParams.peak_delay() == Approx(5.0 * std::log(4.0)));
  NeuronParams bad;
  bad.tau_s = 20;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = NeuronParams{};
  bad.T = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("kernel") {
  CHECK(kernel(0.0, kParams) == 0.0);
  CHECK(kernel(-1.0, kParams) == 0.0);
  CHECK(kernel(1e4, kParams) < 1e-100);
  // grid argmax of the kernel
  double best = 0, at = 0;
  for (int i = 0; i <= 200000; ++i) {
    const double dt = 50.0 * i / 200000.0;
    if (kernel(dt, kParams) > best) best = kernel(dt, kParams), at = dt;
  }
  CHECK(std::abs(at - kParams.peak_delay()) <= 50.0 / 200000.0);
}

TEST_CASE("potential") {
  Rng rng = make_stream(50, 0);
  auto c = random_config(rng, 4, 6, -1.0, 1.0);
  for (auto& s : c.spikes) s.moment += 10.0;
  NeuronParams p = kParams;
  p.v_rest = -0.3;
  CHECK(potential(5.0, c, p) == -0.3);
  CHECK(potential(17.0, single(3.0, 1.0), kParams) == Approx(kernel(14.0, kParams)));

  // causality: later spikes do not matter
  for (double t : {20.0, 50.0, 90.0}) {
    SpikeConfig early = c;
    std::erase_if(early.spikes, [&](const Spike& s) { return s.moment > t; });
    CHECK(potential(t, c, kParams) == potential(t, early, kParams));
  }

  // superposition and linearity in the weights
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_config(rng, 5, 8, -1.0, 1.0);
    SpikeConfig b = a, sum = a;
    b.weights = oracle::random_vector(rng, 5);
    for (std::size_t k = 0; k < 5; ++k) sum.weights[k] = 2.0 * a.weights[k] - 0.5 * b.weights[k];
    for (double t : {5.0, 33.3, 71.0, 140.0}) {
      const double lhs = potential(t, sum, kParams);
      const double rhs = 2.0 * potential(t, a, kParams) - 0.5 * potential(t, b, kParams);
      CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
  }

  // two spikes add up
  SpikeConfig two;
  two.synapse_count = 2;
  two.weights = {0.7, 1.3};
  two.spikes = {{0, 4.0}, {1, 9.0}};
  CHECK(potential(20.0, two, kParams) ==
        Approx(potential(20.0, single(4.0, 0.7), kParams) + potential(20.0, single(9.0, 1.3), kParams)));
}

TEST_CASE("derivative") {
  Rng rng = make_stream(51, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = random_config(rng, 5, 1 + trial % 9, -1.0, 1.0);
    const auto ordered = c.time_ordered();
    const std::size_t J = 1 + trial % ordered.size();
    const double t = ordered.back().moment + 0.5 + 20.0 * uniform01(rng);
    const double h = 1e-4;
    const double fd = (prefix_potential(t + h, J, c, kParams) - prefix_potential(t - h, J, c, kParams)) / (2 * h);
    const double d = potential_derivative(t, J, c, kParams);
    CHECK(std::abs(fd - d) <= 1e-6 * std::max(std::abs(d), 1e-3));
  }
  const auto s = single(3.0);
  CHECK(std::abs(potential_derivative(3.0 + kParams.peak_delay(), 1, s, kParams)) <= 1e-12);
  CHECK_THROWS_AS(potential_derivative(10.0, 2, s, kParams), InvalidArgument);
  CHECK_THROWS_AS(potential_derivative(1.0, 1, s, kParams), InvalidArgument);
}

TEST_CASE("closed-form peak moment") {
  const ExactProvider exact;
  Rng rng = make_stream(52, 0);
  const auto s = single(12.0, 0.8);
  const auto lm = local_max_moment(1, s, kParams, exact, rng);
  CHECK(lm.moment == Approx(12.0 + kParams.peak_delay()).epsilon(1e-12));
  CHECK(lm.in_window);

  // out of window past T
  CHECK_FALSE(local_max_moment(1, single(510.0), kParams, exact, rng).in_window);

  int checked = 0;
  while (checked < 100) {
    const auto c = random_config(rng, 6, 2 + checked % 8, 0.05, 1.0);
    const auto ordered = c.time_ordered();
    const std::size_t J = 1 + std::size_t(uniform01(rng) * ordered.size());
    const auto found = local_max_moment(J, c, kParams, exact, rng);
    const double tj = ordered[J - 1].moment;
    if (found.moment < tj) continue;  // the prefix is already decaying at t_J
    CHECK(std::abs(potential_derivative(found.moment, J, c, kParams)) <= 1e-8);
    const double step = kParams.T / 1e5;
    double best_t = tj, best_v = -1e300;
    for (double t = tj; t <= tj + 40.0; t += step) {
      const double v = prefix_potential(t, J, c, kParams);
      if (v > best_v) best_v = v, best_t = t;
    }
    CHECK(std::abs(found.moment - best_t) <= step);

    SpikeConfig scaled = c;
    for (auto& w : scaled.weights) w *= 37.5;
    CHECK(std::abs(local_max_moment(J, scaled, kParams, exact, rng).moment - found.moment) <= 1e-10);
    ++checked;
  }
}

TEST_CASE("non-positive products") {
  const ExactProvider exact;
  Rng rng = make_stream(53, 0);
  SpikeConfig c;
  c.synapse_count = 2;
  c.weights = {-1.0, 2.0};
  c.spikes = {{0, 5.0}, {1, 20.0}};
  CHECK_THROWS_AS(local_max_moment(1, c, kParams, exact, rng), NonPositiveProductError);
  try {
    (void)local_max_moment(1, c, kParams, exact, rng);
  } catch (const NonPositiveProductError& e) {
    CHECK(e.prefix() == 1);
  }
  c.weights[1] = 0.5;  // still a falling-then-rising mix with a positive tail
  const auto rep = detect_crossings(c, kParams, exact, rng);
  CHECK(rep.fallback_count >= 1);
}

TEST_CASE("crossing detection") {
  const ExactProvider exact;
  Rng rng = make_stream(54, 0);
  SpikeConfig zero = random_config(rng, 4, 6);
  for (auto& w : zero.weights) w = 0.0;
  const auto none = detect_crossings(zero, kParams, exact, rng);
  CHECK_FALSE(none.fired);
  CHECK(none.output_spikes.empty());

  NeuronParams p = kParams;
  p.v_thr = 1.0;  // lone spike peaks near 2.36
  const auto one = detect_crossings(single(40.0), p, exact, rng);
  REQUIRE(one.fired);
  REQUIRE(one.output_spikes.size() == 1);
  CHECK(one.output_spikes[0] == Approx(40.0 + p.peak_delay()));
  CHECK(one.t_max == Approx(40.0 + p.peak_delay()));

  for (int trial = 0; trial < 30; ++trial) {
    const auto c = random_config(rng, 6, 8, 0.0, 1.0);
    const auto r = detect_crossings(c, p, exact, rng);
    CHECK(std::is_sorted(r.output_spikes.begin(), r.output_spikes.end()));
    CHECK(r.fired == !r.output_spikes.empty());
    for (double t : r.output_spikes) {
      bool found = false;
      for (const auto& lm : r.local_maxima) found |= lm.moment == t && lm.in_window && lm.potential >= p.v_thr;
      CHECK(found);
    }
  }

  SpikeConfig bad = single(600.0);
  CHECK_THROWS_AS(detect_crossings(bad, p, exact, rng), InvalidArgument);
  bad = single(10.0);
  bad.spikes[0].synapse = 3;
  CHECK_THROWS_AS(detect_crossings(bad, p, exact, rng), InvalidArgument);
}

TEST_CASE("providers") {
  const ExactProvider exact;
  Rng rng = make_stream(55, 0);
  for (int i = 0; i < 20; ++i) {
    const encode::RealVector a(oracle::random_vector(rng, 6, 0.0, 3.0)), b(oracle::random_vector(rng, 6, 0.0, 3.0));
    const auto e = exact.estimate(a, b, rng);
    CHECK(std::abs(std::exp(e.log_product) - encode::dot(a, b)) <= 1e-12 * encode::dot(a, b));
    CHECK(e.normalized >= 0.0);
  }
  CHECK_THROWS_AS((void)exact.estimate(encode::RealVector{1, 0}, encode::RealVector{-1, 0}, rng), quip::UnsignedConstraintError);
  CHECK(exact.name() == "exact");

  quip::QuipConfig cfg;
  cfg.q = 11;
  const QuipProvider qp(cfg);
  CHECK(qp.name() == "quip");
  const encode::RealVector a{1, 2, 3, 4}, b{4, 3, 2, 1};
  const auto e = qp.estimate(a, b, rng);
  CHECK(e.normalized >= 0.0);
  CHECK(e.exact_normalized == Approx(20.0 / 30.0));
  CHECK(std::abs(e.normalized - e.exact_normalized) <= 0.02);
  cfg.q = 2;
  CHECK_THROWS_AS(QuipProvider{cfg}, InvalidArgument);
}

TEST_CASE("exact and quip providers make the same decisions") {
  const ExactProvider exact;
  quip::QuipConfig cfg;
  cfg.m = 10;
  cfg.q = 11;
  const QuipProvider qp(cfg);
  NeuronParams p = kParams;
  p.v_thr = 3.0;
  Rng rng = make_stream(56, 0);
  int same = 0, fired = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_config(rng, 5, 6, 0.0, 1.0, 60.0);
    Rng r1 = make_stream(56, 1000 + trial), r2 = make_stream(56, 2000 + trial);
    const auto a = detect_crossings(c, p, exact, r1);
    const auto b = detect_crossings(c, p, qp, r2);
    same += a.fired == b.fired && a.output_spikes.size() == b.output_spikes.size();
    fired += a.fired;
  }
  CHECK(same >= 48);
  // the threshold splits the sample, so agreement is not trivial
  CHECK(fired > 5);
  CHECK(fired < 45);
}

TEST_CASE("tempotron update") {
  const ExactProvider exact;
  Rng rng = make_stream(57, 0);
  NeuronParams p = kParams;
  p.v_thr = 1.0;

  const auto c = single(30.0, 0.8);
  const auto rep = detect_crossings(c, p, exact, rng);
  REQUIRE(rep.fired);
  CHECK(tempotron_update(c, p, Label::fire, rep, 0.1) == c.weights);

  SpikeConfig three;
  three.synapse_count = 3;
  three.weights = {0.1, 0.1, 0.1};
  three.spikes = {{1, 20.0}};
  const auto miss = detect_crossings(three, p, exact, rng);
  REQUIRE_FALSE(miss.fired);
  const auto up = tempotron_update(three, p, Label::fire, miss, 0.1);
  CHECK(up[0] == 0.1);
  CHECK(up[1] > 0.1);
  CHECK(up[2] == 0.1);
  CHECK(tempotron_update(three, p, Label::no_fire, miss, 0.1) == three.weights);

  const auto down = tempotron_update(c, p, Label::no_fire, rep, 0.1);
  CHECK(down[0] < c.weights[0]);
}

TEST_CASE("tempotron learns a small separable set") {
  const ExactProvider exact;
  NeuronParams p = kParams;
  p.v_thr = 1.0;
  Rng rng = make_stream(58, 0);
  const std::size_t n = 8;
  std::vector<SpikeConfig> patterns;
  std::vector<Label> labels;
  for (int k = 0; k < 5; ++k) {
    SpikeConfig c;
    c.synapse_count = n;
    for (int s = 0; s < 3; ++s) c.spikes.push_back({std::size_t(uniform01(rng) * n), 100.0 * uniform01(rng)});
    patterns.push_back(c);
    labels.push_back(k % 2 == 0 ? Label::fire : Label::no_fire);
  }
  std::vector<double> w = oracle::random_vector(rng, n, 0.0, 0.1);
  int epochs = 0, errors = 1;
  for (; epochs < 200 && errors > 0; ++epochs) {
    errors = 0;
    for (std::size_t k = 0; k < patterns.size(); ++k) {
      patterns[k].weights = w;
      const auto r = detect_crossings(patterns[k], p, exact, rng);
      if (r.fired != (labels[k] == Label::fire)) {
        ++errors;
        w = tempotron_update(patterns[k], p, labels[k], r, 0.2);
      }
    }
  }
  CHECK(errors == 0);
  CHECK(epochs < 200);
}

}  // TEST_SUITE
