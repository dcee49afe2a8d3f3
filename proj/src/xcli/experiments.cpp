#include "qsnn/xcli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "qsnn/mnist/training.hpp"
#include "qsnn/quip/analytic.hpp"
#include "qsnn/quip/quip.hpp"
#include "qsnn/snn/provider.hpp"
#include "qsnn/swaptest/swaptest.hpp"

namespace qsnn::xcli {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;
constexpr double kFourOverPiSq = 4.0 / (kPi * kPi);

quip::QuipConfig quip_config(const ExperimentConfig& cfg, int m, int q, std::uint64_t seed) {
  quip::QuipConfig qc;
  qc.m = m;
  qc.q = q;
  qc.slack = cfg.slack;
  qc.mode = cfg.mode;
  qc.seed = seed;
  return qc;
}

double slack_half_width(bool slack) { return slack ? 1.5 : 0.5; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Least-squares slope of y on x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

json summarize_fig7(const json& rows) {
  struct Acc {
    double min_p = 1.0, sum_p = 0.0, max_eps = 0.0, sum_eps = 0.0;
    std::size_t n = 0, successes = 0, bound_violations = 0;
  };
  std::map<int, Acc> by_m;
  for (const auto& r : rows) {
    Acc& a = by_m[r.at("m").get<int>()];
    const double p = r.at("success_probability").get<double>();
    const double e = r.at("epsilon").get<double>();
    a.min_p = std::min(a.min_p, p);
    a.sum_p += p;
    a.max_eps = std::max(a.max_eps, e);
    a.sum_eps += e;
    a.successes += r.at("success").get<bool>() ? 1 : 0;
    a.bound_violations += e > r.at("bound").get<double>() ? 1 : 0;
    ++a.n;
  }
  json out = json::array();
  for (const auto& [m, a] : by_m) {
    const double n = static_cast<double>(a.n);
    out.push_back({{"m", m},
                   {"trials", a.n},
                   {"min_success_probability", a.min_p},
                   {"mean_success_probability", a.sum_p / n},
                   {"max_epsilon", a.max_eps},
                   {"mean_epsilon", a.sum_eps / n},
                   {"success_rate", static_cast<double>(a.successes) / n},
                   {"bound_violations", a.bound_violations}});
  }
  return {{"per_m", out}};
}

json summarize_fig8(const json& rows) {
  std::map<int, std::pair<double, double>> by_q;  // min, sum
  std::map<int, std::size_t> count;
  double min_p = 1.0;
  for (const auto& r : rows) {
    const int q = r.at("q").get<int>();
    const double pq = r.at("p_q").get<double>();
    auto [it, fresh] = by_q.try_emplace(q, pq, 0.0);
    it->second.first = std::min(it->second.first, pq);
    it->second.second += pq;
    ++count[q];
    min_p = std::min(min_p, r.at("p").get<double>());
  }
  json out = json::array();
  for (const auto& [q, acc] : by_q) {
    out.push_back({{"q", q},
                   {"min_p_q", acc.first},
                   {"mean_p_q", acc.second / static_cast<double>(count[q])}});
  }
  return {{"min_slack_probability", min_p}, {"per_q", out}};
}

json summarize_appendix_a(const json& rows) {
  std::map<int, std::vector<double>> shots;
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    const int g = r.at("gamma").get<int>();
    const double s = r.at("shots").get<double>();
    shots[g].push_back(s);
    xs.push_back(g);
    ys.push_back(std::log2(s));
  }
  json per = json::array();
  double prev = 0.0;
  for (const auto& [g, v] : shots) {
    double sum = 0.0;
    for (double s : v) sum += s;
    const double mean = sum / static_cast<double>(v.size());
    json e = {{"gamma", g}, {"mean_shots", mean}};
    if (prev > 0.0) e["ratio_to_previous"] = mean / prev;
    prev = mean;
    per.push_back(e);
  }
  return {{"slope_log2_shots_vs_gamma", fit_slope(xs, ys)}, {"per_gamma", per}};
}

json summarize_mnist(const json& rows) {
  double max_drop = 0.0;
  double prev = -1.0;
  for (const auto& r : rows) {
    const double acc = r.at("test_accuracy").get<double>();
    if (prev >= 0.0) max_drop = std::max(max_drop, prev - acc);
    prev = acc;
  }
  json s = {{"epochs", rows.size()}, {"max_test_drop", max_drop}};
  if (!rows.empty()) {
    s["final_train_accuracy"] = rows.back().at("train_accuracy");
    s["final_test_accuracy"] = rows.back().at("test_accuracy");
  }
  return s;
}

json summarize_quip(const json& rows) {
  if (rows.empty()) return json::object();
  return {{"estimate", rows.front().at("estimate")}, {"epsilon", rows.front().at("epsilon")}};
}

bool json_close(const json& a, const json& b) {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
  }
  if (a.is_object() && b.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key()) || !json_close(it.value(), b.at(it.key()))) return false;
    }
    return true;
  }
  if (a.is_array() && b.is_array()) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!json_close(a[i], b[i])) return false;
    }
    return true;
  }
  return a == b;
}

ExperimentReport make_report(const ExperimentConfig& cfg) {
  ExperimentReport r;
  r.experiment = to_string(cfg.id);
  r.config = cfg.to_json();
  return r;
}

void finish(ExperimentReport& r, Experiment id) {
  json s = summarize(id, r.rows);
  for (auto it = s.begin(); it != s.end(); ++it) r.summary[it.key()] = it.value();
}

}  // namespace

json summarize(Experiment id, const json& rows) {
  switch (id) {
    case Experiment::fig7: return summarize_fig7(rows);
    case Experiment::fig8: return summarize_fig8(rows);
    case Experiment::appendix_a: return summarize_appendix_a(rows);
    case Experiment::mnist: return summarize_mnist(rows);
    case Experiment::quip_single: return summarize_quip(rows);
  }
  return json::object();
}

bool summary_consistent(const json& report) {
  const Experiment id = parse_experiment(report.at("provenance").at("experiment").get<std::string>());
  return json_close(summarize(id, report.at("rows")), report.at("summary"));
}

ExperimentReport run_fig7(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep = make_report(cfg);
  std::vector<int> ms = cfg.m_values;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  const int q = cfg.q_values.empty() ? 1 : cfg.q_values.front();
  const double half = slack_half_width(cfg.slack);

  const auto trials = static_cast<std::ptrdiff_t>(cfg.trials);
  std::vector<std::vector<json>> rows(cfg.trials);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < trials; ++i) {
    const auto k = static_cast<std::size_t>(i);
    Rng pair_rng = make_stream(cfg.seed, k);
    const double theta = uniform01(pair_rng) * kPi / 4.0;
    const double ip = quip::inner_product_from_theta(theta);
    const encode::RealVector w(std::vector<double>{1.0, 0.0});
    const encode::RealVector t(std::vector<double>{ip, std::sqrt(std::max(0.0, 1.0 - ip * ip))});
    for (int m : ms) {
      const auto rounding = quip::round_phase_index(theta, m);
      Rng rng = make_stream(mix64(cfg.seed ^ 0xf167), k * 64 + static_cast<std::size_t>(m));
      const auto res = quip::run_quip(w, t, quip_config(cfg, m, q, cfg.seed), rng);
      const double eps = std::abs(res.inner_product - ip);
      const auto measured = static_cast<double>(res.r_measured);
      const auto target = static_cast<double>(rounding.r_tilde);
      rows[k].push_back({{"trial", k},
                         {"m", m},
                         {"theta", theta},
                         {"exact", ip},
                         {"r_tilde", rounding.r_tilde},
                         {"delta_r", rounding.delta_r},
                         {"success_probability", quip::success_probability(rounding.delta_r, m)},
                         {"slack_probability", quip::slack_probability(rounding.delta_r, m)},
                         {"r_measured", res.r_measured},
                         {"estimate", res.inner_product},
                         {"epsilon", eps},
                         {"bound", quip::error_bound(rounding.r_tilde, m, half)},
                         {"success", std::abs(measured - target) <= (cfg.slack ? 1.0 : 0.0)}});
    }
  }
  for (auto& per_trial : rows) {
    for (auto& r : per_trial) rep.rows.push_back(std::move(r));
  }
  finish(rep, Experiment::fig7);

  // Per-trial floor check.
  std::size_t below = 0;
  std::string first_bad;
  for (const auto& r : rep.rows) {
    if (r["success_probability"].get<double>() < kFourOverPiSq - 1e-9) {
      if (below++ == 0) first_bad = "trial " + std::to_string(r["trial"].get<std::size_t>());
    }
  }
  rep.check("success probability >= 4/pi^2 on every trial", below == 0,
            below == 0 ? "min over all m = " +
                             fmt(std::min_element(rep.summary["per_m"].begin(),
                                                  rep.summary["per_m"].end(),
                                                  [](const json& a, const json& b) {
                                                    return a["min_success_probability"] <
                                                           b["min_success_probability"];
                                                  })
                                     ->at("min_success_probability")
                                     .get<double>())
                       : std::to_string(below) + " violations, first " + first_bad);

  const json& per_m = rep.summary["per_m"];
  for (std::size_t i = 1; i < per_m.size(); ++i) {
    const double a = per_m[i - 1]["max_epsilon"].get<double>();
    const double b = per_m[i]["max_epsilon"].get<double>();
    rep.check("max epsilon shrinks from m=" + std::to_string(per_m[i - 1]["m"].get<int>()) +
                  " to m=" + std::to_string(per_m[i]["m"].get<int>()),
              b < a, fmt(a) + " -> " + fmt(b));
  }

  // Plot data: one row per trial, sorted by exact product.
  Curve fa, fb;
  fa.columns = fb.columns = {"exact"};
  for (int m : ms) {
    fa.columns.push_back("success_m" + std::to_string(m));
    fb.columns.push_back("epsilon_m" + std::to_string(m));
  }
  std::vector<std::size_t> order(cfg.trials);
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  const std::size_t per = ms.size();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rep.rows[a * per]["exact"].get<double>() < rep.rows[b * per]["exact"].get<double>();
  });
  for (std::size_t k : order) {
    std::vector<double> ra{rep.rows[k * per]["exact"].get<double>()};
    std::vector<double> rb = ra;
    for (std::size_t j = 0; j < per; ++j) {
      ra.push_back(rep.rows[k * per + j]["success_probability"].get<double>());
      rb.push_back(rep.rows[k * per + j]["epsilon"].get<double>());
    }
    fa.rows.push_back(std::move(ra));
    fb.rows.push_back(std::move(rb));
  }
  rep.curves["fig7a"] = std::move(fa);
  rep.curves["fig7b"] = std::move(fb);
  return rep;
}

ExperimentReport run_fig8(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep = make_report(cfg);
  const int m = cfg.m_values.front();
  std::vector<int> qs = cfg.q_values;
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  if (qs.empty()) throw InvalidArgument("fig8 needs at least one q value");

  const double h = std::ldexp(1.0, -(m + 1));
  const std::size_t n = cfg.trials;
  Curve curve;
  curve.columns = {"delta_r", "p"};
  for (int q : qs) curve.columns.push_back("p_q" + std::to_string(q));

  bool q1_matches = true, monotone = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = n == 1 ? 0.0 : -h + 2.0 * h * static_cast<double>(i) / static_cast<double>(n - 1);
    const double p = quip::slack_probability(dr, m);
    std::vector<double> line{dr, p};
    double prev = -1.0;
    for (int q : qs) {
      const double pq = quip::majority_vote_probability(p, q);
      rep.rows.push_back({{"index", i}, {"delta_r", dr}, {"q", q}, {"p", p}, {"p_q", pq}});
      line.push_back(pq);
      if (q == 1 && std::abs(pq - p) > 1e-15) q1_matches = false;
      if (p > 0.5 && prev >= 0.0 && pq < prev - 1e-15) monotone = false;
      prev = pq;
    }
    curve.rows.push_back(std::move(line));
  }
  finish(rep, Experiment::fig8);
  rep.curves["fig8"] = std::move(curve);

  for (const auto& e : rep.summary["per_q"]) {
    if (e["q"].get<int>() != 11) continue;
    const double worst = e["min_p_q"].get<double>();
    rep.check("worst-case p_q at q=11 in [0.997, 0.999]", worst >= 0.997 && worst <= 0.999,
              fmt(worst));
  }
  if (qs.front() == 1) rep.check("q=1 reproduces the slack probability", q1_matches);
  rep.check("p_q non-decreasing in q where p > 0.5", monotone);
  return rep;
}

ExperimentReport run_appendix_a(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep = make_report(cfg);
  std::vector<int> gammas = cfg.gammas;
  std::sort(gammas.begin(), gammas.end());

  const std::size_t pairs = cfg.trials;
  std::vector<std::vector<json>> rows(pairs);
  const double z_target = cfg.confidence;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pairs); ++i) {
    const auto k = static_cast<std::size_t>(i);
    Rng rng = make_stream(cfg.seed, k);
    std::vector<double> a(cfg.vector_dim), b(cfg.vector_dim);
    for (auto& x : a) x = 2.0 * uniform01(rng) - 1.0;
    for (auto& x : b) x = 2.0 * uniform01(rng) - 1.0;
    const auto ew = encode::normalize(encode::RealVector(a));
    const auto et = encode::normalize(encode::RealVector(b));
    const auto outcome =
        swaptest::ancilla_probabilities(swaptest::build_swap_test_state(ew, et));
    const double p1 = outcome.p1;
    for (int g : gammas) {
      const std::uint64_t shots = swaptest::empirical_required_shots(
          p1, g, cfg.confidence, cfg.coverage_trials, mix64(cfg.seed ^ (k << 8) ^ static_cast<std::uint64_t>(g)));
      // Normal-approximation count for the same absolute tolerance.
      json normal = nullptr;
      if (p1 > 0.0 && p1 < 1.0) {
        const double delta = std::ldexp(1.0, -g) / p1;
        std::uint64_t nn = 30;
        while (nn < (std::uint64_t{1} << 30) && swaptest::confidence_interval(p1, nn, delta) < z_target) {
          nn += std::max<std::uint64_t>(1, nn / 64);
        }
        normal = nn;
      }
      rows[k].push_back({{"pair", k},
                         {"gamma", g},
                         {"p1", p1},
                         {"inner_product_sq", outcome.inner_product_sq},
                         {"shots", shots},
                         {"normal_approx_shots", normal},
                         {"four_pow_gamma", swaptest::required_repetitions(g)}});
    }
  }
  for (auto& v : rows) {
    for (auto& r : v) rep.rows.push_back(std::move(r));
  }
  finish(rep, Experiment::appendix_a);

  const double slope = rep.summary["slope_log2_shots_vs_gamma"].get<double>();
  rep.check("slope of log2(shots) vs gamma in [1.7, 2.3]", slope >= 1.7 && slope <= 2.3, fmt(slope));

  Curve c;
  c.columns = {"gamma", "mean_shots", "four_pow_gamma"};
  for (const auto& e : rep.summary["per_gamma"]) {
    const int g = e["gamma"].get<int>();
    c.rows.push_back({static_cast<double>(g), e["mean_shots"].get<double>(), std::ldexp(1.0, 2 * g)});
  }
  rep.curves["appendix_a"] = std::move(c);
  return rep;
}

ExperimentReport run_mnist(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep = make_report(cfg);
  auto images = mnist::binary_filter(mnist::load_idx(cfg.images, cfg.labels));
  if (images.size() < cfg.train_count + cfg.test_count) {
    throw InvalidArgument("dataset has " + std::to_string(images.size()) +
                          " images of digits 0/1, need " +
                          std::to_string(cfg.train_count + cfg.test_count));
  }
  Rng split = make_stream(cfg.seed, 0x5117);
  std::shuffle(images.begin(), images.end(), split);
  const auto encoded = mnist::encode_all(images);
  const auto mid = encoded.begin() + static_cast<std::ptrdiff_t>(cfg.train_count);
  const std::vector<mnist::EncodedSample> train(encoded.begin(), mid);
  const std::vector<mnist::EncodedSample> test(mid, mid + static_cast<std::ptrdiff_t>(cfg.test_count));

  mnist::TrainConfig tc;
  tc.epochs = cfg.epochs;
  tc.lr = cfg.lr;
  tc.lr_decay = cfg.lr_decay;
  tc.seed = cfg.seed;
  tc.fire_label = static_cast<std::uint8_t>(cfg.fire_label);
  snn::NeuronParams params;
  const snn::ExactProvider exact;
  const auto trained = mnist::train_binary(train, test, params, exact, tc);

  Curve curve;
  curve.columns = {"epoch", "train_acc", "test_acc"};
  for (const auto& e : trained.trace) {
    rep.rows.push_back({{"epoch", e.epoch},
                        {"train_accuracy", e.train_accuracy},
                        {"test_accuracy", e.test_accuracy},
                        {"updates", e.updates}});
    curve.rows.push_back({static_cast<double>(e.epoch), e.train_accuracy, e.test_accuracy});
  }
  rep.curves["mnist"] = std::move(curve);
  finish(rep, Experiment::mnist);
  rep.summary["v_thr"] = trained.params.v_thr;
  rep.summary["weights"] = trained.weights;

  const auto final_eval = mnist::evaluate(test, trained.weights, trained.params, exact, tc.fire_label, cfg.seed);
  rep.summary["confusion"] = {{"tp", final_eval.confusion.tp},
                              {"tn", final_eval.confusion.tn},
                              {"fp", final_eval.confusion.fp},
                              {"fn", final_eval.confusion.fn}};

  const double final_acc = rep.summary["final_test_accuracy"].get<double>();
  rep.check("held-out accuracy >= 0.90", final_acc >= 0.90, fmt(final_acc));
  const double drop = rep.summary["max_test_drop"].get<double>();
  rep.check("no epoch-over-epoch test accuracy drop > 0.15", drop <= 0.15, fmt(drop));

  if (cfg.quip_subset > 0) {
    const std::size_t n = std::min(cfg.quip_subset, test.size());
    const std::vector<mnist::EncodedSample> subset(test.begin(), test.begin() + static_cast<std::ptrdiff_t>(n));
    const snn::QuipProvider qp(quip_config(cfg, cfg.m_values.front(),
                                           cfg.q_values.empty() ? 11 : cfg.q_values.front(), cfg.seed));
    const auto e_exact = mnist::evaluate(subset, trained.weights, trained.params, exact, tc.fire_label, cfg.seed);
    const auto e_quip = mnist::evaluate(subset, trained.weights, trained.params, qp, tc.fire_label, cfg.seed);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < n; ++i) agree += e_exact.fired[i] == e_quip.fired[i] ? 1 : 0;
    const double rate = static_cast<double>(agree) / static_cast<double>(n);
    rep.summary["quip_agreement"] = rate;
    rep.summary["quip_subset"] = n;
    rep.summary["quip_accuracy"] = e_quip.accuracy;
    rep.check("quantum provider agrees with exact on >= 95% of decisions", rate >= 0.95,
              std::to_string(agree) + "/" + std::to_string(n));
  }
  return rep;
}

ExperimentReport quip_single(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep = make_report(cfg);
  const int m = cfg.m_values.front();
  const int q = cfg.q_values.empty() ? 1 : cfg.q_values.front();
  const encode::RealVector w(cfg.w), t(cfg.t);
  const auto ew = encode::normalize(w);
  const auto et = encode::normalize(t);
  const double exact = quip::normalized_inner_product(ew, et);
  if (exact < -quip::kUnsignedTolerance) throw quip::UnsignedConstraintError(exact);

  Rng rng = make_stream(cfg.seed, 0);
  const auto res = quip::run_quip(ew, et, quip_config(cfg, m, q, cfg.seed), rng);
  const double theta = quip::theta_from_inner_product(std::clamp(exact, 0.0, 1.0));
  const auto rounding = quip::round_phase_index(theta, m);
  const double bound = quip::error_bound(rounding.r_tilde, m, slack_half_width(cfg.slack));
  const auto gc = quip::gate_count(w.logical_dim(), m);
  const double eps = std::abs(res.inner_product - exact);
  rep.rows.push_back({{"r_tilde", rounding.r_tilde},
                      {"delta_r", rounding.delta_r},
                      {"r_measured", res.r_measured},
                      {"theta", theta},
                      {"theta_hat", res.theta_hat},
                      {"estimate", res.inner_product},
                      {"exact", exact},
                      {"epsilon", eps},
                      {"bound", bound},
                      {"band", quip::to_string(res.band)},
                      {"support", res.support},
                      {"gate_count",
                       {{"register_qubits", gc.register_qubits},
                        {"target_qubits", gc.target_qubits},
                        {"ops_per_us", gc.ops_per_us},
                        {"ops_per_grover", gc.ops_per_grover},
                        {"grover_applications", gc.grover_applications},
                        {"iqft_hadamards", gc.iqft_hadamards},
                        {"iqft_controlled_phases", gc.iqft_controlled_phases},
                        {"iqft_swaps", gc.iqft_swaps},
                        {"total", gc.total}}}});
  finish(rep, Experiment::quip_single);
  rep.check("error within the bound at r_tilde", eps <= bound + 1e-12, fmt(eps) + " <= " + fmt(bound));
  return rep;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.id) {
    case Experiment::fig7: return run_fig7(cfg);
    case Experiment::fig8: return run_fig8(cfg);
    case Experiment::appendix_a: return run_appendix_a(cfg);
    case Experiment::mnist: return run_mnist(cfg);
    case Experiment::quip_single: return quip_single(cfg);
  }
  throw InvalidArgument("unknown experiment");
}

}  // namespace qsnn::xcli
