#include "qsnn/xcli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qsnn::xcli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
  std::vector<T> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text + ",");
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw InvalidArgument("empty item in list '" + text + "'");
    out.push_back(parse(item));
  }
  return out;
}

std::uint64_t parse_u64(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.front() == '-') throw InvalidArgument("not an unsigned integer: " + s);
  return v;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw InvalidArgument("not a number: " + s);
  return v;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw InvalidArgument("not an integer: " + s);
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw InvalidArgument("not a boolean: " + s);
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) { return parse_list<int>(text, parse_int); }

std::vector<double> parse_double_list(const std::string& text) {
  return parse_list<double>(text, parse_double);
}

Experiment parse_experiment(const std::string& text) {
  if (text == "fig7" || text == "fig7a" || text == "fig7b") return Experiment::fig7;
  if (text == "fig8") return Experiment::fig8;
  if (text == "appendixA" || text == "appendix-a") return Experiment::appendix_a;
  if (text == "mnist") return Experiment::mnist;
  if (text == "quip" || text == "quip-single") return Experiment::quip_single;
  throw InvalidArgument("unknown experiment: " + text);
}

const char* to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::fig7: return "fig7";
    case Experiment::fig8: return "fig8";
    case Experiment::appendix_a: return "appendixA";
    case Experiment::mnist: return "mnist";
    case Experiment::quip_single: return "quip-single";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw InvalidArgument("trial count must be >= 1");
  if (m_values.empty()) throw InvalidArgument("at least one m value is required");
  for (int m : m_values) {
    if (m < 2 || m > 20) throw InvalidArgument("m values must lie in [2, 20]");
  }
  for (int q : q_values) {
    if (q < 1 || q % 2 == 0) throw InvalidArgument("q values must be odd and positive");
  }
  for (int g : gammas) {
    if (g < 1 || g > 16) throw InvalidArgument("gamma values must lie in [1, 16]");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) throw InvalidArgument("confidence must be in (0, 1)");
  if (fire_label < 0 || fire_label > 1) throw InvalidArgument("fire_label must be 0 or 1");
  if (id == Experiment::quip_single && (w.empty() || w.size() != t.size())) {
    throw InvalidArgument("quip needs two vectors of equal, non-zero length");
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["experiment"] = to_string(id);
  j["m"] = m_values;
  j["q"] = q_values;
  j["trials"] = trials;
  j["seed"] = seed;
  j["out"] = out.string();
  j["mode"] = quip::to_string(mode);
  j["slack"] = slack;
  switch (id) {
    case Experiment::fig7:
      j["pair_scheme"] = "theta ~ U[0, pi/4], w = (1, 0), t = (sqrt(cos 2theta), sqrt(1 - cos 2theta))";
      break;
    case Experiment::appendix_a:
      j["gammas"] = gammas;
      j["coverage_trials"] = coverage_trials;
      j["confidence"] = confidence;
      j["vector_dim"] = vector_dim;
      break;
    case Experiment::mnist:
      j["images"] = images.string();
      j["labels"] = labels.string();
      j["train_count"] = train_count;
      j["test_count"] = test_count;
      j["epochs"] = epochs;
      j["lr"] = lr;
      j["lr_decay"] = lr_decay;
      j["fire_label"] = fire_label;
      j["quip_subset"] = quip_subset;
      break;
    case Experiment::quip_single:
      j["w"] = w;
      j["t"] = t;
      break;
    case Experiment::fig8:
      break;
  }
  return j;
}

ExperimentConfig defaults_for(Experiment id) {
  ExperimentConfig c;
  c.id = id;
  if (const char* env = std::getenv(kSeedVariable); env != nullptr && *env != '\0') {
    c.seed = parse_u64(env);
  }
  switch (id) {
    case Experiment::fig7:
      c.m_values = {4, 6, 8, 10};
      c.q_values = {11};
      c.trials = 1000;
      break;
    case Experiment::fig8:
      c.m_values = {10};
      c.q_values = {1, 3, 5, 7, 9, 11};
      c.trials = 10001;
      break;
    case Experiment::appendix_a:
      c.m_values = {10};
      c.trials = 20;
      break;
    case Experiment::mnist:
      c.m_values = {10};
      c.q_values = {11};
      c.trials = 1;
      break;
    case Experiment::quip_single:
      c.m_values = {10};
      c.q_values = {11};
      c.trials = 1;
      break;
  }
  return c;
}

void apply_setting(ExperimentConfig& c, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string v = trim(raw_value);
  if (key == "experiment") c.id = parse_experiment(v);
  else if (key == "m") c.m_values = parse_int_list(v);
  else if (key == "q") c.q_values = parse_int_list(v);
  else if (key == "trials") c.trials = parse_u64(v);
  else if (key == "seed") c.seed = parse_u64(v);
  else if (key == "out") c.out = v;
  else if (key == "mode") c.mode = quip::parse_mode(v);
  else if (key == "slack") c.slack = parse_bool(v);
  else if (key == "gammas") c.gammas = parse_int_list(v);
  else if (key == "coverage_trials") c.coverage_trials = parse_u64(v);
  else if (key == "confidence") c.confidence = parse_double(v);
  else if (key == "vector_dim") c.vector_dim = parse_u64(v);
  else if (key == "images") c.images = v;
  else if (key == "labels") c.labels = v;
  else if (key == "train_count") c.train_count = parse_u64(v);
  else if (key == "test_count") c.test_count = parse_u64(v);
  else if (key == "epochs") c.epochs = parse_u64(v);
  else if (key == "lr") c.lr = parse_double(v);
  else if (key == "lr_decay") c.lr_decay = parse_double(v);
  else if (key == "fire_label") c.fire_label = parse_int(v);
  else if (key == "quip_subset") c.quip_subset = parse_u64(v);
  else if (key == "w") c.w = parse_double_list(v);
  else if (key == "t") c.t = parse_double_list(v);
  else throw InvalidArgument("unknown config key: " + key);
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

}  // namespace qsnn::xcli
