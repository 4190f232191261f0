#include "bushdx/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "bushdx/error.hpp"

namespace bushdx {

namespace {

constexpr double kInitRange = 0.5;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// [-kInitRange, kInitRange) from the top 53 bits of a 64-bit draw; avoids the
// implementation-defined std::uniform_real_distribution.
double symmetric_uniform(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return (2.0 * u - 1.0) * kInitRange;
}

struct Activations {
  std::array<double, kMlpHidden> hidden{};
  double output = 0.0;
};

Activations run(const MlpModel& m, std::span<const double> x) {
  Activations a;
  for (std::size_t j = 0; j < kMlpHidden; ++j) {
    double z = m.hidden_bias[j];
    for (std::size_t i = 0; i < kMlpInputs; ++i) z += x[i] * m.input_weights[i * kMlpHidden + j];
    a.hidden[j] = sigmoid(z);
  }
  double z = m.output_bias;
  for (std::size_t j = 0; j < kMlpHidden; ++j) z += a.hidden[j] * m.output_weights[j];
  a.output = sigmoid(z);
  return a;
}

void check_dataset(const LabeledDataset& data) {
  if (data.empty()) throw PreconditionError("training dataset is empty");
  bool has_accept = false;
  bool has_reject = false;
  for (const auto& s : data) {
    if (s.label != 0 && s.label != 1) throw StructuralError("labels must be 0 or 1");
    (s.label == 1 ? has_reject : has_accept) = true;
  }
  if (!has_accept || !has_reject) {
    throw TrainingError("training dataset needs both Accept and Reject samples");
  }
}

}  // namespace

FeatureVector default_normalization() {
  FeatureVector d{};
  for (GasId gas : kAllGases) d[index(gas)] = catalog_entry(gas).dangerous_onset();
  return d;
}

FeatureVector normalize_features(const GasReading& reading, const FeatureVector& divisors) {
  FeatureVector f{};
  const double tdcg = compute_tdcg(reading);
  for (GasId gas : kAllGases) {
    const double v = gas == GasId::tdcg ? tdcg : concentration(reading, gas);
    f[index(gas)] = v / divisors[index(gas)];
  }
  return f;
}

std::vector<double> MlpModel::parameters() const {
  std::vector<double> p;
  p.reserve(kParameterCount);
  p.insert(p.end(), input_weights.begin(), input_weights.end());
  p.insert(p.end(), hidden_bias.begin(), hidden_bias.end());
  p.insert(p.end(), output_weights.begin(), output_weights.end());
  p.push_back(output_bias);
  return p;
}

void MlpModel::set_parameters(std::span<const double> p) {
  if (p.size() != kParameterCount) {
    throw StructuralError("expected " + std::to_string(kParameterCount) + " parameters, got " +
                          std::to_string(p.size()));
  }
  auto it = p.begin();
  std::copy_n(it, input_weights.size(), input_weights.begin());
  it += input_weights.size();
  std::copy_n(it, hidden_bias.size(), hidden_bias.begin());
  it += hidden_bias.size();
  std::copy_n(it, output_weights.size(), output_weights.begin());
  it += output_weights.size();
  output_bias = *it;
}

void MlpModel::validate() const {
  for (double w : parameters()) {
    if (!std::isfinite(w)) throw StructuralError("model contains a non-finite weight");
  }
  for (double d : divisors) {
    if (!std::isfinite(d) || d <= 0.0) {
      throw StructuralError("normalization divisors must be finite and positive");
    }
  }
}

MlpModel init_model(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MlpModel m;
  m.init_seed = seed;
  for (auto& w : m.input_weights) w = symmetric_uniform(rng);
  for (auto& b : m.hidden_bias) b = symmetric_uniform(rng);
  for (auto& w : m.output_weights) w = symmetric_uniform(rng);
  m.output_bias = symmetric_uniform(rng);
  return m;
}

double forward(const MlpModel& model, std::span<const double> features) {
  if (features.size() != kMlpInputs) {
    throw StructuralError("forward expects " + std::to_string(kMlpInputs) + " features, got " +
                          std::to_string(features.size()));
  }
  return run(model, features).output;
}

LabeledDataset make_dataset(std::span<const GasReading> readings, std::span<const Decision> labels,
                            const FeatureVector& divisors) {
  if (readings.size() != labels.size()) {
    throw StructuralError("readings and labels differ in length");
  }
  LabeledDataset data;
  data.reserve(readings.size());
  for (std::size_t k = 0; k < readings.size(); ++k) {
    data.push_back({normalize_features(readings[k], divisors),
                    binary_decision(labels[k]) == Decision::reject ? 1 : 0});
  }
  return data;
}

double mse_loss(const MlpModel& model, const LabeledDataset& data) {
  if (data.empty()) throw PreconditionError("loss over an empty dataset");
  double sum = 0.0;
  for (const auto& s : data) {
    const double e = run(model, s.features).output - s.label;
    sum += e * e;
  }
  return sum / static_cast<double>(data.size());
}

LossGradient loss_gradient(const MlpModel& model, const LabeledDataset& data) {
  if (data.empty()) throw PreconditionError("gradient over an empty dataset");
  constexpr std::size_t kHiddenBiasAt = kMlpInputs * kMlpHidden;
  constexpr std::size_t kOutputWeightsAt = kHiddenBiasAt + kMlpHidden;
  constexpr std::size_t kOutputBiasAt = kOutputWeightsAt + kMlpHidden;

  LossGradient g;
  g.gradient.assign(MlpModel::kParameterCount, 0.0);
  const double n = static_cast<double>(data.size());
  for (const auto& s : data) {
    const auto a = run(model, s.features);
    const double err = a.output - s.label;
    g.loss += err * err;
    const double delta_out = (2.0 / n) * err * a.output * (1.0 - a.output);
    g.gradient[kOutputBiasAt] += delta_out;
    for (std::size_t j = 0; j < kMlpHidden; ++j) {
      g.gradient[kOutputWeightsAt + j] += delta_out * a.hidden[j];
      const double delta_hidden =
          delta_out * model.output_weights[j] * a.hidden[j] * (1.0 - a.hidden[j]);
      g.gradient[kHiddenBiasAt + j] += delta_hidden;
      for (std::size_t i = 0; i < kMlpInputs; ++i) {
        g.gradient[i * kMlpHidden + j] += delta_hidden * s.features[i];
      }
    }
  }
  g.loss /= n;
  return g;
}

TrainResult train(const MlpModel& model, const LabeledDataset& data, const TrainOptions& options) {
  if (options.epochs == 0) throw PreconditionError("epochs must be at least 1");
  if (!std::isfinite(options.learning_rate) || options.learning_rate <= 0.0) {
    throw PreconditionError("learning rate must be positive");
  }
  check_dataset(data);

  TrainResult result{model, {}};
  result.losses.reserve(options.epochs);
  auto params = model.parameters();
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    const auto g = loss_gradient(result.model, data);
    result.losses.push_back(g.loss);
    for (std::size_t k = 0; k < params.size(); ++k) params[k] -= options.learning_rate * g.gradient[k];
    result.model.set_parameters(params);
  }
  TrainingMetadata meta;
  meta.seed = model.init_seed;
  meta.epochs = options.epochs;
  meta.learning_rate = options.learning_rate;
  meta.final_loss = mse_loss(result.model, data);
  result.model.training = meta;
  return result;
}

Decision classify(const MlpModel& model, const GasReading& reading) {
  const auto f = normalize_features(reading, model.divisors);
  return forward(model, f) > 0.5 ? Decision::reject : Decision::accept;
}

Decision neuro_fuzzy_classify(double rank) {
  return rank > kRejectAbove ? Decision::reject : Decision::accept;
}

Decision binary_decision(Decision d) {
  return d == Decision::reject ? Decision::reject : Decision::accept;
}

namespace {

template <std::size_t N>
nlohmann::ordered_json array_json(const std::array<double, N>& a) {
  return nlohmann::ordered_json(std::vector<double>(a.begin(), a.end()));
}

template <std::size_t N>
void read_array(const nlohmann::ordered_json& j, const char* key, std::array<double, N>& out) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != N) {
    throw StructuralError(std::string("model field '") + key + "' must be an array of " +
                          std::to_string(N) + " numbers");
  }
  for (std::size_t k = 0; k < N; ++k) out[k] = j.at(key).at(k).get<double>();
}

}  // namespace

nlohmann::ordered_json model_to_json(const MlpModel& model) {
  nlohmann::ordered_json j;
  j["format"] = "bushdx-mlp";
  j["version"] = 1;
  j["architecture"] = {
      {"inputs", kMlpInputs},      {"hidden", kMlpHidden},         {"outputs", 1},
      {"activation", "sigmoid"},   {"loss", "mse"},                {"optimizer", "full-batch-gradient-descent"},
      {"decision_threshold", 0.5}, {"input_order", [] {
         std::vector<std::string> names;
         for (GasId g : kAllGases) names.emplace_back(to_string(g));
         return names;
       }()},
  };
  j["input_weights_shape"] = {kMlpInputs, kMlpHidden};
  j["input_weights"] = array_json(model.input_weights);
  j["hidden_bias"] = array_json(model.hidden_bias);
  j["output_weights_shape"] = {kMlpHidden, 1};
  j["output_weights"] = array_json(model.output_weights);
  j["output_bias"] = model.output_bias;
  j["normalization_divisors"] = array_json(model.divisors);
  if (model.training) {
    j["training"] = {{"seed", model.training->seed},
                     {"epochs", model.training->epochs},
                     {"learning_rate", model.training->learning_rate},
                     {"final_loss", model.training->final_loss}};
  }
  return j;
}

MlpModel model_from_json(const nlohmann::ordered_json& j) {
  try {
    if (j.value("format", std::string()) != "bushdx-mlp") {
      throw StructuralError("not a bushdx-mlp model document");
    }
    const auto& arch = j.at("architecture");
    if (arch.at("inputs").get<std::size_t>() != kMlpInputs ||
        arch.at("hidden").get<std::size_t>() != kMlpHidden || arch.at("outputs").get<int>() != 1) {
      throw StructuralError("model shape must be 10-7-1");
    }
    MlpModel m;
    read_array(j, "input_weights", m.input_weights);
    read_array(j, "hidden_bias", m.hidden_bias);
    read_array(j, "output_weights", m.output_weights);
    m.output_bias = j.at("output_bias").get<double>();
    read_array(j, "normalization_divisors", m.divisors);
    if (j.contains("training")) {
      const auto& t = j.at("training");
      m.init_seed = t.at("seed").get<std::uint64_t>();
      m.training = TrainingMetadata{t.at("seed").get<std::uint64_t>(), t.at("epochs").get<std::size_t>(),
                                    t.at("learning_rate").get<double>(),
                                    t.at("final_loss").get<double>()};
    }
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("malformed model document: ") + e.what());
  }
}

}  // namespace bushdx
