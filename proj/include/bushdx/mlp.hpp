#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bushdx/defuzz.hpp"
#include "bushdx/fuzzifier.hpp"
#include "json.hpp"

namespace bushdx {

inline constexpr std::size_t kMlpInputs = kGasCount;
inline constexpr std::size_t kMlpHidden = 7;

using FeatureVector = std::array<double, kMlpInputs>;

// Dangerous-plateau onset of every gas in GasId order.
FeatureVector default_normalization();

// Each concentration (TDCG recomputed) divided by its divisor; values may exceed 1.
FeatureVector normalize_features(const GasReading& reading,
                                 const FeatureVector& divisors = default_normalization());

struct TrainingMetadata {
  std::uint64_t seed = 0;
  std::size_t epochs = 0;
  double learning_rate = 0.0;
  double final_loss = 0.0;

  bool operator==(const TrainingMetadata&) const = default;
};

// 10-7-1 network with logistic sigmoid on both layers.
struct MlpModel {
  // input_weights[i * kMlpHidden + j] connects input i to hidden unit j.
  std::array<double, kMlpInputs * kMlpHidden> input_weights{};
  std::array<double, kMlpHidden> hidden_bias{};
  std::array<double, kMlpHidden> output_weights{};
  double output_bias = 0.0;
  FeatureVector divisors = default_normalization();
  std::uint64_t init_seed = 0;
  std::optional<TrainingMetadata> training;

  static constexpr std::size_t kParameterCount =
      kMlpInputs * kMlpHidden + kMlpHidden + kMlpHidden + 1;

  // Parameters in the order input_weights, hidden_bias, output_weights, output_bias.
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> p);

  // Throws StructuralError on non-finite weights or non-positive divisors.
  void validate() const;

  bool operator==(const MlpModel&) const = default;
};

MlpModel init_model(std::uint64_t seed);

double forward(const MlpModel& model, std::span<const double> features);

struct LabeledSample {
  FeatureVector features{};
  int label = 0;  // 0 accept, 1 reject
};

using LabeledDataset = std::vector<LabeledSample>;

LabeledDataset make_dataset(std::span<const GasReading> readings, std::span<const Decision> labels,
                            const FeatureVector& divisors = default_normalization());

// Mean squared error over the dataset.
double mse_loss(const MlpModel& model, const LabeledDataset& data);

struct LossGradient {
  double loss = 0.0;
  std::vector<double> gradient;  // same order as MlpModel::parameters()
};

LossGradient loss_gradient(const MlpModel& model, const LabeledDataset& data);

struct TrainOptions {
  std::size_t epochs = 5000;
  double learning_rate = 0.5;
};

struct TrainResult {
  MlpModel model;
  std::vector<double> losses;  // loss before each epoch's update
};

// Full-batch gradient descent. Throws PreconditionError for zero epochs, a
// non-positive learning rate or an empty dataset, TrainingError when only one
// class is present.
TrainResult train(const MlpModel& model, const LabeledDataset& data, const TrainOptions& options);

// Reject when the score is strictly above 0.5.
Decision classify(const MlpModel& model, const GasReading& reading);

// Reject when the crisp fuzzy rank is strictly above 30.
Decision neuro_fuzzy_classify(double rank);

// Binary label used for agreement statistics: reject iff rank > 30.
Decision binary_decision(Decision d);

nlohmann::ordered_json model_to_json(const MlpModel& model);
MlpModel model_from_json(const nlohmann::ordered_json& j);

}  // namespace bushdx
