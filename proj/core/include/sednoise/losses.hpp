#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sednoise {

/// Predictions are clamped to [kProbabilityClamp, 1 - kProbabilityClamp]
/// before any logarithm or power.
inline constexpr double kProbabilityClamp = 1e-7;

/// One frame of multi-label targets and predictions: y is multi-hot in
/// {0, 1}^M, p holds the predicted class probabilities.
struct FrameLabels {
  std::vector<double> y;
  std::vector<double> p;
};

struct LossParams {
  double beta = 1.0;   // bootstrap blending, (0, 1]
  double alpha = 0.0;  // label smoothing, [0, 1)
  double q = 0.5;      // generalized cross-entropy exponent, (0, 1]
  double gamma = 1.0;  // active-component weight, >= 0
  double xi = 1.0;     // inactive-component weight, >= 0
};

enum class LossKind { Bce, Bootstrap, LabelSmooth, Gce };

/// A loss identifier: a base loss, optionally reweighted (gamma/xi applied
/// to the active/inactive components). Spelled "bce", "bootstrap",
/// "label_smooth", "gce", or "srl/<base>".
struct LossOp {
  LossKind base = LossKind::Bce;
  bool reweighted = false;

  friend bool operator==(const LossOp&, const LossOp&) = default;
};

std::optional<LossOp> loss_op_from_string(std::string_view name);
std::string to_string(const LossOp& op);

/// Throws ValidationError when a parameter the op consumes is out of range.
void validate_loss_params(const LossOp& op, const LossParams& params);

/// Loss value (summed over the class dimension) and its gradient with
/// respect to the predictions.
struct LossResult {
  double value = 0.0;
  std::vector<double> gradient;
};

/// Binary cross-entropy: sum_c [-y ln p - (1 - y) ln(1 - p)].
LossResult bce(const FrameLabels& fl);

/// Soft bootstrapping: cross-entropy against the blended target
/// beta * y + (1 - beta) * p. The blended target is treated as a constant
/// for the gradient (stop-gradient).
LossResult bootstrap(const FrameLabels& fl, double beta);

/// Label smoothing: cross-entropy against y * (1 - alpha) + alpha / 2.
LossResult label_smooth(const FrameLabels& fl, double alpha);

/// Generalized cross-entropy:
/// sum_c [y (1 - p^q) / q + (1 - y) (1 - (1 - p)^q) / q].
/// Behaves like MAE at q = 1 and approaches bce as q -> 0.
LossResult gce(const FrameLabels& fl, double q);

/// Simple reweighting: gamma * w_active + xi * w_inactive, where w_active
/// and w_inactive are the two additive components of the base loss (the
/// target-weighted and complement-weighted terms). gamma = xi = 1
/// reproduces the base loss exactly.
LossResult srl(LossKind base, const FrameLabels& fl, const LossParams& params);

LossResult eval_loss(const LossOp& op, const FrameLabels& fl,
                     const LossParams& params);

/// Blended bootstrap target (exposed for testing).
std::vector<double> bootstrap_target(const FrameLabels& fl, double beta);

/// Smoothed target (exposed for testing).
std::vector<double> smoothed_target(std::span<const double> y, double alpha);

/// Max relative error (unit floor on the denominator) between the analytic
/// gradient and central finite differences at step h. Internal targets are
/// held at the unperturbed predictions, matching the stop-gradient
/// formulation. Requires every p in [h, 1 - h].
double grad_check(const LossOp& op, const FrameLabels& fl,
                  const LossParams& params, double h);

/// Batch aggregation: the arithmetic mean of the per-frame loss values.
double mean_loss(const LossOp& op, std::span<const FrameLabels> frames,
                 const LossParams& params);

/// Hyperparameter grids of the studied sweeps.
namespace sweep {
std::vector<double> beta_grid();   // 0.1 .. 1.0 step 0.1
std::vector<double> alpha_grid();  // 0.05, 0.1, 0.2, 0.4, 0.8
std::vector<double> q_grid();      // 0.1 .. 0.9 step 0.1
std::vector<double> xi_grid();     // 1.0, 0.5, 0.25, 0.125, 0.0625
inline constexpr double kGammaDefault = 1.0;
}  // namespace sweep

/// One (op, frame, params) record of a loss fixture file.
struct LossFixtureRecord {
  LossOp op;
  FrameLabels frame;
  LossParams params;
};

/// Parses the fixture spec (JSON): an array of records, each
/// {"op": "...", "y": [...], "p": [...], "params": {...}}. Validation
/// failures name the offending record index.
std::vector<LossFixtureRecord> parse_loss_fixture_spec(
    std::string_view json_text);

/// JSON report with inputs, value, and gradient per record — a
/// cross-language verification artifact.
std::string loss_fixture_report(std::span<const LossFixtureRecord> records);

/// Runs grad_check over every record at step h, with predictions projected
/// into [0.01, 0.99] (finite differences degenerate near the boundaries);
/// returns the worst relative error.
double fixture_self_check(std::span<const LossFixtureRecord> records,
                          double h = 1e-6);

}  // namespace sednoise
