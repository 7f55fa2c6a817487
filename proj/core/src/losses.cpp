#include "sednoise/losses.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "sednoise/errors.hpp"

namespace sednoise {

namespace {

double clamp_probability(double p) {
  return std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
}

void check_frame(const FrameLabels& fl) {
  if (fl.y.size() != fl.p.size() || fl.y.empty()) {
    throw ValidationError("y and p must have the same nonzero length");
  }
  for (double y : fl.y) {
    if (y != 0.0 && y != 1.0) {
      throw ValidationError("targets must be 0 or 1");
    }
  }
}

// Per-class value and gradient of the two additive loss components: the
// target-weighted (active) term and the complement-weighted (inactive)
// term. `target` is treated as a constant; for GCE the split is on y itself.
struct ClassComponents {
  double active_value;
  double inactive_value;
  double active_grad;
  double inactive_grad;
};

ClassComponents class_components(LossKind base, double y, double target,
                                 double p, double q) {
  ClassComponents out{};
  if (base == LossKind::Gce) {
    out.active_value = y * (1.0 - std::pow(p, q)) / q;
    out.inactive_value = (1.0 - y) * (1.0 - std::pow(1.0 - p, q)) / q;
    out.active_grad = -y * std::pow(p, q - 1.0);
    out.inactive_grad = (1.0 - y) * std::pow(1.0 - p, q - 1.0);
  } else {
    out.active_value = -target * std::log(p);
    out.inactive_value = -(1.0 - target) * std::log(1.0 - p);
    out.active_grad = -target / p;
    out.inactive_grad = (1.0 - target) / (1.0 - p);
  }
  return out;
}

// The effective target the cross-entropy form is evaluated against. The
// bootstrap target blends in the (clamped) anchor predictions and is then
// held constant (stop-gradient).
std::vector<double> effective_target(LossKind base,
                                     std::span<const double> y,
                                     std::span<const double> p_anchor,
                                     const LossParams& params) {
  std::vector<double> target(y.begin(), y.end());
  switch (base) {
    case LossKind::Bce:
    case LossKind::Gce:
      break;
    case LossKind::Bootstrap:
      for (std::size_t c = 0; c < target.size(); ++c) {
        target[c] = params.beta * y[c] +
                    (1.0 - params.beta) * clamp_probability(p_anchor[c]);
      }
      break;
    case LossKind::LabelSmooth:
      for (double& t : target) t = t * (1.0 - params.alpha) + params.alpha / 2.0;
      break;
  }
  return target;
}

LossResult evaluate(const LossOp& op, std::span<const double> y,
                    std::span<const double> target,
                    std::span<const double> p_eval, const LossParams& params) {
  LossResult result;
  result.gradient.resize(y.size());
  const double gamma = op.reweighted ? params.gamma : 1.0;
  const double xi = op.reweighted ? params.xi : 1.0;
  for (std::size_t c = 0; c < y.size(); ++c) {
    const double p = clamp_probability(p_eval[c]);
    const ClassComponents parts =
        class_components(op.base, y[c], target[c], p, params.q);
    if (op.reweighted) {
      result.value += gamma * parts.active_value + xi * parts.inactive_value;
      result.gradient[c] = gamma * parts.active_grad + xi * parts.inactive_grad;
    } else {
      result.value += parts.active_value + parts.inactive_value;
      result.gradient[c] = parts.active_grad + parts.inactive_grad;
    }
  }
  return result;
}

}  // namespace

std::optional<LossOp> loss_op_from_string(std::string_view name) {
  bool reweighted = false;
  if (name.starts_with("srl/")) {
    reweighted = true;
    name.remove_prefix(4);
  }
  LossOp op;
  op.reweighted = reweighted;
  if (name == "bce") {
    op.base = LossKind::Bce;
  } else if (name == "bootstrap") {
    op.base = LossKind::Bootstrap;
  } else if (name == "label_smooth") {
    op.base = LossKind::LabelSmooth;
  } else if (name == "gce") {
    op.base = LossKind::Gce;
  } else {
    return std::nullopt;
  }
  return op;
}

std::string to_string(const LossOp& op) {
  std::string name;
  switch (op.base) {
    case LossKind::Bce: name = "bce"; break;
    case LossKind::Bootstrap: name = "bootstrap"; break;
    case LossKind::LabelSmooth: name = "label_smooth"; break;
    case LossKind::Gce: name = "gce"; break;
  }
  return op.reweighted ? "srl/" + name : name;
}

void validate_loss_params(const LossOp& op, const LossParams& params) {
  if (op.base == LossKind::Bootstrap &&
      !(params.beta > 0.0 && params.beta <= 1.0)) {
    throw ValidationError("beta must lie in (0, 1]");
  }
  if (op.base == LossKind::LabelSmooth &&
      !(params.alpha >= 0.0 && params.alpha < 1.0)) {
    throw ValidationError("alpha must lie in [0, 1)");
  }
  if (op.base == LossKind::Gce && !(params.q > 0.0 && params.q <= 1.0)) {
    throw ValidationError("q must lie in (0, 1]");
  }
  if (op.reweighted) {
    if (!(params.gamma >= 0.0) || !std::isfinite(params.gamma)) {
      throw ValidationError("gamma must be >= 0");
    }
    if (!(params.xi >= 0.0) || !std::isfinite(params.xi)) {
      throw ValidationError("xi must be >= 0");
    }
  }
}

LossResult eval_loss(const LossOp& op, const FrameLabels& fl,
                     const LossParams& params) {
  check_frame(fl);
  validate_loss_params(op, params);
  const std::vector<double> target =
      effective_target(op.base, fl.y, fl.p, params);
  return evaluate(op, fl.y, target, fl.p, params);
}

LossResult bce(const FrameLabels& fl) {
  return eval_loss(LossOp{LossKind::Bce, false}, fl, LossParams{});
}

LossResult bootstrap(const FrameLabels& fl, double beta) {
  LossParams params;
  params.beta = beta;
  return eval_loss(LossOp{LossKind::Bootstrap, false}, fl, params);
}

LossResult label_smooth(const FrameLabels& fl, double alpha) {
  LossParams params;
  params.alpha = alpha;
  return eval_loss(LossOp{LossKind::LabelSmooth, false}, fl, params);
}

LossResult gce(const FrameLabels& fl, double q) {
  LossParams params;
  params.q = q;
  return eval_loss(LossOp{LossKind::Gce, false}, fl, params);
}

LossResult srl(LossKind base, const FrameLabels& fl, const LossParams& params) {
  return eval_loss(LossOp{base, true}, fl, params);
}

std::vector<double> bootstrap_target(const FrameLabels& fl, double beta) {
  check_frame(fl);
  LossParams params;
  params.beta = beta;
  return effective_target(LossKind::Bootstrap, fl.y, fl.p, params);
}

std::vector<double> smoothed_target(std::span<const double> y, double alpha) {
  LossParams params;
  params.alpha = alpha;
  return effective_target(LossKind::LabelSmooth, y, {}, params);
}

double grad_check(const LossOp& op, const FrameLabels& fl,
                  const LossParams& params, double h) {
  check_frame(fl);
  validate_loss_params(op, params);
  if (!(h > 0.0 && h <= 1e-3)) {
    throw ValidationError("finite-difference step must lie in (0, 1e-3]");
  }
  // Targets are frozen at the unperturbed predictions, so the bootstrap
  // check validates the stop-gradient formula.
  const std::vector<double> target =
      effective_target(op.base, fl.y, fl.p, params);
  const LossResult analytic = evaluate(op, fl.y, target, fl.p, params);

  double worst = 0.0;
  std::vector<double> shifted(fl.p.begin(), fl.p.end());
  for (std::size_t c = 0; c < fl.p.size(); ++c) {
    const double p = fl.p[c];
    if (p < h || p > 1.0 - h) {
      throw ValidationError("grad_check requires p in [h, 1 - h]");
    }
    shifted[c] = p + h;
    const double above = evaluate(op, fl.y, target, shifted, params).value;
    shifted[c] = p - h;
    const double below = evaluate(op, fl.y, target, shifted, params).value;
    shifted[c] = p;
    const double numeric = (above - below) / (2.0 * h);
    const double denom =
        std::max({1.0, std::abs(analytic.gradient[c]), std::abs(numeric)});
    worst = std::max(worst, std::abs(analytic.gradient[c] - numeric) / denom);
  }
  return worst;
}

double mean_loss(const LossOp& op, std::span<const FrameLabels> frames,
                 const LossParams& params) {
  if (frames.empty()) {
    throw ValidationError("mean loss of an empty batch is undefined");
  }
  double sum = 0.0;
  for (const FrameLabels& fl : frames) sum += eval_loss(op, fl, params).value;
  return sum / static_cast<double>(frames.size());
}

namespace sweep {

std::vector<double> beta_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.1 * i);
  return grid;
}

std::vector<double> alpha_grid() { return {0.05, 0.1, 0.2, 0.4, 0.8}; }

std::vector<double> q_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(0.1 * i);
  return grid;
}

std::vector<double> xi_grid() { return {1.0, 0.5, 0.25, 0.125, 0.0625}; }

}  // namespace sweep

namespace {

std::vector<double> number_array(const nlohmann::json& node,
                                 const std::string& context) {
  if (!node.is_array() || node.empty()) {
    throw ValidationError(context + " must be a nonempty array of numbers");
  }
  std::vector<double> values;
  for (const auto& item : node) {
    if (!item.is_number()) {
      throw ValidationError(context + " must contain only numbers");
    }
    values.push_back(item.get<double>());
  }
  return values;
}

}  // namespace

std::vector<LossFixtureRecord> parse_loss_fixture_spec(
    std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("fixture spec is not valid JSON: ") +
                          e.what());
  }
  if (doc.is_object() && doc.contains("records")) doc = doc["records"];
  if (!doc.is_array()) {
    throw ValidationError("fixture spec must be an array of records");
  }

  std::vector<LossFixtureRecord> records;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string context = "record " + std::to_string(i);
    const auto& node = doc[i];
    if (!node.is_object() || !node.contains("op")) {
      throw ValidationError(context + ": missing 'op'");
    }
    LossFixtureRecord record;
    const auto op = loss_op_from_string(node["op"].get<std::string>());
    if (!op) {
      throw ValidationError(context + ": unknown op '" +
                            node["op"].get<std::string>() + "'");
    }
    record.op = *op;
    record.frame.y = number_array(node.at("y"), context + ": 'y'");
    record.frame.p = number_array(node.at("p"), context + ": 'p'");
    if (record.frame.y.size() != record.frame.p.size()) {
      throw ValidationError(context + ": 'y' and 'p' lengths differ");
    }
    for (double y : record.frame.y) {
      if (y != 0.0 && y != 1.0) {
        throw ValidationError(context + ": 'y' entries must be 0 or 1");
      }
    }
    for (double p : record.frame.p) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError(context + ": 'p' entries must lie in [0, 1]");
      }
    }
    if (node.contains("params")) {
      const auto& params = node["params"];
      record.params.beta = params.value("beta", record.params.beta);
      record.params.alpha = params.value("alpha", record.params.alpha);
      record.params.q = params.value("q", record.params.q);
      record.params.gamma = params.value("gamma", record.params.gamma);
      record.params.xi = params.value("xi", record.params.xi);
    }
    try {
      validate_loss_params(record.op, record.params);
    } catch (const ValidationError& e) {
      throw ValidationError(context + ": " + e.what());
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::string loss_fixture_report(std::span<const LossFixtureRecord> records) {
  nlohmann::json out = nlohmann::json::array();
  for (const LossFixtureRecord& record : records) {
    const LossResult result = eval_loss(record.op, record.frame, record.params);
    nlohmann::json entry = {
        {"op", to_string(record.op)},
        {"y", record.frame.y},
        {"p", record.frame.p},
        {"params",
         {{"beta", record.params.beta},
          {"alpha", record.params.alpha},
          {"q", record.params.q},
          {"gamma", record.params.gamma},
          {"xi", record.params.xi}}},
        {"value", result.value},
        {"gradient", result.gradient}};
    out.push_back(std::move(entry));
  }
  return out.dump(2) + "\n";
}

double fixture_self_check(std::span<const LossFixtureRecord> records,
                          double h) {
  double worst = 0.0;
  for (const LossFixtureRecord& record : records) {
    FrameLabels interior = record.frame;
    for (double& p : interior.p) p = std::clamp(p, 0.01, 0.99);
    worst = std::max(worst, grad_check(record.op, interior, record.params, h));
  }
  return worst;
}

}  // namespace sednoise
