//
// Copyright 2026 The fedpgn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "fedpgn/accountant/rdp_accountant.h"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "fedpgn/errors.h"

namespace fedpgn {
namespace {

// Half-width of the integration window in units of sigma beyond the region
// [-1, alpha + 1] that contains every mode of the integrand.
constexpr double kWindowSigmas = 20.0;
constexpr std::size_t kMinPanels = 2000;
// Panels never span more than half a standard deviation.
constexpr double kMaxPanelSigmas = 0.5;

using Gauss = boost::math::quadrature::gauss<double, 7>;

double LogAddExp(double a, double b) {
  const double hi = std::max(a, b);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

struct Node {
  double z;
  double weight;
};

std::vector<Node> QuadratureNodes(double lo, double hi, std::size_t panels) {
  const auto& abscissa = Gauss::abscissa();
  const auto& weights = Gauss::weights();
  std::vector<Node> nodes;
  nodes.reserve(panels * (2 * abscissa.size()));
  const double width = (hi - lo) / static_cast<double>(panels);
  const double half = 0.5 * width;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = lo + (static_cast<double>(p) + 0.5) * width;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      if (abscissa[i] == 0.0) {
        nodes.push_back({mid, half * weights[i]});
        continue;
      }
      nodes.push_back({mid - half * abscissa[i], half * weights[i]});
      nodes.push_back({mid + half * abscissa[i], half * weights[i]});
    }
  }
  return nodes;
}

void ValidateMechanism(double q, double sigma, double alpha) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("noise multiplier must be finite and >= 0");
  }
  if (!(q > 0.0 && q <= 1.0)) throw ConfigError("sampling rate q must be in (0, 1]");
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw ConfigError("Renyi order alpha must be > 1");
  }
}

}  // namespace

std::string ToString(MixtureReading reading) {
  return reading == MixtureReading::kStandard ? "standard" : "literal";
}

std::vector<double> DefaultAlphaGrid() {
  std::vector<double> grid = {1.25, 1.5, 1.75};
  for (int i = 4; i <= 20; ++i) grid.push_back(0.5 * i);
  for (int a = 11; a <= 64; ++a) grid.push_back(a);
  grid.push_back(128);
  grid.push_back(256);
  return grid;
}

double LogMoment(double q, double sigma, double alpha,
                 MixtureReading reading) {
  ValidateMechanism(q, sigma, alpha);
  if (sigma == 0.0) return kUnbounded;
  const double rate = reading == MixtureReading::kStandard ? q : q * q;
  const double var = sigma * sigma;
  const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi * var);
  const double log_keep = std::log1p(-rate);
  const double log_rate = std::log(rate);

  // log(1 - rate + rate * mu1(z) / mu0(z)), with mu1/mu0 = exp((2z - 1) / 2var).
  auto log_ratio = [&](double z) {
    const double t = (2.0 * z - 1.0) / (2.0 * var);
    return rate == 1.0 ? t : LogAddExp(log_keep, log_rate + t);
  };

  const double lo = -1.0 - kWindowSigmas * sigma;
  const double hi = alpha + 1.0 + kWindowSigmas * sigma;
  const auto panels = std::max(
      kMinPanels,
      static_cast<std::size_t>(std::ceil((hi - lo) / (kMaxPanelSigmas * sigma))));
  const auto nodes = QuadratureNodes(lo, hi, panels);

  std::vector<double> terms(nodes.size());
  double max_term = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double z = nodes[i].z;
    terms[i] = std::log(nodes[i].weight) + log_norm - z * z / (2.0 * var) +
               alpha * log_ratio(z);
    max_term = std::max(max_term, terms[i]);
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - max_term);
  double log_moment = max_term + std::log(sum);

  if (log_moment < 1e-3) {
    // Near q -> 0 the moment is 1 + O(q^2); integrate (ratio^alpha - 1)
    // directly against mu0 (whose integral is exactly 1) to keep relative
    // precision.
    double excess = 0.0;
    for (const Node& node : nodes) {
      const double z = node.z;
      excess += node.weight * std::exp(log_norm - z * z / (2.0 * var)) *
                std::expm1(alpha * log_ratio(z));
    }
    log_moment = std::log1p(excess);
  }
  return std::max(log_moment, 0.0);
}

double RdpPerRound(double q, double sigma, double alpha,
                   MixtureReading reading) {
  ValidateMechanism(q, sigma, alpha);
  if (sigma == 0.0) return kUnbounded;
  return LogMoment(q, sigma, alpha, reading) / (alpha - 1.0);
}

double ConversionOffset(double alpha, double delta) {
  return ((alpha - 1.0) * std::log1p(-1.0 / alpha) - std::log(alpha) -
          std::log(delta)) /
         (alpha - 1.0);
}

PrivacyEstimate ComposeAndConvert(double q, double sigma, std::size_t rounds,
                                  double delta,
                                  std::span<const double> alpha_grid,
                                  MixtureReading reading) {
  PrivacyLedger ledger(sigma, q, delta,
                       std::vector<double>(alpha_grid.begin(), alpha_grid.end()),
                       reading);
  return ledger.EstimateAt(rounds);
}

double CalibrateSigma(double target_epsilon, double q, std::size_t rounds,
                      double delta, std::span<const double> alpha_grid,
                      MixtureReading reading) {
  if (!(target_epsilon > 0.0)) throw ConfigError("target epsilon must be > 0");
  if (rounds < 1) throw ConfigError("calibration needs at least one round");
  auto eps_at = [&](double sigma) {
    return ComposeAndConvert(q, sigma, rounds, delta, alpha_grid, reading)
        .epsilon;
  };

  constexpr int kProbes = 9;
  const double log_lo = std::log(kCalibrationSigmaMin);
  const double log_hi = std::log(kCalibrationSigmaMax);
  double previous = kUnbounded;
  double eps_lo = 0.0;
  double eps_hi = 0.0;
  for (int i = 0; i < kProbes; ++i) {
    const double sigma =
        std::exp(log_lo + (log_hi - log_lo) * i / (kProbes - 1));
    const double eps = eps_at(sigma);
    if (eps > previous * (1.0 + 1e-12)) {
      throw NumericError("epsilon is not monotone in sigma over the bracket");
    }
    previous = eps;
    if (i == 0) eps_lo = eps;
    eps_hi = eps;
  }
  if (target_epsilon > eps_lo || target_epsilon < eps_hi) {
    throw ConfigError("target epsilon unreachable for sigma in [1e-2, 1e3]");
  }

  double a = log_lo;
  double b = log_hi;
  double mid = 0.5 * (a + b);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (a + b);
    const double eps = eps_at(std::exp(mid));
    if (std::abs(eps - target_epsilon) <= 1e-4 * target_epsilon) break;
    // Larger sigma -> smaller epsilon.
    if (eps > target_epsilon) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return std::exp(mid);
}

PrivacyLedger::PrivacyLedger(double sigma, double q, double delta,
                             std::vector<double> alpha_grid,
                             MixtureReading reading)
    : sigma_(sigma),
      q_(q),
      delta_(delta),
      reading_(reading),
      alphas_(std::move(alpha_grid)) {
  if (alphas_.empty()) throw ConfigError("alpha grid is empty");
  if (!(delta_ > 0.0 && delta_ < 1.0)) throw ConfigError("delta must be in (0, 1)");
  rdp_.reserve(alphas_.size());
  for (double alpha : alphas_) rdp_.push_back(RdpPerRound(q_, sigma_, alpha, reading_));
}

PrivacyEstimate PrivacyLedger::EstimateAt(std::size_t rounds) const {
  PrivacyEstimate best{kUnbounded, std::numeric_limits<double>::quiet_NaN(),
                       kUnbounded};
  for (std::size_t i = 0; i < alphas_.size(); ++i) {
    const double composed =
        rounds == 0 ? 0.0 : static_cast<double>(rounds) * rdp_[i];
    const double eps = composed + ConversionOffset(alphas_[i], delta_);
    if (eps < best.epsilon) best = {eps, alphas_[i], composed};
  }
  return best;
}

}  // namespace fedpgn
