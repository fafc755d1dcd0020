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

#ifndef FEDPGN_ACCOUNTANT_RDP_ACCOUNTANT_H_
#define FEDPGN_ACCOUNTANT_RDP_ACCOUNTANT_H_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace fedpgn {

// Privacy loss of a mechanism without noise.
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// How the second density in the per-round moment is read.
//   kStandard: mu1 = N(1, sigma^2), so (1 - q + q mu1/mu0) is the
//              subsampled-Gaussian mixture ratio.
//   kLiteral:  mu1 = q N(1, sigma^2) + (1 - q) N(0, sigma^2), i.e. the
//              mixture is applied twice (equivalent to rate q^2).
enum class MixtureReading { kStandard, kLiteral };

std::string ToString(MixtureReading reading);

// Orders 1.25, 1.5, 1.75, 2, 2.5, ..., 10 (step 0.5), every integer up to
// 64, then 128 and 256.
std::vector<double> DefaultAlphaGrid();

// ln E_{z ~ N(0, sigma^2)} [(1 - q + q mu1(z)/mu0(z))^alpha], evaluated by
// composite Gauss-Legendre quadrature in log space. Never negative.
double LogMoment(double q, double sigma, double alpha,
                 MixtureReading reading = MixtureReading::kStandard);

// Renyi DP of order alpha for one round: LogMoment / (alpha - 1).
// Returns kUnbounded when sigma == 0. Throws ConfigError when sigma < 0,
// q outside (0, 1], or alpha <= 1.
double RdpPerRound(double q, double sigma, double alpha,
                   MixtureReading reading = MixtureReading::kStandard);

// RDP -> (epsilon, delta) conversion term added to the composed RDP:
// ((alpha - 1) log(1 - 1/alpha) - log(alpha) - log(delta)) / (alpha - 1).
double ConversionOffset(double alpha, double delta);

struct PrivacyEstimate {
  double epsilon = 0.0;      // kUnbounded when sigma == 0 and rounds > 0
  double alpha_star = 0.0;   // minimizing order
  double epsilon_bar = 0.0;  // composed RDP at alpha_star
};

// Minimum over the grid of rounds * RdpPerRound(alpha) + ConversionOffset.
// Throws ConfigError on an empty grid or delta outside (0, 1).
PrivacyEstimate ComposeAndConvert(
    double q, double sigma, std::size_t rounds, double delta,
    std::span<const double> alpha_grid,
    MixtureReading reading = MixtureReading::kStandard);

inline constexpr double kCalibrationSigmaMin = 1e-2;
inline constexpr double kCalibrationSigmaMax = 1e3;

// Smallest-noise sigma in [kCalibrationSigmaMin, kCalibrationSigmaMax] whose
// epsilon after `rounds` rounds matches target_epsilon to within 0.01%
// relative (bisection in log sigma). Checks that epsilon is non-increasing
// in sigma across the bracket first and throws NumericError if not; throws
// ConfigError when the target lies outside the bracket's epsilon range.
double CalibrateSigma(double target_epsilon, double q, std::size_t rounds,
                      double delta, std::span<const double> alpha_grid,
                      MixtureReading reading = MixtureReading::kStandard);

// Running (epsilon, delta) account of a training run. Per-order RDP is
// computed once at construction; Advance only bumps the round counter.
class PrivacyLedger {
 public:
  PrivacyLedger(double sigma, double q, double delta,
                std::vector<double> alpha_grid = DefaultAlphaGrid(),
                MixtureReading reading = MixtureReading::kStandard);

  void Advance(std::size_t rounds = 1) { rounds_consumed_ += rounds; }
  PrivacyEstimate Current() const { return EstimateAt(rounds_consumed_); }
  PrivacyEstimate EstimateAt(std::size_t rounds) const;

  double sigma() const { return sigma_; }
  double q() const { return q_; }
  double delta() const { return delta_; }
  std::size_t rounds_consumed() const { return rounds_consumed_; }
  MixtureReading reading() const { return reading_; }

  const std::vector<std::string>& caveats() const { return caveats_; }
  void AddCaveat(std::string caveat) { caveats_.push_back(std::move(caveat)); }

 private:
  double sigma_;
  double q_;
  double delta_;
  std::size_t rounds_consumed_ = 0;
  MixtureReading reading_;
  std::vector<double> alphas_;
  std::vector<double> rdp_;
  std::vector<std::string> caveats_;
};

}  // namespace fedpgn

#endif  // FEDPGN_ACCOUNTANT_RDP_ACCOUNTANT_H_
