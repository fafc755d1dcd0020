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

// Independent reference computations used by the unit and acceptance tests.
// None of them share code with the library routines they check.

#ifndef FEDPGN_TESTS_TESTING_ORACLES_H_
#define FEDPGN_TESTS_TESTING_ORACLES_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace fedpgn::testing {

// ln E_{N(0,s^2)}[(1 - q + q mu1/mu0)^a] for integer a, by the binomial
// expansion sum_k C(a,k) (1-q)^(a-k) q^k exp(k(k-1) / (2 s^2)).
double BinomialLogMoment(double q, double sigma, int alpha);

struct MonteCarloEstimate {
  // Estimates of exp(-log_scale) * E[...], so huge moments stay finite.
  double mean = 0.0;
  double standard_error = 0.0;
  double log_scale = 0.0;
};

// Importance-sampled estimate of E_{N(0,s^2)}[(1 - q + q mu1/mu0)^a] with an
// equal-weight mixture of N(k, s^2), k = 0..ceil(a), as proposal. Plain
// sampling under N(0, s^2) almost never reaches the region near z = a that
// carries the mass of the integrand.
MonteCarloEstimate ImportanceSampledMoment(double q, double sigma,
                                           double alpha, std::size_t samples,
                                           std::uint64_t seed,
                                           double log_scale);

// (I - s L)^{-1} v with L the periodic second-difference matrix, by a dense
// LU solve.
std::vector<double> DenseLaplacianSolve(const std::vector<double>& v,
                                        double sigma_ls);

// Central difference (f(x + h e_i) - f(x - h e_i)) / 2h.
double CentralDifference(const std::function<double(const std::vector<double>&)>& f,
                         std::vector<double> x, std::size_t i, double h);

// Calls `visit` with every size-k subset of {0, ..., n-1} in lexicographic
// order.
void ForEachSubset(std::size_t n, std::size_t k,
                   const std::function<void(const std::vector<std::size_t>&)>& visit);

}  // namespace fedpgn::testing

#endif  // FEDPGN_TESTS_TESTING_ORACLES_H_
