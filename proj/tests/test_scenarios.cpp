// Copyright 2026 The qdenoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end scenarios at desk scale, checked as inequalities.
// These optimize denoisers at L = 6 and take a few minutes.

#include <cmath>
#include <vector>

#include <catch_amalgamated.hpp>

#include "qdenoise/analysis.hpp"
#include "qdenoise/observables.hpp"
#include "qdenoise/optimizer.hpp"

using namespace qdenoise;
using channels::NoiseModel;
using circuits::DenoiserSpec;
using circuits::GateList;
using circuits::TrotterSpec;

namespace {

DenoiserSpec optimized(const TrotterSpec& spec, int depth, int iters) {
  const auto objective = optimizer::DenoisingObjective::for_trotter(spec, true);
  optimizer::OptimizerConfig config;
  config.max_iters = iters;
  config.seed = 3;
  return optimizer::optimize(objective, depth, spec.noise, config).best_params;
}

TrotterSpec trotter(int L, double t, int m, double p) {
  return TrotterSpec{QubitCount(L), t, m, NoiseModel(p)};
}

GateList noisy(const TrotterSpec& spec) { return circuits::build_trotter(spec, true); }

GateList clean(TrotterSpec spec) {
  spec.noise = NoiseModel(0.0);
  return circuits::build_trotter(spec, false);
}

GateList denoised(const TrotterSpec& spec, const DenoiserSpec& d) {
  return circuits::concat(noisy(spec), circuits::build_denoiser(d));
}

}  // namespace

TEST_CASE("OTOC light cone is recovered by an M = 2 denoiser", "[scenario]") {
  const int L = 6, i = L / 2 - 1;
  const TrotterSpec fwd = trotter(L, 1.0, 8, 0.01);
  const TrotterSpec bwd = trotter(L, -1.0, 8, 0.01);
  const DenoiserSpec df = optimized(fwd, 2, 150);
  const DenoiserSpec db = optimized(bwd, 2, 150);

  double dev_noisy = 0.0, dev_denoised = 0.0;
  for (int j = 0; j < L; ++j) {
    const double c = observables::otoc(clean(fwd), clean(bwd), i, j, fwd.L);
    const double n = observables::otoc(noisy(fwd), noisy(bwd), i, j, fwd.L);
    const double d = observables::otoc(denoised(fwd, df), denoised(bwd, db), i, j, fwd.L);
    dev_noisy += std::abs(n - c) / L;
    dev_denoised += std::abs(d - c) / L;
  }
  INFO("mean deviation noisy " << dev_noisy << " denoised " << dev_denoised);
  CHECK(dev_denoised < dev_noisy);
}

TEST_CASE("domain wall magnetization with a transferred denoiser", "[scenario]") {
  const DenoiserSpec d6 = optimized(trotter(6, 1.0, 8, 0.01), 1, 200);
  const TrotterSpec spec = trotter(8, 1.0, 8, 0.01);
  const DenoiserSpec d = optimizer::transfer(d6, spec.L);
  for (int n : {1, 2, 3}) {
    const double c = observables::domain_wall_magnetization(clean(spec), spec.L, n);
    const double z = observables::domain_wall_magnetization(noisy(spec), spec.L, n);
    const double r = observables::domain_wall_magnetization(denoised(spec, d), spec.L, n);
    INFO("n=" << n << " noiseless " << c << " noisy " << z << " denoised " << r);
    CHECK(std::abs(r - c) < std::abs(z - c));
  }
}

TEST_CASE("denoiser spectra at weak and strong noise", "[scenario]") {
  std::vector<analysis::UnitCircleComparison> cmp;
  for (double p : {0.0046, 0.036}) {
    const TrotterSpec spec = trotter(4, 1.0, 16, p);
    const DenoiserSpec d = optimized(spec, 4, 600);
    const Matrix n = circuits::compose(noisy(spec), spec.L);
    const Matrix dm = circuits::compose(circuits::build_denoiser(d), spec.L);
    cmp.push_back(analysis::unit_circle_metrics(analysis::spectrum(n), analysis::spectrum(dm),
                                                analysis::spectrum(dm * n)));
    INFO("p=" << p << " radius " << cmp.back().denoiser_radius << " noisy "
              << cmp.back().noisy_deviation << " denoised " << cmp.back().denoised_deviation);
    CHECK(cmp.back().denoiser_outside_unit_circle);
    CHECK(cmp.back().denoised_closer_than_noisy);
  }
  CHECK(cmp[1].denoiser_radius > cmp[0].denoiser_radius);
}

TEST_CASE("noisy circuit entropy grows with the noise strength", "[scenario]") {
  double previous = -1.0;
  for (double p : {0.0, 0.005, 0.01, 0.03, 0.1}) {
    const TrotterSpec spec = trotter(4, 1.0, 8, p);
    const auto e = analysis::channel_entropy(circuits::compose(noisy(spec), spec.L));
    INFO("p=" << p << " entropy " << e.full_choi_entropy);
    CHECK(e.full_choi_entropy > previous);
    CHECK(e.positive_semidefinite);
    previous = e.full_choi_entropy;
  }
}
