/*
Copyright 2026 The roomqa Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include "roomqa/common.hpp"

namespace roomqa::acoustics {

/// Schroeder backward integral: out[t] = sum_{tau >= t} r[tau]^2.
template <typename Derived>
Signal<typename Derived::Scalar> backward_energy_integral(
    const Eigen::DenseBase<Derived>& r) {
  using Scalar = typename Derived::Scalar;
  const Index n = r.size();
  if (n == 0) throw Error("empty channel");
  Signal<Scalar> out(n);
  Scalar acc(0);
  for (Index t = n - 1; t >= 0; --t) {
    const Scalar v = r.derived().coeff(t);
    acc += v * v;
    out[t] = acc;
  }
  return out;
}

struct EnergyDecayCurve {
  Signal<double> energy;
  int sample_rate_hz = 0;

  Index size() const { return energy.size(); }
  /// 10*log10(energy / energy[0]); -inf where energy is zero.
  Signal<double> normalized_db() const;
};

EnergyDecayCurve schroeder_edc(const Signal<double>& r, int sample_rate_hz);

}  // namespace roomqa::acoustics
