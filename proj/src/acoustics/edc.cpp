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

#include "roomqa/acoustics/edc.hpp"

#include <cmath>
#include <limits>

namespace roomqa::acoustics {

Signal<double> EnergyDecayCurve::normalized_db() const {
  Signal<double> db(energy.size());
  const double total = energy.size() ? energy[0] : 0.0;
  for (Index t = 0; t < energy.size(); ++t)
    db[t] = energy[t] > 0.0 && total > 0.0
                ? 10.0 * std::log10(energy[t] / total)
                : -std::numeric_limits<double>::infinity();
  return db;
}

EnergyDecayCurve schroeder_edc(const Signal<double>& r, int sample_rate_hz) {
  return {backward_energy_integral(r), sample_rate_hz};
}

}  // namespace roomqa::acoustics
