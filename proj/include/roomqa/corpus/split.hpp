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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace roomqa::corpus {

struct SplitItem {
  std::string sample_id;
  std::string room_id;
  std::vector<std::string> clip_ids;
};

struct SplitResult {
  std::vector<std::string> train;
  std::vector<std::string> test;
  /// Samples dropped because one of their clips is kept by the other side.
  std::vector<std::string> evicted;
};

/// Rooms go wholly to one side (largest first, greedily toward
/// train_fraction). Rooms connected through shared clips move together
/// whenever the corpus has at least two such groups. A clip used on both sides stays with the side holding
/// more of its samples (train on ties); the other side's samples using it
/// are evicted. Throws when either side ends up empty.
SplitResult split_manifest(std::span<const SplitItem> items,
                           double train_fraction, std::uint64_t seed);

/// True when the two id lists share no room_id and no clip_id.
bool split_is_disjoint(std::span<const SplitItem> items,
                       const SplitResult& split);

}  // namespace roomqa::corpus
