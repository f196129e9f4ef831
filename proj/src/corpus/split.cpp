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

#include "roomqa/corpus/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "roomqa/common.hpp"
#include "roomqa/rng.hpp"

namespace roomqa::corpus {

namespace {

enum Side : char { kNone = 0, kTrain = 1, kTest = 2, kEvicted = 3 };

}  // namespace

SplitResult split_manifest(std::span<const SplitItem> items,
                           double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw Error("train_fraction must be in (0, 1)");
  if (items.empty()) throw Error("no samples to split");

  std::map<std::string, std::vector<std::size_t>> by_room;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].room_id.empty())
      throw Error("sample " + items[i].sample_id + " has no room_id");
    by_room[items[i].room_id].push_back(i);
  }
  if (by_room.size() < 2)
    throw Error("split unsatisfiable: only one room in the corpus");

  // Rooms linked by a shared clip form one unit when that still leaves two
  // or more units; otherwise each room is its own unit.
  std::map<std::string, std::string> parent;
  for (const auto& [r, v] : by_room) parent[r] = r;
  const auto find = [&](std::string r) {
    while (parent[r] != r) r = parent[r] = parent[parent[r]];
    return r;
  };
  std::map<std::string, std::string> clip_room;
  for (const auto& it : items)
    for (const auto& c : it.clip_ids) {
      const auto [pos, fresh] = clip_room.emplace(c, it.room_id);
      if (!fresh) {
        const auto a = find(pos->second), b = find(it.room_id);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  std::map<std::string, std::vector<std::size_t>> units;
  for (const auto& [r, v] : by_room) {
    auto& u = units[find(r)];
    u.insert(u.end(), v.begin(), v.end());
  }
  if (units.size() < 2) units = by_room;

  std::vector<std::string> order;
  for (const auto& [u, v] : units) order.push_back(u);
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
  std::stable_sort(order.begin(), order.end(),
                   [&](const std::string& a, const std::string& b) {
                     return units[a].size() > units[b].size();
                   });

  std::vector<Side> side(items.size(), kNone);
  double train = 0.0, assigned = 0.0;
  for (const auto& u : order) {
    const double n = static_cast<double>(units[u].size());
    const double total = assigned + n;
    const double err_train = std::abs((train + n) / total - train_fraction);
    const double err_test = std::abs(train / total - train_fraction);
    const Side s = err_train <= err_test ? kTrain : kTest;
    if (s == kTrain) train += n;
    assigned = total;
    for (auto i : units[u]) side[i] = s;
  }

  std::map<std::string, std::vector<std::size_t>> by_clip;
  for (std::size_t i = 0; i < items.size(); ++i)
    for (const auto& c : items[i].clip_ids) by_clip[c].push_back(i);

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [clip, users] : by_clip) {
      std::size_t n_train = 0, n_test = 0;
      for (auto i : users) {
        n_train += side[i] == kTrain;
        n_test += side[i] == kTest;
      }
      if (n_train == 0 || n_test == 0) continue;
      const Side loser = n_train >= n_test ? kTest : kTrain;
      for (auto i : users)
        if (side[i] == loser) side[i] = kEvicted;
      changed = true;
    }
  }

  SplitResult out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto& dst = side[i] == kTrain  ? out.train
                : side[i] == kTest ? out.test
                                   : out.evicted;
    dst.push_back(items[i].sample_id);
  }
  if (out.train.empty() || out.test.empty())
    throw Error("split unsatisfiable: " + std::to_string(out.evicted.size()) +
                " of " + std::to_string(items.size()) +
                " samples evicted and one side is empty (clips shared across "
                "all rooms)");
  return out;
}

bool split_is_disjoint(std::span<const SplitItem> items,
                       const SplitResult& split) {
  std::map<std::string, const SplitItem*> index;
  for (const auto& it : items) index[it.sample_id] = &it;
  std::set<std::string> rooms, clips;
  for (const auto& id : split.train) {
    const auto it = index.find(id);
    if (it == index.end()) return false;
    rooms.insert(it->second->room_id);
    clips.insert(it->second->clip_ids.begin(), it->second->clip_ids.end());
  }
  for (const auto& id : split.test) {
    const auto it = index.find(id);
    if (it == index.end()) return false;
    if (rooms.count(it->second->room_id)) return false;
    for (const auto& c : it->second->clip_ids)
      if (clips.count(c)) return false;
  }
  return true;
}

}  // namespace roomqa::corpus
