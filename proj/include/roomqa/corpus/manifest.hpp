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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "roomqa/corpus/qa.hpp"
#include "roomqa/corpus/split.hpp"

namespace roomqa::corpus {

nlohmann::json to_json(const scene::RoomSpec& room);
scene::RoomSpec room_from_json(const nlohmann::json& j);
nlohmann::json to_json(const scene::SceneSpec& scene);
scene::SceneSpec scene_from_json(const nlohmann::json& j);
nlohmann::json to_json(const geometry::DirectionLabel& label);
geometry::DirectionLabel label_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SampleRecord& sample);
SampleRecord sample_from_json(const nlohmann::json& j);
nlohmann::json to_json(const StructuredTruth& truth);
StructuredTruth truth_from_json(QaType type, const nlohmann::json& j);
nlohmann::json to_json(const QaPair& qa);
QaPair qa_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SplitResult& split);

/// One compact JSON object per line.
void write_jsonl(const std::filesystem::path& path,
                 const std::vector<nlohmann::json>& rows);
/// Blank lines are skipped; a malformed line throws with its line number.
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path);

std::vector<SampleRecord> read_samples(const std::filesystem::path& path);
std::vector<QaPair> read_qa(const std::filesystem::path& path);

/// The sample's room and clip ids.
SplitItem split_item(const SampleRecord& sample);

}  // namespace roomqa::corpus
