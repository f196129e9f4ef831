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

#include "roomqa/geometry/labels.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <regex>

namespace roomqa::geometry {

namespace {

constexpr std::array<const char*, 12> kHourWords = {
    "one", "two",   "three", "four",   "five",  "six",
    "seven", "eight", "nine", "ten", "eleven", "twelve"};

const std::string kHourAlternation =
    "(one|two|three|four|five|six|seven|eight|nine|ten|eleven|twelve|"
    "1[0-2]|0?[1-9])";

const std::regex& clock_regex() {
  static const std::regex re("\\b" + kHourAlternation +
                             "\\s*o\\s*['\\x60]?\\s*clock\\b");
  return re;
}

const std::regex& vertical_regex() {
  static const std::regex re(
      "\\b(up|upper|above|overhead|down|lower|below|beneath)\\b");
  return re;
}

std::optional<int> hour_from_token(const std::string& tok) {
  for (int i = 0; i < 12; ++i)
    if (tok == kHourWords[i]) return i + 1;
  if (!tok.empty() && std::isdigit(static_cast<unsigned char>(tok[0]))) {
    const int v = std::stoi(tok);
    if (v >= 1 && v <= 12) return v;
  }
  return std::nullopt;
}

Vertical vertical_from_token(const std::string& tok) {
  if (tok == "up" || tok == "upper" || tok == "above" || tok == "overhead")
    return Vertical::kUp;
  return Vertical::kDown;
}

std::string normalize(std::string_view text) {
  std::string s(text);
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  // Curly apostrophe (UTF-8 E2 80 99) -> ASCII.
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xe2 &&
        static_cast<unsigned char>(s[i + 1]) == 0x80 &&
        static_cast<unsigned char>(s[i + 2]) == 0x99) {
      out.push_back('\'');
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

void blank(std::string& s, std::size_t pos, std::size_t len) {
  for (std::size_t i = pos; i < pos + len && i < s.size(); ++i) s[i] = ' ';
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

int clock_hour_from_azimuth(double azimuth_deg) {
  double az = std::fmod(azimuth_deg, 360.0);
  if (az < 0) az += 360.0;
  const int h = static_cast<int>(std::floor((az + 15.0) / 30.0)) % 12;
  return h == 0 ? 12 : h;
}

int distance_bin_from_meters(double distance_m) {
  const int bin = static_cast<int>(std::ceil(distance_m / kDistanceStepM - 0.5));
  return std::clamp(bin, 0, kMaxDistanceBin);
}

DirectionLabel quantize_label(const SphericalDoa& doa) {
  return {clock_hour_from_azimuth(doa.azimuth_deg),
          doa.elevation_deg < 90.0 ? Vertical::kUp : Vertical::kDown,
          distance_bin_from_meters(doa.distance_m)};
}

Quadrant quadrant(int clock_hour) {
  switch (clock_hour) {
    case 11: case 12: case 1: return Quadrant::kFront;
    case 2: case 3: case 4: return Quadrant::kRight;
    case 5: case 6: case 7: return Quadrant::kBehind;
    case 8: case 9: case 10: return Quadrant::kLeft;
    default: throw Error("clock hour out of range");
  }
}

const char* vertical_name(Vertical v) {
  return v == Vertical::kUp ? "up" : "down";
}

std::string hour_word(int clock_hour) {
  if (clock_hour < 1 || clock_hour > 12) throw Error("clock hour out of range");
  return kHourWords[clock_hour - 1];
}

std::string clock_phrase(int clock_hour, bool spaced) {
  return hour_word(clock_hour) + (spaced ? " o' clock" : " o'clock");
}

std::string format_label(const DirectionLabel& label) {
  char dist[32];
  std::snprintf(dist, sizeof dist, "%.1f", label.distance_m());
  return clock_phrase(label.clock_hour) + "; " + vertical_name(label.vertical) +
         "; " + dist + " m";
}

std::optional<DirectionLabel> ParsedLabel::label() const {
  if (!complete()) return std::nullopt;
  return DirectionLabel{*clock_hour, *vertical, *distance_bin};
}

ParsedLabel parse_label(std::string_view text) {
  ParsedLabel out;
  std::string s = normalize(text);
  std::smatch m;

  if (std::regex_search(s, m, clock_regex())) {
    out.clock_hour = hour_from_token(m[1].str());
    blank(s, static_cast<std::size_t>(m.position(0)), static_cast<std::size_t>(m.length(0)));
  } else {
    static const std::regex word(
        "\\b(one|two|three|four|five|six|seven|eight|nine|ten|eleven|twelve)\\b");
    if (std::regex_search(s, m, word)) {
      out.clock_hour = hour_from_token(m[1].str());
      blank(s, static_cast<std::size_t>(m.position(0)), static_cast<std::size_t>(m.length(0)));
    } else {
      // "7; down; 0.5": a bare leading integer field.
      const auto sep = s.find_first_of(";,");
      if (sep != std::string::npos) {
        const std::string first = trim(s.substr(0, sep));
        static const std::regex integer("^(1[0-2]|0?[1-9])$");
        if (std::regex_match(first, integer)) {
          out.clock_hour = hour_from_token(first);
          blank(s, 0, sep);
        }
      }
    }
  }

  if (std::regex_search(s, m, vertical_regex())) {
    out.vertical = vertical_from_token(m[1].str());
    blank(s, static_cast<std::size_t>(m.position(0)), static_cast<std::size_t>(m.length(0)));
  }

  static const std::regex number(
      "(\\d+(?:\\.\\d+)?)\\s*(meters|meter|metres|metre|m)?\\b");
  std::optional<double> with_unit, last;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), number);
       it != std::sregex_iterator(); ++it) {
    const double v = std::stod((*it)[1].str());
    if ((*it)[2].matched && !with_unit) with_unit = v;
    last = v;
  }
  if (const auto d = with_unit ? with_unit : last)
    out.distance_bin = distance_bin_from_meters(*d);
  return out;
}

std::vector<ParsedLabel> find_position_mentions(std::string_view text) {
  const std::string s = normalize(text);
  std::vector<ParsedLabel> out;
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), clock_regex());
       it != std::sregex_iterator(); ++it) {
    ParsedLabel p;
    p.clock_hour = hour_from_token((*it)[1].str());
    out.push_back(p);
    spans.emplace_back(static_cast<std::size_t>(it->position(0)),
                       static_cast<std::size_t>(it->position(0) + it->length(0)));
  }
  static const std::regex trailing_vertical("^[\\s,;]*(up|down)\\b");
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const std::size_t end = spans[i].second;
    const std::size_t stop = i + 1 < spans.size() ? spans[i + 1].first : s.size();
    const std::string tail = s.substr(end, stop - end);
    std::smatch m;
    if (std::regex_search(tail, m, trailing_vertical))
      out[i].vertical = vertical_from_token(m[1].str());
  }
  return out;
}

}  // namespace roomqa::geometry
