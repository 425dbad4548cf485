// Copyright 2026 The sbpr Authors
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

#include "sbpr/attr.hpp"

#include <algorithm>
#include <cmath>

#include "sbpr/error.hpp"
#include "sbpr/rng.hpp"

namespace sbpr
{

Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b)
{
  const double rf = r / 255.0;
  const double gf = g / 255.0;
  const double bf = b / 255.0;
  const double mx = std::max({rf, gf, bf});
  const double mn = std::min({rf, gf, bf});
  const double delta = mx - mn;

  Hsv hsv;
  hsv.v = mx;
  hsv.s = mx > 0.0 ? delta / mx : 0.0;
  if (delta > 0.0) {
    double h;
    if (mx == rf) {
      h = std::fmod((gf - bf) / delta, 6.0);
      if (h < 0.0) {
        h += 6.0;
      }
    } else if (mx == gf) {
      h = (bf - rf) / delta + 2.0;
    } else {
      h = (rf - gf) / delta + 4.0;
    }
    hsv.h = 60.0 * h;
    if (hsv.h >= 360.0) {
      hsv.h -= 360.0;
    }
  }
  return hsv;
}

bool ColorRule::matches(const Hsv & hsv) const
{
  const bool hue_ok =
    h_lo <= h_hi ? (hsv.h >= h_lo && hsv.h <= h_hi) : (hsv.h >= h_lo || hsv.h <= h_hi);
  return hue_ok && hsv.s >= s_lo && hsv.s <= s_hi && hsv.v >= v_lo && hsv.v <= v_hi;
}

ColorPrototypeTable::ColorPrototypeTable(std::vector<ColorRule> rules) : rules_(std::move(rules))
{
  if (rules_.empty()) {
    raise(ErrorCode::invalid, "color prototype table has no rules");
  }
  const auto & tax = AttributeTaxonomy::get();
  for (const auto & rule : rules_) {
    if (!tax.is_color(rule.label) || rule.label == "unknown") {
      raise(ErrorCode::taxonomy, "color rule label not a culture color: \"" + rule.label + "\"");
    }
  }
  const ColorRule & last = rules_.back();
  const bool total = last.h_lo <= 0.0 && last.h_hi >= 360.0 && last.s_lo <= 0.0 &&
                     last.s_hi >= 1.0 && last.v_lo <= 0.0 && last.v_hi >= 1.0;
  if (!total) {
    raise(ErrorCode::invalid, "color prototype table must end with a catch-all rule");
  }
}

const ColorPrototypeTable & ColorPrototypeTable::default_table()
{
  static const ColorPrototypeTable table(std::vector<ColorRule>{
    {"black", 0, 360, 0.00, 1.00, 0.00, 0.20},
    {"white", 0, 360, 0.00, 0.15, 0.85, 1.00},
    {"grey", 0, 360, 0.00, 0.20, 0.20, 0.85},
    {"yellow", 50, 70, 0.30, 1.00, 0.50, 1.00},
    {"orange", 20, 50, 0.75, 1.00, 0.75, 1.00},
    {"skin", 15, 50, 0.20, 0.75, 0.62, 1.00},
    {"brown", 5, 50, 0.20, 1.00, 0.20, 0.75},
    {"red", 345, 20, 0.50, 1.00, 0.20, 1.00},
    {"pink", 310, 345, 0.15, 1.00, 0.60, 1.00},
    {"purple", 250, 310, 0.20, 1.00, 0.20, 1.00},
    {"blue", 170, 250, 0.20, 1.00, 0.20, 1.00},
    {"green", 70, 170, 0.15, 1.00, 0.20, 1.00},
    {"grey", 0, 360, 0.00, 1.00, 0.00, 1.00},
  });
  return table;
}

const std::string & ColorPrototypeTable::label_for(const Hsv & hsv) const
{
  for (const auto & rule : rules_) {
    if (rule.matches(hsv)) {
      return rule.label;
    }
  }
  return rules_.back().label;  // unreachable: the table is total
}

ColorVerdict classify_color(const Patch & patch, const ColorPrototypeTable & table, int min_pixels)
{
  if (static_cast<int>(patch.pixels.size()) < min_pixels) {
    return ColorVerdict{"unknown", 0.0};
  }

  std::map<std::string, std::size_t> votes;
  for (const Rgb & px : patch.pixels) {
    const Hsv hsv = rgb_to_hsv(px[0], px[1], px[2]);
    ++votes[table.label_for(hsv)];
  }

  const auto winner = std::max_element(
    votes.begin(), votes.end(),
    [](const auto & a, const auto & b) { return a.second < b.second; });
  return ColorVerdict{
    winner->first, static_cast<double>(winner->second) / static_cast<double>(patch.pixels.size())};
}

const std::map<std::string, Rgb> & canonical_swatches()
{
  static const std::map<std::string, Rgb> swatches = {
    {"black", {0, 0, 0}},      {"grey", {128, 128, 128}},  {"white", {255, 255, 255}},
    {"red", {255, 0, 0}},      {"orange", {255, 165, 0}},  {"yellow", {255, 255, 0}},
    {"green", {0, 255, 0}},    {"blue", {0, 0, 255}},      {"purple", {128, 0, 128}},
    {"pink", {255, 105, 180}}, {"brown", {120, 60, 20}},   {"skin", {224, 172, 105}},
  };
  return swatches;
}

ReferenceColorClassifier::ReferenceColorClassifier(ColorPrototypeTable table, int min_pixels)
: table_(std::move(table)), min_pixels_(min_pixels)
{
}

ColorVerdict ReferenceColorClassifier::classify(
  const ClassifyContext & ctx, const Detection & det, ColorSlot) const
{
  if (ctx.frame_image == nullptr) {
    raise(ErrorCode::provider_mismatch, "reference color classifier needs the frame image");
  }
  const Patch patch = extract_patch(*ctx.frame_image, det, ctx.torso_band);
  return classify_color(patch, table_, min_pixels_);
}

namespace
{

const PersonAnnotation & lookup_identity(
  const SequenceAnnotation & seq, const ClassifyContext & ctx, const Detection & det)
{
  if (!det.source_person_id.has_value()) {
    raise(ErrorCode::provider_mismatch, "oracle classifier given a detection without identity");
  }
  const PersonAnnotation * person = seq.find_person(ctx.frame_index, *det.source_person_id);
  if (person == nullptr) {
    raise(
      ErrorCode::provider_mismatch, "oracle classifier cannot find person \"" +
                                      *det.source_person_id + "\" in frame " +
                                      std::to_string(ctx.frame_index));
  }
  return *person;
}

std::string annotated_or_unknown(const PersonAnnotation & person, const char * name)
{
  auto it = person.attributes.find(name);
  return it == person.attributes.end() ? std::string("unknown") : it->second;
}

}  // namespace

OracleColorClassifier::OracleColorClassifier(const SequenceAnnotation & seq, ErrorInjection injection)
: seq_(&seq), injection_(injection)
{
}

ColorVerdict OracleColorClassifier::classify(
  const ClassifyContext & ctx, const Detection & det, ColorSlot slot) const
{
  const PersonAnnotation & person = lookup_identity(*seq_, ctx, det);
  std::string label =
    annotated_or_unknown(person, slot == ColorSlot::primary ? "torso_color" : "torso_second_color");
  if (injection_.rate <= 0.0) {
    return ColorVerdict{label, 1.0};
  }

  const std::uint64_t key = hash_string(
    hash_combine(
      hash_combine(injection_.seed, 0xc0102ULL + static_cast<std::uint64_t>(slot)),
      static_cast<std::uint64_t>(ctx.frame_index)),
    person.person_id);
  if (to_unit_interval(key) < injection_.rate) {
    // Uniform flip over the remaining culture colors.
    const auto & colors = AttributeTaxonomy::get().color_labels();
    std::vector<std::string> others;
    for (const auto & c : colors) {
      if (c != "unknown" && c != label) {
        others.push_back(c);
      }
    }
    label = others[hash_combine(key, 0xf11bULL) % others.size()];
  }
  return ColorVerdict{label, 1.0 - injection_.rate};
}

OracleGenderClassifier::OracleGenderClassifier(const SequenceAnnotation & seq, ErrorInjection injection)
: seq_(&seq), injection_(injection)
{
}

GenderVerdict OracleGenderClassifier::classify(
  const ClassifyContext & ctx, const Detection & det) const
{
  const PersonAnnotation & person = lookup_identity(*seq_, ctx, det);
  std::string label = annotated_or_unknown(person, "gender");
  if (injection_.rate <= 0.0) {
    return GenderVerdict{label, 1.0};
  }

  const std::uint64_t key = hash_string(
    hash_combine(
      hash_combine(injection_.seed, 0x6e4d3ULL), static_cast<std::uint64_t>(ctx.frame_index)),
    person.person_id);
  if (to_unit_interval(key) < injection_.rate) {
    if (label == "male") {
      label = "female";
    } else if (label == "female") {
      label = "male";
    }
  }
  return GenderVerdict{label, 1.0 - injection_.rate};
}

}  // namespace sbpr
