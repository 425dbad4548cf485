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

#ifndef SBPR_ATTR_HPP_
#define SBPR_ATTR_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sbpr/detect.hpp"
#include "sbpr/image.hpp"
#include "sbpr/patch.hpp"

namespace sbpr
{

struct ColorVerdict
{
  std::string label = "unknown";
  double confidence = 0.0;  // winner votes / total pixels
  bool operator==(const ColorVerdict &) const = default;
};

struct GenderVerdict
{
  std::string label = "unknown";
  double confidence = 0.0;
  bool operator==(const GenderVerdict &) const = default;
};

struct Hsv
{
  double h = 0.0;  // degrees in [0, 360)
  double s = 0.0;
  double v = 0.0;
};

Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// One decision rule: hue band (wrapping through 360 when h_lo > h_hi) with
// saturation/value qualifiers. Closed intervals on all three axes.
struct ColorRule
{
  std::string label;
  double h_lo = 0.0;
  double h_hi = 360.0;
  double s_lo = 0.0;
  double s_hi = 1.0;
  double v_lo = 0.0;
  double v_hi = 1.0;

  bool matches(const Hsv & hsv) const;
};

// Ordered first-match-wins rule list over the 12 culture colors. The last
// rule must be a catch-all so the table is total.
class ColorPrototypeTable
{
public:
  explicit ColorPrototypeTable(std::vector<ColorRule> rules);
  static const ColorPrototypeTable & default_table();

  const std::string & label_for(const Hsv & hsv) const;
  const std::vector<ColorRule> & rules() const { return rules_; }

private:
  std::vector<ColorRule> rules_;
};

// Per-pixel table lookup followed by a majority vote. Patches smaller than
// min_pixels yield ("unknown", 0).
ColorVerdict classify_color(
  const Patch & patch, const ColorPrototypeTable & table, int min_pixels = 25);

// Canonical RGB swatch per culture color; these classify to their own label
// with confidence 1.0 under the default table and stay stable under gamma
// 0.7 / 1.2 / 1.5. Shared with the scene renderer.
const std::map<std::string, Rgb> & canonical_swatches();

enum class ColorSlot { primary, secondary };

struct ClassifyContext
{
  int frame_index = 0;
  const Image * frame_image = nullptr;  // null when the classifier needs no pixels
  Band torso_band{0.20, 0.50};
};

class ColorClassifier
{
public:
  virtual ~ColorClassifier() = default;
  virtual ColorVerdict classify(
    const ClassifyContext & ctx, const Detection & det, ColorSlot slot) const = 0;
};

class GenderClassifier
{
public:
  virtual ~GenderClassifier() = default;
  virtual GenderVerdict classify(const ClassifyContext & ctx, const Detection & det) const = 0;
};

// Pixel-based color classification over the adaptive torso patch. The slot is
// ignored: one patch, one verdict.
class ReferenceColorClassifier : public ColorClassifier
{
public:
  explicit ReferenceColorClassifier(
    ColorPrototypeTable table = ColorPrototypeTable::default_table(), int min_pixels = 25);
  ColorVerdict classify(
    const ClassifyContext & ctx, const Detection & det, ColorSlot slot) const override;

private:
  ColorPrototypeTable table_;
  int min_pixels_;
};

// Seeded label corruption for robustness experiments. rate = 0 disables it.
struct ErrorInjection
{
  double rate = 0.0;
  std::uint64_t seed = 0;
};

// Annotation-backed verdicts; requires detections that carry an identity.
class OracleColorClassifier : public ColorClassifier
{
public:
  OracleColorClassifier(const SequenceAnnotation & seq, ErrorInjection injection = {});
  ColorVerdict classify(
    const ClassifyContext & ctx, const Detection & det, ColorSlot slot) const override;

private:
  const SequenceAnnotation * seq_;
  ErrorInjection injection_;
};

class OracleGenderClassifier : public GenderClassifier
{
public:
  OracleGenderClassifier(const SequenceAnnotation & seq, ErrorInjection injection = {});
  GenderVerdict classify(const ClassifyContext & ctx, const Detection & det) const override;

private:
  const SequenceAnnotation * seq_;
  ErrorInjection injection_;
};

}  // namespace sbpr

#endif  // SBPR_ATTR_HPP_
