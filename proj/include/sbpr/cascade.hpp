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

#ifndef SBPR_CASCADE_HPP_
#define SBPR_CASCADE_HPP_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sbpr/attr.hpp"
#include "sbpr/calib.hpp"
#include "sbpr/detect.hpp"
#include "sbpr/model.hpp"

namespace sbpr
{

struct CascadeConfig
{
  double height_margin_cm = 0.0;
  // A regressed box is accepted only when its best IoU is strictly above this.
  double regression_min_iou = 0.0;
  int skip_frames = 30;
  // Accept immediately when a filter stage leaves exactly one candidate.
  bool early_exit = true;
};

enum class RetrievalMethod { biometric, regression, none };
enum class ColorRank { none = 0, rank1 = 1, rank2 = 2 };

const char * method_name(RetrievalMethod method);

struct FrameResult
{
  int frame = 0;
  std::optional<Box> chosen;
  RetrievalMethod method = RetrievalMethod::none;
  ColorRank color_rank = ColorRank::none;
  // Candidate counts after detection / height / color / gender. A stage that
  // did not run carries the previous count forward.
  std::array<int, 4> stage_counts{0, 0, 0, 0};
  bool tie_break_used = false;
  bool operator==(const FrameResult &) const = default;
};

struct CascadeState
{
  std::optional<Box> last_confirmed;
  bool ever_matched = false;
};

struct Classifiers
{
  const ColorClassifier * color = nullptr;
  const GenderClassifier * gender = nullptr;
};

// Filter stages operate on candidate indices into the frame's detection list
// so provenance and index tie-breaking stay exact.

// Keeps candidates whose estimated height matches the query class. Detections
// whose height estimation fails are dropped, never fatal. Unknown query
// height passes everything through.
std::vector<int> height_filter(
  const std::vector<Detection> & dets, const std::vector<int> & candidates,
  const SemanticQuery & query, const TsaiCamera & cam, const CascadeConfig & cfg);

struct ColorStageOutcome
{
  std::vector<int> kept;
  ColorRank rank = ColorRank::none;
};

// Primary color first; when nothing matches and a secondary color is given,
// retry with it (rank-2 match).
ColorStageOutcome color_filter(
  const std::vector<Detection> & dets, const std::vector<int> & candidates,
  const SemanticQuery & query, const ClassifyContext & ctx, const ColorClassifier & classifier);

// Keeps candidates whose classified gender matches; records verdicts for the
// final confidence-based selection.
std::vector<int> gender_filter(
  const std::vector<Detection> & dets, const std::vector<int> & candidates,
  const SemanticQuery & query, const ClassifyContext & ctx, const GenderClassifier & classifier,
  std::map<int, GenderVerdict> & verdicts);

// Highest gender confidence wins; exact ties go to the lowest detection
// index and set tie_break_used. Candidates without a verdict count as 0.
int select_best(
  const std::vector<int> & candidates, const std::map<int, GenderVerdict> & verdicts,
  bool & tie_break_used);

// Argmax IoU against the previous box, accepted only when strictly above
// min_iou; ties go to the lowest index.
std::optional<int> iou_regress(
  const Box & previous, const std::vector<Detection> & dets, double min_iou);

// One frame of the linear filtering flow: height -> color -> gender with
// early exit on a singleton survivor set, falling back to box regression the
// moment a stage empties the candidate set (only after a first biometric
// match has ever been confirmed).
FrameResult run_frame(
  CascadeState & state, int frame_index, const std::vector<Detection> & dets, const Image * image,
  const SemanticQuery & query, const TsaiCamera & cam, const CascadeConfig & cfg,
  const Classifiers & classifiers);

class FrameSource
{
public:
  virtual ~FrameSource() = default;
  virtual const Image * frame(int frame_index) const = 0;
};

class NullFrameSource : public FrameSource
{
public:
  const Image * frame(int) const override { return nullptr; }
};

// Loads zero-padded pixmaps ("000042.ppm") lazily, keeping the current frame.
class DirectoryFrameSource : public FrameSource
{
public:
  explicit DirectoryFrameSource(std::string directory);
  const Image * frame(int frame_index) const override;

private:
  std::string directory_;
  mutable int cached_index_ = -1;
  mutable Image cached_;
};

class MemoryFrameSource : public FrameSource
{
public:
  explicit MemoryFrameSource(std::vector<Image> frames) : frames_(std::move(frames)) {}
  const Image * frame(int frame_index) const override
  {
    if (frame_index < 0 || frame_index >= static_cast<int>(frames_.size())) {
      return nullptr;
    }
    return &frames_[frame_index];
  }

private:
  std::vector<Image> frames_;
};

// Frames below cfg.skip_frames emit method "none" and leave the state
// untouched. Frame t may depend on t-1 through regression, so a sequence is
// strictly sequential.
std::vector<FrameResult> run_sequence(
  const SequenceAnnotation & seq, const DetectionProvider & provider, const FrameSource & frames,
  const SemanticQuery & query, const TsaiCamera & cam, const CascadeConfig & cfg,
  const Classifiers & classifiers);

}  // namespace sbpr

#endif  // SBPR_CASCADE_HPP_
