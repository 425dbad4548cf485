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

#ifndef SBPR_EVAL_HPP_
#define SBPR_EVAL_HPP_

#include <map>
#include <string>
#include <vector>

#include "sbpr/cascade.hpp"
#include "sbpr/model.hpp"

namespace sbpr
{

// Intersection over union of two half-open real rectangles; 0 when disjoint.
double iou(const Box & a, const Box & b);

// Target ground-truth box per frame in which the target is annotated.
std::map<int, Box> target_ground_truth(const SequenceAnnotation & seq);

// Percentage of evaluated frames (index >= skip_frames, ground truth
// present) retrieved with IoU >= theta. Throws ErrorCode::metric_undefined
// when no frame qualifies.
double tpr(
  const std::vector<FrameResult> & results, const std::map<int, Box> & ground_truth, double theta,
  int skip_frames);

struct SequenceScore
{
  std::string sequence_id;
  std::string difficulty;
  double tpr_percent = 0.0;
  double average_iou = 0.0;
  double fraction_iou_ge_04 = 0.0;
  int evaluated_frames = 0;
};

struct DifficultyScore
{
  std::string difficulty;
  double average_iou = 0.0;
  double fraction_iou_ge_04 = 0.0;
  int sequence_count = 0;
};

struct EvaluationReport
{
  double theta = 0.4;
  int skip_frames = 30;
  std::vector<SequenceScore> sequences;
  double mean_tpr_percent = 0.0;
  double mean_average_iou = 0.0;
  double mean_fraction_iou_ge_04 = 0.0;
  std::vector<DifficultyScore> per_difficulty;
};

// Frames with no box contribute IoU 0. Result frames must cover exactly
// 0..frame_count-1 of the sequence.
SequenceScore score_sequence(
  const SequenceAnnotation & seq, const std::vector<FrameResult> & results, double theta,
  int skip_frames);

struct ScoredSequence
{
  const SequenceAnnotation * seq = nullptr;
  const std::vector<FrameResult> * results = nullptr;
};

EvaluationReport make_report(
  const std::vector<ScoredSequence> & inputs, double theta, int skip_frames);

}  // namespace sbpr

#endif  // SBPR_EVAL_HPP_
