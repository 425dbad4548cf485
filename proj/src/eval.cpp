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

#include "sbpr/eval.hpp"

#include <algorithm>
#include <cmath>

#include "sbpr/error.hpp"

namespace sbpr
{

double iou(const Box & a, const Box & b)
{
  const double ix = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double iy = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  if (ix <= 0.0 || iy <= 0.0) {
    return 0.0;
  }
  const double inter = ix * iy;
  return inter / (a.area() + b.area() - inter);
}

std::map<int, Box> target_ground_truth(const SequenceAnnotation & seq)
{
  std::map<int, Box> gts;
  for (int f = 0; f < static_cast<int>(seq.frames.size()); ++f) {
    const PersonAnnotation * target = seq.find_person(f, seq.target_person_id);
    if (target != nullptr) {
      gts.emplace(f, ground_truth_box(target->markers));
    }
  }
  return gts;
}

namespace
{

struct FrameScores
{
  std::vector<double> ious;   // one per evaluated frame
  int correct = 0;            // chosen with IoU >= theta
};

FrameScores per_frame_scores(
  const std::vector<FrameResult> & results, const std::map<int, Box> & ground_truth, double theta,
  int skip_frames)
{
  FrameScores scores;
  for (const FrameResult & r : results) {
    if (r.frame < skip_frames) {
      continue;
    }
    auto gt = ground_truth.find(r.frame);
    if (gt == ground_truth.end()) {
      continue;
    }
    const double overlap = r.chosen.has_value() ? iou(*r.chosen, gt->second) : 0.0;
    scores.ious.push_back(overlap);
    if (r.chosen.has_value() && overlap >= theta) {
      ++scores.correct;
    }
  }
  return scores;
}

void check_frame_range(const SequenceAnnotation & seq, const std::vector<FrameResult> & results)
{
  if (results.empty()) {
    raise(ErrorCode::metric_undefined, "no result frames to evaluate");
  }
  if (static_cast<int>(results.size()) != seq.frame_count) {
    raise(
      ErrorCode::invalid, "results cover " + std::to_string(results.size()) + " frames, sequence \"" +
                            seq.sequence_id + "\" has " + std::to_string(seq.frame_count));
  }
  for (int f = 0; f < seq.frame_count; ++f) {
    if (results[f].frame != f) {
      raise(
        ErrorCode::invalid,
        "result stream is not the contiguous frame range (position " + std::to_string(f) +
          " holds frame " + std::to_string(results[f].frame) + ")");
    }
  }
}

}  // namespace

double tpr(
  const std::vector<FrameResult> & results, const std::map<int, Box> & ground_truth, double theta,
  int skip_frames)
{
  const FrameScores scores = per_frame_scores(results, ground_truth, theta, skip_frames);
  if (scores.ious.empty()) {
    raise(ErrorCode::metric_undefined, "no evaluated frames (ground truth never present after warm-up)");
  }
  return 100.0 * scores.correct / static_cast<double>(scores.ious.size());
}

SequenceScore score_sequence(
  const SequenceAnnotation & seq, const std::vector<FrameResult> & results, double theta,
  int skip_frames)
{
  check_frame_range(seq, results);
  const std::map<int, Box> gts = target_ground_truth(seq);
  const FrameScores scores = per_frame_scores(results, gts, theta, skip_frames);
  if (scores.ious.empty()) {
    raise(
      ErrorCode::metric_undefined,
      "sequence \"" + seq.sequence_id + "\" has no evaluated frames");
  }

  SequenceScore out;
  out.sequence_id = seq.sequence_id;
  out.difficulty = seq.difficulty;
  out.evaluated_frames = static_cast<int>(scores.ious.size());
  out.tpr_percent = 100.0 * scores.correct / static_cast<double>(scores.ious.size());
  double sum = 0.0;
  int ge04 = 0;
  for (double v : scores.ious) {
    sum += v;
    if (v >= 0.4) {
      ++ge04;
    }
  }
  out.average_iou = sum / static_cast<double>(scores.ious.size());
  out.fraction_iou_ge_04 = static_cast<double>(ge04) / static_cast<double>(scores.ious.size());
  return out;
}

EvaluationReport make_report(
  const std::vector<ScoredSequence> & inputs, double theta, int skip_frames)
{
  if (inputs.empty()) {
    raise(ErrorCode::metric_undefined, "no sequences to evaluate");
  }

  EvaluationReport report;
  report.theta = theta;
  report.skip_frames = skip_frames;

  for (const auto & input : inputs) {
    report.sequences.push_back(score_sequence(*input.seq, *input.results, theta, skip_frames));
  }

  double tpr_sum = 0.0;
  double iou_sum = 0.0;
  double frac_sum = 0.0;
  for (const auto & s : report.sequences) {
    tpr_sum += s.tpr_percent;
    iou_sum += s.average_iou;
    frac_sum += s.fraction_iou_ge_04;
  }
  const double n = static_cast<double>(report.sequences.size());
  report.mean_tpr_percent = tpr_sum / n;
  report.mean_average_iou = iou_sum / n;
  report.mean_fraction_iou_ge_04 = frac_sum / n;

  for (const char * level : kDifficultyLevels) {
    DifficultyScore d;
    d.difficulty = level;
    for (const auto & s : report.sequences) {
      if (s.difficulty == level) {
        d.average_iou += s.average_iou;
        d.fraction_iou_ge_04 += s.fraction_iou_ge_04;
        ++d.sequence_count;
      }
    }
    if (d.sequence_count > 0) {
      d.average_iou /= d.sequence_count;
      d.fraction_iou_ge_04 /= d.sequence_count;
      report.per_difficulty.push_back(d);
    }
  }
  return report;
}

}  // namespace sbpr
