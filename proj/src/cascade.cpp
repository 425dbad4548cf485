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

#include "sbpr/cascade.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <iomanip>

#include "sbpr/error.hpp"
#include "sbpr/eval.hpp"
#include "sbpr/patch.hpp"

namespace sbpr
{

const char * method_name(RetrievalMethod method)
{
  switch (method) {
    case RetrievalMethod::biometric: return "biometric";
    case RetrievalMethod::regression: return "regression";
    case RetrievalMethod::none: return "none";
  }
  return "none";
}

std::vector<int> height_filter(
  const std::vector<Detection> & dets, const std::vector<int> & candidates,
  const SemanticQuery & query, const TsaiCamera & cam, const CascadeConfig & cfg)
{
  if (query.height_class == "unknown") {
    return candidates;
  }
  std::vector<int> kept;
  for (int i : candidates) {
    try {
      const auto [head, feet] = head_feet_points(dets[i]);
      const HeightEstimate est = estimate_height(cam, head, feet);
      if (height_class_match(est.height_cm, query.height_class, cfg.height_margin_cm)) {
        kept.push_back(i);
      }
    } catch (const Error &) {
      // unusable geometry for this detection; drop it
    }
  }
  return kept;
}

ColorStageOutcome color_filter(
  const std::vector<Detection> & dets, const std::vector<int> & candidates,
  const SemanticQuery & query, const ClassifyContext & ctx, const ColorClassifier & classifier)
{
  ColorStageOutcome outcome;
  if (query.torso_color1 == "unknown") {
    outcome.kept = candidates;
    return outcome;
  }

  for (int i : candidates) {
    try {
      if (classifier.classify(ctx, dets[i], ColorSlot::primary).label == query.torso_color1) {
        outcome.kept.push_back(i);
      }
    } catch (const Error &) {
    }
  }
  if (!outcome.kept.empty()) {
    outcome.rank = ColorRank::rank1;
    return outcome;
  }

  if (query.torso_color2 != "unknown") {
    for (int i : candidates) {
      try {
        if (classifier.classify(ctx, dets[i], ColorSlot::secondary).label == query.torso_color2) {
          outcome.kept.push_back(i);
        }
      } catch (const Error &) {
      }
    }
    if (!outcome.kept.empty()) {
      outcome.rank = ColorRank::rank2;
    }
  }
  return outcome;
}

std::vector<int> gender_filter(
  const std::vector<Detection> & dets, const std::vector<int> & candidates,
  const SemanticQuery & query, const ClassifyContext & ctx, const GenderClassifier & classifier,
  std::map<int, GenderVerdict> & verdicts)
{
  if (query.gender == "unknown") {
    return candidates;
  }
  std::vector<int> kept;
  for (int i : candidates) {
    try {
      const GenderVerdict verdict = classifier.classify(ctx, dets[i]);
      if (verdict.label == query.gender) {
        verdicts[i] = verdict;
        kept.push_back(i);
      }
    } catch (const Error &) {
    }
  }
  return kept;
}

int select_best(
  const std::vector<int> & candidates, const std::map<int, GenderVerdict> & verdicts,
  bool & tie_break_used)
{
  if (candidates.empty()) {
    raise(ErrorCode::invalid, "select_best needs at least one candidate");
  }
  auto confidence_of = [&verdicts](int i) {
    auto it = verdicts.find(i);
    return it == verdicts.end() ? 0.0 : it->second.confidence;
  };

  int best = candidates.front();
  double best_conf = confidence_of(best);
  bool tied = false;
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const double conf = confidence_of(candidates[k]);
    if (conf > best_conf) {
      best = candidates[k];
      best_conf = conf;
      tied = false;
    } else if (conf == best_conf) {
      tied = true;  // keep the earlier (lower) index
    }
  }
  tie_break_used = tied;
  return best;
}

std::optional<int> iou_regress(
  const Box & previous, const std::vector<Detection> & dets, double min_iou)
{
  std::optional<int> best;
  double best_score = min_iou;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    const double score = iou(previous, dets[i].box);
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(i);
    }
  }
  return best;
}

FrameResult run_frame(
  CascadeState & state, int frame_index, const std::vector<Detection> & dets, const Image * image,
  const SemanticQuery & query, const TsaiCamera & cam, const CascadeConfig & cfg,
  const Classifiers & classifiers)
{
  FrameResult result;
  result.frame = frame_index;

  std::vector<int> candidates(dets.size());
  std::iota(candidates.begin(), candidates.end(), 0);
  result.stage_counts[0] = static_cast<int>(candidates.size());

  ClassifyContext ctx;
  ctx.frame_index = frame_index;
  ctx.frame_image = image;
  ctx.torso_band = torso_band(query.torso_type);

  std::map<int, GenderVerdict> gender_verdicts;
  bool emptied = candidates.empty();
  std::optional<int> accepted;

  // height
  if (!emptied && !accepted && query.height_class != "unknown") {
    candidates = height_filter(dets, candidates, query, cam, cfg);
    if (candidates.empty()) {
      emptied = true;
    } else if (cfg.early_exit && candidates.size() == 1) {
      accepted = candidates.front();
    }
  }
  result.stage_counts[1] = emptied ? 0 : static_cast<int>(candidates.size());

  // color
  if (!emptied && !accepted && query.torso_color1 != "unknown") {
    if (classifiers.color == nullptr) {
      raise(ErrorCode::invalid, "color stage requested but no color classifier configured");
    }
    ColorStageOutcome outcome = color_filter(dets, candidates, query, ctx, *classifiers.color);
    result.color_rank = outcome.rank;
    candidates = std::move(outcome.kept);
    if (candidates.empty()) {
      emptied = true;
    } else if (cfg.early_exit && candidates.size() == 1) {
      accepted = candidates.front();
    }
  }
  result.stage_counts[2] = emptied ? 0 : static_cast<int>(candidates.size());

  // gender
  if (!emptied && !accepted && query.gender != "unknown") {
    if (classifiers.gender == nullptr) {
      raise(ErrorCode::invalid, "gender stage requested but no gender classifier configured");
    }
    candidates = gender_filter(dets, candidates, query, ctx, *classifiers.gender, gender_verdicts);
    if (candidates.empty()) {
      emptied = true;
    } else if (cfg.early_exit && candidates.size() == 1) {
      accepted = candidates.front();
    }
  }
  result.stage_counts[3] = emptied ? 0 : static_cast<int>(candidates.size());

  if (!accepted && !emptied) {
    accepted = select_best(candidates, gender_verdicts, result.tie_break_used);
  }

  if (accepted) {
    result.method = RetrievalMethod::biometric;
    result.chosen = dets[*accepted].box;
    state.last_confirmed = result.chosen;
    state.ever_matched = true;
    return result;
  }

  // Regression fallback; gated on a confirmed match in some earlier frame.
  if (state.ever_matched && state.last_confirmed.has_value()) {
    const auto idx = iou_regress(*state.last_confirmed, dets, cfg.regression_min_iou);
    if (idx.has_value()) {
      result.method = RetrievalMethod::regression;
      result.chosen = dets[*idx].box;
      state.last_confirmed = result.chosen;
    }
  }
  return result;
}

DirectoryFrameSource::DirectoryFrameSource(std::string directory) : directory_(std::move(directory))
{
}

const Image * DirectoryFrameSource::frame(int frame_index) const
{
  if (frame_index < 0) {
    return nullptr;
  }
  if (cached_index_ == frame_index) {
    return &cached_;
  }
  std::ostringstream name;
  name << directory_ << "/" << std::setfill('0') << std::setw(6) << frame_index << ".ppm";
  cached_ = read_ppm(name.str());
  cached_index_ = frame_index;
  return &cached_;
}

std::vector<FrameResult> run_sequence(
  const SequenceAnnotation & seq, const DetectionProvider & provider, const FrameSource & frames,
  const SemanticQuery & query, const TsaiCamera & cam, const CascadeConfig & cfg,
  const Classifiers & classifiers)
{
  std::vector<FrameResult> results;
  results.reserve(seq.frame_count);
  CascadeState state;

  for (int f = 0; f < seq.frame_count; ++f) {
    if (f < cfg.skip_frames) {
      FrameResult warmup;
      warmup.frame = f;
      results.push_back(warmup);
      continue;
    }
    const std::vector<Detection> dets = provider.detections_for(f);
    results.push_back(
      run_frame(state, f, dets, frames.frame(f), query, cam, cfg, classifiers));
  }
  return results;
}

}  // namespace sbpr
