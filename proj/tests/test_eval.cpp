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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sbpr/error.hpp"
#include "sbpr/eval.hpp"
#include "sbpr/rng.hpp"
#include "support.hpp"

using namespace sbpr;

TEST_CASE("iou fixed cases")
{
  const Box a{0, 0, 10, 10};
  CHECK(iou(a, a) == 1.0);
  CHECK(iou(a, Box{20, 20, 5, 5}) == 0.0);
  CHECK(iou(a, Box{5, 0, 10, 10}) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("iou symmetry, range and grid-oracle agreement")
{
  RandomStream rng(53);
  for (int trial = 0; trial < 500; ++trial) {
    const Box a = test::random_lattice_box(rng);
    const Box b = test::random_lattice_box(rng);
    const double ab = iou(a, b);
    CHECK(ab == iou(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(ab == doctest::Approx(test::grid_iou_oracle(a, b)).epsilon(1e-9));
  }
}

namespace
{

FrameResult frame_result(int frame, std::optional<Box> box)
{
  FrameResult r;
  r.frame = frame;
  r.chosen = box;
  r.method = box.has_value() ? RetrievalMethod::biometric : RetrievalMethod::none;
  return r;
}

// One-person sequence whose ground-truth box is `gt` in every frame.
SequenceAnnotation gt_sequence(const Box & gt, int frames)
{
  std::vector<std::vector<PersonAnnotation>> all(frames, {test::person_at("p1", gt)});
  return test::simple_sequence(std::move(all), "p1");
}

}  // namespace

TEST_CASE("tpr arithmetic")
{
  const Box gt{100, 50, 30, 120};
  const SequenceAnnotation seq = gt_sequence(gt, 4);
  const auto gts = target_ground_truth(seq);

  SUBCASE("3 of 4 correct")
  {
    std::vector<FrameResult> results;
    results.push_back(frame_result(0, gt));
    results.push_back(frame_result(1, gt));
    results.push_back(frame_result(2, gt));
    results.push_back(frame_result(3, Box{500, 300, 30, 120}));
    CHECK(tpr(results, gts, 0.4, 0) == doctest::Approx(75.0));
  }
  SUBCASE("no boxes at all")
  {
    std::vector<FrameResult> results;
    for (int f = 0; f < 4; ++f) {
      results.push_back(frame_result(f, std::nullopt));
    }
    CHECK(tpr(results, gts, 0.4, 0) == 0.0);
  }
  SUBCASE("all correct")
  {
    std::vector<FrameResult> results;
    for (int f = 0; f < 4; ++f) {
      results.push_back(frame_result(f, gt));
    }
    CHECK(tpr(results, gts, 0.4, 0) == 100.0);
  }
  SUBCASE("warm-up frames are excluded from the denominator")
  {
    std::vector<FrameResult> results;
    results.push_back(frame_result(0, std::nullopt));
    results.push_back(frame_result(1, std::nullopt));
    results.push_back(frame_result(2, gt));
    results.push_back(frame_result(3, gt));
    CHECK(tpr(results, gts, 0.4, 2) == 100.0);
  }
  SUBCASE("zero evaluated frames is undefined")
  {
    std::vector<FrameResult> results;
    for (int f = 0; f < 4; ++f) {
      results.push_back(frame_result(f, gt));
    }
    CHECK_THROWS_AS(tpr(results, gts, 0.4, 10), Error);
  }
  SUBCASE("monotone non-increasing in theta")
  {
    RandomStream rng(59);
    std::vector<FrameResult> results;
    for (int f = 0; f < 4; ++f) {
      const Box noisy{
        gt.x + rng.next_in(-20.0, 20.0), gt.y + rng.next_in(-20.0, 20.0), gt.w, gt.h};
      results.push_back(frame_result(f, noisy));
    }
    double prev = 100.0;
    for (double theta : {0.1, 0.3, 0.4, 0.5, 0.7, 0.9}) {
      const double v = tpr(results, gts, theta, 0);
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("score_sequence and report")
{
  const Box gt{100, 50, 30, 120};

  SUBCASE("all perfect")
  {
    const SequenceAnnotation seq = gt_sequence(gt, 3);
    std::vector<FrameResult> results;
    for (int f = 0; f < 3; ++f) {
      results.push_back(frame_result(f, gt));
    }
    const SequenceScore score = score_sequence(seq, results, 0.4, 0);
    CHECK(score.tpr_percent == 100.0);
    CHECK(score.average_iou == 1.0);
    CHECK(score.fraction_iou_ge_04 == 1.0);
    CHECK(score.evaluated_frames == 3);
  }
  SUBCASE("hand-computed mean and fraction")
  {
    // IoU 0.5: box with half of its area overlapping... use nested boxes:
    // intersection/union through area ratio of contained boxes.
    const SequenceAnnotation seq = gt_sequence(Box{0, 0, 10, 10}, 2);
    std::vector<FrameResult> results;
    results.push_back(frame_result(0, Box{0, 0, 10, 5}));  // IoU 0.5 (nested half)
    results.push_back(frame_result(1, Box{0, 0, 10, 3}));  // IoU 0.3 (nested)
    const SequenceScore score = score_sequence(seq, results, 0.4, 0);
    CHECK(score.average_iou == doctest::Approx(0.4));
    CHECK(score.fraction_iou_ge_04 == doctest::Approx(0.5));
    CHECK(score.tpr_percent == doctest::Approx(50.0));
  }
  SUBCASE("missing boxes count as zero and never raise the mean")
  {
    const SequenceAnnotation seq = gt_sequence(gt, 2);
    std::vector<FrameResult> with_box;
    with_box.push_back(frame_result(0, gt));
    with_box.push_back(frame_result(1, std::nullopt));
    const SequenceScore score = score_sequence(seq, with_box, 0.4, 0);
    CHECK(score.average_iou == doctest::Approx(0.5));
  }
  SUBCASE("frame range mismatch is an error")
  {
    const SequenceAnnotation seq = gt_sequence(gt, 3);
    std::vector<FrameResult> short_results;
    short_results.push_back(frame_result(0, gt));
    CHECK_THROWS_AS(score_sequence(seq, short_results, 0.4, 0), Error);
    CHECK_THROWS_AS(score_sequence(seq, {}, 0.4, 0), Error);
  }
  SUBCASE("per-difficulty grouping")
  {
    SequenceAnnotation easy = gt_sequence(gt, 2);
    easy.sequence_id = "s_easy";
    easy.difficulty = "easy";
    SequenceAnnotation hard = gt_sequence(gt, 2);
    hard.sequence_id = "s_hard";
    hard.difficulty = "hard";
    std::vector<FrameResult> perfect = {frame_result(0, gt), frame_result(1, gt)};

    const EvaluationReport report =
      make_report({{&easy, &perfect}, {&hard, &perfect}}, 0.4, 0);
    REQUIRE(report.per_difficulty.size() == 2);
    CHECK(report.per_difficulty[0].difficulty == "easy");
    CHECK(report.per_difficulty[1].difficulty == "hard");
    CHECK(report.mean_average_iou == doctest::Approx(1.0));
    CHECK(report.mean_tpr_percent == doctest::Approx(100.0));
  }
}
