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

#ifndef SBPR_PIPELINE_HPP_
#define SBPR_PIPELINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "sbpr/cascade.hpp"
#include "sbpr/json_io.hpp"
#include "sbpr/synth.hpp"

namespace sbpr
{

enum class ClassifierMode {
  oracle,           // annotation-backed color and gender verdicts
  reference_color,  // pixel-based color classification + oracle gender
};

struct RetrieveOptions
{
  // Exactly one detection source: a stream file or the oracle provider.
  std::optional<std::string> detections_path;
  bool use_oracle_detections = false;
  OracleNoise noise;
  double min_detection_score = 0.5;

  ClassifierMode classifier = ClassifierMode::oracle;
  std::optional<std::string> color_table_path;
  double color_error_rate = 0.0;
  double gender_error_rate = 0.0;

  CascadeConfig cascade;
  std::optional<std::string> frames_dir;  // required for reference_color
  std::uint64_t seed = 0;
};

// Wires providers, classifiers and the cascade together for one sequence.
std::vector<FrameResult> run_retrieval(
  const SequenceAnnotation & seq, const TsaiCamera & cam, const SemanticQuery & query,
  const RetrieveOptions & options);

// Renders every frame of the scenario into output_dir: frames/NNNNNN.ppm,
// detections.jsonl, annotation.json and calibration.json, all consumable by
// the retrieval pipeline unmodified.
void write_scenario_outputs(const Scenario & scenario, const std::string & output_dir);

}  // namespace sbpr

#endif  // SBPR_PIPELINE_HPP_
