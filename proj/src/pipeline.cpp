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

#include "sbpr/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "sbpr/error.hpp"

namespace sbpr
{

std::vector<FrameResult> run_retrieval(
  const SequenceAnnotation & seq, const TsaiCamera & cam, const SemanticQuery & query,
  const RetrieveOptions & options)
{
  validate_camera(cam);
  validate_query(query);

  if (options.use_oracle_detections == options.detections_path.has_value()) {
    raise(
      ErrorCode::invalid,
      "exactly one detection source required: a detections stream or the oracle provider");
  }
  if (options.classifier == ClassifierMode::reference_color && !options.frames_dir.has_value()) {
    raise(ErrorCode::invalid, "the reference color classifier needs a frames directory");
  }

  std::unique_ptr<DetectionProvider> provider;
  if (options.use_oracle_detections) {
    OracleNoise noise = options.noise;
    noise.seed = options.seed;
    provider = std::make_unique<OracleDetectionProvider>(seq, noise);
  } else {
    provider = std::make_unique<StreamDetectionProvider>(
      load_detections(*options.detections_path), options.min_detection_score);
  }

  std::unique_ptr<FrameSource> frames;
  if (options.frames_dir.has_value()) {
    frames = std::make_unique<DirectoryFrameSource>(*options.frames_dir);
  } else {
    frames = std::make_unique<NullFrameSource>();
  }

  std::unique_ptr<ColorClassifier> color;
  if (options.classifier == ClassifierMode::reference_color) {
    ColorPrototypeTable table = options.color_table_path.has_value()
                                  ? load_color_table(*options.color_table_path)
                                  : ColorPrototypeTable::default_table();
    color = std::make_unique<ReferenceColorClassifier>(std::move(table));
  } else {
    color = std::make_unique<OracleColorClassifier>(
      seq, ErrorInjection{options.color_error_rate, options.seed});
  }
  OracleGenderClassifier gender(seq, ErrorInjection{options.gender_error_rate, options.seed});

  Classifiers classifiers;
  classifiers.color = color.get();
  classifiers.gender = &gender;

  return run_sequence(seq, *provider, *frames, query, cam, options.cascade, classifiers);
}

void write_scenario_outputs(const Scenario & scenario, const std::string & output_dir)
{
  validate_scenario(scenario);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(output_dir) / "frames", ec);
  if (ec) {
    raise(ErrorCode::io, "cannot create output directory: " + output_dir);
  }

  std::ofstream det_stream(fs::path(output_dir) / "detections.jsonl", std::ios::binary);
  if (!det_stream) {
    raise(ErrorCode::io, "cannot open detections stream for writing under " + output_dir);
  }

  std::vector<std::vector<PersonAnnotation>> frames(scenario.frame_count);
  for (int f = 0; f < scenario.frame_count; ++f) {
    RenderedFrame rendered = render_frame(scenario, f);
    std::ostringstream name;
    name << std::setfill('0') << std::setw(6) << f << ".ppm";
    write_ppm(rendered.image, (fs::path(output_dir) / "frames" / name.str()).string());
    det_stream << detections_frame_record(f, rendered.detections) << "\n";
    frames[f] = std::move(rendered.persons);
  }
  det_stream.close();

  const SequenceAnnotation seq = assemble_annotation(scenario, frames);
  write_text_file((fs::path(output_dir) / "annotation.json").string(), serialize_sequence(seq));
  write_text_file(
    (fs::path(output_dir) / "calibration.json").string(), serialize_camera(scenario.camera));
}

}  // namespace sbpr
