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

// Document codecs for every external file format: annotations, queries,
// calibration, scenario, color tables, detection streams, result streams and
// evaluation reports. Streams are JSON Lines (one record per frame); all
// other documents are single JSON objects. Serialization is deterministic.

#ifndef SBPR_JSON_IO_HPP_
#define SBPR_JSON_IO_HPP_

#include <map>
#include <string>
#include <vector>

#include "sbpr/attr.hpp"
#include "sbpr/calib.hpp"
#include "sbpr/cascade.hpp"
#include "sbpr/detect.hpp"
#include "sbpr/eval.hpp"
#include "sbpr/model.hpp"
#include "sbpr/synth.hpp"

namespace sbpr
{

std::string read_text_file(const std::string & path);
void write_text_file(const std::string & path, const std::string & content);

SequenceAnnotation parse_sequence(const std::string & text);
std::string serialize_sequence(const SequenceAnnotation & seq);
SequenceAnnotation load_sequence(const std::string & path);

SemanticQuery parse_query(const std::string & text);
std::string serialize_query(const SemanticQuery & query);
SemanticQuery load_query(const std::string & path);

TsaiCamera parse_camera(const std::string & text);
std::string serialize_camera(const TsaiCamera & cam);
TsaiCamera load_camera(const std::string & path);

Scenario parse_scenario(const std::string & text);
std::string serialize_scenario(const Scenario & scenario);
Scenario load_scenario(const std::string & path);

ColorPrototypeTable parse_color_table(const std::string & text);
ColorPrototypeTable load_color_table(const std::string & path);

// Detection stream: one record per frame with run-length coded masks.
std::map<int, std::vector<Detection>> parse_detections(const std::string & text);
std::string detections_frame_record(int frame_index, const std::vector<Detection> & dets);
std::map<int, std::vector<Detection>> load_detections(const std::string & path);

// Result stream.
std::string serialize_results(const std::vector<FrameResult> & results);
std::vector<FrameResult> parse_results(const std::string & text);
std::vector<FrameResult> load_results(const std::string & path);

std::string serialize_report(const EvaluationReport & report);

}  // namespace sbpr

#endif  // SBPR_JSON_IO_HPP_
