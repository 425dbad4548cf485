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

#include "sbpr/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sbpr/error.hpp"

namespace sbpr
{

using nlohmann::json;

std::string read_text_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(ErrorCode::io, "cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string & path, const std::string & content)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    raise(ErrorCode::io, "cannot open file for writing: " + path);
  }
  out << content;
  if (!out) {
    raise(ErrorCode::io, "failed writing file: " + path);
  }
}

namespace
{

json parse_json(const std::string & text, const std::string & what)
{
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    raise(ErrorCode::parse, what + ": malformed JSON");
  }
  return doc;
}

const json & field(const json & obj, const char * key, const std::string & path)
{
  if (!obj.is_object()) {
    raise(ErrorCode::parse, path + ": expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    raise(ErrorCode::parse, path + "/" + key + ": missing field");
  }
  return *it;
}

double as_number(const json & value, const std::string & path)
{
  if (!value.is_number()) {
    raise(ErrorCode::parse, path + ": expected a number");
  }
  return value.get<double>();
}

int as_int(const json & value, const std::string & path)
{
  if (!value.is_number_integer()) {
    raise(ErrorCode::parse, path + ": expected an integer");
  }
  return value.get<int>();
}

std::string as_string(const json & value, const std::string & path)
{
  if (!value.is_string()) {
    raise(ErrorCode::parse, path + ": expected a string");
  }
  return value.get<std::string>();
}

std::vector<double> as_number_array(const json & value, std::size_t n, const std::string & path)
{
  if (!value.is_array() || value.size() != n) {
    raise(ErrorCode::parse, path + ": expected an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(as_number(value[i], path + "/" + std::to_string(i)));
  }
  return out;
}

Point2 as_point(const json & value, const std::string & path)
{
  const auto xy = as_number_array(value, 2, path);
  return Point2{xy[0], xy[1]};
}

Box as_box(const json & value, const std::string & path)
{
  const auto v = as_number_array(value, 4, path);
  if (!(v[2] > 0.0) || !(v[3] > 0.0)) {
    raise(ErrorCode::parse, path + ": box extent must be positive");
  }
  return Box{v[0], v[1], v[2], v[3]};
}

json box_to_json(const Box & box)
{
  return json::array({box.x, box.y, box.w, box.h});
}

// Attribute names whose values belong to a closed label set.
bool is_taxonomy_attribute(const std::string & name)
{
  return name == "height" || name == "torso_type" || name == "torso_color" ||
         name == "torso_second_color" || name == "gender" || name == "leg_type" ||
         name == "leg_color";
}

}  // namespace

SequenceAnnotation parse_sequence(const std::string & text)
{
  const json doc = parse_json(text, "annotation");
  SequenceAnnotation seq;
  seq.sequence_id = as_string(field(doc, "sequence_id", ""), "/sequence_id");
  seq.difficulty = normalize_label(as_string(field(doc, "difficulty", ""), "/difficulty"));
  seq.target_person_id = as_string(field(doc, "target_person_id", ""), "/target_person_id");
  const auto size = as_number_array(field(doc, "image_size", ""), 2, "/image_size");
  seq.image_width = static_cast<int>(size[0]);
  seq.image_height = static_cast<int>(size[1]);

  const json & frames = field(doc, "frames", "");
  if (!frames.is_array()) {
    raise(ErrorCode::parse, "/frames: expected an array");
  }
  seq.frame_count = static_cast<int>(frames.size());
  seq.frames.resize(frames.size());

  for (std::size_t f = 0; f < frames.size(); ++f) {
    const std::string fpath = "/frames/" + std::to_string(f);
    const json & frame = frames[f];
    const int index = as_int(field(frame, "index", fpath), fpath + "/index");
    if (index != static_cast<int>(f)) {
      raise(ErrorCode::parse, fpath + "/index: expected " + std::to_string(f));
    }
    const json & persons = field(frame, "persons", fpath);
    if (!persons.is_array()) {
      raise(ErrorCode::parse, fpath + "/persons: expected an array");
    }
    for (std::size_t p = 0; p < persons.size(); ++p) {
      const std::string ppath = fpath + "/persons/" + std::to_string(p);
      const json & pj = persons[p];
      PersonAnnotation person;
      person.person_id = as_string(field(pj, "person_id", ppath), ppath + "/person_id");

      const json & markers = field(pj, "markers", ppath);
      auto points = person.markers.all();
      for (std::size_t m = 0; m < kMarkerNames.size(); ++m) {
        *points[m] =
          as_point(field(markers, kMarkerNames[m], ppath + "/markers"), ppath + "/markers/" + kMarkerNames[m]);
      }

      if (pj.contains("attributes")) {
        const json & attrs = pj["attributes"];
        if (!attrs.is_object()) {
          raise(ErrorCode::parse, ppath + "/attributes: expected an object");
        }
        for (auto it = attrs.begin(); it != attrs.end(); ++it) {
          std::string value = as_string(it.value(), ppath + "/attributes/" + it.key());
          if (is_taxonomy_attribute(it.key())) {
            value = normalize_label(value);
          }
          person.attributes[it.key()] = value;
        }
      }
      seq.frames[f].push_back(std::move(person));
    }
  }

  validate_sequence(seq);
  return seq;
}

std::string serialize_sequence(const SequenceAnnotation & seq)
{
  json doc;
  doc["sequence_id"] = seq.sequence_id;
  doc["difficulty"] = seq.difficulty;
  doc["target_person_id"] = seq.target_person_id;
  doc["image_size"] = json::array({seq.image_width, seq.image_height});
  json frames = json::array();
  for (int f = 0; f < seq.frame_count; ++f) {
    json frame;
    frame["index"] = f;
    json persons = json::array();
    for (const auto & person : seq.frames[f]) {
      json pj;
      pj["person_id"] = person.person_id;
      json markers;
      auto points = person.markers.all();
      for (std::size_t m = 0; m < kMarkerNames.size(); ++m) {
        markers[kMarkerNames[m]] = json::array({points[m]->x, points[m]->y});
      }
      pj["markers"] = markers;
      pj["attributes"] = person.attributes;
      persons.push_back(pj);
    }
    frame["persons"] = persons;
    frames.push_back(frame);
  }
  doc["frames"] = frames;
  return doc.dump(2) + "\n";
}

SequenceAnnotation load_sequence(const std::string & path)
{
  return parse_sequence(read_text_file(path));
}

SemanticQuery parse_query(const std::string & text)
{
  const json doc = parse_json(text, "query");
  if (!doc.is_object()) {
    raise(ErrorCode::parse, "query: expected an object");
  }
  auto label = [&doc](const char * key) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) {
      return std::string("unknown");
    }
    return normalize_label(as_string(*it, std::string("/") + key));
  };
  SemanticQuery query;
  query.height_class = label("height_class");
  query.torso_type = label("torso_type");
  query.torso_color1 = label("torso_color1");
  query.torso_color2 = label("torso_color2");
  query.gender = label("gender");
  validate_query(query);
  return query;
}

std::string serialize_query(const SemanticQuery & query)
{
  json doc;
  doc["height_class"] = query.height_class;
  doc["torso_type"] = query.torso_type;
  doc["torso_color1"] = query.torso_color1;
  doc["torso_color2"] = query.torso_color2;
  doc["gender"] = query.gender;
  return doc.dump(2) + "\n";
}

SemanticQuery load_query(const std::string & path)
{
  return parse_query(read_text_file(path));
}

TsaiCamera parse_camera(const std::string & text)
{
  const json doc = parse_json(text, "calibration");
  TsaiCamera cam;
  const auto r = as_number_array(field(doc, "rotation", ""), 9, "/rotation");
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      cam.rotation(i, j) = r[3 * i + j];
    }
  }
  const auto t = as_number_array(field(doc, "translation_cm", ""), 3, "/translation_cm");
  cam.translation_cm = Eigen::Vector3d(t[0], t[1], t[2]);
  cam.focal_mm = as_number(field(doc, "focal_mm", ""), "/focal_mm");
  cam.kappa1_per_mm2 = as_number(field(doc, "kappa1_per_mm2", ""), "/kappa1_per_mm2");
  const auto c = as_number_array(field(doc, "center_px", ""), 2, "/center_px");
  cam.cx_px = c[0];
  cam.cy_px = c[1];
  cam.sx = as_number(field(doc, "sx", ""), "/sx");
  const auto d = as_number_array(field(doc, "pixel_size_mm", ""), 2, "/pixel_size_mm");
  cam.dx_mm = d[0];
  cam.dy_mm = d[1];
  const auto s = as_number_array(field(doc, "image_size_px", ""), 2, "/image_size_px");
  cam.image_width = static_cast<int>(s[0]);
  cam.image_height = static_cast<int>(s[1]);
  validate_camera(cam);
  return cam;
}

std::string serialize_camera(const TsaiCamera & cam)
{
  json doc;
  json rot = json::array();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      rot.push_back(cam.rotation(i, j));
    }
  }
  doc["rotation"] = rot;
  doc["translation_cm"] =
    json::array({cam.translation_cm.x(), cam.translation_cm.y(), cam.translation_cm.z()});
  doc["focal_mm"] = cam.focal_mm;
  doc["kappa1_per_mm2"] = cam.kappa1_per_mm2;
  doc["center_px"] = json::array({cam.cx_px, cam.cy_px});
  doc["sx"] = cam.sx;
  doc["pixel_size_mm"] = json::array({cam.dx_mm, cam.dy_mm});
  doc["image_size_px"] = json::array({cam.image_width, cam.image_height});
  return doc.dump(2) + "\n";
}

TsaiCamera load_camera(const std::string & path)
{
  return parse_camera(read_text_file(path));
}

Scenario parse_scenario(const std::string & text)
{
  const json doc = parse_json(text, "scenario");
  Scenario scenario;
  scenario.sequence_id = as_string(field(doc, "sequence_id", ""), "/sequence_id");
  scenario.difficulty = normalize_label(as_string(field(doc, "difficulty", ""), "/difficulty"));
  scenario.camera = parse_camera(field(doc, "camera", "").dump());
  scenario.target_person_id = as_string(field(doc, "target_person_id", ""), "/target_person_id");
  scenario.frame_count = as_int(field(doc, "frame_count", ""), "/frame_count");
  if (doc.contains("background_color")) {
    const auto bg = as_number_array(doc["background_color"], 3, "/background_color");
    scenario.background_rgb = {
      static_cast<std::uint8_t>(bg[0]), static_cast<std::uint8_t>(bg[1]),
      static_cast<std::uint8_t>(bg[2])};
  }
  if (doc.contains("seed")) {
    scenario.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("marker_fractions")) {
    const json & mf = doc["marker_fractions"];
    scenario.marker_fractions.neck = as_number(field(mf, "neck", "/marker_fractions"), "/marker_fractions/neck");
    scenario.marker_fractions.shoulder =
      as_number(field(mf, "shoulder", "/marker_fractions"), "/marker_fractions/shoulder");
    scenario.marker_fractions.waist =
      as_number(field(mf, "waist", "/marker_fractions"), "/marker_fractions/waist");
  }

  const json & persons = field(doc, "persons", "");
  if (!persons.is_array()) {
    raise(ErrorCode::parse, "/persons: expected an array");
  }
  for (std::size_t p = 0; p < persons.size(); ++p) {
    const std::string ppath = "/persons/" + std::to_string(p);
    const json & pj = persons[p];
    ScenarioPerson person;
    person.person_id = as_string(field(pj, "person_id", ppath), ppath + "/person_id");
    person.height_cm = as_number(field(pj, "height_cm", ppath), ppath + "/height_cm");
    if (pj.contains("start_frame")) {
      person.start_frame = as_int(pj["start_frame"], ppath + "/start_frame");
    }
    const json & traj = field(pj, "trajectory_cm", ppath);
    if (!traj.is_array() || traj.empty()) {
      raise(ErrorCode::parse, ppath + "/trajectory_cm: expected a non-empty array");
    }
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const auto xy = as_number_array(traj[i], 2, ppath + "/trajectory_cm/" + std::to_string(i));
      person.trajectory_cm.push_back({xy[0], xy[1]});
    }
    auto label = [&pj, &ppath](const char * key, const char * fallback) {
      auto it = pj.find(key);
      if (it == pj.end() || it->is_null()) {
        return std::string(fallback);
      }
      return normalize_label(as_string(*it, ppath + "/" + key));
    };
    person.torso_type = label("torso_type", "unknown");
    person.torso_color1 = label("torso_color1", "unknown");
    person.torso_color2 = label("torso_color2", "unknown");
    person.leg_type = label("leg_type", "unknown");
    person.leg_color = label("leg_color", "unknown");
    person.gender = label("gender", "unknown");
    if (pj.contains("width_to_height_ratio")) {
      person.width_to_height_ratio = as_number(pj["width_to_height_ratio"], ppath + "/width_to_height_ratio");
    }
    scenario.persons.push_back(std::move(person));
  }

  validate_scenario(scenario);
  return scenario;
}

std::string serialize_scenario(const Scenario & scenario)
{
  json doc;
  doc["sequence_id"] = scenario.sequence_id;
  doc["difficulty"] = scenario.difficulty;
  doc["camera"] = json::parse(serialize_camera(scenario.camera));
  doc["target_person_id"] = scenario.target_person_id;
  doc["frame_count"] = scenario.frame_count;
  doc["background_color"] = json::array(
    {scenario.background_rgb[0], scenario.background_rgb[1], scenario.background_rgb[2]});
  doc["seed"] = scenario.seed;
  doc["marker_fractions"] = {
    {"neck", scenario.marker_fractions.neck},
    {"shoulder", scenario.marker_fractions.shoulder},
    {"waist", scenario.marker_fractions.waist}};
  json persons = json::array();
  for (const auto & person : scenario.persons) {
    json pj;
    pj["person_id"] = person.person_id;
    pj["height_cm"] = person.height_cm;
    pj["start_frame"] = person.start_frame;
    json traj = json::array();
    for (const auto & xy : person.trajectory_cm) {
      traj.push_back(json::array({xy[0], xy[1]}));
    }
    pj["trajectory_cm"] = traj;
    pj["torso_type"] = person.torso_type;
    pj["torso_color1"] = person.torso_color1;
    pj["torso_color2"] = person.torso_color2;
    pj["leg_type"] = person.leg_type;
    pj["leg_color"] = person.leg_color;
    pj["gender"] = person.gender;
    pj["width_to_height_ratio"] = person.width_to_height_ratio;
    persons.push_back(pj);
  }
  doc["persons"] = persons;
  return doc.dump(2) + "\n";
}

Scenario load_scenario(const std::string & path)
{
  return parse_scenario(read_text_file(path));
}

ColorPrototypeTable parse_color_table(const std::string & text)
{
  const json doc = parse_json(text, "color table");
  const json & rules = field(doc, "rules", "");
  if (!rules.is_array()) {
    raise(ErrorCode::parse, "/rules: expected an array");
  }
  std::vector<ColorRule> parsed;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const std::string rpath = "/rules/" + std::to_string(i);
    const json & rj = rules[i];
    ColorRule rule;
    rule.label = normalize_label(as_string(field(rj, "label", rpath), rpath + "/label"));
    const auto h = as_number_array(field(rj, "h_range_deg", rpath), 2, rpath + "/h_range_deg");
    const auto s = as_number_array(field(rj, "s_range", rpath), 2, rpath + "/s_range");
    const auto v = as_number_array(field(rj, "v_range", rpath), 2, rpath + "/v_range");
    rule.h_lo = h[0];
    rule.h_hi = h[1];
    rule.s_lo = s[0];
    rule.s_hi = s[1];
    rule.v_lo = v[0];
    rule.v_hi = v[1];
    parsed.push_back(std::move(rule));
  }
  return ColorPrototypeTable(std::move(parsed));
}

ColorPrototypeTable load_color_table(const std::string & path)
{
  return parse_color_table(read_text_file(path));
}

std::map<int, std::vector<Detection>> parse_detections(const std::string & text)
{
  std::map<int, std::vector<Detection>> by_frame;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const std::string lpath = "detections line " + std::to_string(line_no);
    const json record = parse_json(line, lpath);
    const int frame = as_int(field(record, "frame", lpath), lpath + "/frame");
    if (by_frame.count(frame) != 0) {
      raise(ErrorCode::parse, lpath + ": duplicate record for frame " + std::to_string(frame));
    }
    std::vector<Detection> dets;
    const json & list = field(record, "detections", lpath);
    if (!list.is_array()) {
      raise(ErrorCode::parse, lpath + "/detections: expected an array");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string dpath = lpath + "/detections/" + std::to_string(i);
      const json & dj = list[i];
      Detection det;
      det.box = as_box(field(dj, "box", dpath), dpath + "/box");
      det.score = as_number(field(dj, "score", dpath), dpath + "/score");
      const auto size = as_number_array(field(dj, "mask_size", dpath), 2, dpath + "/mask_size");
      const json & rle = field(dj, "mask_rle", dpath);
      if (!rle.is_array()) {
        raise(ErrorCode::parse, dpath + "/mask_rle: expected an array");
      }
      std::vector<std::int64_t> counts;
      counts.reserve(rle.size());
      for (const auto & c : rle) {
        if (!c.is_number_integer()) {
          raise(ErrorCode::parse, dpath + "/mask_rle: expected integers");
        }
        counts.push_back(c.get<std::int64_t>());
      }
      det.mask = decode_rle(counts, static_cast<int>(size[0]), static_cast<int>(size[1]));
      if (dj.contains("person_id") && !dj["person_id"].is_null()) {
        det.source_person_id = as_string(dj["person_id"], dpath + "/person_id");
      }
      dets.push_back(std::move(det));
    }
    by_frame.emplace(frame, std::move(dets));
  }
  return by_frame;
}

std::string detections_frame_record(int frame_index, const std::vector<Detection> & dets)
{
  json record;
  record["frame"] = frame_index;
  json list = json::array();
  for (const auto & det : dets) {
    json dj;
    dj["box"] = box_to_json(det.box);
    dj["score"] = det.score;
    dj["mask_size"] = json::array({det.mask.width, det.mask.height});
    dj["mask_rle"] = encode_rle(det.mask);
    if (det.source_person_id.has_value()) {
      dj["person_id"] = *det.source_person_id;
    }
    list.push_back(dj);
  }
  record["detections"] = list;
  return record.dump();
}

std::map<int, std::vector<Detection>> load_detections(const std::string & path)
{
  return parse_detections(read_text_file(path));
}

std::string serialize_results(const std::vector<FrameResult> & results)
{
  std::ostringstream out;
  for (const FrameResult & r : results) {
    json record;
    record["frame"] = r.frame;
    record["box"] = r.chosen.has_value() ? box_to_json(*r.chosen) : json(nullptr);
    record["method"] = method_name(r.method);
    record["color_rank"] =
      r.color_rank == ColorRank::none ? json(nullptr) : json(static_cast<int>(r.color_rank));
    record["stage_counts"] = json::array(
      {r.stage_counts[0], r.stage_counts[1], r.stage_counts[2], r.stage_counts[3]});
    record["tie_break_used"] = r.tie_break_used;
    out << record.dump() << "\n";
  }
  return out.str();
}

std::vector<FrameResult> parse_results(const std::string & text)
{
  std::vector<FrameResult> results;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const std::string lpath = "results line " + std::to_string(line_no);
    const json record = parse_json(line, lpath);
    FrameResult r;
    r.frame = as_int(field(record, "frame", lpath), lpath + "/frame");
    const json & box = field(record, "box", lpath);
    if (!box.is_null()) {
      r.chosen = as_box(box, lpath + "/box");
    }
    const std::string method = as_string(field(record, "method", lpath), lpath + "/method");
    if (method == "biometric") {
      r.method = RetrievalMethod::biometric;
    } else if (method == "regression") {
      r.method = RetrievalMethod::regression;
    } else if (method == "none") {
      r.method = RetrievalMethod::none;
    } else {
      raise(ErrorCode::parse, lpath + "/method: unknown method \"" + method + "\"");
    }
    if (r.chosen.has_value() != (r.method != RetrievalMethod::none)) {
      raise(ErrorCode::parse, lpath + ": box must be present exactly when method is not none");
    }
    const json & rank = field(record, "color_rank", lpath);
    if (!rank.is_null()) {
      const int value = as_int(rank, lpath + "/color_rank");
      if (value != 1 && value != 2) {
        raise(ErrorCode::parse, lpath + "/color_rank: expected 1, 2 or null");
      }
      r.color_rank = value == 1 ? ColorRank::rank1 : ColorRank::rank2;
    }
    const json & counts = field(record, "stage_counts", lpath);
    if (!counts.is_array() || counts.size() != 4) {
      raise(ErrorCode::parse, lpath + "/stage_counts: expected an array of 4 integers");
    }
    for (std::size_t i = 0; i < 4; ++i) {
      r.stage_counts[i] = as_int(counts[i], lpath + "/stage_counts/" + std::to_string(i));
    }
    const json & tie = field(record, "tie_break_used", lpath);
    if (!tie.is_boolean()) {
      raise(ErrorCode::parse, lpath + "/tie_break_used: expected a boolean");
    }
    r.tie_break_used = tie.get<bool>();
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<FrameResult> load_results(const std::string & path)
{
  return parse_results(read_text_file(path));
}

std::string serialize_report(const EvaluationReport & report)
{
  json doc;
  doc["theta"] = report.theta;
  doc["skip_frames"] = report.skip_frames;
  json sequences = json::array();
  for (const auto & s : report.sequences) {
    json sj;
    sj["sequence_id"] = s.sequence_id;
    sj["difficulty"] = s.difficulty;
    sj["tpr_percent"] = s.tpr_percent;
    sj["average_iou"] = s.average_iou;
    sj["fraction_iou_ge_04"] = s.fraction_iou_ge_04;
    sj["evaluated_frames"] = s.evaluated_frames;
    sequences.push_back(sj);
  }
  doc["sequences"] = sequences;
  doc["global"] = {
    {"mean_tpr_percent", report.mean_tpr_percent},
    {"mean_average_iou", report.mean_average_iou},
    {"mean_fraction_iou_ge_04", report.mean_fraction_iou_ge_04},
    {"sequences", report.sequences.size()}};
  json levels = json::array();
  for (const auto & d : report.per_difficulty) {
    json dj;
    dj["difficulty"] = d.difficulty;
    dj["average_iou"] = d.average_iou;
    dj["fraction_iou_ge_04"] = d.fraction_iou_ge_04;
    dj["sequences"] = d.sequence_count;
    levels.push_back(dj);
  }
  doc["per_difficulty"] = levels;
  return doc.dump(2) + "\n";
}

}  // namespace sbpr
