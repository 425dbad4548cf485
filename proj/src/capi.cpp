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

#include "sbpr.h"

#include <cstring>
#include <string>

#include "sbpr/error.hpp"
#include "sbpr/eval.hpp"
#include "sbpr/json_io.hpp"
#include "sbpr/pipeline.hpp"

namespace
{

thread_local std::string t_last_error;

sbpr_status status_of(sbpr::ErrorCode code)
{
  using sbpr::ErrorCode;
  switch (code) {
    case ErrorCode::io: return SBPR_ERROR_IO;
    case ErrorCode::parse: return SBPR_ERROR_PARSE;
    case ErrorCode::invalid: return SBPR_ERROR_INVALID;
    case ErrorCode::taxonomy: return SBPR_ERROR_TAXONOMY;
    case ErrorCode::geometry: return SBPR_ERROR_GEOMETRY;
    case ErrorCode::numeric: return SBPR_ERROR_NUMERIC;
    case ErrorCode::degenerate_box: return SBPR_ERROR_DEGENERATE;
    case ErrorCode::provider_mismatch: return SBPR_ERROR_PROVIDER;
    case ErrorCode::metric_undefined: return SBPR_ERROR_METRIC;
  }
  return SBPR_ERROR_UNKNOWN;
}

// Runs fn, converting exceptions to status codes and stashing the message.
template <typename Fn>
sbpr_status guarded(Fn && fn)
{
  try {
    fn();
    t_last_error.clear();
    return SBPR_OK;
  } catch (const sbpr::Error & e) {
    t_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception & e) {
    t_last_error = e.what();
    return SBPR_ERROR_UNKNOWN;
  } catch (...) {
    t_last_error = "unknown failure";
    return SBPR_ERROR_UNKNOWN;
  }
}

sbpr_status require(bool ok, const char * message)
{
  if (!ok) {
    t_last_error = message;
    return SBPR_ERROR_INVALID;
  }
  return SBPR_OK;
}

}  // namespace

struct sbpr_camera
{
  sbpr::TsaiCamera cam;
};

struct sbpr_sequence
{
  sbpr::SequenceAnnotation seq;
};

struct sbpr_query
{
  sbpr::SemanticQuery query;
};

struct sbpr_results
{
  std::vector<sbpr::FrameResult> results;
};

struct sbpr_report
{
  double theta = 0.4;
  int skip_frames = 30;
  // Entries are copied in so the report outlives its inputs.
  std::vector<sbpr::SequenceAnnotation> sequences;
  std::vector<std::vector<sbpr::FrameResult>> results;
  std::string rendered;
};

struct sbpr_scenario
{
  sbpr::Scenario scenario;
};

struct sbpr_image
{
  sbpr::Image image;
};

namespace
{

const std::string & render_report(sbpr_report * report)
{
  if (report->rendered.empty()) {
    std::vector<sbpr::ScoredSequence> inputs;
    inputs.reserve(report->sequences.size());
    for (std::size_t i = 0; i < report->sequences.size(); ++i) {
      inputs.push_back({&report->sequences[i], &report->results[i]});
    }
    report->rendered =
      sbpr::serialize_report(sbpr::make_report(inputs, report->theta, report->skip_frames));
  }
  return report->rendered;
}

}  // namespace

extern "C" {

const char * sbpr_version(void)
{
  return "0.1.0";
}

const char * sbpr_status_name(sbpr_status status)
{
  switch (status) {
    case SBPR_OK: return "ok";
    case SBPR_ERROR_IO: return "io";
    case SBPR_ERROR_PARSE: return "parse";
    case SBPR_ERROR_INVALID: return "invalid";
    case SBPR_ERROR_TAXONOMY: return "taxonomy";
    case SBPR_ERROR_GEOMETRY: return "geometry";
    case SBPR_ERROR_NUMERIC: return "numeric";
    case SBPR_ERROR_DEGENERATE: return "degenerate";
    case SBPR_ERROR_PROVIDER: return "provider";
    case SBPR_ERROR_METRIC: return "metric";
    case SBPR_ERROR_UNKNOWN: return "unknown";
  }
  return "unknown";
}

const char * sbpr_last_error(void)
{
  return t_last_error.c_str();
}

sbpr_status sbpr_camera_load(const char * path, sbpr_camera ** out)
{
  if (auto bad = require(path && out, "null argument")) return bad;
  return guarded([&] { *out = new sbpr_camera{sbpr::load_camera(path)}; });
}

void sbpr_camera_free(sbpr_camera * cam)
{
  delete cam;
}

sbpr_status sbpr_camera_estimate_height(
  const sbpr_camera * cam, double head_x, double head_y, double feet_x, double feet_y,
  double * height_cm, double * residual_cm)
{
  if (auto bad = require(cam && height_cm && residual_cm, "null argument")) return bad;
  return guarded([&] {
    const sbpr::HeightEstimate est =
      sbpr::estimate_height(cam->cam, {head_x, head_y}, {feet_x, feet_y});
    *height_cm = est.height_cm;
    *residual_cm = est.residual_cm;
  });
}

sbpr_status sbpr_sequence_load(const char * path, sbpr_sequence ** out)
{
  if (auto bad = require(path && out, "null argument")) return bad;
  return guarded([&] { *out = new sbpr_sequence{sbpr::load_sequence(path)}; });
}

void sbpr_sequence_free(sbpr_sequence * seq)
{
  delete seq;
}

int sbpr_sequence_frame_count(const sbpr_sequence * seq)
{
  return seq ? seq->seq.frame_count : 0;
}

const char * sbpr_sequence_id(const sbpr_sequence * seq)
{
  return seq ? seq->seq.sequence_id.c_str() : "";
}

const char * sbpr_sequence_difficulty(const sbpr_sequence * seq)
{
  return seq ? seq->seq.difficulty.c_str() : "";
}

sbpr_status sbpr_query_load(const char * path, sbpr_query ** out)
{
  if (auto bad = require(path && out, "null argument")) return bad;
  return guarded([&] { *out = new sbpr_query{sbpr::load_query(path)}; });
}

sbpr_status sbpr_query_from_target(const sbpr_sequence * seq, sbpr_query ** out)
{
  if (auto bad = require(seq && out, "null argument")) return bad;
  return guarded([&] { *out = new sbpr_query{sbpr::query_from_target(seq->seq)}; });
}

sbpr_status sbpr_query_save(const sbpr_query * query, const char * path)
{
  if (auto bad = require(query && path, "null argument")) return bad;
  return guarded([&] { sbpr::write_text_file(path, sbpr::serialize_query(query->query)); });
}

void sbpr_query_free(sbpr_query * query)
{
  delete query;
}

void sbpr_retrieve_options_init(sbpr_retrieve_options * options)
{
  if (!options) {
    return;
  }
  std::memset(options, 0, sizeof(*options));
  options->use_oracle_detections = 1;
  options->min_detection_score = 0.5;
  options->skip_frames = 30;
  options->early_exit = 1;
}

sbpr_status sbpr_retrieve(
  const sbpr_sequence * seq, const sbpr_camera * cam, const sbpr_query * query,
  const sbpr_retrieve_options * options, sbpr_results ** out)
{
  if (auto bad = require(seq && cam && query && options && out, "null argument")) return bad;
  return guarded([&] {
    sbpr::RetrieveOptions opts;
    if (options->detections_path) {
      opts.detections_path = options->detections_path;
    }
    opts.use_oracle_detections = options->use_oracle_detections != 0;
    opts.noise.jitter_px = options->oracle_jitter_px;
    opts.noise.drop_prob = options->oracle_drop_prob;
    opts.noise.merge_overlapping = options->oracle_merge_overlaps != 0;
    opts.min_detection_score = options->min_detection_score;
    opts.classifier = options->reference_color_classifier
                        ? sbpr::ClassifierMode::reference_color
                        : sbpr::ClassifierMode::oracle;
    if (options->color_table_path) {
      opts.color_table_path = options->color_table_path;
    }
    if (options->frames_dir) {
      opts.frames_dir = options->frames_dir;
    }
    opts.color_error_rate = options->color_error_rate;
    opts.gender_error_rate = options->gender_error_rate;
    opts.cascade.skip_frames = options->skip_frames;
    opts.cascade.height_margin_cm = options->height_margin_cm;
    opts.cascade.regression_min_iou = options->regression_min_iou;
    opts.cascade.early_exit = options->early_exit != 0;
    opts.seed = options->seed;
    *out = new sbpr_results{sbpr::run_retrieval(seq->seq, cam->cam, query->query, opts)};
  });
}

sbpr_status sbpr_results_load(const char * path, sbpr_results ** out)
{
  if (auto bad = require(path && out, "null argument")) return bad;
  return guarded([&] { *out = new sbpr_results{sbpr::load_results(path)}; });
}

sbpr_status sbpr_results_save(const sbpr_results * results, const char * path)
{
  if (auto bad = require(results && path, "null argument")) return bad;
  return guarded([&] { sbpr::write_text_file(path, sbpr::serialize_results(results->results)); });
}

int sbpr_results_frame_count(const sbpr_results * results)
{
  return results ? static_cast<int>(results->results.size()) : 0;
}

void sbpr_results_method_counts(const sbpr_results * results, int counts[3])
{
  if (!results || !counts) {
    return;
  }
  counts[0] = counts[1] = counts[2] = 0;
  for (const auto & r : results->results) {
    switch (r.method) {
      case sbpr::RetrievalMethod::biometric: ++counts[0]; break;
      case sbpr::RetrievalMethod::regression: ++counts[1]; break;
      case sbpr::RetrievalMethod::none: ++counts[2]; break;
    }
  }
}

void sbpr_results_free(sbpr_results * results)
{
  delete results;
}

sbpr_status sbpr_report_create(double theta, int skip_frames, sbpr_report ** out)
{
  if (auto bad = require(out != nullptr, "null argument")) return bad;
  return guarded([&] {
    auto * report = new sbpr_report;
    report->theta = theta;
    report->skip_frames = skip_frames;
    *out = report;
  });
}

sbpr_status sbpr_report_add(
  sbpr_report * report, const sbpr_sequence * seq, const sbpr_results * results)
{
  if (auto bad = require(report && seq && results, "null argument")) return bad;
  return guarded([&] {
    // Score now, so mismatches surface at the add call.
    sbpr::score_sequence(seq->seq, results->results, report->theta, report->skip_frames);
    report->sequences.push_back(seq->seq);
    report->results.push_back(results->results);
    report->rendered.clear();
  });
}

sbpr_status sbpr_report_save(sbpr_report * report, const char * path)
{
  if (auto bad = require(report && path, "null argument")) return bad;
  return guarded([&] { sbpr::write_text_file(path, render_report(report)); });
}

const char * sbpr_report_json(sbpr_report * report)
{
  if (!report) {
    return "";
  }
  try {
    return render_report(report).c_str();
  } catch (const std::exception & e) {
    t_last_error = e.what();
    return "";
  }
}

void sbpr_report_free(sbpr_report * report)
{
  delete report;
}

sbpr_status sbpr_scenario_load(const char * path, sbpr_scenario ** out)
{
  if (auto bad = require(path && out, "null argument")) return bad;
  return guarded([&] { *out = new sbpr_scenario{sbpr::load_scenario(path)}; });
}

int sbpr_scenario_frame_count(const sbpr_scenario * scenario)
{
  return scenario ? scenario->scenario.frame_count : 0;
}

void sbpr_scenario_free(sbpr_scenario * scenario)
{
  delete scenario;
}

sbpr_status sbpr_synth_render(const sbpr_scenario * scenario, const char * output_dir)
{
  if (auto bad = require(scenario && output_dir, "null argument")) return bad;
  return guarded([&] { sbpr::write_scenario_outputs(scenario->scenario, output_dir); });
}

sbpr_status sbpr_image_load(const char * path, sbpr_image ** out)
{
  if (auto bad = require(path && out, "null argument")) return bad;
  return guarded([&] { *out = new sbpr_image{sbpr::read_ppm(path)}; });
}

sbpr_status sbpr_image_save(const sbpr_image * image, const char * path)
{
  if (auto bad = require(image && path, "null argument")) return bad;
  return guarded([&] { sbpr::write_ppm(image->image, path); });
}

int sbpr_image_width(const sbpr_image * image)
{
  return image ? image->image.width : 0;
}

int sbpr_image_height(const sbpr_image * image)
{
  return image ? image->image.height : 0;
}

sbpr_status sbpr_image_gamma(sbpr_image * image, double gamma)
{
  if (auto bad = require(image != nullptr, "null argument")) return bad;
  return guarded([&] { sbpr::gamma_adjust_image(image->image, gamma); });
}

void sbpr_image_free(sbpr_image * image)
{
  delete image;
}

sbpr_status sbpr_torso_band(const char * torso_type, double * r1, double * r2)
{
  if (auto bad = require(torso_type && r1 && r2, "null argument")) return bad;
  return guarded([&] {
    const sbpr::Band band = sbpr::torso_band(sbpr::normalize_label(torso_type));
    *r1 = band.r1;
    *r2 = band.r2;
  });
}

sbpr_status sbpr_leg_band(const char * leg_type, double * r1, double * r2)
{
  if (auto bad = require(leg_type && r1 && r2, "null argument")) return bad;
  return guarded([&] {
    const sbpr::Band band = sbpr::leg_band(sbpr::normalize_label(leg_type));
    *r1 = band.r1;
    *r2 = band.r2;
  });
}

sbpr_status sbpr_extract_patch(
  const sbpr_image * image, const double box[4], double band_r1, double band_r2,
  const int64_t * mask_counts, size_t mask_count_len, sbpr_image ** patch_out,
  sbpr_patch_info * info)
{
  if (auto bad = require(image && box && patch_out && info, "null argument")) return bad;
  return guarded([&] {
    const sbpr::Image & frame = image->image;
    sbpr::Detection det;
    det.box = sbpr::Box{box[0], box[1], box[2], box[3]};
    if (mask_counts != nullptr) {
      det.mask = sbpr::decode_rle(
        std::vector<std::int64_t>(mask_counts, mask_counts + mask_count_len), frame.width,
        frame.height);
    } else {
      const sbpr::PixelRect rect = sbpr::enclosing_pixels(det.box, frame.width, frame.height);
      det.mask = sbpr::Mask::zeros(frame.width, frame.height);
      for (int y = rect.y0; y < rect.y1; ++y) {
        for (int x = rect.x0; x < rect.x1; ++x) {
          det.mask.set(x, y, true);
        }
      }
    }

    const sbpr::Band band{band_r1, band_r2};
    const sbpr::Patch patch = sbpr::extract_patch(frame, det, band);
    const sbpr::BandRows rows = sbpr::band_rows(patch.source_box, band);

    // Patch pixels on black over the band rectangle.
    const sbpr::PixelRect cols =
      sbpr::enclosing_pixels(patch.source_box, frame.width, frame.height);
    sbpr::Image out_img;
    const int w = std::max(1, cols.x1 - cols.x0);
    const int h = std::max(1, rows.end - rows.begin);
    out_img = sbpr::Image::filled(w, h, {0, 0, 0});
    for (std::size_t i = 0; i < patch.pixels.size(); ++i) {
      const int px = patch.positions[i].first - cols.x0;
      const int py = patch.positions[i].second - rows.begin;
      if (px >= 0 && px < out_img.width && py >= 0 && py < out_img.height) {
        out_img.set_pixel(px, py, patch.pixels[i]);
      }
    }

    info->row_begin = rows.begin;
    info->row_end = rows.end;
    info->pixel_count = static_cast<long>(patch.pixels.size());
    info->band_r1 = band_r1;
    info->band_r2 = band_r2;
    *patch_out = new sbpr_image{std::move(out_img)};
  });
}

double sbpr_box_iou(const double a[4], const double b[4])
{
  if (!a || !b) {
    return 0.0;
  }
  return sbpr::iou(sbpr::Box{a[0], a[1], a[2], a[3]}, sbpr::Box{b[0], b[1], b[2], b[3]});
}

}  // extern "C"
