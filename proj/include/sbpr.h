/* Copyright 2026 The sbpr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the person retrieval engine. All objects are opaque
 * handles created by sbpr_*_load/create functions and released by the
 * matching sbpr_*_free. Functions return SBPR_OK on success; on failure the
 * thread-local message from sbpr_last_error() describes what went wrong.
 */

#ifndef SBPR_H
#define SBPR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SBPR_API __declspec(dllexport)
#else
#define SBPR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sbpr_status {
  SBPR_OK = 0,
  SBPR_ERROR_IO = 1,
  SBPR_ERROR_PARSE = 2,
  SBPR_ERROR_INVALID = 3,
  SBPR_ERROR_TAXONOMY = 4,
  SBPR_ERROR_GEOMETRY = 5,
  SBPR_ERROR_NUMERIC = 6,
  SBPR_ERROR_DEGENERATE = 7,
  SBPR_ERROR_PROVIDER = 8,
  SBPR_ERROR_METRIC = 9,
  SBPR_ERROR_UNKNOWN = 10
} sbpr_status;

typedef struct sbpr_camera sbpr_camera;
typedef struct sbpr_sequence sbpr_sequence;
typedef struct sbpr_query sbpr_query;
typedef struct sbpr_results sbpr_results;
typedef struct sbpr_report sbpr_report;
typedef struct sbpr_scenario sbpr_scenario;
typedef struct sbpr_image sbpr_image;

SBPR_API const char * sbpr_version(void);
SBPR_API const char * sbpr_status_name(sbpr_status status);
/* Message of the most recent failure on the calling thread; empty string if none. */
SBPR_API const char * sbpr_last_error(void);

/* ---- calibration ---- */
SBPR_API sbpr_status sbpr_camera_load(const char * path, sbpr_camera ** out);
SBPR_API void sbpr_camera_free(sbpr_camera * cam);
SBPR_API sbpr_status sbpr_camera_estimate_height(
  const sbpr_camera * cam, double head_x, double head_y, double feet_x, double feet_y,
  double * height_cm, double * residual_cm);

/* ---- annotations and queries ---- */
SBPR_API sbpr_status sbpr_sequence_load(const char * path, sbpr_sequence ** out);
SBPR_API void sbpr_sequence_free(sbpr_sequence * seq);
SBPR_API int sbpr_sequence_frame_count(const sbpr_sequence * seq);
SBPR_API const char * sbpr_sequence_id(const sbpr_sequence * seq);
SBPR_API const char * sbpr_sequence_difficulty(const sbpr_sequence * seq);

SBPR_API sbpr_status sbpr_query_load(const char * path, sbpr_query ** out);
SBPR_API sbpr_status sbpr_query_from_target(const sbpr_sequence * seq, sbpr_query ** out);
SBPR_API sbpr_status sbpr_query_save(const sbpr_query * query, const char * path);
SBPR_API void sbpr_query_free(sbpr_query * query);

/* ---- retrieval ---- */
typedef struct sbpr_retrieve_options {
  /* exactly one detection source */
  const char * detections_path; /* NULL unless loading a stream */
  int use_oracle_detections;    /* nonzero: ground-truth-backed detections */
  double oracle_jitter_px;
  double oracle_drop_prob;
  int oracle_merge_overlaps;
  double min_detection_score;

  /* 0: oracle color verdicts; 1: pixel-based reference color classifier */
  int reference_color_classifier;
  const char * color_table_path; /* NULL: built-in prototype table */
  const char * frames_dir;       /* required with the reference classifier */
  double color_error_rate;
  double gender_error_rate;

  int skip_frames;
  double height_margin_cm;
  double regression_min_iou;
  int early_exit;

  uint64_t seed;
} sbpr_retrieve_options;

SBPR_API void sbpr_retrieve_options_init(sbpr_retrieve_options * options);

SBPR_API sbpr_status sbpr_retrieve(
  const sbpr_sequence * seq, const sbpr_camera * cam, const sbpr_query * query,
  const sbpr_retrieve_options * options, sbpr_results ** out);

SBPR_API sbpr_status sbpr_results_load(const char * path, sbpr_results ** out);
SBPR_API sbpr_status sbpr_results_save(const sbpr_results * results, const char * path);
SBPR_API int sbpr_results_frame_count(const sbpr_results * results);
/* counts[0] = biometric, counts[1] = regression, counts[2] = none */
SBPR_API void sbpr_results_method_counts(const sbpr_results * results, int counts[3]);
SBPR_API void sbpr_results_free(sbpr_results * results);

/* ---- evaluation ---- */
SBPR_API sbpr_status sbpr_report_create(double theta, int skip_frames, sbpr_report ** out);
SBPR_API sbpr_status sbpr_report_add(
  sbpr_report * report, const sbpr_sequence * seq, const sbpr_results * results);
SBPR_API sbpr_status sbpr_report_save(sbpr_report * report, const char * path);
/* Serialized report document; owned by the handle, valid until it is freed. */
SBPR_API const char * sbpr_report_json(sbpr_report * report);
SBPR_API void sbpr_report_free(sbpr_report * report);

/* ---- synthetic scenes ---- */
SBPR_API sbpr_status sbpr_scenario_load(const char * path, sbpr_scenario ** out);
SBPR_API int sbpr_scenario_frame_count(const sbpr_scenario * scenario);
SBPR_API void sbpr_scenario_free(sbpr_scenario * scenario);
/* Writes frames/, detections.jsonl, annotation.json and calibration.json. */
SBPR_API sbpr_status sbpr_synth_render(const sbpr_scenario * scenario, const char * output_dir);

/* ---- images and patches ---- */
SBPR_API sbpr_status sbpr_image_load(const char * path, sbpr_image ** out);
SBPR_API sbpr_status sbpr_image_save(const sbpr_image * image, const char * path);
SBPR_API int sbpr_image_width(const sbpr_image * image);
SBPR_API int sbpr_image_height(const sbpr_image * image);
SBPR_API sbpr_status sbpr_image_gamma(sbpr_image * image, double gamma);
SBPR_API void sbpr_image_free(sbpr_image * image);

SBPR_API sbpr_status sbpr_torso_band(const char * torso_type, double * r1, double * r2);
SBPR_API sbpr_status sbpr_leg_band(const char * leg_type, double * r1, double * r2);

typedef struct sbpr_patch_info {
  int row_begin;
  int row_end; /* half-open */
  long pixel_count;
  double band_r1;
  double band_r2;
} sbpr_patch_info;

/* Extracts the band patch of box[4] = {x, y, w, h}. mask_counts may be NULL
 * for a full-box mask; otherwise it is the run-length code of a frame-sized
 * mask. The returned image shows the patch pixels on black. */
SBPR_API sbpr_status sbpr_extract_patch(
  const sbpr_image * image, const double box[4], double band_r1, double band_r2,
  const int64_t * mask_counts, size_t mask_count_len, sbpr_image ** patch_out,
  sbpr_patch_info * info);

/* ---- primitives ---- */
SBPR_API double sbpr_box_iou(const double a[4], const double b[4]);

#ifdef __cplusplus
}
#endif

#endif /* SBPR_H */
