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

// Command line front end. Everything goes through the shared library's C
// interface; this file only parses arguments, walks directories and reports.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sbpr.h"

namespace fs = std::filesystem;

namespace
{

int fail(sbpr_status status)
{
  std::fprintf(stderr, "error (%s): %s\n", sbpr_status_name(status), sbpr_last_error());
  return 1;
}

int fail_msg(const std::string & message)
{
  std::fprintf(stderr, "error: %s\n", message.c_str());
  return 1;
}

bool parse_pair(const std::string & text, double & a, double & b)
{
  return std::sscanf(text.c_str(), "%lf,%lf", &a, &b) == 2;
}

bool parse_quad(const std::string & text, double v[4])
{
  return std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3]) == 4;
}

std::vector<std::int64_t> parse_counts(const std::string & text)
{
  std::vector<std::int64_t> counts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) {
      next = text.size();
    }
    counts.push_back(std::stoll(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return counts;
}

struct RetrieveArgs
{
  std::string annotations;
  std::string calibration;
  std::string query_path;
  bool query_from_target = false;
  std::string detections;
  bool oracle = false;
  std::string frames_dir;
  std::string output;
  std::string classifier = "oracle";
  std::string color_table;
  int skip_frames = 30;
  double height_margin = 0.0;
  double regression_min_iou = 0.0;
  bool no_early_exit = false;
  double min_score = 0.5;
  std::uint64_t seed = 0;
  double jitter = 0.0;
  double drop_prob = 0.0;
  bool merge_overlaps = false;
  double color_error_rate = 0.0;
  double gender_error_rate = 0.0;
  unsigned jobs = 1;
};

void fill_options(const RetrieveArgs & args, sbpr_retrieve_options & opts)
{
  sbpr_retrieve_options_init(&opts);
  opts.use_oracle_detections = args.oracle ? 1 : 0;
  opts.detections_path = args.detections.empty() ? nullptr : args.detections.c_str();
  opts.oracle_jitter_px = args.jitter;
  opts.oracle_drop_prob = args.drop_prob;
  opts.oracle_merge_overlaps = args.merge_overlaps ? 1 : 0;
  opts.min_detection_score = args.min_score;
  opts.reference_color_classifier = args.classifier == "reference" ? 1 : 0;
  opts.color_table_path = args.color_table.empty() ? nullptr : args.color_table.c_str();
  opts.frames_dir = args.frames_dir.empty() ? nullptr : args.frames_dir.c_str();
  opts.color_error_rate = args.color_error_rate;
  opts.gender_error_rate = args.gender_error_rate;
  opts.skip_frames = args.skip_frames;
  opts.height_margin_cm = args.height_margin;
  opts.regression_min_iou = args.regression_min_iou;
  opts.early_exit = args.no_early_exit ? 0 : 1;
  opts.seed = args.seed;
}

// Runs one sequence file end to end; returns an error string on failure.
std::optional<std::string> retrieve_one(
  const RetrieveArgs & args, const sbpr_camera * cam, const std::string & annotation_path,
  const std::string & output_path)
{
  sbpr_sequence * seq = nullptr;
  sbpr_status st = sbpr_sequence_load(annotation_path.c_str(), &seq);
  if (st != SBPR_OK) {
    return annotation_path + ": " + sbpr_last_error();
  }

  sbpr_query * query = nullptr;
  if (args.query_from_target) {
    st = sbpr_query_from_target(seq, &query);
  } else {
    st = sbpr_query_load(args.query_path.c_str(), &query);
  }
  if (st != SBPR_OK) {
    std::string message = sbpr_last_error();
    sbpr_sequence_free(seq);
    return message;
  }

  sbpr_retrieve_options opts;
  fill_options(args, opts);

  sbpr_results * results = nullptr;
  st = sbpr_retrieve(seq, cam, query, &opts, &results);
  if (st == SBPR_OK) {
    st = sbpr_results_save(results, output_path.c_str());
  }
  std::optional<std::string> error;
  if (st != SBPR_OK) {
    error = annotation_path + ": " + sbpr_last_error();
  } else {
    int counts[3] = {0, 0, 0};
    sbpr_results_method_counts(results, counts);
    std::printf(
      "%s: %d frames (biometric %d, regression %d, none %d) -> %s\n", sbpr_sequence_id(seq),
      sbpr_results_frame_count(results), counts[0], counts[1], counts[2], output_path.c_str());
  }
  sbpr_results_free(results);
  sbpr_query_free(query);
  sbpr_sequence_free(seq);
  return error;
}

std::vector<fs::path> annotation_files(const fs::path & dir)
{
  std::vector<fs::path> files;
  for (const auto & entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

// <sequence_id>.results.jsonl, the batch naming convention.
std::string batch_result_name(const char * sequence_id)
{
  return std::string(sequence_id) + ".results.jsonl";
}

int cmd_retrieve(const RetrieveArgs & args)
{
  if (args.oracle == !args.detections.empty()) {
    return fail_msg("choose exactly one detection source: --oracle or --detections");
  }
  if (!args.query_from_target && args.query_path.empty()) {
    return fail_msg("provide --query FILE or --query-from-target");
  }
  if (args.classifier != "oracle" && args.classifier != "reference") {
    return fail_msg("--classifier must be 'oracle' or 'reference'");
  }

  sbpr_camera * cam = nullptr;
  sbpr_status st = sbpr_camera_load(args.calibration.c_str(), &cam);
  if (st != SBPR_OK) {
    return fail(st);
  }

  int code = 0;
  if (fs::is_directory(args.annotations)) {
    const auto files = annotation_files(args.annotations);
    if (files.empty()) {
      sbpr_camera_free(cam);
      return fail_msg("no .json annotation files in " + args.annotations);
    }
    std::error_code ec;
    fs::create_directories(args.output, ec);
    if (ec) {
      sbpr_camera_free(cam);
      return fail_msg("cannot create output directory " + args.output);
    }

    std::atomic<std::size_t> next{0};
    std::mutex errors_mutex;
    std::vector<std::string> errors;
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= files.size()) {
          return;
        }
        // Output name needs the sequence id, so peek at the sequence first.
        sbpr_sequence * seq = nullptr;
        std::string out_path;
        if (sbpr_sequence_load(files[i].string().c_str(), &seq) == SBPR_OK) {
          out_path = (fs::path(args.output) / batch_result_name(sbpr_sequence_id(seq))).string();
          sbpr_sequence_free(seq);
        } else {
          std::lock_guard<std::mutex> lock(errors_mutex);
          errors.push_back(files[i].string() + ": " + sbpr_last_error());
          continue;
        }
        auto error = retrieve_one(args, cam, files[i].string(), out_path);
        if (error.has_value()) {
          std::lock_guard<std::mutex> lock(errors_mutex);
          errors.push_back(*error);
        }
      }
    };
    std::vector<std::thread> pool;
    const unsigned jobs = std::max(1u, args.jobs);
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back(worker);
    }
    for (auto & t : pool) {
      t.join();
    }
    for (const auto & error : errors) {
      std::fprintf(stderr, "error: %s\n", error.c_str());
      code = 1;
    }
  } else {
    auto error = retrieve_one(args, cam, args.annotations, args.output);
    if (error.has_value()) {
      code = fail_msg(*error);
    }
  }
  sbpr_camera_free(cam);
  return code;
}

struct EvaluateArgs
{
  std::string results;
  std::string annotations;
  double theta = 0.4;
  int skip_frames = 30;
  std::string output;
};

int cmd_evaluate(const EvaluateArgs & args)
{
  sbpr_report * report = nullptr;
  sbpr_status st = sbpr_report_create(args.theta, args.skip_frames, &report);
  if (st != SBPR_OK) {
    return fail(st);
  }

  auto add_pair = [&](const std::string & annotation_path, const std::string & results_path) {
    sbpr_sequence * seq = nullptr;
    sbpr_status s = sbpr_sequence_load(annotation_path.c_str(), &seq);
    if (s != SBPR_OK) {
      return s;
    }
    sbpr_results * results = nullptr;
    s = sbpr_results_load(results_path.c_str(), &results);
    if (s == SBPR_OK) {
      s = sbpr_report_add(report, seq, results);
    }
    sbpr_results_free(results);
    sbpr_sequence_free(seq);
    return s;
  };

  if (fs::is_directory(args.annotations)) {
    if (!fs::is_directory(args.results)) {
      sbpr_report_free(report);
      return fail_msg("--results must be a directory when --annotations is one");
    }
    const auto files = annotation_files(args.annotations);
    if (files.empty()) {
      sbpr_report_free(report);
      return fail_msg("no .json annotation files in " + args.annotations);
    }
    for (const auto & file : files) {
      sbpr_sequence * seq = nullptr;
      st = sbpr_sequence_load(file.string().c_str(), &seq);
      if (st != SBPR_OK) {
        sbpr_report_free(report);
        return fail(st);
      }
      const fs::path results_path = fs::path(args.results) / batch_result_name(sbpr_sequence_id(seq));
      sbpr_sequence_free(seq);
      st = add_pair(file.string(), results_path.string());
      if (st != SBPR_OK) {
        sbpr_report_free(report);
        return fail(st);
      }
    }
  } else {
    st = add_pair(args.annotations, args.results);
    if (st != SBPR_OK) {
      sbpr_report_free(report);
      return fail(st);
    }
  }

  const char * json = sbpr_report_json(report);
  if (json[0] == '\0') {
    sbpr_report_free(report);
    return fail_msg(sbpr_last_error());
  }
  if (!args.output.empty()) {
    st = sbpr_report_save(report, args.output.c_str());
    if (st != SBPR_OK) {
      sbpr_report_free(report);
      return fail(st);
    }
    std::printf("report -> %s\n", args.output.c_str());
  } else {
    std::fputs(json, stdout);
  }
  sbpr_report_free(report);
  return 0;
}

int cmd_synth(const std::string & scenario_path, const std::string & output_dir)
{
  sbpr_scenario * scenario = nullptr;
  sbpr_status st = sbpr_scenario_load(scenario_path.c_str(), &scenario);
  if (st != SBPR_OK) {
    return fail(st);
  }
  st = sbpr_synth_render(scenario, output_dir.c_str());
  const int frames = sbpr_scenario_frame_count(scenario);
  sbpr_scenario_free(scenario);
  if (st != SBPR_OK) {
    return fail(st);
  }
  std::printf("rendered %d frames -> %s\n", frames, output_dir.c_str());
  return 0;
}

int cmd_height(const std::string & calibration, const std::string & head, const std::string & feet)
{
  double hx = 0.0;
  double hy = 0.0;
  double fx = 0.0;
  double fy = 0.0;
  if (!parse_pair(head, hx, hy) || !parse_pair(feet, fx, fy)) {
    return fail_msg("--head and --feet expect 'x,y'");
  }
  sbpr_camera * cam = nullptr;
  sbpr_status st = sbpr_camera_load(calibration.c_str(), &cam);
  if (st != SBPR_OK) {
    return fail(st);
  }
  double height_cm = 0.0;
  double residual_cm = 0.0;
  st = sbpr_camera_estimate_height(cam, hx, hy, fx, fy, &height_cm, &residual_cm);
  sbpr_camera_free(cam);
  if (st != SBPR_OK) {
    return fail(st);
  }
  std::printf("{\"height_cm\": %.17g, \"residual_cm\": %.17g}\n", height_cm, residual_cm);
  return 0;
}

struct PatchArgs
{
  std::string image;
  std::string box;
  std::string torso_type;
  std::string leg_type;
  std::string mask_rle;
  std::string output;
};

int cmd_patch(const PatchArgs & args)
{
  if (args.torso_type.empty() == args.leg_type.empty()) {
    return fail_msg("choose exactly one of --torso-type or --leg-type");
  }
  double box[4];
  if (!parse_quad(args.box, box)) {
    return fail_msg("--box expects 'x,y,w,h'");
  }

  double r1 = 0.0;
  double r2 = 0.0;
  sbpr_status st = args.torso_type.empty()
                     ? sbpr_leg_band(args.leg_type.c_str(), &r1, &r2)
                     : sbpr_torso_band(args.torso_type.c_str(), &r1, &r2);
  if (st != SBPR_OK) {
    return fail(st);
  }

  sbpr_image * image = nullptr;
  st = sbpr_image_load(args.image.c_str(), &image);
  if (st != SBPR_OK) {
    return fail(st);
  }

  std::vector<std::int64_t> counts;
  if (!args.mask_rle.empty()) {
    counts = parse_counts(args.mask_rle);
  }

  sbpr_image * patch = nullptr;
  sbpr_patch_info info;
  st = sbpr_extract_patch(
    image, box, r1, r2, counts.empty() ? nullptr : counts.data(), counts.size(), &patch, &info);
  sbpr_image_free(image);
  if (st != SBPR_OK) {
    return fail(st);
  }
  st = sbpr_image_save(patch, args.output.c_str());
  sbpr_image_free(patch);
  if (st != SBPR_OK) {
    return fail(st);
  }
  std::printf(
    "{\"band\": [%.17g, %.17g], \"rows\": [%d, %d], \"pixels\": %ld, \"output\": \"%s\"}\n",
    info.band_r1, info.band_r2, info.row_begin, info.row_end, info.pixel_count,
    args.output.c_str());
  return 0;
}

int cmd_augment(const std::string & input, double gamma, const std::string & output)
{
  sbpr_image * image = nullptr;
  sbpr_status st = sbpr_image_load(input.c_str(), &image);
  if (st != SBPR_OK) {
    return fail(st);
  }
  st = sbpr_image_gamma(image, gamma);
  if (st == SBPR_OK) {
    st = sbpr_image_save(image, output.c_str());
  }
  sbpr_image_free(image);
  if (st != SBPR_OK) {
    return fail(st);
  }
  std::printf("gamma %.17g -> %s\n", gamma, output.c_str());
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"semantic person retrieval over annotated surveillance sequences"};
  app.require_subcommand(1);

  RetrieveArgs rargs;
  CLI::App * retrieve = app.add_subcommand("retrieve", "run the filtering cascade over a sequence");
  retrieve->add_option("--annotations", rargs.annotations, "annotation file, or a directory of them")
    ->required()
    ->check(CLI::ExistingPath);
  retrieve->add_option("--calibration", rargs.calibration, "camera calibration file")
    ->required()
    ->check(CLI::ExistingFile);
  retrieve->add_option("--query", rargs.query_path, "query file")->check(CLI::ExistingFile);
  retrieve->add_flag(
    "--query-from-target", rargs.query_from_target, "build the query from the annotated target");
  retrieve->add_option("--detections", rargs.detections, "detections stream file")
    ->check(CLI::ExistingFile);
  retrieve->add_flag("--oracle", rargs.oracle, "use ground-truth-backed detections");
  retrieve->add_option("--frames", rargs.frames_dir, "directory of frame pixmaps (NNNNNN.ppm)")
    ->check(CLI::ExistingDirectory);
  retrieve->add_option("--output", rargs.output, "results stream path (directory in batch mode)")
    ->required();
  retrieve->add_option("--classifier", rargs.classifier, "oracle | reference (default oracle)");
  retrieve->add_option("--color-table", rargs.color_table, "color prototype table file")
    ->check(CLI::ExistingFile);
  retrieve->add_option("--skip-frames", rargs.skip_frames, "warm-up frames emitting no box (default 30)");
  retrieve->add_option("--height-margin", rargs.height_margin, "height class margin in cm");
  retrieve->add_option(
    "--regression-min-iou", rargs.regression_min_iou, "strict lower bound for regressed boxes");
  retrieve->add_flag("--no-early-exit", rargs.no_early_exit, "always run every filter stage");
  retrieve->add_option("--min-score", rargs.min_score, "detection score cut for streams (default 0.5)");
  retrieve->add_option("--seed", rargs.seed, "seed for all randomized components");
  retrieve->add_option("--jitter", rargs.jitter, "oracle box jitter in pixels");
  retrieve->add_option("--drop-prob", rargs.drop_prob, "oracle detection drop probability");
  retrieve->add_flag("--merge-overlaps", rargs.merge_overlaps, "oracle merges overlapping boxes");
  retrieve->add_option("--color-error-rate", rargs.color_error_rate, "oracle color flip rate");
  retrieve->add_option("--gender-error-rate", rargs.gender_error_rate, "oracle gender flip rate");
  retrieve->add_option("--jobs", rargs.jobs, "parallel sequences in batch mode");

  EvaluateArgs eargs;
  CLI::App * evaluate = app.add_subcommand("evaluate", "score result streams against annotations");
  evaluate->add_option("--results", eargs.results, "results stream file or directory")
    ->required()
    ->check(CLI::ExistingPath);
  evaluate->add_option("--annotations", eargs.annotations, "annotation file or directory")
    ->required()
    ->check(CLI::ExistingPath);
  evaluate->add_option("--theta", eargs.theta, "IoU threshold for a correct retrieval (default 0.4)");
  evaluate->add_option("--skip-frames", eargs.skip_frames, "warm-up frames excluded from metrics");
  evaluate->add_option("--output", eargs.output, "report path (stdout when omitted)");

  std::string scenario_path;
  std::string synth_out;
  CLI::App * synth = app.add_subcommand("synth", "render a synthetic scene with ground truth");
  synth->add_option("--scenario", scenario_path, "scenario file")->required()->check(CLI::ExistingFile);
  synth->add_option("--output", synth_out, "output directory")->required();

  std::string h_calibration;
  std::string h_head;
  std::string h_feet;
  CLI::App * height = app.add_subcommand("height", "metric height from head/feet pixels");
  height->add_option("--calibration", h_calibration, "camera calibration file")
    ->required()
    ->check(CLI::ExistingFile);
  height->add_option("--head", h_head, "head pixel 'x,y'")->required();
  height->add_option("--feet", h_feet, "feet pixel 'x,y'")->required();

  PatchArgs pargs;
  CLI::App * patch = app.add_subcommand("patch", "extract a clothing band patch");
  patch->add_option("--image", pargs.image, "frame pixmap")->required()->check(CLI::ExistingFile);
  patch->add_option("--box", pargs.box, "person box 'x,y,w,h'")->required();
  patch->add_option("--torso-type", pargs.torso_type, "torso clothing type");
  patch->add_option("--leg-type", pargs.leg_type, "leg clothing type");
  patch->add_option("--mask-rle", pargs.mask_rle, "frame-sized mask run lengths 'c0,c1,...'");
  patch->add_option("--output", pargs.output, "patch pixmap path")->required();

  std::string a_image;
  std::string a_output;
  double a_gamma = 1.0;
  CLI::App * augment = app.add_subcommand("augment", "gamma-adjust a pixmap");
  augment->add_option("--image", a_image, "input pixmap")->required()->check(CLI::ExistingFile);
  augment->add_option("--gamma", a_gamma, "gamma exponent (> 0)")->required();
  augment->add_option("--output", a_output, "output pixmap path")->required();

  CLI11_PARSE(app, argc, argv);

  if (retrieve->parsed()) {
    return cmd_retrieve(rargs);
  }
  if (evaluate->parsed()) {
    return cmd_evaluate(eargs);
  }
  if (synth->parsed()) {
    return cmd_synth(scenario_path, synth_out);
  }
  if (height->parsed()) {
    return cmd_height(h_calibration, h_head, h_feet);
  }
  if (patch->parsed()) {
    return cmd_patch(pargs);
  }
  if (augment->parsed()) {
    return cmd_augment(a_image, a_gamma, a_output);
  }
  return 0;
}
