#include "aggsig/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <ostream>

#include "aggsig/eval.hpp"
#include "aggsig/io.hpp"
#include "aggsig/pipeline.hpp"
#include "aggsig/saliency.hpp"
#include "aggsig/synthetic.hpp"
#include "json.hpp"

namespace aggsig {
namespace fs = std::filesystem;

namespace {

struct TrackerFlags {
  std::string ast = "on";
  std::string drift_mode = "zscore";
  std::string prior_mode = "paper";
  double tg = 1.6;
  int iters = 4;
  int regions = 6;
  double xi = 1.0;
  int tau = 3;
  double hist_sigma = 0.5;

  void attach(CLI::App& cmd) {
    cmd.add_option("--ast", ast, "Enable drift re-detection")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    cmd.add_option("--drift-mode", drift_mode, "Drift test")
        ->check(CLI::IsMember({"zscore", "literal"}))
        ->capture_default_str();
    cmd.add_option("--prior-mode", prior_mode, "Candidate weighting")
        ->check(CLI::IsMember({"paper", "similarity"}))
        ->capture_default_str();
    cmd.add_option("--tg", tg, "Drift threshold")->capture_default_str();
    cmd.add_option("--iters", iters, "Aggregation iterations R")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd.add_option("--regions", regions, "Candidate regions M")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--xi", xi, "Prior weight bandwidth")->check(CLI::PositiveNumber)->capture_default_str();
    cmd.add_option("--tau", tau, "Motion channel frame gap")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd.add_option("--hist-sigma", hist_sigma, "Target histogram blend factor")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  }

  PipelineConfig config() const {
    PipelineConfig cfg;
    cfg.ast_enabled = ast == "on";
    cfg.drift_mode = drift_mode == "literal" ? DriftMode::kLiteral : DriftMode::kZScore;
    cfg.prior_mode = prior_mode == "similarity" ? PriorMode::kSimilarityDecay : PriorMode::kPaper;
    cfg.drift_threshold = tg;
    cfg.iterations = iters;
    cfg.regions = regions;
    cfg.xi = xi;
    cfg.tau = tau;
    cfg.hist_sigma = hist_sigma;
    return cfg;
  }
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

int run_saliency(const std::string& image_path, const std::string& previous_path,
                 const std::string& method, int iters, double blur_sigma, const std::string& out_path,
                 std::ostream& out) {
  const RgbImage frame = decode_image(image_path);
  const RgbImage previous = previous_path.empty() ? frame : decode_image(previous_path);
  const ChannelSet channels = build_channels(frame, previous);
  SignatureOptions opts;
  opts.blur_sigma = blur_sigma > 0.0 ? blur_sigma : default_blur_sigma(frame.rows(), frame.cols());
  const PriorMap prior = PriorMap::uniform(frame.rows(), frame.cols());

  SaliencyMap map;
  if (method == "is") {
    map = image_signature_saliency(channels.i1, opts.blur_sigma);
  } else if (method == "qis") {
    map = qdct_signature_saliency(channels, prior, opts);
  } else {
    map = aggregation_signature_saliency(channels, prior, iters, opts).map;
  }
  export_saliency(out_path, map);
  out << "saliency " << method << " " << frame.cols() << "x" << frame.rows() << " -> " << out_path
      << "\n";
  return 0;
}

int run_track(const std::string& seq_dir, const TrackerFlags& flags, const std::string& out_path,
              std::ostream& out) {
  const SequenceSpec spec = load_sequence(seq_dir);
  if (spec.gt_boxes.empty()) {
    throw FormatError((fs::path(seq_dir) / "groundtruth_rect.txt").string() +
                      ": needed for the initial box");
  }
  const std::vector<RgbImage> frames = load_frames(spec);
  const std::vector<TrackEvent> events = track_sequence(frames, spec.gt_boxes.front(), flags.config());
  write_results(out_path, events);
  const auto redetections = std::count_if(events.begin(), events.end(), [](const TrackEvent& e) {
    return e.kind == EventKind::kRedetected;
  });
  out << "track " << spec.name << ": " << events.size() << " frames, " << redetections
      << " re-detections -> " << out_path << "\n";
  return 0;
}

nlohmann::json curve_json(const CurveReport& c) {
  return {{"thresholds", c.thresholds}, {"values", c.values}, {"summary", c.summary}};
}

int run_bench(const std::string& dataset_dir, const TrackerFlags& flags,
              const std::string& report_dir, std::ostream& out) {
  const std::vector<SequenceData> dataset = load_dataset(dataset_dir);
  const OpeReport report = ope_run(dataset, flags.config());

  const fs::path dir(report_dir);
  fs::create_directories(dir);
  nlohmann::json summary;
  summary["sequences"] = nlohmann::json::array();
  for (const SequenceReport& s : report.sequences) {
    write_curve(dir / (s.name + "_precision.csv"), s.precision);
    write_curve(dir / (s.name + "_success.csv"), s.success);
    write_results(dir / (s.name + "_results.jsonl"), s.events);
    summary["sequences"].push_back({{"name", s.name},
                                    {"frames", s.frames},
                                    {"precision", curve_json(s.precision)},
                                    {"success", curve_json(s.success)},
                                    {"fps", s.fps}});
    out << s.name << ": precision@20=" << fixed(s.precision.summary, 3)
        << " auc=" << fixed(s.success.summary, 3) << " fps=" << fixed(s.fps, 1) << "\n";
  }
  write_curve(dir / "aggregate_precision.csv", report.precision);
  write_curve(dir / "aggregate_success.csv", report.success);
  summary["aggregate"] = {{"precision", curve_json(report.precision)},
                          {"success", curve_json(report.success)},
                          {"fps", report.fps}};
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  out << "aggregate: precision@20=" << fixed(report.precision.summary, 3)
      << " auc=" << fixed(report.success.summary, 3) << " fps=" << fixed(report.fps, 1) << "\n";
  return 0;
}

int run_synth(const std::string& out_dir, int seeds, int jump_frame, int frames, std::ostream& out) {
  const fs::path root(out_dir);
  for (int s = 0; s < seeds; ++s) {
    char name[32];
    std::snprintf(name, sizeof(name), "seq_%03d", s);
    JumpSequenceParams params;
    params.seed = static_cast<std::uint64_t>(s);
    params.jump_frame = static_cast<std::size_t>(jump_frame);
    params.frames = static_cast<std::size_t>(frames);
    const JumpSequence seq = synth_jump_sequence(params);
    const fs::path seq_dir = root / "sequences" / name;
    for (std::size_t f = 0; f < seq.frames.size(); ++f) {
      char frame_name[32];
      std::snprintf(frame_name, sizeof(frame_name), "%04zu.png", f + 1);
      encode_image(seq_dir / "img" / frame_name, seq.frames[f]);
    }
    write_text(seq_dir / "groundtruth_rect.txt", format_ground_truth(seq.ground_truth));

    std::snprintf(name, sizeof(name), "scene_%03d", s);
    SparseSceneParams scene_params;
    scene_params.seed = static_cast<std::uint64_t>(s);
    const SparseScene scene = synth_sparse_scene(scene_params);
    const fs::path scene_dir = root / "scenes" / name;
    encode_image(scene_dir / "first.png", scene.first);
    encode_image(scene_dir / "second.png", scene.second);
    export_saliency(scene_dir / "mask.pgm", SaliencyMap{scene.mask});
  }
  out << "synth: " << seeds << " sequences and scenes -> " << out_dir << "\n";
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Aggregation-signature saliency and small-object tracking"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string image_path, previous_path, method = "as", saliency_out;
  int saliency_iters = 4;
  double blur_sigma = 0.0;
  auto* saliency = app.add_subcommand("saliency", "Compute a saliency map for one image");
  saliency->add_option("image", image_path, "Input image")->required()->check(CLI::ExistingFile);
  saliency->add_option("--method", method, "is | qis | as")
      ->check(CLI::IsMember({"is", "qis", "as"}))
      ->capture_default_str();
  saliency->add_option("--iters", saliency_iters, "Aggregation iterations R")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  saliency->add_option("--blur-sigma", blur_sigma, "Blur sigma in pixels (default 0.04*max side)");
  saliency->add_option("--previous", previous_path, "Frame t-tau for the motion channel")
      ->check(CLI::ExistingFile);
  saliency->add_option("--out", saliency_out, "Output .pgm or .csv")->required();

  std::string seq_dir, track_out;
  TrackerFlags track_flags;
  auto* track = app.add_subcommand("track", "Track one OTB-layout sequence");
  track->add_option("seq-dir", seq_dir, "Sequence directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  track_flags.attach(*track);
  track->add_option("--out", track_out, "Result file (JSON lines)")->required();

  std::string dataset_dir, report_dir;
  TrackerFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "One-pass evaluation over a dataset directory");
  bench->add_option("dataset-dir", dataset_dir, "Directory of sequences")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench_flags.attach(*bench);
  bench->add_option("--report", report_dir, "Report directory")->required();

  std::string synth_out;
  int seeds = 20, jump_frame = 20, synth_frames = 40;
  auto* synth = app.add_subcommand("synth", "Write the synthetic fixtures");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--seeds", seeds, "Number of seeds")->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--jump-frame", jump_frame, "Frame of the teleport (1-based)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--frames", synth_frames, "Frames per sequence")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*saliency) {
      return run_saliency(image_path, previous_path, method, saliency_iters, blur_sigma,
                          saliency_out, out);
    }
    if (*track) return run_track(seq_dir, track_flags, track_out, out);
    if (*bench) return run_bench(dataset_dir, bench_flags, report_dir, out);
    if (*synth) return run_synth(synth_out, seeds, jump_frame, synth_frames, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace aggsig
