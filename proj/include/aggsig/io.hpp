#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aggsig/box.hpp"
#include "aggsig/eval.hpp"
#include "aggsig/matrix.hpp"
#include "aggsig/pipeline.hpp"
#include "aggsig/saliency.hpp"

namespace aggsig {

// I/O failure; the message names the offending file (and line, if any).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// OTB-style sequence directory:
//   <dir>/img/0001.jpg ...        frames, ordered by numeric file stem
//   <dir>/groundtruth_rect.txt    one "x,y,w,h" per frame, 1-based, comma or
//                                 whitespace separated (optional)
//   <dir>/attributes.txt          attribute tags (optional)
struct SequenceSpec {
  std::string name;
  std::vector<std::filesystem::path> frame_paths;
  std::vector<Box> gt_boxes;  // 0-based; empty or one per frame
  std::vector<std::string> attributes;
};

SequenceSpec load_sequence(const std::filesystem::path& dir);

// Parses ground-truth text; `source` is used in error messages.
std::vector<Box> parse_ground_truth(std::string_view text, const std::string& source);
std::string format_ground_truth(std::span<const Box> boxes);

// 8-bit PNG/JPEG/... decoded to RGB planes in [0,1] (v/255).
RgbImage decode_image(const std::filesystem::path& path);
// Quantizes to 8 bits (round(255 v)); format chosen by extension.
void encode_image(const std::filesystem::path& path, const RgbImage& img);

std::vector<RgbImage> load_frames(const SequenceSpec& spec);

// One JSON object per line: frame, kind, x, y, w, h, response and, on
// re-detected frames, coarse_x / coarse_y. Coordinates are 0-based.
void write_results(const std::filesystem::path& path, std::span<const TrackEvent> events);
std::vector<TrackEvent> read_results(const std::filesystem::path& path);
std::string format_results(std::span<const TrackEvent> events);
std::vector<TrackEvent> parse_results(std::string_view text, const std::string& source);

// "threshold,value" header followed by one row per threshold.
void write_curve(const std::filesystem::path& path, const CurveReport& curve);
std::string format_curve(const CurveReport& curve);

// `.pgm`: binary 16-bit graymap (maxval 65535, big-endian, round(65535 v)).
// `.csv`: one comma-separated text row per image row.
void export_saliency(const std::filesystem::path& path, const SaliencyMap& map);
std::string encode_pgm16(const Matrix& values);
std::string encode_csv(const Matrix& values);

// Ground-truth-complete sequences under `dir` (one sub-directory each).
std::vector<SequenceData> load_dataset(const std::filesystem::path& dir);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

}  // namespace aggsig
