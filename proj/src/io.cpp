#include "aggsig/io.hpp"

#include <opencv2/imgcodecs.hpp>

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace aggsig {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool is_image_extension(std::string ext) {
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext == ".jpg" || ext == ".jpeg" || ext == ".png" || ext == ".bmp" || ext == ".ppm" ||
         ext == ".pgm" || ext == ".tif" || ext == ".tiff";
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

bool parse_double(std::string_view token, double& out) {
  const std::string t = trim(token);
  if (t.empty()) return false;
  const char* begin = t.data();
  const char* end = begin + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void write_text(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path.string() + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw FormatError(path.string() + ": write failed");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Box> parse_ground_truth(std::string_view text, const std::string& source) {
  std::vector<Box> boxes;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    const std::string content = trim(line);
    if (content.empty()) continue;

    std::vector<std::string> fields;
    std::string current;
    for (char ch : content) {
      if (ch == ',' || ch == '\t' || ch == ' ') {
        if (!current.empty() || ch == ',') fields.push_back(current);
        current.clear();
      } else {
        current.push_back(ch);
      }
    }
    fields.push_back(current);
    fields.erase(std::remove_if(fields.begin(), fields.end(),
                                [](const std::string& f) { return trim(f).empty(); }),
                 fields.end());

    double v[4];
    if (fields.size() != 4 || !parse_double(fields[0], v[0]) || !parse_double(fields[1], v[1]) ||
        !parse_double(fields[2], v[2]) || !parse_double(fields[3], v[3])) {
      throw FormatError(source + ":" + std::to_string(line_no) +
                        ": expected four numbers x,y,w,h but got '" + content + "'");
    }
    if (!(v[2] > 0.0) || !(v[3] > 0.0)) {
      throw FormatError(source + ":" + std::to_string(line_no) + ": box width/height must be > 0");
    }
    boxes.push_back({v[0] - 1.0, v[1] - 1.0, v[2], v[3]});
  }
  return boxes;
}

std::string format_ground_truth(std::span<const Box> boxes) {
  std::string out;
  for (const Box& b : boxes) {
    out += format_short(b.x + 1.0) + "," + format_short(b.y + 1.0) + "," + format_short(b.w) +
           "," + format_short(b.h) + "\n";
  }
  return out;
}

SequenceSpec load_sequence(const fs::path& dir) {
  const fs::path img_dir = dir / "img";
  if (!fs::is_directory(img_dir)) {
    throw FormatError(img_dir.string() + ": missing frame directory");
  }
  SequenceSpec spec;
  spec.name = dir.filename().string();
  if (spec.name.empty()) spec.name = dir.parent_path().filename().string();

  std::vector<std::pair<long long, fs::path>> numbered;
  for (const auto& entry : fs::directory_iterator(img_dir)) {
    if (!entry.is_regular_file() || !is_image_extension(entry.path().extension().string())) {
      continue;
    }
    const std::string stem = entry.path().stem().string();
    long long index = 0;
    auto [ptr, ec] = std::from_chars(stem.data(), stem.data() + stem.size(), index);
    if (ec != std::errc() || ptr != stem.data() + stem.size()) {
      throw FormatError(entry.path().string() + ": frame name is not a number");
    }
    numbered.emplace_back(index, entry.path());
  }
  if (numbered.empty()) throw FormatError(img_dir.string() + ": no frames found");
  std::sort(numbered.begin(), numbered.end());
  for (auto& [index, path] : numbered) spec.frame_paths.push_back(std::move(path));

  const fs::path gt_path = dir / "groundtruth_rect.txt";
  if (fs::exists(gt_path)) {
    spec.gt_boxes = parse_ground_truth(read_text(gt_path), gt_path.string());
    if (spec.gt_boxes.size() != spec.frame_paths.size()) {
      throw FormatError(gt_path.string() + ": " + std::to_string(spec.gt_boxes.size()) +
                        " boxes for " + std::to_string(spec.frame_paths.size()) + " frames");
    }
  }

  const fs::path attr_path = dir / "attributes.txt";
  if (fs::exists(attr_path)) {
    std::string tag;
    for (char ch : read_text(attr_path)) {
      if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
        if (!tag.empty()) spec.attributes.push_back(tag);
        tag.clear();
      } else {
        tag.push_back(ch);
      }
    }
    if (!tag.empty()) spec.attributes.push_back(tag);
  }
  return spec;
}

RgbImage decode_image(const fs::path& path) {
  const cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) throw FormatError(path.string() + ": cannot decode image");
  const auto rows = static_cast<std::size_t>(bgr.rows);
  const auto cols = static_cast<std::size_t>(bgr.cols);
  RgbImage img{Matrix(rows, cols), Matrix(rows, cols), Matrix(rows, cols)};
  for (int r = 0; r < bgr.rows; ++r) {
    const auto* px = bgr.ptr<cv::Vec3b>(r);
    for (int c = 0; c < bgr.cols; ++c) {
      const auto rr = static_cast<std::size_t>(r);
      const auto cc = static_cast<std::size_t>(c);
      img.b(rr, cc) = px[c][0] / 255.0;
      img.g(rr, cc) = px[c][1] / 255.0;
      img.r(rr, cc) = px[c][2] / 255.0;
    }
  }
  return img;
}

void encode_image(const fs::path& path, const RgbImage& img) {
  if (img.empty() || !img.consistent()) throw FormatError(path.string() + ": empty image");
  cv::Mat bgr(static_cast<int>(img.rows()), static_cast<int>(img.cols()), CV_8UC3);
  auto q = [](double v) {
    return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
  };
  for (int r = 0; r < bgr.rows; ++r) {
    auto* px = bgr.ptr<cv::Vec3b>(r);
    for (int c = 0; c < bgr.cols; ++c) {
      const auto rr = static_cast<std::size_t>(r);
      const auto cc = static_cast<std::size_t>(c);
      px[c] = cv::Vec3b(q(img.b(rr, cc)), q(img.g(rr, cc)), q(img.r(rr, cc)));
    }
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  if (!cv::imwrite(path.string(), bgr)) throw FormatError(path.string() + ": cannot encode image");
}

std::vector<RgbImage> load_frames(const SequenceSpec& spec) {
  std::vector<RgbImage> frames;
  frames.reserve(spec.frame_paths.size());
  for (const auto& p : spec.frame_paths) {
    frames.push_back(decode_image(p));
    if (!frames.back().r.same_shape(frames.front().r)) {
      throw FormatError(p.string() + ": frame size differs from the first frame");
    }
  }
  return frames;
}

std::string format_results(std::span<const TrackEvent> events) {
  std::string out;
  for (const TrackEvent& e : events) {
    json rec = json::object();
    rec["frame"] = e.frame_index;
    rec["kind"] = std::string(to_string(e.kind));
    rec["x"] = e.box.x;
    rec["y"] = e.box.y;
    rec["w"] = e.box.w;
    rec["h"] = e.box.h;
    rec["response"] = e.response;
    if (e.coarse_center) {
      rec["coarse_x"] = e.coarse_center->x;
      rec["coarse_y"] = e.coarse_center->y;
    }
    out += rec.dump();
    out += '\n';
  }
  return out;
}

std::vector<TrackEvent> parse_results(std::string_view text, const std::string& source) {
  std::vector<TrackEvent> events;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    try {
      const json rec = json::parse(line);
      TrackEvent e;
      e.frame_index = rec.at("frame").get<std::size_t>();
      const auto kind = parse_event_kind(rec.at("kind").get<std::string>());
      if (!kind) throw FormatError(where + ": unknown event kind");
      e.kind = *kind;
      e.box = {rec.at("x").get<double>(), rec.at("y").get<double>(), rec.at("w").get<double>(),
               rec.at("h").get<double>()};
      e.response = rec.at("response").get<double>();
      if (rec.contains("coarse_x") || rec.contains("coarse_y")) {
        e.coarse_center = CoarseCenter{rec.at("coarse_x").get<double>(),
                                       rec.at("coarse_y").get<double>()};
      }
      events.push_back(e);
    } catch (const json::exception& ex) {
      throw FormatError(where + ": " + ex.what());
    }
  }
  return events;
}

void write_results(const fs::path& path, std::span<const TrackEvent> events) {
  write_text(path, format_results(events));
}

std::vector<TrackEvent> read_results(const fs::path& path) {
  return parse_results(read_text(path), path.string());
}

std::string format_curve(const CurveReport& curve) {
  std::string out = "threshold,value\n";
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    out += format_short(curve.thresholds[i]) + "," + format_short(curve.values[i]) + "\n";
  }
  return out;
}

void write_curve(const fs::path& path, const CurveReport& curve) {
  write_text(path, format_curve(curve));
}

std::string encode_pgm16(const Matrix& values) {
  require_non_empty(values, "encode_pgm16");
  std::string out =
      "P5\n" + std::to_string(values.cols()) + " " + std::to_string(values.rows()) + "\n65535\n";
  out.reserve(out.size() + 2 * values.size());
  for (double v : values.data()) {
    const auto q = static_cast<unsigned>(std::lround(65535.0 * std::clamp(v, 0.0, 1.0)));
    out.push_back(static_cast<char>((q >> 8) & 0xFF));
    out.push_back(static_cast<char>(q & 0xFF));
  }
  return out;
}

std::string encode_csv(const Matrix& values) {
  require_non_empty(values, "encode_csv");
  std::string out;
  for (std::size_t r = 0; r < values.rows(); ++r) {
    for (std::size_t c = 0; c < values.cols(); ++c) {
      if (c > 0) out += ',';
      out += format_number(values(r, c));
    }
    out += '\n';
  }
  return out;
}

void export_saliency(const fs::path& path, const SaliencyMap& map) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (ext == ".pgm") {
    write_text(path, encode_pgm16(map.values));
  } else if (ext == ".csv") {
    write_text(path, encode_csv(map.values));
  } else {
    throw FormatError(path.string() + ": saliency export needs a .pgm or .csv extension");
  }
}

std::vector<SequenceData> load_dataset(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw FormatError(dir.string() + ": not a directory");
  std::vector<fs::path> subdirs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && fs::is_directory(entry.path() / "img")) {
      subdirs.push_back(entry.path());
    }
  }
  std::sort(subdirs.begin(), subdirs.end());
  if (subdirs.empty()) throw FormatError(dir.string() + ": no sequences found");

  std::vector<SequenceData> dataset;
  for (const auto& sub : subdirs) {
    SequenceSpec spec = load_sequence(sub);
    if (spec.gt_boxes.empty()) {
      throw FormatError((sub / "groundtruth_rect.txt").string() + ": missing ground truth");
    }
    dataset.push_back({spec.name, load_frames(spec), spec.gt_boxes});
  }
  return dataset;
}

}  // namespace aggsig
