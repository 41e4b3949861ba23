#include <filesystem>
#include <string>

#include "aggsig/io.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "scratch_dir.hpp"

using namespace aggsig;
namespace fs = std::filesystem;

TEST_CASE("ground truth parsing") {
  const auto boxes = parse_ground_truth("10,20,30,40\n", "gt");
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[0] == Box{9, 19, 30, 40});
  CHECK(parse_ground_truth("10\t20\t30\t40\n", "gt") == boxes);
  CHECK(parse_ground_truth("10 20 30 40", "gt") == boxes);
  CHECK(parse_ground_truth("10, 20, 30, 40\r\n\n", "gt") == boxes);
  CHECK(parse_ground_truth("1.5,2,3,4\n5,6,7,8\n", "gt").size() == 2);

  try {
    parse_ground_truth("1,2,3,4\n1,2,x,4\n", "seq/groundtruth_rect.txt");
    FAIL("expected a FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("seq/groundtruth_rect.txt:2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_ground_truth("1,2,3\n", "gt"), FormatError);
  CHECK_THROWS_AS(parse_ground_truth("1,2,0,4\n", "gt"), FormatError);
  CHECK_THROWS_AS(parse_ground_truth("1,2,3,4,5\n", "gt"), FormatError);
}

TEST_CASE("ground truth formatting round-trips") {
  const std::vector<Box> boxes{{9, 19, 30, 40}, {0.5, 2, 7, 8}};
  CHECK(format_ground_truth(boxes) == "10,20,30,40\n1.5,3,7,8\n");
  CHECK(parse_ground_truth(format_ground_truth(boxes), "gt") == boxes);
}

TEST_CASE("result lines") {
  const std::vector<TrackEvent> events{
      {1, EventKind::kNormal, {9, 19, 30, 40}, 0.5, std::nullopt},
      {2, EventKind::kRedetected, {10.25, 18, 30, 40}, 0.125, CoarseCenter{24, 37}},
      {3, EventKind::kDriftDetected, {10.25, 18, 30, 40}, 0.1 + 0.2, std::nullopt},
  };
  const std::string text = format_results(events);
  CHECK(text ==
        "{\"frame\":1,\"h\":40.0,\"kind\":\"normal\",\"response\":0.5,\"w\":30.0,\"x\":9.0,"
        "\"y\":19.0}\n"
        "{\"coarse_x\":24.0,\"coarse_y\":37.0,\"frame\":2,\"h\":40.0,\"kind\":\"redetected\","
        "\"response\":0.125,\"w\":30.0,\"x\":10.25,\"y\":18.0}\n"
        "{\"frame\":3,\"h\":40.0,\"kind\":\"drift_detected\",\"response\":0.30000000000000004,"
        "\"w\":30.0,\"x\":10.25,\"y\":18.0}\n");
  CHECK(parse_results(text, "r") == events);

  CHECK_THROWS_AS(parse_results("{\"frame\":1}\n", "r"), FormatError);
  CHECK_THROWS_AS(parse_results("not json\n", "r"), FormatError);
  CHECK_THROWS_AS(parse_results("{\"frame\":1,\"kind\":\"lost\",\"x\":0,\"y\":0,\"w\":1,\"h\":1,"
                                "\"response\":0}\n",
                                "r"),
                  FormatError);
}

TEST_CASE("curve text") {
  CurveReport c;
  c.thresholds = {0, 0.05, 0.1};
  c.values = {1, 2.0 / 3.0, 0.25};
  CHECK(format_curve(c) == "threshold,value\n0,1\n0.05,0.6666666667\n0.1,0.25\n");
}

TEST_CASE("saliency encoders") {
  const Matrix m(2, 3, {0.0, 1.0, 0.5, 0.25, 1.0 / 65535.0, 0.99999});
  const std::string pgm = encode_pgm16(m);
  const std::string header = "P5\n3 2\n65535\n";
  REQUIRE(pgm.size() == header.size() + 12);
  CHECK(pgm.substr(0, header.size()) == header);
  const std::string body = pgm.substr(header.size());
  const unsigned char expected[12] = {0x00, 0x00, 0xFF, 0xFF, 0x80, 0x00,
                                      0x40, 0x00, 0x00, 0x01, 0xFF, 0xFE};
  for (std::size_t i = 0; i < 12; ++i) CHECK(static_cast<unsigned char>(body[i]) == expected[i]);

  CHECK(encode_csv(Matrix(2, 2, {0.0, 1.0, 0.5, 0.1})) == "0,1\n0.5,0.10000000000000001\n");
}

TEST_CASE("files on disk") {
  const test::ScratchDir dir("io");
  const fs::path seq = dir.path() / "walk";
  RgbImage frame{oracle::random_matrix(12, 16, 1, 0, 1), oracle::random_matrix(12, 16, 2, 0, 1),
                 oracle::random_matrix(12, 16, 3, 0, 1)};
  for (int i : {10, 2, 1}) encode_image(seq / "img" / (std::to_string(i) + ".png"), frame);
  write_text(seq / "groundtruth_rect.txt", "1,1,4,4\n2\t2\t4\t4\n3,3,4,4\n");
  write_text(seq / "attributes.txt", "SV, OCC\nFM\n");

  const SequenceSpec spec = load_sequence(seq);
  CHECK(spec.name == "walk");
  REQUIRE(spec.frame_paths.size() == 3);
  CHECK(spec.frame_paths[0].filename() == "1.png");
  CHECK(spec.frame_paths[2].filename() == "10.png");
  CHECK(spec.gt_boxes[1] == Box{1, 1, 4, 4});
  CHECK(spec.attributes == std::vector<std::string>{"SV", "OCC", "FM"});

  const RgbImage back = decode_image(spec.frame_paths[0]);
  CHECK(back.rows() == 12);
  CHECK(back.cols() == 16);
  CHECK(std::abs(back.r(3, 4) - frame.r(3, 4)) <= 0.5 / 255.0 + 1e-12);
  CHECK(std::abs(back.b(11, 15) - frame.b(11, 15)) <= 0.5 / 255.0 + 1e-12);
  CHECK(load_frames(spec).size() == 3);

  write_text(seq / "groundtruth_rect.txt", "1,1,4,4\n");
  CHECK_THROWS_AS(load_sequence(seq), FormatError);
  CHECK_THROWS_AS(load_sequence(dir.path() / "missing"), FormatError);
  CHECK_THROWS_AS(decode_image(seq / "groundtruth_rect.txt"), FormatError);

  const std::vector<TrackEvent> events{{1, EventKind::kNormal, {1, 2, 3, 4}, 0.75, std::nullopt}};
  write_results(dir.path() / "out" / "r.jsonl", events);
  CHECK(read_results(dir.path() / "out" / "r.jsonl") == events);

  export_saliency(dir.path() / "s.pgm", {Matrix(1, 1, 1.0)});
  CHECK(read_text(dir.path() / "s.pgm") == std::string("P5\n1 1\n65535\n\xFF\xFF", 15));
  export_saliency(dir.path() / "s.CSV", {Matrix(1, 2, {0.5, 1.0})});
  CHECK(read_text(dir.path() / "s.CSV") == "0.5,1\n");
  CHECK_THROWS_AS(export_saliency(dir.path() / "s.png", {Matrix(1, 1, 1.0)}), FormatError);
}
