#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "codedlf/dataset_io.hpp"
#include "codedlf/serialization.hpp"
#include "temp_dir.hpp"

namespace codedlf {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

TEST(Json, CalibrationRoundTrip) {
  const Calibration c{0.012, 987.5, 250.25, 260.0};
  EXPECT_EQ(calibration_from_json(calibration_to_json(c)), c);
  EXPECT_THROW(calibration_from_json("{\"baseline_m\": 1}"), Error);
  EXPECT_THROW(calibration_from_json("not json"), Error);
}

TEST(Json, AntiSpoofConfigRoundTripAndDefaults) {
  AntiSpoofConfig cfg;
  cfg.threshold = 0.0123;
  cfg.window = 21;
  cfg.search = {-20, 24};
  cfg.probe_points[2] = {0.45, 0.8};
  const auto back = antispoof_config_from_json(antispoof_config_to_json(cfg));
  EXPECT_EQ(back.threshold, cfg.threshold);
  EXPECT_EQ(back.window, 21);
  EXPECT_EQ(back.search.min, -20);
  EXPECT_EQ(back.search.max, 24);
  EXPECT_EQ(back.probe_points[2].x, 0.45);
  const auto partial = antispoof_config_from_json("{\"threshold\": 0.5}");
  EXPECT_EQ(partial.window, kDefaultWindow);
  EXPECT_EQ(partial.threshold, 0.5);
}

TEST(Json, MaskSidecar) {
  const auto m = generate_mask(8, 8, 0.4, MaskProjection::shifted(2), 99);
  const auto s = mask_sidecar_from_json(mask_sidecar_to_json(m));
  EXPECT_EQ(s.projection, MaskProjection::shifted(2));
  EXPECT_EQ(s.transmittance, 0.4);
  EXPECT_EQ(s.seed, 99u);
  EXPECT_THROW(mask_sidecar_from_json("{\"mode\": \"diagonal\"}"), Error);
}

TEST(Csv, ScoresRoundTripExactly) {
  FlatnessScore fs1;
  fs1.score = 0.1 + 0.2;
  fs1.covered_fraction = 0.95;
  fs1.probes[0].d = 12.345678901234567;
  fs1.probes[2].d = -3.0;
  const std::vector<ScoreRow> rows{make_score_row("cap00000", Label::kGenuine3d, fs1),
                                   make_score_row("cap00001", Label::kSpoofCurved, {})};
  std::stringstream ss;
  write_scores_csv(ss, rows);
  EXPECT_EQ(ss.str().substr(0, kScoresHeader.size()), kScoresHeader);
  const auto back = read_scores_csv(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].score, fs1.score);
  EXPECT_EQ(back[0].probe_d[0], fs1.probes[0].d);
  EXPECT_EQ(back[1].label, Label::kSpoofCurved);
}

TEST(Csv, EmptyAndMalformed) {
  std::stringstream empty;
  write_scores_csv(empty, {});
  EXPECT_EQ(empty.str(), std::string(kScoresHeader) + "\n");
  EXPECT_TRUE(read_scores_csv(empty).empty());
  std::stringstream bad(std::string(kScoresHeader) + "\ncap0,genuine_3d,abc,1,0,0,0\n");
  EXPECT_THROW(read_scores_csv(bad), Error);
  std::stringstream wrong_header("a,b\n");
  EXPECT_THROW(read_scores_csv(wrong_header), Error);
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Report, JsonHasHeadlineKeys) {
  const auto r = evaluate(std::vector{0.7, 0.8}, std::vector{0.1, 0.3});
  const std::string j = report_to_json(r);
  for (const char* key : {"\"eer\"", "\"threshold\"", "\"acer\"", "\"auc\""})
    EXPECT_NE(j.find(key), std::string::npos) << key;
  std::stringstream roc;
  write_roc_csv(roc, r);
  EXPECT_EQ(roc.str().substr(0, roc.str().find('\n')), "threshold,apcer,genuine_accept");
}

TEST(Disparity, RoundTripFloat32) {
  TempDir dir("disp");
  DisparityMap d(7, 3);
  for (int i = 0; i < 21; ++i) d.pixels()[i] = 0.25 * i - 2.0;
  write_disparity(dir / "gt.f32", d);
  EXPECT_TRUE(fs::exists(dir / "gt.json"));
  EXPECT_EQ(fs::file_size(dir / "gt.f32"), 21u * 4u);
  EXPECT_EQ(read_disparity(dir / "gt.f32"), d);
}

LabeledCapture tiny_capture() {
  DatasetSpec spec;
  spec.n_genuine = 1;
  spec.width = spec.height = 96;
  spec.calib = Calibration::centered(96, 96);
  spec.master_seed = 4;
  return make_capture(spec, 0);
}

TEST(DatasetIo, CaptureRoundTripWithoutLeakage) {
  TempDir root("capture");
  const auto cap = tiny_capture();
  write_capture(root.path(), cap);
  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(root / "captures" / cap.id))
    names.insert(e.path().filename().string());
  EXPECT_EQ(names, (std::set<std::string>{"coded.pgm", "mask.pbm", "mask.json", "meta.json"}));
  const std::string meta = read_text_file(root / "captures" / cap.id / "meta.json");
  EXPECT_EQ(meta.find("gt_disparity"), std::string::npos);
  EXPECT_NE(meta.find("genuine_3d"), std::string::npos);
  EXPECT_TRUE(fs::exists(root / "diagnostics" / cap.id / "gt_disparity.f32"));

  const auto in = read_capture(root.path(), cap.id);
  const auto sm = sparse_masks(cap.mask);
  for (std::size_t i = 0; i < cap.coded.image.size(); ++i) {
    if (sm.sm0.pixels()[i] || sm.sm1.pixels()[i])
      ASSERT_EQ(in.coded.image.pixels()[i], cap.coded.image.pixels()[i]);
    else
      ASSERT_NEAR(in.coded.image.pixels()[i], cap.coded.image.pixels()[i], 1e-15);
  }
  EXPECT_EQ(in.mask, cap.mask);
  EXPECT_EQ(in.coded.mask_id, mask_fingerprint(cap.mask));
  EXPECT_EQ(read_disparity(root / "diagnostics" / cap.id / "gt_disparity.f32").width(), 96);
}

TEST(DatasetIo, ManifestRoundTrip) {
  TempDir root("manifest");
  const std::vector<ManifestEntry> entries{{"cap00000", Label::kGenuine3d, "face_proxy"},
                                           {"cap00001", Label::kSpoofFlat, "plane"}};
  write_manifest(root.path(), entries);
  const auto back = read_manifest(root.path());
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].id, "cap00001");
  EXPECT_EQ(back[1].label, Label::kSpoofFlat);
  EXPECT_EQ(back[1].kind, "plane");
  EXPECT_THROW(read_manifest(root / "missing"), Error);
}

TEST(DatasetIo, CorruptMaskIsAnError) {
  TempDir root("corrupt");
  const auto cap = tiny_capture();
  write_capture(root.path(), cap);
  std::ofstream(root / "captures" / cap.id / "mask.pbm", std::ios::binary) << "P4\n96 96\n";
  EXPECT_THROW(read_capture(root.path(), cap.id), Error);
}

}  // namespace
}  // namespace codedlf
