#include "codedlf/dataset_io.hpp"

#include <fstream>
#include <sstream>

#include "codedlf/netpbm.hpp"
#include "codedlf/serialization.hpp"
#include "json.hpp"

namespace codedlf {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

json plane_json(const Plane3D& p) { return {{"a", p.a}, {"b", p.b}, {"c", p.c}}; }

json geometry_json(const SceneGeometry& g) {
  return std::visit(
      Overloaded{[](const PlaneScene& p) { return json{{"plane", plane_json(p.plane)}}; },
                 [](const CylinderScene& c) {
                   return json{{"radius_m", c.radius_m},
                               {"center_depth_m", c.center_depth_m},
                               {"vertical_axis", c.vertical_axis},
                               {"convex", c.convex}};
                 },
                 [](const FaceProxyScene& f) {
                   return json{{"base", plane_json(f.base)},
                               {"contrast_px", f.contrast_px},
                               {"dome_weight", f.dome_weight},
                               {"nose_weight", f.nose_weight},
                               {"brow_weight", f.brow_weight},
                               {"center_x", f.center_x},
                               {"center_y", f.center_y}};
                 },
                 [](const LayeredScene& l) {
                   return json{{"near_depth_m", l.near_depth_m},
                               {"far_depth_m", l.far_depth_m},
                               {"center_x", l.center_x},
                               {"center_y", l.center_y},
                               {"radius_x", l.radius_x},
                               {"radius_y", l.radius_y}};
                 }},
      g);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorKind::kIo, "cannot create directory " + dir.string() + ": " + ec.message());
}

}  // namespace

void write_mask(const fs::path& dir, const CodingMask& mask) {
  ensure_dir(dir);
  netpbm::write_pbm(dir / "mask.pbm", {mask.phi0, mask.phi1});
  write_text_file(dir / "mask.json", mask_sidecar_to_json(mask) + "\n");
}

CodingMask read_mask(const fs::path& dir) {
  auto planes = netpbm::read_pbm(dir / "mask.pbm");
  require(planes.size() == 2, ErrorKind::kFormat, "mask.pbm must hold exactly two planes");
  const MaskSidecar side = mask_sidecar_from_json(read_text_file(dir / "mask.json"));
  CodingMask mask{std::move(planes[0]), std::move(planes[1]), side.transmittance,
                  side.projection, side.seed};
  validate_mask(mask);
  return mask;
}

std::string capture_meta_json(const LabeledCapture& capture) {
  const CaptureProvenance& p = capture.provenance;
  const SceneSpec& s = p.scene;
  json texture{{"base_period_px", s.texture.params.base_period_px},
               {"octaves", s.texture.params.octaves},
               {"persistence", s.texture.params.persistence},
               {"lo", s.texture.params.lo},
               {"hi", s.texture.params.hi}};
  if (!s.texture.file.empty()) texture["file"] = s.texture.file.generic_string();
  json j{{"id", capture.id},
         {"label", to_string(capture.label)},
         {"kind", to_string(s.kind())},
         {"width", s.width},
         {"height", s.height},
         {"max_disparity_px", s.max_disparity_px},
         {"calibration", json::parse(calibration_to_json(s.calib))},
         {"geometry", geometry_json(s.geometry)},
         {"texture", texture},
         {"master_seed", p.master_seed},
         {"index", p.index},
         {"class_index", p.class_index},
         {"texture_seed", p.texture_seed},
         {"mask_seed", p.mask_seed}};
  return j.dump(2) + "\n";
}

void write_capture(const fs::path& root, const LabeledCapture& capture) {
  const fs::path dir = root / "captures" / capture.id;
  ensure_dir(dir);
  netpbm::write_coded_pgm(dir / "coded.pgm", capture.coded);
  write_mask(dir, capture.mask);
  write_text_file(dir / "meta.json", capture_meta_json(capture));

  const fs::path diag = root / "diagnostics" / capture.id;
  ensure_dir(diag);
  write_disparity(diag / "gt_disparity.f32", capture.gt_disparity);
}

ManifestEntry manifest_entry(const LabeledCapture& capture) {
  return {capture.id, capture.label, std::string(to_string(capture.provenance.scene.kind()))};
}

void write_manifest(const fs::path& root, const std::vector<ManifestEntry>& entries) {
  ensure_dir(root);
  std::ostringstream out;
  out << "id,label,kind\n";
  for (const auto& e : entries) out << e.id << ',' << to_string(e.label) << ',' << e.kind << '\n';
  write_text_file(root / "manifest.csv", out.str());
}

std::vector<ManifestEntry> read_manifest(const fs::path& root) {
  std::istringstream in(read_text_file(root / "manifest.csv"));
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == "id,label,kind", ErrorKind::kFormat, "manifest.csv has an unexpected header");
  std::vector<ManifestEntry> entries;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    require(c1 != std::string::npos && c2 != std::string::npos, ErrorKind::kFormat,
            "malformed manifest row: " + line);
    entries.push_back({line.substr(0, c1), label_from_string(line.substr(c1 + 1, c2 - c1 - 1)),
                       line.substr(c2 + 1)});
  }
  return entries;
}

ScoringInput read_capture(const fs::path& root, const std::string& id) {
  const fs::path dir = root / "captures" / id;
  ScoringInput in{netpbm::read_coded_pgm(dir / "coded.pgm"), read_mask(dir)};
  require_same_shape(in.coded.image, in.mask.phi0, "coded image vs mask");
  in.coded.mask_id = mask_fingerprint(in.mask);
  return in;
}

}  // namespace codedlf
