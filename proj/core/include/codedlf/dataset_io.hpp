#pragma once

// On-disk dataset layout:
//   manifest.csv                          id,label,kind
//   captures/<id>/coded.pgm               coded image (P5, maxval 510)
//   captures/<id>/mask.pbm                phi0 then phi1 (two P4 images)
//   captures/<id>/mask.json               mask sidecar
//   captures/<id>/meta.json               label and provenance
//   diagnostics/<id>/gt_disparity.f32     ground truth (+ .json header)
// Nothing under captures/ carries ground-truth disparity.

#include <filesystem>
#include <string>
#include <vector>

#include "codedlf/datagen.hpp"
#include "codedlf/lf_core.hpp"

namespace codedlf {

void write_mask(const std::filesystem::path& dir, const CodingMask& mask);
// Reads mask.pbm + mask.json from a directory.
CodingMask read_mask(const std::filesystem::path& dir);

std::string capture_meta_json(const LabeledCapture& capture);

// Writes captures/<id>/... and diagnostics/<id>/... for one capture.
void write_capture(const std::filesystem::path& root, const LabeledCapture& capture);

struct ManifestEntry {
  std::string id;
  Label label = Label::kGenuine3d;
  std::string kind;
};

void write_manifest(const std::filesystem::path& root, const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& root);

ManifestEntry manifest_entry(const LabeledCapture& capture);

struct ScoringInput {
  CodedImage coded;
  CodingMask mask;
};

ScoringInput read_capture(const std::filesystem::path& root, const std::string& id);

}  // namespace codedlf
