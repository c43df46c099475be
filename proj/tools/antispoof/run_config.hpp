#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "codedlf/antispoof.hpp"
#include "codedlf/datagen.hpp"
#include "codedlf/metrics.hpp"

namespace codedlf::cli {

// Everything a batch run needs. Loaded from the --config JSON; flags given on
// the command line override the file.
struct RunConfig {
  std::filesystem::path dataset_dir;
  std::filesystem::path output_dir;
  AntiSpoofConfig antispoof;
  // Unset means centred on the image with the library defaults.
  std::optional<Calibration> calibration;
  DatasetSpec dataset;
  HoldoutOptions holdout;
  int jobs = 1;
  std::uint64_t seed = 0;

  // Dataset spec with seed, calibration and mask settings resolved.
  DatasetSpec resolved_dataset() const;
};

RunConfig run_config_from_json(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

// Seed, counts and knobs as written next to every output.
std::string run_provenance_json(const RunConfig& cfg, std::string_view command);

}  // namespace codedlf::cli
