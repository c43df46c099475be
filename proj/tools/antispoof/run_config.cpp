#include "antispoof/run_config.hpp"

#include "codedlf/serialization.hpp"
#include "json.hpp"

namespace codedlf::cli {
namespace {

using nlohmann::json;

Interval interval(const json& j, const char* key, Interval fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  require(v.is_array() && v.size() == 2, ErrorKind::kFormat,
          std::string("'") + key + "' must be a [lo, hi] pair");
  const Interval out{v[0].get<double>(), v[1].get<double>()};
  require(out.lo <= out.hi, ErrorKind::kInvalidArgument,
          std::string("'") + key + "' must satisfy lo <= hi");
  return out;
}

template <typename T>
T value(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

json interval_json(Interval i) { return json::array({i.lo, i.hi}); }

}  // namespace

DatasetSpec RunConfig::resolved_dataset() const {
  DatasetSpec spec = dataset;
  spec.master_seed = seed;
  spec.calib = calibration.value_or(Calibration::centered(spec.width, spec.height));
  return spec;
}

RunConfig run_config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    fail(ErrorKind::kFormat, std::string("invalid run config JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    cfg.dataset_dir = value<std::string>(j, "dataset_dir", "");
    cfg.output_dir = value<std::string>(j, "output_dir", "");
    cfg.seed = value<std::uint64_t>(j, "seed", cfg.seed);
    cfg.jobs = value<int>(j, "jobs", cfg.jobs);
    if (j.contains("antispoof")) cfg.antispoof = antispoof_config_from_json(j.at("antispoof").dump());
    if (j.contains("calibration")) {
      cfg.calibration = calibration_from_json(j.at("calibration").dump());
    }

    DatasetSpec& d = cfg.dataset;
    if (j.contains("mask")) {
      const json& m = j.at("mask");
      d.transmittance = value(m, "transmittance", d.transmittance);
      const auto mode = value<std::string>(m, "mode", "independent");
      if (mode == "shifted") {
        d.projection = MaskProjection::shifted(value(m, "shift_px", 0));
      } else {
        require(mode == "independent", ErrorKind::kFormat, "unknown mask mode '" + mode + "'");
      }
    }
    if (j.contains("dataset")) {
      const json& ds = j.at("dataset");
      d.n_genuine = value(ds, "n_genuine", d.n_genuine);
      d.n_flat = value(ds, "n_flat", d.n_flat);
      d.n_curved = value(ds, "n_curved", d.n_curved);
      d.width = value(ds, "width", d.width);
      d.height = value(ds, "height", d.height);
      d.max_disparity_px = value(ds, "max_disparity_px", d.max_disparity_px);
      SceneDistributions& s = d.scenes;
      s.plane_slope = interval(ds, "plane_slope", s.plane_slope);
      s.flat_depth_m = interval(ds, "flat_depth_m", s.flat_depth_m);
      s.genuine_depth_m = interval(ds, "genuine_depth_m", s.genuine_depth_m);
      s.genuine_contrast_px = interval(ds, "genuine_contrast_px", s.genuine_contrast_px);
      s.layered_fraction = value(ds, "layered_fraction", s.layered_fraction);
      s.curved_depth_m = interval(ds, "curved_depth_m", s.curved_depth_m);
      s.curved_deviation_px = interval(ds, "curved_deviation_px", s.curved_deviation_px);
    }
    if (j.contains("texture")) {
      const json& t = j.at("texture");
      TextureParams& p = d.texture;
      p.base_period_px = value(t, "base_period_px", p.base_period_px);
      p.octaves = value(t, "octaves", p.octaves);
      p.persistence = value(t, "persistence", p.persistence);
      p.lo = value(t, "lo", p.lo);
      p.hi = value(t, "hi", p.hi);
    }
    if (j.contains("evaluation")) {
      const json& e = j.at("evaluation");
      cfg.holdout.repeats = value(e, "repeats", cfg.holdout.repeats);
      cfg.holdout.test_fraction = value(e, "test_fraction", cfg.holdout.test_fraction);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kFormat, std::string("bad run config value: ") + e.what());
  }
  require(cfg.jobs >= 1, ErrorKind::kInvalidArgument, "jobs must be at least 1");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return run_config_from_json(read_text_file(path));
}

std::string run_provenance_json(const RunConfig& cfg, std::string_view command) {
  const DatasetSpec d = cfg.resolved_dataset();
  const SceneDistributions& s = d.scenes;
  json j{{"command", command},
         {"seed", cfg.seed},
         {"antispoof", json::parse(antispoof_config_to_json(cfg.antispoof))},
         {"calibration", json::parse(calibration_to_json(d.calib))},
         {"mask",
          {{"mode", d.projection.mode == MaskMode::kShifted ? "shifted" : "independent"},
           {"shift_px", d.projection.shift_px},
           {"transmittance", d.transmittance}}},
         {"dataset",
          {{"n_genuine", d.n_genuine},
           {"n_flat", d.n_flat},
           {"n_curved", d.n_curved},
           {"width", d.width},
           {"height", d.height},
           {"max_disparity_px", d.max_disparity_px},
           {"plane_slope", interval_json(s.plane_slope)},
           {"flat_depth_m", interval_json(s.flat_depth_m)},
           {"genuine_depth_m", interval_json(s.genuine_depth_m)},
           {"genuine_contrast_px", interval_json(s.genuine_contrast_px)},
           {"layered_fraction", s.layered_fraction},
           {"curved_depth_m", interval_json(s.curved_depth_m)},
           {"curved_deviation_px", interval_json(s.curved_deviation_px)}}},
         {"texture",
          {{"base_period_px", d.texture.base_period_px},
           {"octaves", d.texture.octaves},
           {"persistence", d.texture.persistence},
           {"lo", d.texture.lo},
           {"hi", d.texture.hi}}},
         {"evaluation",
          {{"repeats", cfg.holdout.repeats}, {"test_fraction", cfg.holdout.test_fraction}}}};
  return j.dump(2) + "\n";
}

}  // namespace codedlf::cli
