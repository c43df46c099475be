#include "codedlf/serialization.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace codedlf {
namespace {

using nlohmann::json;

json parse(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    fail(ErrorKind::kFormat, std::string("invalid ") + what + " JSON: " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::kFormat, std::string("bad value for '") + key + "': " + e.what());
  }
}

template <typename T>
T get_required(const json& j, const char* key) {
  require(j.contains(key), ErrorKind::kFormat, std::string("missing key '") + key + "'");
  return get_or<T>(j, key, T{});
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, const char* what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  require(ec == std::errc{} && ptr == end, ErrorKind::kFormat,
          std::string("cannot parse ") + what + " '" + text + "'");
  return v;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string calibration_to_json(const Calibration& calib) {
  return json{{"baseline_m", calib.baseline_m},
              {"focal_px", calib.focal_px},
              {"principal_u", calib.principal_u},
              {"principal_v", calib.principal_v}}
      .dump(2);
}

Calibration calibration_from_json(std::string_view text) {
  const json j = parse(text, "calibration");
  return {get_required<double>(j, "baseline_m"), get_required<double>(j, "focal_px"),
          get_required<double>(j, "principal_u"), get_required<double>(j, "principal_v")};
}

std::string antispoof_config_to_json(const AntiSpoofConfig& cfg) {
  json points = json::array();
  for (const auto& p : cfg.probe_points) points.push_back({p.x, p.y});
  return json{{"probe_points", points},
              {"window", cfg.window},
              {"search_min", cfg.search.min},
              {"search_max", cfg.search.max},
              {"threshold", cfg.threshold}}
      .dump(2);
}

AntiSpoofConfig antispoof_config_from_json(std::string_view text) {
  const json j = parse(text, "anti-spoofing config");
  AntiSpoofConfig cfg;
  if (j.contains("probe_points")) {
    const json& pts = j.at("probe_points");
    require(pts.is_array() && pts.size() == 3, ErrorKind::kFormat,
            "probe_points must list exactly three [x, y] pairs");
    for (std::size_t i = 0; i < 3; ++i) {
      require(pts[i].is_array() && pts[i].size() == 2, ErrorKind::kFormat,
              "each probe point must be an [x, y] pair");
      cfg.probe_points[i] = {pts[i][0].get<double>(), pts[i][1].get<double>()};
    }
  }
  cfg.window = get_or(j, "window", cfg.window);
  cfg.search.min = get_or(j, "search_min", cfg.search.min);
  cfg.search.max = get_or(j, "search_max", cfg.search.max);
  cfg.threshold = get_or(j, "threshold", cfg.threshold);
  cfg.validate();
  return cfg;
}

std::string mask_sidecar_to_json(const CodingMask& mask) {
  const bool shifted = mask.projection.mode == MaskMode::kShifted;
  return json{{"mode", shifted ? "shifted" : "independent"},
              {"shift_px", shifted ? mask.projection.shift_px : 0},
              {"transmittance", mask.transmittance},
              {"seed", mask.seed}}
      .dump(2);
}

MaskSidecar mask_sidecar_from_json(std::string_view text) {
  const json j = parse(text, "mask sidecar");
  MaskSidecar s;
  const auto mode = get_required<std::string>(j, "mode");
  if (mode == "shifted") {
    s.projection = MaskProjection::shifted(get_required<int>(j, "shift_px"));
  } else {
    require(mode == "independent", ErrorKind::kFormat, "unknown mask mode '" + mode + "'");
  }
  s.transmittance = get_required<double>(j, "transmittance");
  s.seed = get_required<std::uint64_t>(j, "seed");
  return s;
}

ScoreRow make_score_row(std::string capture_id, Label label, const FlatnessScore& score) {
  return {std::move(capture_id), label, score.score, score.covered_fraction,
          {score.probes[0].d, score.probes[1].d, score.probes[2].d}};
}

void write_scores_csv(std::ostream& out, const std::vector<ScoreRow>& rows) {
  out << kScoresHeader << '\n';
  for (const auto& r : rows) {
    out << r.capture_id << ',' << to_string(r.label) << ',' << format_double(r.score) << ','
        << format_double(r.covered_fraction) << ',' << format_double(r.probe_d[0]) << ','
        << format_double(r.probe_d[1]) << ',' << format_double(r.probe_d[2]) << '\n';
  }
  require(static_cast<bool>(out), ErrorKind::kIo, "failed writing scores CSV");
}

std::vector<ScoreRow> read_scores_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && strip_cr(line) == kScoresHeader,
          ErrorKind::kFormat, "scores CSV must start with the header row");
  std::vector<ScoreRow> rows;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    require(f.size() == 7, ErrorKind::kFormat, "scores CSV rows need 7 fields: " + line);
    rows.push_back({f[0], label_from_string(f[1]), parse_double(f[2], "score"),
                    parse_double(f[3], "covered_fraction"),
                    {parse_double(f[4], "probe_d1"), parse_double(f[5], "probe_d2"),
                     parse_double(f[6], "probe_d3")}});
  }
  return rows;
}

void write_failures_csv(std::ostream& out, const std::vector<FailureRow>& rows) {
  out << "capture_id,label,error,message\n";
  for (const auto& r : rows) {
    std::string msg = r.message;
    for (char& c : msg) {
      if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    out << r.capture_id << ',' << r.label << ',' << r.error_kind << ',' << msg << '\n';
  }
}

std::string report_to_json(const EvalReport& report, const ReportContext& context) {
  json j{{"eer", report.eer},
         {"threshold", report.threshold},
         {"acer", report.acer},
         {"auc", report.auc},
         {"genuine_count", report.genuine_count},
         {"spoof_count", report.spoof_count}};
  if (context.holdout) {
    const HoldoutResult& h = *context.holdout;
    json hj{{"mean_acer", h.mean_acer},
            {"stddev_acer", h.stddev_acer},
            {"mean_threshold", h.mean_threshold},
            {"train_per_class", h.train_per_class},
            {"test_per_class", h.test_per_class}};
    if (context.holdout_options) {
      hj["repeats"] = context.holdout_options->repeats;
      hj["test_fraction"] = context.holdout_options->test_fraction;
      hj["seed"] = context.holdout_options->seed;
    }
    j["holdout"] = hj;
  }
  for (const auto& [key, value] : context.notes) j["notes"][key] = value;
  return j.dump(2) + "\n";
}

void write_roc_csv(std::ostream& out, const EvalReport& report) {
  out << "threshold,apcer,genuine_accept\n";
  for (const auto& p : report.roc) {
    out << format_double(p.threshold) << ',' << format_double(p.apcer) << ','
        << format_double(p.genuine_accept) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_lo,bin_hi,genuine,spoof\n";
  for (std::size_t i = 0; i < h.genuine.size(); ++i) {
    const double lo = h.lo + h.bin_width * static_cast<double>(i);
    out << format_double(lo) << ',' << format_double(lo + h.bin_width) << ',' << h.genuine[i]
        << ',' << h.spoof[i] << '\n';
  }
}

void write_disparity(const std::filesystem::path& path, const DisparityMap& map) {
  std::ofstream out(path, std::ios::binary);
  require(out.is_open(), ErrorKind::kIo, "cannot open " + path.string());
  std::string buf(map.size() * 4, '\0');
  std::size_t k = 0;
  for (double v : map.pixels()) {
    auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
    for (int b = 0; b < 4; ++b) buf[k++] = static_cast<char>((bits >> (8 * b)) & 0xFF);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  require(static_cast<bool>(out), ErrorKind::kIo, "failed writing " + path.string());

  auto header_path = path;
  header_path.replace_extension(".json");
  write_text_file(header_path,
                  json{{"width", map.width()},
                       {"height", map.height()},
                       {"dtype", "float32"},
                       {"byte_order", "little"},
                       {"layout", "row-major"},
                       {"convention", "right(u,v) = left(u + d(u,v), v)"}}
                          .dump(2));
}

DisparityMap read_disparity(const std::filesystem::path& path) {
  auto header_path = path;
  header_path.replace_extension(".json");
  const json h = parse(read_text_file(header_path), "disparity header");
  const int width = get_required<int>(h, "width");
  const int height = get_required<int>(h, "height");
  require(get_or<std::string>(h, "dtype", "float32") == "float32", ErrorKind::kFormat,
          "disparity raster must be float32");
  const std::string raw = read_text_file(path);
  DisparityMap map(width, height);
  require(raw.size() == map.size() * 4, ErrorKind::kFormat, "disparity raster size mismatch");
  std::size_t k = 0;
  for (double& v : map.pixels()) {
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) {
      bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(raw[k++])) << (8 * b);
    }
    v = std::bit_cast<float>(bits);
  }
  return map;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.is_open(), ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  require(out.is_open(), ErrorKind::kIo, "cannot open " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  require(static_cast<bool>(out), ErrorKind::kIo, "failed writing " + path.string());
}

}  // namespace codedlf
