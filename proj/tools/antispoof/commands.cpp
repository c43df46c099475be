#include "antispoof/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "codedlf/dataset_io.hpp"
#include "codedlf/netpbm.hpp"
#include "codedlf/parallel.hpp"
#include "json.hpp"

namespace codedlf::cli {
namespace {

namespace fs = std::filesystem;

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ostringstream out;
  writer(out);
  write_text_file(path, out.str());
}

}  // namespace

GenSummary cmd_gen(const RunConfig& cfg, const fs::path& root) {
  const DatasetSpec spec = cfg.resolved_dataset();
  spec.validate();
  ensure_dir(root);
  std::vector<ManifestEntry> entries(spec.size());
  parallel_for(spec.size(), cfg.jobs, [&](std::size_t i) {
    const LabeledCapture cap = make_capture(spec, i);
    write_capture(root, cap);
    entries[i] = manifest_entry(cap);
  });
  write_manifest(root, entries);
  write_text_file(root / "run.json", run_provenance_json(cfg, "gen"));
  return {spec.size(), root};
}

FlatnessScore score_capture(const fs::path& coded, const fs::path& mask_dir,
                            const AntiSpoofConfig& cfg) {
  CodedImage ci = netpbm::read_coded_pgm(coded);
  const CodingMask mask = read_mask(mask_dir);
  ci.mask_id = mask_fingerprint(mask);
  return flatness_score(ci, mask, cfg);
}

ScoreSummary cmd_score(const RunConfig& cfg, const fs::path& dataset, const fs::path& out_dir) {
  cfg.antispoof.validate();
  const auto entries = read_manifest(dataset);
  std::vector<std::optional<ScoreRow>> scored(entries.size());
  std::vector<std::optional<FailureRow>> failed(entries.size());
  parallel_for(entries.size(), cfg.jobs, [&](std::size_t i) {
    const ManifestEntry& e = entries[i];
    try {
      const ScoringInput in = read_capture(dataset, e.id);
      scored[i] = make_score_row(e.id, e.label, flatness_score(in.coded, in.mask, cfg.antispoof));
    } catch (const Error& err) {
      failed[i] = FailureRow{e.id, std::string(to_string(e.label)),
                             std::string(to_string(err.kind())), err.what()};
    }
  });

  ScoreSummary summary;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (scored[i]) summary.rows.push_back(*scored[i]);
    if (failed[i]) summary.failures.push_back(*failed[i]);
  }
  ensure_dir(out_dir);
  write_file(out_dir / "scores.csv", [&](std::ostream& o) { write_scores_csv(o, summary.rows); });
  write_file(out_dir / "failures.csv",
             [&](std::ostream& o) { write_failures_csv(o, summary.failures); });
  return summary;
}

std::vector<double> read_score_list(const fs::path& path) {
  const std::string text = read_text_file(path);
  if (text.rfind(kScoresHeader, 0) == 0) {
    std::istringstream in(text);
    std::vector<double> out;
    for (const auto& row : read_scores_csv(in)) out.push_back(row.score);
    return out;
  }
  std::istringstream in(text);
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(line, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == line.size(), ErrorKind::kFormat,
            "cannot parse score '" + line + "' in " + path.string());
    out.push_back(v);
  }
  return out;
}

ThresholdCalibration cmd_calibrate(const fs::path& genuine_csv, const fs::path& spoof_csv) {
  const auto genuine = read_score_list(genuine_csv);
  const auto spoof = read_score_list(spoof_csv);
  require(!genuine.empty(), ErrorKind::kInvalidArgument, "no genuine scores in " + genuine_csv.string());
  require(!spoof.empty(), ErrorKind::kInvalidArgument, "no spoof scores in " + spoof_csv.string());
  return calibrate_threshold(genuine, spoof);
}

EvaluateSummary cmd_evaluate(const fs::path& scores_csv, const EvaluateOptions& options,
                             const fs::path& out_dir) {
  std::ifstream in(scores_csv, std::ios::binary);
  require(in.is_open(), ErrorKind::kIo, "cannot open " + scores_csv.string());
  const auto rows = read_scores_csv(in);

  std::vector<double> genuine;
  std::vector<double> spoof;
  for (const auto& r : rows) {
    if (!is_attack(r.label)) {
      genuine.push_back(r.score);
    } else if (options.attacks.empty() || options.attacks.count(r.label) != 0) {
      spoof.push_back(r.score);
    }
  }
  require(!genuine.empty(), ErrorKind::kInvalidArgument,
          "class missing: no genuine_3d scores to evaluate");
  require(!spoof.empty(), ErrorKind::kInvalidArgument,
          "class missing: no attack scores to evaluate");

  EvaluateSummary summary;
  summary.report = evaluate(genuine, spoof);
  ReportContext context;
  if (options.split == SplitMode::kHoldout) {
    summary.holdout = holdout_acer(genuine, spoof, options.holdout);
    context.holdout = summary.holdout;
    context.holdout_options = options.holdout;
  }
  context.notes.emplace_back("split", options.split == SplitMode::kHoldout ? "holdout" : "all");
  std::string attacks;
  for (Label l : options.attacks) attacks += (attacks.empty() ? "" : ",") + std::string(to_string(l));
  context.notes.emplace_back("attacks", attacks.empty() ? "all" : attacks);
  context.notes.emplace_back("seed", std::to_string(options.holdout.seed));
  summary.report_json = report_to_json(summary.report, context);

  ensure_dir(out_dir);
  write_text_file(out_dir / "report.json", summary.report_json);
  write_file(out_dir / "roc.csv", [&](std::ostream& o) { write_roc_csv(o, summary.report); });
  write_file(out_dir / "hist.csv",
             [&](std::ostream& o) { write_histogram_csv(o, summary.report.histogram); });
  return summary;
}

std::string cmd_report(const fs::path& eval_dir) {
  const auto report = nlohmann::json::parse(read_text_file(eval_dir / "report.json"));
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "genuine %zu  spoof %zu\n",
                report.value("genuine_count", std::size_t{0}), report.value("spoof_count", std::size_t{0}));
  out << line;
  std::snprintf(line, sizeof line, "EER %.4f at threshold %.6f  ACER %.4f  AUC %.4f\n",
                report.value("eer", 0.0), report.value("threshold", 0.0), report.value("acer", 0.0),
                report.value("auc", 0.0));
  out << line;
  if (report.contains("holdout")) {
    const auto& h = report.at("holdout");
    std::snprintf(line, sizeof line, "holdout: mean ACER %.4f (sd %.4f) over %d splits, %zu/%zu train/test per class\n",
                  h.value("mean_acer", 0.0), h.value("stddev_acer", 0.0), h.value("repeats", 0),
                  h.value("train_per_class", std::size_t{0}), h.value("test_per_class", std::size_t{0}));
    out << line;
  }

  std::istringstream hist(read_text_file(eval_dir / "hist.csv"));
  std::string row;
  std::getline(hist, row);
  struct Bin {
    double lo;
    unsigned genuine;
    unsigned spoof;
  };
  std::vector<Bin> bins;
  while (std::getline(hist, row)) {
    Bin b{};
    double hi = 0.0;
    if (std::sscanf(row.c_str(), "%lf,%lf,%u,%u", &b.lo, &hi, &b.genuine, &b.spoof) == 4) {
      bins.push_back(b);
    }
  }
  unsigned peak = 1;
  for (const auto& b : bins) peak = std::max({peak, b.genuine, b.spoof});
  out << "\nscore histogram (g = genuine_3d, s = spoof)\n";
  for (const auto& b : bins) {
    const int gw = static_cast<int>(30.0 * b.genuine / peak + 0.5);
    const int sw = static_cast<int>(30.0 * b.spoof / peak + 0.5);
    std::snprintf(line, sizeof line, "%10.5f |%-30s|%-30s|\n", b.lo, std::string(gw, 'g').c_str(),
                  std::string(sw, 's').c_str());
    out << line;
  }
  return out.str();
}

}  // namespace codedlf::cli
