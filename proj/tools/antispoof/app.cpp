#include "antispoof/app.hpp"

#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "antispoof/commands.hpp"
#include "codedlf/serialization.hpp"
#include "json.hpp"

namespace codedlf::cli {
namespace {

namespace fs = std::filesystem;

struct GlobalFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string out;
};

RunConfig resolve(const GlobalFlags& g) {
  RunConfig cfg = g.config.empty() ? RunConfig{} : load_run_config(g.config);
  if (g.seed) cfg.seed = *g.seed;
  if (g.jobs) cfg.jobs = *g.jobs;
  if (!g.out.empty()) cfg.output_dir = g.out;
  require(cfg.jobs >= 1, ErrorKind::kInvalidArgument, "--jobs must be at least 1");
  return cfg;
}

fs::path pick(const fs::path& preferred, const fs::path& fallback, const char* what) {
  const fs::path p = preferred.empty() ? fallback : preferred;
  require(!p.empty(), ErrorKind::kInvalidArgument, std::string("no ") + what + " given");
  return p;
}

Label parse_attack(const std::string& name) {
  if (name == "flat") return Label::kSpoofFlat;
  if (name == "curved") return Label::kSpoofCurved;
  const Label l = label_from_string(name);
  require(is_attack(l), ErrorKind::kInvalidArgument, "'" + name + "' is not an attack label");
  return l;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coded light-field flat-spoof detection: dataset generation, scoring, evaluation"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--config", g.config, "Run configuration JSON");
  app.add_option("--seed", g.seed, "Master seed (overrides config)");
  app.add_option("--jobs", g.jobs, "Worker threads (overrides config)")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output directory");

  auto* gen = app.add_subcommand("gen", "Generate a labeled synthetic dataset");
  std::optional<std::size_t> n_genuine, n_flat, n_curved;
  std::optional<int> width, height;
  gen->add_option("--genuine", n_genuine, "Genuine 3D captures");
  gen->add_option("--flat", n_flat, "Flat print spoofs");
  gen->add_option("--curved", n_curved, "Curved print spoofs");
  gen->add_option("--width", width, "Image width");
  gen->add_option("--height", height, "Image height");

  auto* score = app.add_subcommand("score", "Score one capture or a whole dataset");
  std::string coded, mask_dir, dataset;
  score->add_option("--coded", coded, "Coded image (PGM, maxval 510)");
  score->add_option("--mask", mask_dir, "Directory holding mask.pbm and mask.json");
  score->add_option("--dataset", dataset, "Dataset root with manifest.csv");

  auto* calibrate = app.add_subcommand("calibrate", "EER threshold from genuine/spoof score lists");
  std::string genuine_csv, spoof_csv;
  calibrate->add_option("--genuine", genuine_csv, "Genuine scores (CSV)")->required();
  calibrate->add_option("--spoof", spoof_csv, "Spoof scores (CSV)")->required();

  auto* evaluate = app.add_subcommand("evaluate", "ROC / EER / ACER report from a scores CSV");
  std::string scores_csv;
  std::string split = "holdout";
  std::optional<int> repeats;
  std::optional<double> test_fraction;
  std::vector<std::string> attacks;
  evaluate->add_option("--scores", scores_csv, "scores.csv from the score command")->required();
  evaluate->add_option("--split", split, "holdout or all")
      ->check(CLI::IsMember({"holdout", "all"}));
  evaluate->add_option("--repeats", repeats, "Random splits for holdout");
  evaluate->add_option("--test-fraction", test_fraction, "Test share per class for holdout");
  evaluate->add_option("--attacks", attacks, "Attack labels to include (flat, curved)")
      ->delimiter(',');

  auto* report = app.add_subcommand("report", "Print a text summary of an evaluate output dir");
  std::string report_dir;
  report->add_option("--dir", report_dir, "Evaluate output directory (defaults to --out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg = resolve(g);
    if (gen->parsed()) {
      if (n_genuine) cfg.dataset.n_genuine = *n_genuine;
      if (n_flat) cfg.dataset.n_flat = *n_flat;
      if (n_curved) cfg.dataset.n_curved = *n_curved;
      if (width) cfg.dataset.width = *width;
      if (height) cfg.dataset.height = *height;
      const fs::path root = pick(cfg.output_dir, cfg.dataset_dir, "output directory (--out)");
      const GenSummary s = cmd_gen(cfg, root);
      out << "generated " << s.captures << " captures in " << s.root.string() << '\n';
    } else if (score->parsed()) {
      if (!coded.empty() || !mask_dir.empty()) {
        if (coded.empty() || mask_dir.empty()) {
          err << "score: --coded and --mask must be given together\n";
          return kExitUsage;
        }
        FlatnessScore s;
        try {
          s = score_capture(coded, mask_dir, cfg.antispoof);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::kIo || e.kind() == ErrorKind::kFormat) throw;
          err << "cannot score: " << e.what() << '\n';
          return kExitData;
        }
        const Decision d = classify(s, cfg.antispoof.threshold);
        write_scores_csv(out, {make_score_row(fs::path(coded).parent_path().filename().string(),
                                              d.label, s)});
        return kExitOk;
      }
      const fs::path root = pick(dataset, cfg.dataset_dir, "dataset (--dataset)");
      const fs::path dest = cfg.output_dir.empty() ? root : cfg.output_dir;
      const ScoreSummary s = cmd_score(cfg, root, dest);
      out << "scored " << s.rows.size() << " captures, " << s.failures.size()
          << " failures -> " << (dest / "scores.csv").string() << '\n';
    } else if (calibrate->parsed()) {
      const ThresholdCalibration c = cmd_calibrate(genuine_csv, spoof_csv);
      const std::string text =
          nlohmann::json{{"threshold", c.threshold}, {"eer", c.eer}}.dump(2) + "\n";
      if (!cfg.output_dir.empty()) {
        fs::create_directories(cfg.output_dir);
        write_text_file(cfg.output_dir / "calibration.json", text);
      }
      out << text;
    } else if (evaluate->parsed()) {
      EvaluateOptions opts;
      opts.split = split == "all" ? SplitMode::kAll : SplitMode::kHoldout;
      opts.holdout = cfg.holdout;
      opts.holdout.seed = cfg.seed;
      if (repeats) opts.holdout.repeats = *repeats;
      if (test_fraction) opts.holdout.test_fraction = *test_fraction;
      for (const auto& a : attacks) opts.attacks.insert(parse_attack(a));
      const fs::path dest = cfg.output_dir.empty() ? fs::path(scores_csv).parent_path()
                                                   : cfg.output_dir;
      const EvaluateSummary s = cmd_evaluate(scores_csv, opts, dest);
      out << s.report_json;
    } else if (report->parsed()) {
      out << cmd_report(pick(report_dir, cfg.output_dir, "report directory (--dir or --out)"));
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace codedlf::cli
