#include "tdawsi/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "tdawsi/embedding_store.hpp"
#include "tdawsi/error.hpp"
#include "tdawsi/evaluation.hpp"
#include "tdawsi/format.hpp"
#include "tdawsi/parallel.hpp"
#include "tdawsi/persistence.hpp"
#include "tdawsi/sense_induction.hpp"

namespace tdawsi {

namespace {

constexpr const char* kExitStatusHelp =
    "Exit status: 0 success, 2 usage error, 3 I/O error (missing or unwritable file),\n"
    "4 data-format error, 5 evaluation-domain error (unknown word, k too large, empty bucket).";

struct Settings {
  std::string embeddings;
  std::vector<std::string> embedding_sources;
  std::string ground_truth;
  std::string output;
  std::vector<std::string> words;
  std::size_t k = 25;
  std::vector<std::size_t> ks;
  double sigma = 2.0;
  std::vector<double> sigmas{2.0};
  std::optional<double> epsilon;
  std::string metric = "euclidean";
  std::string bucket = "2-19";
  std::vector<std::string> buckets{"2-9", "10-19"};
  bool literal_reduction = false;
  bool index_units = false;
  std::size_t workers = 1;
};

SenseOptions sense_options(const Settings& s) {
  return {s.k, s.sigma, parse_metric(s.metric),
          s.literal_reduction ? BarcodeAlgorithm::matrix_reduction : BarcodeAlgorithm::spanning_tree};
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open output file '" + path + "'");
  body(file);
  if (!file.flush()) throw IoError("failed writing '" + path + "'");
}

/// Writes via `body` to the output path, or to `fallback` when none is set.
void emit(const std::string& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
  } else {
    write_file(path, body);
  }
}

EmbeddingSource parse_source(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) return {std::nullopt, text};
  const auto dim = parse_number<std::size_t>(std::string_view(text).substr(0, eq));
  if (!dim || *dim == 0) throw UsageError("invalid embedding source '" + text + "' (expected [DIM=]PATH)");
  return {*dim, text.substr(eq + 1)};
}

void run_barcode(const Settings& s, std::ostream& out) {
  const auto matrix = load_embeddings_file(s.embeddings);
  const auto options = sense_options(s);
  const auto cloud = k_nearest(matrix, s.words.front(), s.k, options.metric);
  const auto diagram = compute_barcode(build_filtration(cloud, options.metric), options.algorithm);
  emit(s.output, out, [&](std::ostream& os) {
    write_diagram_csv(os, diagram, s.index_units ? DeathUnits::filtration_index : DeathUnits::distance);
  });
}

void run_induce(const Settings& s, std::ostream& out) {
  const auto matrix = load_embeddings_file(s.embeddings);
  const auto options = sense_options(s);
  std::vector<SenseEstimate> estimates(s.words.size());
  parallel_for(s.words.size(), s.workers,
               [&](std::size_t i) { estimates[i] = estimate_senses(matrix, s.words[i], options); });
  emit(s.output, out, [&](std::ostream& os) {
    for (const auto& e : estimates) os << to_json(e).dump() << '\n';
  });
}

void run_probe(const Settings& s, std::ostream& out) {
  const auto matrix = load_embeddings_file(s.embeddings);
  const auto delta = removal_probe(matrix, s.words.front(), sense_options(s), s.epsilon);
  emit(s.output, out, [&](std::ostream& os) { os << to_json(delta).dump() << '\n'; });
}

void run_evaluate(const Settings& s, std::ostream& out) {
  const auto bucket = SenseBucket::parse(s.bucket);
  const auto truth = load_ground_truth_file(s.ground_truth);
  const auto matrix = load_embeddings_file(s.embeddings);
  const auto report = evaluate_bucket(matrix, truth, sense_options(s), bucket, s.workers);
  emit(s.output, out, [&](std::ostream& os) { os << to_json(report).dump(2) << '\n'; });
}

void run_sweep(const Settings& s) {
  SweepConfig config;
  for (const auto& text : s.embedding_sources) config.embedding_sources.push_back(parse_source(text));
  config.neighbor_counts = s.ks;
  config.sigma_multipliers = s.sigmas;
  config.buckets.clear();
  for (const auto& b : s.buckets) config.buckets.push_back(SenseBucket::parse(b));
  config.metric = parse_metric(s.metric);
  config.algorithm = s.literal_reduction ? BarcodeAlgorithm::matrix_reduction
                                         : BarcodeAlgorithm::spanning_tree;
  config.workers = s.workers;
  config.validate();

  const auto truth = load_ground_truth_file(s.ground_truth);
  const auto reports = sweep(config, truth);

  const std::filesystem::path dir(s.output);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + s.output + "': " + ec.message());
  write_file((dir / "reports.json").string(), [&](std::ostream& os) {
    auto all = nlohmann::ordered_json::array();
    for (const auto& r : reports) all.push_back(to_json(r));
    os << all.dump(2) << '\n';
  });
  write_file((dir / "summary.csv").string(), [&](std::ostream& os) { write_summary_csv(os, reports); });
  write_file((dir / "plot.csv").string(), [&](std::ostream& os) { write_plot_csv(os, reports); });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Word sense induction from 0-dimensional persistent homology of embedding neighbourhoods",
               "tdawsi"};
  app.footer(kExitStatusHelp);
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--metric", s.metric, "Distance metric: euclidean or cosine")
        ->check(CLI::IsMember({"euclidean", "cosine"}))
        ->capture_default_str();
    cmd->add_flag("--literal-reduction", s.literal_reduction,
                  "Compute barcodes by boundary-matrix reduction instead of the spanning-tree path");
    cmd->add_option("--workers", s.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto add_single = [&](CLI::App* cmd) {
    cmd->add_option("-e,--embeddings", s.embeddings, "Embedding file (\"N d\" header text format)")->required();
    cmd->add_option("-k,--k", s.k, "Number of nearest neighbours around each word")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common(cmd);
  };

  auto* barcode = app.add_subcommand("barcode", "Write the H0 persistence diagram of a word's neighbourhood as CSV");
  barcode->add_option("word", s.words, "Query word")->required()->expected(1);
  add_single(barcode);
  barcode->add_flag("--index-units", s.index_units, "Report deaths as filtration indices instead of distances");
  barcode->add_option("-o,--output", s.output, "Output CSV (default stdout)");

  auto* induce = app.add_subcommand("induce", "Predict sense counts, one JSON record per word");
  induce->add_option("words", s.words, "Query words")->required();
  add_single(induce);
  induce->add_option("-s,--sigma", s.sigma, "Noise band width in standard deviations")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  induce->add_option("-o,--output", s.output, "Output JSON lines (default stdout)");

  auto* probe = app.add_subcommand("probe", "Count epsilon-graph components with and without a word");
  probe->add_option("word", s.words, "Query word")->required()->expected(1);
  add_single(probe);
  probe->add_option("--epsilon", s.epsilon, "Edge scale (default: the word's significance threshold)")
      ->check(CLI::PositiveNumber);
  probe->add_option("-s,--sigma", s.sigma, "Noise band width used for the default epsilon")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  probe->add_option("-o,--output", s.output, "Output JSON (default stdout)");

  auto* evaluate = app.add_subcommand("evaluate", "Score predicted sense counts against ground truth for one bucket");
  add_single(evaluate);
  evaluate->add_option("-g,--ground-truth", s.ground_truth, "Ground truth file (token<TAB>count)")->required();
  evaluate->add_option("-s,--sigma", s.sigma, "Noise band width in standard deviations")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  evaluate->add_option("-b,--bucket", s.bucket, "Sense-count range MIN-MAX")->capture_default_str();
  evaluate->add_option("-o,--output", s.output, "Output report JSON")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a grid of embeddings, k, sigma and buckets");
  sweep_cmd->add_option("-e,--embeddings", s.embedding_sources, "Embedding sources [DIM=]PATH")->required();
  sweep_cmd->add_option("-g,--ground-truth", s.ground_truth, "Ground truth file (token<TAB>count)")->required();
  sweep_cmd->add_option("-k,--k", s.ks, "Neighbour counts")->required()->delimiter(',')->check(CLI::PositiveNumber);
  sweep_cmd->add_option("-s,--sigma", s.sigmas, "Sigma multipliers")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sweep_cmd->add_option("-b,--bucket", s.buckets, "Sense-count ranges MIN-MAX")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("-o,--output", s.output,
                        "Output directory for reports.json, summary.csv and plot.csv")
      ->required();
  add_common(sweep_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    for (auto* sub : app.get_subcommands()) err << sub->help();
    if (app.get_subcommands().empty()) err << app.help();
    return static_cast<int>(ErrorKind::usage);
  }

  try {
    if (barcode->parsed()) run_barcode(s, out);
    if (induce->parsed()) run_induce(s, out);
    if (probe->parsed()) run_probe(s, out);
    if (evaluate->parsed()) run_evaluate(s, out);
    if (sweep_cmd->parsed()) run_sweep(s);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  }
  return 0;
}

}  // namespace tdawsi
