// Copyright 2026 The ctopics Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctopics/cli.h"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctopics/analytics.h"
#include "ctopics/csv.h"
#include "ctopics/errors.h"
#include "ctopics/ingest.h"
#include "ctopics/lda.h"
#include "ctopics/model_io.h"
#include "ctopics/preprocess.h"
#include "ctopics/term_document_matrix.h"

namespace ctopics {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string out_dir = "ctopics-out";
  std::string input;
  ColumnMap columns;
  std::string stopwords;
  std::string domain_stopwords;
  int min_token_length = 2;

  LdaConfig lda;
  bool check_invariants = false;
  int progress_every = 100;

  std::string matrix;
  std::string model;
  std::string documents;
  std::string output;

  int top_m = 5;
  bool renormalize = false;
  std::string popularity_mode = "full";
  std::string company;
  std::string labels;
  std::string format;

  int n_words = 10;
  std::string text;
  std::string text_file;
  bool full = false;
  int topic = -1;
  int rank = 1;
};

// Everything a command needs besides the parsed options.
struct Context {
  const Options& opt;
  const CLI::App& app;
  std::ostream& out;
  std::ostream& err;

  bool Given(const std::string& name) const {
    return app.get_option(name)->count() > 0;
  }
  std::string MatrixPath() const {
    return opt.matrix.empty() ? (fs::path(opt.out_dir) / "matrix.json").string()
                              : opt.matrix;
  }
  std::string ModelPath() const {
    return opt.model.empty() ? (fs::path(opt.out_dir) / "model.json").string()
                             : opt.model;
  }
  std::string DocumentsPath() const {
    return opt.documents.empty()
               ? (fs::path(opt.out_dir) / "documents.json").string()
               : opt.documents;
  }
};

void EnsureOutDir(const Context& ctx) {
  std::error_code ec;
  fs::create_directories(ctx.opt.out_dir, ec);
  if (ec) {
    throw UsageError("cannot create output directory " + ctx.opt.out_dir +
                     ": " + ec.message());
  }
}

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << content;
  if (!f) throw DataError("write failed: " + path);
}

// Records the effective settings of a run next to its outputs.
void WriteRunConfig(const Context& ctx) {
  WriteTextFile((fs::path(ctx.opt.out_dir) / "run-config.toml").string(),
                ctx.app.config_to_str(true, false));
}

StopwordPolicy BuildPolicy(const Options& opt) {
  StopwordPolicy policy;
  policy.generic = opt.stopwords.empty() ? DefaultGenericStopwords()
                                         : LoadStopwordFile(opt.stopwords);
  if (!opt.domain_stopwords.empty()) {
    policy.domain = LoadStopwordFile(opt.domain_stopwords);
  }
  policy.min_token_length = opt.min_token_length;
  policy.Validate();
  return policy;
}

TopicLabelMap LoadLabels(const Options& opt, int num_topics) {
  TopicLabelMap labels;
  if (!opt.labels.empty()) labels = TopicLabelMap::Load(opt.labels);
  labels.CheckRange(num_topics);
  return labels;
}

PopularityMode ModeFromOptions(const Options& opt) {
  if (opt.popularity_mode == "full") return PopularityMode::Full();
  return PopularityMode::Truncated(opt.top_m, opt.renormalize);
}

int CmdPreprocess(const Context& ctx) {
  const Options& opt = ctx.opt;
  if (opt.input.empty()) throw UsageError("preprocess needs --input");
  StopwordPolicy policy = BuildPolicy(opt);
  EnsureOutDir(ctx);

  std::ifstream in(opt.input, std::ios::binary);
  if (!in) throw UsageError("cannot open " + opt.input);
  LoadResult loaded = LoadComplaints(in, opt.columns);
  Selection sel = SelectCorpus(loaded.records);
  sel.report.rejected_rows = loaded.rejected_rows;

  std::vector<std::pair<std::string, std::vector<std::string>>> docs;
  std::vector<DocumentInfo> info;
  docs.reserve(sel.documents.size());
  for (const CorpusDocument& d : sel.documents) {
    docs.emplace_back(d.complaint_id, PreprocessText(d.raw_text, policy));
    info.push_back(
        {d.complaint_id, d.date_received, d.company, d.issue, d.product});
  }
  TermDocumentMatrix matrix = BuildCorpus(docs);

  const fs::path out_dir(opt.out_dir);
  SaveMatrix(matrix, ctx.MatrixPath());
  SaveMatrix(matrix, (out_dir / "matrix.bin").string());
  WriteTextFile((out_dir / "selection_report.json").string(),
                SelectionReportToJson(sel.report));
  {
    std::ofstream f(ctx.DocumentsPath(), std::ios::binary);
    if (!f) throw UsageError("cannot write " + ctx.DocumentsPath());
    WriteDocumentInfoJson(info, f);
  }
  WriteRunConfig(ctx);

  const SelectionReport& r = sel.report;
  ctx.err << "records: total=" << r.total
          << " with_narrative=" << r.with_narrative
          << " duplicates_removed=" << r.duplicates_removed
          << " final=" << r.final_count << "\n";
  if (!r.rejected_rows.empty()) {
    ctx.err << "rejected rows: " << r.rejected_rows.size()
            << " (see selection_report.json)\n";
  }
  ctx.err << "matrix: " << matrix.num_terms() << " terms x "
          << matrix.num_docs() << " documents, " << matrix.total_tokens()
          << " tokens, " << matrix.EmptyDocuments().size()
          << " empty documents\n";
  return kExitOk;
}

int CmdTrain(const Context& ctx) {
  const Options& opt = ctx.opt;
  opt.lda.Validate();
  TermDocumentMatrix matrix = LoadMatrix(ctx.MatrixPath());
  EnsureOutDir(ctx);
  ctx.err << "training: K=" << opt.lda.num_topics << " alpha=" << opt.lda.alpha
          << " eta=" << opt.lda.eta << " sweeps=" << opt.lda.sweeps
          << " burn_in=" << opt.lda.burn_in
          << " sample_lag=" << opt.lda.sample_lag << " seed=" << opt.lda.seed
          << " on " << matrix.num_docs() << " documents, "
          << matrix.total_tokens() << " tokens\n";

  using Clock = std::chrono::steady_clock;
  auto last = Clock::now();
  double total_seconds = 0;
  TrainOptions train_opts;
  train_opts.check_invariants = opt.check_invariants;
  train_opts.on_sweep = [&](const GibbsSampler&, int sweep) {
    auto now = Clock::now();
    double secs = std::chrono::duration<double>(now - last).count();
    last = now;
    total_seconds += secs;
    if (opt.progress_every > 0 &&
        (sweep % opt.progress_every == 0 || sweep == opt.lda.sweeps)) {
      ctx.err << "sweep " << sweep << "/" << opt.lda.sweeps << ": "
              << FormatNumber(secs * 1e3) << " ms\n";
    }
  };
  TrainedModel model = Train(matrix, opt.lda, train_opts);
  model.Validate();
  SaveModel(model, ctx.ModelPath());
  WriteRunConfig(ctx);

  const double per_sweep = total_seconds / opt.lda.sweeps;
  ctx.err << "mean sweep time: " << FormatNumber(per_sweep * 1e3) << " ms ("
          << FormatNumber(per_sweep > 0 ? matrix.total_tokens() / per_sweep
                                        : 0)
          << " token updates/s)\n";
  ctx.err << "final log-likelihood: "
          << FormatNumber(LogLikelihood(model, matrix)) << "\n";
  ctx.err << "model written to " << ctx.ModelPath() << "\n";
  return kExitOk;
}

int CmdTopics(const Context& ctx) {
  const Options& opt = ctx.opt;
  if (opt.n_words < 1) throw UsageError("--n must be >= 1");
  TrainedModel model = LoadModel(ctx.ModelPath());
  TopicLabelMap labels = LoadLabels(opt, model.num_topics());
  const std::string format = opt.format.empty() ? "text" : opt.format;
  std::ostringstream buf;
  if (format == "text") {
    for (int k = 0; k < model.num_topics(); ++k) {
      buf << k << '\t';
      auto words = TopWords(model, k, opt.n_words);
      for (size_t i = 0; i < words.size(); ++i) {
        buf << (i ? " " : "") << words[i].first;
      }
      buf << '\t' << labels.Label(k) << '\n';
    }
  } else if (format == "csv") {
    buf << "topic_id,label,rank,term,probability\n";
    for (int k = 0; k < model.num_topics(); ++k) {
      const std::string label = CsvEscape(labels.Label(k));
      auto words = TopWords(model, k, opt.n_words);
      for (size_t i = 0; i < words.size(); ++i) {
        buf << k << ',' << label << ',' << i + 1 << ',' << words[i].first
            << ',' << FormatNumber(words[i].second) << '\n';
      }
    }
  } else {
    nlohmann::ordered_json topics = nlohmann::ordered_json::array();
    for (int k = 0; k < model.num_topics(); ++k) {
      nlohmann::ordered_json words = nlohmann::ordered_json::array();
      for (const auto& [term, p] : TopWords(model, k, opt.n_words)) {
        words.push_back({{"term", term}, {"probability", p}});
      }
      topics.push_back(
          {{"topic_id", k}, {"label", labels.Label(k)}, {"words", words}});
    }
    buf << topics.dump(2) << '\n';
  }
  ctx.out << buf.str();
  return kExitOk;
}

int CmdInfer(const Context& ctx) {
  const Options& opt = ctx.opt;
  if (!opt.text.empty() && !opt.text_file.empty()) {
    throw UsageError("give either --text or --text-file, not both");
  }
  std::string text = opt.text;
  if (!opt.text_file.empty()) {
    std::ifstream f(opt.text_file, std::ios::binary);
    if (!f) throw UsageError("cannot open " + opt.text_file);
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  TrainedModel model = LoadModel(ctx.ModelPath());
  TopicLabelMap labels = LoadLabels(opt, model.num_topics());
  StopwordPolicy policy = BuildPolicy(opt);
  std::vector<std::string> terms = PreprocessText(text, policy);

  InferOptions io;
  if (ctx.Given("--sweeps")) io.sweeps = opt.lda.sweeps;
  if (ctx.Given("--burn-in")) io.burn_in = opt.lda.burn_in;
  if (ctx.Given("--sample-lag")) io.sample_lag = opt.lda.sample_lag;
  if (ctx.Given("--seed")) io.seed = opt.lda.seed;
  InferResult result = Infer(model, terms, io);

  nlohmann::ordered_json j;
  j["known_terms"] = result.known_terms;
  j["unseen_terms"] = result.unseen_terms;
  if (result.known_terms == 0) {
    const char* warning =
        "no terms known to the model; returning the uniform prior mixture";
    j["warning"] = warning;
    ctx.err << "warning: " << warning << "\n";
  }
  const int m = opt.full ? model.num_topics() : opt.top_m;
  TruncatedMixture top =
      TruncateMixture(result.mixture, m, !opt.full && opt.renormalize);
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& [topic, p] : top.entries) {
    entries.push_back(
        {{"topic_id", topic}, {"label", labels.Label(topic)}, {"proportion", p}});
  }
  j["topics"] = std::move(entries);
  if (opt.full) j["theta"] = result.mixture.theta;
  ctx.out << j.dump(2) << "\n";
  return kExitOk;
}

std::string PopularityOutputPath(const Context& ctx, const std::string& format) {
  if (!ctx.opt.output.empty()) return ctx.opt.output;
  return (fs::path(ctx.opt.out_dir) / ("trends." + format)).string();
}

int CmdPopularity(const Context& ctx) {
  const Options& opt = ctx.opt;
  const std::string format = opt.format.empty() ? "csv" : opt.format;
  if (format != "csv" && format != "json") {
    throw UsageError("popularity supports --format csv|json");
  }
  TrainedModel model = LoadModel(ctx.ModelPath());
  TopicLabelMap labels = LoadLabels(opt, model.num_topics());
  std::vector<DocumentInfo> docs;
  {
    std::ifstream f(ctx.DocumentsPath(), std::ios::binary);
    if (!f) throw UsageError("cannot open " + ctx.DocumentsPath());
    docs = ReadDocumentInfoJson(f);
  }
  std::optional<std::string> company;
  if (!opt.company.empty()) company = opt.company;
  auto dated = JoinDates(model.training_doc_mixtures, docs, company);
  if (dated.empty()) throw DataError("no dated documents to aggregate");
  TopicPopularitySeries series = TopicPopularity(dated, ModeFromOptions(opt));

  EnsureOutDir(ctx);
  const std::string path = PopularityOutputPath(ctx, format);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  if (format == "csv") {
    ExportSeriesCsv(series, labels, f);
  } else {
    ExportSeriesJson(series, labels, f);
  }
  f.close();
  if (!f) throw DataError("write failed: " + path);

  size_t empty = 0;
  for (size_t t = 0; t < series.num_buckets(); ++t) empty += series.IsEmpty(t);
  const YearMonth& a = series.buckets.front();
  const YearMonth& b = series.buckets.back();
  ctx.err << "popularity (" << series.mode.Describe() << "): "
          << dated.size() << " documents, " << series.num_buckets()
          << " months " << a.year << "-" << a.month << " .. " << b.year << "-"
          << b.month << ", " << empty << " empty months\n";
  ctx.err << "written to " << path << "\n";
  return kExitOk;
}

int CmdSimilar(const Context& ctx) {
  const Options& opt = ctx.opt;
  if (opt.rank < 1 || opt.rank > opt.top_m) {
    throw UsageError("--rank must be between 1 and --top-m (" +
                     std::to_string(opt.top_m) + ")");
  }
  TrainedModel model = LoadModel(ctx.ModelPath());
  if (opt.topic < 0 || opt.topic >= model.num_topics()) {
    throw UsageError("--topic must be in [0, " +
                     std::to_string(model.num_topics()) + ")");
  }
  std::ostringstream buf;
  buf << "doc_id,proportion\n";
  for (const auto& [id, p] : DocumentsByTopicRankWithProportion(
           model.training_doc_mixtures, opt.topic, opt.rank, opt.top_m)) {
    buf << CsvEscape(id) << ',' << FormatNumber(p) << '\n';
  }
  ctx.out << buf.str();
  return kExitOk;
}

int CmdRunAll(const Context& ctx) {
  CmdPreprocess(ctx);
  CmdTrain(ctx);
  return CmdPopularity(ctx);
}

void AddOptions(CLI::App& app, Options& o) {
  app.set_config("--config", "", "TOML key = value file; flags override it");

  app.add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  app.add_option("--input", o.input, "Complaint export CSV");
  app.add_option("--col-id", o.columns.complaint_id)->capture_default_str();
  app.add_option("--col-date", o.columns.date_received)->capture_default_str();
  app.add_option("--col-product", o.columns.product)->capture_default_str();
  app.add_option("--col-issue", o.columns.issue)->capture_default_str();
  app.add_option("--col-company", o.columns.company)->capture_default_str();
  app.add_option("--col-state", o.columns.state)->capture_default_str();
  app.add_option("--col-narrative", o.columns.narrative)->capture_default_str();
  app.add_option("--stopwords", o.stopwords,
                 "Generic stop word file (default: built-in English list)");
  app.add_option("--domain-stopwords", o.domain_stopwords,
                 "Company/state stop word file");
  app.add_option("--min-token-length", o.min_token_length)
      ->capture_default_str();

  app.add_option("-k,--topics", o.lda.num_topics, "Number of topics")
      ->capture_default_str();
  app.add_option("--alpha", o.lda.alpha)->capture_default_str();
  app.add_option("--eta", o.lda.eta)->capture_default_str();
  app.add_option("--sweeps", o.lda.sweeps)->capture_default_str();
  app.add_option("--burn-in", o.lda.burn_in)->capture_default_str();
  app.add_option("--sample-lag", o.lda.sample_lag)->capture_default_str();
  app.add_option("--seed", o.lda.seed)->capture_default_str();
  app.add_flag("--check-invariants", o.check_invariants,
               "Verify counts and conditionals after every sweep");
  app.add_option("--progress", o.progress_every,
                 "Report timing every N sweeps (0: only the summary)")
      ->capture_default_str();

  app.add_option("--matrix", o.matrix, "Matrix file (default OUT/matrix.json)");
  app.add_option("--model", o.model, "Model file (default OUT/model.json)");
  app.add_option("--documents", o.documents,
                 "Document dates/companies (default OUT/documents.json)");
  app.add_option("--output", o.output, "Output file for popularity");

  app.add_option("--top-m", o.top_m, "Topics kept per document")
      ->capture_default_str();
  app.add_flag("--renormalize", o.renormalize,
               "Rescale truncated mixtures to sum to 1");
  app.add_option("--popularity-mode", o.popularity_mode)
      ->check(CLI::IsMember({"full", "truncated"}))
      ->capture_default_str();
  app.add_option("--company", o.company, "Restrict popularity to a company");
  app.add_option("--labels", o.labels, "topic_id<TAB>label file");
  app.add_option("--format", o.format, "csv|json (topics also: text)")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            if (s.empty() || s == "csv" || s == "json" || s == "text") return {};
            return "format must be csv, json or text";
          },
          "csv|json|text"));

  app.add_option("--n", o.n_words, "Top words per topic")->capture_default_str();
  app.add_option("--text", o.text, "Narrative to infer");
  app.add_option("--text-file", o.text_file, "File holding the narrative");
  app.add_flag("--full", o.full, "Report the whole mixture");
  app.add_option("--topic", o.topic, "Topic id for `similar`")
      ->capture_default_str();
  app.add_option("--rank", o.rank, "Rank of the topic for `similar`")
      ->capture_default_str();
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options opt;
  CLI::App app("Topic modeling toolkit for consumer complaint narratives",
               "ctopics");
  app.fallthrough();
  app.require_subcommand(1);
  AddOptions(app, opt);

  using Handler = int (*)(const Context&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands = {
      {"preprocess", "CSV -> term-document matrix and selection report",
       CmdPreprocess},
      {"train", "Fit LDA by collapsed Gibbs sampling", CmdTrain},
      {"topics", "Top words per topic", CmdTopics},
      {"infer", "Topic mixture of a new narrative", CmdInfer},
      {"popularity", "Monthly topic popularity series", CmdPopularity},
      {"similar", "Documents holding a topic at a given rank", CmdSimilar},
      {"run-all", "preprocess, train and popularity in one go", CmdRunAll},
  };
  std::vector<std::pair<CLI::App*, Handler>> subs;
  for (const auto& [name, desc, fn] : commands) {
    subs.emplace_back(app.add_subcommand(name, desc), fn);
  }

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Context ctx{opt, app, out, err};
  try {
    for (const auto& [sub, fn] : subs) {
      if (sub->parsed()) return fn(ctx);
    }
    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace ctopics
