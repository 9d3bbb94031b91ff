#include "patentcite/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "patentcite/analytics.hpp"
#include "patentcite/dataset.hpp"
#include "patentcite/error.hpp"
#include "patentcite/evaluation.hpp"
#include "patentcite/model.hpp"
#include "patentcite/synthgen.hpp"

namespace patentcite {

namespace {

struct Logger {
    int verbosity = 1;  // 0 quiet, 1 info, 2 debug

    void info(const std::string& msg) const {
        if (verbosity >= 1) std::cerr << "[info] " << msg << "\n";
    }
    void debug(const std::string& msg) const {
        if (verbosity >= 2) std::cerr << "[debug] " << msg << "\n";
    }
};

struct DataOpts {
    std::string path;
    std::string format = "auto";
    int min_year = 2010;
    double sparse_threshold = 0.5;
    std::string null_policy = "zero";
};

void add_data_opts(CLI::App* cmd, DataOpts& o) {
    cmd->add_option("--data", o.path, "input corpus (CSV or JSONL)")->required();
    cmd->add_option("--format", o.format, "input format: auto, csv or jsonl")
        ->check(CLI::IsMember({"auto", "csv", "jsonl"}))
        ->capture_default_str();
    cmd->add_option("--min-year", o.min_year, "keep records with year strictly greater")
        ->capture_default_str();
    cmd->add_option("--sparse-threshold", o.sparse_threshold,
                    "drop a source when its null fraction exceeds this")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--null-policy", o.null_policy,
                    "null counts in retained columns: zero (impute 0) or drop (drop the record)")
        ->check(CLI::IsMember({"zero", "drop"}))
        ->capture_default_str();
}

RecordFormat resolve_format(const std::string& format, const std::string& path) {
    if (format == "csv") return RecordFormat::Csv;
    if (format == "jsonl") return RecordFormat::Jsonl;
    return path.ends_with(".jsonl") || path.ends_with(".ndjson") ? RecordFormat::Jsonl
                                                                 : RecordFormat::Csv;
}

CleanConfig to_clean_config(const DataOpts& o) {
    CleanConfig cc;
    cc.min_year_exclusive = o.min_year;
    cc.sparse_null_fraction = o.sparse_threshold;
    cc.null_count_policy = o.null_policy == "drop" ? NullCountPolicy::DropRecord
                                                   : NullCountPolicy::TreatAsZero;
    return cc;
}

std::pair<Dataset, CleanReport> load_clean(const DataOpts& o, const Logger& log) {
    auto records = parse_records(o.path, resolve_format(o.format, o.path));
    log.info("read " + std::to_string(records.size()) + " records from " + o.path);
    auto cleaned = clean(records, to_clean_config(o));
    log.info("cleaned corpus: " + std::to_string(cleaned.first.rows()) + " rows, " +
             std::to_string(cleaned.first.cols()) + " features");
    return cleaned;
}

// Shared hyperparameter surface for train and benchmark. Flags that do not
// apply to the selected model type are simply ignored.
struct ModelOpts {
    double learning_rate = 0.1;
    double l2 = 0.0;
    int max_iters = 5000;
    double tolerance = 1e-8;
    bool no_transform = false;
    int max_depth = 12;
    int min_samples_split = 2;
    double min_impurity_decrease = 0.0;
    double variance_floor = 1e-9;
    int trees = 100;
    std::size_t features_per_split = 0;
    bool no_bootstrap = false;
};

void add_model_opts(CLI::App* cmd, ModelOpts& o) {
    cmd->add_option("--learning-rate", o.learning_rate, "lr: gradient descent step size")
        ->capture_default_str();
    cmd->add_option("--l2", o.l2, "lr: L2 penalty strength")->capture_default_str();
    cmd->add_option("--max-iters", o.max_iters, "lr: gradient descent iteration cap")
        ->capture_default_str();
    cmd->add_option("--tolerance", o.tolerance, "lr: loss-improvement stopping threshold")
        ->capture_default_str();
    cmd->add_flag("--no-transform", o.no_transform, "lr: train on raw counts instead of log1p");
    cmd->add_option("--max-depth", o.max_depth, "dt/rf: maximum tree depth")
        ->capture_default_str();
    cmd->add_option("--min-samples-split", o.min_samples_split,
                    "dt/rf: minimum node size eligible for splitting")
        ->capture_default_str();
    cmd->add_option("--min-impurity-decrease", o.min_impurity_decrease,
                    "dt/rf: minimum Gini decrease for a split")
        ->capture_default_str();
    cmd->add_option("--variance-floor", o.variance_floor, "nb: lower bound on class variances")
        ->capture_default_str();
    cmd->add_option("--trees", o.trees, "rf: number of trees")->capture_default_str();
    cmd->add_option("--features-per-split", o.features_per_split,
                    "rf: features considered per split (0 = floor(sqrt(d)))")
        ->capture_default_str();
    cmd->add_flag("--no-bootstrap", o.no_bootstrap, "rf: train each tree on the full sample");
}

ModelConfigs to_model_configs(const ModelOpts& o, std::uint64_t seed) {
    ModelConfigs c;
    c.lr.learning_rate = o.learning_rate;
    c.lr.l2 = o.l2;
    c.lr.max_iters = o.max_iters;
    c.lr.tolerance = o.tolerance;
    c.lr.transform = o.no_transform ? Transform::None : Transform::Log1p;
    c.dt.max_depth = o.max_depth;
    c.dt.min_samples_split = o.min_samples_split;
    c.dt.min_impurity_decrease = o.min_impurity_decrease;
    c.nb.variance_floor = o.variance_floor;
    c.rf.n_trees = o.trees;
    c.rf.features_per_split = o.features_per_split;
    c.rf.bootstrap = !o.no_bootstrap;
    c.rf.seed = seed;
    c.rf.tree = c.dt;
    return c;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot open output file: " + path);
    out << content;
    if (!out)
        throw DataError("failed writing " + path);
}

int do_ingest(const DataOpts& data, const std::string& out, const std::string& report_format,
              const Logger& log) {
    auto [dataset, report] = load_clean(data, log);
    write_dataset_csv(dataset, out);
    log.info("wrote cleaned corpus to " + out);
    std::cout << (report_format == "json" ? report.to_json() + "\n" : report.to_text());
    return 0;
}

int do_stats(const DataOpts& data, const std::string& scale, long long threshold,
             const std::string& heatmap, const Logger& log) {
    auto [dataset, report] = load_clean(data, log);
    auto [pos, neg] = class_balance(dataset);
    char frac[16];
    std::snprintf(frac, sizeof(frac), "%.3f",
                  static_cast<double>(pos) / static_cast<double>(pos + neg));
    std::cout << "rows: " << dataset.rows() << ", features: " << dataset.cols() << "\n"
              << "class balance: " << pos << " positive / " << neg << " negative (" << frac
              << " positive)\n\n";
    auto matrix =
        correlation_matrix(dataset, scale == "log1p" ? CorrScale::Log1p : CorrScale::Raw);
    std::cout << format_correlation_matrix(matrix) << "\n"
              << citation_threshold_analysis(dataset, threshold).to_text() << "\n";
    if (!heatmap.empty()) {
        emit_heatmap_data(matrix, heatmap);
        log.info("wrote heatmap data to " + heatmap);
    }
    return 0;
}

int do_train(const DataOpts& data, const std::string& model_type, const std::string& out,
             const ModelOpts& opts, std::uint64_t seed, const Logger& log) {
    auto [train_set, report] = load_clean(data, log);
    ModelConfigs configs = to_model_configs(opts, seed);

    TrainedModel model;
    model.feature_names = train_set.feature_names;
    if (model_type == "lr")
        model.model = fit_logistic(train_set, configs.lr);
    else if (model_type == "dt")
        model.model = fit_tree(train_set, configs.dt);
    else if (model_type == "nb")
        model.model = fit_naive_bayes(train_set, configs.nb);
    else
        model.model = fit_forest(train_set, configs.rf);

    serialize_model(model, out);
    log.info("wrote model file " + out);
    std::cout << "trained " << model_type << " on " << train_set.rows() << " rows ("
              << train_set.cols() << " features) -> " << out << "\n";
    return 0;
}

int do_evaluate(const std::string& model_path, const DataOpts& data, double threshold,
                const Logger& log) {
    TrainedModel model = deserialize_model(model_path);
    log.info("loaded " + model_kind_name(model.kind()) + " model from " + model_path);
    auto [dataset, report] = load_clean(data, log);
    auto predictions = predict_all(model, dataset, threshold);
    auto cm = confusion(dataset.labels, predictions);
    auto m = metrics(cm);
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "scored %zu rows with the %s model (threshold %.2f)\n"
                  "tp=%lld fp=%lld fn=%lld tn=%lld\n"
                  "accuracy=%.4f\nprecision=%.4f\nrecall=%.4f\nf1=%.4f\n",
                  dataset.rows(), model_kind_name(model.kind()).c_str(), threshold, cm.tp, cm.fp,
                  cm.fn, cm.tn, m.accuracy, m.precision, m.recall, m.f1);
    std::cout << buf;
    return 0;
}

int do_benchmark(const DataOpts& data, double test_fraction, const ModelOpts& opts,
                 std::uint64_t seed, const std::string& out_csv, const Logger& log) {
    auto [dataset, report] = load_clean(data, log);
    auto table = benchmark_all(dataset, to_model_configs(opts, seed), test_fraction, seed);
    std::cout << format_report(table, ReportStyle::Text);
    if (!out_csv.empty()) {
        write_text_file(out_csv, format_report(table, ReportStyle::Csv));
        log.info("wrote CSV report to " + out_csv);
    }
    return 0;
}

int do_predict(const std::string& model_path, const std::string& input,
               const std::string& format, double threshold, const std::string& out,
               const Logger& log) {
    TrainedModel model = deserialize_model(model_path);
    log.info("loaded " + model_kind_name(model.kind()) + " model from " + model_path);

    std::vector<RawRecord> records;
    if (input == "-") {
        records = parse_records(std::cin, resolve_format(format, ""));
    } else {
        records = parse_records(input, resolve_format(format, input));
    }
    if (records.empty())
        throw DataError("no records to predict");
    log.info("scoring " + std::to_string(records.size()) + " records");

    // Prediction input needs no label and skips cleaning: every record is
    // scored as-is, with null or absent counts read as zero.
    std::string rendered = "id,probability,label\n";
    std::vector<double> features(model.feature_names.size());
    for (const auto& rec : records) {
        for (std::size_t j = 0; j < model.feature_names.size(); ++j) {
            auto it = rec.mentions.find(model.feature_names[j]);
            features[j] = it != rec.mentions.end() && it->second.has_value()
                              ? static_cast<double>(*it->second)
                              : 0.0;
        }
        double p = predict_proba(model, features);
        char line[96];
        std::snprintf(line, sizeof(line), "%s,%.6f,%d\n", rec.id.c_str(), p,
                      p >= threshold ? 1 : 0);
        rendered += line;
    }
    std::cout << rendered;
    if (!out.empty()) {
        write_text_file(out, rendered);
        log.info("wrote predictions to " + out);
    }
    return 0;
}

int do_synth(SynthConfig config, const std::vector<std::string>& base_mean_args, bool cleaned,
             const std::string& out, const Logger& log) {
    for (const auto& arg : base_mean_args) {
        auto eq = arg.find('=');
        double mean = 0.0;
        std::size_t consumed = 0;
        if (eq != std::string::npos && eq > 0 && eq + 1 < arg.size()) {
            try {
                mean = std::stod(arg.substr(eq + 1), &consumed);
            } catch (const std::exception&) {
                consumed = 0;
            }
        }
        if (consumed == 0 || eq + 1 + consumed != arg.size()) {
            std::cerr << "--base-mean expects SOURCE=MEAN, got '" << arg << "'\n";
            return 1;
        }
        const std::string source = arg.substr(0, eq);
        bool found = false;
        for (auto& [name, value] : config.base_means)
            if (name == source) {
                value = mean;
                found = true;
            }
        if (!found)
            config.base_means.emplace_back(source, mean);
    }

    if (cleaned) {
        Dataset dataset = generate(config);
        write_dataset_csv(dataset, out);
        std::cout << "synthetic corpus: " << dataset.rows() << " cleaned rows -> " << out << "\n";
    } else {
        auto records = generate_records(config);
        write_records_csv(records, out);
        std::cout << "synthetic corpus: " << records.size() << " records -> " << out << "\n";
    }
    log.info("generator seed " + std::to_string(config.seed));
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"predict patent citations of scholarly articles from altmetric mention counts"};
    app.require_subcommand(1);
    std::uint64_t seed = 42;
    std::string log_level = "info";
    app.add_option("--seed", seed, "master random seed")->capture_default_str();
    app.add_option("--log-level", log_level, "quiet, info or debug")
        ->check(CLI::IsMember({"quiet", "info", "debug"}))
        ->capture_default_str();
    app.set_version_flag("--version", "patentcite 1.0.0");

    auto* ingest = app.add_subcommand("ingest", "parse and clean a corpus, write cleaned CSV");
    DataOpts ingest_data;
    std::string ingest_out, ingest_report_format = "text";
    add_data_opts(ingest, ingest_data);
    ingest->add_option("--out", ingest_out, "cleaned corpus path")->required();
    ingest->add_option("--report-format", ingest_report_format, "cleaning report: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    auto* stats = app.add_subcommand(
        "stats", "correlation matrix, class balance and citation-threshold analysis");
    DataOpts stats_data;
    std::string stats_scale = "raw", stats_heatmap;
    long long stats_threshold = 100;
    add_data_opts(stats, stats_data);
    stats->add_option("--scale", stats_scale, "correlate raw or log1p counts")
        ->check(CLI::IsMember({"raw", "log1p"}))
        ->capture_default_str();
    stats->add_option("--threshold", stats_threshold,
                      "paper-citation cutoff for the threshold analysis")
        ->capture_default_str();
    stats->add_option("--heatmap", stats_heatmap, "write long-format matrix data to this path");

    auto* train = app.add_subcommand("train", "fit one model and write a model file");
    DataOpts train_data;
    ModelOpts train_model_opts;
    std::string train_type, train_out;
    add_data_opts(train, train_data);
    train->add_option("--model-type", train_type, "lr, dt, nb or rf")
        ->check(CLI::IsMember({"lr", "dt", "nb", "rf"}))
        ->required();
    train->add_option("--out", train_out, "model file path")->required();
    add_model_opts(train, train_model_opts);

    auto* evaluate = app.add_subcommand("evaluate", "score a model file on a labeled corpus");
    DataOpts eval_data;
    std::string eval_model;
    double eval_threshold = 0.5;
    evaluate->add_option("--model", eval_model, "model file")->required();
    add_data_opts(evaluate, eval_data);
    evaluate->add_option("--threshold", eval_threshold, "decision threshold")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    auto* benchmark = app.add_subcommand(
        "benchmark", "train and compare all four models on one stratified split");
    DataOpts bench_data;
    ModelOpts bench_model_opts;
    double bench_fraction = 0.2;
    std::string bench_out;
    add_data_opts(benchmark, bench_data);
    benchmark->add_option("--test-fraction", bench_fraction, "held-out fraction per class")
        ->capture_default_str();
    benchmark->add_option("--out", bench_out, "also write the report as CSV to this path");
    add_model_opts(benchmark, bench_model_opts);

    auto* predict_cmd = app.add_subcommand("predict", "score records with a trained model");
    std::string pred_model, pred_input, pred_format = "auto", pred_out;
    double pred_threshold = 0.5;
    predict_cmd->add_option("--model", pred_model, "model file")->required();
    predict_cmd->add_option("--input", pred_input, "records to score ('-' reads stdin)")
        ->required();
    predict_cmd->add_option("--format", pred_format, "input format: auto, csv or jsonl")
        ->check(CLI::IsMember({"auto", "csv", "jsonl"}))
        ->capture_default_str();
    predict_cmd->add_option("--threshold", pred_threshold, "decision threshold")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    predict_cmd->add_option("--out", pred_out, "also write predictions to this path");

    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    SynthConfig synth_config;
    std::vector<std::string> synth_base_means;
    std::string synth_out;
    bool synth_cleaned = false;
    synth->add_option("--n", synth_config.n_records, "number of records")->capture_default_str();
    synth->add_option("--positive-fraction", synth_config.positive_fraction,
                      "target positive-label fraction")
        ->capture_default_str();
    synth->add_option("--signal-strength", synth_config.signal_strength,
                      "class mean-shift multiplier (0 = unlearnable)")
        ->capture_default_str();
    synth->add_option("--citation-link", synth_config.citation_link,
                      "positive probability for records with >100 paper citations")
        ->capture_default_str();
    synth->add_option("--base-mean", synth_base_means,
                      "override a negative-class feature mean, SOURCE=MEAN (repeatable)");
    synth->add_flag("--cleaned", synth_cleaned,
                    "write the cleaned modeling table instead of the raw corpus");
    synth->add_option("--out", synth_out, "output CSV path")->required();

    for (auto* cmd : {ingest, stats, train, evaluate, benchmark, predict_cmd, synth})
        cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    Logger log{log_level == "quiet" ? 0 : log_level == "debug" ? 2 : 1};

    try {
        if (*ingest)
            return do_ingest(ingest_data, ingest_out, ingest_report_format, log);
        if (*stats)
            return do_stats(stats_data, stats_scale, stats_threshold, stats_heatmap, log);
        if (*train)
            return do_train(train_data, train_type, train_out, train_model_opts, seed, log);
        if (*evaluate)
            return do_evaluate(eval_model, eval_data, eval_threshold, log);
        if (*benchmark)
            return do_benchmark(bench_data, bench_fraction, bench_model_opts, seed, bench_out,
                                log);
        if (*predict_cmd)
            return do_predict(pred_model, pred_input, pred_format, pred_threshold, pred_out, log);
        if (*synth) {
            synth_config.seed = seed;
            return do_synth(synth_config, synth_base_means, synth_cleaned, synth_out, log);
        }
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const ModelError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace patentcite
