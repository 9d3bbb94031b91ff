#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "patentcite/dataset.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

RunResult run_cli(const std::string& args, const std::string& stdin_text = "") {
    std::string cmd = std::string("\"") + CLI_BIN + "\" " + args;
    if (!stdin_text.empty()) {
        spit("tmp_cli_stdin.txt", stdin_text);
        cmd += " < tmp_cli_stdin.txt";
    }
    cmd += " > tmp_cli_stdout.txt 2> tmp_cli_stderr.txt";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp("tmp_cli_stdout.txt");
    result.err = slurp("tmp_cli_stderr.txt");
    return result;
}

// one CSV record in the canonical 16-field layout
std::string corpus_row(const std::string& id, int year, long long paper, long long patent) {
    std::string row = id + "," + std::to_string(year);
    for (int i = 0; i < 12; ++i)
        row += ",1";
    return row + "," + std::to_string(paper) + "," + std::to_string(patent);
}

} // namespace

TEST_CASE("help and version exit cleanly") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("synth --help").code == 0);

    auto version = run_cli("--version");
    CHECK(version.code == 0);
    CHECK(version.out == "patentcite 1.0.0\n");
}

TEST_CASE("usage problems exit with code 1") {
    CHECK(run_cli("").code == 1);                      // a subcommand is required
    CHECK(run_cli("frobnicate").code == 1);            // unknown subcommand
    CHECK(run_cli("synth").code == 1);                 // --out is required
    CHECK(run_cli("train --data x.csv --out m.json").code == 1);  // --model-type is required
    CHECK(run_cli("ingest --data x.csv --out y.csv --format yaml").code == 1);
    CHECK(run_cli("evaluate --model m --data d --threshold 1.5").code == 1);
}

TEST_CASE("synth writes a deterministic corpus") {
    auto first = run_cli("--seed 9 synth --n 120 --out tmp_cli_synth_a.csv");
    REQUIRE(first.code == 0);
    CHECK(first.out == "synthetic corpus: 120 records -> tmp_cli_synth_a.csv\n");

    auto second = run_cli("--seed 9 synth --n 120 --out tmp_cli_synth_b.csv");
    REQUIRE(second.code == 0);
    CHECK(slurp("tmp_cli_synth_a.csv") == slurp("tmp_cli_synth_b.csv"));

    auto reseeded = run_cli("--seed 10 synth --n 120 --out tmp_cli_synth_c.csv");
    REQUIRE(reseeded.code == 0);
    CHECK(slurp("tmp_cli_synth_a.csv") != slurp("tmp_cli_synth_c.csv"));

    SUBCASE("the global seed may follow the subcommand") {
        auto fallthrough = run_cli("synth --seed 9 --n 120 --out tmp_cli_synth_d.csv");
        REQUIRE(fallthrough.code == 0);
        CHECK(slurp("tmp_cli_synth_d.csv") == slurp("tmp_cli_synth_a.csv"));
    }
}

TEST_CASE("synth base-mean overrides") {
    CHECK(run_cli("synth --base-mean news=3.5 --n 50 --out tmp_cli_synth_bm.csv").code == 0);

    auto malformed = run_cli("synth --base-mean news --n 50 --out tmp_cli_x.csv");
    CHECK(malformed.code == 1);
    CHECK(malformed.err.find("--base-mean expects SOURCE=MEAN") != std::string::npos);

    CHECK(run_cli("synth --base-mean news=3.5oops --n 50 --out tmp_cli_x.csv").code == 1);

    auto unknown = run_cli("synth --base-mean telegram=2 --n 50 --out tmp_cli_x.csv");
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("unknown source in base_means: telegram") != std::string::npos);
}

TEST_CASE("ingest cleans the bundled fixture") {
    auto result = run_cli(std::string("ingest --data ") + FIXTURE_CSV +
                          " --out tmp_cli_cleaned.csv");
    REQUIRE(result.code == 0);
    CHECK(result.out.find("records read:       20") != std::string::npos);
    CHECK(result.out.find("rows kept:          14 (6 positive / 8 negative)") !=
          std::string::npos);

    SUBCASE("re-ingesting the cleaned file is a byte-level no-op") {
        auto again = run_cli("ingest --data tmp_cli_cleaned.csv --out tmp_cli_cleaned2.csv");
        REQUIRE(again.code == 0);
        CHECK(slurp("tmp_cli_cleaned2.csv") == slurp("tmp_cli_cleaned.csv"));
    }
    SUBCASE("json report format") {
        auto json = run_cli(std::string("ingest --data ") + FIXTURE_CSV +
                            " --out tmp_cli_cleaned3.csv --report-format json");
        REQUIRE(json.code == 0);
        CHECK(json.out.find("\"records_read\": 20") != std::string::npos);
    }
}

TEST_CASE("stats reports balance, correlations and the citation threshold") {
    auto result = run_cli(std::string("stats --data ") + FIXTURE_CSV +
                          " --heatmap tmp_cli_heatmap.csv");
    REQUIRE(result.code == 0);
    CHECK(result.out.find("rows: 14, features: 8") != std::string::npos);
    CHECK(result.out.find("class balance: 6 positive / 8 negative (0.429 positive)") !=
          std::string::npos);
    CHECK(result.out.find("rows with paper_citations > 100: 5; patent-cited among them: 4 "
                          "(fraction 0.800)") != std::string::npos);

    std::istringstream heatmap(slurp("tmp_cli_heatmap.csv"));
    std::string line;
    int lines = 0;
    while (std::getline(heatmap, line))
        ++lines;
    CHECK(lines == 100);  // 8 features + 2 citation columns, squared

    SUBCASE("quiet mode silences the log") {
        auto quiet = run_cli(std::string("--log-level quiet stats --data ") + FIXTURE_CSV);
        REQUIRE(quiet.code == 0);
        CHECK(quiet.err.empty());
    }
    SUBCASE("info logging goes to stderr, not stdout") {
        CHECK(result.err.find("[info]") != std::string::npos);
        CHECK(result.out.find("[info]") == std::string::npos);
    }
}

TEST_CASE("train, evaluate and predict round trip") {
    auto train = run_cli(std::string("train --data ") + FIXTURE_CSV +
                         " --model-type dt --out tmp_cli_model_dt.json");
    REQUIRE(train.code == 0);
    CHECK(train.out.find("trained dt on 14 rows (8 features) -> tmp_cli_model_dt.json") !=
          std::string::npos);

    SUBCASE("a tree evaluated on its own training corpus is perfect") {
        auto eval = run_cli(std::string("evaluate --model tmp_cli_model_dt.json --data ") +
                            FIXTURE_CSV);
        REQUIRE(eval.code == 0);
        CHECK(eval.out.find("scored 14 rows with the dt model (threshold 0.50)") !=
              std::string::npos);
        CHECK(eval.out.find("tp=6 fp=0 fn=0 tn=8") != std::string::npos);
        CHECK(eval.out.find("accuracy=1.0000") != std::string::npos);
        CHECK(eval.out.find("f1=1.0000") != std::string::npos);
    }

    SUBCASE("predict scores every raw record without cleaning") {
        auto predict = run_cli(std::string("predict --model tmp_cli_model_dt.json --input ") +
                               FIXTURE_CSV + " --out tmp_cli_preds.csv");
        REQUIRE(predict.code == 0);
        REQUIRE(predict.out.rfind("id,probability,label\n", 0) == 0);
        std::istringstream lines(predict.out);
        std::string line;
        int rows = -1;  // skip the header
        while (std::getline(lines, line))
            ++rows;
        CHECK(rows == 20);  // duplicates and out-of-range years score too
        CHECK(slurp("tmp_cli_preds.csv") == predict.out);
    }

    SUBCASE("predict reads stdin when --input is '-'") {
        const std::string corpus = patentcite::csv_header() + "\n" +
                                   corpus_row("stdin-1", 2015, 10, 0) + "\n";
        auto predict = run_cli("predict --model tmp_cli_model_dt.json --input - --format csv",
                               corpus);
        REQUIRE(predict.code == 0);
        CHECK(predict.out.rfind("id,probability,label\n", 0) == 0);
        CHECK(predict.out.find("stdin-1,") != std::string::npos);
    }

    SUBCASE("prediction thresholds are applied to the probability column") {
        auto strict = run_cli(std::string("predict --model tmp_cli_model_dt.json --input ") +
                              FIXTURE_CSV + " --threshold 1.0");
        REQUIRE(strict.code == 0);
        // a threshold of 1.0 only accepts probability-1 rows
        std::istringstream lines(strict.out);
        std::string line;
        std::getline(lines, line);  // header
        while (std::getline(lines, line)) {
            const auto last_comma = line.rfind(',');
            const std::string label = line.substr(last_comma + 1);
            const bool certain = line.find(",1.000000,") != std::string::npos;
            CHECK(label == (certain ? "1" : "0"));
        }
    }
}

TEST_CASE("benchmark compares the four models") {
    REQUIRE(run_cli("--seed 3 synth --n 400 --out tmp_cli_bench_corpus.csv").code == 0);

    auto bench = run_cli("--seed 3 benchmark --data tmp_cli_bench_corpus.csv --trees 30 "
                         "--out tmp_cli_bench_report.csv");
    REQUIRE(bench.code == 0);
    CHECK(bench.out.find("positive-class (label 1) metrics, decision threshold 0.5") !=
          std::string::npos);
    CHECK(bench.out.find("80/20 stratified split, seed 3; 400 rows, 8 features "
                         "(train 320 / test 80)") != std::string::npos);
    for (const char* row : {"Accuracy", "F1-score", "Precision", "Recall"})
        CHECK(bench.out.find(row) != std::string::npos);

    const std::string report = slurp("tmp_cli_bench_report.csv");
    CHECK(report.rfind("metric,LR,DT,NB,RF\n", 0) == 0);

    SUBCASE("the whole pipeline is reproducible") {
        auto again = run_cli("--seed 3 benchmark --data tmp_cli_bench_corpus.csv --trees 30 "
                             "--out tmp_cli_bench_report2.csv");
        REQUIRE(again.code == 0);
        CHECK(again.out == bench.out);
        CHECK(slurp("tmp_cli_bench_report2.csv") == report);
    }
}

TEST_CASE("corpus problems exit with code 2") {
    SUBCASE("missing input file") {
        auto result = run_cli("stats --data no_such_corpus.csv");
        CHECK(result.code == 2);
        CHECK(result.err.find("data error:") != std::string::npos);
    }
    SUBCASE("wrong CSV header") {
        spit("tmp_cli_bad_header.csv", "id,year\nx,2014\n");
        auto result = run_cli("stats --data tmp_cli_bad_header.csv");
        CHECK(result.code == 2);
        CHECK(result.err.find("unexpected CSV header") != std::string::npos);
        CHECK(result.err.find("expected:") != std::string::npos);
    }
    SUBCASE("every record filtered away") {
        spit("tmp_cli_old.csv", patentcite::csv_header() + "\n" +
                                    corpus_row("old-1", 2009, 5, 0) + "\n" +
                                    corpus_row("old-2", 2010, 5, 1) + "\n");
        auto result = run_cli("stats --data tmp_cli_old.csv");
        CHECK(result.code == 2);
        CHECK(result.err.find("data error:") != std::string::npos);
    }
    SUBCASE("missing model file") {
        auto result = run_cli(std::string("evaluate --model no_such_model.json --data ") +
                              FIXTURE_CSV);
        CHECK(result.code == 2);
        CHECK(result.err.find("model error:") != std::string::npos);
    }
    SUBCASE("malformed model file") {
        spit("tmp_cli_broken_model.json", "{\"format_version\": 1,");
        auto result = run_cli(std::string("predict --model tmp_cli_broken_model.json --input ") +
                              FIXTURE_CSV);
        CHECK(result.code == 2);
        CHECK(result.err.find("model error:") != std::string::npos);
    }
}
