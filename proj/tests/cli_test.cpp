#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli/commands.h"
#include "urlkit/parser.h"

using namespace urltool;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome normalize(const std::string& input, NormalizeOptions options = {}) {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cmd_normalize(options, in, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

std::string sample_corpus() {
    std::ostringstream s;
    for (int i = 0; i < 500; ++i) {
        s << "https://www.example" << i % 17 << ".com/path/" << i << "/index.html?q=" << i << "\n";
        s << "http://Shop.Example.org/a/../b/./c#frag" << i << "\n";
        if (i % 50 == 0) s << "not a url " << i << "\n";
        if (i % 100 == 0) s << "https://\tspaced.example/" << i << "\n";
    }
    return s.str();
}

}  // namespace

TEST(Normalize, PlainOutput) {
    const auto r = normalize("https://\tlemire.me/en/\nhttp://example.com:80/\n");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "https://lemire.me/en/\nhttp://example.com/\n");
}

TEST(Normalize, EmptyInput) {
    const auto r = normalize("");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "");
    const auto summary = nlohmann::json::parse(r.err);
    EXPECT_EQ(summary["total"], 0);
    EXPECT_EQ(summary["valid"], 0);
    EXPECT_EQ(summary["invalid"], 0);
}

TEST(Normalize, StrictExitCode) {
    NormalizeOptions strict;
    strict.strict = true;
    EXPECT_EQ(normalize("https://a/\nnope\n", strict).code, 1);
    EXPECT_EQ(normalize("https://a/\n", strict).code, 0);
    EXPECT_EQ(normalize("https://a/\nnope\n").code, 0);
}

TEST(Normalize, ErrorLinesCarryCategory) {
    const auto r = normalize("http://a:99999/\n");
    EXPECT_EQ(r.out, "error: PortOutOfRange\n");
}

TEST(Normalize, Base) {
    NormalizeOptions options;
    options.base = "http://example.org/foo/bar";
    const auto r = normalize("http:/example.com/\n../x\n", options);
    EXPECT_EQ(r.out, "http://example.org/example.com/\nhttp://example.org/x\n");
    options.base = "not a base";
    EXPECT_EQ(normalize("x\n", options).code, 2);
}

TEST(Normalize, JsonRecordsRoundTrip) {
    NormalizeOptions options;
    options.json = true;
    const auto r = normalize(sample_corpus(), options);
    std::istringstream lines(r.out);
    std::string line;
    size_t records = 0, errors = 0;
    while (std::getline(lines, line)) {
        const auto record = nlohmann::json::parse(line);
        EXPECT_EQ(record["schema"], kRecordSchema);
        ++records;
        if (record.contains("error")) {
            ++errors;
            continue;
        }
        auto again = urlkit::parse(record["href"].get<std::string>());
        ASSERT_TRUE(again);
        EXPECT_EQ(record["protocol"], again->protocol());
        EXPECT_EQ(record["username"], again->username());
        EXPECT_EQ(record["password"], again->password());
        EXPECT_EQ(record["host"], again->host());
        EXPECT_EQ(record["hostname"], again->hostname());
        EXPECT_EQ(record["port"], again->port());
        EXPECT_EQ(record["pathname"], again->pathname());
        EXPECT_EQ(record["search"], again->search());
        EXPECT_EQ(record["hash"], again->hash());
        EXPECT_EQ(record["scheme_type"], static_cast<int>(again->scheme_type()));
    }
    const auto summary = nlohmann::json::parse(r.err);
    EXPECT_EQ(summary["total"], records);
    EXPECT_EQ(summary["invalid"], errors);
}

TEST(Normalize, JsonSurvivesInvalidUtf8) {
    NormalizeOptions options;
    options.json = true;
    const auto r = normalize("\xff\xfe\n", options);
    EXPECT_NO_THROW(nlohmann::json::parse(r.out));
}

TEST(Normalize, DeterministicAcrossThreadCounts) {
    const std::string corpus = sample_corpus();
    NormalizeOptions options;
    options.json = true;
    const auto single = normalize(corpus, options);
    for (unsigned threads : {2u, 3u, 8u}) {
        options.threads = threads;
        const auto multi = normalize(corpus, options);
        EXPECT_EQ(multi.out, single.out) << threads;
    }
    EXPECT_EQ(normalize(corpus).out, normalize(corpus).out);
}

TEST(Report, Arithmetic) {
    std::istringstream in(sample_corpus());
    const auto report = scan_corpus(read_lines(in));
    EXPECT_EQ(report.valid + report.invalid, report.total);
    EXPECT_EQ(report.invalid, 10u);
    EXPECT_EQ(report.total - report.tab_scan_hits, 5u);
    if (report.elapsed_ns > 0) {
        EXPECT_DOUBLE_EQ(report.throughput, double(report.total) * 1e9 / double(report.elapsed_ns));
    }
}

TEST(Conformance, Records) {
    const auto cases = nlohmann::json::parse(R"([
        "comment",
        {"input": "http://example.com:80/", "base": null, "href": "http://example.com/"},
        {"input": "https://example.com", "base": null, "failure": false, "href": "https://example.com/"},
        {"input": "http://a b/", "base": null, "failure": true},
        {"input": "http://你好.com/", "base": null, "href": "http://xn--6qq79v.com/"},
        {"input": "http://example.com/", "base": null, "href": "http://wrong/"}
    ])");
    ConformanceOptions options;
    auto result = run_conformance(cases, options);
    EXPECT_EQ(result.passed, 4u);
    EXPECT_EQ(result.failed, 1u);
    EXPECT_EQ(result.skipped, 0u);
    ASSERT_EQ(result.diffs.size(), 1u);
    options.skip_idna = true;
    result = run_conformance(cases, options);
    EXPECT_EQ(result.passed, 3u);
    EXPECT_EQ(result.skipped, 1u);
}

TEST(Conformance, IdnaClassifier) {
    EXPECT_TRUE(requires_idna_mapping("http://\xe4\xbd\xa0/", std::nullopt));
    EXPECT_TRUE(requires_idna_mapping("https://a.xn--b/", std::nullopt));
    EXPECT_TRUE(requires_idna_mapping("https://a.XN--b/", std::nullopt));
    EXPECT_TRUE(requires_idna_mapping("https://%E4%BD%A0/", std::nullopt));
    EXPECT_TRUE(requires_idna_mapping("//\xe4\xbd\xa0/", "http://a/"));
    EXPECT_FALSE(requires_idna_mapping("sc://\xe4\xbd\xa0/", std::nullopt));
    EXPECT_FALSE(requires_idna_mapping("https://a/\xe4\xbd\xa0", std::nullopt));
    EXPECT_FALSE(requires_idna_mapping("https://u\xc3\xa9@a/", std::nullopt));
    EXPECT_FALSE(requires_idna_mapping("/\xe4\xbd\xa0", "http://a/"));
}

TEST(Bench, SingleUrl) {
    BenchOptions options;
    options.iterations = 1;
    options.warmup = 0;
    const auto r = run_bench({"https://example.com/"}, options);
    EXPECT_EQ(r.report.total, 1u);
    EXPECT_EQ(r.report.valid, 1u);
    EXPECT_GT(r.median_throughput, 0.0);
}

TEST(Bench, HitRatesOnSample) {
    std::istringstream in(sample_corpus());
    BenchOptions options;
    options.iterations = 3;
    options.threads = 2;
    const auto r = run_bench(read_lines(in), options);
    EXPECT_GE(r.report.rate(r.report.tab_scan_hits), 0.95);
    EXPECT_GE(r.report.rate(r.report.host_fast_hits), 0.95);
    EXPECT_LE(r.min_throughput, r.median_throughput);
    EXPECT_LE(r.median_throughput, r.max_throughput);
}

TEST(Binary, ExitCodes) {
    const std::string tool = URLTOOL_PATH;
    const auto corpus = temp_file("urltool_cli_test.txt", "https://a/\nnope\n");
    auto run = [&](const std::string& args) {
        const int status = std::system((tool + " " + args + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(status);
    };
    EXPECT_EQ(run("normalize " + corpus.string()), 0);
    EXPECT_EQ(run("normalize --strict " + corpus.string()), 1);
    EXPECT_EQ(run("normalize /nonexistent/file"), 2);
    EXPECT_EQ(run("bench --iterations 1 --warmup 0 " + corpus.string()), 0);
    EXPECT_EQ(run("bench /nonexistent/file"), 2);
    EXPECT_EQ(run("conformance /nonexistent/file"), 2);
    EXPECT_EQ(run("conformance --skip-idna " URLKIT_TEST_DATA_DIR "/urltestdata.json"), 0);
    EXPECT_EQ(run("frobnicate"), 2);
    std::filesystem::remove(corpus);
}
