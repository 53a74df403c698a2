#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace urltool {

inline constexpr std::string_view kRecordSchema = "urltool.record/1";
inline constexpr std::string_view kReportSchema = "urltool.report/1";

struct CorpusReport {
    uint64_t total = 0;
    uint64_t valid = 0;
    uint64_t invalid = 0;
    // URLs that needed no tab/newline removal, avoided the host slow path,
    // and took path tier 1 or 2 (or had no path to normalize).
    uint64_t tab_scan_hits = 0;
    uint64_t host_fast_hits = 0;
    uint64_t path_fast_hits = 0;
    uint64_t elapsed_ns = 0;
    double throughput = 0.0;

    void finish(uint64_t elapsed);
    double rate(uint64_t hits) const { return total == 0 ? 1.0 : double(hits) / double(total); }
    nlohmann::json to_json() const;
};

// Parses every line and accumulates validity and fast-path counters.
CorpusReport scan_corpus(const std::vector<std::string>& lines);

std::vector<std::string> read_lines(std::istream& in);

struct NormalizeOptions {
    bool json = false;
    bool strict = false;
    std::optional<std::string> base;
    unsigned threads = 1;
};

// Writes one result per input line to `out` and the summary to `err`.
// Returns the process exit code.
int cmd_normalize(const NormalizeOptions& options, std::istream& in, std::ostream& out,
                  std::ostream& err);

struct ConformanceOptions {
    bool skip_idna = false;
    size_t max_diffs = 10;
};

struct ConformanceResult {
    size_t passed = 0;
    size_t failed = 0;
    size_t skipped = 0;
    std::vector<std::string> diffs;
};

// True when the case exercises host mapping beyond ASCII lowercase and
// punycode, i.e. the host holds non-ASCII or "xn--" labels.
bool requires_idna_mapping(std::string_view input, std::optional<std::string_view> base);

ConformanceResult run_conformance(const nlohmann::json& cases, const ConformanceOptions& options);

int cmd_conformance(const ConformanceOptions& options, const std::string& path, std::ostream& out,
                    std::ostream& err);

struct BenchOptions {
    unsigned iterations = 10;
    unsigned warmup = 2;
    unsigned threads = 1;
};

struct BenchResult {
    CorpusReport report;
    double median_throughput = 0.0;
    double min_throughput = 0.0;
    double max_throughput = 0.0;
    double median_ns_per_url = 0.0;
};

BenchResult run_bench(const std::vector<std::string>& lines, const BenchOptions& options);

int cmd_bench(const BenchOptions& options, const std::string& path, std::ostream& out,
              std::ostream& err);

// Parses argv and dispatches to a command.
int run(int argc, char** argv);

}  // namespace urltool
