#include "commands.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "urlkit/urlkit.h"

namespace urltool {

namespace {

using Clock = std::chrono::steady_clock;

uint64_t elapsed_since(Clock::time_point start) {
    return static_cast<uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

// Runs fn(begin, end) over contiguous shards of [0, n) on `threads` workers.
template <typename Fn>
void for_each_shard(size_t n, unsigned threads, Fn fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<size_t>(n, 1))));
    if (threads == 1) {
        fn(size_t{0}, n, 0u);
        return;
    }
    std::vector<std::thread> workers;
    const size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const size_t begin = std::min(n, t * chunk);
        const size_t end = std::min(n, begin + chunk);
        workers.emplace_back([=, &fn] { fn(begin, end, t); });
    }
    for (auto& w : workers) {
        w.join();
    }
}

void count(CorpusReport& report, const urlkit::ParseOutcome& outcome, const urlkit::ParseTrace& trace) {
    ++report.total;
    if (outcome) {
        ++report.valid;
    } else {
        ++report.invalid;
    }
    if (!trace.removed_tabs_or_newlines) {
        ++report.tab_scan_hits;
    }
    if (trace.host_route != urlkit::HostRoute::Slow) {
        ++report.host_fast_hits;
    }
    if (trace.path_tier != 3) {
        ++report.path_fast_hits;
    }
}

void merge(CorpusReport& into, const CorpusReport& from) {
    into.total += from.total;
    into.valid += from.valid;
    into.invalid += from.invalid;
    into.tab_scan_hits += from.tab_scan_hits;
    into.host_fast_hits += from.host_fast_hits;
    into.path_fast_hits += from.path_fast_hits;
}

nlohmann::json url_record(std::string_view input, const urlkit::Url& url) {
    nlohmann::json j;
    j["schema"] = kRecordSchema;
    j["input"] = input;
    j["href"] = url.href();
    j["protocol"] = url.protocol();
    j["username"] = url.username();
    j["password"] = url.password();
    j["host"] = url.host();
    j["hostname"] = url.hostname();
    j["port"] = url.port();
    j["pathname"] = url.pathname();
    j["search"] = url.search();
    j["hash"] = url.hash();
    j["scheme_type"] = static_cast<int>(url.scheme_type());
    return j;
}

nlohmann::json error_record(std::string_view input, urlkit::ParseError error) {
    nlohmann::json j;
    j["schema"] = kRecordSchema;
    j["input"] = input;
    j["error"] = urlkit::to_string(error);
    return j;
}

std::string dump(const nlohmann::json& j) {
    return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

bool is_special_scheme_prefix(std::string_view input, std::string_view& rest, bool& has_scheme) {
    has_scheme = false;
    size_t i = 0;
    if (!input.empty() && std::isalpha(static_cast<unsigned char>(input[0]))) {
        i = 1;
        while (i < input.size() &&
               (std::isalnum(static_cast<unsigned char>(input[i])) || input[i] == '+' ||
                input[i] == '-' || input[i] == '.')) {
            ++i;
        }
        if (i < input.size() && input[i] == ':') {
            has_scheme = true;
            std::string scheme(input.substr(0, i));
            std::transform(scheme.begin(), scheme.end(), scheme.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            rest = input.substr(i + 1);
            return urlkit::is_special(urlkit::scheme_type_from_string(scheme));
        }
    }
    rest = input;
    return false;
}

}  // namespace

void CorpusReport::finish(uint64_t elapsed) {
    elapsed_ns = elapsed;
    throughput = elapsed == 0 ? 0.0 : double(total) * 1e9 / double(elapsed);
}

nlohmann::json CorpusReport::to_json() const {
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["total"] = total;
    j["valid"] = valid;
    j["invalid"] = invalid;
    j["fast_path_hits"] = {{"tab_newline_scan", tab_scan_hits},
                           {"host", host_fast_hits},
                           {"path", path_fast_hits}};
    j["elapsed_ns"] = elapsed_ns;
    j["throughput"] = throughput;
    return j;
}

CorpusReport scan_corpus(const std::vector<std::string>& lines) {
    CorpusReport report;
    const auto start = Clock::now();
    for (const auto& line : lines) {
        urlkit::ParseTrace trace;
        auto outcome = urlkit::parse(line, nullptr, &trace);
        count(report, outcome, trace);
    }
    report.finish(elapsed_since(start));
    return report;
}

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(std::move(line));
    }
    return lines;
}

int cmd_normalize(const NormalizeOptions& options, std::istream& in, std::ostream& out,
                  std::ostream& err) {
    std::optional<urlkit::Url> base;
    if (options.base) {
        auto parsed = urlkit::parse(*options.base);
        if (!parsed) {
            err << "invalid base URL: " << urlkit::to_string(parsed.error()) << '\n';
            return 2;
        }
        base = std::move(parsed).value();
    }
    const std::vector<std::string> lines = read_lines(in);
    if (in.bad()) {
        err << "read error\n";
        return 2;
    }
    std::vector<std::string> rendered(lines.size());
    std::vector<CorpusReport> partial(std::max(1u, options.threads));
    const auto start = Clock::now();
    for_each_shard(lines.size(), options.threads, [&](size_t begin, size_t end, unsigned t) {
        for (size_t i = begin; i < end; ++i) {
            urlkit::ParseTrace trace;
            auto outcome = urlkit::parse(lines[i], base ? &*base : nullptr, &trace);
            count(partial[t], outcome, trace);
            if (options.json) {
                rendered[i] = dump(outcome ? url_record(lines[i], *outcome)
                                           : error_record(lines[i], outcome.error()));
            } else if (outcome) {
                rendered[i] = std::string(outcome->href());
            } else {
                rendered[i] = "error: " + std::string(urlkit::to_string(outcome.error()));
            }
        }
    });
    CorpusReport report;
    for (const auto& p : partial) {
        merge(report, p);
    }
    report.finish(elapsed_since(start));
    for (const auto& r : rendered) {
        out << r << '\n';
    }
    out.flush();
    err << dump(report.to_json()) << '\n';
    if (!out) {
        return 2;
    }
    return options.strict && report.invalid > 0 ? 1 : 0;
}

bool requires_idna_mapping(std::string_view input, std::optional<std::string_view> base) {
    std::string cleaned = urlkit::remove_tabs_and_newlines(urlkit::trim_c0_and_space(input));
    std::string_view rest;
    bool has_scheme = false;
    bool special = is_special_scheme_prefix(cleaned, rest, has_scheme);
    if (!has_scheme) {
        if (!base) {
            return false;
        }
        std::string_view base_rest;
        bool base_has_scheme = false;
        special = is_special_scheme_prefix(*base, base_rest, base_has_scheme);
    }
    if (!special) {
        return false;
    }
    auto is_slash = [](char c) { return c == '/' || c == '\\'; };
    if (has_scheme) {
        while (!rest.empty() && is_slash(rest.front())) {
            rest.remove_prefix(1);
        }
    } else {
        if (rest.size() < 2 || !is_slash(rest[0]) || !is_slash(rest[1])) {
            return false;
        }
        rest.remove_prefix(2);
        while (!rest.empty() && is_slash(rest.front())) {
            rest.remove_prefix(1);
        }
    }
    std::string_view host = rest.substr(0, rest.find_first_of("/\\?#"));
    if (const size_t at = host.rfind('@'); at != std::string_view::npos) {
        host.remove_prefix(at + 1);
    }
    std::string decoded = urlkit::percent_decode(host);
    if (std::any_of(decoded.begin(), decoded.end(),
                    [](char c) { return static_cast<unsigned char>(c) >= 0x80; })) {
        return true;
    }
    std::transform(decoded.begin(), decoded.end(), decoded.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    size_t label = 0;
    while (label <= decoded.size()) {
        if (decoded.compare(label, 4, "xn--") == 0) {
            return true;
        }
        const size_t dot = decoded.find('.', label);
        if (dot == std::string::npos) {
            break;
        }
        label = dot + 1;
    }
    return false;
}

ConformanceResult run_conformance(const nlohmann::json& cases, const ConformanceOptions& options) {
    static constexpr const char* kFields[] = {"href",     "protocol", "username", "password",
                                              "host",     "hostname", "port",     "pathname",
                                              "search",   "hash"};
    ConformanceResult result;
    auto record_diff = [&](std::string message) {
        if (result.diffs.size() < options.max_diffs) {
            result.diffs.push_back(std::move(message));
        }
    };
    for (const auto& test : cases) {
        if (!test.is_object()) {
            continue;
        }
        const std::string input = test.at("input").get<std::string>();
        std::optional<std::string> base_text;
        if (test.contains("base") && test["base"].is_string()) {
            base_text = test["base"].get<std::string>();
        }
        if (options.skip_idna && requires_idna_mapping(input, base_text)) {
            ++result.skipped;
            continue;
        }
        const bool expect_failure = test.value("failure", false);
        std::optional<urlkit::Url> base;
        if (base_text) {
            auto parsed = urlkit::parse(*base_text);
            if (!parsed) {
                if (expect_failure) {
                    ++result.passed;
                } else {
                    ++result.failed;
                    record_diff(input + ": base failed to parse");
                }
                continue;
            }
            base = std::move(parsed).value();
        }
        auto outcome = urlkit::parse(input, base ? &*base : nullptr);
        if (expect_failure) {
            if (outcome) {
                ++result.failed;
                record_diff(input + ": expected failure, got " + std::string(outcome->href()));
            } else {
                ++result.passed;
            }
            continue;
        }
        if (!outcome) {
            ++result.failed;
            record_diff(input + ": unexpected failure " + std::string(urlkit::to_string(outcome.error())));
            continue;
        }
        const nlohmann::json actual = url_record(input, *outcome);
        bool ok = true;
        for (const char* field : kFields) {
            if (test.contains(field) && test[field] != actual[field]) {
                ok = false;
                record_diff(input + ": " + field + " expected " + test[field].dump() + " got " +
                            actual[field].dump());
                break;
            }
        }
        ok ? ++result.passed : ++result.failed;
    }
    return result;
}

int cmd_conformance(const ConformanceOptions& options, const std::string& path, std::ostream& out,
                    std::ostream& err) {
    std::ifstream file(path);
    if (!file) {
        err << "cannot open " << path << '\n';
        return 2;
    }
    nlohmann::json cases;
    try {
        cases = nlohmann::json::parse(file);
    } catch (const nlohmann::json::exception& e) {
        err << "invalid JSON in " << path << ": " << e.what() << '\n';
        return 2;
    }
    const ConformanceResult result = run_conformance(cases, options);
    for (const auto& diff : result.diffs) {
        out << "FAIL " << diff << '\n';
    }
    out << "passed " << result.passed << ", failed " << result.failed << ", skipped "
        << result.skipped << '\n';
    return result.failed == 0 ? 0 : 1;
}

BenchResult run_bench(const std::vector<std::string>& lines, const BenchOptions& options) {
    BenchResult result;
    const unsigned threads = std::max(1u, options.threads);
    std::vector<uint64_t> sink(threads, 0);
    auto pass = [&] {
        for_each_shard(lines.size(), threads, [&](size_t begin, size_t end, unsigned t) {
            uint64_t local = 0;
            for (size_t i = begin; i < end; ++i) {
                auto outcome = urlkit::parse(lines[i]);
                local += outcome ? outcome->href().size() : 1;
            }
            sink[t] += local;
        });
    };
    for (unsigned i = 0; i < options.warmup; ++i) {
        pass();
    }
    std::vector<double> rates;
    std::vector<double> ns_per_url;
    for (unsigned i = 0; i < std::max(1u, options.iterations); ++i) {
        const auto start = Clock::now();
        pass();
        const uint64_t elapsed = std::max<uint64_t>(1, elapsed_since(start));
        rates.push_back(double(lines.size()) * 1e9 / double(elapsed));
        ns_per_url.push_back(lines.empty() ? 0.0 : double(elapsed) / double(lines.size()));
    }
    volatile uint64_t keep = 0;
    for (uint64_t s : sink) {
        keep = keep + s;
    }
    std::sort(rates.begin(), rates.end());
    std::sort(ns_per_url.begin(), ns_per_url.end());
    result.min_throughput = rates.front();
    result.max_throughput = rates.back();
    result.median_throughput = rates[rates.size() / 2];
    result.median_ns_per_url = ns_per_url[ns_per_url.size() / 2];
    result.report = scan_corpus(lines);
    const uint64_t median_elapsed =
        static_cast<uint64_t>(result.median_ns_per_url * double(lines.size()));
    result.report.finish(median_elapsed);
    return result;
}

int cmd_bench(const BenchOptions& options, const std::string& path, std::ostream& out,
              std::ostream& err) {
    std::ifstream file(path);
    if (!file) {
        err << "cannot open " << path << '\n';
        return 2;
    }
    const std::vector<std::string> lines = read_lines(file);
    if (file.bad()) {
        err << "read error on " << path << '\n';
        return 2;
    }
    const BenchResult r = run_bench(lines, options);
    nlohmann::json j = r.report.to_json();
    j["threads"] = std::max(1u, options.threads);
    j["iterations"] = std::max(1u, options.iterations);
    j["warmup"] = options.warmup;
    j["median_throughput"] = r.median_throughput;
    j["min_throughput"] = r.min_throughput;
    j["max_throughput"] = r.max_throughput;
    j["median_ns_per_url"] = r.median_ns_per_url;
    j["hit_rates"] = {{"tab_newline_scan", r.report.rate(r.report.tab_scan_hits)},
                      {"host", r.report.rate(r.report.host_fast_hits)},
                      {"path", r.report.rate(r.report.path_fast_hits)}};
    out << j.dump(2) << '\n';
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"Parse, normalize and benchmark URLs"};
    app.require_subcommand(1);

    NormalizeOptions normalize;
    std::string normalize_file;
    auto* n = app.add_subcommand("normalize", "Normalize one URL per line");
    n->add_flag("--json", normalize.json, "Emit one JSON record per line");
    n->add_flag("--strict", normalize.strict, "Exit 1 when any line fails to parse");
    n->add_option("--base", normalize.base, "Base URL for relative inputs");
    n->add_option("--threads", normalize.threads, "Worker threads")->check(CLI::PositiveNumber);
    n->add_option("file", normalize_file, "Input file (default: stdin)");

    ConformanceOptions conformance;
    std::string conformance_file;
    auto* c = app.add_subcommand("conformance", "Run a urltestdata-style JSON suite");
    c->add_flag("--skip-idna", conformance.skip_idna, "Skip cases that need IDNA mapping");
    c->add_option("--max-diffs", conformance.max_diffs, "Number of failures to print");
    c->add_option("file", conformance_file, "Test file")->required();

    BenchOptions bench;
    std::string bench_file;
    auto* b = app.add_subcommand("bench", "Measure parsing throughput");
    b->add_option("--iterations", bench.iterations, "Timed passes")->check(CLI::PositiveNumber);
    b->add_option("--warmup", bench.warmup, "Untimed passes");
    b->add_option("--threads", bench.threads, "Worker threads")->check(CLI::PositiveNumber);
    b->add_option("file", bench_file, "Line-delimited URL file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*n) {
        if (normalize_file.empty() || normalize_file == "-") {
            return cmd_normalize(normalize, std::cin, std::cout, std::cerr);
        }
        std::ifstream file(normalize_file);
        if (!file) {
            std::cerr << "cannot open " << normalize_file << '\n';
            return 2;
        }
        return cmd_normalize(normalize, file, std::cout, std::cerr);
    }
    if (*c) {
        return cmd_conformance(conformance, conformance_file, std::cout, std::cerr);
    }
    return cmd_bench(bench, bench_file, std::cout, std::cerr);
}

}  // namespace urltool
