#pragma once

#include <optional>
#include <string_view>

#include "urlkit/error.h"
#include "urlkit/host.h"
#include "urlkit/url.h"

namespace urlkit {

using ParseOutcome = Result<Url>;

// Records which fast paths a parse took. Filled only when passed to parse().
struct ParseTrace {
    bool removed_tabs_or_newlines = false;
    HostRoute host_route = HostRoute::None;
    // 1 = verbatim copy, 2 = dot segments only, 3 = full processing, 0 = no
    // tiered path normalization (opaque path, base-relative path, file URL).
    int path_tier = 0;
};

// Parses `input` (UTF-8) against an optional base URL into a normalized Url.
ParseOutcome parse(std::string_view input, const Url* base = nullptr,
                   ParseTrace* trace = nullptr);

// True iff parse(input, parse(base)) succeeds.
bool can_parse(std::string_view input, std::optional<std::string_view> base = std::nullopt);

}  // namespace urlkit
