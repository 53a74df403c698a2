#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "urlkit/scheme.h"

// Single-pass classifiers that decide whether the expensive normalization
// steps can be skipped.
namespace urlkit {

// Bit 0: forbidden (or non-ASCII, or '%') byte seen. Bit 1: ASCII upper case
// seen. 0 means the host can be copied verbatim.
struct HostScanResult {
    uint8_t code = 0;

    constexpr bool has_forbidden() const noexcept { return (code & 1) != 0; }
    constexpr bool has_upper() const noexcept { return (code & 2) != 0; }
    friend constexpr bool operator==(HostScanResult, HostScanResult) = default;
};

// Bit 0: byte in the path percent-encode set. Bit 1: backslash. Bit 2: dot.
// Bit 3: percent sign. 0 means the path can be copied verbatim.
struct PathSignature {
    static constexpr uint8_t kNeedsEncoding = 1;
    static constexpr uint8_t kBackslash = 2;
    static constexpr uint8_t kDot = 4;
    static constexpr uint8_t kPercent = 8;

    uint8_t mask = 0;

    constexpr bool verbatim() const noexcept { return mask == 0; }
    constexpr bool dots_only() const noexcept { return mask == kDot; }
    friend constexpr bool operator==(PathSignature, PathSignature) = default;
};

// True iff the input contains U+0009, U+000A or U+000D. Reads the input in
// 16-byte blocks and branches once, after the last block.
bool has_tabs_or_newline(std::string_view input) noexcept;

// Slow path for has_tabs_or_newline: copy without 0x09, 0x0A, 0x0D.
std::string remove_tabs_and_newlines(std::string_view input);

HostScanResult scan_host(std::string_view host) noexcept;

PathSignature path_signature(std::string_view path) noexcept;

// Strips leading and trailing C0 control or space bytes (<= 0x20).
std::string_view trim_c0_and_space(std::string_view input) noexcept;

namespace detail {
// The non-vector block loop; selected automatically on targets without SSE2
// or NEON and exposed so it can be tested everywhere.
bool has_tabs_or_newline_portable(std::string_view input) noexcept;
}  // namespace detail

}  // namespace urlkit
