#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "urlkit/scanners.h"

namespace urlkit {

// A percent-encode set: membership for every byte value. Bytes >= 0x80 are
// members of every set.
struct EncodeSet {
    std::array<uint64_t, 4> bits{};

    constexpr bool contains(uint8_t c) const noexcept { return (bits[c >> 6] >> (c & 63)) & 1; }
    constexpr bool contains(char c) const noexcept { return contains(static_cast<uint8_t>(c)); }
    // True iff every member of *this is also a member of other.
    constexpr bool subset_of(const EncodeSet& other) const noexcept {
        for (size_t i = 0; i < bits.size(); ++i) {
            if ((bits[i] & ~other.bits[i]) != 0) {
                return false;
            }
        }
        return true;
    }
};

namespace encode_sets {
extern const EncodeSet c0_control;
extern const EncodeSet fragment;
extern const EncodeSet query;
extern const EncodeSet special_query;
extern const EncodeSet path;
extern const EncodeSet userinfo;
extern const EncodeSet component;
}  // namespace encode_sets

// Returns the index of the first byte of `input` that belongs to `set`, or
// input.size() when nothing needs encoding.
size_t first_to_encode(std::string_view input, const EncodeSet& set) noexcept;

// Appends `input` to `out`, replacing members of `set` by "%XX" (upper-case
// hex). Returns true if any byte was encoded.
bool append_percent_encoded(std::string& out, std::string_view input, const EncodeSet& set);

// Returns `input` itself when no byte needs encoding; otherwise writes the
// encoded form into `storage` and returns a view of it.
std::string_view percent_encode(std::string_view input, const EncodeSet& set,
                                std::string& storage);

std::string percent_encode(std::string_view input, const EncodeSet& set);

// "%XX" with two hex digits becomes the byte; malformed sequences are kept.
std::string percent_decode(std::string_view input);

// Normalizes a non-opaque path. `input` is the path text as it appears after
// the authority (a leading '/' is consumed as the path separator, and a '/'
// is prefixed when missing). The result always starts with '/'.
//
//   signature == 0          copied verbatim
//   only the dot bit set    "." / ".." segments resolved, nothing encoded
//   otherwise               '\' folding (special), percent-encoding, "%2e"
//                           treated as '.'
std::string normalize_path(std::string_view input, PathSignature signature, bool is_special);

namespace detail {

// A path is stored as its serialization: "" is the empty list, "/" is [""],
// "/a/b" is ["a", "b"]. `path_start` indexes the first byte of the path in
// `out`; everything from there to out.size() is the current path.

// Runs the path state over `segments` (the text after the separator that
// started the path), appending to the path. Handles every case, including
// file drive letters when `is_file` is set.
void append_path_segments(std::string& out, size_t path_start, std::string_view segments,
                          bool is_special, bool is_file);

// Tiered version of append_path_segments for an empty path of a non-file
// URL. Returns the tier used (1, 2 or 3).
int append_normalized_path(std::string& out, std::string_view segments,
                           PathSignature signature, bool is_special);

// Removes the last path segment, keeping a lone normalized drive letter of a
// file URL.
void shorten_path(std::string& out, size_t path_start, bool is_file);

bool is_windows_drive_letter(std::string_view s) noexcept;
bool is_normalized_windows_drive_letter(std::string_view s) noexcept;
bool starts_with_windows_drive_letter(std::string_view s) noexcept;
bool is_single_dot_segment(std::string_view s) noexcept;
bool is_double_dot_segment(std::string_view s) noexcept;

}  // namespace detail

}  // namespace urlkit
