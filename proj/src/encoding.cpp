#include "urlkit/encoding.h"

#include "tables.h"

namespace urlkit {

namespace encode_sets {
const EncodeSet c0_control{tables::kC0ControlBits};
const EncodeSet fragment{tables::kFragmentBits};
const EncodeSet query{tables::kQueryBits};
const EncodeSet special_query{tables::kSpecialQueryBits};
const EncodeSet path{tables::kPathBits};
const EncodeSet userinfo{tables::kUserinfoBits};
const EncodeSet component{tables::kComponentBits};
}  // namespace encode_sets

namespace {

constexpr char kHexUpper[] = "0123456789ABCDEF";

constexpr int hex_value(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

constexpr bool is_ascii_alpha(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

}  // namespace

size_t first_to_encode(std::string_view input, const EncodeSet& set) noexcept {
    for (size_t i = 0; i < input.size(); ++i) {
        if (set.contains(input[i])) {
            return i;
        }
    }
    return input.size();
}

bool append_percent_encoded(std::string& out, std::string_view input, const EncodeSet& set) {
    size_t first = first_to_encode(input, set);
    if (first == input.size()) {
        out.append(input);
        return false;
    }
    out.append(input.substr(0, first));
    for (size_t i = first; i < input.size(); ++i) {
        const auto c = static_cast<uint8_t>(input[i]);
        if (set.contains(c)) {
            const char escaped[3] = {'%', kHexUpper[c >> 4], kHexUpper[c & 0xF]};
            out.append(escaped, 3);
        } else {
            out.push_back(static_cast<char>(c));
        }
    }
    return true;
}

std::string_view percent_encode(std::string_view input, const EncodeSet& set,
                                std::string& storage) {
    if (first_to_encode(input, set) == input.size()) {
        return input;
    }
    storage.clear();
    append_percent_encoded(storage, input, set);
    return storage;
}

std::string percent_encode(std::string_view input, const EncodeSet& set) {
    std::string out;
    out.reserve(input.size());
    append_percent_encoded(out, input, set);
    return out;
}

std::string percent_decode(std::string_view input) {
    std::string out;
    out.reserve(input.size());
    for (size_t i = 0; i < input.size(); ++i) {
        if (input[i] == '%' && i + 2 < input.size()) {
            const int hi = hex_value(input[i + 1]);
            const int lo = hex_value(input[i + 2]);
            if (hi >= 0 && lo >= 0) {
                out.push_back(static_cast<char>(hi * 16 + lo));
                i += 2;
                continue;
            }
        }
        out.push_back(input[i]);
    }
    return out;
}

namespace detail {

bool is_windows_drive_letter(std::string_view s) noexcept {
    return s.size() == 2 && is_ascii_alpha(s[0]) && (s[1] == ':' || s[1] == '|');
}

bool is_normalized_windows_drive_letter(std::string_view s) noexcept {
    return s.size() == 2 && is_ascii_alpha(s[0]) && s[1] == ':';
}

bool starts_with_windows_drive_letter(std::string_view s) noexcept {
    if (s.size() < 2 || !is_windows_drive_letter(s.substr(0, 2))) {
        return false;
    }
    if (s.size() == 2) {
        return true;
    }
    const char c = s[2];
    return c == '/' || c == '\\' || c == '?' || c == '#';
}

bool is_single_dot_segment(std::string_view s) noexcept {
    if (s.size() == 1) {
        return s[0] == '.';
    }
    return s.size() == 3 && s[0] == '%' && s[1] == '2' && (s[2] == 'e' || s[2] == 'E');
}

bool is_double_dot_segment(std::string_view s) noexcept {
    auto dot_at = [&](size_t& i) {
        if (i < s.size() && s[i] == '.') {
            i += 1;
            return true;
        }
        if (i + 3 <= s.size() && s[i] == '%' && s[i + 1] == '2' &&
            (s[i + 2] == 'e' || s[i + 2] == 'E')) {
            i += 3;
            return true;
        }
        return false;
    };
    if (s.size() != 2 && s.size() != 4 && s.size() != 6) {
        return false;
    }
    size_t i = 0;
    return dot_at(i) && dot_at(i) && i == s.size();
}

void shorten_path(std::string& out, size_t path_start, bool is_file) {
    const std::string_view path = std::string_view(out).substr(path_start);
    if (path.empty()) {
        return;
    }
    if (is_file && path.size() == 3 && is_normalized_windows_drive_letter(path.substr(1))) {
        return;
    }
    const size_t last = path.rfind('/');
    out.resize(path_start + last);
}

void append_path_segments(std::string& out, size_t path_start, std::string_view segments,
                          bool is_special, bool is_file) {
    const std::string_view separators = is_special ? std::string_view("/\\", 2) : "/";
    size_t pos = 0;
    while (true) {
        const size_t end = segments.find_first_of(separators, pos);
        const bool last = end == std::string_view::npos;
        const std::string_view segment =
            last ? segments.substr(pos) : segments.substr(pos, end - pos);
        if (is_double_dot_segment(segment)) {
            shorten_path(out, path_start, is_file);
            if (last) {
                out.push_back('/');
            }
        } else if (is_single_dot_segment(segment)) {
            if (last) {
                out.push_back('/');
            }
        } else {
            const bool path_empty = out.size() == path_start;
            out.push_back('/');
            if (is_file && path_empty && is_windows_drive_letter(segment)) {
                out.push_back(segment[0]);
                out.push_back(':');
            } else {
                append_percent_encoded(out, segment, encode_sets::path);
            }
        }
        if (last) {
            break;
        }
        pos = end + 1;
    }
}

int append_normalized_path(std::string& out, std::string_view segments, PathSignature signature,
                           bool is_special) {
    const size_t path_start = out.size();
    if (signature.verbatim()) {
        out.reserve(out.size() + segments.size() + 1);
        out.push_back('/');
        out.append(segments);
        return 1;
    }
    if (signature.dots_only()) {
        // Only '/' separators, literal '.' segments, nothing to encode.
        size_t pos = 0;
        while (true) {
            const size_t end = segments.find('/', pos);
            const bool last = end == std::string_view::npos;
            const std::string_view segment =
                last ? segments.substr(pos) : segments.substr(pos, end - pos);
            if (segment == "..") {
                shorten_path(out, path_start, false);
                if (last) out.push_back('/');
            } else if (segment == ".") {
                if (last) out.push_back('/');
            } else {
                out.push_back('/');
                out.append(segment);
            }
            if (last) break;
            pos = end + 1;
        }
        return 2;
    }
    append_path_segments(out, path_start, segments, is_special, false);
    return 3;
}

}  // namespace detail

std::string normalize_path(std::string_view input, PathSignature signature, bool is_special) {
    if (!input.empty() && (input[0] == '/' || (is_special && input[0] == '\\'))) {
        input.remove_prefix(1);
    }
    std::string out;
    out.reserve(input.size() + 1);
    detail::append_normalized_path(out, input, signature, is_special);
    return out;
}

}  // namespace urlkit
