#include <limits>

#include "tables.h"
#include "urlkit/host.h"
#include "urlkit/scanners.h"

namespace urlkit {

namespace {

// RFC 3492 section 5 parameters.
constexpr uint32_t kBase = 36;
constexpr uint32_t kTMin = 1;
constexpr uint32_t kTMax = 26;
constexpr uint32_t kSkew = 38;
constexpr uint32_t kDamp = 700;
constexpr uint32_t kInitialBias = 72;
constexpr uint32_t kInitialN = 128;
constexpr uint32_t kMaxInt = std::numeric_limits<uint32_t>::max();

constexpr char encode_digit(uint32_t d) noexcept {
    return static_cast<char>(d < 26 ? 'a' + d : '0' + (d - 26));
}

constexpr uint32_t adapt(uint32_t delta, uint32_t num_points, bool first_time) noexcept {
    delta = first_time ? delta / kDamp : delta / 2;
    delta += delta / num_points;
    uint32_t k = 0;
    while (delta > ((kBase - kTMin) * kTMax) / 2) {
        delta /= kBase - kTMin;
        k += kBase;
    }
    return k + (kBase - kTMin + 1) * delta / (delta + kSkew);
}

// Simple lower-case mapping for the scripts most often seen in domain names:
// Latin-1, Latin Extended-A, Greek and Cyrillic.
constexpr char32_t to_lower(char32_t cp) noexcept {
    if (cp < 0x80) {
        return (cp >= 'A' && cp <= 'Z') ? cp + 0x20 : cp;
    }
    if ((cp >= 0xC0 && cp <= 0xDE && cp != 0xD7)) {
        return cp + 0x20;
    }
    if (cp >= 0x100 && cp <= 0x17F) {
        if (cp == 0x130 || cp == 0x131 || cp == 0x138 || cp == 0x149 || cp == 0x17F) {
            return cp;
        }
        const bool odd_pairs = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
        if (odd_pairs) {
            return (cp & 1) ? cp + 1 : cp;
        }
        if (cp == 0x178) {
            return 0xFF;
        }
        return (cp & 1) ? cp : cp + 1;
    }
    if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) {
        return cp + 0x20;
    }
    if (cp >= 0x410 && cp <= 0x42F) {
        return cp + 0x20;
    }
    if (cp >= 0x400 && cp <= 0x40F) {
        return cp + 0x50;
    }
    return cp;
}

// Code points dropped by the IDNA mapping step (soft hyphen, zero-width
// characters, variation selectors, byte order mark).
constexpr bool is_ignored(char32_t cp) noexcept {
    return cp == 0xAD || cp == 0x34F || cp == 0x200B || cp == 0x2060 || cp == 0xFEFF ||
           (cp >= 0x180B && cp <= 0x180D) || (cp >= 0xFE00 && cp <= 0xFE0F);
}

constexpr bool is_label_separator(char32_t cp) noexcept {
    return cp == '.' || cp == 0x3002 || cp == 0xFF0E || cp == 0xFF61;
}

constexpr bool is_disallowed(char32_t cp) noexcept {
    return cp == 0xFFFD || (cp >= 0xD800 && cp <= 0xDFFF) || (cp >= 0xFDD0 && cp <= 0xFDEF) ||
           (cp & 0xFFFE) == 0xFFFE;
}

}  // namespace

Result<std::string> punycode_encode(std::u32string_view label) {
    std::string out;
    for (char32_t c : label) {
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
        }
    }
    const auto basic = static_cast<uint32_t>(out.size());
    uint32_t handled = basic;
    if (basic > 0) {
        out.push_back('-');
    }
    uint32_t n = kInitialN;
    uint32_t delta = 0;
    uint32_t bias = kInitialBias;
    const auto length = static_cast<uint32_t>(label.size());
    while (handled < length) {
        uint32_t m = kMaxInt;
        for (char32_t c : label) {
            if (c >= n && c < m) {
                m = c;
            }
        }
        if (m - n > (kMaxInt - delta) / (handled + 1)) {
            return ParseError::InvalidHost;
        }
        delta += (m - n) * (handled + 1);
        n = m;
        for (char32_t c : label) {
            if (c < n) {
                if (delta == kMaxInt) {
                    return ParseError::InvalidHost;
                }
                ++delta;
            }
            if (c == n) {
                uint32_t q = delta;
                for (uint32_t k = kBase;; k += kBase) {
                    const uint32_t t = k <= bias ? kTMin : (k >= bias + kTMax ? kTMax : k - bias);
                    if (q < t) {
                        break;
                    }
                    out.push_back(encode_digit(t + (q - t) % (kBase - t)));
                    q = (q - t) / (kBase - t);
                }
                out.push_back(encode_digit(q));
                bias = adapt(delta, handled + 1, handled == basic);
                delta = 0;
                ++handled;
            }
        }
        ++delta;
        ++n;
    }
    return out;
}

namespace detail {

bool utf8_to_code_points(std::string_view input, std::u32string& out) {
    size_t i = 0;
    while (i < input.size()) {
        const auto b0 = static_cast<uint8_t>(input[i]);
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        }
        size_t extra;
        char32_t cp;
        char32_t min;
        if ((b0 & 0xE0) == 0xC0) {
            extra = 1, cp = b0 & 0x1F, min = 0x80;
        } else if ((b0 & 0xF0) == 0xE0) {
            extra = 2, cp = b0 & 0x0F, min = 0x800;
        } else if ((b0 & 0xF8) == 0xF0) {
            extra = 3, cp = b0 & 0x07, min = 0x10000;
        } else {
            return false;
        }
        if (i + extra >= input.size()) {
            return false;
        }
        for (size_t k = 1; k <= extra; ++k) {
            const auto b = static_cast<uint8_t>(input[i + k]);
            if ((b & 0xC0) != 0x80) {
                return false;
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            return false;
        }
        out.push_back(cp);
        i += extra + 1;
    }
    return true;
}

}  // namespace detail

Result<std::string_view> domain_to_ascii(std::string_view domain, std::string& storage) {
    const HostScanResult scan = scan_host(domain);
    if (scan.code == 0) {
        if (domain.empty()) {
            return ParseError::InvalidHost;
        }
        return domain;
    }
    if (!scan.has_forbidden()) {
        storage.assign(domain);
        for (char& c : storage) {
            if (c >= 'A' && c <= 'Z') {
                c = static_cast<char>(c + 0x20);
            }
        }
        return std::string_view(storage);
    }

    std::u32string code_points;
    code_points.reserve(domain.size());
    if (!detail::utf8_to_code_points(domain, code_points)) {
        return ParseError::InvalidHost;
    }
    storage.clear();
    std::u32string label;
    auto flush_label = [&]() -> bool {
        bool ascii = true;
        for (char32_t c : label) {
            ascii = ascii && c < 0x80;
        }
        if (ascii) {
            for (char32_t c : label) {
                storage.push_back(static_cast<char>(c));
            }
        } else {
            auto encoded = punycode_encode(label);
            if (!encoded) {
                return false;
            }
            storage.append("xn--");
            storage.append(*encoded);
        }
        label.clear();
        return true;
    };
    for (char32_t cp : code_points) {
        if (cp >= 0xFF01 && cp <= 0xFF5E && cp != 0xFF0E) {
            cp -= 0xFEE0;  // full-width ASCII
        }
        if (is_ignored(cp)) {
            continue;
        }
        if (is_disallowed(cp)) {
            return ParseError::InvalidHost;
        }
        if (is_label_separator(cp)) {
            if (!flush_label()) {
                return ParseError::InvalidHost;
            }
            storage.push_back('.');
            continue;
        }
        label.push_back(to_lower(cp));
    }
    if (!flush_label()) {
        return ParseError::InvalidHost;
    }
    if (storage.empty()) {
        return ParseError::InvalidHost;
    }
    for (char c : storage) {
        if (tables::is_forbidden_domain_code_point(static_cast<uint8_t>(c))) {
            return ParseError::InvalidHost;
        }
    }
    return std::string_view(storage);
}

Result<std::string> domain_to_ascii(std::string_view domain) {
    std::string storage;
    auto result = domain_to_ascii(domain, storage);
    if (!result) {
        return result.error();
    }
    return std::string(*result);
}

}  // namespace urlkit
