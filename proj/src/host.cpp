#include <charconv>

#include "tables.h"
#include "urlkit/encoding.h"
#include "urlkit/host.h"
#include "urlkit/scanners.h"

namespace urlkit {

namespace {

constexpr bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

constexpr int hex_value(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

// IPv4 number parser; values above 2^32 saturate, which is enough to fail the
// range checks.
std::optional<uint64_t> parse_ipv4_number(std::string_view input) noexcept {
    if (input.empty()) {
        return std::nullopt;
    }
    unsigned radix = 10;
    if (input.size() >= 2 && input[0] == '0' && (input[1] == 'x' || input[1] == 'X')) {
        input.remove_prefix(2);
        radix = 16;
    } else if (input.size() >= 2 && input[0] == '0') {
        input.remove_prefix(1);
        radix = 8;
    }
    constexpr uint64_t kCap = uint64_t{1} << 40;
    uint64_t value = 0;
    for (char c : input) {
        const int digit = hex_value(c);
        if (digit < 0 || static_cast<unsigned>(digit) >= radix) {
            return std::nullopt;
        }
        value = value * radix + static_cast<unsigned>(digit);
        if (value > kCap) {
            value = kCap;
        }
    }
    return value;
}

void append_decimal(std::string& out, uint32_t value) {
    char buf[10];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, end);
}

void append_ipv4(std::string& out, uint32_t value) {
    for (int shift = 24; shift >= 0; shift -= 8) {
        append_decimal(out, (value >> shift) & 0xFF);
        if (shift != 0) {
            out.push_back('.');
        }
    }
}

void append_ipv6(std::string& out, const std::array<uint16_t, 8>& pieces) {
    // Leftmost longest run of zero pieces, if at least two long.
    int compress = -1;
    int best = 1;
    for (int i = 0; i < 8;) {
        if (pieces[i] != 0) {
            ++i;
            continue;
        }
        int j = i;
        while (j < 8 && pieces[j] == 0) {
            ++j;
        }
        if (j - i > best) {
            best = j - i;
            compress = i;
        }
        i = j;
    }
    char buf[4];
    bool skipping = false;
    for (int i = 0; i < 8; ++i) {
        if (skipping && pieces[i] == 0) {
            continue;
        }
        skipping = false;
        if (i == compress) {
            out.append(i == 0 ? "::" : ":");
            skipping = true;
            continue;
        }
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), pieces[i], 16);
        out.append(buf, end);
        if (i != 7) {
            out.push_back(':');
        }
    }
}

}  // namespace

std::string Ipv4Address::to_string() const {
    std::string out;
    append_ipv4(out, value);
    return out;
}

std::string Ipv6Address::to_string() const {
    std::string out;
    append_ipv6(out, pieces);
    return out;
}

bool ends_in_a_number(std::string_view input) noexcept {
    if (!input.empty() && input.back() == '.') {
        if (input.size() == 1) {
            return false;
        }
        input.remove_suffix(1);
    }
    const size_t dot = input.rfind('.');
    const std::string_view last = dot == std::string_view::npos ? input : input.substr(dot + 1);
    if (last.empty()) {
        return false;
    }
    bool all_digits = true;
    for (char c : last) {
        all_digits = all_digits && is_digit(c);
    }
    if (all_digits) {
        return true;
    }
    if (last.size() >= 2 && last[0] == '0' && (last[1] == 'x' || last[1] == 'X')) {
        for (char c : last.substr(2)) {
            if (hex_value(c) < 0) {
                return false;
            }
        }
        return true;
    }
    return false;
}

Result<Ipv4Address> parse_ipv4(std::string_view input) {
    if (!input.empty() && input.back() == '.' && input.size() > 1) {
        input.remove_suffix(1);
    }
    uint64_t numbers[4];
    size_t count = 0;
    size_t pos = 0;
    while (true) {
        if (count == 4) {
            return ParseError::InvalidIPv4;
        }
        const size_t dot = input.find('.', pos);
        const std::string_view part =
            dot == std::string_view::npos ? input.substr(pos) : input.substr(pos, dot - pos);
        const auto number = parse_ipv4_number(part);
        if (!number) {
            return ParseError::InvalidIPv4;
        }
        numbers[count++] = *number;
        if (dot == std::string_view::npos) {
            break;
        }
        pos = dot + 1;
    }
    for (size_t i = 0; i + 1 < count; ++i) {
        if (numbers[i] > 255) {
            return ParseError::InvalidIPv4;
        }
    }
    const uint64_t limit = uint64_t{1} << (8 * (5 - count));
    if (numbers[count - 1] >= limit) {
        return ParseError::InvalidIPv4;
    }
    uint64_t value = numbers[count - 1];
    for (size_t i = 0; i + 1 < count; ++i) {
        value += numbers[i] << (8 * (3 - i));
    }
    return Ipv4Address{static_cast<uint32_t>(value)};
}

Result<Ipv6Address> parse_ipv6(std::string_view input) {
    std::array<uint16_t, 8> address{};
    int piece_index = 0;
    int compress = -1;
    size_t p = 0;
    const size_t n = input.size();
    auto at = [&](size_t i) -> char { return i < n ? input[i] : '\0'; };

    if (at(p) == ':') {
        if (at(p + 1) != ':') {
            return ParseError::InvalidIPv6;
        }
        p += 2;
        compress = ++piece_index;
    }
    while (p < n) {
        if (piece_index == 8) {
            return ParseError::InvalidIPv6;
        }
        if (input[p] == ':') {
            if (compress != -1) {
                return ParseError::InvalidIPv6;
            }
            ++p;
            compress = ++piece_index;
            continue;
        }
        unsigned value = 0;
        size_t length = 0;
        while (length < 4 && p < n && hex_value(input[p]) >= 0) {
            value = value * 16 + static_cast<unsigned>(hex_value(input[p]));
            ++p;
            ++length;
        }
        if (at(p) == '.') {
            if (length == 0) {
                return ParseError::InvalidIPv6;
            }
            p -= length;
            if (piece_index > 6) {
                return ParseError::InvalidIPv6;
            }
            int numbers_seen = 0;
            while (p < n) {
                int ipv4_piece = -1;
                if (numbers_seen > 0) {
                    if (input[p] == '.' && numbers_seen < 4) {
                        ++p;
                    } else {
                        return ParseError::InvalidIPv6;
                    }
                }
                if (!is_digit(at(p))) {
                    return ParseError::InvalidIPv6;
                }
                while (is_digit(at(p))) {
                    const int number = input[p] - '0';
                    if (ipv4_piece == -1) {
                        ipv4_piece = number;
                    } else if (ipv4_piece == 0) {
                        return ParseError::InvalidIPv6;
                    } else {
                        ipv4_piece = ipv4_piece * 10 + number;
                    }
                    if (ipv4_piece > 255) {
                        return ParseError::InvalidIPv6;
                    }
                    ++p;
                }
                address[piece_index] =
                    static_cast<uint16_t>(address[piece_index] * 0x100 + ipv4_piece);
                ++numbers_seen;
                if (numbers_seen == 2 || numbers_seen == 4) {
                    ++piece_index;
                }
            }
            if (numbers_seen != 4) {
                return ParseError::InvalidIPv6;
            }
            break;
        }
        if (at(p) == ':') {
            ++p;
            if (p >= n) {
                return ParseError::InvalidIPv6;
            }
        } else if (p < n) {
            return ParseError::InvalidIPv6;
        }
        address[piece_index++] = static_cast<uint16_t>(value);
    }
    if (compress != -1) {
        int swaps = piece_index - compress;
        piece_index = 7;
        while (piece_index != 0 && swaps > 0) {
            std::swap(address[piece_index], address[compress + swaps - 1]);
            --piece_index;
            --swaps;
        }
    } else if (piece_index != 8) {
        return ParseError::InvalidIPv6;
    }
    return Ipv6Address{address};
}

Result<std::optional<uint16_t>> parse_port(std::string_view input, SchemeType scheme) {
    if (input.empty()) {
        return std::optional<uint16_t>{};
    }
    uint32_t value = 0;
    for (char c : input) {
        if (!is_digit(c)) {
            return ParseError::InvalidInput;
        }
        value = value * 10 + static_cast<uint32_t>(c - '0');
        if (value > 65535) {
            return ParseError::PortOutOfRange;
        }
    }
    if (scheme == SchemeType::File) {
        return ParseError::InvalidInput;
    }
    if (default_port(scheme) == value) {
        return std::optional<uint16_t>{};
    }
    return std::optional<uint16_t>{static_cast<uint16_t>(value)};
}

namespace detail {

std::optional<ParseError> append_host(std::string& out, std::string_view input, bool is_special,
                                      HostRoute* route) {
    auto set_route = [&](HostRoute r) {
        if (route != nullptr) {
            *route = r;
        }
    };
    if (!input.empty() && input[0] == '[') {
        set_route(HostRoute::Ipv6);
        if (input.size() < 2 || input.back() != ']') {
            return ParseError::InvalidIPv6;
        }
        auto address = parse_ipv6(input.substr(1, input.size() - 2));
        if (!address) {
            return address.error();
        }
        out.push_back('[');
        append_ipv6(out, address->pieces);
        out.push_back(']');
        return std::nullopt;
    }
    if (!is_special) {
        set_route(HostRoute::Opaque);
        for (char c : input) {
            if (tables::is_forbidden_host_code_point(static_cast<uint8_t>(c))) {
                return ParseError::InvalidHost;
            }
        }
        append_percent_encoded(out, input, encode_sets::c0_control);
        return std::nullopt;
    }

    // Optimistic route: no escapes, lower-case (or upper-case) ASCII.
    const HostScanResult scan = scan_host(input);
    if (!scan.has_forbidden() && !input.empty()) {
        if (ends_in_a_number(input)) {
            set_route(HostRoute::Ipv4);
            auto address = parse_ipv4(input);
            if (!address) {
                return address.error();
            }
            append_ipv4(out, address->value);
            return std::nullopt;
        }
        set_route(HostRoute::Fast);
        const size_t start = out.size();
        out.append(input);
        if (scan.has_upper()) {
            for (size_t i = start; i < out.size(); ++i) {
                if (out[i] >= 'A' && out[i] <= 'Z') {
                    out[i] = static_cast<char>(out[i] + 0x20);
                }
            }
        }
        return std::nullopt;
    }

    set_route(HostRoute::Slow);
    std::string decoded;
    std::string_view domain = input;
    if (input.find('%') != std::string_view::npos) {
        decoded = percent_decode(input);
        domain = decoded;
    }
    std::string storage;
    auto ascii = domain_to_ascii(domain, storage);
    if (!ascii) {
        return ascii.error();
    }
    if (ends_in_a_number(*ascii)) {
        set_route(HostRoute::Ipv4);
        auto address = parse_ipv4(*ascii);
        if (!address) {
            return address.error();
        }
        append_ipv4(out, address->value);
        return std::nullopt;
    }
    out.append(*ascii);
    return std::nullopt;
}

}  // namespace detail

Result<std::string> parse_host(std::string_view input, bool is_special) {
    std::string out;
    if (auto error = detail::append_host(out, input, is_special)) {
        if (*error == ParseError::InvalidHost && is_special && input.empty()) {
            return ParseError::MissingHost;
        }
        return *error;
    }
    if (is_special && out.empty()) {
        return ParseError::MissingHost;
    }
    return out;
}

}  // namespace urlkit
