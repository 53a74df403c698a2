#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "urlkit/error.h"
#include "urlkit/scheme.h"

namespace urlkit {

struct Ipv4Address {
    uint32_t value = 0;

    // Four decimal octets joined by '.'.
    std::string to_string() const;
    friend bool operator==(const Ipv4Address&, const Ipv4Address&) = default;
};

struct Ipv6Address {
    std::array<uint16_t, 8> pieces{};

    // Lower-case hex pieces; the leftmost longest run of two or more zero
    // pieces is written as "::". No brackets.
    std::string to_string() const;
    friend bool operator==(const Ipv6Address&, const Ipv6Address&) = default;
};

// Dotted form with 1 to 4 parts, each decimal, octal ("0" prefix) or hex
// ("0x" prefix). The last part fills the remaining bytes.
Result<Ipv4Address> parse_ipv4(std::string_view input);

// Text between the brackets. Accepts one "::" and a dotted IPv4 tail.
Result<Ipv6Address> parse_ipv6(std::string_view input);

// True when the last dot-separated label (ignoring one trailing dot) is all
// digits or a "0x" hex number, i.e. the host must be parsed as IPv4.
bool ends_in_a_number(std::string_view input) noexcept;

// RFC 3492 Bootstring encoding (no "xn--" prefix). Fails on overflow.
Result<std::string> punycode_encode(std::u32string_view label);

// Domain to ASCII for a percent-decoded UTF-8 domain. Lower-case ASCII
// domains are returned as-is (the returned view aliases `domain`); ASCII
// with upper case is lower-cased; labels with non-ASCII code points are case
// folded and punycode-encoded with an "xn--" prefix. Only an ASCII
// lower-casing, a few common width/dot mappings and structural checks are
// applied; the full UTS #46 mapping tables are not.
Result<std::string_view> domain_to_ascii(std::string_view domain, std::string& storage);
Result<std::string> domain_to_ascii(std::string_view domain);

// Host parser: "[...]" is IPv6, non-special hosts are opaque (percent-encoded
// with the C0 control set), everything else is a percent-decoded domain that
// may turn out to be IPv4. Returns the serialized host.
Result<std::string> parse_host(std::string_view input, bool is_special);

// Decimal port after the ':' separator. Empty input and the scheme's default
// port yield nullopt.
Result<std::optional<uint16_t>> parse_port(std::string_view input, SchemeType scheme);

// Which branch of the host parser handled a host.
enum class HostRoute : uint8_t { None, Fast, Slow, Ipv4, Ipv6, Opaque };

namespace detail {

// parse_host writing straight into `out`. On failure `out` may contain a
// partial host; the caller truncates it.
std::optional<ParseError> append_host(std::string& out, std::string_view input, bool is_special,
                                      HostRoute* route = nullptr);

// Decodes well-formed UTF-8; returns false on malformed input.
bool utf8_to_code_points(std::string_view input, std::u32string& out);

}  // namespace detail

}  // namespace urlkit
