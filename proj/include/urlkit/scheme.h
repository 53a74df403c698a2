#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace urlkit {

// Special schemes are identified by an integer so that later checks are a
// single comparison. The values are fixed by the hash in
// scheme_type_from_string: (2 * length + first byte) & 7.
enum class SchemeType : uint8_t {
    Http = 0,
    NotSpecial = 1,
    Https = 2,
    Ws = 3,
    Ftp = 4,
    Wss = 5,
    File = 6,
};

// Perfect hash over the six special schemes. `scheme` must already be
// lowercase and must not include the trailing ':'.
constexpr SchemeType scheme_type_from_string(std::string_view scheme) noexcept {
    constexpr std::string_view kNames[8] = {"http", "", "https", "ws", "ftp", "wss", "file", ""};
    if (scheme.empty()) {
        return SchemeType::NotSpecial;
    }
    const unsigned hash =
        (2u * static_cast<unsigned>(scheme.size()) + static_cast<unsigned char>(scheme[0])) & 7u;
    if (kNames[hash] == scheme) {
        return static_cast<SchemeType>(hash);
    }
    return SchemeType::NotSpecial;
}

constexpr bool is_special(SchemeType type) noexcept { return type != SchemeType::NotSpecial; }

constexpr std::optional<uint16_t> default_port(SchemeType type) noexcept {
    switch (type) {
    case SchemeType::Http:
    case SchemeType::Ws: return 80;
    case SchemeType::Https:
    case SchemeType::Wss: return 443;
    case SchemeType::Ftp: return 21;
    case SchemeType::File:
    case SchemeType::NotSpecial: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace urlkit
