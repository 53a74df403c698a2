#pragma once

#include <array>
#include <cstdint>

#include "char_tables.inc"

namespace urlkit::tables {

constexpr bool in_bitmap(const std::array<uint64_t, 4>& bits, uint8_t c) noexcept {
    return (bits[c >> 6] >> (c & 63)) & 1;
}

constexpr bool is_forbidden_host_code_point(uint8_t c) noexcept {
    return in_bitmap(kForbiddenHostBits, c);
}

constexpr bool is_forbidden_domain_code_point(uint8_t c) noexcept {
    return in_bitmap(kForbiddenDomainBits, c);
}

}  // namespace urlkit::tables
