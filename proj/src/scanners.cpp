#include "urlkit/scanners.h"

#include <array>
#include <cstring>

#if defined(__SSE2__) || defined(_M_X64)
#include <emmintrin.h>
#define URLKIT_SSE2 1
#elif defined(__ARM_NEON) || defined(__aarch64__)
#include <arm_neon.h>
#define URLKIT_NEON 1
#endif

#include "tables.h"

namespace urlkit {

namespace {

constexpr size_t kBlock = 16;

#if defined(URLKIT_SSE2)

bool any_tab_or_newline(std::string_view input) noexcept {
    const char* p = input.data();
    size_t remaining = input.size();
    const __m128i cr = _mm_set1_epi8('\r');
    const __m128i lf = _mm_set1_epi8('\n');
    const __m128i tab = _mm_set1_epi8('\t');
    __m128i running = _mm_setzero_si128();
    for (; remaining >= kBlock; p += kBlock, remaining -= kBlock) {
        const __m128i word = _mm_loadu_si128(reinterpret_cast<const __m128i*>(p));
        running = _mm_or_si128(
            _mm_or_si128(running, _mm_or_si128(_mm_cmpeq_epi8(word, cr), _mm_cmpeq_epi8(word, lf))),
            _mm_cmpeq_epi8(word, tab));
    }
    if (remaining > 0) {
        alignas(16) uint8_t tail[kBlock] = {};
        std::memcpy(tail, p, remaining);
        const __m128i word = _mm_load_si128(reinterpret_cast<const __m128i*>(tail));
        running = _mm_or_si128(
            _mm_or_si128(running, _mm_or_si128(_mm_cmpeq_epi8(word, cr), _mm_cmpeq_epi8(word, lf))),
            _mm_cmpeq_epi8(word, tab));
    }
    return _mm_movemask_epi8(running) != 0;
}

#elif defined(URLKIT_NEON)

bool any_tab_or_newline(std::string_view input) noexcept {
    const uint8_t* p = reinterpret_cast<const uint8_t*>(input.data());
    size_t remaining = input.size();
    const uint8x16_t cr = vdupq_n_u8('\r');
    const uint8x16_t lf = vdupq_n_u8('\n');
    const uint8x16_t tab = vdupq_n_u8('\t');
    uint8x16_t running = vdupq_n_u8(0);
    for (; remaining >= kBlock; p += kBlock, remaining -= kBlock) {
        const uint8x16_t word = vld1q_u8(p);
        running = vorrq_u8(running, vorrq_u8(vorrq_u8(vceqq_u8(word, cr), vceqq_u8(word, lf)),
                                             vceqq_u8(word, tab)));
    }
    if (remaining > 0) {
        uint8_t tail[kBlock] = {};
        std::memcpy(tail, p, remaining);
        const uint8x16_t word = vld1q_u8(tail);
        running = vorrq_u8(running, vorrq_u8(vorrq_u8(vceqq_u8(word, cr), vceqq_u8(word, lf)),
                                             vceqq_u8(word, tab)));
    }
    return vmaxvq_u8(running) != 0;
}

#endif

// Portable version of the same block loop: two 64-bit lanes per block, a
// zero-byte detector per searched character, one branch at the end.
constexpr uint64_t kOnes = 0x0101010101010101ULL;
constexpr uint64_t kHighs = 0x8080808080808080ULL;

constexpr uint64_t zero_byte_mask(uint64_t x) noexcept { return (x - kOnes) & ~x & kHighs; }

constexpr uint64_t match_tab_or_newline(uint64_t word) noexcept {
    return zero_byte_mask(word ^ (kOnes * '\t')) | zero_byte_mask(word ^ (kOnes * '\n')) |
           zero_byte_mask(word ^ (kOnes * '\r'));
}

[[maybe_unused]] bool any_tab_or_newline_swar(std::string_view input) noexcept {
    const char* p = input.data();
    size_t remaining = input.size();
    uint64_t running = 0;
    for (; remaining >= kBlock; p += kBlock, remaining -= kBlock) {
        uint64_t lo;
        uint64_t hi;
        std::memcpy(&lo, p, 8);
        std::memcpy(&hi, p + 8, 8);
        running |= match_tab_or_newline(lo) | match_tab_or_newline(hi);
    }
    if (remaining > 0) {
        // Zero padding never matches: 0x00 is not one of the searched bytes.
        uint8_t tail[kBlock] = {};
        std::memcpy(tail, p, remaining);
        uint64_t lo;
        uint64_t hi;
        std::memcpy(&lo, tail, 8);
        std::memcpy(&hi, tail + 8, 8);
        running |= match_tab_or_newline(lo) | match_tab_or_newline(hi);
    }
    return running != 0;
}

}  // namespace

bool has_tabs_or_newline(std::string_view input) noexcept {
#if defined(URLKIT_SSE2) || defined(URLKIT_NEON)
    return any_tab_or_newline(input);
#else
    return any_tab_or_newline_swar(input);
#endif
}

namespace detail {
bool has_tabs_or_newline_portable(std::string_view input) noexcept {
    return any_tab_or_newline_swar(input);
}
}  // namespace detail

std::string remove_tabs_and_newlines(std::string_view input) {
    std::string out;
    out.reserve(input.size());
    for (char c : input) {
        if (c != '\t' && c != '\n' && c != '\r') {
            out.push_back(c);
        }
    }
    return out;
}

HostScanResult scan_host(std::string_view host) noexcept {
    uint8_t code = 0;
    for (char c : host) {
        code |= tables::kHostClass[static_cast<uint8_t>(c)];
    }
    return HostScanResult{code};
}

PathSignature path_signature(std::string_view path) noexcept {
    uint8_t mask = 0;
    for (char c : path) {
        mask |= tables::kPathClass[static_cast<uint8_t>(c)];
    }
    return PathSignature{mask};
}

std::string_view trim_c0_and_space(std::string_view input) noexcept {
    size_t begin = 0;
    size_t end = input.size();
    while (begin < end && static_cast<uint8_t>(input[begin]) <= 0x20) {
        ++begin;
    }
    while (end > begin && static_cast<uint8_t>(input[end - 1]) <= 0x20) {
        --end;
    }
    return input.substr(begin, end - begin);
}

}  // namespace urlkit
