#pragma once

// Naive byte-at-a-time reference implementations. They are written directly
// from the URL Standard's prose definitions and share no tables or helpers
// with the library, so that agreement between the two is meaningful.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "urlkit/scheme.h"

namespace oracle {

inline bool has_tabs_or_newline(std::string_view s) {
    for (char c : s) {
        if (c == '\t' || c == '\n' || c == '\r') {
            return true;
        }
    }
    return false;
}

inline std::string remove_tabs_and_newlines(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c != '\t' && c != '\n' && c != '\r') {
            out.push_back(c);
        }
    }
    return out;
}

inline bool is_forbidden_host_code_point(unsigned char c) {
    return c == 0x00 || c == 0x09 || c == 0x0A || c == 0x0D ||
           std::string_view(" #/:<>?@[\\]^|").find(static_cast<char>(c)) != std::string_view::npos;
}

inline bool is_forbidden_domain_code_point(unsigned char c) {
    return is_forbidden_host_code_point(c) || c <= 0x1F || c == '%' || c == 0x7F;
}

inline uint8_t scan_host(std::string_view s) {
    uint8_t code = 0;
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        if (is_forbidden_domain_code_point(c) || c >= 0x80) {
            code |= 1;
        }
        if (c >= 'A' && c <= 'Z') {
            code |= 2;
        }
    }
    return code;
}

inline bool in_c0_control_set(unsigned char c) { return c <= 0x1F || c > 0x7E; }

inline bool in_fragment_set(unsigned char c) {
    return in_c0_control_set(c) || c == ' ' || c == '"' || c == '<' || c == '>' || c == '`';
}

inline bool in_query_set(unsigned char c) {
    return in_c0_control_set(c) || c == ' ' || c == '"' || c == '#' || c == '<' || c == '>';
}

inline bool in_special_query_set(unsigned char c) { return in_query_set(c) || c == '\''; }

inline bool in_path_set(unsigned char c) {
    return in_query_set(c) || c == '?' || c == '`' || c == '{' || c == '}';
}

inline bool in_userinfo_set(unsigned char c) {
    return in_path_set(c) || c == '/' || c == ':' || c == ';' || c == '=' || c == '@' ||
           (c >= '[' && c <= '^') || c == '|';
}

inline bool in_component_set(unsigned char c) {
    return in_userinfo_set(c) || (c >= '$' && c <= '&') || c == '+' || c == ',';
}

inline uint8_t path_signature(std::string_view s) {
    uint8_t mask = 0;
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        if (in_path_set(c)) mask |= 1;
        if (c == '\\') mask |= 2;
        if (c == '.') mask |= 4;
        if (c == '%') mask |= 8;
    }
    return mask;
}

inline urlkit::SchemeType scheme_type(std::string_view s) {
    if (s == "http") return urlkit::SchemeType::Http;
    if (s == "https") return urlkit::SchemeType::Https;
    if (s == "ws") return urlkit::SchemeType::Ws;
    if (s == "wss") return urlkit::SchemeType::Wss;
    if (s == "ftp") return urlkit::SchemeType::Ftp;
    if (s == "file") return urlkit::SchemeType::File;
    return urlkit::SchemeType::NotSpecial;
}

inline std::string percent_encode(std::string_view s, bool (*in_set)(unsigned char)) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        if (in_set(c)) {
            out.push_back('%');
            out.push_back(kHex[c >> 4]);
            out.push_back(kHex[c & 15]);
        } else {
            out.push_back(ch);
        }
    }
    return out;
}

inline bool is_single_dot(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s == "." || s == "%2e";
}

inline bool is_double_dot(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s == ".." || s == ".%2e" || s == "%2e." || s == "%2e%2e";
}

// Path state over a list of segments, for a non-file URL whose path starts
// empty. `input` excludes the leading slash.
inline std::string normalize_path(std::string_view input, bool special) {
    std::vector<std::string> path;
    std::string buffer;
    for (size_t i = 0;; ++i) {
        const bool end = i == input.size();
        const char c = end ? '\0' : input[i];
        if (end || c == '/' || (special && c == '\\')) {
            if (is_double_dot(buffer)) {
                if (!path.empty()) path.pop_back();
                if (end) path.emplace_back();
            } else if (is_single_dot(buffer)) {
                if (end) path.emplace_back();
            } else {
                path.push_back(buffer);
            }
            buffer.clear();
            if (end) break;
        } else {
            buffer += percent_encode(std::string_view(&input[i], 1), in_path_set);
        }
    }
    std::string out;
    for (const auto& segment : path) {
        out += '/';
        out += segment;
    }
    return out;
}

// Random strings drawn mostly from an alphabet that exercises the classes
// under test, with occasional arbitrary bytes.
inline std::string random_string(std::mt19937_64& rng, std::string_view alphabet, size_t max_len) {
    std::uniform_int_distribution<size_t> len_dist(0, max_len);
    std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> coin(0, 15);
    std::string s(len_dist(rng), '\0');
    for (auto& c : s) {
        c = coin(rng) == 0 ? static_cast<char>(byte(rng)) : alphabet[pick(rng)];
    }
    return s;
}

}  // namespace oracle
