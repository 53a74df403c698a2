#include "urlkit/url.h"

#include <charconv>
#include <string>

#include "urlkit/encoding.h"
#include "urlkit/host.h"
#include "urlkit/parser.h"
#include "urlkit/scanners.h"

namespace urlkit {

namespace {

constexpr bool is_alpha(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

constexpr bool is_scheme_char(char c) noexcept {
    return is_alpha(c) || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
}

constexpr uint32_t u32(size_t v) noexcept { return static_cast<uint32_t>(v); }

}  // namespace

uint32_t Url::path_end() const noexcept {
    if (has_search()) {
        return components_.search_start;
    }
    return has_hash() ? components_.hash_start : u32(buffer_.size());
}

uint32_t Url::search_end() const noexcept {
    return has_hash() ? components_.hash_start : u32(buffer_.size());
}

bool Url::has_path_marker() const noexcept {
    return !has_host() && components_.pathname_start == components_.host_end + 2;
}

uint32_t Url::authority_end() const noexcept {
    return components_.pathname_start - (has_path_marker() ? 2 : 0);
}

bool Url::has_credentials() const noexcept {
    return has_host() && components_.host_start > components_.protocol_end + 2;
}

std::string_view Url::protocol() const noexcept {
    return std::string_view(buffer_).substr(0, components_.protocol_end);
}

std::string_view Url::username() const noexcept {
    if (!has_credentials()) {
        return {};
    }
    const uint32_t begin = components_.protocol_end + 2;
    return std::string_view(buffer_).substr(begin, components_.username_end - begin);
}

std::string_view Url::password() const noexcept {
    const uint32_t u = components_.username_end;
    if (!has_credentials() || buffer_[u] != ':') {
        return {};
    }
    return std::string_view(buffer_).substr(u + 1, components_.host_start - 1 - (u + 1));
}

std::string_view Url::hostname() const noexcept {
    return std::string_view(buffer_).substr(components_.host_start,
                                            components_.host_end - components_.host_start);
}

std::string_view Url::host() const noexcept {
    return std::string_view(buffer_).substr(components_.host_start,
                                            authority_end() - components_.host_start);
}

std::string_view Url::port() const noexcept {
    if (components_.port == UrlComponents::omitted) {
        return {};
    }
    const uint32_t begin = components_.host_end + 1;
    return std::string_view(buffer_).substr(begin, authority_end() - begin);
}

std::optional<uint16_t> Url::port_number() const noexcept {
    if (components_.port == UrlComponents::omitted) {
        return std::nullopt;
    }
    return static_cast<uint16_t>(components_.port);
}

std::string_view Url::pathname() const noexcept {
    return std::string_view(buffer_).substr(components_.pathname_start,
                                            path_end() - components_.pathname_start);
}

std::string_view Url::search() const noexcept {
    if (!has_search() || search_end() - components_.search_start <= 1) {
        return {};
    }
    return std::string_view(buffer_).substr(components_.search_start,
                                            search_end() - components_.search_start);
}

std::string_view Url::hash() const noexcept {
    if (!has_hash() || buffer_.size() - components_.hash_start <= 1) {
        return {};
    }
    return std::string_view(buffer_).substr(components_.hash_start);
}

bool Url::check_invariants() const {
    const UrlComponents& c = components_;
    const auto size = u32(buffer_.size());
    if (c.protocol_end == 0 || c.protocol_end > size || buffer_[c.protocol_end - 1] != ':') {
        return false;
    }
    if (scheme_type_from_string(std::string_view(buffer_).substr(0, c.protocol_end - 1)) != type_) {
        return false;
    }
    if (!(c.protocol_end <= c.username_end && c.username_end <= c.host_start &&
          c.host_start <= c.host_end && c.host_end <= c.pathname_start &&
          c.pathname_start <= size)) {
        return false;
    }
    if (has_search() &&
        (c.search_start < c.pathname_start || c.search_start >= size || buffer_[c.search_start] != '?')) {
        return false;
    }
    if (has_hash()) {
        const uint32_t floor = has_search() ? c.search_start : c.pathname_start;
        if (c.hash_start < floor || c.hash_start >= size || buffer_[c.hash_start] != '#') {
            return false;
        }
    }
    if (has_host()) {
        if (c.username_end < c.protocol_end + 2 ||
            std::string_view(buffer_).substr(c.protocol_end, 2) != "//") {
            return false;
        }
        if (has_credentials() && buffer_[c.host_start - 1] != '@') {
            return false;
        }
    } else {
        if (c.username_end != c.protocol_end || c.host_start != c.protocol_end ||
            c.host_end != c.protocol_end || c.port != UrlComponents::omitted) {
            return false;
        }
        const uint32_t gap = c.pathname_start - c.host_end;
        if (gap != 0 && (gap != 2 || std::string_view(buffer_).substr(c.host_end, 2) != "/.")) {
            return false;
        }
        if (!opaque_path_ && (gap == 2) != pathname().starts_with("//")) {
            return false;
        }
    }
    if (c.port != UrlComponents::omitted) {
        if (c.port > 65535 || c.host_end >= c.pathname_start || buffer_[c.host_end] != ':') {
            return false;
        }
        const std::string_view digits = port();
        uint32_t value = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || value != c.port) {
            return false;
        }
    } else if (c.host_end != authority_end()) {
        return false;
    }
    const std::string_view path = pathname();
    if (!opaque_path_ && !path.empty() && path[0] != '/') {
        return false;
    }
    if (is_special() && (path.empty() || !has_host())) {
        return false;
    }
    return true;
}

void Url::shift_from(Field first, int64_t delta) {
    auto shift = [delta](uint32_t& v) { v = static_cast<uint32_t>(v + delta); };
    switch (first) {
    case Field::UsernameEnd: shift(components_.username_end); [[fallthrough]];
    case Field::HostStart: shift(components_.host_start); [[fallthrough]];
    case Field::HostEnd: shift(components_.host_end); [[fallthrough]];
    case Field::PathnameStart: shift(components_.pathname_start); [[fallthrough]];
    case Field::SearchStart:
        if (has_search()) {
            shift(components_.search_start);
        }
        [[fallthrough]];
    case Field::HashStart:
        if (has_hash()) {
            shift(components_.hash_start);
        }
    }
}

void Url::splice(uint32_t begin, uint32_t end, std::string_view text, Field first) {
    buffer_.replace(begin, end - begin, text);
    shift_from(first, static_cast<int64_t>(text.size()) - static_cast<int64_t>(end - begin));
}

void Url::write_credentials(std::string_view username, std::string_view password) {
    std::string text(username);
    if (!password.empty()) {
        text.push_back(':');
        text.append(password);
    }
    if (!text.empty()) {
        text.push_back('@');
    }
    const uint32_t begin = components_.protocol_end + 2;
    splice(begin, components_.host_start, text, Field::HostStart);
    components_.username_end = begin + u32(username.size());
}

void Url::write_host(std::string_view serialized_host) {
    if (has_host()) {
        splice(components_.host_start, components_.host_end, serialized_host, Field::HostEnd);
        return;
    }
    if (has_path_marker()) {
        splice(components_.host_end, components_.host_end + 2, {}, Field::PathnameStart);
    }
    std::string text = "//";
    text.append(serialized_host);
    splice(components_.protocol_end, components_.protocol_end, text, Field::UsernameEnd);
    components_.username_end = components_.protocol_end + 2;
    components_.host_start = components_.username_end;
    components_.host_end = components_.host_start + u32(serialized_host.size());
}

void Url::write_port(std::optional<uint16_t> port) {
    std::string text;
    if (port) {
        text = ":" + std::to_string(*port);
    }
    splice(components_.host_end, authority_end(), text, Field::PathnameStart);
    components_.port = port ? *port : UrlComponents::omitted;
}

void Url::write_path(std::string_view serialized_path) {
    splice(components_.pathname_start, path_end(), serialized_path, Field::SearchStart);
    sync_path_marker();
}

void Url::sync_path_marker() {
    if (has_host() || opaque_path_) {
        return;
    }
    const bool want = pathname().starts_with("//");
    const bool have = has_path_marker();
    if (want && !have) {
        splice(components_.host_end, components_.host_end, "/.", Field::PathnameStart);
    } else if (!want && have) {
        splice(components_.host_end, components_.host_end + 2, {}, Field::PathnameStart);
    }
}

void Url::strip_trailing_spaces_from_opaque_path() {
    if (!opaque_path_ || has_search() || has_hash()) {
        return;
    }
    const std::string_view path = pathname();
    const size_t keep = path.find_last_not_of(' ');
    const uint32_t end = components_.pathname_start + u32(keep == std::string_view::npos ? 0 : keep + 1);
    buffer_.resize(end);
}

bool Url::set_href(std::string_view value) {
    auto parsed = parse(value);
    if (!parsed) {
        return false;
    }
    *this = std::move(parsed).value();
    return true;
}

bool Url::set_protocol(std::string_view value) {
    const std::string input = remove_tabs_and_newlines(value);
    if (input.empty() || !is_alpha(input[0])) {
        return false;
    }
    size_t i = 1;
    while (i < input.size() && is_scheme_char(input[i])) {
        ++i;
    }
    if (i < input.size() && input[i] != ':') {
        return false;
    }
    std::string scheme = input.substr(0, i);
    for (char& c : scheme) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c + 0x20);
        }
    }
    const SchemeType type = scheme_type_from_string(scheme);
    if (urlkit::is_special(type) != is_special()) {
        return false;
    }
    if ((has_credentials() || port_number()) && type == SchemeType::File) {
        return false;
    }
    if (type_ == SchemeType::File && components_.host_start == components_.host_end) {
        return false;
    }
    const int64_t delta = static_cast<int64_t>(scheme.size()) - (components_.protocol_end - 1);
    buffer_.replace(0, components_.protocol_end - 1, scheme);
    components_.protocol_end = u32(components_.protocol_end + delta);
    shift_from(Field::UsernameEnd, delta);
    type_ = type;
    if (port_number() && port_number() == default_port(type)) {
        write_port(std::nullopt);
    }
    return true;
}

namespace {

bool cannot_have_credentials_or_port(const Url& url) {
    return !url.has_host() || url.hostname().empty() || url.scheme_type() == SchemeType::File;
}

}  // namespace

bool Url::set_username(std::string_view value) {
    if (cannot_have_credentials_or_port(*this)) {
        return false;
    }
    const std::string user = percent_encode(value, encode_sets::userinfo);
    const std::string pass(password());
    write_credentials(user, pass);
    return true;
}

bool Url::set_password(std::string_view value) {
    if (cannot_have_credentials_or_port(*this)) {
        return false;
    }
    const std::string user(username());
    const std::string pass = percent_encode(value, encode_sets::userinfo);
    write_credentials(user, pass);
    return true;
}

bool Url::write_host_from_input(std::string_view value, bool hostname_only) {
    if (opaque_path_) {
        return false;
    }
    const std::string input = remove_tabs_and_newlines(value);
    const std::string_view in = input;
    std::string serialized;

    if (type_ == SchemeType::File) {
        const std::string_view raw = in.substr(0, in.find_first_of("/\\?#"));
        if (!raw.empty()) {
            if (detail::append_host(serialized, raw, true)) {
                return false;
            }
            if (serialized == "localhost") {
                serialized.clear();
            }
        }
        write_host(serialized);
        return true;
    }

    size_t j = 0;
    bool inside_brackets = false;
    for (; j < in.size(); ++j) {
        const char c = in[j];
        if (c == '/' || c == '?' || c == '#' || (c == '\\' && is_special())) {
            break;
        }
        if (c == ':' && !inside_brackets) {
            break;
        }
        if (c == '[') {
            inside_brackets = true;
        } else if (c == ']') {
            inside_brackets = false;
        }
    }
    const std::string_view raw = in.substr(0, j);
    const bool colon = j < in.size() && in[j] == ':';
    if (raw.empty()) {
        if (colon || is_special() || has_credentials() || port_number()) {
            return false;
        }
    }
    if (colon && hostname_only) {
        return false;
    }
    if (detail::append_host(serialized, raw, is_special())) {
        return false;
    }
    write_host(serialized);
    if (colon) {
        size_t k = j + 1;
        while (k < in.size() && in[k] >= '0' && in[k] <= '9') {
            ++k;
        }
        const std::string_view digits = in.substr(j + 1, k - j - 1);
        if (!digits.empty()) {
            auto port = parse_port(digits, type_);
            if (port) {
                write_port(*port);
            }
        }
    }
    return true;
}

bool Url::set_host(std::string_view value) { return write_host_from_input(value, false); }

bool Url::set_hostname(std::string_view value) { return write_host_from_input(value, true); }

bool Url::set_port(std::string_view value) {
    if (cannot_have_credentials_or_port(*this)) {
        return false;
    }
    if (value.empty()) {
        write_port(std::nullopt);
        return true;
    }
    const std::string input = remove_tabs_and_newlines(value);
    size_t k = 0;
    while (k < input.size() && input[k] >= '0' && input[k] <= '9') {
        ++k;
    }
    if (k == 0) {
        return false;
    }
    auto port = parse_port(std::string_view(input).substr(0, k), type_);
    if (!port) {
        return false;
    }
    write_port(*port);
    return true;
}

bool Url::set_pathname(std::string_view value) {
    if (opaque_path_) {
        return false;
    }
    const std::string input = remove_tabs_and_newlines(value);
    std::string_view in = input;
    std::string path;
    if (is_special() || !in.empty()) {
        if (!in.empty() && (in[0] == '/' || (is_special() && in[0] == '\\'))) {
            in.remove_prefix(1);
        }
        detail::append_path_segments(path, 0, in, is_special(), type_ == SchemeType::File);
    } else if (!has_host()) {
        path = "/";
    }
    write_path(path);
    return true;
}

bool Url::set_search(std::string_view value) {
    const uint32_t begin = has_search() ? components_.search_start : path_end();
    const uint32_t end = search_end();
    if (value.empty()) {
        if (has_search()) {
            splice(begin, end, {}, Field::HashStart);
            components_.search_start = UrlComponents::omitted;
        }
        strip_trailing_spaces_from_opaque_path();
        return true;
    }
    if (value[0] == '?') {
        value.remove_prefix(1);
    }
    std::string text = "?";
    append_percent_encoded(text, remove_tabs_and_newlines(value),
                           is_special() ? encode_sets::special_query : encode_sets::query);
    splice(begin, end, text, Field::HashStart);
    components_.search_start = begin;
    return true;
}

bool Url::set_hash(std::string_view value) {
    if (value.empty()) {
        if (has_hash()) {
            buffer_.resize(components_.hash_start);
            components_.hash_start = UrlComponents::omitted;
        }
        strip_trailing_spaces_from_opaque_path();
        return true;
    }
    if (value[0] == '#') {
        value.remove_prefix(1);
    }
    std::string text = "#";
    append_percent_encoded(text, remove_tabs_and_newlines(value), encode_sets::fragment);
    const uint32_t begin = has_hash() ? components_.hash_start : u32(buffer_.size());
    buffer_.replace(begin, buffer_.size() - begin, text);
    components_.hash_start = begin;
    return true;
}

}  // namespace urlkit
