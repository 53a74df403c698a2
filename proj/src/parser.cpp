#include "urlkit/parser.h"

#include <algorithm>
#include <bit>
#include <string>

#include "urlkit/encoding.h"
#include "urlkit/scanners.h"

namespace urlkit {

namespace detail {

namespace {

constexpr bool is_alpha(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

constexpr bool is_scheme_char(char c) noexcept {
    return is_alpha(c) || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
}

constexpr bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

constexpr uint32_t u32(size_t v) noexcept { return static_cast<uint32_t>(v); }

}  // namespace

// The URL state machine, consuming one whole component per state. Each state
// locates the end of its component with a single scan, writes the normalized
// component at the end of the buffer and names the next state.
class UrlParser {
public:
    enum class State : uint8_t {
        SchemeStart,
        NoScheme,
        SpecialRelativeOrAuthority,
        PathOrAuthority,
        Relative,
        RelativeSlash,
        SpecialAuthoritySlashes,
        SpecialAuthorityIgnoreSlashes,
        Authority,
        Host,
        Port,
        File,
        FileSlash,
        FileHost,
        PathStart,
        Path,
        OpaquePath,
        Query,
        Fragment,
        Done,
    };

    UrlParser(std::string_view input, const Url* base, ParseTrace* trace)
        : in_(input), base_(base), trace_(trace) {}

    ParseOutcome run() {
        const size_t hint = in_.size() + (base_ != nullptr ? base_->buffer_.size() : 0);
        url_.buffer_.reserve(std::bit_ceil(std::max<size_t>(hint, 1)));
        State state = State::SchemeStart;
        while (state != State::Done) {
            std::optional<ParseError> error;
            state = step(state, error);
            if (error) {
                return *error;
            }
        }
        url_.sync_path_marker();
        return std::move(url_);
    }

private:
    State step(State state, std::optional<ParseError>& error) {
        switch (state) {
        case State::SchemeStart: return scheme_start();
        case State::NoScheme: return no_scheme(error);
        case State::SpecialRelativeOrAuthority:
            if (starts_with("//")) {
                pos_ += 2;
                return State::SpecialAuthorityIgnoreSlashes;
            }
            return State::Relative;
        case State::PathOrAuthority:
            if (at(pos_) == '/') {
                ++pos_;
                return State::Authority;
            }
            begin_path_without_host();
            return State::Path;
        case State::Relative: return relative();
        case State::RelativeSlash: return relative_slash();
        case State::SpecialAuthoritySlashes:
            if (starts_with("//")) {
                pos_ += 2;
            }
            return State::SpecialAuthorityIgnoreSlashes;
        case State::SpecialAuthorityIgnoreSlashes:
            while (at(pos_) == '/' || at(pos_) == '\\') {
                ++pos_;
            }
            return State::Authority;
        case State::Authority: return authority(error);
        case State::Host: return host(error);
        case State::Port: return port(error);
        case State::File: return file();
        case State::FileSlash: return file_slash();
        case State::FileHost: return file_host(error);
        case State::PathStart: return path_start();
        case State::Path: return path();
        case State::OpaquePath: return opaque_path();
        case State::Query: return query();
        case State::Fragment: return fragment();
        case State::Done: break;
        }
        return State::Done;
    }

    char at(size_t i) const noexcept { return i < in_.size() ? in_[i] : '\0'; }
    bool at_end(size_t i) const noexcept { return i >= in_.size(); }
    bool starts_with(std::string_view s) const noexcept {
        return in_.substr(std::min(pos_, in_.size())).starts_with(s);
    }
    bool special() const noexcept { return urlkit::is_special(url_.type_); }
    bool is_slash(char c) const noexcept { return c == '/' || (special() && c == '\\'); }

    std::string& buf() noexcept { return url_.buffer_; }
    UrlComponents& comp() noexcept { return url_.components_; }

    State scheme_start() {
        if (!in_.empty() && is_alpha(in_[0])) {
            size_t i = 1;
            while (i < in_.size() && is_scheme_char(in_[i])) {
                ++i;
            }
            if (i < in_.size() && in_[i] == ':') {
                const std::string_view scheme = in_.substr(0, i);
                for (char c : scheme) {
                    buf().push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c + 0x20) : c);
                }
                url_.type_ = scheme_type_from_string(buf());
                buf().push_back(':');
                set_no_host();
                pos_ = i + 1;
                if (url_.type_ == SchemeType::File) {
                    return State::File;
                }
                if (special()) {
                    if (base_ != nullptr && base_->type_ == url_.type_) {
                        return State::SpecialRelativeOrAuthority;
                    }
                    return State::SpecialAuthoritySlashes;
                }
                if (at(pos_) == '/') {
                    ++pos_;
                    return State::PathOrAuthority;
                }
                return State::OpaquePath;
            }
        }
        pos_ = 0;
        return State::NoScheme;
    }

    State no_scheme(std::optional<ParseError>& error) {
        if (base_ == nullptr) {
            const size_t colon = in_.find(':');
            const bool looks_like_scheme =
                colon != std::string_view::npos && colon < in_.find_first_of("/?#\\");
            error = looks_like_scheme ? ParseError::InvalidScheme : ParseError::InvalidInput;
            return State::Done;
        }
        const char c = at(pos_);
        if (base_->opaque_path_) {
            if (c != '#') {
                error = ParseError::InvalidInput;
                return State::Done;
            }
            const uint32_t keep =
                base_->has_hash() ? base_->components_.hash_start : u32(base_->buffer_.size());
            buf().assign(base_->buffer_, 0, keep);
            url_.components_ = base_->components_;
            comp().hash_start = UrlComponents::omitted;
            url_.type_ = base_->type_;
            url_.opaque_path_ = true;
            ++pos_;
            return State::Fragment;
        }
        buf().assign(base_->buffer_, 0, base_->components_.protocol_end);
        url_.type_ = base_->type_;
        set_no_host();
        return url_.type_ == SchemeType::File ? State::File : State::Relative;
    }

    // Empty authority: U = HS = HE = P, path starts right after the scheme.
    void set_no_host() {
        const uint32_t p = u32(buf().size());
        comp().protocol_end = p;
        comp().username_end = p;
        comp().host_start = p;
        comp().host_end = p;
        comp().pathname_start = p;
    }

    void begin_authority() {
        buf().append("//");
        const uint32_t p = u32(buf().size());
        comp().username_end = p;
        comp().host_start = p;
        comp().host_end = p;
        comp().pathname_start = p;
    }

    void end_authority() {
        comp().host_end = std::max(comp().host_end, comp().host_start);
        comp().pathname_start = u32(buf().size());
    }

    void begin_path_without_host() { comp().pathname_start = u32(buf().size()); }

    // Copies the base's credentials, host and port.
    void copy_base_authority() {
        const Url& b = *base_;
        buf().append(b.buffer_, b.components_.protocol_end,
                     b.authority_end() - b.components_.protocol_end);
        comp().username_end = b.components_.username_end;
        comp().host_start = b.components_.host_start;
        comp().host_end = b.components_.host_end;
        comp().port = b.components_.port;
        comp().pathname_start = u32(buf().size());
    }

    void copy_base_path() { buf().append(base_->pathname()); }

    void copy_base_query() {
        if (base_->has_search()) {
            comp().search_start = u32(buf().size());
            const uint32_t s = base_->components_.search_start;
            buf().append(base_->buffer_, s, base_->search_end() - s);
        }
    }

    State relative() {
        const char c = at(pos_);
        if (is_slash(c)) {
            ++pos_;
            return State::RelativeSlash;
        }
        copy_base_authority();
        copy_base_path();
        if (c == '?') {
            ++pos_;
            return State::Query;
        }
        if (c == '#') {
            copy_base_query();
            ++pos_;
            return State::Fragment;
        }
        if (at_end(pos_)) {
            copy_base_query();
            return State::Done;
        }
        shorten_path(buf(), comp().pathname_start, false);
        return State::Path;
    }

    State relative_slash() {
        const char c = at(pos_);
        if (special() && (c == '/' || c == '\\')) {
            ++pos_;
            return State::SpecialAuthorityIgnoreSlashes;
        }
        if (c == '/') {
            ++pos_;
            return State::Authority;
        }
        copy_base_authority();
        return State::Path;
    }

    State authority(std::optional<ParseError>& error) {
        begin_authority();
        const std::string_view terminators = special() ? std::string_view("/?#\\") : "/?#";
        size_t end = in_.find_first_of(terminators, pos_);
        if (end == std::string_view::npos) {
            end = in_.size();
        }
        const std::string_view authority = in_.substr(pos_, end - pos_);
        const size_t at_sign = authority.rfind('@');
        if (at_sign != std::string_view::npos) {
            const std::string_view credentials = authority.substr(0, at_sign);
            const size_t colon = credentials.find(':');
            std::string_view user = credentials.substr(0, colon);
            std::string_view pass;
            if (colon != std::string_view::npos) {
                pass = credentials.substr(colon + 1);
            }
            append_percent_encoded(buf(), user, encode_sets::userinfo);
            comp().username_end = u32(buf().size());
            if (!pass.empty()) {
                buf().push_back(':');
                append_percent_encoded(buf(), pass, encode_sets::userinfo);
            }
            if (!user.empty() || !pass.empty()) {
                buf().push_back('@');
            }
            comp().host_start = u32(buf().size());
            pos_ += at_sign + 1;
            if (pos_ == end) {
                error = ParseError::InvalidCredentials;
                return State::Done;
            }
        }
        return State::Host;
    }

    std::optional<ParseError> write_host(std::string_view raw) {
        HostRoute route = HostRoute::None;
        comp().host_start = u32(buf().size());
        auto error = append_host(buf(), raw, special(), &route);
        if (trace_ != nullptr) {
            trace_->host_route = route;
        }
        if (error) {
            return error;
        }
        comp().host_end = u32(buf().size());
        return std::nullopt;
    }

    State host(std::optional<ParseError>& error) {
        size_t j = pos_;
        bool inside_brackets = false;
        for (; j < in_.size(); ++j) {
            const char c = in_[j];
            if (c == '/' || c == '?' || c == '#' || (c == '\\' && special())) {
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
        const std::string_view raw = in_.substr(pos_, j - pos_);
        if (raw.empty() && (special() || at(j) == ':')) {
            error = ParseError::MissingHost;
            return State::Done;
        }
        if ((error = write_host(raw))) {
            return State::Done;
        }
        end_authority();
        if (at(j) == ':') {
            pos_ = j + 1;
            return State::Port;
        }
        pos_ = j;
        return State::PathStart;
    }

    State port(std::optional<ParseError>& error) {
        size_t j = pos_;
        while (j < in_.size() && is_digit(in_[j])) {
            ++j;
        }
        if (!at_end(j) && !is_slash(at(j)) && at(j) != '?' && at(j) != '#') {
            error = ParseError::InvalidInput;
            return State::Done;
        }
        auto value = parse_port(in_.substr(pos_, j - pos_), url_.type_);
        if (!value) {
            error = value.error();
            return State::Done;
        }
        if (value->has_value()) {
            comp().port = **value;
            buf().push_back(':');
            buf().append(std::to_string(**value));
        }
        comp().pathname_start = u32(buf().size());
        pos_ = j;
        return State::PathStart;
    }

    State file() {
        const char c = at(pos_);
        if (c == '/' || c == '\\') {
            ++pos_;
            return State::FileSlash;
        }
        if (base_ != nullptr && base_->type_ == SchemeType::File) {
            copy_base_authority();
            copy_base_path();
            if (c == '?') {
                ++pos_;
                return State::Query;
            }
            if (c == '#') {
                copy_base_query();
                ++pos_;
                return State::Fragment;
            }
            if (at_end(pos_)) {
                copy_base_query();
                return State::Done;
            }
            if (!starts_with_windows_drive_letter(in_.substr(pos_))) {
                shorten_path(buf(), comp().pathname_start, true);
            } else {
                buf().resize(comp().pathname_start);
            }
            return State::Path;
        }
        begin_authority();
        return State::Path;
    }

    State file_slash() {
        const char c = at(pos_);
        if (c == '/' || c == '\\') {
            ++pos_;
            return State::FileHost;
        }
        begin_authority();
        if (base_ != nullptr && base_->type_ == SchemeType::File) {
            buf().append(base_->hostname());
            end_authority();
            comp().host_end = u32(buf().size());
            comp().pathname_start = comp().host_end;
            if (!starts_with_windows_drive_letter(in_.substr(pos_))) {
                const std::string_view base_path = base_->pathname();
                const size_t next = base_path.find('/', 1);
                const std::string_view first =
                    base_path.substr(0, next == std::string_view::npos ? base_path.size() : next);
                if (first.size() == 3 && is_normalized_windows_drive_letter(first.substr(1))) {
                    buf().append(first);
                }
            }
        }
        return State::Path;
    }

    State file_host(std::optional<ParseError>& error) {
        size_t end = in_.find_first_of("/\\?#", pos_);
        if (end == std::string_view::npos) {
            end = in_.size();
        }
        const std::string_view raw = in_.substr(pos_, end - pos_);
        begin_authority();
        if (is_windows_drive_letter(raw)) {
            return State::Path;
        }
        if (!raw.empty()) {
            if ((error = write_host(raw))) {
                return State::Done;
            }
            if (url_.hostname() == "localhost") {
                buf().resize(comp().host_start);
                comp().host_end = comp().host_start;
            }
        }
        end_authority();
        pos_ = end;
        return State::PathStart;
    }

    State path_start() {
        const char c = at(pos_);
        if (special()) {
            if (c == '/' || c == '\\') {
                ++pos_;
            }
            return State::Path;
        }
        if (c == '?') {
            ++pos_;
            return State::Query;
        }
        if (c == '#') {
            ++pos_;
            return State::Fragment;
        }
        if (!at_end(pos_)) {
            if (c == '/') {
                ++pos_;
            }
            return State::Path;
        }
        return State::Done;
    }

    State path() {
        size_t end = in_.find_first_of("?#", pos_);
        if (end == std::string_view::npos) {
            end = in_.size();
        }
        const std::string_view segments = in_.substr(pos_, end - pos_);
        if (buf().size() == comp().pathname_start && url_.type_ != SchemeType::File) {
            const int tier =
                append_normalized_path(buf(), segments, path_signature(segments), special());
            if (trace_ != nullptr) {
                trace_->path_tier = tier;
            }
        } else {
            append_path_segments(buf(), comp().pathname_start, segments, special(),
                                 url_.type_ == SchemeType::File);
        }
        pos_ = end;
        return after_path();
    }

    State opaque_path() {
        url_.opaque_path_ = true;
        comp().pathname_start = u32(buf().size());
        size_t end = in_.find_first_of("?#", pos_);
        if (end == std::string_view::npos) {
            end = in_.size();
        }
        append_percent_encoded(buf(), in_.substr(pos_, end - pos_), encode_sets::c0_control);
        pos_ = end;
        return after_path();
    }

    State after_path() {
        const char c = at(pos_);
        if (at_end(pos_)) {
            return State::Done;
        }
        ++pos_;
        return c == '?' ? State::Query : State::Fragment;
    }

    State query() {
        comp().search_start = u32(buf().size());
        buf().push_back('?');
        size_t end = in_.find('#', pos_);
        if (end == std::string_view::npos) {
            end = in_.size();
        }
        append_percent_encoded(buf(), in_.substr(pos_, end - pos_),
                               special() ? encode_sets::special_query : encode_sets::query);
        pos_ = end;
        if (at_end(pos_)) {
            return State::Done;
        }
        ++pos_;
        return State::Fragment;
    }

    State fragment() {
        comp().hash_start = u32(buf().size());
        buf().push_back('#');
        append_percent_encoded(buf(), in_.substr(std::min(pos_, in_.size())),
                               encode_sets::fragment);
        pos_ = in_.size();
        return State::Done;
    }

    std::string_view in_;
    size_t pos_ = 0;
    const Url* base_;
    ParseTrace* trace_;
    Url url_;
};

}  // namespace detail

ParseOutcome parse(std::string_view input, const Url* base, ParseTrace* trace) {
    input = trim_c0_and_space(input);
    if (!has_tabs_or_newline(input)) {
        return detail::UrlParser(input, base, trace).run();
    }
    if (trace != nullptr) {
        trace->removed_tabs_or_newlines = true;
    }
    const std::string cleaned = remove_tabs_and_newlines(input);
    return detail::UrlParser(cleaned, base, trace).run();
}

bool can_parse(std::string_view input, std::optional<std::string_view> base) {
    if (!base) {
        return parse(input).ok();
    }
    auto base_url = parse(*base);
    return base_url.ok() && parse(input, &base_url.value()).ok();
}

}  // namespace urlkit
