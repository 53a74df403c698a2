#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <variant>

namespace urlkit {

// Failure categories. Values carry the component that was rejected, never an
// input offset.
enum class ParseError : uint8_t {
    InvalidScheme,
    InvalidHost,
    InvalidIPv4,
    InvalidIPv6,
    PortOutOfRange,
    MissingHost,
    InvalidCredentials,
    InvalidInput,
};

constexpr std::string_view to_string(ParseError e) noexcept {
    switch (e) {
    case ParseError::InvalidScheme: return "InvalidScheme";
    case ParseError::InvalidHost: return "InvalidHost";
    case ParseError::InvalidIPv4: return "InvalidIPv4";
    case ParseError::InvalidIPv6: return "InvalidIPv6";
    case ParseError::PortOutOfRange: return "PortOutOfRange";
    case ParseError::MissingHost: return "MissingHost";
    case ParseError::InvalidCredentials: return "InvalidCredentials";
    case ParseError::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

// Either a value or a ParseError; exactly one arm is populated.
template <typename T>
class Result {
public:
    Result(T value) : v_(std::in_place_index<0>, std::move(value)) {}
    Result(ParseError error) : v_(std::in_place_index<1>, error) {}

    bool ok() const noexcept { return v_.index() == 0; }
    explicit operator bool() const noexcept { return ok(); }

    T& value() & { return std::get<0>(v_); }
    const T& value() const& { return std::get<0>(v_); }
    T&& value() && { return std::get<0>(std::move(v_)); }
    T& operator*() & { return value(); }
    const T& operator*() const& { return value(); }
    T* operator->() { return &value(); }
    const T* operator->() const { return &value(); }

    ParseError error() const { return std::get<1>(v_); }

private:
    std::variant<T, ParseError> v_;
};

}  // namespace urlkit
