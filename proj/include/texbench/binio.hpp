// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "texbench/error.hpp"

// Little-endian field I/O for the binary cache formats.
namespace texbench::binio {

template <typename U>
void put_uint(std::ostream& out, U v) {
    char b[sizeof(U)];
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    }
    out.write(b, sizeof(U));
}

inline void put_u8(std::ostream& out, std::uint8_t v) { put_uint(out, v); }
inline void put_u16(std::ostream& out, std::uint16_t v) { put_uint(out, v); }
inline void put_u32(std::ostream& out, std::uint32_t v) { put_uint(out, v); }
inline void put_f32(std::ostream& out, float v) { put_uint(out, std::bit_cast<std::uint32_t>(v)); }
inline void put_f64(std::ostream& out, double v) { put_uint(out, std::bit_cast<std::uint64_t>(v)); }

inline void put_string(std::ostream& out, std::string_view s) {
    if (s.size() > 0xFFFF) {
        throw InvalidInput("binary string field longer than 65535 bytes");
    }
    put_u16(out, static_cast<std::uint16_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

class Reader {
public:
    Reader(std::istream& in, std::string what) : in_(in), what_(std::move(what)) {}

    template <typename U>
    U uint() {
        unsigned char b[sizeof(U)];
        read(reinterpret_cast<char*>(b), sizeof(U));
        U v = 0;
        for (std::size_t i = 0; i < sizeof(U); ++i) {
            v |= static_cast<U>(static_cast<U>(b[i]) << (8 * i));
        }
        return v;
    }

    std::uint8_t u8() { return uint<std::uint8_t>(); }
    std::uint16_t u16() { return uint<std::uint16_t>(); }
    std::uint32_t u32() { return uint<std::uint32_t>(); }
    float f32() { return std::bit_cast<float>(uint<std::uint32_t>()); }
    double f64() { return std::bit_cast<double>(uint<std::uint64_t>()); }

    std::string string() {
        std::string s(u16(), '\0');
        read(s.data(), s.size());
        return s;
    }

    void magic(std::string_view expected) {
        std::string m(expected.size(), '\0');
        read(m.data(), m.size());
        if (m != expected) {
            throw FormatError(what_ + ": bad magic, expected " + std::string(expected));
        }
    }

    bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

private:
    void read(char* dst, std::size_t n) {
        in_.read(dst, static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n) {
            throw FormatError(what_ + ": truncated");
        }
    }

    std::istream& in_;
    std::string what_;
};

} // namespace texbench::binio
