#pragma once
// RFC 4648 base64 for binary payloads in grid-function files.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace paley::b64 {

inline std::string encode(const std::uint8_t* data, std::size_t len) {
  static const char* tab = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((len + 2) / 3 * 4);
  for (std::size_t i = 0; i < len; i += 3) {
    std::uint32_t v = std::uint32_t(data[i]) << 16;
    if (i + 1 < len) v |= std::uint32_t(data[i + 1]) << 8;
    if (i + 2 < len) v |= std::uint32_t(data[i + 2]);
    out.push_back(tab[(v >> 18) & 63]);
    out.push_back(tab[(v >> 12) & 63]);
    out.push_back(i + 1 < len ? tab[(v >> 6) & 63] : '=');
    out.push_back(i + 2 < len ? tab[v & 63] : '=');
  }
  return out;
}

inline std::vector<std::uint8_t> decode(const std::string& s) {
  auto val = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    if (c == '=') return -1;
    throw std::invalid_argument("base64: invalid character");
  };
  if (s.size() % 4 != 0) throw std::invalid_argument("base64: length must be a multiple of 4");
  std::vector<std::uint8_t> out;
  out.reserve(s.size() / 4 * 3);
  for (std::size_t i = 0; i < s.size(); i += 4) {
    const int a = val(s[i]), b = val(s[i + 1]), c = val(s[i + 2]), d = val(s[i + 3]);
    if (a < 0 || b < 0) throw std::invalid_argument("base64: malformed block");
    const std::uint32_t v = (std::uint32_t(a) << 18) | (std::uint32_t(b) << 12) |
                            (std::uint32_t(c < 0 ? 0 : c) << 6) | std::uint32_t(d < 0 ? 0 : d);
    out.push_back(std::uint8_t(v >> 16));
    if (c >= 0) out.push_back(std::uint8_t((v >> 8) & 0xff));
    if (d >= 0) out.push_back(std::uint8_t(v & 0xff));
  }
  return out;
}

}  // namespace paley::b64
