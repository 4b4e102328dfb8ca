#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace orient {

// 4-bit phone usage classification, rendered as "ijkl":
//   i  service         0 = voice, 1 = non-voice
//   j  wired headset   0 = no,    1 = yes
//   k  speaker phone   0 = off,   1 = on
//   l  bluetooth       0 = off,   1 = on
class UsageType {
 public:
  UsageType() = default;

  static UsageType from_bits(bool service, bool wired_headset, bool speaker_phone,
                             bool bluetooth_headset);
  // code in [0,15]; throws std::invalid_argument otherwise.
  static UsageType from_code(unsigned code);
  // Exactly four '0'/'1' characters; throws std::invalid_argument otherwise.
  static UsageType from_string(std::string_view s);

  std::uint8_t code() const { return code_; }
  bool service() const { return (code_ & 0b1000) != 0; }
  bool wired_headset() const { return (code_ & 0b0100) != 0; }
  bool speaker_phone() const { return (code_ & 0b0010) != 0; }
  bool bluetooth_headset() const { return (code_ & 0b0001) != 0; }

  std::string str() const;

  friend auto operator<=>(const UsageType&, const UsageType&) = default;

 private:
  explicit UsageType(std::uint8_t code) : code_(code) {}
  std::uint8_t code_ = 0;
};

}  // namespace orient
