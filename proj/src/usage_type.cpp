#include "orient/usage_type.hpp"

#include <stdexcept>

namespace orient {

UsageType UsageType::from_bits(bool service, bool wired_headset, bool speaker_phone,
                               bool bluetooth_headset) {
  std::uint8_t code = 0;
  if (service) code |= 0b1000;
  if (wired_headset) code |= 0b0100;
  if (speaker_phone) code |= 0b0010;
  if (bluetooth_headset) code |= 0b0001;
  return UsageType(code);
}

UsageType UsageType::from_code(unsigned code) {
  if (code > 15) {
    throw std::invalid_argument("usage type code out of range: " + std::to_string(code));
  }
  return UsageType(static_cast<std::uint8_t>(code));
}

UsageType UsageType::from_string(std::string_view s) {
  if (s.size() != 4) {
    throw std::invalid_argument("usage type must be 4 bits, got \"" + std::string(s) + "\"");
  }
  std::uint8_t code = 0;
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("usage type must be 0/1 bits, got \"" + std::string(s) + "\"");
    }
    code = static_cast<std::uint8_t>((code << 1) | (c == '1'));
  }
  return UsageType(code);
}

std::string UsageType::str() const {
  std::string s(4, '0');
  for (int b = 0; b < 4; ++b) {
    if (code_ & (1 << (3 - b))) {
      s[static_cast<std::size_t>(b)] = '1';
    }
  }
  return s;
}

}  // namespace orient
