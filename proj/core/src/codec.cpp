#include "urasim/codec.hpp"

#include <stdexcept>
#include <string>

namespace urasim::codec {

namespace {

void check_num_bits(int num_bits) {
  if (num_bits < 1 || num_bits > kMaxBits) {
    throw std::invalid_argument("num_bits: must be in [1, " + std::to_string(kMaxBits) +
                                "], got " + std::to_string(num_bits));
  }
}

}  // namespace

MessagePayload make_message(std::uint32_t index, int num_bits) {
  check_num_bits(num_bits);
  if (index >= codebook_size(num_bits)) {
    throw std::out_of_range("index: " + std::to_string(index) + " does not fit in " +
                            std::to_string(num_bits) + " bits");
  }
  return MessagePayload{index, num_bits};
}

std::vector<std::uint8_t> bit_sequence(const MessagePayload& message) {
  check_num_bits(message.num_bits);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(message.num_bits));
  for (int i = 0; i < message.num_bits; ++i) {
    bits[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>((message.index >> (message.num_bits - 1 - i)) & 1u);
  }
  return bits;
}

MessagePayload message_from_bits(std::span<const std::uint8_t> bits) {
  check_num_bits(static_cast<int>(bits.size()));
  std::uint32_t index = 0;
  for (std::uint8_t bit : bits) {
    if (bit > 1) throw std::invalid_argument("bits: entries must be 0 or 1");
    index = (index << 1) | bit;
  }
  return MessagePayload{index, static_cast<int>(bits.size())};
}

OneHotCodeword encode(const MessagePayload& message) {
  check_num_bits(message.num_bits);
  const std::uint64_t length = codebook_size(message.num_bits);
  if (message.index >= length) {
    throw std::out_of_range("message: index inconsistent with num_bits");
  }
  return OneHotCodeword{length, message.index};
}

MessagePayload decode_index(std::uint64_t n, int num_bits) {
  check_num_bits(num_bits);
  if (n >= codebook_size(num_bits)) {
    throw std::out_of_range("n: channel-use index " + std::to_string(n) +
                            " out of range for " + std::to_string(num_bits) + " bits");
  }
  return MessagePayload{static_cast<std::uint32_t>(n), num_bits};
}

double code_rate(int num_bits) {
  check_num_bits(num_bits);
  return static_cast<double>(num_bits) / static_cast<double>(codebook_size(num_bits));
}

}  // namespace urasim::codec
