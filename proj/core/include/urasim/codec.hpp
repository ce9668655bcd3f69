#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace urasim::codec {

/// Hard cap on message width: the codebook spans N = 2^B channel uses and
/// must stay addressable.
inline constexpr int kMaxBits = 24;

constexpr std::uint64_t codebook_size(int num_bits) {
  return std::uint64_t{1} << num_bits;
}

/// A B-bit message and its decimal index q in [0, 2^B). The bit sequence is
/// kept implicit (MSB first by convention); bit_sequence() materializes it.
struct MessagePayload {
  std::uint32_t index = 0;
  int num_bits = 0;

  friend bool operator==(const MessagePayload&, const MessagePayload&) = default;
};

/// Validates index/num_bits and builds the payload.
MessagePayload make_message(std::uint32_t index, int num_bits);

/// MSB-first binary expansion of the payload index, length num_bits.
std::vector<std::uint8_t> bit_sequence(const MessagePayload& message);

/// Payload whose index is the MSB-first unsigned value of `bits`.
MessagePayload message_from_bits(std::span<const std::uint8_t> bits);

/// One-hot codeword, stored sparsely: a length-2^B binary vector whose only
/// nonzero entry sits at hot_index. The dense vector is never materialized.
struct OneHotCodeword {
  std::uint64_t length = 0;
  std::uint32_t hot_index = 0;

  friend bool operator==(const OneHotCodeword&, const OneHotCodeword&) = default;
};

OneHotCodeword encode(const MessagePayload& message);

/// Inverse of encode: the message whose index is n.
MessagePayload decode_index(std::uint64_t n, int num_bits);

/// Code rate per active device, B / 2^B.
double code_rate(int num_bits);

}  // namespace urasim::codec
