#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <utility>
#include <vector>

namespace cptk {

using BigCode = boost::multiprecision::cpp_int;

/// Cantor pairing π(x, y) = (x + y)(x + y + 1)/2 + y.
/// Throws std::overflow_error when the code does not fit in 64 bits.
std::uint64_t cantor_pair(std::uint64_t x, std::uint64_t y);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z);

/// Length-prefixed tupling: [x₁..x_n] ↦ π(n − 1, t(x₁..x_n)) where t pairs
/// the left half ⌈n/2⌉ with the right half recursively, e.g.
/// t(x₁, x₂, x₃) = π(π(x₁, x₂), x₃). Every natural decodes to exactly one
/// nonempty sequence.
std::uint64_t encode_tuple(const std::vector<std::uint64_t>& xs);
std::vector<std::uint64_t> decode_tuple(std::uint64_t code);

/// Same codes without the 64-bit limit. Nested closure indices outgrow
/// 64 bits after two or three levels, so families are indexed by BigCode.
BigCode big_pair(const BigCode& x, const BigCode& y);
std::pair<BigCode, BigCode> big_unpair(const BigCode& z);
BigCode big_tuple(const std::vector<BigCode>& xs);
BigCode big_tuple(const std::vector<std::uint64_t>& xs);
std::vector<BigCode> big_untuple(const BigCode& code);

/// Narrowing with std::overflow_error past 2^64 − 1.
std::uint64_t to_u64(const BigCode& x);

} // namespace cptk
