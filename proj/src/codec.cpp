#include "cptk/codec.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cptk {

namespace {

std::uint64_t triangle(std::uint64_t w) {
    // w(w+1)/2 without intermediate overflow
    std::uint64_t a = w, b = w + 1;
    (a % 2 == 0 ? a : b) /= 2;
    std::uint64_t t;
    if (__builtin_mul_overflow(a, b, &t)) throw std::overflow_error("pairing code exceeds 64 bits");
    return t;
}

} // namespace

std::uint64_t cantor_pair(std::uint64_t x, std::uint64_t y) {
    std::uint64_t s, code;
    if (__builtin_add_overflow(x, y, &s) || s == UINT64_MAX) throw std::overflow_error("pairing code exceeds 64 bits");
    if (__builtin_add_overflow(triangle(s), y, &code)) throw std::overflow_error("pairing code exceeds 64 bits");
    return code;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
    auto w = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
    // floating point only gets close; fix up against exact triangle numbers
    auto fits = [&](std::uint64_t v) {
        std::uint64_t t;
        try {
            t = triangle(v);
        } catch (const std::overflow_error&) {
            return false;
        }
        return t <= z;
    };
    while (w > 0 && !fits(w)) --w;
    while (fits(w + 1)) ++w;
    std::uint64_t y = z - triangle(w);
    return {w - y, y};
}

namespace {

// Tuples are bracketed as a balanced tree of pairs, left half first, so code
// length grows linearly with the tuple length (right-nesting doubles it per
// element).
template <typename T, typename Pair>
T nest(const std::vector<T>& xs, std::size_t lo, std::size_t hi, Pair pair) {
    if (hi - lo == 1) return xs[lo];
    std::size_t mid = lo + (hi - lo + 1) / 2;
    return pair(nest(xs, lo, mid, pair), nest(xs, mid, hi, pair));
}

template <typename T, typename Unpair>
void unnest(const T& code, std::size_t n, std::vector<T>& out, Unpair unpair) {
    if (n == 1) {
        out.push_back(code);
        return;
    }
    std::size_t left = (n + 1) / 2;
    auto [x, y] = unpair(code);
    unnest(T(x), left, out, unpair);
    unnest(T(y), n - left, out, unpair);
}

} // namespace

std::uint64_t encode_tuple(const std::vector<std::uint64_t>& xs) {
    if (xs.empty()) throw std::invalid_argument("tuples are nonempty");
    return cantor_pair(xs.size() - 1, nest(xs, 0, xs.size(), cantor_pair));
}

std::vector<std::uint64_t> decode_tuple(std::uint64_t code) {
    auto [len, body] = cantor_unpair(code);
    std::vector<std::uint64_t> xs;
    xs.reserve(len + 1);
    unnest(body, len + 1, xs, cantor_unpair);
    return xs;
}

BigCode big_pair(const BigCode& x, const BigCode& y) {
    BigCode s = x + y;
    return s * (s + 1) / 2 + y;
}

std::pair<BigCode, BigCode> big_unpair(const BigCode& z) {
    if (z < 0) throw std::invalid_argument("codes are naturals");
    BigCode w = (boost::multiprecision::sqrt(BigCode(8 * z + 1)) - 1) / 2;
    BigCode y = z - w * (w + 1) / 2;
    return {w - y, y};
}

BigCode big_tuple(const std::vector<BigCode>& xs) {
    if (xs.empty()) throw std::invalid_argument("tuples are nonempty");
    return big_pair(BigCode(xs.size() - 1), nest(xs, 0, xs.size(), big_pair));
}

BigCode big_tuple(const std::vector<std::uint64_t>& xs) {
    return big_tuple(std::vector<BigCode>(xs.begin(), xs.end()));
}

std::vector<BigCode> big_untuple(const BigCode& code) {
    auto [len, body] = big_unpair(code);
    std::vector<BigCode> xs;
    unnest(body, to_u64(len) + 1, xs, big_unpair);
    return xs;
}

std::uint64_t to_u64(const BigCode& x) {
    if (x < 0 || x > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("index exceeds 64 bits");
    return static_cast<std::uint64_t>(x);
}

} // namespace cptk
