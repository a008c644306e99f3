#pragma once

#include <concepts>

namespace kummer3 {

// Field scalar: exact arithmetic plus exemplar-based constants (an Fp element
// carries its modulus, so zero()/one()/from_int() are instance members).
template <class K>
concept Scalar = requires(const K a, const K b, long n) {
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { a / b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.is_one() } -> std::convertible_to<bool>;
    { a.zero() } -> std::convertible_to<K>;
    { a.one() } -> std::convertible_to<K>;
    { a.from_int(n) } -> std::convertible_to<K>;
    { a.inv() } -> std::convertible_to<K>;
};

} // namespace kummer3
