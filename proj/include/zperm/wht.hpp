#pragma once

#include "zperm/dyadic.hpp"

#include <bit>
#include <span>
#include <stdexcept>
#include <vector>

namespace zperm {

// In-place unnormalized Walsh transform: out_k = sum_x (-1)^{k.x} in_x.
// Self-inverse up to the factor N: applying it twice multiplies by N.
template <class T>
void walsh_hadamard_inplace(std::span<T> a) {
    const std::size_t n = a.size();
    if (n == 0 || !std::has_single_bit(n))
        throw std::invalid_argument("walsh_hadamard: length must be a power of two");
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t i = 0; i < n; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                T u = a[j];
                T v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
        }
    }
}

template <class T>
std::vector<T> walsh_hadamard(std::vector<T> a) {
    walsh_hadamard_inplace(std::span<T>(a));
    return a;
}

inline DyadicVector wht(DyadicVector v) {
    walsh_hadamard_inplace(std::span<Dyadic>(v.values));
    return v;
}

}  // namespace zperm
