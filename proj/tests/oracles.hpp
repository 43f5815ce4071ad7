#pragma once

// Brute-force reference implementations used only by tests. Each one follows
// the defining formulas directly so it shares no code path with the library.

#include "zperm/diagform.hpp"
#include "zperm/dyadic.hpp"
#include "zperm/perm.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace oracle {

// y_hat[k] = sum_x (-1)^{popcount(k & x)} y[x], O(4^n).
template <class T>
std::vector<T> naive_wht(const std::vector<T>& y) {
    std::vector<T> out(y.size(), T(0));
    for (std::size_t k = 0; k < y.size(); ++k)
        for (std::size_t x = 0; x < y.size(); ++x) {
            if (std::popcount(k & x) % 2)
                out[k] -= y[x];
            else
                out[k] += y[x];
        }
    return out;
}

// c[g] = sum_h a[h] b[g ^ h], O(4^n).
template <class T>
std::vector<T> naive_xor_convolution(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> c(a.size(), T(0));
    for (std::size_t g = 0; g < a.size(); ++g)
        for (std::size_t h = 0; h < a.size(); ++h) c[g] += a[h] * b[g ^ h];
    return c;
}

// a^J_g = 2^-n sum_x (-1)^{g.x} (-1)^{pi(x).J} straight from the definition.
inline zperm::Dyadic naive_psi_coeff(const zperm::Permutation& p, std::uint32_t j, std::uint32_t g) {
    const std::size_t size = std::size_t{1} << p.n();
    zperm::BigInt total = 0;
    for (std::size_t x = 0; x < size; ++x) {
        const int sign = zperm::parity_sign(g, static_cast<std::uint32_t>(x)) *
                         zperm::parity_sign(p.apply(static_cast<std::uint32_t>(x)), j);
        total += sign;
    }
    return zperm::Dyadic(total, static_cast<std::uint32_t>(p.n()));
}

// Exact nnz of the form obtained by laying out spectrum values in the order
// table[i] = destination of entry i, then transforming. Used to cross-check
// search results without touching the search code.
inline int naive_arrangement_nnz(const zperm::ExactSpectrum& s, const std::vector<std::uint32_t>& table) {
    std::vector<zperm::Dyadic> w(s.values.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[table[i]] = s.values[i];
    w = naive_wht(w);
    int count = 0;
    for (const auto& v : w)
        if (!v.is_zero()) ++count;
    return count;
}

inline int naive_arrangement_locality(const zperm::ExactSpectrum& s, const std::vector<std::uint32_t>& table) {
    std::vector<zperm::Dyadic> w(s.values.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[table[i]] = s.values[i];
    w = naive_wht(w);
    int m = 0;
    for (std::size_t mask = 0; mask < w.size(); ++mask)
        if (!w[mask].is_zero()) m = std::max(m, std::popcount(static_cast<std::uint32_t>(mask)));
    return m;
}

}  // namespace oracle
