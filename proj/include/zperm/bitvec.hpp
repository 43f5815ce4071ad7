#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zperm {

// Elements of Z_2^n for 1 <= n <= 24, packed into a word.
// Site p (leftmost letter of a Z-string) is bit (n-1-p), so the all-sites
// string "Z...Z" is the mask 2^n - 1 and site 0 is the most significant bit.
struct BitVector {
    int n = 0;
    std::uint32_t bits = 0;

    BitVector() = default;
    BitVector(int n_, std::uint32_t bits_) : n(n_), bits(bits_) {
        if (n < 1 || n > 24)
            throw std::invalid_argument("BitVector: n must be in [1,24], got " + std::to_string(n));
        if (n < 32 && (bits >> n) != 0)
            throw std::invalid_argument("BitVector: value " + std::to_string(bits) +
                                        " does not fit in " + std::to_string(n) + " bits");
    }

    friend bool operator==(const BitVector&, const BitVector&) = default;
    friend auto operator<=>(const BitVector& a, const BitVector& b) {
        if (auto c = a.n <=> b.n; c != 0) return c;
        return a.bits <=> b.bits;
    }
};

inline BitVector operator^(const BitVector& a, const BitVector& b) {
    if (a.n != b.n) throw std::invalid_argument("BitVector xor: length mismatch");
    return BitVector(a.n, a.bits ^ b.bits);
}

inline BitVector operator&(const BitVector& a, const BitVector& b) {
    if (a.n != b.n) throw std::invalid_argument("BitVector and: length mismatch");
    return BitVector(a.n, a.bits & b.bits);
}

inline int hamming_weight(const BitVector& v) { return std::popcount(v.bits); }
inline int hamming_weight(std::uint32_t bits) { return std::popcount(bits); }

// GF(2) inner product a.b (parity of the overlap).
inline int gf2_dot(std::uint32_t a, std::uint32_t b) { return std::popcount(a & b) & 1; }
inline int gf2_dot(const BitVector& a, const BitVector& b) {
    if (a.n != b.n) throw std::invalid_argument("gf2_dot: length mismatch");
    return gf2_dot(a.bits, b.bits);
}

// Parity character (-1)^{a.b}; the sign attached to mask a at index b.
inline int parity_sign(std::uint32_t a, std::uint32_t b) { return gf2_dot(a, b) ? -1 : 1; }

// Bit i of the word is written at string position n-1-i (site order).
inline std::string bits_to_string(int n, std::uint32_t bits) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if ((bits >> (n - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

inline std::string to_string(const BitVector& v) { return bits_to_string(v.n, v.bits); }

inline BitVector bitvector_from_string(const std::string& s) {
    const int n = static_cast<int>(s.size());
    if (n < 1 || n > 24)
        throw std::invalid_argument("bitvector_from_string: length must be in [1,24]");
    std::uint32_t bits = 0;
    for (int i = 0; i < n; ++i) {
        char c = s[static_cast<std::size_t>(i)];
        if (c == '1')
            bits |= 1u << (n - 1 - i);
        else if (c != '0')
            throw std::invalid_argument("bitvector_from_string: bad character '" +
                                        std::string(1, c) + "' in \"" + s + "\"");
    }
    return BitVector(n, bits);
}

// Rank of the span of the given masks over GF(2).
inline int gf2_rank(const std::vector<std::uint32_t>& masks) {
    std::vector<std::uint32_t> pivots;
    for (std::uint32_t m : masks) {
        for (std::uint32_t p : pivots)
            if (std::uint32_t h = m ^ p; h < m) m = h;
        if (m) pivots.push_back(m);
    }
    return static_cast<int>(pivots.size());
}

inline int gf2_rank(const std::vector<BitVector>& vs) {
    std::vector<std::uint32_t> masks;
    masks.reserve(vs.size());
    for (const auto& v : vs) masks.push_back(v.bits);
    return gf2_rank(masks);
}

// All XOR combinations of the generators, sorted ascending. Caps the generator
// count so the result stays below 2^20 elements.
inline std::vector<BitVector> gf2_span(int n, const std::vector<BitVector>& gens) {
    if (gens.size() > 20)
        throw std::invalid_argument("gf2_span: more than 20 generators");
    std::vector<std::uint32_t> elems{0};
    std::vector<std::uint32_t> pivots;
    for (const auto& g : gens) {
        if (g.n != n) throw std::invalid_argument("gf2_span: generator length mismatch");
        std::uint32_t m = g.bits;
        for (std::uint32_t p : pivots)
            if (std::uint32_t h = m ^ p; h < m) m = h;
        if (!m) continue;
        pivots.push_back(m);
        const std::size_t sz = elems.size();
        for (std::size_t i = 0; i < sz; ++i) elems.push_back(elems[i] ^ g.bits);
    }
    std::sort(elems.begin(), elems.end());
    std::vector<BitVector> out;
    out.reserve(elems.size());
    for (std::uint32_t e : elems) out.emplace_back(n, e);
    return out;
}

// Invertible linear maps on Z_2^n. rows[i] holds the input mask feeding output
// bit i: (A x)_i = parity(rows[i] & x).
struct Gf2Matrix {
    int n = 0;
    std::vector<std::uint32_t> rows;

    Gf2Matrix() = default;
    Gf2Matrix(int n_, std::vector<std::uint32_t> rows_) : n(n_), rows(std::move(rows_)) {
        if (n < 1 || n > 24) throw std::invalid_argument("Gf2Matrix: n must be in [1,24]");
        if (rows.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("Gf2Matrix: expected " + std::to_string(n) + " rows");
        for (std::uint32_t r : rows)
            if (n < 32 && (r >> n) != 0)
                throw std::invalid_argument("Gf2Matrix: row does not fit in n bits");
    }

    static Gf2Matrix identity(int n) {
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = 1u << i;
        return Gf2Matrix(n, std::move(rows));
    }

    std::uint32_t apply(std::uint32_t x) const {
        std::uint32_t y = 0;
        for (int i = 0; i < n; ++i)
            y |= static_cast<std::uint32_t>(gf2_dot(rows[static_cast<std::size_t>(i)], x)) << i;
        return y;
    }

    friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;
};

inline Gf2Matrix gf2_transpose(const Gf2Matrix& a) {
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(a.n), 0);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            if ((a.rows[static_cast<std::size_t>(i)] >> j) & 1u)
                rows[static_cast<std::size_t>(j)] |= 1u << i;
    return Gf2Matrix(a.n, std::move(rows));
}

// (a*b) x = a (b x).
inline Gf2Matrix gf2_mul(const Gf2Matrix& a, const Gf2Matrix& b) {
    if (a.n != b.n) throw std::invalid_argument("gf2_mul: size mismatch");
    const Gf2Matrix bt = gf2_transpose(b);
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(a.n), 0);
    for (int i = 0; i < a.n; ++i) {
        std::uint32_t r = 0;
        for (int j = 0; j < a.n; ++j)
            r |= static_cast<std::uint32_t>(gf2_dot(a.rows[static_cast<std::size_t>(i)],
                                                    bt.rows[static_cast<std::size_t>(j)]))
                 << j;
        rows[static_cast<std::size_t>(i)] = r;
    }
    return Gf2Matrix(a.n, std::move(rows));
}

inline bool gf2_is_invertible(const Gf2Matrix& a) { return gf2_rank(a.rows) == a.n; }

// Gauss-Jordan over GF(2); throws on singular input.
inline Gf2Matrix gf2_inverse(const Gf2Matrix& a) {
    const int n = a.n;
    std::vector<std::uint32_t> m = a.rows;
    Gf2Matrix inv = Gf2Matrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if ((m[static_cast<std::size_t>(r)] >> col) & 1u) { pivot = r; break; }
        if (pivot < 0) throw std::invalid_argument("gf2_inverse: matrix is singular");
        std::swap(m[static_cast<std::size_t>(col)], m[static_cast<std::size_t>(pivot)]);
        std::swap(inv.rows[static_cast<std::size_t>(col)], inv.rows[static_cast<std::size_t>(pivot)]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            if ((m[static_cast<std::size_t>(r)] >> col) & 1u) {
                m[static_cast<std::size_t>(r)] ^= m[static_cast<std::size_t>(col)];
                inv.rows[static_cast<std::size_t>(r)] ^= inv.rows[static_cast<std::size_t>(col)];
            }
        }
    }
    return inv;
}

}  // namespace zperm
