#pragma once

#include "zperm/bitvec.hpp"
#include "zperm/diagform.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zperm {

enum class PermKind { explicit_table, affine };

// Bijection of Z_2^n, stored either as a full table (n <= 12) or as an
// invertible affine map x -> A x ^ b (n <= 24). Spectra move contravariantly:
// (pi.lambda)_x = lambda_{pi^-1(x)}, i.e. the matrix (pi)_{x,y} = [x == pi(y)].
class Permutation {
  public:
    static Permutation identity(int n);
    static Permutation from_table(std::vector<std::uint32_t> table);
    static Permutation affine(Gf2Matrix a, std::uint32_t b);
    // Uniform over all (2^n)! tables; n <= 12.
    static Permutation random_explicit(int n, std::uint64_t seed);
    // Uniform invertible A (rejection sampling) and uniform b; n <= 24.
    static Permutation random_affine(int n, std::uint64_t seed);

    int n() const { return n_; }
    PermKind kind() const { return kind_; }
    const std::vector<std::uint32_t>& table() const { return table_; }
    const Gf2Matrix& matrix() const { return a_; }
    std::uint32_t offset() const { return b_; }

    std::uint32_t apply(std::uint32_t x) const {
        return kind_ == PermKind::explicit_table ? table_[x] : a_.apply(x) ^ b_;
    }
    BitVector apply(const BitVector& x) const {
        if (x.n != n_) throw std::invalid_argument("Permutation::apply: length mismatch");
        return BitVector(n_, apply(x.bits));
    }

    Permutation inverse() const;

    // Materialized table of this permutation (explicit kind returns a copy).
    std::vector<std::uint32_t> to_table() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

  private:
    Permutation() = default;

    int n_ = 0;
    PermKind kind_ = PermKind::explicit_table;
    std::vector<std::uint32_t> table_;  // explicit kind
    Gf2Matrix a_;                       // affine kind
    std::uint32_t b_ = 0;
};

// compose(p, q)(x) = p(q(x)). Affine pairs stay affine; mixed kinds are
// materialized as an explicit table.
Permutation compose(const Permutation& p, const Permutation& q);

// JSON: {"kind":"table","map":[...]} or {"kind":"affine","A":[rows],"b":"..."}
// with matrix rows and b written as site-order bitstrings (row i = output
// site i as a combination of input sites).
Permutation permutation_from_json_text(const std::string& text);
std::string permutation_to_json_text(const Permutation& p);

template <class Scalar>
BasicSpectrum<Scalar> permute_spectrum(const Permutation& p, const BasicSpectrum<Scalar>& s) {
    if (s.n != p.n()) throw std::invalid_argument("permute_spectrum: length mismatch");
    BasicSpectrum<Scalar> out(s.n);
    for (std::size_t x = 0; x < s.values.size(); ++x)
        out.values[p.apply(static_cast<std::uint32_t>(x))] = s.values[x];
    return out;
}

namespace detail {

// gamma'_k = (-1)^{k.b} gamma_{A^T k}; support moves by A^-T, so term count
// is preserved without any arithmetic on coefficients.
template <class Scalar>
BasicForm<Scalar> conjugate_affine(const Gf2Matrix& a, std::uint32_t b, const BasicForm<Scalar>& f) {
    const Gf2Matrix a_inv_t = gf2_transpose(gf2_inverse(a));
    BasicForm<Scalar> out(f.n);
    for (const auto& [mask, coeff] : f.terms) {
        const std::uint32_t k = a_inv_t.apply(mask);
        out.terms.emplace(k, gf2_dot(k, b) ? -coeff : coeff);
    }
    return out;
}

}  // namespace detail

// Form of the permuted spectrum. Affine permutations use the closed form;
// explicit tables go through the spectrum and back.
template <class Scalar>
BasicForm<Scalar> conjugate_form(const Permutation& p, const BasicForm<Scalar>& f) {
    if (f.n != p.n()) throw std::invalid_argument("conjugate_form: length mismatch");
    if (p.kind() == PermKind::affine) return detail::conjugate_affine(p.matrix(), p.offset(), f);
    return form_of(permute_spectrum(p, spectrum_of(f)));
}

}  // namespace zperm
