#pragma once

#include "zperm/bitvec.hpp"
#include "zperm/dyadic.hpp"
#include "zperm/perm.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace zperm {

// Element of the group algebra R[Z_2^n], dense coefficient table indexed by
// group element. Multiplication is XOR convolution.
struct GroupRingElement {
    int n = 0;
    DyadicVector coeffs;

    GroupRingElement() = default;
    explicit GroupRingElement(int n_) : n(n_), coeffs(n_) {}

    static GroupRingElement unit(int n) {
        GroupRingElement e(n);
        e.coeffs[0] = Dyadic::one();
        return e;
    }

    bool is_zero() const {
        for (const auto& c : coeffs.values)
            if (!c.is_zero()) return false;
        return true;
    }

    friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;
};

GroupRingElement gr_add(const GroupRingElement& a, const GroupRingElement& b);

// XOR convolution: (a*b)_g = sum_h a_h b_{g^h}. Runs through the Walsh
// transform (diagonalization) with an exact division by 2^n at the end.
GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b);

// Character chi_x(y) = sum_g y_g (-1)^{x.g}; an algebra homomorphism to R.
Dyadic character(std::uint32_t x, const GroupRingElement& y);

// Value table x -> (-1)^{pi(x).J}.
std::vector<int> partial_transform(const Permutation& p, std::uint32_t j);

// The group ring image of J under pi: coefficients
// a^J_g = 2^-n sum_x (-1)^{g.x} (-1)^{pi(x).J}. J -> psi(pi,J) is an
// injective homomorphism from (Z_2^n, xor) into the units of the algebra.
GroupRingElement psi(const Permutation& p, std::uint32_t j);

std::vector<BitVector> supp(const GroupRingElement& y);

// Union of the support masks: the set of sites the element touches.
std::uint32_t nodes_mask(const GroupRingElement& y);
std::set<int> nodes(const GroupRingElement& y);

// Union of nodes(psi(p, J)) over all J in the set.
std::uint32_t nodes_mask_of_set(const Permutation& p, const std::vector<BitVector>& js);

// Largest Hamming weight over the support; 0 for scalars.
int locality(const GroupRingElement& y);

// Splits a value table C against a weight-1 direction delta:
// C(x) = (-1)^{delta.x} D_minus(x) + D_plus(x) with both halves constant
// along delta. Values of C on the grid {-1, -1+d, ..., 1} land on the
// half-step grid {-1, -1+d/2, ..., 1}.
std::pair<DyadicVector, DyadicVector> weight_class_split(const DyadicVector& c, const BitVector& delta);

struct LemmaReport {
    std::string lemma_id;
    long long instances_checked = 0;
    std::vector<std::string> violations;

    bool passed() const { return violations.empty(); }
};

// Verifiers for the structural facts about psi images. All enumerate every
// J (and pair of J's where relevant), so they require n <= 5. Locality
// budgets are measured from the images themselves, never assumed.
//
//   psichi        psi(0) = 1, injectivity, psi(J1)psi(J2) = psi(J1^J2)
//   powercoef     nonzero a^J_g have log2_denominator <= locality - 1
//   boundparseval sum_g (a^J_g)^2 = 1 and |supp| <= 2^(2m-2)
//   bound_node    |nodes| <= m 2^(2m-2)
//   bignodebound  |nodes of a subgroup's images| <= (m 2^(2m-2))^3
//   nonzeromult   weight-1 g in nodes(psi(J1)) stays in nodes of products
//                 with g-free psi(J2)
//   weight_split  weight_class_split halves the value grid of each F_J table
//
// bignodebound takes subgroup generators (defaults to the whole group).
LemmaReport verify_lemma(const std::string& lemma_id, const Permutation& p,
                         const std::optional<std::vector<BitVector>>& subgroup_gens = std::nullopt);

const std::vector<std::string>& lemma_ids();

// Runs several verifiers over one permutation, sharing the psi images and
// product tables between them.
std::vector<LemmaReport> run_lemma_suite(const Permutation& p, const std::vector<std::string>& ids,
                                         const std::optional<std::vector<BitVector>>& subgroup_gens = std::nullopt);

std::string lemma_reports_to_json(const std::vector<LemmaReport>& reports);
std::vector<LemmaReport> lemma_reports_from_json(const std::string& text);

}  // namespace zperm
