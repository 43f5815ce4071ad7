#include "zperm/groupring.hpp"

#include "zperm/wht.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace zperm {

namespace {

void check_same_n(const GroupRingElement& a, const GroupRingElement& b, const char* what) {
    if (a.n != b.n) throw std::invalid_argument(std::string(what) + ": size mismatch");
}

}  // namespace

GroupRingElement gr_add(const GroupRingElement& a, const GroupRingElement& b) {
    check_same_n(a, b, "gr_add");
    GroupRingElement r(a.n);
    for (std::size_t g = 0; g < r.coeffs.size(); ++g) r.coeffs[g] = a.coeffs[g] + b.coeffs[g];
    return r;
}

GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b) {
    check_same_n(a, b, "gr_mul");
    std::vector<Dyadic> fa = a.coeffs.values;
    std::vector<Dyadic> fb = b.coeffs.values;
    walsh_hadamard_inplace(std::span<Dyadic>(fa));
    walsh_hadamard_inplace(std::span<Dyadic>(fb));
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
    walsh_hadamard_inplace(std::span<Dyadic>(fa));
    GroupRingElement r(a.n);
    for (std::size_t g = 0; g < fa.size(); ++g)
        r.coeffs[g] = fa[g].div_pow2(static_cast<std::uint32_t>(a.n));
    return r;
}

Dyadic character(std::uint32_t x, const GroupRingElement& y) {
    Dyadic acc;
    for (std::size_t g = 0; g < y.coeffs.size(); ++g) {
        if (y.coeffs[g].is_zero()) continue;
        acc += parity_sign(x, static_cast<std::uint32_t>(g)) > 0 ? y.coeffs[g] : -y.coeffs[g];
    }
    return acc;
}

std::vector<int> partial_transform(const Permutation& p, std::uint32_t j) {
    const std::size_t size = std::size_t{1} << p.n();
    if (p.n() < 32 && (j >> p.n()) != 0)
        throw std::invalid_argument("partial_transform: J does not fit in n bits");
    std::vector<int> f(size);
    for (std::size_t x = 0; x < size; ++x)
        f[x] = parity_sign(p.apply(static_cast<std::uint32_t>(x)), j);
    return f;
}

GroupRingElement psi(const Permutation& p, std::uint32_t j) {
    const std::vector<int> f = partial_transform(p, j);
    std::vector<long long> w(f.begin(), f.end());
    walsh_hadamard_inplace(std::span<long long>(w));
    GroupRingElement r(p.n());
    for (std::size_t g = 0; g < w.size(); ++g)
        r.coeffs[g] = Dyadic(BigInt(w[g]), static_cast<std::uint32_t>(p.n()));
    return r;
}

std::vector<BitVector> supp(const GroupRingElement& y) {
    std::vector<BitVector> s;
    for (std::size_t g = 0; g < y.coeffs.size(); ++g)
        if (!y.coeffs[g].is_zero()) s.emplace_back(y.n, static_cast<std::uint32_t>(g));
    return s;
}

std::uint32_t nodes_mask(const GroupRingElement& y) {
    std::uint32_t m = 0;
    for (std::size_t g = 0; g < y.coeffs.size(); ++g)
        if (!y.coeffs[g].is_zero()) m |= static_cast<std::uint32_t>(g);
    return m;
}

std::set<int> nodes(const GroupRingElement& y) {
    const std::uint32_t m = nodes_mask(y);
    std::set<int> sites;
    for (int i = 0; i < y.n; ++i)
        if ((m >> (y.n - 1 - i)) & 1u) sites.insert(i);
    return sites;
}

std::uint32_t nodes_mask_of_set(const Permutation& p, const std::vector<BitVector>& js) {
    std::uint32_t m = 0;
    for (const auto& j : js) {
        if (j.n != p.n()) throw std::invalid_argument("nodes_mask_of_set: length mismatch");
        m |= nodes_mask(psi(p, j.bits));
    }
    return m;
}

int locality(const GroupRingElement& y) {
    int m = 0;
    for (std::size_t g = 0; g < y.coeffs.size(); ++g)
        if (!y.coeffs[g].is_zero())
            m = std::max(m, hamming_weight(static_cast<std::uint32_t>(g)));
    return m;
}

std::pair<DyadicVector, DyadicVector> weight_class_split(const DyadicVector& c, const BitVector& delta) {
    if (delta.n != c.n) throw std::invalid_argument("weight_class_split: length mismatch");
    if (hamming_weight(delta) != 1)
        throw std::invalid_argument("weight_class_split: delta must have weight 1");
    DyadicVector minus(c.n), plus(c.n);
    for (std::size_t x = 0; x < c.size(); ++x) {
        // Representative with the delta bit cleared; both halves are constant
        // along delta by construction.
        const std::size_t y = x & ~static_cast<std::size_t>(delta.bits);
        const Dyadic& cy = c[y];
        const Dyadic& cyd = c[y ^ delta.bits];
        minus[x] = (cy - cyd).div_pow2(1);
        plus[x] = (cy + cyd).div_pow2(1);
    }
    return {std::move(minus), std::move(plus)};
}

namespace {

// Shared per-permutation state for the verifiers: the psi images and a
// cache of pairwise products.
class LemmaContext {
  public:
    explicit LemmaContext(const Permutation& p) : perm_(p), n_(p.n()) {
        if (n_ > 5)
            throw std::invalid_argument("verify_lemma: enumerating all J needs n <= 5, got " +
                                        std::to_string(n_));
        const std::size_t size = std::size_t{1} << n_;
        psis_.reserve(size);
        for (std::size_t j = 0; j < size; ++j)
            psis_.push_back(psi(perm_, static_cast<std::uint32_t>(j)));
        products_.resize(size * size);
    }

    int n() const { return n_; }
    std::size_t group_size() const { return psis_.size(); }
    const Permutation& perm() const { return perm_; }
    const GroupRingElement& image(std::size_t j) const { return psis_[j]; }

    const GroupRingElement& product(std::size_t j1, std::size_t j2) {
        auto& slot = products_[pair_index(j1, j2)];
        if (!slot) slot = gr_mul(psis_[j1], psis_[j2]);
        return *slot;
    }

  private:
    std::size_t pair_index(std::size_t j1, std::size_t j2) const {
        return j1 * group_size() + j2;
    }

    Permutation perm_;
    int n_;
    std::vector<GroupRingElement> psis_;
    std::vector<std::optional<GroupRingElement>> products_;
};

std::string jname(int n, std::size_t j) {
    return bits_to_string(n, static_cast<std::uint32_t>(j));
}

// Locality with the scalar case lifted to 1; the support/denominator bounds
// degenerate at m = 0 where the image is the unit.
int clamped_locality(const GroupRingElement& y) { return std::max(locality(y), 1); }

LemmaReport lemma_psichi(LemmaContext& ctx) {
    LemmaReport rep{"psichi", 0, {}};
    const std::size_t size = ctx.group_size();
    ++rep.instances_checked;
    if (ctx.image(0) != GroupRingElement::unit(ctx.n()))
        rep.violations.push_back("psi(0) is not the unit");
    for (std::size_t j1 = 0; j1 < size; ++j1)
        for (std::size_t j2 = j1 + 1; j2 < size; ++j2) {
            ++rep.instances_checked;
            if (ctx.image(j1) == ctx.image(j2))
                rep.violations.push_back("psi not injective: J1=" + jname(ctx.n(), j1) +
                                         " J2=" + jname(ctx.n(), j2));
        }
    for (std::size_t j1 = 0; j1 < size; ++j1)
        for (std::size_t j2 = 0; j2 < size; ++j2) {
            ++rep.instances_checked;
            if (ctx.product(j1, j2) != ctx.image(j1 ^ j2))
                rep.violations.push_back("psi(J1)psi(J2) != psi(J1^J2) for J1=" +
                                         jname(ctx.n(), j1) + " J2=" + jname(ctx.n(), j2));
        }
    return rep;
}

LemmaReport lemma_powercoef(LemmaContext& ctx) {
    LemmaReport rep{"powercoef", 0, {}};
    for (std::size_t j = 0; j < ctx.group_size(); ++j) {
        const GroupRingElement& y = ctx.image(j);
        const std::uint32_t budget = static_cast<std::uint32_t>(clamped_locality(y) - 1);
        for (std::size_t g = 0; g < y.coeffs.size(); ++g) {
            if (y.coeffs[g].is_zero()) continue;
            ++rep.instances_checked;
            if (y.coeffs[g].log2_denominator() > budget)
                rep.violations.push_back("a_g has denominator 2^" +
                                         std::to_string(y.coeffs[g].log2_denominator()) +
                                         " > 2^" + std::to_string(budget) + " at J=" +
                                         jname(ctx.n(), j) + " g=" + jname(ctx.n(), g));
        }
    }
    return rep;
}

LemmaReport lemma_boundparseval(LemmaContext& ctx) {
    LemmaReport rep{"boundparseval", 0, {}};
    for (std::size_t j = 0; j < ctx.group_size(); ++j) {
        const GroupRingElement& y = ctx.image(j);
        Dyadic norm;
        std::size_t nnz = 0;
        for (const auto& c : y.coeffs.values) {
            if (c.is_zero()) continue;
            norm += c * c;
            ++nnz;
        }
        ++rep.instances_checked;
        if (!(norm == Dyadic::one()))
            rep.violations.push_back("sum of squared coefficients is " + norm.to_string() +
                                     " != 1 at J=" + jname(ctx.n(), j));
        const int m = clamped_locality(y);
        const std::size_t cap = std::size_t{1} << (2 * m - 2);
        ++rep.instances_checked;
        if (nnz > cap)
            rep.violations.push_back("support size " + std::to_string(nnz) + " > " +
                                     std::to_string(cap) + " at J=" + jname(ctx.n(), j));
    }
    return rep;
}

LemmaReport lemma_bound_node(LemmaContext& ctx) {
    LemmaReport rep{"bound_node", 0, {}};
    for (std::size_t j = 0; j < ctx.group_size(); ++j) {
        const GroupRingElement& y = ctx.image(j);
        const int m = locality(y);
        const std::size_t cap =
            static_cast<std::size_t>(m) << (2 * clamped_locality(y) - 2);
        const int node_count = hamming_weight(nodes_mask(y));
        ++rep.instances_checked;
        if (static_cast<std::size_t>(node_count) > cap)
            rep.violations.push_back("node count " + std::to_string(node_count) + " > " +
                                     std::to_string(cap) + " at J=" + jname(ctx.n(), j));
    }
    return rep;
}

LemmaReport lemma_bignodebound(LemmaContext& ctx, const std::optional<std::vector<BitVector>>& gens) {
    LemmaReport rep{"bignodebound", 0, {}};
    std::vector<BitVector> basis;
    if (gens) {
        basis = *gens;
    } else {
        for (int i = 0; i < ctx.n(); ++i) basis.emplace_back(ctx.n(), 1u << i);
    }
    const std::vector<BitVector> subgroup = gf2_span(ctx.n(), basis);
    std::uint32_t all_nodes = 0;
    int m = 0;
    for (const auto& j : subgroup) {
        const GroupRingElement& y = ctx.image(j.bits);
        all_nodes |= nodes_mask(y);
        m = std::max(m, locality(y));
    }
    const std::size_t b = static_cast<std::size_t>(m) << (2 * std::max(m, 1) - 2);
    const std::size_t cap = b * b * b;
    ++rep.instances_checked;
    if (static_cast<std::size_t>(hamming_weight(all_nodes)) > cap)
        rep.violations.push_back("subgroup node count " +
                                 std::to_string(hamming_weight(all_nodes)) + " > " +
                                 std::to_string(cap));
    return rep;
}

LemmaReport lemma_nonzeromult(LemmaContext& ctx) {
    LemmaReport rep{"nonzeromult", 0, {}};
    const std::size_t size = ctx.group_size();
    std::vector<std::uint32_t> node_masks(size);
    for (std::size_t j = 0; j < size; ++j) node_masks[j] = nodes_mask(ctx.image(j));
    for (int bit = 0; bit < ctx.n(); ++bit) {
        const std::uint32_t g = 1u << bit;
        for (std::size_t j1 = 0; j1 < size; ++j1) {
            if (!(node_masks[j1] & g)) continue;  // b = 0, lemma does not apply
            for (std::size_t j2 = 0; j2 < size; ++j2) {
                if (node_masks[j2] & g) continue;  // c must be g-free
                ++rep.instances_checked;
                if (!(nodes_mask(ctx.product(j1, j2)) & g))
                    rep.violations.push_back("g dropped from nodes: g=" + jname(ctx.n(), g) +
                                             " J1=" + jname(ctx.n(), j1) +
                                             " J2=" + jname(ctx.n(), j2));
            }
        }
    }
    return rep;
}

// Grid membership: v in {-1, -1 + d, ..., 1} for d = 2^log2_half_steps... d
// given as the dyadic 2 / 2^k; v + 1 must be a nonnegative multiple of d
// no larger than 2.
bool on_grid(const Dyadic& v, std::uint32_t k) {
    if (v.abs() > Dyadic::one()) return false;
    const Dyadic steps = (v + Dyadic::one()) * Dyadic(BigInt(1) << k, 1);
    return steps.is_integer();
}

LemmaReport lemma_weight_split(LemmaContext& ctx) {
    LemmaReport rep{"weight_split", 0, {}};
    const std::size_t size = ctx.group_size();
    for (std::size_t j = 0; j < size; ++j) {
        const std::vector<int> f = partial_transform(ctx.perm(), static_cast<std::uint32_t>(j));
        DyadicVector c(ctx.n());
        for (std::size_t x = 0; x < f.size(); ++x) c[x] = Dyadic(f[x]);
        for (int bit = 0; bit < ctx.n(); ++bit) {
            const BitVector delta(ctx.n(), 1u << bit);
            const auto [minus, plus] = weight_class_split(c, delta);
            for (std::size_t x = 0; x < c.size(); ++x) {
                ++rep.instances_checked;
                // Half-step grid (d = 1) and exact reconstruction.
                const bool grid_ok = on_grid(minus[x], 1) && on_grid(plus[x], 1);
                const Dyadic back = (gf2_dot(static_cast<std::uint32_t>(x), delta.bits)
                                         ? -minus[x]
                                         : minus[x]) +
                                    plus[x];
                if (!grid_ok || !(back == c[x]))
                    rep.violations.push_back("split failed at J=" + jname(ctx.n(), j) +
                                             " delta=" + to_string(delta) +
                                             " x=" + jname(ctx.n(), x));
            }
        }
    }
    return rep;
}

LemmaReport run_one(LemmaContext& ctx, const std::string& id,
                    const std::optional<std::vector<BitVector>>& gens) {
    if (id == "psichi") return lemma_psichi(ctx);
    if (id == "powercoef") return lemma_powercoef(ctx);
    if (id == "boundparseval") return lemma_boundparseval(ctx);
    if (id == "bound_node") return lemma_bound_node(ctx);
    if (id == "bignodebound") return lemma_bignodebound(ctx, gens);
    if (id == "nonzeromult") return lemma_nonzeromult(ctx);
    if (id == "weight_split") return lemma_weight_split(ctx);
    throw std::invalid_argument("unknown lemma id \"" + id + "\"");
}

}  // namespace

const std::vector<std::string>& lemma_ids() {
    static const std::vector<std::string> ids = {
        "psichi", "powercoef", "boundparseval", "bound_node",
        "bignodebound", "nonzeromult", "weight_split"};
    return ids;
}

LemmaReport verify_lemma(const std::string& lemma_id, const Permutation& p,
                         const std::optional<std::vector<BitVector>>& subgroup_gens) {
    LemmaContext ctx(p);
    return run_one(ctx, lemma_id, subgroup_gens);
}

std::vector<LemmaReport> run_lemma_suite(const Permutation& p, const std::vector<std::string>& ids,
                                         const std::optional<std::vector<BitVector>>& subgroup_gens) {
    LemmaContext ctx(p);
    std::vector<LemmaReport> reports;
    reports.reserve(ids.size());
    for (const auto& id : ids) reports.push_back(run_one(ctx, id, subgroup_gens));
    return reports;
}

std::string lemma_reports_to_json(const std::vector<LemmaReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json doc;
        doc["lemma_id"] = r.lemma_id;
        doc["instances_checked"] = r.instances_checked;
        doc["violations"] = r.violations;
        arr.push_back(std::move(doc));
    }
    return arr.dump(2) + "\n";
}

std::vector<LemmaReport> lemma_reports_from_json(const std::string& text) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("lemma report JSON: ") + e.what());
    }
    if (!arr.is_array()) throw std::invalid_argument("lemma report JSON: expected an array");
    std::vector<LemmaReport> reports;
    reports.reserve(arr.size());
    for (const auto& doc : arr) {
        LemmaReport r;
        try {
            r.lemma_id = doc.at("lemma_id").get<std::string>();
            r.instances_checked = doc.at("instances_checked").get<long long>();
            r.violations = doc.at("violations").get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("lemma report JSON: ") + e.what());
        }
        reports.push_back(std::move(r));
    }
    return reports;
}

}  // namespace zperm
