#include "zperm/localize.hpp"

#include "zperm/groupring.hpp"
#include "zperm/rng.hpp"
#include "zperm/wht.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace zperm {

namespace {

// Dense double table of the spectrum values.
std::vector<double> real_values(const AnySpectrum& s) {
    return to_real(s).values;
}

int spectrum_n(const AnySpectrum& s) {
    return std::visit([](const auto& v) { return v.n; }, s);
}

struct CostEval {
    double cost = 0.0;
    int nnz = 0;
    int locality = 0;
};

// Coefficients of the arrangement w (w[x] = lambda at position x), zeroed
// below 1e-12 of the largest magnitude, then scored per objective.
CostEval evaluate_arrangement(const std::vector<double>& w, const Objective& obj,
                              std::vector<double>& scratch) {
    scratch = w;
    walsh_hadamard_inplace(std::span<double>(scratch));
    const double scale = 1.0 / static_cast<double>(w.size());
    double max_abs = 0.0;
    for (double& v : scratch) {
        v *= scale;
        max_abs = std::max(max_abs, std::abs(v));
    }
    const double eps = 1e-12 * max_abs;
    CostEval e;
    double fit_sum = 0.0;
    for (std::size_t k = 0; k < scratch.size(); ++k) {
        if (std::abs(scratch[k]) <= eps) continue;
        ++e.nnz;
        const int weight = hamming_weight(static_cast<std::uint32_t>(k));
        e.locality = std::max(e.locality, weight);
        if (weight > obj.m) fit_sum += std::abs(scratch[k]);
    }
    switch (obj.kind) {
        case ObjectiveKind::min_nnz: e.cost = e.nnz; break;
        case ObjectiveKind::min_locality: e.cost = e.locality; break;
        case ObjectiveKind::fit_locality: e.cost = fit_sum; break;
    }
    return e;
}

// Final outcome assembly: exact inputs get an exactly recomputed best form
// and objective value; float inputs reuse the float duality.
SearchOutcome finish_outcome(const AnySpectrum& s, const Objective& obj,
                             const std::vector<std::uint32_t>& best_table, double scanned_value,
                             SearchStrategy strategy, long long evaluations) {
    SearchOutcome out;
    out.best_perm = Permutation::from_table(best_table);
    out.strategy = strategy;
    out.evaluations = evaluations;
    if (const auto* es = std::get_if<ExactSpectrum>(&s)) {
        const ExactForm f = form_of(permute_spectrum(out.best_perm, *es));
        switch (obj.kind) {
            case ObjectiveKind::min_nnz: out.objective_value = nnz(f); break;
            case ObjectiveKind::min_locality: out.objective_value = locality(f); break;
            case ObjectiveKind::fit_locality: {
                double sum = 0.0;
                for (const auto& [mask, coeff] : f.terms)
                    if (hamming_weight(mask) > obj.m) sum += std::abs(coeff.to_double());
                out.objective_value = sum;
                break;
            }
        }
        out.best_form = f;
    } else {
        const auto& rs = std::get<RealSpectrum>(s);
        out.best_form = form_of(permute_spectrum(out.best_perm, rs));
        out.objective_value = scanned_value;
    }
    return out;
}

}  // namespace

SearchOutcome exhaustive_search(const AnySpectrum& s, Objective obj) {
    const int n = spectrum_n(s);
    if (n > 3) {
        const char* sizes = (n == 4) ? "16! = 20922789888000" : "(2^n)!";
        throw InfeasibleError("exhaustive_search: n = " + std::to_string(n) +
                              " would enumerate " + sizes +
                              " permutations; refusing (supported for n <= 3)");
    }
    const std::vector<double> lambda = real_values(s);
    const std::size_t size = lambda.size();

    std::vector<std::uint32_t> perm(size);
    std::iota(perm.begin(), perm.end(), 0u);
    std::vector<double> w(size), scratch;
    std::vector<std::uint32_t> best_table;
    double best_cost = 0.0;
    long long evaluations = 0;

    do {
        // perm is the permutation table: position perm[i] receives lambda_i.
        for (std::size_t i = 0; i < size; ++i) w[perm[i]] = lambda[i];
        const CostEval e = evaluate_arrangement(w, obj, scratch);
        ++evaluations;
        if (best_table.empty() || e.cost < best_cost) {
            best_cost = e.cost;
            best_table = perm;
            if (obj.kind == ObjectiveKind::fit_locality && best_cost == 0.0) break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    return finish_outcome(s, obj, best_table, best_cost, SearchStrategy::exhaustive, evaluations);
}

SearchOutcome anneal_search(const AnySpectrum& s, Objective obj, const AnnealParams& params,
                            std::uint64_t seed) {
    const int n = spectrum_n(s);
    if (n > 12)
        throw std::invalid_argument("anneal_search: table permutations need n <= 12, got " +
                                    std::to_string(n));
    if (params.iters < 0 || params.restarts < 1 || !(params.cooling > 0.0) ||
        !(params.cooling < 1.0) || !(params.t0 > 0.0))
        throw std::invalid_argument("anneal_search: bad annealing parameters");
    const std::vector<double> lambda = real_values(s);
    const std::size_t size = lambda.size();

    // Start from the spectrum sorted descending: pos[x] = source index whose
    // value sits at position x (ties broken by index for determinism).
    std::vector<std::uint32_t> pos0(size);
    std::iota(pos0.begin(), pos0.end(), 0u);
    std::stable_sort(pos0.begin(), pos0.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return lambda[a] > lambda[b]; });

    std::vector<double> scratch;
    std::vector<std::uint32_t> best_pos;
    double best_cost = 0.0;
    long long evaluations = 0;
    bool have_best = false;

    for (int restart = 0; restart < params.restarts && !(have_best && best_cost == 0.0 &&
                                                         obj.kind == ObjectiveKind::fit_locality);
         ++restart) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
        std::vector<std::uint32_t> pos = pos0;
        std::vector<double> w(size);
        for (std::size_t x = 0; x < size; ++x) w[x] = lambda[pos[x]];
        double cost = evaluate_arrangement(w, obj, scratch).cost;
        ++evaluations;
        if (!have_best || cost < best_cost) {
            best_cost = cost;
            best_pos = pos;
            have_best = true;
        }
        double t = params.t0;
        for (int iter = 0; iter < params.iters; ++iter, t *= params.cooling) {
            if (best_cost == 0.0 && obj.kind == ObjectiveKind::fit_locality) break;
            const std::size_t i = static_cast<std::size_t>(uniform_below(rng, size));
            std::size_t j = static_cast<std::size_t>(uniform_below(rng, size - 1));
            if (j >= i) ++j;
            std::swap(w[i], w[j]);
            const double next_cost = evaluate_arrangement(w, obj, scratch).cost;
            ++evaluations;
            const double delta = next_cost - cost;
            if (delta <= 0.0 || uniform_unit(rng) < std::exp(-delta / t)) {
                cost = next_cost;
                std::swap(pos[i], pos[j]);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_pos = pos;
                }
            } else {
                std::swap(w[i], w[j]);  // reject
            }
        }
    }

    // pos maps position -> source index; the permutation maps source -> position.
    std::vector<std::uint32_t> table(size);
    for (std::size_t x = 0; x < size; ++x) table[best_pos[x]] = static_cast<std::uint32_t>(x);
    return finish_outcome(s, obj, table, best_cost, SearchStrategy::anneal, evaluations);
}

namespace {

template <class Scalar>
SearchOutcome affine_localize_impl(const BasicForm<Scalar>& f) {
    const int n = f.n;
    // Maximal independent subset of the support, in ascending mask order,
    // then filled up to a full basis with single-site masks.
    std::vector<std::uint32_t> basis_rows;
    std::vector<std::uint32_t> pivots;
    const auto try_insert = [&](std::uint32_t mask) {
        std::uint32_t m = mask;
        for (std::uint32_t p : pivots)
            if (std::uint32_t h = m ^ p; h < m) m = h;
        if (!m) return false;
        pivots.push_back(m);
        basis_rows.push_back(mask);
        return true;
    };
    for (const auto& [mask, coeff] : f.terms) try_insert(mask);
    const int rank = static_cast<int>(basis_rows.size());
    for (int bit = 0; bit < n && static_cast<int>(basis_rows.size()) < n; ++bit)
        try_insert(1u << bit);

    // Rows of A are the basis masks, so A^T has them as columns and the
    // conjugation support map A^-T sends basis mask i to single-site 1<<i.
    const Permutation p = Permutation::affine(Gf2Matrix(n, std::move(basis_rows)), 0);
    BasicForm<Scalar> g = conjugate_form(p, f);

    SearchOutcome out;
    out.best_perm = p;
    out.best_form = g;
    out.objective_value = locality(g);
    out.strategy = SearchStrategy::affine;
    out.evaluations = 1;
    if (locality(g) > rank)
        throw std::logic_error("affine_localize: rank bound violated");
    return out;
}

}  // namespace

SearchOutcome affine_localize(const AnyForm& f) {
    return std::visit([](const auto& g) { return affine_localize_impl(g); }, f);
}

bool check_local_map(const Permutation& p, const std::vector<BitVector>& js, int m) {
    for (const auto& j : js) {
        if (j.n != p.n()) throw std::invalid_argument("check_local_map: length mismatch");
        if (locality(psi(p, j.bits)) > m) return false;
    }
    return true;
}

bool generic_vector_check(const Permutation& p, const std::vector<BitVector>& js, int m,
                          std::uint64_t seed) {
    const int n = p.n();
    const std::size_t size = std::size_t{1} << n;
    std::mt19937_64 rng(seed);
    std::vector<double> v(size, 0.0);
    double norm_sq = 0.0;
    for (const auto& j : js) {
        if (j.n != n) throw std::invalid_argument("generic_vector_check: length mismatch");
        const double c = 1.0 + uniform_unit(rng);
        norm_sq += c * c;
        const std::vector<int> f = partial_transform(p, j.bits);
        for (std::size_t x = 0; x < size; ++x) v[x] += c * f[x];
    }
    walsh_hadamard_inplace(std::span<double>(v));
    const double eps = 1e-9 * std::sqrt(norm_sq);
    for (std::size_t i = 0; i < size; ++i)
        if (hamming_weight(static_cast<std::uint32_t>(i)) > m && std::abs(v[i]) > eps)
            return false;
    return true;
}

Certificate certify(const AnySpectrum& s, double nnz_budget, std::optional<int> m) {
    const int n = spectrum_n(s);
    const double h = std::visit([](const auto& v) { return shannon_entropy(v); }, s);
    const double bound = std::exp2(static_cast<double>(n) - h);
    if (m) {
        if (*m < 0 || *m > n) throw std::invalid_argument("certify: m out of range");
        double budget = 0.0, binom = 1.0;
        for (int i = 0; i <= *m; ++i) {
            budget += binom;
            binom = binom * (n - i) / (i + 1);
        }
        if (bound > budget) return {CertKind::locality_impossible, bound, budget};
    }
    if (bound > nnz_budget) return {CertKind::nnz_impossible, bound, nnz_budget};
    return {CertKind::none, bound, nnz_budget};
}

RealForm sample_random_form(int n, int k, std::uint64_t coeff_seed, std::uint64_t mask_seed) {
    if (n < 1 || n > 24) throw std::invalid_argument("sample_random_form: n must be in [1,24]");
    const std::uint64_t max_masks = (std::uint64_t{1} << n) - 1;
    if (k < 1 || static_cast<std::uint64_t>(k) > max_masks)
        throw std::invalid_argument("sample_random_form: k must be in [1, 2^n - 1]");
    std::mt19937_64 mask_rng(mask_seed);
    std::mt19937_64 coeff_rng(coeff_seed);
    RealForm f(n);
    std::set<std::uint32_t> used;
    while (static_cast<int>(used.size()) < k) {
        const std::uint32_t mask = static_cast<std::uint32_t>(uniform_below(mask_rng, max_masks)) + 1;
        if (!used.insert(mask).second) continue;
        const double sign = (coeff_rng() & 1u) ? -1.0 : 1.0;
        const double mag = 0.1 + 0.9 * uniform_unit(coeff_rng);
        f.terms.emplace(mask, sign * mag);
    }
    return f;
}

std::vector<CurvePoint> localizability_curve(int n, int m, int k_min, int k_max, int trials,
                                             CurveStrategy strategy, std::uint64_t seed,
                                             const AnnealParams& anneal) {
    if (n < 1 || n > 12) throw std::invalid_argument("localizability_curve: n must be in [1,12]");
    if (strategy == CurveStrategy::exhaustive && n > 3)
        throw InfeasibleError("localizability_curve: exhaustive strategy needs n <= 3");
    if (m < 0 || m > n) throw std::invalid_argument("localizability_curve: m out of range");
    if (k_min < 1 || k_min > k_max || static_cast<std::uint64_t>(k_max) >= (std::uint64_t{1} << n))
        throw std::invalid_argument("localizability_curve: need 1 <= k_min <= k_max < 2^n");
    if (trials < 1) throw std::invalid_argument("localizability_curve: trials must be positive");

    std::vector<CurvePoint> points;
    for (int k = k_min; k <= k_max; ++k) {
        CurvePoint pt;
        pt.k = k;
        pt.trials = trials;
        for (int trial = 0; trial < trials; ++trial) {
            const RealForm f = sample_random_form(
                n, k, mix_seed(seed, static_cast<std::uint64_t>(k), 2 * static_cast<std::uint64_t>(trial)),
                mix_seed(seed, static_cast<std::uint64_t>(k), 2 * static_cast<std::uint64_t>(trial) + 1));
            const RealSpectrum lambda = spectrum_of(f);
            const Certificate cert =
                certify(AnySpectrum(lambda), static_cast<double>(std::size_t{1} << n), m);
            if (cert.kind == CertKind::locality_impossible) {
                ++pt.certified_impossible;
                continue;
            }
            bool success = false;
            switch (strategy) {
                case CurveStrategy::exhaustive: {
                    const SearchOutcome out =
                        exhaustive_search(AnySpectrum(lambda), Objective::fit_locality(m));
                    success = out.objective_value == 0.0;
                    if (!success) ++pt.certified_impossible;  // the sweep is a decision
                    break;
                }
                case CurveStrategy::affine: {
                    const SearchOutcome out = affine_localize(AnyForm(f));
                    success = out.objective_value <= m;
                    break;
                }
                case CurveStrategy::affine_anneal: {
                    const SearchOutcome aff = affine_localize(AnyForm(f));
                    success = aff.objective_value <= m;
                    if (!success) {
                        const SearchOutcome out = anneal_search(
                            AnySpectrum(lambda), Objective::fit_locality(m), anneal,
                            mix_seed(seed, static_cast<std::uint64_t>(k),
                                     static_cast<std::uint64_t>(trial), 0xA11EA1));
                        success = out.objective_value == 0.0;
                    }
                    break;
                }
            }
            if (success) ++pt.localized;
        }
        pt.p_lower = static_cast<double>(pt.localized) / trials;
        pt.p_upper = 1.0 - static_cast<double>(pt.certified_impossible) / trials;
        points.push_back(pt);
    }
    return points;
}

std::string curve_to_csv(const std::vector<CurvePoint>& points) {
    std::string out = "k,trials,localized,certified_impossible,p_lower,p_upper\n";
    char buf[128];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%.6f,%.6f\n", p.k, p.trials, p.localized,
                      p.certified_impossible, p.p_lower, p.p_upper);
        out += buf;
    }
    return out;
}

std::vector<CurvePoint> parse_curve_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<CurvePoint> points;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || line.rfind("k,", 0) == 0) continue;
        CurvePoint p;
        if (std::sscanf(line.c_str(), "%d,%d,%d,%d,%lf,%lf", &p.k, &p.trials, &p.localized,
                        &p.certified_impossible, &p.p_lower, &p.p_upper) != 6)
            throw std::invalid_argument("curve CSV line " + std::to_string(lineno) +
                                        ": expected 6 comma-separated fields");
        points.push_back(p);
    }
    return points;
}

}  // namespace zperm
