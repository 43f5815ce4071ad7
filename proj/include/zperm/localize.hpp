#pragma once

#include "zperm/diagform.hpp"
#include "zperm/perm.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zperm {

// Raised when a requested search is refused outright (for example an
// exhaustive sweep over (2^n)! permutations with n > 3).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ObjectiveKind { min_nnz, min_locality, fit_locality };

struct Objective {
    ObjectiveKind kind = ObjectiveKind::min_nnz;
    int m = 0;  // fit_locality target

    static Objective min_nnz() { return {ObjectiveKind::min_nnz, 0}; }
    static Objective min_locality() { return {ObjectiveKind::min_locality, 0}; }
    static Objective fit_locality(int m) { return {ObjectiveKind::fit_locality, m}; }
};

enum class SearchStrategy { exhaustive, affine, anneal };

struct SearchOutcome {
    Permutation best_perm = Permutation::identity(1);
    AnyForm best_form;
    double objective_value = 0.0;
    SearchStrategy strategy = SearchStrategy::exhaustive;
    long long evaluations = 0;
};

struct AnnealParams {
    int iters = 2000;
    double t0 = 1.0;
    double cooling = 0.995;
    int restarts = 4;
};

// Sweeps every table permutation of the spectrum in lexicographic order and
// keeps the first optimum. Costs evaluate in double with relative zero
// threshold 1e-12; exact inputs get their best form recomputed exactly.
// Refuses n > 3.
SearchOutcome exhaustive_search(const AnySpectrum& s, Objective obj);

// Simulated annealing over transpositions of the permuted spectrum, geometric
// cooling t0 * cooling^iter, started from the spectrum sorted descending.
// Deterministic for fixed (spectrum, objective, params, seed); the result is
// never worse than the initial state. Needs n <= 12.
SearchOutcome anneal_search(const AnySpectrum& s, Objective obj, const AnnealParams& params,
                            std::uint64_t seed);

// Conjugates by the affine map sending a maximal independent subset of the
// support to single-site masks; resulting locality never exceeds the GF(2)
// rank of the support.
SearchOutcome affine_localize(const AnyForm& f);

// True when every J in js has psi(p, J) supported on weight <= m. Exact.
bool check_local_map(const Permutation& p, const std::vector<BitVector>& js, int m);

// Same predicate tested on one random positive combination: transforms
// x = sum c_J e_J through the permuted Walsh sandwich and looks for mass on
// weight > m, zero-tested at 1e-9 * |x|. Agrees with check_local_map except
// for measure-zero coefficient draws.
bool generic_vector_check(const Permutation& p, const std::vector<BitVector>& js, int m,
                          std::uint64_t seed);

enum class CertKind { none, nnz_impossible, locality_impossible };

struct Certificate {
    CertKind kind = CertKind::none;
    double bound = 0.0;   // 2^{n - h(spectrum)}, holds for every permutation
    double budget = 0.0;  // the budget the bound beat (or the nnz budget if none)
};

// Entropy certificate: no permutation of s can produce fewer than `bound`
// terms, so budgets under it are impossible regardless of the search.
Certificate certify(const AnySpectrum& s, double nnz_budget, std::optional<int> m = std::nullopt);

// k distinct nonzero masks (rejection sampled) with coefficients uniform in
// [-1,-0.1] u [0.1,1]; the two streams are independent.
RealForm sample_random_form(int n, int k, std::uint64_t coeff_seed, std::uint64_t mask_seed);

enum class CurveStrategy { exhaustive, affine, affine_anneal };

struct CurvePoint {
    int k = 0;
    int trials = 0;
    int localized = 0;
    int certified_impossible = 0;
    double p_lower = 0.0;  // localized / trials
    double p_upper = 0.0;  // 1 - certified_impossible / trials
};

// Fraction of random k-term forms that admit locality <= m under the chosen
// strategy. Certificates and exhaustive failures count toward the upper
// bound; p_lower <= p_upper always, with equality for the exhaustive
// strategy. Trials are reproducible per (seed, k, trial).
std::vector<CurvePoint> localizability_curve(int n, int m, int k_min, int k_max, int trials,
                                             CurveStrategy strategy, std::uint64_t seed,
                                             const AnnealParams& anneal = {});

std::string curve_to_csv(const std::vector<CurvePoint>& points);
std::vector<CurvePoint> parse_curve_csv(const std::string& text);

}  // namespace zperm
