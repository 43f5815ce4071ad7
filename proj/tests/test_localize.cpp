#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zperm/localize.hpp"
#include "zperm/rng.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

using namespace zperm;

namespace {

ExactSpectrum random_int_spectrum(int n, std::mt19937_64& rng) {
    ExactSpectrum s(n);
    for (auto& v : s.values) v = Dyadic(static_cast<long long>(rng() % 11) - 5);
    return s;
}

int oracle_min_nnz(const ExactSpectrum& s) {
    std::vector<std::uint32_t> table(s.values.size());
    std::iota(table.begin(), table.end(), 0u);
    int best = std::numeric_limits<int>::max();
    do {
        best = std::min(best, oracle::naive_arrangement_nnz(s, table));
    } while (std::next_permutation(table.begin(), table.end()));
    return best;
}

int oracle_min_locality(const ExactSpectrum& s) {
    std::vector<std::uint32_t> table(s.values.size());
    std::iota(table.begin(), table.end(), 0u);
    int best = std::numeric_limits<int>::max();
    do {
        best = std::min(best, oracle::naive_arrangement_locality(s, table));
    } while (std::next_permutation(table.begin(), table.end()));
    return best;
}

std::vector<Dyadic> sorted_spectrum(const AnyForm& f) {
    auto s = std::get<ExactSpectrum>(any_spectrum_of(f)).values;
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

TEST_CASE("exhaustive search matches a dumb full sweep at n=2") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 20; ++trial) {
        ExactSpectrum s = random_int_spectrum(2, rng);
        bool all_zero = true;
        for (const auto& v : s.values) all_zero = all_zero && v.is_zero();
        if (all_zero) continue;

        const SearchOutcome by_nnz = exhaustive_search(AnySpectrum(s), Objective::min_nnz());
        CHECK(by_nnz.objective_value == static_cast<double>(oracle_min_nnz(s)));
        REQUIRE(std::holds_alternative<ExactForm>(by_nnz.best_form));
        CHECK(nnz(std::get<ExactForm>(by_nnz.best_form)) == static_cast<int>(by_nnz.objective_value));

        const SearchOutcome by_loc = exhaustive_search(AnySpectrum(s), Objective::min_locality());
        CHECK(by_loc.objective_value == static_cast<double>(oracle_min_locality(s)));

        // The found arrangement really carries the input eigenvalues.
        auto sorted_in = s.values;
        std::sort(sorted_in.begin(), sorted_in.end());
        CHECK(sorted_spectrum(by_nnz.best_form) == sorted_in);
    }
}

TEST_CASE("exhaustive search is deterministic and reports evaluations") {
    ExactSpectrum s(2);
    s.values = {Dyadic(3), Dyadic(1), Dyadic(-1), Dyadic(1)};
    const SearchOutcome a = exhaustive_search(AnySpectrum(s), Objective::min_nnz());
    const SearchOutcome b = exhaustive_search(AnySpectrum(s), Objective::min_nnz());
    CHECK(a.best_perm == b.best_perm);
    CHECK(a.evaluations == 24);
    CHECK(a.strategy == SearchStrategy::exhaustive);
}

TEST_CASE("exhaustive search refuses n > 3") {
    ExactSpectrum s(4);
    s.values[0] = Dyadic(1);
    CHECK_THROWS_AS(exhaustive_search(AnySpectrum(s), Objective::min_nnz()), InfeasibleError);
}

TEST_CASE("fit objective reaches zero exactly when the budget is attainable") {
    // Eigenvalues of a single weight-2 term can be rearranged to weight 1.
    ExactForm f(2);
    f.set(0b11, Dyadic(1));
    const ExactSpectrum s = spectrum_of(f);
    const SearchOutcome fit1 = exhaustive_search(AnySpectrum(s), Objective::fit_locality(1));
    CHECK(fit1.objective_value == 0.0);
    REQUIRE(std::holds_alternative<ExactForm>(fit1.best_form));
    CHECK(locality(std::get<ExactForm>(fit1.best_form)) <= 1);

    // No rearrangement of (3,1,1,1) reaches locality 0.
    ExactSpectrum t(2);
    t.values = {Dyadic(3), Dyadic(1), Dyadic(1), Dyadic(1)};
    const SearchOutcome fit0 = exhaustive_search(AnySpectrum(t), Objective::fit_locality(0));
    CHECK(fit0.objective_value > 0.0);
}

TEST_CASE("anneal is deterministic for a fixed seed and never worse than its start") {
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const ExactSpectrum s = random_int_spectrum(n, rng);
        AnnealParams params;
        params.iters = 300;
        params.restarts = 2;
        const SearchOutcome a = anneal_search(AnySpectrum(s), Objective::min_nnz(), params, 42);
        const SearchOutcome b = anneal_search(AnySpectrum(s), Objective::min_nnz(), params, 42);
        CHECK(a.best_perm == b.best_perm);
        CHECK(a.objective_value == b.objective_value);

        // Initial state: eigenvalues sorted descending, transformed directly.
        ExactSpectrum init(n);
        std::vector<Dyadic> sorted_vals = s.values;
        std::stable_sort(sorted_vals.begin(), sorted_vals.end(),
                         [](const Dyadic& x, const Dyadic& y) { return y < x; });
        init.values = sorted_vals;
        CHECK(a.objective_value <= static_cast<double>(nnz(form_of(init))));
    }
}

TEST_CASE("anneal at n=2 finds the true optimum with a modest budget") {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 10; ++trial) {
        const ExactSpectrum s = random_int_spectrum(2, rng);
        bool all_zero = true;
        for (const auto& v : s.values) all_zero = all_zero && v.is_zero();
        if (all_zero) continue;
        AnnealParams params;
        params.iters = 400;
        params.restarts = 4;
        const SearchOutcome got = anneal_search(AnySpectrum(s), Objective::min_nnz(), params, 7);
        CHECK(got.objective_value == static_cast<double>(oracle_min_nnz(s)));
    }
}

TEST_CASE("anneal validates its inputs") {
    ExactSpectrum s(2);
    s.values[0] = Dyadic(1);
    AnnealParams bad;
    bad.iters = -1;
    CHECK_THROWS_AS(anneal_search(AnySpectrum(s), Objective::min_nnz(), bad, 1), std::invalid_argument);
    bad = AnnealParams{};
    bad.cooling = 1.5;
    CHECK_THROWS_AS(anneal_search(AnySpectrum(s), Objective::min_nnz(), bad, 1), std::invalid_argument);
}

TEST_CASE("affine localization reproduces the gallery pair") {
    const SearchOutcome got = affine_localize(AnyForm(example_form_sparse_nonlocal()));
    REQUIRE(std::holds_alternative<ExactForm>(got.best_form));
    CHECK(std::get<ExactForm>(got.best_form) == example_form_sparse_local());
    CHECK(got.objective_value == 1.0);
    CHECK(got.strategy == SearchStrategy::affine);
}

TEST_CASE("affine localization is bounded by the support rank and keeps nnz") {
    std::mt19937_64 rng(127);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const int k_cap = std::min(6, (1 << n) - 1);
        const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(k_cap));
        const RealForm f = sample_random_form(n, k, rng(), rng());
        std::vector<std::uint32_t> masks;
        for (const auto& [mask, coeff] : f.terms) masks.push_back(mask);
        const int rank = gf2_rank(masks);
        const SearchOutcome got = affine_localize(AnyForm(f));
        REQUIRE(std::holds_alternative<RealForm>(got.best_form));
        const RealForm& out = std::get<RealForm>(got.best_form);
        CHECK(locality(out) <= rank);
        CHECK(nnz(out) == nnz(f));
        CHECK(got.best_perm.kind() == PermKind::affine);
    }
}

TEST_CASE("affine localization on exact forms stays exact") {
    ExactForm f(3);
    f.set(0b110, Dyadic(BigInt(3), 1));
    f.set(0b011, Dyadic(-2));
    const SearchOutcome got = affine_localize(AnyForm(f));
    REQUIRE(std::holds_alternative<ExactForm>(got.best_form));
    const ExactForm& out = std::get<ExactForm>(got.best_form);
    CHECK(nnz(out) == 2);
    CHECK(locality(out) <= 2);
    std::vector<Dyadic> coeffs;
    for (const auto& [mask, coeff] : out.terms) coeffs.push_back(coeff);
    std::sort(coeffs.begin(), coeffs.end());
    CHECK(coeffs == std::vector<Dyadic>({Dyadic(-2), Dyadic(BigInt(3), 1)}));
}

TEST_CASE("check_local_map frozen cases") {
    const Permutation id = Permutation::identity(3);
    CHECK(check_local_map(id, {BitVector(3, 0b001)}, 1));
    CHECK(check_local_map(id, {BitVector(3, 0b001), BitVector(3, 0b100)}, 1));
    CHECK(!check_local_map(id, {BitVector(3, 0b111)}, 2));
    CHECK(check_local_map(id, {BitVector(3, 0b111)}, 3));

    // An affine map sends the column J to A^T J.
    const Gf2Matrix a(3, {0b011, 0b010, 0b100});
    const Permutation p = Permutation::affine(a, 0b001);
    const Gf2Matrix at = gf2_transpose(a);
    for (std::uint32_t j = 1; j < 8; ++j) {
        const int w = hamming_weight(at.apply(j));
        CHECK(check_local_map(p, {BitVector(3, j)}, w));
        if (w > 1) CHECK(!check_local_map(p, {BitVector(3, j)}, w - 1));
    }
}

TEST_CASE("generic vector check agrees with the exact test") {
    std::mt19937_64 rng(131);
    int disagreements = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Permutation p = Permutation::random_explicit(3, rng());
        std::vector<BitVector> js;
        const int count = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < count; ++i)
            js.emplace_back(3, static_cast<std::uint32_t>(rng() % 8));
        const int m = static_cast<int>(rng() % 4);
        const bool exact = check_local_map(p, js, m);
        const bool generic = generic_vector_check(p, js, m, rng());
        if (exact != generic) ++disagreements;
    }
    CHECK(disagreements == 0);
}

TEST_CASE("entropy certificates") {
    ExactSpectrum delta(4);
    delta.values[3] = Dyadic(16);

    const Certificate loc = certify(AnySpectrum(delta), 100.0, 1);
    CHECK(loc.kind == CertKind::locality_impossible);
    CHECK(loc.bound == doctest::Approx(16.0));
    CHECK(loc.budget == doctest::Approx(5.0));

    const Certificate none_loc = certify(AnySpectrum(delta), 100.0, 4);
    CHECK(none_loc.kind == CertKind::none);

    const Certificate nnz_cert = certify(AnySpectrum(delta), 10.0);
    CHECK(nnz_cert.kind == CertKind::nnz_impossible);
    CHECK(nnz_cert.budget == doctest::Approx(10.0));

    const Certificate none_nnz = certify(AnySpectrum(delta), 16.0);
    CHECK(none_nnz.kind == CertKind::none);

    // Flat spectrum has full entropy; its bound certifies nothing.
    ExactSpectrum flat(3);
    for (auto& v : flat.values) v = Dyadic(1);
    CHECK(certify(AnySpectrum(flat), 1.0, 0).kind == CertKind::none);

    CHECK_THROWS_AS(certify(AnySpectrum(delta), 1.0, 9), std::invalid_argument);
}

TEST_CASE("certificates never contradict the exhaustive search") {
    std::mt19937_64 rng(53);
    int fired = 0;
    for (int trial = 0; trial < 60; ++trial) {
        ExactSpectrum s(3);
        bool any = false;
        for (auto& v : s.values) {
            v = Dyadic(static_cast<long long>(rng() % 7) - 3);
            any = any || !v.is_zero();
        }
        if (!any) continue;
        for (int m = 0; m <= 3; ++m) {
            const Certificate cert = certify(AnySpectrum(s), 1e18, m);
            if (cert.kind != CertKind::locality_impossible) continue;
            ++fired;
            const SearchOutcome o = exhaustive_search(AnySpectrum(s), Objective::fit_locality(m));
            CHECK(o.objective_value > 0.0);
        }
    }
    CHECK(fired > 0);
}

TEST_CASE("sampled forms have k distinct masks and bounded coefficients") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const RealForm f = sample_random_form(4, 5, mix_seed(seed, 1), mix_seed(seed, 2));
        CHECK(f.n == 4);
        CHECK(f.terms.size() == 5);
        for (const auto& [mask, coeff] : f.terms) {
            CHECK(mask != 0);
            CHECK(mask < 16);
            CHECK(std::abs(coeff) >= 0.1);
            CHECK(std::abs(coeff) <= 1.0);
        }
    }
    CHECK(sample_random_form(4, 5, 8, 9) == sample_random_form(4, 5, 8, 9));
    CHECK_THROWS_AS(sample_random_form(2, 4, 0, 0), std::invalid_argument);
}

TEST_CASE("curve validation") {
    CHECK_THROWS_AS(localizability_curve(4, 1, 1, 3, 5, CurveStrategy::exhaustive, 0), InfeasibleError);
    CHECK_THROWS_AS(localizability_curve(3, 1, 3, 1, 5, CurveStrategy::affine, 0), std::invalid_argument);
    CHECK_THROWS_AS(localizability_curve(3, 9, 1, 3, 5, CurveStrategy::affine, 0), std::invalid_argument);
    CHECK_THROWS_AS(localizability_curve(3, 1, 1, 3, 0, CurveStrategy::affine, 0), std::invalid_argument);
}

TEST_CASE("exhaustive curve brackets collapse to a point estimate") {
    const auto points = localizability_curve(2, 1, 1, 3, 30, CurveStrategy::exhaustive, 11);
    REQUIRE(points.size() == 3);
    for (const auto& pt : points) {
        CHECK(pt.trials == 30);
        CHECK(pt.p_lower == pt.p_upper);
        CHECK(pt.localized + pt.certified_impossible <= pt.trials);
    }
    CHECK(points[0].k == 1);
    CHECK(points[0].p_lower == 1.0);
}

TEST_CASE("affine curve keeps valid brackets") {
    const auto points = localizability_curve(4, 1, 1, 6, 40, CurveStrategy::affine, 13);
    REQUIRE(points.size() == 6);
    for (const auto& pt : points) {
        CHECK(pt.p_lower <= pt.p_upper + 1e-12);
        CHECK(pt.p_lower >= 0.0);
        CHECK(pt.p_upper <= 1.0);
    }
    CHECK(points[0].p_lower == 1.0);
}

TEST_CASE("curve runs are reproducible and the anneal fallback only helps") {
    const auto a = localizability_curve(3, 1, 1, 4, 25, CurveStrategy::affine, 17);
    const auto b = localizability_curve(3, 1, 1, 4, 25, CurveStrategy::affine, 17);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].localized == b[i].localized);
        CHECK(a[i].certified_impossible == b[i].certified_impossible);
    }
    AnnealParams params;
    params.iters = 200;
    params.restarts = 2;
    const auto c = localizability_curve(3, 1, 1, 4, 25, CurveStrategy::affine_anneal, 17, params);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(c[i].localized >= a[i].localized);
}

TEST_CASE("curve CSV round trip") {
    const auto points = localizability_curve(2, 1, 1, 3, 10, CurveStrategy::exhaustive, 3);
    const auto back = parse_curve_csv(curve_to_csv(points));
    REQUIRE(back.size() == points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(back[i].k == points[i].k);
        CHECK(back[i].trials == points[i].trials);
        CHECK(back[i].localized == points[i].localized);
        CHECK(back[i].certified_impossible == points[i].certified_impossible);
        CHECK(back[i].p_lower == doctest::Approx(points[i].p_lower));
        CHECK(back[i].p_upper == doctest::Approx(points[i].p_upper));
    }
}
