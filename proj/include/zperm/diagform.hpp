#pragma once

#include "zperm/bitvec.hpp"
#include "zperm/dyadic.hpp"
#include "zperm/wht.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace zperm {

// A diagonal Z-string combination sum_t gamma_t Z^t on n sites. Terms are kept
// sparse with zero coefficients dropped; masks use the BitVector site order.
// Scalar is Dyadic (exact mode) or double (float mode).
template <class Scalar>
struct BasicForm {
    int n = 0;
    std::map<std::uint32_t, Scalar> terms;

    BasicForm() = default;
    explicit BasicForm(int n_) : n(n_) {
        if (n < 1 || n > 24) throw std::invalid_argument("BasicForm: n must be in [1,24]");
    }

    void set(std::uint32_t mask, Scalar coeff) {
        if (n < 32 && (mask >> n) != 0)
            throw std::invalid_argument("BasicForm: mask does not fit in n bits");
        terms[mask] = std::move(coeff);
    }

    friend bool operator==(const BasicForm&, const BasicForm&) = default;
};

using ExactForm = BasicForm<Dyadic>;
using RealForm = BasicForm<double>;

// Eigenvalue table of a diagonal form: values[x] for each basis index x.
template <class Scalar>
struct BasicSpectrum {
    int n = 0;
    std::vector<Scalar> values;

    BasicSpectrum() = default;
    explicit BasicSpectrum(int n_) : n(n_), values(std::size_t{1} << n_) {
        if (n < 1 || n > 24) throw std::invalid_argument("BasicSpectrum: n must be in [1,24]");
    }

    friend bool operator==(const BasicSpectrum&, const BasicSpectrum&) = default;
};

using ExactSpectrum = BasicSpectrum<Dyadic>;
using RealSpectrum = BasicSpectrum<double>;

using AnyForm = std::variant<ExactForm, RealForm>;
using AnySpectrum = std::variant<ExactSpectrum, RealSpectrum>;

inline double scalar_to_double(const Dyadic& v) { return v.to_double(); }
inline double scalar_to_double(double v) { return v; }

// lambda_x = sum_t gamma_t (-1)^{t.x}; an unnormalized Walsh transform of the
// dense coefficient table.
template <class Scalar>
BasicSpectrum<Scalar> spectrum_of(const BasicForm<Scalar>& f) {
    BasicSpectrum<Scalar> s(f.n);
    for (const auto& [mask, coeff] : f.terms) s.values[mask] = coeff;
    walsh_hadamard_inplace(std::span<Scalar>(s.values));
    return s;
}

// gamma_t = 2^-n sum_x lambda_x (-1)^{t.x}. Exact for Dyadic scalars; for
// double scalars coefficients below 1e-12 of the largest are dropped.
inline ExactForm form_of(const ExactSpectrum& s) {
    std::vector<Dyadic> g = s.values;
    walsh_hadamard_inplace(std::span<Dyadic>(g));
    ExactForm f(s.n);
    for (std::size_t mask = 0; mask < g.size(); ++mask) {
        Dyadic c = g[mask].div_pow2(static_cast<std::uint32_t>(s.n));
        if (!c.is_zero()) f.terms.emplace(static_cast<std::uint32_t>(mask), std::move(c));
    }
    return f;
}

inline RealForm form_of(const RealSpectrum& s) {
    std::vector<double> g = s.values;
    walsh_hadamard_inplace(std::span<double>(g));
    const double scale = 1.0 / static_cast<double>(std::size_t{1} << s.n);
    double max_abs = 0.0;
    for (double& v : g) {
        v *= scale;
        max_abs = std::max(max_abs, std::abs(v));
    }
    RealForm f(s.n);
    for (std::size_t mask = 0; mask < g.size(); ++mask)
        if (std::abs(g[mask]) > 1e-12 * max_abs && g[mask] != 0.0)
            f.terms.emplace(static_cast<std::uint32_t>(mask), g[mask]);
    return f;
}

// Number of stored (nonzero) terms.
template <class Scalar>
int nnz(const BasicForm<Scalar>& f) {
    return static_cast<int>(f.terms.size());
}

// Largest Hamming weight over the support; 0 for an empty or identity form.
template <class Scalar>
int locality(const BasicForm<Scalar>& f) {
    int m = 0;
    for (const auto& [mask, coeff] : f.terms) m = std::max(m, hamming_weight(mask));
    return m;
}

// Shannon entropy (bits) of v^2 / sum v^2 over the table entries.
// Throws if every entry is zero.
inline double shannon_entropy(const std::vector<double>& values) {
    double total = 0.0;
    for (double v : values) total += v * v;
    if (total <= 0.0) throw std::invalid_argument("shannon_entropy: all-zero table");
    double h = 0.0;
    for (double v : values) {
        if (v == 0.0) continue;
        const double p = v * v / total;
        h -= p * std::log2(p);
    }
    return h;
}

template <class Scalar>
double shannon_entropy(const BasicSpectrum<Scalar>& s) {
    std::vector<double> vals;
    vals.reserve(s.values.size());
    for (const auto& v : s.values) vals.push_back(scalar_to_double(v));
    return shannon_entropy(vals);
}

// Entropy of the coefficient distribution; absent terms are zero and drop out.
template <class Scalar>
double coefficient_entropy(const BasicForm<Scalar>& f) {
    std::vector<double> vals;
    vals.reserve(f.terms.size());
    for (const auto& [mask, coeff] : f.terms) vals.push_back(scalar_to_double(coeff));
    return shannon_entropy(vals);
}

// 2^{n - h(spectrum)}: no permutation of the spectrum admits a form with
// fewer terms than this.
template <class Scalar>
double nnz_lower_bound(const BasicSpectrum<Scalar>& s) {
    return std::exp2(static_cast<double>(s.n) - shannon_entropy(s));
}

// h(spectrum) + h(coefficients) - n; nonnegative up to roundoff for any
// spectrum/form pair related by the duality.
template <class Scalar>
double uncertainty_check(const BasicSpectrum<Scalar>& s, const BasicForm<Scalar>& f) {
    return shannon_entropy(s) + coefficient_entropy(f) - static_cast<double>(s.n);
}

struct FormMetrics {
    int nnz = 0;
    int locality = 0;
    double entropy = 0.0;         // of the form's spectrum
    double nnz_lower_bound = 0.0; // 2^{n - entropy}
};

template <class Scalar>
FormMetrics form_metrics(const BasicForm<Scalar>& f) {
    FormMetrics m;
    m.nnz = nnz(f);
    m.locality = locality(f);
    const auto s = spectrum_of(f);
    m.entropy = shannon_entropy(s);
    m.nnz_lower_bound = std::exp2(static_cast<double>(f.n) - m.entropy);
    return m;
}

// Z-string of a mask, site 0 leftmost: n=4, mask 1001 -> "ZIIZ".
std::string mask_to_zstring(int n, std::uint32_t mask);
std::uint32_t zstring_to_mask(const std::string& s, int n);

// Form files: JSON {"n","mode","terms":[...]} or plain text "coeff ZSTRING"
// lines. Detection is by leading '{'. Errors carry line/term diagnostics.
AnyForm parse_form(const std::string& text);
std::string serialize_form_json(const AnyForm& f);
std::string serialize_form_text(const AnyForm& f);

// Spectrum files: JSON array (numbers or {"num","log2den"} objects) or CSV
// "index,value" rows with an optional header.
AnySpectrum parse_spectrum(const std::string& text);
std::string serialize_spectrum_json(const AnySpectrum& s);
std::string serialize_spectrum_csv(const AnySpectrum& s);

int form_n(const AnyForm& f);
AnySpectrum any_spectrum_of(const AnyForm& f);
FormMetrics any_form_metrics(const AnyForm& f);
RealSpectrum to_real(const AnySpectrum& s);
RealForm to_real(const AnyForm& f);

std::string metrics_to_json(const FormMetrics& m);
FormMetrics metrics_from_json(const std::string& text);

// Worked-example gallery, all n=4 with identical eigenvalue multisets:
// a 4-term weight-1 form, a 4-term prefix-mask form of locality 4, and an
// 11-term dense form obtained from the weight-1 spectrum by swapping the
// entries at indices 0 and 8.
ExactForm example_form_sparse_local();
ExactForm example_form_sparse_nonlocal();
ExactForm example_form_dense();

}  // namespace zperm
