#pragma once

#include "zperm/dyadic.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <string>
#include <utility>
#include <vector>

namespace zperm {

// 50 decimal digits with a wide exponent; log2_G overflows double for large m.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

// Composed counting bounds for images of locality m, ending in the term-count
// bound G = (2^m + 1)^E which is only ever represented through its log.
struct BoundChain {
    int m = 0;
    BigInt a;         // 2^{2m-2}, support size
    BigInt b;         // m * a, node count
    BigInt d;         // b^3, node count closed under sums of three
    BigInt e;         // d^m
    BigFloat log2_g;  // e * log2(2^m + 1)
};

// Exact a, b, d, e and log2_g within 1e-12 relative error; 1 <= m <= 64.
BoundChain bound_chain(int m);

// Exact big-integer identity e == m^{3m} * 64^{m^2 - m}.
bool gm_closed_form_check(int m);

// CODATA-2018 SI values, frozen for reproducible output.
struct PhysicalConstants {
    double newton_g = 6.67430e-11;   // m^3 kg^-1 s^-2
    double hbar = 1.054571817e-34;   // J s
    double c = 2.99792458e8;         // m s^-1
};

inline constexpr PhysicalConstants physical_constants{};

// Maximum entropy of the mass compressed to a black hole:
// 4 pi G M^2 / (hbar c ln 2) bits. Throws for mass <= 0.
double bh_entropy_bits(double mass_kg);

struct CosmicRow {
    std::string label;
    double mass_kg = 0.0;
    double entropy_bits = 0.0;
    int first_m_exceeding = -1;  // smallest m with log2_G > entropy_bits; -1 if none
};

struct CosmicReport {
    std::vector<BoundChain> chains;  // m = 1..m_max
    std::vector<CosmicRow> rows;
};

std::vector<std::pair<std::string, double>> default_cosmic_masses();

// Bound sweep next to mass entropies; empty mass list gives a bounds-only
// report.
CosmicReport cosmic_table(int m_max, const std::vector<std::pair<std::string, double>>& masses);

// CSV "m,A,B,D,E_bitlength,log2_G".
std::string bounds_to_csv(const std::vector<BoundChain>& chains);

// CSV "label,mass_kg,entropy_bits,first_m_exceeding" ("none" when the sweep
// never exceeds).
std::string cosmic_rows_to_csv(const std::vector<CosmicRow>& rows);

struct BoundCsvRow {
    int m = 0;
    BigInt a, b, d;
    unsigned e_bitlength = 0;
    BigFloat log2_g;
};

std::vector<BoundCsvRow> parse_bounds_csv(const std::string& text);
std::vector<CosmicRow> parse_cosmic_csv(const std::string& text);

}  // namespace zperm
