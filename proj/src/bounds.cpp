#include "zperm/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace zperm {

namespace {

void check_m(int m) {
    if (m < 1 || m > 64)
        throw std::invalid_argument("bound_chain: m must be in [1,64], got " + std::to_string(m));
}

std::string bigfloat_str(const BigFloat& v) {
    std::ostringstream out;
    out.precision(15);
    out << std::scientific << v;
    return out.str();
}

}  // namespace

BoundChain bound_chain(int m) {
    check_m(m);
    BoundChain ch;
    ch.m = m;
    ch.a = BigInt(1) << (2 * m - 2);
    ch.b = m * ch.a;
    ch.d = ch.b * ch.b * ch.b;
    ch.e = pow(ch.d, static_cast<unsigned>(m));
    const BigInt base = (BigInt(1) << m) + 1;
    ch.log2_g = BigFloat(ch.e) * log2(BigFloat(base));
    return ch;
}

bool gm_closed_form_check(int m) {
    check_m(m);
    const BoundChain ch = bound_chain(m);
    const BigInt closed = pow(BigInt(m), static_cast<unsigned>(3 * m)) *
                          pow(BigInt(64), static_cast<unsigned>(m * m - m));
    return ch.e == closed;
}

double bh_entropy_bits(double mass_kg) {
    if (!(mass_kg > 0.0)) throw std::invalid_argument("bh_entropy_bits: mass must be positive");
    const auto& pc = physical_constants;
    return 4.0 * std::numbers::pi * pc.newton_g * mass_kg * mass_kg /
           (pc.hbar * pc.c * std::numbers::ln2);
}

std::vector<std::pair<std::string, double>> default_cosmic_masses() {
    return {
        {"solar_mass", 1.989e30},
        {"neutron_star_1p4_solar", 2.785e30},
        {"stellar_black_hole_10_solar", 1.989e31},
        {"sagittarius_a_star", 8.54e36},
    };
}

CosmicReport cosmic_table(int m_max, const std::vector<std::pair<std::string, double>>& masses) {
    check_m(m_max);
    CosmicReport rep;
    rep.chains.reserve(static_cast<std::size_t>(m_max));
    for (int m = 1; m <= m_max; ++m) rep.chains.push_back(bound_chain(m));
    for (const auto& [label, mass] : masses) {
        CosmicRow row;
        row.label = label;
        row.mass_kg = mass;
        row.entropy_bits = bh_entropy_bits(mass);
        const BigFloat target(row.entropy_bits);
        for (const auto& ch : rep.chains) {
            if (ch.log2_g > target) {
                row.first_m_exceeding = ch.m;
                break;
            }
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::string bounds_to_csv(const std::vector<BoundChain>& chains) {
    std::string out = "m,A,B,D,E_bitlength,log2_G\n";
    for (const auto& ch : chains) {
        const unsigned bitlength = static_cast<unsigned>(msb(ch.e)) + 1;
        out += std::to_string(ch.m) + "," + ch.a.str() + "," + ch.b.str() + "," + ch.d.str() +
               "," + std::to_string(bitlength) + "," + bigfloat_str(ch.log2_g) + "\n";
    }
    return out;
}

std::string cosmic_rows_to_csv(const std::vector<CosmicRow>& rows) {
    std::string out = "label,mass_kg,entropy_bits,first_m_exceeding\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.6e", r.mass_kg);
        out += r.label + "," + buf;
        std::snprintf(buf, sizeof buf, "%.6e", r.entropy_bits);
        out += std::string(",") + buf + ",";
        out += r.first_m_exceeding < 0 ? std::string("none") : std::to_string(r.first_m_exceeding);
        out += "\n";
    }
    return out;
}

namespace {

std::vector<std::string> csv_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, ',')) fields.push_back(cur);
    return fields;
}

constexpr const char* kBoundsHeader = "m,A,B,D,E_bitlength,log2_G";
constexpr const char* kCosmicHeader = "label,mass_kg,entropy_bits,first_m_exceeding";

// Walks a (possibly multi-section) CSV text and hands `take` the data lines
// that sit under `own_header`. Text with no section headers at all is treated
// as a bare block of the caller's own kind.
template <class Fn>
void scan_csv_section(const std::string& text, const char* own_header, const char* other_header,
                      Fn take) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    enum class Section { unknown, own, other } section = Section::unknown;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line == own_header) {
            section = Section::own;
            continue;
        }
        if (line == other_header) {
            section = Section::other;
            continue;
        }
        if (section == Section::other) continue;
        take(line, lineno);
    }
}

}  // namespace

std::vector<BoundCsvRow> parse_bounds_csv(const std::string& text) {
    std::vector<BoundCsvRow> rows;
    scan_csv_section(text, kBoundsHeader, kCosmicHeader, [&](const std::string& line, std::size_t lineno) {
        const auto f = csv_fields(line);
        if (f.size() != 6)
            throw std::invalid_argument("bounds CSV line " + std::to_string(lineno) +
                                        ": expected 6 fields");
        BoundCsvRow row;
        row.m = std::stoi(f[0]);
        row.a = BigInt(f[1]);
        row.b = BigInt(f[2]);
        row.d = BigInt(f[3]);
        row.e_bitlength = static_cast<unsigned>(std::stoul(f[4]));
        row.log2_g = BigFloat(f[5]);
        rows.push_back(std::move(row));
    });
    return rows;
}

std::vector<CosmicRow> parse_cosmic_csv(const std::string& text) {
    std::vector<CosmicRow> rows;
    scan_csv_section(text, kCosmicHeader, kBoundsHeader, [&](const std::string& line, std::size_t lineno) {
        const auto f = csv_fields(line);
        if (f.size() != 4)
            throw std::invalid_argument("cosmic CSV line " + std::to_string(lineno) +
                                        ": expected 4 fields");
        CosmicRow row;
        row.label = f[0];
        row.mass_kg = std::stod(f[1]);
        row.entropy_bits = std::stod(f[2]);
        row.first_m_exceeding = f[3] == "none" ? -1 : std::stoi(f[3]);
        rows.push_back(std::move(row));
    });
    return rows;
}

}  // namespace zperm
