#include "zperm/perm.hpp"

#include "zperm/rng.hpp"

#include <json.hpp>

#include <numeric>

namespace zperm {

namespace {

void check_n(int n, int max_n, const char* what) {
    if (n < 1 || n > max_n)
        throw std::invalid_argument(std::string(what) + ": n must be in [1," +
                                    std::to_string(max_n) + "], got " + std::to_string(n));
}

}  // namespace

Permutation Permutation::identity(int n) {
    check_n(n, 24, "Permutation::identity");
    return affine(Gf2Matrix::identity(n), 0);
}

Permutation Permutation::from_table(std::vector<std::uint32_t> table) {
    const std::size_t size = table.size();
    int n = -1;
    for (int k = 1; k <= 12; ++k)
        if (size == (std::size_t{1} << k)) n = k;
    if (n < 0)
        throw std::invalid_argument("Permutation::from_table: table length must be 2^n, n in [1,12]");
    std::vector<bool> seen(size, false);
    for (std::uint32_t v : table) {
        if (v >= size)
            throw std::invalid_argument("Permutation::from_table: entry " + std::to_string(v) +
                                        " out of range");
        if (seen[v])
            throw std::invalid_argument("Permutation::from_table: entry " + std::to_string(v) +
                                        " repeated; not a bijection");
        seen[v] = true;
    }
    Permutation p;
    p.n_ = n;
    p.kind_ = PermKind::explicit_table;
    p.table_ = std::move(table);
    return p;
}

Permutation Permutation::affine(Gf2Matrix a, std::uint32_t b) {
    check_n(a.n, 24, "Permutation::affine");
    if (!gf2_is_invertible(a))
        throw std::invalid_argument("Permutation::affine: matrix is singular");
    if (a.n < 32 && (b >> a.n) != 0)
        throw std::invalid_argument("Permutation::affine: offset does not fit in n bits");
    Permutation p;
    p.n_ = a.n;
    p.kind_ = PermKind::affine;
    p.a_ = std::move(a);
    p.b_ = b;
    return p;
}

Permutation Permutation::random_explicit(int n, std::uint64_t seed) {
    check_n(n, 12, "Permutation::random_explicit");
    std::vector<std::uint32_t> table(std::size_t{1} << n);
    std::iota(table.begin(), table.end(), 0u);
    std::mt19937_64 rng(seed);
    fisher_yates(table, rng);
    return from_table(std::move(table));
}

Permutation Permutation::random_affine(int n, std::uint64_t seed) {
    check_n(n, 24, "Permutation::random_affine");
    std::mt19937_64 rng(seed);
    const std::uint64_t bound = std::uint64_t{1} << n;
    for (;;) {
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(n));
        for (auto& r : rows) r = static_cast<std::uint32_t>(uniform_below(rng, bound));
        Gf2Matrix a(n, std::move(rows));
        if (!gf2_is_invertible(a)) continue;
        const std::uint32_t b = static_cast<std::uint32_t>(uniform_below(rng, bound));
        return affine(std::move(a), b);
    }
}

Permutation Permutation::inverse() const {
    if (kind_ == PermKind::explicit_table) {
        std::vector<std::uint32_t> inv(table_.size());
        for (std::size_t x = 0; x < table_.size(); ++x)
            inv[table_[x]] = static_cast<std::uint32_t>(x);
        return from_table(std::move(inv));
    }
    const Gf2Matrix a_inv = gf2_inverse(a_);
    return affine(a_inv, a_inv.apply(b_));
}

std::vector<std::uint32_t> Permutation::to_table() const {
    if (kind_ == PermKind::explicit_table) return table_;
    std::vector<std::uint32_t> table(std::size_t{1} << n_);
    for (std::size_t x = 0; x < table.size(); ++x)
        table[x] = apply(static_cast<std::uint32_t>(x));
    return table;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.n() != q.n()) throw std::invalid_argument("compose: size mismatch");
    if (p.kind() == PermKind::affine && q.kind() == PermKind::affine)
        return Permutation::affine(gf2_mul(p.matrix(), q.matrix()),
                                   p.matrix().apply(q.offset()) ^ p.offset());
    if (p.n() > 12) throw std::invalid_argument("compose: mixed kinds need n <= 12");
    std::vector<std::uint32_t> table(std::size_t{1} << p.n());
    for (std::size_t x = 0; x < table.size(); ++x)
        table[x] = p.apply(q.apply(static_cast<std::uint32_t>(x)));
    return Permutation::from_table(std::move(table));
}

Permutation permutation_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("permutation JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("permutation JSON: expected an object with a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "table") {
        if (!j.contains("map") || !j.at("map").is_array())
            throw std::invalid_argument("permutation JSON: table kind needs a \"map\" array");
        std::vector<std::uint32_t> table;
        for (const auto& v : j.at("map")) {
            if (!v.is_number_unsigned())
                throw std::invalid_argument("permutation JSON: map entries must be nonnegative integers");
            table.push_back(v.get<std::uint32_t>());
        }
        return Permutation::from_table(std::move(table));
    }
    if (kind == "affine") {
        if (!j.contains("A") || !j.at("A").is_array() || !j.contains("b"))
            throw std::invalid_argument("permutation JSON: affine kind needs \"A\" rows and \"b\"");
        const auto& rows_json = j.at("A");
        const int n = static_cast<int>(rows_json.size());
        check_n(n, 24, "permutation JSON");
        // JSON row i describes output site i; site order maps to bit n-1-i.
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const BitVector r = bitvector_from_string(rows_json.at(static_cast<std::size_t>(i)).get<std::string>());
            if (r.n != n) throw std::invalid_argument("permutation JSON: row length mismatch");
            rows[static_cast<std::size_t>(n - 1 - i)] = r.bits;
        }
        const BitVector b = bitvector_from_string(j.at("b").get<std::string>());
        if (b.n != n) throw std::invalid_argument("permutation JSON: offset length mismatch");
        return Permutation::affine(Gf2Matrix(n, std::move(rows)), b.bits);
    }
    throw std::invalid_argument("permutation JSON: unknown kind \"" + kind + "\"");
}

std::string permutation_to_json_text(const Permutation& p) {
    nlohmann::json j;
    if (p.kind() == PermKind::explicit_table) {
        j["kind"] = "table";
        j["map"] = p.table();
    } else {
        j["kind"] = "affine";
        const int n = p.n();
        std::vector<std::string> rows(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            rows[static_cast<std::size_t>(i)] =
                bits_to_string(n, p.matrix().rows[static_cast<std::size_t>(n - 1 - i)]);
        j["A"] = rows;
        j["b"] = bits_to_string(n, p.offset());
    }
    return j.dump(2);
}

}  // namespace zperm
