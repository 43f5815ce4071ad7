#include "zperm/diagform.hpp"

#include <json.hpp>

#include <bit>
#include <cctype>
#include <cstdio>
#include <limits>
#include <sstream>

namespace zperm {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int n_from_table_size(std::size_t size, const char* what) {
    if (size < 2 || size > (std::size_t{1} << 24) || !std::has_single_bit(size))
        throw std::invalid_argument(std::string(what) + ": table length must be 2^n, n in [1,24]");
    return std::countr_zero(size);
}

bool looks_like_float(const std::string& tok) {
    return tok.find_first_of(".eE") != std::string::npos && tok.find('/') == std::string::npos;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur)) lines.push_back(cur);
    return lines;
}

double parse_double(const std::string& tok, const std::string& where) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": bad number \"" + tok + "\"");
    }
    if (pos != tok.size()) throw std::invalid_argument(where + ": bad number \"" + tok + "\"");
    return v;
}

AnyForm parse_form_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("form JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
        throw std::invalid_argument("form JSON: expected an object with \"n\" and \"terms\"");
    const int n = j.at("n").get<int>();
    if (n < 1 || n > 24) throw std::invalid_argument("form JSON: n must be in [1,24]");
    const std::string mode = j.value("mode", std::string("exact"));
    if (mode != "exact" && mode != "float")
        throw std::invalid_argument("form JSON: mode must be \"exact\" or \"float\"");
    if (!j.at("terms").is_array()) throw std::invalid_argument("form JSON: \"terms\" must be an array");

    const auto term_where = [](std::size_t i) { return "form JSON term " + std::to_string(i); };
    if (mode == "exact") {
        ExactForm f(n);
        std::size_t i = 0;
        for (const auto& t : j.at("terms")) {
            const std::string where = term_where(i++);
            if (!t.is_object() || !t.contains("mask") || !t.contains("num") || !t.contains("log2den"))
                throw std::invalid_argument(where + ": expected {mask,num,log2den}");
            const std::uint32_t mask = zstring_to_mask(t.at("mask").get<std::string>(), n);
            BigInt num;
            if (t.at("num").is_number_integer())
                num = BigInt(t.at("num").get<long long>());
            else if (t.at("num").is_string())
                num = BigInt(t.at("num").get<std::string>());
            else
                throw std::invalid_argument(where + ": \"num\" must be an integer or a decimal string");
            const auto& ld = t.at("log2den");
            if (!ld.is_number_unsigned())
                throw std::invalid_argument(where + ": \"log2den\" must be a nonnegative integer");
            Dyadic c(std::move(num), ld.get<std::uint32_t>());
            if (f.terms.contains(mask))
                throw std::invalid_argument(where + ": duplicate mask \"" +
                                            mask_to_zstring(n, mask) + "\"");
            if (!c.is_zero()) f.terms.emplace(mask, std::move(c));
        }
        return f;
    }
    RealForm f(n);
    std::size_t i = 0;
    for (const auto& t : j.at("terms")) {
        const std::string where = term_where(i++);
        if (!t.is_object() || !t.contains("mask") || !t.contains("value"))
            throw std::invalid_argument(where + ": expected {mask,value}");
        const std::uint32_t mask = zstring_to_mask(t.at("mask").get<std::string>(), n);
        if (!t.at("value").is_number())
            throw std::invalid_argument(where + ": \"value\" must be a number");
        const double v = t.at("value").get<double>();
        if (f.terms.contains(mask))
            throw std::invalid_argument(where + ": duplicate mask \"" + mask_to_zstring(n, mask) + "\"");
        if (v != 0.0) f.terms.emplace(mask, v);
    }
    return f;
}

AnyForm parse_form_text(const std::string& text) {
    struct RawTerm {
        std::size_t line;
        std::string coeff;
        std::string mask;
    };
    std::vector<RawTerm> raw;
    bool any_float = false;
    const auto lines = split_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::istringstream in(lines[li]);
        std::string coeff, mask, extra;
        if (!(in >> coeff)) continue;
        if (coeff[0] == '#') continue;
        const std::string where = "form text line " + std::to_string(li + 1);
        if (!(in >> mask)) throw std::invalid_argument(where + ": expected \"coeff ZSTRING\"");
        if (in >> extra) throw std::invalid_argument(where + ": trailing tokens after the mask");
        any_float = any_float || looks_like_float(coeff);
        raw.push_back({li + 1, std::move(coeff), std::move(mask)});
    }
    if (raw.empty()) throw std::invalid_argument("form text: no terms found");
    const int n = static_cast<int>(raw.front().mask.size());

    const auto where_of = [](const RawTerm& t) { return "form text line " + std::to_string(t.line); };
    const auto mask_of = [&](const RawTerm& t) {
        try {
            return zstring_to_mask(t.mask, n);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where_of(t) + ": " + e.what());
        }
    };
    if (any_float) {
        RealForm f(n);
        for (const auto& t : raw) {
            const std::uint32_t mask = mask_of(t);
            const double v = parse_double(t.coeff, where_of(t));
            if (f.terms.contains(mask))
                throw std::invalid_argument(where_of(t) + ": duplicate mask \"" + t.mask + "\"");
            if (v != 0.0) f.terms.emplace(mask, v);
        }
        return f;
    }
    ExactForm f(n);
    for (const auto& t : raw) {
        const std::uint32_t mask = mask_of(t);
        Dyadic c;
        try {
            c = Dyadic::parse(t.coeff);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where_of(t) + ": " + e.what());
        }
        if (f.terms.contains(mask))
            throw std::invalid_argument(where_of(t) + ": duplicate mask \"" + t.mask + "\"");
        if (!c.is_zero()) f.terms.emplace(mask, std::move(c));
    }
    return f;
}

json dyadic_to_json_fields(const Dyadic& c) {
    json t;
    const BigInt& num = c.numerator();
    static const BigInt kInt64Max = BigInt(std::numeric_limits<std::int64_t>::max());
    static const BigInt kInt64Min = BigInt(std::numeric_limits<std::int64_t>::min());
    if (num <= kInt64Max && num >= kInt64Min)
        t["num"] = num.convert_to<std::int64_t>();
    else
        t["num"] = num.str();
    t["log2den"] = c.log2_denominator();
    return t;
}

}  // namespace

std::string mask_to_zstring(int n, std::uint32_t mask) {
    std::string s(static_cast<std::size_t>(n), 'I');
    for (int site = 0; site < n; ++site)
        if ((mask >> (n - 1 - site)) & 1u) s[static_cast<std::size_t>(site)] = 'Z';
    return s;
}

std::uint32_t zstring_to_mask(const std::string& s, int n) {
    if (static_cast<int>(s.size()) != n)
        throw std::invalid_argument("mask \"" + s + "\": expected length " + std::to_string(n));
    std::uint32_t mask = 0;
    for (int site = 0; site < n; ++site) {
        const char c = s[static_cast<std::size_t>(site)];
        if (c == 'Z')
            mask |= 1u << (n - 1 - site);
        else if (c != 'I')
            throw std::invalid_argument("mask \"" + s + "\": characters must be 'Z' or 'I'");
    }
    return mask;
}

AnyForm parse_form(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::invalid_argument("form: empty input");
    if (text[first] == '{') return parse_form_json(text);
    return parse_form_text(text);
}

std::string serialize_form_json(const AnyForm& f) {
    json j;
    if (const auto* ef = std::get_if<ExactForm>(&f)) {
        j["n"] = ef->n;
        j["mode"] = "exact";
        json terms = json::array();
        for (const auto& [mask, coeff] : ef->terms) {
            json t = dyadic_to_json_fields(coeff);
            t["mask"] = mask_to_zstring(ef->n, mask);
            terms.push_back(std::move(t));
        }
        j["terms"] = std::move(terms);
    } else {
        const auto& rf = std::get<RealForm>(f);
        j["n"] = rf.n;
        j["mode"] = "float";
        json terms = json::array();
        for (const auto& [mask, coeff] : rf.terms) {
            json t;
            t["mask"] = mask_to_zstring(rf.n, mask);
            t["value"] = coeff;
            terms.push_back(std::move(t));
        }
        j["terms"] = std::move(terms);
    }
    return j.dump(2);
}

std::string serialize_form_text(const AnyForm& f) {
    std::string out;
    if (const auto* ef = std::get_if<ExactForm>(&f)) {
        for (const auto& [mask, coeff] : ef->terms)
            out += coeff.to_string() + " " + mask_to_zstring(ef->n, mask) + "\n";
    } else {
        const auto& rf = std::get<RealForm>(f);
        for (const auto& [mask, coeff] : rf.terms)
            out += fmt_double(coeff) + " " + mask_to_zstring(rf.n, mask) + "\n";
    }
    return out;
}

namespace {

AnySpectrum parse_spectrum_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("spectrum JSON: ") + e.what());
    }
    if (!j.is_array()) throw std::invalid_argument("spectrum JSON: expected an array");
    const int n = n_from_table_size(j.size(), "spectrum JSON");

    bool any_object = false, all_integral = true;
    for (const auto& v : j) {
        if (v.is_object())
            any_object = true;
        else if (v.is_number_integer())
            ;
        else if (v.is_number())
            all_integral = false;
        else
            throw std::invalid_argument("spectrum JSON: entries must be numbers or {num,log2den}");
    }
    if (any_object || all_integral) {
        ExactSpectrum s(n);
        for (std::size_t i = 0; i < j.size(); ++i) {
            const auto& v = j.at(i);
            const std::string where = "spectrum JSON entry " + std::to_string(i);
            if (v.is_number_integer()) {
                s.values[i] = Dyadic(v.get<long long>());
            } else if (v.is_object()) {
                if (!v.contains("num") || !v.contains("log2den"))
                    throw std::invalid_argument(where + ": expected {num,log2den}");
                BigInt num;
                if (v.at("num").is_number_integer())
                    num = BigInt(v.at("num").get<long long>());
                else if (v.at("num").is_string())
                    num = BigInt(v.at("num").get<std::string>());
                else
                    throw std::invalid_argument(where + ": \"num\" must be an integer or string");
                s.values[i] = Dyadic(std::move(num), v.at("log2den").get<std::uint32_t>());
            } else {
                throw std::invalid_argument(where + ": cannot mix floats with exact entries");
            }
        }
        return s;
    }
    RealSpectrum s(n);
    for (std::size_t i = 0; i < j.size(); ++i) s.values[i] = j.at(i).get<double>();
    return s;
}

AnySpectrum parse_spectrum_csv(const std::string& text) {
    struct Row {
        std::size_t line;
        std::size_t index;
        std::string value;
    };
    std::vector<Row> rows;
    bool any_float = false;
    const auto lines = split_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::string line = lines[li];
        if (const auto cr = line.find('\r'); cr != std::string::npos) line.erase(cr);
        if (line.empty() || line[0] == '#') continue;
        const std::string where = "spectrum CSV line " + std::to_string(li + 1);
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument(where + ": expected \"index,value\"");
        const std::string idx_tok = line.substr(0, comma);
        const std::string val_tok = line.substr(comma + 1);
        if (idx_tok == "index") continue;  // header
        std::size_t pos = 0;
        unsigned long idx = 0;
        try {
            idx = std::stoul(idx_tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument(where + ": bad index \"" + idx_tok + "\"");
        }
        if (pos != idx_tok.size())
            throw std::invalid_argument(where + ": bad index \"" + idx_tok + "\"");
        if (val_tok.empty()) throw std::invalid_argument(where + ": missing value");
        any_float = any_float || looks_like_float(val_tok);
        rows.push_back({li + 1, idx, val_tok});
    }
    if (rows.empty()) throw std::invalid_argument("spectrum CSV: no rows found");
    const int n = n_from_table_size(rows.size(), "spectrum CSV");
    std::vector<bool> seen(rows.size(), false);
    for (const auto& r : rows) {
        if (r.index >= rows.size())
            throw std::invalid_argument("spectrum CSV line " + std::to_string(r.line) +
                                        ": index " + std::to_string(r.index) + " out of range");
        if (seen[r.index])
            throw std::invalid_argument("spectrum CSV line " + std::to_string(r.line) +
                                        ": duplicate index " + std::to_string(r.index));
        seen[r.index] = true;
    }
    if (any_float) {
        RealSpectrum s(n);
        for (const auto& r : rows)
            s.values[r.index] =
                parse_double(r.value, "spectrum CSV line " + std::to_string(r.line));
        return s;
    }
    ExactSpectrum s(n);
    for (const auto& r : rows) {
        try {
            s.values[r.index] = Dyadic::parse(r.value);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("spectrum CSV line " + std::to_string(r.line) + ": " +
                                        e.what());
        }
    }
    return s;
}

}  // namespace

AnySpectrum parse_spectrum(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::invalid_argument("spectrum: empty input");
    if (text[first] == '[') return parse_spectrum_json(text);
    return parse_spectrum_csv(text);
}

std::string serialize_spectrum_json(const AnySpectrum& s) {
    json j = json::array();
    if (const auto* es = std::get_if<ExactSpectrum>(&s)) {
        bool all_small_ints = true;
        static const BigInt kInt64Max = BigInt(std::numeric_limits<std::int64_t>::max());
        static const BigInt kInt64Min = BigInt(std::numeric_limits<std::int64_t>::min());
        for (const auto& v : es->values)
            all_small_ints = all_small_ints && v.is_integer() && v.numerator() <= kInt64Max &&
                             v.numerator() >= kInt64Min;
        for (const auto& v : es->values) {
            if (all_small_ints)
                j.push_back(v.numerator().convert_to<std::int64_t>());
            else
                j.push_back(dyadic_to_json_fields(v));
        }
    } else {
        for (double v : std::get<RealSpectrum>(s).values) j.push_back(v);
    }
    return j.dump();
}

std::string serialize_spectrum_csv(const AnySpectrum& s) {
    std::string out = "index,value\n";
    if (const auto* es = std::get_if<ExactSpectrum>(&s)) {
        for (std::size_t i = 0; i < es->values.size(); ++i)
            out += std::to_string(i) + "," + es->values[i].to_string() + "\n";
    } else {
        const auto& rs = std::get<RealSpectrum>(s);
        for (std::size_t i = 0; i < rs.values.size(); ++i)
            out += std::to_string(i) + "," + fmt_double(rs.values[i]) + "\n";
    }
    return out;
}

int form_n(const AnyForm& f) {
    return std::visit([](const auto& g) { return g.n; }, f);
}

AnySpectrum any_spectrum_of(const AnyForm& f) {
    return std::visit([](const auto& g) { return AnySpectrum(spectrum_of(g)); }, f);
}

FormMetrics any_form_metrics(const AnyForm& f) {
    return std::visit([](const auto& g) { return form_metrics(g); }, f);
}

RealSpectrum to_real(const AnySpectrum& s) {
    if (const auto* rs = std::get_if<RealSpectrum>(&s)) return *rs;
    const auto& es = std::get<ExactSpectrum>(s);
    RealSpectrum r(es.n);
    for (std::size_t i = 0; i < es.values.size(); ++i) r.values[i] = es.values[i].to_double();
    return r;
}

RealForm to_real(const AnyForm& f) {
    if (const auto* rf = std::get_if<RealForm>(&f)) return *rf;
    const auto& ef = std::get<ExactForm>(f);
    RealForm r(ef.n);
    for (const auto& [mask, coeff] : ef.terms) r.terms.emplace(mask, coeff.to_double());
    return r;
}

std::string metrics_to_json(const FormMetrics& m) {
    nlohmann::json doc;
    doc["nnz"] = m.nnz;
    doc["locality"] = m.locality;
    doc["entropy"] = m.entropy;
    doc["nnz_lower_bound"] = m.nnz_lower_bound;
    return doc.dump(2) + "\n";
}

FormMetrics metrics_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("metrics JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("metrics JSON: expected an object");
    FormMetrics m;
    try {
        m.nnz = doc.at("nnz").get<int>();
        m.locality = doc.at("locality").get<int>();
        m.entropy = doc.at("entropy").get<double>();
        m.nnz_lower_bound = doc.at("nnz_lower_bound").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("metrics JSON: ") + e.what());
    }
    return m;
}

ExactForm example_form_sparse_local() {
    ExactForm f(4);
    for (std::uint32_t mask : {8u, 4u, 2u, 1u}) f.set(mask, Dyadic(1));
    return f;
}

ExactForm example_form_sparse_nonlocal() {
    ExactForm f(4);
    for (std::uint32_t mask : {8u, 12u, 14u, 15u}) f.set(mask, Dyadic(1));
    return f;
}

ExactForm example_form_dense() {
    ExactForm f(4);
    f.set(8, Dyadic(BigInt(3), 2));
    for (std::uint32_t mask : {4u, 2u, 1u}) f.set(mask, Dyadic(1));
    for (std::uint32_t mask = 9; mask <= 15; ++mask) f.set(mask, Dyadic(BigInt(-1), 2));
    return f;
}

}  // namespace zperm
