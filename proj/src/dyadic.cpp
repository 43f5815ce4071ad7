#include "zperm/dyadic.hpp"

#include <cctype>

namespace zperm {

std::string Dyadic::to_string() const {
    if (den_ == 0) return num_.str();
    const BigInt q = BigInt(1) << den_;
    return num_.str() + "/" + q.str();
}

Dyadic Dyadic::parse(const std::string& text) {
    const auto bad = [&](const std::string& why) {
        return std::invalid_argument("bad dyadic \"" + text + "\": " + why);
    };
    const auto slash = text.find('/');
    const std::string num_part = text.substr(0, slash);
    if (num_part.empty()) throw bad("empty numerator");
    std::size_t i = (num_part[0] == '+' || num_part[0] == '-') ? 1 : 0;
    if (i == num_part.size()) throw bad("sign without digits");
    for (; i < num_part.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(num_part[i]))) throw bad("numerator is not an integer");
    BigInt num(num_part);
    if (slash == std::string::npos) return Dyadic(std::move(num), 0);

    const std::string den_part = text.substr(slash + 1);
    if (den_part.empty()) throw bad("empty denominator");
    for (char c : den_part)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw bad("denominator is not an integer");
    BigInt den(den_part);
    if (den.is_zero()) throw bad("zero denominator");
    using boost::multiprecision::lsb;
    using boost::multiprecision::msb;
    if (lsb(den) != msb(den)) throw bad("denominator is not a power of two");
    return Dyadic(std::move(num), static_cast<std::uint32_t>(lsb(den)));
}

}  // namespace zperm
