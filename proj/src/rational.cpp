#include "shiftsym/rational.hpp"

#include <cctype>

namespace shiftsym {

namespace {

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                           : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' ||
        den.front() == '+')
        throw InvalidInput("malformed rational \"" + std::string(text) + "\"");
    if (num.front() == '+') num.remove_prefix(1);
    Integer p{std::string(num)}, q{std::string(den)};
    if (q == 0) throw InvalidInput("zero denominator in \"" + std::string(text) + "\"");
    return Rational(p, q);
}

std::string to_string(const Rational& r) {
    return r.str();
}

}  // namespace shiftsym
