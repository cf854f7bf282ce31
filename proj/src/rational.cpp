#include "mbfreal/rational.hpp"

#include <cctype>
#include <sstream>

namespace mbfreal {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) throw InputError("empty rational");

    bool negative = false;
    std::string body = s;
    if (body[0] == '-' || body[0] == '+') {
        negative = body[0] == '-';
        body = body.substr(1);
    }

    Rational result;
    auto slash = body.find('/');
    auto dot = body.find('.');
    if (slash != std::string::npos) {
        std::string num = body.substr(0, slash);
        std::string den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw InputError("malformed rational: " + s);
        mpz_class d(den, 10);
        if (d == 0) throw InputError("zero denominator: " + s);
        result = Rational(mpz_class(num, 10), d);
    } else if (dot != std::string::npos) {
        std::string ip = body.substr(0, dot);
        std::string fp = body.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
            throw InputError("malformed decimal: " + s);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        mpz_class num(ip + fp, 10);
        result = Rational(num, scale);
    } else {
        if (!all_digits(body)) throw InputError("malformed rational: " + s);
        result = Rational(mpz_class(body, 10));
    }
    result.canonicalize();
    return negative ? Rational(-result) : result;
}

std::string format_rational(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_rationals(const std::vector<Rational>& values, char sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += format_rational(values[i]);
    }
    return out;
}

std::vector<Rational> parse_rationals(std::string_view text) {
    std::vector<Rational> out;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) out.push_back(parse_rational(tok));
    return out;
}

Rational midpoint(const Rational& a, const Rational& b) {
    Rational m = (a + b) / 2;
    m.canonicalize();
    return m;
}

}  // namespace mbfreal
