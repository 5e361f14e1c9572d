/* rational.cpp */

#include "prodcheck/rational.hpp"

#include <cctype>

namespace prodcheck {

Rational parse_rational(const std::string& text) {
    // strict shape check first; mpq_set_str is laxer than we want
    auto digits = [](const std::string& s, size_t from, size_t to) {
        if (from >= to) return false;
        for (size_t i = from; i < to; ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    size_t start = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
    size_t slash = text.find('/');
    bool ok;
    if (slash == std::string::npos) {
        ok = digits(text, start, text.size());
    } else {
        ok = digits(text, start, slash) && digits(text, slash + 1, text.size());
    }
    if (!ok) throw ParseError("not a rational: \"" + text + "\" (expected \"p/q\" or \"p\")");

    mpq_class q;
    if (q.set_str(text, 10) != 0) throw ParseError("not a rational: \"" + text + "\"");
    if (q.get_den() == 0) throw ParseError("zero denominator in \"" + text + "\"");
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& value) {
    return value.get_str();
}

std::string decimal_str(const Rational& value, int places) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    bool negative = value < 0;
    Rational mag = negative ? Rational(-value) : value;
    // round half up: floor(mag * scale + 1/2)
    mpz_class scaled = (mag.get_num() * scale * 2 + mag.get_den()) / (mag.get_den() * 2);
    mpz_class whole = scaled / scale;
    mpz_class frac = scaled % scale;
    std::string fs = frac.get_str();
    std::string out = (negative && (whole != 0 || frac != 0) ? "-" : "");
    out += whole.get_str();
    if (places > 0) {
        out += ".";
        out += std::string(static_cast<size_t>(places) - fs.size(), '0') + fs;
    }
    return out;
}

} // namespace prodcheck
