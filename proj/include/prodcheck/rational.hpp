/* rational.hpp -- exact rational arithmetic (GMP-backed) and extended values */

#ifndef PRODCHECK_RATIONAL_HPP_
#define PRODCHECK_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>

#include "prodcheck/errors.hpp"

namespace prodcheck {

/// Exact arbitrary-precision fraction, always in lowest terms with positive
/// denominator (mpq_class canonical form). All probabilities, weights and
/// values in the library are of this type; no floating point is used in any
/// core computation.
using Rational = mpq_class;

/// Parses "p/q" or "p" (optional leading "-"). Throws ParseError on anything
/// else, including a zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical serialization: "p/q", or just "p" when the denominator is 1.
std::string rational_str(const Rational& value);

/// Fixed-point decimal approximation, `places` digits, round half up.
std::string decimal_str(const Rational& value, int places = 6);

/// A nonnegative rational extended with infinity. Multiplication follows the
/// convention infinity * 0 = 0.
class ExtValue {
public:
    ExtValue() : infinite_(false), value_(0) {}
    explicit ExtValue(Rational v) : infinite_(false), value_(std::move(v)) {}

    static ExtValue infinity() {
        ExtValue v;
        v.infinite_ = true;
        return v;
    }

    bool is_infinite() const { return infinite_; }

    /// Finite payload; throws DomainError when infinite.
    const Rational& finite() const {
        if (infinite_) throw DomainError("ExtValue: infinite value has no finite payload");
        return value_;
    }

    ExtValue operator+(const ExtValue& o) const {
        if (infinite_ || o.infinite_) return infinity();
        return ExtValue(value_ + o.value_);
    }

    ExtValue operator*(const Rational& w) const {
        if (w == 0) return ExtValue(Rational(0)); // infinity * 0 = 0
        if (infinite_) return infinity();
        return ExtValue(value_ * w);
    }

    bool operator==(const ExtValue& o) const {
        if (infinite_ != o.infinite_) return false;
        return infinite_ || value_ == o.value_;
    }

    /// "p/q" when finite, the token "infinity" otherwise.
    std::string str() const { return infinite_ ? "infinity" : rational_str(value_); }

private:
    bool infinite_;
    Rational value_;
};

} // namespace prodcheck

#endif // PRODCHECK_RATIONAL_HPP_
