#pragma once

#include <limits>
#include <string>

namespace bk {

class ExtendedReal {
public:
    enum class Tag { finite, plus_infinity, minus_infinity, not_well_defined };

    ExtendedReal() = default;
    static ExtendedReal finite(double v) { return {Tag::finite, v}; }
    static ExtendedReal plus_inf() { return {Tag::plus_infinity, 0.0}; }
    static ExtendedReal minus_inf() { return {Tag::minus_infinity, 0.0}; }
    static ExtendedReal undefined() { return {Tag::not_well_defined, 0.0}; }

    // (xi, B xi) = (xi, B+ xi) - (xi, B- xi), each part in [0, +inf].
    // Well defined as soon as one of the two parts is finite.
    static ExtendedReal from_parts(double plus, double minus);

    Tag tag() const { return tag_; }
    bool is_finite() const { return tag_ == Tag::finite; }
    double value() const;  // throws unless finite
    // finite value, +-inf, or NaN for not_well_defined
    double to_double() const;
    ExtendedReal operator-() const;
    std::string str() const;

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        return a.tag_ == b.tag_ && (a.tag_ != Tag::finite || a.v_ == b.v_);
    }

private:
    ExtendedReal(Tag t, double v) : tag_(t), v_(v) {}
    Tag tag_ = Tag::finite;
    double v_ = 0.0;
};

} // namespace bk
