#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qramp {

class FieldElement;

// A finite field F_q, q = p^m, in the polynomial basis modulo a monic
// irreducible polynomial over F_p. Element i's base-p digits are its
// coordinates (digit j = coefficient of x^j), so elements serialize as
// plain integers in [0, q).
//
// Instances are interned: FieldSpec::get returns a reference that stays
// valid for the program lifetime, and two calls with the same (p, m,
// modulus) yield the same object. Immutable after construction.
class FieldSpec {
public:
    // Largest q accepted; everything here is desk-scale enumeration.
    static constexpr unsigned kMaxOrder = 1u << 16;

    // Canonical field: lexicographically smallest monic irreducible modulus
    // (smallest canonical-integer encoding of the coefficient vector).
    static const FieldSpec& get(unsigned p, unsigned m);
    // Explicit modulus, ascending coefficients, length m+1, monic.
    static const FieldSpec& get(unsigned p, unsigned m, const std::vector<unsigned>& modulus);

    // Descriptor text: "p^m" (prime field) or "p^m/c0,c1,...,cm".
    static const FieldSpec& parse(const std::string& descriptor);
    std::string descriptor() const;

    unsigned p() const { return p_; }
    unsigned m() const { return m_; }
    unsigned q() const { return q_; }
    const std::vector<unsigned>& modulus() const { return modulus_; }
    unsigned primitive() const { return primitive_; }

    FieldElement element(unsigned value) const;
    FieldElement zero() const;
    FieldElement one() const;
    std::vector<FieldElement> all_elements() const;

    // Arithmetic on canonical integer encodings.
    unsigned add_raw(unsigned a, unsigned b) const;
    unsigned sub_raw(unsigned a, unsigned b) const;
    unsigned neg_raw(unsigned a) const;
    unsigned mul_raw(unsigned a, unsigned b) const;
    unsigned inv_raw(unsigned a) const;
    unsigned pow_raw(unsigned a, long long e) const;

private:
    FieldSpec(unsigned p, unsigned m, std::vector<unsigned> modulus);

    std::vector<unsigned> digits(unsigned v) const;
    unsigned undigits(const std::vector<unsigned>& d) const;
    unsigned mul_poly(unsigned a, unsigned b) const;  // table-free path
    unsigned inv_euclid(unsigned a) const;
    unsigned multiplicative_order(unsigned a) const;

    unsigned p_, m_, q_;
    std::vector<unsigned> modulus_;
    unsigned primitive_ = 0;
    // exp/log tables over the primitive element; the fast multiply path.
    std::vector<unsigned> exp_, log_;
};

class FieldElement {
public:
    FieldElement() : spec_(nullptr), value_(0) {}
    FieldElement(const FieldSpec* spec, unsigned value) : spec_(spec), value_(value) {
        if (spec && value >= spec->q()) throw std::invalid_argument("field element out of range");
    }

    const FieldSpec& spec() const {
        if (!spec_) throw std::logic_error("uninitialized field element");
        return *spec_;
    }
    const FieldSpec* spec_ptr() const { return spec_; }
    unsigned value() const { return value_; }

    bool is_zero() const { return value_ == 0; }

    FieldElement operator+(const FieldElement& o) const {
        return {&same(o), spec().add_raw(value_, o.value_)};
    }
    FieldElement operator-(const FieldElement& o) const {
        return {&same(o), spec().sub_raw(value_, o.value_)};
    }
    FieldElement operator-() const { return {spec_, spec().neg_raw(value_)}; }
    FieldElement operator*(const FieldElement& o) const {
        return {&same(o), spec().mul_raw(value_, o.value_)};
    }
    FieldElement operator/(const FieldElement& o) const {
        return {&same(o), spec().mul_raw(value_, spec().inv_raw(o.value_))};
    }
    FieldElement inv() const { return {spec_, spec().inv_raw(value_)}; }
    FieldElement pow(long long e) const { return {spec_, spec().pow_raw(value_, e)}; }

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    bool operator==(const FieldElement& o) const { return spec_ == o.spec_ && value_ == o.value_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool operator<(const FieldElement& o) const { return value_ < o.value_; }

private:
    const FieldSpec& same(const FieldElement& o) const {
        if (spec_ != o.spec_) throw std::invalid_argument("field elements from different fields");
        return spec();
    }

    const FieldSpec* spec_;
    unsigned value_;
};

bool is_prime(unsigned n);

}  // namespace qramp
