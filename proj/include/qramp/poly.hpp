#pragma once

#include "qramp/gf.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace qramp {

// Univariate polynomial over F_q with an explicit degree bound: coeffs
// holds exactly `bound` entries, ascending (coeffs[0] is the constant
// term), zero-padded. The bound is part of the value because coefficient
// sets like D(s) range over fixed-length vectors.
class Polynomial {
public:
    Polynomial(const FieldSpec& spec, std::vector<FieldElement> coeffs);
    static Polynomial zero(const FieldSpec& spec, size_t bound);
    static Polynomial constant(FieldElement c, size_t bound);

    const FieldSpec& spec() const { return *spec_; }
    size_t bound() const { return coeffs_.size(); }
    const std::vector<FieldElement>& coeffs() const { return coeffs_; }
    FieldElement coeff(size_t i) const { return coeffs_.at(i); }

    Polynomial resized(size_t bound) const;  // pad; error if a dropped coeff is nonzero
    Polynomial times_x_power(size_t l, size_t bound) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator*(FieldElement c) const;
    Polynomial operator*(const Polynomial& o) const;  // bound = sum - 1

    bool operator==(const Polynomial& o) const;

    std::string to_string() const;  // comma-separated ascending integers

private:
    const FieldSpec* spec_;
    std::vector<FieldElement> coeffs_;
};

// Ordered, pairwise-distinct evaluation points.
class PointSet {
public:
    PointSet(const FieldSpec& spec, std::vector<FieldElement> points);

    const FieldSpec& spec() const { return *spec_; }
    size_t size() const { return points_.size(); }
    FieldElement operator[](size_t i) const { return points_.at(i); }
    const std::vector<FieldElement>& points() const { return points_; }

    PointSet prefix(size_t count) const;

private:
    const FieldSpec* spec_;
    std::vector<FieldElement> points_;
};

FieldElement evaluate(const Polynomial& f, FieldElement x);
std::vector<FieldElement> ev_map(const Polynomial& f, const PointSet& pts);

// l_i: 1 at pts[i], 0 at every other point; degree bound |pts|.
Polynomial lagrange_basis(const PointSet& pts, size_t i);
// Unique polynomial of degree bound |pts| through (pts[i], values[i]).
Polynomial lagrange_interpolate(const PointSet& pts, const std::vector<FieldElement>& values);

}  // namespace qramp
