#include "qramp/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qramp {

Polynomial::Polynomial(const FieldSpec& spec, std::vector<FieldElement> coeffs)
    : spec_(&spec), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_)
        if (c.spec_ptr() != spec_) throw std::invalid_argument("coefficient from wrong field");
}

Polynomial Polynomial::zero(const FieldSpec& spec, size_t bound) {
    return {spec, std::vector<FieldElement>(bound, spec.zero())};
}

Polynomial Polynomial::constant(FieldElement c, size_t bound) {
    if (bound == 0) throw std::invalid_argument("constant needs bound >= 1");
    std::vector<FieldElement> cs(bound, c.spec().zero());
    cs[0] = c;
    return {c.spec(), std::move(cs)};
}

Polynomial Polynomial::resized(size_t bound) const {
    std::vector<FieldElement> cs(bound, spec_->zero());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i < bound)
            cs[i] = coeffs_[i];
        else if (!coeffs_[i].is_zero())
            throw std::invalid_argument("resize drops nonzero coefficient");
    }
    return {*spec_, std::move(cs)};
}

Polynomial Polynomial::times_x_power(size_t l, size_t bound) const {
    std::vector<FieldElement> cs(bound, spec_->zero());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i + l < bound)
            cs[i + l] = coeffs_[i];
        else if (!coeffs_[i].is_zero())
            throw std::invalid_argument("shift drops nonzero coefficient");
    }
    return {*spec_, std::move(cs)};
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (spec_ != o.spec_) throw std::invalid_argument("polynomials from different fields");
    size_t bound = std::max(coeffs_.size(), o.coeffs_.size());
    std::vector<FieldElement> cs(bound, spec_->zero());
    for (size_t i = 0; i < coeffs_.size(); ++i) cs[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) cs[i] += o.coeffs_[i];
    return {*spec_, std::move(cs)};
}

Polynomial Polynomial::operator*(FieldElement c) const {
    std::vector<FieldElement> cs = coeffs_;
    for (auto& x : cs) x *= c;
    return {*spec_, std::move(cs)};
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (spec_ != o.spec_) throw std::invalid_argument("polynomials from different fields");
    if (coeffs_.empty() || o.coeffs_.empty()) return zero(*spec_, 0);
    std::vector<FieldElement> cs(coeffs_.size() + o.coeffs_.size() - 1, spec_->zero());
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) cs[i + j] += coeffs_[i] * o.coeffs_[j];
    return {*spec_, std::move(cs)};
}

bool Polynomial::operator==(const Polynomial& o) const {
    return spec_ == o.spec_ && coeffs_ == o.coeffs_;
}

std::string Polynomial::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ',';
        os << coeffs_[i].value();
    }
    return os.str();
}

PointSet::PointSet(const FieldSpec& spec, std::vector<FieldElement> points)
    : spec_(&spec), points_(std::move(points)) {
    for (size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].spec_ptr() != spec_) throw std::invalid_argument("point from wrong field");
        for (size_t j = i + 1; j < points_.size(); ++j)
            if (points_[i] == points_[j]) throw std::invalid_argument("evaluation points must be distinct");
    }
}

PointSet PointSet::prefix(size_t count) const {
    if (count > points_.size()) throw std::out_of_range("prefix longer than point set");
    return {*spec_, {points_.begin(), points_.begin() + static_cast<long>(count)}};
}

FieldElement evaluate(const Polynomial& f, FieldElement x) {
    if (&f.spec() != x.spec_ptr()) throw std::invalid_argument("evaluation point from wrong field");
    FieldElement acc = f.spec().zero();
    for (size_t i = f.bound(); i-- > 0;) acc = acc * x + f.coeff(i);
    return acc;
}

std::vector<FieldElement> ev_map(const Polynomial& f, const PointSet& pts) {
    std::vector<FieldElement> out;
    out.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) out.push_back(evaluate(f, pts[i]));
    return out;
}

Polynomial lagrange_basis(const PointSet& pts, size_t i) {
    if (i >= pts.size()) throw std::out_of_range("lagrange basis index out of range");
    const FieldSpec& spec = pts.spec();
    Polynomial acc = Polynomial::constant(spec.one(), 1);
    for (size_t j = 0; j < pts.size(); ++j) {
        if (j == i) continue;
        // (x - a_j) / (a_i - a_j)
        FieldElement d = (pts[i] - pts[j]).inv();
        Polynomial lin(spec, {(-pts[j]) * d, d});
        acc = acc * lin;
    }
    return acc.resized(pts.size());
}

Polynomial lagrange_interpolate(const PointSet& pts, const std::vector<FieldElement>& values) {
    if (pts.size() != values.size())
        throw std::invalid_argument("interpolation needs as many values as points");
    if (pts.size() == 0) return Polynomial::zero(pts.spec(), 0);
    Polynomial acc = Polynomial::zero(pts.spec(), pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        if (values[i].spec_ptr() != &pts.spec())
            throw std::invalid_argument("interpolation value from wrong field");
        acc = acc + lagrange_basis(pts, i) * values[i];
    }
    return acc;
}

}  // namespace qramp
