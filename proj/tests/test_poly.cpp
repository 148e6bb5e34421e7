#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qramp/poly.hpp"

#include <set>

using namespace qramp;

namespace {

const FieldSpec& field_q(unsigned q) {
    switch (q) {
        case 4: return FieldSpec::get(2, 2);
        case 8: return FieldSpec::get(2, 3);
        case 9: return FieldSpec::get(3, 2);
        default: return FieldSpec::get(q, 1);
    }
}

Polynomial poly_from_code(const FieldSpec& f, unsigned q, unsigned code, unsigned bound) {
    std::vector<FieldElement> c;
    for (unsigned i = 0; i < bound; ++i) {
        c.push_back(f.element(code % q));
        code /= q;
    }
    return Polynomial(f, std::move(c));
}

unsigned ipow(unsigned b, unsigned e) {
    unsigned r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

TEST_CASE("interpolation through (6,1,3) over GF(7) matches closed form") {
    const FieldSpec& f = FieldSpec::get(7, 1);
    PointSet pts(f, {f.element(6), f.element(1), f.element(3)});
    for (unsigned r = 0; r < 7; ++r)
        for (unsigned s1 = 0; s1 < 7; ++s1)
            for (unsigned s2 = 0; s2 < 7; ++s2) {
                Polynomial h = lagrange_interpolate(
                    pts, {f.element(r), f.element(s1), f.element(s2)});
                CHECK(h.coeff(0).value() == (3 * r + 6 * s1 + 6 * s2) % 7);
                CHECK(h.coeff(1).value() == (4 * s1 + 3 * r) % 7);
                CHECK(h.coeff(2).value() == (r + 5 * s1 + s2) % 7);
                CHECK(evaluate(h, f.element(6)).value() == r);
                CHECK(evaluate(h, f.element(1)).value() == s1);
                CHECK(evaluate(h, f.element(3)).value() == s2);
            }
}

TEST_CASE("degree-one family over GF(4): f = s + ((r-s)/a1) x") {
    const FieldSpec& f = FieldSpec::get(2, 2);
    FieldElement a1 = f.element(2);
    for (unsigned r = 0; r < 4; ++r)
        for (unsigned s = 0; s < 4; ++s) {
            FieldElement slope = (f.element(r) - f.element(s)) / a1;
            Polynomial g(f, {f.element(s), slope});
            CHECK(evaluate(g, a1).value() == r);
        }
}

TEST_CASE("zero and constant polynomials") {
    const FieldSpec& f = FieldSpec::get(5, 1);
    Polynomial z = Polynomial::zero(f, 3);
    for (auto x : f.all_elements()) CHECK(evaluate(z, x).value() == 0);
    Polynomial c = Polynomial::constant(f.element(4), 2);
    for (auto x : f.all_elements()) CHECK(evaluate(c, x).value() == 4);
}

TEST_CASE("single point interpolation gives the constant") {
    const FieldSpec& f = FieldSpec::get(7, 1);
    PointSet pts(f, {f.element(2)});
    Polynomial c = lagrange_interpolate(pts, {f.element(5)});
    CHECK(c.bound() == 1);
    CHECK(c.coeff(0).value() == 5);
}

TEST_CASE("lagrange basis delta property and partition of unity") {
    const FieldSpec& f = FieldSpec::get(3, 2);
    PointSet pts(f, {f.element(0), f.element(3), f.element(7)});
    Polynomial sum = Polynomial::zero(f, 3);
    for (size_t i = 0; i < 3; ++i) {
        Polynomial li = lagrange_basis(pts, i);
        for (size_t j = 0; j < 3; ++j)
            CHECK(evaluate(li, pts[j]).value() == (i == j ? 1u : 0u));
        sum = sum + li;
    }
    CHECK(sum == Polynomial::constant(f.one(), 3));
}

TEST_CASE("evaluation map injective below the point count") {
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        const FieldSpec& f = field_q(q);
        auto els = f.all_elements();
        for (unsigned m = 1; m <= 3; ++m) {
            for (unsigned npts = m; npts <= 3 && npts <= q; ++npts) {
                PointSet pts(f, std::vector<FieldElement>(els.begin(), els.begin() + npts));
                std::vector<std::vector<unsigned>> seen;
                for (unsigned code = 0; code < ipow(q, m); ++code) {
                    auto vals = ev_map(poly_from_code(f, q, code, m), pts);
                    std::vector<unsigned> raw;
                    for (auto v : vals) raw.push_back(v.value());
                    for (auto& prev : seen) CHECK(prev != raw);
                    seen.push_back(std::move(raw));
                }
            }
        }
    }
}

TEST_CASE("evaluation map surjective at or above the point count") {
    // exhaustive for the smallest orders, interpolation witness elsewhere
    for (unsigned q : {2u, 3u, 5u}) {
        const FieldSpec& f = field_q(q);
        auto els = f.all_elements();
        for (unsigned npts = 1; npts <= 2; ++npts) {
            PointSet pts(f, std::vector<FieldElement>(els.begin(), els.begin() + npts));
            unsigned m = npts;
            std::set<std::vector<unsigned>> image;
            for (unsigned code = 0; code < ipow(q, m); ++code) {
                auto vals = ev_map(poly_from_code(f, q, code, m), pts);
                std::vector<unsigned> raw;
                for (auto v : vals) raw.push_back(v.value());
                image.insert(raw);
            }
            CHECK(image.size() == ipow(q, npts));
        }
    }
    // witness route: interpolation hits an arbitrary target tuple
    const FieldSpec& f9 = field_q(9);
    PointSet pts(f9, {f9.element(1), f9.element(4), f9.element(8)});
    std::vector<FieldElement> target = {f9.element(7), f9.element(0), f9.element(2)};
    Polynomial w = lagrange_interpolate(pts, target);
    CHECK(ev_map(w, pts) == target);
}

TEST_CASE("interpolation round trip, exhaustive") {
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        const FieldSpec& f = field_q(q);
        auto els = f.all_elements();
        for (unsigned npts = 1; npts <= 3 && npts <= q; ++npts) {
            PointSet pts(f, std::vector<FieldElement>(els.begin(), els.begin() + npts));
            for (unsigned code = 0; code < ipow(q, npts); ++code) {
                Polynomial p = poly_from_code(f, q, code, npts);
                CHECK(lagrange_interpolate(pts, ev_map(p, pts)) == p);
            }
        }
    }
}

TEST_CASE("evaluation map is linear") {
    const FieldSpec& f = field_q(8);
    auto els = f.all_elements();
    PointSet pts(f, {els[1], els[3], els[6]});
    Polynomial p = poly_from_code(f, 8, 147, 3);
    Polynomial g = poly_from_code(f, 8, 401, 3);
    FieldElement a = f.element(5), b = f.element(2);
    auto lhs = ev_map(p * a + g * b, pts);
    auto pv = ev_map(p, pts);
    auto gv = ev_map(g, pts);
    for (size_t i = 0; i < 3; ++i) CHECK(lhs[i] == pv[i] * a + gv[i] * b);
}

TEST_CASE("construction errors") {
    const FieldSpec& f = FieldSpec::get(7, 1);
    CHECK_THROWS_AS(PointSet(f, {f.element(1), f.element(1)}), std::invalid_argument);
    PointSet pts(f, {f.element(1), f.element(2)});
    CHECK_THROWS_AS(lagrange_interpolate(pts, {f.element(0)}), std::invalid_argument);
    Polynomial p(f, {f.element(1), f.element(2)});
    CHECK_THROWS_AS(p.resized(1), std::invalid_argument);
    CHECK(p.resized(4).bound() == 4);
}

TEST_CASE("printing ascending coefficients") {
    const FieldSpec& f = FieldSpec::get(7, 1);
    Polynomial p(f, {f.element(3), f.element(0), f.element(5)});
    CHECK(p.to_string() == "3,0,5");
}
