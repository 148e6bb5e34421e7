#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qramp/qstate.hpp"

using namespace qramp;

namespace {

// inner product <a|b> ignoring the shared symbolic scale; callers pass
// states with equal scale_exp
ComplexRational inner(const SparseState& a, const SparseState& b) {
    REQUIRE(a.scale_exp() == b.scale_exp());
    ComplexRational acc;
    for (const auto& [idx, amp] : a.amps()) {
        auto it = b.amps().find(idx);
        if (it != b.amps().end()) acc += amp.conj() * it->second;
    }
    return acc;
}

}  // namespace

TEST_CASE("basis states and tensor products") {
    const FieldSpec& f = FieldSpec::get(7, 1);
    SparseState a = SparseState::basis_state(f, {3});
    SparseState b = SparseState::basis_state(f, {5, 2});
    SparseState ab = a.tensor(b);
    CHECK(ab.registers() == 3);
    CHECK(ab.ket_count() == 1);
    CHECK(ab.amps().count({3, 5, 2}) == 1);
    CHECK(ab.squared_norm() == 1);
}

TEST_CASE("superpose cancels exactly") {
    const FieldSpec& f = FieldSpec::get(2, 2);
    SparseState z = SparseState::basis_state(f, {0});
    SparseState s = superpose({{ComplexRational(Rational(1)), z},
                               {ComplexRational(Rational(-1)), z}});
    CHECK(s.ket_count() == 0);
    CHECK(s.squared_norm() == 0);
}

TEST_CASE("two-term superposition squared norm") {
    const FieldSpec& f = FieldSpec::get(2, 2);
    SparseState s = superpose({{ComplexRational(Rational(1)), SparseState::basis_state(f, {0})},
                               {ComplexRational(Rational(1)), SparseState::basis_state(f, {1})}});
    CHECK(s.squared_norm() == 2);
    CHECK(s.ket_count() == 2);
}

TEST_CASE("entangled pair resource") {
    const FieldSpec& f = FieldSpec::get(2, 2);
    SparseState r = uniform_resource(f, 1);
    CHECK(r.registers() == 2);
    CHECK(r.ket_count() == 4);
    CHECK(r.scale_exp() == 1);
    CHECK(r.squared_norm() == 1);  // the q^{-1} scale is part of the norm

    DensityMatrix left = partial_trace(r, {0});
    CHECK(left.trace() == 1);
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j)
            CHECK(left.entry(i, j) ==
                  (i == j ? ComplexRational(Rational(1, 4)) : ComplexRational()));

    SparseState r0 = uniform_resource(f, 0);
    CHECK(r0.registers() == 0);
    CHECK(r0.ket_count() == 1);
}

TEST_CASE("basis map identity and swap") {
    const FieldSpec& f = FieldSpec::get(3, 1);
    SparseState s = superpose({{ComplexRational(Rational(1)), SparseState::basis_state(f, {0, 1, 2})},
                               {ComplexRational(Rational(2)), SparseState::basis_state(f, {2, 2, 0})}});
    BasisMap ident{3, 3, [](const BasisIndex& x) { return x; }, false};
    SparseState s2 = apply_basis_map(s, {0, 1, 2}, ident);
    CHECK(states_equal(s, s2));

    BasisMap swap2{2, 2, [](const BasisIndex& x) { return BasisIndex{x[1], x[0]}; }, false};
    SparseState sw = apply_basis_map(s, {0, 1}, swap2);
    // untouched register 2 comes first, then the two mapped outputs
    CHECK(sw.amps().count({2, 1, 0}) == 1);
    CHECK(sw.amps().count({0, 2, 2}) == 1);
}

TEST_CASE("non-injective maps are rejected") {
    const FieldSpec& f = FieldSpec::get(3, 1);
    SparseState s = SparseState::basis_state(f, {1});
    BasisMap bad{1, 1, [](const BasisIndex&) { return BasisIndex{0}; }, false};
    CHECK_THROWS(apply_basis_map(s, {0}, bad));
}

TEST_CASE("basis maps preserve inner products") {
    const FieldSpec& f = FieldSpec::get(3, 1);
    // invertible linear relabeling (x, y) -> (y, x + y)
    BasisMap lin{2, 2,
                 [&](const BasisIndex& x) {
                     return BasisIndex{x[1], f.add_raw(x[0], x[1])};
                 },
                 false};
    SparseState a = superpose({{ComplexRational(Rational(1)), SparseState::basis_state(f, {0, 1})},
                               {ComplexRational(Rational(0), Rational(1)), SparseState::basis_state(f, {2, 2})}});
    SparseState b = superpose({{ComplexRational(Rational(3)), SparseState::basis_state(f, {0, 1})},
                               {ComplexRational(Rational(1), Rational(-2)), SparseState::basis_state(f, {1, 0})}});
    ComplexRational before = inner(a, b);
    ComplexRational after = inner(apply_basis_map(a, {0, 1}, lin), apply_basis_map(b, {0, 1}, lin));
    CHECK(before == after);
    CHECK(a.squared_norm() == apply_basis_map(a, {0, 1}, lin).squared_norm());
}

TEST_CASE("register permutation") {
    const FieldSpec& f = FieldSpec::get(5, 1);
    SparseState s = SparseState::basis_state(f, {1, 2, 3});
    SparseState p = permute_registers(s, {2, 0, 1});
    CHECK(p.amps().count({3, 1, 2}) == 1);
}

TEST_CASE("partial trace of a product state is a projector") {
    const FieldSpec& f = FieldSpec::get(5, 1);
    SparseState s = SparseState::basis_state(f, {4, 1});
    DensityMatrix d = partial_trace(s, {0});
    CHECK(d.trace() == 1);
    CHECK(d.entry(4, 4) == ComplexRational(Rational(1)));
    CHECK(d.entries().size() == 1);
    CHECK(d.is_hermitian());
}

TEST_CASE("reduced states of a pure state share a spectrum") {
    const FieldSpec& f = FieldSpec::get(2, 2);
    // 4-ket entangled state on 3 registers
    SparseState s(f, 3, 1);
    s.add_amplitude({0, 0, 0}, ComplexRational(Rational(1)));
    s.add_amplitude({2, 3, 1}, ComplexRational(Rational(1)));
    s.add_amplitude({3, 1, 2}, ComplexRational(Rational(1)));
    s.add_amplitude({1, 2, 3}, ComplexRational(Rational(1)));
    std::vector<std::pair<std::vector<unsigned>, std::vector<unsigned>>> splits = {
        {{0}, {1, 2}}, {{1}, {0, 2}}, {{2}, {0, 1}}};
    for (auto& [a, b] : splits) {
        DensityMatrix da = partial_trace(s, a);
        DensityMatrix db = partial_trace(s, b);
        CHECK(da.trace() == 1);
        CHECK(db.trace() == 1);
        auto ca = da.char_poly();
        auto cb = db.char_poly();
        // spectra agree up to extra zero eigenvalues, so the larger side's
        // characteristic polynomial is the smaller one padded with zeros
        for (size_t i = 0; i < cb.size(); ++i)
            CHECK(cb[i] == (i < ca.size() ? ca[i] : ComplexRational()));
    }
}

TEST_CASE("state equality up to global phase") {
    const FieldSpec& f = FieldSpec::get(3, 1);
    SparseState a = superpose({{ComplexRational(Rational(1)), SparseState::basis_state(f, {0})},
                               {ComplexRational(Rational(2)), SparseState::basis_state(f, {1})}});
    CHECK(states_equal(a, a));

    SparseState rot = superpose({{ComplexRational::i(), a}});
    CHECK(states_equal(a, rot));

    SparseState scaled = superpose({{ComplexRational(Rational(2)), a}});
    CHECK_FALSE(states_equal(a, scaled));
    CHECK(states_proportional(a, scaled));

    SparseState other = SparseState::basis_state(f, {2});
    CHECK_FALSE(states_equal(a, other));
    CHECK_FALSE(states_proportional(a, other));
}

TEST_CASE("density matrix equality") {
    const FieldSpec& f = FieldSpec::get(2, 2);
    SparseState r = uniform_resource(f, 1);
    DensityMatrix mixed = partial_trace(r, {0});
    CHECK(dm_equal(mixed, partial_trace(r, {1})));
    DensityMatrix proj = partial_trace(SparseState::basis_state(f, {0, 0}), {0});
    CHECK_FALSE(dm_equal(mixed, proj));
}

TEST_CASE("serialization round trip is bit exact") {
    const FieldSpec& f = FieldSpec::get(3, 2);
    SparseState s(f, 2, 3);
    s.add_amplitude({0, 5}, ComplexRational(Rational(1, 3), Rational(-2, 7)));
    s.add_amplitude({8, 1}, ComplexRational(Rational(-4), Rational(0)));
    std::string text = s.serialize();
    SparseState back = SparseState::deserialize(text);
    CHECK(back.serialize() == text);
    CHECK(back.registers() == 2);
    CHECK(back.scale_exp() == 3);
    CHECK(back.amps() == s.amps());

    DensityMatrix d = partial_trace(s, {0});
    std::string block = d.serialize_block();
    DensityMatrix dback = DensityMatrix::deserialize_block(f, block);
    CHECK(dm_equal(d, dback));
    CHECK(dback.serialize_block() == block);
}
