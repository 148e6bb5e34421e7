#pragma once

#include "qramp/gf.hpp"
#include "qramp/rational.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qramp {

// Basis label of an n-register ket: one canonical field-element integer
// per qudit register.
using BasisIndex = std::vector<unsigned>;

// A basis relabeling applied to a subset of registers. The function must
// be injective on F_q^{in_arity}; when in_arity == out_arity that makes
// it a bijection (a permutation unitary in the computational basis).
//
// apply_basis_map verifies the map before first use: exhaustively when
// q^{in_arity} fits under the cap, by pseudo-random injectivity sampling
// above it. Callers that have proven bijectivity by other exact means
// (e.g. invertibility of a linear map over F_q) may set `verified`.
struct BasisMap {
    unsigned in_arity;
    unsigned out_arity;
    std::function<BasisIndex(const BasisIndex&)> fn;
    mutable bool verified = false;
};

class DensityMatrix;

// Pure state on `registers` qudits: sparse map from basis label to exact
// complex-rational amplitude, with a symbolic global factor q^{-scale_exp/2}.
// Zero amplitudes are never stored. States need not be normalized; the
// squared norm is an exact rational.
class SparseState {
public:
    static constexpr size_t kDefaultKetCap = 1u << 20;

    SparseState(const FieldSpec& spec, unsigned registers, int scale_exp = 0);

    static SparseState basis_state(const FieldSpec& spec, const BasisIndex& indices);

    const FieldSpec& spec() const { return *spec_; }
    unsigned registers() const { return registers_; }
    int scale_exp() const { return scale_exp_; }
    const std::map<BasisIndex, ComplexRational>& amps() const { return amps_; }
    size_t ket_count() const { return amps_.size(); }

    void add_amplitude(const BasisIndex& idx, const ComplexRational& a);
    Rational squared_norm() const;
    bool is_normalized() const { return squared_norm() == 1; }

    SparseState tensor(const SparseState& o) const;

    std::string serialize() const;
    static SparseState deserialize(const std::string& text);

private:
    const FieldSpec* spec_;
    unsigned registers_;
    int scale_exp_;
    std::map<BasisIndex, ComplexRational> amps_;
};

SparseState superpose(const std::vector<std::pair<ComplexRational, SparseState>>& terms);

// Maximally entangled resource over `count` register pairs:
// q^{-count/2} * sum_r |r>|r>, 2*count registers.
SparseState uniform_resource(const FieldSpec& spec, unsigned count, size_t ket_cap = SparseState::kDefaultKetCap);

// Relabels the registers listed in `regs` (ordered, distinct) through the
// map. Result register order: untouched registers in original order, then
// the map outputs appended.
SparseState apply_basis_map(const SparseState& state, const std::vector<unsigned>& regs,
                            const BasisMap& map, size_t bijection_cap = 1u << 16);

// Result register j holds input register order[j].
SparseState permute_registers(const SparseState& state, const std::vector<unsigned>& order);

// Reduced state on `keep` (ordered register indices), trace-normalized to 1.
DensityMatrix partial_trace(const SparseState& state, const std::vector<unsigned>& keep,
                            size_t dense_cap = 4096);

// Exact equality up to a global (unit-modulus) phase.
bool states_equal(const SparseState& a, const SparseState& b);
// Same ray: equality up to an arbitrary nonzero complex scalar.
bool states_proportional(const SparseState& a, const SparseState& b);

// Reduced density matrix on a register subset. Entries are exact
// rationals with the q^{-e} normalization folded in; trace is exactly 1.
// Stored sparsely keyed by (row, col); logically a dense dim x dim matrix.
class DensityMatrix {
public:
    DensityMatrix(const FieldSpec& spec, std::vector<unsigned> subset, unsigned dim);

    const FieldSpec& spec() const { return *spec_; }
    const std::vector<unsigned>& subset() const { return subset_; }
    unsigned dim() const { return dim_; }

    ComplexRational entry(unsigned row, unsigned col) const;
    void add_entry(unsigned row, unsigned col, const ComplexRational& v);
    const std::map<std::pair<unsigned, unsigned>, ComplexRational>& entries() const { return entries_; }

    Rational trace() const;
    bool is_hermitian() const;

    // Characteristic polynomial coefficients (Faddeev-LeVerrier), exact;
    // index i holds the coefficient of lambda^(dim - i).
    std::vector<ComplexRational> char_poly() const;

    std::string serialize_block() const;
    static DensityMatrix deserialize_block(const FieldSpec& spec, const std::string& text);

    bool operator==(const DensityMatrix& o) const;

private:
    const FieldSpec* spec_;
    std::vector<unsigned> subset_;
    unsigned dim_;
    std::map<std::pair<unsigned, unsigned>, ComplexRational> entries_;
};

inline bool dm_equal(const DensityMatrix& a, const DensityMatrix& b) { return a == b; }

}  // namespace qramp
