#include "qramp/qstate.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qramp {

SparseState::SparseState(const FieldSpec& spec, unsigned registers, int scale_exp)
    : spec_(&spec), registers_(registers), scale_exp_(scale_exp) {}

SparseState SparseState::basis_state(const FieldSpec& spec, const BasisIndex& indices) {
    SparseState s(spec, static_cast<unsigned>(indices.size()), 0);
    s.add_amplitude(indices, ComplexRational(Rational(1)));
    return s;
}

void SparseState::add_amplitude(const BasisIndex& idx, const ComplexRational& a) {
    if (idx.size() != registers_) throw std::invalid_argument("basis index arity mismatch");
    for (unsigned v : idx)
        if (v >= spec_->q()) throw std::invalid_argument("basis label out of field range");
    if (a.is_zero()) return;
    auto it = amps_.find(idx);
    if (it == amps_.end()) {
        amps_.emplace(idx, a);
    } else {
        it->second += a;
        if (it->second.is_zero()) amps_.erase(it);
    }
}

Rational SparseState::squared_norm() const {
    Rational s = 0;
    for (const auto& [idx, a] : amps_) s += a.norm2();
    return s * rational_pow(spec_->q(), -scale_exp_);
}

SparseState SparseState::tensor(const SparseState& o) const {
    if (spec_ != o.spec_) throw std::invalid_argument("tensor of states over different fields");
    SparseState out(*spec_, registers_ + o.registers_, scale_exp_ + o.scale_exp_);
    for (const auto& [ia, aa] : amps_) {
        for (const auto& [ib, ab] : o.amps_) {
            BasisIndex idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            out.add_amplitude(idx, aa * ab);
        }
    }
    return out;
}

SparseState superpose(const std::vector<std::pair<ComplexRational, SparseState>>& terms) {
    if (terms.empty()) throw std::invalid_argument("superpose needs at least one term");
    const FieldSpec* spec = &terms[0].second.spec();
    unsigned regs = terms[0].second.registers();
    int e = terms[0].second.scale_exp();
    for (const auto& [c, st] : terms) {
        if (&st.spec() != spec) throw std::invalid_argument("superpose over different fields");
        if (st.registers() != regs) throw std::invalid_argument("superpose register-count mismatch");
        e = std::max(e, st.scale_exp());
    }
    SparseState out(*spec, regs, e);
    for (const auto& [c, st] : terms) {
        int diff = e - st.scale_exp();
        if (diff % 2 != 0)
            throw std::invalid_argument("superpose: scale exponents differ by an odd amount");
        ComplexRational factor(rational_pow(spec->q(), diff / 2));
        for (const auto& [idx, a] : st.amps()) out.add_amplitude(idx, c * factor * a);
    }
    return out;
}

SparseState uniform_resource(const FieldSpec& spec, unsigned count, size_t ket_cap) {
    size_t kets = 1;
    for (unsigned i = 0; i < count; ++i) {
        kets *= spec.q();
        if (kets > ket_cap) throw std::invalid_argument("resource state exceeds ket cap");
    }
    SparseState out(spec, 2 * count, static_cast<int>(count));
    BasisIndex r(count, 0);
    for (size_t n = 0; n < kets; ++n) {
        size_t v = n;
        for (unsigned i = 0; i < count; ++i) {
            r[i] = static_cast<unsigned>(v % spec.q());
            v /= spec.q();
        }
        BasisIndex idx = r;
        idx.insert(idx.end(), r.begin(), r.end());
        out.add_amplitude(idx, ComplexRational(Rational(1)));
    }
    return out;
}

namespace {

void verify_basis_map(const FieldSpec& spec, const BasisMap& map, size_t cap) {
    if (map.verified) return;
    if (map.out_arity < map.in_arity)
        throw std::invalid_argument("basis map cannot shrink the label space");
    size_t domain = 1;
    bool overflow = false;
    for (unsigned i = 0; i < map.in_arity && !overflow; ++i) {
        domain *= spec.q();
        if (domain > cap) overflow = true;
    }
    auto check_output = [&](const BasisIndex& out) {
        if (out.size() != map.out_arity) throw std::invalid_argument("basis map output arity mismatch");
        for (unsigned v : out)
            if (v >= spec.q()) throw std::invalid_argument("basis map output out of field range");
    };
    if (!overflow) {
        std::set<BasisIndex> seen;
        BasisIndex in(map.in_arity, 0);
        for (size_t n = 0; n < domain; ++n) {
            size_t v = n;
            for (unsigned i = 0; i < map.in_arity; ++i) {
                in[i] = static_cast<unsigned>(v % spec.q());
                v /= spec.q();
            }
            BasisIndex out = map.fn(in);
            check_output(out);
            if (!seen.insert(out).second) throw std::invalid_argument("basis map is not injective");
        }
    } else {
        // domain too large to exhaust: pseudo-random injectivity sampling
        std::mt19937_64 rng(0x71a3b5c7d9e1f023ULL);
        std::uniform_int_distribution<unsigned> dist(0, spec.q() - 1);
        std::set<BasisIndex> inputs;
        std::set<BasisIndex> outputs;
        for (int trial = 0; trial < 4096; ++trial) {
            BasisIndex in(map.in_arity);
            for (auto& v : in) v = dist(rng);
            if (!inputs.insert(in).second) continue;
            BasisIndex out = map.fn(in);
            check_output(out);
            if (!outputs.insert(out).second)
                throw std::invalid_argument("basis map is not injective (sampled collision)");
        }
    }
    map.verified = true;
}

}  // namespace

SparseState apply_basis_map(const SparseState& state, const std::vector<unsigned>& regs,
                            const BasisMap& map, size_t bijection_cap) {
    if (regs.size() != map.in_arity) throw std::invalid_argument("basis map arity != register count");
    std::vector<bool> selected(state.registers(), false);
    for (unsigned r : regs) {
        if (r >= state.registers()) throw std::out_of_range("register index out of range");
        if (selected[r]) throw std::invalid_argument("duplicate register in basis map");
        selected[r] = true;
    }
    verify_basis_map(state.spec(), map, bijection_cap);

    unsigned out_regs = state.registers() - map.in_arity + map.out_arity;
    SparseState out(state.spec(), out_regs, state.scale_exp());
    BasisIndex in(map.in_arity), idx;
    idx.reserve(out_regs);
    for (const auto& [ket, a] : state.amps()) {
        for (size_t i = 0; i < regs.size(); ++i) in[i] = ket[regs[i]];
        BasisIndex mapped = map.fn(in);
        idx.clear();
        for (unsigned r = 0; r < state.registers(); ++r)
            if (!selected[r]) idx.push_back(ket[r]);
        idx.insert(idx.end(), mapped.begin(), mapped.end());
        out.add_amplitude(idx, a);
    }
    return out;
}

SparseState permute_registers(const SparseState& state, const std::vector<unsigned>& order) {
    if (order.size() != state.registers()) throw std::invalid_argument("permutation arity mismatch");
    std::vector<bool> seen(order.size(), false);
    for (unsigned r : order) {
        if (r >= order.size() || seen[r]) throw std::invalid_argument("not a register permutation");
        seen[r] = true;
    }
    SparseState out(state.spec(), state.registers(), state.scale_exp());
    BasisIndex idx(order.size());
    for (const auto& [ket, a] : state.amps()) {
        for (size_t j = 0; j < order.size(); ++j) idx[j] = ket[order[j]];
        out.add_amplitude(idx, a);
    }
    return out;
}

DensityMatrix partial_trace(const SparseState& state, const std::vector<unsigned>& keep,
                            size_t dense_cap) {
    std::vector<bool> kept(state.registers(), false);
    for (unsigned r : keep) {
        if (r >= state.registers()) throw std::out_of_range("register index out of range");
        if (kept[r]) throw std::invalid_argument("duplicate register in partial trace");
        kept[r] = true;
    }
    size_t dim = 1;
    for (size_t i = 0; i < keep.size(); ++i) {
        dim *= state.spec().q();
        if (dim > dense_cap) throw std::invalid_argument("partial trace exceeds dense-matrix cap");
    }
    Rational total = 0;
    for (const auto& [idx, a] : state.amps()) total += a.norm2();
    if (total == 0) throw std::invalid_argument("partial trace of the zero state");

    auto keep_code = [&](const BasisIndex& ket) {
        unsigned code = 0;
        for (unsigned r : keep) code = code * state.spec().q() + ket[r];
        return code;
    };
    // group kets by complement assignment
    std::map<BasisIndex, std::vector<std::pair<unsigned, ComplexRational>>> groups;
    for (const auto& [ket, a] : state.amps()) {
        BasisIndex comp;
        comp.reserve(state.registers() - keep.size());
        for (unsigned r = 0; r < state.registers(); ++r)
            if (!kept[r]) comp.push_back(ket[r]);
        groups[comp].emplace_back(keep_code(ket), a);
    }
    DensityMatrix rho(state.spec(), keep, static_cast<unsigned>(dim));
    ComplexRational inv_total(Rational(1) / total);
    for (const auto& [comp, members] : groups) {
        for (const auto& [u, au] : members)
            for (const auto& [v, av] : members) rho.add_entry(u, v, au * av.conj() * inv_total);
    }
    return rho;
}

bool states_proportional(const SparseState& a, const SparseState& b) {
    if (a.registers() != b.registers()) throw std::invalid_argument("register-count mismatch");
    if (&a.spec() != &b.spec()) return false;
    if (a.ket_count() != b.ket_count()) return false;
    if (a.ket_count() == 0) return true;
    auto ia = a.amps().begin();
    auto ib = b.amps().begin();
    ComplexRational ratio = ia->second / ib->second;
    for (; ia != a.amps().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (ia->second != ratio * ib->second) return false;
    }
    return true;
}

bool states_equal(const SparseState& a, const SparseState& b) {
    if (!states_proportional(a, b)) return false;
    if (a.ket_count() == 0) return true;
    ComplexRational ratio = a.amps().begin()->second / b.amps().begin()->second;
    // ratio must be unit modulus once the symbolic scales are accounted for
    return ratio.norm2() == rational_pow(a.spec().q(), a.scale_exp() - b.scale_exp());
}

std::string SparseState::serialize() const {
    std::ostringstream os;
    os << "qramp-state v1; field=" << spec_->descriptor() << "; registers=" << registers_
       << "; scale_exp=" << scale_exp_ << '\n';
    for (const auto& [idx, a] : amps_) {
        for (size_t i = 0; i < idx.size(); ++i) {
            if (i) os << ' ';
            os << idx[i];
        }
        if (!idx.empty()) os << ' ';
        os << a << '\n';
    }
    return os.str();
}

SparseState SparseState::deserialize(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("empty state file");
    const std::string magic = "qramp-state v1; field=";
    if (header.rfind(magic, 0) != 0) throw std::invalid_argument("bad state file header");
    std::string rest = header.substr(magic.size());
    auto semi1 = rest.find("; registers=");
    auto semi2 = rest.find("; scale_exp=");
    if (semi1 == std::string::npos || semi2 == std::string::npos)
        throw std::invalid_argument("bad state file header");
    const FieldSpec& spec = FieldSpec::parse(rest.substr(0, semi1));
    unsigned registers =
        static_cast<unsigned>(std::stoul(rest.substr(semi1 + 12, semi2 - semi1 - 12)));
    int scale_exp = std::stoi(rest.substr(semi2 + 12));

    SparseState out(spec, registers, scale_exp);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        BasisIndex idx(registers);
        for (unsigned i = 0; i < registers; ++i)
            if (!(ls >> idx[i])) throw std::invalid_argument("truncated ket line");
        std::string re, im;
        if (!(ls >> re >> im)) throw std::invalid_argument("truncated amplitude");
        out.add_amplitude(idx, {rational_from_string(re), rational_from_string(im)});
    }
    return out;
}

DensityMatrix::DensityMatrix(const FieldSpec& spec, std::vector<unsigned> subset, unsigned dim)
    : spec_(&spec), subset_(std::move(subset)), dim_(dim) {}

ComplexRational DensityMatrix::entry(unsigned row, unsigned col) const {
    auto it = entries_.find({row, col});
    return it == entries_.end() ? ComplexRational() : it->second;
}

void DensityMatrix::add_entry(unsigned row, unsigned col, const ComplexRational& v) {
    if (row >= dim_ || col >= dim_) throw std::out_of_range("density matrix index out of range");
    if (v.is_zero()) return;
    auto key = std::make_pair(row, col);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        entries_.emplace(key, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) entries_.erase(it);
    }
}

Rational DensityMatrix::trace() const {
    Rational t = 0;
    for (const auto& [key, v] : entries_)
        if (key.first == key.second) t += v.re;
    return t;
}

bool DensityMatrix::is_hermitian() const {
    for (const auto& [key, v] : entries_) {
        if (key.first == key.second && v.im != 0) return false;
        if (entry(key.second, key.first) != v.conj()) return false;
    }
    return true;
}

std::vector<ComplexRational> DensityMatrix::char_poly() const {
    // Faddeev-LeVerrier; dense, intended for small dimensions only.
    unsigned n = dim_;
    std::vector<std::vector<ComplexRational>> A(n, std::vector<ComplexRational>(n));
    for (const auto& [key, v] : entries_) A[key.first][key.second] = v;
    std::vector<std::vector<ComplexRational>> M = A;
    std::vector<ComplexRational> c(n + 1);
    c[0] = ComplexRational(Rational(1));
    for (unsigned k = 1; k <= n; ++k) {
        ComplexRational tr;
        for (unsigned i = 0; i < n; ++i) tr += M[i][i];
        c[k] = -(tr * ComplexRational(Rational(1, k)));
        if (k == n) break;
        for (unsigned i = 0; i < n; ++i) M[i][i] += c[k];
        std::vector<std::vector<ComplexRational>> next(n, std::vector<ComplexRational>(n));
        for (unsigned i = 0; i < n; ++i)
            for (unsigned l = 0; l < n; ++l) {
                ComplexRational s;
                for (unsigned j = 0; j < n; ++j) s += A[i][j] * M[j][l];
                next[i][l] = s;
            }
        M = std::move(next);
    }
    return c;
}

std::string DensityMatrix::serialize_block() const {
    std::ostringstream os;
    os << "dm dim=" << dim_ << " subset=";
    for (size_t i = 0; i < subset_.size(); ++i) {
        if (i) os << ',';
        os << subset_[i];
    }
    os << '\n';
    for (unsigned r = 0; r < dim_; ++r) {
        for (unsigned col = 0; col < dim_; ++col) {
            if (col) os << ' ';
            ComplexRational v = entry(r, col);
            os << rational_to_string(v.re) << ',' << rational_to_string(v.im);
        }
        os << '\n';
    }
    return os.str();
}

DensityMatrix DensityMatrix::deserialize_block(const FieldSpec& spec, const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header) || header.rfind("dm dim=", 0) != 0)
        throw std::invalid_argument("bad density-matrix block");
    auto sub = header.find(" subset=");
    unsigned dim = static_cast<unsigned>(std::stoul(header.substr(7, sub - 7)));
    std::vector<unsigned> subset;
    {
        std::istringstream ss(header.substr(sub + 8));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) subset.push_back(static_cast<unsigned>(std::stoul(tok)));
        }
    }
    DensityMatrix dm(spec, subset, dim);
    for (unsigned r = 0; r < dim; ++r) {
        std::string line;
        if (!std::getline(is, line)) throw std::invalid_argument("truncated density-matrix block");
        std::istringstream ls(line);
        for (unsigned col = 0; col < dim; ++col) {
            std::string cell;
            if (!(ls >> cell)) throw std::invalid_argument("truncated density-matrix row");
            auto comma = cell.find(',');
            dm.add_entry(r, col,
                         {rational_from_string(cell.substr(0, comma)),
                          rational_from_string(cell.substr(comma + 1))});
        }
    }
    return dm;
}

bool DensityMatrix::operator==(const DensityMatrix& o) const {
    return spec_ == o.spec_ && dim_ == o.dim_ && entries_ == o.entries_;
}

}  // namespace qramp
