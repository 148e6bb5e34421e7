#include "qramp/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace qramp {

namespace {

std::string tuple_label(const BasisIndex& t) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) os << ',';
        os << t[i];
    }
    os << ')';
    return os.str();
}

std::vector<BasisIndex> all_labels(unsigned q, unsigned count) {
    size_t total = 1;
    for (unsigned i = 0; i < count; ++i) total *= q;
    std::vector<BasisIndex> out;
    out.reserve(total);
    BasisIndex t(count, 0);
    for (size_t n = 0; n < total; ++n) {
        size_t v = n;
        for (unsigned i = 0; i < count; ++i) {
            t[i] = static_cast<unsigned>(v % q);
            v /= q;
        }
        out.push_back(t);
    }
    return out;
}

void add_pair_probes(ProbeFamily& fam, const FieldSpec& spec, const BasisIndex& a,
                     const BasisIndex& b) {
    SparseState plus(spec, static_cast<unsigned>(a.size()), 0);
    plus.add_amplitude(a, ComplexRational(Rational(1)));
    plus.add_amplitude(b, ComplexRational(Rational(1)));
    fam.states.push_back(std::move(plus));
    fam.labels.push_back(tuple_label(a) + "+" + tuple_label(b));

    SparseState phase(spec, static_cast<unsigned>(a.size()), 0);
    phase.add_amplitude(a, ComplexRational(Rational(1)));
    phase.add_amplitude(b, ComplexRational::i());
    fam.states.push_back(std::move(phase));
    fam.labels.push_back(tuple_label(a) + "+i" + tuple_label(b));
}

ProbeFamily family_over(const FieldSpec& spec, const std::vector<BasisIndex>& secrets) {
    ProbeFamily fam;
    for (const auto& s : secrets) {
        fam.states.push_back(SparseState::basis_state(spec, s));
        fam.labels.push_back(tuple_label(s));
    }
    for (size_t i = 0; i < secrets.size(); ++i)
        for (size_t j = 0; j < secrets.size(); ++j)
            if (i != j) add_pair_probes(fam, spec, secrets[i], secrets[j]);
    return fam;
}

}  // namespace

ProbeFamily secret_probe_family(const FieldSpec& spec, unsigned L) {
    ProbeFamily fam = family_over(spec, all_labels(spec.q(), L));
    unsigned dim = 1;
    for (unsigned i = 0; i < L; ++i) dim *= spec.q();
    unsigned rank = probe_operator_rank(fam, spec, L);
    if (rank != dim * dim) throw std::logic_error("probe family does not span the operator space");
    return fam;
}

ProbeFamily secret_probe_family_on(const FieldSpec& spec, unsigned L,
                                   const std::vector<unsigned>& T,
                                   const std::vector<unsigned>& fixed) {
    if (fixed.size() != L) throw std::invalid_argument("fixed assignment must have length L");
    for (unsigned t : T)
        if (t >= L) throw std::out_of_range("secret coordinate out of range");
    std::vector<BasisIndex> secrets;
    for (const auto& tvals : all_labels(spec.q(), static_cast<unsigned>(T.size()))) {
        BasisIndex s = fixed;
        for (size_t i = 0; i < T.size(); ++i) s[T[i]] = tvals[i];
        secrets.push_back(std::move(s));
    }
    return family_over(spec, secrets);
}

unsigned probe_operator_rank(const ProbeFamily& family, const FieldSpec& spec, unsigned L) {
    std::vector<unsigned> keep(L);
    for (unsigned i = 0; i < L; ++i) keep[i] = i;
    size_t dim = 1;
    for (unsigned i = 0; i < L; ++i) dim *= spec.q();

    // sparse row reduction over Q; coordinates: 2*(row*dim+col) for the
    // real part, +1 for the imaginary part
    std::map<unsigned, std::map<unsigned, Rational>> pivots;
    unsigned rank = 0;
    for (const auto& st : family.states) {
        DensityMatrix rho = partial_trace(st, keep, dim);
        std::map<unsigned, Rational> row;
        for (const auto& [key, v] : rho.entries()) {
            unsigned base = 2 * (key.first * static_cast<unsigned>(dim) + key.second);
            if (v.re != 0) row[base] = v.re;
            if (v.im != 0) row[base + 1] = v.im;
        }
        while (!row.empty()) {
            unsigned lead = row.begin()->first;
            auto pit = pivots.find(lead);
            if (pit == pivots.end()) {
                Rational inv = Rational(1) / row.begin()->second;
                for (auto& [c, x] : row) x *= inv;
                pivots.emplace(lead, std::move(row));
                ++rank;
                break;
            }
            Rational factor = row.begin()->second;
            for (const auto& [c, x] : pit->second) {
                Rational nv = (row.count(c) ? row[c] : Rational(0)) - factor * x;
                if (nv == 0)
                    row.erase(c);
                else
                    row[c] = nv;
            }
        }
    }
    return rank;
}

ForbiddenReport is_forbidden(const SchemeParams& params, const std::vector<unsigned>& subset,
                             const ProbeFamily& family, size_t dense_cap) {
    ForbiddenReport rep;
    std::optional<DensityMatrix> first;
    for (size_t i = 0; i < family.states.size(); ++i) {
        SparseState enc = encode(params, family.states[i]);
        DensityMatrix rho = partial_trace(enc, subset, dense_cap);
        if (!first) {
            first = std::move(rho);
            rep.label_a = family.labels[i];
            rep.state_a = enc;
            rep.dm_a = first;
            continue;
        }
        if (!(rho == *first)) {
            rep.forbidden = false;
            rep.label_b = family.labels[i];
            rep.state_b = std::move(enc);
            rep.dm_b = std::move(rho);
            return rep;
        }
    }
    rep.forbidden = true;
    return rep;
}

QualifiedReport is_qualified(const SchemeParams& params, const std::vector<unsigned>& subset,
                             const ProbeFamily& family) {
    QualifiedReport rep;
    if (subset.size() < params.k()) {
        rep.qualified = false;
        std::ostringstream os;
        os << "only " << subset.size() << " shares, reconstruction needs k = " << params.k();
        rep.transcript = os.str();
        return rep;
    }
    std::optional<SparseState> first_residual;
    for (size_t i = 0; i < family.states.size(); ++i) {
        SparseState enc = encode(params, family.states[i]);
        ReconstructResult rec = reconstruct(params, enc, subset);
        if (!states_proportional(rec.secret, family.states[i])) {
            rep.qualified = false;
            rep.transcript = "probe " + family.labels[i] + " not recovered";
            return rep;
        }
        if (!first_residual) {
            first_residual = std::move(rec.residual);
        } else if (!states_proportional(rec.residual, *first_residual)) {
            rep.qualified = false;
            rep.transcript = "residual depends on the secret (probe " + family.labels[i] + ")";
            return rep;
        }
    }
    rep.qualified = true;
    std::ostringstream os;
    os << family.states.size() << " probes recovered via interpolation on shares {";
    for (size_t i = 0; i < subset.size(); ++i) os << (i ? "," : "") << subset[i] + 1;
    os << "}, residual secret-independent";
    rep.transcript = os.str();
    return rep;
}

std::vector<std::vector<unsigned>> subsets_of_size(unsigned n, unsigned size) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    std::function<void(unsigned)> rec = [&](unsigned start) {
        if (cur.size() == size) {
            out.push_back(cur);
            return;
        }
        for (unsigned i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

AccessReport access_structure_report(const SchemeParams& params, size_t dense_cap) {
    AccessReport rep;
    if (params.n() > 12) {
        rep.detail = "subset enumeration cap exceeded (n > 12)";
        return rep;
    }
    ProbeFamily family = secret_probe_family(params.spec(), params.L());
    std::vector<Verdict> by_subset(1u << params.n());
    std::ostringstream detail;
    rep.pass = true;
    for (unsigned size = 0; size <= params.n(); ++size) {
        for (const auto& subset : subsets_of_size(params.n(), size)) {
            ForbiddenReport forb = is_forbidden(params, subset, family, dense_cap);
            QualifiedReport qual = is_qualified(params, subset, family);
            Verdict v = qual.qualified ? Verdict::Qualified
                        : forb.forbidden ? Verdict::Forbidden
                                         : Verdict::Intermediate;
            if (qual.qualified && forb.forbidden && size > 0) {
                rep.pass = false;
                detail << "subset both qualified and forbidden?!; ";
            }
            Verdict expected = size >= params.k() ? Verdict::Qualified
                               : size <= params.k() - params.L() ? Verdict::Forbidden
                                                                 : Verdict::Intermediate;
            if (v != expected) {
                rep.pass = false;
                detail << "subset of size " << size << " classified off-threshold; ";
            }
            unsigned mask = 0;
            for (unsigned idx : subset) mask |= 1u << idx;
            by_subset[mask] = v;
            rep.table.push_back({subset, v, qual.qualified ? qual.transcript
                                           : !forb.forbidden ? forb.label_a + " vs " + forb.label_b
                                                             : "reduced state secret-independent"});
        }
    }
    // pure-state duality
    unsigned full = (1u << params.n()) - 1;
    for (unsigned mask = 0; mask <= full; ++mask) {
        bool q = by_subset[mask] == Verdict::Qualified;
        bool fc = by_subset[full ^ mask] == Verdict::Forbidden;
        if (q != fc) {
            rep.pass = false;
            detail << "duality violated at mask " << mask << "; ";
        }
    }
    rep.detail = detail.str();
    if (rep.pass) rep.detail = "all subsets match the |S|-threshold rule; duality holds";
    return rep;
}

SparseState random_secret(const FieldSpec& spec, unsigned L, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> label(0, spec.q() - 1);
    std::uniform_int_distribution<int> num(-7, 7);
    std::uniform_int_distribution<int> den(1, 7);
    std::uniform_int_distribution<unsigned> terms(2, 4);
    for (;;) {
        SparseState st(spec, L, 0);
        unsigned t = terms(rng);
        for (unsigned i = 0; i < t; ++i) {
            BasisIndex idx(L);
            for (auto& v : idx) v = label(rng);
            st.add_amplitude(idx, {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))});
        }
        if (st.ket_count() > 0) return st;
    }
}

EquivalenceReport equivalence_check(const SchemeParams& params,
                                    const std::vector<unsigned>& advanced, uint64_t seed,
                                    unsigned n_super, const BasisMap* override_map) {
    EquivalenceReport rep;
    AdvanceSession session = advance_setup(params, advanced);
    auto compare = [&](const SparseState& secret, const std::string& what) {
        SparseState direct = encode(params, secret);
        SparseState adv = advance_complete(session, secret, override_map);
        if (states_equal(direct, adv)) return true;
        std::ostringstream os;
        os << what << ": direct and advance states differ; |V1| = " << direct.ket_count()
           << ", |V2| = " << adv.ket_count();
        for (const auto& [ket, amp] : direct.amps()) {
            if (!adv.amps().count(ket)) {
                os << "; ket " << tuple_label(ket) << " in V1 only";
                break;
            }
        }
        for (const auto& [ket, amp] : adv.amps()) {
            if (!direct.amps().count(ket)) {
                os << "; ket " << tuple_label(ket) << " in V2 only";
                break;
            }
        }
        rep.detail = os.str();
        return false;
    };
    for (const auto& s : all_labels(params.spec().q(), params.L())) {
        if (!compare(SparseState::basis_state(params.spec(), s), "basis secret " + tuple_label(s)))
            return rep;
        ++rep.basis_checked;
    }
    std::mt19937_64 rng(seed);
    for (unsigned i = 0; i < n_super; ++i) {
        if (!compare(random_secret(params.spec(), params.L(), rng),
                     "superposed secret #" + std::to_string(i)))
            return rep;
        ++rep.superposed_checked;
    }
    rep.pass = true;
    std::ostringstream os;
    os << rep.basis_checked << " basis + " << rep.superposed_checked
       << " superposed secrets give identical share states";
    rep.detail = os.str();
    return rep;
}

DensityMatrix averaged_reduced_state(const SchemeParams& params, const std::vector<unsigned>& S,
                                     const std::vector<unsigned>& T, const SparseState& t_probe,
                                     size_t dense_cap) {
    const FieldSpec& spec = params.spec();
    if (t_probe.registers() != T.size())
        throw std::invalid_argument("probe must have one register per T coordinate");
    for (unsigned t : T)
        if (t >= params.L()) throw std::out_of_range("secret coordinate out of range");
    std::vector<unsigned> outside;
    for (unsigned i = 0; i < params.L(); ++i)
        if (std::find(T.begin(), T.end(), i) == T.end()) outside.push_back(i);

    unsigned dim = 1;
    for (size_t i = 0; i < S.size(); ++i) dim *= spec.q();
    DensityMatrix avg(spec, S, dim);
    const auto ovals_list = all_labels(spec.q(), static_cast<unsigned>(outside.size()));
    ComplexRational weight(Rational(1, static_cast<long>(ovals_list.size())));
    for (const auto& ovals : ovals_list) {
        SparseState secret(spec, params.L(), t_probe.scale_exp());
        for (const auto& [idx, amp] : t_probe.amps()) {
            BasisIndex full(params.L(), 0);
            for (size_t i = 0; i < outside.size(); ++i) full[outside[i]] = ovals[i];
            for (size_t i = 0; i < T.size(); ++i) full[T[i]] = idx[i];
            secret.add_amplitude(full, amp);
        }
        DensityMatrix rho = partial_trace(encode(params, secret), S, dense_cap);
        for (const auto& [key, v] : rho.entries()) avg.add_entry(key.first, key.second, v * weight);
    }
    return avg;
}

bool t_part_invariant(const SchemeParams& params, const std::vector<unsigned>& S,
                      const std::vector<unsigned>& T, size_t dense_cap,
                      std::optional<InvarianceWitness>* witness) {
    const FieldSpec& spec = params.spec();
    // Probes live on the T coordinates only; the remaining secret
    // coordinates are averaged over the basis inside
    // averaged_reduced_state, which models a reference system holding
    // them (their coherences are gone once the reference is traced out).
    ProbeFamily fam = family_over(spec, all_labels(spec.q(), static_cast<unsigned>(T.size())));
    std::optional<DensityMatrix> first;
    size_t first_idx = 0;
    for (size_t i = 0; i < fam.states.size(); ++i) {
        DensityMatrix rho = averaged_reduced_state(params, S, T, fam.states[i], dense_cap);
        if (!first) {
            first = std::move(rho);
            first_idx = i;
            continue;
        }
        if (!(rho == *first)) {
            if (witness)
                *witness = InvarianceWitness{S,
                                             T,
                                             fam.labels[first_idx],
                                             fam.labels[i],
                                             fam.states[first_idx],
                                             fam.states[i],
                                             *first,
                                             rho};
            return false;
        }
    }
    return true;
}

StrongSecurityReport strong_security_check(const SchemeParams& params,
                                           const std::vector<unsigned>& S,
                                           const std::vector<unsigned>& T, size_t dense_cap) {
    if (params.kind() != SchemeKind::ZM)
        throw std::invalid_argument("strong_security_check applies to the zm scheme");
    if (S.size() + T.size() > params.k())
        throw std::invalid_argument("strong security requires |S| + |T| <= k");
    StrongSecurityReport rep;
    rep.pairs_checked = 1;
    rep.pass = t_part_invariant(params, S, T, dense_cap);
    rep.detail = rep.pass ? "T part hidden from S" : "T part leaks to S";
    return rep;
}

StrongSecurityReport strong_security_sweep(const SchemeParams& params, size_t dense_cap) {
    if (params.kind() != SchemeKind::ZM)
        throw std::invalid_argument("strong_security_sweep applies to the zm scheme");
    StrongSecurityReport rep;
    rep.pass = true;
    for (unsigned ssize = 0; ssize <= params.n(); ++ssize) {
        for (unsigned tsize = 0; ssize + tsize <= params.k() && tsize <= params.L(); ++tsize) {
            for (const auto& S : subsets_of_size(params.n(), ssize)) {
                for (const auto& T : subsets_of_size(params.L(), tsize)) {
                    ++rep.pairs_checked;
                    if (!t_part_invariant(params, S, T, dense_cap)) {
                        rep.pass = false;
                        std::ostringstream os;
                        os << "leak at |S|=" << ssize << ", |T|=" << tsize;
                        rep.detail = os.str();
                        return rep;
                    }
                }
            }
        }
    }
    std::ostringstream os;
    os << "all " << rep.pairs_checked << " (S,T) pairs with |S|+|T| <= k pass";
    rep.detail = os.str();
    return rep;
}

LeakageReport leakage_demo_ogawa(const SchemeParams& params, size_t dense_cap) {
    if (params.kind() != SchemeKind::Ogawa)
        throw std::invalid_argument("leakage_demo_ogawa applies to the ogawa scheme");
    LeakageReport rep;
    if (params.L() < 2) {
        rep.detail = "search is vacuous for L < 2";
        return rep;
    }
    unsigned searched = 0;
    for (unsigned tsize = 1; tsize < params.L(); ++tsize) {
        for (unsigned ssize = 1; ssize + tsize <= params.k(); ++ssize) {
            for (const auto& S : subsets_of_size(params.n(), ssize)) {
                for (const auto& T : subsets_of_size(params.L(), tsize)) {
                    ++searched;
                    std::optional<InvarianceWitness> w;
                    if (!t_part_invariant(params, S, T, dense_cap, &w)) {
                        rep.outcome = LeakageOutcome::WitnessFound;
                        rep.witness = std::move(w);
                        std::ostringstream os;
                        os << "share set {";
                        for (size_t i = 0; i < S.size(); ++i) os << (i ? "," : "") << S[i] + 1;
                        os << "} distinguishes secret coordinates {";
                        for (size_t i = 0; i < T.size(); ++i) os << (i ? "," : "") << T[i] + 1;
                        os << "} via probes " << rep.witness->label_a << " / "
                           << rep.witness->label_b;
                        rep.detail = os.str();
                        return rep;
                    }
                }
            }
        }
    }
    std::ostringstream os;
    os << "no leakage witness among " << searched << " (S,T) pairs";
    rep.detail = os.str();
    return rep;
}

MaxAdvanceReport max_advance_check(const SchemeParams& params, size_t dense_cap) {
    MaxAdvanceReport rep;
    ProbeFamily family = secret_probe_family(params.spec(), params.L());
    unsigned fsize = params.k() - params.L();
    for (const auto& subset : subsets_of_size(params.n(), fsize)) {
        ForbiddenReport forb = is_forbidden(params, subset, family, dense_cap);
        if (!forb.forbidden) {
            rep.detail = "a size-(k-L) set is not forbidden";
            return rep;
        }
    }
    if (fsize + 1 <= params.n()) {
        for (const auto& subset : subsets_of_size(params.n(), fsize + 1)) {
            ForbiddenReport forb = is_forbidden(params, subset, family, dense_cap);
            if (forb.forbidden) {
                rep.detail = "a size-(k-L+1) set is forbidden";
                return rep;
            }
            // independent re-check of the witness from serialized states
            SparseState a = SparseState::deserialize(forb.state_a->serialize());
            SparseState b = SparseState::deserialize(forb.state_b->serialize());
            DensityMatrix ra = partial_trace(a, subset, dense_cap);
            DensityMatrix rb = partial_trace(b, subset, dense_cap);
            if (ra == rb) {
                rep.detail = "witness failed independent re-check";
                return rep;
            }
        }
    }
    rep.pass = true;
    rep.detail = "size-(k-L) sets forbidden, size-(k-L+1) sets not; witnesses re-verified";
    return rep;
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string check_line(const std::string& name, const SchemeParams& params,
                       const std::string& status, const std::string& witness_file) {
    std::ostringstream os;
    os << "CHECK " << name << ' ' << std::hex << fnv1a_hash(params.descriptor()) << std::dec << ' '
       << status;
    if (!witness_file.empty()) os << ' ' << witness_file;
    return os.str();
}

}  // namespace qramp
