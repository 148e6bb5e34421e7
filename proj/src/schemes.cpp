#include "qramp/schemes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qramp {

std::string to_string(SchemeKind kind) { return kind == SchemeKind::Ogawa ? "ogawa" : "zm"; }

SchemeKind scheme_kind_from_string(const std::string& s) {
    if (s == "ogawa") return SchemeKind::Ogawa;
    if (s == "zm") return SchemeKind::ZM;
    throw std::invalid_argument("unknown scheme kind: " + s);
}

SchemeParams SchemeParams::make(const FieldSpec& spec, SchemeKind kind, unsigned n, unsigned k,
                                unsigned L, std::vector<FieldElement> alphas,
                                std::vector<FieldElement> betas) {
    if (L < 1 || L > k || k > n) throw std::invalid_argument("need 1 <= L <= k <= n");
    if (n != 2 * k - L) throw std::invalid_argument("pure-state ramp condition n = 2k - L violated");
    if (alphas.size() != n) throw std::invalid_argument("need exactly n evaluation points");
    if (kind == SchemeKind::Ogawa) {
        if (n > spec.q() - 1) throw std::invalid_argument("ogawa requires n <= q - 1");
        for (const auto& a : alphas)
            if (a.is_zero())
                throw std::invalid_argument("ogawa requires nonzero alphas (zero was a mistake in "
                                            "the original scheme)");
        if (!betas.empty()) throw std::invalid_argument("ogawa takes no beta points");
    } else {
        if (n > spec.q() - L) throw std::invalid_argument("zm requires n <= q - L");
        if (betas.size() != L) throw std::invalid_argument("zm needs exactly L beta points");
    }
    // PointSet construction rejects duplicates; for ZM check the union too.
    PointSet alpha_set(spec, alphas);
    PointSet beta_set(spec, betas);
    if (kind == SchemeKind::ZM) {
        std::vector<FieldElement> all = alphas;
        all.insert(all.end(), betas.begin(), betas.end());
        PointSet combined(spec, all);  // throws on overlap
    }
    return SchemeParams(spec, kind, n, k, L, std::move(alpha_set), std::move(beta_set));
}

std::string SchemeParams::descriptor() const {
    std::ostringstream os;
    os << "scheme=" << to_string(kind_) << " field=" << spec_->descriptor() << " n=" << n_
       << " k=" << k_ << " L=" << L_ << " alphas=";
    for (size_t i = 0; i < alphas_.size(); ++i) {
        if (i) os << ',';
        os << alphas_[i].value();
    }
    os << " betas=";
    for (size_t i = 0; i < betas_.size(); ++i) {
        if (i) os << ',';
        os << betas_[i].value();
    }
    return os.str();
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad descriptor token: " + tok);
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
}

std::vector<unsigned> parse_uint_list(const std::string& s) {
    std::vector<unsigned> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ','))
        if (!tok.empty()) out.push_back(static_cast<unsigned>(std::stoul(tok)));
    return out;
}

std::vector<FieldElement> to_elements(const FieldSpec& spec, const std::vector<unsigned>& vals) {
    std::vector<FieldElement> out;
    out.reserve(vals.size());
    for (unsigned v : vals) out.push_back(spec.element(v));
    return out;
}

}  // namespace

SchemeParams SchemeParams::parse(const std::string& descriptor) {
    auto kv = parse_kv(descriptor);
    const FieldSpec& spec = FieldSpec::parse(kv.at("field"));
    return make(spec, scheme_kind_from_string(kv.at("scheme")),
                static_cast<unsigned>(std::stoul(kv.at("n"))),
                static_cast<unsigned>(std::stoul(kv.at("k"))),
                static_cast<unsigned>(std::stoul(kv.at("L"))),
                to_elements(spec, parse_uint_list(kv.at("alphas"))),
                to_elements(spec, parse_uint_list(kv.count("betas") ? kv.at("betas") : "")));
}

SchemeParams SchemeParams::reordered(const std::vector<unsigned>& order) const {
    if (order.size() != n_) throw std::invalid_argument("reorder needs n indices");
    std::vector<FieldElement> alphas;
    alphas.reserve(n_);
    for (unsigned j : order) alphas.push_back(alphas_[j]);
    return make(*spec_, kind_, n_, k_, L_, std::move(alphas), betas_.points());
}

namespace {

void check_secret_vector(const SchemeParams& params, const SecretVector& s) {
    if (s.size() != params.L()) throw std::invalid_argument("secret vector must have length L");
    for (const auto& e : s)
        if (e.spec_ptr() != &params.spec()) throw std::invalid_argument("secret from wrong field");
}

// enumerate F_q^count, index 0 fastest
std::vector<std::vector<FieldElement>> all_tuples(const FieldSpec& spec, unsigned count) {
    size_t total = 1;
    for (unsigned i = 0; i < count; ++i) total *= spec.q();
    std::vector<std::vector<FieldElement>> out;
    out.reserve(total);
    for (size_t nidx = 0; nidx < total; ++nidx) {
        std::vector<FieldElement> t;
        t.reserve(count);
        size_t v = nidx;
        for (unsigned i = 0; i < count; ++i) {
            t.push_back(spec.element(static_cast<unsigned>(v % spec.q())));
            v /= spec.q();
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

std::vector<std::vector<FieldElement>> coeff_set_ogawa(const SchemeParams& params,
                                                       const SecretVector& s) {
    if (params.kind() != SchemeKind::Ogawa) throw std::invalid_argument("coeff_set_ogawa: wrong kind");
    check_secret_vector(params, s);
    std::vector<std::vector<FieldElement>> out;
    for (auto& tail : all_tuples(params.spec(), params.k() - params.L())) {
        std::vector<FieldElement> c = s;
        c.insert(c.end(), tail.begin(), tail.end());
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<std::vector<FieldElement>> coeff_set_zm(const SchemeParams& params,
                                                    const SecretVector& s) {
    if (params.kind() != SchemeKind::ZM) throw std::invalid_argument("coeff_set_zm: wrong kind");
    check_secret_vector(params, s);
    const FieldSpec& spec = params.spec();
    unsigned L = params.L(), k = params.k();
    std::vector<std::vector<FieldElement>> out;
    for (auto& tail : all_tuples(spec, k - L)) {
        // head of degree < L with head(beta_i) = s_i - tail_part(beta_i)
        Polynomial tail_poly = Polynomial(spec, tail).times_x_power(L, k);
        std::vector<FieldElement> head_vals;
        head_vals.reserve(L);
        for (unsigned i = 0; i < L; ++i)
            head_vals.push_back(s[i] - evaluate(tail_poly, params.betas()[i]));
        Polynomial head = lagrange_interpolate(params.betas(), head_vals);
        std::vector<FieldElement> c = head.coeffs();
        c.insert(c.end(), tail.begin(), tail.end());
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

SparseState encode_impl(const SchemeParams& params, const SparseState& secret) {
    if (&secret.spec() != &params.spec()) throw std::invalid_argument("secret from wrong field");
    if (secret.registers() != params.L())
        throw std::invalid_argument("secret must occupy exactly L registers");
    if (secret.ket_count() == 0) throw std::invalid_argument("cannot encode the zero state");
    SparseState out(params.spec(), params.n(),
                    secret.scale_exp() + static_cast<int>(params.k() - params.L()));
    for (const auto& [sket, amp] : secret.amps()) {
        SecretVector s;
        s.reserve(params.L());
        for (unsigned v : sket) s.push_back(params.spec().element(v));
        auto coeffs = params.kind() == SchemeKind::Ogawa ? coeff_set_ogawa(params, s)
                                                         : coeff_set_zm(params, s);
        for (const auto& c : coeffs) {
            Polynomial f(params.spec(), c);
            BasisIndex ket;
            ket.reserve(params.n());
            for (const auto& v : ev_map(f, params.alphas())) ket.push_back(v.value());
            out.add_amplitude(ket, amp);
        }
    }
    return out;
}

}  // namespace

SparseState encode_ogawa(const SchemeParams& params, const SparseState& secret) {
    if (params.kind() != SchemeKind::Ogawa) throw std::invalid_argument("encode_ogawa: wrong kind");
    return encode_impl(params, secret);
}

SparseState encode_zm(const SchemeParams& params, const SparseState& secret) {
    if (params.kind() != SchemeKind::ZM) throw std::invalid_argument("encode_zm: wrong kind");
    return encode_impl(params, secret);
}

SparseState encode(const SchemeParams& params, const SparseState& secret) {
    return params.kind() == SchemeKind::Ogawa ? encode_ogawa(params, secret)
                                              : encode_zm(params, secret);
}

Polynomial g_poly(const SchemeParams& params, const std::vector<FieldElement>& r,
                  const SecretVector& s) {
    if (params.kind() != SchemeKind::Ogawa) throw std::invalid_argument("g_poly: wrong kind");
    check_secret_vector(params, s);
    unsigned k = params.k(), L = params.L();
    if (r.size() != k - L) throw std::invalid_argument("r must have length k - L");
    const FieldSpec& spec = params.spec();
    Polynomial secret_part(spec, s);  // s_1 + s_2 x + ... + s_L x^{L-1}
    if (k == L) return secret_part.resized(k);
    // b_i = (r_i - s_1 - ... - s_L a_i^{L-1}) / a_i^L, then interpolate
    PointSet head = params.alphas().prefix(k - L);
    std::vector<FieldElement> b;
    b.reserve(k - L);
    for (unsigned i = 0; i < k - L; ++i) {
        FieldElement ai = head[i];
        if (ai.is_zero()) throw std::invalid_argument("g_poly needs nonzero alpha_i (division by alpha_i^L)");
        b.push_back((r[i] - evaluate(secret_part, ai)) / ai.pow(L));
    }
    Polynomial f = lagrange_interpolate(head, b);
    return f.times_x_power(L, k) + secret_part.resized(k);
}

Polynomial h_poly(const SchemeParams& params, const std::vector<FieldElement>& r,
                  const SecretVector& s) {
    if (params.kind() != SchemeKind::ZM) throw std::invalid_argument("h_poly: wrong kind");
    check_secret_vector(params, s);
    unsigned k = params.k(), L = params.L();
    if (r.size() != k - L) throw std::invalid_argument("r must have length k - L");
    std::vector<FieldElement> pts = params.betas().points();
    for (unsigned i = 0; i < k - L; ++i) pts.push_back(params.alphas()[i]);
    std::vector<FieldElement> vals = s;
    vals.insert(vals.end(), r.begin(), r.end());
    return lagrange_interpolate(PointSet(params.spec(), pts), vals);
}

Polynomial scheme_poly(const SchemeParams& params, const std::vector<FieldElement>& r,
                       const SecretVector& s) {
    return params.kind() == SchemeKind::Ogawa ? g_poly(params, r, s) : h_poly(params, r, s);
}

namespace {

// Linear basis map over F_q given by a square matrix (row-major canonical
// integers); bijectivity is exactly the matrix being invertible.
struct LinearMap {
    const FieldSpec* spec;
    unsigned dim;
    std::vector<unsigned> mat;

    BasisIndex apply(const BasisIndex& in) const {
        BasisIndex out(dim, 0);
        for (unsigned row = 0; row < dim; ++row) {
            unsigned acc = 0;
            for (unsigned col = 0; col < dim; ++col)
                acc = spec->add_raw(acc, spec->mul_raw(mat[row * dim + col], in[col]));
            out[row] = acc;
        }
        return out;
    }

    bool invertible() const {
        std::vector<unsigned> a = mat;
        for (unsigned col = 0; col < dim; ++col) {
            unsigned pivot = dim;
            for (unsigned row = col; row < dim; ++row)
                if (a[row * dim + col] != 0) {
                    pivot = row;
                    break;
                }
            if (pivot == dim) return false;
            if (pivot != col)
                for (unsigned j = 0; j < dim; ++j) std::swap(a[pivot * dim + j], a[col * dim + j]);
            unsigned inv = spec->inv_raw(a[col * dim + col]);
            for (unsigned j = 0; j < dim; ++j) a[col * dim + j] = spec->mul_raw(a[col * dim + j], inv);
            for (unsigned row = col + 1; row < dim; ++row) {
                unsigned f = a[row * dim + col];
                if (f == 0) continue;
                for (unsigned j = 0; j < dim; ++j)
                    a[row * dim + j] =
                        spec->sub_raw(a[row * dim + j], spec->mul_raw(f, a[col * dim + j]));
            }
        }
        return true;
    }
};

BasisMap map_from_linear(LinearMap lm, const char* what) {
    if (!lm.invertible())
        throw std::logic_error(std::string(what) + ": completion map is not a bijection");
    BasisMap bm;
    bm.in_arity = lm.dim;
    bm.out_arity = lm.dim;
    bm.fn = [lm = std::move(lm)](const BasisIndex& in) { return lm.apply(in); };
    bm.verified = true;  // exact invertibility check above
    return bm;
}

}  // namespace

BasisMap completion_map(const SchemeParams& params) {
    const FieldSpec& spec = params.spec();
    unsigned k = params.k(), L = params.L(), n = params.n();
    // input (r_1..r_{k-L}, s_1..s_L), output (g(alpha_{k-L+1}), ..., g(alpha_n));
    // g is linear in (r, s) with no constant term, so columns come from
    // unit inputs
    LinearMap lm{&spec, k, std::vector<unsigned>(static_cast<size_t>(k) * k, 0)};
    for (unsigned col = 0; col < k; ++col) {
        std::vector<FieldElement> r(k - L, spec.zero());
        SecretVector s(L, spec.zero());
        if (col < k - L)
            r[col] = spec.one();
        else
            s[col - (k - L)] = spec.one();
        Polynomial g = scheme_poly(params, r, s);
        for (unsigned row = 0; row < n - (k - L); ++row)
            lm.mat[row * k + col] = evaluate(g, params.alphas()[k - L + row]).value();
    }
    return map_from_linear(std::move(lm), "completion_map");
}

AdvanceSession advance_setup(const SchemeParams& params, const std::vector<unsigned>& advanced) {
    unsigned max_adv = params.k() - params.L();
    if (advanced.size() > max_adv) {
        std::ostringstream os;
        os << "cannot advance share " << advanced.size() << " shares: any " << (max_adv + 1)
           << " or more shares of a (" << params.k() << "," << params.L() << "," << params.n()
           << ") scheme do not form a forbidden set; at most " << max_adv << " are advance shareable";
        throw std::invalid_argument(os.str());
    }
    std::vector<bool> seen(params.n(), false);
    std::vector<unsigned> adv = advanced;
    std::sort(adv.begin(), adv.end());
    for (unsigned a : adv) {
        if (a >= params.n()) throw std::out_of_range("advanced share index out of range");
        if (seen[a]) throw std::invalid_argument("duplicate advanced share index");
        seen[a] = true;
    }
    // reassign indices so the advanced shares occupy the first slots
    std::vector<unsigned> reassign = adv;
    for (unsigned i = 0; i < params.n(); ++i)
        if (!seen[i]) reassign.push_back(i);

    return AdvanceSession{params, adv, reassign,
                          uniform_resource(params.spec(), params.k() - params.L())};
}

SparseState advance_complete(const AdvanceSession& session, const SparseState& secret,
                             const BasisMap* override_map) {
    const SchemeParams& params = session.params;
    unsigned k = params.k(), L = params.L(), n = params.n();
    if (&secret.spec() != &params.spec()) throw std::invalid_argument("secret from wrong field");
    if (secret.registers() != L) throw std::invalid_argument("secret must occupy exactly L registers");
    if (session.resource.registers() != 2 * (k - L))
        throw std::invalid_argument("session resource has wrong register count");

    SchemeParams permuted = params.reordered(session.reassign);
    BasisMap u_enc = override_map ? *override_map : completion_map(permuted);

    // registers: [0, k-L) distributed halves, [k-L, 2(k-L)) dealer-kept,
    // then L secret registers
    SparseState joint = session.resource.tensor(secret);
    std::vector<unsigned> regs(k);
    std::iota(regs.begin(), regs.end(), k - L);
    SparseState shares = apply_basis_map(joint, regs, u_enc);
    // now share for permuted slot j sits at register j; undo the reassignment
    std::vector<unsigned> order(n);
    for (unsigned j = 0; j < n; ++j) order[session.reassign[j]] = j;
    return permute_registers(shares, order);
}

std::string AdvanceSession::serialize() const {
    std::ostringstream os;
    os << "qramp-session v1\n" << params.descriptor() << '\n';
    os << "advanced=";
    for (size_t i = 0; i < advanced.size(); ++i) {
        if (i) os << ',';
        os << advanced[i];
    }
    os << "\nreassign=";
    for (size_t i = 0; i < reassign.size(); ++i) {
        if (i) os << ',';
        os << reassign[i];
    }
    os << '\n' << resource.serialize();
    return os.str();
}

AdvanceSession AdvanceSession::deserialize(const std::string& text) {
    std::istringstream is(text);
    std::string magic, scheme_line, adv_line, reassign_line;
    if (!std::getline(is, magic) || magic != "qramp-session v1")
        throw std::invalid_argument("bad session file");
    if (!std::getline(is, scheme_line) || !std::getline(is, adv_line) ||
        !std::getline(is, reassign_line))
        throw std::invalid_argument("truncated session file");
    if (adv_line.rfind("advanced=", 0) != 0 || reassign_line.rfind("reassign=", 0) != 0)
        throw std::invalid_argument("bad session file");
    SchemeParams params = SchemeParams::parse(scheme_line);
    std::vector<unsigned> advanced = parse_uint_list(adv_line.substr(9));
    std::vector<unsigned> reassign = parse_uint_list(reassign_line.substr(9));
    std::string rest((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    SparseState resource = SparseState::deserialize(rest);
    AdvanceSession check = advance_setup(params, advanced);
    if (check.reassign != reassign) throw std::invalid_argument("session reassignment corrupted");
    return AdvanceSession{params, std::move(advanced), std::move(reassign), std::move(resource)};
}

ReconstructResult reconstruct(const SchemeParams& params, const SparseState& share_state,
                              const std::vector<unsigned>& qualified) {
    unsigned n = params.n(), k = params.k(), L = params.L();
    if (&share_state.spec() != &params.spec())
        throw std::invalid_argument("share state from wrong field");
    if (share_state.registers() != n) throw std::invalid_argument("share state must have n registers");
    std::vector<unsigned> quals = qualified;
    std::sort(quals.begin(), quals.end());
    quals.erase(std::unique(quals.begin(), quals.end()), quals.end());
    if (quals.size() != qualified.size()) throw std::invalid_argument("duplicate qualified index");
    if (!quals.empty() && quals.back() >= n) throw std::out_of_range("qualified index out of range");
    if (quals.size() < k) {
        std::ostringstream os;
        os << "need >= k shares: got " << quals.size() << ", k = " << k;
        throw std::invalid_argument(os.str());
    }
    const FieldSpec& spec = params.spec();

    std::vector<unsigned> used(quals.begin(), quals.begin() + k);
    std::vector<bool> is_used(n, false);
    for (unsigned j : used) is_used[j] = true;
    std::vector<unsigned> untouched;
    for (unsigned j = 0; j < n; ++j)
        if (!is_used[j]) untouched.push_back(j);

    std::vector<FieldElement> used_pts, other_pts;
    for (unsigned j : used) used_pts.push_back(params.alphas()[j]);
    for (unsigned j : untouched) other_pts.push_back(params.alphas()[j]);
    PointSet used_set(spec, used_pts);

    // Per-ket consistency: the values held by the qualified shares must
    // lie on one polynomial of degree < k.
    for (const auto& [ket, amp] : share_state.amps()) {
        std::vector<FieldElement> vals;
        for (unsigned j : used) vals.push_back(spec.element(ket[j]));
        Polynomial f = lagrange_interpolate(used_set, vals);
        for (size_t i = k; i < quals.size(); ++i)
            if (evaluate(f, params.alphas()[quals[i]]).value() != ket[quals[i]])
                throw std::invalid_argument("share state inconsistent with any codeword");
    }

    // Decoding map on the k used registers:
    //   (v_1..v_k) -> (secret symbols of f, f at every untouched point)
    // where f interpolates the v's. Putting f's untouched-point values in
    // the residual registers makes them mirror the untouched shares
    // exactly, so the joint state factorizes as secret x (entangled
    // pairs), for superposed secrets too.
    LinearMap lm{&spec, k, std::vector<unsigned>(static_cast<size_t>(k) * k, 0)};
    for (unsigned col = 0; col < k; ++col) {
        std::vector<FieldElement> unit(k, spec.zero());
        unit[col] = spec.one();
        Polynomial f = lagrange_interpolate(used_set, unit);
        for (unsigned t = 0; t < L; ++t) {
            FieldElement sym = params.kind() == SchemeKind::Ogawa ? f.coeff(t)
                                                                  : evaluate(f, params.betas()[t]);
            lm.mat[t * k + col] = sym.value();
        }
        for (size_t t = 0; t < other_pts.size(); ++t)
            lm.mat[(L + t) * k + col] = evaluate(f, other_pts[t]).value();
    }
    BasisMap dec = map_from_linear(std::move(lm), "reconstruct");

    SparseState mapped = apply_basis_map(share_state, used, dec);
    // mapped register order: untouched (n-k) first, then secret L, then
    // the k-L residual outputs; bring the secret to the front
    unsigned u = n - k;
    std::vector<unsigned> order;
    for (unsigned t = 0; t < L; ++t) order.push_back(u + t);
    for (unsigned t = 0; t < k - L; ++t) order.push_back(u + L + t);
    for (unsigned t = 0; t < u; ++t) order.push_back(t);
    SparseState arranged = permute_registers(mapped, order);

    // exact rank-1 factorization across the secret/residual cut
    std::map<BasisIndex, ComplexRational> first_col;  // secret part -> amp at reference residual
    std::map<BasisIndex, ComplexRational> first_row;  // residual part -> amp at reference secret
    BasisIndex ref_secret, ref_residual;
    bool have_ref = false;
    for (const auto& [ket, amp] : arranged.amps()) {
        BasisIndex sk(ket.begin(), ket.begin() + L);
        BasisIndex wk(ket.begin() + L, ket.end());
        if (!have_ref) {
            ref_secret = sk;
            ref_residual = wk;
            have_ref = true;
        }
        if (wk == ref_residual) first_col[sk] = amp;
        if (sk == ref_secret) first_row[wk] = amp;
    }
    if (!have_ref) throw std::invalid_argument("cannot reconstruct from the zero state");
    ComplexRational pivot = first_col.at(ref_secret);
    size_t expected = first_col.size() * first_row.size();
    if (arranged.ket_count() != expected)
        throw std::invalid_argument("secret register does not factorize (corrupted share state)");
    for (const auto& [ket, amp] : arranged.amps()) {
        BasisIndex sk(ket.begin(), ket.begin() + L);
        BasisIndex wk(ket.begin() + L, ket.end());
        auto cit = first_col.find(sk);
        auto rit = first_row.find(wk);
        if (cit == first_col.end() || rit == first_row.end() ||
            amp * pivot != cit->second * rit->second)
            throw std::invalid_argument("secret register does not factorize (corrupted share state)");
    }

    SparseState secret(spec, L, 0);
    for (const auto& [sk, a] : first_col) secret.add_amplitude(sk, a);
    SparseState residual(spec, n - L, arranged.scale_exp());
    ComplexRational inv_pivot = ComplexRational(Rational(1)) / pivot;
    for (const auto& [wk, a] : first_row) residual.add_amplitude(wk, a * inv_pivot);
    return {std::move(secret), std::move(residual)};
}

}  // namespace qramp
