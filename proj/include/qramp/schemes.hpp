#pragma once

#include "qramp/poly.hpp"
#include "qramp/qstate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qramp {

enum class SchemeKind { Ogawa, ZM };

std::string to_string(SchemeKind kind);
SchemeKind scheme_kind_from_string(const std::string& s);

// Parameters of a (k, L, n) ramp scheme over F_q with evaluation points
// alpha_1..alpha_n (and, for the ZM variant, extra points beta_1..beta_L).
// Share indices are 0-based throughout the library.
class SchemeParams {
public:
    static SchemeParams make(const FieldSpec& spec, SchemeKind kind, unsigned n, unsigned k,
                             unsigned L, std::vector<FieldElement> alphas,
                             std::vector<FieldElement> betas = {});

    const FieldSpec& spec() const { return *spec_; }
    SchemeKind kind() const { return kind_; }
    unsigned n() const { return n_; }
    unsigned k() const { return k_; }
    unsigned L() const { return L_; }
    const PointSet& alphas() const { return alphas_; }
    const PointSet& betas() const { return betas_; }

    std::string descriptor() const;
    static SchemeParams parse(const std::string& descriptor);

    // Same scheme with shares reordered: alphas[order[j]] moves to slot j.
    SchemeParams reordered(const std::vector<unsigned>& order) const;

private:
    SchemeParams(const FieldSpec& spec, SchemeKind kind, unsigned n, unsigned k, unsigned L,
                 PointSet alphas, PointSet betas)
        : spec_(&spec), kind_(kind), n_(n), k_(k), L_(L), alphas_(std::move(alphas)),
          betas_(std::move(betas)) {}

    const FieldSpec* spec_;
    SchemeKind kind_;
    unsigned n_, k_, L_;
    PointSet alphas_;
    PointSet betas_;
};

using SecretVector = std::vector<FieldElement>;

// D(s): coefficient vectors in F_q^k whose first L entries equal s.
std::vector<std::vector<FieldElement>> coeff_set_ogawa(const SchemeParams& params,
                                                       const SecretVector& s);
// D_ZM(s): coefficient vectors c with f_c(beta_i) = s_i for i <= L.
std::vector<std::vector<FieldElement>> coeff_set_zm(const SchemeParams& params,
                                                    const SecretVector& s);

// Direct encoders: uniform superposition over the evaluation vectors of
// the coefficient set, extended to superposed secrets by linearity.
SparseState encode_ogawa(const SchemeParams& params, const SparseState& secret);
SparseState encode_zm(const SchemeParams& params, const SparseState& secret);
SparseState encode(const SchemeParams& params, const SparseState& secret);

// The unique f_c, c in D(s), taking value r_i at alpha_i for i <= k-L.
Polynomial g_poly(const SchemeParams& params, const std::vector<FieldElement>& r,
                  const SecretVector& s);
// The unique f_c, c in D_ZM(s), taking value r_i at alpha_i for i <= k-L.
Polynomial h_poly(const SchemeParams& params, const std::vector<FieldElement>& r,
                  const SecretVector& s);
Polynomial scheme_poly(const SchemeParams& params, const std::vector<FieldElement>& r,
                       const SecretVector& s);

// The completion map |r>|s> -> |g(alpha_{k-L+1})>...|g(alpha_n)> as an
// exactly verified basis bijection (invertibility of the underlying
// linear map over F_q).
BasisMap completion_map(const SchemeParams& params);

// Two-phase advance sharing session. `advanced` holds the 0-based share
// indices distributed before the secret exists, at most k-L of them; the
// resource always spans the full k-L pairs, with unsent distributed-half
// qudits simply kept by the dealer. `reassign[j]` is the original share
// index sitting at permuted slot j.
struct AdvanceSession {
    SchemeParams params;
    std::vector<unsigned> advanced;
    std::vector<unsigned> reassign;
    SparseState resource;

    std::string serialize() const;
    static AdvanceSession deserialize(const std::string& text);
};

AdvanceSession advance_setup(const SchemeParams& params, const std::vector<unsigned>& advanced);
// `override_map` replaces the completion unitary (built for the session's
// reassigned share order); used by verification fixtures.
SparseState advance_complete(const AdvanceSession& session, const SparseState& secret,
                             const BasisMap* override_map = nullptr);

struct ReconstructResult {
    SparseState secret;    // L registers
    SparseState residual;  // n - L registers
};

// Decodes the secret from >= k shares; uses only the first k registers of
// the qualified set and carries everything else through untouched.
ReconstructResult reconstruct(const SchemeParams& params, const SparseState& share_state,
                              const std::vector<unsigned>& qualified);

}  // namespace qramp
