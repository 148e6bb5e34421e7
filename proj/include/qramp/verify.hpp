#pragma once

#include "qramp/schemes.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qramp {

// Probe family for "independent of the secret" checks: the q^L basis
// secrets plus, for every ordered pair (s, s'), the unnormalized
// superpositions |s> + |s'> and |s> + i|s'>. The encoders are linear, so
// reduced-state invariance over this family (whose density matrices span
// the full q^{2L}-dimensional Hermitian operator space) implies
// invariance for every secret.
struct ProbeFamily {
    std::vector<SparseState> states;
    std::vector<std::string> labels;
};

ProbeFamily secret_probe_family(const FieldSpec& spec, unsigned L);
// Probes varying only the secret coordinates in T (0-based); coordinates
// outside T are pinned to the values in `fixed` (length L, T entries ignored).
ProbeFamily secret_probe_family_on(const FieldSpec& spec, unsigned L,
                                   const std::vector<unsigned>& T,
                                   const std::vector<unsigned>& fixed);

// Exact rank of the span of the family's (trace-normalized) density
// matrices inside the real vector space of q^L x q^L Hermitian operators.
unsigned probe_operator_rank(const ProbeFamily& family, const FieldSpec& spec, unsigned L);

struct ForbiddenReport {
    bool forbidden = true;
    // witness when not forbidden: two probes with distinct reduced states
    std::string label_a, label_b;
    std::optional<SparseState> state_a, state_b;
    std::optional<DensityMatrix> dm_a, dm_b;
};

ForbiddenReport is_forbidden(const SchemeParams& params, const std::vector<unsigned>& subset,
                             const ProbeFamily& family, size_t dense_cap = 4096);

struct QualifiedReport {
    bool qualified = false;
    std::string transcript;
};

QualifiedReport is_qualified(const SchemeParams& params, const std::vector<unsigned>& subset,
                             const ProbeFamily& family);

enum class Verdict { Qualified, Forbidden, Intermediate };

struct SubsetClassification {
    std::vector<unsigned> subset;
    Verdict verdict;
    std::string witness;
};

struct AccessReport {
    bool pass = false;
    std::string detail;
    std::vector<SubsetClassification> table;
};

// Classifies every subset of shares, asserts the ramp |S|-threshold rule
// and the pure-state duality qualified(A) <=> forbidden(complement A).
AccessReport access_structure_report(const SchemeParams& params, size_t dense_cap = 4096);

struct EquivalenceReport {
    bool pass = false;
    unsigned basis_checked = 0;
    unsigned superposed_checked = 0;
    std::string detail;
};

// Advance encoding vs direct encoding: exact state equality over every
// basis secret plus `n_super` seeded superposed secrets.
EquivalenceReport equivalence_check(const SchemeParams& params,
                                    const std::vector<unsigned>& advanced, uint64_t seed,
                                    unsigned n_super, const BasisMap* override_map = nullptr);

// Witness of a T-part leak: two probe states on the T coordinates whose
// averaged reduced states on S differ. Re-checkable by feeding the probes
// back through averaged_reduced_state.
struct InvarianceWitness {
    std::vector<unsigned> S, T;
    std::string label_a, label_b;
    SparseState probe_a, probe_b;  // |T| registers
    DensityMatrix dm_a, dm_b;
};

// Reduced state on S for the secret built from `t_probe` on the T
// coordinates, averaged uniformly over basis assignments of the other
// coordinates (they are held by the reference system, hence decohered).
DensityMatrix averaged_reduced_state(const SchemeParams& params, const std::vector<unsigned>& S,
                                     const std::vector<unsigned>& T, const SparseState& t_probe,
                                     size_t dense_cap = 4096);

// Averaged reduced state on S invariant under variation of the T secret
// coordinates. Equivalent to zero mutual information between S and a
// reference holding the T part, since the probes span the operator space.
bool t_part_invariant(const SchemeParams& params, const std::vector<unsigned>& S,
                      const std::vector<unsigned>& T, size_t dense_cap,
                      std::optional<InvarianceWitness>* witness = nullptr);

struct StrongSecurityReport {
    bool pass = false;
    unsigned pairs_checked = 0;
    std::string detail;
};

// ZM strong security: every (S, T) with |S| + |T| <= k hides the T part.
StrongSecurityReport strong_security_check(const SchemeParams& params,
                                           const std::vector<unsigned>& S,
                                           const std::vector<unsigned>& T,
                                           size_t dense_cap = 4096);
StrongSecurityReport strong_security_sweep(const SchemeParams& params, size_t dense_cap = 4096);

enum class LeakageOutcome { WitnessFound, Inconclusive };

struct LeakageReport {
    LeakageOutcome outcome = LeakageOutcome::Inconclusive;
    std::string detail;
    std::optional<InvarianceWitness> witness;
};

// Searches an Ogawa scheme (L >= 2) for (S, T), |S| + |T| <= k, where the
// T part of the secret leaks to S. A found witness is evidence, not a
// pinned value; finding none is reported as inconclusive.
LeakageReport leakage_demo_ogawa(const SchemeParams& params, size_t dense_cap = 4096);

struct MaxAdvanceReport {
    bool pass = false;
    std::string detail;
};

// Every size-(k-L) set forbidden, every size-(k-L+1) set not forbidden,
// with each non-forbidden witness re-verified from serialized states.
MaxAdvanceReport max_advance_check(const SchemeParams& params, size_t dense_cap = 4096);

// Seeded superposed secret with small exact-rational coefficients.
SparseState random_secret(const FieldSpec& spec, unsigned L, std::mt19937_64& rng);

std::uint64_t fnv1a_hash(const std::string& text);
// "CHECK <name> <params-hash> PASS|FAIL|INCONCLUSIVE [witness-file]"
std::string check_line(const std::string& name, const SchemeParams& params,
                       const std::string& status, const std::string& witness_file = "");

std::vector<std::vector<unsigned>> subsets_of_size(unsigned n, unsigned size);

}  // namespace qramp
