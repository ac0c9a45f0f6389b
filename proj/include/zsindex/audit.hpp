#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zsindex/approx.hpp"
#include "zsindex/arith.hpp"

namespace zsindex {

/// One lemma/inequality instance. pass <=> margin >= -1e-9 * max(1, |rhs|).
struct AuditReport {
    std::string name;
    std::vector<std::pair<std::string, std::int64_t>> inputs;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;
    std::string notes;
};

AuditReport make_audit_report(std::string name,
                              std::vector<std::pair<std::string, std::int64_t>> inputs,
                              double lhs, double rhs, std::string notes = {});

/// S0 = sum over units of chi(g/n) chi(ag/n) chi(bg/n). Integer-valued for
/// odd n; boundary values contribute 1/2 for even n.
double compute_S0(const Modulus& m, std::uint64_t a, std::uint64_t b);

/// Exact unit count with all three residues strictly below n/2. Odd n only;
/// equals compute_S0 there.
std::int64_t count_triple_in_I(const Modulus& m, std::uint64_t a, std::uint64_t b);

/// S1 = sum over units of f(g/n) f(ag/n) f(bg/n), via a per-residue table of
/// f values. Table build parallelized; accumulation is serial Kahan, so the
/// result is independent of the thread count.
double compute_S1_direct(const Modulus& m, std::uint64_t a, std::uint64_t b,
                         const FourierSmoother& s);

/// Serial reference for compute_S1_direct (benchmark baseline).
double compute_S1_direct_serial(const Modulus& m, std::uint64_t a, std::uint64_t b,
                                const FourierSmoother& s);

/// Spectral route: triple sum of f_hat coefficients against Ramanujan sums
/// c_n(a h1 + b h2 + h3). Must match compute_S1_direct.
double compute_S1_spectral(const Modulus& m, std::uint64_t a, std::uint64_t b,
                           const FourierSmoother& s);

/// The unique k* in [-H^2, H^2] with gcd(A k + k*, n) > sqrt(2 H^2 n), if any.
/// Comparisons are exact on squared integers. verify_unique re-scans and
/// throws if two qualifying values exist.
std::optional<std::int64_t> kstar(std::int64_t A, const Modulus& m, const FourierSmoother& s,
                                  std::int64_t k, bool verify_unique = false);

/// Starred sum over pairs (k, k*) with both odd and in [-H, H].
std::complex<double> star_sum(std::int64_t A, const Modulus& m, const FourierSmoother& s);

struct TSumBound {
    double exact;     // (sum |f_hat(h)|)^2 * sqrt(2 H^2 n)
    double analytic;  // ((2 log H)/pi)^2 * sqrt(2 H^2 n)
};

TSumBound t_sum_bound(const FourierSmoother& s, const Modulus& m);

/// |S0 - S1| against (13.02/H) phi(n) + 20.02 sqrt(2Hn) + 7H. Rejects H <= 1000.
AuditReport audit_s0_s1(const Modulus& m, std::uint64_t a, std::uint64_t b,
                        const FourierSmoother& s);

enum class RelForm { XPlus3Y, XMinus3Y, ThreeXPlusY, ThreeXMinusY };

const char* rel_form_name(RelForm f);

/// One relation selector per pair in {(1,a), (1,b), (a,b)}.
struct RelationCombo {
    RelForm pair_1a;
    RelForm pair_1b;
    RelForm pair_ab;
};

struct Elimination {
    std::uint64_t D = 0;
    bool feasible = false;
};

/// Exact integer elimination of a and b from the three congruences; a feasible
/// combo forces n | D. Combos using a minus form are ruled out a priori by the
/// degenerate index-1 family and are flagged infeasible.
Elimination relation_eliminator(const RelationCombo& c);

/// For every divisor n of D with gcd(n, 6) = 1 the explicit residues
/// a = -alpha1/beta1, b = -alpha2/beta2 satisfy all three congruences mod n.
bool relation_backsub_ok(const RelationCombo& c, std::uint64_t D);

/// Hypotheses of the density theorem: no pair satisfies x +- y = 0 mod n and
/// at least one pair satisfies none of x +- 3y, 3x +- y = 0 mod n.
bool theorem_hypotheses(const Modulus& m, std::uint64_t a, std::uint64_t b);

/// Rigorous lower bound (c0 - 13.02/H) phi - (3/2)((2 log H)/pi)^2 sqrt(2H^2 n)
/// - 20.02 sqrt(2Hn) - 7H against the exact count S0.
AuditReport theorem_lower_bound(const Modulus& m, std::uint64_t a, std::uint64_t b,
                                const FourierSmoother& s);

struct ConstantEntry {
    std::string symbol;
    double value = 0.0;
    std::string claim;
    bool satisfied = false;
};

struct ConstantsLedger {
    std::vector<ConstantEntry> entries;
    bool all_satisfied() const;
    const ConstantEntry& at(const std::string& symbol) const;
};

/// Every named constant of the bound chain, recomputed.
ConstantsLedger constants_ledger();

struct PhiThreshold {
    bool guaranteed = false;
    double bound_value = 0.0;  // certified lower bound on phi(n)/sqrt(n)
};

/// Explicit totient lower bound phi(n) >= n / (e^gamma ln ln n + 3/ln ln n),
/// n >= 3; certifies phi(n)/sqrt(n) > 1.1e9 when it can.
PhiThreshold phi_threshold_check(long double n);

}  // namespace zsindex
