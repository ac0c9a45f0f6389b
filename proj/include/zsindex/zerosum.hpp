#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zsindex/arith.hpp"

namespace zsindex {

/// Length-k sequence over Z/n with entries in [1, n-1], stored sorted.
class ZSequence {
public:
    ZSequence(Modulus m, std::vector<std::uint64_t> entries);

    const Modulus& modulus() const { return m_; }
    const std::vector<std::uint64_t>& entries() const { return entries_; }
    std::size_t length() const { return entries_.size(); }

private:
    Modulus m_;
    std::vector<std::uint64_t> entries_;
};

bool is_zero_sum(const ZSequence& s);

/// True iff no nonempty proper sub-multiset sums to 0 mod n.
/// Requires is_zero_sum(s).
bool is_minimal(const ZSequence& s);

struct IndexResult {
    std::uint64_t index;
    std::uint64_t witness_g;  // unit attaining the minimum
};

/// Full scan over all units. Requires is_zero_sum(s).
IndexResult index_with_witness(const ZSequence& s);
std::uint64_t index(const ZSequence& s);

/// Early-exit check for index 1: scan units ascending, stop at the first g
/// with sum of residues equal to n. Must agree with index(s) == 1.
/// attempts, when given, receives the number of units tried.
bool has_index_one(const ZSequence& s, std::uint64_t* attempts = nullptr);

/// Exactly two of the four residues (g*a_j)_n lie strictly in (0, n/2).
/// Requires length 4 and odd n.
bool exactly_two_in_half(const ZSequence& s, std::uint64_t g);

/// One representative per unordered multiset {a,b,c,d}, a+b+c+d = 0 mod n,
/// minimal, entries in [1, n-1] (coprime to n when coprime_only).
std::vector<ZSequence> enumerate_minimal_quadruples(const Modulus& m, bool coprime_only);

/// Normalized enumeration: multisets containing the entry 1 only. By unit
/// invariance of the index this mode finds a counterexample iff the
/// unrestricted enumeration does. Callback returns false to stop early.
void for_each_normalized_minimal_quadruple(
    const Modulus& m, const std::function<bool(const std::vector<std::uint64_t>&)>& fn);

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GStats {
    std::uint64_t sequences = 0;
    std::uint64_t total_attempts = 0;
    std::uint64_t max_attempts = 0;
};

struct Witness {
    std::vector<std::uint64_t> seq;
    std::uint64_t index;
};

struct VerifyReport {
    std::uint64_t n = 0;
    std::uint64_t sequences_checked = 0;
    bool all_index_one = true;
    std::optional<Witness> witness;
    double elapsed_s = 0.0;
    GStats g_stats;
};

/// Check every normalized minimal coprime quadruple over n. Requires
/// gcd(n, 6) = 1 unless exploratory.
VerifyReport verify_conjecture(const Modulus& m, bool exploratory = false);

/// One report per admissible n in [n_min, n_max], ascending. Normal mode
/// takes gcd(n, 6) = 1; exploratory mode takes every n. Reports are
/// independent of the worker count. Checkpoint lines: "n,status,checked".
std::vector<VerifyReport> verify_range(std::uint64_t n_min, std::uint64_t n_max,
                                       unsigned workers,
                                       const std::optional<std::string>& checkpoint,
                                       bool exploratory = false);

/// Serial reference for verify_range, kept for determinism tests and the
/// benchmark target.
std::vector<VerifyReport> verify_range_serial(std::uint64_t n_min, std::uint64_t n_max,
                                              const std::optional<std::string>& checkpoint,
                                              bool exploratory = false);

}  // namespace zsindex
