#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace zsindex {

/// Immutable modulus with cached factorization and totient.
/// Safe to share across threads after construction.
class Modulus {
public:
    explicit Modulus(std::uint64_t n);

    std::uint64_t n() const { return n_; }
    const std::vector<std::pair<std::uint64_t, std::uint32_t>>& factors() const { return factors_; }
    std::uint64_t phi() const { return phi_; }
    bool coprime_six() const { return coprime_six_; }

    /// All positive divisors, ascending.
    std::vector<std::uint64_t> divisors() const;

private:
    std::uint64_t n_;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> factors_;
    std::uint64_t phi_;
    bool coprime_six_;
};

/// Least non-negative residue of x mod n. Rejects n = 0.
std::uint64_t least_residue(std::int64_t x, std::uint64_t n);

/// Trial division by 2, 3, then 6k+-1; Miller-Rabin early exit on the
/// remaining cofactor. Empty list for n = 1.
std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

/// 0 if n is not squarefree, else (-1)^omega(n).
int moebius(std::uint64_t n);

/// Inverse of a mod n. Throws std::domain_error when gcd(a, n) != 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t n);

/// Units of Z/n, ascending; size phi(n).
std::vector<std::uint64_t> units(const Modulus& m);

/// Exact Ramanujan sum c_n(k) = mu(n/d) phi(n) / phi(n/d), d = gcd(n, k mod n),
/// with d = n when k = 0 mod n.
std::int64_t ramanujan_sum(const Modulus& m, std::int64_t k);

}  // namespace zsindex
