#include "zsindex/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace zsindex {

std::uint64_t least_residue(std::int64_t x, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("least_residue: n must be positive");
    std::int64_t sn = static_cast<std::int64_t>(n);
    std::int64_t r = x % sn;
    if (r < 0) r += sn;
    return static_cast<std::uint64_t>(r);
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Sufficient witness set for all 64-bit n.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    auto strip = [&](std::uint64_t p) {
        if (n % p) return;
        std::uint32_t e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (std::uint64_t p = 5; p * p <= n; p += 6) {
        if (n > 1 && is_prime(n)) break;
        strip(p);
        strip(p + 2);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t phi = 1;
    for (auto [p, e] : factorize(n)) {
        std::uint64_t pe = 1;
        for (std::uint32_t i = 1; i < e; ++i) pe *= p;
        phi *= pe * (p - 1);
    }
    return phi;
}

int moebius(std::uint64_t n) {
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        (void)p;
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("inverse_mod: n must be positive");
    a %= n;
    // Extended Euclid on (a, n).
    std::int64_t old_r = static_cast<std::int64_t>(a), r = static_cast<std::int64_t>(n);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r; old_r = r; r = t;
        t = old_s - q * s; old_s = s; s = t;
    }
    if (old_r != 1) throw std::domain_error("inverse_mod: arguments are not coprime");
    return least_residue(old_s, n);
}

Modulus::Modulus(std::uint64_t n) : n_(n) {
    if (n < 2) throw std::invalid_argument("Modulus: n must be >= 2");
    factors_ = factorize(n);
    phi_ = 1;
    for (auto [p, e] : factors_) {
        std::uint64_t pe = 1;
        for (std::uint32_t i = 1; i < e; ++i) pe *= p;
        phi_ *= pe * (p - 1);
    }
    coprime_six_ = (std::gcd(n, std::uint64_t{6}) == 1);
}

std::vector<std::uint64_t> Modulus::divisors() const {
    std::vector<std::uint64_t> ds{1};
    for (auto [p, e] : factors_) {
        std::size_t base = ds.size();
        std::uint64_t pe = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pe);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<std::uint64_t> units(const Modulus& m) {
    std::vector<std::uint64_t> us;
    us.reserve(m.phi());
    for (std::uint64_t g = 1; g < m.n(); ++g)
        if (std::gcd(g, m.n()) == 1) us.push_back(g);
    return us;
}

std::int64_t ramanujan_sum(const Modulus& m, std::int64_t k) {
    std::uint64_t r = least_residue(k, m.n());
    std::uint64_t d = (r == 0) ? m.n() : std::gcd(m.n(), r);
    std::uint64_t q = m.n() / d;
    int mu = moebius(q);
    if (mu == 0) return 0;
    return mu * static_cast<std::int64_t>(m.phi() / euler_phi(q));
}

}  // namespace zsindex
