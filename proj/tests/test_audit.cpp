#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "zsindex/audit.hpp"
#include "zsindex/zerosum.hpp"

using namespace zsindex;

namespace {

// Independent double-loop route for the starred sum: both k and k* range over
// the odd integers in [-H, H]; the gcd condition is tested directly. Agrees
// with star_sum because the qualifying k* is unique in the wider window.
std::complex<double> star_sum_oracle(std::int64_t A, const Modulus& m, const FourierSmoother& s) {
    using u128 = unsigned __int128;
    const std::uint64_t n = m.n();
    const u128 bound2 = static_cast<u128>(2) * static_cast<u128>(s.H) * static_cast<u128>(s.H) * n;
    std::complex<double> acc{0.0, 0.0};
    for (std::int64_t k = -s.H; k <= s.H; ++k) {
        if (k % 2 == 0) continue;
        for (std::int64_t ks = -s.H; ks <= s.H; ++ks) {
            if (ks % 2 == 0) continue;
            std::int64_t val = A * k + ks;
            std::uint64_t g =
                val == 0 ? n : std::gcd(static_cast<std::uint64_t>(std::llabs(val)), n);
            if (static_cast<u128>(g) * g <= bound2) continue;
            acc += f_hat(k, s) * f_hat(ks, s) *
                   static_cast<double>(ramanujan_sum(m, val));
        }
    }
    return acc;
}

bool has_13_relation(std::int64_t A, std::uint64_t n) {
    auto z = [&](std::int64_t v) { return least_residue(v, n) == 0; };
    return z(3 * A + 1) || z(3 * A - 1) || z(A + 3) || z(A - 3);
}

bool has_any_relation(std::int64_t A, std::uint64_t n) {
    auto z = [&](std::int64_t v) { return least_residue(v, n) == 0; };
    return z(A + 1) || z(A - 1) || has_13_relation(A, n);
}

}  // namespace

TEST_CASE("compute_S0 examples") {
    CHECK(compute_S0(Modulus(7), 2, 3) == 1.0);
    CHECK(compute_S0(Modulus(5), 1, 1) == 2.0);
    CHECK_THROWS_AS(compute_S0(Modulus(10), 5, 3), std::domain_error);
    // even n: the chi route (with its 1/2 boundary convention) must agree
    // with a direct evaluation through the public chi function
    for (std::uint64_t n : {8, 10, 14}) {
        Modulus m(n);
        for (std::uint64_t a = 1; a < n; ++a) {
            if (std::gcd(a, n) != 1) continue;
            double direct = 0.0;
            for (std::uint64_t g : units(m))
                direct += chi(static_cast<double>(g) / n) *
                          chi(static_cast<double>(a * g % n) / n) *
                          chi(static_cast<double>(3 * g % n) / n);
            if (std::gcd<std::uint64_t>(3, n) == 1)
                CHECK(compute_S0(m, a, 3) == direct);
        }
    }
}

TEST_CASE("count_triple_in_I") {
    CHECK(count_triple_in_I(Modulus(7), 2, 3) == 1);
    CHECK_THROWS_AS(count_triple_in_I(Modulus(8), 3, 5), std::invalid_argument);
    for (std::uint64_t n = 3; n <= 99; n += 2)
        CHECK(count_triple_in_I(Modulus(n), 1, 1) ==
              static_cast<std::int64_t>(Modulus(n).phi() / 2));
    // brute re-count for (25, 7, 11)
    std::int64_t brute = 0;
    for (std::uint64_t g = 1; g < 25; ++g) {
        if (std::gcd<std::uint64_t>(g, 25) != 1) continue;
        if (2 * g < 25 && 2 * (7 * g % 25) < 25 && 2 * (11 * g % 25) < 25) ++brute;
    }
    CHECK(count_triple_in_I(Modulus(25), 7, 11) == brute);
}

TEST_CASE("S0 identity: integer and equal to count_triple_in_I for odd n") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
        std::uint64_t n = 3 + 2 * (rng() % 100);
        Modulus m(n);
        std::uint64_t a = 1 + rng() % (n - 1), b = 1 + rng() % (n - 1);
        if (std::gcd(a, n) != 1 || std::gcd(b, n) != 1) continue;
        double s0 = compute_S0(m, a, b);
        CHECK(s0 == std::floor(s0));
        CHECK(s0 == static_cast<double>(count_triple_in_I(m, a, b)));
    }
}

TEST_CASE("S1 direct equals spectral") {
    for (auto [n, a, b] : {std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>{7, 2, 3},
                           {11, 3, 5}}) {
        Modulus m(n);
        FourierSmoother s(101);
        double d = compute_S1_direct(m, a, b, s);
        double sp = compute_S1_spectral(m, a, b, s);
        CHECK(std::fabs(d - sp) <= 1e-6 * static_cast<double>(m.phi()));
    }
}

TEST_CASE("S1 direct equals spectral on random instances") {
    std::mt19937_64 rng(202406);
    for (int i = 0; i < 30; ++i) {
        std::uint64_t n = 5 + rng() % 496;
        Modulus m(n);
        std::uint64_t a = 1 + rng() % (n - 1), b = 1 + rng() % (n - 1);
        if (std::gcd(a, n) != 1 || std::gcd(b, n) != 1) continue;
        FourierSmoother s(i % 2 == 0 ? 51 : 101);
        double d = compute_S1_direct(m, a, b, s);
        double sp = compute_S1_spectral(m, a, b, s);
        CHECK(std::fabs(d - sp) <= 1e-6 * std::max(1.0, static_cast<double>(m.phi())));
        CHECK(compute_S1_direct_serial(m, a, b, s) == d);  // bit-identical
    }
}

TEST_CASE("spectral zero-shell structure: (f_hat(0))^3 phi(n) = phi(n)/8") {
    FourierSmoother s(11);
    auto f0 = f_hat(0, s);
    for (std::uint64_t n : {7, 25, 35}) {
        double phi = static_cast<double>(Modulus(n).phi());
        CHECK(std::pow(f0.real(), 3) * phi == doctest::Approx(phi / 8.0).epsilon(1e-15));
        CHECK(f0.imag() == 0.0);
    }
}

TEST_CASE("kstar examples") {
    FourierSmoother s(3);
    // gcd(0, n) = n always qualifies, so k* = -A k whenever |A k| <= H^2.
    CHECK(kstar(2, Modulus(101), s, 1, true) == std::optional<std::int64_t>(-2));
    CHECK(kstar(2, Modulus(1000003), s, 1, true) == std::optional<std::int64_t>(-2));
    // genuinely absent: |A k| > H^2 and no multiple of n within reach
    CHECK_FALSE(kstar(7, Modulus(1000003), s, 3, true).has_value());
    CHECK(kstar(22, Modulus(25), s, 1, true) == std::optional<std::int64_t>(3));
    CHECK_THROWS_AS(kstar(5, Modulus(25), s, 1), std::domain_error);
}

TEST_CASE("kstar uniqueness on random instances") {
    std::mt19937_64 rng(77);
    int checked = 0;
    for (int i = 0; i < 400 && checked < 100; ++i) {
        std::uint64_t n = 5 + rng() % 9996;
        std::int64_t H = 1 + static_cast<std::int64_t>(rng() % 10);
        std::int64_t A = 1 + static_cast<std::int64_t>(rng() % (n - 1));
        if (std::gcd(static_cast<std::uint64_t>(A), n) != 1) continue;
        std::int64_t k = 1 + 2 * static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(H));
        if (k > H) k -= 2;
        FourierSmoother s(H);
        // verify_unique re-scans the full window and throws on any violation
        CHECK_NOTHROW(kstar(A, Modulus(n), s, k, true));
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("star_sum equals the double-loop oracle at small H") {
    Modulus m25(25);
    FourierSmoother s3(3);
    auto v = star_sum(22, m25, s3);  // A + 3 = 0 mod 25
    auto w = star_sum_oracle(22, m25, s3);
    CHECK(std::abs(v - w) < 1e-12);
    CHECK(std::abs(v) > 0.1);  // the instance is genuinely nonzero
    CHECK(std::abs(v) <= (1.0 / 12.0) * static_cast<double>(m25.phi()) * (1.0 + 1e-9));

    std::mt19937_64 rng(4242);
    int checked = 0;
    for (int i = 0; i < 400 && checked < 50; ++i) {
        std::uint64_t n = 19 + rng() % 102;
        if (std::gcd(n, std::uint64_t{6}) != 1) continue;
        std::int64_t A = 2 + static_cast<std::int64_t>(rng() % (n - 2));
        if (std::gcd(static_cast<std::uint64_t>(A), n) != 1) continue;
        Modulus m(n);
        FourierSmoother s(3);
        CHECK(std::abs(star_sum(A, m, s) - star_sum_oracle(A, m, s)) < 1e-12);
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("star_sum envelopes on random admissible instances") {
    std::mt19937_64 rng(90210);
    int no_rel = 0, rel13 = 0;
    while (no_rel + rel13 < 60) {
        std::uint64_t n = 7 + rng() % 9994;
        if (std::gcd(n, std::uint64_t{6}) != 1) continue;
        std::int64_t A = 2 + static_cast<std::int64_t>(rng() % (n - 2));
        if (std::gcd(static_cast<std::uint64_t>(A), n) != 1) continue;
        if (least_residue(A + 1, n) == 0 || least_residue(A - 1, n) == 0) continue;
        Modulus m(n);
        FourierSmoother s(1001 + static_cast<std::int64_t>(rng() % 2000));
        double phi = static_cast<double>(m.phi());
        double mag = std::abs(star_sum(A, m, s));
        if (has_13_relation(A, n)) {
            CHECK(mag <= (1.0 / 12.0) * phi * (1.0 + 1e-9));
            ++rel13;
        } else {
            CHECK(mag <= 0.07926 * phi);
            ++no_rel;
        }
    }
    CHECK(no_rel > 0);
}

TEST_CASE("t_sum_bound: exact below the analytic form") {
    Modulus m(101);
    for (std::int64_t H : {100, 1000, 13020}) {
        auto b = t_sum_bound(FourierSmoother(H), m);
        CHECK(b.exact <= b.analytic);
        CHECK(b.exact > 0.0);
    }
    // H = 13020 analytic coefficient before the 3/2 factor
    auto b = t_sum_bound(FourierSmoother(13020), m);
    double root = 13020.0 * std::sqrt(2.0 * 101.0);
    CHECK(b.analytic / root == doctest::Approx(36.38).epsilon(0.01));
    // monotone in H
    double prev = 0.0;
    for (std::int64_t H : {10, 100, 1000, 10000}) {
        auto v = t_sum_bound(FourierSmoother(H), m).analytic;
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(t_sum_bound(FourierSmoother(1), m), std::invalid_argument);
}

TEST_CASE("audit_s0_s1 examples") {
    auto r1 = audit_s0_s1(Modulus(101), 2, 3, FourierSmoother(1001));
    CHECK(r1.pass);
    CHECK(r1.name == "s0s1");
    auto r2 = audit_s0_s1(Modulus(1009), 5, 7, FourierSmoother(2000));
    CHECK(r2.pass);
    CHECK_THROWS_AS(audit_s0_s1(Modulus(101), 2, 3, FourierSmoother(1000)),
                    std::invalid_argument);
}

TEST_CASE("audit_s0_s1 randomized") {
    std::mt19937_64 rng(555);
    int checked = 0;
    while (checked < 12) {
        std::uint64_t n = 5 + rng() % 2996;
        std::uint64_t a = 1 + rng() % (n - 1), b = 1 + rng() % (n - 1);
        if (std::gcd(a, n) != 1 || std::gcd(b, n) != 1) continue;
        FourierSmoother s(1001 + static_cast<std::int64_t>(rng() % 3000));
        auto r = audit_s0_s1(Modulus(n), a, b, s);
        CHECK(r.pass);
        ++checked;
    }
}

TEST_CASE("relation_eliminator") {
    // (3 + a, 1 + 3b, 3a + b) = 0 mod n forces n | 28
    RelationCombo combo28{RelForm::ThreeXPlusY, RelForm::XPlus3Y, RelForm::ThreeXPlusY};
    auto e = relation_eliminator(combo28);
    CHECK(e.feasible);
    CHECK(e.D == 28);
    CHECK(relation_backsub_ok(combo28, e.D));

    const RelForm plus[2] = {RelForm::XPlus3Y, RelForm::ThreeXPlusY};
    int count28 = 0;
    for (RelForm f1 : plus)
        for (RelForm f2 : plus)
            for (RelForm f3 : plus) {
                RelationCombo c{f1, f2, f3};
                auto r = relation_eliminator(c);
                CHECK(r.feasible);
                CHECK(r.D > 0);
                CHECK(r.D <= 28);
                CHECK(relation_backsub_ok(c, r.D));
                if (r.D == 28) ++count28;
            }
    CHECK(count28 == 2);

    // minus forms are ruled out a priori
    RelationCombo minus{RelForm::ThreeXMinusY, RelForm::XPlus3Y, RelForm::XPlus3Y};
    CHECK_FALSE(relation_eliminator(minus).feasible);
    CHECK(relation_eliminator(minus).D == 0);
}

TEST_CASE("degenerate family (1, 3, n-2, n-2) has index 1") {
    // The a = 3 branch of the minus-form argument: b + c = 2n - 4 with
    // (b, c) = (n-2, n-2) must land in the index-1 family.
    for (std::uint64_t n = 7; n <= 60; ++n) {
        if (std::gcd(n, std::uint64_t{6}) != 1) continue;
        ZSequence s(Modulus(n), {1, 3, n - 2, n - 2});
        REQUIRE(is_zero_sum(s));
        REQUIRE(is_minimal(s));
        CHECK(index(s) == 1);
    }
}

TEST_CASE("theorem_hypotheses") {
    // every pair of (1,2),(1,3),(2,3) satisfies some 1-3 relation mod 7
    CHECK_FALSE(theorem_hypotheses(Modulus(7), 2, 3));
    CHECK(theorem_hypotheses(Modulus(101), 2, 3));
    CHECK_FALSE(theorem_hypotheses(Modulus(11), 1, 5));    // x - y on (1,1)
    CHECK_FALSE(theorem_hypotheses(Modulus(11), 10, 3));   // x + y on (1,10)
    // agreement with an independent direct evaluation
    for (std::uint64_t n = 5; n <= 60; ++n) {
        Modulus m(n);
        for (std::uint64_t a = 1; a < n; ++a)
            for (std::uint64_t b = 1; b < n; ++b) {
                if (std::gcd(a, n) != 1 || std::gcd(b, n) != 1) continue;
                auto z = [&](std::int64_t v) { return least_residue(v, n) == 0; };
                std::int64_t pr[3][2] = {{1, static_cast<std::int64_t>(a)},
                                         {1, static_cast<std::int64_t>(b)},
                                         {static_cast<std::int64_t>(a),
                                          static_cast<std::int64_t>(b)}};
                bool c1 = true, c2 = false;
                for (auto [x, y] : pr) {
                    if (z(x + y) || z(x - y)) c1 = false;
                    if (!z(x + 3 * y) && !z(x - 3 * y) && !z(3 * x + y) && !z(3 * x - y))
                        c2 = true;
                }
                CHECK(theorem_hypotheses(m, a, b) == (c1 && c2));
            }
    }
}

TEST_CASE("theorem_lower_bound") {
    auto r = theorem_lower_bound(Modulus(101), 2, 3, FourierSmoother(1001));
    CHECK(r.pass);
    CHECK(r.rhs == compute_S0(Modulus(101), 2, 3));
    CHECK(r.notes.find("vacuous") != std::string::npos);  // bound negative at this n
    CHECK_THROWS_AS(theorem_lower_bound(Modulus(7), 2, 3, FourierSmoother(1001)),
                    std::domain_error);
    CHECK_THROWS_AS(theorem_lower_bound(Modulus(101), 2, 3, FourierSmoother(1000)),
                    std::invalid_argument);
    // pass is never false on valid inputs
    std::mt19937_64 rng(8);
    int checked = 0;
    while (checked < 8) {
        std::uint64_t n = 50 + rng() % 1000;
        std::uint64_t a = 2 + rng() % (n - 2), b = 2 + rng() % (n - 2);
        if (std::gcd(a, n) != 1 || std::gcd(b, n) != 1) continue;
        Modulus m(n);
        if (!theorem_hypotheses(m, a, b)) continue;
        CHECK(theorem_lower_bound(m, a, b, FourierSmoother(1501)).pass);
        ++checked;
    }
}

TEST_CASE("constants ledger") {
    auto led = constants_ledger();
    CHECK(led.all_satisfied());

    CHECK(led.at("case1").value == doctest::Approx(0.047362).epsilon(1e-4));
    CHECK(led.at("case1").value < 0.07926 - 1e-6);

    CHECK(led.at("subcase1").value == 0.05);

    CHECK(led.at("subcase2").value == doctest::Approx(0.0792551).epsilon(1e-5));
    CHECK(0.07926 - led.at("subcase2").value > 1e-6);

    CHECK(led.at("lemma_1_3").value == 1.0 / 12.0);  // exact, no tolerance

    CHECK(led.at("c0").value == doctest::Approx(0.0020367).epsilon(1e-4));
    CHECK(led.at("c0").value > 0.002);
    CHECK(led.at("c0").value < 0.0021);

    CHECK(led.at("H").value == 13020.0);
    CHECK(led.at("c1").value > 0.001);
    CHECK(led.at("tsum_coeff").value == doctest::Approx(36.38).epsilon(0.01));
    CHECK(led.at("threshold").value <= 1.1e9);
    CHECK(led.at("threshold").value > 1e8);  // not trivially small
    CHECK(led.at("N").value > 1.1e9);

    CHECK_THROWS_AS(led.at("nope"), std::out_of_range);
}

TEST_CASE("phi_threshold_check") {
    CHECK(phi_threshold_check(1e20L + 1.0L).guaranteed);
    auto small = phi_threshold_check(1e16L);
    CHECK_FALSE(small.guaranteed);
    CHECK(small.bound_value > 1e7);
    CHECK(small.bound_value < 2e7);
    CHECK_THROWS_AS(phi_threshold_check(2.0L), std::invalid_argument);
    // bound monotone along powers of ten
    double prev = 0.0;
    for (int k = 4; k <= 30; ++k) {
        auto r = phi_threshold_check(powl(10.0L, k));
        CHECK(r.bound_value > prev);
        prev = r.bound_value;
    }
}
