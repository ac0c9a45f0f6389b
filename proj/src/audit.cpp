#include "zsindex/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zsindex {

namespace {

constexpr double kAuditEps = 1e-9;

void require_coprime(const Modulus& m, std::uint64_t a, std::uint64_t b) {
    if (std::gcd(a, m.n()) != 1 || std::gcd(b, m.n()) != 1)
        throw std::domain_error("a and b must be coprime to n");
}

using u128 = unsigned __int128;

u128 sq(std::uint64_t x) { return static_cast<u128>(x) * x; }

}  // namespace

AuditReport make_audit_report(std::string name,
                              std::vector<std::pair<std::string, std::int64_t>> inputs,
                              double lhs, double rhs, std::string notes) {
    AuditReport r;
    r.name = std::move(name);
    r.inputs = std::move(inputs);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.pass = r.margin >= -kAuditEps * std::max(1.0, std::fabs(rhs));
    r.notes = std::move(notes);
    return r;
}

double compute_S0(const Modulus& m, std::uint64_t a, std::uint64_t b) {
    require_coprime(m, a, b);
    const std::uint64_t n = m.n();
    auto chi_residue = [n](std::uint64_t r) -> double {
        if (r == 0 || 2 * r == n) return 0.5;
        return 2 * r < n ? 1.0 : 0.0;
    };
    KahanSum acc;
    for (std::uint64_t g = 1; g < n; ++g) {
        if (std::gcd(g, n) != 1) continue;
        double p = chi_residue(g) * chi_residue(a * g % n) * chi_residue(b * g % n);
        if (p != 0.0) acc.add(p);
    }
    return acc.value();
}

std::int64_t count_triple_in_I(const Modulus& m, std::uint64_t a, std::uint64_t b) {
    if (m.n() % 2 == 0) throw std::invalid_argument("count_triple_in_I: n must be odd");
    require_coprime(m, a, b);
    const std::uint64_t n = m.n();
    std::int64_t count = 0;
    for (std::uint64_t g = 1; g < n; ++g) {
        if (std::gcd(g, n) != 1) continue;
        if (2 * g < n && 2 * (a * g % n) < n && 2 * (b * g % n) < n) ++count;
    }
    return count;
}

namespace {

std::vector<double> f_table(const Modulus& m, const FourierSmoother& s, bool parallel) {
    const std::uint64_t n = m.n();
    std::vector<double> fv(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(n); ++r)
        fv[r] = f_eval(static_cast<double>(r) / static_cast<double>(n), s);
    (void)parallel;
    return fv;
}

double s1_from_table(const Modulus& m, std::uint64_t a, std::uint64_t b,
                     const std::vector<double>& fv) {
    const std::uint64_t n = m.n();
    KahanSum acc;
    for (std::uint64_t g = 1; g < n; ++g) {
        if (std::gcd(g, n) != 1) continue;
        acc.add(fv[g] * fv[a * g % n] * fv[b * g % n]);
    }
    return acc.value();
}

}  // namespace

double compute_S1_direct(const Modulus& m, std::uint64_t a, std::uint64_t b,
                         const FourierSmoother& s) {
    require_coprime(m, a, b);
    return s1_from_table(m, a, b, f_table(m, s, true));
}

double compute_S1_direct_serial(const Modulus& m, std::uint64_t a, std::uint64_t b,
                                const FourierSmoother& s) {
    require_coprime(m, a, b);
    return s1_from_table(m, a, b, f_table(m, s, false));
}

double compute_S1_spectral(const Modulus& m, std::uint64_t a, std::uint64_t b,
                           const FourierSmoother& s) {
    require_coprime(m, a, b);
    const std::uint64_t n = m.n();
    // f_hat vanishes at even nonzero indices; only 0 and odd h contribute.
    std::vector<std::int64_t> hs{0};
    for (std::int64_t h = 1; h <= s.H; h += 2) {
        hs.push_back(h);
        hs.push_back(-h);
    }
    std::vector<std::complex<double>> F(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) F[i] = f_hat(hs[i], s);
    std::vector<double> c(n);
    for (std::uint64_t r = 0; r < n; ++r)
        c[r] = static_cast<double>(ramanujan_sum(m, static_cast<std::int64_t>(r)));

    const std::int64_t sn = static_cast<std::int64_t>(n);
    KahanSum re, im;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        for (std::size_t j = 0; j < hs.size(); ++j) {
            std::complex<double> fij = F[i] * F[j];
            std::int64_t base = static_cast<std::int64_t>(a) * hs[i] + static_cast<std::int64_t>(b) * hs[j];
            for (std::size_t l = 0; l < hs.size(); ++l) {
                std::int64_t r = (base + hs[l]) % sn;
                if (r < 0) r += sn;
                std::complex<double> term = fij * F[l] * c[static_cast<std::size_t>(r)];
                re.add(term.real());
                im.add(term.imag());
            }
        }
    }
    return re.value();
}

std::optional<std::int64_t> kstar(std::int64_t A, const Modulus& m, const FourierSmoother& s,
                                  std::int64_t k, bool verify_unique) {
    if (std::gcd(least_residue(A, m.n()), m.n()) != 1)
        throw std::domain_error("kstar: A must be coprime to n");
    const std::uint64_t n = m.n();
    const u128 bound2 = static_cast<u128>(2) * sq(static_cast<std::uint64_t>(s.H)) * n;
    const std::int64_t window = s.H * s.H;
    std::vector<std::int64_t> found;
    // A qualifying k* satisfies A k + k* = 0 mod d for some divisor d of n
    // with d^2 > 2 H^2 n, so scanning those residue classes is exhaustive.
    for (std::uint64_t d : m.divisors()) {
        if (sq(d) <= bound2) continue;
        std::int64_t r0 = static_cast<std::int64_t>(least_residue(-A * k, d));
        std::int64_t lo = -window;
        std::int64_t first = lo + (((r0 - lo) % static_cast<std::int64_t>(d)) +
                                   static_cast<std::int64_t>(d)) % static_cast<std::int64_t>(d);
        for (std::int64_t t = first; t <= window; t += static_cast<std::int64_t>(d)) {
            std::int64_t val = A * k + t;
            std::uint64_t g = (val == 0) ? n : std::gcd(static_cast<std::uint64_t>(std::llabs(val)), n);
            if (sq(g) > bound2 &&
                std::find(found.begin(), found.end(), t) == found.end())
                found.push_back(t);
        }
    }
    if (found.size() > 1)
        throw std::logic_error("kstar: uniqueness violated");  // contradicts the gcd lemma
    if (verify_unique) {
        // Independent full-window confirmation (small windows only).
        std::int64_t count = 0;
        for (std::int64_t t = -window; t <= window; ++t) {
            std::int64_t val = A * k + t;
            std::uint64_t g = (val == 0) ? n : std::gcd(static_cast<std::uint64_t>(std::llabs(val)), n);
            if (sq(g) > bound2) ++count;
        }
        if (count != static_cast<std::int64_t>(found.size()))
            throw std::logic_error("kstar: divisor scan disagrees with full scan");
    }
    if (found.empty()) return std::nullopt;
    return found.front();
}

std::complex<double> star_sum(std::int64_t A, const Modulus& m, const FourierSmoother& s) {
    KahanSum re, im;
    for (std::int64_t k = -s.H; k <= s.H; ++k) {
        if (k % 2 == 0) continue;
        auto ks = kstar(A, m, s, k);
        if (!ks) continue;
        if (std::llabs(*ks) > s.H || *ks % 2 == 0) continue;
        double c = static_cast<double>(ramanujan_sum(m, A * k + *ks));
        std::complex<double> term = f_hat(k, s) * f_hat(*ks, s) * c;
        re.add(term.real());
        im.add(term.imag());
    }
    return {re.value(), im.value()};
}

TSumBound t_sum_bound(const FourierSmoother& s, const Modulus& m) {
    if (s.H < 2) throw std::invalid_argument("t_sum_bound: H must be >= 2");
    KahanSum coeff;
    for (std::int64_t h = 1; h <= s.H; h += 2)
        coeff.add(2.0 * std::fabs(J_hat(static_cast<double>(h) / static_cast<double>(s.H + 1))) /
                  (M_PI * static_cast<double>(h)));
    const double root = static_cast<double>(s.H) *
                        std::sqrt(2.0 * static_cast<double>(m.n()));  // sqrt(2 H^2 n)
    const double log_coeff = 2.0 * std::log(static_cast<double>(s.H)) / M_PI;
    return {coeff.value() * coeff.value() * root, log_coeff * log_coeff * root};
}

AuditReport audit_s0_s1(const Modulus& m, std::uint64_t a, std::uint64_t b,
                        const FourierSmoother& s) {
    if (s.H <= 1000)
        throw std::invalid_argument("audit_s0_s1: the lemma requires H > 1000");
    require_coprime(m, a, b);
    const double phi = static_cast<double>(m.phi());
    const double n = static_cast<double>(m.n());
    const double H = static_cast<double>(s.H);
    double s0 = compute_S0(m, a, b);
    double s1 = compute_S1_direct(m, a, b, s);
    double rhs = 13.02 / H * phi + 20.02 * std::sqrt(2.0 * H * n) + 7.0 * H;
    return make_audit_report(
        "s0s1",
        {{"n", static_cast<std::int64_t>(m.n())}, {"a", static_cast<std::int64_t>(a)},
         {"b", static_cast<std::int64_t>(b)}, {"H", s.H}},
        std::fabs(s0 - s1), rhs);
}

const char* rel_form_name(RelForm f) {
    switch (f) {
        case RelForm::XPlus3Y: return "x+3y";
        case RelForm::XMinus3Y: return "x-3y";
        case RelForm::ThreeXPlusY: return "3x+y";
        case RelForm::ThreeXMinusY: return "3x-y";
    }
    return "?";
}

namespace {

// Coefficients (cx, cy) of cx*x + cy*y for the plus forms.
bool plus_coeffs(RelForm f, std::int64_t& cx, std::int64_t& cy) {
    switch (f) {
        case RelForm::XPlus3Y: cx = 1; cy = 3; return true;
        case RelForm::ThreeXPlusY: cx = 3; cy = 1; return true;
        default: return false;
    }
}

}  // namespace

Elimination relation_eliminator(const RelationCombo& c) {
    std::int64_t a1, b1, a2, b2, p, q;
    if (!plus_coeffs(c.pair_1a, a1, b1) || !plus_coeffs(c.pair_1b, a2, b2) ||
        !plus_coeffs(c.pair_ab, p, q))
        return {0, false};
    // Pair (1,a): a1 + b1*a = 0; pair (1,b): a2 + b2*b = 0; pair (a,b):
    // p*a + q*b = 0. Multiply the third by b1*b2 and substitute:
    // p*b2*a1 + q*b1*a2 = 0 mod n.
    std::int64_t D = p * b2 * a1 + q * b1 * a2;
    return {static_cast<std::uint64_t>(D), true};
}

bool relation_backsub_ok(const RelationCombo& c, std::uint64_t D) {
    std::int64_t a1, b1, a2, b2, p, q;
    if (!plus_coeffs(c.pair_1a, a1, b1) || !plus_coeffs(c.pair_1b, a2, b2) ||
        !plus_coeffs(c.pair_ab, p, q))
        return false;
    if (D == 0) return false;
    Modulus dm(D == 1 ? 2 : D);  // Modulus needs n >= 2; D = 1 cannot occur here
    for (std::uint64_t nn : dm.divisors()) {
        if (nn < 2 || std::gcd(nn, std::uint64_t{6}) != 1) continue;
        std::uint64_t a = least_residue(-a1 * static_cast<std::int64_t>(inverse_mod(
                                                  least_residue(b1, nn), nn)),
                                        nn);
        std::uint64_t b = least_residue(-a2 * static_cast<std::int64_t>(inverse_mod(
                                                  least_residue(b2, nn), nn)),
                                        nn);
        bool ok = least_residue(a1 + b1 * static_cast<std::int64_t>(a), nn) == 0 &&
                  least_residue(a2 + b2 * static_cast<std::int64_t>(b), nn) == 0 &&
                  least_residue(p * static_cast<std::int64_t>(a) +
                                    q * static_cast<std::int64_t>(b),
                                nn) == 0;
        if (!ok) return false;
    }
    return true;
}

bool theorem_hypotheses(const Modulus& m, std::uint64_t a, std::uint64_t b) {
    require_coprime(m, a, b);
    const std::int64_t n = static_cast<std::int64_t>(m.n());
    const std::int64_t pairs[3][2] = {{1, static_cast<std::int64_t>(a)},
                                      {1, static_cast<std::int64_t>(b)},
                                      {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)}};
    auto vanishes = [&](std::int64_t v) { return least_residue(v, n) == 0; };
    bool clause2 = false;
    for (auto [x, y] : pairs) {
        if (vanishes(x + y) || vanishes(x - y)) return false;
        if (!vanishes(x + 3 * y) && !vanishes(x - 3 * y) && !vanishes(3 * x + y) &&
            !vanishes(3 * x - y))
            clause2 = true;
    }
    return clause2;
}

AuditReport theorem_lower_bound(const Modulus& m, std::uint64_t a, std::uint64_t b,
                                const FourierSmoother& s) {
    if (s.H <= 1000)
        throw std::invalid_argument("theorem_lower_bound: requires H > 1000");
    if (!theorem_hypotheses(m, a, b))
        throw std::domain_error("theorem_lower_bound: hypotheses fail for (n, a, b)");
    const double phi = static_cast<double>(m.phi());
    const double n = static_cast<double>(m.n());
    const double H = static_cast<double>(s.H);
    const double c0 = constants_ledger().at("c0").value;
    const double logc = 2.0 * std::log(H) / M_PI;
    double bound = (c0 - 13.02 / H) * phi - 1.5 * logc * logc * H * std::sqrt(2.0 * n) -
                   20.02 * std::sqrt(2.0 * H * n) - 7.0 * H;
    double s0 = compute_S0(m, a, b);
    std::string notes = "S0/phi(n) = " + std::to_string(s0 / phi);
    if (bound < 0.0)
        notes += "; vacuous at this n (bound negative; needs phi(n)/sqrt(n) > 1.1e9)";
    return make_audit_report(
        "theorem",
        {{"n", static_cast<std::int64_t>(m.n())}, {"a", static_cast<std::int64_t>(a)},
         {"b", static_cast<std::int64_t>(b)}, {"H", s.H}},
        bound, s0, notes);
}

bool ConstantsLedger::all_satisfied() const {
    for (const auto& e : entries)
        if (!e.satisfied) return false;
    return true;
}

const ConstantEntry& ConstantsLedger::at(const std::string& symbol) const {
    for (const auto& e : entries)
        if (e.symbol == symbol) return e;
    throw std::out_of_range("ConstantsLedger: no entry " + symbol);
}

ConstantsLedger constants_ledger() {
    const long double pi = 3.14159265358979323846264338327950288L;
    const long double pi2 = pi * pi;
    ConstantsLedger led;
    auto add = [&led](const std::string& sym, long double v, std::string claim, bool sat) {
        led.entries.push_back({sym, static_cast<double>(v), std::move(claim), sat});
    };

    long double case1 = (2.0L / pi2) * (pi2 / 8.0L - 1.0L);
    add("case1", case1, "< 0.07926", case1 < 0.07926L - 1e-6L);

    long double sub1 = (2.0L / pi2) * (pi2 / 8.0L) * (1.0L / 5.0L);
    add("subcase1", sub1, "= 0.05 < 0.07926", std::fabs(static_cast<double>(sub1) - 0.05) < 1e-15 &&
                                                  sub1 < 0.07926L - 1e-6L);

    long double sub2 = 1.0L / (2.0L * pi2) + 1.0L / (18.0L * pi2) + 1.0L / (162.0L * pi2) +
                       (2.0L / pi2) * (pi2 / 8.0L - 1.0L - 1.0L / 9.0L - 1.0L / 81.0L);
    add("subcase2", sub2, "< 0.07926", sub2 < 0.07926L - 1e-6L);

    // The pi^2 factors cancel; evaluate the cancellation exactly and keep the
    // floating route as a cross-check.
    long double lemma13 = (pi2 / pi2) * (2.0L / 24.0L);
    long double lemma13_float = 2.0L * (1.0L / pi2) * (1.0L / 3.0L) * (pi2 / 8.0L);
    add("lemma_1_3", lemma13, "= 1/12 exactly",
        static_cast<double>(lemma13) == 1.0 / 12.0 &&
            fabsl(lemma13_float - lemma13) < 1e-17L);

    long double c0 = 1.0L / 8.0L - (0.07926L + 2.0L / 12.0L) / 2.0L;
    add("c0", c0, "in (0.002, 0.0021)", c0 > 0.002L && c0 < 0.0021L);

    const long double H = 13020.0L;
    add("H", H, "= 13.02e3", true);

    long double c1 = c0 - 13.02L / H;
    add("c1", c1, "> 0.001", c1 > 0.001L);

    long double logc = 2.0L * std::log(static_cast<double>(H)) / pi;
    long double tsum_coeff = logc * logc;
    // Exact coefficient sum must stay below the analytic log bound.
    FourierSmoother sm(13020);
    KahanSum exact_coeff;
    for (std::int64_t h = 1; h <= sm.H; h += 2)
        exact_coeff.add(2.0 * std::fabs(J_hat(static_cast<double>(h) / 13021.0)) /
                        (M_PI * static_cast<double>(h)));
    add("tsum_coeff", tsum_coeff, "exact coefficient sum <= (2 log H)/pi",
        static_cast<long double>(exact_coeff.value()) <= logc);

    // Threshold chain: the lower bound is positive once phi(n)/sqrt(n)
    // exceeds t_req; 7H/sqrt(n) is handled conservatively as 7H.
    long double t_req = (1.5L * tsum_coeff * H * std::sqrt(2.0L) + 20.02L * sqrtl(2.0L * H) +
                         7.0L * H) /
                        c1;
    add("threshold", t_req, "<= 1.1e9 (so phi(n)/sqrt(n) > 1.1e9 forces S0 > 0)",
        t_req <= 1.1e9L);

    PhiThreshold pt = phi_threshold_check(1e20L);
    add("N", pt.bound_value, "n > 1e20 => phi(n)/sqrt(n) > 1.1e9", pt.guaranteed);
    return led;
}

PhiThreshold phi_threshold_check(long double n) {
    if (n < 3.0L) throw std::invalid_argument("phi_threshold_check: n must be >= 3");
    const long double e_gamma = expl(0.57721566490153286060651209L);
    long double lll = logl(logl(n));
    long double denom = e_gamma * lll + 3.0L / lll;
    long double bound = sqrtl(n) / denom;
    return {bound > 1.1e9L, static_cast<double>(bound)};
}

}  // namespace zsindex
