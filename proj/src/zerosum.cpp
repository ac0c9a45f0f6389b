#include "zsindex/zerosum.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zsindex {

ZSequence::ZSequence(Modulus m, std::vector<std::uint64_t> entries)
    : m_(std::move(m)), entries_(std::move(entries)) {
    if (entries_.size() < 2) throw std::invalid_argument("ZSequence: length must be >= 2");
    for (std::uint64_t e : entries_)
        if (e < 1 || e >= m_.n())
            throw std::invalid_argument("ZSequence: entries must lie in [1, n-1]");
    std::sort(entries_.begin(), entries_.end());
}

bool is_zero_sum(const ZSequence& s) {
    std::uint64_t sum = 0;
    for (std::uint64_t e : s.entries()) sum = (sum + e) % s.modulus().n();
    return sum == 0;
}

bool is_minimal(const ZSequence& s) {
    if (!is_zero_sum(s)) throw std::invalid_argument("is_minimal: sequence is not zero-sum");
    const auto& a = s.entries();
    const std::uint64_t n = s.modulus().n();
    const std::size_t k = a.size();
    // All nonempty proper subsets; k is small (typically 4).
    for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
        std::uint64_t sum = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (mask & (1u << j)) sum += a[j];
        if (sum % n == 0) return false;
    }
    return true;
}

IndexResult index_with_witness(const ZSequence& s) {
    if (!is_zero_sum(s)) throw std::invalid_argument("index: sequence is not zero-sum");
    const std::uint64_t n = s.modulus().n();
    std::uint64_t best = UINT64_MAX, best_g = 0;
    for (std::uint64_t g : units(s.modulus())) {
        std::uint64_t sum = 0;
        for (std::uint64_t a : s.entries()) sum += (g * a) % n;
        if (sum < best) { best = sum; best_g = g; }
    }
    return {best / n, best_g};
}

std::uint64_t index(const ZSequence& s) { return index_with_witness(s).index; }

bool has_index_one(const ZSequence& s, std::uint64_t* attempts) {
    const std::uint64_t n = s.modulus().n();
    const std::uint64_t target = n;  // sum == n <=> index 1
    std::uint64_t tried = 0;
    for (std::uint64_t g : units(s.modulus())) {
        ++tried;
        std::uint64_t sum = 0;
        for (std::uint64_t a : s.entries()) sum += (g * a) % n;
        if (sum == target) {
            if (attempts) *attempts = tried;
            return true;
        }
    }
    if (attempts) *attempts = tried;
    return false;
}

bool exactly_two_in_half(const ZSequence& s, std::uint64_t g) {
    const std::uint64_t n = s.modulus().n();
    if (s.length() != 4) throw std::invalid_argument("exactly_two_in_half: length must be 4");
    if (n % 2 == 0) throw std::invalid_argument("exactly_two_in_half: n must be odd");
    int count = 0;
    for (std::uint64_t a : s.entries()) {
        std::uint64_t r = (g * a) % n;
        if (r > 0 && 2 * r < n) ++count;
    }
    return count == 2;
}

namespace {

// Minimality for a sorted quadruple without constructing a ZSequence.
bool quad_minimal(std::uint64_t n, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                  std::uint64_t d) {
    // Singletons, pairs, and triples (as complements of singletons).
    const std::uint64_t total = a + b + c + d;
    std::uint64_t v[4] = {a, b, c, d};
    for (int i = 0; i < 4; ++i) {
        if (v[i] % n == 0) return false;
        if ((total - v[i]) % n == 0) return false;
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if ((v[i] + v[j]) % n == 0) return false;
    return true;
}

}  // namespace

std::vector<ZSequence> enumerate_minimal_quadruples(const Modulus& m, bool coprime_only) {
    const std::uint64_t n = m.n();
    if (n < 5) throw std::invalid_argument("enumerate_minimal_quadruples: n must be >= 5");
    std::vector<bool> coprime(n, false);
    for (std::uint64_t g = 1; g < n; ++g) coprime[g] = std::gcd(g, n) == 1;
    std::vector<ZSequence> out;
    for (std::uint64_t a = 1; a < n; ++a) {
        if (coprime_only && !coprime[a]) continue;
        for (std::uint64_t b = a; b < n; ++b) {
            if (coprime_only && !coprime[b]) continue;
            for (std::uint64_t c = b; c < n; ++c) {
                if (coprime_only && !coprime[c]) continue;
                std::uint64_t d = least_residue(-static_cast<std::int64_t>(a + b + c), n);
                if (d < c) continue;  // d == 0 handled: 0 < c always since c >= 1
                if (d == 0) continue;
                if (coprime_only && !coprime[d]) continue;
                if (!quad_minimal(n, a, b, c, d)) continue;
                out.emplace_back(m, std::vector<std::uint64_t>{a, b, c, d});
            }
        }
    }
    return out;
}

void for_each_normalized_minimal_quadruple(
    const Modulus& m, const std::function<bool(const std::vector<std::uint64_t>&)>& fn) {
    const std::uint64_t n = m.n();
    if (n < 5) throw std::invalid_argument("n must be >= 5");
    std::vector<bool> coprime(n, false);
    for (std::uint64_t g = 1; g < n; ++g) coprime[g] = std::gcd(g, n) == 1;
    std::vector<std::uint64_t> quad(4);
    for (std::uint64_t a = 1; a < n; ++a) {
        if (!coprime[a]) continue;
        for (std::uint64_t b = a; b < n; ++b) {
            if (!coprime[b]) continue;
            std::uint64_t c = least_residue(-static_cast<std::int64_t>(1 + a + b), n);
            if (c < b || c == 0 || !coprime[c]) continue;
            if (!quad_minimal(n, 1, a, b, c)) continue;
            quad[0] = 1; quad[1] = a; quad[2] = b; quad[3] = c;
            if (!fn(quad)) return;
        }
    }
}

VerifyReport verify_conjecture(const Modulus& m, bool exploratory) {
    if (!exploratory && !m.coprime_six())
        throw std::invalid_argument("verify_conjecture: gcd(n, 6) must be 1 (use exploratory mode)");
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport rep;
    rep.n = m.n();
    for_each_normalized_minimal_quadruple(m, [&](const std::vector<std::uint64_t>& quad) {
        ++rep.sequences_checked;
        std::uint64_t attempts = 0;
        ZSequence s(m, quad);
        bool ok = has_index_one(s, &attempts);
        ++rep.g_stats.sequences;
        rep.g_stats.total_attempts += attempts;
        rep.g_stats.max_attempts = std::max(rep.g_stats.max_attempts, attempts);
        if (!ok) {
            rep.all_index_one = false;
            rep.witness = Witness{quad, index(s)};
            return false;
        }
        return true;
    });
    rep.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

namespace {

struct Checkpoint {
    // n -> (status ok?, checked)
    std::map<std::uint64_t, std::pair<bool, std::uint64_t>> done;
    std::ofstream out;
};

Checkpoint open_checkpoint(const std::string& path) {
    Checkpoint cp;
    {
        std::ifstream in(path);
        std::string line;
        while (std::getline(in, line)) {
            std::uint64_t n = 0, checked = 0;
            char status[16] = {0};
            if (std::sscanf(line.c_str(), "%llu,%15[^,],%llu",
                            reinterpret_cast<unsigned long long*>(&n), status,
                            reinterpret_cast<unsigned long long*>(&checked)) == 3) {
                cp.done[n] = {std::string(status) == "ok", checked};
            }
        }
    }
    cp.out.open(path, std::ios::app);
    if (!cp.out) throw CheckpointError("checkpoint: cannot open for append: " + path);
    return cp;
}

void append_checkpoint(Checkpoint& cp, const VerifyReport& rep) {
    std::ostringstream line;
    line << rep.n << ',' << (rep.all_index_one ? "ok" : "witness") << ','
         << rep.sequences_checked << '\n';
    cp.out << line.str();
    cp.out.flush();
}

std::vector<std::uint64_t> admissible_range(std::uint64_t n_min, std::uint64_t n_max,
                                            bool exploratory) {
    if (n_min < 5 || n_min > n_max)
        throw std::invalid_argument("verify_range: need 5 <= n_min <= n_max");
    std::vector<std::uint64_t> ns;
    for (std::uint64_t n = n_min; n <= n_max; ++n)
        if (exploratory || std::gcd(n, std::uint64_t{6}) == 1) ns.push_back(n);
    return ns;
}

std::vector<VerifyReport> run_range(std::uint64_t n_min, std::uint64_t n_max, unsigned workers,
                                    const std::optional<std::string>& checkpoint,
                                    bool exploratory) {
    auto ns = admissible_range(n_min, n_max, exploratory);
    std::optional<Checkpoint> cp;
    if (checkpoint) cp = open_checkpoint(*checkpoint);

    std::vector<VerifyReport> reports(ns.size());
    std::vector<char> todo(ns.size(), 1);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (!cp) continue;
        auto it = cp->done.find(ns[i]);
        // Witness lines are recomputed so resumed reports carry the sequence.
        if (it != cp->done.end() && it->second.first) {
            reports[i].n = ns[i];
            reports[i].sequences_checked = it->second.second;
            reports[i].all_index_one = true;
            todo[i] = 0;
        }
    }

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(static_cast<int>(std::max(1u, workers)))
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(ns.size()); ++i) {
        if (!todo[i]) continue;
        VerifyReport rep = verify_conjecture(Modulus(ns[i]), exploratory);
        reports[i] = rep;
#ifdef _OPENMP
#pragma omp critical(zsindex_checkpoint)
#endif
        {
            if (cp) append_checkpoint(*cp, rep);
        }
    }
    return reports;
}

}  // namespace

std::vector<VerifyReport> verify_range(std::uint64_t n_min, std::uint64_t n_max, unsigned workers,
                                       const std::optional<std::string>& checkpoint,
                                       bool exploratory) {
    return run_range(n_min, n_max, workers, checkpoint, exploratory);
}

std::vector<VerifyReport> verify_range_serial(std::uint64_t n_min, std::uint64_t n_max,
                                              const std::optional<std::string>& checkpoint,
                                              bool exploratory) {
    auto ns = admissible_range(n_min, n_max, exploratory);
    std::optional<Checkpoint> cp;
    if (checkpoint) cp = open_checkpoint(*checkpoint);
    std::vector<VerifyReport> reports;
    reports.reserve(ns.size());
    for (std::uint64_t n : ns) {
        if (cp) {
            auto it = cp->done.find(n);
            if (it != cp->done.end() && it->second.first) {
                VerifyReport rep;
                rep.n = n;
                rep.sequences_checked = it->second.second;
                reports.push_back(rep);
                continue;
            }
        }
        VerifyReport rep = verify_conjecture(Modulus(n), exploratory);
        if (cp) append_checkpoint(*cp, rep);
        reports.push_back(rep);
    }
    return reports;
}

}  // namespace zsindex
