#pragma once

// Segmented sieve of Eratosthenes, consecutive-prime-gap census, and the
// empirical de Polignac set: the even gaps whose multiplicity below a sieve
// limit meets a threshold. The census is the artifact's stand-in for the
// (unprovable) set of true de Polignac numbers, and every consumer treats it
// as exactly that: an empirical surrogate parameterized by (limit, threshold).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "polignac/errors.hpp"

namespace polignac {

inline constexpr uint64_t kDefaultSegmentSize = uint64_t{1} << 16;
inline constexpr uint64_t kMaxSieveLimit =
    (uint64_t{1} << 63) - 1;

// Inclusive upper bound on the primes considered. Valid range [3, 2^63-1].
class SieveLimit {
public:
    explicit SieveLimit(uint64_t limit) : value_(limit) {
        if (limit < 3)
            throw ConfigError("sieve limit must be >= 3, got " + std::to_string(limit));
        if (limit > kMaxSieveLimit)
            throw ConfigError("sieve limit must be <= 2^63-1");
    }

    uint64_t value() const { return value_; }
    bool operator==(const SieveLimit&) const = default;

private:
    uint64_t value_;
};

// One gap size and its statistics: multiplicity among consecutive primes
// p_n, p_{n+1} with p_{n+1} <= limit, plus the first occurrence (least n,
// 1-based, and the lower prime p_n there).
struct GapRecord {
    uint64_t gap = 0;
    uint64_t count = 0;
    uint64_t first_index = 0;
    uint64_t first_prime = 0;

    bool operator==(const GapRecord&) const = default;
};

struct GapCensus {
    SieveLimit limit;
    std::map<uint64_t, GapRecord> records; // keyed by gap, ascending
    uint64_t prime_count = 0;              // pi(limit)

    uint64_t count_of(uint64_t gap) const {
        auto it = records.find(gap);
        return it == records.end() ? 0 : it->second.count;
    }

    uint64_t largest_gap() const {
        return records.empty() ? 0 : records.rbegin()->first;
    }

    bool operator==(const GapCensus&) const = default;
};

// Even gaps with census multiplicity >= threshold. Sorted ascending.
struct EmpiricalPol {
    SieveLimit limit;
    uint64_t threshold = 1;
    std::vector<uint64_t> members;

    std::string ref() const {
        return "pol(limit=" + std::to_string(limit.value()) +
               ",threshold=" + std::to_string(threshold) + ")";
    }
};

inline uint64_t isqrt64(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

// Primes <= n by a plain sieve. Used for base primes up to sqrt(limit).
inline std::vector<uint64_t> simple_sieve(uint64_t n) {
    std::vector<uint64_t> primes;
    if (n < 2) return primes;
    std::vector<uint8_t> is_prime(n + 1, 1);
    is_prime[0] = is_prime[1] = 0;
    for (uint64_t i = 2; i * i <= n; ++i)
        if (is_prime[i])
            for (uint64_t j = i * i; j <= n; j += i) is_prime[j] = 0;
    for (uint64_t i = 2; i <= n; ++i)
        if (is_prime[i]) primes.push_back(i);
    return primes;
}

namespace detail {

// Sieve [low, high] using the given base primes (all primes <= sqrt(high))
// and call fn(p) for each prime found, in ascending order. Odd numbers only
// are stored; 2 is emitted directly.
template <typename Fn>
void sieve_interval(uint64_t low, uint64_t high,
                    const std::vector<uint64_t>& base, Fn&& fn) {
    if (low < 2) low = 2;
    if (low > high) return;
    if (low <= 2 && 2 <= high) fn(uint64_t{2});

    uint64_t first = std::max<uint64_t>(low, 3);
    if (first % 2 == 0) ++first;
    if (first > high) return;
    uint64_t last = high;
    if (last % 2 == 0) --last;
    if (last < first) return;

    size_t slots = static_cast<size_t>((last - first) / 2 + 1);
    std::vector<uint8_t> candidate(slots, 1);

    for (uint64_t p : base) {
        if (p == 2) continue;
        if (p > high / p) break; // p*p > high
        uint64_t start = p * p;
        if (start < first) {
            uint64_t q = first / p;
            start = q * p;
            if (start < first) start += p;
            if (start % 2 == 0) start += p; // only odd multiples live in the map
        }
        for (uint64_t m = start; m <= last; m += 2 * p)
            candidate[static_cast<size_t>((m - first) / 2)] = 0;
    }
    for (size_t i = 0; i < slots; ++i)
        if (candidate[i]) fn(first + 2 * i);
}

} // namespace detail

// Exactly the primes in [2, limit], ascending. Sieved in segments so the
// working set stays O(sqrt(limit) + segment_size).
inline std::vector<uint64_t> primes_up_to(SieveLimit limit,
                                          uint64_t segment_size = kDefaultSegmentSize) {
    if (segment_size == 0)
        throw AllocationBudgetExceeded("segment size must be nonzero");
    uint64_t n = limit.value();
    std::vector<uint64_t> base = simple_sieve(isqrt64(n));
    std::vector<uint64_t> out;
    for (uint64_t low = 2; low <= n; ) {
        uint64_t high = (n - low < segment_size - 1) ? n : low + segment_size - 1;
        detail::sieve_interval(low, high, base, [&](uint64_t p) { out.push_back(p); });
        if (high == n) break;
        low = high + 1;
    }
    return out;
}

namespace detail {

struct LocalGap {
    uint64_t count = 0;
    uint64_t first_local_index = 0; // 0-based among this segment's primes
    uint64_t first_prime = 0;
};

struct SegmentStats {
    uint64_t prime_count = 0;
    uint64_t first_prime = 0;
    uint64_t last_prime = 0;
    std::map<uint64_t, LocalGap> gaps; // pairs fully inside the segment
};

inline SegmentStats census_segment(uint64_t low, uint64_t high,
                                   const std::vector<uint64_t>& base) {
    SegmentStats s;
    uint64_t prev = 0;
    sieve_interval(low, high, base, [&](uint64_t p) {
        if (prev != 0) {
            uint64_t gap = p - prev;
            auto& g = s.gaps[gap];
            if (g.count == 0) {
                g.first_local_index = s.prime_count - 1;
                g.first_prime = prev;
            }
            ++g.count;
        } else {
            s.first_prime = p;
        }
        prev = p;
        ++s.prime_count;
    });
    s.last_prime = prev;
    return s;
}

} // namespace detail

// Census of all consecutive prime gaps p_{n+1} - p_n with p_{n+1} <= limit.
// Segments may be sieved by several worker threads; the merge always walks
// segments in ascending order, so the result is identical for any thread
// count. Each segment's last prime is carried forward so gaps spanning a
// segment boundary are counted exactly once.
inline GapCensus gap_census(SieveLimit limit,
                            uint64_t segment_size = kDefaultSegmentSize,
                            unsigned threads = 1) {
    if (segment_size == 0)
        throw AllocationBudgetExceeded("segment size must be nonzero");
    uint64_t n = limit.value();
    std::vector<uint64_t> base = simple_sieve(isqrt64(n));

    uint64_t span = n - 2 + 1;
    uint64_t num_segments = (span + segment_size - 1) / segment_size;
    std::vector<detail::SegmentStats> stats(static_cast<size_t>(num_segments));

    auto segment_bounds = [&](uint64_t idx) {
        uint64_t low = 2 + idx * segment_size;
        uint64_t high = (n - low < segment_size - 1) ? n : low + segment_size - 1;
        return std::pair<uint64_t, uint64_t>{low, high};
    };

    unsigned workers = std::max(1u, threads);
    workers = static_cast<unsigned>(
        std::min<uint64_t>(workers, num_segments));
    if (workers == 1) {
        for (uint64_t i = 0; i < num_segments; ++i) {
            auto [low, high] = segment_bounds(i);
            stats[static_cast<size_t>(i)] = detail::census_segment(low, high, base);
        }
    } else {
        std::atomic<uint64_t> next{0};
        auto work = [&] {
            for (;;) {
                uint64_t i = next.fetch_add(1);
                if (i >= num_segments) return;
                auto [low, high] = segment_bounds(i);
                stats[static_cast<size_t>(i)] = detail::census_segment(low, high, base);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    GapCensus census{limit, {}, 0};
    uint64_t cumulative = 0;
    uint64_t prev_last = 0;
    for (const auto& s : stats) {
        if (s.prime_count == 0) continue;
        if (prev_last != 0) {
            uint64_t gap = s.first_prime - prev_last;
            auto& r = census.records[gap];
            if (r.count == 0) {
                r.gap = gap;
                r.first_index = cumulative; // 1-based index of prev_last
                r.first_prime = prev_last;
            }
            ++r.count;
        }
        for (const auto& [gap, lg] : s.gaps) {
            auto& r = census.records[gap];
            if (r.count == 0) {
                r.gap = gap;
                r.first_index = cumulative + lg.first_local_index + 1;
                r.first_prime = lg.first_prime;
            }
            r.count += lg.count;
        }
        cumulative += s.prime_count;
        prev_last = s.last_prime;
    }
    census.prime_count = cumulative;
    return census;
}

// The empirical de Polignac set: even gaps with multiplicity >= threshold.
inline EmpiricalPol empirical_pol(const GapCensus& census, uint64_t threshold) {
    if (threshold < 1)
        throw ConfigError("pol threshold must be >= 1");
    EmpiricalPol pol{census.limit, threshold, {}};
    for (const auto& [gap, rec] : census.records)
        if (gap % 2 == 0 && rec.count >= threshold)
            pol.members.push_back(gap);
    return pol;
}

inline bool is_empirical_depolignac(uint64_t g, const EmpiricalPol& pol) {
    return std::binary_search(pol.members.begin(), pol.members.end(), g);
}

} // namespace polignac
