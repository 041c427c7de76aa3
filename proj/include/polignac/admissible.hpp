#pragma once

// Admissibility checking and the constructive content of the inductive
// residue-class argument: extract from any lazily given ascending integer
// stream a strictly increasing tuple that is admissible, one congruence
// condition per step. Also the greedy lacunary extraction that forces all
// pairwise differences to be distinct.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polignac/errors.hpp"
#include "polignac/primes.hpp"
#include "polignac/streams.hpp"

namespace polignac {

inline constexpr uint64_t kDefaultPullBudget = uint64_t{1} << 20;

// Strictly increasing tuple of distinct nonnegative integers.
class Tuple {
public:
    explicit Tuple(std::vector<uint64_t> elements) : elements_(std::move(elements)) {
        for (size_t i = 1; i < elements_.size(); ++i)
            if (elements_[i] <= elements_[i - 1])
                throw ConfigError("tuple must be strictly increasing");
    }

    const std::vector<uint64_t>& elements() const { return elements_; }
    size_t size() const { return elements_.size(); }
    bool operator==(const Tuple&) const = default;

private:
    std::vector<uint64_t> elements_;
};

namespace detail {

inline bool is_small_prime(uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

} // namespace detail

// {h mod p : h in t}, sorted ascending. At most min(k, p) values.
inline std::vector<uint64_t> residue_classes(const Tuple& t, uint64_t p) {
    if (!detail::is_small_prime(p))
        throw ConfigError("residue classes require a prime modulus, got " + std::to_string(p));
    std::vector<uint64_t> out;
    out.reserve(std::min<uint64_t>(t.size(), p));
    for (uint64_t x : t.elements()) out.push_back(x % p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct AdmissibilityCheck {
    bool admissible = false;
    std::optional<uint64_t> covering_prime; // least prime with every class hit
};

// A k-element tuple can only cover all classes mod p when p <= k, so those
// are the only primes that need testing. Returns the least covering prime
// on failure.
inline AdmissibilityCheck is_admissible(const Tuple& t) {
    if (t.size() == 0)
        throw ConfigError("admissibility is defined for nonempty tuples");
    for (uint64_t p : simple_sieve(t.size())) {
        std::vector<uint8_t> seen(static_cast<size_t>(p), 0);
        uint64_t distinct = 0;
        for (uint64_t x : t.elements()) {
            uint64_t r = x % p;
            if (!seen[r]) {
                seen[r] = 1;
                if (++distinct == p) break;
            }
        }
        if (distinct == p) return {false, p};
    }
    return {true, std::nullopt};
}

// One step of the construction: at step n the class chosen is h_n mod p_n
// and `survivors` is how many window elements fell in that class.
struct ResidueChoice {
    uint64_t prime = 0;
    uint64_t residue = 0;
    uint64_t survivors = 0;

    bool operator==(const ResidueChoice&) const = default;
};

struct AdmissibleSeq {
    Tuple tuple;
    std::vector<ResidueChoice> choices;
    uint64_t window = 0;
};

inline uint64_t nth_prime(uint64_t n) {
    uint64_t bound = 16;
    for (;;) {
        auto ps = simple_sieve(bound);
        if (ps.size() >= n) return ps[n - 1];
        bound *= 2;
    }
}

// Incremental form of the construction, one congruence condition per step.
//
// The proof picks, at step n, a residue class mod p_n holding infinitely
// many survivors of the previous filters. The finite rule realizing that
// choice here: scan the filtered stream from its start, take a window of up
// to `window` elements truncated to whole residue cycles mod p_n (so a
// periodic class pattern tallies evenly, matching the density choice the
// proof makes in the limit), pick the class with the maximal tally breaking
// ties toward the smallest residue, and require at least 2 survivors,
// enlarging the window up to the pull budget before giving up. b_n is then
// the least element of the chosen class exceeding b_{n-1}, with b_0 = 0.
template <IntStream S>
class AdmissibleBuilder {
public:
    AdmissibleBuilder(S source, uint64_t window, uint64_t budget = kDefaultPullBudget)
        : source_(std::move(source)), window_(window), budget_(budget) {
        if (window_ < 2)
            throw ConfigError("window must be >= 2");
    }

    // Extends the sequence by one element. Throws SourceExhausted when the
    // stream or budget runs out first.
    ResidueChoice step() {
        uint64_t n = values_.size() + 1;
        uint64_t p = nth_prime(n);
        uint64_t b_prev = values_.empty() ? 0 : values_.back();

        uint64_t want = window_;
        uint64_t residue = 0;
        uint64_t survivors = 0;
        for (;;) {
            while (filtered_.size() < want && pull_one()) {
            }
            size_t win = std::min<size_t>(filtered_.size(), want);
            if (win >= p) win -= win % p; // whole residue cycles only
            std::vector<uint64_t> tally(static_cast<size_t>(p), 0);
            for (size_t i = 0; i < win; ++i) ++tally[filtered_[i] % p];
            size_t best = 0;
            for (size_t r = 1; r < tally.size(); ++r)
                if (tally[r] > tally[best]) best = r;
            if (tally[best] >= 2) {
                residue = best;
                survivors = tally[best];
                break;
            }
            if (exhausted())
                throw SourceExhausted(
                    "admissible construction: no residue class mod " + std::to_string(p) +
                    " with 2 survivors at step " + std::to_string(n));
            want *= 2; // enlarge the pull and retry
        }

        // least element of the chosen class exceeding b_{n-1}
        std::optional<uint64_t> chosen;
        size_t scan = 0;
        for (;;) {
            for (; scan < filtered_.size(); ++scan) {
                uint64_t v = filtered_[scan];
                if (v > b_prev && v % p == residue) {
                    chosen = v;
                    break;
                }
            }
            if (chosen || !pull_one()) break;
        }
        if (!chosen)
            throw SourceExhausted("admissible construction: chosen class mod " +
                                  std::to_string(p) + " has no element above " +
                                  std::to_string(b_prev));

        values_.push_back(*chosen);
        ResidueChoice choice{p, residue, survivors};
        choices_.push_back(choice);

        // narrow the filter to the chosen class
        std::vector<uint64_t> narrowed;
        narrowed.reserve(filtered_.size());
        for (uint64_t v : filtered_)
            if (v % p == residue) narrowed.push_back(v);
        filtered_ = std::move(narrowed);
        moduli_.emplace_back(p, residue);
        return choice;
    }

    const std::vector<uint64_t>& values() const { return values_; }
    const std::vector<ResidueChoice>& choices() const { return choices_; }
    uint64_t pulled() const { return pulled_; }
    bool exhausted() const { return source_done_ || pulled_ >= budget_; }

    AdmissibleSeq take() {
        return AdmissibleSeq{Tuple(values_), choices_, window_};
    }

private:
    bool pull_one() {
        if (exhausted()) return false;
        auto v = source_.next();
        if (!v) {
            source_done_ = true;
            return false;
        }
        ++pulled_;
        if (!cache_.empty() && *v <= cache_.back())
            throw ConfigError("admissible construction requires a strictly ascending source");
        cache_.push_back(*v);
        bool pass = true;
        for (auto [p, h] : moduli_)
            if (*v % p != h) {
                pass = false;
                break;
            }
        if (pass) filtered_.push_back(*v);
        return true;
    }

    S source_;
    uint64_t window_;
    uint64_t budget_;
    uint64_t pulled_ = 0;
    bool source_done_ = false;
    std::vector<uint64_t> cache_;    // everything pulled, ascending
    std::vector<uint64_t> filtered_; // elements passing all chosen congruences
    std::vector<std::pair<uint64_t, uint64_t>> moduli_;
    std::vector<uint64_t> values_;
    std::vector<ResidueChoice> choices_;
};

template <IntStream S>
AdmissibleSeq construct_admissible(S source, uint64_t count, uint64_t window,
                                   uint64_t budget = kDefaultPullBudget) {
    if (count < 1)
        throw ConfigError("admissible construction needs count >= 1");
    if (window < 2 * count)
        throw ConfigError("window must be >= 2*count (got window " +
                          std::to_string(window) + ", count " + std::to_string(count) + ")");
    AdmissibleBuilder<S> builder(std::move(source), window, budget);
    for (uint64_t i = 0; i < count; ++i) builder.step();
    return builder.take();
}

// Greedy lacunary extraction: keep the first element, then every element
// strictly greater than ratio times the last kept one. The output satisfies
// v_{n+1} > ratio * v_n; with ratio >= 10 all pairwise differences of the
// output are distinct.
inline std::vector<uint64_t> extract_lacunary(const std::vector<uint64_t>& seq, double ratio) {
    if (!(ratio > 1.0))
        throw ConfigError("lacunary ratio must be > 1");
    std::vector<uint64_t> out;
    for (size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] < 1 || (i > 0 && seq[i] <= seq[i - 1]))
            throw ConfigError("lacunary extraction requires a strictly increasing positive sequence");
        if (out.empty() ||
            static_cast<long double>(seq[i]) >
                static_cast<long double>(ratio) * static_cast<long double>(out.back()))
            out.push_back(seq[i]);
    }
    return out;
}

} // namespace polignac
