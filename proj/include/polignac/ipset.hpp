#pragma once

// Generator sets M for IP sets, their lazy element streams, finite-sums
// (FS) enumeration and membership with certificates, partial sums, and
// consecutive-block-sum witnesses.
//
// Built-in families:
//   list:a,b,c   explicit ascending positive integers (finite)
//   geom:a,r     a * r^i for i >= 0, with a >= 2 and r >= 2
//   digits       2 * 10^i — finite sums are exactly the numbers whose
//                decimal digits all lie in {0, 2}
//   rough:c      2 * P * 2^i with P the product of the primes <= c; every
//                finite sum a is a multiple of 2P, so m = a/2 + 1 is
//                congruent to 1 mod P and free of prime factors <= c

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polignac/checked.hpp"
#include "polignac/errors.hpp"
#include "polignac/primes.hpp"
#include "polignac/streams.hpp"

namespace polignac {

enum class GeneratorKind { ExplicitList, Geometric, DigitSet, Rough };

class GeneratorSpec {
public:
    static GeneratorSpec explicit_list(std::vector<uint64_t> elements) {
        if (elements.empty())
            throw SpecError("explicit list must contain at least one element");
        uint64_t prev = 0;
        for (uint64_t e : elements) {
            if (e < 1)
                throw SpecError("explicit list elements must be positive");
            if (e <= prev && prev != 0)
                throw SpecError("explicit list must be strictly ascending at '" +
                                std::to_string(e) + "'");
            prev = e;
        }
        GeneratorSpec s(GeneratorKind::ExplicitList);
        s.elements_ = std::move(elements);
        return s;
    }

    static GeneratorSpec geometric(uint64_t base, uint64_t ratio) {
        if (base < 2)
            throw SpecError("geometric base must be >= 2, got " + std::to_string(base));
        if (ratio < 2)
            throw SpecError("geometric ratio must be >= 2, got " + std::to_string(ratio));
        GeneratorSpec s(GeneratorKind::Geometric);
        s.base_ = base;
        s.ratio_ = ratio;
        return s;
    }

    static GeneratorSpec digit_set() { return GeneratorSpec(GeneratorKind::DigitSet); }

    static GeneratorSpec rough(uint64_t bound) {
        if (bound < 2)
            throw SpecError("rough bound must be >= 2, got " + std::to_string(bound));
        GeneratorSpec s(GeneratorKind::Rough);
        s.bound_ = bound;
        return s;
    }

    // Mini-language: list:4,6,10 | geom:2,2 | digits | rough:5
    static GeneratorSpec parse(std::string_view text);

    GeneratorKind kind() const { return kind_; }
    const std::vector<uint64_t>& elements() const { return elements_; }
    uint64_t base() const { return base_; }
    uint64_t ratio() const { return ratio_; }
    uint64_t bound() const { return bound_; }

    std::string to_string() const {
        switch (kind_) {
            case GeneratorKind::ExplicitList: {
                std::string out = "list:";
                for (size_t i = 0; i < elements_.size(); ++i) {
                    if (i) out += ',';
                    out += std::to_string(elements_[i]);
                }
                return out;
            }
            case GeneratorKind::Geometric:
                return "geom:" + std::to_string(base_) + "," + std::to_string(ratio_);
            case GeneratorKind::DigitSet:
                return "digits";
            case GeneratorKind::Rough:
                return "rough:" + std::to_string(bound_);
        }
        return {};
    }

private:
    explicit GeneratorSpec(GeneratorKind kind) : kind_(kind) {}

    GeneratorKind kind_;
    std::vector<uint64_t> elements_;
    uint64_t base_ = 0;
    uint64_t ratio_ = 0;
    uint64_t bound_ = 0;
};

namespace detail {

inline uint64_t parse_spec_number(std::string_view tok) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string_view::npos)
        throw SpecError("spec: expected a number, got '" + std::string(tok) + "'");
    try {
        return std::stoull(std::string(tok));
    } catch (const std::exception&) {
        throw SpecError("spec: number out of range '" + std::string(tok) + "'");
    }
}

inline std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> out;
    size_t pos = 0;
    for (;;) {
        size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) {
            out.push_back(text.substr(pos));
            return out;
        }
        out.push_back(text.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

} // namespace detail

inline GeneratorSpec GeneratorSpec::parse(std::string_view text) {
    if (text == "digits") return digit_set();
    size_t colon = text.find(':');
    std::string_view head = text.substr(0, colon);
    if (colon == std::string_view::npos) {
        throw SpecError("spec: unknown generator '" + std::string(text) +
                        "' (expected list:..., geom:a,r, digits, rough:c)");
    }
    std::string_view args = text.substr(colon + 1);
    if (head == "digits")
        throw SpecError("spec: digits takes no parameters, got '" + std::string(args) + "'");
    if (head == "list") {
        std::vector<uint64_t> elems;
        for (auto tok : detail::split_commas(args))
            elems.push_back(detail::parse_spec_number(tok));
        return explicit_list(std::move(elems));
    }
    if (head == "geom") {
        auto toks = detail::split_commas(args);
        if (toks.size() != 2)
            throw SpecError("spec: geom takes two parameters, got '" + std::string(args) + "'");
        return geometric(detail::parse_spec_number(toks[0]),
                         detail::parse_spec_number(toks[1]));
    }
    if (head == "rough") {
        auto toks = detail::split_commas(args);
        if (toks.size() != 1)
            throw SpecError("spec: rough takes one parameter, got '" + std::string(args) + "'");
        return rough(detail::parse_spec_number(toks[0]));
    }
    throw SpecError("spec: unknown generator kind '" + std::string(head) + "'");
}

// Lazy strictly increasing element stream m_1 < m_2 < ... for a spec.
// Explicit lists end (next() returns nullopt); the other kinds are unbounded
// until 64-bit production overflows, which throws rather than wrapping.
class GeneratorStream {
public:
    explicit GeneratorStream(GeneratorSpec spec) : spec_(std::move(spec)) {}

    std::optional<uint64_t> next() {
        switch (spec_.kind()) {
            case GeneratorKind::ExplicitList: {
                const auto& elems = spec_.elements();
                if (produced_ >= elems.size()) return std::nullopt;
                last_ = elems[produced_++];
                return last_;
            }
            case GeneratorKind::Geometric:
                last_ = produced_++ == 0 ? spec_.base() : checked_mul(last_, spec_.ratio());
                return last_;
            case GeneratorKind::DigitSet:
                last_ = produced_++ == 0 ? 2 : checked_mul(last_, 10);
                return last_;
            case GeneratorKind::Rough:
                if (produced_++ == 0) {
                    uint64_t product = 1;
                    for (uint64_t p : simple_sieve(spec_.bound()))
                        product = checked_mul(product, p);
                    last_ = checked_mul(2, product);
                } else {
                    last_ = checked_mul(last_, 2);
                }
                return last_;
        }
        return std::nullopt;
    }

    const GeneratorSpec& spec() const { return spec_; }

private:
    GeneratorSpec spec_;
    size_t produced_ = 0;
    uint64_t last_ = 0;
};

static_assert(IntStream<GeneratorStream>);

inline GeneratorStream stream_from_spec(const GeneratorSpec& spec) {
    return GeneratorStream(spec);
}

namespace detail {

// Remaining stream elements <= cap, in order. A production overflow is
// treated as exhaustion: an element that does not fit in 64 bits certainly
// exceeds the cap.
inline std::vector<uint64_t> elements_up_to(GeneratorStream stream, uint64_t cap) {
    std::vector<uint64_t> out;
    for (;;) {
        std::optional<uint64_t> m;
        try {
            m = stream.next();
        } catch (const OverflowError&) {
            break;
        }
        if (!m || *m > cap) break;
        out.push_back(*m);
    }
    return out;
}

} // namespace detail

// All nonzero finite sums of distinct stream elements that are <= bound,
// sorted ascending. Terminates because elements above the bound cannot
// participate; partial sums are capped at the bound, so no overflow.
inline std::vector<uint64_t> fs_enumerate(GeneratorStream stream, uint64_t bound) {
    if (bound < 1)
        throw ConfigError("fs bound must be >= 1");
    std::vector<uint64_t> sums;
    for (uint64_t m : detail::elements_up_to(std::move(stream), bound)) {
        std::vector<uint64_t> added;
        added.reserve(sums.size() + 1);
        added.push_back(m);
        for (uint64_t s : sums)
            if (m <= bound - s) added.push_back(s + m);
        std::vector<uint64_t> merged;
        merged.reserve(sums.size() + added.size());
        std::merge(sums.begin(), sums.end(), added.begin(), added.end(),
                   std::back_inserter(merged));
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        sums = std::move(merged);
    }
    return sums;
}

inline std::vector<uint64_t> fs_enumerate(const GeneratorSpec& spec, uint64_t bound) {
    return fs_enumerate(GeneratorStream(spec), bound);
}

// Exact FS membership by subset-sum dynamic programming over reachable sums
// capped at x. Returns one witnessing subset on success.
inline std::optional<std::vector<uint64_t>> fs_contains(uint64_t x, GeneratorStream stream) {
    if (x < 1)
        throw ConfigError("fs membership query needs x >= 1");
    auto elems = detail::elements_up_to(std::move(stream), x);
    std::map<uint64_t, size_t> producer; // reachable sum -> index of last element used
    for (size_t i = 0; i < elems.size() && !producer.count(x); ++i) {
        uint64_t m = elems[i];
        std::vector<uint64_t> snapshot;
        snapshot.reserve(producer.size());
        for (const auto& [s, idx] : producer) snapshot.push_back(s);
        for (uint64_t s : snapshot)
            if (m <= x - s) producer.emplace(s + m, i);
        producer.emplace(m, i);
    }
    if (!producer.count(x)) return std::nullopt;
    std::vector<uint64_t> subset;
    uint64_t s = x;
    while (s > 0) {
        size_t i = producer.at(s);
        subset.push_back(elems[i]);
        s -= elems[i];
    }
    std::reverse(subset.begin(), subset.end());
    return subset;
}

inline std::optional<std::vector<uint64_t>> fs_contains(uint64_t x, const GeneratorSpec& spec) {
    return fs_contains(x, GeneratorStream(spec));
}

// The partial-sums set: element l is m_1 + ... + m_l. Strictly increasing;
// overflow is detected, never wrapped.
template <IntStream S>
class PartialSumStream {
public:
    explicit PartialSumStream(S inner) : inner_(std::move(inner)) {}

    std::optional<uint64_t> next() {
        auto m = inner_.next();
        if (!m) return std::nullopt;
        total_ = checked_add(total_, *m);
        return total_;
    }

private:
    S inner_;
    uint64_t total_ = 0;
};

inline PartialSumStream<GeneratorStream> partial_sums(GeneratorStream stream) {
    return PartialSumStream<GeneratorStream>(std::move(stream));
}

// A consecutive block of generator elements summing to a target:
// value = sum of m_k for lo < k <= hi (1-based element indices).
struct BlockWitness {
    uint64_t lo = 0;
    uint64_t hi = 0;
    uint64_t value = 0;

    bool operator==(const BlockWitness&) const = default;
};

// Two-pointer scan for the unique consecutive block summing to target with
// minimal hi, using only elements <= target. Returns nullopt when target is
// not a consecutive-block sum.
inline std::optional<BlockWitness> block_witness(GeneratorStream stream, uint64_t target) {
    if (target < 1)
        throw ConfigError("block witness target must be >= 1");
    std::vector<uint64_t> elems;
    size_t lo = 0;
    unsigned __int128 sum = 0;
    for (;;) {
        std::optional<uint64_t> m;
        try {
            m = stream.next();
        } catch (const OverflowError&) {
            m = std::nullopt;
        }
        if (!m || *m > target) break;
        elems.push_back(*m);
        sum += *m;
        while (sum > target) sum -= elems[lo++];
        if (sum == target && lo < elems.size())
            return BlockWitness{static_cast<uint64_t>(lo),
                                static_cast<uint64_t>(elems.size()), target};
    }
    return std::nullopt;
}

inline std::optional<BlockWitness> block_witness(const GeneratorSpec& spec, uint64_t target) {
    return block_witness(GeneratorStream(spec), target);
}

} // namespace polignac
