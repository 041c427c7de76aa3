#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace polignac {

// A lazy ascending integer stream. next() yields the next element, or
// nullopt once the stream is exhausted (a first-class signal, not an error).
// Element production may throw OverflowError.
template <typename S>
concept IntStream = requires(S s) {
    { s.next() } -> std::same_as<std::optional<uint64_t>>;
};

// The integers lo, lo+1, ..., hi.
class RangeStream {
public:
    RangeStream(uint64_t lo, uint64_t hi) : next_(lo), hi_(hi) {}

    std::optional<uint64_t> next() {
        if (next_ > hi_) return std::nullopt;
        return next_++;
    }

private:
    uint64_t next_;
    uint64_t hi_;
};

// A fixed sequence replayed in order.
class VectorStream {
public:
    explicit VectorStream(std::vector<uint64_t> values)
        : values_(std::move(values)) {}

    std::optional<uint64_t> next() {
        if (pos_ >= values_.size()) return std::nullopt;
        return values_[pos_++];
    }

private:
    std::vector<uint64_t> values_;
    size_t pos_ = 0;
};

static_assert(IntStream<RangeStream>);
static_assert(IntStream<VectorStream>);

} // namespace polignac
