// Runs the search pipeline over each built-in generator family and prints
// what the witness artifacts mean for that family: every block sum is an
// even prime gap with high multiplicity below the sieve limit, and each
// family's finite sums carry their own structure (digit patterns, freedom
// from small prime factors).

#include <iostream>
#include <numeric>

#include "polignac/polignac.hpp"

using namespace polignac;

namespace {

void show(const char* label, PipelineConfig cfg, const GapCensus& census) {
    auto report = run_search(cfg);
    std::cout << label << "  (" << cfg.spec.to_string() << ", k=" << cfg.k << ")\n";
    if (!report.success) {
        std::cout << "  no witness: " << report.failure->reason << "\n\n";
        return;
    }
    const auto& w = *report.witness;
    std::cout << "  a =";
    for (uint64_t v : w.a) std::cout << ' ' << v;
    std::cout << "\n  block sums (value: census count below " << cfg.limit.value() << "):";
    for (const auto& b : w.block_sums)
        std::cout << " " << b.value << ":" << census.count_of(b.value);
    std::cout << "\n";
}

} // namespace

int main() {
    SieveLimit limit(1000000);
    auto census = gap_census(limit);
    std::cout << "census below " << limit.value() << ": pi = " << census.prime_count
              << ", largest gap " << census.largest_gap() << "\n\n";

    PipelineConfig geom;
    geom.spec = GeneratorSpec::geometric(2, 2);
    geom.k = 3;
    geom.search_bound = 64;
    show("powers of two", geom, census);
    std::cout << "  (finite sums of 2,4,8,... are exactly the even numbers >= 2)\n\n";

    PipelineConfig digits;
    digits.spec = GeneratorSpec::digit_set();
    digits.k = 1;
    digits.threshold = 1;
    show("digit family", digits, census);
    std::cout << "  (finite sums of 2,20,200,... are the numbers with digits in {0,2};\n"
                 "   the witness is such a number occurring as a prime gap)\n\n";

    for (uint64_t c : {3, 5}) {
        PipelineConfig rough;
        rough.spec = GeneratorSpec::rough(c);
        rough.k = 1;
        rough.threshold = 1;
        auto report = run_search(rough);
        std::cout << "rough family  (rough:" << c << ", k=1)\n";
        if (report.success) {
            uint64_t a = report.witness->a[0];
            uint64_t m = a / 2 + 1;
            std::cout << "  a = " << a << ", and a/2 + 1 = " << m
                      << " has no prime factor <= " << c << ":";
            for (uint64_t p : simple_sieve(c))
                std::cout << " " << m << "%" << p << "=" << m % p;
            std::cout << "\n\n";
        } else {
            std::cout << "  no witness: " << report.failure->reason << "\n\n";
        }
    }
    return 0;
}
