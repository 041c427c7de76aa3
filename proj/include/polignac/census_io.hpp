#pragma once

// Census cache file, format v1:
//
//   polignac-census,v1,limit=<N>
//   gap,count,first_index,first_prime
//   <gap>,<count>,<first_index>,<first_prime>      (ascending gap, LF endings)
//
// The loader rejects any other version token. prime_count is recovered from
// the invariant sum(count) = pi(limit) - 1.

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "polignac/errors.hpp"
#include "polignac/primes.hpp"

namespace polignac {

inline void write_census_csv(std::ostream& os, const GapCensus& census) {
    os << "polignac-census,v1,limit=" << census.limit.value() << "\n";
    os << "gap,count,first_index,first_prime\n";
    for (const auto& [gap, rec] : census.records)
        os << gap << ',' << rec.count << ',' << rec.first_index << ','
           << rec.first_prime << "\n";
}

inline std::string census_to_csv(const GapCensus& census) {
    std::ostringstream os;
    write_census_csv(os, census);
    return os.str();
}

namespace detail {

inline uint64_t parse_u64_field(const std::string& tok, const char* what) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw CacheError(std::string("census cache: bad ") + what + " field '" + tok + "'");
    try {
        return std::stoull(tok);
    } catch (const std::exception&) {
        throw CacheError(std::string("census cache: ") + what + " out of range '" + tok + "'");
    }
}

} // namespace detail

inline GapCensus load_census_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw CacheError("census cache: empty file");
    const std::string magic = "polignac-census,";
    if (line.rfind(magic, 0) != 0)
        throw CacheError("census cache: missing magic header");
    std::string rest = line.substr(magic.size());
    auto comma = rest.find(',');
    std::string version = rest.substr(0, comma);
    if (version != "v1")
        throw CacheError("census cache: unsupported version token '" + version + "'");
    if (comma == std::string::npos || rest.compare(comma + 1, 6, "limit=") != 0)
        throw CacheError("census cache: missing limit field");
    uint64_t limit_value =
        detail::parse_u64_field(rest.substr(comma + 7), "limit");

    if (!std::getline(is, line) || line != "gap,count,first_index,first_prime")
        throw CacheError("census cache: missing column header");

    GapCensus census{SieveLimit(limit_value), {}, 0};
    uint64_t total = 0;
    uint64_t prev_gap = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string f[4];
        for (int i = 0; i < 4; ++i) {
            if (!std::getline(row, f[i], ','))
                throw CacheError("census cache: short row '" + line + "'");
        }
        std::string extra;
        if (std::getline(row, extra, ','))
            throw CacheError("census cache: trailing field in row '" + line + "'");
        GapRecord rec;
        rec.gap = detail::parse_u64_field(f[0], "gap");
        rec.count = detail::parse_u64_field(f[1], "count");
        rec.first_index = detail::parse_u64_field(f[2], "first_index");
        rec.first_prime = detail::parse_u64_field(f[3], "first_prime");
        if (rec.gap <= prev_gap && prev_gap != 0)
            throw CacheError("census cache: rows not in ascending gap order");
        if (rec.count == 0)
            throw CacheError("census cache: zero count row");
        prev_gap = rec.gap;
        total += rec.count;
        census.records.emplace(rec.gap, rec);
    }
    census.prime_count = total + 1;
    return census;
}

inline void save_census_file(const std::string& path, const GapCensus& census) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw CacheError("census cache: cannot open '" + path + "' for writing");
    write_census_csv(os, census);
    if (!os)
        throw CacheError("census cache: write to '" + path + "' failed");
}

inline GapCensus load_census_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw CacheError("census cache: cannot open '" + path + "'");
    return load_census_csv(is);
}

enum class CacheOutcome { Hit, Recomputed, Computed };

// Load-or-compute with the exact-limit rule: a cached census is reused only
// when its limit matches the request exactly; otherwise it is recomputed
// and the file overwritten. A wrong version token or corrupt file throws.
inline GapCensus census_cached(const std::string& path, SieveLimit limit,
                               uint64_t segment_size = kDefaultSegmentSize,
                               unsigned threads = 1,
                               CacheOutcome* outcome = nullptr) {
    if (std::ifstream probe(path); probe.good()) {
        auto cached = load_census_csv(probe);
        if (cached.limit == limit) {
            if (outcome) *outcome = CacheOutcome::Hit;
            return cached;
        }
        auto census = gap_census(limit, segment_size, threads);
        save_census_file(path, census);
        if (outcome) *outcome = CacheOutcome::Recomputed;
        return census;
    }
    auto census = gap_census(limit, segment_size, threads);
    save_census_file(path, census);
    if (outcome) *outcome = CacheOutcome::Computed;
    return census;
}

} // namespace polignac
