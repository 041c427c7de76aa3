#pragma once

// End-to-end desk-scale pipeline: from a generator spec to a verified
// witness a_1..a_k whose consecutive-block sums are pairwise distinct, all
// finite sums of the generators, and all empirical de Polignac numbers.
//
// Two modes share one verification path. Faithful mode walks the stages of
// the underlying construction (partial sums -> admissible subsequence ->
// lacunary extraction -> membership coloring -> blue clique) and is expected
// to fail honestly for k >= 2 at reachable sieve limits, because lacunary
// differences outgrow every gap the census can contain. Search mode finds
// real witnesses by direct depth-first search over candidate values, which
// is possible because both finite-sums membership and census membership are
// decidable.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polignac/admissible.hpp"
#include "polignac/checked.hpp"
#include "polignac/errors.hpp"
#include "polignac/ipset.hpp"
#include "polignac/primes.hpp"
#include "polignac/ramsey.hpp"

namespace polignac {

enum class PipelineMode { Faithful, Search };

inline const char* to_string(PipelineMode m) {
    return m == PipelineMode::Faithful ? "faithful" : "search";
}

struct PipelineConfig {
    GeneratorSpec spec = GeneratorSpec::geometric(2, 2);
    uint64_t k = 1;
    SieveLimit limit = SieveLimit(1000000);
    uint64_t threshold = 100;
    PipelineMode mode = PipelineMode::Search;
    double ratio = 10.0;
    uint64_t window = 100;
    uint64_t budget = kDefaultPullBudget;
    std::optional<uint64_t> k2;  // red clique target, faithful mode only
    uint64_t search_bound = 0;   // 0 = up to the largest pol member
    uint64_t segment_size = kDefaultSegmentSize;
    unsigned threads = 1;
};

struct BlockSum {
    uint64_t i = 0; // 1-based, i <= j
    uint64_t j = 0;
    uint64_t value = 0;

    bool operator==(const BlockSum&) const = default;
};

enum class CertificateKind { Block, Subset };

// Finite-sums certificate for one block sum: either a consecutive block of
// generator elements or an explicit subset.
struct FsCertificate {
    uint64_t i = 0;
    uint64_t j = 0;
    uint64_t value = 0;
    CertificateKind kind = CertificateKind::Block;
    BlockWitness block;           // kind == Block
    std::vector<uint64_t> subset; // kind == Subset
};

struct VerifiedWitness {
    std::vector<uint64_t> a;              // a_n = h_{n+1} - h_n
    std::vector<uint64_t> h;              // k+1 ascending values
    std::vector<BlockSum> block_sums;     // all (i, j), lexicographic
    std::vector<FsCertificate> certificates;
};

struct StageFailure {
    int stage = 0;
    std::string name;
    std::string reason;
};

struct FaithfulDiagnostics {
    uint64_t partial_sums_produced = 0;
    bool source_truncated_by_overflow = false;
    std::vector<uint64_t> admissible_values;
    std::vector<ResidueChoice> admissible_choices;
    std::vector<uint64_t> lacunary_values;
    uint64_t ramsey_bound_value = 0;
    bool ramsey_bound_exact = false;
    bool ramsey_bound_saturated = false;
    uint64_t graph_vertices = 0;
    uint64_t blue_edges = 0;
    uint64_t red_edges = 0;
    bool blue_clique_found = false;
    std::vector<size_t> blue_clique;
    bool red_clique_checked = false;
    bool red_clique_found = false;
    std::vector<size_t> red_clique;
    std::optional<uint64_t> largest_lacunary_difference;
    uint64_t largest_census_gap = 0;
    uint64_t largest_pol_member = 0;
};

struct SearchDiagnostics {
    uint64_t search_bound_used = 0;
    std::vector<uint64_t> candidates;
    uint64_t nodes_explored = 0;
    uint64_t largest_census_gap = 0;
    uint64_t largest_pol_member = 0;
};

struct PipelineReport {
    PipelineConfig config;
    bool success = false;
    std::optional<VerifiedWitness> witness;
    std::optional<StageFailure> failure;
    std::optional<FaithfulDiagnostics> faithful;
    std::optional<SearchDiagnostics> search;
    std::vector<std::string> verification_violations;
};

inline void validate_pipeline_config(const PipelineConfig& cfg) {
    if (cfg.k < 1)
        throw ConfigError("pipeline needs k >= 1");
    if (cfg.threshold < 1)
        throw ConfigError("pol threshold must be >= 1");
    if (!(cfg.ratio > 1.0))
        throw ConfigError("lacunary ratio must be > 1");
    if (cfg.window < 2)
        throw ConfigError("window must be >= 2");
    if (cfg.budget < 1)
        throw ConfigError("pull budget must be >= 1");
    if (cfg.mode == PipelineMode::Faithful) {
        if (!cfg.k2)
            throw ConfigError("faithful mode requires k2 (the red clique target)");
        if (*cfg.k2 < 1)
            throw ConfigError("k2 must be >= 1");
    }
    // every generator element must be even for FS(M) to land in 2N;
    // sampled over the first max(4k, 64) elements
    uint64_t sample = std::max<uint64_t>(cfg.k * 4, 64);
    GeneratorStream s(cfg.spec);
    for (uint64_t i = 0; i < sample; ++i) {
        std::optional<uint64_t> v;
        try {
            v = s.next();
        } catch (const OverflowError&) {
            break;
        }
        if (!v) break;
        if (*v % 2 != 0)
            throw ConfigError("generator element " + std::to_string(*v) +
                              " is odd; the pipeline needs FS(M) inside the even numbers");
    }
}

// Recomputes every witness invariant from scratch: telescoping against h,
// block sums from a, pairwise distinctness, evenness, pol membership, and
// the finite-sums certificates against a fresh generator stream. Returns
// all violations found; an empty list means the witness is valid.
inline std::vector<std::string> verify_witness(const VerifiedWitness& w,
                                               const GeneratorSpec& spec,
                                               const EmpiricalPol& pol) {
    std::vector<std::string> bad;
    size_t k = w.a.size();
    if (k == 0) {
        bad.push_back("witness has no elements");
        return bad;
    }
    if (w.h.size() != k + 1) {
        bad.push_back("h must have k+1 entries, got " + std::to_string(w.h.size()));
        return bad;
    }
    for (size_t n = 0; n + 1 < w.h.size(); ++n) {
        if (w.h[n + 1] <= w.h[n])
            bad.push_back("h not strictly ascending at position " + std::to_string(n + 1));
        else if (w.a[n] != w.h[n + 1] - w.h[n])
            bad.push_back("a[" + std::to_string(n + 1) + "] != h[" + std::to_string(n + 2) +
                          "] - h[" + std::to_string(n + 1) + "]");
    }

    // block sums recomputed from a, telescoping re-checked against h
    std::vector<BlockSum> expected;
    for (uint64_t i = 1; i <= k; ++i) {
        unsigned __int128 sum = 0;
        for (uint64_t j = i; j <= k; ++j) {
            sum += w.a[j - 1];
            if (sum > UINT64_MAX) {
                bad.push_back("block sum (" + std::to_string(i) + "," + std::to_string(j) +
                              ") overflows");
                return bad;
            }
            expected.push_back({i, j, static_cast<uint64_t>(sum)});
        }
    }
    std::sort(expected.begin(), expected.end(), [](const BlockSum& x, const BlockSum& y) {
        return std::pair(x.i, x.j) < std::pair(y.i, y.j);
    });
    if (w.block_sums != expected)
        bad.push_back("stored block sums differ from the sums recomputed from a");
    for (const auto& b : expected) {
        if (w.h.size() == k + 1 && b.value != w.h[b.j] - w.h[b.i - 1])
            bad.push_back("telescoping fails for block (" + std::to_string(b.i) + "," +
                          std::to_string(b.j) + ")");
    }

    std::set<uint64_t> distinct;
    for (const auto& b : expected) {
        if (!distinct.insert(b.value).second)
            bad.push_back("block sum value " + std::to_string(b.value) + " collides");
        if (b.value % 2 != 0)
            bad.push_back("block sum " + std::to_string(b.value) + " is odd");
        if (!is_empirical_depolignac(b.value, pol))
            bad.push_back("block sum " + std::to_string(b.value) + " is not in " + pol.ref());
    }

    // finite-sums certificates, re-validated against a fresh stream
    if (w.certificates.size() != expected.size()) {
        bad.push_back("expected " + std::to_string(expected.size()) + " certificates, got " +
                      std::to_string(w.certificates.size()));
        return bad;
    }
    for (size_t idx = 0; idx < expected.size(); ++idx) {
        const auto& cert = w.certificates[idx];
        const auto& b = expected[idx];
        std::string where = "certificate (" + std::to_string(b.i) + "," + std::to_string(b.j) + ")";
        if (cert.i != b.i || cert.j != b.j || cert.value != b.value) {
            bad.push_back(where + " does not match its block sum");
            continue;
        }
        if (cert.kind == CertificateKind::Block) {
            if (cert.block.lo >= cert.block.hi) {
                bad.push_back(where + " has an empty block");
                continue;
            }
            GeneratorStream stream(spec);
            unsigned __int128 sum = 0;
            bool short_stream = false;
            for (uint64_t pos = 1; pos <= cert.block.hi; ++pos) {
                auto m = stream.next();
                if (!m) {
                    short_stream = true;
                    break;
                }
                if (pos > cert.block.lo) sum += *m;
            }
            if (short_stream || sum != cert.value)
                bad.push_back(where + " block does not sum to the value");
        } else {
            if (cert.subset.empty()) {
                bad.push_back(where + " has an empty subset");
                continue;
            }
            unsigned __int128 sum = 0;
            uint64_t prev = 0;
            bool ascending = true;
            for (uint64_t e : cert.subset) {
                if (e <= prev && prev != 0) ascending = false;
                prev = e;
                sum += e;
            }
            if (!ascending || sum != cert.value) {
                bad.push_back(where + " subset is not an ascending set summing to the value");
                continue;
            }
            std::set<uint64_t> produced;
            GeneratorStream stream(spec);
            uint64_t top = cert.subset.back();
            for (;;) {
                std::optional<uint64_t> m;
                try {
                    m = stream.next();
                } catch (const OverflowError&) {
                    break;
                }
                if (!m || *m > top) break;
                produced.insert(*m);
            }
            for (uint64_t e : cert.subset)
                if (!produced.count(e)) {
                    bad.push_back(where + " subset element " + std::to_string(e) +
                                  " is not a generator element");
                    break;
                }
        }
    }
    return bad;
}

namespace detail {

// Builds the witness record from ascending h values: computes a and all
// block sums, and attaches a finite-sums certificate per block sum,
// preferring a consecutive-block witness and falling back to an explicit
// subset. Returns nullopt (with a reason) if some sum has no certificate.
inline std::optional<VerifiedWitness> build_witness(const std::vector<uint64_t>& h,
                                                    const GeneratorSpec& spec,
                                                    std::string& why) {
    VerifiedWitness w;
    w.h = h;
    for (size_t n = 0; n + 1 < h.size(); ++n) {
        if (h[n + 1] <= h[n]) {
            why = "h values are not strictly ascending";
            return std::nullopt;
        }
        w.a.push_back(h[n + 1] - h[n]);
    }
    size_t k = w.a.size();
    for (uint64_t i = 1; i <= k; ++i) {
        uint64_t sum = 0;
        for (uint64_t j = i; j <= k; ++j) {
            sum = checked_add(sum, w.a[j - 1]);
            w.block_sums.push_back({i, j, sum});
        }
    }
    std::sort(w.block_sums.begin(), w.block_sums.end(),
              [](const BlockSum& x, const BlockSum& y) {
                  return std::pair(x.i, x.j) < std::pair(y.i, y.j);
              });
    for (const auto& b : w.block_sums) {
        FsCertificate cert;
        cert.i = b.i;
        cert.j = b.j;
        cert.value = b.value;
        if (auto block = block_witness(spec, b.value)) {
            cert.kind = CertificateKind::Block;
            cert.block = *block;
        } else if (auto subset = fs_contains(b.value, spec)) {
            cert.kind = CertificateKind::Subset;
            cert.subset = std::move(*subset);
        } else {
            why = "block sum " + std::to_string(b.value) +
                  " is not a finite sum of the generators";
            return std::nullopt;
        }
        w.certificates.push_back(std::move(cert));
    }
    return w;
}

// Turns a stream's production overflow into end-of-stream, setting a flag.
// The 64-bit artifact sees every unbounded generator family as effectively
// finite; truncation is recorded in the diagnostics instead of aborting.
template <IntStream S>
class TruncatingStream {
public:
    TruncatingStream(S inner, bool* truncated)
        : inner_(std::move(inner)), truncated_(truncated) {}

    std::optional<uint64_t> next() {
        if (done_) return std::nullopt;
        try {
            auto v = inner_.next();
            if (!v) done_ = true;
            return v;
        } catch (const OverflowError&) {
            done_ = true;
            if (truncated_) *truncated_ = true;
            return std::nullopt;
        }
    }

private:
    S inner_;
    bool* truncated_;
    bool done_ = false;
};

inline StageFailure fail_stage(int stage, std::string name, std::string reason) {
    return StageFailure{stage, std::move(name), std::move(reason)};
}

} // namespace detail

// The staged construction. Stages: (1) partial sums, (2) admissible
// subsequence, (3) lacunary extraction, (4) vertex selection with
// N = min(ramsey_bound(k+1, k2), available), (5) membership coloring,
// (6) blue clique search, (7) witness verification. On failure the report
// names the failing stage; a red clique on k2 vertices is a diagnostic, not
// a contradiction, because the consecutive-prime machinery behind the
// red-clique impossibility is not checkable from a finite census.
inline PipelineReport run_faithful(const PipelineConfig& cfg) {
    if (cfg.mode != PipelineMode::Faithful)
        throw ConfigError("run_faithful needs mode=faithful");
    validate_pipeline_config(cfg);

    PipelineReport report;
    report.config = cfg;
    FaithfulDiagnostics diag;

    auto census = gap_census(cfg.limit, cfg.segment_size, cfg.threads);
    auto pol = empirical_pol(census, cfg.threshold);
    diag.largest_census_gap = census.largest_gap();
    diag.largest_pol_member = pol.members.empty() ? 0 : pol.members.back();

    auto bound = ramsey_bound(RamseyQuery(cfg.k + 1, *cfg.k2));
    diag.ramsey_bound_value = bound.value;
    diag.ramsey_bound_exact = bound.exact;
    diag.ramsey_bound_saturated = bound.saturated;

    // stages 1-2: admissible subsequence of the partial-sums set, extended
    // until the lacunary pool can fill the vertex budget
    bool truncated = false;
    detail::TruncatingStream<PartialSumStream<GeneratorStream>> source(
        partial_sums(stream_from_spec(cfg.spec)), &truncated);
    AdmissibleBuilder<decltype(source)> builder(std::move(source), cfg.window, cfg.budget);

    uint64_t lacunary_count = 0;
    uint64_t last_kept = 0;
    uint64_t max_steps = cfg.window / 2; // construction precondition W >= 2k
    std::optional<std::string> exhausted_reason;
    while (lacunary_count < bound.value && builder.values().size() < max_steps) {
        try {
            builder.step();
        } catch (const SourceExhausted& e) {
            exhausted_reason = e.what();
            break;
        }
        uint64_t b = builder.values().back();
        if (lacunary_count == 0 ||
            static_cast<long double>(b) >
                static_cast<long double>(cfg.ratio) * static_cast<long double>(last_kept)) {
            ++lacunary_count;
            last_kept = b;
        }
    }
    diag.partial_sums_produced = builder.pulled();
    diag.source_truncated_by_overflow = truncated;
    diag.admissible_values = builder.values();
    diag.admissible_choices = builder.choices();

    if (builder.values().empty()) {
        report.failure = detail::fail_stage(2, "admissible",
                                            exhausted_reason.value_or("source exhausted"));
        report.faithful = std::move(diag);
        return report;
    }

    // stage 3
    diag.lacunary_values = extract_lacunary(builder.values(), cfg.ratio);

    // stage 4
    uint64_t n_vertices = std::min<uint64_t>(bound.value, diag.lacunary_values.size());
    diag.graph_vertices = n_vertices;
    if (n_vertices >= 2) {
        diag.largest_lacunary_difference =
            diag.lacunary_values[n_vertices - 1] - diag.lacunary_values[0];
    }
    if (n_vertices < 2) {
        report.failure = detail::fail_stage(
            4, "vertex-selection",
            "only " + std::to_string(n_vertices) + " lacunary vertex(es) available; need 2");
        report.faithful = std::move(diag);
        return report;
    }
    std::vector<uint64_t> vertices(diag.lacunary_values.begin(),
                                   diag.lacunary_values.begin() + n_vertices);

    // stage 5
    auto graph = color_graph(vertices, pol);
    diag.blue_edges = graph.blue_edge_count();
    diag.red_edges = graph.red_edge_count();

    // stage 6
    auto blue = find_clique(graph, EdgeColor::Blue, cfg.k + 1);
    if (blue) {
        diag.blue_clique_found = true;
        diag.blue_clique = *blue;
    } else {
        diag.red_clique_checked = true;
        auto red = find_clique(graph, EdgeColor::Red, *cfg.k2);
        std::string reason;
        if (red) {
            diag.red_clique_found = true;
            diag.red_clique = *red;
            reason = "red clique present: Maynard-Tao contradiction not checkable "
                     "empirically - raise limit or threshold";
        } else {
            reason = "no blue clique on " + std::to_string(cfg.k + 1) + " vertices";
        }
        reason += " (largest lacunary difference " +
                  (diag.largest_lacunary_difference
                       ? std::to_string(*diag.largest_lacunary_difference)
                       : std::string("n/a")) +
                  " vs largest census gap " + std::to_string(diag.largest_census_gap) + ")";
        report.failure = detail::fail_stage(6, "clique-search", std::move(reason));
        report.faithful = std::move(diag);
        return report;
    }

    // stage 7
    std::vector<uint64_t> h;
    for (size_t idx : *blue) h.push_back(vertices[idx - 1]);
    std::string why;
    auto witness = detail::build_witness(h, cfg.spec, why);
    if (!witness) {
        report.failure = detail::fail_stage(7, "verification", why);
        report.faithful = std::move(diag);
        return report;
    }
    auto violations = verify_witness(*witness, cfg.spec, pol);
    if (!violations.empty()) {
        report.failure = detail::fail_stage(7, "verification",
                                            "witness failed independent re-verification");
        report.verification_violations = violations;
        report.faithful = std::move(diag);
        return report;
    }
    report.success = true;
    report.witness = std::move(*witness);
    report.faithful = std::move(diag);
    return report;
}

// Depth-first search for the lexicographically least witness with every
// a_n drawn from FS(M) intersected with the empirical pol, up to the search
// bound. Prefixes are pruned as soon as some block sum leaves the pol, is
// not a finite sum, or collides with another. Exhaustion is a failure
// outcome, not an error.
inline PipelineReport run_search(const PipelineConfig& cfg) {
    if (cfg.mode != PipelineMode::Search)
        throw ConfigError("run_search needs mode=search");
    validate_pipeline_config(cfg);

    PipelineReport report;
    report.config = cfg;
    SearchDiagnostics diag;

    auto census = gap_census(cfg.limit, cfg.segment_size, cfg.threads);
    auto pol = empirical_pol(census, cfg.threshold);
    diag.largest_census_gap = census.largest_gap();
    diag.largest_pol_member = pol.members.empty() ? 0 : pol.members.back();

    uint64_t bound = cfg.search_bound != 0 ? cfg.search_bound : diag.largest_pol_member;
    diag.search_bound_used = bound;
    if (pol.members.empty() || bound < 2) {
        report.failure = detail::fail_stage(
            2, "candidates", "empirical pol has no members at threshold " +
                                 std::to_string(cfg.threshold) + "; nothing to search");
        report.search = std::move(diag);
        return report;
    }

    // candidates: FS(M) /\ pol /\ [2, bound]
    auto fs_small = fs_enumerate(cfg.spec, bound);
    std::vector<uint64_t> candidates;
    std::set_intersection(fs_small.begin(), fs_small.end(), pol.members.begin(),
                          pol.members.end(), std::back_inserter(candidates));
    diag.candidates = candidates;

    // all block sums live below k * bound
    auto fs_sums = fs_enumerate(cfg.spec, checked_mul(cfg.k, bound));
    auto in_fs = [&](uint64_t v) {
        return std::binary_search(fs_sums.begin(), fs_sums.end(), v);
    };

    std::vector<uint64_t> a;
    std::vector<uint64_t> suffix; // suffix[i] = sum of a[i..end), updated per push
    std::set<uint64_t> used_sums;
    std::optional<VerifiedWitness> found;
    uint64_t nodes = 0;

    auto dfs = [&](auto&& self) -> bool {
        if (a.size() == cfg.k) {
            std::vector<uint64_t> h{0};
            for (uint64_t x : a) h.push_back(h.back() + x);
            std::string why;
            auto witness = detail::build_witness(h, cfg.spec, why);
            if (!witness) return false;
            if (!verify_witness(*witness, cfg.spec, pol).empty()) return false;
            found = std::move(*witness);
            return true;
        }
        for (uint64_t x : candidates) {
            ++nodes;
            // block sums ending at the new position: x alone and every
            // suffix extended by x
            std::vector<uint64_t> fresh{x};
            bool ok = true;
            for (uint64_t s : suffix) {
                uint64_t v = checked_add(s, x);
                fresh.push_back(v);
            }
            std::set<uint64_t> fresh_set(fresh.begin(), fresh.end());
            if (fresh_set.size() != fresh.size()) ok = false;
            for (uint64_t v : fresh) {
                if (!ok) break;
                if (used_sums.count(v) || !is_empirical_depolignac(v, pol) || !in_fs(v))
                    ok = false;
            }
            if (!ok) continue;
            a.push_back(x);
            for (uint64_t& s : suffix) s += x;
            suffix.push_back(x);
            for (uint64_t v : fresh) used_sums.insert(v);
            if (self(self)) return true;
            for (uint64_t v : fresh) used_sums.erase(v);
            suffix.pop_back();
            for (uint64_t& s : suffix) s -= x;
            a.pop_back();
        }
        return false;
    };
    dfs(dfs);
    diag.nodes_explored = nodes;

    if (!found) {
        report.failure = detail::fail_stage(
            3, "search", "search exhausted: no witness with every a_n <= " +
                             std::to_string(bound));
        report.search = std::move(diag);
        return report;
    }
    report.success = true;
    report.witness = std::move(*found);
    report.search = std::move(diag);
    return report;
}

inline PipelineReport run_pipeline(const PipelineConfig& cfg) {
    return cfg.mode == PipelineMode::Faithful ? run_faithful(cfg) : run_search(cfg);
}

} // namespace polignac
