#pragma once

// Rendering for every CLI command. csv and json outputs are byte-stable
// contracts: identical inputs produce identical bytes, json documents keep
// a fixed key order and end with exactly one newline. The human tables are
// for eyes only.

#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polignac/admissible.hpp"
#include "polignac/census_io.hpp"
#include "polignac/ipset.hpp"
#include "polignac/pipeline.hpp"
#include "polignac/primes.hpp"
#include "polignac/ramsey.hpp"

namespace polignac {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Human, Csv, Json };

inline OutputFormat parse_output_format(const std::string& text) {
    if (text == "human") return OutputFormat::Human;
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format '" + text + "' (human|csv|json)");
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- census

inline Json census_to_json(const GapCensus& census) {
    Json j;
    j["command"] = "census";
    j["limit"] = census.limit.value();
    j["prime_count"] = census.prime_count;
    Json gaps = Json::array();
    for (const auto& [gap, rec] : census.records) {
        Json g;
        g["gap"] = gap;
        g["count"] = rec.count;
        g["first_index"] = rec.first_index;
        g["first_prime"] = rec.first_prime;
        gaps.push_back(std::move(g));
    }
    j["gaps"] = std::move(gaps);
    return j;
}

inline std::string census_human(const GapCensus& census) {
    std::ostringstream os;
    os << "prime gap census up to " << census.limit.value() << "  (pi = "
       << census.prime_count << ", " << census.records.size() << " gap sizes)\n";
    os << std::setw(8) << "gap" << std::setw(12) << "count" << std::setw(14)
       << "first_index" << std::setw(14) << "first_prime" << "\n";
    for (const auto& [gap, rec] : census.records)
        os << std::setw(8) << gap << std::setw(12) << rec.count << std::setw(14)
           << rec.first_index << std::setw(14) << rec.first_prime << "\n";
    return os.str();
}

// ------------------------------------------------------------------- pol

inline Json pol_to_json(const EmpiricalPol& pol, const GapCensus& census) {
    Json j;
    j["command"] = "pol";
    j["limit"] = pol.limit.value();
    j["threshold"] = pol.threshold;
    j["empirical"] = true; // threshold semantics are a surrogate, not a theorem
    Json members = Json::array();
    for (uint64_t g : pol.members) {
        Json m;
        m["gap"] = g;
        m["count"] = census.count_of(g);
        members.push_back(std::move(m));
    }
    j["members"] = std::move(members);
    return j;
}

inline std::string pol_to_csv(const EmpiricalPol& pol, const GapCensus& census) {
    std::ostringstream os;
    os << "polignac-pol,v1,limit=" << pol.limit.value()
       << ",threshold=" << pol.threshold << "\n";
    os << "gap,count\n";
    for (uint64_t g : pol.members) os << g << ',' << census.count_of(g) << "\n";
    return os.str();
}

inline std::string pol_human(const EmpiricalPol& pol, const GapCensus& census) {
    std::ostringstream os;
    os << "empirical de Polignac set below " << pol.limit.value()
       << " with multiplicity >= " << pol.threshold << "  (" << pol.members.size()
       << " members; empirical surrogate, not a proof of membership)\n";
    for (uint64_t g : pol.members)
        os << "  " << g << "  (count " << census.count_of(g) << ")\n";
    return os.str();
}

// ------------------------------------------------------------ admissible

inline Json admissible_check_to_json(const Tuple& t, const AdmissibilityCheck& check) {
    Json j;
    j["command"] = "admissible-check";
    j["tuple"] = t.elements();
    j["admissible"] = check.admissible;
    if (check.covering_prime)
        j["covering_prime"] = *check.covering_prime;
    else
        j["covering_prime"] = nullptr;
    return j;
}

inline Json admissible_construct_to_json(const std::string& set, uint64_t count,
                                         uint64_t budget, const AdmissibleSeq& seq) {
    Json j;
    j["command"] = "admissible-construct";
    j["set"] = set;
    j["count"] = count;
    j["window"] = seq.window;
    j["budget"] = budget;
    j["tuple"] = seq.tuple.elements();
    Json choices = Json::array();
    for (const auto& c : seq.choices) {
        Json e;
        e["prime"] = c.prime;
        e["residue"] = c.residue;
        e["survivors"] = c.survivors;
        choices.push_back(std::move(e));
    }
    j["choices"] = std::move(choices);
    return j;
}

inline std::string admissible_construct_to_csv(const AdmissibleSeq& seq) {
    std::ostringstream os;
    os << "element,prime,residue,survivors\n";
    const auto& b = seq.tuple.elements();
    for (size_t i = 0; i < b.size(); ++i)
        os << b[i] << ',' << seq.choices[i].prime << ',' << seq.choices[i].residue
           << ',' << seq.choices[i].survivors << "\n";
    return os.str();
}

// ------------------------------------------------------------------- fs

inline Json values_to_json(const char* command, const std::string& set,
                           const char* arg_name, uint64_t arg,
                           const std::vector<uint64_t>& values) {
    Json j;
    j["command"] = command;
    j["set"] = set;
    j[arg_name] = arg;
    j["values"] = values;
    return j;
}

inline std::string values_to_csv(const std::vector<uint64_t>& values) {
    std::ostringstream os;
    os << "value\n";
    for (uint64_t v : values) os << v << "\n";
    return os.str();
}

// --------------------------------------------------------------- ramsey

inline Json ramsey_bound_to_json(const RamseyQuery& q, const RamseyBound& b) {
    Json j;
    j["command"] = "ramsey-bound";
    j["r"] = q.r;
    j["s"] = q.s;
    j["value"] = b.value;
    j["exact"] = b.exact;
    j["saturated"] = b.saturated;
    return j;
}

inline Json ramsey_verify_to_json(uint64_t r, uint64_t s, unsigned n,
                                  const RamseyVerification& v) {
    Json j;
    j["command"] = "ramsey-verify";
    j["r"] = r;
    j["s"] = s;
    j["n"] = n;
    j["holds"] = v.holds;
    if (v.counterexample) {
        Json blue = Json::array();
        Json red = Json::array();
        auto edges = complete_graph_edges(n);
        for (unsigned e = 0; e < edges.size(); ++e) {
            Json pair = Json::array({edges[e].first + 1, edges[e].second + 1});
            if ((*v.counterexample >> e) & 1)
                blue.push_back(std::move(pair));
            else
                red.push_back(std::move(pair));
        }
        Json c;
        c["blue_edges"] = std::move(blue);
        c["red_edges"] = std::move(red);
        j["counterexample"] = std::move(c);
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

// ------------------------------------------------------------- pipeline

// Execution knobs (threads, segment size) are not echoed: they provably do
// not change any result, and reports must be byte-identical across them.
inline Json config_to_json(const PipelineConfig& cfg) {
    Json j;
    j["spec"] = cfg.spec.to_string();
    j["k"] = cfg.k;
    j["limit"] = cfg.limit.value();
    j["threshold"] = cfg.threshold;
    j["mode"] = to_string(cfg.mode);
    j["ratio"] = cfg.ratio;
    j["window"] = cfg.window;
    j["budget"] = cfg.budget;
    if (cfg.k2)
        j["k2"] = *cfg.k2;
    else
        j["k2"] = nullptr;
    j["search_bound"] = cfg.search_bound;
    return j;
}

inline Json witness_to_json(const VerifiedWitness& w) {
    Json j;
    j["a"] = w.a;
    j["h"] = w.h;
    Json sums = Json::array();
    for (const auto& b : w.block_sums) {
        Json e;
        e["i"] = b.i;
        e["j"] = b.j;
        e["value"] = b.value;
        sums.push_back(std::move(e));
    }
    j["block_sums"] = std::move(sums);
    Json certs = Json::array();
    for (const auto& c : w.certificates) {
        Json e;
        e["i"] = c.i;
        e["j"] = c.j;
        e["value"] = c.value;
        if (c.kind == CertificateKind::Block) {
            e["kind"] = "block";
            e["lo"] = c.block.lo;
            e["hi"] = c.block.hi;
        } else {
            e["kind"] = "subset";
            e["elements"] = c.subset;
        }
        certs.push_back(std::move(e));
    }
    j["certificates"] = std::move(certs);
    return j;
}

inline Json failure_to_json(const std::optional<StageFailure>& f) {
    if (!f) return nullptr;
    Json j;
    j["stage"] = f->stage;
    j["name"] = f->name;
    j["reason"] = f->reason;
    return j;
}

inline Json report_to_json(const PipelineReport& report) {
    Json j;
    j["config"] = config_to_json(report.config);
    j["outcome"] = report.success ? "witness" : "failure";
    j["witness"] = report.witness ? witness_to_json(*report.witness) : Json(nullptr);

    Json d;
    if (report.faithful) {
        const auto& f = *report.faithful;
        d["mode"] = "faithful";
        d["partial_sums_produced"] = f.partial_sums_produced;
        d["source_truncated_by_overflow"] = f.source_truncated_by_overflow;
        Json adm;
        adm["values"] = f.admissible_values;
        Json choices = Json::array();
        for (const auto& c : f.admissible_choices) {
            Json e;
            e["prime"] = c.prime;
            e["residue"] = c.residue;
            e["survivors"] = c.survivors;
            choices.push_back(std::move(e));
        }
        adm["choices"] = std::move(choices);
        d["admissible"] = std::move(adm);
        Json lac;
        lac["ratio"] = report.config.ratio;
        lac["values"] = f.lacunary_values;
        d["lacunary"] = std::move(lac);
        Json rb;
        rb["value"] = f.ramsey_bound_value;
        rb["exact"] = f.ramsey_bound_exact;
        rb["saturated"] = f.ramsey_bound_saturated;
        d["ramsey_bound"] = std::move(rb);
        Json graph;
        graph["vertices"] = f.graph_vertices;
        graph["blue_edges"] = f.blue_edges;
        graph["red_edges"] = f.red_edges;
        d["graph"] = std::move(graph);
        Json clique;
        clique["blue_found"] = f.blue_clique_found;
        clique["blue"] = f.blue_clique_found ? Json(f.blue_clique) : Json(nullptr);
        clique["red_checked"] = f.red_clique_checked;
        clique["red_found"] = f.red_clique_found;
        clique["red"] = f.red_clique_found ? Json(f.red_clique) : Json(nullptr);
        d["clique"] = std::move(clique);
        d["largest_lacunary_difference"] =
            f.largest_lacunary_difference ? Json(*f.largest_lacunary_difference)
                                          : Json(nullptr);
        d["largest_census_gap"] = f.largest_census_gap;
        d["largest_pol_member"] = f.largest_pol_member;
    } else if (report.search) {
        const auto& s = *report.search;
        d["mode"] = "search";
        d["search_bound_used"] = s.search_bound_used;
        d["candidates"] = s.candidates;
        d["nodes_explored"] = s.nodes_explored;
        d["largest_census_gap"] = s.largest_census_gap;
        d["largest_pol_member"] = s.largest_pol_member;
    }
    d["failure"] = failure_to_json(report.failure);
    d["verification_violations"] = report.verification_violations;
    j["diagnostics"] = std::move(d);
    return j;
}

inline std::string report_human(const PipelineReport& report) {
    std::ostringstream os;
    os << "pipeline " << to_string(report.config.mode) << " over "
       << report.config.spec.to_string() << ", k=" << report.config.k << ", pol(limit="
       << report.config.limit.value() << ", threshold=" << report.config.threshold
       << ")\n";
    if (report.success) {
        const auto& w = *report.witness;
        os << "outcome: witness\n  a =";
        for (uint64_t v : w.a) os << ' ' << v;
        os << "\n  h =";
        for (uint64_t v : w.h) os << ' ' << v;
        os << "\n  block sums:";
        for (const auto& b : w.block_sums)
            os << " (" << b.i << "," << b.j << ")=" << b.value;
        os << "\n  every block sum is even, distinct, a finite sum of the "
              "generators, and an empirical de Polignac number\n";
    } else {
        os << "outcome: failure\n";
        if (report.failure)
            os << "  stage " << report.failure->stage << " (" << report.failure->name
               << "): " << report.failure->reason << "\n";
        for (const auto& v : report.verification_violations) os << "  violation: " << v << "\n";
    }
    if (report.faithful) {
        const auto& f = *report.faithful;
        os << "  partial sums pulled: " << f.partial_sums_produced
           << (f.source_truncated_by_overflow ? " (truncated by 64-bit overflow)" : "")
           << "\n  admissible:";
        for (uint64_t v : f.admissible_values) os << ' ' << v;
        os << "\n  lacunary:";
        for (uint64_t v : f.lacunary_values) os << ' ' << v;
        os << "\n  graph: " << f.graph_vertices << " vertices, " << f.blue_edges
           << " blue / " << f.red_edges << " red edges\n";
        if (f.largest_lacunary_difference)
            os << "  largest lacunary difference " << *f.largest_lacunary_difference
               << " vs largest census gap " << f.largest_census_gap << "\n";
    }
    if (report.search) {
        const auto& s = *report.search;
        os << "  candidates (" << s.candidates.size() << "):";
        for (uint64_t v : s.candidates) os << ' ' << v;
        os << "\n  nodes explored: " << s.nodes_explored << ", bound "
           << s.search_bound_used << "\n";
    }
    return os.str();
}

} // namespace polignac
