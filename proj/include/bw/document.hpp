#ifndef BW_DOCUMENT_HPP
#define BW_DOCUMENT_HPP

#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <bw/certificate.hpp>
#include <bw/error.hpp>
#include <bw/ideals.hpp>
#include <bw/series.hpp>
#include <bw/witnesses/brute_force.hpp>

// JSON certificate documents, schema version "1".
//
//   {
//     "schema_version": "1",
//     "config":      { "series": ..., "construction": ..., parameters... },
//     "outcome":     "certificate" | "verdict" | "value" | "exhausted",
//     "certificate": { "construction", "stem", "checkpoints", "interval"?, "stage_boundaries"? },
//     "verdict":     { "kind", "bound", "interval_count", "horizon", "ideal", "talagrand",
//                      "threshold", "exceed_count", "contained_intervals" },
//     "value":       { "n", "alphabet", "bound" },
//     "message":     "...",
//     "timing":      { "elapsed_ms": ... }
//   }
//
// A stem is {"kind": "selection", "bits": "0110..."} or
// {"kind": "subseq" | "rearr", "values": [...]}; a checkpoint is
// {"l", "measure": "partial_sum" | "term", "norm", "bound", "relation": "gt" | "ge" | "le", "label"}.

namespace bw
{

using json = nlohmann::json;

inline constexpr const char *schema_version = "1";

inline json stem_to_json(const indexer_stem &stem)
{
    json j;
    j["kind"] = std::string(stem_kind_name(stem));
    if (const auto *sel = std::get_if<selection_stem>(&stem)) {
        std::string bits;
        for (auto b : sel->bits()) {
            bits.push_back(static_cast<char>('0' + b));
        }
        j["bits"] = bits;
    } else if (const auto *sub = std::get_if<subseq_stem>(&stem)) {
        j["values"] = sub->values();
    } else {
        j["values"] = std::get<rearr_stem>(stem).values();
    }
    return j;
}

inline indexer_stem stem_from_json(const json &j)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "selection") {
        return selection_stem::parse(j.at("bits").get<std::string>());
    }
    if (kind == "subseq") {
        return subseq_stem{j.at("values").get<std::vector<std::size_t>>()};
    }
    if (kind == "rearr") {
        return rearr_stem{j.at("values").get<std::vector<std::size_t>>()};
    }
    throw schema_mismatch("unknown stem kind '" + kind + "'");
}

inline json certificate_to_json(const witness_certificate &cert)
{
    json j;
    j["construction"] = cert.construction;
    j["stem"] = stem_to_json(cert.stem);
    j["checkpoints"] = json::array();
    for (const auto &c : cert.checkpoints) {
        j["checkpoints"].push_back({{"l", c.l},
                                    {"measure", c.what == measure::term ? "term" : "partial_sum"},
                                    {"norm", c.norm},
                                    {"bound", c.bound},
                                    {"relation", std::string(relation_name(c.rel))},
                                    {"label", c.label}});
    }
    if (cert.interval_index && cert.interval_range) {
        j["interval"] = {{"k", *cert.interval_index}, {"lo", cert.interval_range->lo}, {"hi", cert.interval_range->hi}};
    }
    if (!cert.stage_boundaries.empty()) {
        j["stage_boundaries"] = cert.stage_boundaries;
    }
    return j;
}

inline witness_certificate certificate_from_json(const json &j)
{
    witness_certificate cert{j.at("construction").get<std::string>(), stem_from_json(j.at("stem")), {}, {}, {}, {}};
    for (const auto &c : j.at("checkpoints")) {
        const auto m = c.at("measure").get<std::string>();
        if (m != "term" && m != "partial_sum") {
            throw schema_mismatch("unknown checkpoint measure '" + m + "'");
        }
        cert.checkpoints.push_back({c.at("l").get<std::size_t>(), m == "term" ? measure::term : measure::partial_sum,
                                    c.at("norm").get<double>(), c.at("bound").get<double>(),
                                    parse_relation(c.at("relation").get<std::string>()),
                                    c.value("label", std::string{})});
    }
    if (j.contains("interval")) {
        const auto &iv = j["interval"];
        cert.interval_index = iv.at("k").get<std::size_t>();
        cert.interval_range = int_range{iv.at("lo").get<std::size_t>(), iv.at("hi").get<std::size_t>()};
    }
    if (j.contains("stage_boundaries")) {
        cert.stage_boundaries = j["stage_boundaries"].get<std::vector<std::size_t>>();
    }
    return cert;
}

inline talagrand_sequence talagrand_by_name(const std::string &name)
{
    if (name == "geometric") {
        return talagrand_sequence::geometric();
    }
    if (name == "linear") {
        return talagrand_sequence::linear();
    }
    throw unknown_name("unknown talagrand sequence '" + name + "'");
}

inline ideal_spec ideal_by_name(const std::string &name)
{
    if (name == "fin") {
        return ideal_spec::fin();
    }
    if (name == "density") {
        return ideal_spec::density();
    }
    throw unknown_name("unknown ideal '" + name + "'");
}

struct verify_result {
    enum class status { ok, failed, exhausted };

    status outcome;
    std::optional<std::size_t> failing_l;
    std::optional<std::size_t> failing_checkpoint;
    std::string message;

    int exit_code() const noexcept
    {
        switch (outcome) {
            case status::ok:
                return 0;
            case status::failed:
                return 1;
            case status::exhausted:
                return 2;
        }
        return 1;
    }
};

namespace detail
{

inline verify_result verify_document_impl(const json &doc)
{
    using st = verify_result::status;
    if (!doc.is_object() || !doc.contains("schema_version")) {
        throw schema_mismatch("document has no schema_version");
    }
    if (doc["schema_version"] != schema_version) {
        throw schema_mismatch("unsupported schema version " + doc["schema_version"].dump() + ", expected \""
                              + schema_version + "\"");
    }
    const auto &config = doc.at("config");
    const auto outcome = doc.at("outcome").get<std::string>();
    if (outcome == "exhausted") {
        return {st::exhausted, std::nullopt, std::nullopt, doc.value("message", std::string{})};
    }
    const auto series = catalog_series(config.at("series").get<std::string>());

    if (outcome == "value") {
        const auto &v = doc.at("value");
        const auto alpha = v.at("alphabet").get<std::string>() == "01" ? pattern_alphabet::zero_one
                                                                        : pattern_alphabet::signed_ternary;
        const double recomputed = uniform_bound_bruteforce(series, v.at("n").get<std::size_t>(), alpha);
        if (!(std::abs(recomputed - v.at("bound").get<double>()) <= recompute_tolerance)) {
            return {st::failed, std::nullopt, std::nullopt, "uniform bound recomputes to " + std::to_string(recomputed)};
        }
        return {st::ok, std::nullopt, std::nullopt, "ok"};
    }
    if (outcome != "certificate" && outcome != "verdict") {
        throw schema_mismatch("unknown outcome '" + outcome + "'");
    }

    const auto cert = certificate_from_json(doc.at("certificate"));
    if (const auto fail = check_certificate(series, cert)) {
        return {st::failed, fail->l, fail->checkpoint, fail->reason};
    }
    if (outcome == "verdict") {
        const auto &v = doc.at("verdict");
        const auto seq = talagrand_by_name(v.at("talagrand").get<std::string>());
        const auto trace = partial_sums(series, cert.stem, v.at("horizon").get<std::size_t>());
        const auto rep = exceedance(trace, v.at("bound").get<double>(), seq);
        const auto threshold = v.at("threshold").get<std::size_t>();
        const auto kind = rep.exceed_set.empty() ? boundedness_verdict::kind::bounded_evidence
                          : rep.contained_intervals.size() >= threshold
                              ? boundedness_verdict::kind::i_unbounded_evidence
                              : boundedness_verdict::kind::undecided;
        if (verdict_name(kind) != v.at("kind").get<std::string>()
            || rep.contained_intervals != v.at("contained_intervals").get<std::vector<std::size_t>>()) {
            return {st::failed, std::nullopt, std::nullopt, "verdict does not recompute: got " + verdict_name(kind) + " with "
                                                  + std::to_string(rep.contained_intervals.size()) + " intervals"};
        }
    }
    return {st::ok, std::nullopt, std::nullopt, "ok"};
}

} // namespace detail

// Re-derives every recorded quantity from the catalog and the stem alone.
inline verify_result verify_document(const json &doc)
{
    try {
        return detail::verify_document_impl(doc);
    } catch (const json::exception &e) {
        throw schema_mismatch(std::string("malformed document: ") + e.what());
    } catch (const invalid_stem &e) {
        throw schema_mismatch(std::string("malformed stem: ") + e.what());
    }
}

inline json read_document(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw error("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw schema_mismatch(std::string("not a JSON document: ") + e.what());
    }
}

} // namespace bw

#endif
