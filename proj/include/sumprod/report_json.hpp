#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "sumprod/check_record.hpp"
#include "sumprod/ledger.hpp"
#include "sumprod/quantities.hpp"
#include "sumprod/search.hpp"

namespace sumprod {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// Exact values travel as numerator/denominator strings next to the decimal,
// so reports reconstruct the rationals losslessly.
inline ojson to_json(const ReportValue& v) {
    ojson j;
    j["decimal"] = v.approx;
    if (v.exact) {
        j["num"] = v.exact->numerator().get_str();
        j["den"] = v.exact->denominator().get_str();
    }
    return j;
}

inline ojson to_json(const Rational& r) {
    ojson j;
    j["decimal"] = r.to_double();
    j["num"] = r.numerator().get_str();
    j["den"] = r.denominator().get_str();
    return j;
}

inline ojson to_json(const RSet& a) {
    ojson j = ojson::array();
    for (const auto& x : a) j.push_back(x.str());
    return j;
}

inline ojson to_json(const CheckRecord& r) {
    ojson j;
    j["check_id"] = r.check_id;
    j["kind"] = name(r.kind);
    j["direction"] = name(r.direction);
    j["lhs"] = to_json(r.lhs);
    j["rhs_core"] = to_json(r.rhs_core);
    j["ratio"] = r.ratio;
    j["verdict"] = name(r.verdict);
    j["inputs_digest"] = r.inputs_digest;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline ojson to_json(const CheckSummary& s) {
    ojson j;
    j["check_id"] = s.check_id;
    j["count"] = s.count;
    j["min_ratio"] = s.min_ratio;
    j["max_ratio"] = s.max_ratio;
    j["median_ratio"] = s.median_ratio;
    return j;
}

inline ojson to_json(const SuiteResult& s) {
    ojson j;
    j["corpus_tag"] = s.corpus_tag;
    j["exact_failures"] = s.exact_failures;
    j["min_lower_ratio"] = s.min_lower_ratio;
    ojson recs = ojson::array();
    for (const auto& r : s.records) recs.push_back(to_json(r));
    j["records"] = recs;
    ojson sums = ojson::array();
    for (const auto& r : s.summaries) sums.push_back(to_json(r));
    j["summary"] = sums;
    return j;
}

inline ojson to_json(const DoublingWitness& w) {
    ojson j;
    j["value"] = to_json(w.value);
    j["witness"] = to_json(w.witness);
    j["family"] = w.family_tag;
    j["searched"] = w.searched;
    return j;
}

inline ojson to_json(const SearchResult& s) {
    ojson j;
    j["best_set"] = to_json(s.best_set);
    j["best_score"] = s.best_score;
    j["evaluations"] = s.evaluations;
    j["config_digest"] = s.config_digest;
    j["rng"] = s.rng_algorithm;
    ojson trace = ojson::array();
    for (const auto& t : s.trace) {
        ojson e;
        e["step"] = t.step;
        e["score"] = t.score;
        e["quantity"] = t.quantity;
        e["size"] = t.size;
        trace.push_back(e);
    }
    j["trace"] = trace;
    return j;
}

inline ojson make_report(const std::string& command, ojson inputs, ojson results,
                         ojson timing, bool omit_timing) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    j["results"] = std::move(results);
    if (!omit_timing) j["timing"] = std::move(timing);
    return j;
}

// CSV projection of check records: one row per record.
inline std::string records_to_csv(const std::vector<CheckRecord>& records) {
    std::string out = "check_id,kind,lhs,rhs_core,ratio,verdict\n";
    for (const auto& r : records) {
        out += r.check_id;
        out += ",";
        out += name(r.kind);
        out += ",";
        out += std::to_string(r.lhs.approx);
        out += ",";
        out += std::to_string(r.rhs_core.approx);
        out += ",";
        out += std::to_string(r.ratio);
        out += ",";
        out += name(r.verdict);
        out += "\n";
    }
    return out;
}

}  // namespace sumprod
