#pragma once

#include <optional>
#include <string>
#include <utility>

#include "sumprod/rational.hpp"

namespace sumprod {

enum class CheckKind { exact, measured };
enum class Direction { lower, upper };
enum class Verdict { pass, fail, report_only, skipped };

inline const char* name(CheckKind k) { return k == CheckKind::exact ? "exact" : "measured"; }
inline const char* name(Direction d) { return d == Direction::lower ? "lower" : "upper"; }
inline const char* name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "FAIL";
        case Verdict::report_only: return "report-only";
        case Verdict::skipped: return "skipped";
    }
    return "?";
}

// A numeric report field: decimal approximation always, exact fraction
// whenever the quantity is exact.
struct ReportValue {
    double approx = 0.0;
    std::optional<Rational> exact;

    ReportValue() = default;
    ReportValue(double a) : approx(a) {}  // NOLINT
    ReportValue(const Rational& r) : approx(r.to_double()), exact(r) {}  // NOLINT
    ReportValue(const mpz_class& z) : approx(z.get_d()), exact(Rational(z)) {}  // NOLINT
};

// One verified or measured instance of a labeled inequality. Exact checks
// carry a hard verdict; measured ones report the constant the Vinogradov
// symbol hides.
struct CheckRecord {
    std::string check_id;
    CheckKind kind = CheckKind::measured;
    Direction direction = Direction::lower;
    ReportValue lhs;
    ReportValue rhs_core;
    double ratio = 0.0;  // lhs / rhs_core
    Verdict verdict = Verdict::report_only;
    std::string inputs_digest;
    std::string note;

    bool failed() const { return verdict == Verdict::fail; }
};

inline double safe_ratio(double lhs, double rhs) {
    if (rhs == 0.0) return 0.0;
    return lhs / rhs;
}

inline CheckRecord make_measured(std::string id, Direction dir, ReportValue lhs,
                                 ReportValue rhs_core, std::string digest,
                                 std::string note = "") {
    CheckRecord r;
    r.check_id = std::move(id);
    r.kind = CheckKind::measured;
    r.direction = dir;
    r.lhs = std::move(lhs);
    r.rhs_core = std::move(rhs_core);
    r.ratio = safe_ratio(r.lhs.approx, r.rhs_core.approx);
    r.verdict = Verdict::report_only;
    r.inputs_digest = std::move(digest);
    r.note = std::move(note);
    return r;
}

// Exact check asserting lhs <= rhs (direction upper) or lhs >= rhs (lower).
inline CheckRecord make_exact(std::string id, Direction dir, const Rational& lhs,
                              const Rational& rhs, std::string digest, std::string note = "") {
    CheckRecord r;
    r.check_id = std::move(id);
    r.kind = CheckKind::exact;
    r.direction = dir;
    r.lhs = ReportValue(lhs);
    r.rhs_core = ReportValue(rhs);
    r.ratio = safe_ratio(r.lhs.approx, r.rhs_core.approx);
    bool ok = dir == Direction::upper ? lhs <= rhs : lhs >= rhs;
    r.verdict = ok ? Verdict::pass : Verdict::fail;
    r.inputs_digest = std::move(digest);
    r.note = std::move(note);
    return r;
}

inline CheckRecord make_skipped(std::string id, std::string digest, std::string reason) {
    CheckRecord r;
    r.check_id = std::move(id);
    r.kind = CheckKind::measured;
    r.verdict = Verdict::skipped;
    r.inputs_digest = std::move(digest);
    r.note = std::move(reason);
    return r;
}

}  // namespace sumprod
