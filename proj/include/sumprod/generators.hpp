#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sumprod/errors.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/rset.hpp"

namespace sumprod {

// Reported in every artifact that depends on pseudo-randomness.
inline constexpr const char* kRngAlgorithm = "mt19937_64/mask-rejection/v1";

// Deterministic bounded sampling on top of the standard-fixed mt19937_64
// stream. std::uniform_int_distribution is implementation-defined, so the
// rejection step is done by hand to keep runs reproducible everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw DomainError("Rng::below: zero bound");
        std::uint64_t mask = bound - 1;
        mask |= mask >> 1; mask |= mask >> 2; mask |= mask >> 4;
        mask |= mask >> 8; mask |= mask >> 16; mask |= mask >> 32;
        std::uint64_t x;
        do { x = eng_() & mask; } while (x >= bound);
        return x;
    }

    long long range(long long lo, long long hi) {  // inclusive
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 eng_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

enum class FamilyKind { ap, gp, interval, random_int, union_ap_gp, from_file, perturb };

inline const char* name(FamilyKind k) {
    switch (k) {
        case FamilyKind::ap: return "ap";
        case FamilyKind::gp: return "gp";
        case FamilyKind::interval: return "interval";
        case FamilyKind::random_int: return "random";
        case FamilyKind::union_ap_gp: return "union_ap_gp";
        case FamilyKind::from_file: return "file";
        case FamilyKind::perturb: return "perturb";
    }
    return "?";
}

struct FamilySpec {
    FamilyKind kind = FamilyKind::ap;
    long n = 1;
    Rational start = Rational(1);
    Rational step = Rational(1);    // ap/interval increment
    Rational ratio = Rational(2);   // gp ratio
    long long lo = 1, hi = 1000;    // random range / perturb pool
    std::uint64_t seed = 0;
    std::string path;               // from_file / perturb base
    int edits = 1;                  // perturb edit distance

    // Canonical textual form (also the parse format): "kind,key=value,...".
    std::string str() const {
        std::string s = name(kind);
        auto add = [&](const std::string& k, const std::string& v) { s += "," + k + "=" + v; };
        switch (kind) {
            case FamilyKind::ap:
            case FamilyKind::interval:
                add("n", std::to_string(n));
                add("start", start.str());
                if (kind == FamilyKind::ap) add("step", step.str());
                break;
            case FamilyKind::gp:
                add("n", std::to_string(n));
                add("start", start.str());
                add("ratio", ratio.str());
                break;
            case FamilyKind::random_int:
                add("n", std::to_string(n));
                add("lo", std::to_string(lo));
                add("hi", std::to_string(hi));
                add("seed", std::to_string(seed));
                break;
            case FamilyKind::union_ap_gp:
                add("n", std::to_string(n));
                add("start", start.str());
                add("step", step.str());
                add("ratio", ratio.str());
                break;
            case FamilyKind::from_file:
                add("path", path);
                break;
            case FamilyKind::perturb:
                add("path", path);
                add("edits", std::to_string(edits));
                add("lo", std::to_string(lo));
                add("hi", std::to_string(hi));
                add("seed", std::to_string(seed));
                break;
        }
        return s;
    }

    static FamilySpec parse(const std::string& text) {
        FamilySpec spec;
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            parts.push_back(text.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (parts.empty() || parts[0].empty()) throw ParseError("family: empty spec");
        const std::string& k = parts[0];
        if (k == "ap") spec.kind = FamilyKind::ap;
        else if (k == "gp") spec.kind = FamilyKind::gp;
        else if (k == "interval") spec.kind = FamilyKind::interval;
        else if (k == "random") spec.kind = FamilyKind::random_int;
        else if (k == "union_ap_gp") spec.kind = FamilyKind::union_ap_gp;
        else if (k == "file") spec.kind = FamilyKind::from_file;
        else if (k == "perturb") spec.kind = FamilyKind::perturb;
        else throw ParseError("family: unknown kind \"" + k + "\"");
        for (std::size_t i = 1; i < parts.size(); ++i) {
            auto eq = parts[i].find('=');
            if (eq == std::string::npos) throw ParseError("family: bad parameter \"" + parts[i] + "\"");
            std::string key = parts[i].substr(0, eq);
            std::string val = parts[i].substr(eq + 1);
            if (key == "n") spec.n = std::stol(val);
            else if (key == "start") spec.start = Rational::parse(val);
            else if (key == "step") spec.step = Rational::parse(val);
            else if (key == "ratio") spec.ratio = Rational::parse(val);
            else if (key == "lo") spec.lo = std::stoll(val);
            else if (key == "hi") spec.hi = std::stoll(val);
            else if (key == "seed") spec.seed = std::stoull(val);
            else if (key == "path") spec.path = val;
            else if (key == "edits") spec.edits = std::stoi(val);
            else throw ParseError("family: unknown parameter \"" + key + "\"");
        }
        return spec;
    }
};

inline RSet generate(const FamilySpec& spec) {
    if (spec.kind != FamilyKind::from_file && spec.kind != FamilyKind::perturb && spec.n < 1)
        throw DomainError("generate: n must be >= 1");
    switch (spec.kind) {
        case FamilyKind::ap:
        case FamilyKind::interval: {
            Rational step = spec.kind == FamilyKind::interval ? Rational(1) : spec.step;
            if (step.is_zero() && spec.n > 1) throw DomainError("generate: ap step must be nonzero");
            std::vector<Rational> vals;
            Rational v = spec.start;
            for (long i = 0; i < spec.n; ++i, v += step) vals.push_back(v);
            return RSet::from_values(std::move(vals));
        }
        case FamilyKind::gp: {
            if (spec.ratio.is_zero() || spec.ratio == Rational(1) || spec.ratio == Rational(-1))
                throw DomainError("generate: gp ratio must avoid {0, 1, -1}");
            if (spec.start.is_zero()) throw DomainError("generate: gp start must be nonzero");
            std::vector<Rational> vals;
            Rational v = spec.start;
            for (long i = 0; i < spec.n; ++i, v *= spec.ratio) vals.push_back(v);
            return RSet::from_values(std::move(vals));
        }
        case FamilyKind::random_int: {
            if (spec.hi - spec.lo + 1 < spec.n)
                throw DomainError("generate: range smaller than requested cardinality");
            Rng rng(spec.seed);
            std::vector<Rational> vals;
            RSet have;
            while (static_cast<long>(vals.size()) < spec.n) {
                Rational candidate(static_cast<long>(rng.range(spec.lo, spec.hi)));
                bool dup = false;
                for (const auto& v : vals)
                    if (v == candidate) { dup = true; break; }
                if (!dup) vals.push_back(candidate);
            }
            return RSet::from_values(std::move(vals));
        }
        case FamilyKind::union_ap_gp: {
            FamilySpec ap = spec;
            ap.kind = FamilyKind::ap;
            FamilySpec gp = spec;
            gp.kind = FamilyKind::gp;
            std::vector<Rational> vals;
            for (const auto& v : generate(ap)) vals.push_back(v);
            for (const auto& v : generate(gp)) vals.push_back(v);
            return RSet::from_values(std::move(vals));
        }
        case FamilyKind::from_file:
            return read_set_file(spec.path);
        case FamilyKind::perturb: {
            RSet base = read_set_file(spec.path);
            if (base.empty()) throw DomainError("generate: perturb base is empty");
            Rng rng(spec.seed);
            std::vector<Rational> vals(base.begin(), base.end());
            for (int e = 0; e < spec.edits; ++e) {
                std::size_t victim = static_cast<std::size_t>(rng.below(vals.size()));
                for (int tries = 0; tries < 1024; ++tries) {
                    Rational candidate(static_cast<long>(rng.range(spec.lo, spec.hi)));
                    bool dup = false;
                    for (const auto& v : vals)
                        if (v == candidate) { dup = true; break; }
                    if (!dup) { vals[victim] = candidate; break; }
                }
            }
            return RSet::from_values(std::move(vals));
        }
    }
    throw DomainError("generate: unreachable");
}

// --- search neighborhoods ------------------------------------------------

struct NeighborRules {
    bool allow_remove = true;
    bool allow_add = true;
    bool allow_replace = true;
    bool cardinality_preserving = false;  // restricts moves to replacements
    bool positive_only = true;
    long long window_lo = 1, window_hi = 64;      // integer candidate window
    std::vector<long> dilate_factors = {2, 3, 5};  // a*k and a/k candidates
};

// Candidate pool for add/replace moves: an integer window plus dilates and
// divisions of existing elements (where minimizers of multiplicative
// objectives live).
inline std::vector<Rational> candidate_pool(const RSet& a, const NeighborRules& rules) {
    std::vector<Rational> pool;
    for (long long v = rules.window_lo; v <= rules.window_hi; ++v)
        pool.push_back(Rational(static_cast<long>(v)));
    for (const auto& x : a) {
        for (long k : rules.dilate_factors) {
            pool.push_back(x * Rational(k));
            if (!x.is_zero()) pool.push_back(x / Rational(k));
        }
    }
    RSet dedup = RSet::from_values(std::move(pool));
    std::vector<Rational> out;
    for (const auto& v : dedup) {
        if (rules.positive_only && !v.is_positive()) continue;
        if (a.contains(v)) continue;
        out.push_back(v);
    }
    return out;
}

inline std::vector<RSet> neighbors(const RSet& a, const NeighborRules& rules) {
    if (a.empty()) throw DomainError("neighbors: empty set");
    std::vector<RSet> out;
    std::vector<Rational> base(a.begin(), a.end());
    std::vector<Rational> pool = candidate_pool(a, rules);

    if (!rules.cardinality_preserving && rules.allow_remove && a.size() >= 2) {
        for (std::size_t i = 0; i < base.size(); ++i) {
            std::vector<Rational> v;
            for (std::size_t j = 0; j < base.size(); ++j)
                if (j != i) v.push_back(base[j]);
            out.push_back(RSet::from_values(std::move(v)));
        }
    }
    if (!rules.cardinality_preserving && rules.allow_add) {
        for (const auto& c : pool) {
            std::vector<Rational> v = base;
            v.push_back(c);
            out.push_back(RSet::from_values(std::move(v)));
        }
    }
    if (rules.allow_replace) {
        for (std::size_t i = 0; i < base.size(); ++i) {
            for (const auto& c : pool) {
                std::vector<Rational> v;
                for (std::size_t j = 0; j < base.size(); ++j)
                    if (j != i) v.push_back(base[j]);
                v.push_back(c);
                out.push_back(RSet::from_values(std::move(v)));
            }
        }
    }
    return out;
}

}  // namespace sumprod
