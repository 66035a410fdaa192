#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumprod/errors.hpp"
#include "sumprod/generators.hpp"
#include "sumprod/parallel.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/rset.hpp"
#include "sumprod/setops.hpp"

namespace sumprod {

// Growth quantities the search can minimize, normalized by |A|^e.
enum class ObjectiveQuantity {
    prod_plus_set,     // |AA + A|
    ratio_plus_set,    // |A:A + A|
    prod_plus_prod,    // |AA + AA|
    ratio_plus_ratio,  // |A:A + A:A|
    sumset_size,       // |A + A|
};

inline const char* name(ObjectiveQuantity q) {
    switch (q) {
        case ObjectiveQuantity::prod_plus_set: return "AA+A";
        case ObjectiveQuantity::ratio_plus_set: return "A:A+A";
        case ObjectiveQuantity::prod_plus_prod: return "AA+AA";
        case ObjectiveQuantity::ratio_plus_ratio: return "A:A+A:A";
        case ObjectiveQuantity::sumset_size: return "A+A";
    }
    return "?";
}

inline std::optional<ObjectiveQuantity> objective_by_name(const std::string& s) {
    for (ObjectiveQuantity q :
         {ObjectiveQuantity::prod_plus_set, ObjectiveQuantity::ratio_plus_set,
          ObjectiveQuantity::prod_plus_prod, ObjectiveQuantity::ratio_plus_ratio,
          ObjectiveQuantity::sumset_size})
        if (s == name(q)) return q;
    return std::nullopt;
}

struct Objective {
    ObjectiveQuantity quantity = ObjectiveQuantity::prod_plus_set;
    Rational exponent = Rational(3, 2);  // score = quantity / |A|^exponent

    Objective() = default;
    Objective(ObjectiveQuantity q, Rational e) : quantity(q), exponent(std::move(e)) {
        if (!(exponent > Rational(0))) throw DomainError("Objective: exponent must be > 0");
    }
};

inline bool objective_applicable(const RSet& a, ObjectiveQuantity q) {
    if (a.empty()) return false;
    if (q == ObjectiveQuantity::sumset_size) return true;
    return !a.contains_zero();
}

inline long long objective_quantity(const RSet& a, ObjectiveQuantity q) {
    if (!objective_applicable(a, q))
        throw DomainError(std::string("objective ") + name(q) + " not applicable");
    switch (q) {
        case ObjectiveQuantity::prod_plus_set:
            return static_cast<long long>(sumset(product_set(a, a), a).size());
        case ObjectiveQuantity::ratio_plus_set:
            return static_cast<long long>(sumset(ratio_set(a, a), a).size());
        case ObjectiveQuantity::prod_plus_prod: {
            RSet aa = product_set(a, a);
            return static_cast<long long>(sumset(aa, aa).size());
        }
        case ObjectiveQuantity::ratio_plus_ratio: {
            RSet qa = ratio_set(a, a);
            return static_cast<long long>(sumset(qa, qa).size());
        }
        case ObjectiveQuantity::sumset_size:
            return static_cast<long long>(sumset(a, a).size());
    }
    throw DomainError("objective_quantity: unreachable");
}

inline double score(const RSet& a, const Objective& obj) {
    long long q = objective_quantity(a, obj.quantity);
    return static_cast<double>(q) /
           std::pow(static_cast<double>(a.size()), obj.exponent.to_double());
}

// Exact score comparison: q1/|A1|^e < q2/|A2|^e with e = p/d rational
// becomes q1^d |A2|^p < q2^d |A1|^p over integers.
inline bool score_less(long long q1, std::size_t n1, long long q2, std::size_t n2,
                       const Rational& e) {
    unsigned long p = e.numerator().get_ui();
    unsigned long d = e.denominator().get_ui();
    mpz_class l, r, t;
    mpz_ui_pow_ui(l.get_mpz_t(), static_cast<unsigned long>(q1), d);
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(n2), p);
    l *= t;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q2), d);
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(n1), p);
    r *= t;
    return l < r;
}

struct TraceEntry {
    long step = 0;
    double score = 0;
    long long quantity = 0;
    long long size = 0;
};

struct SearchResult {
    RSet best_set;
    double best_score = 0;
    std::vector<TraceEntry> trace;  // accepted steps of the winning restart
    std::string config_digest;
    std::string rng_algorithm = kRngAlgorithm;
    long evaluations = 0;
};

struct SearchConfig {
    Objective objective;
    FamilySpec init;
    long budget = 1000;  // objective evaluations, the initial set included
    int restarts = 1;
    std::uint64_t seed = 0;
    NeighborRules rules;
    int jobs = 1;

    std::string canonical() const {
        std::string s = std::string("objective=") + name(objective.quantity) +
                        ";e=" + objective.exponent.str() + ";init=" + init.str() +
                        ";budget=" + std::to_string(budget) +
                        ";restarts=" + std::to_string(restarts) + ";seed=" + std::to_string(seed) +
                        ";window=" + std::to_string(rules.window_lo) + ".." +
                        std::to_string(rules.window_hi) +
                        ";card=" + (rules.cardinality_preserving ? "1" : "0");
        return s;
    }
};

namespace detail {

struct RestartOutcome {
    RSet best;
    long long quantity = 0;
    std::vector<TraceEntry> trace;
    long evaluations = 0;
    bool valid = false;
};

// Steepest descent with full neighborhood evaluation. Stops when no
// neighbor improves or the evaluation budget cannot cover the next
// neighborhood (partial neighborhoods would make acceptance order-dependent).
inline RestartOutcome descend(RSet start, const SearchConfig& cfg) {
    RestartOutcome out;
    if (!objective_applicable(start, cfg.objective.quantity)) return out;
    out.valid = true;
    long long q = objective_quantity(start, cfg.objective.quantity);
    out.evaluations = 1;
    out.best = std::move(start);
    out.quantity = q;
    out.trace.push_back({0, score(out.best, cfg.objective), q,
                         static_cast<long long>(out.best.size())});
    long step = 0;
    while (true) {
        std::vector<RSet> cand = neighbors(out.best, cfg.rules);
        std::erase_if(cand, [&](const RSet& s) {
            return !objective_applicable(s, cfg.objective.quantity);
        });
        if (cand.empty()) break;
        if (out.evaluations + static_cast<long>(cand.size()) > cfg.budget) break;
        std::optional<std::size_t> best_i;
        long long best_q = 0;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            long long cq = objective_quantity(cand[i], cfg.objective.quantity);
            ++out.evaluations;
            bool better =
                score_less(cq, cand[i].size(), best_i ? best_q : out.quantity,
                           best_i ? cand[*best_i].size() : out.best.size(), cfg.objective.exponent);
            if (better) {
                best_i = i;
                best_q = cq;
            }
        }
        if (!best_i) break;
        out.best = cand[*best_i];
        out.quantity = best_q;
        ++step;
        out.trace.push_back({step, score(out.best, cfg.objective), best_q,
                             static_cast<long long>(out.best.size())});
    }
    return out;
}

inline RSet restart_init(const SearchConfig& cfg, int restart) {
    if (restart == 0) return generate(cfg.init);
    if (cfg.init.kind == FamilyKind::random_int) {
        FamilySpec s = cfg.init;
        s.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(restart) * 2654435761ULL +
                                        cfg.init.seed);
        return generate(s);
    }
    // Deterministic perturbation of a structured init: replace `restart`
    // elements with fresh window candidates.
    RSet base = generate(cfg.init);
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(restart)));
    std::vector<Rational> vals(base.begin(), base.end());
    for (int e = 0; e < restart; ++e) {
        std::size_t victim = static_cast<std::size_t>(rng.below(vals.size()));
        for (int tries = 0; tries < 1024; ++tries) {
            Rational candidate(
                static_cast<long>(rng.range(cfg.rules.window_lo, cfg.rules.window_hi)));
            bool dup = false;
            for (const auto& v : vals)
                if (v == candidate) { dup = true; break; }
            if (!dup) { vals[victim] = candidate; break; }
        }
    }
    return RSet::from_values(std::move(vals));
}

}  // namespace detail

// Steepest-descent local search with deterministic restarts; the result is
// a pure function of the config.
inline SearchResult local_search(const SearchConfig& cfg) {
    if (cfg.budget < 1) throw DomainError("local_search: budget must be >= 1");
    if (cfg.restarts < 1) throw DomainError("local_search: restarts must be >= 1");
    std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
    parallel_for(cfg.jobs, outcomes.size(), [&](std::size_t r) {
        outcomes[r] = detail::descend(detail::restart_init(cfg, static_cast<int>(r)), cfg);
    });
    std::optional<std::size_t> winner;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        if (!outcomes[r].valid) continue;
        if (!winner) {
            winner = r;
            continue;
        }
        const auto& best = outcomes[*winner];
        const auto& cur = outcomes[r];
        if (score_less(cur.quantity, cur.best.size(), best.quantity, best.best.size(),
                       cfg.objective.exponent) ||
            (!score_less(best.quantity, best.best.size(), cur.quantity, cur.best.size(),
                         cfg.objective.exponent) &&
             cur.best < best.best)) {
            winner = r;
        }
    }
    if (!winner) throw DomainError("local_search: infeasible init for the objective");
    SearchResult res;
    res.best_set = outcomes[*winner].best;
    res.best_score = score(res.best_set, cfg.objective);
    res.trace = outcomes[*winner].trace;
    res.config_digest = [&] {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(cfg.canonical())));
        return std::string(buf);
    }();
    for (const auto& o : outcomes) res.evaluations += o.evaluations;
    return res;
}

}  // namespace sumprod
