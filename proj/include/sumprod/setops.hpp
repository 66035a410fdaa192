#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumprod/errors.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/rset.hpp"

namespace sumprod {

enum class BinOpKind { sum, difference, product, ratio };
enum class Operation { additive, multiplicative };
enum class ConvKind { sum, correlation };
enum class PlanarOpKind { sum, difference, coordinate_product };

inline const char* name(BinOpKind k) {
    switch (k) {
        case BinOpKind::sum: return "sum";
        case BinOpKind::difference: return "difference";
        case BinOpKind::product: return "product";
        case BinOpKind::ratio: return "ratio";
    }
    return "?";
}

inline const char* name(Operation op) {
    return op == Operation::additive ? "additive" : "multiplicative";
}

// Image set {a o b : a in A, b in B}. Ratio requires a zero-free right
// operand.
inline RSet setop(const RSet& a, const RSet& b, BinOpKind kind) {
    if (kind == BinOpKind::ratio && b.contains_zero())
        throw DomainError("setop: ratio with 0 in the denominator set");
    std::vector<Rational> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
        for (const auto& y : b) {
            switch (kind) {
                case BinOpKind::sum: out.push_back(x + y); break;
                case BinOpKind::difference: out.push_back(x - y); break;
                case BinOpKind::product: out.push_back(x * y); break;
                case BinOpKind::ratio: out.push_back(x / y); break;
            }
        }
    }
    return RSet::from_values(std::move(out));
}

inline RSet sumset(const RSet& a, const RSet& b) { return setop(a, b, BinOpKind::sum); }
inline RSet difference_set(const RSet& a, const RSet& b) { return setop(a, b, BinOpKind::difference); }
inline RSet product_set(const RSet& a, const RSet& b) { return setop(a, b, BinOpKind::product); }
inline RSet ratio_set(const RSet& a, const RSet& b) { return setop(a, b, BinOpKind::ratio); }

inline RSet dilate(const RSet& a, const Rational& x) {
    if (x.is_zero()) throw DomainError("dilate: zero dilation");
    std::vector<Rational> out;
    out.reserve(a.size());
    for (const auto& v : a) out.push_back(v * x);
    return RSet::from_values(std::move(out));
}

inline RSet translate(const RSet& a, const Rational& t) {
    std::vector<Rational> out;
    out.reserve(a.size());
    for (const auto& v : a) out.push_back(v + t);
    return RSet::from_values(std::move(out));
}

// Representation functions of Eq.-(1) type, as count maps over pairs:
//   sum:          x -> #{(a,b) : a o b = x}
//   correlation:  additive x -> #{(a,b) : b - a = x},
//                 multiplicative x -> #{(a,b) : a = x b}  (= |A ∩ xB| for x != 0).
// Total mass is |A||B| in every mode.
inline CountMap convolution(const RSet& a, const RSet& b, Operation op, ConvKind kind) {
    if (op == Operation::multiplicative && kind == ConvKind::correlation && b.contains_zero())
        throw DomainError("convolution: multiplicative correlation with 0 in B");
    CountMap m;
    for (const auto& x : a) {
        for (const auto& y : b) {
            if (op == Operation::additive) {
                m.add(kind == ConvKind::sum ? x + y : y - x);
            } else {
                m.add(kind == ConvKind::sum ? x * y : x / y);
            }
        }
    }
    return m;
}

// Multiplicative self-correlation is only finite on a zero-free set (0 lies
// in A ∩ xA for every x), so it is computed on A \ {0}.
inline CountMap self_correlation(const RSet& a, Operation op) {
    if (op == Operation::multiplicative && a.contains_zero())
        return convolution(a.without_zero(), a.without_zero(), op, ConvKind::correlation);
    return convolution(a, a, op, ConvKind::correlation);
}

// Fiber A_s: the set whose size is the self-correlation at s.
inline RSet fiber(const RSet& a, const Rational& s, Operation op) {
    if (op == Operation::additive) return a.intersect(translate(a, -s));
    if (s.is_zero()) throw DomainError("fiber: multiplicative fiber at 0");
    return a.intersect(dilate(a, s.inverse()));
}

struct EnergySpec {
    Operation op = Operation::additive;
    Rational alpha = Rational(2);
    long precision = 40;  // decimal digits used when alpha is not an integer

    EnergySpec() = default;
    EnergySpec(Operation o, Rational a, long prec = 40) : op(o), alpha(std::move(a)), precision(prec) {
        if (alpha < Rational(1)) throw DomainError("EnergySpec: alpha must be >= 1");
        if (precision < 15) throw DomainError("EnergySpec: precision must be >= 15");
    }
};

// Energy value: exact integer for integral alpha, otherwise a fixed-point
// approximant S/10^digits with certified error in [0, error_bound].
struct EnergyValue {
    bool exact = true;
    mpz_class integral = 0;
    Rational approximant = Rational(0);
    long digits = 0;
    Rational error_bound = Rational(0);

    double to_double() const { return exact ? integral.get_d() : approximant.to_double(); }
    std::string str() const { return exact ? integral.get_str() : approximant.str(); }
};

// E_alpha(A) = sum over the support of the self-correlation of r(x)^alpha.
// (Terms outside the support vanish, so restricting to it is equivalent.)
inline EnergyValue energy(const RSet& a, const EnergySpec& spec) {
    if (a.empty()) throw DomainError("energy: empty set");
    CountMap corr = self_correlation(a, spec.op);
    EnergyValue out;
    if (spec.alpha.is_integer()) {
        unsigned long k = spec.alpha.numerator().get_ui();
        mpz_class total = 0;
        for (const auto& [x, r] : corr) {
            mpz_class term;
            mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(r), k);
            total += term;
        }
        out.exact = true;
        out.integral = total;
        out.approximant = Rational(total);
        return out;
    }
    unsigned long p = spec.alpha.numerator().get_ui();
    unsigned long q = spec.alpha.denominator().get_ui();
    unsigned long d = static_cast<unsigned long>(spec.precision);
    mpz_class total = 0;
    // Count values repeat heavily; evaluate each distinct count once.
    std::map<long long, long long> histogram;
    for (const auto& [x, r] : corr) histogram[r] += 1;
    for (const auto& [r, mult] : histogram) {
        total += pow_floor_scaled(mpz_class(static_cast<long>(r)), p, q, d) *
                 static_cast<long>(mult);
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, d);
    out.exact = false;
    out.digits = static_cast<long>(d);
    out.approximant = Rational(total, scale);
    out.error_bound = Rational(mpz_class(static_cast<long>(corr.support_size())), scale);
    return out;
}

inline mpz_class energy_int(const RSet& a, long k, Operation op) {
    return energy(a, EnergySpec(op, Rational(k))).integral;
}

// Fiber-sum route to E_k: sum over (k-1)-tuples s of |A_s|^2. Exponential in
// k; kept as the independent second route to the count-map formula.
namespace detail {
inline void fiber_energy_rec(const RSet& a, const RSet& current, const std::vector<Rational>& shifts,
                             int levels_left, Operation op, mpz_class& total) {
    if (levels_left == 0) {
        mpz_class sz(static_cast<long>(current.size()));
        total += sz * sz;
        return;
    }
    for (const auto& s : shifts) {
        RSet next = op == Operation::additive ? current.intersect(translate(a, -s))
                                              : current.intersect(dilate(a, s.inverse()));
        if (next.empty()) continue;  // deeper intersections stay empty, terms vanish
        fiber_energy_rec(a, next, shifts, levels_left - 1, op, total);
    }
}
}  // namespace detail

inline mpz_class energy_fiber_oracle(const RSet& a, int k, Operation op,
                                     double budget = 1e8) {
    if (a.empty()) throw DomainError("energy_fiber_oracle: empty set");
    if (k < 2) throw DomainError("energy_fiber_oracle: k must be >= 2");
    double cost = 1;
    for (int i = 0; i < 2 * (k - 1); ++i) cost *= static_cast<double>(a.size());
    if (cost > budget) throw ResourceError("energy_fiber_oracle: |A|^(2(k-1)) exceeds budget");
    RSet base = op == Operation::multiplicative ? a.without_zero() : a;
    if (base.empty()) return 0;
    RSet shifts = self_correlation(base, op).support();
    mpz_class total = 0;
    detail::fiber_energy_rec(base, base, shifts.values(), k - 1, op, total);
    return total;
}

// E(A,B) = sum_x (AoA)(x)(BoB)(x).
inline mpz_class cross_energy(const RSet& a, const RSet& b, Operation op) {
    if (a.empty() || b.empty()) throw DomainError("cross_energy: empty input");
    CountMap ra = self_correlation(a, op);
    CountMap rb = self_correlation(b, op);
    mpz_class total = 0;
    for (const auto& [x, va] : ra) {
        long long vb = rb.at(x);
        if (vb) total += mpz_class(static_cast<long>(va)) * static_cast<long>(vb);
    }
    return total;
}

// sum_x (AoA)(x)(BoB)(x)(CoC)(x).
inline mpz_class triple_correlation(const RSet& a, const RSet& b, const RSet& c, Operation op) {
    if (a.empty() || b.empty() || c.empty()) throw DomainError("triple_correlation: empty input");
    CountMap ra = self_correlation(a, op);
    CountMap rb = self_correlation(b, op);
    CountMap rc = self_correlation(c, op);
    mpz_class total = 0;
    for (const auto& [x, va] : ra) {
        long long vb = rb.at(x);
        if (!vb) continue;
        long long vc = rc.at(x);
        if (!vc) continue;
        total += mpz_class(static_cast<long>(va)) * static_cast<long>(vb) * static_cast<long>(vc);
    }
    return total;
}

inline PlanarSet planar_setop(const PlanarSet& p, const PlanarSet& q, PlanarOpKind kind) {
    std::vector<Point> out;
    out.reserve(p.size() * q.size());
    for (const auto& [x1, y1] : p) {
        for (const auto& [x2, y2] : q) {
            switch (kind) {
                case PlanarOpKind::sum: out.emplace_back(x1 + x2, y1 + y2); break;
                case PlanarOpKind::difference: out.emplace_back(x1 - x2, y1 - y2); break;
                case PlanarOpKind::coordinate_product: out.emplace_back(x1 * x2, y1 * y2); break;
            }
        }
    }
    return PlanarSet::from_points(std::move(out));
}

}  // namespace sumprod
