#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sumprod/errors.hpp"
#include "sumprod/rational.hpp"

namespace sumprod {

// Finite set of rationals, stored strictly increasing. Immutable after
// construction; all set operations build new values.
class RSet {
public:
    using const_iterator = std::vector<Rational>::const_iterator;

    RSet() = default;
    RSet(std::initializer_list<Rational> init) : RSet(from_values(std::vector<Rational>(init))) {}

    static RSet from_values(std::vector<Rational> values) {
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        RSet s;
        s.elems_ = std::move(values);
        return s;
    }

    static RSet singleton(Rational v) {
        RSet s;
        s.elems_.push_back(std::move(v));
        return s;
    }

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const Rational& operator[](std::size_t i) const { return elems_[i]; }
    const_iterator begin() const { return elems_.begin(); }
    const_iterator end() const { return elems_.end(); }
    const std::vector<Rational>& values() const { return elems_; }

    bool contains(const Rational& x) const {
        return std::binary_search(elems_.begin(), elems_.end(), x);
    }
    bool contains_zero() const { return contains(Rational(0)); }
    bool all_positive() const { return elems_.empty() || elems_.front().is_positive(); }

    const Rational& min() const { return elems_.front(); }
    const Rational& max() const { return elems_.back(); }

    RSet without_zero() const {
        std::vector<Rational> out;
        out.reserve(elems_.size());
        for (const auto& x : elems_)
            if (!x.is_zero()) out.push_back(x);
        RSet s;
        s.elems_ = std::move(out);  // order preserved
        return s;
    }

    RSet positive_part() const {
        std::vector<Rational> out;
        for (const auto& x : elems_)
            if (x.is_positive()) out.push_back(x);
        RSet s;
        s.elems_ = std::move(out);
        return s;
    }

    // Elementwise 1/x; requires a zero-free set.
    RSet inverse() const {
        std::vector<Rational> out;
        out.reserve(elems_.size());
        for (const auto& x : elems_) out.push_back(x.inverse());
        return from_values(std::move(out));
    }

    RSet intersect(const RSet& other) const {
        std::vector<Rational> out;
        std::set_intersection(elems_.begin(), elems_.end(), other.elems_.begin(),
                              other.elems_.end(), std::back_inserter(out));
        RSet s;
        s.elems_ = std::move(out);
        return s;
    }

    bool subset_of(const RSet& other) const {
        return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(),
                             elems_.end());
    }

    bool operator==(const RSet& o) const { return elems_ == o.elems_; }
    auto operator<=>(const RSet& o) const {
        return std::lexicographical_compare_three_way(elems_.begin(), elems_.end(),
                                                      o.elems_.begin(), o.elems_.end());
    }

    std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i) out += ", ";
            out += elems_[i].str();
        }
        out += "}";
        return out;
    }

    // Canonical comma-separated form used by digests and file output.
    std::string canonical() const {
        std::string out;
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i) out += ",";
            out += elems_[i].str();
        }
        return out;
    }

private:
    std::vector<Rational> elems_;
};

using Point = std::pair<Rational, Rational>;

// Finite set of points in the rational plane.
class PlanarSet {
public:
    PlanarSet() = default;

    static PlanarSet from_points(std::vector<Point> pts) {
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        PlanarSet p;
        p.pts_ = std::move(pts);
        return p;
    }

    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const std::vector<Point>& points() const { return pts_; }
    auto begin() const { return pts_.begin(); }
    auto end() const { return pts_.end(); }

    bool contains(const Point& p) const {
        return std::binary_search(pts_.begin(), pts_.end(), p);
    }

    bool operator==(const PlanarSet& o) const { return pts_ == o.pts_; }

private:
    std::vector<Point> pts_;
};

inline PlanarSet cartesian(const RSet& a, const RSet& b) {
    std::vector<Point> pts;
    pts.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) pts.emplace_back(x, y);
    return PlanarSet::from_points(std::move(pts));
}

inline PlanarSet diagonal(const RSet& c) {
    std::vector<Point> pts;
    pts.reserve(c.size());
    for (const auto& x : c) pts.emplace_back(x, x);
    return PlanarSet::from_points(std::move(pts));
}

// Representation function: value -> positive multiplicity. Ordered by value
// so iteration is deterministic.
class CountMap {
public:
    using map_type = std::map<Rational, long long>;
    using const_iterator = map_type::const_iterator;

    void add(const Rational& x, long long k = 1) { counts_[x] += k; }

    long long at(const Rational& x) const {
        auto it = counts_.find(x);
        return it == counts_.end() ? 0 : it->second;
    }

    long long total() const {
        long long t = 0;
        for (const auto& [k, v] : counts_) t += v;
        return t;
    }

    long long max_count() const {
        long long m = 0;
        for (const auto& [k, v] : counts_) m = std::max(m, v);
        return m;
    }

    std::size_t support_size() const { return counts_.size(); }
    const_iterator begin() const { return counts_.begin(); }
    const_iterator end() const { return counts_.end(); }

    RSet support() const {
        std::vector<Rational> out;
        out.reserve(counts_.size());
        for (const auto& [k, v] : counts_) out.push_back(k);
        return RSet::from_values(std::move(out));
    }

private:
    map_type counts_;
};

// --- set file format ---------------------------------------------------
// UTF-8 text, one element per line ("p/q" or integer); blank lines and
// lines starting with '#' are ignored.

inline RSet read_set(std::istream& in, const std::string& origin = "<stream>") {
    std::vector<Rational> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line[i] == '#') continue;
        try {
            values.push_back(Rational::parse(line));
        } catch (const ParseError& e) {
            throw ParseError(origin + ":" + std::to_string(lineno) + ": " + e.what());
        } catch (const DomainError& e) {
            throw ParseError(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return RSet::from_values(std::move(values));
}

inline RSet read_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open set file: " + path);
    return read_set(in, path);
}

inline void write_set(std::ostream& out, const RSet& a, const std::string& comment = "") {
    if (!comment.empty()) out << "# " << comment << "\n";
    for (const auto& x : a) out << x.str() << "\n";
}

inline void write_set_file(const std::string& path, const RSet& a,
                           const std::string& comment = "") {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write set file: " + path);
    write_set(out, a, comment);
}

// FNV-1a content hash used for reproducer digests.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string digest_sets(std::initializer_list<const RSet*> sets) {
    std::string blob;
    for (const RSet* s : sets) {
        blob += s->canonical();
        blob += ";";
    }
    std::uint64_t h = fnv1a64(blob);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace sumprod
