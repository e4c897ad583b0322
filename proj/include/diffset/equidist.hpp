#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "diffset/rational.hpp"
#include "diffset/scheme.hpp"

namespace diffset {

// A multi characteristic function: a nonnegative integer weight per point.
struct MultiFunction {
    std::vector<int> values;

    MultiFunction() = default;
    explicit MultiFunction(std::vector<int> v) : values(std::move(v)) {}

    long long mass() const {
        return std::accumulate(values.begin(), values.end(), 0LL);
    }
    long long sum_of_squares() const {
        long long s = 0;
        for (int x : values) s += static_cast<long long>(x) * x;
        return s;
    }
    friend bool operator==(const MultiFunction& a, const MultiFunction& b) {
        return a.values == b.values;
    }
    friend bool operator<(const MultiFunction& a, const MultiFunction& b) {
        return a.values < b.values;
    }
};

struct Parameters {
    long long v = 0;
    long long k = 0;
    Rat lambda;
    // Set on the 1-point scheme, where no non-unit color constrains lambda.
    bool vacuous = false;

    friend bool operator==(const Parameters& a, const Parameters& b) {
        return a.v == b.v && a.k == b.k && a.lambda == b.lambda;
    }
};

struct InnerDistribution {
    std::vector<Rat> per_color;
};

namespace detail {

// One v^2 sweep accumulating (A_i g, g) for every color at once.
inline std::vector<long long> color_autocorrelation(const RelationPartition& rp,
                                                    const MultiFunction& g) {
    std::vector<long long> dot(rp.colors, 0);
    const int v = rp.v;
    for (int x = 0; x < v; ++x) {
        const long long gx = g.values[x];
        if (gx == 0) continue;
        const uint16_t* row = rp.color_of.data() + static_cast<size_t>(x) * v;
        for (int y = 0; y < v; ++y) dot[row[y]] += gx * g.values[y];
    }
    return dot;
}

}  // namespace detail

// lambda_i = v * (A_i g, g) / #R^-1(i), in exact rationals.
inline InnerDistribution inner_distribution(const RelationPartition& rp,
                                            const MultiFunction& g) {
    if (static_cast<int>(g.values.size()) != rp.v)
        throw std::invalid_argument("inner_distribution: length mismatch");
    if (!rp.is_unital())
        throw std::invalid_argument("inner_distribution: partition is not unital");
    std::vector<long long> dot = detail::color_autocorrelation(rp, g);
    InnerDistribution d;
    d.per_color.reserve(rp.colors);
    for (int i = 0; i < rp.colors; ++i)
        d.per_color.push_back(Rat(rp.v * dot[i], rp.rel_size[i]));
    return d;
}

// Accepts g iff all non-unit inner distribution values agree exactly.
inline std::optional<Parameters> is_equidistributed(const RelationPartition& rp,
                                                    const MultiFunction& g) {
    InnerDistribution d = inner_distribution(rp, g);
    Parameters p;
    p.v = rp.v;
    p.k = g.mass();
    if (rp.colors == 1) {
        p.lambda = Rat(0);
        p.vacuous = true;
        return p;
    }
    bool first = true;
    for (int i = 0; i < rp.colors; ++i) {
        if (i == rp.unit_color) continue;
        if (first) {
            p.lambda = d.per_color[i];
            first = false;
        } else if (d.per_color[i] != p.lambda) {
            return std::nullopt;
        }
    }
    return p;
}

// Fiber sums of g along the morphism's point map. Mass is preserved.
inline MultiFunction pushout(const QuotientMorphism& m, const MultiFunction& g) {
    if (g.values.size() != m.point_map.size())
        throw std::invalid_argument("pushout: length mismatch");
    MultiFunction h;
    h.values.assign(m.target->v, 0);
    for (size_t x = 0; x < g.values.size(); ++x) h.values[m.point_map[x]] += g.values[x];
    return h;
}

// (v, k, lambda) pushed to a quotient with e points: (e, k, (v/e) lambda).
inline Parameters pushed_parameters(const Parameters& p, long long e) {
    if (e == 0) throw std::invalid_argument("pushed_parameters: e = 0");
    Parameters q;
    q.v = e;
    q.k = p.k;
    q.lambda = Rat(p.v, e) * p.lambda;
    return q;
}

// k^2 - sum g(x)^2 = lambda (v - 1), exactly.
inline bool variance_identity_holds(const Parameters& p, const MultiFunction& g) {
    Rat lhs(p.k * p.k - g.sum_of_squares());
    return lhs == p.lambda * Rat(p.v - 1);
}

// Classical difference-set test: the characteristic function of D on the
// thin scheme of G.
inline std::optional<Parameters> is_difference_set(const FiniteGroup& G,
                                                   const std::vector<int>& D) {
    MultiFunction chi;
    chi.values.assign(G.order, 0);
    for (int d : D) {
        if (d < 0 || d >= G.order)
            throw std::invalid_argument("is_difference_set: element out of range");
        chi.values[d] = 1;
    }
    RelationPartition rp = thin_scheme(G);
    return is_equidistributed(rp, chi);
}

}  // namespace diffset
