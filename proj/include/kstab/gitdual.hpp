// Weighted point configurations in the dual projective space. A hyperplane
// of P^n is a point of the dual P^n, and GIT stability of the configuration
// is the numerical subset-weight criterion: for every proper linear subspace
// V spanned by a subset of points, the weight inside V must not exceed
// (dim V + 1)/(n+1) times the total weight (strictly, for stability).
//
// The span enumeration below works directly on point vectors and never
// touches the lattice module; it is the independent code path the duality
// tests compare against the classifier.
#pragma once

#include "kstab/arrangement.hpp"
#include "kstab/matrix.hpp"
#include "kstab/stability.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace kstab {

// Points are primitive integer vectors in the same canonical form as
// hyperplane covectors. Coincident points are allowed.
struct PointConfiguration {
    int dim = 0;
    std::vector<LinearForm> points;
    std::vector<Rat> weights;

    int size() const { return static_cast<int>(points.size()); }
};

inline std::optional<std::string> validate_config(const PointConfiguration& pc) {
    std::ostringstream err;
    if (pc.dim < 0) return "dim must be non-negative";
    if (pc.points.size() != pc.weights.size()) {
        err << "point/weight count mismatch (" << pc.points.size() << " vs " << pc.weights.size()
            << ")";
        return err.str();
    }
    for (int i = 0; i < pc.size(); ++i) {
        const auto& c = pc.points[i].coeffs;
        if (static_cast<int>(c.size()) != pc.dim + 1) {
            err << "point " << i << " has " << c.size() << " coordinates, expected " << pc.dim + 1;
            return err.str();
        }
        bool all_zero = true;
        Int g = 0;
        int first_sign = 0;
        for (const Int& x : c) {
            if (x != 0 && all_zero) { all_zero = false; first_sign = sgn(x); }
            g = gcd(g, x);
        }
        if (all_zero) {
            err << "point " << i << " is the zero vector";
            return err.str();
        }
        if (g != 1 || first_sign < 0) {
            err << "point " << i << " is not in canonical form";
            return err.str();
        }
    }
    for (int i = 0; i < pc.size(); ++i)
        if (pc.weights[i] <= 0) {
            err << "weight " << i << " is not positive (" << rat_str(pc.weights[i]) << ")";
            return err.str();
        }
    return std::nullopt;
}

inline void require_valid(const PointConfiguration& pc) {
    if (auto msg = validate_config(pc))
        throw std::invalid_argument("invalid point configuration: " + *msg);
}

inline PointConfiguration make_config(int dim, const std::vector<std::vector<Rat>>& raw_points,
                                      std::vector<Rat> weights) {
    PointConfiguration pc;
    pc.dim = dim;
    pc.points.reserve(raw_points.size());
    for (const auto& p : raw_points) pc.points.push_back(normalize_form(p));
    pc.weights = std::move(weights);
    require_valid(pc);
    return pc;
}

// Merges coincident points (summing weights, first-occurrence order) and
// reads each point's coordinates as a hyperplane covector. Applying the same
// map to an arrangement's covectors inverts it.
inline Arrangement dualize(const PointConfiguration& pc) {
    require_valid(pc);
    Arrangement out;
    out.dim = pc.dim;
    for (int i = 0; i < pc.size(); ++i) {
        auto it = std::find(out.hyperplanes.begin(), out.hyperplanes.end(), pc.points[i]);
        if (it != out.hyperplanes.end()) {
            out.weights[static_cast<std::size_t>(it - out.hyperplanes.begin())] += pc.weights[i];
        } else {
            out.hyperplanes.push_back(pc.points[i]);
            out.weights.push_back(pc.weights[i]);
        }
    }
    require_valid(out);
    return out;
}

inline PointConfiguration dual_configuration(const Arrangement& a) {
    require_valid(a);
    return PointConfiguration{a.dim, a.hyperplanes, a.weights};
}

struct SpanWitness {
    std::vector<int> points;  // input indices of every point lying in the span
    int dim = 0;
    QMatrix basis;  // reduced echelon basis, rows span the subspace
};

struct HmResult {
    bool semistable = false;
    bool stable = false;
    // a violating span if any, else an equality span if any, minimal
    // dimension first
    std::optional<SpanWitness> witness;
};

inline HmResult hm_check(const PointConfiguration& pc) {
    require_valid(pc);
    if (pc.size() == 0) throw std::invalid_argument("hm_check: configuration has no points");
    const int n = pc.dim;

    // distinct points with accumulated weights and originating input indices
    std::vector<std::vector<Rat>> pts;
    std::vector<Rat> wts;
    std::vector<std::vector<int>> origins;
    for (int i = 0; i < pc.size(); ++i) {
        std::vector<Rat> v = rat_row(pc.points[i]);
        int found = -1;
        for (std::size_t k = 0; k < pts.size(); ++k)
            if (pts[k] == v) { found = static_cast<int>(k); break; }
        if (found >= 0) {
            wts[found] += pc.weights[i];
            origins[found].push_back(i);
        } else {
            pts.push_back(std::move(v));
            wts.push_back(pc.weights[i]);
            origins.push_back({i});
        }
    }
    const int mm = static_cast<int>(pts.size());
    Rat total = 0;
    for (const Rat& w : wts) total += w;

    struct SpanRec {
        std::vector<int> members;  // merged-point indices inside the span, sorted
        QMatrix basis;
    };
    std::map<QMatrix, SpanRec, QMatrixLess> seen;
    std::vector<const SpanRec*> queue;

    auto members_of = [&](const QMatrix& basis) {
        std::vector<int> mem;
        for (int k = 0; k < mm; ++k)
            if (in_row_space(basis, pts[k])) mem.push_back(k);
        return mem;
    };

    for (int k = 0; k < mm; ++k) {
        QMatrix one(1, n + 1);
        for (int c = 0; c <= n; ++c) one.at(0, c) = pts[k][c];
        QMatrix basis = row_space_basis(one);
        if (basis.rows() > n) continue;  // a span must be a proper subspace
        if (seen.count(basis)) continue;
        SpanRec rec{members_of(basis), basis};
        auto [it, fresh] = seen.emplace(std::move(basis), std::move(rec));
        if (fresh) queue.push_back(&it->second);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const SpanRec* rec = queue[qi];
        if (rec->basis.rows() >= n) continue;  // extensions are no longer proper
        for (int k = 0; k < mm; ++k) {
            if (std::binary_search(rec->members.begin(), rec->members.end(), k)) continue;
            std::vector<Rat> red = reduce_against(rec->basis, pts[k]);
            QMatrix basis = extend_basis(rec->basis, std::move(red));
            if (seen.count(basis)) continue;
            SpanRec nrec{members_of(basis), basis};
            auto [it, fresh] = seen.emplace(std::move(basis), std::move(nrec));
            if (fresh) queue.push_back(&it->second);
        }
    }

    std::vector<const SpanRec*> spans;
    for (const auto& [key, rec] : seen) spans.push_back(&rec);
    std::sort(spans.begin(), spans.end(), [](const SpanRec* x, const SpanRec* y) {
        if (x->basis.rows() != y->basis.rows()) return x->basis.rows() < y->basis.rows();
        return x->members < y->members;
    });

    HmResult out{true, true, std::nullopt};
    const SpanRec* first_violation = nullptr;
    const SpanRec* first_equality = nullptr;
    for (const SpanRec* rec : spans) {
        Rat inside = 0;
        for (int k : rec->members) inside += wts[k];
        const Rat bound = Rat(rec->basis.rows()) / (n + 1) * total;  // (dim V + 1)/(n+1) * total
        if (inside > bound) {
            out.semistable = false;
            out.stable = false;
            if (!first_violation) first_violation = rec;
        } else if (inside == bound) {
            out.stable = false;
            if (!first_equality) first_equality = rec;
        }
    }
    const SpanRec* w = first_violation ? first_violation : first_equality;
    if (w) {
        SpanWitness sw;
        sw.dim = w->basis.rows() - 1;
        sw.basis = w->basis;
        for (int k : w->members)
            for (int i : origins[k]) sw.points.push_back(i);
        std::sort(sw.points.begin(), sw.points.end());
        out.witness = std::move(sw);
    }
    return out;
}

// Classification through the duality bridge: merge, read points as
// hyperplanes, classify. Polystability in the equality case is decided by
// the class-P test, never by orbit geometry.
inline Classification git_classify(const PointConfiguration& pc) {
    return classify(dualize(pc));
}

}  // namespace kstab
