// The intersection lattice L'(X, Gamma): every nonempty proper intersection
// of a subset of the hyperplanes, with its closure set, codimension and
// canonical defining forms.
//
// Enumeration is by level saturation: seed with the single hyperplanes, then
// repeatedly intersect known flats with hyperplanes outside their closure.
// Adding one independent form raises the codimension by exactly one, so the
// levels are the codimensions and every flat is reached. Flats are keyed by
// their reduced-echelon form matrix, which is canonical for the row space;
// for spans of hyperplane subsets this is equivalent to keying by closure.
#pragma once

#include "kstab/arrangement.hpp"
#include "kstab/matrix.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kstab {

struct Flat {
    std::vector<int> closure;  // sorted: every i with the flat inside H_i
    int codim = 0;             // = rank of forms = rows of forms
    QMatrix forms;             // trimmed reduced echelon basis of the span

    bool operator==(const Flat& o) const {
        return closure == o.closure && codim == o.codim && forms == o.forms;
    }
};

// Canonical order: by codimension, then closure set lexicographically.
inline bool flat_less(const Flat& x, const Flat& y) {
    if (x.codim != y.codim) return x.codim < y.codim;
    return x.closure < y.closure;
}

struct Lattice {
    std::vector<Flat> flats;  // sorted by flat_less
};

namespace detail {

inline std::vector<int> closure_of_basis(const Arrangement& a, const QMatrix& basis) {
    std::vector<int> closure;
    for (int i = 0; i < a.size(); ++i)
        if (in_row_space(basis, rat_row(a.hyperplanes[i]))) closure.push_back(i);
    return closure;
}

}  // namespace detail

// Intersection of the listed hyperplanes. Returns nullopt when the
// intersection is empty (the forms span everything); otherwise the flat,
// whose closure may be strictly larger than the request.
inline std::optional<Flat> closure_of(const Arrangement& a, const std::vector<int>& indices) {
    if (indices.empty()) throw std::invalid_argument("closure_of: empty index set");
    for (int i : indices)
        if (i < 0 || i >= a.size()) throw std::out_of_range("closure_of: hyperplane index out of range");
    QMatrix m(static_cast<int>(indices.size()), a.dim + 1);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c <= a.dim; ++c) m.at(r, c) = a.hyperplanes[indices[r]].coeffs[c];
    QMatrix basis = row_space_basis(m);
    if (basis.rows() == a.dim + 1) return std::nullopt;
    Flat f;
    f.codim = basis.rows();
    f.closure = detail::closure_of_basis(a, basis);
    f.forms = std::move(basis);
    return f;
}

inline Lattice all_flats(const Arrangement& a) {
    require_valid(a);
    std::map<QMatrix, Flat, QMatrixLess> seen;
    std::deque<const Flat*> queue;

    for (int i = 0; i < a.size(); ++i) {
        QMatrix one(1, a.dim + 1);
        for (int c = 0; c <= a.dim; ++c) one.at(0, c) = a.hyperplanes[i].coeffs[c];
        QMatrix basis = row_space_basis(one);
        if (basis.rows() == a.dim + 1) continue;  // only when dim == 0
        if (seen.count(basis)) continue;
        Flat f{detail::closure_of_basis(a, basis), basis.rows(), basis};
        auto [it, fresh] = seen.emplace(std::move(basis), std::move(f));
        if (fresh) queue.push_back(&it->second);
    }

    while (!queue.empty()) {
        const Flat* f = queue.front();
        queue.pop_front();
        if (f->codim + 1 == a.dim + 1) continue;  // any extension is empty
        for (int j = 0; j < a.size(); ++j) {
            if (std::binary_search(f->closure.begin(), f->closure.end(), j)) continue;
            std::vector<Rat> red = reduce_against(f->forms, rat_row(a.hyperplanes[j]));
            QMatrix basis = extend_basis(f->forms, std::move(red));
            if (seen.count(basis)) continue;
            Flat g{detail::closure_of_basis(a, basis), basis.rows(), basis};
            auto [it, fresh] = seen.emplace(std::move(basis), std::move(g));
            if (fresh) queue.push_back(&it->second);
        }
    }

    Lattice out;
    out.flats.reserve(seen.size());
    for (auto& [key, f] : seen) out.flats.push_back(std::move(f));
    std::sort(out.flats.begin(), out.flats.end(), flat_less);
    return out;
}

// Sum of the weights of the hyperplanes containing the flat.
inline Rat flat_weight(const Arrangement& a, const Flat& w) {
    Rat d = 0;
    for (int i : w.closure) {
        if (i < 0 || i >= a.size()) throw std::out_of_range("flat_weight: foreign flat");
        d += a.weights[i];
    }
    return d;
}

// True when the flat genuinely belongs to the arrangement's lattice.
inline bool flat_belongs(const Arrangement& a, const Flat& w) {
    if (w.closure.empty()) return false;
    for (int i : w.closure)
        if (i < 0 || i >= a.size()) return false;
    auto f = closure_of(a, w.closure);
    return f && f->closure == w.closure && f->codim == w.codim && f->forms == w.forms;
}

// Simple normal crossing: every flat is a transverse intersection.
inline bool is_snc(const Arrangement& a) {
    Lattice l = all_flats(a);
    for (const Flat& f : l.flats)
        if (static_cast<int>(f.closure.size()) != f.codim) return false;
    return true;
}

inline bool is_lc_calabi_yau(const Arrangement& a, const Lattice& l) {
    if (total_degree(a) != Rat(a.dim + 1)) return false;
    for (const Flat& f : l.flats)
        if (flat_weight(a, f) > f.codim) return false;
    return true;
}

// Flats where the weight equals the codimension, in lattice order. Only
// meaningful for an lc Calabi-Yau arrangement, which is enforced.
inline std::vector<Flat> lc_centers(const Arrangement& a) {
    require_valid(a);
    if (a.size() == 0) throw std::invalid_argument("lc_centers: empty arrangement");
    Lattice l = all_flats(a);
    if (!is_lc_calabi_yau(a, l))
        throw std::invalid_argument("lc_centers: arrangement is not lc Calabi-Yau "
                                    "(needs total degree dim+1 and weight <= codim on every flat)");
    std::vector<Flat> centers;
    for (const Flat& f : l.flats)
        if (flat_weight(a, f) == f.codim) centers.push_back(f);
    return centers;
}

}  // namespace kstab
