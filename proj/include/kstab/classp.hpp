// Product structure of lc Calabi-Yau arrangements. An arrangement of class P
// is a join S((P^{n_1}, Xi_1), ..., (P^{n_s}, Xi_s)) of klt Calabi-Yau
// factors on complementary linear subspaces. The decision procedure checks,
// at every lc center P of dimension c-1, that the intersection Q of the
// hyperplanes missing P has dimension n-c and is disjoint from P; Q is the
// only possible complement, so the existential condition becomes a single
// deterministic test. The decomposer peels off a minimal lc center and
// recurses on its complement.
#pragma once

#include "kstab/arrangement.hpp"
#include "kstab/lattice.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kstab {

struct Subspace {
    QMatrix forms;  // trimmed reduced echelon basis of the defining forms
    int dim = 0;    // ambient dim minus rank(forms)
};

inline Subspace subspace_of(const Flat& f, int ambient_dim) {
    return Subspace{f.forms, ambient_dim - f.codim};
}

struct Factor {
    int ambient_dim = 0;       // n_i; the factor lives on P^{n_i}
    Arrangement arrangement;   // empty when ambient_dim == 0
    QMatrix embedding;         // (n_i+1) x (n+1); rows span the factor inside the root space
};

struct Decomposition {
    std::vector<Factor> factors;  // ascending ambient_dim, then discovery order
};

// Restriction of the arrangement to a subspace: hyperplanes containing the
// subspace are dropped, the rest are intersected with it and rewritten in
// the intrinsic coordinates given by the kernel basis of its forms.
// Components whose restrictions coincide are merged by summing weights.
inline Arrangement restrict_to(const Arrangement& a, const Subspace& s) {
    if (s.dim < 0) throw std::invalid_argument("restrict_to: negative dimension");
    Arrangement out;
    out.dim = s.dim;
    if (s.dim == 0) return out;  // P^0 carries no divisor
    const QMatrix k = kernel_basis(s.forms);  // (s.dim+1) rows spanning the subspace
    std::vector<LinearForm> forms;
    std::vector<Rat> weights;
    for (int i = 0; i < a.size(); ++i) {
        std::vector<Rat> restricted(s.dim + 1);
        bool zero = true;
        for (int r = 0; r <= s.dim; ++r) {
            Rat acc = 0;
            for (int c = 0; c <= a.dim; ++c) acc += Rat(a.hyperplanes[i].coeffs[c]) * k.at(r, c);
            if (acc != 0) zero = false;
            restricted[r] = std::move(acc);
        }
        if (zero) continue;  // hyperplane contains the subspace
        LinearForm f = normalize_form(restricted);
        auto it = std::find(forms.begin(), forms.end(), f);
        if (it != forms.end()) {
            weights[static_cast<std::size_t>(it - forms.begin())] += a.weights[i];
        } else {
            forms.push_back(std::move(f));
            weights.push_back(a.weights[i]);
        }
    }
    out.hyperplanes = std::move(forms);
    out.weights = std::move(weights);
    require_valid(out);
    return out;
}

inline bool is_klt_calabi_yau(const Arrangement& a) {
    if (a.dim == 0) return a.size() == 0;
    if (total_degree(a) != Rat(a.dim + 1)) return false;
    Lattice l = all_flats(a);
    for (const Flat& f : l.flats)
        if (flat_weight(a, f) >= f.codim) return false;
    return true;
}

namespace detail {

inline void require_lc_center(const Arrangement& a, const Flat& p) {
    if (!flat_belongs(a, p)) throw std::invalid_argument("flat does not belong to the arrangement");
    if (flat_weight(a, p) != p.codim)
        throw std::invalid_argument("flat is not an lc center (weight != codim)");
}

inline Subspace q_of_impl(const Arrangement& a, const Flat& p) {
    std::vector<LinearForm> outside;
    for (int i = 0; i < a.size(); ++i)
        if (!std::binary_search(p.closure.begin(), p.closure.end(), i))
            outside.push_back(a.hyperplanes[i]);
    if (outside.empty())
        throw std::logic_error("q_of: every hyperplane contains the lc center");
    QMatrix basis = row_space_basis(forms_matrix(outside, a.dim + 1));
    return Subspace{std::move(basis), a.dim - basis.rows()};
}

// The combinatorial complement test at an lc center P with dim P = c-1:
// Q must have dimension n-c (its forms have rank c) and be disjoint from P
// (stacked forms have full rank n+1). When both hold, the weight of Q is
// forced to equal c; a violation means a bug, not bad input.
inline bool q_condition_impl(const Arrangement& a, const Flat& p, const Subspace& q) {
    const int n = a.dim;
    const int c = n + 1 - p.codim;  // = dim P + 1
    if (q.forms.rows() != c) return false;
    if (stack_rank(p.forms, q.forms) != n + 1) return false;
    Rat dq = 0;
    for (int i = 0; i < a.size(); ++i)
        if (in_row_space(q.forms, rat_row(a.hyperplanes[i]))) dq += a.weights[i];
    if (dq != c)
        throw std::logic_error("q_condition: complement weight differs from codimension");
    return true;
}

inline void require_lc_cy(const Arrangement& a, const Lattice& l) {
    if (!is_lc_calabi_yau(a, l))
        throw std::invalid_argument("arrangement is not lc Calabi-Yau");
}

}  // namespace detail

// The subspace cut out by the hyperplanes NOT containing the lc center p.
inline Subspace q_of(const Arrangement& a, const Flat& p) {
    require_valid(a);
    detail::require_lc_center(a, p);
    detail::require_lc_cy(a, all_flats(a));
    return detail::q_of_impl(a, p);
}

inline bool q_condition_holds(const Arrangement& a, const Flat& p) {
    require_valid(a);
    detail::require_lc_center(a, p);
    detail::require_lc_cy(a, all_flats(a));
    return detail::q_condition_impl(a, p, detail::q_of_impl(a, p));
}

// Decides class P: the arrangement must be lc Calabi-Yau and pass the
// complement test at every lc center. A klt Calabi-Yau arrangement (no lc
// centers) is the single-factor case and returns true.
inline bool is_class_p(const Arrangement& g) {
    require_valid(g);
    if (total_degree(g) != Rat(g.dim + 1))
        throw std::invalid_argument("is_class_p: total degree must equal dim+1");
    Lattice l = all_flats(g);
    for (const Flat& f : l.flats)
        if (flat_weight(g, f) > f.codim) return false;  // not lc
    // lc Calabi-Yau forces the full intersection to be empty
    std::vector<int> all(g.size());
    for (int i = 0; i < g.size(); ++i) all[i] = i;
    if (closure_of(g, all))
        throw std::logic_error("is_class_p: lc Calabi-Yau arrangement with nonempty total intersection");
    for (const Flat& f : l.flats) {
        if (flat_weight(g, f) != f.codim) continue;
        if (!detail::q_condition_impl(g, f, detail::q_of_impl(g, f))) return false;
    }
    return true;
}

namespace detail {

inline std::vector<Factor> decompose_impl(const Arrangement& g, const QMatrix& embedding) {
    Lattice l = all_flats(g);
    std::vector<const Flat*> centers;
    for (const Flat& f : l.flats)
        if (flat_weight(g, f) == f.codim) centers.push_back(&f);

    if (centers.empty()) {
        if (!is_klt_calabi_yau(g))
            throw std::logic_error("decompose: factor without lc centers is not klt Calabi-Yau");
        return {Factor{g.dim, g, embedding}};
    }

    // minimal-dimension center, earliest in lattice order among those
    int max_codim = 0;
    for (const Flat* f : centers) max_codim = std::max(max_codim, f->codim);
    const Flat* p = nullptr;
    for (const Flat* f : centers)
        if (f->codim == max_codim) { p = f; break; }

    const Subspace sp = subspace_of(*p, g.dim);
    Arrangement xi_p = restrict_to(g, sp);
    if (!is_klt_calabi_yau(xi_p))
        throw std::logic_error("decompose: restriction to a minimal lc center is not klt Calabi-Yau");
    std::vector<Factor> out;
    out.push_back(Factor{sp.dim, std::move(xi_p), mul(kernel_basis(p->forms), embedding)});

    const Subspace q = q_of_impl(g, *p);
    if (!q_condition_impl(g, *p, q))
        throw std::logic_error("decompose: complement condition failed during recursion");

    Arrangement through_p;  // the components containing P, to be restricted to Q
    through_p.dim = g.dim;
    for (int i : p->closure) {
        through_p.hyperplanes.push_back(g.hyperplanes[i]);
        through_p.weights.push_back(g.weights[i]);
    }
    Arrangement xi_q = restrict_to(through_p, q);
    std::vector<Factor> rest = decompose_impl(xi_q, mul(kernel_basis(q.forms), embedding));
    for (Factor& f : rest) out.push_back(std::move(f));
    return out;
}

}  // namespace detail

inline Decomposition decompose(const Arrangement& g) {
    if (!is_class_p(g)) throw std::invalid_argument("decompose: arrangement is not of class P");
    Decomposition d;
    d.factors = detail::decompose_impl(g, QMatrix::identity(g.dim + 1));
    std::stable_sort(d.factors.begin(), d.factors.end(),
                     [](const Factor& x, const Factor& y) { return x.ambient_dim < y.ambient_dim; });
    int total = 0;
    for (const Factor& f : d.factors) total += f.ambient_dim + 1;
    if (total != g.dim + 1)
        throw std::logic_error("decompose: factor dimensions do not sum to dim+1");
    return d;
}

// Block-coordinate join of klt Calabi-Yau factors. Each hyperplane of a
// positive-dimensional factor lifts to the hyperplane with the same
// coefficients on that factor's coordinate block and zeros elsewhere; a
// zero-dimensional factor contributes its single block coordinate as a
// hyperplane of weight 1.
inline Arrangement s_join(const std::vector<Arrangement>& factors) {
    if (factors.empty()) throw std::invalid_argument("s_join: no factors");
    int total = 0;
    for (const Arrangement& f : factors) {
        if (auto msg = validate(f)) throw std::invalid_argument("s_join: invalid factor: " + *msg);
        if (!is_klt_calabi_yau(f))
            throw std::invalid_argument("s_join: factor is not klt Calabi-Yau");
        total += f.dim + 1;
    }
    const int n = total - 1;
    Arrangement out;
    out.dim = n;
    int offset = 0;
    for (const Arrangement& f : factors) {
        if (f.dim == 0) {
            std::vector<Int> v(n + 1, 0);
            v[offset] = 1;
            out.hyperplanes.push_back(LinearForm{std::move(v)});
            out.weights.push_back(Rat(1));
        } else {
            for (int i = 0; i < f.size(); ++i) {
                std::vector<Int> v(n + 1, 0);
                for (int c = 0; c <= f.dim; ++c) v[offset + c] = f.hyperplanes[i].coeffs[c];
                out.hyperplanes.push_back(normalize_form(v));
                out.weights.push_back(f.weights[i]);
            }
        }
        offset += f.dim + 1;
    }
    require_valid(out);
    return out;
}

}  // namespace kstab
