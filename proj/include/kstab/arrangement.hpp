// Weighted hyperplane arrangements in P^n. A hyperplane is stored as a
// primitive integer covector in a canonical form (gcd 1, first nonzero entry
// positive), so two covectors define the same hyperplane iff they compare
// equal after normalization.
#pragma once

#include "kstab/matrix.hpp"
#include "kstab/rational.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kstab {

struct LinearForm {
    std::vector<Int> coeffs;

    bool operator==(const LinearForm& o) const { return coeffs == o.coeffs; }
    bool operator!=(const LinearForm& o) const { return !(*this == o); }
    bool operator<(const LinearForm& o) const {
        if (coeffs.size() != o.coeffs.size()) return coeffs.size() < o.coeffs.size();
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            const int s = cmp(coeffs[i], o.coeffs[i]);
            if (s != 0) return s < 0;
        }
        return false;
    }
};

// Clears denominators, divides by the gcd and fixes the sign of the first
// nonzero entry. Rejects the zero vector.
inline LinearForm normalize_form(const std::vector<Rat>& raw) {
    if (raw.empty()) throw std::invalid_argument("normalize_form: empty coefficient vector");
    Int den_lcm = 1;
    for (const Rat& x : raw) {
        Int d = x.get_den();
        den_lcm = lcm(den_lcm, d);
    }
    std::vector<Int> v(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        Rat scaled = raw[i] * Rat(den_lcm);
        v[i] = scaled.get_num();  // denominator is 1 after scaling
    }
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    if (g == 0) throw std::invalid_argument("normalize_form: zero vector");
    int first_nonzero_sign = 0;
    for (const Int& x : v)
        if (x != 0) { first_nonzero_sign = sgn(x); break; }
    if (first_nonzero_sign < 0) g = -g;
    for (Int& x : v) x /= g;
    return LinearForm{std::move(v)};
}

inline LinearForm normalize_form(const std::vector<Int>& raw) {
    std::vector<Rat> q(raw.begin(), raw.end());
    return normalize_form(q);
}

inline std::vector<Rat> rat_row(const LinearForm& f) {
    return std::vector<Rat>(f.coeffs.begin(), f.coeffs.end());
}

inline QMatrix forms_matrix(const std::vector<LinearForm>& forms, int cols) {
    QMatrix m(static_cast<int>(forms.size()), cols);
    for (int i = 0; i < m.rows(); ++i)
        for (int c = 0; c < cols; ++c) m.at(i, c) = forms[i].coeffs[c];
    return m;
}

// The pair (P^n, sum d_i H_i). Immutable by convention once built.
struct Arrangement {
    int dim = 0;
    std::vector<LinearForm> hyperplanes;
    std::vector<Rat> weights;

    int size() const { return static_cast<int>(hyperplanes.size()); }
};

// Checks every structural invariant; returns a description of the first
// violation, or nullopt when the arrangement is well formed.
inline std::optional<std::string> validate(const Arrangement& a) {
    std::ostringstream err;
    if (a.dim < 0) return "dim must be non-negative";
    if (a.hyperplanes.size() != a.weights.size()) {
        err << "hyperplane/weight count mismatch (" << a.hyperplanes.size() << " vs "
            << a.weights.size() << ")";
        return err.str();
    }
    if (a.dim == 0 && !a.hyperplanes.empty())
        return "P^0 admits no hyperplanes; dim 0 requires an empty arrangement";
    for (int i = 0; i < a.size(); ++i) {
        const auto& c = a.hyperplanes[i].coeffs;
        if (static_cast<int>(c.size()) != a.dim + 1) {
            err << "hyperplane " << i << " has " << c.size() << " coefficients, expected "
                << a.dim + 1;
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
            err << "hyperplane " << i << " is the zero form";
            return err.str();
        }
        if (g != 1 || first_sign < 0) {
            err << "hyperplane " << i << " is not in canonical form";
            return err.str();
        }
    }
    for (int i = 0; i < a.size(); ++i)
        if (a.weights[i] <= 0) {
            err << "weight " << i << " is not positive (" << rat_str(a.weights[i]) << ")";
            return err.str();
        }
    for (int i = 0; i < a.size(); ++i)
        for (int j = i + 1; j < a.size(); ++j)
            if (a.hyperplanes[i] == a.hyperplanes[j]) {
                err << "duplicate hyperplane at indices " << i << "," << j;
                return err.str();
            }
    return std::nullopt;
}

inline void require_valid(const Arrangement& a) {
    if (auto msg = validate(a)) throw std::invalid_argument("invalid arrangement: " + *msg);
}

inline Rat total_degree(const Arrangement& a) {
    Rat t = 0;
    for (const Rat& w : a.weights) t += w;
    return t;
}

// Normalizes raw covectors, then validates. The standard construction path.
inline Arrangement make_arrangement(int dim, const std::vector<std::vector<Rat>>& raw_forms,
                                    std::vector<Rat> weights) {
    Arrangement a;
    a.dim = dim;
    a.hyperplanes.reserve(raw_forms.size());
    for (const auto& f : raw_forms) a.hyperplanes.push_back(normalize_form(f));
    a.weights = std::move(weights);
    require_valid(a);
    return a;
}

inline Arrangement make_arrangement_int(int dim, const std::vector<std::vector<long>>& raw_forms,
                                        std::vector<Rat> weights) {
    std::vector<std::vector<Rat>> q;
    q.reserve(raw_forms.size());
    for (const auto& f : raw_forms) q.emplace_back(f.begin(), f.end());
    return make_arrangement(dim, q, std::move(weights));
}

}  // namespace kstab
