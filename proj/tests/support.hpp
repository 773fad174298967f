// Shared fixtures and independent oracles for the test suites. Everything
// here must stay independent of the library's enumeration path: the brute
// force below walks all 2^m subsets and uses plain rank computations for
// closure membership.
#pragma once

#include "kstab/kstab.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <vector>

namespace testsupport {

using namespace kstab;

// --- fixtures -------------------------------------------------------------

inline Arrangement triangle(const Rat& w) {
    return make_arrangement_int(2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                std::vector<Rat>(3, w));
}

// k lines of P^2 through the point (0:0:1)
inline Arrangement concurrent_lines(int k, const Rat& w) {
    std::vector<std::vector<long>> forms;
    forms.push_back({1, 0, 0});
    forms.push_back({0, 1, 0});
    for (int i = 1; i <= k - 2; ++i) forms.push_back({1, i, 0});
    return make_arrangement_int(2, forms, std::vector<Rat>(k, w));
}

inline Arrangement four_generic(const Rat& w) {
    return make_arrangement_int(2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}},
                                std::vector<Rat>(4, w));
}

// distinct points of P^1 with the given weights
inline Arrangement p1_points(const std::vector<Rat>& weights) {
    std::vector<std::vector<long>> forms;
    forms.push_back({1, 0});
    if (weights.size() > 1) forms.push_back({0, 1});
    for (long i = 1; i + 2 <= static_cast<long>(weights.size()); ++i) forms.push_back({1, i});
    return make_arrangement_int(1, forms, weights);
}

// the S(point, line) fixture: z_0 at weight 1 plus three cones at 2/3
inline Arrangement s_point_line_fixture() {
    return make_arrangement(
        2,
        {{Rat(1), Rat(0), Rat(0)},
         {Rat(0), Rat(1), Rat(0)},
         {Rat(0), Rat(0), Rat(1)},
         {Rat(0), Rat(1), Rat(-1)}},
        {Rat(1), make_rat(2, 3), make_rat(2, 3), make_rat(2, 3)});
}

// lc Calabi-Yau with a unique lc center whose complement test fails:
// three lines through x = (0:0:1) at 2/3 plus two generic lines at 1/2.
inline Arrangement q_condition_failure_fixture() {
    return make_arrangement_int(
        2, {{1, 0, 0}, {0, 1, 0}, {1, -1, 0}, {0, 0, 1}, {1, 1, 1}},
        {make_rat(2, 3), make_rat(2, 3), make_rat(2, 3), make_rat(1, 2), make_rat(1, 2)});
}

// --- independent brute-force lattice oracle -------------------------------

struct BruteFlat {
    std::vector<int> closure;
    int codim = 0;
};

inline std::vector<BruteFlat> brute_force_flats(const Arrangement& a) {
    const int m = a.size();
    const int n = a.dim;
    QMatrix rows(m, n + 1);
    for (int i = 0; i < m; ++i)
        for (int c = 0; c <= n; ++c) rows.at(i, c) = a.hyperplanes[i].coeffs[c];

    auto subset_matrix = [&](unsigned long mask) {
        int k = 0;
        for (unsigned long b = mask; b; b >>= 1) k += static_cast<int>(b & 1);
        QMatrix sub(k, n + 1);
        int r = 0;
        for (int i = 0; i < m; ++i)
            if (mask & (1ul << i)) {
                for (int c = 0; c <= n; ++c) sub.at(r, c) = rows.at(i, c);
                ++r;
            }
        return sub;
    };

    std::map<QMatrix, int, QMatrixLess> bases;  // basis -> rank
    for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
        QMatrix basis = row_space_basis(subset_matrix(mask));
        if (basis.rows() == n + 1) continue;  // empty intersection
        bases.emplace(std::move(basis), 0);
    }
    std::vector<BruteFlat> out;
    for (const auto& [basis, unused] : bases) {
        BruteFlat f;
        f.codim = basis.rows();
        for (int i = 0; i < m; ++i) {
            QMatrix one(1, n + 1);
            for (int c = 0; c <= n; ++c) one.at(0, c) = rows.at(i, c);
            if (rank_of(vstack(basis, one)) == basis.rows()) f.closure.push_back(i);
        }
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const BruteFlat& x, const BruteFlat& y) {
        if (x.codim != y.codim) return x.codim < y.codim;
        return x.closure < y.closure;
    });
    return out;
}

inline bool lattice_matches_brute_force(const Arrangement& a) {
    const Lattice l = all_flats(a);
    const std::vector<BruteFlat> bf = brute_force_flats(a);
    if (l.flats.size() != bf.size()) return false;
    for (std::size_t i = 0; i < bf.size(); ++i)
        if (l.flats[i].closure != bf[i].closure || l.flats[i].codim != bf[i].codim) return false;
    return true;
}

// --- random instances ------------------------------------------------------

inline Arrangement random_arrangement(Rng& rng, int n, int m, bool force_degenerate) {
    for (;;) {
        std::vector<LinearForm> forms;
        long radius = 2;
        while (static_cast<int>(forms.size()) < m) {
            LinearForm f = [&] {
                if (force_degenerate && forms.size() >= 2 && rng.range(0, 2) == 0) {
                    // combination of two earlier forms: forces a dependent incidence
                    const int i = static_cast<int>(rng.range(0, static_cast<long>(forms.size()) - 1));
                    int j = i;
                    while (j == i) j = static_cast<int>(rng.range(0, static_cast<long>(forms.size()) - 1));
                    std::vector<Rat> v(n + 1);
                    const long alpha = rng.range(1, 2), beta = rng.range(1, 2);
                    for (int c = 0; c <= n; ++c)
                        v[c] = alpha * Rat(forms[i].coeffs[c]) + beta * Rat(forms[j].coeffs[c]);
                    return normalize_form(v);
                }
                std::vector<Int> v(n + 1);
                bool nz = false;
                for (int c = 0; c <= n; ++c) {
                    v[c] = Int(rng.range(-radius, radius));
                    if (v[c] != 0) nz = true;
                }
                if (!nz) v[0] = 1;
                return normalize_form(v);
            }();
            if (std::find(forms.begin(), forms.end(), f) == forms.end()) forms.push_back(std::move(f));
            else ++radius;
        }
        std::vector<Rat> weights;
        for (int i = 0; i < m; ++i) weights.push_back(rng.rat01());
        Arrangement a{n, std::move(forms), std::move(weights)};
        if (!validate(a)) return a;
    }
}

// rescales the weights so the pair is klt with ample anticanonical class
inline Arrangement to_log_fano(const Arrangement& a) {
    const Rat cap1 = lct(a);
    const Rat cap2 = Rat(a.dim + 1) / total_degree(a);
    const Rat t = make_rat(3, 4) * (cap1 < cap2 ? cap1 : cap2);
    Arrangement out = a;
    for (Rat& w : out.weights) w *= t;
    return out;
}

inline Arrangement random_log_fano(Rng& rng, int n, int m, bool force_degenerate) {
    return to_log_fano(random_arrangement(rng, n, m, force_degenerate));
}

// invertible rational matrix built from seeded elementary operations
inline QMatrix random_invertible(Rng& rng, int size) {
    QMatrix u = QMatrix::identity(size);
    const int ops = size * 4;
    for (int k = 0; k < ops; ++k) {
        const int kind = static_cast<int>(rng.range(0, 3));
        const int i = static_cast<int>(rng.range(0, size - 1));
        int j = static_cast<int>(rng.range(0, size - 1));
        if (kind <= 1) {  // row_i += c * row_j
            while (j == i) j = static_cast<int>(rng.range(0, size - 1));
            const Rat c = make_rat(rng.range(-2, 2), rng.range(1, 3));
            if (c == 0) continue;
            for (int col = 0; col < size; ++col) u.at(i, col) += c * u.at(j, col);
        } else if (kind == 2) {  // swap
            while (j == i) j = static_cast<int>(rng.range(0, size - 1));
            for (int col = 0; col < size; ++col) std::swap(u.at(i, col), u.at(j, col));
        } else {  // scale by a nonzero rational
            const Rat c = make_rat(rng.range(1, 3), rng.range(1, 3));
            for (int col = 0; col < size; ++col) u.at(i, col) *= c;
        }
    }
    return u;
}

inline Arrangement apply_coordinates(const Arrangement& a, const QMatrix& u) {
    Arrangement out;
    out.dim = a.dim;
    out.weights = a.weights;
    for (int i = 0; i < a.size(); ++i) {
        std::vector<Rat> v(a.dim + 1);
        for (int c = 0; c <= a.dim; ++c) {
            Rat acc = 0;
            for (int k = 0; k <= a.dim; ++k) acc += Rat(a.hyperplanes[i].coeffs[k]) * u.at(k, c);
            v[c] = std::move(acc);
        }
        out.hyperplanes.push_back(normalize_form(v));
    }
    require_valid(out);
    return out;
}

// --- projective-invariant summaries ----------------------------------------

using CensusEntry = std::tuple<int, int, Rat>;  // (closure size, codim, weight)

inline std::vector<CensusEntry> lattice_census(const Arrangement& a) {
    std::vector<CensusEntry> out;
    for (const Flat& f : all_flats(a).flats)
        out.emplace_back(static_cast<int>(f.closure.size()), f.codim, flat_weight(a, f));
    std::sort(out.begin(), out.end());
    return out;
}

struct FactorSummary {
    int ambient_dim = 0;
    std::vector<Rat> weights;  // sorted
    std::vector<CensusEntry> census;

    bool operator==(const FactorSummary& o) const {
        return ambient_dim == o.ambient_dim && weights == o.weights && census == o.census;
    }
    bool operator<(const FactorSummary& o) const {
        if (ambient_dim != o.ambient_dim) return ambient_dim < o.ambient_dim;
        if (weights.size() != o.weights.size()) return weights.size() < o.weights.size();
        for (std::size_t i = 0; i < weights.size(); ++i) {
            const int s = cmp(weights[i], o.weights[i]);
            if (s != 0) return s < 0;
        }
        return census < o.census;
    }
};

inline FactorSummary summarize(int ambient_dim, const Arrangement& a) {
    FactorSummary s;
    s.ambient_dim = ambient_dim;
    s.weights = a.weights;
    std::sort(s.weights.begin(), s.weights.end());
    if (a.size() > 0) s.census = lattice_census(a);
    return s;
}

inline std::vector<FactorSummary> summarize_factors(const std::vector<Arrangement>& factors) {
    std::vector<FactorSummary> out;
    for (const Arrangement& f : factors) out.push_back(summarize(f.dim, f));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<FactorSummary> summarize_decomposition(const Decomposition& d) {
    std::vector<FactorSummary> out;
    for (const Factor& f : d.factors) out.push_back(summarize(f.ambient_dim, f.arrangement));
    std::sort(out.begin(), out.end());
    return out;
}

// --- stability helpers ------------------------------------------------------

inline StabilityPair classify_to_pair(const Classification& c) {
    StabilityPair p;
    p.semistable =
        c.verdict != Verdict::Unstable && c.verdict != Verdict::NotLogFano;
    p.uniformly_stable = c.verdict == Verdict::UniformlyKStable;
    return p;
}

// random klt Calabi-Yau factor of the given dimension (0, 1 or 2)
inline Arrangement random_klt_cy_factor(Rng& rng, int dim) {
    if (dim == 0) return Arrangement{0, {}, {}};
    for (int attempt = 0; attempt < 512; ++attempt) {
        const int m = dim == 1 ? static_cast<int>(rng.range(3, 4)) : static_cast<int>(rng.range(4, 5));
        std::vector<long> parts;
        long sum = 0;
        for (int i = 0; i < m; ++i) {
            parts.push_back(rng.range(1, 6));
            sum += parts.back();
        }
        std::vector<Rat> weights;
        bool ok = true;
        for (long p : parts) {
            Rat w = make_rat((dim + 1) * p, sum);
            if (w >= 1) { ok = false; break; }
            weights.push_back(w);
        }
        if (!ok) continue;
        std::vector<LinearForm> forms;
        long radius = 2;
        int guard = 0;
        while (static_cast<int>(forms.size()) < m && guard < 200) {
            ++guard;
            std::vector<Int> v(dim + 1);
            bool nz = false;
            for (int c = 0; c <= dim; ++c) {
                v[c] = Int(rng.range(-radius, radius));
                if (v[c] != 0) nz = true;
            }
            if (!nz) continue;
            LinearForm f = normalize_form(v);
            if (std::find(forms.begin(), forms.end(), f) == forms.end()) forms.push_back(std::move(f));
            else ++radius;
        }
        if (static_cast<int>(forms.size()) < m) continue;
        Arrangement a{dim, std::move(forms), std::move(weights)};
        if (validate(a)) continue;
        if (is_klt_calabi_yau(a)) return a;
    }
    throw std::runtime_error("random_klt_cy_factor: resampling exhausted");
}

}  // namespace testsupport
