// Seeded instance generators. All randomness flows through std::mt19937_64,
// whose output sequence is fixed by the standard, and through our own
// rejection sampling, so a given seed produces the same arrangement on every
// platform. "General position" is never assumed from randomness alone: each
// generator certifies the combinatorial consequences it promises and
// resamples on failure, up to a bounded number of attempts.
#pragma once

#include "kstab/arrangement.hpp"
#include "kstab/classp.hpp"
#include "kstab/lattice.hpp"
#include "kstab/stability.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace kstab {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform on [lo, hi], unbiased
    long range(long lo, long hi) {
        if (lo > hi) throw std::invalid_argument("Rng::range: empty interval");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do { x = eng_(); } while (x >= limit);
        return lo + static_cast<long>(x % span);
    }

    // rational in the open interval (0,1)
    Rat rat01(long max_den = 12) {
        const long q = range(2, max_den);
        const long p = range(1, q - 1);
        return make_rat(p, q);
    }

  private:
    std::mt19937_64 eng_;
};

namespace detail {

inline Int range_to_int(Rng& rng, long radius) { return Int(rng.range(-radius, radius)); }

inline LinearForm random_form(Rng& rng, int len, long radius) {
    for (;;) {
        std::vector<Int> v(len);
        bool nonzero = false;
        for (int i = 0; i < len; ++i) {
            v[i] = range_to_int(rng, radius);
            if (v[i] != 0) nonzero = true;
        }
        if (!nonzero) continue;
        return normalize_form(v);
    }
}

inline bool contains(const std::vector<LinearForm>& forms, const LinearForm& f) {
    return std::find(forms.begin(), forms.end(), f) != forms.end();
}

}  // namespace detail

// m seeded hyperplanes in P^n with the given weights, resampled until the
// arrangement is simple normal crossing.
inline Arrangement gen_snc(int n, int m, const std::vector<Rat>& weights, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_snc: dim must be at least 1");
    if (m < 1) throw std::invalid_argument("gen_snc: need at least one hyperplane");
    if (static_cast<int>(weights.size()) != m)
        throw std::invalid_argument("gen_snc: need exactly one weight per hyperplane");
    Rng rng(seed);
    for (int attempt = 0; attempt < 256; ++attempt) {
        long radius = 3 + attempt / 16;
        std::vector<LinearForm> forms;
        while (static_cast<int>(forms.size()) < m) {
            LinearForm f = detail::random_form(rng, n + 1, radius);
            if (!detail::contains(forms, f)) forms.push_back(std::move(f));
            else ++radius;  // widen when the coefficient box runs out of room
        }
        Arrangement a{n, std::move(forms), weights};
        if (validate(a)) continue;
        if (is_snc(a)) return a;
    }
    throw std::runtime_error("gen_snc: genericity resampling exhausted");
}

// count hyperplanes through the common codimension-2 flat z_0 = z_1 = 0,
// plus extra generic hyperplanes missing it.
inline Arrangement gen_pencil(int n, int count, int extras, const std::vector<Rat>& weights,
                              std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_pencil: dim must be at least 2");
    if (count < 2) throw std::invalid_argument("gen_pencil: need at least two pencil members");
    if (static_cast<int>(weights.size()) != count + extras)
        throw std::invalid_argument("gen_pencil: need exactly one weight per hyperplane");
    Rng rng(seed);
    for (int attempt = 0; attempt < 256; ++attempt) {
        long radius = 3 + attempt / 16;
        std::vector<LinearForm> forms;
        while (static_cast<int>(forms.size()) < count) {
            std::vector<Int> v(n + 1, 0);
            v[0] = detail::range_to_int(rng, radius);
            v[1] = detail::range_to_int(rng, radius);
            if (v[0] == 0 && v[1] == 0) continue;
            LinearForm f = normalize_form(v);
            if (!detail::contains(forms, f)) forms.push_back(std::move(f));
            else ++radius;
        }
        while (static_cast<int>(forms.size()) < count + extras) {
            LinearForm f = detail::random_form(rng, n + 1, radius);
            bool in_pencil = true;
            for (int c = 2; c <= n; ++c)
                if (f.coeffs[c] != 0) { in_pencil = false; break; }
            if (in_pencil) continue;
            if (!detail::contains(forms, f)) forms.push_back(std::move(f));
            else ++radius;
        }
        Arrangement a{n, std::move(forms), weights};
        if (!validate(a)) return a;
    }
    throw std::runtime_error("gen_pencil: resampling exhausted");
}

namespace detail {

// Certifies that the only degenerate incidence is the designed cone point:
// one flat of codimension n whose closure is exactly the cone hyperplanes,
// and every other flat transverse.
inline bool alpha_example_certified(const Arrangement& a, int cone_count) {
    const int n = a.dim;
    Lattice l = all_flats(a);
    bool found_cone_point = false;
    for (const Flat& f : l.flats) {
        if (f.codim == n && static_cast<int>(f.closure.size()) == cone_count) {
            bool all_cones = true;
            for (int i = 0; i < cone_count; ++i)
                if (f.closure[i] != i) { all_cones = false; break; }
            if (all_cones) { found_cone_point = true; continue; }
        }
        if (static_cast<int>(f.closure.size()) != f.codim) return false;
    }
    return found_cone_point;
}

}  // namespace detail

// The cone example: m*n hyperplanes through a fixed point p (cones over
// general hyperplanes in the P^{n-1} of directions) plus m general
// hyperplanes, all of weight t/m. For n = 1 the cones collapse to the single
// point p of weight t. Requires m >= n+1 and t in [m(n-1)/((m-1)n), 1).
inline Arrangement gen_alpha_example(int n, int m, const Rat& t, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_alpha_example: dim must be at least 1");
    if (m < n + 1) throw std::invalid_argument("gen_alpha_example: need m >= dim+1");
    const Rat lower = make_rat(static_cast<long>(m) * (n - 1), static_cast<long>(m - 1) * n);
    if (t < lower || t >= 1)
        throw std::invalid_argument("gen_alpha_example: t must lie in [m(n-1)/((m-1)n), 1)");
    Rng rng(seed);
    const Rat small = t / m;

    if (n == 1) {
        for (int attempt = 0; attempt < 256; ++attempt) {
            long radius = 3 + attempt / 16;
            std::vector<LinearForm> forms;
            forms.push_back(LinearForm{{Int(0), Int(1)}});  // the point p = (1:0)
            std::vector<Rat> weights{t};
            while (static_cast<int>(forms.size()) < m + 1) {
                LinearForm f = detail::random_form(rng, 2, radius);
                if (!detail::contains(forms, f)) {
                    forms.push_back(std::move(f));
                    weights.push_back(small);
                } else {
                    ++radius;
                }
            }
            Arrangement a{1, std::move(forms), std::move(weights)};
            if (!validate(a)) return a;
        }
        throw std::runtime_error("gen_alpha_example: resampling exhausted");
    }

    const int cone_count = m * n;
    for (int attempt = 0; attempt < 256; ++attempt) {
        long radius = std::max<long>(3, m) + attempt / 8;
        std::vector<LinearForm> forms;
        // cones over hyperplanes of the directions P^{n-1}: zero z_0 coefficient
        while (static_cast<int>(forms.size()) < cone_count) {
            std::vector<Int> v(n + 1, 0);
            bool nonzero = false;
            for (int c = 1; c <= n; ++c) {
                v[c] = detail::range_to_int(rng, radius);
                if (v[c] != 0) nonzero = true;
            }
            if (!nonzero) continue;
            LinearForm f = normalize_form(v);
            if (!detail::contains(forms, f)) forms.push_back(std::move(f));
            else ++radius;
        }
        // general hyperplanes, kept off the cone point
        while (static_cast<int>(forms.size()) < cone_count + m) {
            LinearForm f = detail::random_form(rng, n + 1, radius);
            if (f.coeffs[0] == 0) continue;
            if (!detail::contains(forms, f)) forms.push_back(std::move(f));
            else ++radius;
        }
        Arrangement a{n, std::move(forms), std::vector<Rat>(cone_count + m, small)};
        if (validate(a)) continue;
        if (detail::alpha_example_certified(a, cone_count)) return a;
    }
    throw std::runtime_error("gen_alpha_example: genericity resampling exhausted");
}

// m distinct seeded points on P^1. With an empty weight list the weights are
// seeded rationals in (0,1), rescaled when needed so the total stays below 2
// and the pair is log Fano.
inline Arrangement gen_dim1(int m, std::vector<Rat> weights, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("gen_dim1: need at least one point");
    if (!weights.empty() && static_cast<int>(weights.size()) != m)
        throw std::invalid_argument("gen_dim1: need exactly one weight per point");
    Rng rng(seed);
    if (weights.empty()) {
        for (int i = 0; i < m; ++i) weights.push_back(rng.rat01());
        Rat total = 0;
        for (const Rat& w : weights) total += w;
        if (total >= 2)
            for (Rat& w : weights) w *= make_rat(7, 4) / total;
    }
    std::vector<LinearForm> forms;
    long radius = 3;
    while (static_cast<int>(forms.size()) < m) {
        LinearForm f = detail::random_form(rng, 2, radius);
        if (!detail::contains(forms, f)) forms.push_back(std::move(f));
        else ++radius;
    }
    Arrangement a{1, std::move(forms), std::move(weights)};
    require_valid(a);
    return a;
}

struct GenSpec {
    enum class Kind { Snc, Pencil, SJoin, AlphaExample, Dim1 };
    Kind kind = Kind::Snc;
    int dim = 0;
    int count = 0;
    int extras = 0;
    std::vector<Rat> weights;
    Rat t;
    std::uint64_t seed = 0;
    std::vector<Arrangement> factors;
};

inline Arrangement generate(const GenSpec& spec) {
    switch (spec.kind) {
        case GenSpec::Kind::Snc: return gen_snc(spec.dim, spec.count, spec.weights, spec.seed);
        case GenSpec::Kind::Pencil:
            return gen_pencil(spec.dim, spec.count, spec.extras, spec.weights, spec.seed);
        case GenSpec::Kind::SJoin: return s_join(spec.factors);
        case GenSpec::Kind::AlphaExample:
            return gen_alpha_example(spec.dim, spec.count, spec.t, spec.seed);
        case GenSpec::Kind::Dim1: return gen_dim1(spec.count, spec.weights, spec.seed);
    }
    throw std::invalid_argument("generate: unknown kind");
}

}  // namespace kstab
