// The classifier. For a log Fano arrangement (P^n, sum d_i H_i) with
// d = sum d_i and tau = (n+1)/d, the verdict is decided by comparing the
// ratio codim(W)/weight(W) against tau over all flats W:
//   some ratio < tau   -> K-unstable
//   all ratios > tau   -> uniformly K-stable (equivalently K-stable)
//   minimum equals tau -> K-semistable; K-polystable iff the Calabi-Yau
//                         rescaling is of class P.
// Delta = 0 is the special case "K-polystable but not K-stable".
#pragma once

#include "kstab/arrangement.hpp"
#include "kstab/classp.hpp"
#include "kstab/lattice.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kstab {

enum class Verdict {
    NotLogFano,
    Unstable,
    SemistableNotPolystable,
    PolystableNotKStable,
    UniformlyKStable,
};

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::NotLogFano: return "not_log_fano";
        case Verdict::Unstable: return "unstable";
        case Verdict::SemistableNotPolystable: return "semistable_not_polystable";
        case Verdict::PolystableNotKStable: return "polystable_not_k_stable";
        case Verdict::UniformlyKStable: return "uniformly_k_stable";
    }
    return "?";
}

struct Classification {
    Verdict verdict = Verdict::NotLogFano;
    std::optional<Flat> witness;  // minimizing or equality flat, earliest in lattice order
    std::string note;
};

struct BetaValue {
    Rat value;
    int codim = 0;    // c
    Rat flat_weight;  // d^W
    Rat total;        // d
};

struct StabilityPair {
    bool semistable = false;
    bool uniformly_stable = false;
};

struct LogFanoCheck {
    bool ok = false;
    std::string reason;
    std::optional<Flat> offender;  // a non-klt flat, when that is the reason
};

namespace detail {

inline LogFanoCheck log_fano_check_impl(const Arrangement& a, const Lattice& l) {
    const Rat d = total_degree(a);
    if (d >= a.dim + 1)
        return {false,
                "anticanonical class not ample: total degree " + rat_str(d) +
                    " >= " + std::to_string(a.dim + 1),
                std::nullopt};
    for (const Flat& f : l.flats) {
        const Rat dw = flat_weight(a, f);
        if (dw >= f.codim)
            return {false,
                    "not klt: flat of codimension " + std::to_string(f.codim) + " has weight " +
                        rat_str(dw),
                    f};
    }
    return {true, "", std::nullopt};
}

}  // namespace detail

inline LogFanoCheck log_fano_check(const Arrangement& a) {
    require_valid(a);
    return detail::log_fano_check_impl(a, all_flats(a));
}

inline bool is_log_fano(const Arrangement& a) { return log_fano_check(a).ok; }

// min over flats of codim(W)/weight(W); the log canonical threshold of the
// arrangement against (P^n, 0).
inline Rat lct(const Arrangement& a) {
    require_valid(a);
    if (a.size() == 0) throw std::invalid_argument("lct: empty arrangement");
    Lattice l = all_flats(a);
    Rat best;
    bool first = true;
    for (const Flat& f : l.flats) {
        Rat r = Rat(f.codim) / flat_weight(a, f);
        if (first || r < best) { best = r; first = false; }
    }
    return best;
}

// Rescales the weights so the total degree becomes exactly dim+1.
inline Arrangement scale_to_cy(const Arrangement& a) {
    require_valid(a);
    if (a.size() == 0) throw std::invalid_argument("scale_to_cy: empty arrangement");
    const Rat factor = Rat(a.dim + 1) / total_degree(a);
    Arrangement out = a;
    for (Rat& w : out.weights) w *= factor;
    return out;
}

inline Classification classify(const Arrangement& a) {
    require_valid(a);
    if (a.size() == 0)
        return {Verdict::PolystableNotKStable, std::nullopt, "(P^n, 0)"};

    Lattice l = all_flats(a);
    LogFanoCheck lf = detail::log_fano_check_impl(a, l);
    if (!lf.ok) return {Verdict::NotLogFano, lf.offender, lf.reason};

    const Rat tau = Rat(a.dim + 1) / total_degree(a);
    const Flat* min_flat = nullptr;
    Rat min_ratio;
    for (const Flat& f : l.flats) {
        Rat r = Rat(f.codim) / flat_weight(a, f);
        if (!min_flat || r < min_ratio) { min_flat = &f; min_ratio = r; }
    }
    if (min_ratio < tau) return {Verdict::Unstable, *min_flat, ""};
    if (min_ratio > tau) return {Verdict::UniformlyKStable, std::nullopt, ""};
    // minimum equals tau: K-semistable; polystable iff the CY rescaling is class P
    if (is_class_p(scale_to_cy(a)))
        return {Verdict::PolystableNotKStable, *min_flat, ""};
    return {Verdict::SemistableNotPolystable, *min_flat, ""};
}

// Normalized stability invariant of the exceptional divisor of the blowup
// along a flat W: (c d - (n+1) d^W) / ((n+1)(c - d^W)). Needs the
// arrangement to be log Fano so the denominator is positive.
inline BetaValue beta_hat_blowup(const Arrangement& a, const Flat& w) {
    require_valid(a);
    if (!flat_belongs(a, w)) throw std::invalid_argument("beta_hat_blowup: foreign flat");
    if (!is_log_fano(a)) throw std::invalid_argument("beta_hat_blowup: arrangement is not log Fano");
    const Rat d = total_degree(a);
    const Rat dw = flat_weight(a, w);
    const int c = w.codim;
    const int n = a.dim;
    BetaValue b;
    b.codim = c;
    b.flat_weight = dw;
    b.total = d;
    b.value = (c * d - (n + 1) * dw) / ((n + 1) * (Rat(c) - dw));
    return b;
}

// Distinct weighted points on P^1: uniformly K-stable iff every weight is
// less than the sum of the others, K-semistable with >=.
inline StabilityPair oracle_dim1(const std::vector<Rat>& weights) {
    if (weights.empty()) throw std::invalid_argument("oracle_dim1: empty weight list");
    Rat total = 0;
    for (const Rat& w : weights) {
        if (w <= 0 || w >= 1) throw std::invalid_argument("oracle_dim1: weight outside (0,1)");
        total += w;
    }
    StabilityPair out{true, true};
    for (const Rat& w : weights) {
        const Rat rest = total - w;
        if (rest < w) out.semistable = false;
        if (rest <= w) out.uniformly_stable = false;
    }
    return out;
}

// Subset-sum criterion for simple normal crossing log Fano arrangements:
// k * (sum of all weights) >= (n+1) * (sum of any k weights) for 1 <= k <= n,
// strict for uniform stability. Checking the k largest weights suffices.
inline StabilityPair oracle_snc(const Arrangement& a) {
    require_valid(a);
    if (a.size() == 0) throw std::invalid_argument("oracle_snc: empty arrangement");
    if (!is_snc(a)) throw std::invalid_argument("oracle_snc: arrangement is not simple normal crossing");
    if (!is_log_fano(a)) throw std::invalid_argument("oracle_snc: arrangement is not log Fano");
    std::vector<Rat> w = a.weights;
    std::sort(w.begin(), w.end(), [](const Rat& x, const Rat& y) { return x > y; });
    const Rat total = total_degree(a);
    StabilityPair out{true, true};
    Rat top = 0;
    for (int k = 1; k <= std::min(a.dim, a.size()); ++k) {
        top += w[k - 1];
        const Rat lhs = k * total;
        const Rat rhs = (a.dim + 1) * top;
        if (lhs < rhs) out.semistable = false;
        if (lhs <= rhs) out.uniformly_stable = false;
    }
    return out;
}

}  // namespace kstab
