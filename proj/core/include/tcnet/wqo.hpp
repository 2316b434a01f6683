// wqo.hpp -- quasi-order combinators: pointwise vector order, products,
// monotone domination of sequences, injective subset order, subword order.
//
// Every combinator takes a decidable base predicate and returns a decision.
// The sequence and set liftings preserve well-quasi-orderedness, which is
// what guarantees termination of the inclusion search built on top of them.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tcnet/error.hpp"

namespace tcnet {

/// Pointwise order on equal-length integer vectors.
inline bool vec_leq(const std::vector<std::int64_t>& u,
                    const std::vector<std::int64_t>& v) {
    if (u.size() != v.size())
        throw InputError("vec_leq: dimension mismatch (" +
                         std::to_string(u.size()) + " vs " + std::to_string(v.size()) + ")");
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > v[i]) return false;
    return true;
}

/// Componentwise conjunction of two base orders.
template <typename LeqA, typename LeqB>
auto product_leq(LeqA leqA, LeqB leqB) {
    return [leqA, leqB](const auto& p, const auto& q) {
        return leqA(p.first, q.first) && leqB(p.second, q.second);
    };
}

/// Monotone domination: s embeds into t via a strictly increasing index map
/// with s_i below the matched element. Greedy earliest-match; the exchange
/// property makes greedy equivalent to existence (exercised against a
/// brute-force oracle in the tests).
template <typename T, typename Leq>
bool embed_leq(Leq base, const std::vector<T>& s, const std::vector<T>& t) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        while (j < t.size() && !base(s[i], t[j])) ++j;
        if (j == t.size()) return false;
        ++j;
    }
    return true;
}

/// Injective lifting to finite sets (given as duplicate-free vectors):
/// true iff some injection f : a -> b has x below f(x) for all x.
/// Decided as a maximum bipartite matching (Kuhn's augmenting paths).
template <typename T, typename Leq>
bool subset_leq(Leq base, const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() > b.size()) return false;
    std::vector<std::vector<std::size_t>> adj(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (base(a[i], b[j])) adj[i].push_back(j);

    std::vector<int> match_b(b.size(), -1);
    std::vector<char> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t i) {
        for (std::size_t j : adj[i]) {
            if (seen[j]) continue;
            seen[j] = 1;
            if (match_b[j] < 0 || augment(static_cast<std::size_t>(match_b[j]))) {
                match_b[j] = static_cast<int>(i);
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < a.size(); ++i) {
        seen.assign(b.size(), 0);
        if (!augment(i)) return false;
    }
    return true;
}

/// Subword (scattered subsequence) order on words of letters.
inline bool subword_leq(const std::vector<std::string>& x,
                        const std::vector<std::string>& y) {
    return embed_leq([](const std::string& a, const std::string& b) { return a == b; },
                     x, y);
}

} // namespace tcnet
