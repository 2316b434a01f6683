// mtl.hpp -- metric temporal logic over finite timed words, pointwise
// semantics with a strict-future interval-constrained until.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "tcnet/word.hpp"

namespace tcnet {

/// Interval with endpoints in the naturals plus an open infinite upper end.
struct MtlInterval {
    std::int64_t lo = 0;
    bool lo_closed = true;
    std::optional<std::int64_t> hi; // nullopt = infinity (always open)
    bool hi_closed = false;

    bool contains(const Rational& v) const;
    bool valid() const; // nonempty
    std::string str() const;

    bool operator==(const MtlInterval&) const = default;
};

/// Immutable formula handle. Core connectives only; the usual derived
/// operators are provided as constructors that expand into the core.
class MtlFormula {
public:
    enum class Kind { True, Atom, Not, And, Until };

    static MtlFormula tt();
    static MtlFormula ff(); // !true
    static MtlFormula atom(Letter a);
    static MtlFormula negation(MtlFormula f);
    static MtlFormula conj(MtlFormula l, MtlFormula r);
    static MtlFormula disj(MtlFormula l, MtlFormula r);     // !(!l & !r)
    static MtlFormula implies(MtlFormula l, MtlFormula r);  // !l | r
    static MtlFormula until(MtlFormula l, MtlInterval i, MtlFormula r);
    static MtlFormula eventually(MtlInterval i, MtlFormula f); // true U_I f
    static MtlFormula always(MtlInterval i, MtlFormula f);     // !F_I !f

    Kind kind() const;
    const Letter& letter() const;        // Atom
    MtlFormula child() const;            // Not
    MtlFormula left() const;             // And, Until
    MtlFormula right() const;            // And, Until
    const MtlInterval& interval() const; // Until

    /// Canonical core-form text; parse_mtl round-trips it.
    std::string str() const;

    bool operator==(const MtlFormula& o) const;

private:
    struct Node;
    explicit MtlFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// (w, i) |= f for 1-based position i.
bool eval_at(const TimedWord& w, std::size_t i, const MtlFormula& f);

/// w |= f, i.e. eval_at(w, 1, f).
bool models(const TimedWord& w, const MtlFormula& f);

/// Grammar: atoms are identifiers; `true`, `false`, `!`, `&`, `|`,
/// `U[l,u]` / `U(l,u)` with mixed brackets and `inf`; `F`, `G` with the
/// same interval syntax (interval optional, default [0,inf)); parentheses.
/// Precedence: ! > U > & > |; U associates to the right.
MtlFormula parse_mtl(const std::string& text);

} // namespace tcnet
