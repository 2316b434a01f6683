// automaton.hpp -- one unified automaton type covering timed automata,
// timed pushdown automata, timed one-counter automata/nets and timed
// counter nets, together with their exact concrete semantics.
//
// The store discriminator decides the flavour:
//   NoStore      -- plain timed automaton,
//   StackStore   -- pushdown; a singleton stack alphabet is a counter
//                   (push = increment, pop = decrement, empty? = zero test),
//   CounterStore -- n counters updated by {-1,0,1} vectors, no zero tests;
//                   updates that would go negative block the edge.
// Class membership (net? visibly? deterministic?) is a validation report,
// not a type distinction, so generators and unions share one representation.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tcnet/word.hpp"

namespace tcnet {

// ---------------------------------------------------------------------------
// Clock constraints

enum class Rel { Lt, Le, Eq, Ge, Gt };

std::string rel_str(Rel r);
Rel rel_parse(const std::string& s);

struct ClockAtom {
    std::string clock;
    Rel rel;
    std::int64_t bound; // natural

    bool operator==(const ClockAtom&) const = default;
    auto operator<=>(const ClockAtom&) const = default;
};

/// Conjunction of atoms; the empty list is `true`.
using ClockConstraint = std::vector<ClockAtom>;

bool atom_holds(const ClockAtom& atom, const Rational& value);

// ---------------------------------------------------------------------------
// Stores

struct NoStore {
    bool operator==(const NoStore&) const = default;
    auto operator<=>(const NoStore&) const = default;
};
struct StackStore {
    std::set<std::string> alphabet; // nonempty
    bool operator==(const StackStore&) const = default;
    auto operator<=>(const StackStore&) const = default;
};
struct CounterStore {
    std::int64_t dimension = 0; // >= 0; 0 embeds plain timed automata
    bool operator==(const CounterStore&) const = default;
    auto operator<=>(const CounterStore&) const = default;
};
using StoreSpec = std::variant<NoStore, StackStore, CounterStore>;

struct OpNoop {
    bool operator==(const OpNoop&) const = default;
    auto operator<=>(const OpNoop&) const = default;
};
struct OpPush {
    std::string symbol;
    bool operator==(const OpPush&) const = default;
    auto operator<=>(const OpPush&) const = default;
};
struct OpPop {
    std::string symbol;
    bool operator==(const OpPop&) const = default;
    auto operator<=>(const OpPop&) const = default;
};
struct OpEmptyTest {
    bool operator==(const OpEmptyTest&) const = default;
    auto operator<=>(const OpEmptyTest&) const = default;
};
struct OpCounter {
    std::vector<std::int64_t> delta; // entries in {-1,0,1}
    bool operator==(const OpCounter&) const = default;
    auto operator<=>(const OpCounter&) const = default;
};
using StoreOp = std::variant<OpNoop, OpPush, OpPop, OpEmptyTest, OpCounter>;

/// Stack word (front = top) / counter vector / unit, matching the StoreSpec.
using StoreContent = std::variant<std::monostate,
                                  std::vector<std::string>,
                                  std::vector<std::int64_t>>;

// ---------------------------------------------------------------------------
// Alphabet

struct VisiblyAlphabet {
    std::set<Letter> internal;
    std::set<Letter> call;
    std::set<Letter> ret;

    bool operator==(const VisiblyAlphabet&) const = default;

    bool contains(const Letter& a) const;
    /// All letters, sorted.
    std::set<Letter> all() const;
    /// Flat alphabet: every letter internal.
    static VisiblyAlphabet flat(std::set<Letter> letters);

    void check() const; // disjointness, nonempty union
};

// ---------------------------------------------------------------------------
// Automaton

struct Edge {
    std::string from;
    Letter letter;
    ClockConstraint guard;
    StoreOp op;
    std::set<std::string> resets;
    std::string to;

    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge&) const = default;
};

struct Automaton {
    VisiblyAlphabet alphabet;
    StoreSpec store;
    std::set<std::string> locations;
    std::set<std::string> initial;
    std::set<std::string> accepting;
    std::set<std::string> clocks;
    std::vector<Edge> edges;

    std::int64_t counter_dimension() const; // 0 unless CounterStore
    StoreContent empty_store() const;
};

struct ConcreteState {
    std::string location;
    std::map<std::string, Rational> clocks;
    StoreContent store;

    bool operator==(const ConcreteState&) const = default;
    auto operator<=>(const ConcreteState&) const = default;
};

struct RunStep {
    ConcreteState from;
    Rational delay;
    Letter letter;
    ConcreteState to;
};
using Run = std::vector<RunStep>;

// ---------------------------------------------------------------------------
// Operations

/// Which subclasses the automaton belongs to. `reasons` explains every
/// false entry that has a non-obvious cause.
struct ClassReport {
    bool is_timed_automaton = false;
    bool is_tpda = false;
    bool is_one_counter = false;
    bool is_counter_net = false;
    bool is_visibly = false;
    bool is_deterministic_clockless_visibly_net = false;
    bool is_one_clock = false;
    std::vector<std::string> reasons;
};

/// Structural validation plus class report. Throws ValidationError on
/// malformed input, naming the offending edge.
ClassReport validate(const Automaton& aut);

/// All states reachable from `state` by delaying `delay` and then taking
/// one `letter` edge. Blocked edges (pop on empty, negative counter)
/// contribute nothing; the empty set is a legal result.
std::vector<ConcreteState> step(const Automaton& aut, const ConcreteState& state,
                                const Rational& delay, const Letter& letter);

ConcreteState initial_state(const Automaton& aut, const std::string& location);

struct MembershipResult {
    bool accepted = false;
    std::optional<Run> witness;
};

/// Breadth-first state-set simulation with per-position deduplication.
MembershipResult membership(const Automaton& aut, const TimedWord& w);

/// Disjoint union: accepts L(a1) union L(a2). Requires equal alphabets and
/// same store kind. Locations are prefixed "u<i>." to force disjointness.
Automaton automaton_union(const Automaton& a1, const Automaton& a2);
Automaton automaton_union(const std::vector<Automaton>& parts);

/// Turns a store-free automaton over a visibly alphabet into a
/// language-equivalent visibly one-counter automaton: call edges push,
/// internal edges stay noop, and every return edge is doubled into a
/// pop edge and an empty? edge.
Automaton visibly_lift(const Automaton& aut);

/// Normalizes to a CounterStore automaton: plain automata get dimension 0,
/// singleton-stack automata without zero tests become dimension-1 nets.
/// Throws for automata that are not counter nets.
Automaton to_counter_net(const Automaton& aut);

} // namespace tcnet
