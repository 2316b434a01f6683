// channel.hpp -- channel machines (finite control + unbounded fifo channel),
// their exact and insertion-error semantics, the timed-word encoding of
// computations with its validity conditions, and membership in the encoding
// languages L(C,n) / L_ef(C,n).
//
// Encoding scheme. A configuration (s, content) becomes a block: the state
// symbol at an integer time t, the channel content as strictly increasing
// symbols inside (t, t+1). Consecutive configurations sit two time units
// apart with the transition label halfway between. The channel is padded to
// a fixed length with '#' wildcards; the initial block writes '+' for every
// slot, the final block writes '-' and closes with '*'. Condition numbers:
//   (1)  strict monotonicity
//   (2)  untimed shape  s_I (+)* empty? (S M* #* L)* s_F -* *
//   (3)  every (state, label@+1, state@+2) triple is a machine transition
//   (4)  every non-final state has a label exactly one unit later
//   (5)  every non-final state has a state exactly two units later
//   (6)  every final-state occurrence has '*' exactly one unit later
//   (7)  empty?-blocks hold only {+,#} and copy each slot to '#' at +2
//   (8)  send-blocks replace the first '#' by the message at +2 and copy
//        every other slot verbatim at +2
//   (9)  receive-blocks start with the message, copy slots 2..k shifted
//        down at +2, and append a fresh '#' strictly after the last copy
//   (7')-(9')  as (7)-(9) for the block feeding the final state, with every
//        copied or appended symbol replaced by '-'
//   (10) between s_F and '*', '-' occurs exactly n times  (L_ef only)

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tcnet/automaton.hpp"
#include "tcnet/word.hpp"

namespace tcnet {

// ---------------------------------------------------------------------------
// Machines and configurations

struct ChannelLabel {
    enum class Kind { Send, Recv, EmptyTest };
    Kind kind = Kind::EmptyTest;
    std::string msg; // empty for EmptyTest

    static ChannelLabel send(std::string m) { return {Kind::Send, std::move(m)}; }
    static ChannelLabel recv(std::string m) { return {Kind::Recv, std::move(m)}; }
    static ChannelLabel empty_test() { return {Kind::EmptyTest, {}}; }

    std::string str() const; // "!m", "?m", "empty?"
    static ChannelLabel parse(const std::string& text);

    bool operator==(const ChannelLabel&) const = default;
    auto operator<=>(const ChannelLabel&) const = default;
};

struct ChannelMachine {
    struct Trans {
        std::string from;
        ChannelLabel label;
        std::string to;
        bool operator==(const Trans&) const = default;
        auto operator<=>(const Trans&) const = default;
    };

    std::set<std::string> states;
    std::string initial;
    /// Designated target state of the reachability question; the encoding
    /// languages and the generated automata are all relative to it.
    std::string final_state;
    std::set<std::string> messages;
    std::vector<Trans> transitions;

    /// The full label set over the machine's messages, sorted by text.
    std::vector<ChannelLabel> labels() const;

    /// Throws ValidationError on structural problems; also enforces the
    /// normalization that the initial state has no incoming transitions and
    /// leaves only via empty? labels.
    void check() const;
};

struct ChannelConfig {
    std::string state;
    std::vector<std::string> channel; // front = head, back = tail

    bool operator==(const ChannelConfig&) const = default;
    auto operator<=>(const ChannelConfig&) const = default;
};

/// Exact one-step successors under `label`.
std::vector<ChannelConfig> step_exact(const ChannelMachine& c, const ChannelConfig& cfg,
                                      const ChannelLabel& label);

/// Decides whether (cfg1 --label--> cfg2) is a step of the insertion-error
/// semantics: some supersequence of cfg1's channel takes an exact step whose
/// result is a subsequence of cfg2's channel.
bool step_faulty_check(const ChannelMachine& c, const ChannelConfig& cfg1,
                       const ChannelLabel& label, const ChannelConfig& cfg2);

struct ChannelStep {
    ChannelConfig from;
    ChannelLabel label;
    ChannelConfig to;
};
using Computation = std::vector<ChannelStep>;

enum class SearchMode { Exact, Faulty };

struct SearchBounds {
    std::size_t max_channel_len = 4;
    std::size_t max_depth = 20;
};

/// Bounded breadth-first reachability of a control state from (s_I, empty).
/// Faulty mode inserts up to the length bound after each exact step, which
/// reaches exactly the insertion-error-reachable states within the bounds.
/// Absence means "not found within bounds", never a definite negative.
std::optional<Computation> reachable(const ChannelMachine& c, const std::string& target,
                                     SearchMode mode, const SearchBounds& bounds);

// ---------------------------------------------------------------------------
// Encoding alphabet and languages

inline const Letter kPlus = "+";
inline const Letter kMinus = "-";
inline const Letter kHash = "#";
inline const Letter kStar = "*";

/// Partitioned alphabet of the encoding: states (minus the initial one),
/// messages, labels and '#' are internal; the initial state and '+' are
/// calls; '-' and '*' are returns.
VisiblyAlphabet encoding_alphabet(const ChannelMachine& c);

/// Violated condition identifiers among "1".."10","7'","8'","9'", sorted and
/// deduplicated; empty iff w encodes a (possibly faulty) computation from
/// the initial state to s_F with channel capacity n. Condition 10 is only
/// checked when `with_condition10` is set.
std::vector<std::string> check_conditions(const TimedWord& w, const ChannelMachine& c,
                                          std::int64_t n, bool with_condition10 = false);

/// Capacity inferred from the '+'-run after the initial state symbol.
std::int64_t infer_capacity(const TimedWord& w);

bool member_LC(const TimedWord& w, const ChannelMachine& c);
bool member_Lef(const TimedWord& w, const ChannelMachine& c);

/// Renders a computation (which must start at (s_I, empty)) as a timed word
/// with channel capacity n. Copies sit exactly two units after their source
/// symbol; fresh symbols take midpoints, and the first block spreads its
/// slots evenly at k/(n+1). Throws InputError when n is too small.
TimedWord encode_computation(const ChannelMachine& c, const Computation& comp,
                             std::int64_t n);

// ---------------------------------------------------------------------------
// Generated automata over the encoding alphabet

/// Clockless deterministic visibly one-counter net that counts the initial
/// block up (push on s_I and '+') and the final block down (pop on '-' and
/// '*'): accepted encodings never have a longer final block than initial
/// block, which is exactly what rules insertion errors out.
Automaton gen_exclusion_net(const ChannelMachine& c);

/// One-clock timed automaton accepting the complement of the encoding
/// language: the union of one small automaton per way to violate an
/// encoding condition.
Automaton gen_complement_ta(const ChannelMachine& c);

/// Visibly one-counter automaton accepting words whose final block has
/// strictly more '-' symbols than the initial block has slots (push on
/// s_I/'+', pops on '-', empty?-guarded exits on '-'/'*').
Automaton gen_condition10_vonca(const ChannelMachine& c);

/// union(visibly_lift(gen_complement_ta(c)), gen_condition10_vonca(c)):
/// a one-clock visibly one-counter automaton for the complement of the
/// error-free encoding language.
Automaton gen_universality_automaton(const ChannelMachine& c);

} // namespace tcnet
