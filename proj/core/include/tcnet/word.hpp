// word.hpp -- timed words: nonempty letter sequences with nondecreasing
// rational timestamps.

#pragma once

#include <compare>
#include <string>
#include <vector>

#include "tcnet/rational.hpp"

namespace tcnet {

using Letter = std::string;

struct TimedEvent {
    Letter letter;
    Rational time;

    bool operator==(const TimedEvent&) const = default;
    auto operator<=>(const TimedEvent&) const = default;
};

struct TimedWord {
    std::vector<TimedEvent> events;

    std::size_t size() const { return events.size(); }
    const TimedEvent& operator[](std::size_t i) const { return events[i]; }

    bool operator==(const TimedWord&) const = default;
    auto operator<=>(const TimedWord&) const = default;

    /// Throws ValidationError unless nonempty with nondecreasing nonnegative times.
    void check() const;

    /// Per-event delays: t_i - t_{i-1} with t_0 = 0.
    std::vector<Rational> delays() const;

    bool strictly_monotonic() const;

    /// "(a,1)(b,3/2)"
    std::string str() const;
};

/// Validating factory; the initializer-list shape is handy in tests.
TimedWord timed_word(std::vector<TimedEvent> events);

} // namespace tcnet
