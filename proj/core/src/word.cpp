#include "tcnet/word.hpp"

#include "tcnet/error.hpp"

namespace tcnet {

void TimedWord::check() const {
    if (events.empty())
        throw ValidationError("timed word must be nonempty");
    Rational prev(0);
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (!events[i].time.is_nonnegative())
            throw ValidationError("negative timestamp at position " + std::to_string(i + 1));
        if (events[i].time < prev)
            throw ValidationError("timestamps decrease at position " + std::to_string(i + 1));
        prev = events[i].time;
    }
}

std::vector<Rational> TimedWord::delays() const {
    std::vector<Rational> out;
    out.reserve(events.size());
    Rational prev(0);
    for (const auto& e : events) {
        out.push_back(e.time - prev);
        prev = e.time;
    }
    return out;
}

bool TimedWord::strictly_monotonic() const {
    for (std::size_t i = 1; i < events.size(); ++i)
        if (!(events[i - 1].time < events[i].time)) return false;
    return true;
}

std::string TimedWord::str() const {
    std::string out;
    for (const auto& e : events) {
        out += "(" + e.letter + "," + e.time.str() + ")";
    }
    return out;
}

TimedWord timed_word(std::vector<TimedEvent> events) {
    TimedWord w{std::move(events)};
    w.check();
    return w;
}

} // namespace tcnet
