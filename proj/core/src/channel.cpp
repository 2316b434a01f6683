#include "tcnet/channel.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "tcnet/error.hpp"
#include "tcnet/wqo.hpp"

namespace tcnet {

// ---------------------------------------------------------------------------
// Labels

std::string ChannelLabel::str() const {
    switch (kind) {
        case Kind::Send: return "!" + msg;
        case Kind::Recv: return "?" + msg;
        case Kind::EmptyTest: return "empty?";
    }
    return "";
}

ChannelLabel ChannelLabel::parse(const std::string& text) {
    if (text == "empty?") return empty_test();
    if (text.size() >= 2 && text[0] == '!') return send(text.substr(1));
    if (text.size() >= 2 && text[0] == '?') return recv(text.substr(1));
    throw ParseError("bad channel label: " + text);
}

// ---------------------------------------------------------------------------
// Machines

std::vector<ChannelLabel> ChannelMachine::labels() const {
    std::vector<ChannelLabel> out;
    for (const auto& m : messages) {
        out.push_back(ChannelLabel::send(m));
        out.push_back(ChannelLabel::recv(m));
    }
    out.push_back(ChannelLabel::empty_test());
    std::sort(out.begin(), out.end(),
              [](const ChannelLabel& a, const ChannelLabel& b) { return a.str() < b.str(); });
    return out;
}

void ChannelMachine::check() const {
    if (!states.count(initial))
        throw ValidationError("initial state '" + initial + "' not in state set");
    if (!states.count(final_state))
        throw ValidationError("final state '" + final_state + "' not in state set");
    for (const auto& t : transitions) {
        if (!states.count(t.from) || !states.count(t.to))
            throw ValidationError("transition references unknown state: " + t.from +
                                  " -" + t.label.str() + "-> " + t.to);
        if (t.label.kind != ChannelLabel::Kind::EmptyTest && !messages.count(t.label.msg))
            throw ValidationError("transition uses unknown message: " + t.label.str());
        if (t.to == initial)
            throw ValidationError("initial state must not have incoming transitions");
        if (t.from == initial && t.label.kind != ChannelLabel::Kind::EmptyTest)
            throw ValidationError("initial state may only leave via empty?");
    }
    // The encoding needs states, messages, label texts and the four wildcard
    // symbols to be pairwise distinct letters.
    std::set<std::string> seen;
    auto add = [&](const std::string& s, const char* what) {
        if (!seen.insert(s).second)
            throw ValidationError(std::string("symbol clash in encoding alphabet (") +
                                  what + " '" + s + "')");
    };
    for (const auto& s : states) add(s, "state");
    for (const auto& m : messages) add(m, "message");
    for (const auto& l : labels()) add(l.str(), "label");
    for (const auto& w : {kPlus, kMinus, kHash, kStar}) add(w, "wildcard");
}

// ---------------------------------------------------------------------------
// Semantics

std::vector<ChannelConfig> step_exact(const ChannelMachine& c, const ChannelConfig& cfg,
                                      const ChannelLabel& label) {
    std::vector<ChannelConfig> out;
    for (const auto& t : c.transitions) {
        if (t.from != cfg.state || t.label != label) continue;
        switch (label.kind) {
            case ChannelLabel::Kind::Send: {
                ChannelConfig next{t.to, cfg.channel};
                next.channel.push_back(label.msg);
                out.push_back(std::move(next));
                break;
            }
            case ChannelLabel::Kind::Recv: {
                if (cfg.channel.empty() || cfg.channel.front() != label.msg) break;
                ChannelConfig next{t.to,
                                   {cfg.channel.begin() + 1, cfg.channel.end()}};
                out.push_back(std::move(next));
                break;
            }
            case ChannelLabel::Kind::EmptyTest: {
                if (!cfg.channel.empty()) break;
                out.push_back(ChannelConfig{t.to, {}});
                break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool step_faulty_check(const ChannelMachine& c, const ChannelConfig& cfg1,
                       const ChannelLabel& label, const ChannelConfig& cfg2) {
    // One-step characterization of the insertion-error relation:
    //   !m:      some (s,!m,s') exists and  x1·m  is a subword of  x1'
    //   ?m:      some (s,?m,s') exists and  x1    is a subword of  m·x1'
    //   empty?:  some (s,empty?,s') exists and x1 is empty, x1' arbitrary
    for (const auto& t : c.transitions) {
        if (t.from != cfg1.state || t.to != cfg2.state || t.label != label) continue;
        switch (label.kind) {
            case ChannelLabel::Kind::Send: {
                std::vector<std::string> lhs = cfg1.channel;
                lhs.push_back(label.msg);
                if (subword_leq(lhs, cfg2.channel)) return true;
                break;
            }
            case ChannelLabel::Kind::Recv: {
                std::vector<std::string> rhs;
                rhs.reserve(cfg2.channel.size() + 1);
                rhs.push_back(label.msg);
                rhs.insert(rhs.end(), cfg2.channel.begin(), cfg2.channel.end());
                if (subword_leq(cfg1.channel, rhs)) return true;
                break;
            }
            case ChannelLabel::Kind::EmptyTest:
                if (cfg1.channel.empty()) return true;
                break;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Bounded reachability

namespace {

// All supersequences of x over the message set, up to max_len symbols.
void collect_supersequences(const std::vector<std::string>& x,
                            const std::set<std::string>& messages, std::size_t max_len,
                            std::vector<std::string>& prefix, std::size_t xi,
                            std::set<std::vector<std::string>>& out) {
    if (xi == x.size()) out.insert(prefix);
    if (prefix.size() >= max_len) return;
    if (xi < x.size()) {
        prefix.push_back(x[xi]);
        collect_supersequences(x, messages, max_len, prefix, xi + 1, out);
        prefix.pop_back();
    }
    for (const auto& m : messages) {
        prefix.push_back(m);
        collect_supersequences(x, messages, max_len, prefix, xi, out);
        prefix.pop_back();
    }
}

} // namespace

std::optional<Computation> reachable(const ChannelMachine& c, const std::string& target,
                                     SearchMode mode, const SearchBounds& bounds) {
    c.check();
    if (!c.states.count(target)) throw InputError("unknown target state: " + target);

    struct Meta {
        ChannelConfig parent;
        ChannelLabel label;
        std::size_t depth = 0;
        bool is_root = false;
    };
    std::map<ChannelConfig, Meta> seen;
    std::deque<ChannelConfig> queue;

    const ChannelConfig root{c.initial, {}};
    seen[root] = Meta{{}, {}, 0, true};
    queue.push_back(root);

    while (!queue.empty()) {
        const ChannelConfig cur = queue.front();
        queue.pop_front();
        const Meta meta = seen.at(cur);

        if (cur.state == target) {
            Computation comp;
            ChannelConfig at = cur;
            while (!seen.at(at).is_root) {
                const Meta& m = seen.at(at);
                comp.push_back(ChannelStep{m.parent, m.label, at});
                at = m.parent;
            }
            std::reverse(comp.begin(), comp.end());
            return comp;
        }
        if (meta.depth >= bounds.max_depth) continue;

        for (const auto& t : c.transitions) {
            if (t.from != cur.state) continue;
            for (const auto& exact : step_exact(c, cur, t.label)) {
                if (exact.state != t.to) continue;
                std::vector<ChannelConfig> nexts;
                if (mode == SearchMode::Exact) {
                    if (exact.channel.size() <= bounds.max_channel_len)
                        nexts.push_back(exact);
                } else {
                    // Insertion errors in post-normal form: take the exact
                    // step, then let extra symbols appear anywhere, capped
                    // by the channel-length bound.
                    std::set<std::vector<std::string>> supers;
                    std::vector<std::string> prefix;
                    collect_supersequences(exact.channel, c.messages,
                                           bounds.max_channel_len, prefix, 0, supers);
                    for (const auto& y : supers)
                        nexts.push_back(ChannelConfig{exact.state, y});
                }
                for (auto& nx : nexts) {
                    if (seen.count(nx)) continue;
                    seen[nx] = Meta{cur, t.label, meta.depth + 1, false};
                    queue.push_back(nx);
                }
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Encoding alphabet

VisiblyAlphabet encoding_alphabet(const ChannelMachine& c) {
    c.check();
    VisiblyAlphabet a;
    for (const auto& s : c.states)
        if (s != c.initial) a.internal.insert(s);
    for (const auto& m : c.messages) a.internal.insert(m);
    for (const auto& l : c.labels()) a.internal.insert(l.str());
    a.internal.insert(kHash);
    a.call = {c.initial, kPlus};
    a.ret = {kMinus, kStar};
    a.check();
    return a;
}

// ---------------------------------------------------------------------------
// Condition checker

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct WordView {
    const TimedWord& w;
    const ChannelMachine& c;
    std::set<std::string> label_set;

    WordView(const TimedWord& word, const ChannelMachine& machine) : w(word), c(machine) {
        for (const auto& l : machine.labels()) label_set.insert(l.str());
    }

    bool is_state(std::size_t i) const { return c.states.count(w[i].letter) > 0; }
    bool is_label(std::size_t i) const { return label_set.count(w[i].letter) > 0; }

    template <typename Pred>
    std::size_t find_at(const Rational& t, Pred pred) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i].time == t && pred(i)) return i;
        return npos;
    }
};

// Untimed shape:  s_I (+)* empty? (S M* #* L)* s_F -* *
// NFA states: 0 start, 1 plus-run, 2 block boundary, 3 messages,
// 4 wildcards, 5 tail, 6 accept. s_F at a boundary may open either a
// regular block or the tail.
bool untimed_shape_ok(const WordView& v) {
    std::set<int> states{0};
    for (std::size_t i = 0; i < v.w.size(); ++i) {
        const Letter& a = v.w[i].letter;
        std::set<int> next;
        for (int q : states) {
            switch (q) {
                case 0:
                    if (a == v.c.initial) next.insert(1);
                    break;
                case 1:
                    if (a == kPlus) next.insert(1);
                    if (a == "empty?") next.insert(2);
                    break;
                case 2:
                    if (v.c.states.count(a)) next.insert(3);
                    if (a == v.c.final_state) next.insert(5);
                    break;
                case 3:
                    if (v.c.messages.count(a)) next.insert(3);
                    if (a == kHash) next.insert(4);
                    if (v.label_set.count(a)) next.insert(2);
                    break;
                case 4:
                    if (a == kHash) next.insert(4);
                    if (v.label_set.count(a)) next.insert(2);
                    break;
                case 5:
                    if (a == kMinus) next.insert(5);
                    if (a == kStar) next.insert(6);
                    break;
                default:
                    break;
            }
        }
        states = std::move(next);
        if (states.empty()) return false;
    }
    return states.count(6) > 0;
}

// The consecutive shape
//   (s,t)(sigma...)(l,t+1)(s',t+2)(sigma'...)(close,t+3)
// starting at a state occurrence; close is a label (s' != s_F) or '*'
// (s' == s_F, the primed variant).
struct Infix {
    std::size_t state_pos = npos;
    std::vector<std::size_t> sigma;
    std::size_t label_pos = npos;
    std::size_t next_state_pos = npos;
    std::vector<std::size_t> sigma2;
    std::size_t close_pos = npos;
    bool primed = false;
};

std::optional<Infix> match_infix(const WordView& v, std::size_t i) {
    const Rational t = v.w[i].time;
    const Rational one(1), two(2), three(3);
    Infix fx;
    fx.state_pos = i;

    std::size_t j = i + 1;
    Rational prev = t;
    while (j < v.w.size() && v.w[j].time < t + one) {
        if (!(prev < v.w[j].time)) return std::nullopt;
        prev = v.w[j].time;
        fx.sigma.push_back(j);
        ++j;
    }
    if (j >= v.w.size() || v.w[j].time != t + one || !v.is_label(j)) return std::nullopt;
    fx.label_pos = j;

    const std::size_t k = j + 1;
    if (k >= v.w.size() || v.w[k].time != t + two || !v.is_state(k)) return std::nullopt;
    fx.next_state_pos = k;
    fx.primed = v.w[k].letter == v.c.final_state;

    std::size_t m = k + 1;
    prev = t + two;
    while (m < v.w.size() && v.w[m].time < t + three) {
        if (!(prev < v.w[m].time)) return std::nullopt;
        prev = v.w[m].time;
        fx.sigma2.push_back(m);
        ++m;
    }
    if (m >= v.w.size() || v.w[m].time != t + three) return std::nullopt;
    if (fx.primed) {
        if (v.w[m].letter != kStar) return std::nullopt;
    } else {
        if (!v.is_label(m)) return std::nullopt;
    }
    fx.close_pos = m;
    return fx;
}

// Looks inside sigma2 for the unique symbol at exactly `when`; returns npos
// if absent.
std::size_t copy_at(const WordView& v, const std::vector<std::size_t>& sigma2,
                    const Rational& when) {
    for (std::size_t p : sigma2)
        if (v.w[p].time == when) return p;
    return npos;
}

void check_infix(const WordView& v, const Infix& fx, std::set<std::string>& bad) {
    const ChannelLabel l = ChannelLabel::parse(v.w[fx.label_pos].letter);
    const Rational two(2);
    const auto id = [&](const char* base) {
        return fx.primed ? std::string(base) + "'" : std::string(base);
    };

    switch (l.kind) {
        case ChannelLabel::Kind::EmptyTest: {
            const std::string expected = fx.primed ? kMinus : kHash;
            for (std::size_t p : fx.sigma) {
                const Letter& s = v.w[p].letter;
                if (s != kPlus && s != kHash) {
                    bad.insert(id("7"));
                    continue;
                }
                const std::size_t cp = copy_at(v, fx.sigma2, v.w[p].time + two);
                if (cp == npos || v.w[cp].letter != expected) bad.insert(id("7"));
            }
            break;
        }
        case ChannelLabel::Kind::Send: {
            std::size_t first_hash = npos;
            for (std::size_t p : fx.sigma)
                if (v.w[p].letter == kHash) { first_hash = p; break; }
            if (first_hash == npos) {
                bad.insert(id("8"));
                break;
            }
            for (std::size_t p : fx.sigma) {
                const std::string expected =
                    fx.primed ? kMinus : (p == first_hash ? l.msg : v.w[p].letter);
                const std::size_t cp = copy_at(v, fx.sigma2, v.w[p].time + two);
                if (cp == npos || v.w[cp].letter != expected) bad.insert(id("8"));
            }
            break;
        }
        case ChannelLabel::Kind::Recv: {
            if (fx.sigma.empty() || v.w[fx.sigma.front()].letter != l.msg) {
                bad.insert(id("9"));
                break;
            }
            for (std::size_t i = 1; i < fx.sigma.size(); ++i) {
                const std::size_t src = fx.sigma[i];
                const std::string expected = fx.primed ? kMinus : v.w[src].letter;
                const std::size_t cp = copy_at(v, fx.sigma2, v.w[src].time + two);
                if (cp == npos || v.w[cp].letter != expected) bad.insert(id("9"));
            }
            // A fresh wildcard must close the next block, strictly after the
            // last copy slot.
            const std::string appended = fx.primed ? kMinus : kHash;
            if (fx.sigma2.empty()) {
                bad.insert(id("9"));
                break;
            }
            const std::size_t last2 = fx.sigma2.back();
            const Rational deadline = v.w[fx.sigma.back()].time + two;
            if (v.w[last2].letter != appended || !(v.w[last2].time > deadline))
                bad.insert(id("9"));
            break;
        }
    }
}

} // namespace

std::int64_t infer_capacity(const TimedWord& w) {
    std::int64_t n = 0;
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i].letter == kPlus)
            ++n;
        else
            break;
    }
    return n;
}

std::vector<std::string> check_conditions(const TimedWord& w, const ChannelMachine& c,
                                          std::int64_t n, bool with_condition10) {
    w.check();
    const VisiblyAlphabet sigma = encoding_alphabet(c);
    for (const auto& e : w.events)
        if (!sigma.contains(e.letter))
            throw InputError("letter '" + e.letter + "' outside the encoding alphabet");

    WordView v(w, c);
    std::set<std::string> bad;
    const Rational one(1), two(2);

    // (1) strict monotonicity
    if (!w.strictly_monotonic()) bad.insert("1");

    // (2) untimed shape with exactly n '+' slots
    if (!untimed_shape_ok(v) || infer_capacity(w) != n) bad.insert("2");

    // (3)-(6): pointwise timestamp conditions over state occurrences
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!v.is_state(i)) continue;
        const Letter& s = w[i].letter;
        const Rational t = w[i].time;
        const std::size_t lp = v.find_at(t + one, [&](std::size_t j) { return v.is_label(j); });
        const std::size_t sp = v.find_at(t + two, [&](std::size_t j) { return v.is_state(j); });

        if (lp != npos && sp != npos) {
            const ChannelLabel l = ChannelLabel::parse(w[lp].letter);
            bool in_delta = false;
            for (const auto& tr : c.transitions)
                if (tr.from == s && tr.label == l && tr.to == w[sp].letter) {
                    in_delta = true;
                    break;
                }
            if (!in_delta) bad.insert("3");
        }
        if (s != c.final_state) {
            if (lp == npos) bad.insert("4");
            if (sp == npos) bad.insert("5");
        } else {
            const std::size_t star = v.find_at(
                t + one, [&](std::size_t j) { return w[j].letter == kStar; });
            if (star == npos) bad.insert("6");
        }
    }

    // (7)-(9) and their primed variants over every matched infix
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!v.is_state(i) || w[i].letter == c.final_state) continue;
        if (auto fx = match_infix(v, i)) check_infix(v, *fx, bad);
    }

    // (10): between the tail s_F and '*', '-' occurs exactly n times
    if (with_condition10) {
        std::size_t sf = npos;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i].letter == c.final_state) sf = i;
        std::int64_t minuses = 0;
        if (sf != npos)
            for (std::size_t i = sf + 1; i < w.size() && w[i].letter != kStar; ++i)
                if (w[i].letter == kMinus) ++minuses;
        if (sf == npos || minuses != n) bad.insert("10");
    }

    // Canonical report order: 1..10 then the primed identifiers.
    static const std::vector<std::string> order = {"1", "2", "3",  "4",  "5",  "6",  "7",
                                                   "8", "9", "10", "7'", "8'", "9'"};
    std::vector<std::string> out;
    for (const auto& id : order)
        if (bad.count(id)) out.push_back(id);
    return out;
}

bool member_LC(const TimedWord& w, const ChannelMachine& c) {
    return check_conditions(w, c, infer_capacity(w), false).empty();
}

bool member_Lef(const TimedWord& w, const ChannelMachine& c) {
    const std::int64_t n = infer_capacity(w);
    return n >= 1 && check_conditions(w, c, n, true).empty();
}

// ---------------------------------------------------------------------------
// Encoder

namespace {

struct Slot {
    std::string sym;
    Rational off; // fractional offset inside the block, in (0,1)
};

// Exact channel effect of `label` on `content`; nullopt when not applicable.
std::optional<std::vector<std::string>> apply_label(const std::vector<std::string>& content,
                                                    const ChannelLabel& label) {
    switch (label.kind) {
        case ChannelLabel::Kind::Send: {
            auto next = content;
            next.push_back(label.msg);
            return next;
        }
        case ChannelLabel::Kind::Recv:
            if (content.empty() || content.front() != label.msg) return std::nullopt;
            return std::vector<std::string>(content.begin() + 1, content.end());
        case ChannelLabel::Kind::EmptyTest:
            if (!content.empty()) return std::nullopt;
            return content;
    }
    return std::nullopt;
}

} // namespace

TimedWord encode_computation(const ChannelMachine& c, const Computation& comp,
                             std::int64_t n) {
    c.check();
    if (n < 0) throw InputError("channel capacity must be nonnegative");
    if (!comp.empty()) {
        if (comp.front().from.state != c.initial || !comp.front().from.channel.empty())
            throw InputError("computation must start at the initial configuration");
        for (std::size_t i = 1; i < comp.size(); ++i)
            if (!(comp[i].from == comp[i - 1].to))
                throw InputError("computation steps do not chain");
    }

    TimedWord w;
    Rational base(1);

    // Initial block: the initial state symbol plus n '+' slots evenly spread.
    w.events.push_back({c.initial, base});
    std::vector<Slot> slots;
    for (std::int64_t k = 1; k <= n; ++k) {
        Slot s{kPlus, Rational(k, n + 1)};
        w.events.push_back({s.sym, base + s.off});
        slots.push_back(std::move(s));
    }

    for (std::size_t si = 0; si < comp.size(); ++si) {
        const ChannelStep& stp = comp[si];
        // Label one unit after the current block, next state one unit later.
        w.events.push_back({stp.label.str(), base + Rational(1)});
        base += Rational(2);

        const auto exact = apply_label(stp.from.channel, stp.label);
        if (!exact)
            throw InputError("label " + stp.label.str() +
                             " not applicable; computation not in insert-after form");
        if (!subword_leq(*exact, stp.to.channel))
            throw InputError("step result is not a supersequence of the exact result");

        // Apply the label to the padded slots.
        std::vector<Slot> next;
        switch (stp.label.kind) {
            case ChannelLabel::Kind::EmptyTest:
                next = slots;
                for (auto& s : next) {
                    if (s.sym != kPlus && s.sym != kHash)
                        throw InternalError("empty? over non-wildcard content");
                    s.sym = kHash;
                }
                break;
            case ChannelLabel::Kind::Send: {
                next = slots;
                auto it = std::find_if(next.begin(), next.end(),
                                       [](const Slot& s) { return s.sym == kHash; });
                if (it == next.end())
                    throw InputError("channel capacity " + std::to_string(n) +
                                     " too small for this computation");
                it->sym = stp.label.msg;
                break;
            }
            case ChannelLabel::Kind::Recv: {
                if (slots.empty() || slots.front().sym != stp.label.msg)
                    throw InternalError("padded content out of sync with computation");
                next.assign(slots.begin() + 1, slots.end());
                const Rational last = slots.back().off;
                next.push_back(Slot{kHash, midpoint(last, Rational(1))});
                break;
            }
        }

        // Weave the inserted symbols (present in to.channel but not in the
        // exact result) between the copied slots; the message zone of
        // `next` is exactly *exact*, in order, followed by the wildcards.
        const std::size_t exact_len = exact->size();
        const Rational after_msgs = exact_len < next.size() ? next[exact_len].off : Rational(1);
        std::vector<Slot> woven;
        std::size_t xi = 0;
        Rational prev(0);
        for (const auto& y : stp.to.channel) {
            if (xi < exact_len && (*exact)[xi] == y) {
                woven.push_back(next[xi]);
                prev = next[xi].off;
                ++xi;
            } else {
                const Rational bound = xi < exact_len ? next[xi].off : after_msgs;
                Slot ins{y, midpoint(prev, bound)};
                prev = ins.off;
                woven.push_back(std::move(ins));
            }
        }
        if (xi != exact_len)
            throw InternalError("insertion weaving failed to embed the exact result");
        woven.insert(woven.end(), next.begin() + static_cast<std::ptrdiff_t>(exact_len),
                     next.end());
        slots = std::move(woven);

        // Emit the next block.
        const bool final_block =
            si + 1 == comp.size() && stp.to.state == c.final_state;
        w.events.push_back({stp.to.state, base});
        for (const auto& s : slots)
            w.events.push_back({final_block ? kMinus : s.sym, base + s.off});
        if (final_block) w.events.push_back({kStar, base + Rational(1)});
    }

    w.check();
    return w;
}

} // namespace tcnet
