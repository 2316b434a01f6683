#include "tcnet/automaton.hpp"

#include <algorithm>
#include <deque>

#include "tcnet/error.hpp"

namespace tcnet {

// ---------------------------------------------------------------------------
// Clock constraints

std::string rel_str(Rel r) {
    switch (r) {
        case Rel::Lt: return "<";
        case Rel::Le: return "<=";
        case Rel::Eq: return "=";
        case Rel::Ge: return ">=";
        case Rel::Gt: return ">";
    }
    return "?";
}

Rel rel_parse(const std::string& s) {
    if (s == "<") return Rel::Lt;
    if (s == "<=") return Rel::Le;
    if (s == "=" || s == "==") return Rel::Eq;
    if (s == ">=") return Rel::Ge;
    if (s == ">") return Rel::Gt;
    throw ParseError("unknown relation: " + s);
}

bool atom_holds(const ClockAtom& atom, const Rational& value) {
    const Rational b(atom.bound);
    switch (atom.rel) {
        case Rel::Lt: return value < b;
        case Rel::Le: return value <= b;
        case Rel::Eq: return value == b;
        case Rel::Ge: return value >= b;
        case Rel::Gt: return value > b;
    }
    return false;
}

static bool guard_holds(const ClockConstraint& guard,
                        const std::map<std::string, Rational>& valuation) {
    for (const auto& atom : guard)
        if (!atom_holds(atom, valuation.at(atom.clock))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Alphabet

bool VisiblyAlphabet::contains(const Letter& a) const {
    return internal.count(a) || call.count(a) || ret.count(a);
}

std::set<Letter> VisiblyAlphabet::all() const {
    std::set<Letter> out = internal;
    out.insert(call.begin(), call.end());
    out.insert(ret.begin(), ret.end());
    return out;
}

VisiblyAlphabet VisiblyAlphabet::flat(std::set<Letter> letters) {
    return VisiblyAlphabet{std::move(letters), {}, {}};
}

void VisiblyAlphabet::check() const {
    for (const auto& a : internal)
        if (call.count(a) || ret.count(a))
            throw ValidationError("alphabet classes not disjoint at letter '" + a + "'");
    for (const auto& a : call)
        if (ret.count(a))
            throw ValidationError("alphabet classes not disjoint at letter '" + a + "'");
    if (internal.empty() && call.empty() && ret.empty())
        throw ValidationError("alphabet must be nonempty");
}

// ---------------------------------------------------------------------------
// Automaton basics

std::int64_t Automaton::counter_dimension() const {
    if (const auto* c = std::get_if<CounterStore>(&store)) return c->dimension;
    return 0;
}

StoreContent Automaton::empty_store() const {
    if (std::holds_alternative<NoStore>(store)) return std::monostate{};
    if (std::holds_alternative<StackStore>(store)) return std::vector<std::string>{};
    return std::vector<std::int64_t>(
        static_cast<std::size_t>(std::get<CounterStore>(store).dimension), 0);
}

// ---------------------------------------------------------------------------
// validate

namespace {

std::string edge_str(const Edge& e) {
    return "(" + e.from + "," + e.letter + "->" + e.to + ")";
}

enum class OpClass { Noop, Push, PopOrEmpty, Counter };

OpClass op_class(const StoreOp& op) {
    if (std::holds_alternative<OpNoop>(op)) return OpClass::Noop;
    if (std::holds_alternative<OpPush>(op)) return OpClass::Push;
    if (std::holds_alternative<OpCounter>(op)) return OpClass::Counter;
    return OpClass::PopOrEmpty;
}

} // namespace

ClassReport validate(const Automaton& aut) {
    aut.alphabet.check();

    const bool has_stack = std::holds_alternative<StackStore>(aut.store);
    const bool has_counters = std::holds_alternative<CounterStore>(aut.store);
    const bool no_store = std::holds_alternative<NoStore>(aut.store);

    if (has_stack && std::get<StackStore>(aut.store).alphabet.empty())
        throw ValidationError("stack alphabet must be nonempty");
    if (has_counters && std::get<CounterStore>(aut.store).dimension < 0)
        throw ValidationError("counter dimension must be nonnegative");

    for (const auto& l : aut.initial)
        if (!aut.locations.count(l))
            throw ValidationError("initial location '" + l + "' not in location set");
    for (const auto& l : aut.accepting)
        if (!aut.locations.count(l))
            throw ValidationError("accepting location '" + l + "' not in location set");

    bool any_empty_test = false;
    for (const auto& e : aut.edges) {
        if (!aut.locations.count(e.from) || !aut.locations.count(e.to))
            throw ValidationError("dangling location on edge " + edge_str(e));
        if (!aut.alphabet.contains(e.letter))
            throw ValidationError("letter outside alphabet on edge " + edge_str(e));
        for (const auto& atom : e.guard)
            if (!aut.clocks.count(atom.clock))
                throw ValidationError("unknown clock '" + atom.clock + "' on edge " + edge_str(e));
        for (const auto& x : e.resets)
            if (!aut.clocks.count(x))
                throw ValidationError("unknown reset clock '" + x + "' on edge " + edge_str(e));

        if (const auto* p = std::get_if<OpPush>(&e.op)) {
            if (!has_stack || !std::get<StackStore>(aut.store).alphabet.count(p->symbol))
                throw ValidationError("bad push symbol on edge " + edge_str(e));
        } else if (const auto* p = std::get_if<OpPop>(&e.op)) {
            if (!has_stack || !std::get<StackStore>(aut.store).alphabet.count(p->symbol))
                throw ValidationError("bad pop symbol on edge " + edge_str(e));
        } else if (std::holds_alternative<OpEmptyTest>(e.op)) {
            if (!has_stack)
                throw ValidationError("empty? on storeless edge " + edge_str(e));
            any_empty_test = true;
        } else if (const auto* c = std::get_if<OpCounter>(&e.op)) {
            if (!has_counters ||
                c->delta.size() !=
                    static_cast<std::size_t>(std::get<CounterStore>(aut.store).dimension))
                throw ValidationError("counter update of wrong dimension on edge " + edge_str(e));
            for (auto d : c->delta)
                if (d < -1 || d > 1)
                    throw ValidationError("counter update outside {-1,0,1} on edge " + edge_str(e));
        } else { // noop
            if (has_counters)
                throw ValidationError("counter edges must carry update vectors: " + edge_str(e));
        }
    }

    ClassReport rep;
    rep.is_timed_automaton = no_store;
    rep.is_tpda = no_store || has_stack;
    rep.is_one_counter = has_stack && std::get<StackStore>(aut.store).alphabet.size() == 1;
    rep.is_one_clock = aut.clocks.size() == 1;
    rep.is_counter_net =
        has_counters || no_store || (rep.is_one_counter && !any_empty_test);
    if (has_stack && !rep.is_one_counter)
        rep.reasons.push_back("not a counter net: stack alphabet is not a singleton");
    if (rep.is_one_counter && any_empty_test)
        rep.reasons.push_back("not a counter net: zero test used");

    // Visibly: letter class dictates the operation class on every edge.
    if (has_counters) {
        rep.is_visibly = false;
        rep.reasons.push_back("not visibly: counter updates have no operation classes");
    } else {
        rep.is_visibly = true;
        for (const auto& e : aut.edges) {
            const OpClass oc = op_class(e.op);
            const bool ok =
                (aut.alphabet.internal.count(e.letter) && oc == OpClass::Noop) ||
                (aut.alphabet.call.count(e.letter) && oc == OpClass::Push) ||
                (aut.alphabet.ret.count(e.letter) && oc == OpClass::PopOrEmpty);
            if (!ok) {
                rep.is_visibly = false;
                rep.reasons.push_back("not visibly: op/letter class mismatch on edge " + edge_str(e));
                break;
            }
        }
    }

    // Determinism is defined only for clockless visibly one-counter nets:
    // two distinct edges may share (source, letter) only as a pop/empty? pair.
    if (!aut.clocks.empty() || !rep.is_visibly || !rep.is_one_counter ||
        !rep.is_counter_net) {
        rep.is_deterministic_clockless_visibly_net = false;
        rep.reasons.push_back(
            "determinism not applicable: defined only for clockless visibly one-counter nets");
    } else {
        rep.is_deterministic_clockless_visibly_net = true;
        for (std::size_t i = 0; i < aut.edges.size() &&
                                rep.is_deterministic_clockless_visibly_net; ++i) {
            for (std::size_t j = i + 1; j < aut.edges.size(); ++j) {
                const Edge& e1 = aut.edges[i];
                const Edge& e2 = aut.edges[j];
                if (e1 == e2 || e1.from != e2.from || e1.letter != e2.letter) continue;
                const bool pop_empty =
                    (std::holds_alternative<OpPop>(e1.op) &&
                     std::holds_alternative<OpEmptyTest>(e2.op)) ||
                    (std::holds_alternative<OpEmptyTest>(e1.op) &&
                     std::holds_alternative<OpPop>(e2.op));
                if (!pop_empty) {
                    rep.is_deterministic_clockless_visibly_net = false;
                    rep.reasons.push_back("nondeterministic at edges " + edge_str(e1) +
                                          " and " + edge_str(e2));
                    break;
                }
            }
        }
    }

    return rep;
}

// ---------------------------------------------------------------------------
// step

std::vector<ConcreteState> step(const Automaton& aut, const ConcreteState& state,
                                const Rational& delay, const Letter& letter) {
    std::vector<ConcreteState> out;
    std::map<std::string, Rational> elapsed = state.clocks;
    for (auto& [name, v] : elapsed) v += delay;

    for (const auto& e : aut.edges) {
        if (e.from != state.location || e.letter != letter) continue;
        if (!guard_holds(e.guard, elapsed)) continue;

        StoreContent next_store = state.store;
        bool blocked = false;
        if (const auto* p = std::get_if<OpPush>(&e.op)) {
            auto& u = std::get<std::vector<std::string>>(next_store);
            u.insert(u.begin(), p->symbol);
        } else if (const auto* p = std::get_if<OpPop>(&e.op)) {
            auto& u = std::get<std::vector<std::string>>(next_store);
            if (u.empty() || u.front() != p->symbol)
                blocked = true;
            else
                u.erase(u.begin());
        } else if (std::holds_alternative<OpEmptyTest>(e.op)) {
            const auto& u = std::get<std::vector<std::string>>(next_store);
            if (!u.empty()) blocked = true;
        } else if (const auto* c = std::get_if<OpCounter>(&e.op)) {
            auto& v = std::get<std::vector<std::int64_t>>(next_store);
            for (std::size_t k = 0; k < v.size(); ++k) {
                v[k] += c->delta[k];
                if (v[k] < 0) { blocked = true; break; }
            }
        }
        if (blocked) continue;

        ConcreteState next;
        next.location = e.to;
        next.clocks = elapsed;
        for (const auto& x : e.resets) next.clocks[x] = Rational(0);
        next.store = std::move(next_store);
        out.push_back(std::move(next));
    }

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ConcreteState initial_state(const Automaton& aut, const std::string& location) {
    ConcreteState s;
    s.location = location;
    for (const auto& x : aut.clocks) s.clocks[x] = Rational(0);
    s.store = aut.empty_store();
    return s;
}

// ---------------------------------------------------------------------------
// membership

MembershipResult membership(const Automaton& aut, const TimedWord& w) {
    w.check();
    for (const auto& e : w.events)
        if (!aut.alphabet.contains(e.letter))
            throw InputError("letter '" + e.letter + "' outside the automaton's alphabet");

    const std::vector<Rational> deltas = w.delays();

    // Layered search with backpointers for witness reconstruction.
    std::vector<std::vector<ConcreteState>> layers(w.size() + 1);
    // parent[i][j] = (index into layers[i-1], delay, letter)
    std::vector<std::vector<std::size_t>> parent(w.size() + 1);

    std::set<ConcreteState> seen;
    for (const auto& l0 : aut.initial) {
        ConcreteState s = initial_state(aut, l0);
        if (seen.insert(s).second) layers[0].push_back(std::move(s));
    }

    for (std::size_t i = 0; i < w.size(); ++i) {
        std::set<ConcreteState> next_seen;
        for (std::size_t j = 0; j < layers[i].size(); ++j) {
            for (auto& s : step(aut, layers[i][j], deltas[i], w.events[i].letter)) {
                if (next_seen.insert(s).second) {
                    layers[i + 1].push_back(std::move(s));
                    parent[i + 1].push_back(j);
                }
            }
        }
    }

    MembershipResult res;
    for (std::size_t j = 0; j < layers[w.size()].size(); ++j) {
        if (!aut.accepting.count(layers[w.size()][j].location)) continue;
        res.accepted = true;
        Run run;
        std::size_t at = j;
        for (std::size_t i = w.size(); i > 0; --i) {
            const std::size_t prev = parent[i][at];
            run.push_back(RunStep{layers[i - 1][prev], deltas[i - 1],
                                  w.events[i - 1].letter, layers[i][at]});
            at = prev;
        }
        std::reverse(run.begin(), run.end());
        res.witness = std::move(run);
        break;
    }
    return res;
}

// ---------------------------------------------------------------------------
// union

Automaton automaton_union(const std::vector<Automaton>& parts) {
    if (parts.empty()) throw InputError("union of zero automata");
    Automaton out;
    out.alphabet = parts[0].alphabet;
    out.store = parts[0].store;

    const std::size_t kind = parts[0].store.index();
    for (const auto& p : parts) {
        if (p.alphabet != out.alphabet)
            throw InputError("union: alphabet mismatch");
        if (p.store.index() != kind)
            throw InputError("union: store kind mismatch");
        if (const auto* s = std::get_if<StackStore>(&p.store)) {
            auto& acc = std::get<StackStore>(out.store);
            acc.alphabet.insert(s->alphabet.begin(), s->alphabet.end());
        } else if (const auto* c = std::get_if<CounterStore>(&p.store)) {
            if (c->dimension != std::get<CounterStore>(out.store).dimension)
                throw InputError("union: counter dimension mismatch");
        }
    }

    for (std::size_t i = 0; i < parts.size(); ++i) {
        const std::string prefix = "u" + std::to_string(i) + ".";
        const Automaton& p = parts[i];
        for (const auto& l : p.locations) out.locations.insert(prefix + l);
        for (const auto& l : p.initial) out.initial.insert(prefix + l);
        for (const auto& l : p.accepting) out.accepting.insert(prefix + l);
        out.clocks.insert(p.clocks.begin(), p.clocks.end());
        for (Edge e : p.edges) {
            e.from = prefix + e.from;
            e.to = prefix + e.to;
            out.edges.push_back(std::move(e));
        }
    }
    return out;
}

Automaton automaton_union(const Automaton& a1, const Automaton& a2) {
    return automaton_union(std::vector<Automaton>{a1, a2});
}

// ---------------------------------------------------------------------------
// visibly_lift

Automaton visibly_lift(const Automaton& aut) {
    if (!std::holds_alternative<NoStore>(aut.store))
        throw InputError("visibly_lift expects a store-free automaton");
    Automaton out = aut;
    out.store = StackStore{{"c"}};
    out.edges.clear();
    for (const auto& e : aut.edges) {
        if (aut.alphabet.call.count(e.letter)) {
            Edge pe = e;
            pe.op = OpPush{"c"};
            out.edges.push_back(std::move(pe));
        } else if (aut.alphabet.ret.count(e.letter)) {
            Edge pop = e;
            pop.op = OpPop{"c"};
            Edge emp = e;
            emp.op = OpEmptyTest{};
            out.edges.push_back(std::move(pop));
            out.edges.push_back(std::move(emp));
        } else {
            out.edges.push_back(e);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// to_counter_net

Automaton to_counter_net(const Automaton& aut) {
    if (std::holds_alternative<CounterStore>(aut.store)) return aut;

    Automaton out = aut;
    if (std::holds_alternative<NoStore>(aut.store)) {
        out.store = CounterStore{0};
        for (auto& e : out.edges) e.op = OpCounter{{}};
        return out;
    }

    const auto rep = validate(aut);
    if (!rep.is_counter_net)
        throw InputError("automaton is not a counter net");
    out.store = CounterStore{1};
    for (auto& e : out.edges) {
        if (std::holds_alternative<OpPush>(e.op))
            e.op = OpCounter{{1}};
        else if (std::holds_alternative<OpPop>(e.op))
            e.op = OpCounter{{-1}};
        else
            e.op = OpCounter{{0}};
    }
    return out;
}

} // namespace tcnet
