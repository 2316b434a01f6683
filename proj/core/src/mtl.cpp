#include "tcnet/mtl.hpp"

#include <cctype>

#include "tcnet/error.hpp"

namespace tcnet {

// ---------------------------------------------------------------------------
// Intervals

bool MtlInterval::contains(const Rational& v) const {
    const Rational lo_r(lo);
    if (lo_closed ? v < lo_r : v <= lo_r) return false;
    if (!hi) return true;
    const Rational hi_r(*hi);
    return hi_closed ? v <= hi_r : v < hi_r;
}

bool MtlInterval::valid() const {
    if (lo < 0) return false;
    if (!hi) return true;
    if (lo > *hi) return false;
    if (lo == *hi) return lo_closed && hi_closed;
    return true;
}

std::string MtlInterval::str() const {
    std::string out = lo_closed ? "[" : "(";
    out += std::to_string(lo);
    out += ",";
    out += hi ? std::to_string(*hi) : "inf";
    out += hi_closed ? "]" : ")";
    return out;
}

// ---------------------------------------------------------------------------
// Formula nodes

struct MtlFormula::Node {
    Kind kind;
    Letter letter;
    MtlInterval interval;
    std::shared_ptr<const Node> a, b;
};

MtlFormula MtlFormula::tt() {
    return MtlFormula(std::make_shared<Node>(Node{Kind::True, {}, {}, nullptr, nullptr}));
}

MtlFormula MtlFormula::ff() { return negation(tt()); }

MtlFormula MtlFormula::atom(Letter a) {
    return MtlFormula(std::make_shared<Node>(Node{Kind::Atom, std::move(a), {}, nullptr, nullptr}));
}

MtlFormula MtlFormula::negation(MtlFormula f) {
    return MtlFormula(std::make_shared<Node>(Node{Kind::Not, {}, {}, f.node_, nullptr}));
}

MtlFormula MtlFormula::conj(MtlFormula l, MtlFormula r) {
    return MtlFormula(std::make_shared<Node>(Node{Kind::And, {}, {}, l.node_, r.node_}));
}

MtlFormula MtlFormula::disj(MtlFormula l, MtlFormula r) {
    return negation(conj(negation(std::move(l)), negation(std::move(r))));
}

MtlFormula MtlFormula::implies(MtlFormula l, MtlFormula r) {
    return disj(negation(std::move(l)), std::move(r));
}

MtlFormula MtlFormula::until(MtlFormula l, MtlInterval i, MtlFormula r) {
    if (!i.valid()) throw InputError("empty interval " + i.str());
    return MtlFormula(std::make_shared<Node>(Node{Kind::Until, {}, i, l.node_, r.node_}));
}

MtlFormula MtlFormula::eventually(MtlInterval i, MtlFormula f) {
    return until(tt(), i, std::move(f));
}

MtlFormula MtlFormula::always(MtlInterval i, MtlFormula f) {
    return negation(eventually(i, negation(std::move(f))));
}

MtlFormula::Kind MtlFormula::kind() const { return node_->kind; }
const Letter& MtlFormula::letter() const { return node_->letter; }
MtlFormula MtlFormula::child() const { return MtlFormula(node_->a); }
MtlFormula MtlFormula::left() const { return MtlFormula(node_->a); }
MtlFormula MtlFormula::right() const { return MtlFormula(node_->b); }
const MtlInterval& MtlFormula::interval() const { return node_->interval; }

std::string MtlFormula::str() const {
    switch (node_->kind) {
        case Kind::True:
            return "true";
        case Kind::Atom:
            return node_->letter;
        case Kind::Not: {
            const MtlFormula inner = child();
            if (inner.kind() == Kind::Atom || inner.kind() == Kind::True ||
                inner.kind() == Kind::Not)
                return "!" + inner.str();
            return "!(" + inner.str() + ")";
        }
        case Kind::And:
            return "(" + left().str() + " & " + right().str() + ")";
        case Kind::Until:
            return "(" + left().str() + " U" + node_->interval.str() + " " +
                   right().str() + ")";
    }
    return "";
}

bool MtlFormula::operator==(const MtlFormula& o) const {
    if (node_ == o.node_) return true;
    if (node_->kind != o.node_->kind) return false;
    switch (node_->kind) {
        case Kind::True: return true;
        case Kind::Atom: return node_->letter == o.node_->letter;
        case Kind::Not: return MtlFormula(node_->a) == MtlFormula(o.node_->a);
        case Kind::And:
            return MtlFormula(node_->a) == MtlFormula(o.node_->a) &&
                   MtlFormula(node_->b) == MtlFormula(o.node_->b);
        case Kind::Until:
            return node_->interval == o.node_->interval &&
                   MtlFormula(node_->a) == MtlFormula(o.node_->a) &&
                   MtlFormula(node_->b) == MtlFormula(o.node_->b);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Evaluation

bool eval_at(const TimedWord& w, std::size_t i, const MtlFormula& f) {
    const std::size_t n = w.size();
    if (i < 1 || i > n) throw InputError("position out of range");
    switch (f.kind()) {
        case MtlFormula::Kind::True:
            return true;
        case MtlFormula::Kind::Atom:
            return w[i - 1].letter == f.letter();
        case MtlFormula::Kind::Not:
            return !eval_at(w, i, f.child());
        case MtlFormula::Kind::And:
            return eval_at(w, i, f.left()) && eval_at(w, i, f.right());
        case MtlFormula::Kind::Until: {
            for (std::size_t j = i + 1; j <= n; ++j) {
                if (!f.interval().contains(w[j - 1].time - w[i - 1].time)) continue;
                if (!eval_at(w, j, f.right())) continue;
                bool all = true;
                for (std::size_t k = i + 1; k < j; ++k) {
                    if (!eval_at(w, k, f.left())) { all = false; break; }
                }
                if (all) return true;
            }
            return false;
        }
    }
    return false;
}

bool models(const TimedWord& w, const MtlFormula& f) {
    w.check();
    return eval_at(w, 1, f);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) { ++pos; return true; }
        return false;
    }

    void expect(char c) {
        if (!consume(c))
            throw ParseError(std::string("expected '") + c + "' in formula", pos);
    }

    static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string ident() {
        skip_ws();
        if (pos >= text.size() || !ident_start(text[pos]))
            throw ParseError("expected identifier", pos);
        std::size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) ++pos;
        return text.substr(start, pos - start);
    }

    std::int64_t natural() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw ParseError("expected number in interval", pos);
        return std::stoll(text.substr(start, pos - start));
    }

    // Interval text after U/F/G. `required`: F/G default to [0,inf).
    MtlInterval interval(bool required) {
        skip_ws();
        const char c = peek();
        const bool opens = c == '[' || (c == '(' && interval_ahead());
        if (!opens) {
            if (required) throw ParseError("expected interval", pos);
            return MtlInterval{0, true, std::nullopt, false};
        }
        MtlInterval iv;
        iv.lo_closed = consume('[');
        if (!iv.lo_closed) expect('(');
        iv.lo = natural();
        expect(',');
        skip_ws();
        if (pos < text.size() && text.compare(pos, 3, "inf") == 0) {
            pos += 3;
            iv.hi = std::nullopt;
        } else {
            iv.hi = natural();
        }
        skip_ws();
        if (consume(']')) {
            iv.hi_closed = true;
            if (!iv.hi) throw ParseError("infinite bound must be open", pos);
        } else {
            expect(')');
            iv.hi_closed = false;
        }
        if (!iv.valid()) throw ParseError("empty interval " + iv.str(), pos);
        return iv;
    }

    // Disambiguates `F(0,1) a` from `F (a)`: an interval starts with a digit.
    bool interval_ahead() {
        std::size_t p = pos;
        while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
        if (p >= text.size() || text[p] != '(') return false;
        ++p;
        while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
        return p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]));
    }

    MtlFormula parse_or() {
        MtlFormula lhs = parse_and();
        while (peek() == '|') {
            consume('|');
            lhs = MtlFormula::disj(lhs, parse_and());
        }
        return lhs;
    }

    MtlFormula parse_and() {
        MtlFormula lhs = parse_until();
        while (peek() == '&') {
            consume('&');
            lhs = MtlFormula::conj(lhs, parse_until());
        }
        return lhs;
    }

    // Right-associative.
    MtlFormula parse_until() {
        MtlFormula lhs = parse_unary();
        skip_ws();
        if (pos < text.size() && text[pos] == 'U' &&
            (pos + 1 >= text.size() || !ident_char(text[pos + 1]))) {
            ++pos;
            MtlInterval iv = interval(true);
            return MtlFormula::until(lhs, iv, parse_until());
        }
        return lhs;
    }

    MtlFormula parse_unary() {
        skip_ws();
        if (consume('!')) return MtlFormula::negation(parse_unary());
        if (pos < text.size() && (text[pos] == 'F' || text[pos] == 'G') &&
            (pos + 1 >= text.size() || !ident_char(text[pos + 1]))) {
            const char op = text[pos];
            ++pos;
            MtlInterval iv = interval(false);
            MtlFormula arg = parse_unary();
            return op == 'F' ? MtlFormula::eventually(iv, arg)
                             : MtlFormula::always(iv, arg);
        }
        if (consume('(')) {
            MtlFormula f = parse_or();
            expect(')');
            return f;
        }
        const std::string name = ident();
        if (name == "true") return MtlFormula::tt();
        if (name == "false") return MtlFormula::ff();
        return MtlFormula::atom(name);
    }
};

} // namespace

MtlFormula parse_mtl(const std::string& text) {
    Parser p(text);
    MtlFormula f = p.parse_or();
    if (!p.eof())
        throw ParseError("trailing input in formula", p.pos);
    return f;
}

} // namespace tcnet
