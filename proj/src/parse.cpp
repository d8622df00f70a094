#include "relkill/parse.hpp"

#include <cctype>

namespace relkill {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;  // for number / ident
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& current() const { return cur_; }

    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        cur_.offset = pos_;
        cur_.text.clear();
        if (pos_ >= src_.size()) {
            cur_.kind = Tok::end;
            return;
        }
        char c = src_[pos_];
        switch (c) {
            case '+': cur_.kind = Tok::plus; ++pos_; return;
            case '-': cur_.kind = Tok::minus; ++pos_; return;
            case '*': cur_.kind = Tok::star; ++pos_; return;
            case '/': cur_.kind = Tok::slash; ++pos_; return;
            case '^': cur_.kind = Tok::caret; ++pos_; return;
            case '(': cur_.kind = Tok::lparen; ++pos_; return;
            case ')': cur_.kind = Tok::rparen; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (pos_ < src_.size() && src_[pos_] == '.') {
                ++pos_;
                if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    throw ParseError("malformed decimal literal", start);
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
            cur_.kind = Tok::number;
            cur_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            cur_.kind = Tok::ident;
            cur_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    Token cur_;
};

Rat rat_from_literal(const std::string& text, std::size_t offset) {
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rat r(Int(text, 10));
        return r;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac = text.size() - dot - 1;
    Int den(1);
    for (std::size_t i = 0; i < frac; ++i) den *= 10;
    if (digits.empty()) throw ParseError("malformed decimal literal", offset);
    Rat r(Int(digits, 10), den);
    r.canonicalize();
    return r;
}

class Parser {
public:
    Parser(std::string_view text, VarTablePtr vars, const std::vector<std::size_t>& allowed)
        : lex_(text), vars_(std::move(vars)) {
        if (allowed.empty()) {
            for (std::size_t i = 0; i < vars_->size(); ++i) allowed_.push_back(i);
        } else {
            allowed_ = allowed;
        }
    }

    RatFn run() {
        RatFn v = expr();
        if (lex_.current().kind != Tok::end)
            throw ParseError("expected operator or end of input", lex_.current().offset);
        return v;
    }

private:
    RatFn expr() {
        RatFn v = term();
        while (true) {
            Tok k = lex_.current().kind;
            if (k == Tok::plus) {
                lex_.advance();
                v += term();
            } else if (k == Tok::minus) {
                lex_.advance();
                v -= term();
            } else {
                return v;
            }
        }
    }

    RatFn term() {
        RatFn v = unary();
        while (true) {
            Tok k = lex_.current().kind;
            if (k == Tok::star) {
                lex_.advance();
                v *= unary();
            } else if (k == Tok::slash) {
                std::size_t off = lex_.current().offset;
                lex_.advance();
                RatFn d = unary();
                if (d.is_zero()) throw ParseError("division by the zero polynomial", off);
                v /= d;
            } else {
                return v;
            }
        }
    }

    RatFn unary() {
        if (lex_.current().kind == Tok::minus) {
            lex_.advance();
            return -unary();
        }
        return power();
    }

    RatFn power() {
        RatFn base = atom();
        if (lex_.current().kind != Tok::caret) return base;
        lex_.advance();
        const Token& t = lex_.current();
        if (t.kind != Tok::number || t.text.find('.') != std::string::npos)
            throw ParseError("exponent not a nonnegative integer", t.offset);
        Int e(t.text, 10);
        if (!e.fits_uint_p()) throw ParseError("exponent too large", t.offset);
        unsigned k = static_cast<unsigned>(e.get_ui());
        lex_.advance();
        // exact power of an already-normalized fraction
        return RatFn::make(base.num().pow(k), base.den().pow(k));
    }

    RatFn atom() {
        const Token t = lex_.current();
        switch (t.kind) {
            case Tok::number: {
                lex_.advance();
                return RatFn::constant(vars_, rat_from_literal(t.text, t.offset));
            }
            case Tok::ident: {
                auto idx = vars_->index_of(t.text);
                bool ok = idx.has_value();
                if (ok) {
                    ok = false;
                    for (std::size_t a : allowed_)
                        if (a == *idx) { ok = true; break; }
                }
                if (!ok) throw ParseError("unknown identifier '" + t.text + "'", t.offset);
                lex_.advance();
                return RatFn::variable(vars_, *idx);
            }
            case Tok::lparen: {
                lex_.advance();
                RatFn v = expr();
                if (lex_.current().kind != Tok::rparen)
                    throw ParseError("expected ')'", lex_.current().offset);
                lex_.advance();
                return v;
            }
            default:
                throw ParseError("expected number, identifier or '('", t.offset);
        }
    }

    Lexer lex_;
    VarTablePtr vars_;
    std::vector<std::size_t> allowed_;
};

}  // namespace

RatFn parse_ratfn(const ExprSource& src) {
    if (src.text.empty()) throw ParseError("empty expression", 0);
    return Parser(src.text, src.vars, src.allowed).run();
}

RatFn parse_ratfn(std::string_view text, const VarTablePtr& vars) {
    if (text.empty()) throw ParseError("empty expression", 0);
    return Parser(text, vars, {}).run();
}

Rat parse_rat(std::string_view text) {
    auto table = VarTable::make({});
    RatFn v = parse_ratfn(text, table);
    return v.constant_value();
}

std::string format_rat(const Rat& r) { return rat_to_string(r); }

namespace {

std::string format_monomial(const VarTablePtr& vars, const Exponents& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += vars->name(i);
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
}

}  // namespace

std::string format_poly(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    // descending grlex
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        Rat a = c;
        if (out.empty()) {
            if (a < 0) {
                out += '-';
                a = -a;
            }
        } else {
            out += (a < 0) ? '-' : '+';
            if (a < 0) a = -a;
        }
        std::string mono = format_monomial(p.vars(), e);
        if (mono.empty()) {
            out += format_rat(a);
        } else if (a == 1) {
            out += mono;
        } else {
            out += format_rat(a) + "*" + mono;
        }
    }
    return out;
}

std::string format_ratfn(const RatFn& f) {
    if (f.is_polynomial()) return format_poly(f.num());
    std::string num = format_poly(f.num());
    if (f.num().term_count() > 1) num = "(" + num + ")";
    std::string den = format_poly(f.den());
    // a one-term canonical denominator is a monic monomial; parenthesize
    // unless it is a single variable power, which '^' already binds
    bool den_atomic = false;
    if (f.den().term_count() == 1) {
        const Exponents& e = f.den().leading_exponents();
        int used = 0;
        for (unsigned x : e) used += (x > 0) ? 1 : 0;
        den_atomic = (used == 1) && (f.den().leading_coeff() == 1);
    }
    if (!den_atomic) den = "(" + den + ")";
    return num + "/" + den;
}

}  // namespace relkill
