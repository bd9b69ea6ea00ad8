#include "semnorm/polytext.hpp"

#include <cctype>
#include <sstream>
#include <variant>

namespace semnorm {

namespace {

using FlatTerms = std::map<Exps, RingValue, GrlexLess>;

bool ring_is_flat_scalar(const RingPtr& r) { return r->flatten_vars().empty(); }

// ---- scalar rendering ----

bool scalar_is_negative(const RingValue& v) {
    switch (v.ring->kind) {
        case RingKind::Integers: return value_int(v) < 0;
        case RingKind::Rationals: return value_rat(v) < 0;
        default: return false;
    }
}

std::string scalar_to_string(const RingValue& v, bool absolute) {
    switch (v.ring->kind) {
        case RingKind::Integers: {
            Int n = value_int(v);
            if (absolute) n = abs(n);
            return int_to_string(n);
        }
        case RingKind::Rationals: {
            Rat q = value_rat(v);
            if (absolute) q = abs(q);
            return rat_to_string(q);
        }
        case RingKind::PrimeField: return int_to_string(value_int(v));
        case RingKind::ReducedQuotient:
            if (v.ring->base->kind == RingKind::Integers) return int_to_string(value_int(v));
            break;
        case RingKind::Product: {
            std::string s = "(";
            const auto& parts = value_tuple(v);
            for (size_t i = 0; i < parts.size(); ++i)
                s += (i ? ", " : "") + scalar_to_string(parts[i], false);
            return s + ")";
        }
        default: break;
    }
    throw validation_error("no text form for scalars of " + v.ring->name());
}

// ---- flattening ----

FlatTerms flatten_value(const RingValue& v) {
    const RingPtr& r = v.ring;
    switch (r->kind) {
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::DualNumbers: {
            FlatTerms out;
            for (const auto& [e, c] : value_poly(v).terms()) {
                for (auto& [se, sc] : flatten_value(c)) {
                    Exps combined = se;
                    combined.insert(combined.end(), e.begin(), e.end());
                    out.emplace(std::move(combined), sc);
                }
            }
            return out;
        }
        case RingKind::SemigroupSubring: {
            FlatTerms out;
            for (const auto& [e, c] : value_poly(v).terms()) out.emplace(e, c);
            return out;
        }
        case RingKind::ReducedQuotient:
            if (r->base->kind == RingKind::Univariate) {
                FlatTerms out;
                for (const auto& [e, c] : value_poly(v).terms()) out.emplace(e, c);
                return out;
            }
            break;
        case RingKind::FractionField: {
            const auto& f = value_frac(v);
            if (!f.den->is_constant())
                throw validation_error("no flat text form for a value with a true denominator");
            return flatten_value(RingValue(r->base, f.num));
        }
        default: break;
    }
    FlatTerms out;
    if (!ring_is_flat_scalar(r))
        throw validation_error("no flat text form for values of " + r->name());
    if (r->kind == RingKind::Product || !ring_is_zero(v)) out.emplace(Exps{}, v);
    return out;
}

std::string render_terms(const FlatTerms& terms, const std::vector<std::string>& vars) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms) {
        bool neg = scalar_is_negative(c);
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        std::string coeff = scalar_to_string(c, true);
        bool any_var = exps_total(e) > 0;
        if (!any_var) {
            out += coeff;
            continue;
        }
        out += coeff;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            out += "*" + vars[i];
            if (e[i] > 1) out += "^" + std::to_string(e[i]);
        }
    }
    return out;
}

// ---- tokenizer / parser ----

struct Token {
    enum Type { Num, Ident, Sym, End } type = End;
    std::string text;
    size_t pos = 0;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Num, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
                ++j;
            out.push_back({Token::Ident, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::string("+-*/^(),").find(c) != std::string::npos) {
            out.push_back({Token::Sym, std::string(1, c), i});
            ++i;
            continue;
        }
        throw parse_error("unexpected character '" + std::string(1, c) + "' at offset " +
                          std::to_string(i));
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

struct ScalarLit {
    bool is_tuple = false;
    Rat value;                // when !is_tuple
    std::vector<Rat> parts;   // when is_tuple
};

struct TermLit {
    bool negative = false;
    ScalarLit scalar;         // defaults to 1
    bool has_scalar = false;
    std::vector<std::pair<std::string, unsigned>> factors;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    std::vector<TermLit> parse() {
        std::vector<TermLit> terms;
        bool neg = accept_sign();
        terms.push_back(parse_term(neg));
        while (peek().type == Token::Sym && (peek().text == "+" || peek().text == "-")) {
            bool n = next().text == "-";
            terms.push_back(parse_term(n));
        }
        if (peek().type != Token::End)
            throw parse_error("unexpected token '" + peek().text + "' at offset " +
                              std::to_string(peek().pos));
        return terms;
    }

  private:
    std::vector<Token> toks_;
    size_t at_ = 0;

    const Token& peek() const { return toks_[at_]; }
    const Token& next() { return toks_[at_++]; }

    bool accept_sign() {
        if (peek().type == Token::Sym && (peek().text == "+" || peek().text == "-"))
            return next().text == "-";
        return false;
    }

    Rat parse_signed_rat() {
        bool neg = accept_sign();
        if (peek().type != Token::Num)
            throw parse_error("expected number at offset " + std::to_string(peek().pos));
        Int num(next().text);
        Int den = 1;
        if (peek().type == Token::Sym && peek().text == "/") {
            next();
            if (peek().type != Token::Num)
                throw parse_error("expected denominator at offset " + std::to_string(peek().pos));
            den = Int(next().text);
            if (den == 0) throw parse_error("zero denominator in coefficient");
        }
        Rat q = rat_of(neg ? Int(-num) : num, den);
        return q;
    }

    ScalarLit parse_scalar() {
        ScalarLit lit;
        if (peek().type == Token::Sym && peek().text == "(") {
            next();
            lit.is_tuple = true;
            lit.parts.push_back(parse_signed_rat());
            while (peek().type == Token::Sym && peek().text == ",") {
                next();
                lit.parts.push_back(parse_signed_rat());
            }
            if (!(peek().type == Token::Sym && peek().text == ")"))
                throw parse_error("expected ')' at offset " + std::to_string(peek().pos));
            next();
            return lit;
        }
        lit.value = parse_signed_rat();
        return lit;
    }

    TermLit parse_term(bool neg) {
        TermLit t;
        t.negative = neg;
        if (peek().type == Token::Num || (peek().type == Token::Sym && peek().text == "(")) {
            t.scalar = parse_scalar();
            t.has_scalar = true;
            while (peek().type == Token::Sym && peek().text == "*") {
                next();
                t.factors.push_back(parse_factor());
            }
            return t;
        }
        if (peek().type == Token::Ident) {
            t.factors.push_back(parse_factor());
            while (peek().type == Token::Sym && peek().text == "*") {
                next();
                t.factors.push_back(parse_factor());
            }
            return t;
        }
        throw parse_error("expected term at offset " + std::to_string(peek().pos) + " near '" +
                          peek().text + "'");
    }

    std::pair<std::string, unsigned> parse_factor() {
        if (peek().type != Token::Ident)
            throw parse_error("expected variable at offset " + std::to_string(peek().pos));
        std::string name = next().text;
        unsigned exp = 1;
        if (peek().type == Token::Sym && peek().text == "^") {
            next();
            if (peek().type != Token::Num)
                throw parse_error("expected exponent at offset " + std::to_string(peek().pos));
            exp = static_cast<unsigned>(std::stoul(next().text));
        }
        return {name, exp};
    }
};

RingValue scalar_from_lit(const RingPtr& r, const ScalarLit& lit) {
    if (lit.is_tuple) {
        if (r->kind != RingKind::Product)
            throw parse_error("tuple coefficient requires a product ring, have " + r->name());
        if (lit.parts.size() != r->factors.size())
            throw parse_error("tuple arity mismatch for " + r->name());
        std::vector<RingValue> parts;
        for (size_t i = 0; i < lit.parts.size(); ++i)
            parts.push_back(ring_from_rat(r->factors[i], lit.parts[i]));
        return ring_tuple(r, std::move(parts));
    }
    return ring_from_rat(r, lit.value);
}

// Build a one-term value of r with flat exponents `exps` (over r's flattened
// variable list) and the given scalar coefficient.
RingValue term_to_value(const RingPtr& r, const Exps& exps, const ScalarLit& lit) {
    switch (r->kind) {
        case RingKind::Univariate:
        case RingKind::Multivariate:
        case RingKind::DualNumbers: {
            size_t base_len = r->base->flatten_vars().size();
            Exps base_part(exps.begin(), exps.begin() + base_len);
            Exps own_part(exps.begin() + base_len, exps.end());
            RingValue coeff = term_to_value(r->base, base_part, lit);
            MultiPoly::TermMap terms;
            terms.emplace(std::move(own_part), std::move(coeff));
            return ring_poly_value(r, MultiPoly::from_terms(r->base, r->vars, std::move(terms)));
        }
        case RingKind::SemigroupSubring: {
            RingValue coeff = scalar_from_lit(r->base, lit);
            MultiPoly::TermMap terms;
            terms.emplace(exps, std::move(coeff));
            return ring_poly_value(r, MultiPoly::from_terms(r->base, r->vars, std::move(terms)));
        }
        case RingKind::ReducedQuotient:
            if (r->base->kind == RingKind::Univariate) {
                RingValue coeff = scalar_from_lit(r->base->base, lit);
                MultiPoly::TermMap terms;
                terms.emplace(exps, std::move(coeff));
                return ring_poly_value(
                    r, MultiPoly::from_terms(r->base->base, r->base->vars, std::move(terms)));
            }
            [[fallthrough]];
        case RingKind::FractionField:
            if (r->kind == RingKind::FractionField)
                return ring_transport(term_to_value(r->base, exps, lit), r);
            [[fallthrough]];
        default:
            if (!exps.empty() && exps_total(exps) > 0)
                throw internal_error("flat term with variables over scalar ring");
            return scalar_from_lit(r, lit);
    }
}

Exps term_exponents(const TermLit& t, const std::vector<std::string>& vars) {
    Exps e(vars.size(), 0);
    for (const auto& [name, exp] : t.factors) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw parse_error("unknown variable '" + name + "'");
        e[static_cast<size_t>(it - vars.begin())] += exp;
    }
    return e;
}

}  // namespace

std::string poly_to_string(const MultiPoly& p) {
    std::vector<std::string> vars = p.coeff_ring()->flatten_vars();
    vars.insert(vars.end(), p.vars().begin(), p.vars().end());
    FlatTerms flat;
    for (const auto& [e, c] : p.terms()) {
        for (auto& [se, sc] : flatten_value(c)) {
            Exps combined = se;
            combined.insert(combined.end(), e.begin(), e.end());
            flat.emplace(std::move(combined), sc);
        }
    }
    return render_terms(flat, vars);
}

MultiPoly poly_from_string(const RingPtr& coeff_ring, const std::vector<std::string>& vars,
                           const std::string& text) {
    std::vector<std::string> chain = coeff_ring->flatten_vars();
    std::vector<std::string> combined = chain;
    combined.insert(combined.end(), vars.begin(), vars.end());
    MultiPoly out(coeff_ring, vars);
    static const ScalarLit one_lit{false, Rat(1), {}};
    for (const auto& t : Parser(text).parse()) {
        Exps e = term_exponents(t, combined);
        Exps ring_part(e.begin(), e.begin() + chain.size());
        Exps poly_part(e.begin() + chain.size(), e.end());
        RingValue coeff = term_to_value(coeff_ring, ring_part, t.has_scalar ? t.scalar : one_lit);
        if (t.negative) coeff = ring_neg(coeff);
        MultiPoly::TermMap terms;
        terms.emplace(std::move(poly_part), std::move(coeff));
        out = poly_add(out, MultiPoly::from_terms(coeff_ring, vars, std::move(terms)));
    }
    return out;
}

std::map<Exps, RingValue, GrlexLess> value_flat_terms(const RingValue& v) { return flatten_value(v); }

std::string value_to_string(const RingValue& v) {
    const RingPtr& r = v.ring;
    if (r->kind == RingKind::FractionField) {
        const auto& f = value_frac(v);
        std::string ns = value_to_string(RingValue(r->base, f.num));
        if (f.den->is_constant()) return ns;
        return "(" + ns + ")/(" + value_to_string(RingValue(r->base, f.den)) + ")";
    }
    if (r->kind == RingKind::Localization) {
        const auto& l = value_loc(v);
        std::string ns = value_to_string(l.num);
        if (l.den_pow == 0) return ns;
        return "(" + ns + ")/(" + value_to_string(r->loc_element) + ")^" + std::to_string(l.den_pow);
    }
    return render_terms(flatten_value(v), r->flatten_vars());
}

RingValue value_from_string(const RingPtr& r, const std::string& text) {
    if (r->kind == RingKind::FractionField || r->kind == RingKind::Localization)
        throw parse_error("no literal grammar for values of " + r->name());
    MultiPoly p = poly_from_string(r, {}, text);
    return p.constant_value();
}

}  // namespace semnorm
