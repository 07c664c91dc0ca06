#pragma once

// Tiny expression language for eigenfunction coefficients and relation
// right-hand sides: rational expressions in named variables, with zeta
// as the built-in root of unity.  Example: "(y^-1+y)/(q-q^-1)".

#include "tower.hpp"

#include <cctype>
#include <functional>

namespace eqvar {

struct Expr {
    enum Kind { Num, Zeta, Var, Add, Sub, Mul, Div, Neg, Pow } kind;
    Rat num;                 // Num
    std::string var;         // Var
    long exp = 0;            // Pow
    std::vector<Expr> args;

    static Expr number(const Rat& r) { return {Num, r, "", 0, {}}; }
    static Expr variable(const std::string& v) { return {Var, Rat(0), v, 0, {}}; }

    TE eval(const std::function<TE(const std::string&)>& lookup, int l) const {
        switch (kind) {
            case Num: return TE::scalar(l, num);
            case Zeta: return TE(BFE(CycRat::zeta(l)));
            case Var: return lookup(var);
            case Add: return args[0].eval(lookup, l) + args[1].eval(lookup, l);
            case Sub: return args[0].eval(lookup, l) - args[1].eval(lookup, l);
            case Mul: return args[0].eval(lookup, l) * args[1].eval(lookup, l);
            case Div: return args[0].eval(lookup, l) / args[1].eval(lookup, l);
            case Neg: return -args[0].eval(lookup, l);
            case Pow: return args[0].eval(lookup, l).pow(exp);
        }
        throw std::runtime_error("bad expr node");
    }

    void collect_vars(std::set<std::string>& out) const {
        if (kind == Var) out.insert(var);
        for (const Expr& a : args) a.collect_vars(out);
    }

    std::string str() const {
        switch (kind) {
            case Num: return rat_str(num);
            case Zeta: return "zeta";
            case Var: return var;
            case Add: return "(" + args[0].str() + "+" + args[1].str() + ")";
            case Sub: return "(" + args[0].str() + "-" + args[1].str() + ")";
            case Mul: return "(" + args[0].str() + "*" + args[1].str() + ")";
            case Div: return "(" + args[0].str() + "/" + args[1].str() + ")";
            case Neg: return "(-" + args[0].str() + ")";
            case Pow: return "(" + args[0].str() + "^" + std::to_string(exp) + ")";
        }
        return "?";
    }
};

class ExprParser {
public:
    static Expr parse(const std::string& s) {
        ExprParser p(s);
        Expr e = p.sum();
        p.skip_ws();
        if (p.pos_ != s.size())
            throw std::runtime_error("trailing input in expression: " + s);
        return e;
    }

private:
    explicit ExprParser(const std::string& s) : s_(s) {}
    const std::string& s_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Expr sum() {
        Expr e = product();
        while (true) {
            if (eat('+')) e = Expr{Expr::Add, Rat(0), "", 0, {e, product()}};
            else if (eat('-')) e = Expr{Expr::Sub, Rat(0), "", 0, {e, product()}};
            else return e;
        }
    }
    Expr product() {
        Expr e = unary();
        while (true) {
            if (eat('*')) e = Expr{Expr::Mul, Rat(0), "", 0, {e, unary()}};
            else if (eat('/')) e = Expr{Expr::Div, Rat(0), "", 0, {e, unary()}};
            else return e;
        }
    }
    Expr unary() {
        if (eat('-')) return Expr{Expr::Neg, Rat(0), "", 0, {unary()}};
        return power();
    }
    Expr power() {
        Expr e = atom();
        if (eat('^')) {
            skip_ws();
            bool neg = eat('-');
            std::string digits;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_]))
                digits += s_[pos_++];
            if (digits.empty()) throw std::runtime_error("exponent expected in expression");
            long k = std::stol(digits);
            e = Expr{Expr::Pow, Rat(0), "", neg ? -k : k, {e}};
        }
        return e;
    }
    Expr atom() {
        skip_ws();
        if (eat('(')) {
            Expr e = sum();
            if (!eat(')')) throw std::runtime_error("missing ')' in expression");
            return e;
        }
        if (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
            std::string digits;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_]))
                digits += s_[pos_++];
            return Expr::number(rat_parse(digits));
        }
        if (pos_ < s_.size() &&
            (std::isalpha((unsigned char)s_[pos_]) || s_[pos_] == '_')) {
            std::string id;
            while (pos_ < s_.size() &&
                   (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
                id += s_[pos_++];
            if (id == "zeta") return Expr{Expr::Zeta, Rat(0), "", 0, {}};
            return Expr::variable(id);
        }
        throw std::runtime_error("unexpected character in expression: " + s_);
    }
};

}  // namespace eqvar
