#pragma once

// The coefficient field K0 = Q(zeta_l)(q, s_1..s_d) as reduced fractions
// of multivariate polynomials.  Fractions are kept canonical: gcd removed,
// denominator with grlex-leading coefficient 1, zero is 0/1.

#include "poly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace eqvar {

struct ScalarContext {
    int l = 2;       // cyclotomic order, Gamma = Gamma[l]
    int base_dim = 1;
    std::vector<std::string> var_names;  // q, s1..sd, then extras

    ScalarContext(int l_, int d) : l(l_), base_dim(d) {
        var_names.push_back("q");
        for (int i = 1; i <= d; ++i) var_names.push_back("s" + std::to_string(i));
    }
    int var_index(const std::string& n) const {
        for (size_t i = 0; i < var_names.size(); ++i)
            if (var_names[i] == n) return (int)i;
        return -1;
    }
    int ensure_var(const std::string& n) {
        int i = var_index(n);
        if (i >= 0) return i;
        var_names.push_back(n);
        return (int)var_names.size() - 1;
    }
};

using ScalarCtxPtr = std::shared_ptr<ScalarContext>;

class BFE {  // base field element
public:
    BFE() : num_(), den_(Poly(CycRat(1, Rat(1)))) {}
    explicit BFE(const Poly& p) : num_(p), den_(one_like(p)) {}
    BFE(const Poly& n, const Poly& d) { assign(n, d); }
    BFE(int l, const Rat& r) : num_(Poly(l, r)), den_(Poly(l, Rat(1))) {}
    explicit BFE(const CycRat& c) : num_(Poly(c)), den_(one_like(Poly(c))) {}

    static BFE var(int idx, int l) { return BFE(Poly::var(idx, l)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    CycRat constant_value() const {
        return num_.constant_value() / den_.constant_value();
    }
    bool is_polynomial() const { return den_.is_constant(); }

    friend bool operator==(const BFE& a, const BFE& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const BFE& a, const BFE& b) { return !(a == b); }

    friend BFE operator+(const BFE& a, const BFE& b) {
        return BFE(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend BFE operator-(const BFE& a, const BFE& b) {
        return BFE(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    BFE operator-() const {
        BFE out = *this;
        out.num_ = -out.num_;
        return out;
    }
    friend BFE operator*(const BFE& a, const BFE& b) {
        return BFE(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend BFE operator/(const BFE& a, const BFE& b) {
        if (b.is_zero()) throw std::runtime_error("division by zero in base field");
        return BFE(a.num_ * b.den_, a.den_ * b.num_);
    }
    BFE inverse() const {
        if (is_zero()) throw std::runtime_error("division by zero in base field");
        return BFE(den_, num_);
    }
    BFE pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        BFE out(num_.leading_cyclotomic_order_or(1), Rat(1));
        BFE base = *this;
        while (e > 0) {
            if (e & 1) out = out * base;
            base = base * base;
            e >>= 1;
        }
        return out;
    }

    // substitute polynomial-or-fraction values for variables
    BFE subst(const std::vector<BFE>& vals) const {
        return eval_poly(num_, vals) / eval_poly(den_, vals);
    }

    std::string str(const std::vector<std::string>& names) const {
        if (is_polynomial()) {
            Poly p = num_.scaled(den_.constant_value().inverse());
            return p.str(names);
        }
        return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
    }

private:
    Poly num_, den_;

    static Poly one_like(const Poly& p) {
        return Poly(p.leading_cyclotomic_order_or(1), Rat(1));
    }
    void assign(const Poly& n, const Poly& d) {
        if (d.is_zero()) throw std::runtime_error("zero denominator");
        if (n.is_zero()) {
            num_ = Poly();
            den_ = one_like(d);
            return;
        }
        Poly g = poly_gcd(n, d);
        Poly nn = detail::divexact(n, g), dd = detail::divexact(d, g);
        CycRat lead = dd.leading_coeff();
        num_ = nn.scaled(lead.inverse());
        den_ = dd.scaled(lead.inverse());
    }
    static BFE eval_poly(const Poly& p, const std::vector<BFE>& vals) {
        int l = p.leading_cyclotomic_order_or(1);
        BFE out(l, Rat(0));
        for (auto& [m, c] : p.terms()) {
            BFE term{BFE(c)};
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                BFE v = i < vals.size() ? vals[i] : BFE::var((int)i, l);
                term = term * v.pow(m[i]);
            }
            out = out + term;
        }
        return out;
    }
};

}  // namespace eqvar
