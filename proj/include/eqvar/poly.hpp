#pragma once

// Sparse multivariate polynomials over Q(zeta_l).  Variable 0 is the
// deformation parameter q; variables 1..d are the base coordinates.
// Extra variables beyond d are used by the formula toolkit.

#include "cyclotomic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace eqvar {

using Mono = std::vector<int>;

// graded lex with variable 0 heaviest
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        size_t n = std::max(a.size(), b.size());
        for (size_t i = 0; i < n; ++i) {
            int xa = i < a.size() ? a[i] : 0;
            int xb = i < b.size() ? b[i] : 0;
            if (xa != xb) return xa < xb;
        }
        return false;
    }
};

class Poly {
public:
    Poly() = default;
    explicit Poly(const CycRat& c) {
        if (!c.is_zero()) t_[Mono{}] = c;
    }
    Poly(int l, const Rat& r) : Poly(CycRat(l, r)) {}

    static Poly var(int idx, int l) {
        Poly p;
        Mono m(idx + 1, 0);
        m[idx] = 1;
        p.t_[m] = CycRat(l, Rat(1));
        return p;
    }

    const std::map<Mono, CycRat, GrlexLess>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
    CycRat constant_value() const { return t_.empty() ? CycRat() : t_.begin()->second; }

    int degree(int v) const {
        int d = 0;
        for (auto& [m, c] : t_)
            if (v < (int)m.size()) d = std::max(d, m[v]);
        return d;
    }
    int total_degree() const {
        int d = -1;
        for (auto& [m, c] : t_) {
            int s = 0;
            for (int e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }
    int nvars() const {
        int n = 0;
        for (auto& [m, c] : t_)
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) n = std::max(n, (int)i + 1);
        return n;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly out = a;
        for (auto& [m, c] : b.t_) out.add_term(m, c);
        return out;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly out = a;
        for (auto& [m, c] : b.t_) out.add_term(m, -c);
        return out;
    }
    Poly operator-() const {
        Poly out;
        for (auto& [m, c] : t_) out.t_[m] = -c;
        return out;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly out;
        for (auto& [ma, ca] : a.t_)
            for (auto& [mb, cb] : b.t_) {
                Mono m(std::max(ma.size(), mb.size()), 0);
                for (size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
                for (size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
                while (!m.empty() && m.back() == 0) m.pop_back();
                out.add_term(m, ca * cb);
            }
        return out;
    }
    Poly scaled(const CycRat& c) const {
        Poly out;
        if (c.is_zero()) return out;
        for (auto& [m, k] : t_) out.t_[m] = k * c;
        return out;
    }
    Poly pow(int e) const {
        Poly out(leading_cyclotomic_order_or(1), Rat(1));
        Poly base = *this;
        for (int i = 0; i < e; ++i) out = out * base;
        return out;
    }

    CycRat leading_coeff() const {
        return t_.empty() ? CycRat() : t_.rbegin()->second;
    }
    int leading_cyclotomic_order_or(int dflt) const {
        return t_.empty() ? dflt : t_.begin()->second.order();
    }

    // make the grlex-leading coefficient 1 (unit normalization)
    Poly monic() const {
        if (t_.empty()) return *this;
        return scaled(leading_coeff().inverse());
    }

    // substitution: vals[i] (if present) replaces variable i
    Poly subst(const std::vector<Poly>& vals) const {
        Poly out;
        for (auto& [m, c] : t_) {
            Poly term{Poly(c)};
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                Poly v = i < vals.size() && !vals[i].t_.empty() ? vals[i]
                                                               : Poly::var((int)i, c.order());
                term = term * v.pow(m[i]);
            }
            out = out + term;
        }
        return out;
    }

    // generic evaluation into any ring with +, *, and scalar embedding
    template <class T>
    T eval(const std::function<T(const CycRat&)>& embed, const std::vector<T>& vals) const {
        T out = embed(CycRat());
        for (auto& [m, c] : t_) {
            T term = embed(c);
            for (size_t i = 0; i < m.size(); ++i) {
                if (i >= vals.size() && m[i] != 0)
                    throw std::runtime_error("poly eval: missing value for variable");
                for (int k = 0; k < m[i]; ++k) term = term * vals[i];
            }
            out = out + term;
        }
        return out;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (t_.empty()) return "0";
        std::string out;
        bool first = true;
        // print highest-order terms first
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            if (!first) out += " + ";
            first = false;
            out += it->second.str();
            for (size_t i = 0; i < it->first.size(); ++i) {
                if (it->first[i] == 0) continue;
                out += "*" + (i < names.size() ? names[i] : "v" + std::to_string(i));
                if (it->first[i] != 1) out += "^" + std::to_string(it->first[i]);
            }
        }
        return out;
    }

private:
    std::map<Mono, CycRat, GrlexLess> t_;

    void add_term(Mono m, const CycRat& c) {
        while (!m.empty() && m.back() == 0) m.pop_back();
        auto it = t_.find(m);
        if (it == t_.end()) {
            if (!c.is_zero()) t_[m] = c;
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
};

namespace detail {

// univariate view in variable v, coefficients are polynomials
inline std::vector<Poly> coeffs_in(const Poly& p, int v) {
    std::vector<Poly> out(p.degree(v) + 1);
    for (auto& [m, c] : p.terms()) {
        int e = v < (int)m.size() ? m[v] : 0;
        Mono rest = m;
        if (v < (int)rest.size()) rest[v] = 0;
        Poly acc(c);
        for (size_t i = 0; i < rest.size(); ++i)
            for (int k = 0; k < rest[i]; ++k) acc = acc * Poly::var((int)i, c.order());
        out[e] = out[e] + acc;
    }
    return out;
}

inline Poly from_coeffs(const std::vector<Poly>& cs, int v, int l) {
    Poly out;
    Poly x = Poly::var(v, l);
    for (int e = (int)cs.size() - 1; e >= 0; --e) out = out * x + cs[e];
    return out;
}

}  // namespace detail

inline Poly poly_gcd(const Poly& a, const Poly& b);

namespace detail {

// pseudo-remainder of a by b in variable v
inline Poly prem(Poly a, const Poly& b, int v, int l) {
    int db = b.degree(v);
    std::vector<Poly> bc = coeffs_in(b, v);
    Poly lead_b = bc[db];
    while (!a.is_zero() && a.degree(v) >= db) {
        int da = a.degree(v);
        std::vector<Poly> ac = coeffs_in(a, v);
        Poly lead_a = ac[da];
        Poly shift;
        {
            Poly x = Poly::var(v, l);
            shift = Poly(CycRat(l, Rat(1)));
            for (int k = 0; k < da - db; ++k) shift = shift * x;
        }
        a = a * lead_b - b * lead_a * shift;
        if (!a.is_zero() && a.degree(v) >= da) throw std::runtime_error("prem failed to reduce");
    }
    return a;
}

inline Poly content_in(const Poly& p, int v) {
    std::vector<Poly> cs = coeffs_in(p, v);
    Poly g;
    for (const Poly& c : cs) g = poly_gcd(g, c);
    return g;
}

// exact division, valid when the quotient exists
inline Poly divexact(const Poly& a, const Poly& b) {
    if (a.is_zero()) return a;
    if (b.is_constant()) return a.scaled(b.constant_value().inverse());
    int l = a.leading_cyclotomic_order_or(1);
    int v = -1;
    int nv = std::max(a.nvars(), b.nvars());
    for (int i = nv - 1; i >= 0; --i)
        if (b.degree(i) > 0) {
            v = i;
            break;
        }
    std::vector<Poly> bc = coeffs_in(b, v);
    Poly rem = a, quot;
    Poly lead_b = bc.back();
    int db = (int)bc.size() - 1;
    while (!rem.is_zero()) {
        int da = rem.degree(v);
        if (da < db) throw std::runtime_error("divexact: not divisible");
        std::vector<Poly> rc = coeffs_in(rem, v);
        Poly qt = divexact(rc[da], lead_b);
        Poly shift = qt;
        Poly x = Poly::var(v, l);
        for (int k = 0; k < da - db; ++k) shift = shift * x;
        quot = quot + shift;
        rem = rem - b * shift;
        if (!rem.is_zero() && rem.degree(v) >= da)
            throw std::runtime_error("divexact: not divisible");
    }
    return quot;
}

}  // namespace detail

// gcd via primitive pseudo-remainder sequences, normalized so the
// grlex-leading coefficient is 1
inline Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) {
        int l = a.leading_cyclotomic_order_or(b.leading_cyclotomic_order_or(1));
        return Poly(l, Rat(1));
    }
    int l = a.leading_cyclotomic_order_or(1);
    int nv = std::max(a.nvars(), b.nvars());
    int v = nv - 1;
    while (v >= 0 && a.degree(v) == 0 && b.degree(v) == 0) --v;
    if (a.degree(v) == 0 || b.degree(v) == 0) {
        // one argument is free of the main variable: gcd divides its content
        const Poly& free_p = a.degree(v) == 0 ? a : b;
        const Poly& other = a.degree(v) == 0 ? b : a;
        return poly_gcd(free_p, detail::content_in(other, v));
    }
    Poly ca = detail::content_in(a, v), cb = detail::content_in(b, v);
    Poly pa = detail::divexact(a, ca), pb = detail::divexact(b, cb);
    Poly f = pa, g = pb;
    if (f.degree(v) < g.degree(v)) std::swap(f, g);
    while (true) {
        Poly r = detail::prem(f, g, v, l);
        if (r.is_zero()) break;
        if (r.degree(v) == 0) {
            g = Poly(l, Rat(1));
            break;
        }
        r = detail::divexact(r, detail::content_in(r, v));
        f = g;
        g = r;
    }
    Poly result = poly_gcd(ca, cb) * detail::divexact(g, detail::content_in(g, v));
    return result.monic();
}

}  // namespace eqvar
