#pragma once

// Elements of Q(zeta_l), represented as polynomials in zeta of degree
// < phi(l), reduced modulo the l-th cyclotomic polynomial.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqvar {

using Rat = mpq_class;

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Rat rat_parse(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::runtime_error("bad rational: " + s);
    r.canonicalize();
    return r;
}

// Monic cyclotomic polynomial Phi_l as a dense coefficient vector
// (constant term first, leading 1 included).  Computed by dividing
// x^l - 1 by Phi_d for every proper divisor d.
inline const std::vector<Rat>& cyclotomic_poly(int l) {
    static std::map<int, std::vector<Rat>> cache;
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    if (l < 1) throw std::runtime_error("cyclotomic order must be >= 1");
    // numerator x^l - 1
    std::vector<Rat> num(l + 1, Rat(0));
    num[0] = -1;
    num[l] = 1;
    for (int d = 1; d < l; ++d) {
        if (l % d != 0) continue;
        const std::vector<Rat>& phi = cyclotomic_poly(d);
        // exact division num /= phi (phi is monic)
        std::vector<Rat> quot(num.size() - phi.size() + 1, Rat(0));
        std::vector<Rat> rem = num;
        for (int k = (int)quot.size() - 1; k >= 0; --k) {
            Rat c = rem[k + phi.size() - 1];
            quot[k] = c;
            if (c == 0) continue;
            for (size_t j = 0; j < phi.size(); ++j) rem[k + j] -= c * phi[j];
        }
        for (const Rat& c : rem)
            if (c != 0) throw std::runtime_error("cyclotomic division not exact");
        num = quot;
    }
    return cache.emplace(l, std::move(num)).first->second;
}

inline int euler_phi(int l) { return (int)cyclotomic_poly(l).size() - 1; }

class CycRat {
public:
    CycRat() : l_(1), c_(1, Rat(0)) {}
    explicit CycRat(int l) : l_(l), c_(euler_phi(l), Rat(0)) {}
    CycRat(int l, const Rat& r) : l_(l), c_(euler_phi(l), Rat(0)) { c_[0] = r; }

    static CycRat zeta(int l) { return zeta_pow(l, 1); }

    static CycRat zeta_pow(int l, long k) {
        int n = euler_phi(l);
        long e = ((k % l) + l) % l;
        std::vector<Rat> raw(e + 1, Rat(0));
        raw[e] = 1;
        CycRat out(l);
        out.c_ = reduce(l, raw);
        out.c_.resize(n, Rat(0));
        return out;
    }

    int order() const { return l_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const Rat& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rat rational_part() const { return c_.empty() ? Rat(0) : c_[0]; }

    friend bool operator==(const CycRat& a, const CycRat& b) {
        auto [x, y] = unify(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const CycRat& a, const CycRat& b) { return !(a == b); }
    // total order for use as map key; not numeric
    friend bool operator<(const CycRat& a, const CycRat& b) {
        auto [x, y] = unify(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) {
            int c = cmp(x.c_[i], y.c_[i]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    friend CycRat operator+(const CycRat& a, const CycRat& b) {
        auto [x, y] = unify(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend CycRat operator-(const CycRat& a, const CycRat& b) {
        auto [x, y] = unify(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    CycRat operator-() const {
        CycRat out = *this;
        for (Rat& x : out.c_) x = -x;
        return out;
    }
    friend CycRat operator*(const CycRat& a, const CycRat& b) {
        auto [x, y] = unify(a, b);
        std::vector<Rat> raw(2 * x.c_.size(), Rat(0));
        for (size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (size_t j = 0; j < y.c_.size(); ++j) raw[i + j] += x.c_[i] * y.c_[j];
        }
        CycRat out(x.l_);
        out.c_ = reduce(x.l_, raw);
        out.c_.resize(euler_phi(x.l_), Rat(0));
        return out;
    }

    CycRat inverse() const {
        if (is_zero()) throw std::runtime_error("division by zero in Q(zeta)");
        if (is_rational()) {
            CycRat out(l_);
            out.c_[0] = Rat(1) / c_[0];
            return out;
        }
        // extended Euclid in Q[x]: s*this + t*Phi = gcd = const
        std::vector<Rat> r0 = cyclotomic_poly(l_), r1 = trim(c_);
        std::vector<Rat> s0{}, s1{Rat(1)};  // coefficients of `this`
        while (!r1.empty()) {
            auto [q, r] = divmod(r0, r1);
            std::vector<Rat> s2 = sub(s0, mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r0.size() != 1) throw std::runtime_error("element not invertible mod Phi_l");
        Rat g = r0[0];
        CycRat out(l_);
        std::vector<Rat> red = reduce(l_, s0);
        for (size_t i = 0; i < red.size(); ++i) out.c_[i] = red[i] / g;
        return out;
    }

    friend CycRat operator/(const CycRat& a, const CycRat& b) { return a * b.inverse(); }

    CycRat pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        CycRat out(l_, Rat(1)), base = *this;
        while (e > 0) {
            if (e & 1) out = out * base;
            base = base * base;
            e >>= 1;
        }
        return out;
    }

    // order as a root of unity, or 0 if not one
    int unity_order(int bound = 512) const {
        CycRat p = *this;
        CycRat one(l_, Rat(1));
        for (int k = 1; k <= bound; ++k) {
            if (p == one) return k;
            p = p * *this;
        }
        return 0;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ",";
            os << rat_str(c_[i]);
        }
        os << "]";
        return os.str();
    }

private:
    int l_;
    std::vector<Rat> c_;

    static std::pair<CycRat, CycRat> unify(const CycRat& a, const CycRat& b) {
        if (a.l_ == b.l_) return {a, b};
        if (a.is_rational()) {
            CycRat x(b.l_, a.rational_part());
            return {x, b};
        }
        if (b.is_rational()) {
            CycRat y(a.l_, b.rational_part());
            return {a, y};
        }
        throw std::runtime_error("mixed cyclotomic orders");
    }

    static std::vector<Rat> trim(std::vector<Rat> v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    }
    static std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rat> out(a.size() + b.size() - 1, Rat(0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return trim(out);
    }
    static std::vector<Rat> sub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        std::vector<Rat> out = a;
        if (out.size() < b.size()) out.resize(b.size(), Rat(0));
        for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
        return trim(out);
    }
    static std::pair<std::vector<Rat>, std::vector<Rat>> divmod(const std::vector<Rat>& a,
                                                               const std::vector<Rat>& b) {
        std::vector<Rat> rem = a;
        if (b.empty()) throw std::runtime_error("poly division by zero");
        if (rem.size() < b.size()) return {{}, trim(rem)};
        std::vector<Rat> quot(rem.size() - b.size() + 1, Rat(0));
        Rat lead = b.back();
        for (int k = (int)quot.size() - 1; k >= 0; --k) {
            Rat c = rem[k + b.size() - 1] / lead;
            quot[k] = c;
            if (c == 0) continue;
            for (size_t j = 0; j < b.size(); ++j) rem[k + j] -= c * b[j];
        }
        return {trim(quot), trim(rem)};
    }
    static std::vector<Rat> reduce(int l, const std::vector<Rat>& raw) {
        auto [q, r] = divmod(trim(raw), cyclotomic_poly(l));
        (void)q;
        r.resize(euler_phi(l), Rat(0));
        return r;
    }
};

// The cyclic group Gamma[m] of m-th roots of unity inside Q(zeta_l),
// enumerated as zeta^(l/m * k).  Requires m | l.
inline std::vector<CycRat> roots_of_unity(int l, int m) {
    if (m < 1 || l % m != 0) throw std::runtime_error("root-of-unity order must divide l");
    std::vector<CycRat> out;
    for (int k = 0; k < m; ++k) out.push_back(CycRat::zeta_pow(l, (long)(l / m) * k));
    return out;
}

}  // namespace eqvar
