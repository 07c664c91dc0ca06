#pragma once

// Quadratic extensions of the base field by formal square roots.
// A tower element is a finite sum over square-free products of root
// symbols with base field coefficients; r*r rewrites to the radicand.
// Inversion multiplies by conjugates one root at a time.

#include "basefield.hpp"

#include <set>
#include <sstream>

namespace eqvar {

struct RootSymbol {
    std::string name;
    int degree = 2;   // only 1 and 2 are admitted
    BFE radicand;
};

class TowerContext {
public:
    explicit TowerContext(ScalarCtxPtr sc) : scalar_(std::move(sc)) {}

    const ScalarContext& scalar() const { return *scalar_; }
    ScalarCtxPtr scalar_ptr() const { return scalar_; }

    // degree 1 symbols are aliases for their radicand; degree >= 3 rejected
    int adjoin(const std::string& name, int degree, const BFE& radicand) {
        if (degree != 1 && degree != 2)
            throw std::runtime_error("root degree " + std::to_string(degree) +
                                     " not admitted (only 1 and 2)");
        if (radicand.is_zero()) throw std::runtime_error("radicand must be nonzero");
        roots_.push_back(RootSymbol{name, degree, radicand});
        return (int)roots_.size() - 1;
    }
    const RootSymbol& root(int id) const { return roots_.at(id); }
    int count() const { return (int)roots_.size(); }

private:
    ScalarCtxPtr scalar_;
    std::vector<RootSymbol> roots_;
};

using TowerCtxPtr = std::shared_ptr<TowerContext>;

class TE {  // tower element
public:
    TE() = default;
    explicit TE(const BFE& b) {
        if (!b.is_zero()) terms_[{}] = b;
    }
    TE(TowerCtxPtr ctx, const BFE& b) : ctx_(std::move(ctx)) {
        if (!b.is_zero()) terms_[{}] = b;
    }
    static TE root(TowerCtxPtr ctx, int id) {
        if (ctx->root(id).degree == 1) return TE(ctx, ctx->root(id).radicand);
        TE out;
        out.ctx_ = std::move(ctx);
        out.terms_[{id}] = BFE(out.ctx_->scalar().l, Rat(1));
        return out;
    }
    static TE scalar(int l, const Rat& r) { return TE(BFE(l, r)); }

    const TowerCtxPtr& ctx() const { return ctx_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_base() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
    BFE base_part() const {
        auto it = terms_.find({});
        return it == terms_.end() ? BFE() : it->second;
    }
    const std::map<std::vector<int>, BFE>& terms() const { return terms_; }

    friend bool operator==(const TE& a, const TE& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const TE& a, const TE& b) { return !(a == b); }

    friend TE operator+(const TE& a, const TE& b) {
        TE out = a;
        out.merge_ctx(b);
        for (auto& [k, v] : b.terms_) out.add_term(k, v);
        return out;
    }
    friend TE operator-(const TE& a, const TE& b) {
        TE out = a;
        out.merge_ctx(b);
        for (auto& [k, v] : b.terms_) out.add_term(k, -v);
        return out;
    }
    TE operator-() const {
        TE out = *this;
        for (auto& [k, v] : out.terms_) v = -v;
        return out;
    }
    friend TE operator*(const TE& a, const TE& b) {
        TE out;
        out.ctx_ = a.ctx_ ? a.ctx_ : b.ctx_;
        if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_)
            throw std::runtime_error("mixed tower contexts");
        for (auto& [ka, va] : a.terms_)
            for (auto& [kb, vb] : b.terms_) {
                BFE coeff = va * vb;
                std::vector<int> key;
                size_t i = 0, j = 0;
                while (i < ka.size() || j < kb.size()) {
                    if (j >= kb.size() || (i < ka.size() && ka[i] < kb[j]))
                        key.push_back(ka[i++]);
                    else if (i >= ka.size() || kb[j] < ka[i])
                        key.push_back(kb[j++]);
                    else {  // shared root: r*r = radicand
                        coeff = coeff * out.ctx_->root(ka[i]).radicand;
                        ++i;
                        ++j;
                    }
                }
                out.add_term(key, coeff);
            }
        return out;
    }
    TE scaled(const BFE& c) const {
        TE out;
        out.ctx_ = ctx_;
        if (c.is_zero()) return out;
        for (auto& [k, v] : terms_) out.terms_[k] = v * c;
        return out;
    }

    TE inverse() const {
        if (terms_.empty()) throw std::runtime_error("division by zero in root tower");
        if (is_base()) {
            TE out;
            out.ctx_ = ctx_;
            out.terms_[{}] = terms_.begin()->second.inverse();
            return out;
        }
        // split on the highest root id present: this = u + v*r
        int rid = -1;
        for (auto& [k, v] : terms_)
            if (!k.empty()) rid = std::max(rid, k.back());
        TE u, v;
        u.ctx_ = v.ctx_ = ctx_;
        for (auto& [k, c] : terms_) {
            if (!k.empty() && k.back() == rid) {
                std::vector<int> rest(k.begin(), k.end() - 1);
                v.add_term(rest, c);
            } else {
                u.add_term(k, c);
            }
        }
        TE r = TE::root(ctx_, rid);
        TE conj = u - v * r;
        TE norm = u * u - v * v * TE(ctx_, ctx_->root(rid).radicand);
        return conj * norm.inverse();
    }
    friend TE operator/(const TE& a, const TE& b) { return a * b.inverse(); }

    TE pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        int l = ctx_ ? ctx_->scalar().l : 1;
        TE out = TE(BFE(l, Rat(1)));
        out.ctx_ = ctx_;
        TE base = *this;
        while (e > 0) {
            if (e & 1) out = out * base;
            base = base * base;
            e >>= 1;
        }
        return out;
    }

    // substitute base-field values for scalar variables; roots untouched
    TE subst_base(const std::vector<BFE>& vals) const {
        TE out;
        out.ctx_ = ctx_;
        for (auto& [k, v] : terms_) out.add_term(k, v.subst(vals));
        return out;
    }

    // multiply the coefficient of each term by gamma^(number of listed roots in key)
    TE scale_roots(const std::map<int, CycRat>& gammas) const {
        TE out;
        out.ctx_ = ctx_;
        for (auto& [k, v] : terms_) {
            CycRat g(ctx_ ? ctx_->scalar().l : 1, Rat(1));
            for (int id : k) {
                auto it = gammas.find(id);
                if (it != gammas.end()) g = g * it->second;
            }
            out.add_term(k, v * BFE(g));
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::vector<std::string> names =
            ctx_ ? ctx_->scalar().var_names : std::vector<std::string>{"q"};
        std::ostringstream os;
        bool first = true;
        for (auto& [k, v] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << v.str(names) << ")";
            for (int id : k) os << "*" << ctx_->root(id).name;
        }
        return os.str();
    }

private:
    TowerCtxPtr ctx_;
    std::map<std::vector<int>, BFE> terms_;

    void merge_ctx(const TE& other) {
        if (!ctx_) ctx_ = other.ctx_;
        else if (other.ctx_ && other.ctx_ != ctx_)
            throw std::runtime_error("mixed tower contexts");
    }
    void add_term(const std::vector<int>& k, const BFE& v) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (!v.is_zero()) terms_[k] = v;
        } else {
            BFE s = it->second + v;
            if (s.is_zero()) terms_.erase(it);
            else it->second = s;
        }
    }
};

}  // namespace eqvar
