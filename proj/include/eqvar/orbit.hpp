#pragma once

// Finite orbit windows: breadth-first enumeration of the monoid of eta
// maps applied to a symbolic representative point, up to a radius.
// Points are identified by the canonical form of their affine map, so
// equality of orbit points is decidable.  Root assignments attach a
// compatible choice of square roots to every (operator, point) pair,
// keyed by the radicand, with declared transfer rules verified on every
// in-window edge.

#include "algebra.hpp"

#include <deque>
#include <sstream>

namespace eqvar {

struct BoundaryError : std::runtime_error {
    explicit BoundaryError(const std::string& m) : std::runtime_error(m) {}
};

struct OrbitPoint {
    EtaMap from_rep;
    std::vector<BFE> coords;   // from_rep applied to (s1..sd)
    int length = 0;            // BFS depth
    std::vector<int> witness;  // generators applied from rep, first applied first
    bool boundary = false;
};

class OrbitWindow {
public:
    OrbitWindow(const AlgebraSpec& spec, int radius) : spec_(&spec), radius_(radius) {
        int l = spec.l(), d = spec.dim();
        for (size_t i = 0; i < spec.ops.size(); ++i) etas_.push_back(derive_eta(spec, (int)i));
        std::vector<BFE> rep;
        for (int j = 0; j < d; ++j) rep.push_back(BFE::var(j + 1, l));
        rep_ = rep;

        OrbitPoint p0{EtaMap::identity(d, l), rep, 0, {}, radius == 0};
        push(p0);
        for (size_t head = 0; head < points_.size(); ++head) {
            if (points_[head].length >= radius) continue;
            OrbitPoint cur = points_[head];  // copy: push may reallocate
            for (size_t g = 0; g < etas_.size(); ++g) {
                OrbitPoint np;
                np.from_rep = etas_[g].after(cur.from_rep);
                np.coords = np.from_rep.apply(rep_);
                np.length = cur.length + 1;
                np.witness = cur.witness;
                np.witness.push_back((int)g);
                np.boundary = np.length == radius;
                push(np);
            }
        }
    }

    const AlgebraSpec& spec() const { return *spec_; }
    int radius() const { return radius_; }
    int size() const { return (int)points_.size(); }
    const OrbitPoint& point(int i) const { return points_.at(i); }
    const EtaMap& eta(int op) const { return etas_.at(op); }

    int find(const EtaMap& m) const {
        auto it = index_.find(key(m));
        return it == index_.end() ? -1 : it->second;
    }

    // target of operator op applied at point i; negative if it leaves the window
    int step(int i, int op) const { return find(etas_[op].after(points_[i].from_rep)); }

    int step_checked(int i, int op) const {
        int t = step(i, op);
        if (t < 0)
            throw BoundaryError("operator " + spec_->ops[op].name + " leaves the window at point " +
                                std::to_string(i));
        return t;
    }

    // mu_i evaluated at a point: the eta word of the operator applied to it
    std::vector<BFE> mu_at(int op, int i) const {
        EtaMap m = EtaMap::identity(spec_->dim(), spec_->l());
        const std::vector<int>& w = spec_->ops[op].mu_word;
        for (auto it = w.rbegin(); it != w.rend(); ++it) m = etas_[*it].after(m);
        return m.apply(points_[i].coords);
    }

    std::string dot() const {
        std::ostringstream os;
        os << "digraph orbit {\n";
        const auto& names = spec_->scalar->var_names;
        for (int i = 0; i < size(); ++i) {
            os << "  p" << i << " [label=\"";
            for (size_t j = 0; j < points_[i].coords.size(); ++j) {
                if (j) os << ", ";
                os << points_[i].coords[j].str(names);
            }
            os << "\"";
            if (points_[i].boundary) os << " shape=box";
            os << "];\n";
        }
        for (int i = 0; i < size(); ++i) {
            if (points_[i].length >= radius_) continue;
            for (size_t g = 0; g < etas_.size(); ++g) {
                int t = step(i, (int)g);
                if (t >= 0)
                    os << "  p" << i << " -> p" << t << " [label=\"" << spec_->ops[g].name
                       << "\"];\n";
            }
        }
        os << "}\n";
        return os.str();
    }

private:
    const AlgebraSpec* spec_;
    int radius_;
    std::vector<EtaMap> etas_;
    std::vector<BFE> rep_;
    std::vector<OrbitPoint> points_;
    std::map<std::string, int> index_;

    std::string key(const EtaMap& m) const { return m.str(spec_->scalar->var_names); }
    void push(const OrbitPoint& p) {
        std::string k = key(p.from_rep);
        if (index_.count(k)) return;
        index_[k] = (int)points_.size();
        points_.push_back(p);
    }
};

struct RootConflict {
    int op, point;
    std::string detail;
};

namespace detail {

// square root of a monomial fraction with a rational square coefficient;
// returns false when no such root exists
inline bool monomial_sqrt(const BFE& v, int l, BFE& out) {
    if (v.is_zero()) return false;
    auto half = [&](const Poly& p, Poly& r) {
        if (p.terms().size() != 1) return false;
        const auto& [m, c] = *p.terms().begin();
        if (!c.is_rational()) return false;
        Rat cv = c.rational_part();
        if (cv < 0) return false;
        mpz_class nr, dr;
        if (!mpz_perfect_square_p(cv.get_num().get_mpz_t()) ||
            !mpz_perfect_square_p(cv.get_den().get_mpz_t()))
            return false;
        mpz_sqrt(nr.get_mpz_t(), cv.get_num().get_mpz_t());
        mpz_sqrt(dr.get_mpz_t(), cv.get_den().get_mpz_t());
        Mono hm(m.size(), 0);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] % 2 != 0) return false;
            hm[i] = m[i] / 2;
        }
        r = Poly(l, Rat(1));
        Poly unit;
        {
            Poly tmp(CycRat(l, Rat(mpq_class(nr, dr))));
            unit = tmp;
        }
        Poly mono(l, Rat(1));
        for (size_t i = 0; i < hm.size(); ++i)
            for (int e = 0; e < hm[i]; ++e) mono = mono * Poly::var((int)i, l);
        r = unit * mono;
        return true;
    };
    Poly hn, hd;
    if (!half(v.num(), hn) || !half(v.den(), hd)) return false;
    out = BFE(hn, hd);
    return true;
}

}  // namespace detail

// compatible square roots for every (operator, point) pair in a window
class RootAssignment {
public:
    RootAssignment(const OrbitWindow& win, TowerCtxPtr tower)
        : win_(&win), tower_(std::move(tower)) {
        const AlgebraSpec& spec = win.spec();
        int l = spec.l();
        // walk in BFS order, propagating scale rules along witness edges
        for (int i = 0; i < win.size(); ++i) {
            for (size_t op = 0; op < spec.ops.size(); ++op) {
                BFE rad = radicand((int)op, i);
                std::string k = std::to_string(o_deg((int)op)) + ":" +
                                rad.str(spec.scalar->var_names);
                if (entries_.count(k)) continue;
                const EigenOperator& o = spec.ops[op];
                if (o.root_degree == 1) {
                    entries_[k] = TE(tower_, rad);
                    continue;
                }
                TE entry;
                bool made = false;
                // propagate along any already-processed incoming scale edge
                if (!o.transfer.empty()) {
                    const OrbitPoint& p = win.point(i);
                    for (size_t g = 0; g < spec.ops.size() && !made; ++g) {
                        if (o.transfer[g].fresh) continue;
                        EtaMap pm = win.eta((int)g).inverse().after(p.from_rep);
                        int prev = win.find(pm);
                        if (prev < 0 || prev >= i) continue;
                        BFE prad = radicand((int)op, prev);
                        auto it = entries_.find(std::to_string(o_deg((int)op)) + ":" +
                                                prad.str(spec.scalar->var_names));
                        if (it == entries_.end()) continue;
                        entry = it->second.scaled(o.transfer[g].scale);
                        TE want(tower_, rad);
                        if (entry * entry != want)
                            throw std::runtime_error("transfer rule for " + o.name +
                                                     " breaks the defining identity");
                        made = true;
                    }
                }
                // a radicand that is a square, or a square multiple of an
                // already-adjoined radicand, reuses the existing tower
                if (!made) {
                    BFE h;
                    if (detail::monomial_sqrt(rad, l, h)) {
                        entry = TE(tower_, h);
                        made = true;
                    }
                }
                if (!made) {
                    for (int id = 0; id < tower_->count() && !made; ++id) {
                        if (tower_->root(id).degree != 2) continue;
                        BFE h;
                        if (!detail::monomial_sqrt(rad / tower_->root(id).radicand, l, h))
                            continue;
                        entry = TE::root(tower_, id) * TE(tower_, h);
                        made = true;
                    }
                }
                if (!made) {
                    int id = tower_->adjoin("r" + std::to_string(tower_->count()), 2, rad);
                    entry = TE::root(tower_, id);
                }
                entries_[k] = entry;
            }
        }
        verify();
    }

    const TowerCtxPtr& tower() const { return tower_; }
    const std::vector<RootConflict>& conflicts() const { return conflicts_; }
    bool consistent() const { return conflicts_.empty(); }

    // the root entry b with b^(n_op) = radicand of op at point i
    TE entry(int op, int i) const {
        BFE rad = radicand(op, i);
        return entries_.at(std::to_string(o_deg(op)) + ":" +
                            rad.str(win_->spec().scalar->var_names));
    }

private:
    const OrbitWindow* win_;
    TowerCtxPtr tower_;
    std::map<std::string, TE> entries_;
    std::vector<RootConflict> conflicts_;

    int o_deg(int op) const { return win_->spec().ops[op].root_degree; }
    BFE radicand(int op, int i) const {
        return win_->mu_at(op, i).at(win_->spec().ops[op].root_coord);
    }
    int point_of_witness(const std::vector<int>& w) const {
        EtaMap m = EtaMap::identity(win_->spec().dim(), win_->spec().l());
        for (int g : w) m = win_->eta(g).after(m);
        int i = win_->find(m);
        if (i < 0) throw std::runtime_error("witness prefix left the window");
        return i;
    }
    void verify() {
        const AlgebraSpec& spec = win_->spec();
        for (int i = 0; i < win_->size(); ++i) {
            if (win_->point(i).length >= win_->radius()) continue;
            for (size_t g = 0; g < spec.ops.size(); ++g) {
                int t = win_->step(i, (int)g);
                if (t < 0) continue;
                for (size_t op = 0; op < spec.ops.size(); ++op) {
                    const EigenOperator& o = spec.ops[op];
                    if (o.root_degree != 2 || o.transfer.empty() || o.transfer[g].fresh)
                        continue;
                    TE lhs = entry((int)op, t);
                    TE rhs = entry((int)op, i).scaled(o.transfer[g].scale);
                    if (lhs != rhs)
                        conflicts_.push_back({(int)op, i,
                                              "transfer of " + o.name + " along " +
                                                  spec.ops[g].name + " at point " +
                                                  std::to_string(i) + " disagrees"});
                }
            }
        }
    }
};

}  // namespace eqvar
