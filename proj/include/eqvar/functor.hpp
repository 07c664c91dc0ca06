#pragma once

// Morphisms between presentations: Hopf generators map to monomials in
// the target Hopf generators, eigenoperators to words in the target
// operators, and base points transform along a polynomial coordinate
// map from the target base to the source base.
//
// A validated morphism induces a map of orbit windows (target window to
// source window) and pulls closed formulas over the source back to
// formulas over the target.

#include "formula.hpp"

namespace eqvar {

struct Morphism {
    std::string name;
    AlgebraSpec source, target;
    // per source Hopf generator: (target Hopf index, exponent) monomial
    std::vector<std::vector<std::pair<int, int>>> hopf_images;
    // per source operator: word in target operators, with a scalar factor
    std::vector<std::vector<int>> op_images;
    std::vector<BFE> op_coeffs;
    // source coordinate k as a function of the target coordinates
    std::vector<BFE> base_map;
};

inline std::vector<BFE> base_apply(const Morphism& m, const std::vector<BFE>& target_coords) {
    std::vector<BFE> vals{BFE::var(0, m.target.l())};
    for (const BFE& c : target_coords) vals.push_back(c);
    std::vector<BFE> out;
    for (const BFE& f : m.base_map) out.push_back(f.subst(vals));
    return out;
}

inline CheckReport validate_morphism(const Morphism& m) {
    CheckReport rep;
    auto add = [&](const std::string& what, bool ok, const std::string& detail) {
        rep.clauses.push_back({what, ok, detail});
    };
    int la = m.source.l(), lb = m.target.l();
    add("scalar towers agree", la == lb,
        "gamma orders " + std::to_string(la) + " and " + std::to_string(lb));
    bool sizes = m.hopf_images.size() == m.source.hopf.size() &&
                 m.op_images.size() == m.source.ops.size() &&
                 m.op_coeffs.size() == m.source.ops.size() &&
                 (int)m.base_map.size() == m.source.dim();
    add("image tables cover the presentation", sizes, "");
    if (!sizes || la != lb) return rep;
    int l = la;

    bool idx_ok = true;
    for (const auto& w : m.hopf_images)
        for (auto& [g, e] : w)
            if (g < 0 || g >= (int)m.target.hopf.size() || e == 0) idx_ok = false;
    for (const auto& w : m.op_images)
        for (int o : w)
            if (o < 0 || o >= (int)m.target.ops.size()) idx_ok = false;
    add("image indices in range", idx_ok, "");
    if (!idx_ok) return rep;

    // Hopf kinds survive: a grouplike generator maps to a monomial in
    // grouplike generators, a primitive one to a single primitive
    // generator with integer weight
    for (size_t h = 0; h < m.source.hopf.size(); ++h) {
        bool ok = true;
        std::string why;
        for (auto& [g, e] : m.hopf_images[h])
            if (m.target.hopf[g].kind != m.source.hopf[h].kind) {
                ok = false;
                why = "kind mismatch at target generator " + m.target.hopf[g].name;
            }
        if (m.source.hopf[h].kind == Coproduct::Primitive && m.hopf_images[h].size() > 1) {
            ok = false;
            why = "primitive generator maps to more than one generator";
        }
        add("Hopf image of " + m.source.hopf[h].name + " is kind-compatible", ok, why);
    }

    // eigencharacter compatibility: the character of the image word,
    // composed with the Hopf image, equals the source character
    for (size_t i = 0; i < m.source.ops.size(); ++i) {
        const EigenOperator& op = m.source.ops[i];
        for (size_t h = 0; h < m.source.hopf.size(); ++h) {
            Coproduct kind = m.source.hopf[h].kind;
            BFE expect = op.eigenvalues.at(h);
            BFE acc = kind == Coproduct::Grouplike ? BFE(l, Rat(1)) : BFE(l, Rat(0));
            for (auto& [g, e] : m.hopf_images[h]) {
                std::vector<BFE> alphas;
                for (int o : m.op_images[i]) alphas.push_back(m.target.ops[o].eigenvalues.at(g));
                BFE c = eigencharacter_product(kind, alphas, l);
                if (kind == Coproduct::Grouplike)
                    acc = acc * c.pow(e);
                else
                    acc = acc + c * BFE(l, Rat(e));
            }
            bool ok = acc == expect;
            add("eigencharacter of " + op.name + " matches under " + m.source.hopf[h].name, ok,
                ok ? "" : acc.str({"q"}) + " vs " + expect.str({"q"}));
        }
    }

    // base-map equivariance: f(eta_image(x)) == eta_i(f(x))
    for (size_t i = 0; i < m.source.ops.size(); ++i) {
        EtaMap eb = eta_of_word(m.target, m.op_images[i]);
        std::vector<BFE> x;
        for (int j = 0; j < m.target.dim(); ++j) x.push_back(BFE::var(j + 1, l));
        std::vector<BFE> lhs = base_apply(m, eb.apply(x));
        std::vector<BFE> rhs = derive_eta(m.source, (int)i).apply(base_apply(m, x));
        bool ok = lhs == rhs;
        add("base map intertwines the translation of " + m.source.ops[i].name, ok, "");
    }
    return rep;
}

// the induced map of windows, target window into source window, with a
// scalar gauge factor per target point fixing the intertwining of
// operator actions on basis vectors
struct WindowMap {
    std::vector<int> to_source;    // target point -> source point, -1 if unmapped
    std::vector<int> from_source;  // inverse where defined
    std::vector<BFE> factor;       // base-field gauge on basis vectors
    CheckReport report;

    bool ok() const { return report.ok(); }
};

namespace detail {

// a tower element that uses no adjoined roots, as a base-field value
inline bool te_base_only(const TE& v, BFE& out) {
    if (v.is_zero()) {
        out = BFE();
        return true;
    }
    if (v.terms().size() != 1 || !v.terms().begin()->first.empty()) return false;
    out = v.terms().begin()->second;
    return true;
}

}  // namespace detail

inline WindowMap window_map(const Morphism& m, const BundleModel& src_model,
                            const BundleModel& tgt_model) {
    WindowMap wm;
    auto add = [&](const std::string& what, bool ok, const std::string& detail) {
        wm.report.clauses.push_back({what, ok, detail});
    };
    const OrbitWindow& wa = src_model.window();
    const OrbitWindow& wb = tgt_model.window();
    int l = m.source.l();

    wm.to_source.assign(wb.size(), -1);
    wm.from_source.assign(wa.size(), -1);
    bool total = true, injective = true;
    for (int x = 0; x < wb.size(); ++x) {
        std::vector<BFE> img = base_apply(m, wb.point(x).coords);
        for (int yy = 0; yy < wa.size(); ++yy)
            if (wa.point(yy).coords == img) {
                wm.to_source[x] = yy;
                if (wm.from_source[yy] >= 0) injective = false;
                wm.from_source[yy] = x;
                break;
            }
        if (wm.to_source[x] < 0) total = false;
    }
    add("every target point lands in the source window", total, "");
    add("window map is injective", injective, "");

    // gauge factors along first-reached edges, then verify every edge:
    // factor(end) * prod(image coefficients) == factor(x) * lambda_i(phi x)
    wm.factor.assign(wb.size(), BFE());
    std::vector<bool> set(wb.size(), false);
    wm.factor[0] = BFE(l, Rat(1));
    set[0] = true;
    bool base_field = true;
    auto coeff_of = [&](const BundleModel& mod, const std::vector<int>& word, int point,
                        BFE& out) -> int {
        // returns the endpoint, accumulating base-field coefficients
        out = BFE(l, Rat(1));
        int cur = point;
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            BFE c;
            if (!detail::te_base_only(mod.op_coeff(*it, cur), c)) base_field = false;
            out = out * c;
            cur = mod.window().step(cur, *it);
            if (cur < 0) return -1;
        }
        return cur;
    };
    struct Edge {
        int from, to, op;
        BFE ratio;  // factor(to) / factor(from)
    };
    std::vector<Edge> edges;
    for (int x = 0; x < wb.size(); ++x) {
        if (wm.to_source[x] < 0) continue;
        for (size_t i = 0; i < m.source.ops.size(); ++i) {
            BFE bc;
            int end = coeff_of(tgt_model, m.op_images[i], x, bc);
            if (end < 0) continue;
            int sxi = wa.step(wm.to_source[x], (int)i);
            if (sxi < 0 || wm.to_source[end] != sxi) {
                add("translations of " + m.source.ops[i].name + " agree at point " +
                        std::to_string(x),
                    false, "");
                continue;
            }
            bc = bc * m.op_coeffs[i];
            BFE sc;
            if (!detail::te_base_only(src_model.op_coeff((int)i, wm.to_source[x]), sc))
                base_field = false;
            if (!base_field) continue;
            if (bc.is_zero()) {
                add("image of " + m.source.ops[i].name + " acts invertibly", false, "");
                continue;
            }
            edges.push_back({x, end, (int)i, sc / bc});
        }
    }
    add("coefficients stay in the base field", base_field,
        base_field ? "" : "adjoined roots are outside the scope of window maps");
    if (!base_field) return wm;

    bool progress = true;
    while (progress) {
        progress = false;
        for (const Edge& e : edges)
            if (set[e.from] && !set[e.to]) {
                wm.factor[e.to] = wm.factor[e.from] * e.ratio;
                set[e.to] = true;
                progress = true;
            }
    }
    bool consistent = true, reached = true;
    for (const Edge& e : edges) {
        if (!set[e.from] || !set[e.to]) {
            reached = false;
            continue;
        }
        if (!(wm.factor[e.to] == wm.factor[e.from] * e.ratio)) consistent = false;
    }
    add("gauge factors reach every edge", reached, "");
    add("gauge factors are consistent", consistent, "");
    return wm;
}

// push a target-model vector forward along the window map
inline FiberVec pushforward(const WindowMap& wm, const BundleModel& src_model,
                            const FiberVec& v) {
    if (v.is_zero()) return FiberVec{};
    int p = wm.to_source.at(v.point);
    if (p < 0) throw UnsupportedError("vector lies over an unmapped point");
    // coefficients cross into the source tower through the base field
    BFE c;
    if (!detail::te_base_only(v.coeff, c))
        throw UnsupportedError("coefficient uses adjoined roots");
    return FiberVec{p, TE(src_model.tower(), c * wm.factor.at(v.point))};
}

// pull a closed formula over the source back along the morphism: path
// words are replaced by their image words, bound fibers by their unique
// preimages, and base coordinates composed with the coordinate map
inline CoreFormula pullback_closed(const Morphism& m, const WindowMap& wm,
                                   const CoreFormula& f) {
    if (f.spec.name != m.source.name)
        throw std::runtime_error("pullback: formula is not over the source presentation");
    int l = m.source.l();
    CoreFormula out;
    out.spec = m.target;
    out.blocks = f.blocks;
    // bound fibers move to their preimage in the target window
    for (Block& b : out.blocks)
        if (b.bound) {
            int p = wm.from_source.at(b.fiber);
            if (p < 0) throw UnsupportedError("bound fiber has no preimage");
            if (!(wm.factor.at(p) == BFE(l, Rat(1))))
                throw UnsupportedError("bound fiber carries a nontrivial gauge factor");
            b.fiber = p;
        }
    // atoms substitute image words; per-step root data survives only
    // when the image of each letter is a single letter
    std::map<std::string, std::string> b_rename;
    std::set<std::string> b_lost;
    for (const PathAtom& a : f.atoms) {
        PathAtom na = a;
        na.word.clear();
        bool one_to_one = true;
        for (int op : a.word) {
            if (!(m.op_coeffs[op] == BFE(l, Rat(1))))
                throw UnsupportedError("image of " + m.source.ops[op].name +
                                       " carries a coefficient");
            if (m.op_images[op].size() != 1) one_to_one = false;
            for (int t : m.op_images[op]) na.word.push_back(t);
        }
        for (size_t k = 0; k < a.word.size(); ++k) {
            std::string bn = b_var(a.id, (int)(a.word.size() - 1 - k));
            if (one_to_one)
                b_rename[bn] = bn;  // same positions, same names
            else
                b_lost.insert(bn);
        }
        out.atoms.push_back(na);
    }
    // component: compose y variables with the coordinate map, keep the
    // rest; the coordinate map must be polynomial for this
    Component nc;
    nc.exist = f.comp.exist;
    std::vector<Poly> vals(1 + f.comp.vars.size());
    for (size_t i = 0; i < f.comp.vars.size(); ++i) {
        const std::string& v = f.comp.vars[i];
        if (b_lost.count(v))
            throw UnsupportedError("root variable " + v + " has no image under the pullback");
        bool is_y = v.rfind("y_", 0) == 0;
        if (!is_y) {
            vals[1 + i] = Poly::var(nc.ensure(v), l);
            continue;
        }
        size_t us = v.rfind('_');
        int blk = std::stoi(v.substr(2, us - 2));
        int coord = std::stoi(v.substr(us + 1)) - 1;
        const BFE& fc = m.base_map.at(coord);
        if (!fc.den().is_constant())
            throw UnsupportedError("coordinate map is not polynomial in " + v);
        // rebuild fc's numerator over the target block coordinates
        std::vector<Poly> cv{Poly::var(0, l)};
        for (int j = 0; j < m.target.dim(); ++j)
            cv.push_back(Poly::var(nc.ensure(y_var(blk, j)), l));
        Poly num = fc.num().subst(cv);
        vals[1 + i] = num.scaled(fc.den().constant_value().inverse());
    }
    for (const Clause& cl : f.comp.clauses) {
        Clause ncl;
        for (const Poly& p : cl.eqs) ncl.eqs.push_back(p.subst(vals));
        for (const Poly& p : cl.neqs) ncl.neqs.push_back(p.subst(vals));
        nc.clauses.push_back(std::move(ncl));
    }
    nc.canonicalize();
    out.comp = std::move(nc);
    return out;
}

}  // namespace eqvar
