#pragma once

// Rigidity of a presentation: the relation words and inverse pairs give
// a set Xi of word pairs; the presentation is rigid when for every pair
// ((i-word, j-word)) and all roots of unity gamma, delta in Gamma whose
// orders divide the root degrees of the first-acting operators,
// gamma^p = delta^q (p, q the word lengths).  The empty word stands for
// the trivial loop.
//
// Building on a witness failure, extend_isomorphism pushes a fiberwise
// scalar along a window and reports the first inconsistent edge.

#include "bundle.hpp"

namespace eqvar {

struct XiPair {
    std::vector<int> left, right;  // product order; empty = trivial loop
    std::string origin;
};

inline std::vector<XiPair> extract_xi(const AlgebraSpec& spec) {
    std::vector<XiPair> out;
    for (size_t ri = 0; ri < spec.relations.size(); ++ri) {
        const MonomialRelation& r = spec.relations[ri];
        std::string o = "relation " + std::to_string(ri);
        out.push_back({r.left, r.right, o});
        if (!r.f_zero) {
            out.push_back({r.left, {}, o + " (nonzero rhs)"});
            out.push_back({r.right, {}, o + " (nonzero rhs)"});
        }
    }
    std::vector<int> inv = inverse_partners(spec);
    for (size_t i = 0; i < spec.ops.size(); ++i) {
        int j = inv[i];
        if (j < 0) continue;
        std::string o = "inverse pair " + spec.ops[i].name + "," + spec.ops[j].name;
        out.push_back({{(int)i, j}, {j, (int)i}, o});
        out.push_back({{(int)i, j}, {}, o});
    }
    return out;
}

struct RigidityWitness {
    size_t pair;
    CycRat gamma, delta;
};

struct RigidityReport {
    std::vector<XiPair> xi;
    std::vector<RigidityWitness> witnesses;
    bool rigid() const { return witnesses.empty(); }
};

// order of gamma allowed on the first-acting operator of a word: the
// root degree, or 1 for the trivial loop
inline int first_root_degree(const AlgebraSpec& spec, const std::vector<int>& word) {
    if (word.empty()) return 1;
    return spec.ops[word.back()].root_degree;
}

inline RigidityReport check_rigidity(const AlgebraSpec& spec) {
    RigidityReport rep;
    rep.xi = extract_xi(spec);
    int l = spec.l();
    std::vector<CycRat> gamma = roots_of_unity(l, l);
    CycRat one(l, Rat(1));
    for (size_t pi = 0; pi < rep.xi.size(); ++pi) {
        const XiPair& x = rep.xi[pi];
        int ni = first_root_degree(spec, x.left);
        int nj = first_root_degree(spec, x.right);
        long p = (long)x.left.size(), q = (long)x.right.size();
        for (const CycRat& g : gamma) {
            if (g.pow(ni) != one) continue;
            for (const CycRat& d : gamma) {
                if (d.pow(nj) != one) continue;
                if (g.pow(p) != d.pow(q)) rep.witnesses.push_back({pi, g, d});
            }
        }
    }
    return rep;
}

struct ConsequenceReport {
    bool root_degrees_bounded = true;   // every n_i <= 2
    bool ratios_admissible = true;      // p/q in {1, 2, 1/2} for two-sided pairs
    std::vector<std::string> notes;
};

inline ConsequenceReport rigidity_consequences(const AlgebraSpec& spec) {
    ConsequenceReport out;
    for (const EigenOperator& o : spec.ops)
        if (o.root_degree > 2) {
            out.root_degrees_bounded = false;
            out.notes.push_back(o.name + ": root degree " + std::to_string(o.root_degree));
        }
    for (const XiPair& x : extract_xi(spec)) {
        if (x.left.empty() || x.right.empty()) continue;
        long p = (long)x.left.size(), q = (long)x.right.size();
        bool ok = (p == q) || (p == 2 * q) || (q == 2 * p);
        if (!ok) {
            out.ratios_admissible = false;
            out.notes.push_back(x.origin + ": length ratio " + std::to_string(p) + "/" +
                                std::to_string(q));
        }
    }
    return out;
}

struct ExtensionConflict {
    int fiber;
    std::string required, forced;
    std::string detail;
};

struct ExtensionResult {
    bool ok = false;
    std::vector<TE> factors;  // per fiber: map(e_x) = factor * e'_x
    std::vector<ExtensionConflict> conflicts;
};

// try to extend the root substitution sigma (root id -> unit scalar on the
// coefficient of that root) to a bundle isomorphism of the window onto
// itself, fiber by fiber along witness words, then re-verify every edge
inline ExtensionResult extend_isomorphism(const BundleModel& model,
                                          const std::map<int, CycRat>& sigma) {
    const OrbitWindow& win = model.window();
    const AlgebraSpec& spec = model.spec();
    ExtensionResult res;
    TE one(model.tower(), BFE(spec.l(), Rat(1)));
    res.factors.assign(win.size(), TE());
    res.factors[0] = one;

    auto edge_target_factor = [&](int i, int op) -> TE {
        // sigma(lambda(y_i)) * g_target = g_i * lambda(y_i), target spec
        // equal to source here, so the right-hand coefficient is unchanged
        TE lam = model.op_coeff(op, i);
        TE moved = lam.scale_roots(sigma);
        return res.factors[i] * lam / moved;
    };

    // define factors along first-reached edges (witness order)
    for (int i = 0; i < win.size(); ++i) {
        if (win.point(i).length >= win.radius()) continue;
        for (size_t op = 0; op < spec.ops.size(); ++op) {
            int t = win.step(i, (int)op);
            if (t < 0 || !res.factors[i].ctx()) continue;
            if (!res.factors[t].ctx()) {
                try {
                    res.factors[t] = edge_target_factor(i, (int)op);
                } catch (const std::runtime_error&) {
                    res.conflicts.push_back({t, "", "", "coefficient of " + spec.ops[op].name +
                                                        " vanishes on this edge"});
                }
            }
        }
    }
    // verify every in-window edge against the assigned factors
    for (int i = 0; i < win.size(); ++i) {
        if (win.point(i).length >= win.radius()) continue;
        for (size_t op = 0; op < spec.ops.size(); ++op) {
            int t = win.step(i, (int)op);
            if (t < 0) continue;
            if (!res.factors[i].ctx() || !res.factors[t].ctx()) continue;
            TE want = edge_target_factor(i, (int)op);
            if (want != res.factors[t]) {
                res.conflicts.push_back(
                    {t, res.factors[t].str(), want.str(),
                     "edge " + spec.ops[op].name + " from fiber " + std::to_string(i) +
                         " forces a different scalar than an earlier edge"});
            }
        }
    }
    res.ok = res.conflicts.empty();
    return res;
}

// replay: check that the extension really intertwines every operator on
// every in-window edge
inline bool replay_extension(const BundleModel& model, const std::map<int, CycRat>& sigma,
                             const ExtensionResult& ext) {
    if (!ext.ok) return false;
    const OrbitWindow& win = model.window();
    const AlgebraSpec& spec = model.spec();
    for (int i = 0; i < win.size(); ++i) {
        if (win.point(i).length >= win.radius()) continue;
        for (size_t op = 0; op < spec.ops.size(); ++op) {
            int t = win.step(i, (int)op);
            if (t < 0) continue;
            TE lam = model.op_coeff((int)op, i);
            // map(U e_i) vs U map(e_i)
            TE lhs = lam.scale_roots(sigma) * ext.factors[t];
            TE rhs = ext.factors[i] * lam;
            if (lhs != rhs) return false;
        }
    }
    return true;
}

}  // namespace eqvar
