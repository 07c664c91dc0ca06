#pragma once

// The full equivariance check for a presentation: clause by clause,
// with the relation identities expanded exactly in the root tower over
// a window just large enough to contain the relation words.

#include "bundle.hpp"

namespace eqvar {

inline CheckReport check_equivariance(const AlgebraSpec& spec) {
    CheckReport rep = validate_shape(spec);
    int l = spec.l();

    {
        CheckClause c{"coproduct form declared for every Hopf generator", true, ""};
        std::string kinds;
        for (const HopfGenerator& h : spec.hopf)
            kinds += h.name + (h.kind == Coproduct::Primitive ? ":primitive " : ":grouplike ");
        c.detail = kinds;
        rep.clauses.push_back(c);
    }
    {
        CheckClause c{"eta maps closed under inverses", true, ""};
        if (spec.mode == Mode::Rigid) {
            std::vector<int> inv = inverse_partners(spec);
            for (size_t i = 0; i < inv.size(); ++i)
                if (inv[i] < 0) {
                    c.pass = false;
                    c.detail = "no operator inverts the eta map of " + spec.ops[i].name;
                }
        } else {
            c.detail = "skipped in abstract mode";
        }
        rep.clauses.push_back(c);
    }
    {
        CheckClause c{"eta maps respect the coordinate kinds", true, ""};
        for (size_t i = 0; i < spec.ops.size(); ++i) {
            EtaMap m = derive_eta(spec, (int)i);
            for (int j = 0; j < spec.dim(); ++j) {
                bool torus = spec.torus_coord[j];
                if (m.comps[j].first.is_zero()) {
                    c.pass = false;
                    c.detail = spec.ops[i].name + ": zero scale on coordinate " +
                               std::to_string(j + 1);
                }
                if (spec.mode == Mode::Rigid) {
                    if (torus && !m.comps[j].second.is_zero()) {
                        c.pass = false;
                        c.detail = spec.ops[i].name + ": shift on a torus coordinate";
                    }
                    if (!torus && !(m.comps[j].first == BFE(l, Rat(1)))) {
                        c.pass = false;
                        c.detail = spec.ops[i].name + ": scale on an affine coordinate";
                    }
                }
            }
        }
        rep.clauses.push_back(c);
    }
    {
        CheckClause c{"relation eta composites agree", true, ""};
        for (size_t ri = 0; ri < spec.relations.size(); ++ri) {
            const MonomialRelation& r = spec.relations[ri];
            EtaMap le = eta_of_word(spec, r.left), re = eta_of_word(spec, r.right);
            if (!(le == re)) {
                c.pass = false;
                c.detail = "relation " + std::to_string(ri) + ": sides move fibers differently";
            }
            if (!r.f_zero && !le.is_identity()) {
                c.pass = false;
                c.detail = "relation " + std::to_string(ri) +
                           ": nonzero right-hand side but non-identity eta composite";
            }
        }
        rep.clauses.push_back(c);
    }
    {
        CheckClause c{"relation scalar identities hold in the root tower", true, ""};
        size_t max_len = 1;
        for (const MonomialRelation& r : spec.relations)
            max_len = std::max({max_len, r.left.size(), r.right.size()});
        try {
            BundleModel model(spec, (int)max_len);
            VerifyReport vr = model.verify_relations();
            for (const ResidualEntry& e : vr.entries) {
                if (e.point != 0) continue;  // the symbolic representative
                if (e.status == ResidualEntry::Residual) {
                    c.pass = false;
                    c.detail = e.what + ": " + e.detail;
                }
            }
        } catch (const std::runtime_error& ex) {
            c.pass = false;
            c.detail = ex.what();
        }
        rep.clauses.push_back(c);
    }
    {
        CheckClause c{"parameters drawn from the ground field", true, ""};
        // scalars enter only through expressions over q and the coordinates,
        // which the shape clause has already confined
        c.detail = "expressions range over q and the character coordinates";
        rep.clauses.push_back(c);
    }
    {
        CheckClause c{"lambda is Gamma-linear of the declared order", true, ""};
        int tvar = spec.scalar->ensure_var("_t");
        for (const EigenOperator& o : spec.ops) {
            BFE t = BFE::var(tvar, l);
            for (const CycRat& g : roots_of_unity(l, l)) {
                auto mk = [&](const BFE& yval) {
                    auto lookup = [&](const std::string& n) -> TE {
                        if (n == "y") return TE(yval);
                        if (n == "q") return TE(BFE::var(0, l));
                        int j = coord_of_name(n, spec.dim());
                        if (j >= 0) return TE(BFE::var(j + 1, l));
                        throw std::runtime_error("unknown variable " + n);
                    };
                    return o.lambda.eval(lookup, l);
                };
                TE lhs = mk(t * BFE(g));
                TE rhs = mk(t).scaled(BFE(g.pow(o.gamma_linearity)));
                if (lhs != rhs) {
                    c.pass = false;
                    c.detail = o.name + ": lambda(" + g.str() + "*y) != " + g.str() + "^" +
                               std::to_string(o.gamma_linearity) + "*lambda(y)";
                }
            }
        }
        rep.clauses.push_back(c);
    }
    return rep;
}

}  // namespace eqvar
