#pragma once

// Presentations of equivariant operator algebras: Hopf generators acting
// diagonally, eigenvector generators U_i with coefficient functions
// lambda_i, and monomial relations  c*U_left - d*U_right = f(h).
//
// Words are stored in product order: word[0] is the outermost factor,
// word.back() acts first.

#include "expr.hpp"

#include <optional>

namespace eqvar {

enum class Coproduct { Primitive, Grouplike };
enum class Mode { Rigid, Abstract };

// expressions name the character coordinates x1..xd
inline int coord_of_name(const std::string& n, int dim) {
    if (n.size() < 2 || n[0] != 'x') return -1;
    for (size_t i = 1; i < n.size(); ++i)
        if (!std::isdigit((unsigned char)n[i])) return -1;
    int j = std::stoi(n.substr(1));
    return j >= 1 && j <= dim ? j - 1 : -1;
}

struct HopfGenerator {
    std::string name;
    Coproduct kind = Coproduct::Grouplike;
    bool invertible = true;
};

struct TransferRule {
    bool fresh = true;  // fresh symbol at each point, else scale by `scale`
    BFE scale;
};

// one affine map per coordinate: x_j -> scale_j * x_j + shift_j
struct EtaMap {
    std::vector<std::pair<BFE, BFE>> comps;

    static EtaMap identity(int dim, int l) {
        EtaMap m;
        m.comps.assign(dim, {BFE(l, Rat(1)), BFE(l, Rat(0))});
        return m;
    }
    // a.after(b): apply b first
    EtaMap after(const EtaMap& b) const {
        EtaMap out;
        for (size_t j = 0; j < comps.size(); ++j)
            out.comps.push_back({comps[j].first * b.comps[j].first,
                                 comps[j].first * b.comps[j].second + comps[j].second});
        return out;
    }
    EtaMap inverse() const {
        EtaMap out;
        for (auto& [a, b] : comps) out.comps.push_back({a.inverse(), -(b / a)});
        return out;
    }
    std::vector<BFE> apply(const std::vector<BFE>& x) const {
        std::vector<BFE> out;
        for (size_t j = 0; j < comps.size(); ++j)
            out.push_back(comps[j].first * x[j] + comps[j].second);
        return out;
    }
    bool is_identity() const {
        for (auto& [a, b] : comps) {
            BFE one(a.num().leading_cyclotomic_order_or(1), Rat(1));
            if (!(a == one) || !b.is_zero()) return false;
        }
        return true;
    }
    friend bool operator==(const EtaMap& x, const EtaMap& y) { return x.comps == y.comps; }
    std::string str(const std::vector<std::string>& names) const {
        std::string out;
        for (size_t j = 0; j < comps.size(); ++j) {
            if (j) out += ";";
            out += comps[j].first.str(names) + "," + comps[j].second.str(names);
        }
        return out;
    }
};

struct EigenOperator {
    std::string name;
    std::vector<BFE> eigenvalues;       // one per Hopf generator
    Expr lambda;                        // in y, x1..xd, q
    int root_degree = 1;                // n_i, the degree of P_i in y
    std::vector<int> mu_word;           // eta word defining mu_i (product order)
    int root_coord = 0;                 // which coordinate of mu(x) is the radicand
    std::vector<TransferRule> transfer; // one per operator, or empty = all fresh
    long gamma_linearity = 1;           // lambda(g*y) = g^k * lambda(y)
    std::optional<EtaMap> explicit_eta; // abstract mode only
    std::string inverse_name;           // optional declared inverse partner
};

struct MonomialRelation {
    BFE c, d;
    std::vector<int> left, right;  // operator indices, product order
    Expr f;                        // in x1..xd, q
    bool f_zero = false;
};

struct AlgebraSpec {
    std::string name;
    Mode mode = Mode::Rigid;
    ScalarCtxPtr scalar;
    std::vector<bool> torus_coord;  // per coordinate; false = affine line
    std::vector<HopfGenerator> hopf;
    std::vector<EigenOperator> ops;
    std::vector<MonomialRelation> relations;

    int dim() const { return scalar->base_dim; }
    int l() const { return scalar->l; }
    int op_index(const std::string& n) const {
        for (size_t i = 0; i < ops.size(); ++i)
            if (ops[i].name == n) return (int)i;
        return -1;
    }
    int hopf_index(const std::string& n) const {
        for (size_t i = 0; i < hopf.size(); ++i)
            if (hopf[i].name == n) return (int)i;
        return -1;
    }
};

// eta map of one operator, from its eigenvalue row (or explicit in
// abstract mode): grouplike h scales the coordinate, primitive h shifts it.
inline EtaMap derive_eta(const AlgebraSpec& spec, int op) {
    const EigenOperator& o = spec.ops.at(op);
    if (o.explicit_eta) return *o.explicit_eta;
    if ((int)o.eigenvalues.size() != (int)spec.hopf.size())
        throw std::runtime_error("operator " + o.name + ": eigenvalue row size mismatch");
    EtaMap m;
    int l = spec.l();
    for (size_t j = 0; j < spec.hopf.size(); ++j) {
        if (spec.hopf[j].kind == Coproduct::Grouplike)
            m.comps.push_back({o.eigenvalues[j], BFE(l, Rat(0))});
        else
            m.comps.push_back({BFE(l, Rat(1)), o.eigenvalues[j]});
    }
    return m;
}

inline EtaMap eta_of_word(const AlgebraSpec& spec, const std::vector<int>& word) {
    EtaMap m = EtaMap::identity(spec.dim(), spec.l());
    // word.back() acts first
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        m = derive_eta(spec, *it).after(m);
    return m;
}

// group law on characters: primitive coordinates add, grouplike multiply
inline BFE character_group_law(Coproduct kind, const BFE& a, const BFE& b) {
    return kind == Coproduct::Primitive ? a + b : a * b;
}

// eigenvalue of a product of eigenvectors for a fixed Hopf generator
inline BFE eigencharacter_product(Coproduct kind, const std::vector<BFE>& alphas, int l) {
    BFE acc = kind == Coproduct::Primitive ? BFE(l, Rat(0)) : BFE(l, Rat(1));
    for (const BFE& a : alphas) acc = character_group_law(kind, acc, a);
    return acc;
}

// antipode and counit on a Hopf generator character value
inline BFE hopf_antipode(Coproduct kind, const BFE& v) {
    return kind == Coproduct::Primitive ? -v : v.inverse();
}
inline BFE hopf_counit(Coproduct kind, int l) {
    return kind == Coproduct::Primitive ? BFE(l, Rat(0)) : BFE(l, Rat(1));
}

struct CheckClause {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckClause> clauses;
    bool ok() const {
        for (auto& c : clauses)
            if (!c.pass) return false;
        return true;
    }
    std::string str() const {
        std::string out;
        for (auto& c : clauses) {
            out += (c.pass ? "  ok  " : " FAIL ") + c.name;
            if (!c.detail.empty()) out += ": " + c.detail;
            out += "\n";
        }
        return out;
    }
};

// structural checks that need no orbit machinery
inline CheckReport validate_shape(const AlgebraSpec& spec) {
    CheckReport rep;
    auto clause = [&](const std::string& n) -> CheckClause& {
        rep.clauses.push_back({n, true, ""});
        return rep.clauses.back();
    };

    {
        CheckClause& c = clause("coordinates match Hopf generators");
        if ((int)spec.hopf.size() != spec.dim() ||
            (int)spec.torus_coord.size() != spec.dim()) {
            c.pass = false;
            c.detail = "need one coordinate per Hopf generator";
        } else {
            for (int j = 0; j < spec.dim(); ++j) {
                bool want_torus = spec.hopf[j].kind == Coproduct::Grouplike;
                if (spec.torus_coord[j] != want_torus && spec.mode == Mode::Rigid) {
                    c.pass = false;
                    c.detail = "coordinate " + std::to_string(j + 1) +
                               " kind disagrees with coproduct of " + spec.hopf[j].name;
                }
                if (spec.hopf[j].kind == Coproduct::Grouplike && !spec.hopf[j].invertible) {
                    c.pass = false;
                    c.detail = spec.hopf[j].name + ": grouplike generators must be invertible";
                }
            }
        }
    }
    {
        CheckClause& c = clause("operator data well formed");
        for (const EigenOperator& o : spec.ops) {
            if (!o.explicit_eta && (int)o.eigenvalues.size() != (int)spec.hopf.size()) {
                c.pass = false;
                c.detail = o.name + ": eigenvalue row has wrong size";
            }
            if (spec.mode == Mode::Rigid && o.root_degree != 1 && o.root_degree != 2) {
                c.pass = false;
                c.detail = o.name + ": root degree " + std::to_string(o.root_degree) +
                           " rejected in rigid mode";
            }
            if (spec.mode == Mode::Rigid && o.root_degree > 1 && spec.l() % o.root_degree != 0) {
                c.pass = false;
                c.detail = o.name + ": root degree must divide the order of Gamma";
            }
            if (o.root_coord < 0 || o.root_coord >= spec.dim()) {
                c.pass = false;
                c.detail = o.name + ": root coordinate out of range";
            }
            for (int w : o.mu_word)
                if (w < 0 || w >= (int)spec.ops.size()) {
                    c.pass = false;
                    c.detail = o.name + ": bad operator index in mu word";
                }
            if (!o.transfer.empty() && o.transfer.size() != spec.ops.size()) {
                c.pass = false;
                c.detail = o.name + ": transfer table has wrong size";
            }
            std::set<std::string> vars;
            o.lambda.collect_vars(vars);
            for (const std::string& v : vars) {
                if (v == "y" || v == "q") continue;
                if (coord_of_name(v, spec.dim()) >= 0) continue;
                c.pass = false;
                c.detail = o.name + ": lambda uses unknown variable " + v;
            }
        }
    }
    {
        CheckClause& c = clause("relations well formed");
        for (const MonomialRelation& r : spec.relations) {
            for (int w : r.left)
                if (w < 0 || w >= (int)spec.ops.size()) c.pass = false;
            for (int w : r.right)
                if (w < 0 || w >= (int)spec.ops.size()) c.pass = false;
            if (r.c.is_zero() && r.d.is_zero()) {
                c.pass = false;
                c.detail = "relation with both scalars zero";
            }
            std::set<std::string> vars;
            if (!r.f_zero) r.f.collect_vars(vars);
            for (const std::string& v : vars) {
                if (v == "q" || coord_of_name(v, spec.dim()) >= 0) continue;
                c.pass = false;
                c.detail = "relation right-hand side uses unknown variable " + v;
            }
        }
    }
    return rep;
}

// find, for each operator, the operator whose eta map is inverse to it
inline std::vector<int> inverse_partners(const AlgebraSpec& spec) {
    std::vector<int> out(spec.ops.size(), -1);
    std::vector<EtaMap> etas;
    for (size_t i = 0; i < spec.ops.size(); ++i) etas.push_back(derive_eta(spec, (int)i));
    for (size_t i = 0; i < spec.ops.size(); ++i) {
        if (!spec.ops[i].inverse_name.empty()) {
            out[i] = spec.op_index(spec.ops[i].inverse_name);
            continue;
        }
        EtaMap want = etas[i].inverse();
        for (size_t j = 0; j < spec.ops.size(); ++j)
            if (etas[j] == want) {
                out[i] = (int)j;
                break;
            }
    }
    return out;
}

}  // namespace eqvar
