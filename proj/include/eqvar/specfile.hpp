#pragma once

// JSON (de)serialization for algebra presentations and morphisms.
// Loading rejects unknown keys; emitting is canonical (sorted keys,
// expression strings in a parse-stable form), so emit(load(emit(x)))
// is byte-identical to emit(x).

#include "functor.hpp"

#include <json.hpp>

#include <fstream>

namespace eqvar {

using Json = nlohmann::json;

inline void reject_unknown(const Json& j, std::initializer_list<const char*> allowed,
                           const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw std::runtime_error("unknown key '" + it.key() + "' in " + where);
    }
}

// expression string for a base field element, parseable by ExprParser
inline std::string poly_expr_str(const Poly& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        if (!first) out += " + ";
        first = false;
        const CycRat& c = it->second;
        std::string coeff;
        if (c.is_rational()) {
            coeff = rat_str(c.rational_part());
        } else {
            coeff = "(";
            bool f2 = true;
            for (size_t k = 0; k < c.coeffs().size(); ++k) {
                if (c.coeffs()[k] == 0) continue;
                if (!f2) coeff += " + ";
                f2 = false;
                coeff += rat_str(c.coeffs()[k]);
                if (k == 1) coeff += "*zeta";
                else if (k > 1) coeff += "*zeta^" + std::to_string(k);
            }
            coeff += ")";
        }
        out += coeff;
        for (size_t i = 0; i < it->first.size(); ++i) {
            if (it->first[i] == 0) continue;
            out += "*" + (i < names.size() ? names[i] : "v" + std::to_string(i));
            if (it->first[i] != 1) out += "^" + std::to_string(it->first[i]);
        }
    }
    return out;
}

inline std::string bfe_expr_str(const BFE& v, const std::vector<std::string>& names) {
    if (v.is_polynomial()) {
        Poly p = v.num().scaled(v.den().constant_value().inverse());
        return poly_expr_str(p, names);
    }
    return "(" + poly_expr_str(v.num(), names) + ")/(" + poly_expr_str(v.den(), names) + ")";
}

// parse an expression string into a base field element over q, s1..sd
inline BFE parse_bfe(const std::string& s, const ScalarCtxPtr& sc) {
    Expr e = ExprParser::parse(s);
    int l = sc->l;
    auto lookup = [&](const std::string& n) -> TE {
        if (n == "q") return TE(BFE::var(0, l));
        int idx = sc->var_index(n);
        if (idx > 0) return TE(BFE::var(idx, l));
        throw std::runtime_error("unknown scalar variable '" + n + "'");
    };
    TE v = e.eval(lookup, l);
    if (!v.is_base()) throw std::runtime_error("expression is not in the base field: " + s);
    return v.base_part();
}

inline Json spec_to_json(const AlgebraSpec& spec) {
    const auto& names = spec.scalar->var_names;
    Json j;
    j["schema_version"] = 1;
    j["kind"] = "algebra";
    j["name"] = spec.name;
    j["mode"] = spec.mode == Mode::Rigid ? "rigid" : "abstract";
    j["gamma_order"] = spec.l();
    j["base_dim"] = spec.dim();
    Json coords = Json::array();
    for (bool t : spec.torus_coord) coords.push_back(t ? "torus" : "affine");
    j["coords"] = coords;
    Json hopf = Json::array();
    for (const HopfGenerator& h : spec.hopf) {
        Json hj;
        hj["name"] = h.name;
        hj["coproduct"] = h.kind == Coproduct::Primitive ? "primitive" : "grouplike";
        hj["invertible"] = h.invertible;
        hopf.push_back(hj);
    }
    j["hopf"] = hopf;
    Json ops = Json::array();
    for (const EigenOperator& o : spec.ops) {
        Json oj;
        oj["name"] = o.name;
        Json evs = Json::array();
        for (const BFE& e : o.eigenvalues) evs.push_back(bfe_expr_str(e, names));
        oj["eigenvalues"] = evs;
        oj["lambda"] = o.lambda.str();
        oj["root_degree"] = o.root_degree;
        Json mw = Json::array();
        for (int w : o.mu_word) mw.push_back(spec.ops[w].name);
        oj["mu_word"] = mw;
        oj["root_coord"] = o.root_coord;
        if (!o.transfer.empty()) {
            Json tr = Json::array();
            for (const TransferRule& t : o.transfer) {
                Json tj;
                tj["rule"] = t.fresh ? "fresh" : "scale";
                if (!t.fresh) tj["factor"] = bfe_expr_str(t.scale, names);
                tr.push_back(tj);
            }
            oj["transfer"] = tr;
        }
        oj["gamma_linearity"] = o.gamma_linearity;
        if (o.explicit_eta) {
            Json ej;
            Json sc = Json::array(), sh = Json::array();
            for (auto& [a, b] : o.explicit_eta->comps) {
                sc.push_back(bfe_expr_str(a, names));
                sh.push_back(bfe_expr_str(b, names));
            }
            ej["scale"] = sc;
            ej["shift"] = sh;
            oj["eta"] = ej;
        }
        if (!o.inverse_name.empty()) oj["inverse"] = o.inverse_name;
        ops.push_back(oj);
    }
    j["operators"] = ops;
    Json rels = Json::array();
    for (const MonomialRelation& r : spec.relations) {
        Json rj;
        rj["c"] = bfe_expr_str(r.c, names);
        rj["d"] = bfe_expr_str(r.d, names);
        Json lw = Json::array(), rw = Json::array();
        for (int w : r.left) lw.push_back(spec.ops[w].name);
        for (int w : r.right) rw.push_back(spec.ops[w].name);
        rj["left"] = lw;
        rj["right"] = rw;
        rj["f"] = r.f_zero ? "0" : r.f.str();
        rels.push_back(rj);
    }
    j["relations"] = rels;
    return j;
}

inline AlgebraSpec spec_from_json(const Json& j) {
    reject_unknown(j,
                   {"schema_version", "kind", "name", "mode", "gamma_order", "base_dim",
                    "coords", "hopf", "operators", "relations"},
                   "algebra");
    if (!j.contains("schema_version") || j.at("schema_version").get<int>() != 1)
        throw std::runtime_error("unsupported schema_version");
    if (j.value("kind", "algebra") != "algebra")
        throw std::runtime_error("not an algebra document");
    AlgebraSpec spec;
    spec.name = j.at("name").get<std::string>();
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "rigid") spec.mode = Mode::Rigid;
    else if (mode == "abstract") spec.mode = Mode::Abstract;
    else throw std::runtime_error("bad mode: " + mode);
    int l = j.at("gamma_order").get<int>();
    int d = j.at("base_dim").get<int>();
    if (l < 1 || d < 1) throw std::runtime_error("gamma_order and base_dim must be positive");
    spec.scalar = std::make_shared<ScalarContext>(l, d);
    for (const Json& c : j.at("coords")) {
        std::string k = c.get<std::string>();
        if (k != "torus" && k != "affine") throw std::runtime_error("bad coordinate kind " + k);
        spec.torus_coord.push_back(k == "torus");
    }
    if ((int)spec.torus_coord.size() != d)
        throw std::runtime_error("coords length must equal base_dim");
    for (const Json& h : j.at("hopf")) {
        reject_unknown(h, {"name", "coproduct", "invertible"}, "hopf generator");
        std::string cp = h.at("coproduct").get<std::string>();
        if (cp != "primitive" && cp != "grouplike")
            throw std::runtime_error("bad coproduct " + cp);
        spec.hopf.push_back({h.at("name").get<std::string>(),
                             cp == "primitive" ? Coproduct::Primitive : Coproduct::Grouplike,
                             h.at("invertible").get<bool>()});
    }
    // two passes over operators: names first, then bodies (mu words refer
    // to operators by name)
    std::vector<std::string> op_names;
    for (const Json& o : j.at("operators")) op_names.push_back(o.at("name").get<std::string>());
    auto op_idx = [&](const std::string& n) {
        for (size_t i = 0; i < op_names.size(); ++i)
            if (op_names[i] == n) return (int)i;
        throw std::runtime_error("unknown operator name '" + n + "'");
    };
    for (const Json& o : j.at("operators")) {
        reject_unknown(o,
                       {"name", "eigenvalues", "lambda", "root_degree", "mu_word", "root_coord",
                        "transfer", "gamma_linearity", "eta", "inverse"},
                       "operator");
        EigenOperator op;
        op.name = o.at("name").get<std::string>();
        for (const Json& e : o.at("eigenvalues"))
            op.eigenvalues.push_back(parse_bfe(e.get<std::string>(), spec.scalar));
        op.lambda = ExprParser::parse(o.at("lambda").get<std::string>());
        op.root_degree = o.at("root_degree").get<int>();
        for (const Json& w : o.at("mu_word")) op.mu_word.push_back(op_idx(w.get<std::string>()));
        op.root_coord = o.at("root_coord").get<int>();
        if (o.contains("transfer")) {
            for (const Json& t : o.at("transfer")) {
                reject_unknown(t, {"rule", "factor"}, "transfer rule");
                std::string rule = t.at("rule").get<std::string>();
                if (rule == "fresh") op.transfer.push_back({true, {}});
                else if (rule == "scale")
                    op.transfer.push_back(
                        {false, parse_bfe(t.at("factor").get<std::string>(), spec.scalar)});
                else throw std::runtime_error("bad transfer rule " + rule);
            }
        }
        op.gamma_linearity = o.at("gamma_linearity").get<long>();
        if (o.contains("eta")) {
            reject_unknown(o.at("eta"), {"scale", "shift"}, "eta");
            EtaMap m;
            const Json& sc = o.at("eta").at("scale");
            const Json& sh = o.at("eta").at("shift");
            for (size_t k = 0; k < sc.size(); ++k)
                m.comps.push_back({parse_bfe(sc[k].get<std::string>(), spec.scalar),
                                   parse_bfe(sh[k].get<std::string>(), spec.scalar)});
            op.explicit_eta = m;
        }
        if (o.contains("inverse")) op.inverse_name = o.at("inverse").get<std::string>();
        spec.ops.push_back(std::move(op));
    }
    for (const Json& r : j.at("relations")) {
        reject_unknown(r, {"c", "d", "left", "right", "f"}, "relation");
        MonomialRelation rel;
        rel.c = parse_bfe(r.at("c").get<std::string>(), spec.scalar);
        rel.d = parse_bfe(r.at("d").get<std::string>(), spec.scalar);
        for (const Json& w : r.at("left")) rel.left.push_back(op_idx(w.get<std::string>()));
        for (const Json& w : r.at("right")) rel.right.push_back(op_idx(w.get<std::string>()));
        std::string f = r.at("f").get<std::string>();
        if (f == "0") {
            rel.f_zero = true;
            rel.f = Expr::number(Rat(0));
        } else {
            rel.f = ExprParser::parse(f);
        }
        spec.relations.push_back(std::move(rel));
    }
    return spec;
}

inline std::string spec_dump(const AlgebraSpec& spec) { return spec_to_json(spec).dump(2) + "\n"; }

inline AlgebraSpec spec_load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j = Json::parse(in);
    return spec_from_json(j);
}

// coordinate-map expressions use the names q, x1..xd of the target base
inline std::vector<std::string> coord_names(int d) {
    std::vector<std::string> names{"q"};
    for (int j = 1; j <= d; ++j) names.push_back("x" + std::to_string(j));
    return names;
}

inline BFE parse_coord_map(const std::string& s, int l, int d) {
    Expr e = ExprParser::parse(s);
    auto lookup = [&](const std::string& n) -> TE {
        if (n == "q") return TE(BFE::var(0, l));
        int c = coord_of_name(n, d);
        if (c >= 0) return TE(BFE::var(c + 1, l));
        throw std::runtime_error("unknown coordinate '" + n + "'");
    };
    TE v = e.eval(lookup, l);
    if (!v.is_base()) throw std::runtime_error("coordinate map is not base-valued: " + s);
    return v.base_part();
}

inline Json morphism_to_json(const Morphism& m) {
    Json j;
    j["schema_version"] = 1;
    j["kind"] = "morphism";
    j["name"] = m.name;
    j["source"] = spec_to_json(m.source);
    j["target"] = spec_to_json(m.target);
    Json hi = Json::array();
    for (const auto& w : m.hopf_images) {
        Json word = Json::array();
        for (auto& [g, e] : w) {
            Json t;
            t["generator"] = m.target.hopf.at(g).name;
            t["power"] = e;
            word.push_back(t);
        }
        hi.push_back(word);
    }
    j["hopf_images"] = hi;
    Json oi = Json::array();
    const auto& names = m.target.scalar->var_names;
    for (size_t i = 0; i < m.op_images.size(); ++i) {
        Json t;
        Json word = Json::array();
        for (int o : m.op_images[i]) word.push_back(m.target.ops.at(o).name);
        t["word"] = word;
        t["coefficient"] = bfe_expr_str(m.op_coeffs.at(i), names);
        oi.push_back(t);
    }
    j["op_images"] = oi;
    Json bm = Json::array();
    for (const BFE& f : m.base_map) bm.push_back(bfe_expr_str(f, coord_names(m.target.dim())));
    j["base_map"] = bm;
    return j;
}

inline Morphism morphism_from_json(const Json& j) {
    reject_unknown(j,
                   {"schema_version", "kind", "name", "source", "target", "hopf_images",
                    "op_images", "base_map"},
                   "morphism");
    if (!j.contains("schema_version") || j.at("schema_version").get<int>() != 1)
        throw std::runtime_error("unsupported schema_version");
    if (j.value("kind", "") != "morphism") throw std::runtime_error("not a morphism document");
    Morphism m;
    m.name = j.at("name").get<std::string>();
    m.source = spec_from_json(j.at("source"));
    m.target = spec_from_json(j.at("target"));
    auto hopf_idx = [&](const std::string& n) {
        for (size_t i = 0; i < m.target.hopf.size(); ++i)
            if (m.target.hopf[i].name == n) return (int)i;
        throw std::runtime_error("unknown target Hopf generator '" + n + "'");
    };
    auto op_idx = [&](const std::string& n) {
        for (size_t i = 0; i < m.target.ops.size(); ++i)
            if (m.target.ops[i].name == n) return (int)i;
        throw std::runtime_error("unknown target operator '" + n + "'");
    };
    for (const Json& w : j.at("hopf_images")) {
        std::vector<std::pair<int, int>> word;
        for (const Json& t : w) {
            reject_unknown(t, {"generator", "power"}, "hopf image");
            word.push_back({hopf_idx(t.at("generator").get<std::string>()),
                            t.at("power").get<int>()});
        }
        m.hopf_images.push_back(std::move(word));
    }
    for (const Json& t : j.at("op_images")) {
        reject_unknown(t, {"word", "coefficient"}, "operator image");
        std::vector<int> word;
        for (const Json& w : t.at("word")) word.push_back(op_idx(w.get<std::string>()));
        m.op_images.push_back(std::move(word));
        m.op_coeffs.push_back(
            parse_bfe(t.at("coefficient").get<std::string>(), m.target.scalar));
    }
    for (const Json& f : j.at("base_map"))
        m.base_map.push_back(
            parse_coord_map(f.get<std::string>(), m.target.l(), m.target.dim()));
    return m;
}

// parse a clause polynomial over the component variable names
inline Poly parse_clause_poly(const std::string& s, const Component& c, int l) {
    Expr e = ExprParser::parse(s);
    auto lookup = [&](const std::string& n) -> TE {
        if (n == "q") return TE(BFE::var(0, l));
        int idx = c.var_index(n);
        if (idx > 0) return TE(BFE::var(idx, l));
        throw std::runtime_error("unknown component variable '" + n + "'");
    };
    TE v = e.eval(lookup, l);
    if (!v.is_base()) throw std::runtime_error("clause is not base-valued: " + s);
    BFE b = v.base_part();
    if (!b.den().is_constant())
        throw std::runtime_error("clause polynomial has a denominator: " + s);
    return b.num().scaled(b.den().constant_value().inverse());
}

inline Json formula_to_json(const CoreFormula& f) {
    Json j;
    j["schema_version"] = 1;
    j["kind"] = "formula";
    j["algebra"] = spec_to_json(f.spec);
    Json blocks = Json::array();
    for (const Block& b : f.blocks) {
        Json bj;
        bj["size"] = b.size;
        if (b.bound) bj["fiber"] = b.fiber;
        if (!b.dropped.empty()) {
            Json dr = Json::array();
            for (bool d : b.dropped) dr.push_back(d);
            bj["dropped"] = dr;
        }
        blocks.push_back(bj);
    }
    j["blocks"] = blocks;
    Json atoms = Json::array();
    for (const PathAtom& a : f.atoms) {
        Json aj;
        aj["src"] = a.src;
        aj["dst"] = a.dst;
        Json w = Json::array();
        for (int op : a.word) w.push_back(f.spec.ops.at(op).name);
        aj["word"] = w;
        aj["theta"] = a.theta;
        aj["id"] = a.id;
        atoms.push_back(aj);
    }
    j["atoms"] = atoms;
    Json comp;
    comp["vars"] = f.comp.vars;
    comp["exist"] = f.comp.exist;
    std::vector<std::string> names = f.comp.poly_names();
    Json clauses = Json::array();
    for (const Clause& cl : f.comp.clauses) {
        Json cj;
        Json eq = Json::array(), neq = Json::array();
        for (const Poly& p : cl.eqs) eq.push_back(poly_expr_str(p, names));
        for (const Poly& p : cl.neqs) neq.push_back(poly_expr_str(p, names));
        cj["eq"] = eq;
        cj["neq"] = neq;
        clauses.push_back(cj);
    }
    comp["clauses"] = clauses;
    j["component"] = comp;
    return j;
}

inline CoreFormula formula_from_json(const Json& j) {
    reject_unknown(j, {"schema_version", "kind", "algebra", "blocks", "atoms", "component"},
                   "formula");
    if (!j.contains("schema_version") || j.at("schema_version").get<int>() != 1)
        throw std::runtime_error("unsupported schema_version");
    if (j.value("kind", "") != "formula") throw std::runtime_error("not a formula document");
    CoreFormula f;
    f.spec = spec_from_json(j.at("algebra"));
    int l = f.spec.l();
    for (const Json& bj : j.at("blocks")) {
        reject_unknown(bj, {"size", "fiber", "dropped"}, "block");
        Block b;
        b.size = bj.at("size").get<int>();
        if (b.size < 1) throw std::runtime_error("block size must be positive");
        if (bj.contains("fiber")) {
            b.bound = true;
            b.fiber = bj.at("fiber").get<int>();
        }
        if (bj.contains("dropped")) {
            for (const Json& d : bj.at("dropped")) b.dropped.push_back(d.get<bool>());
            if ((int)b.dropped.size() != b.size)
                throw std::runtime_error("dropped list length must equal block size");
        }
        f.blocks.push_back(b);
    }
    auto op_idx = [&](const std::string& n) {
        for (size_t i = 0; i < f.spec.ops.size(); ++i)
            if (f.spec.ops[i].name == n) return (int)i;
        throw std::runtime_error("unknown operator name '" + n + "'");
    };
    for (const Json& aj : j.at("atoms")) {
        reject_unknown(aj, {"src", "dst", "word", "theta", "id"}, "atom");
        PathAtom a;
        a.src = aj.at("src").get<int>();
        a.dst = aj.at("dst").get<int>();
        if (a.src < 0 || a.src >= (int)f.blocks.size() || a.dst < 0 ||
            a.dst >= (int)f.blocks.size())
            throw std::runtime_error("atom endpoint out of range");
        for (const Json& w : aj.at("word")) a.word.push_back(op_idx(w.get<std::string>()));
        a.theta = aj.at("theta").get<int>();
        if (a.theta < 0 || a.theta > 2) throw std::runtime_error("theta must be 0, 1 or 2");
        a.id = aj.at("id").get<std::string>();
        f.atoms.push_back(a);
    }
    const Json& comp = j.at("component");
    reject_unknown(comp, {"vars", "exist", "clauses"}, "component");
    for (const Json& v : comp.at("vars")) f.comp.ensure(v.get<std::string>());
    for (const Json& e : comp.at("exist")) {
        std::string n = e.get<std::string>();
        if (f.comp.var_index(n) < 0)
            throw std::runtime_error("existential variable '" + n + "' is not declared");
        f.comp.exist.push_back(n);
    }
    for (const Json& cj : comp.at("clauses")) {
        reject_unknown(cj, {"eq", "neq"}, "clause");
        Clause cl;
        for (const Json& p : cj.at("eq"))
            cl.eqs.push_back(parse_clause_poly(p.get<std::string>(), f.comp, l));
        for (const Json& p : cj.at("neq"))
            cl.neqs.push_back(parse_clause_poly(p.get<std::string>(), f.comp, l));
        f.comp.clauses.push_back(std::move(cl));
    }
    return f;
}

inline std::string formula_dump(const CoreFormula& f) {
    return formula_to_json(f).dump(2) + "\n";
}

inline CoreFormula formula_load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return formula_from_json(Json::parse(in));
}

inline std::string morphism_dump(const Morphism& m) {
    return morphism_to_json(m).dump(2) + "\n";
}

inline Morphism morphism_load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return morphism_from_json(Json::parse(in));
}

}  // namespace eqvar
