#pragma once

// Core formulas over a window model: enumeration blocks of basis-class
// variables, path atoms carrying root and transition data, and a
// constructible component in disjunctive normal form over polynomial
// atoms.  Components quote their variables by name; polynomial variable
// 0 is always q, component variables start at index 1.
//
// Evaluation is a finite search over basis classes in Gamma and root
// sign choices per degree-two path step; projected (dropped) slots
// become existentially solved field variables, and fully dropped blocks
// range over the window fibers.

#include "bundle.hpp"

#include <cassert>

namespace eqvar {

struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& m) : std::runtime_error(m) {}
};

struct Clause {
    std::vector<Poly> eqs, neqs;
};

class Component {
public:
    std::vector<std::string> vars;   // component variables; poly index = 1 + position
    std::vector<std::string> exist;  // subset of vars, existentially bound
    std::vector<Clause> clauses;     // DNF; no clauses = false; one empty clause = true

    int var_index(const std::string& n) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == n) return (int)(1 + i);
        return -1;
    }
    int ensure(const std::string& n) {
        int i = var_index(n);
        if (i > 0) return i;
        vars.push_back(n);
        return (int)vars.size();
    }
    bool is_exist(const std::string& n) const {
        for (const std::string& e : exist)
            if (e == n) return true;
        return false;
    }

    static Component truth() {
        Component c;
        c.clauses.push_back({});
        return c;
    }
    static Component falsity() { return {}; }

    std::vector<std::string> poly_names() const {
        std::vector<std::string> out{"q"};
        for (const std::string& v : vars) out.push_back(v);
        return out;
    }

    std::string clause_str(const Clause& cl) const {
        std::vector<std::string> names = poly_names();
        std::string out;
        for (const Poly& p : cl.eqs) out += "[" + p.str(names) + "=0]";
        for (const Poly& p : cl.neqs) out += "[" + p.str(names) + "!=0]";
        return out;
    }

    void canonicalize() {
        std::vector<Clause> kept;
        std::set<std::string> seen;
        for (Clause cl : clauses) {
            bool dead = false;
            std::vector<Poly> eqs, neqs;
            for (const Poly& p : cl.eqs) {
                if (p.is_zero()) continue;
                if (p.is_constant()) { dead = true; break; }
                eqs.push_back(p.monic());
            }
            if (!dead)
                for (const Poly& p : cl.neqs) {
                    if (p.is_zero()) { dead = true; break; }
                    if (p.is_constant()) continue;
                    neqs.push_back(p.monic());
                }
            if (dead) continue;
            auto by_str = [this](const Poly& a, const Poly& b) {
                return a.str(poly_names()) < b.str(poly_names());
            };
            std::sort(eqs.begin(), eqs.end(), by_str);
            std::sort(neqs.begin(), neqs.end(), by_str);
            auto eq_poly = [](const Poly& a, const Poly& b) { return a == b; };
            eqs.erase(std::unique(eqs.begin(), eqs.end(), eq_poly), eqs.end());
            neqs.erase(std::unique(neqs.begin(), neqs.end(), eq_poly), neqs.end());
            Clause out{eqs, neqs};
            std::string key = clause_str(out);
            if (seen.insert(key).second) kept.push_back(std::move(out));
        }
        std::sort(kept.begin(), kept.end(), [this](const Clause& a, const Clause& b) {
            return clause_str(a) < clause_str(b);
        });
        clauses = std::move(kept);
    }

    // substitute var -> c * var for the named variables
    Component scaled_vars(const std::map<std::string, CycRat>& scales) const {
        Component out = *this;
        std::vector<Poly> vals(1 + vars.size());
        bool any = false;
        for (size_t i = 0; i < vars.size(); ++i) {
            auto it = scales.find(vars[i]);
            if (it == scales.end()) continue;
            vals[1 + i] = Poly::var((int)(1 + i), it->second.order()).scaled(it->second);
            any = true;
        }
        if (!any) return out;
        for (Clause& cl : out.clauses) {
            for (Poly& p : cl.eqs) p = p.subst(vals);
            for (Poly& p : cl.neqs) p = p.subst(vals);
        }
        out.canonicalize();
        return out;
    }

    // rename variables into the table of `target`, merging identical names
    Component renamed(const std::map<std::string, std::string>& ren, Component target) const {
        std::vector<Poly> vals(1 + vars.size());
        for (size_t i = 0; i < vars.size(); ++i) {
            std::string n = vars[i];
            auto it = ren.find(n);
            if (it != ren.end()) n = it->second;
            int ni = target.ensure(n);
            vals[1 + i] = Poly::var(ni, 1);
        }
        for (const Clause& cl : clauses) {
            Clause out;
            for (const Poly& p : cl.eqs) out.eqs.push_back(p.subst(vals));
            for (const Poly& p : cl.neqs) out.neqs.push_back(p.subst(vals));
            target.clauses.push_back(std::move(out));
        }
        for (const std::string& e : exist) {
            std::string n = e;
            auto it = ren.find(n);
            if (it != ren.end()) n = it->second;
            if (!target.is_exist(n)) target.exist.push_back(n);
        }
        return target;
    }

    Component negated() const {
        // de Morgan over the DNF, redistributed back into DNF
        Component out;
        out.vars = vars;
        out.exist = exist;
        if (!exist.empty())
            throw UnsupportedError("cannot negate a component with existential variables");
        std::vector<Clause> acc{{}};  // product of per-clause negations
        for (const Clause& cl : clauses) {
            std::vector<Clause> next;
            for (const Clause& base : acc) {
                for (const Poly& p : cl.eqs) {
                    Clause c = base;
                    c.neqs.push_back(p);
                    next.push_back(std::move(c));
                }
                for (const Poly& p : cl.neqs) {
                    Clause c = base;
                    c.eqs.push_back(p);
                    next.push_back(std::move(c));
                }
            }
            acc = std::move(next);
        }
        out.clauses = std::move(acc);
        out.canonicalize();
        return out;
    }
};

struct PathAtom {
    int src = 0, dst = 0;       // block indices
    std::vector<int> word;      // operator indices, product order
    int theta = 0;              // 0: both free, 1: source bound, 2: target bound
    std::string id;             // names the gamma/b variables
};

struct Block {
    int size = 1;
    bool bound = false;
    int fiber = -1;                // window point for bound blocks
    std::vector<bool> dropped;     // projected-away slots (empty = none)

    bool slot_dropped(int j) const { return j < (int)dropped.size() && dropped[j]; }
    bool fully_dropped() const {
        if ((int)dropped.size() < size) return false;
        for (int j = 0; j < size; ++j)
            if (!dropped[j]) return false;
        return true;
    }
};

inline std::string lam_var(int block, int slot) {
    return "l_" + std::to_string(block) + "_" + std::to_string(slot);
}
inline std::string y_var(int block, int coord) {
    return "y_" + std::to_string(block) + "_" + std::to_string(coord + 1);
}
inline std::string gam_var(const std::string& atom_id) { return "g_" + atom_id; }
inline std::string b_var(const std::string& atom_id, int step) {
    return "b_" + atom_id + "_" + std::to_string(step + 1);
}
inline std::string param_var(int k) { return "p_" + std::to_string(k); }

struct CoreFormula {
    AlgebraSpec spec;
    std::vector<Block> blocks;
    std::vector<PathAtom> atoms;
    Component comp;

    int linear_size() const {
        int n = 0;
        for (const Block& b : blocks) n += b.size;
        return n;
    }
    std::vector<std::pair<int, int>> slot_of_linear() const {
        std::vector<std::pair<int, int>> out;
        for (size_t i = 0; i < blocks.size(); ++i)
            for (int j = 0; j < blocks[i].size; ++j) out.push_back({(int)i, j});
        return out;
    }
};

// gamma action on a component: basis rescaling e_i -> delta_i e_i, with
// delta = 1 on bound blocks.  lambda variables of block i scale by
// delta_i^-1; a path atom's gamma variable scales by delta_src^-1 on the
// left and delta_dst on the right, as far as its theta class allows.
inline Component gamma_act(const CoreFormula& f, const std::vector<CycRat>& delta) {
    if (delta.size() != f.blocks.size())
        throw std::runtime_error("gamma_act: one delta per block expected");
    std::map<std::string, CycRat> scales;
    for (size_t i = 0; i < f.blocks.size(); ++i) {
        if (f.blocks[i].bound) continue;
        CycRat di = delta[i];
        for (int j = 0; j < f.blocks[i].size; ++j)
            scales[lam_var((int)i, j)] = di.inverse();
    }
    for (const PathAtom& a : f.atoms) {
        CycRat g(f.spec.l(), Rat(1));
        if (a.theta != 1 && !f.blocks[a.src].bound) g = g * delta[a.src].inverse();
        if (a.theta != 2 && !f.blocks[a.dst].bound) g = g * delta[a.dst];
        CycRat one(f.spec.l(), Rat(1));
        if (!(g == one)) scales[gam_var(a.id)] = g;
    }
    return f.comp.scaled_vars(scales);
}

// disjunction over all delta tuples: the smallest Gamma-invariant
// weakening of the component
inline CoreFormula invariantize(const CoreFormula& f) {
    std::vector<CycRat> gamma = roots_of_unity(f.spec.l(), f.spec.l());
    std::vector<size_t> free_blocks;
    for (size_t i = 0; i < f.blocks.size(); ++i)
        if (!f.blocks[i].bound) free_blocks.push_back(i);
    CoreFormula out = f;
    Component acc;
    acc.vars = f.comp.vars;
    acc.exist = f.comp.exist;
    std::vector<CycRat> delta(f.blocks.size(), CycRat(f.spec.l(), Rat(1)));
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == free_blocks.size()) {
            Component c = gamma_act(f, delta);
            for (const Clause& cl : c.clauses) acc.clauses.push_back(cl);
            return;
        }
        for (const CycRat& g : gamma) {
            delta[free_blocks[k]] = g;
            rec(k + 1);
        }
    };
    rec(0);
    acc.canonicalize();
    out.comp = std::move(acc);
    return out;
}

// common refinement of two formulas constraining the same linear tuple:
// blocks merge along the join of the two partitions, variables are
// renamed into the merged enumeration, matching atoms are identified
inline CoreFormula conjoin(const CoreFormula& f1, const CoreFormula& f2) {
    if (f1.linear_size() != f2.linear_size())
        throw std::runtime_error("conjoin: formulas constrain tuples of different lengths");
    int n = f1.linear_size();
    auto s1 = f1.slot_of_linear(), s2 = f2.slot_of_linear();
    // union-find over linear indices
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    auto link_partition = [&](const std::vector<std::pair<int, int>>& slots) {
        std::map<int, int> first_of_block;
        for (int i = 0; i < n; ++i) {
            auto [blk, j] = slots[i];
            auto it = first_of_block.find(blk);
            if (it == first_of_block.end()) first_of_block[blk] = i;
            else unite(i, it->second);
        }
    };
    link_partition(s1);
    link_partition(s2);

    // merged blocks ordered by least linear index
    std::map<int, int> class_to_block;
    std::vector<std::vector<int>> members;
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (!class_to_block.count(r)) {
            class_to_block[r] = (int)members.size();
            members.push_back({});
        }
        members[class_to_block[r]].push_back(i);
    }

    CoreFormula out;
    out.spec = f1.spec;
    std::vector<int> linear_new_block(n), linear_new_slot(n);
    for (size_t b = 0; b < members.size(); ++b) {
        Block nb;
        nb.size = (int)members[b].size();
        nb.dropped.assign(nb.size, false);
        for (size_t j = 0; j < members[b].size(); ++j) {
            linear_new_block[members[b][j]] = (int)b;
            linear_new_slot[members[b][j]] = (int)j;
        }
        out.blocks.push_back(nb);
    }
    // merge bound/dropped data from both sides
    Component merged;
    bool contradiction = false;
    auto fold = [&](const CoreFormula& f, const std::vector<std::pair<int, int>>& slots,
                    const std::string& tag) {
        std::map<std::string, std::string> ren;
        for (int i = 0; i < n; ++i) {
            auto [blk, j] = slots[i];
            ren[lam_var(blk, j)] = lam_var(linear_new_block[i], linear_new_slot[i]);
            if (f.blocks[blk].slot_dropped(j))
                out.blocks[linear_new_block[i]].dropped[linear_new_slot[i]] = true;
        }
        for (size_t blk = 0; blk < f.blocks.size(); ++blk) {
            int nb = -1;
            for (int i = 0; i < n; ++i)
                if (slots[i].first == (int)blk) nb = linear_new_block[i];
            if (nb < 0) continue;  // fully dropped blocks keep no slots; see below
            for (int c = 0; c < f.spec.dim(); ++c)
                ren[y_var((int)blk, c)] = y_var(nb, c);
            if (f.blocks[blk].bound) {
                if (out.blocks[nb].bound && out.blocks[nb].fiber != f.blocks[blk].fiber)
                    contradiction = true;
                out.blocks[nb].bound = true;
                out.blocks[nb].fiber = f.blocks[blk].fiber;
            }
        }
        // re-index atoms; identical atoms from the two sides share variables
        std::map<int, int> blk_new;
        for (int i = 0; i < n; ++i) blk_new[slots[i].first] = linear_new_block[i];
        for (const PathAtom& a : f.atoms) {
            PathAtom na = a;
            na.src = blk_new.at(a.src);
            na.dst = blk_new.at(a.dst);
            bool merged_atom = false;
            for (PathAtom& ex : out.atoms)
                if (ex.src == na.src && ex.dst == na.dst && ex.word == na.word &&
                    ex.theta == na.theta) {
                    ren[gam_var(a.id)] = gam_var(ex.id);
                    for (size_t k = 0; k < a.word.size(); ++k)
                        ren[b_var(a.id, (int)k)] = b_var(ex.id, (int)k);
                    merged_atom = true;
                    break;
                }
            if (!merged_atom) {
                na.id = tag + a.id;
                ren[gam_var(a.id)] = gam_var(na.id);
                for (size_t k = 0; k < a.word.size(); ++k)
                    ren[b_var(a.id, (int)k)] = b_var(na.id, (int)k);
                out.atoms.push_back(na);
            }
        }
        return ren;
    };
    auto ren1 = fold(f1, s1, "c1_");
    auto ren2 = fold(f2, s2, "c2_");
    if (contradiction) {
        out.comp = Component::falsity();
        // keep the variable tables for shape stability
        out.comp.vars = merged.vars;
        return out;
    }
    Component c1 = f1.comp.renamed(ren1, merged);
    // conjunction: pairwise clause unions with f2's renamed clauses
    Component c2 = f2.comp.renamed(ren2, Component{});
    Component conj;
    conj.vars = c1.vars;
    conj.exist = c1.exist;
    for (const std::string& v : c2.vars) conj.ensure(v);
    for (const std::string& e : c2.exist)
        if (!conj.is_exist(e)) conj.exist.push_back(e);
    // align c2's polynomials into conj's table
    Component c2a = c2.renamed({}, [&] {
        Component t;
        t.vars = conj.vars;
        return t;
    }());
    for (const Clause& a : c1.clauses)
        for (const Clause& b : c2a.clauses) {
            Clause u = a;
            for (const Poly& p : b.eqs) u.eqs.push_back(p);
            for (const Poly& p : b.neqs) u.neqs.push_back(p);
            conj.clauses.push_back(std::move(u));
        }
    conj.canonicalize();
    out.comp = std::move(conj);
    return out;
}

// drop the listed (block, slot) pairs: their lambda variables become
// existential; a block losing every slot ranges over the window at
// evaluation time
inline CoreFormula project(const CoreFormula& f, const std::set<std::pair<int, int>>& drop) {
    CoreFormula out = f;
    for (auto& [blk, j] : drop) {
        if (blk < 0 || blk >= (int)out.blocks.size() || j < 0 || j >= out.blocks[blk].size)
            throw std::runtime_error("project: slot out of range");
        Block& b = out.blocks[blk];
        if ((int)b.dropped.size() < b.size) b.dropped.assign(b.size, false);
        b.dropped[j] = true;
        std::string lv = lam_var(blk, j);
        if (out.comp.var_index(lv) > 0 && !out.comp.is_exist(lv)) out.comp.exist.push_back(lv);
    }
    return out;
}

// ---------- evaluation ----------

namespace detail {

inline bool te_uses_var(const TE& v, int idx) {
    for (auto& [k, c] : v.terms())
        if (c.num().degree(idx) > 0 || c.den().degree(idx) > 0) return true;
    return false;
}

// substitute a tower element for a scalar variable
inline TE te_subst_scalar(const TE& v, int idx, const TE& val, const TowerCtxPtr& tower) {
    TE out(tower, BFE(tower->scalar().l, Rat(0)));
    auto embed = std::function<TE(const CycRat&)>([&](const CycRat& c) { return TE(tower, BFE(c)); });
    int nv = 0;
    for (auto& [k, c] : v.terms())
        nv = std::max({nv, c.num().nvars(), c.den().nvars()});
    std::vector<TE> vals;
    for (int i = 0; i < nv; ++i)
        vals.push_back(i == idx ? val : TE(tower, BFE::var(i, tower->scalar().l)));
    for (auto& [k, c] : v.terms()) {
        TE num = c.num().eval<TE>(embed, vals);
        TE den = c.den().eval<TE>(embed, vals);
        TE term = num / den;
        // multiply by the root monomial
        for (int id : k) term = term * TE::root(tower, id);
        out = out + term;
    }
    return out;
}

}  // namespace detail

struct EvalInput {
    // per block, the vectors for its non-dropped slots in order
    std::vector<std::vector<FiberVec>> tuple;
    std::vector<TE> params;
};

class FormulaEvaluator {
public:
    FormulaEvaluator(const BundleModel& model, const CoreFormula& f) : m_(&model), f_(&f) {}

    bool evaluate(const EvalInput& in) {
        in_ = &in;
        const CoreFormula& f = *f_;
        if (in.tuple.size() != f.blocks.size())
            throw std::runtime_error("evaluate: one vector list per block expected");
        fibers_.assign(f.blocks.size(), -1);
        // fix fibers from the supplied vectors
        for (size_t i = 0; i < f.blocks.size(); ++i) {
            const Block& b = f.blocks[i];
            int expect = b.size - (int)[&] {
                int d = 0;
                for (int j = 0; j < b.size; ++j)
                    if (b.slot_dropped(j)) ++d;
                return d;
            }();
            if ((int)in.tuple[i].size() != expect)
                throw std::runtime_error("evaluate: wrong number of vectors for block " +
                                         std::to_string(i));
            for (const FiberVec& v : in.tuple[i]) {
                if (v.is_zero()) return false;
                if (fibers_[i] < 0) fibers_[i] = v.point;
                else if (fibers_[i] != v.point) return false;
            }
            if (b.bound) {
                if (fibers_[i] < 0) fibers_[i] = b.fiber;
                else if (fibers_[i] != b.fiber) return false;
            }
        }
        return enum_fibers(0);
    }

private:
    const BundleModel* m_;
    const CoreFormula* f_;
    const EvalInput* in_ = nullptr;
    std::vector<int> fibers_;
    std::vector<CycRat> gammas_;

    bool enum_fibers(size_t i) {
        if (i == fibers_.size()) {
            gammas_.assign(f_->blocks.size(), CycRat(f_->spec.l(), Rat(1)));
            return enum_gammas(0);
        }
        if (fibers_[i] >= 0) return enum_fibers(i + 1);
        for (int p = 0; p < m_->window().size(); ++p) {
            fibers_[i] = p;
            if (enum_fibers(i + 1)) { fibers_[i] = -1; return true; }
        }
        fibers_[i] = -1;
        return false;
    }

    bool enum_gammas(size_t i) {
        if (i == f_->blocks.size()) return walk_atoms();
        if (f_->blocks[i].bound) return enum_gammas(i + 1);
        for (const CycRat& g : roots_of_unity(f_->spec.l(), f_->spec.l())) {
            gammas_[i] = g;
            if (enum_gammas(i + 1)) return true;
        }
        return false;
    }

    // enumerate root choices along every atom, then test the component
    bool walk_atoms() {
        std::map<std::string, TE> assign;
        const AlgebraSpec& spec = f_->spec;
        const TowerCtxPtr& tower = m_->tower();
        // lambda/mu variables and y coordinates
        for (size_t i = 0; i < f_->blocks.size(); ++i) {
            const Block& b = f_->blocks[i];
            int supplied = 0;
            for (int j = 0; j < b.size; ++j) {
                if (b.slot_dropped(j)) continue;
                const FiberVec& v = in_->tuple[i][supplied++];
                assign[lam_var((int)i, j)] = v.coeff.scaled(BFE(gammas_[i].inverse()));
            }
            for (int c = 0; c < spec.dim(); ++c)
                assign[y_var((int)i, c)] =
                    TE(tower, m_->window().point(fibers_[i]).coords.at(c));
        }
        for (size_t k = 0; k < in_->params.size(); ++k) assign[param_var((int)k)] = in_->params[k];
        return enum_atom(0, assign);
    }

    bool enum_atom(size_t ai, std::map<std::string, TE> assign) {
        if (ai == f_->atoms.size()) return component_holds(assign);
        const PathAtom& a = f_->atoms[ai];
        return walk_step(a, (int)a.word.size() - 1, fibers_[a.src],
                         CycRat(f_->spec.l(), Rat(1)) * gammas_[a.src], ai, assign);
    }

    // walk the word from its first-acting end; cls is the Gamma class of
    // the current basis vector relative to the window basis
    bool walk_step(const PathAtom& a, int k, int point, CycRat cls, size_t ai,
                   std::map<std::string, TE>& assign) {
        const AlgebraSpec& spec = f_->spec;
        if (k < 0) {
            if (point != fibers_[a.dst]) return false;
            CycRat gamma = gammas_[a.dst] / cls;
            auto saved = assign;
            saved[gam_var(a.id)] = TE(m_->tower(), BFE(gamma));
            return enum_atom(ai + 1, saved);
        }
        int op = a.word[k];
        int next = m_->window().step(point, op);
        if (next < 0)
            throw BoundaryError("path atom " + a.id + " leaves the window");
        const EigenOperator& o = spec.ops[op];
        TE entry = m_->roots().entry(op, point);
        int step_index = (int)a.word.size() - 1 - k;
        if (o.root_degree == 1) {
            auto saved = assign;
            saved[b_var(a.id, step_index)] = entry;
            return walk_step(a, k - 1, next, cls, ai, saved);
        }
        for (const CycRat& s : roots_of_unity(spec.l(), o.root_degree)) {
            auto saved = assign;
            saved[b_var(a.id, step_index)] = entry.scaled(BFE(s));
            CycRat ncls = cls * s.pow(o.gamma_linearity).inverse();
            if (walk_step(a, k - 1, next, ncls, ai, saved)) return true;
        }
        return false;
    }

    bool component_holds(const std::map<std::string, TE>& assign) {
        const Component& c = f_->comp;
        int l = f_->spec.l();
        const TowerCtxPtr& tower = m_->tower();
        // values for poly evaluation: q, then component variables
        std::vector<TE> vals{TE(tower, BFE::var(0, l))};
        std::vector<int> exist_scalar;  // scalar var index per existential
        std::vector<std::string> exist_names;
        for (const std::string& v : c.vars) {
            auto it = assign.find(v);
            if (it != assign.end() && !c.is_exist(v)) {
                vals.push_back(it->second);
            } else if (c.is_exist(v)) {
                int idx = f_->spec.scalar->ensure_var("_ex_" + v);
                exist_scalar.push_back(idx);
                exist_names.push_back(v);
                vals.push_back(TE(tower, BFE::var(idx, l)));
            } else {
                throw std::runtime_error("evaluate: no value for component variable " + v);
            }
        }
        auto embed =
            std::function<TE(const CycRat&)>([&](const CycRat& x) { return TE(tower, BFE(x)); });
        for (const Clause& cl : c.clauses) {
            std::vector<TE> eqs, neqs;
            for (const Poly& p : cl.eqs) eqs.push_back(p.eval<TE>(embed, vals));
            for (const Poly& p : cl.neqs) neqs.push_back(p.eval<TE>(embed, vals));
            if (clause_satisfiable(eqs, neqs, exist_scalar)) return true;
        }
        return false;
    }

    // decide Exists(existential scalars): eqs = 0, neqs != 0, by solving
    // equations that are linear in one existential at a time
    bool clause_satisfiable(std::vector<TE> eqs, std::vector<TE> neqs,
                            std::vector<int> pending) {
        const TowerCtxPtr& tower = m_->tower();
        int l = f_->spec.l();
        bool progress = true;
        while (progress) {
            progress = false;
            for (size_t e = 0; e < eqs.size() && !progress; ++e) {
                if (eqs[e].is_zero()) {
                    eqs.erase(eqs.begin() + e);
                    progress = true;
                    break;
                }
                for (size_t pi = 0; pi < pending.size(); ++pi) {
                    int t = pending[pi];
                    if (!detail::te_uses_var(eqs[e], t)) continue;
                    TE zero(tower, BFE(l, Rat(0))), one(tower, BFE(l, Rat(1)));
                    TE two(tower, BFE(l, Rat(2)));
                    TE v0 = detail::te_subst_scalar(eqs[e], t, zero, tower);
                    TE v1 = detail::te_subst_scalar(eqs[e], t, one, tower);
                    TE v2 = detail::te_subst_scalar(eqs[e], t, two, tower);
                    TE A = v1 - v0;
                    if (!(v2 - v1 - A).is_zero()) continue;  // not linear in t
                    if (A.is_zero()) continue;               // t cancels; try another
                    bool a_clean = true;
                    for (int u : pending)
                        if (u != t && detail::te_uses_var(A, u)) a_clean = false;
                    if (!a_clean || detail::te_uses_var(v0, t)) continue;
                    for (int u : pending)
                        if (u != t && detail::te_uses_var(v0, u)) a_clean = false;
                    if (!a_clean) continue;
                    TE sol = -(v0 / A);
                    for (TE& x : eqs) x = detail::te_subst_scalar(x, t, sol, tower);
                    for (TE& x : neqs) x = detail::te_subst_scalar(x, t, sol, tower);
                    pending.erase(pending.begin() + pi);
                    progress = true;
                    break;
                }
            }
        }
        for (const TE& e : eqs) {
            if (e.is_zero()) continue;
            bool has_pending = false;
            for (int t : pending)
                if (detail::te_uses_var(e, t)) has_pending = true;
            if (has_pending)
                throw UnsupportedError("equation not linear in any existential variable");
            return false;  // concrete nonzero equation
        }
        // remaining inequations: each must be a not-identically-zero value
        for (const TE& v : neqs)
            if (v.is_zero()) return false;
        return true;
    }
};

inline bool evaluate(const BundleModel& model, const CoreFormula& f, const EvalInput& in) {
    FormulaEvaluator ev(model, f);
    return ev.evaluate(in);
}

// ---------- dimension ----------

struct DimResult {
    bool supported = false;
    int dim = -1;
    std::string note;
};

// dimension of the constructible set cut out by the component, over its
// declared variables: Gamma-valued variables contribute nothing, every
// other variable one; equations must triangularize, each solving one new
// variable linearly
inline DimResult dimension(const Component& c, const std::set<std::string>& gamma_vars) {
    DimResult out;
    if (c.clauses.empty()) {
        out.supported = true;
        out.dim = -1;
        out.note = "empty set";
        return out;
    }
    int best = -1;
    for (const Clause& cl : c.clauses) {
        int nfree = 0;
        std::vector<int> field_vars;  // poly indices
        for (size_t i = 0; i < c.vars.size(); ++i)
            if (!gamma_vars.count(c.vars[i])) field_vars.push_back((int)(1 + i));
        std::vector<Poly> eqs = cl.eqs;
        std::set<int> solved;
        bool progress = true;
        while (progress && !eqs.empty()) {
            progress = false;
            for (size_t e = 0; e < eqs.size(); ++e) {
                for (int v : field_vars) {
                    if (solved.count(v)) continue;
                    if (eqs[e].degree(v) != 1) continue;
                    // coefficient of v must not involve unsolved variables
                    bool clean = true;
                    for (auto& [m, co] : eqs[e].terms()) {
                        if (v >= (int)m.size() || m[v] == 0) continue;
                        for (int u : field_vars)
                            if (u != v && !solved.count(u) && u < (int)m.size() && m[u] > 0)
                                clean = false;
                    }
                    if (!clean) continue;
                    solved.insert(v);
                    eqs.erase(eqs.begin() + e);
                    progress = true;
                    break;
                }
                if (progress) break;
            }
        }
        if (!eqs.empty()) {
            out.supported = false;
            out.note = "equations do not triangularize linearly";
            return out;
        }
        nfree = (int)field_vars.size() - (int)solved.size();
        best = std::max(best, nfree);
    }
    out.supported = true;
    out.dim = best;
    return out;
}

inline DimResult dimension(const CoreFormula& f) {
    std::set<std::string> gv;
    for (const PathAtom& a : f.atoms) gv.insert(gam_var(a.id));
    return dimension(f.comp, gv);
}

}  // namespace eqvar
