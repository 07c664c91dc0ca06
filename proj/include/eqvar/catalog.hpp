#pragma once

// Built-in presentations: the rank-one Weyl algebra, U_q(sl2), quantum
// torus algebras, the abstract quantum plane, and simply-laced quantum
// groups generated from a Cartan matrix.

#include "functor.hpp"

namespace eqvar {

namespace detail {

inline BFE qpow(int l, long e) { return BFE::var(0, l).pow(e); }

inline Expr expr(const std::string& s) { return ExprParser::parse(s); }

inline MonomialRelation rel(const BFE& c, std::vector<int> left, const BFE& d,
                            std::vector<int> right, const std::string& f) {
    MonomialRelation r;
    r.c = c;
    r.d = d;
    r.left = std::move(left);
    r.right = std::move(right);
    if (f.empty()) {
        r.f_zero = true;
        r.f = Expr::number(Rat(0));
    } else {
        r.f = expr(f);
    }
    return r;
}

}  // namespace detail

// [a, adag] = 1 over one affine coordinate; roots are fresh square
// roots of the shifted coordinate, shared through their radicand
inline AlgebraSpec weyl1(int l = 2) {
    using namespace detail;
    AlgebraSpec s;
    s.name = "weyl1";
    s.scalar = std::make_shared<ScalarContext>(l, 1);
    s.torus_coord = {false};
    s.hopf = {{"H", Coproduct::Primitive, false}};
    EigenOperator adag{"adag", {BFE(l, Rat(1))}, expr("y"), 2, {}, 0,
                       {TransferRule{true, {}}, TransferRule{true, {}}}, 1, {}, "a"};
    EigenOperator a{"a", {BFE(l, Rat(-1))}, expr("y"), 2, {1}, 0,
                    {TransferRule{true, {}}, TransferRule{true, {}}}, 1, {}, "adag"};
    s.ops = {adag, a};
    // a adag - adag a = 1
    s.relations = {rel(BFE(l, Rat(1)), {1, 0}, BFE(l, Rat(1)), {0, 1}, "1")};
    return s;
}

inline AlgebraSpec uq_sl2(int l = 2) {
    using namespace detail;
    AlgebraSpec s;
    s.name = "uq_sl2";
    s.scalar = std::make_shared<ScalarContext>(l, 1);
    s.torus_coord = {true};
    s.hopf = {{"K", Coproduct::Grouplike, true}};
    std::vector<TransferRule> tr = {TransferRule{false, qpow(l, 1)},
                                    TransferRule{false, qpow(l, -1)}};
    EigenOperator E{"E", {qpow(l, 2)}, expr("(y^-1+y)/(q-q^-1)"), 2, {}, 0, tr, 1, {}, ""};
    EigenOperator F{"F", {qpow(l, -2)}, expr("-(y^-1+y)/(q-q^-1)"), 2, {}, 0, tr, 1, {}, ""};
    s.ops = {E, F};
    // EF - FE = (K - K^-1)/(q - q^-1)
    s.relations = {
        rel(BFE(l, Rat(1)), {0, 1}, BFE(l, Rat(1)), {1, 0}, "(x1 - x1^-1)/(q - q^-1)")};
    return s;
}

// quantum n-torus: U1 is the Hopf generator, U2..Un eigenvectors with
// their inverses, U_i U_j = q^(j-i) U_j U_i
inline AlgebraSpec quantum_torus(int n, int l = 2) {
    using namespace detail;
    if (n < 2) throw std::runtime_error("torus rank must be at least 2");
    AlgebraSpec s;
    s.name = "torus:" + std::to_string(n);
    s.scalar = std::make_shared<ScalarContext>(l, 1);
    s.torus_coord = {true};
    s.hopf = {{"U1", Coproduct::Grouplike, true}};
    // operators: U2..Un at indices 0..n-2, inverses at indices n-1..2n-4
    for (int i = 2; i <= n; ++i) {
        EigenOperator u{"U" + std::to_string(i), {qpow(l, i - 1)}, expr("y"), 1, {}, 0, {}, 1,
                        {},   "U" + std::to_string(i) + "_inv"};
        s.ops.push_back(u);
    }
    for (int i = 2; i <= n; ++i) {
        EigenOperator u{"U" + std::to_string(i) + "_inv", {qpow(l, 1 - i)}, expr("y^-1"),
                        1,   {},           0,  {}, -1, {}, "U" + std::to_string(i)};
        u.mu_word = {n - 1 + (i - 2)};  // its own eta
        s.ops.push_back(u);
    }
    // pairwise commutation and inverse relations
    for (int i = 2; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            s.relations.push_back(rel(BFE(l, Rat(1)), {i - 2, j - 2}, qpow(l, j - i),
                                      {j - 2, i - 2}, ""));
    for (int i = 2; i <= n; ++i) {
        int u = i - 2, v = n - 1 + (i - 2);
        s.relations.push_back(rel(BFE(l, Rat(1)), {u, v}, BFE(l, Rat(1)), {}, ""));
        s.relations.push_back(rel(BFE(l, Rat(1)), {v, u}, BFE(l, Rat(1)), {}, ""));
    }
    return s;
}

// UV = qVU with no equivariance constraints: the abstract mode example
inline AlgebraSpec quantum_plane_abstract() {
    using namespace detail;
    int l = 1;
    AlgebraSpec s;
    s.name = "quantum_plane_abstract";
    s.mode = Mode::Abstract;
    s.scalar = std::make_shared<ScalarContext>(l, 1);
    s.torus_coord = {false};  // affine line of U-eigenvalues
    s.hopf = {{"U", Coproduct::Grouplike, true}};
    EtaMap ev, evi;
    ev.comps = {{qpow(l, 1), BFE(l, Rat(0))}};
    evi.comps = {{qpow(l, -1), BFE(l, Rat(0))}};
    EigenOperator V{"V", {qpow(l, 1)}, expr("y"), 1, {}, 0, {}, 1, ev, "V_inv"};
    EigenOperator Vi{"V_inv", {qpow(l, -1)}, expr("y^-1"), 1, {1}, 0, {}, -1, evi, "V"};
    s.ops = {V, Vi};
    s.relations = {rel(BFE(l, Rat(1)), {0, 1}, BFE(l, Rat(1)), {}, ""),
                   rel(BFE(l, Rat(1)), {1, 0}, BFE(l, Rat(1)), {}, "")};
    return s;
}

// a deliberately non-rigid presentation: two generators with the same
// eta map but root degrees 2 and 1, identified by a relation
inline AlgebraSpec synthetic_nonrigid() {
    using namespace detail;
    int l = 2;
    AlgebraSpec s;
    s.name = "synthetic_nonrigid";
    s.mode = Mode::Abstract;
    s.scalar = std::make_shared<ScalarContext>(l, 1);
    s.torus_coord = {true};
    s.hopf = {{"h", Coproduct::Grouplike, true}};
    EigenOperator A{"A", {qpow(l, 1)}, expr("y"), 2, {}, 0,
                    {TransferRule{true, {}}, TransferRule{true, {}}}, 1, {}, ""};
    EigenOperator B{"B", {qpow(l, 1)}, expr("y"), 1, {}, 0, {}, 1, {}, ""};
    s.ops = {A, B};
    s.relations = {rel(BFE(l, Rat(1)), {0}, BFE(l, Rat(1)), {1}, "")};
    return s;
}

// simply-laced quantum group from a Cartan matrix: operators E_i, F_i
// over the torus of K-characters, with only the [E_i, F_i] relations
inline AlgebraSpec from_cartan(const std::vector<std::vector<int>>& cartan, int l = 2) {
    using namespace detail;
    int n = (int)cartan.size();
    for (int i = 0; i < n; ++i) {
        if ((int)cartan[i].size() != n) throw std::runtime_error("Cartan matrix not square");
        for (int j = 0; j < n; ++j) {
            if (i == j && cartan[i][j] != 2)
                throw std::runtime_error("Cartan diagonal must be 2");
            if (i != j && cartan[i][j] != 0 && cartan[i][j] != -1)
                throw std::runtime_error("only simply-laced Cartan matrices are supported");
            if (cartan[i][j] != cartan[j][i])
                throw std::runtime_error("only symmetric Cartan matrices are supported");
        }
    }
    AlgebraSpec s;
    s.name = "cartan:" + std::to_string(n);
    s.scalar = std::make_shared<ScalarContext>(l, n);
    s.torus_coord.assign(n, true);
    for (int j = 1; j <= n; ++j) s.hopf.push_back({"K" + std::to_string(j), Coproduct::Grouplike, true});
    // operator indices: E_i at 2i, F_i at 2i+1
    for (int i = 0; i < n; ++i) {
        std::vector<BFE> ev_e, ev_f;
        for (int j = 0; j < n; ++j) {
            ev_e.push_back(qpow(l, cartan[j][i]));
            ev_f.push_back(qpow(l, -cartan[j][i]));
        }
        // root of coordinate i scales by q^(a_ij/2) along E_j when a_ij is
        // even, otherwise a fresh symbol is taken at the moved point
        std::vector<TransferRule> tr;
        for (int j = 0; j < n; ++j) {
            int a = cartan[i][j];
            TransferRule along_e =
                a % 2 == 0 ? TransferRule{false, qpow(l, a / 2)} : TransferRule{true, {}};
            TransferRule along_f =
                a % 2 == 0 ? TransferRule{false, qpow(l, -a / 2)} : TransferRule{true, {}};
            tr.push_back(along_e);
            tr.push_back(along_f);
        }
        EigenOperator E{"E" + std::to_string(i + 1), ev_e, expr("(y^-1+y)/(q-q^-1)"), 2,
                        {}, i, tr, 1, {}, "F" + std::to_string(i + 1)};
        EigenOperator F{"F" + std::to_string(i + 1), ev_f, expr("-(y^-1+y)/(q-q^-1)"), 2,
                        {}, i, tr, 1, {}, "E" + std::to_string(i + 1)};
        s.ops.push_back(E);
        s.ops.push_back(F);
    }
    for (int i = 0; i < n; ++i) {
        std::string xi = "x" + std::to_string(i + 1);
        s.relations.push_back(rel(BFE(l, Rat(1)), {2 * i, 2 * i + 1}, BFE(l, Rat(1)),
                                  {2 * i + 1, 2 * i},
                                  "(" + xi + " - " + xi + "^-1)/(q - q^-1)"));
    }
    return s;
}

// the rank-two torus presented on the swapped generators: the direct
// generator carries the inverse eigenvalue and conversely
inline AlgebraSpec torus2_swapped(int l = 2) {
    using namespace detail;
    AlgebraSpec s;
    s.name = "torus2_swapped";
    s.scalar = std::make_shared<ScalarContext>(l, 1);
    s.torus_coord = {true};
    s.hopf = {{"V", Coproduct::Grouplike, true}};
    EigenOperator u{"U", {qpow(l, -1)}, expr("y^-1"), 1, {0}, 0, {}, -1, {}, "U_inv"};
    EigenOperator ui{"U_inv", {qpow(l, 1)}, expr("y"), 1, {}, 0, {}, 1, {}, "U"};
    s.ops = {u, ui};
    s.relations = {rel(BFE(l, Rat(1)), {0, 1}, BFE(l, Rat(1)), {}, ""),
                   rel(BFE(l, Rat(1)), {1, 0}, BFE(l, Rat(1)), {}, "")};
    return s;
}

// the isomorphism sending each rank-two torus generator to the inverse
// generator of the swapped presentation
inline Morphism torus2_swap_morphism(int l = 2) {
    Morphism m;
    m.name = "torus2_swap";
    m.source = quantum_torus(2, l);
    m.target = torus2_swapped(l);
    m.hopf_images = {{{0, 1}}};
    m.op_images = {{1}, {0}};
    m.op_coeffs = {BFE(l, Rat(1)), BFE(l, Rat(1))};
    m.base_map = {BFE::var(1, l)};
    return m;
}

inline std::vector<std::string> catalog_names() {
    return {"weyl1",           "uq_sl2",
            "torus:n",         "quantum_plane_abstract",
            "synthetic_nonrigid", "torus2_swapped"};
}

inline AlgebraSpec catalog_build(const std::string& name) {
    if (name == "weyl1") return weyl1();
    if (name == "uq_sl2") return uq_sl2();
    if (name == "quantum_plane_abstract") return quantum_plane_abstract();
    if (name == "synthetic_nonrigid") return synthetic_nonrigid();
    if (name == "torus2_swapped") return torus2_swapped();
    if (name.rfind("torus:", 0) == 0) return quantum_torus(std::stoi(name.substr(6)));
    throw std::runtime_error("unknown catalog entry: " + name);
}

}  // namespace eqvar
