// eqvar: inspect, verify, and transform equivariant algebra
// presentations.  Exit codes: 0 success, 1 mathematical failure,
// 2 usage or parse error, 3 boundary or unsupported input.

#include <CLI11.hpp>
#include <eqvar/catalog.hpp>
#include <eqvar/equivariance.hpp>
#include <eqvar/rigidity.hpp>
#include <eqvar/specfile.hpp>

#include <filesystem>
#include <iostream>

using namespace eqvar;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMath = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnsupported = 3;

AlgebraSpec load_spec(const std::string& arg) {
    if (std::filesystem::exists(arg)) return spec_load_file(arg);
    return catalog_build(arg);
}

std::string cyc_str(const CycRat& c) { return c.str(); }

int cmd_check(const std::string& specArg) {
    AlgebraSpec spec = load_spec(specArg);
    std::cout << "presentation: " << spec.name << "\n";
    CheckReport eq = check_equivariance(spec);
    bool all = true;
    for (const CheckClause& c : eq.clauses) {
        std::cout << "check " << c.name << ": " << (c.pass ? "pass" : "FAIL");
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << "\n";
        all = all && c.pass;
    }
    RigidityReport rig = check_rigidity(spec);
    std::cout << "xi pairs: " << rig.xi.size() << "\n";
    if (rig.rigid()) {
        std::cout << "rigidity: rigid\n";
        ConsequenceReport con = rigidity_consequences(spec);
        std::cout << "consequence root degrees bounded: "
                  << (con.root_degrees_bounded ? "pass" : "FAIL") << "\n";
        std::cout << "consequence length ratios admissible: "
                  << (con.ratios_admissible ? "pass" : "FAIL") << "\n";
        for (const std::string& n : con.notes) std::cout << "note: " << n << "\n";
        all = all && con.root_degrees_bounded && con.ratios_admissible;
    } else {
        std::cout << "rigidity: NOT rigid\n";
        for (const RigidityWitness& w : rig.witnesses)
            std::cout << "witness pair=" << w.pair << " gamma=" << cyc_str(w.gamma)
                      << " delta=" << cyc_str(w.delta) << "\n";
        all = false;
    }
    return all ? kExitOk : kExitMath;
}

int cmd_orbit(const std::string& specArg, int radius, const std::string& dotOut) {
    AlgebraSpec spec = load_spec(specArg);
    OrbitWindow win(spec, radius);
    if (!dotOut.empty()) {
        if (dotOut == "-") {
            std::cout << win.dot();
        } else {
            std::ofstream out(dotOut);
            if (!out) throw std::runtime_error("cannot write " + dotOut);
            out << win.dot();
        }
        return kExitOk;
    }
    const auto& names = spec.scalar->var_names;
    std::cout << "window: " << spec.name << " radius=" << radius << " points=" << win.size()
              << "\n";
    for (int i = 0; i < win.size(); ++i) {
        const OrbitPoint& p = win.point(i);
        std::cout << "point " << i << ": coords=";
        for (size_t j = 0; j < p.coords.size(); ++j) {
            if (j) std::cout << ",";
            std::cout << p.coords[j].str(names);
        }
        std::cout << " length=" << p.length << " witness=";
        for (size_t j = 0; j < p.witness.size(); ++j) {
            if (j) std::cout << ".";
            std::cout << spec.ops[p.witness[j]].name;
        }
        if (p.witness.empty()) std::cout << "-";
        if (p.boundary) std::cout << " boundary";
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_model(const std::string& specArg, int radius, bool verify) {
    AlgebraSpec spec = load_spec(specArg);
    BundleModel model(spec, radius);
    std::cout << "model: " << spec.name << " radius=" << radius
              << " points=" << model.window().size() << " roots=" << model.tower()->count()
              << "\n";
    if (!verify) return kExitOk;
    VerifyReport rel = model.verify_relations();
    VerifyReport ax = model.check_axiom9();
    int residuals = 0;
    auto show = [&](const VerifyReport& r) {
        for (const ResidualEntry& e : r.entries) {
            if (e.status == ResidualEntry::Ok) continue;
            if (e.status == ResidualEntry::Boundary) continue;
            std::cout << "residual " << e.what << " @ fiber " << e.point;
            if (!e.detail.empty()) std::cout << " (" << e.detail << ")";
            std::cout << "\n";
            ++residuals;
        }
    };
    show(rel);
    show(ax);
    std::cout << "verified: " << rel.checked() + ax.checked() << " identities, " << residuals
              << " residuals\n";
    return residuals == 0 ? kExitOk : kExitMath;
}

int cmd_iso_extend(const std::string& specArg, int radius,
                   const std::vector<std::string>& flips) {
    AlgebraSpec spec = load_spec(specArg);
    BundleModel model(spec, radius);
    int l = spec.l();
    std::map<int, CycRat> sigma;
    for (const std::string& f : flips) {
        size_t eq = f.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--flip expects <root>=<gamma>, got " + f);
        std::string root = f.substr(0, eq), val = f.substr(eq + 1);
        int id = -1;
        for (int r = 0; r < model.tower()->count(); ++r)
            if (model.tower()->root(r).name == root) id = r;
        if (id < 0) throw std::runtime_error("unknown root symbol '" + root + "'");
        CycRat g(l, Rat(0));
        if (val == "zeta") g = CycRat::zeta(l);
        else if (val.rfind("zeta^", 0) == 0) g = CycRat::zeta_pow(l, std::stol(val.substr(5)));
        else g = CycRat(l, rat_parse(val));
        sigma[id] = g;
    }
    ExtensionResult res = extend_isomorphism(model, sigma);
    if (res.ok) {
        std::cout << "extension: success\n";
        for (size_t i = 0; i < res.factors.size(); ++i)
            std::cout << "factor fiber=" << i << ": " << res.factors[i].str() << "\n";
        bool replay = replay_extension(model, sigma, res);
        std::cout << "replay: " << (replay ? "exact" : "FAIL") << "\n";
        return replay ? kExitOk : kExitMath;
    }
    std::cout << "extension: conflict\n";
    for (const ExtensionConflict& c : res.conflicts) {
        std::cout << "conflict fiber=" << c.fiber << " required=" << c.required
                  << " forced=" << c.forced;
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << "\n";
    }
    return kExitMath;
}

std::vector<CycRat> parse_deltas(const std::string& s, int l, size_t n) {
    std::vector<CycRat> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "zeta") out.push_back(CycRat::zeta(l));
        else if (tok.rfind("zeta^", 0) == 0)
            out.push_back(CycRat::zeta_pow(l, std::stol(tok.substr(5))));
        else out.push_back(CycRat(l, rat_parse(tok)));
    }
    if (out.size() != n)
        throw CLI::ValidationError("--delta expects one value per block, got " +
                                   std::to_string(out.size()));
    return out;
}

void print_component(const Component& c) {
    std::vector<std::string> names = c.poly_names();
    std::cout << "vars:";
    for (const std::string& v : c.vars) std::cout << " " << v;
    std::cout << "\n";
    if (!c.exist.empty()) {
        std::cout << "exist:";
        for (const std::string& v : c.exist) std::cout << " " << v;
        std::cout << "\n";
    }
    if (c.clauses.empty()) {
        std::cout << "component: false\n";
        return;
    }
    for (const Clause& cl : c.clauses) {
        std::cout << "clause:";
        for (const Poly& p : cl.eqs) std::cout << " [" << p.str(names) << " = 0]";
        for (const Poly& p : cl.neqs) std::cout << " [" << p.str(names) << " != 0]";
        if (cl.eqs.empty() && cl.neqs.empty()) std::cout << " true";
        std::cout << "\n";
    }
}

// input vectors "fiber:coeff" fill the non-dropped slots in block order
EvalInput parse_inputs(const CoreFormula& f, const std::vector<std::string>& vecs,
                       const std::vector<std::string>& params, const BundleModel& model) {
    EvalInput in;
    in.tuple.resize(f.blocks.size());
    size_t next = 0;
    for (size_t b = 0; b < f.blocks.size(); ++b) {
        int want = 0;
        for (int j = 0; j < f.blocks[b].size; ++j)
            if (!f.blocks[b].slot_dropped(j)) ++want;
        for (int j = 0; j < want; ++j) {
            if (next >= vecs.size())
                throw CLI::ValidationError("not enough --vec arguments for the blocks");
            const std::string& v = vecs[next++];
            size_t colon = v.find(':');
            if (colon == std::string::npos)
                throw CLI::ValidationError("--vec expects <fiber>:<coeff>, got " + v);
            int fiber = std::stoi(v.substr(0, colon));
            BFE c = parse_coord_map(v.substr(colon + 1), f.spec.l(), f.spec.dim());
            in.tuple[b].push_back(FiberVec{c.is_zero() ? -1 : fiber, TE(model.tower(), c)});
        }
    }
    if (next != vecs.size()) throw CLI::ValidationError("too many --vec arguments");
    for (const std::string& p : params) {
        BFE c = parse_coord_map(p, f.spec.l(), f.spec.dim());
        in.params.push_back(TE(model.tower(), c));
    }
    return in;
}

int cmd_formula(const std::string& sub, const std::vector<std::string>& files,
                const std::string& delta, const std::vector<std::string>& drops,
                const std::vector<std::string>& vecs, const std::vector<std::string>& params,
                int radius) {
    if (files.empty()) throw CLI::ValidationError("formula: a document is required");
    CoreFormula f = formula_load_file(files[0]);
    if (sub == "act") {
        std::vector<CycRat> d = parse_deltas(delta, f.spec.l(), f.blocks.size());
        print_component(gamma_act(f, d));
        return kExitOk;
    }
    if (sub == "invariantize") {
        std::cout << formula_dump(invariantize(f));
        return kExitOk;
    }
    if (sub == "conjoin") {
        if (files.size() != 2)
            throw CLI::ValidationError("formula conjoin: two documents are required");
        CoreFormula g = formula_load_file(files[1]);
        std::cout << formula_dump(conjoin(f, g));
        return kExitOk;
    }
    if (sub == "project") {
        std::set<std::pair<int, int>> drop;
        for (const std::string& d : drops) {
            size_t colon = d.find(':');
            if (colon == std::string::npos)
                throw CLI::ValidationError("--drop expects <block>:<slot>, got " + d);
            drop.insert({std::stoi(d.substr(0, colon)), std::stoi(d.substr(colon + 1))});
        }
        std::cout << formula_dump(project(f, drop));
        return kExitOk;
    }
    if (sub == "eval") {
        BundleModel model(f.spec, radius);
        EvalInput in = parse_inputs(f, vecs, params, model);
        bool value = evaluate(model, f, in);
        std::cout << "value: " << (value ? "true" : "false") << "\n";
        return kExitOk;
    }
    if (sub == "dim") {
        DimResult r = dimension(f);
        if (!r.supported) {
            std::cout << "dimension: unsupported";
            if (!r.note.empty()) std::cout << " (" << r.note << ")";
            std::cout << "\n";
            return kExitUnsupported;
        }
        std::cout << "dimension: " << r.dim << "\n";
        return kExitOk;
    }
    throw CLI::ValidationError("unknown formula subcommand " + sub);
}

int cmd_functor(const std::string& srcArg, const std::string& tgtArg,
                const std::string& morArg, int radius) {
    AlgebraSpec src = load_spec(srcArg);
    AlgebraSpec tgt = load_spec(tgtArg);
    Morphism m = morphism_load_file(morArg);
    if (m.source.name != src.name || m.target.name != tgt.name)
        throw std::runtime_error("morphism endpoints " + m.source.name + " -> " +
                                 m.target.name + " do not match the given presentations");
    std::cout << "morphism: " << m.name << " (" << m.source.name << " -> " << m.target.name
              << ")\n";
    CheckReport rep = validate_morphism(m);
    bool all = true;
    for (const CheckClause& c : rep.clauses) {
        std::cout << "check " << c.name << ": " << (c.pass ? "pass" : "FAIL");
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << "\n";
        all = all && c.pass;
    }
    if (all) {
        BundleModel a(m.source, radius), b(m.target, radius);
        WindowMap wm = window_map(m, a, b);
        for (const CheckClause& c : wm.report.clauses) {
            std::cout << "window " << c.name << ": " << (c.pass ? "pass" : "FAIL");
            if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
            std::cout << "\n";
            all = all && c.pass;
        }
    }
    return all ? kExitOk : kExitMath;
}

int cmd_catalog(const std::string& sub, const std::string& name) {
    if (sub == "list") {
        for (const std::string& n : catalog_names()) std::cout << n << "\n";
        return kExitOk;
    }
    if (sub == "emit") {
        if (name.empty()) throw CLI::ValidationError("catalog emit: a name is required");
        std::cout << spec_dump(catalog_build(name));
        return kExitOk;
    }
    throw CLI::ValidationError("unknown catalog subcommand " + sub);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equivariant algebra toolkit"};
    app.require_subcommand(1);

    std::string spec, dotOut, delta, sub, name, srcArg, tgtArg, morArg;
    std::vector<std::string> flips, files, drops, vecs, params;
    int radius = 3;
    bool verify = false;

    CLI::App* check = app.add_subcommand("check", "validate a presentation");
    check->add_option("spec", spec, "catalog name or spec file")->required();

    CLI::App* orbit = app.add_subcommand("orbit", "enumerate an orbit window");
    orbit->add_option("spec", spec)->required();
    orbit->add_option("--radius", radius, "window radius")->required();
    orbit->add_option("--dot", dotOut, "write a DOT graph ('-' for stdout)");

    CLI::App* model = app.add_subcommand("model", "build a window model");
    model->add_option("spec", spec)->required();
    model->add_option("--radius", radius)->required();
    model->add_flag("--verify", verify, "verify relations and root coincidences");

    CLI::App* iso = app.add_subcommand("iso-extend", "extend a root substitution");
    iso->add_option("spec", spec)->required();
    iso->add_option("--radius", radius)->required();
    iso->add_option("--flip", flips, "<root>=<gamma>, repeatable");

    CLI::App* formula = app.add_subcommand("formula", "manipulate core formulas");
    formula->add_option("cmd", sub, "act|invariantize|conjoin|project|eval|dim")->required();
    formula->add_option("file", files, "formula document(s)");
    formula->add_option("--delta", delta, "comma-separated gamma per block (act)");
    formula->add_option("--drop", drops, "<block>:<slot> to project away, repeatable");
    formula->add_option("--vec", vecs, "<fiber>:<coeff> input vector, repeatable (eval)");
    formula->add_option("--param", params, "parameter value, repeatable (eval)");
    formula->add_option("--radius", radius, "window radius (eval)");

    CLI::App* functor = app.add_subcommand("functor", "validate a morphism");
    functor->add_option("source", srcArg)->required();
    functor->add_option("target", tgtArg)->required();
    functor->add_option("morphism", morArg)->required();
    functor->add_option("--radius", radius, "window radius for the induced map");

    CLI::App* catalog = app.add_subcommand("catalog", "built-in presentations");
    catalog->add_option("cmd", sub, "list|emit")->required();
    catalog->add_option("name", name, "catalog entry (emit)");

    try {
        app.parse(argc, argv);
        if (*check) return cmd_check(spec);
        if (*orbit) return cmd_orbit(spec, radius, dotOut);
        if (*model) return cmd_model(spec, radius, verify);
        if (*iso) return cmd_iso_extend(spec, radius, flips);
        if (*formula) return cmd_formula(sub, files, delta, drops, vecs, params, radius);
        if (*functor) return cmd_functor(srcArg, tgtArg, morArg, radius);
        if (*catalog) return cmd_catalog(sub, name);
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help text, exit 0
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BoundaryError& e) {
        std::cerr << "boundary: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const Json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
