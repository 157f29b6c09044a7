// curvecalc: batch front end. Every command prints one JSON report.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvecalc/backends.hpp"
#include "curvecalc/decompose.hpp"
#include "curvecalc/error.hpp"
#include "curvecalc/farey.hpp"
#include "curvecalc/fragment.hpp"
#include "curvecalc/geomgraph.hpp"
#include "curvecalc/rank.hpp"
#include "curvecalc/report.hpp"

using namespace curvecalc;

namespace {

constexpr const char* kVersion = "0.1.0";

// Budget profiles selectable through CURVECALC_PROFILE.
Budgets profile_budgets(const std::string& name) {
    if (name.empty() || name == "default") return Budgets{};
    if (name == "quick") return Budgets{2, 50, 1};
    if (name == "thorough") return Budgets{4, 500, 1};
    throw CalcError("invalid profile", name);
}

// Holds whichever backend the config selects and the token aliases for it.
class Backend {
public:
    explicit Backend(const RunConfig& cfg) {
        if (cfg.backend == "torus") {
            torus_ = std::make_unique<TorusSetup>();
            return;
        }
        if (cfg.backend == "dumbbell") {
            if (cfg.sig != SurfaceSig{2, 0})
                throw CalcError("invalid backend", "the dumbbell backend lives on (2,0)");
            sym_ = make_dumbbell_setup();
        } else if (cfg.backend.rfind("pants:", 0) == 0) {
            int index = 0;
            try {
                index = std::stoi(cfg.backend.substr(6));
            } catch (const std::logic_error&) {
                throw CalcError("invalid backend", cfg.backend);
            }
            sym_ = make_pants_setup(cfg.sig, index);
        } else {
            throw CalcError("invalid backend", cfg.backend);
        }
        doms_ = sym_->lattice.connected_domains();
    }

    const Calculus& calc() const { return sym_ ? sym_->calc : torus_->calc; }
    const Lattice& lattice() const { return calc().lattice(); }
    const SymbolicSetup* symbolic() const { return sym_.get(); }
    const TorusSetup& torus() const {
        if (!torus_) throw CalcError("invalid backend", "this command needs the torus backend");
        return *torus_;
    }

    // D is the first connected domain (C0 on the torus), D<k> the k-th one
    // (A(k/1) on the torus) and g<k>[^n] the k-th generator.
    Letter resolve(const std::string& tok) const {
        static const std::regex dom_re("D([0-9]*)"), gen_re("g([0-9]+)(\\^(-?[0-9]+))?");
        std::smatch m;
        if (std::regex_match(tok, m, dom_re)) {
            if (torus_) {
                if (m[1].str().empty()) return Letter::dom(torus_->lattice.full());
                return Letter::dom(torus_->lattice.annulus(Slope::make(std::stoll(m[1].str()), 1)));
            }
            const std::size_t k = m[1].str().empty() ? 0 : std::stoul(m[1].str());
            if (k >= doms_.size()) throw CalcError("invalid letter", tok);
            return Letter::dom(doms_[k]);
        }
        if (sym_ && std::regex_match(tok, m, gen_re)) {
            const int k = std::stoi(m[1].str());
            if (k >= sym_->group.generator_count()) throw CalcError("invalid letter", tok);
            const int e = m[3].matched ? std::stoi(m[3].str()) : 1;
            return Letter::grp(sym_->group.generator(k, e));
        }
        return calc().parse(tok).at(0);
    }

    Word parse(const std::string& text) {
        std::istringstream in(text);
        std::string tok;
        Word w;
        while (in >> tok) {
            const Letter l = resolve(tok);
            names_.emplace(l, tok);
            w.push_back(l);
        }
        calc().check_letters(w);
        return w;
    }

    // Letters are echoed under the name the user gave them.
    json tokens(const Word& w) const {
        json out = json::array();
        for (const Letter& l : w) {
            auto it = names_.find(l);
            out.push_back(it != names_.end() ? it->second : calc().format(Word{l}));
        }
        return out;
    }

private:
    std::unique_ptr<SymbolicSetup> sym_;
    std::unique_ptr<TorusSetup> torus_;
    std::vector<DomainId> doms_;
    std::map<Letter, std::string> names_;
};

json matrix_json(const GroupElem& g) { return {{g.mat.a, g.mat.b}, {g.mat.c, g.mat.d}}; }

GroupElem parse_matrix(const std::string& s) {
    TorusLattice lat;
    TorusGroup grp(lat);
    return grp.parse(s);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CalcError("unreadable file", path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw CalcError("invalid json", path + ": " + e.what());
    }
}

std::vector<Slope> parse_slopes(const std::vector<std::string>& v) {
    std::vector<Slope> out;
    for (const std::string& s : v) out.push_back(Slope::parse(s));
    return out;
}

json rows_of(const std::vector<std::pair<std::string, std::string>>& failures) {
    json out = json::array();
    for (const auto& [inv, detail] : failures) out.push_back({{"invariant", inv}, {"detail", detail}});
    return out;
}

// ---- suite all ------------------------------------------------------------

// Quick sweep of the main invariants. Each check reports the invariant it
// guards and the first counterexample, if any.
json run_suite(const RunConfig& cfg, bool& ok) {
    std::mt19937_64 rng(cfg.seed);
    json checks = json::array();
    ok = true;
    auto record = [&](const std::string& invariant, std::size_t cases, const std::string& failure) {
        checks.push_back({{"invariant", invariant},
                          {"cases", cases},
                          {"status", failure.empty() ? "pass" : "fail"},
                          {"counterexample", failure}});
        if (!failure.empty()) ok = false;
    };

    {
        std::string fail;
        std::size_t n = 0;
        for (SurfaceSig s : {SurfaceSig{1, 1}, SurfaceSig{1, 2}, SurfaceSig{0, 4}, SurfaceSig{0, 5}, SurfaceSig{2, 0}}) {
            ++n;
            const ChainSearchResult r = enumerate_chains(s);
            if (r.max_length != max_chain_length(s) && fail.empty())
                fail = to_string(s) + ": found " + std::to_string(r.max_length);
        }
        record("surface_core: maximal chains have length 3g-2+b", n, fail);
    }

    auto dumbbell = make_dumbbell_setup();
    const Calculus& calc = dumbbell->calc;
    const PantsLattice& lat = dumbbell->lattice;
    {
        std::string fail;
        for (DomainId a = 0; a < lat.size() && fail.empty(); ++a) {
            if (lat.complement(lat.complement(a)) != a) fail = "involution at " + lat.label(a);
            for (DomainId b = 0; b < lat.size() && fail.empty(); ++b) {
                if (lat.complement(lat.join(a, b)) != lat.meet(lat.complement(a), lat.complement(b)) ||
                    lat.complement(lat.meet(a, b)) != lat.join(lat.complement(a), lat.complement(b)))
                    fail = "De Morgan at " + lat.label(a) + ", " + lat.label(b);
            }
        }
        record("pants_backend: complement is an involution and De Morgan holds", lat.size(), fail);
    }

    const int samples = 300;
    {
        std::string fail;
        for (int i = 0; i < samples && fail.empty(); ++i) {
            const Word w = random_word(*dumbbell, rng, 10);
            const ReducedClass r = calc.reduce(w);
            if (!calc.is_reduced(r.word)) fail = "not reduced: " + calc.format(w);
            else if (!(calc.reduce(r.word) == r)) fail = "not idempotent: " + calc.format(w);
            else if (calc.ordinal_of(r.word) > calc.ordinal_of(w)) fail = "ordinal grew: " + calc.format(w);
        }
        record("word_calculus: reduction is idempotent and never raises Or", samples, fail);
    }
    {
        std::string fail;
        for (int i = 0; i < samples && fail.empty(); ++i) {
            const ReducedClass a = calc.reduce(random_reduced_word(*dumbbell, rng, 5));
            const ReducedClass b = calc.reduce(random_reduced_word(*dumbbell, rng, 5));
            const ReducedClass c = calc.reduce(random_reduced_word(*dumbbell, rng, 5));
            if (!(calc.star(calc.star(a, b), c) == calc.star(a, calc.star(b, c))))
                fail = calc.format(a.word) + " | " + calc.format(b.word) + " | " + calc.format(c.word);
        }
        record("word_calculus: star is associative", samples, fail);
    }
    {
        std::string fail;
        for (int i = 0; i < samples / 3 && fail.empty(); ++i) {
            const Word u = random_reduced_word(*dumbbell, rng, 5);
            const Word v = random_reduced_word(*dumbbell, rng, 5);
            try {
                const auto bad = check_symmetric(calc, u, v, symmetric_decomposition(calc, u, v));
                if (!bad.empty()) fail = bad.front() + ": " + calc.format(u) + " | " + calc.format(v);
            } catch (const CalcError& e) {
                fail = std::string(e.what()) + ": " + calc.format(u) + " | " + calc.format(v);
            }
        }
        record("word_calculus: symmetric decompositions satisfy their predicates", samples / 3, fail);
    }
    {
        std::string fail;
        if (morley_rank_theory({2, 0}) != Ordinal::omega_pow(4)) fail = "theory rank at (2,0)";
        if (morley_upper_bound({2, 0}, 2) != Ordinal::omega_pow(4, 3)) fail = "upper bound at (2,0), r = 2";
        if (k_of_graph(builtin_graph("pants", {2, 0}), {2, 0}) != 2) fail = "k(pants) at (2,0)";
        record("ordinals_rank: rank formulas", 3, fail);
    }
    {
        std::string fail;
        const auto slopes = slopes_up_to(4);
        for (const Slope& a : slopes)
            for (const Slope& b : slopes)
                if (fail.empty() && a != b && ((farey_distance(a, b) == 1) != (intersection(a, b) == 1)))
                    fail = a.str() + " " + b.str();
        record("farey_oracle: adjacency is intersection one", slopes.size() * slopes.size(), fail);
    }
    {
        const BehrstockResult r = behrstock_scan(8);
        record("farey_oracle: projection bound stays small", 1,
               r.c_emp <= 10 ? "" : "C = " + std::to_string(r.c_emp));
    }
    {
        TorusSetup t;
        std::string fail;
        const Slope alpha = Slope::make(0, 1);
        const Word w = t.calc.parse("A(1/0) A(1/1) A(0/1)");
        const int k = displacement_K(t, w, alpha);
        for (int i = 0; i < samples && fail.empty(); ++i) {
            const GroupElem g = sample_related(t, w, rng, 50);
            if (farey_distance(alpha, act(g.mat, alpha)) > k) fail = g.mat.str();
        }
        record("farey_oracle: displacement stays below K(w, alpha)", samples, fail);
    }
    return {{"checks", checks}};
}

std::vector<std::string> subcommand_path(CLI::App& app) {
    std::vector<std::string> path;
    for (CLI::App* sub = &app; !sub->get_subcommands().empty();) {
        sub = sub->get_subcommands().front();
        path.push_back(sub->get_name());
    }
    return path;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvecalc: word calculus for curve graphs"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string config_path, profile;
    if (const char* env = std::getenv("CURVECALC_PROFILE")) profile = env;
    int g = -1, b = -1, L = -1, depth = -1;
    long long E = -1, step = -1;
    std::string backend, output;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "JSON file mirroring the run config");
    app.add_option("--g", g, "genus");
    app.add_option("--b", b, "boundary components and punctures");
    app.add_option("--backend", backend, "dumbbell, pants:<index> or torus");
    app.add_option("--seed", seed, "seed for randomized suites");
    app.add_option("--L", L, "maximum word length");
    app.add_option("--E", E, "maximum twist exponent");
    app.add_option("--step", step, "twist step (2 selects the level-2 model)");
    app.add_option("--depth", depth, "cancellation depth");
    app.add_option("--profile", profile, "budget profile: quick, default or thorough");
    app.add_option("-o,--output", output, "write the report here instead of stdout");

    // Each leaf command fills `result`; `passed` decides the exit status.
    std::function<json(Backend&)> action;
    bool passed = true;
    bool needs_backend = true;

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
        return parent->add_subcommand(name, help);
    };

    // surface
    auto* surface = app.add_subcommand("surface", "surface invariants")->require_subcommand(1);
    leaf(surface, "info", "Euler characteristic, complexity and chain length")->callback([&] {
        needs_backend = false;
        action = [&](Backend&) {
            json j{{"surface", sig_json(cfg.sig)},
                   {"euler_characteristic", euler_characteristic(cfg.sig)},
                   {"complexity", complexity(cfg.sig)},
                   {"sporadic", is_sporadic(cfg.sig)},
                   {"admissible", is_admissible(cfg.sig)}};
            j["max_chain_length"] = max_chain_length(cfg.sig);
            j["pants_graphs"] = json::array();
            for (const PantsGraph& pg : enumerate_pants_graphs(cfg.sig)) j["pants_graphs"].push_back(pg.name());
            return j;
        };
    });

    // lattice
    auto* lattice = app.add_subcommand("lattice", "domain lattice")->require_subcommand(1);
    leaf(lattice, "chains", "exhaustive longest chain search")->callback([&] {
        needs_backend = false;
        action = [&](Backend&) {
            const ChainSearchResult r = enumerate_chains(cfg.sig);
            const auto graphs = enumerate_pants_graphs(cfg.sig);
            PantsOps ops(graphs.at(r.graph_index));
            json w = json::array();
            for (const PantsDomain& d : r.witness) w.push_back(ops.to_string(d));
            json per = json::object();
            for (std::size_t i = 0; i < graphs.size(); ++i) per[graphs[i].name()] = r.per_graph_max.at(i);
            const int expected = max_chain_length(cfg.sig);
            passed = r.max_length == expected;
            return json{{"max", r.max_length},
                        {"expected", expected},
                        {"graph", graphs[r.graph_index].name()},
                        {"witness", w},
                        {"per_graph", per}};
        };
    });
    leaf(lattice, "check", "complement involution and De Morgan on every pants graph")->callback([&] {
        needs_backend = false;
        action = [&](Backend&) {
            json rows = json::array();
            std::vector<std::pair<std::string, std::string>> failures;
            for (const PantsGraph& pg : enumerate_pants_graphs(cfg.sig)) {
                PantsLattice lat(pg);
                for (DomainId a = 0; a < lat.size(); ++a) {
                    if (lat.complement(lat.complement(a)) != a)
                        failures.emplace_back("complement involution", pg.name() + " " + lat.label(a));
                    for (DomainId c = 0; c < lat.size(); ++c) {
                        if (lat.complement(lat.join(a, c)) != lat.meet(lat.complement(a), lat.complement(c)))
                            failures.emplace_back("De Morgan (join)", pg.name() + " " + lat.label(a) + ", " +
                                                                          lat.label(c));
                        if (lat.complement(lat.meet(a, c)) != lat.join(lat.complement(a), lat.complement(c)))
                            failures.emplace_back("De Morgan (meet)", pg.name() + " " + lat.label(a) + ", " +
                                                                          lat.label(c));
                    }
                }
                rows.push_back({{"graph", pg.name()}, {"domains", lat.size()}});
            }
            passed = failures.empty();
            return json{{"graphs", rows}, {"failures", rows_of(failures)}};
        };
    });

    // word
    std::string w1, w2;
    bool cancel = false;
    auto* word = app.add_subcommand("word", "word calculus")->require_subcommand(1);
    auto* reduce_cmd = leaf(word, "reduce", "reduced class of a word");
    reduce_cmd->add_option("word", w1)->required();
    reduce_cmd->callback([&] {
        action = [&](Backend& be) {
            const Word w = be.parse(w1);
            const ReducedClass r = be.calc().reduce(w);
            json trace = json::array();
            for (const MoveRecord& m : r.trace) trace.push_back(move_name(m.move));
            return json{{"input", be.tokens(w)},
                        {"class", be.tokens(r.word)},
                        {"moves", trace},
                        {"ordinal", to_json(be.calc().ordinal_of(r.word))}};
        };
    });
    auto* nf_cmd = leaf(word, "nf", "left and right normal forms");
    nf_cmd->add_option("word", w1)->required();
    nf_cmd->callback([&] {
        action = [&](Backend& be) {
            const Word w = be.parse(w1);
            return json{{"left", be.tokens(be.calc().left_normal_form(w))},
                        {"right", be.tokens(be.calc().right_normal_form(w))}};
        };
    });
    auto* star_cmd = leaf(word, "star", "product of two classes without cancellation");
    star_cmd->add_option("u", w1)->required();
    star_cmd->add_option("v", w2)->required();
    star_cmd->callback([&] {
        action = [&](Backend& be) {
            const Calculus& c = be.calc();
            const ReducedClass r = c.star(c.reduce(be.parse(w1)), c.reduce(be.parse(w2)));
            return json{{"class", be.tokens(r.word)}};
        };
    });
    auto* preceq_cmd = leaf(word, "preceq", "subword order on classes");
    preceq_cmd->add_option("u", w1)->required();
    preceq_cmd->add_option("v", w2)->required();
    preceq_cmd->callback([&] {
        action = [&](Backend& be) {
            const Word u = be.parse(w1), v = be.parse(w2);
            return json{{"preceq", be.calc().preceq(u, v)}, {"reverse", be.calc().preceq(v, u)}};
        };
    });
    auto* dec_cmd = leaf(word, "decompose", "symmetric decomposition of two reduced words");
    dec_cmd->add_option("u", w1)->required();
    dec_cmd->add_option("v", w2)->required();
    dec_cmd->callback([&] {
        action = [&](Backend& be) {
            const Calculus& c = be.calc();
            const Word u = c.reduce(be.parse(w1)).word, v = c.reduce(be.parse(w2)).word;
            const SymmetricDecomposition d = symmetric_decomposition(c, u, v);
            const auto bad = check_symmetric(c, u, v, d);
            passed = bad.empty();
            return json{{"u", be.tokens(u)},
                        {"v", be.tokens(v)},
                        {"g", c.group().label(d.g)},
                        {"h", c.group().label(d.h)},
                        {"u1", be.tokens(d.u1)},
                        {"u_prime", be.tokens(d.u_prime)},
                        {"w", be.tokens(d.w)},
                        {"v_prime", be.tokens(d.v_prime)},
                        {"v1", be.tokens(d.v1)},
                        {"violations", bad}};
        };
    });
    auto* tri_cmd = leaf(word, "triangle", "triangle decomposition of two reduced words");
    tri_cmd->add_option("u", w1)->required();
    tri_cmd->add_option("v", w2)->required();
    tri_cmd->add_flag("--cancel", cancel, "cancel the common commuting part");
    tri_cmd->callback([&] {
        action = [&](Backend& be) {
            const Calculus& c = be.calc();
            const Word u = c.reduce(be.parse(w1)).word, v = c.reduce(be.parse(w2)).word;
            const TriangleDecomposition d = triangle_decomposition(c, u, v, cancel);
            const auto bad = check_triangle(c, u, v, d);
            passed = bad.empty();
            return json{{"u", be.tokens(u)},      {"v", be.tokens(v)},         {"u1", be.tokens(d.u1)},
                        {"alpha", be.tokens(d.alpha)}, {"s", be.tokens(d.s)}, {"beta", be.tokens(d.beta)},
                        {"v1", be.tokens(d.v1)},  {"x", be.tokens(d.x)},       {"cancel", d.cancel},
                        {"violations", bad}};
        };
    });
    auto* ord_cmd = leaf(word, "ordinal", "ordinal weight of a word");
    ord_cmd->add_option("word", w1)->required();
    ord_cmd->callback([&] {
        action = [&](Backend& be) {
            const Word w = be.parse(w1);
            return json{{"ordinal", to_json(be.calc().ordinal_of(w))},
                        {"reduced_ordinal", to_json(be.calc().ordinal_of(be.calc().reduce(w).word))}};
        };
    });

    // rank
    int rpow = 1, chain_len = 3;
    std::string graph_name, spec_path;
    auto* rank = app.add_subcommand("rank", "rank bounds")->require_subcommand(1);
    leaf(rank, "theory", "rank of the full theory")->callback([&] {
        needs_backend = false;
        action = [&](Backend&) {
            const Ordinal o = morley_rank_theory(cfg.sig);
            return json{{"rank", o.str()}, {"cnf", to_json(o)["cnf"]}};
        };
    });
    auto* upper_cmd = leaf(rank, "upper", "upper bound for the r-th power");
    upper_cmd->add_option("--r", rpow, "power");
    upper_cmd->callback([&] {
        needs_backend = false;
        action = [&](Backend&) {
            const Ordinal o = morley_upper_bound(cfg.sig, rpow);
            return json{{"r", rpow}, {"bound", o.str()}, {"cnf", to_json(o)["cnf"]}};
        };
    });
    auto* graph_cmd = leaf(rank, "graph", "rank bound and verdict for a geometric graph");
    graph_cmd->add_option("--name", graph_name, "built-in graph name");
    graph_cmd->add_option("--spec", spec_path, "JSON graph spec");
    graph_cmd->callback([&] {
        needs_backend = false;
        action = [&](Backend&) {
            if (graph_name.empty() == spec_path.empty())
                throw CalcError("invalid arguments", "give exactly one of --name and --spec");
            const GeomGraphSpec spec =
                spec_path.empty() ? builtin_graph(graph_name, cfg.sig) : geom_spec_from_json(load_json_file(spec_path));
            validate_spec(spec, cfg.sig);
            const int k = k_of_graph(spec, cfg.sig);
            const Verdict v = interpretability_verdict(spec, cfg.sig);
            json j{{"graph", to_json(spec)},
                   {"k", k},
                   {"rank_bound", rank_bound(spec, cfg.sig).str()},
                   {"theory_rank", morley_rank_theory(cfg.sig).str()},
                   {"verdict",
                    {{"guard", v.guard},
                     {"rank_gap", v.rank_gap},
                     {"not_interpretable", v.not_interpretable},
                     {"statement", v.statement}}}};
            if (spec.stated_k) j["stated_k"] = *spec.stated_k;
            if (spec_path.empty()) {
                const auto bk = backend_k(graph_name, cfg.sig);
                j["backend_k"] = bk ? json(*bk) : json(nullptr);
                if (bk) passed = *bk == k;
            }
            return j;
        };
    });
    auto* chain_cmd = leaf(rank, "chain", "descending chain of refined steps below a word");
    chain_cmd->add_option("word", w1)->required();
    chain_cmd->add_option("--n", chain_len, "number of steps");
    chain_cmd->callback([&] {
        action = [&](Backend& be) {
            const auto chain = descending_chain_r(be.calc(), be.parse(w1), chain_len);
            json words = json::array(), ords = json::array();
            int verified = 0;
            for (std::size_t i = 0; i < chain.size(); ++i) {
                words.push_back(be.tokens(chain[i]));
                ords.push_back(be.calc().ordinal_of(chain[i]).str());
                if (i > 0 && is_r_step(be.calc(), chain[i], chain[i - 1])) ++verified;
            }
            passed = verified == chain_len;
            return json{{"chain", words}, {"ordinals", ords}, {"verified_steps", verified}};
        };
    });

    // farey
    std::string sa, sb, sc, alpha = "0/1", core = "1/0";
    std::vector<std::string> forbidden;
    int bound = 10, samples = 1000;
    auto* farey = app.add_subcommand("farey", "torus model")->require_subcommand(1);
    auto* dist_cmd = leaf(farey, "dist", "Farey graph distance");
    dist_cmd->add_option("a", sa)->required();
    dist_cmd->add_option("b", sb)->required();
    dist_cmd->callback([&] {
        needs_backend = false;
        action = [&](Backend&) {
            const Slope a = Slope::parse(sa), bb = Slope::parse(sb);
            return json{{"a", a.str()},
                        {"b", bb.str()},
                        {"distance", farey_distance(a, bb)},
                        {"intersection", intersection(a, bb)},
                        {"convergent_bound", continued_fraction_bound(a, bb)}};
        };
    });
    auto* proj_cmd = leaf(farey, "proj", "annular projection distance");
    proj_cmd->add_option("core", sa)->required();
    proj_cmd->add_option("b", sb)->required();
    proj_cmd->add_option("c", sc)->required();
    proj_cmd->callback([&] {
        needs_backend = false;
        action = [&](Backend&) {
            return json{{"core", sa},
                        {"distance", annular_distance(Slope::parse(sa), Slope::parse(sb), Slope::parse(sc))}};
        };
    });
    auto* beh_cmd = leaf(farey, "behrstock", "largest mutual projection over bounded slopes");
    beh_cmd->add_option("--bound", bound, "slope height bound");
    beh_cmd->callback([&] {
        needs_backend = false;
        action = [&](Backend&) {
            const BehrstockResult r = behrstock_scan(bound);
            return json{{"bound", r.bound},
                        {"C_emp", r.c_emp},
                        {"attained_at", {{"alpha", r.alpha.str()}, {"core1", r.core1.str()}, {"core2", r.core2.str()}}},
                        {"convention", "annular projections with floor offsets; slopes |p| <= bound, 0 <= q <= bound"}};
        };
    });
    auto* disp_cmd = leaf(farey, "displacement", "K(w, alpha) and sampled displacements");
    disp_cmd->add_option("word", w1)->required();
    disp_cmd->add_option("--alpha", alpha, "base slope");
    disp_cmd->add_option("--samples", samples, "number of sampled relations");
    disp_cmd->callback([&] {
        action = [&](Backend& be) {
            const TorusSetup& t = be.torus();
            const Word w = be.parse(w1);
            const Slope a = Slope::parse(alpha);
            const int k = displacement_K(t, w, a);
            std::mt19937_64 rng(cfg.seed);
            int worst = 0, violations = 0;
            for (int i = 0; i < samples; ++i) {
                const GroupElem g = sample_related(t, w, rng, 50);
                const int d = farey_distance(a, act(g.mat, a));
                worst = std::max(worst, d);
                if (d > k) ++violations;
            }
            passed = violations == 0;
            return json{{"word", be.tokens(w)}, {"alpha", a.str()}, {"K", k},
                        {"samples", samples},   {"max_observed", worst}, {"violations", violations}};
        };
    });
    auto* wit_cmd = leaf(farey, "witness", "generic twist power avoiding forbidden words");
    wit_cmd->add_option("--core", core, "annulus core slope");
    wit_cmd->add_option("--forbidden", forbidden, "forbidden word (repeatable)");
    wit_cmd->callback([&] {
        action = [&](Backend& be) {
            const TorusSetup& t = be.torus();
            std::vector<Word> words;
            json echo = json::array();
            for (const std::string& s : forbidden) {
                words.push_back(be.parse(s));
                echo.push_back(be.tokens(words.back()));
            }
            const WitnessResult r = generic_witness(t, Slope::parse(core), words, cfg.budgets.max_exponent);
            return json{{"core", core},     {"forbidden", echo},        {"exponent", r.exponent},
                        {"g", matrix_json(r.g)}, {"refuted", r.refuted}, {"unknown", r.unknown}};
        };
    });

    // fragment
    std::string mx, my, frag_path, domain = "A(1/0)", mb;
    int a0 = 0;
    std::vector<std::string> alphabet_opt;
    auto* fragment = app.add_subcommand("fragment", "torus fragments")->require_subcommand(1);
    auto* rw_cmd = leaf(fragment, "rw", "decide R_w(x, y)");
    rw_cmd->add_option("--x", mx, "matrix x")->required();
    rw_cmd->add_option("--y", my, "matrix y")->required();
    rw_cmd->add_option("word", w1)->required();
    rw_cmd->callback([&] {
        action = [&](Backend& be) {
            const TorusSetup& t = be.torus();
            const Word w = be.parse(w1);
            const RwResult r = holds_R_w(t, parse_matrix(mx), parse_matrix(my), w, cfg.budgets.max_exponent,
                                         cfg.budgets.twist_step);
            json path = json::array();
            for (const GroupElem& p : r.path) path.push_back(matrix_json(p));
            return json{{"word", be.tokens(w)}, {"relation", status_name(r.status)}, {"path", path}};
        };
    });
    auto alphabet_of = [&] {
        return alphabet_opt.empty() ? std::vector<Slope>{Slope::make(0, 1), Slope::make(1, 0)}
                                    : parse_slopes(alphabet_opt);
    };
    auto* delta_cmd = leaf(fragment, "delta", "least verified reduced word between two points");
    delta_cmd->add_option("--x", mx, "matrix a")->required();
    delta_cmd->add_option("--y", my, "matrix b")->required();
    delta_cmd->add_option("--alphabet", alphabet_opt, "annulus slopes");
    delta_cmd->callback([&] {
        action = [&](Backend& be) {
            const TorusSetup& t = be.torus();
            const DeltaResult r = delta_search(t, parse_matrix(mx), parse_matrix(my), alphabet_of(), cfg.budgets);
            json minimal = json::array();
            for (const Word& w : r.minimal) minimal.push_back(be.tokens(w));
            passed = !r.found || r.unique;
            return json{{"found", r.found},       {"unique", r.unique},     {"least", be.tokens(r.least)},
                        {"minimal", minimal},     {"verified", r.verified}, {"unknown", r.unknown}};
        };
    });
    auto* gate_cmd = leaf(fragment, "gate", "gate property for a fragment");
    gate_cmd->add_option("--spec", frag_path, "fragment JSON")->required();
    gate_cmd->add_option("--a0", a0, "index of the basepoint (negative: computed)");
    gate_cmd->add_option("--domain", domain, "step domain");
    gate_cmd->add_option("--point", mb, "the outside point b")->required();
    gate_cmd->callback([&] {
        action = [&](Backend& be) {
            const TorusSetup& t = be.torus();
            const FragmentSpec f = fragment_spec_from_json(load_json_file(frag_path));
            const GroupElem bpt = parse_matrix(mb);
            const GroupElem base = a0 >= 0 ? f.points.at(a0) : basepoint(t, f.points, bpt, f.alphabet, f.budgets);
            const GateReport r = check_gate_property(t, f.points, base, t.lattice.parse(domain), bpt, f.alphabet,
                                                     f.budgets);
            json rows = json::array();
            for (const GateRow& row : r.rows)
                rows.push_back({{"a", matrix_json(row.a)},
                                {"status", status_name(row.status)},
                                {"delta", be.tokens(row.delta_ba)},
                                {"expected", be.tokens(row.expected)}});
            passed = !r.precondition || r.mismatches == 0;
            return json{{"fragment", to_json(f)},        {"basepoint", matrix_json(base)},
                        {"precondition", r.precondition}, {"precondition_note", r.precondition_note},
                        {"matches", r.matches},           {"mismatches", r.mismatches},
                        {"unknowns", r.unknowns},         {"rows", rows}};
        };
    });
    auto* wc_cmd = leaf(fragment, "wc", "weak convexity of a fragment");
    wc_cmd->add_option("--spec", frag_path, "fragment JSON")->required();
    wc_cmd->callback([&] {
        action = [&](Backend& be) {
            const TorusSetup& t = be.torus();
            const FragmentSpec f = fragment_spec_from_json(load_json_file(frag_path));
            const ConvexReport r = check_weakly_convex(t, f.points, f.alphabet, f.budgets);
            json rows = json::array();
            for (const ConvexRow& row : r.rows)
                rows.push_back({{"i", row.i},
                                {"j", row.j},
                                {"status", status_name(row.status)},
                                {"delta", be.tokens(row.delta)},
                                {"witness", be.tokens(row.witness.word)}});
            return json{{"fragment", to_json(f)}, {"weakly_convex", r.weakly_convex}, {"verified", r.verified},
                        {"missing", r.missing},    {"skipped", r.skipped},            {"rows", rows}};
        };
    });

    // suite
    auto* suite = app.add_subcommand("suite", "property suites")->require_subcommand(1);
    leaf(suite, "all", "quick sweep of every module invariant")->callback([&] {
        needs_backend = false;
        action = [&](Backend&) { return run_suite(cfg, passed); };
    });

    std::vector<std::string> command_path;
    json report;
    int exit_code = 0;
    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            command_path = subcommand_path(app);
            throw CalcError("invalid arguments", e.what());
        }
        command_path = subcommand_path(app);

        // Precedence: defaults, profile, config file, flags.
        cfg.budgets = profile_budgets(profile);
        if (!config_path.empty()) {
            json j = load_json_file(config_path);
            if (!j.contains("budgets")) j["budgets"] = budgets_json(cfg.budgets);
            cfg = run_config_from_json(j);
        }
        if (g >= 0) cfg.sig.genus = g;
        if (b >= 0) cfg.sig.boundary = b;
        if (!backend.empty()) cfg.backend = backend;
        if (seed != 0) cfg.seed = seed;
        if (!output.empty()) cfg.output = output;
        if (L >= 0) cfg.budgets.max_length = L;
        if (E >= 0) cfg.budgets.max_exponent = E;
        if (step >= 0) cfg.budgets.twist_step = step;
        if (depth >= 0) cfg.chain_depth = depth;
        if (cfg.budgets.max_length < 0 || cfg.budgets.max_exponent < 1 || cfg.budgets.twist_step < 1)
            throw CalcError("invalid budget", "budgets must be positive");
        // Torus-only commands switch the backend on their own.
        if (!command_path.empty() && (command_path[0] == "fragment" ||
                                      (command_path[0] == "farey" && (command_path.back() == "displacement" ||
                                                                      command_path.back() == "witness"))))
            cfg.backend = "torus";
        if (cfg.backend == "torus") cfg.sig = {1, 1};

        // Commands that do not read words still get a (cheap) torus backend.
        RunConfig backend_cfg = cfg;
        if (!needs_backend) backend_cfg.backend = "torus";
        Backend be(backend_cfg);
        report = action(be);
        report["status"] = passed ? "pass" : "fail";
        exit_code = passed ? 0 : 1;
    } catch (const CalcError& e) {
        const std::string what = e.what();
        const std::string detail = what.size() > e.kind().size() + 2 ? what.substr(e.kind().size() + 2) : "";
        report = error_record(e.kind(), detail);
        exit_code = 2;
    } catch (const std::exception& e) {
        report = error_record("internal", e.what());
        exit_code = 3;
    }

    report["command"] = command_path;
    report["config"] = to_json(cfg);
    report["version"] = kVersion;
    const std::string text = dump_report(report);
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.output);
        if (!out) {
            std::cout << dump_report(error_record("unwritable output", cfg.output));
            return 2;
        }
        out << text;
    }
    return exit_code;
}
