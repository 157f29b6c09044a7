#include "curvecalc/backends.hpp"

#include "curvecalc/error.hpp"

namespace curvecalc {

PantsGraph dumbbell_graph() {
    for (PantsGraph& g : enumerate_pants_graphs({2, 0}))
        if (g.name() == "dumbbell") return g;
    throw CalcError("internal", "dumbbell graph missing from the (2,0) enumeration");
}

std::unique_ptr<SymbolicSetup> make_dumbbell_setup() {
    auto s = std::make_unique<SymbolicSetup>(dumbbell_graph());
    s->group.add_generator("ta", s->lattice.annulus(0));
    s->group.add_generator("u", s->lattice.block(1u << 0));
    s->group.add_generator("s", s->lattice.full(), {2, 1, 0});
    return s;
}

std::unique_ptr<SymbolicSetup> make_pants_setup(SurfaceSig sig, int index) {
    auto graphs = enumerate_pants_graphs(sig);
    if (index < 0 || index >= static_cast<int>(graphs.size()))
        throw CalcError("invalid backend", "pants graph index " + std::to_string(index) + " for " + to_string(sig));
    return std::make_unique<SymbolicSetup>(graphs[index]);
}

Word random_word(const SymbolicSetup& s, std::mt19937_64& rng, int max_len, double group_prob) {
    const std::vector<DomainId> doms = s.lattice.connected_domains();
    const int gens = s.group.generator_count();
    std::uniform_int_distribution<int> len_dist(0, max_len);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> dom_dist(0, doms.size() - 1);
    const int n = len_dist(rng);
    Word w;
    for (int i = 0; i < n; ++i) {
        if (gens > 0 && coin(rng) < group_prob) {
            const int g = std::uniform_int_distribution<int>(0, gens - 1)(rng);
            w.push_back(Letter::grp(s.group.generator(g, coin(rng) < 0.5 ? 1 : -1)));
        } else {
            w.push_back(Letter::dom(doms[dom_dist(rng)]));
        }
    }
    return w;
}

Word random_reduced_word(const SymbolicSetup& s, std::mt19937_64& rng, int max_len) {
    return s.calc.reduce(random_word(s, rng, max_len)).word;
}

}  // namespace curvecalc
