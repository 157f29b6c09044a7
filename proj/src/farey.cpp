#include "curvecalc/farey.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>

#include "curvecalc/error.hpp"

namespace curvecalc {

Int intersection(const Slope& a, const Slope& b) {
    const Int v = checked_add(checked_mul(a.p, b.q), -checked_mul(a.q, b.p));
    return v < 0 ? -v : v;
}

namespace {

// b seen from a frame where a is the slope at infinity.
Slope from_infinity(const Slope& a, const Slope& b) { return act(to_infinity_inverse(a).inverse(), b); }

Int floor_div(Int p, Int q) {
    Int f = p / q;
    if ((p % q != 0) && ((p < 0) != (q < 0))) --f;
    return f;
}

constexpr std::size_t kLadderLimit = 1u << 22;

}  // namespace

int farey_distance(const Slope& a, const Slope& b) {
    const Slope x = from_infinity(a, b);
    if (x.q == 0) return 0;
    if (x.q == 1) return 1;

    // Walk down the Stern-Brocot tree from the two integers around x. Every new
    // mediant is a Farey neighbour of the two fractions it came from.
    struct Node {
        Int p, q;
    };
    std::vector<Node> nodes{{1, 0}, {floor_div(x.p, x.q), 1}, {floor_div(x.p, x.q) + 1, 1}};
    std::vector<std::vector<std::size_t>> adj{{1, 2}, {0, 2}, {0, 1}};
    std::size_t left = 1, right = 2, target = 0;
    while (target == 0) {
        const Node m{nodes[left].p + nodes[right].p, nodes[left].q + nodes[right].q};
        const std::size_t id = nodes.size();
        nodes.push_back(m);
        adj.push_back({left, right});
        adj[left].push_back(id);
        adj[right].push_back(id);
        if (m.p == x.p && m.q == x.q) {
            target = id;
        } else if (static_cast<__int128>(x.p) * m.q < static_cast<__int128>(m.p) * x.q) {
            right = id;
        } else {
            left = id;
        }
        if (nodes.size() > kLadderLimit) throw CalcError("budget", "Farey ladder too long");
    }

    std::vector<int> dist(nodes.size(), -1);
    std::deque<std::size_t> queue{0};
    dist[0] = 0;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v : adj[u]) {
            if (dist[v] >= 0) continue;
            dist[v] = dist[u] + 1;
            queue.push_back(v);
        }
    }
    const int d = dist[target];
    if (d > continued_fraction_bound(a, b)) throw CalcError("internal", "Farey distance exceeds the convergent path");
    return d;
}

int continued_fraction_bound(const Slope& a, const Slope& b) {
    const Slope x = from_infinity(a, b);
    if (x.q == 0) return 0;
    // One step to each convergent of x, starting from its integer part.
    int terms = 0;
    Int p = x.p, q = x.q;
    while (q != 0) {
        const Int f = floor_div(p, q);
        const Int r = p - f * q;
        p = q;
        q = r;
        ++terms;
    }
    return terms;
}

Int annular_distance(const Slope& core, const Slope& b, const Slope& c) {
    if (b == core || c == core) throw CalcError("empty projection", "slope equals the core " + core.str());
    const Mat2 m = to_infinity_inverse(core).inverse();
    const Slope bb = act(m, b), cc = act(m, c);
    const Int d = floor_div(bb.p, bb.q) - floor_div(cc.p, cc.q);
    return d < 0 ? -d : d;
}

std::vector<Slope> slopes_up_to(int bound) {
    std::vector<Slope> out{Slope::make(1, 0)};
    for (Int q = 1; q <= bound; ++q)
        for (Int p = -bound; p <= bound; ++p)
            if (std::gcd(p, q) == 1) out.push_back(Slope::make(p, q));
    return out;
}

BehrstockResult behrstock_scan(int bound) {
    if (bound < 1) throw CalcError("invalid bound", std::to_string(bound));
    const std::vector<Slope> s = slopes_up_to(bound);
    const std::size_t n = s.size();

    // floor of slope j in the frame of core i; unused on the diagonal.
    std::vector<Int> t(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const Mat2 m = to_infinity_inverse(s[i]).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const Slope x = act(m, s[j]);
            t[i * n + j] = floor_div(x.p, x.q);
        }
    }

    BehrstockResult out;
    out.bound = bound;
    out.c_emp = -1;
    for (std::size_t i = 0; i < n; ++i) {
        const Int* ti = &t[i * n];
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const Int* tj = &t[j * n];
            const Int ref_i = ti[j], ref_j = tj[i];
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const Int v = std::min(std::abs(ref_i - ti[k]), std::abs(ref_j - tj[k]));
                if (v > out.c_emp) {
                    out.c_emp = v;
                    out.core1 = s[i];
                    out.core2 = s[j];
                    out.alpha = s[k];
                }
            }
        }
    }
    return out;
}

int displacement_K(const TorusSetup& t, const Word& w, const Slope& alpha) {
    t.calc.check_letters(w);
    int k = 0;
    for (const Letter& l : w) {
        if (l.is_group) {
            k += farey_distance(alpha, act(l.g.mat, alpha));
        } else if (l.d == t.lattice.full()) {
            throw CalcError("no uniform bound exists", "the full domain moves curves arbitrarily far");
        } else {
            k += 2 * farey_distance(alpha, t.lattice.slope(l.d));
        }
    }
    return k;
}

GroupElem sample_related(const TorusSetup& t, const Word& w, std::mt19937_64& rng, Int max_exp) {
    std::uniform_int_distribution<Int> exp_dist(-max_exp, max_exp);
    Mat2 g;
    for (const Letter& l : w) {
        if (l.is_group) g = g * l.g.mat;
        else if (l.d == t.lattice.full()) throw CalcError("no uniform bound exists", "full domain letter");
        else g = g * twist_power(t.lattice.slope(l.d), exp_dist(rng));
    }
    return TorusGroup::elem(g);
}

WitnessResult generic_witness(const TorusSetup& t, const Slope& core, const std::vector<Word>& forbidden,
                              Int max_exponent) {
    const DomainId d = t.lattice.annulus(core);
    for (const Word& u : forbidden) {
        t.calc.check_letters(u);
        for (const Letter& l : u) {
            if (l.is_group) continue;
            if (l.d == t.lattice.full()) throw CalcError("not proper", t.calc.format(u));
            if (l.d == d) throw CalcError("forbidden word not in W(D)", t.calc.format(u));
        }
    }
    const GroupElem one = t.group.identity();
    for (Int n = 1; n <= max_exponent; ++n) {
        WitnessResult r;
        r.exponent = n;
        r.g = TorusGroup::elem(twist_power(core, n));
        bool ok = true;
        for (const Word& u : forbidden) {
            const Status s = holds_R_w(t, one, r.g, u, max_exponent).status;
            if (s == Status::Verified) {
                ok = false;
                break;
            }
            (s == Status::Refuted ? r.refuted : r.unknown)++;
        }
        if (ok) return r;
    }
    throw CalcError("budget", "no twist power up to " + std::to_string(max_exponent) + " avoids the forbidden words");
}

}  // namespace curvecalc
