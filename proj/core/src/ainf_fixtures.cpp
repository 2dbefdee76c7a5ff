#include "hms/ainf_fixtures.hpp"

#include <algorithm>
#include <string>

namespace hms::ainf {

DgQuiver random_dg_quiver(std::mt19937_64& rng, int max_obj, int max_arrows) {
    DgQuiver q;
    q.nobj = 2 + static_cast<int>(rng() % std::max(1, max_obj - 1));
    int narrows = 3 + static_cast<int>(rng() % std::max(1, max_arrows - 2));
    for (int i = 0; i < narrows; ++i) {
        DgQuiver::Arrow a;
        a.src = static_cast<int>(rng() % q.nobj);
        a.tgt = static_cast<int>(rng() % q.nobj);
        a.parity = static_cast<int>(rng() % 2);
        q.arrows.push_back(a);
    }
    // pair some arrows: e with d(e) = a, a closed, same endpoints, opposite parity
    for (std::size_t e = 0; e < q.arrows.size(); ++e) {
        if (rng() % 3 != 0) continue;
        for (std::size_t a = 0; a < q.arrows.size(); ++a) {
            if (a == e) continue;
            if (q.arrows[a].dto >= 0) continue;           // target must be closed
            if (q.arrows[e].dto >= 0) break;              // already paired
            bool used_as_target = false;
            for (const auto& other : q.arrows) used_as_target |= other.dto == static_cast<int>(e);
            if (used_as_target) break;                    // keep d-images closed
            if (q.arrows[a].src == q.arrows[e].src && q.arrows[a].tgt == q.arrows[e].tgt &&
                q.arrows[a].parity == (q.arrows[e].parity ^ 1)) {
                q.arrows[e].dto = static_cast<int>(a);
                break;
            }
        }
    }
    return q;
}

namespace {

using Path = std::vector<int>;  // arrow indices in traversal order

std::string path_name(const Path& p) {
    std::string s = "p";
    for (int a : p) s += "_" + std::to_string(a);
    return s;
}

}  // namespace

FiniteAInfCategory dg_path_category(const DgQuiver& q, int max_len) {
    FiniteAInfCategory cat;
    for (int i = 0; i < q.nobj; ++i) cat.objects.push_back("o" + std::to_string(i));

    // enumerate paths by length, lexicographic in arrow indices
    std::map<std::pair<int, int>, std::vector<Path>> paths;
    std::vector<Path> frontier;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) frontier.push_back({static_cast<int>(a)});
    for (int len = 1; len <= max_len; ++len) {
        for (const auto& p : frontier)
            paths[{q.arrows[p.front()].src, q.arrows[p.back()].tgt}].push_back(p);
        std::vector<Path> next;
        for (const auto& p : frontier)
            for (std::size_t a = 0; a < q.arrows.size(); ++a)
                if (q.arrows[a].src == q.arrows[p.back()].tgt) {
                    Path np = p;
                    np.push_back(static_cast<int>(a));
                    next.push_back(np);
                }
        frontier = std::move(next);
    }

    std::map<std::pair<int, int>, std::map<Path, int>> index;
    for (auto& [st, list] : paths) {
        std::sort(list.begin(), list.end(), [](const Path& a, const Path& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        std::vector<std::pair<std::string, int>> basis;
        for (std::size_t i = 0; i < list.size(); ++i) {
            int parity = 0;
            for (int a : list[i]) parity ^= q.arrows[a].parity;
            basis.push_back({path_name(list[i]), parity});
            index[st][list[i]] = static_cast<int>(i);
        }
        cat.homs[st] = std::move(basis);
    }

    auto elem_of = [&](const Path& p) -> Elem {
        std::pair<int, int> st{q.arrows[p.front()].src, q.arrows[p.back()].tgt};
        return {st.first, st.second, index.at(st).at(p)};
    };

    // mu^1: letterwise derivation
    for (const auto& [st, list] : paths)
        for (const auto& p : list) {
            Sum v;
            for (std::size_t pos = 0; pos < p.size(); ++pos) {
                int dto = q.arrows[p[pos]].dto;
                if (dto < 0) continue;
                Path np = p;
                np[pos] = dto;
                v.push_back(elem_of(np));
            }
            v = normalize(std::move(v));
            if (!v.empty()) cat.set_mu(1, {elem_of(p)}, std::move(v));
        }

    // mu^2: truncated concatenation; key order is (second, first)
    for (const auto& [st1, list1] : paths)
        for (const auto& p1 : list1)
            for (const auto& [st2, list2] : paths) {
                if (st2.first != st1.second) continue;
                for (const auto& p2 : list2) {
                    if (p1.size() + p2.size() > static_cast<std::size_t>(max_len)) continue;
                    Path cat_path = p1;
                    cat_path.insert(cat_path.end(), p2.begin(), p2.end());
                    cat.set_mu(2, {elem_of(p2), elem_of(p1)}, {elem_of(cat_path)});
                }
            }
    return cat;
}

HomotopyTables random_homotopy_tables(const AInfFunctor& F, std::mt19937_64& rng, int up_to) {
    HomotopyTables tables;
    const auto& A = *F.source;
    const auto& B = *F.target;
    for (int r = 1; r <= up_to; ++r)
        for (const auto& chain : A.composable(r)) {
            if (rng() % 4 != 0) continue;
            int bs = F.object_map[chain.back().src];
            int bt = F.object_map[chain.front().tgt];
            int want = 0;
            for (const auto& e : chain) want ^= A.degree(e);
            want = (want + r) & 1;  // degree-0 homotopy: |T^r| = sum - r
            std::vector<Elem> candidates;
            for (const auto& e : B.hom_elems(bs, bt))
                if (B.degree(e) == want) candidates.push_back(e);
            if (candidates.empty()) continue;
            tables[r][chain] = {candidates[rng() % candidates.size()]};
        }
    return tables;
}

PreNaturalTransformation random_prenatural(const AInfFunctor& F, const AInfFunctor& G,
                                           std::mt19937_64& rng, int degree, int up_to) {
    const auto& A = *F.source;
    const auto& B = *F.target;
    PreNaturalTransformation T;
    T.F = &F;
    T.G = &G;
    T.degree = degree & 1;

    for (int x = 0; x < static_cast<int>(A.objects.size()); ++x) {
        if (rng() % 2) continue;
        std::vector<Elem> candidates;
        for (const auto& e : B.hom_elems(F.object_map[x], G.object_map[x]))
            if (B.degree(e) == (degree & 1)) candidates.push_back(e);
        if (!candidates.empty()) T.t0[x] = {candidates[rng() % candidates.size()]};
    }
    for (int r = 1; r <= up_to; ++r)
        for (const auto& chain : A.composable(r)) {
            if (rng() % 4 != 0) continue;
            int want = 0;
            for (const auto& e : chain) want ^= A.degree(e);
            want = (want + degree + r) & 1;  // |T^r| = sum + g - r
            std::vector<Elem> candidates;
            for (const auto& e :
                 B.hom_elems(F.object_map[chain.back().src], G.object_map[chain.front().tgt]))
                if (B.degree(e) == want) candidates.push_back(e);
            if (!candidates.empty()) T.terms[r][chain] = {candidates[rng() % candidates.size()]};
        }
    return T;
}

AInfFunctor gauge_twist(const AInfFunctor& F, AInfFunctor& G, const HomotopyTables& t_tables,
                        int up_to) {
    G = AInfFunctor{};
    G.source = F.source;
    G.target = F.target;
    G.object_map = F.object_map;

    PreNaturalTransformation T;
    T.F = &F;
    T.G = &G;
    T.degree = 0;
    T.terms = t_tables;

    for (int r = 1; r <= up_to; ++r) {
        auto dT = mu1_fun(T, r);  // order r uses only G terms of lower order
        for (const auto& chain : F.source->composable(r)) {
            Sum v = sum_add(F.apply_elems(r, chain), dT.apply_elems(r, chain));
            if (!v.empty()) G.set_term(r, chain, std::move(v));
        }
    }
    return G;
}

std::unique_ptr<GaugeFixture> random_gauge_fixture(std::uint64_t seed, int up_to) {
    std::mt19937_64 rng(seed);
    auto fx = std::make_unique<GaugeFixture>();
    fx->cat = dg_path_category(random_dg_quiver(rng, 3, 5), 2);
    fx->base = identity_functor(fx->cat);
    fx->tables = random_homotopy_tables(fx->base, rng, up_to);
    gauge_twist(fx->base, fx->twisted, fx->tables, up_to);
    return fx;
}

FiniteAInfCategory pair_category(const FiniteAInfCategory& a1, const FiniteAInfCategory& a2) {
    if (a1.objects.size() != a2.objects.size())
        throw Error("pair category needs matching object sets");
    FiniteAInfCategory p;
    p.objects = a1.objects;
    int n = static_cast<int>(p.objects.size());
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            std::vector<std::pair<std::string, int>> basis;
            auto it1 = a1.homs.find({s, t});
            if (it1 != a1.homs.end())
                for (const auto& [name, deg] : it1->second) basis.push_back({"L:" + name, deg});
            auto it2 = a2.homs.find({s, t});
            if (it2 != a2.homs.end())
                for (const auto& [name, deg] : it2->second) basis.push_back({"R:" + name, deg});
            if (!basis.empty()) p.homs[{s, t}] = std::move(basis);
        }

    auto embed = [&](int side, const FiniteAInfCategory& a, const Elem& e) -> Elem {
        int offset = side == 0 ? 0 : a1.hom_dim(e.src, e.tgt);
        (void)a;
        return {e.src, e.tgt, offset + e.idx};
    };
    for (int side = 0; side < 2; ++side) {
        const auto& a = side == 0 ? a1 : a2;
        for (const auto& [k, table] : a.mu)
            for (const auto& [key, value] : table) {
                std::vector<Elem> pkey;
                for (const auto& e : key) pkey.push_back(embed(side, a, e));
                Sum pval;
                for (const auto& e : value) pval.push_back(embed(side, a, e));
                p.set_mu(k, std::move(pkey), std::move(pval));
            }
    }
    return p;
}

std::unique_ptr<QuotientFixture> random_quotient_fixture(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto fx = std::make_unique<QuotientFixture>();

    // base quiver for the shared quotient
    DgQuiver base = random_dg_quiver(rng, 3, 4);
    const int max_len = 2;
    fx->b = dg_path_category(base, max_len);

    // each side extends the base quiver with extra arrows that die in the
    // quotient; extras must not be differential values of base arrows
    auto extend = [&](DgQuiver q) {
        int extra = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < extra; ++i) {
            DgQuiver::Arrow a;
            a.src = static_cast<int>(rng() % q.nobj);
            a.tgt = static_cast<int>(rng() % q.nobj);
            a.parity = static_cast<int>(rng() % 2);
            q.arrows.push_back(a);
        }
        return q;
    };
    DgQuiver q1 = extend(base), q2 = extend(base);
    fx->a1 = dg_path_category(q1, max_len);
    fx->a2 = dg_path_category(q2, max_len);
    fx->pair = pair_category(fx->a1, fx->a2);

    // quotients kill every path through an extra arrow; on base paths they
    // are the identity, so the images are read off from path names
    auto quotient_image = [&](const FiniteAInfCategory& a, const DgQuiver& q,
                              const Elem& e) -> Sum {
        const auto& name = a.homs.at({e.src, e.tgt})[e.idx].first;
        // recover the arrow list from the name p_i_j_...
        std::vector<int> arrows;
        for (std::size_t i = 1; i < name.size();) {
            std::size_t j = name.find('_', i + 1);
            if (j == std::string::npos) j = name.size();
            arrows.push_back(std::stoi(name.substr(i + 1, j - i - 1)));
            i = j;
        }
        for (int arr : arrows)
            if (arr >= static_cast<int>(base.arrows.size())) return {};  // dies
        (void)q;
        // base paths keep their name in b
        const auto& bbasis = fx->b.homs.at({e.src, e.tgt});
        for (std::size_t i = 0; i < bbasis.size(); ++i)
            if (bbasis[i].first == name) return {Elem{e.src, e.tgt, static_cast<int>(i)}};
        throw Error("quotient image not found");
    };

    fx->rho.source = &fx->pair;
    fx->rho.target = &fx->b;
    for (std::size_t i = 0; i < fx->pair.objects.size(); ++i)
        fx->rho.object_map.push_back(static_cast<int>(i));
    for (int s = 0; s < static_cast<int>(fx->pair.objects.size()); ++s)
        for (int t = 0; t < static_cast<int>(fx->pair.objects.size()); ++t)
            for (const auto& e : fx->pair.hom_elems(s, t)) {
                int d1 = fx->a1.hom_dim(s, t);
                Sum img = e.idx < d1
                              ? quotient_image(fx->a1, q1, {s, t, e.idx})
                              : quotient_image(fx->a2, q2, {s, t, e.idx - d1});
                if (!img.empty()) fx->rho.images[e] = img;
            }

    // the same linear data packaged as functor tables for the limit side
    fx->rho_functor_data.source = &fx->pair;
    fx->rho_functor_data.target = &fx->b;
    fx->rho_functor_data.object_map = fx->rho.object_map;
    for (const auto& [e, img] : fx->rho.images) fx->rho_functor_data.terms[1][{e}] = img;

    return fx;
}

std::unique_ptr<TransportFixture> random_transport_fixture(std::uint64_t seed, int up_to) {
    std::mt19937_64 rng(seed);
    auto fx = std::make_unique<TransportFixture>();
    fx->cat = dg_path_category(random_dg_quiver(rng, 3, 5), 2);
    fx->q = identity_functor(fx->cat);

    auto t1 = random_homotopy_tables(fx->q, rng, up_to);
    gauge_twist(fx->q, fx->e, t1, up_to);

    fx->tables = random_homotopy_tables(fx->e, rng, up_to);
    gauge_twist(fx->e, fx->e_tilde, fx->tables, up_to);

    fx->t.F = &fx->e;
    fx->t.G = &fx->e_tilde;
    fx->t.degree = 0;
    fx->t.terms = fx->tables;
    return fx;
}

}  // namespace hms::ainf
