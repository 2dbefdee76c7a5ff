#include "hms/ainf.hpp"

#include <algorithm>
#include <set>

namespace hms::ainf {

Sum normalize(Sum a) {
    std::sort(a.begin(), a.end());
    Sum out;
    for (std::size_t i = 0; i < a.size();) {
        std::size_t j = i;
        while (j < a.size() && a[j] == a[i]) ++j;
        if ((j - i) % 2) out.push_back(a[i]);
        i = j;
    }
    return out;
}

Sum sum_add(Sum a, const Sum& b) {
    a.insert(a.end(), b.begin(), b.end());
    return normalize(std::move(a));
}

int FiniteAInfCategory::hom_dim(int s, int t) const {
    auto it = homs.find({s, t});
    return it == homs.end() ? 0 : static_cast<int>(it->second.size());
}

int FiniteAInfCategory::degree(const Elem& e) const {
    return homs.at({e.src, e.tgt})[e.idx].second & 1;
}

std::vector<Elem> FiniteAInfCategory::hom_elems(int s, int t) const {
    std::vector<Elem> out;
    for (int i = 0; i < hom_dim(s, t); ++i) out.push_back({s, t, i});
    return out;
}

void FiniteAInfCategory::set_mu(int k, std::vector<Elem> key, Sum value) {
    value = normalize(std::move(value));
    if (value.empty()) return;
    if (static_cast<int>(key.size()) != k) throw Error("mu table: key arity mismatch");
    int total = 0;
    for (std::size_t p = 0; p < key.size(); ++p) {
        const auto& e = key[p];
        if (e.idx < 0 || e.idx >= hom_dim(e.src, e.tgt)) throw Error("mu table: bad element");
        if (p + 1 < key.size() && key[p + 1].tgt != e.src)
            throw Error("mu table: inputs not composable");
        total += degree(e);
    }
    int want = (total + 2 - k) & 1;
    for (const auto& o : value) {
        if (o.src != key.back().src || o.tgt != key.front().tgt)
            throw Error("mu table: output endpoints mismatch");
        if (degree(o) != want) throw Error("mu table: output degree violates the A-inf rule");
    }
    mu[k][std::move(key)] = std::move(value);
    max_arity = std::max(max_arity, k);
}

Sum FiniteAInfCategory::apply_mu_elems(int k, const std::vector<Elem>& args) const {
    auto it = mu.find(k);
    if (it == mu.end()) return {};
    auto jt = it->second.find(args);
    return jt == it->second.end() ? Sum{} : jt->second;
}

Sum FiniteAInfCategory::apply_mu(int k, const std::vector<Sum>& args) const {
    Sum acc;
    std::vector<Elem> pick(args.size());
    auto rec = [&](auto&& self, std::size_t p) -> void {
        if (p == args.size()) {
            acc = sum_add(std::move(acc), apply_mu_elems(k, pick));
            return;
        }
        for (const auto& e : args[p]) {
            pick[p] = e;
            self(self, p + 1);
        }
    };
    rec(rec, 0);
    return acc;
}

std::vector<std::vector<Elem>> FiniteAInfCategory::composable(int k) const {
    std::vector<std::vector<Elem>> chains;
    std::vector<Elem> cur(k);
    // build right-to-left: position k-1 is the first morphism
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos < 0) {
            chains.push_back(cur);
            return;
        }
        int need_src = -1;
        if (pos + 1 < k) need_src = cur[pos + 1].tgt;
        for (int s = 0; s < static_cast<int>(objects.size()); ++s) {
            if (need_src >= 0 && s != need_src) continue;
            for (int t = 0; t < static_cast<int>(objects.size()); ++t)
                for (const auto& e : hom_elems(s, t)) {
                    cur[pos] = e;
                    self(self, pos - 1);
                }
        }
    };
    rec(rec, k - 1);
    return chains;
}

void FiniteAInfCategory::validate() const {
    for (const auto& [k, table] : mu)
        for (const auto& [key, value] : table) {
            (void)key;
            (void)value;
            if (k < 1) throw Error("mu table with arity < 1");
        }
}

std::vector<Violation> check_ainf(const FiniteAInfCategory& cat, int up_to) {
    std::vector<Violation> report;
    for (int k = 1; k <= up_to; ++k) {
        for (const auto& chain : cat.composable(k)) {
            Sum defect;
            for (int m = 1; m <= k; ++m)
                for (int start = 0; start + m <= k; ++start) {
                    // inner mu^m on the slice [start, start+m)
                    std::vector<Elem> inner(chain.begin() + start, chain.begin() + start + m);
                    Sum mid = cat.apply_mu_elems(m, inner);
                    for (const auto& e : mid) {
                        std::vector<Elem> outer;
                        outer.insert(outer.end(), chain.begin(), chain.begin() + start);
                        outer.push_back(e);
                        outer.insert(outer.end(), chain.begin() + start + m, chain.end());
                        defect = sum_add(std::move(defect),
                                         cat.apply_mu_elems(k - m + 1, outer));
                    }
                }
            if (!defect.empty()) report.push_back({k, chain, defect});
        }
    }
    return report;
}

void AInfFunctor::set_term(int r, std::vector<Elem> key, Sum value) {
    value = normalize(std::move(value));
    if (value.empty()) return;
    int total = 0;
    for (std::size_t p = 0; p < key.size(); ++p) {
        total += source->degree(key[p]);
        if (p + 1 < key.size() && key[p + 1].tgt != key[p].src)
            throw Error("functor term: inputs not composable");
    }
    int want = (total + 1 - r) & 1;
    for (const auto& o : value) {
        if (o.src != object_map[key.back().src] || o.tgt != object_map[key.front().tgt])
            throw Error("functor term: output endpoints mismatch");
        if (target->degree(o) != want) throw Error("functor term: output degree mismatch");
    }
    terms[r][std::move(key)] = std::move(value);
}

Sum AInfFunctor::apply_elems(int r, const std::vector<Elem>& args) const {
    auto it = terms.find(r);
    if (it == terms.end()) return {};
    auto jt = it->second.find(args);
    return jt == it->second.end() ? Sum{} : jt->second;
}

Sum AInfFunctor::apply(int r, const std::vector<Sum>& args) const {
    Sum acc;
    std::vector<Elem> pick(args.size());
    auto rec = [&](auto&& self, std::size_t p) -> void {
        if (p == args.size()) {
            acc = sum_add(std::move(acc), apply_elems(r, pick));
            return;
        }
        for (const auto& e : args[p]) {
            pick[p] = e;
            self(self, p + 1);
        }
    };
    rec(rec, 0);
    return acc;
}

bool AInfFunctor::is_linear() const {
    for (const auto& [r, table] : terms)
        if (r >= 2 && !table.empty()) return false;
    return true;
}

AInfFunctor identity_functor(const FiniteAInfCategory& cat) {
    AInfFunctor f;
    f.source = &cat;
    f.target = &cat;
    for (int i = 0; i < static_cast<int>(cat.objects.size()); ++i) f.object_map.push_back(i);
    for (int s = 0; s < static_cast<int>(cat.objects.size()); ++s)
        for (int t = 0; t < static_cast<int>(cat.objects.size()); ++t)
            for (const auto& e : cat.hom_elems(s, t)) f.set_term(1, {e}, {e});
    return f;
}

namespace {

/// Ordered partitions of n into parts >= 1.
std::vector<std::vector<int>> partitions(int n, int parts) {
    std::vector<std::vector<int>> out;
    if (parts == 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur(parts);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == parts) {
            if (left == 0) out.push_back(cur);
            return;
        }
        for (int v = 1; v <= left - (parts - pos - 1); ++v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, n);
    return out;
}

std::vector<Elem> slice(const std::vector<Elem>& v, int from, int len) {
    return std::vector<Elem>(v.begin() + from, v.begin() + from + len);
}

}  // namespace

AInfFunctor compose(const AInfFunctor& G, const AInfFunctor& F, int up_to) {
    if (F.target != G.source) throw Error("compose: functor endpoints mismatch");
    AInfFunctor out;
    out.source = F.source;
    out.target = G.target;
    for (int o : F.object_map) out.object_map.push_back(G.object_map[o]);

    for (int s = 1; s <= up_to; ++s)
        for (const auto& chain : F.source->composable(s)) {
            Sum acc;
            for (int r = 1; r <= s; ++r)
                for (const auto& part : partitions(s, r)) {
                    // part[0] consumes the leftmost group
                    std::vector<Sum> groups;
                    int at = 0;
                    bool dead = false;
                    for (int g = 0; g < r; ++g) {
                        Sum img = F.apply_elems(part[g], slice(chain, at, part[g]));
                        at += part[g];
                        if (img.empty()) { dead = true; break; }
                        groups.push_back(std::move(img));
                    }
                    if (dead) continue;
                    acc = sum_add(std::move(acc), G.apply(r, groups));
                }
            if (!acc.empty()) out.set_term(s, chain, std::move(acc));
        }
    return out;
}

std::vector<Violation> check_functor(const AInfFunctor& F, int up_to) {
    std::vector<Violation> report;
    const auto& A = *F.source;
    const auto& B = *F.target;
    for (int k = 1; k <= up_to; ++k)
        for (const auto& chain : A.composable(k)) {
            Sum lhs;
            for (int r = 1; r <= k; ++r)
                for (const auto& part : partitions(k, r)) {
                    std::vector<Sum> groups;
                    int at = 0;
                    bool dead = false;
                    for (int g = 0; g < r; ++g) {
                        Sum img = F.apply_elems(part[g], slice(chain, at, part[g]));
                        at += part[g];
                        if (img.empty()) { dead = true; break; }
                        groups.push_back(std::move(img));
                    }
                    if (dead) continue;
                    lhs = sum_add(std::move(lhs), B.apply_mu(r, groups));
                }
            Sum rhs;
            for (int m = 1; m <= k; ++m)
                for (int start = 0; start + m <= k; ++start) {
                    Sum mid = A.apply_mu_elems(m, slice(chain, start, m));
                    for (const auto& e : mid) {
                        std::vector<Elem> outer;
                        outer.insert(outer.end(), chain.begin(), chain.begin() + start);
                        outer.push_back(e);
                        outer.insert(outer.end(), chain.begin() + start + m, chain.end());
                        rhs = sum_add(std::move(rhs), F.apply_elems(k - m + 1, outer));
                    }
                }
            Sum defect = sum_add(std::move(lhs), rhs);
            if (!defect.empty()) report.push_back({k, chain, defect});
        }
    return report;
}

Sum PreNaturalTransformation::apply_elems(int r, const std::vector<Elem>& args) const {
    auto it = terms.find(r);
    if (it == terms.end()) return {};
    auto jt = it->second.find(args);
    return jt == it->second.end() ? Sum{} : jt->second;
}

PreNaturalTransformation mu1_fun(const PreNaturalTransformation& T, int up_to) {
    const auto& A = *T.F->source;
    const auto& B = *T.F->target;
    PreNaturalTransformation out;
    out.F = T.F;
    out.G = T.G;
    out.degree = (T.degree + 1) & 1;

    // order 0: mu1_B of T0
    for (const auto& [obj, sum] : T.t0) {
        Sum v = B.apply_mu(1, {sum});
        if (!v.empty()) out.t0[obj] = std::move(v);
    }

    bool has_t0 = false;
    for (const auto& [obj, sum] : T.t0) has_t0 |= !sum.empty();

    for (int r = 1; r <= up_to; ++r)
        for (const auto& chain : A.composable(r)) {
            Sum acc;

            // sum 1: mu_B of G..G T F..F groups
            for (int j = 1; j <= r + (has_t0 ? 1 : 0); ++j)
                for (int i = 1; i <= j; ++i) {
                    // sizes s_j .. s_1 with s_i >= 0 (T slot), others >= 1
                    int others = j - 1;
                    for (int si = has_t0 ? 0 : 1; si <= r - others; ++si) {
                        for (const auto& part : partitions(r - si, others)) {
                            // groups left to right: s_j .. s_1; T sits at the
                            // i-th group counted from the right
                            std::vector<int> sizes;
                            int pos_from_left = j - i;  // index of the T group
                            int pi = 0;
                            for (int g = 0; g < j; ++g) {
                                if (g == pos_from_left) sizes.push_back(si);
                                else sizes.push_back(part[pi++]);
                            }
                            std::vector<Sum> groups;
                            int at = 0;
                            bool dead = false;
                            for (int g = 0; g < j && !dead; ++g) {
                                Sum img;
                                if (g == pos_from_left) {
                                    if (sizes[g] == 0) {
                                        // T0 at the object between the groups:
                                        // the target of the last letter the
                                        // F side consumed
                                        int p_letters = 0;
                                        for (int h = g + 1; h < j; ++h) p_letters += sizes[h];
                                        int obj = p_letters == 0
                                                      ? chain.back().src
                                                      : chain[r - p_letters].tgt;
                                        auto it = T.t0.find(obj);
                                        if (it != T.t0.end()) img = it->second;
                                    } else {
                                        img = T.apply_elems(sizes[g], slice(chain, at, sizes[g]));
                                    }
                                } else if (g < pos_from_left) {
                                    img = T.G->apply_elems(sizes[g], slice(chain, at, sizes[g]));
                                } else {
                                    img = T.F->apply_elems(sizes[g], slice(chain, at, sizes[g]));
                                }
                                at += sizes[g];
                                if (img.empty()) dead = true;
                                else groups.push_back(std::move(img));
                            }
                            if (dead) continue;
                            acc = sum_add(std::move(acc), B.apply_mu(j, groups));
                        }
                    }
                }

            // sum 2: T applied around inner mu_A
            for (int m = 1; m <= r; ++m)
                for (int start = 0; start + m <= r; ++start) {
                    Sum mid = A.apply_mu_elems(m, slice(chain, start, m));
                    for (const auto& e : mid) {
                        std::vector<Elem> outer;
                        outer.insert(outer.end(), chain.begin(), chain.begin() + start);
                        outer.push_back(e);
                        outer.insert(outer.end(), chain.begin() + start + m, chain.end());
                        acc = sum_add(std::move(acc), T.apply_elems(r - m + 1, outer));
                    }
                }

            if (!acc.empty()) out.terms[r][chain] = std::move(acc);
        }
    return out;
}

PreNaturalTransformation functor_difference(const AInfFunctor& F, const AInfFunctor& G,
                                            int up_to) {
    if (F.source != G.source || F.target != G.target || F.object_map != G.object_map)
        throw Error("functor difference needs parallel functors");
    PreNaturalTransformation D;
    D.F = &F;
    D.G = &G;
    D.degree = 1;
    for (int r = 1; r <= up_to; ++r)
        for (const auto& chain : F.source->composable(r)) {
            Sum v = sum_add(F.apply_elems(r, chain), G.apply_elems(r, chain));
            if (!v.empty()) D.terms[r][chain] = std::move(v);
        }
    return D;
}

// ---- limit category ----

namespace {

struct LimitMap {
    const FiniteAInfCategory* C;
    const FiniteAInfCategory* D;
    const AInfFunctor* E;

    int c_dim(int s, int t) const { return C->hom_dim(s, t); }
    int d_src(int s) const { return E->object_map[s]; }

    Elem embed_c(const Elem& e) const { return {e.src, e.tgt, e.idx}; }
    Elem embed_d(int s, int t, const Elem& e) const {
        return {s, t, c_dim(s, t) + e.idx};
    }
    bool is_c(const FiniteAInfCategory&, const Elem& e) const { return e.idx < c_dim(e.src, e.tgt); }
    Elem to_c(const Elem& e) const { return e; }
    Elem to_d(const Elem& e) const {
        return {d_src(e.src), d_src(e.tgt), e.idx - c_dim(e.src, e.tgt)};
    }

    Sum embed_c_sum(const Sum& sum) const {
        Sum out;
        for (const auto& e : sum) out.push_back(embed_c(e));
        return normalize(std::move(out));
    }
    Sum embed_d_sum(int s, int t, const Sum& sum) const {
        Sum out;
        for (const auto& e : sum) out.push_back(embed_d(s, t, e));
        return normalize(std::move(out));
    }
};

/// The Delta sum: all ways to feed the C inputs through copies of the
/// functor and compose in D with the final D input.
Sum limit_delta(const LimitMap& lm, const std::vector<Elem>& cs, const Sum& d1) {
    const int k1 = static_cast<int>(cs.size());  // = k - 1 inputs from C
    Sum acc;
    for (int j = 2; j <= k1 + 1; ++j) {
        for (const auto& part : partitions(k1, j - 1)) {
            std::vector<Sum> groups;
            int at = 0;
            bool dead = false;
            for (int g = 0; g < j - 1; ++g) {
                Sum img = lm.E->apply_elems(part[g], slice(cs, at, part[g]));
                at += part[g];
                if (img.empty()) { dead = true; break; }
                groups.push_back(std::move(img));
            }
            if (dead) continue;
            groups.push_back(d1);
            acc = sum_add(std::move(acc), lm.D->apply_mu(j, groups));
        }
    }
    return acc;
}

}  // namespace

FiniteAInfCategory limit_category(const AInfFunctor& E, int up_to) {
    const auto& C = *E.source;
    const auto& D = *E.target;
    LimitMap lm{&C, &D, &E};

    FiniteAInfCategory L;
    L.objects = C.objects;
    for (int s = 0; s < static_cast<int>(C.objects.size()); ++s)
        for (int t = 0; t < static_cast<int>(C.objects.size()); ++t) {
            std::vector<std::pair<std::string, int>> basis;
            auto itc = C.homs.find({s, t});
            if (itc != C.homs.end())
                for (const auto& [name, deg] : itc->second) basis.push_back({"c:" + name, deg & 1});
            auto itd = D.homs.find({lm.d_src(s), lm.d_src(t)});
            if (itd != D.homs.end())
                for (const auto& [name, deg] : itd->second)
                    basis.push_back({"d:" + name, (deg + 1) & 1});  // the shifted summand
            if (!basis.empty()) L.homs[{s, t}] = std::move(basis);
        }

    // arity 1
    for (int s = 0; s < static_cast<int>(C.objects.size()); ++s)
        for (int t = 0; t < static_cast<int>(C.objects.size()); ++t) {
            for (const auto& c : C.hom_elems(s, t)) {
                Sum v = lm.embed_c_sum(C.apply_mu_elems(1, {c}));
                v = sum_add(std::move(v), lm.embed_d_sum(s, t, E.apply_elems(1, {c})));
                if (!v.empty()) L.set_mu(1, {lm.embed_c(c)}, std::move(v));
            }
            for (const auto& d : D.hom_elems(lm.d_src(s), lm.d_src(t))) {
                Sum v = lm.embed_d_sum(s, t, D.apply_mu_elems(1, {d}));
                if (!v.empty()) L.set_mu(1, {lm.embed_d(s, t, d)}, std::move(v));
            }
        }

    // arity >= 2: all-C keys and (c, ..., c, d) keys
    for (int k = 2; k <= up_to; ++k) {
        for (const auto& cs : C.composable(k)) {
            int s = cs.back().src, t = cs.front().tgt;
            Sum v = lm.embed_c_sum(C.apply_mu_elems(k, cs));
            v = sum_add(std::move(v), lm.embed_d_sum(s, t, E.apply_elems(k, cs)));
            if (!v.empty()) {
                std::vector<Elem> key;
                for (const auto& c : cs) key.push_back(lm.embed_c(c));
                L.set_mu(k, std::move(key), std::move(v));
            }
        }
        for (const auto& cs : C.composable(k - 1)) {
            int mid = cs.back().src;  // source object of the last C input
            int t = cs.front().tgt;
            for (int s = 0; s < static_cast<int>(C.objects.size()); ++s) {
                for (const auto& d : D.hom_elems(lm.d_src(s), lm.d_src(mid))) {
                    Sum v = limit_delta(lm, cs, {d});
                    if (v.empty()) continue;
                    std::vector<Elem> key;
                    for (const auto& c : cs) key.push_back(lm.embed_c(c));
                    key.push_back(lm.embed_d(s, mid, d));
                    L.set_mu(k, std::move(key), lm.embed_d_sum(s, t, v));
                }
            }
        }
    }
    L.max_arity = std::max(L.max_arity, up_to);
    return L;
}

// ---- kernel category ----

namespace {

struct KernelBasis {
    std::vector<Elem> a_elems;                       // column order
    std::vector<std::pair<std::size_t, std::vector<F2>>> vectors;  // free col + vector
};

}  // namespace

FiniteAInfCategory kernel_category(const FiniteAInfCategory& A, const LinearFunctorData& rho,
                                   int up_to) {
    const auto& B = *rho.target;
    std::map<std::pair<int, int>, KernelBasis> kernels;

    for (int s = 0; s < static_cast<int>(A.objects.size()); ++s)
        for (int t = 0; t < static_cast<int>(A.objects.size()); ++t) {
            auto elems = A.hom_elems(s, t);
            int bs = rho.object_map[s], bt = rho.object_map[t];
            int bdim = B.hom_dim(bs, bt);
            if (elems.empty() && bdim == 0) continue;
            SparseMatrix<F2> mat(bdim, elems.size());
            for (std::size_t c = 0; c < elems.size(); ++c) {
                auto it = rho.images.find(elems[c]);
                if (it == rho.images.end()) continue;
                for (const auto& o : it->second) {
                    if (o.src != bs || o.tgt != bt)
                        throw Error("linear data: image endpoints mismatch");
                    mat.add(o.idx, c, F2(1));
                }
            }
            if (rank(mat) != static_cast<std::size_t>(bdim))
                throw NotSurjective("linear term is not surjective on this hom");
            KernelBasis kb;
            kb.a_elems = elems;
            kb.vectors = kernel_basis_indexed(mat);
            kernels[{s, t}] = std::move(kb);
        }

    FiniteAInfCategory K;
    K.objects = A.objects;
    for (const auto& [pair, kb] : kernels) {
        std::vector<std::pair<std::string, int>> basis;
        for (std::size_t i = 0; i < kb.vectors.size(); ++i) {
            // kernel vectors are degree-homogeneous because the linear term
            // preserves degree
            int deg = -1;
            for (std::size_t c = 0; c < kb.a_elems.size(); ++c) {
                if (kb.vectors[i].second[c] == F2(0)) continue;
                int dc = A.degree(kb.a_elems[c]);
                if (deg < 0) deg = dc;
                else if (deg != dc)
                    throw Error("kernel vector mixes degrees");
            }
            basis.push_back({"k" + std::to_string(i), deg < 0 ? 0 : deg});
        }
        if (!basis.empty()) K.homs[pair] = std::move(basis);
    }

    auto expand = [&](const Elem& ke) -> Sum {
        const auto& kb = kernels.at({ke.src, ke.tgt});
        Sum out;
        const auto& vec = kb.vectors[ke.idx].second;
        for (std::size_t c = 0; c < kb.a_elems.size(); ++c)
            if (vec[c] == F2(1)) out.push_back(kb.a_elems[c]);
        return normalize(std::move(out));
    };
    auto contract = [&](int s, int t, const Sum& a_sum) -> Sum {
        auto it = kernels.find({s, t});
        if (it == kernels.end()) {
            if (!a_sum.empty()) throw Error("kernel category: output outside the kernel");
            return {};
        }
        const auto& kb = it->second;
        std::vector<F2> v(kb.a_elems.size(), F2(0));
        for (const auto& e : a_sum) {
            auto pos = std::find(kb.a_elems.begin(), kb.a_elems.end(), e);
            v[pos - kb.a_elems.begin()] = F2(1);
        }
        Sum out;
        std::vector<F2> recon(kb.a_elems.size(), F2(0));
        for (std::size_t i = 0; i < kb.vectors.size(); ++i) {
            if (v[kb.vectors[i].first] == F2(0)) continue;
            out.push_back({s, t, static_cast<int>(i)});
            for (std::size_t c = 0; c < recon.size(); ++c)
                recon[c] += kb.vectors[i].second[c];
        }
        if (recon != v) throw Error("kernel category: mu does not preserve the kernel");
        return normalize(std::move(out));
    };

    for (int k = 1; k <= up_to; ++k)
        for (const auto& chain : K.composable(k)) {
            std::vector<Sum> expanded;
            for (const auto& ke : chain) expanded.push_back(expand(ke));
            Sum out = A.apply_mu(k, expanded);
            Sum kout = contract(chain.back().src, chain.front().tgt, out);
            if (!kout.empty()) K.set_mu(k, chain, std::move(kout));
        }
    return K;
}

FiniteAInfCategory kernel_category(const FiniteAInfCategory& A, const AInfFunctor& rho,
                                   int up_to) {
    if (!rho.is_linear()) throw NotLinear("kernel construction needs a linear functor");
    LinearFunctorData data;
    data.source = rho.source;
    data.target = rho.target;
    data.object_map = rho.object_map;
    auto it = rho.terms.find(1);
    if (it != rho.terms.end())
        for (const auto& [key, value] : it->second) data.images[key[0]] = value;
    return kernel_category(A, data, up_to);
}

std::pair<std::size_t, std::size_t> hom_cohomology(const FiniteAInfCategory& cat, int s,
                                                   int t) {
    auto elems = cat.hom_elems(s, t);
    std::vector<Elem> even, odd;
    for (const auto& e : elems) (cat.degree(e) == 0 ? even : odd).push_back(e);

    auto build = [&](const std::vector<Elem>& from, const std::vector<Elem>& to) {
        SparseMatrix<F2> mat(to.size(), from.size());
        for (std::size_t c = 0; c < from.size(); ++c)
            for (const auto& o : cat.apply_mu_elems(1, {from[c]})) {
                auto pos = std::find(to.begin(), to.end(), o);
                if (pos == to.end()) throw Error("differential changes parity inconsistently");
                mat.add(pos - to.begin(), c, F2(1));
            }
        return mat;
    };
    auto d_even = build(even, odd);
    auto d_odd = build(odd, even);
    std::size_t h_even = even.size() - rank(d_even) - rank(d_odd);
    std::size_t h_odd = odd.size() - rank(d_odd) - rank(d_even);
    return {h_even, h_odd};
}

std::vector<CyclicChain> hochschild_b(const FiniteAInfCategory& cat,
                                      const CyclicChain& chain) {
    const auto& w = chain.letters;
    const int d = static_cast<int>(w.size());
    if (d == 0) throw NotCyclicallyComposable("empty chain");
    for (int i = 0; i + 1 < d; ++i)
        if (w[i].tgt != w[i + 1].src)
            throw NotCyclicallyComposable("letters do not compose");
    if (w.back().tgt != w.front().src)
        throw NotCyclicallyComposable("chain does not close up");

    std::set<std::vector<Elem>> acc;
    auto toggle = [&](std::vector<Elem> v) {
        auto it = acc.find(v);
        if (it == acc.end()) acc.insert(std::move(v));
        else acc.erase(it);
    };

    // inner mu on letters a_(i+1) .. a_(i+j), keeping the distinguished a_d
    for (int j = 1; j <= d - 1; ++j)
        for (int i = 0; i + j <= d - 1; ++i) {
            // letters w[i..i+j) in composition order; mu key is reversed
            std::vector<Elem> key(w.rend() - i - j, w.rend() - i);
            Sum mid = cat.apply_mu_elems(j, key);
            for (const auto& e : mid) {
                std::vector<Elem> nw(w.begin(), w.begin() + i);
                nw.push_back(e);
                nw.insert(nw.end(), w.begin() + i + j, w.end());
                toggle(std::move(nw));
            }
        }

    // wrap-around mu eating the distinguished letter
    for (int j = 0; j <= d - 1; ++j)
        for (int i = 0; i + j <= d - 1; ++i) {
            // inputs right to left: a_(i+j+1), ..., a_d, a_1, ..., a_i
            std::vector<Elem> key;
            for (int p = i; p >= 1; --p) key.push_back(w[p - 1]);   // a_i .. a_1
            key.push_back(w[d - 1]);                                // a_d
            for (int p = d - 1; p >= i + j + 1; --p) key.push_back(w[p - 1]);
            Sum mid = cat.apply_mu_elems(d - j, key);
            for (const auto& e : mid) {
                std::vector<Elem> nw(w.begin() + i, w.begin() + i + j);
                nw.push_back(e);  // the new distinguished letter
                toggle(std::move(nw));
            }
        }

    std::vector<CyclicChain> out;
    for (const auto& v : acc) out.push_back({v});
    return out;
}

AInfFunctor transport_functor(const AInfFunctor& E, const AInfFunctor& Etilde,
                              const AInfFunctor& Q, const PreNaturalTransformation& T,
                              const FiniteAInfCategory& LE, const FiniteAInfCategory& LEt,
                              int up_to) {
    for (const auto& [obj, sum] : T.t0)
        if (!sum.empty()) throw HomotopyMismatch("homotopy must have vanishing zeroth term");

    auto EQ = compose(Etilde, Q, up_to);
    if (EQ.object_map != E.object_map)
        throw HomotopyMismatch("the functors act differently on objects");

    // precondition: (Etilde . Q) - E = mu1_fun(T) at every checked arity
    auto dT = mu1_fun(T, up_to);
    for (int r = 1; r <= up_to; ++r)
        for (const auto& chain : E.source->composable(r)) {
            Sum lhs = sum_add(EQ.apply_elems(r, chain), E.apply_elems(r, chain));
            if (lhs != dT.apply_elems(r, chain))
                throw HomotopyMismatch("difference is not the differential of the homotopy");
        }

    const auto& C = *E.source;
    const auto& D = *E.target;
    LimitMap from{&C, &D, &E};
    LimitMap to{Q.target, &D, &Etilde};

    AInfFunctor P;
    P.source = &LE;
    P.target = &LEt;
    P.object_map = Q.object_map;

    auto to_c_embed = [&](const Sum& s) {
        Sum out;
        for (const auto& e : s) out.push_back(to.embed_c(e));
        return normalize(std::move(out));
    };
    auto to_d_embed = [&](int s_obj, int t_obj, const Sum& sum) {
        Sum out;
        for (const auto& e : sum) out.push_back(to.embed_d(s_obj, t_obj, e));
        return normalize(std::move(out));
    };

    // first order: P1(c, d) = (Q1 c, d + T1 c)
    for (int s = 0; s < static_cast<int>(C.objects.size()); ++s)
        for (int t = 0; t < static_cast<int>(C.objects.size()); ++t) {
            for (const auto& c : C.hom_elems(s, t)) {
                int qs = Q.object_map[s], qt = Q.object_map[t];
                Sum v = to_c_embed(Q.apply_elems(1, {c}));
                v = sum_add(std::move(v), to_d_embed(qs, qt, T.apply_elems(1, {c})));
                if (!v.empty()) P.set_term(1, {from.embed_c(c)}, std::move(v));
            }
            for (const auto& d : D.hom_elems(from.d_src(s), from.d_src(t))) {
                int qs = Q.object_map[s], qt = Q.object_map[t];
                Sum v = to_d_embed(qs, qt, {d});
                P.set_term(1, {from.embed_d(s, t, d)}, std::move(v));
            }
        }

    // higher orders: all-C keys get (Q^k, T^k); (c,...,c,d) keys get the
    // mixed composition sum
    for (int k = 2; k <= up_to; ++k) {
        for (const auto& cs : C.composable(k)) {
            int s = cs.back().src, t = cs.front().tgt;
            int qs = Q.object_map[s], qt = Q.object_map[t];
            Sum v = to_c_embed(Q.apply_elems(k, cs));
            v = sum_add(std::move(v), to_d_embed(qs, qt, T.apply_elems(k, cs)));
            if (v.empty()) continue;
            std::vector<Elem> key;
            for (const auto& c : cs) key.push_back(from.embed_c(c));
            P.set_term(k, std::move(key), std::move(v));
        }
        for (const auto& cs : C.composable(k - 1)) {
            int mid = cs.back().src;
            int t = cs.front().tgt;
            const int k1 = k - 1;
            for (int s = 0; s < static_cast<int>(C.objects.size()); ++s) {
                for (const auto& d : D.hom_elems(from.d_src(s), from.d_src(mid))) {
                    Sum acc;
                    for (int j = 2; j <= k1 + 1; ++j)
                        for (int i = 1; i <= j - 1; ++i)
                            for (const auto& part : partitions(k1, j - 1)) {
                                // groups left to right: slot j-1 .. slot 1;
                                // the i-th slot from the right holds T
                                std::vector<Sum> groups;
                                int at = 0;
                                bool dead = false;
                                for (int g = 0; g < j - 1 && !dead; ++g) {
                                    int slot_from_right = j - 1 - g;
                                    auto in = slice(cs, at, part[g]);
                                    Sum img;
                                    if (slot_from_right > i) img = EQ.apply_elems(part[g], in);
                                    else if (slot_from_right == i) img = T.apply_elems(part[g], in);
                                    else img = E.apply_elems(part[g], in);
                                    at += part[g];
                                    if (img.empty()) dead = true;
                                    else groups.push_back(std::move(img));
                                }
                                if (dead) continue;
                                groups.push_back({d});
                                acc = sum_add(std::move(acc), D.apply_mu(j, groups));
                            }
                    if (acc.empty()) continue;
                    std::vector<Elem> key;
                    for (const auto& c : cs) key.push_back(from.embed_c(c));
                    key.push_back(from.embed_d(s, mid, d));
                    int qs = Q.object_map[s], qt = Q.object_map[t];
                    P.set_term(k, std::move(key), to_d_embed(qs, qt, acc));
                }
            }
        }
    }
    return P;
}

}  // namespace hms::ainf
