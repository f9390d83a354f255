#include "coarsegeom/tree_boundary.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "coarsegeom/metric_space.hpp" // validation_error

namespace coarsegeom {

bool TruncatedTree::is_ancestor(TVertex a, TVertex d) const {
    while (depth_[d] > depth_[a]) d = parent_[d];
    return d == a;
}

TVertex TruncatedTree::add_vertex(TVertex parent, std::uint32_t declared_degree) {
    if (parent >= parent_.size())
        throw validation_error("unknown-vertex", "parent out of range");
    TVertex v = static_cast<TVertex>(parent_.size());
    parent_.push_back(parent);
    children_.emplace_back();
    depth_.push_back(depth_[parent] + 1);
    declared_degree_.push_back(declared_degree);
    children_[parent].push_back(v);
    max_depth_ = std::max(max_depth_, depth_.back());
    return v;
}

TruncatedTree TruncatedTree::single_root(std::uint32_t declared_degree) {
    TruncatedTree t;
    t.declared_degree_[0] = declared_degree;
    return t;
}

std::uint32_t EntwinedFamily::member_degree(TVertex v, std::uint32_t i) const {
    if (level[v] > i) return 0;
    std::uint32_t d = v == ambient.root() ? 0 : 1;
    for (TVertex c : ambient.children(v))
        if (level[c] <= i) ++d;
    return d;
}

EntwinedFamily::Flags EntwinedFamily::verify() const {
    Flags f;
    const std::size_t n = ambient.size();
    if (level.size() != n || levels == 0) {
        f.note = "level vector does not cover the tree";
        return f;
    }
    f.strongly_entwined = true;
    f.filling = true;
    if (level[0] != 1) {
        f.filling = false;
        f.note = "root must lie in the first member";
    }
    for (TVertex v = 0; v < n; ++v) {
        if (level[v] < 1 || level[v] > levels) {
            f.filling = false; // an edge escapes every member
            f.note = "vertex " + std::to_string(v) + " lies in no member";
        }
        if (v != 0 && level[ambient.parent(v)] > level[v]) {
            f.filling = false;
            f.note = "member containing vertex " + std::to_string(v) + " is not connected";
        }
    }
    std::size_t skipped = 0;
    for (TVertex v = 0; v < n && f.strongly_entwined; ++v) {
        if (!ambient.fully_materialised(v)) {
            ++skipped;
            continue;
        }
        for (std::uint32_t i = level[v]; i < levels; ++i)
            if (member_degree(v, i + 1) <= member_degree(v, i)) {
                f.strongly_entwined = false;
                f.note = "no degree growth at vertex " + std::to_string(v) +
                         " between members " + std::to_string(i) + " and " +
                         std::to_string(i + 1);
                break;
            }
    }
    if (f.note.empty())
        f.note = "skipped " + std::to_string(skipped) + " frontier vertices";
    return f;
}

namespace {

// materialised children of v inside member T_i
std::vector<TVertex> domain_children(const EntwinedFamily& fam, std::uint32_t i, TVertex v) {
    std::vector<TVertex> out;
    for (TVertex c : fam.ambient.children(v))
        if (fam.level[c] <= i) out.push_back(c);
    return out;
}

void sort_bfs(const TruncatedTree& t, std::vector<TVertex>& vs) {
    std::sort(vs.begin(), vs.end(), [&](TVertex a, TVertex b) {
        return std::make_pair(t.depth_of(a), a) < std::make_pair(t.depth_of(b), b);
    });
}

} // namespace

AuxiliaryCheck is_auxiliary(const EntwinedFamily& fam, std::uint32_t i, TVertex local_root,
                            const std::vector<TVertex>& S,
                            const std::vector<TVertex>& root_children) {
    AuxiliaryCheck out;
    const TruncatedTree& t = fam.ambient;
    std::set<TVertex> in_s(S.begin(), S.end());
    if (!in_s.count(local_root)) {
        out.violation = "subtree misses its local root";
        return out;
    }
    std::set<TVertex> rc(root_children.begin(), root_children.end());
    for (TVertex v : S) {
        if (v == local_root) continue;
        if (fam.level[v] > i || !t.is_ancestor(local_root, v)) {
            out.violation = "vertex outside the domain";
            out.witness = v;
            return out;
        }
        TVertex p = t.parent(v);
        if (p == local_root) {
            if (!rc.count(v)) {
                out.violation = "root child outside the domain child list";
                out.witness = v;
                return out;
            }
        } else if (!in_s.count(p)) {
            out.violation = "subtree is not connected";
            out.witness = v;
            return out;
        }
    }
    for (TVertex c : root_children)
        if (!in_s.count(c)) {
            out.violation = "unoccupied child of the local root";
            out.witness = c;
            return out;
        }
    for (TVertex v : S) {
        if (v == local_root) continue;
        bool open = !t.fully_materialised(v); // declared-degree slack is unoccupied
        if (!open)
            for (TVertex c : domain_children(fam, i, v))
                if (!in_s.count(c)) {
                    open = true;
                    break;
                }
        if (!open) {
            out.violation = "vertex with every child occupied";
            out.witness = v;
            return out;
        }
    }
    out.ok = true;
    return out;
}

AuxiliarySubtree find_auxiliary_with_open_ends(const EntwinedFamily& fam, std::uint32_t i,
                                               TVertex local_root,
                                               const std::vector<TVertex>& root_children,
                                               std::size_t k) {
    const TruncatedTree& t = fam.ambient;
    if (k < root_children.size())
        throw validation_error("bad-count", "k below the local root degree",
                               std::to_string(k));
    AuxiliarySubtree s;
    s.local_root = local_root;
    s.vertices.push_back(local_root);
    std::set<TVertex> in_s{local_root};
    for (TVertex c : root_children) {
        s.vertices.push_back(c);
        s.open_ends.push_back(c);
        in_s.insert(c);
    }
    while (s.open_ends.size() < k) {
        // earliest open end, BFS-then-child-order, that can donate a child and
        // keep an unoccupied one
        std::vector<TVertex> order = s.open_ends;
        sort_bfs(t, order);
        bool attached = false;
        for (TVertex w : order) {
            auto dc = domain_children(fam, i, w);
            std::vector<TVertex> unocc;
            for (TVertex c : dc)
                if (!in_s.count(c)) unocc.push_back(c);
            if (unocc.empty()) continue;
            bool keeps_open = unocc.size() >= 2 || !t.fully_materialised(w);
            if (!keeps_open) continue;
            TVertex c = unocc.front();
            // the new open end needs an unoccupied child of its own
            if (t.fully_materialised(c) && domain_children(fam, i, c).empty()) continue;
            s.vertices.push_back(c);
            s.open_ends.push_back(c);
            in_s.insert(c);
            attached = true;
            break;
        }
        if (!attached)
            throw validation_error("exhausted", "materialisation exhausted while growing",
                                   std::to_string(local_root));
    }
    sort_bfs(t, s.open_ends);
    return s;
}

namespace {

struct PhiBuilder {
    const EntwinedFamily& F;
    const EntwinedFamily& G;
    VertexBijection bij;

    PhiBuilder(const EntwinedFamily& f, const EntwinedFamily& g) : F(f), G(g) {
        bij.from = &f;
        bij.to = &g;
        bij.forward.assign(f.ambient.size(), kNoVertex);
        bij.inverse.assign(g.ambient.size(), kNoVertex);
        bij.forward[0] = 0;
        bij.inverse[0] = 0;
    }

    void frontier(TVertex v) { bij.frontier.push_back(v); }

    static AuxiliarySubtree trivial_aux(const TruncatedTree& t, TVertex r,
                                        const std::vector<TVertex>& rc) {
        AuxiliarySubtree s;
        s.local_root = r;
        s.vertices.push_back(r);
        s.vertices.insert(s.vertices.end(), rc.begin(), rc.end());
        s.open_ends = rc;
        sort_bfs(t, s.open_ends);
        return s;
    }

    void pair_domains(std::uint32_t i, TVertex r, TVertex rp, std::vector<TVertex> rc,
                      std::vector<TVertex> rcp) {
        if (rc.empty() && rcp.empty()) {
            if (!F.ambient.fully_materialised(r) || !G.ambient.fully_materialised(rp))
                frontier(r);
            return;
        }
        if (rc.empty() || rcp.empty()) {
            frontier(r);
            return;
        }
        const std::size_t k = std::max(rc.size(), rcp.size());
        AuxiliarySubtree S, Sp;
        try {
            if (rc.size() >= rcp.size()) {
                S = trivial_aux(F.ambient, r, rc);
                Sp = find_auxiliary_with_open_ends(G, i, rp, rcp, k);
            } else {
                Sp = trivial_aux(G.ambient, rp, rcp);
                S = find_auxiliary_with_open_ends(F, i, r, rc, k);
            }
        } catch (const validation_error&) {
            frontier(r);
            return;
        }
        auto ca = is_auxiliary(F, i, r, S.vertices, rc);
        auto cb = is_auxiliary(G, i, rp, Sp.vertices, rcp);
        if (!ca.ok || !cb.ok) { // only truncation can cause this
            frontier(r);
            return;
        }
        for (std::size_t x = 0; x < k; ++x) {
            bij.forward[S.open_ends[x]] = Sp.open_ends[x];
            bij.inverse[Sp.open_ends[x]] = S.open_ends[x];
        }
        bij.pairings.push_back({S, Sp, i});
        std::set<TVertex> in_s(S.vertices.begin(), S.vertices.end());
        std::set<TVertex> in_sp(Sp.vertices.begin(), Sp.vertices.end());
        for (std::size_t x = 0; x < k; ++x) {
            TVertex v = S.open_ends[x], vp = Sp.open_ends[x];
            std::vector<TVertex> cv, cvp;
            for (TVertex c : domain_children(F, i, v))
                if (!in_s.count(c)) cv.push_back(c);
            for (TVertex c : domain_children(G, i, vp))
                if (!in_sp.count(c)) cvp.push_back(c);
            pair_domains(i, v, vp, cv, cvp);
        }
    }

    void run() {
        pair_domains(1, 0, 0, domain_children(F, 1, 0), domain_children(G, 1, 0));
        for (std::uint32_t i = 2; i <= F.levels; ++i) {
            const std::size_t n = F.ambient.size();
            for (TVertex v = 0; v < n; ++v) {
                if (bij.forward[v] == kNoVertex || F.level[v] > i - 1) continue;
                TVertex vp = bij.forward[v];
                std::vector<TVertex> rc, rcp;
                for (TVertex c : F.ambient.children(v))
                    if (F.level[c] == i) rc.push_back(c);
                for (TVertex c : G.ambient.children(vp))
                    if (G.level[c] == i) rcp.push_back(c);
                if (rc.empty() && rcp.empty() && F.ambient.fully_materialised(v) &&
                    G.ambient.fully_materialised(vp))
                    continue;
                pair_domains(i, v, vp, rc, rcp);
            }
        }
        std::sort(bij.frontier.begin(), bij.frontier.end());
        bij.frontier.erase(std::unique(bij.frontier.begin(), bij.frontier.end()),
                           bij.frontier.end());
    }
};

} // namespace

VertexBijection build_phi(const EntwinedFamily& family, const EntwinedFamily& family_p) {
    if (family.levels != family_p.levels)
        throw validation_error("level-mismatch", "families must have the same member count");
    auto fa = family.verify();
    auto fb = family_p.verify();
    if (!fa.strongly_entwined || !fa.filling)
        throw validation_error("bad-family", "source family flags: " + fa.note);
    if (!fb.strongly_entwined || !fb.filling)
        throw validation_error("bad-family", "target family flags: " + fb.note);
    PhiBuilder b(family, family_p);
    b.run();
    return b.bij;
}

PhiReport verify_phi(const VertexBijection& bij) {
    PhiReport rep;
    const EntwinedFamily &F = *bij.from, &G = *bij.to;
    const std::size_t n = F.ambient.size(), m = G.ambient.size();

    rep.bijective = bij.forward[0] == 0 && bij.inverse[0] == 0;
    for (TVertex v = 0; v < n && rep.bijective; ++v)
        if (bij.forward[v] != kNoVertex && bij.inverse[bij.forward[v]] != v)
            rep.bijective = false;
    for (TVertex w = 0; w < m && rep.bijective; ++w)
        if (bij.inverse[w] != kNoVertex && bij.forward[bij.inverse[w]] != w)
            rep.bijective = false;

    // (2) every mapped non-root vertex is an open end of exactly one pairing
    std::vector<int> cnt_s(n, 0), cnt_t(m, 0);
    std::vector<std::int64_t> aux_of(n, -1);
    for (std::size_t p = 0; p < bij.pairings.size(); ++p) {
        for (TVertex v : bij.pairings[p].S.open_ends) {
            ++cnt_s[v];
            aux_of[v] = static_cast<std::int64_t>(p);
        }
        for (TVertex w : bij.pairings[p].S_prime.open_ends) ++cnt_t[w];
    }
    rep.unique_auxiliary = true;
    for (TVertex v = 1; v < n; ++v)
        if (bij.forward[v] != kNoVertex && cnt_s[v] != 1) rep.unique_auxiliary = false;
    for (TVertex w = 1; w < m; ++w)
        if (bij.inverse[w] != kNoVertex && cnt_t[w] != 1) rep.unique_auxiliary = false;

    rep.descendants_ok = true;
    rep.exit_condition_ok = true;
    for (TVertex v = 1; v < n; ++v) {
        if (bij.forward[v] == kNoVertex || aux_of[v] < 0) continue;
        const PairingRecord& p = bij.pairings[aux_of[v]];
        std::set<TVertex> in_s(p.S.vertices.begin(), p.S.vertices.end());
        std::vector<TVertex> vi; // open ends of S strictly below v
        for (TVertex d : p.S.open_ends)
            if (d != v && F.ambient.is_ancestor(v, d)) vi.push_back(d);
        TVertex fv = bij.forward[v];
        for (TVertex w = 1; w < n; ++w) {
            if (w == v || bij.forward[w] == kNoVertex) continue;
            if (!F.ambient.is_ancestor(v, w)) continue;
            TVertex fw = bij.forward[w];
            // (3)
            bool ok3 = G.ambient.is_ancestor(fv, fw);
            for (std::size_t x = 0; x < vi.size() && !ok3; ++x) {
                TVertex fvi = bij.forward[vi[x]];
                ok3 = fw == fvi || G.ambient.is_ancestor(fvi, fw);
            }
            if (!ok3 && rep.descendants_ok) {
                rep.descendants_ok = false;
                rep.detail += "(3) fails at v=" + std::to_string(v) +
                              " w=" + std::to_string(w) + "; ";
            }
            // (4): first step of v -> w unoccupied w.r.t. S
            TVertex c = w;
            while (F.ambient.parent(c) != v) c = F.ambient.parent(c);
            if (in_s.count(c)) continue;
            bool ok4 = G.ambient.is_ancestor(fv, fw) && fv != fw;
            if (ok4) {
                TVertex cp = fw;
                while (G.ambient.parent(cp) != fv) cp = G.ambient.parent(cp);
                ok4 = std::find(p.S_prime.vertices.begin(), p.S_prime.vertices.end(), cp) ==
                      p.S_prime.vertices.end();
            }
            if (!ok4 && rep.exit_condition_ok) {
                rep.exit_condition_ok = false;
                rep.detail += "(4) fails at v=" + std::to_string(v) +
                              " w=" + std::to_string(w) + "; ";
            }
        }
    }

    rep.level_restriction_ok = true;
    for (TVertex v = 0; v < n; ++v)
        if (bij.forward[v] != kNoVertex && F.level[v] != G.level[bij.forward[v]]) {
            rep.level_restriction_ok = false;
            rep.detail += "level mismatch at v=" + std::to_string(v) + "; ";
            break;
        }
    if (rep.detail.empty()) rep.detail = "all properties verified on the mapped vertices";
    return rep;
}

BoundaryImageReport boundary_image_identity(const VertexBijection& bij, TVertex v) {
    BoundaryImageReport rep;
    const EntwinedFamily &F = *bij.from, &G = *bij.to;
    if (v == 0 || v >= F.ambient.size() || bij.forward[v] == kNoVertex) {
        rep.note = "vertex is the root or unmapped";
        return rep;
    }
    std::int64_t pv = -1;
    for (std::size_t p = 0; p < bij.pairings.size(); ++p) {
        const auto& oe = bij.pairings[p].S.open_ends;
        if (std::find(oe.begin(), oe.end(), v) != oe.end()) {
            pv = static_cast<std::int64_t>(p);
            break;
        }
    }
    if (pv < 0) {
        rep.note = "no auxiliary subtree has this vertex as an open end";
        return rep;
    }
    const PairingRecord& p = bij.pairings[pv];
    for (TVertex d : p.S.open_ends)
        if (F.ambient.is_ancestor(v, d)) rep.D_v.push_back(d);
    std::vector<std::size_t> A_v;
    std::set<TVertex> covered; // vertices of S and of the A_v subtrees
    covered.insert(p.S.vertices.begin(), p.S.vertices.end());
    for (std::size_t q = 0; q < bij.pairings.size(); ++q) {
        if (q == static_cast<std::size_t>(pv)) continue;
        const auto& Sq = bij.pairings[q].S;
        bool hit = false;
        for (TVertex d : rep.D_v)
            if (std::find(Sq.vertices.begin(), Sq.vertices.end(), d) != Sq.vertices.end()) {
                hit = true;
                break;
            }
        if (!hit) continue;
        A_v.push_back(q);
        covered.insert(Sq.vertices.begin(), Sq.vertices.end());
        for (TVertex w : Sq.open_ends) rep.C_v.push_back(w);
    }
    // eligible: every open end below v roots a further pairing and every
    // element of C_v is mapped
    for (TVertex d : rep.D_v) {
        bool roots = false;
        for (auto q : A_v)
            if (bij.pairings[q].S.local_root == d) roots = true;
        if (!roots) {
            rep.note = "materialisation stops below open end " + std::to_string(d);
            return rep;
        }
    }
    for (TVertex w : rep.C_v)
        if (bij.forward[w] == kNoVertex) {
            rep.note = "unmapped vertex in C_v";
            return rep;
        }
    rep.eligible = true;
    rep.note = "checked on all mapped descendants";

    // ray stand-ins: mapped vertices with no mapped child
    auto deepest_in_f = [&](TVertex u) {
        for (TVertex c : F.ambient.children(u))
            if (bij.forward[c] != kNoVertex) return false;
        return true;
    };
    auto deepest_in_g = [&](TVertex u) {
        for (TVertex c : G.ambient.children(u))
            if (bij.inverse[c] != kNoVertex) return false;
        return true;
    };

    rep.forward_ok = true;
    for (TVertex u = 1; u < F.ambient.size(); ++u) {
        if (bij.forward[u] == kNoVertex || !F.ambient.is_ancestor(v, u)) continue;
        if (!deepest_in_f(u) || covered.count(u)) continue;
        // the gates above u form a chain; the ray exits through the deepest one
        std::optional<TVertex> gate;
        for (TVertex w : rep.C_v)
            if (F.ambient.is_ancestor(w, u))
                if (!gate || F.ambient.is_ancestor(*gate, w)) gate = w;
        if (!gate) { // escaped both generations without a gate
            rep.forward_ok = false;
            rep.witness = u;
            break;
        }
        if (!G.ambient.is_ancestor(bij.forward[*gate], bij.forward[u])) {
            rep.forward_ok = false;
            rep.witness = u;
            break;
        }
    }

    rep.inverse_ok = true;
    for (TVertex up = 1; up < G.ambient.size(); ++up) {
        if (bij.inverse[up] == kNoVertex || !deepest_in_g(up)) continue;
        bool under = false;
        for (TVertex w : rep.C_v)
            if (G.ambient.is_ancestor(bij.forward[w], up)) under = true;
        if (!under) continue;
        if (!F.ambient.is_ancestor(v, bij.inverse[up])) {
            rep.inverse_ok = false;
            rep.witness = up;
            break;
        }
    }
    return rep;
}

EntwinedFamily generate_family(const FamilySpec& spec) {
    if (spec.levels == 0) throw validation_error("bad-spec", "need >= 1 member");
    if (spec.base_degree < 3)
        throw validation_error("bad-spec", "member degrees must stay >= 3");
    std::mt19937_64 rng(spec.seed);
    auto jitter = [&]() -> std::uint32_t { return spec.randomise ? (rng() & 1u) : 0u; };

    EntwinedFamily fam;
    fam.ambient = TruncatedTree::single_root(0);
    fam.levels = spec.levels;
    fam.level = {1};
    std::vector<TVertex> cur{0};
    std::vector<std::size_t> width(spec.depth + 2, 0);
    for (std::uint32_t d = 0; d <= spec.depth; ++d) {
        std::vector<TVertex> next;
        for (TVertex v : cur) {
            const std::uint32_t l = fam.level[v];
            std::vector<std::uint32_t> kid_levels;
            std::uint32_t base = (v == 0 ? spec.base_degree : 2u) + jitter();
            for (std::uint32_t c = 0; c < base; ++c) kid_levels.push_back(l);
            for (std::uint32_t j = l + 1; j <= spec.levels; ++j) {
                std::uint32_t cnt = 1 + jitter();
                for (std::uint32_t c = 0; c < cnt; ++c) kid_levels.push_back(j);
            }
            fam.ambient.set_declared_degree(
                v, (v == 0 ? 0u : 1u) + static_cast<std::uint32_t>(kid_levels.size()));
            if (d == spec.depth) continue; // depth cap: declared only
            for (std::uint32_t lv : kid_levels) {
                if (width[d + 1] >= spec.width_cap) break;
                TVertex w = fam.ambient.add_vertex(v, 0);
                fam.level.push_back(lv);
                ++width[d + 1];
                next.push_back(w);
            }
        }
        cur = std::move(next);
    }
    auto flags = fam.verify();
    if (!flags.strongly_entwined || !flags.filling)
        throw validation_error("bad-family", "generated family fails verification: " +
                                                 flags.note);
    return fam;
}

} // namespace coarsegeom
