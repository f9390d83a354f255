// Command-line front end: ingestion, validation, dispatch, JSON/DOT emission.
// Exit codes: 0 success, 2 validation failure (machine-readable diagnostic on
// stdout), 1 internal error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "coarsegeom/json_io.hpp"
#include "coarsegeom/median_structures.hpp"
#include "coarsegeom/morse.hpp"
#include "coarsegeom/quasi_ruler.hpp"
#include "coarsegeom/separation.hpp"
#include "coarsegeom/tree_boundary.hpp"

using namespace coarsegeom;

namespace {

std::size_t size_cap() {
    if (const char* env = std::getenv("COARSEGEOM_CAPS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return 2000;
}

void check_cap(std::size_t n) {
    if (n > size_cap())
        throw validation_error("cap-exceeded", "input exceeds the size cap",
                               std::to_string(n) + " > " + std::to_string(size_cap()));
}

CubeSkeleton load_complex(const std::string& path) {
    auto s = skeleton_from_json(load_json_file(path));
    check_cap(s.num_vertices());
    return s;
}

std::uint32_t parse_hp(const std::string& s) {
    std::string t = s;
    if (!t.empty() && (t[0] == 'h' || t[0] == 'H')) t = t.substr(1);
    return static_cast<std::uint32_t>(std::stoul(t));
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json_file(out_path, j);
}

// Oracle JSON: {"kind": "exact-cube-median", "complex": <skeleton>} or a
// dense table {"dist": [[...]], "mu": [[[...]]]}.
MedianOracle load_oracle(const json& j, std::unique_ptr<CubeSkeleton>& keeper) {
    if (j.contains("kind") && j.at("kind") == "exact-cube-median") {
        keeper = std::make_unique<CubeSkeleton>(skeleton_from_json(j.at("complex")));
        check_cap(keeper->num_vertices());
        return MedianOracle::exact_cube_median(*keeper);
    }
    auto dist = j.at("dist").get<std::vector<std::vector<int>>>();
    auto table = std::make_shared<std::vector<std::vector<std::vector<std::size_t>>>>(
        j.at("mu").get<std::vector<std::vector<std::vector<std::size_t>>>>());
    return MedianOracle::from_table(std::move(dist),
                                    [table](std::size_t a, std::size_t b, std::size_t c) {
                                        return (*table)[a][b][c];
                                    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarse-geometry toolbox: cube complexes, d_L metrics, quasi-rulers, "
                 "coarse medians and tree boundaries"};
    app.require_subcommand(1);

    std::string complex_path, space_path, path_path, out_path, dot_path, matrix_path;
    std::string oracle_path, family_path, target_path, a_path, b_path, phi_path, rulers_path;
    std::string kappa_spec = "const:1", kind, rule = "regular:3", d_str = "1", eps_str = "1/2";
    std::uint32_t L = 0, levels = 2, depth = 8, width_cap = 64, vertex = 1;
    std::uint64_t seed = 0;
    bool pairwise = false, randomise = false;
    double c_const = 1.0;
    int r_radius = 1;
    std::size_t x = 0, y = 0, a_v = 0, b_v = 0, c_v = 0, base_v = 0;
    std::size_t fx_n = 4, fx_a = 2, fx_b = 2, fx_deg = 3, fx_depth = 2;
    std::vector<std::string> pair_hp;

    auto* cmd_hyp = app.add_subcommand("hyperplanes", "extract hyperplanes of a skeleton");
    cmd_hyp->add_option("--complex", complex_path)->required();
    cmd_hyp->add_option("--out", out_path);
    cmd_hyp->add_option("--dot", dot_path);

    auto* cmd_dist = app.add_subcommand("dist", "l1 and BFS distance between two vertices");
    cmd_dist->add_option("--complex", complex_path)->required();
    cmd_dist->add_option("-x", x)->required();
    cmd_dist->add_option("-y", y)->required();

    auto* cmd_delta = app.add_subcommand("delta", "exhaustive four-point delta");
    cmd_delta->add_option("--space", space_path);
    cmd_delta->add_option("--complex", complex_path);
    cmd_delta->add_option("--out", out_path);

    auto* cmd_median = app.add_subcommand("median", "median computations");
    cmd_median->require_subcommand(1);
    auto* cmd_mv = cmd_median->add_subcommand("vertex", "exact median of a triple");
    cmd_mv->add_option("--complex", complex_path)->required();
    cmd_mv->add_option("-a", a_v)->required();
    cmd_mv->add_option("-b", b_v)->required();
    cmd_mv->add_option("-c", c_v)->required();
    auto* cmd_md = cmd_median->add_subcommand("defect", "coarse-median axiom defects");
    cmd_md->add_option("--oracle", oracle_path)->required();
    cmd_md->add_option("--out", out_path);
    auto* cmd_mc = cmd_median->add_subcommand("converge", "convergence scores v_n");
    cmd_mc->add_option("--oracle", oracle_path)->required();
    cmd_mc->add_option("--base", base_v)->required();
    cmd_mc->add_option("--family", family_path)->required();
    cmd_mc->add_option("--target", target_path)->required();
    cmd_mc->add_option("-r", r_radius);
    auto* cmd_mg = cmd_median->add_subcommand("gap", "max |d(o,mu(o,a,b)) - (a|b)_o|");
    cmd_mg->add_option("--oracle", oracle_path)->required();
    cmd_mg->add_option("--base", base_v);

    auto* cmd_ws = app.add_subcommand("wellsep", "L-well-separation degree of a pair");
    cmd_ws->add_option("--complex", complex_path)->required();
    cmd_ws->add_option("--pair", pair_hp)->expected(2);

    auto* cmd_dl = app.add_subcommand("dl", "d_L metric of a skeleton");
    cmd_dl->add_option("--complex", complex_path)->required();
    cmd_dl->add_option("-L", L);
    cmd_dl->add_flag("--pairwise", pairwise);
    cmd_dl->add_option("--matrix", matrix_path);

    auto* cmd_prof = app.add_subcommand("profile", "well-separated chain profile");
    cmd_prof->add_option("--complex", complex_path)->required();
    cmd_prof->add_option("--path", path_path)->required();
    cmd_prof->add_option("-L", L); // interface parity; degrees are L-independent
    cmd_prof->add_option("--kappa", kappa_spec);
    cmd_prof->add_option("-c", c_const);

    auto* cmd_ruler = app.add_subcommand("ruler", "quasi-ruler checks");
    cmd_ruler->require_subcommand(1);
    auto* cmd_rc = cmd_ruler->add_subcommand("check", "D-quasi-ruler certificate");
    cmd_rc->add_option("--space", space_path)->required();
    cmd_rc->add_option("--path", path_path)->required();
    cmd_rc->add_option("-D", d_str)->required();
    auto* cmd_rp = cmd_ruler->add_subcommand("param", "reparametrise to a (K,C)-quasi-geodesic");
    cmd_rp->add_option("--space", space_path)->required();
    cmd_rp->add_option("--path", path_path)->required();
    cmd_rp->add_option("-D", d_str)->required();
    cmd_rp->add_option("--eps", eps_str);
    cmd_rp->add_option("--out", out_path);

    auto* cmd_comp = app.add_subcommand("complete", "geodesic completion of a finite space");
    cmd_comp->add_option("--space", space_path)->required();
    cmd_comp->add_option("--rulers", rulers_path);
    cmd_comp->add_option("-D", d_str)->required();
    cmd_comp->add_option("--out", out_path);

    auto* cmd_tree = app.add_subcommand("tree", "truncated-tree boundary machinery");
    cmd_tree->require_subcommand(1);
    auto* cmd_tg = cmd_tree->add_subcommand("gen", "generate an entwined filling family");
    cmd_tg->add_option("--rule", rule);
    cmd_tg->add_option("--levels", levels);
    cmd_tg->add_option("--depth", depth);
    cmd_tg->add_option("--width-cap", width_cap);
    cmd_tg->add_option("--seed", seed);
    cmd_tg->add_flag("--random", randomise);
    cmd_tg->add_option("--out", out_path);
    auto* cmd_tp = cmd_tree->add_subcommand("phi", "build the vertex bijection");
    cmd_tp->add_option("--a", a_path)->required();
    cmd_tp->add_option("--b", b_path)->required();
    cmd_tp->add_option("--out", out_path);
    auto* cmd_tv = cmd_tree->add_subcommand("verify", "verify properties (1)-(4)");
    cmd_tv->add_option("--phi", phi_path)->required();
    auto* cmd_tb = cmd_tree->add_subcommand("boundary", "finite-depth boundary identity");
    cmd_tb->add_option("--phi", phi_path)->required();
    cmd_tb->add_option("-v", vertex)->required();

    auto* cmd_fx = app.add_subcommand("fixture", "generate a fixture skeleton");
    cmd_fx->add_option("--kind", kind)->required()
        ->check(CLI::IsMember({"path", "grid", "tree", "tree_x_path"}));
    cmd_fx->add_option("--n", fx_n);
    cmd_fx->add_option("--a", fx_a);
    cmd_fx->add_option("--b", fx_b);
    cmd_fx->add_option("--degree", fx_deg);
    cmd_fx->add_option("--depth", fx_depth);
    cmd_fx->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_hyp->parsed()) {
            auto s = load_complex(complex_path);
            json j{{"count", s.hyperplanes().size()}, {"hyperplanes", sides_to_json(s)}};
            if (!dot_path.empty()) {
                std::ofstream dot(dot_path);
                dot << skeleton_to_dot(s);
            }
            emit(j, out_path);
        } else if (cmd_dist->parsed()) {
            auto s = load_complex(complex_path);
            emit({{"l1", s.l1_distance(x, y)}, {"bfs", s.bfs_distance(x, y)}}, "");
        } else if (cmd_delta->parsed()) {
            DeltaResult r = [&] {
                if (!space_path.empty()) {
                    auto sp = metric_space_from_json(load_json_file(space_path));
                    check_cap(sp.size());
                    return estimate_delta(sp);
                }
                if (complex_path.empty())
                    throw validation_error("bad-args", "need --space or --complex");
                return estimate_delta_int(load_complex(complex_path).distance_matrix());
            }();
            emit({{"delta", rat_to_string(r.delta)}, {"witness", r.witness}}, out_path);
        } else if (cmd_mv->parsed()) {
            auto s = load_complex(complex_path);
            emit({{"median", s.median(static_cast<Vertex>(a_v), static_cast<Vertex>(b_v),
                                      static_cast<Vertex>(c_v))}},
                 "");
        } else if (cmd_md->parsed()) {
            std::unique_ptr<CubeSkeleton> keep;
            auto oracle = load_oracle(load_json_file(oracle_path), keep);
            auto d = coarse_median_defect(oracle);
            json j{{"axiom1_ok", d.axiom1_ok}, {"C2", d.C2}, {"C3", d.C3}};
            if (d.axiom1_witness) j["axiom1_witness"] = *d.axiom1_witness;
            emit(j, out_path);
        } else if (cmd_mc->parsed()) {
            std::unique_ptr<CubeSkeleton> keep;
            auto oracle = load_oracle(load_json_file(oracle_path), keep);
            auto fam = load_json_file(family_path)
                           .get<std::vector<std::vector<std::size_t>>>();
            auto h = load_json_file(target_path).get<std::vector<std::size_t>>();
            auto score = convergence_score(base_v, fam, h, oracle);
            json j{{"v", score.v},
                   {"liminf_proxy", score.liminf_proxy},
                   {"truncation_depth", score.truncation_depth}};
            json wit = json::array();
            for (const auto& hn : fam) {
                auto w = median_neighbourhood_witness(base_v, hn, h, oracle, r_radius);
                wit.push_back(w ? json(json::array({w->first, w->second})) : json());
            }
            j["U_r_witnesses"] = std::move(wit);
            emit(j, "");
        } else if (cmd_mg->parsed()) {
            std::unique_ptr<CubeSkeleton> keep;
            auto oracle = load_oracle(load_json_file(oracle_path), keep);
            emit({{"gap", rat_to_string(gromov_median_gap(oracle, base_v))}}, "");
        } else if (cmd_ws->parsed()) {
            auto s = load_complex(complex_path);
            auto rep = well_separation_degree(s, parse_hp(pair_hp[0]), parse_hp(pair_hp[1]));
            emit({{"h", rep.h},
                  {"h_prime", rep.h_prime},
                  {"disjoint", rep.disjoint},
                  {"degree", rep.degree},
                  {"witness", rep.witness}},
                 "");
        } else if (cmd_dl->parsed()) {
            auto s = load_complex(complex_path);
            auto dls = build_dl_space(s, L, pairwise);
            json j = dl_to_json(dls);
            j["bound"] = 9 * (L + 2);
            if (!matrix_path.empty()) save_json_file(matrix_path, json(dls.dl));
            j.erase("dl"); // the summary stays small; the matrix goes to --matrix
            emit(j, out_path);
        } else if (cmd_prof->parsed()) {
            auto s = load_complex(complex_path);
            auto jpath = load_json_file(path_path);
            auto path = jpath.at("points").get<std::vector<Vertex>>();
            SeparationCache cache(s);
            auto prof = chain_profile(cache, path, SublinearFn::parse(kappa_spec), c_const);
            emit({{"m", prof.length()},
                  {"chain", prof.chain},
                  {"times", prof.times},
                  {"degrees", prof.degrees}},
                 "");
        } else if (cmd_rc->parsed()) {
            auto sp = metric_space_from_json(load_json_file(space_path));
            auto p = path_from_json(load_json_file(path_path), sp);
            auto cert = check_ruler(p, parse_rat(d_str));
            json j{{"D", d_str}, {"verdict", cert.verdict}};
            if (cert.violation) j["violation"] = *cert.violation;
            if (cert.jump_index) j["jump_index"] = *cert.jump_index;
            emit(j, "");
            if (!cert.verdict) return 2;
        } else if (cmd_rp->parsed()) {
            auto sp = metric_space_from_json(load_json_file(space_path));
            auto p = path_from_json(load_json_file(path_path), sp);
            auto rp = reparametrise(p, parse_rat(d_str), parse_rat(eps_str));
            json ts = json::array();
            for (const auto& t : rp.times) ts.push_back(rat_to_string(t));
            emit({{"K", rat_to_string(rp.K)},
                  {"C", rat_to_string(rp.C)},
                  {"anchors", rp.anchors},
                  {"times", std::move(ts)}},
                 out_path);
        } else if (cmd_comp->parsed()) {
            auto sp = metric_space_from_json(load_json_file(space_path));
            check_cap(sp.size());
            std::map<PairKey, DiscretePath> rulers;
            if (!rulers_path.empty())
                for (const auto& r : load_json_file(rulers_path)) {
                    auto p = path_from_json(r, sp);
                    std::size_t i = r.contains("pair") ? r["pair"][0].get<std::size_t>()
                                                       : p.points.front();
                    std::size_t jj = r.contains("pair") ? r["pair"][1].get<std::size_t>()
                                                        : p.points.back();
                    rulers[{std::min(i, jj), std::max(i, jj)}] = std::move(p);
                }
            auto g = geodesic_completion(sp, rulers, parse_rat(d_str));
            emit(to_json(g), out_path);
        } else if (cmd_tg->parsed()) {
            FamilySpec fs;
            fs.levels = levels;
            fs.depth = depth;
            fs.width_cap = width_cap;
            fs.randomise = randomise;
            fs.seed = seed;
            auto colon = rule.find(':');
            if (rule.rfind("regular", 0) != 0 || colon == std::string::npos)
                throw validation_error("bad-rule", "rule must look like regular:<degree>",
                                       rule);
            fs.base_degree = static_cast<std::uint32_t>(std::stoul(rule.substr(colon + 1)));
            auto fam = generate_family(fs);
            auto flags = fam.verify();
            json j = family_to_json(fam);
            j["strongly_entwined"] = flags.strongly_entwined;
            j["filling"] = flags.filling;
            emit(j, out_path);
        } else if (cmd_tp->parsed() || cmd_tv->parsed() || cmd_tb->parsed()) {
            json ja, jb;
            if (cmd_tp->parsed()) {
                ja = load_json_file(a_path);
                jb = load_json_file(b_path);
            } else {
                json jphi = load_json_file(phi_path);
                ja = jphi.at("family_a");
                jb = jphi.at("family_b");
            }
            auto fa = family_from_json(ja);
            auto fb = family_from_json(jb);
            auto bij = build_phi(fa, fb); // deterministic rebuild
            if (cmd_tp->parsed()) {
                json j = phi_to_json(bij);
                j["family_a"] = family_to_json(fa);
                j["family_b"] = family_to_json(fb);
                emit(j, out_path);
            } else if (cmd_tv->parsed()) {
                auto rep = verify_phi(bij);
                emit({{"bijective", rep.bijective},
                      {"unique_auxiliary", rep.unique_auxiliary},
                      {"descendants_ok", rep.descendants_ok},
                      {"exit_condition_ok", rep.exit_condition_ok},
                      {"level_restriction_ok", rep.level_restriction_ok},
                      {"detail", rep.detail}},
                     "");
                if (!rep.all_ok()) return 2;
            } else {
                auto rep = boundary_image_identity(bij, vertex);
                json j{{"eligible", rep.eligible},
                       {"note", rep.note},
                       {"D_v", rep.D_v},
                       {"C_v", rep.C_v},
                       {"forward_ok", rep.forward_ok},
                       {"inverse_ok", rep.inverse_ok}};
                if (rep.witness) j["witness"] = *rep.witness;
                emit(j, "");
                if (rep.eligible && !rep.holds()) return 2;
            }
        } else if (cmd_fx->parsed()) {
            CubeSkeleton s = [&] {
                if (kind == "path") return make_path(fx_n);
                if (kind == "grid") return make_grid(fx_a, fx_b);
                if (kind == "tree") return make_regular_tree(fx_deg, fx_depth);
                return make_tree_x_path(make_regular_tree(fx_deg, fx_depth), fx_n);
            }();
            check_cap(s.num_vertices());
            emit(skeleton_to_json(s), out_path);
        }
        (void)cmd_ruler;
        (void)cmd_tree;
        (void)cmd_median;
        return 0;
    } catch (const validation_error& e) {
        json diag{{"code", e.code}, {"message", e.what()}, {"witness", e.witness}};
        std::cout << diag.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
