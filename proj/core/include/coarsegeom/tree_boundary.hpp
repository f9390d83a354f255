#ifndef coarsegeom_tree_boundary_hpp
#define coarsegeom_tree_boundary_hpp

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coarsegeom {

using TVertex = std::uint32_t;
constexpr TVertex kNoVertex = static_cast<TVertex>(-1);

// A rooted tree materialised to a finite depth under a per-level width cap.
// Vertices whose declared degree exceeds their materialised child count are
// frontier vertices; structural checks skip them.
class TruncatedTree {
  public:
    TVertex root() const { return 0; }
    std::size_t size() const { return parent_.size(); }
    TVertex parent(TVertex v) const { return parent_[v]; }
    const std::vector<TVertex>& children(TVertex v) const { return children_[v]; }
    std::uint32_t depth_of(TVertex v) const { return depth_[v]; }
    std::uint32_t max_depth() const { return max_depth_; }
    // declared full degree (edge count, including the parent edge)
    std::uint32_t declared_degree(TVertex v) const { return declared_degree_[v]; }
    std::uint32_t materialised_degree(TVertex v) const {
        return static_cast<std::uint32_t>(children_[v].size()) + (v == 0 ? 0 : 1);
    }
    bool fully_materialised(TVertex v) const {
        return materialised_degree(v) == declared_degree_[v];
    }
    bool is_ancestor(TVertex a, TVertex d) const; // a == d counts

    TVertex add_vertex(TVertex parent, std::uint32_t declared_degree);
    void set_declared_degree(TVertex v, std::uint32_t d) { declared_degree_[v] = d; }
    static TruncatedTree single_root(std::uint32_t declared_degree);

  private:
    std::vector<TVertex> parent_{kNoVertex};
    std::vector<std::vector<TVertex>> children_{{}};
    std::vector<std::uint32_t> depth_{0};
    std::vector<std::uint32_t> declared_degree_{0};
    std::uint32_t max_depth_ = 0;
};

// Nested subtree chain T_1 <= ... <= T_m of the ambient tree, each rooted and
// connected; encoded by the smallest member level containing each vertex.
struct EntwinedFamily {
    TruncatedTree ambient;
    std::uint32_t levels = 0;
    // level[v] = smallest i (1-based) with v in T_i; root has level 1
    std::vector<std::uint32_t> level;

    bool in_member(TVertex v, std::uint32_t i) const { return level[v] <= i; }
    // degree of v inside T_i (materialised edges only)
    std::uint32_t member_degree(TVertex v, std::uint32_t i) const;

    struct Flags {
        bool strongly_entwined = false;
        bool filling = false;
        std::string note; // which vertices were skipped as frontier
    };
    Flags verify() const;
};

struct AuxiliarySubtree {
    TVertex local_root = 0;
    std::vector<TVertex> vertices;  // includes local_root
    std::vector<TVertex> open_ends; // exactly the non-root vertices, validated
};

struct AuxiliaryCheck {
    bool ok = false;
    std::string violation;
    std::optional<TVertex> witness;
};

// Checks both auxiliary-subtree conditions inside the member T_i, against
// materialised children; declared-degree slack counts as unoccupied children.
// root_children lists the domain children of local_root (the domain may
// exclude some of them, e.g. the part already covered by a parent pairing).
AuxiliaryCheck is_auxiliary(const EntwinedFamily& fam, std::uint32_t i, TVertex local_root,
                            const std::vector<TVertex>& S,
                            const std::vector<TVertex>& root_children);

struct PairingRecord {
    AuxiliarySubtree S;       // in the source tree
    AuxiliarySubtree S_prime; // in the target tree
    // sigma: S.open_ends[i] -> S_prime.open_ends[i] after deterministic ordering
    std::uint32_t member_level = 1; // the T_i level this pairing was built at
};

// Phi of Steps 1-2, with its pairing log. Defined on the subset of vertices
// both sides could materialise; frontier vertices where extension stopped are
// listed.
struct VertexBijection {
    const EntwinedFamily* from = nullptr;
    const EntwinedFamily* to = nullptr;
    std::vector<TVertex> forward; // kNoVertex where undefined
    std::vector<TVertex> inverse;
    std::vector<PairingRecord> pairings;
    std::vector<TVertex> frontier; // source vertices where extension stopped

    bool defined(TVertex v) const { return forward[v] != kNoVertex; }
};

// Deterministic BFS-then-child-order growth to exactly k open ends inside
// the member T_i: start with local_root + root_children, then repeatedly
// attach one new domain child to the earliest open end that keeps an
// unoccupied child, which raises the open-end count by one per attachment.
// Throws validation_error when k < |root_children| or materialisation runs out.
AuxiliarySubtree find_auxiliary_with_open_ends(const EntwinedFamily& fam, std::uint32_t i,
                                               TVertex local_root,
                                               const std::vector<TVertex>& root_children,
                                               std::size_t k);

VertexBijection build_phi(const EntwinedFamily& family, const EntwinedFamily& family_p);

struct PhiReport {
    bool bijective = false;            // (1) on shared materialised sets
    bool unique_auxiliary = false;     // (2)
    bool descendants_ok = false;       // (3)
    bool exit_condition_ok = false;    // (4)
    bool level_restriction_ok = false; // Phi|T_i bijects onto T'_i
    std::string detail;
    bool all_ok() const {
        return bijective && unique_auxiliary && descendants_ok && exit_condition_ok &&
               level_restriction_ok;
    }
};

PhiReport verify_phi(const VertexBijection& bij);

struct BoundaryImageReport {
    bool eligible = false; // depth margin >= 2 auxiliary generations below v
    std::string note;
    std::vector<TVertex> D_v;
    std::vector<TVertex> C_v;
    // forward: every deepest mapped descendant of v beyond the C_v subtrees
    // exits through a unique deepest gate w in C_v and maps below Phi(w);
    // inverse: every deepest mapped vertex below some Phi(w) pulls back below v
    bool forward_ok = false;
    bool inverse_ok = false;
    std::optional<TVertex> witness;
    bool holds() const { return eligible && forward_ok && inverse_ok; }
};

BoundaryImageReport boundary_image_identity(const VertexBijection& bij, TVertex v);

struct FamilySpec {
    std::uint32_t levels = 2;
    std::uint32_t depth = 8;
    std::uint32_t width_cap = 64;  // per-depth-level materialisation cap
    std::uint32_t base_degree = 3; // degree inside the joining member
    bool randomise = false;        // jitter degrees/levels from the seed
    std::uint64_t seed = 0;
};

// Seeded generator; the result is verified strongly entwined and filling at
// the materialised depth before being returned.
EntwinedFamily generate_family(const FamilySpec& spec);

} // namespace coarsegeom

#endif
