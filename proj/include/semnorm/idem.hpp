#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "semnorm/matrix.hpp"
#include "semnorm/poly.hpp"

namespace semnorm {

// Value checked to satisfy e² = e at construction.
struct Idempotent {
    RingValue value;
    explicit Idempotent(RingValue v);
};

// a together with its quasi-inverse a° (a²a° = a, a(a°)² = a°) and e = a·a°.
struct QuasiInversePair {
    RingValue a;
    RingValue a_star;
    RingValue e;
};
QuasiInversePair quasi_inverse(const RingValue& a);

// e_1..e_n with e_i·e_j = 0 for i != j and sum 1, checked at construction.
struct OrthogonalIdempotentSystem {
    std::vector<RingValue> parts;
    static OrthogonalIdempotentSystem checked(std::vector<RingValue> parts);
};

// Atoms of the Boolean algebra generated by the inputs, plus each input
// expressed as the subset-sum of the atoms below it.
struct RefinedIdempotents {
    OrthogonalIdempotentSystem atoms;
    std::vector<std::vector<size_t>> covers;  // covers[i] = { j : atoms[j]·r_i = atoms[j] }
};
RefinedIdempotents refine_idempotents(const RingPtr& ring, const std::vector<RingValue>& rs);

// From Ann(x_i) = <r_i>: the orthogonal system t_1..t_{n+1} and the combined
// element x = x_1 + t_2 x_2 + ... + t_n x_n with Ann(x_1..x_n) = Ann(x) =
// <t_{n+1}>.
struct AnnihilatorSystem {
    OrthogonalIdempotentSystem ts;
    RingValue combined;
};
AnnihilatorSystem annihilator_system(const std::vector<RingValue>& xs);

// J = t_1·I + sum t_k·J_k with J² = I such that (J·P·J)(1,1) is regular;
// requires Tr(P) regular.
struct CornerConjugation {
    SquareMatrix j;
    SquareMatrix conjugated;  // J·P·J
};
CornerConjugation conjugate_regular_corner(const SquareMatrix& p);

// A finite binary decomposition of a reduced ring: each split at an element a
// produces the quotient child (A/<a>)_red and the localization child A[1/a].
// Trivial children are pruned and recorded. Leaves in canonical order,
// quotient child before localization child.
class ComponentTree {
  public:
    struct Node {
        RingPtr ring;
        RingValue split_at;       // valid on internal nodes
        int quotient_child = -1;  // -1: pruned (trivial) or leaf
        int local_child = -1;
        int parent = -1;
        bool is_split = false;
    };

    explicit ComponentTree(RingPtr root);

    const Node& node(int id) const { return nodes_[static_cast<size_t>(id)]; }
    int root_id() const { return 0; }
    size_t size() const { return nodes_.size(); }

    // Split leaf at a (a value of the leaf ring); returns ids {quotient,
    // localization}, -1 for a pruned trivial child.
    std::pair<int, int> split_leaf(int leaf, const RingValue& a);
    bool is_leaf(int id) const;
    std::vector<int> leaves() const;

    // Homomorphic image of a root-ring value / polynomial at a node.
    RingValue image(const RingValue& v, int id) const;
    MultiPoly image_poly(const MultiPoly& p, int id) const;

  private:
    std::vector<Node> nodes_;
};

// One-step quasi-inverse adjunction A -> (A/<a>)_red × A[1/a] as a two-leaf
// tree; a° is realized leafwise as (0, 1/a).
ComponentTree adjoin_quasi_inverse(const RingPtr& a_ring, const RingValue& a);

// Projection along the canonical collapse maps created by splits (quotient of
// a quotient, surviving product components, ...).
RingValue split_image(const RingValue& v, const RingPtr& parent, const RingValue& a,
                      const RingPtr& child, bool quotient_side);

// The component e_{a1}···e_{ak}·A identified with A[1/(a_1···a_k)]: the
// canonical ring, the product idempotent, and both maps realizing the
// identification (project: A -> component ring; embed: component ring -> e·A).
struct LocalizedComponent {
    RingValue e;
    RingPtr iso_ring;
    std::function<RingValue(const RingValue&)> project;
    std::function<RingValue(const RingValue&)> embed;
};
LocalizedComponent localize_component(const RingPtr& a_ring, const std::vector<RingValue>& elems);

// Certificate of ring triviality: products proved equal to zero, ending with
// the empty product (1 = 0) when triviality is reached.
struct TrivialityCertificate {
    std::vector<std::vector<size_t>> zero_products;  // indices into the split elements
    bool reached_trivial = false;
    std::string to_text(const std::vector<RingValue>& elems) const;
};

struct EliminationOutcome {
    TrivialityCertificate certificate;
    std::vector<std::vector<size_t>> survivors;  // subsets whose component kept a nontrivial module
    bool trivial() const { return certificate.reached_trivial; }
};

// Replay of the 2^r component cascade: subsets of the splitting elements in
// decreasing size, components already killed by a recorded zero product are
// skipped, each freeness answer records the subset product as zero. An
// optional zero check validates every recorded product against the root ring
// (an inconsistent oracle is an internal invariant violation).
EliminationOutcome eliminate(const RingPtr& root, const std::vector<RingValue>& elems,
                             const std::function<bool(const std::vector<size_t>&)>& freeness_oracle,
                             const std::function<bool(const RingValue&)>& zero_check = nullptr);

// Thrown by algorithms running over a leaf when an element must be made zero
// or invertible before the computation can continue.
struct SplitRequest {
    RingValue element;
};

}  // namespace semnorm
