#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace satr {

using CircularOrder = std::vector<int>;

// Rotate so the smallest label comes first.  Reversal is not quotiented.
CircularOrder canonical_order(CircularOrder o);
CircularOrder reversed_order(const CircularOrder& o);
// every circular order of the labels, canonicalized
std::vector<CircularOrder> all_circular_orders(std::vector<int> labels);
// project onto the labels in keep, canonicalized
CircularOrder project_order(const CircularOrder& o, const std::set<int>& keep);
bool consecutive_in(const CircularOrder& o, const std::set<int>& s);

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SignatureMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unrooted PQ-tree over circular orders.  Internal nodes store a cyclic
// order of their neighbours; for Q-nodes it is the reference orientation.
class PQTree {
public:
    enum class Kind { Leaf, P, Q };
    struct Node {
        Kind kind = Kind::Leaf;
        int label = -1;
        std::vector<int> nbrs;
    };

    std::vector<Node> nodes;
    std::vector<std::pair<int, int>> sync;  // Q-node pairs flipped together

    std::vector<int> labels() const;
    int leaf_count() const;
    int leaf_of(int label) const;
    bool synchronized() const { return !sync.empty(); }

    // P( ... ) / Q[ ... ], synchronized Q-nodes written Q#k[ ... ]
    std::string to_string() const;
    static PQTree parse(const std::string& s, const std::function<int(const std::string&)>& label_of = {});

    void check() const;  // structural invariants, throws std::logic_error
    void normalize();    // smooth degree-2 nodes, drop dead nodes, renumber
};

PQTree universal(const std::vector<int>& labels);
// nullopt when no represented order keeps subset consecutive
std::optional<PQTree> apply_consecutivity(const PQTree& t, const std::set<int>& subset);
std::set<CircularOrder> enumerate_orders(const PQTree& t, size_t cap = 100000);
PQTree restrict_tree(const PQTree& t, const std::set<int>& keep);
bool is_compatible(const PQTree& t, const CircularOrder& order);
// orientation (0 reference, 1 reversed) of every Q-node realized by order,
// nullopt when incompatible; synchronization is not checked here
std::optional<std::map<int, int>> q_orientations(const PQTree& t, const CircularOrder& order);

}  // namespace satr
