#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "satr/atcore.hpp"
#include "satr/pqtree.hpp"

namespace satr {

// Canonical alternation-constraint kinds.
enum class CKind { K3, P3, K2, K3minusR, P3minusP, P3minusPP, K3minusRB };
const char* ckind_name(CKind k);
// number of red, blue, purple darts
std::array<int, 3> signature(CKind k);

// Predicate on the colour sequence of a rotation (cyclic).
bool satisfies(CKind k, const std::vector<Color>& cyc);
// The predicate exactly as the catalogue row states it.  Differs from
// satisfies() only for P3minusP, whose row omits the purple position.
bool row_predicate(CKind k, const std::vector<Color>& cyc);
// colours c and d (two darts each) interleave in cyc
bool alternate(const std::vector<Color>& cyc, Color c, Color d);

// A derived constraint before normalization: base kind (K3, P3 or K2) with
// some darts taken out.  `together` means the removed darts must be
// re-insertable as one consecutive run; otherwise each goes anywhere.
struct RawConstraint {
    CKind base = CKind::K3;
    std::vector<Color> removed;
    bool together = false;
};
// Insertability semantics, by brute force over insertion positions.
bool raw_satisfied(const RawConstraint& raw, const std::vector<Color>& cyc);

struct Normalized {
    enum class Status { Constraint, Always, Never } status = Status::Always;
    CKind kind = CKind::K2;
    // role colour of each remaining dart, indexed like the input colours
    std::vector<Color> roles;
};
// Table lookup.  `colors` lists the remaining darts' original colours.
Normalized normalize(const RawConstraint& raw, const std::vector<Color>& colors);

// A canonical kind seen as a raw constraint over its base kind.
RawConstraint as_raw(CKind k);

struct AlternationConstraint {
    CKind kind = CKind::K3;
    std::vector<int> darts;     // edge ids at the vertex
    std::vector<Color> colors;  // parallel to darts
    bool holds(const std::vector<int>& rotation) const;  // rotation over the same darts
    Color color_of(int dart) const;
};

// Circular orders of the darts (canonicalized) satisfying the constraint.
std::set<CircularOrder> satisfying_orders(const AlternationConstraint& c);

// Replacement trees.
enum class Pattern {
    Deg4K2,          // roles r1 b1 r2 b2
    Deg4P3minusPP,   // r1 r2 b1 b2
    Deg4K3minusRB,   // p1 p2 r b
    Consec6K3,       // pair r1 b1; then r2 b2 p1 p2
    Consec6P3RB,     // pair r1 b1; then r2 b2 p1 p2
    Consec6P3PR,     // pair p1 r1; then r2 b1 b2 p2
    Consec5PSame,    // P3minusP, pair r1 r2; then b1 b2 p
    Consec5PRB,      // P3minusP, pair r1 b1; then r2 b2 p
    Consec5PPR,      // P3minusP, pair p r1; then r2 b1 b2
    Consec5RPair,    // K3minusR, pair r b1; then b2 p1 p2
    Consec5RTwo,     // K3minusR, pairs (b1 p1) (b2 p2); then r
    Alternation4,    // b1 p1 b2 p2 alternate
};
const char* pattern_name(Pattern p);
// role colours in the order canned_tree expects its darts
std::vector<Color> pattern_roles(Pattern p);
// The tree with its template's role slots filled by darts; throws
// SignatureMismatch when the colours do not fit the pattern.
PQTree canned_tree(Pattern p, const std::vector<int>& darts, const std::vector<Color>& colors);
// Template text with role tokens, for golden tests.
std::string pattern_template(Pattern p);

// Outcome of replacing a constraint that has consecutive pairs.
struct PairReplacement {
    enum class Status { Tree, No, NotApplicable } status = Status::NotApplicable;
    Pattern pattern = Pattern::Deg4K2;
    PQTree tree;
};
// Chooses the tree for a constraint whose darts in `pairs` are known to be
// consecutive in every feasible embedding.
PairReplacement replace_with_pairs(const AlternationConstraint& c, const std::vector<std::pair<int, int>>& pairs);
// Tree for a degree-4 constraint.
PQTree deg4_tree(const AlternationConstraint& c);

}  // namespace satr
