#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mapgrowth/numeric.hpp"

namespace mapgrowth {

// One graded generator, i.e. the identity class of a sphere S^{sphere_dim}.
struct Generator {
  std::string name;
  int sphere_dim = 0;  // >= 2
  int lie_degree = 0;  // sphere_dim - 1
};

inline Generator make_generator(std::string name, int sphere_dim) {
  if (sphere_dim < 2) throw std::invalid_argument("generator sphere dimension must be >= 2");
  return Generator{std::move(name), sphere_dim, sphere_dim - 1};
}

// Bracket trees are interned: a TreeId identifies one immutable tree inside its
// LieAlgebra context, so structural equality is pointer equality.
using TreeId = std::int32_t;

// A homogeneous formal rational combination of bracket trees.  Zero coefficients
// are never stored; the empty map is the zero element.
struct LieElement {
  std::map<TreeId, Rational> terms;
  bool is_zero() const { return terms.empty(); }
  bool operator==(const LieElement&) const = default;
};

// Tensor-algebra polynomial: words of generator indices with rational coefficients.
using Word = std::vector<std::int32_t>;
using AssocPoly = std::map<Word, Rational>;

struct HilbertRow {
  int degree = 0;
  long long basis_dim = 0;   // from the computed Hall basis
  BigInt product_coeff = 0;  // coefficient assembled from the basis dimensions
  BigInt series_coeff = 0;   // coefficient of the generating series 1/(1 - sum t^{d_i})
};

struct HilbertReport {
  std::vector<HilbertRow> rows;
  bool ok = false;
  int first_mismatch = -1;  // degree of the first disagreement, -1 if none
};

// Outcome of the cheap nonzero certificate for a single bracket tree.
enum class EmbedVerdict { zero, nonzero, inconclusive };

struct EmbedCertificate {
  EmbedVerdict verdict = EmbedVerdict::inconclusive;
  Word witness;       // a word with provably nonzero coefficient (when nonzero)
  Rational coeff = 0; // its coefficient
};

// The free graded Lie algebra over Q on a fixed generator list.  All operations
// are exact; values handed out (TreeId, LieElement, AssocPoly) are immutable.
// Internal interning/memo tables are guarded by a mutex, so a single instance
// may be shared across threads.
class LieAlgebra {
 public:
  explicit LieAlgebra(std::vector<Generator> gens);

  int num_generators() const { return static_cast<int>(gens_.size()); }
  const Generator& generator(int index) const { return gens_.at(static_cast<std::size_t>(index)); }

  TreeId leaf(int gen_index) const;
  TreeId leaf(std::string_view name) const;
  TreeId node(TreeId left, TreeId right) const;

  bool is_leaf(TreeId t) const;
  int leaf_generator(TreeId t) const;  // generator index; throws on composite
  TreeId left(TreeId t) const;
  TreeId right(TreeId t) const;

  int lie_degree(TreeId t) const;
  int leaf_count(TreeId t) const;
  std::vector<long long> leaf_multidegree(TreeId t) const;  // per-generator leaf counts

  // The fixed total order: lie degree ascending; at equal degree leaves precede
  // composites, leaves compare by generator listing order, composites compare
  // lexicographically by (left, right).  Returns -1/0/+1.
  int compare(TreeId a, TreeId b) const;

  // Basis membership: a Hall tree proper, or a self-bracket [c,c] of an
  // odd-degree Hall tree (self-brackets are only permitted at the top).
  bool is_hall(TreeId t) const;

  // All basis monomials of lie degree <= max_degree, sorted by (degree, order).
  std::vector<TreeId> hall_basis(int max_degree) const;

  LieElement monomial(TreeId t, const Rational& c = 1) const;
  int degree_of(const LieElement& e) const;  // -1 for the zero element
  LieElement add(const LieElement& a, const LieElement& b) const;
  LieElement scale(const LieElement& e, const Rational& c) const;

  // Formal bilinear bracket: every tree pair becomes one node; no rewriting.
  // Each input must be homogeneous (the two degrees may differ).
  LieElement bracket(const LieElement& u, const LieElement& v) const;

  // Rewrite into the Hall basis (graded antisymmetry + graded Jacobi).
  LieElement normalize(const LieElement& e) const;

  // Faithful embedding into the tensor algebra:
  //   leaf -> its one-letter word,
  //   [u,v] -> embed(u)embed(v) - (-1)^{|u||v|} embed(v)embed(u).
  AssocPoly assoc_embed(const LieElement& e) const;
  AssocPoly assoc_embed_tree(TreeId t) const;

  // Dimension check of the computed basis against the generating series of the
  // tensor algebra via the even/odd product formula.
  HilbertReport hilbert_check(int max_degree) const;

  // Certify assoc_embed(t) != 0 without full expansion where possible: exact
  // expansion for small trees, a subword dynamic program for right combs, and
  // the square rule for self-brackets.
  EmbedCertificate certify_nonzero(TreeId t) const;

  // Exact coefficient of `w` in assoc_embed of a right comb (O(k^2) time).
  Rational comb_word_coefficient(TreeId t, const Word& w) const;
  bool is_right_comb(TreeId t) const;

  std::string to_string(TreeId t) const;
  std::string to_string(const LieElement& e) const;
  std::string to_string(const AssocPoly& p) const;

  // Trees with more leaves than this are refused by assoc_embed (the expansion
  // is exponential); certify_nonzero covers the large cases that matter.
  static constexpr int kMaxEmbedLeaves = 20;

 private:
  struct NodeRec {
    TreeId left = -1, right = -1;
    std::int32_t gen = -1;
    std::int32_t degree = 0;
    std::int32_t nleaves = 1;
    std::int8_t hall_core = -1;  // lazy: -1 unknown, 0 no, 1 yes
  };

  const NodeRec& rec(TreeId t) const;
  TreeId intern_node(TreeId l, TreeId r) const;
  int cmp(TreeId a, TreeId b) const;
  bool hall_core(TreeId t) const;
  void check_tree(TreeId t) const;
  void check_homogeneous(const LieElement& e, const char* op) const;

  void add_term(LieElement& acc, TreeId t, const Rational& c) const;
  void add_scaled(LieElement& acc, const LieElement& e, const Rational& c) const;

  // Straightening of a product of two basis monomials into the basis.
  const LieElement& hall_product(TreeId p, TreeId q) const;
  const LieElement& norm_tree(TreeId t) const;
  const AssocPoly& embed_tree_cached(TreeId t) const;

  std::vector<Generator> gens_;
  std::unordered_map<std::string, int> gen_index_;

  mutable std::recursive_mutex mu_;
  mutable std::vector<NodeRec> nodes_;
  mutable std::unordered_map<std::uint64_t, TreeId> node_index_;

  struct MemoEntry {
    int state = 0;  // 0 absent (never stored), 1 in progress, 2 done
    LieElement value;
  };
  mutable std::unordered_map<std::uint64_t, MemoEntry> product_memo_;
  mutable std::unordered_map<TreeId, MemoEntry> norm_memo_;
  mutable std::unordered_map<TreeId, AssocPoly> embed_memo_;
};

}  // namespace mapgrowth
