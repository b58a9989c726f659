#pragma once

#include <set>
#include <string>
#include <vector>

namespace logres {

// A vertex (label == 0, at least two children) or a leaf (label > 0, no children).
struct TreeNode {
  int label = 0;
  std::vector<TreeNode> kids;

  bool is_leaf() const { return label > 0; }
  int min_label() const;
  bool operator==(const TreeNode&) const = default;
};

using LabelSet = std::set<int>;

// Forest of rooted trees indexing a stratum; components and children are kept sorted by minimal label.
class NTree {
 public:
  NTree() = default;
  explicit NTree(std::vector<TreeNode> components);

  static NTree bare_lines(const LabelSet& labels);
  static NTree star(const LabelSet& labels, const LabelSet& all);
  // [s_1,[s_2,...,[s_{d-1},s_d]...]] as a single component
  static NTree caterpillar(const std::vector<int>& seq);
  static NTree parse(const std::string& json);

  const std::vector<TreeNode>& components() const { return comps_; }
  LabelSet labels() const;
  int size() const { return static_cast<int>(labels().size()); }
  int vertex_count() const;
  std::set<LabelSet> divisor_set() const;
  bool is_connected() const { return comps_.size() == 1; }
  NTree relabel(const std::vector<int>& perm) const;  // label k -> perm[k-1]

  std::string to_json() const;
  std::string to_dot() const;
  bool operator==(const NTree& o) const { return comps_ == o.comps_; }
  bool operator<(const NTree& o) const { return to_json() < o.to_json(); }

 private:
  std::vector<TreeNode> comps_;
};

int codim(const NTree& t);
std::vector<NTree> enumerate_trees(int n);
// Reachability by internal-edge contractions and root-vertex deletions.
bool leq(const NTree& t, const NTree& t2);
std::vector<NTree> moves(const NTree& t);
NTree compose(const NTree& t1, int i, const NTree& t2);
// Binary single-component trees where every vertex has a leaf child and `d` lies in the deepest vertex.
bool is_caterpillar_ending_in(const NTree& t, int d);

}  // namespace logres
