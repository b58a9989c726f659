#include "logres/trees.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "json.hpp"
#include "logres/coeff.hpp"

namespace logres {

using nlohmann::json;

int TreeNode::min_label() const {
  if (is_leaf()) return label;
  int m = kids.front().min_label();
  for (auto& k : kids) m = std::min(m, k.min_label());
  return m;
}

namespace {

void canonical(TreeNode& n) {
  for (auto& k : n.kids) canonical(k);
  std::sort(n.kids.begin(), n.kids.end(),
            [](const TreeNode& a, const TreeNode& b) { return a.min_label() < b.min_label(); });
}

void collect(const TreeNode& n, LabelSet& out, bool& dup) {
  if (n.is_leaf()) {
    dup |= !out.insert(n.label).second;
    return;
  }
  if (n.kids.size() < 2) throw InputError("tree vertex with fewer than two children");
  for (auto& k : n.kids) collect(k, out, dup);
}

int vertices(const TreeNode& n) {
  if (n.is_leaf()) return 0;
  int c = 1;
  for (auto& k : n.kids) c += vertices(k);
  return c;
}

LabelSet below(const TreeNode& n) {
  LabelSet s;
  bool dup = false;
  collect(n, s, dup);
  return s;
}

void divisors(const TreeNode& n, std::set<LabelSet>& out) {
  if (n.is_leaf()) return;
  out.insert(below(n));
  for (auto& k : n.kids) divisors(k, out);
}

TreeNode node_from_json(const json& j) {
  if (j.is_number_integer()) {
    int l = j.get<int>();
    if (l <= 0) throw InputError("tree labels must be positive");
    return {l, {}};
  }
  if (!j.is_array() || j.size() < 2) throw InputError("tree vertex must list at least two children");
  TreeNode n;
  for (auto& c : j) n.kids.push_back(node_from_json(c));
  return n;
}

json node_to_json(const TreeNode& n) {
  if (n.is_leaf()) return n.label;
  json a = json::array();
  for (auto& k : n.kids) a.push_back(node_to_json(k));
  return a;
}

}  // namespace

NTree::NTree(std::vector<TreeNode> components) : comps_(std::move(components)) {
  LabelSet all;
  bool dup = false;
  for (auto& c : comps_) {
    collect(c, all, dup);
    canonical(c);
  }
  if (dup) throw InputError("tree label used twice");
  std::sort(comps_.begin(), comps_.end(),
            [](const TreeNode& a, const TreeNode& b) { return a.min_label() < b.min_label(); });
}

NTree NTree::bare_lines(const LabelSet& labels) {
  std::vector<TreeNode> c;
  for (int l : labels) c.push_back({l, {}});
  return NTree(c);
}

NTree NTree::star(const LabelSet& labels, const LabelSet& all) {
  if (labels.size() < 2) throw InputError("a star needs at least two labels");
  std::vector<TreeNode> c;
  TreeNode v;
  for (int l : labels) v.kids.push_back({l, {}});
  c.push_back(v);
  for (int l : all)
    if (!labels.count(l)) c.push_back({l, {}});
  return NTree(c);
}

NTree NTree::caterpillar(const std::vector<int>& seq) {
  if (seq.empty()) throw InputError("empty caterpillar");
  TreeNode n{seq.back(), {}};
  for (auto it = seq.rbegin() + 1; it != seq.rend(); ++it) {
    TreeNode v;
    v.kids.push_back({*it, {}});
    v.kids.push_back(std::move(n));
    n = std::move(v);
  }
  return NTree({n});
}

NTree NTree::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("tree JSON: ") + e.what());
  }
  if (!j.is_array()) throw InputError("a tree is a list of components");
  std::vector<TreeNode> comps;
  for (auto& c : j) {
    if (c.is_array() && c.size() == 1 && c[0].is_number_integer())
      comps.push_back(node_from_json(c[0]));
    else
      comps.push_back(node_from_json(c));
  }
  return NTree(comps);
}

LabelSet NTree::labels() const {
  LabelSet s;
  bool dup = false;
  for (auto& c : comps_) collect(c, s, dup);
  return s;
}

int NTree::vertex_count() const {
  int v = 0;
  for (auto& c : comps_) v += vertices(c);
  return v;
}

std::set<LabelSet> NTree::divisor_set() const {
  std::set<LabelSet> out;
  for (auto& c : comps_) divisors(c, out);
  return out;
}

NTree NTree::relabel(const std::vector<int>& perm) const {
  std::function<TreeNode(const TreeNode&)> f = [&](const TreeNode& n) {
    if (n.is_leaf()) return TreeNode{perm.at(n.label - 1), {}};
    TreeNode m;
    for (auto& k : n.kids) m.kids.push_back(f(k));
    return m;
  };
  std::vector<TreeNode> c;
  for (auto& x : comps_) c.push_back(f(x));
  return NTree(c);
}

std::string NTree::to_json() const {
  json a = json::array();
  for (auto& c : comps_) a.push_back(c.is_leaf() ? json::array({c.label}) : node_to_json(c));
  return a.dump();
}

std::string NTree::to_dot() const {
  std::string s = "digraph T {\n";
  int next = 0;
  std::function<std::string(const TreeNode&)> rec = [&](const TreeNode& n) {
    if (n.is_leaf()) {
      std::string id = "l" + std::to_string(n.label);
      s += "  " + id + " [label=\"" + std::to_string(n.label) + "\", shape=plaintext];\n";
      return id;
    }
    std::string id = "v" + std::to_string(next++);
    s += "  " + id + " [label=\"\", shape=point];\n";
    for (auto& k : n.kids) s += "  " + id + " -> " + rec(k) + ";\n";
    return id;
  };
  for (auto& c : comps_) {
    std::string r = rec(c);
    s += "  root_" + r + " [label=\"\", shape=none];\n  root_" + r + " -> " + r + ";\n";
  }
  return s + "}\n";
}

int codim(const NTree& t) { return t.vertex_count(); }

namespace {

// All set partitions of `items` (first element always in the first block).
void partitions(const std::vector<int>& items, std::size_t k, std::vector<std::vector<int>>& cur,
                const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
  if (k == items.size()) {
    emit(cur);
    return;
  }
  for (std::size_t b = 0; b < cur.size(); ++b) {
    cur[b].push_back(items[k]);
    partitions(items, k + 1, cur, emit);
    cur[b].pop_back();
  }
  cur.push_back({items[k]});
  partitions(items, k + 1, cur, emit);
  cur.pop_back();
}

std::vector<TreeNode> rooted(const std::vector<int>& block);

std::vector<TreeNode> child_options(const std::vector<int>& block) {
  if (block.size() == 1) return {TreeNode{block[0], {}}};
  return rooted(block);
}

std::vector<TreeNode> rooted(const std::vector<int>& block) {
  std::vector<TreeNode> out;
  std::vector<std::vector<int>> cur;
  partitions(block, 0, cur, [&](const std::vector<std::vector<int>>& parts) {
    if (parts.size() < 2) return;
    std::vector<TreeNode> acc(1);
    for (auto& p : parts) {
      std::vector<TreeNode> next;
      for (auto& partial : acc)
        for (auto& c : child_options(p)) {
          TreeNode t = partial;
          t.kids.push_back(c);
          next.push_back(std::move(t));
        }
      acc = std::move(next);
    }
    out.insert(out.end(), acc.begin(), acc.end());
  });
  return out;
}

}  // namespace

std::vector<NTree> enumerate_trees(int n) {
  if (n < 1 || n > 7) throw InputError("enumerate_trees supports 1 <= n <= 7");
  std::vector<int> items(n);
  for (int k = 0; k < n; ++k) items[k] = k + 1;
  std::vector<NTree> out;
  std::vector<std::vector<int>> cur;
  partitions(items, 0, cur, [&](const std::vector<std::vector<int>>& parts) {
    std::vector<std::vector<TreeNode>> acc(1);
    for (auto& p : parts) {
      std::vector<std::vector<TreeNode>> next;
      for (auto& partial : acc)
        for (auto& c : child_options(p)) {
          auto t = partial;
          t.push_back(c);
          next.push_back(std::move(t));
        }
      acc = std::move(next);
    }
    for (auto& comps : acc) out.emplace_back(comps);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NTree> moves(const NTree& t) {
  std::vector<NTree> out;
  const auto& comps = t.components();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (comps[c].is_leaf()) continue;
    // delete the root vertex
    {
      std::vector<TreeNode> nc;
      for (std::size_t d = 0; d < comps.size(); ++d)
        if (d != c) nc.push_back(comps[d]);
      for (auto& k : comps[c].kids) nc.push_back(k);
      out.emplace_back(nc);
    }
    // contract each internal edge
    std::function<void(TreeNode&, const std::function<void()>&)> walk = [&](TreeNode& n,
                                                                           const std::function<void()>& emit) {
      for (std::size_t k = 0; k < n.kids.size(); ++k) {
        if (n.kids[k].is_leaf()) continue;
        TreeNode child = n.kids[k];
        n.kids.erase(n.kids.begin() + k);
        n.kids.insert(n.kids.end(), child.kids.begin(), child.kids.end());
        emit();
        n.kids.resize(n.kids.size() - child.kids.size());
        n.kids.insert(n.kids.begin() + k, child);
        walk(n.kids[k], emit);
      }
    };
    std::vector<TreeNode> work = comps;
    walk(work[c], [&] { out.emplace_back(work); });
  }
  return out;
}

bool leq(const NTree& t, const NTree& t2) {
  if (t.labels() != t2.labels()) return false;
  std::deque<NTree> q{t};
  std::set<std::string> seen{t.to_json()};
  while (!q.empty()) {
    NTree cur = q.front();
    q.pop_front();
    if (cur == t2) return true;
    if (cur.vertex_count() <= t2.vertex_count()) continue;
    for (auto& m : moves(cur))
      if (seen.insert(m.to_json()).second) q.push_back(m);
  }
  return false;
}

NTree compose(const NTree& t1, int i, const NTree& t2) {
  LabelSet l1 = t1.labels(), l2 = t2.labels();
  if (!l1.count(i)) throw InputError("composition label " + std::to_string(i) + " is not a label of the first tree");
  if (!t2.is_connected()) throw InputError("the inserted tree must have a single component");
  for (int l : l2)
    if (l != i && l1.count(l)) throw InputError("composition label sets overlap");
  const TreeNode& graft = t2.components().front();
  std::function<TreeNode(const TreeNode&)> f = [&](const TreeNode& n) {
    if (n.is_leaf()) return n.label == i ? graft : n;
    TreeNode m;
    for (auto& k : n.kids) m.kids.push_back(f(k));
    return m;
  };
  std::vector<TreeNode> c;
  for (auto& x : t1.components()) c.push_back(f(x));
  return NTree(c);
}

bool is_caterpillar_ending_in(const NTree& t, int d) {
  if (!t.is_connected()) return false;
  const TreeNode* n = &t.components().front();
  if (n->is_leaf()) return t.size() == 1 && n->label == d;
  for (;;) {
    if (n->kids.size() != 2) return false;
    const TreeNode &a = n->kids[0], &b = n->kids[1];
    if (a.is_leaf() && b.is_leaf()) return a.label == d || b.label == d;
    if (!a.is_leaf() && !b.is_leaf()) return false;
    n = a.is_leaf() ? &b : &a;
  }
}

}  // namespace logres
