#include "tree.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <limits>

#include "error.hpp"

namespace treedist {

namespace {

std::string format_weight(double w) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), w);
    return std::string(buf, res.ptr);
}

} // namespace

Tree::Tree(std::vector<int> parent, std::vector<int> label, std::vector<double> weight)
    : parent_(std::move(parent)), label_(std::move(label)), weight_(std::move(weight)) {
    const int V = static_cast<int>(parent_.size());
    if (V == 0 || parent_[0] != -1)
        throw ShapeError("tree must have a root at vertex 0");
    if (label_.size() != parent_.size() || weight_.size() != parent_.size())
        throw InvalidArgument("parent/label/weight arrays differ in length");

    children_.assign(V, {});
    for (int v = 1; v < V; ++v) {
        if (parent_[v] < 0 || parent_[v] >= V)
            throw ShapeError("vertex has an out-of-range parent");
        if (weight_[v] < 0.0)
            throw ShapeError("negative edge weight");
        children_[parent_[v]].push_back(v);
    }
    weight_[0] = 0.0;

    // Leaf labels must be exactly 1..n, once each.
    std::vector<int> labels;
    for (int v = 0; v < V; ++v) {
        if (children_[v].empty()) {
            if (v == 0) throw ShapeError("root cannot be a leaf");
            if (label_[v] <= 0) throw LabelError("unlabeled leaf");
            labels.push_back(label_[v]);
        } else if (v != 0 && label_[v] != 0) {
            throw LabelError("internal vertex carries a leaf label");
        }
    }
    n_ = static_cast<int>(labels.size());
    if (n_ < 2) throw LabelError("a tree needs at least two leaves");
    std::sort(labels.begin(), labels.end());
    for (int i = 0; i < n_; ++i) {
        if (labels[i] != i + 1)
            throw LabelError("leaf labels must be exactly 1.." + std::to_string(n_));
    }

    // Minimality: the root and every internal vertex need >= 2 children.
    for (int v = 0; v < V; ++v) {
        if (!children_[v].empty() && children_[v].size() < 2)
            throw ShapeError("degree-2 internal vertex (single-child node)");
    }

    // Depth via the parent array; also detects cycles/disconnection.
    depth_.assign(V, -1);
    depth_[0] = 0;
    for (int v = 1; v < V; ++v) {
        if (depth_[v] >= 0) continue;
        std::vector<int> chain;
        int u = v;
        while (u != -1 && depth_[u] < 0) {
            chain.push_back(u);
            u = parent_[u];
            if (static_cast<int>(chain.size()) > V)
                throw ShapeError("cycle in parent structure");
        }
        int d = (u == -1) ? 0 : depth_[u];
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth_[*it] = ++d;
    }

    // min descendant leaf, children sorted by it (canonical order).
    min_leaf_.assign(V, std::numeric_limits<int>::max());
    std::vector<int> order(V);
    for (int v = 0; v < V; ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return depth_[a] > depth_[b]; });
    for (int v : order) {
        if (children_[v].empty()) min_leaf_[v] = label_[v];
        if (v != 0) min_leaf_[parent_[v]] = std::min(min_leaf_[parent_[v]], min_leaf_[v]);
    }
    for (auto& ch : children_)
        std::sort(ch.begin(), ch.end(),
                  [&](int a, int b) { return min_leaf_[a] < min_leaf_[b]; });

    leaf_vertex_.assign(n_ + 1, -1);
    for (int v = 0; v < V; ++v)
        if (children_[v].empty()) leaf_vertex_[label_[v]] = v;

    for (int v = 1; v < V; ++v)
        if (!children_[v].empty()) internal_edges_.push_back(v);

    std::function<void(int, std::string&)> emit = [&](int v, std::string& out) {
        if (children_[v].empty()) {
            out += std::to_string(label_[v]);
            return;
        }
        out += '(';
        bool first = true;
        for (int c : children_[v]) {
            if (!first) out += ',';
            first = false;
            emit(c, out);
        }
        out += ')';
    };
    emit(0, topology_key_);
}

int Tree::leaf_vertex(int lbl) const {
    if (lbl < 1 || lbl > n_)
        throw UnknownLabel("label " + std::to_string(lbl) + " not in 1.." + std::to_string(n_));
    return leaf_vertex_[lbl];
}

int Tree::lca(int u, int v) const {
    while (depth_[u] > depth_[v]) u = parent_[u];
    while (depth_[v] > depth_[u]) v = parent_[v];
    while (u != v) {
        u = parent_[u];
        v = parent_[v];
    }
    return u;
}

bool Tree::is_binary() const {
    for (int v = 0; v < vertex_count(); ++v)
        if (!children_[v].empty() && children_[v].size() != 2) return false;
    return true;
}

double Tree::total_weight() const {
    double s = 0.0;
    for (int v = 1; v < vertex_count(); ++v) s += weight_[v];
    return s;
}

// ---------------------------------------------------------------------------
// Newick
// ---------------------------------------------------------------------------

namespace {

class NewickParser {
public:
    explicit NewickParser(const std::string& text) : s_(text) {}

    Tree parse() {
        skip_ws();
        if (peek() != '(')
            throw SyntaxError("tree must start with '(' (single leaves are not trees)");
        parse_group(-1);
        skip_ws();
        // A trailing ':w' on the root group is grammatical; there is no root
        // edge, so the value is read and dropped.
        if (peek() == ':') {
            get();
            parse_number();
            skip_ws();
        }
        if (peek() != ';') throw SyntaxError("expected ';' at position " + std::to_string(pos_));
        get();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError("trailing characters after ';'");
        return Tree(std::move(parent_), std::move(label_), std::move(weight_));
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    int new_vertex(int parent) {
        parent_.push_back(parent);
        label_.push_back(0);
        weight_.push_back(1.0); // default branch length
        return static_cast<int>(parent_.size()) - 1;
    }

    double parse_number() {
        skip_ws();
        std::size_t start = pos_;
        if (peek() == '-' || peek() == '+') ++pos_;
        bool digits = false;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            ++pos_;
            digits = true;
        }
        if (peek() == '.') {
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                ++pos_;
                digits = true;
            }
        }
        if (peek() == 'e' || peek() == 'E') {
            ++pos_;
            if (peek() == '-' || peek() == '+') ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw SyntaxError("malformed exponent at position " + std::to_string(pos_));
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        if (!digits) throw SyntaxError("expected number at position " + std::to_string(start));
        double value = 0.0;
        auto res = std::from_chars(s_.data() + start, s_.data() + pos_, value);
        if (res.ec != std::errc())
            throw SyntaxError("unparsable number at position " + std::to_string(start));
        return value;
    }

    void parse_leaf(int parent) {
        skip_ws();
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start) throw SyntaxError("expected leaf label at position " + std::to_string(start));
        if (s_[start] == '0')
            throw LabelError("leaf label 0 is reserved for the root (and no leading zeros)");
        int lbl = 0;
        auto res = std::from_chars(s_.data() + start, s_.data() + pos_, lbl);
        if (res.ec != std::errc()) throw LabelError("leaf label out of range");
        int v = new_vertex(parent);
        label_[v] = lbl;
        maybe_weight(v);
    }

    void maybe_weight(int v) {
        skip_ws();
        if (peek() == ':') {
            get();
            double w = parse_number();
            if (w < 0.0) throw ShapeError("negative branch length");
            weight_[v] = w;
        }
    }

    void parse_subtree(int parent) {
        skip_ws();
        if (peek() == '(') {
            int v = new_vertex(parent);
            parse_group_children(v);
            maybe_weight(v);
        } else {
            parse_leaf(parent);
        }
    }

    void parse_group(int parent) {
        int v = new_vertex(parent);
        parse_group_children(v);
    }

    void parse_group_children(int v) {
        get(); // '('
        int count = 0;
        for (;;) {
            parse_subtree(v);
            ++count;
            skip_ws();
            char c = peek();
            if (c == ',') {
                get();
                continue;
            }
            if (c == ')') {
                get();
                break;
            }
            throw SyntaxError("expected ',' or ')' at position " + std::to_string(pos_));
        }
        if (count < 2)
            throw ShapeError("single-child group creates a degree-2 internal vertex");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    std::vector<int> parent_;
    std::vector<int> label_;
    std::vector<double> weight_;
};

} // namespace

Tree parse_newick(const std::string& text) { return NewickParser(text).parse(); }

std::string serialize_newick(const Tree& t) {
    std::string out;
    std::function<void(int)> emit = [&](int v) {
        if (t.is_leaf(v)) {
            out += std::to_string(t.label(v));
        } else {
            out += '(';
            bool first = true;
            for (int c : t.children(v)) { // already in canonical order
                if (!first) out += ',';
                first = false;
                emit(c);
            }
            out += ')';
        }
        if (v != t.root()) {
            out += ':';
            out += format_weight(t.weight(v));
        }
    };
    emit(t.root());
    out += ';';
    return out;
}

bool weight_identical(const Tree& a, const Tree& b) {
    if (a.topology_key() != b.topology_key()) return false;
    // Same canonical topology: compare weights position by position along the
    // canonical traversal.
    std::vector<double> wa, wb;
    std::function<void(const Tree&, int, std::vector<double>&)> walk =
        [&](const Tree& t, int v, std::vector<double>& out) {
            if (v != t.root()) out.push_back(t.weight(v));
            for (int c : t.children(v)) walk(t, c, out);
        };
    walk(a, a.root(), wa);
    walk(b, b.root(), wb);
    return wa == wb;
}

std::set<std::vector<int>> clades(const Tree& t) {
    std::set<std::vector<int>> out;
    std::vector<std::vector<int>> below(t.vertex_count());
    // children are processed before parents when iterating by decreasing depth
    std::vector<int> order(t.vertex_count());
    for (int v = 0; v < t.vertex_count(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return t.depth(x) > t.depth(y); });
    for (int v : order) {
        if (t.is_leaf(v)) {
            below[v] = {t.label(v)};
        } else {
            for (int c : t.children(v)) {
                below[v].insert(below[v].end(), below[c].begin(), below[c].end());
            }
            std::sort(below[v].begin(), below[v].end());
        }
        if (v != t.root() && !t.is_leaf(v)) out.insert(below[v]);
    }
    return out;
}

double leaf_path_length(const Tree& t, int a, int b, bool weighted) {
    if (a == b) throw InvalidArgument("path endpoints must differ");
    int u = t.leaf_vertex(a);
    int v = t.leaf_vertex(b);
    int w = t.lca(u, v);
    double len = 0.0;
    for (int x = u; x != w; x = t.parent(x)) len += weighted ? t.weight(x) : 1.0;
    for (int x = v; x != w; x = t.parent(x)) len += weighted ? t.weight(x) : 1.0;
    return len;
}

Tree contract(const Tree& t, int edge_vertex) {
    if (edge_vertex <= 0 || edge_vertex >= t.vertex_count())
        throw InvalidArgument("no such edge");
    if (t.is_leaf(edge_vertex))
        throw LeafEdgeError("contracting a leaf edge would delete label " +
                            std::to_string(t.label(edge_vertex)));
    int keep = t.parent(edge_vertex);
    // Re-number vertices, dropping edge_vertex; its children move to `keep`.
    std::vector<int> remap(t.vertex_count(), -1);
    int next = 0;
    for (int v = 0; v < t.vertex_count(); ++v)
        if (v != edge_vertex) remap[v] = next++;
    std::vector<int> parent(next), label(next);
    std::vector<double> weight(next);
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (v == edge_vertex) continue;
        int p = t.parent(v);
        if (p == edge_vertex) p = keep;
        parent[remap[v]] = (p == -1) ? -1 : remap[p];
        label[remap[v]] = t.label(v);
        weight[remap[v]] = t.weight(v);
    }
    return Tree(std::move(parent), std::move(label), std::move(weight));
}

std::uint64_t count_binary_topologies(int n) {
    if (n < 2) throw SizeError("need n >= 2 leaves");
    std::uint64_t r = 1;
    for (int i = 1; i <= n - 1; ++i) {
        std::uint64_t factor = 2 * static_cast<std::uint64_t>(i) - 1;
        if (r > std::numeric_limits<std::uint64_t>::max() / factor)
            throw OverflowError("(2n-3)!! overflows 64 bits for n = " + std::to_string(n));
        r *= factor;
    }
    return r;
}

namespace {

// Mutable scratch representation used only by the enumerator.
struct Proto {
    std::vector<int> parent;
    std::vector<int> label;
};

Tree materialize(const Proto& p) {
    // Root may be any index in the proto; rebuild with root first.
    int V = static_cast<int>(p.parent.size());
    int root = -1;
    for (int v = 0; v < V; ++v)
        if (p.parent[v] == -1) root = v;
    std::vector<int> remap(V, -1);
    remap[root] = 0;
    int next = 1;
    for (int v = 0; v < V; ++v)
        if (v != root) remap[v] = next++;
    std::vector<int> parent(V), label(V);
    std::vector<double> weight(V, 1.0);
    for (int v = 0; v < V; ++v) {
        parent[remap[v]] = (p.parent[v] == -1) ? -1 : remap[p.parent[v]];
        label[remap[v]] = p.label[v];
    }
    return Tree(std::move(parent), std::move(label), std::move(weight));
}

} // namespace

std::vector<Tree> enumerate_binary_topologies(int n) {
    if (n < 2) throw SizeError("need n >= 2 leaves");
    if (n > 8) throw SizeError("topology enumeration is capped at n = 8");
    // Start from the unique 2-leaf tree and insert leaves 3..n into every
    // edge plus the position above the root: 2k-1 growth points per tree.
    std::vector<Proto> protos;
    protos.push_back({{-1, 0, 0}, {0, 1, 2}});
    for (int leaf = 3; leaf <= n; ++leaf) {
        std::vector<Proto> grown;
        for (const Proto& p : protos) {
            int V = static_cast<int>(p.parent.size());
            for (int v = 0; v < V; ++v) { // subdivide the edge above v
                if (p.parent[v] == -1) continue;
                Proto q = p;
                int mid = V;
                q.parent.push_back(q.parent[v]);
                q.label.push_back(0);
                q.parent.push_back(mid);
                q.label.push_back(leaf);
                q.parent[v] = mid;
                grown.push_back(std::move(q));
            }
            { // new root with the old root and the new leaf as children
                Proto q = p;
                int old_root = -1;
                for (int v = 0; v < V; ++v)
                    if (q.parent[v] == -1) old_root = v;
                int new_root = V;
                q.parent.push_back(-1);
                q.label.push_back(0);
                q.parent.push_back(new_root);
                q.label.push_back(leaf);
                q.parent[old_root] = new_root;
                grown.push_back(std::move(q));
            }
        }
        protos = std::move(grown);
    }
    std::vector<Tree> out;
    out.reserve(protos.size());
    for (const Proto& p : protos) out.push_back(materialize(p));
    return out;
}

} // namespace treedist
