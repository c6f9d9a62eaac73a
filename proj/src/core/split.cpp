#include "split.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "error.hpp"

namespace treedist {

namespace {

constexpr int kMaxRankedN = 120; // binomial table fits 128 bits up to here

// C(i, j) in 128 bits, additive DP so nothing overflows transiently.
const SplitIndex* binomial_row(int i) {
    static const auto table = [] {
        constexpr int N = kMaxRankedN + 2;
        static std::array<std::array<SplitIndex, N>, N> t{};
        for (int a = 0; a < N; ++a) {
            t[a][0] = 1;
            for (int b = 1; b <= a; ++b)
                t[a][b] = t[a - 1][b - 1] + (b <= a - 1 ? t[a - 1][b] : 0);
        }
        return &t;
    }();
    return (*table)[i].data();
}

SplitIndex binom(int a, int b) {
    if (b < 0 || b > a) return 0;
    return binomial_row(a)[b];
}

// 0-based lexicographic rank of the sorted k-subset x of {0..N-1}.
SplitIndex subset_rank(const std::vector<int>& x, int N) {
    SplitIndex rank = 0;
    int prev = -1;
    const int k = static_cast<int>(x.size());
    for (int i = 0; i < k; ++i) {
        for (int v = prev + 1; v < x[i]; ++v)
            rank += binom(N - 1 - v, k - 1 - i);
        prev = x[i];
    }
    return rank;
}

std::vector<int> subset_unrank(SplitIndex rank, int N, int k) {
    std::vector<int> out;
    out.reserve(k);
    int v = 0;
    for (int i = 0; i < k; ++i) {
        for (;; ++v) {
            SplitIndex block = binom(N - 1 - v, k - 1 - i);
            if (rank < block) break;
            rank -= block;
        }
        out.push_back(v++);
    }
    return out;
}

void require_rankable(int n) {
    if (n > kMaxRankedN)
        throw SizeError("split indexing supports n <= " + std::to_string(kMaxRankedN));
}

} // namespace

std::string to_string(SplitIndex v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s += static_cast<char>('0' + static_cast<int>(v % 10));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

SplitIndex parse_split_index(const std::string& s) {
    if (s.empty()) throw SyntaxError("empty split index");
    SplitIndex v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw SyntaxError("split index must be a decimal integer");
        SplitIndex next = v * 10 + static_cast<unsigned>(c - '0');
        if (next < v) throw OverflowError("split index overflows 128 bits");
        v = next;
    }
    return v;
}

Split::Split(int n, std::vector<int> block) : n_(n) {
    if (n < 2) throw DomainError("splits need a label set {0..n} with n >= 2");
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());
    for (int x : block)
        if (x < 0 || x > n) throw DomainError("split block label out of range");
    const int total = n + 1;
    const int bs = static_cast<int>(block.size());
    const int cs = total - bs;
    if (bs < 2 || cs < 2)
        throw DomainError("both blocks of a split need at least 2 labels");
    bool keep_block;
    if (bs != cs) {
        keep_block = bs < cs;
    } else {
        keep_block = std::binary_search(block.begin(), block.end(), 0);
    }
    if (keep_block) {
        side_ = std::move(block);
    } else {
        side_.reserve(cs);
        std::size_t j = 0;
        for (int x = 0; x <= n; ++x) {
            if (j < block.size() && block[j] == x) {
                ++j;
                continue;
            }
            side_.push_back(x);
        }
    }
    mask_ = LabelMask(n + 1);
    for (int x : side_) mask_.set(x);
}

std::vector<int> Split::complement() const {
    std::vector<int> out;
    out.reserve(n_ + 1 - side_.size());
    std::size_t j = 0;
    for (int x = 0; x <= n_; ++x) {
        if (j < side_.size() && side_[j] == x) {
            ++j;
            continue;
        }
        out.push_back(x);
    }
    return out;
}

std::string Split::to_text() const {
    std::string s = "{";
    for (std::size_t i = 0; i < side_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(side_[i]);
    }
    s += '}';
    return s;
}

bool split_less(const Split& a, const Split& b) {
    if (a.side().size() != b.side().size()) return a.side().size() < b.side().size();
    return a.side() < b.side();
}

SplitIndex split_domain_size(int n) {
    if (n < 3) return 0;
    require_rankable(n);
    SplitIndex total = 0;
    for (int k = 2; k <= n / 2; ++k) total += binom(n + 1, k);
    if (n % 2 == 1) total += binom(n, (n - 1) / 2);
    return total;
}

std::vector<Split> canonical_order(int n) {
    if (n < 3) throw SizeError("no internal splits exist for n < 3");
    if (n > 20) throw SizeError("canonical order materialization is capped at n = 20");
    std::vector<Split> out;
    for (int k = 2; k <= n / 2; ++k) {
        SplitIndex count = binom(n + 1, k);
        for (SplitIndex r = 0; r < count; ++r)
            out.emplace_back(n, subset_unrank(r, n + 1, k));
    }
    if (n % 2 == 1) {
        int k = (n - 1) / 2;
        SplitIndex count = binom(n, k);
        for (SplitIndex r = 0; r < count; ++r) {
            std::vector<int> x = subset_unrank(r, n, k);
            for (int& v : x) ++v; // subsets of {1..n}
            x.insert(x.begin(), 0);
            out.emplace_back(n, std::move(x));
        }
    }
    return out;
}

SplitIndex split_index(const Split& s) {
    const int n = s.n();
    if (n < 3) throw SizeError("no internal splits exist for n < 3");
    require_rankable(n);
    const int k = static_cast<int>(s.side().size());
    if (k <= n / 2) {
        SplitIndex offset = 0;
        for (int j = 2; j < k; ++j) offset += binom(n + 1, j);
        return offset + subset_rank(s.side(), n + 1) + 1;
    }
    // L block: n odd, side of size (n+1)/2 containing 0.
    SplitIndex offset = 0;
    for (int j = 2; j <= n / 2; ++j) offset += binom(n + 1, j);
    std::vector<int> rest(s.side().begin() + 1, s.side().end());
    for (int& v : rest) --v; // rank within subsets of {1..n}
    return offset + subset_rank(rest, n) + 1;
}

Split split_at(int n, SplitIndex index) {
    if (n < 3) throw SizeError("no internal splits exist for n < 3");
    require_rankable(n);
    if (index < 1 || index > split_domain_size(n))
        throw DomainError("split index out of range: " + to_string(index));
    SplitIndex r = index - 1;
    for (int k = 2; k <= n / 2; ++k) {
        SplitIndex count = binom(n + 1, k);
        if (r < count) return Split(n, subset_unrank(r, n + 1, k));
        r -= count;
    }
    std::vector<int> x = subset_unrank(r, n, (n - 1) / 2);
    for (int& v : x) ++v;
    x.insert(x.begin(), 0);
    return Split(n, std::move(x));
}

bool compatible(const Split& a, const Split& b) {
    if (a.n() != b.n()) throw SizeError("splits over different label sets");
    const LabelMask& ma = a.mask();
    const LabelMask& mb = b.mask();
    return !ma.intersects(mb) || !ma.intersects_complement(mb) ||
           !mb.intersects_complement(ma) || !ma.complements_intersect(mb);
}

bool is_compatible_set(const std::vector<Split>& ss) {
    for (std::size_t i = 0; i < ss.size(); ++i)
        for (std::size_t j = i + 1; j < ss.size(); ++j)
            if (!compatible(ss[i], ss[j])) return false;
    return true;
}

std::vector<std::pair<Split, double>> weighted_splits_of(const Tree& t) {
    std::vector<std::pair<Split, double>> out;
    const int n = t.leaf_count();
    // labels below each internal edge's deeper endpoint
    std::vector<std::vector<int>> below(t.vertex_count());
    std::vector<int> order(t.vertex_count());
    for (int v = 0; v < t.vertex_count(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return t.depth(a) > t.depth(b); });
    for (int v : order) {
        if (t.is_leaf(v)) {
            below[v] = {t.label(v)};
        } else {
            for (int c : t.children(v))
                below[v].insert(below[v].end(), below[c].begin(), below[c].end());
        }
    }
    for (int v : t.internal_edges())
        out.emplace_back(Split(n, below[v]), t.weight(v));
    return out;
}

std::vector<Split> splits_of(const Tree& t) {
    std::vector<Split> out;
    for (auto& [s, w] : weighted_splits_of(t)) out.push_back(s);
    return out;
}

double SplitVector::norm() const {
    double s = 0.0;
    for (auto& [i, w] : entries) s += w * w;
    return std::sqrt(s);
}

SplitVector encode(const Tree& t) {
    SplitVector v;
    v.n = t.leaf_count();
    for (auto& [s, w] : weighted_splits_of(t))
        if (w > 0.0) v.entries.emplace_back(split_index(s), w);
    std::sort(v.entries.begin(), v.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

Tree tree_from_splits(int n, const std::vector<std::pair<Split, double>>& splits,
                      const std::vector<double>& leaf_weights) {
    for (std::size_t i = 0; i < splits.size(); ++i) {
        if (splits[i].first.n() != n)
            throw DomainError("split over the wrong label set");
        for (std::size_t j = i + 1; j < splits.size(); ++j) {
            if (splits[i].first == splits[j].first)
                throw IncompatibleSplits("duplicate split " + splits[i].first.to_text());
            if (!compatible(splits[i].first, splits[j].first))
                throw IncompatibleSplits("incompatible splits " + splits[i].first.to_text() +
                                         " and " + splits[j].first.to_text());
        }
    }
    // Each split contributes the clade that avoids the root label; compatible
    // splits give a laminar family, which assembles bottom-up by containment.
    struct Clade {
        std::vector<int> labels;
        double weight;
    };
    std::vector<Clade> cl;
    cl.reserve(splits.size());
    for (auto& [s, w] : splits) {
        std::vector<int> labels = s.side();
        if (!labels.empty() && labels[0] == 0) labels = s.complement();
        cl.push_back({std::move(labels), w});
    }
    std::sort(cl.begin(), cl.end(), [](const Clade& a, const Clade& b) {
        if (a.labels.size() != b.labels.size()) return a.labels.size() > b.labels.size();
        return a.labels < b.labels;
    });

    auto contains = [](const std::vector<int>& big, const std::vector<int>& small) {
        return std::includes(big.begin(), big.end(), small.begin(), small.end());
    };

    const int k = static_cast<int>(cl.size());
    // vertex 0 = root; vertices 1..k = clades (in size-descending order);
    // vertices k+1..k+n = leaves 1..n.
    std::vector<int> parent(1 + k + n, -1), label(1 + k + n, 0);
    std::vector<double> weight(1 + k + n, 1.0);
    for (int i = 0; i < k; ++i) {
        int p = 0;
        for (int j = i - 1; j >= 0; --j) {
            if (contains(cl[j].labels, cl[i].labels)) {
                p = j + 1;
                break;
            }
        }
        parent[i + 1] = p;
        weight[i + 1] = cl[i].weight;
    }
    for (int lbl = 1; lbl <= n; ++lbl) {
        int p = 0;
        for (int j = k - 1; j >= 0; --j) {
            if (std::binary_search(cl[j].labels.begin(), cl[j].labels.end(), lbl)) {
                p = j + 1;
                break;
            }
        }
        int v = k + lbl;
        parent[v] = p;
        label[v] = lbl;
        if (!leaf_weights.empty()) weight[v] = leaf_weights[lbl];
    }
    return Tree(std::move(parent), std::move(label), std::move(weight));
}

Tree split_to_tree(const SplitVector& v) {
    if (v.n < 2) throw SizeError("label count must be at least 2");
    std::vector<std::pair<Split, double>> splits;
    splits.reserve(v.entries.size());
    for (auto& [idx, w] : v.entries) {
        if (w <= 0.0)
            throw DomainError("split vector weights must be positive");
        splits.emplace_back(split_at(v.n, idx), w);
    }
    return tree_from_splits(v.n, splits);
}

SplitVector parse_vector_text(const std::string& block) {
    std::istringstream in(block);
    std::string line;
    SplitVector v;
    bool have_n = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        if (line[a] == '#') continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        std::string body = line.substr(a, b - a + 1);
        if (!have_n) {
            if (body.rfind("n=", 0) != 0)
                throw SyntaxError("vector block must start with 'n=<int>' (line " +
                                  std::to_string(lineno) + ")");
            int n = 0;
            auto res = std::from_chars(body.data() + 2, body.data() + body.size(), n);
            if (res.ec != std::errc() || res.ptr != body.data() + body.size() || n < 2)
                throw SyntaxError("bad label count in vector header");
            v.n = n;
            have_n = true;
            continue;
        }
        std::size_t sp = body.find_last_of(" \t");
        if (sp == std::string::npos)
            throw SyntaxError("vector entry needs '<index-or-side> <weight>' (line " +
                              std::to_string(lineno) + ")");
        std::string head = body.substr(0, body.find_first_of(" \t"));
        std::string tail = body.substr(sp + 1);
        double w = 0.0;
        auto wres = std::from_chars(tail.data(), tail.data() + tail.size(), w);
        if (wres.ec != std::errc() || wres.ptr != tail.data() + tail.size())
            throw SyntaxError("bad weight on line " + std::to_string(lineno));
        if (w <= 0.0)
            throw DomainError("vector weights must be positive (line " +
                              std::to_string(lineno) + ")");
        SplitIndex idx;
        if (!head.empty() && head[0] == '{') {
            if (head.back() != '}')
                throw SyntaxError("unterminated side list on line " + std::to_string(lineno));
            std::vector<int> labels;
            std::string inner = head.substr(1, head.size() - 2);
            std::size_t pos = 0;
            while (pos < inner.size()) {
                std::size_t comma = inner.find(',', pos);
                std::string tok = inner.substr(pos, comma == std::string::npos
                                                        ? std::string::npos
                                                        : comma - pos);
                int lab = 0;
                auto lres = std::from_chars(tok.data(), tok.data() + tok.size(), lab);
                if (lres.ec != std::errc() || lres.ptr != tok.data() + tok.size())
                    throw SyntaxError("bad label in side list on line " + std::to_string(lineno));
                labels.push_back(lab);
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            idx = split_index(Split(v.n, std::move(labels)));
        } else {
            idx = parse_split_index(head);
            if (idx < 1 || idx > split_domain_size(v.n))
                throw DomainError("split index out of range on line " + std::to_string(lineno));
        }
        v.entries.emplace_back(idx, w);
    }
    if (!have_n) throw SyntaxError("empty vector block");
    std::sort(v.entries.begin(), v.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < v.entries.size(); ++i)
        if (v.entries[i].first == v.entries[i - 1].first)
            throw DomainError("duplicate split index " + to_string(v.entries[i].first));
    return v;
}

std::string format_vector_text(const SplitVector& v) {
    std::string out = "n=" + std::to_string(v.n) + "\n";
    for (auto& [idx, w] : v.entries) {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), w);
        out += to_string(idx);
        out += ' ';
        out.append(buf, res.ptr);
        out += '\n';
    }
    return out;
}

} // namespace treedist
