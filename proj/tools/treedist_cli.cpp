// treedist command-line front-end. Talks to the engine exclusively through
// the C API in treedist.h.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treedist.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitEngine = 3;

std::string last_error() {
    char buf[1024];
    td_last_error(buf, sizeof(buf));
    return buf;
}

struct TreeHandle {
    td_tree* t = nullptr;
    TreeHandle() = default;
    explicit TreeHandle(td_tree* p) : t(p) {}
    TreeHandle(TreeHandle&& o) noexcept : t(o.t) { o.t = nullptr; }
    TreeHandle& operator=(TreeHandle&& o) noexcept {
        if (this != &o) {
            td_tree_free(t);
            t = o.t;
            o.t = nullptr;
        }
        return *this;
    }
    TreeHandle(const TreeHandle&) = delete;
    TreeHandle& operator=(const TreeHandle&) = delete;
    ~TreeHandle() { td_tree_free(t); }
};

struct InputLine {
    std::string text;
    int lineno = 0;
};

// One tree per non-empty, non-comment line.
std::vector<InputLine> read_tree_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        std::exit(kExitInput);
    }
    std::vector<InputLine> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        if (line[a] == '#') continue;
        out.push_back({line, lineno});
    }
    return out;
}

std::vector<TreeHandle> parse_trees(const std::vector<InputLine>& lines, const std::string& path) {
    std::vector<TreeHandle> trees;
    trees.reserve(lines.size());
    for (const auto& l : lines) {
        td_tree* t = nullptr;
        td_status s = td_tree_parse(l.text.c_str(), &t);
        if (s != TD_OK) {
            std::cerr << "error: " << path << ":" << l.lineno << ": " << td_status_name(s)
                      << ": " << last_error() << "\n";
            std::exit(kExitInput);
        }
        trees.emplace_back(t);
    }
    if (trees.empty()) {
        std::cerr << "error: " << path << ": no trees\n";
        std::exit(kExitInput);
    }
    int n = td_tree_leaf_count(trees[0].t);
    for (std::size_t i = 1; i < trees.size(); ++i) {
        if (td_tree_leaf_count(trees[i].t) != n) {
            std::cerr << "error: " << path << ":" << lines[i].lineno
                      << ": label set differs from the first tree ("
                      << td_tree_leaf_count(trees[i].t) << " vs " << n << " leaves)\n";
            std::exit(kExitInput);
        }
    }
    return trees;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        std::exit(kExitInput);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        std::exit(kExitInput);
    }
    out << content;
}

std::string format_value(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CellFlags {
    int i, j;
    std::vector<std::string> flags;
};

int run_dist(const std::string& input, const std::string& metric, const std::string& out_path,
             const std::string& format, int jobs, int node_k, const std::string& class_map_path) {
    auto lines = read_tree_lines(input);
    auto trees = parse_trees(lines, input);
    const int m = static_cast<int>(trees.size());

    std::string metric_name = metric;
    if (metric == "node" && node_k == 2) metric_name = "node2";

    std::string class_map_text;
    td_options opts{nullptr, nullptr};
    if (!class_map_path.empty()) {
        class_map_text = read_file(class_map_path);
        opts.class_map_a = class_map_text.c_str();
        opts.class_map_b = class_map_text.c_str();
    }

    // Lower triangle computed, mirrored; diagonals are fixed per metric.
    double diag = 0.0;
    std::vector<double> diag_per_tree(m, 0.0);
    if (metric_name == "cophenetic") diag = 1.0;
    for (int i = 0; i < m; ++i) {
        diag_per_tree[i] = diag;
        if (metric_name == "align")
            diag_per_tree[i] = static_cast<double>(td_tree_internal_edge_count(trees[i].t));
    }

    struct Cell {
        int i, j;
    };
    std::vector<Cell> cells;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) cells.push_back({i, j});

    std::vector<double> values(cells.size(), 0.0);
    std::vector<td_report> reports(cells.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::optional<std::pair<std::size_t, std::string>> first_error; // by cell index

    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
    if (!cells.empty() && static_cast<std::size_t>(jobs) > cells.size())
        jobs = static_cast<int>(cells.size());

    auto worker = [&] {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= cells.size()) return;
            td_report rep{};
            td_status s = td_distance(trees[cells[k].i].t, trees[cells[k].j].t,
                                      metric_name.c_str(), &opts, &rep);
            if (s != TD_OK) {
                std::lock_guard<std::mutex> lock(err_mutex);
                std::string msg = std::string(td_status_name(s)) + ": " + last_error();
                if (!first_error || k < first_error->first) first_error = {k, msg};
                return;
            }
            values[k] = rep.value;
            reports[k] = rep;
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    if (first_error) {
        auto [k, msg] = *first_error;
        std::cerr << "error: metric " << metric_name << " failed on pair (" << cells[k].i << ","
                  << cells[k].j << ") [input lines " << lines[cells[k].i].lineno << ", "
                  << lines[cells[k].j].lineno << "]: " << msg << "\n";
        return kExitEngine;
    }

    std::vector<std::vector<double>> matrix(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i) matrix[i][i] = diag_per_tree[i];
    for (std::size_t k = 0; k < cells.size(); ++k) {
        matrix[cells[k].i][cells[k].j] = values[k];
        matrix[cells[k].j][cells[k].i] = values[k]; // mirrored, not recomputed
    }

    std::vector<CellFlags> flagged;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        std::vector<std::string> fl;
        if (reports[k].flag_ambiguous) fl.push_back("ambiguous");
        if (reports[k].flag_not_symmetric_input) fl.push_back("not-symmetric-input");
        if (reports[k].flag_degenerate) fl.push_back("degenerate");
        if (!fl.empty()) flagged.push_back({cells[k].i, cells[k].j, std::move(fl)});
    }

    std::string body;
    if (format == "tsv") {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (j) body += '\t';
                body += format_value(matrix[i][j]);
            }
            body += '\n';
        }
    } else {
        json j;
        j["metric"] = metric_name;
        j["trees"] = m;
        json rows = json::array();
        for (int i = 0; i < m; ++i) {
            json row = json::array();
            for (int jj = 0; jj < m; ++jj)
                row.push_back(std::isnan(matrix[i][jj]) ? json(nullptr) : json(matrix[i][jj]));
            rows.push_back(std::move(row));
        }
        j["matrix"] = std::move(rows);
        json fl = json::array();
        for (const auto& f : flagged) fl.push_back({{"i", f.i}, {"j", f.j}, {"flags", f.flags}});
        j["flags"] = std::move(fl);
        body = j.dump(2);
        body += '\n';
    }
    write_output(out_path, body);

    if (format == "tsv" && !flagged.empty()) {
        json fl = json::array();
        for (const auto& f : flagged) fl.push_back({{"i", f.i}, {"j", f.j}, {"flags", f.flags}});
        std::string sidecar = fl.dump(2) + "\n";
        if (!out_path.empty() && out_path != "-")
            write_output(out_path + ".flags.json", sidecar);
        else
            std::cerr << sidecar;
    }
    return kExitOk;
}

int run_encode(const std::string& input, const std::string& out_path) {
    auto lines = read_tree_lines(input);
    auto trees = parse_trees(lines, input);
    std::string body =
        "# canonical split-vector blocks, one per input tree, blank-line separated\n"
        "# entries: <1-based canonical split index> <weight>; zero-weight internal\n"
        "# edges are omitted and leaf edges are not represented\n";
    for (std::size_t i = 0; i < trees.size(); ++i) {
        char* text = nullptr;
        td_status s = td_tree_encode(trees[i].t, &text);
        if (s != TD_OK) {
            std::cerr << "error: " << input << ":" << lines[i].lineno << ": "
                      << td_status_name(s) << ": " << last_error() << "\n";
            return kExitInput;
        }
        body += text;
        td_string_free(text);
        if (i + 1 < trees.size()) body += '\n';
    }
    write_output(out_path, body);
    return kExitOk;
}

int run_decode(const std::string& input, const std::string& out_path) {
    std::string content = read_file(input);
    // blocks separated by blank lines
    std::vector<std::string> blocks;
    {
        std::istringstream in(content);
        std::string line, cur;
        bool any = false;
        while (std::getline(in, line)) {
            std::size_t a = line.find_first_not_of(" \t\r");
            if (a == std::string::npos) {
                if (any) blocks.push_back(cur);
                cur.clear();
                any = false;
                continue;
            }
            if (line[a] == '#') continue;
            cur += line;
            cur += '\n';
            any = true;
        }
        if (any) blocks.push_back(cur);
    }
    if (blocks.empty()) {
        std::cerr << "error: " << input << ": no vector blocks\n";
        return kExitInput;
    }
    std::string body = "# decoded trees; leaf edges carry the conventional weight 1\n";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        td_tree* t = nullptr;
        td_status s = td_vector_decode(blocks[i].c_str(), &t);
        if (s != TD_OK) {
            std::cerr << "error: " << input << ": block " << (i + 1) << ": "
                      << td_status_name(s) << ": " << last_error() << "\n";
            return kExitInput;
        }
        char* newick = nullptr;
        td_tree_to_newick(t, &newick);
        body += newick;
        body += '\n';
        td_string_free(newick);
        td_tree_free(t);
    }
    write_output(out_path, body);
    return kExitOk;
}

int run_validate(const std::string& input) {
    std::ifstream in(input);
    if (!in) {
        std::cerr << "error: cannot open " << input << "\n";
        return kExitInput;
    }
    std::string line;
    int lineno = 0;
    bool all_ok = true;
    bool first_reported = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos || line[a] == '#') continue;
        td_tree* t = nullptr;
        td_status s = td_tree_parse(line.c_str(), &t);
        if (s == TD_OK) {
            std::cout << input << ":" << lineno << ": OK (" << td_tree_leaf_count(t)
                      << " leaves, " << td_tree_internal_edge_count(t) << " internal edges)\n";
            td_tree_free(t);
        } else {
            all_ok = false;
            std::cout << input << ":" << lineno << ": " << td_status_name(s) << ": "
                      << last_error() << "\n";
            if (!first_reported) {
                std::cerr << "error: " << input << ":" << lineno << ": " << td_status_name(s)
                          << ": " << last_error() << "\n";
                first_reported = true;
            }
        }
    }
    return all_ok ? kExitOk : kExitInput;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"treedist — comparison distances for leaf-labeled weighted trees"};
    app.require_subcommand(1);

    std::string input, out_path, format = "tsv", metric = "rf", class_map;
    int jobs = 0, node_k = 1;

    auto* dist = app.add_subcommand("dist", "pairwise distance matrix over a tree file");
    dist->add_option("input", input, "file with one Newick tree per line")->required();
    dist->add_option("--metric", metric,
                     "rf|rfl|quartet|triplet|triplet-length|mast|align|node|node2|"
                     "cophenetic|simprob|geodesic|cone");
    dist->add_option("--out", out_path, "output path (default stdout)");
    dist->add_option("--format", format, "tsv|json")
        ->check(CLI::IsMember({"tsv", "json"}));
    dist->add_option("--jobs", jobs, "worker threads (default: hardware)");
    dist->add_option("--k", node_k, "node distance exponent (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    dist->add_option("--class-map", class_map,
                     "cophenetic class values: '<vertex-index> <class>' lines, vertices "
                     "indexed in canonical preorder");

    std::string enc_in, enc_out;
    auto* enc = app.add_subcommand("encode", "tree file -> split-vector file");
    enc->add_option("input", enc_in, "file with one Newick tree per line")->required();
    enc->add_option("--out", enc_out, "output path (default stdout)");

    std::string dec_in, dec_out;
    auto* dec = app.add_subcommand("decode", "split-vector file -> tree file");
    dec->add_option("input", dec_in, "file with blank-line separated vector blocks")->required();
    dec->add_option("--out", dec_out, "output path (default stdout)");

    std::string val_in;
    auto* val = app.add_subcommand("validate", "check a tree file line by line");
    val->add_option("input", val_in, "file with one Newick tree per line")->required();

    CLI11_PARSE(app, argc, argv);

    if (dist->parsed()) return run_dist(input, metric, out_path, format, jobs, node_k, class_map);
    if (enc->parsed()) return run_encode(enc_in, enc_out);
    if (dec->parsed()) return run_decode(dec_in, dec_out);
    if (val->parsed()) return run_validate(val_in);
    return kExitInput;
}
