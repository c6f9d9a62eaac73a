#include "treedist.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>

#include <json.hpp>

#include "../core/error.hpp"
#include "../core/geodesic.hpp"
#include "../core/metrics.hpp"
#include "../core/split.hpp"
#include "../core/tree.hpp"

using nlohmann::json;

struct td_tree {
    treedist::Tree impl;
};

namespace {

thread_local std::string g_last_error;

td_status status_of(const treedist::Error& e) {
    using treedist::ErrorCode;
    switch (e.code()) {
        case ErrorCode::ok: return TD_OK;
        case ErrorCode::syntax: return TD_ERR_SYNTAX;
        case ErrorCode::label: return TD_ERR_LABEL;
        case ErrorCode::shape: return TD_ERR_SHAPE;
        case ErrorCode::size: return TD_ERR_SIZE;
        case ErrorCode::domain: return TD_ERR_DOMAIN;
        case ErrorCode::label_set_mismatch: return TD_ERR_LABELSET_MISMATCH;
        case ErrorCode::incompatible_splits: return TD_ERR_INCOMPATIBLE_SPLITS;
        case ErrorCode::degenerate_cover: return TD_ERR_DEGENERATE_COVER;
        case ErrorCode::zero_length_tree: return TD_ERR_ZERO_LENGTH_TREE;
        case ErrorCode::overflow: return TD_ERR_OVERFLOW;
        case ErrorCode::unknown_label: return TD_ERR_UNKNOWN_LABEL;
        case ErrorCode::leaf_edge: return TD_ERR_LEAF_EDGE;
        case ErrorCode::unknown_metric: return TD_ERR_UNKNOWN_METRIC;
        case ErrorCode::invalid_argument: return TD_ERR_INVALID_ARGUMENT;
        case ErrorCode::iteration_cap: return TD_ERR_ITERATION_CAP;
        case ErrorCode::internal: return TD_ERR_INTERNAL;
        case ErrorCode::io: return TD_ERR_IO;
    }
    return TD_ERR_INTERNAL;
}

template <typename F>
td_status guarded(F&& f) {
    try {
        f();
        return TD_OK;
    } catch (const treedist::Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TD_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

treedist::ClassAssignment parse_class_map(const char* text) {
    treedist::ClassAssignment m;
    if (!text) return m;
    std::string s(text);
    std::size_t pos = 0;
    int lineno = 0;
    while (pos < s.size()) {
        std::size_t end = s.find('\n', pos);
        std::string line = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = (end == std::string::npos) ? s.size() : end + 1;
        ++lineno;
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos || line[a] == '#') continue;
        int idx = 0, cls = 0;
        if (std::sscanf(line.c_str(), "%d %d", &idx, &cls) != 2)
            throw treedist::InvalidArgument("class map line " + std::to_string(lineno) +
                                            " must be '<vertex-index> <class>'");
        m[idx] = cls;
    }
    return m;
}

treedist::DistanceReport compute(const td_tree* a, const td_tree* b,
                                 const std::string& metric, const td_options* opts) {
    using namespace treedist;
    if (metric == "rf") return rf(a->impl, b->impl);
    if (metric == "rfl") return rfl(a->impl, b->impl);
    if (metric == "quartet") return quartet(a->impl, b->impl);
    if (metric == "triplet") return triplet(a->impl, b->impl);
    if (metric == "triplet-length") return triplet_length(a->impl, b->impl);
    if (metric == "mast") return mast(a->impl, b->impl);
    if (metric == "align") return align(a->impl, b->impl);
    if (metric == "node") return node_dist(a->impl, b->impl, 1);
    if (metric == "node2") return node_dist(a->impl, b->impl, 2);
    if (metric == "cophenetic") {
        ClassAssignment ca = parse_class_map(opts ? opts->class_map_a : nullptr);
        ClassAssignment cb = parse_class_map(opts ? opts->class_map_b : nullptr);
        return cophenetic(a->impl, b->impl, ca, cb);
    }
    if (metric == "simprob") return similarity_prob(a->impl, b->impl);
    if (metric == "cone") return cone(a->impl, b->impl);
    if (metric == "geodesic") {
        GeodesicResult g = geodesic_distance(a->impl, b->impl);
        DistanceReport r;
        r.metric = "geodesic";
        r.value = g.distance;
        r.notes = g.notes;
        return r;
    }
    throw UnknownMetric("unknown metric '" + metric + "'");
}

json split_index_json(const treedist::Split& s) {
    treedist::SplitIndex idx = treedist::split_index(s);
    if (idx <= static_cast<treedist::SplitIndex>(std::numeric_limits<std::int64_t>::max()))
        return json(static_cast<std::int64_t>(idx));
    return json(treedist::to_string(idx));
}

json report_json(const treedist::DistanceReport& r) {
    json j;
    j["metric"] = r.metric;
    if (std::isnan(r.value))
        j["value"] = nullptr;
    else
        j["value"] = r.value;
    j["flags"] = r.flag_names();
    j["notes"] = r.notes;
    return j;
}

} // namespace

extern "C" {

const char* td_status_name(td_status s) {
    switch (s) {
        case TD_OK: return "ok";
        case TD_ERR_SYNTAX: return "syntax";
        case TD_ERR_LABEL: return "label";
        case TD_ERR_SHAPE: return "shape";
        case TD_ERR_SIZE: return "size";
        case TD_ERR_DOMAIN: return "domain";
        case TD_ERR_LABELSET_MISMATCH: return "labelset-mismatch";
        case TD_ERR_INCOMPATIBLE_SPLITS: return "incompatible-splits";
        case TD_ERR_DEGENERATE_COVER: return "degenerate-cover";
        case TD_ERR_ZERO_LENGTH_TREE: return "zero-length-tree";
        case TD_ERR_OVERFLOW: return "overflow";
        case TD_ERR_UNKNOWN_LABEL: return "unknown-label";
        case TD_ERR_LEAF_EDGE: return "leaf-edge";
        case TD_ERR_UNKNOWN_METRIC: return "unknown-metric";
        case TD_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case TD_ERR_ITERATION_CAP: return "iteration-cap";
        case TD_ERR_INTERNAL: return "internal";
        case TD_ERR_IO: return "io";
    }
    return "unknown";
}

size_t td_last_error(char* buf, size_t cap) {
    if (buf && cap > 0) {
        size_t n = std::min(cap - 1, g_last_error.size());
        std::memcpy(buf, g_last_error.data(), n);
        buf[n] = '\0';
    }
    return g_last_error.size();
}

void td_string_free(char* s) { std::free(s); }

td_status td_tree_parse(const char* newick, td_tree** out) {
    if (!newick || !out) {
        g_last_error = "null argument";
        return TD_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] { *out = new td_tree{treedist::parse_newick(newick)}; });
}

void td_tree_free(td_tree* t) { delete t; }

td_status td_tree_to_newick(const td_tree* t, char** out) {
    if (!t || !out) {
        g_last_error = "null argument";
        return TD_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = dup_string(treedist::serialize_newick(t->impl)); });
}

int td_tree_leaf_count(const td_tree* t) { return t ? t->impl.leaf_count() : 0; }

int td_tree_internal_edge_count(const td_tree* t) {
    return t ? static_cast<int>(t->impl.internal_edges().size()) : 0;
}

td_status td_distance(const td_tree* a, const td_tree* b, const char* metric,
                      const td_options* opts, td_report* out) {
    if (!a || !b || !metric || !out) {
        g_last_error = "null argument";
        return TD_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        treedist::DistanceReport r = compute(a, b, metric, opts);
        out->value = r.value;
        out->flag_ambiguous = r.ambiguous;
        out->flag_not_symmetric_input = r.not_symmetric_input;
        out->flag_degenerate = r.degenerate;
    });
}

td_status td_distance_json(const td_tree* a, const td_tree* b, const char* metric,
                           const td_options* opts, char** json_out) {
    if (!a || !b || !metric || !json_out) {
        g_last_error = "null argument";
        return TD_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        json j = report_json(compute(a, b, metric, opts));
        *json_out = dup_string(j.dump());
    });
}

td_status td_geodesic_json(const td_tree* a, const td_tree* b, char** json_out) {
    if (!a || !b || !json_out) {
        g_last_error = "null argument";
        return TD_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        treedist::GeodesicResult g = treedist::geodesic_distance(a->impl, b->impl);
        json components = json::array();
        for (const auto& c : g.components) {
            json jc;
            jc["shared_split"] = c.shared ? split_index_json(*c.shared) : json(nullptr);
            json support = json::array();
            for (const auto& p : c.support.pairs) {
                json jp;
                jp["A"] = json::array();
                jp["B"] = json::array();
                for (const auto& w : p.A) jp["A"].push_back(split_index_json(w.origin));
                for (const auto& w : p.B) jp["B"].push_back(split_index_json(w.origin));
                support.push_back(std::move(jp));
            }
            jc["support"] = std::move(support);
            jc["term"] = c.term;
            components.push_back(std::move(jc));
        }
        json j;
        j["distance"] = g.distance;
        j["components"] = std::move(components);
        j["notes"] = g.notes;
        *json_out = dup_string(j.dump());
    });
}

td_status td_tree_encode(const td_tree* t, char** vector_text) {
    if (!t || !vector_text) {
        g_last_error = "null argument";
        return TD_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        *vector_text = dup_string(treedist::format_vector_text(treedist::encode(t->impl)));
    });
}

td_status td_vector_decode(const char* vector_text, td_tree** out) {
    if (!vector_text || !out) {
        g_last_error = "null argument";
        return TD_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        treedist::SplitVector v = treedist::parse_vector_text(vector_text);
        *out = new td_tree{treedist::split_to_tree(v)};
    });
}

td_status td_strict_consensus(const td_tree* const* trees, size_t count, td_tree** out) {
    if (!trees || count == 0 || !out) {
        g_last_error = "null argument";
        return TD_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        std::vector<treedist::Tree> ts;
        ts.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            if (!trees[i]) throw treedist::InvalidArgument("null tree handle");
            ts.push_back(trees[i]->impl);
        }
        *out = new td_tree{treedist::strict_consensus(ts)};
    });
}

td_status td_count_binary_topologies(int n, uint64_t* out) {
    if (!out) {
        g_last_error = "null argument";
        return TD_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = treedist::count_binary_topologies(n); });
}

} // extern "C"
