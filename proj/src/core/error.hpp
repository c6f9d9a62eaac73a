#ifndef TREEDIST_CORE_ERROR_HPP
#define TREEDIST_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace treedist {

// Error categories. Values are stable: the C API exposes them verbatim.
enum class ErrorCode : int {
    ok = 0,
    syntax = 1,              // malformed Newick / vector text
    label = 2,               // duplicate, missing or non-contiguous leaf labels
    shape = 3,               // degree-2 internal vertex, negative weight, bad topology
    size = 4,                // input outside the supported size range
    domain = 5,              // value not in the expected domain (e.g. not a valid split)
    label_set_mismatch = 6,  // the two trees have different label sets
    incompatible_splits = 7, // split vector does not define a tree
    degenerate_cover = 8,    // extension problem hit a sub-1 cover with an empty block
    zero_length_tree = 9,    // total edge weight is zero
    overflow = 10,           // integer overflow in a count
    unknown_label = 11,      // label not in {1..n}
    leaf_edge = 12,          // operation requires an internal edge
    unknown_metric = 13,     // metric name not recognized
    invalid_argument = 14,   // bad argument (null handle, malformed option, ...)
    iteration_cap = 15,      // GTP refinement exceeded its structural bound
    internal = 16,           // engine invariant violated (a bug, not bad input)
    io = 17,                 // file could not be read or written
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct SyntaxError : Error {
    explicit SyntaxError(const std::string& m) : Error(ErrorCode::syntax, m) {}
};
struct LabelError : Error {
    explicit LabelError(const std::string& m) : Error(ErrorCode::label, m) {}
};
struct ShapeError : Error {
    explicit ShapeError(const std::string& m) : Error(ErrorCode::shape, m) {}
};
struct SizeError : Error {
    explicit SizeError(const std::string& m) : Error(ErrorCode::size, m) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error(ErrorCode::domain, m) {}
};
struct LabelSetMismatch : Error {
    explicit LabelSetMismatch(const std::string& m) : Error(ErrorCode::label_set_mismatch, m) {}
};
struct IncompatibleSplits : Error {
    explicit IncompatibleSplits(const std::string& m) : Error(ErrorCode::incompatible_splits, m) {}
};
struct DegenerateCover : Error {
    explicit DegenerateCover(const std::string& m) : Error(ErrorCode::degenerate_cover, m) {}
};
struct ZeroLengthTree : Error {
    explicit ZeroLengthTree(const std::string& m) : Error(ErrorCode::zero_length_tree, m) {}
};
struct OverflowError : Error {
    explicit OverflowError(const std::string& m) : Error(ErrorCode::overflow, m) {}
};
struct UnknownLabel : Error {
    explicit UnknownLabel(const std::string& m) : Error(ErrorCode::unknown_label, m) {}
};
struct LeafEdgeError : Error {
    explicit LeafEdgeError(const std::string& m) : Error(ErrorCode::leaf_edge, m) {}
};
struct UnknownMetric : Error {
    explicit UnknownMetric(const std::string& m) : Error(ErrorCode::unknown_metric, m) {}
};
struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& m) : Error(ErrorCode::invalid_argument, m) {}
};
struct IterationCap : Error {
    explicit IterationCap(const std::string& m) : Error(ErrorCode::iteration_cap, m) {}
};
struct InternalInvariantViolation : Error {
    explicit InternalInvariantViolation(const std::string& m) : Error(ErrorCode::internal, m) {}
};

} // namespace treedist

#endif
