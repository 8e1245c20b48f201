#pragma once

#include <stdexcept>
#include <string>

namespace mordell {

// Error hierarchy mirrored by the CLI exit codes:
//   schema_error       -> 2 (malformed input: flags, JSON files)
//   precondition_error -> 3 (mathematically invalid request)
//   invariant_error    -> 4 (a proven identity failed; indicates a bug)
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct schema_error : error {
    explicit schema_error(const std::string& what) : error(what) {}
};

struct precondition_error : error {
    explicit precondition_error(const std::string& what) : error(what) {}
};

struct invariant_error : error {
    explicit invariant_error(const std::string& what) : error(what) {}
};

// The n = 0 term of a dT/T expansion has no single-valued antiderivative.
struct residue_obstruction_error : precondition_error {
    explicit residue_obstruction_error(const std::string& what) : precondition_error(what) {}
};

} // namespace mordell
