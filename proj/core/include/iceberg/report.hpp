#pragma once

#include <map>
#include <string>
#include <vector>

namespace iceberg {

/// Everything a report needs to make a run reproducible: version, policy
/// choices and content digests of every input. Deliberately excludes the
/// worker count, which must not influence output bytes.
struct RunMetadata {
    std::string engine_version;
    std::string weight_policy;
    std::string reduction_policy;
    double tau = 0.5;
    std::string surface_scope;
    std::string selector; // empty unless the run used one
    struct Input {
        std::string path;
        std::string digest;
    };
    std::map<std::string, Input> inputs;
    std::vector<std::string> warnings;
};

} // namespace iceberg
