#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fchain/mi.hpp"

namespace fchain {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A fully validated run request: which model, which sweep axis and grid,
// block geometry, and output/compute settings. Parsing is strict: unknown
// sections or keys, duplicate keys, malformed numbers, and axis/variant
// contradictions are all ConfigErrors naming the offender.
struct RunConfig {
    ModelSpec spec;
    std::string axis;            // distance | mu | alpha | subsystem
    std::vector<double> values;  // integral entries enforced for integer axes
    Partition partition;
    std::string output_path;
    int precision = 12;
    double holo_c = 1.0;
    int workers = 1;
    std::uint64_t digest = 0;  // FNV-1a of the raw config bytes
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

std::uint64_t fnv1a_digest(const std::string& bytes);

}  // namespace fchain
