#pragma once

#include <stdexcept>
#include <string>

namespace curh {

// Error taxonomy mapped to CLI exit codes (see tools/main.cpp).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StageOrderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace curh
