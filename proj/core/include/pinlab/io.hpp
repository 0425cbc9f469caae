#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace pinlab {

inline constexpr const char* kVersion = "1.0.0";

// Default output directory: $PINLAB_OUT when set, else the current directory.
std::string default_output_dir();

// 17-significant-digit serialization used by every CSV emitter; round-trips
// doubles exactly.
std::string format_double(double x);

// Minimal CSV emitter with a fixed column set.
class csv_writer {
public:
    csv_writer(const std::string& path, const std::vector<std::string>& columns);

    void row(const std::vector<std::string>& cells);  // arity checked
    void row_values(const std::vector<double>& cells);

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream out_;
    size_t ncols_;
};

// Run description written next to every command output; layout documented
// in schemas/manifest.v1.md. Re-running the echoed config reproduces the
// outputs bit for bit.
struct run_manifest {
    std::string command;
    std::string config_json;  // compact JSON object, command-specific echo
    std::uint64_t seed = 0;
    double seconds = 0.0;
    std::vector<std::string> outputs;
};

void write_manifest(const run_manifest& m, const std::string& path);

}  // namespace pinlab
