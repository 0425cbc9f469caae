#include "pinlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

namespace pinlab {

std::string default_output_dir() {
    const char* env = std::getenv("PINLAB_OUT");
    return (env && *env) ? std::string(env) : std::string(".");
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

csv_writer::csv_writer(const std::string& path, const std::vector<std::string>& columns)
    : path_(path), out_(path), ncols_(columns.size()) {
    if (!out_) throw std::runtime_error("csv_writer: cannot open " + path);
    for (size_t i = 0; i < columns.size(); ++i)
        out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
}

void csv_writer::row(const std::vector<std::string>& cells) {
    if (cells.size() != ncols_) throw std::runtime_error("csv_writer: column count mismatch");
    for (size_t i = 0; i < cells.size(); ++i)
        out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
}

void csv_writer::row_values(const std::vector<double>& cells) {
    std::vector<std::string> s;
    s.reserve(cells.size());
    for (double v : cells) s.push_back(format_double(v));
    row(s);
}

void write_manifest(const run_manifest& m, const std::string& path) {
    nlohmann::json j;
    j["schema"] = "manifest.v1";
    j["version"] = kVersion;
    j["command"] = m.command;
    j["seed"] = m.seed;
    j["config"] = m.config_json.empty() ? nlohmann::json::object()
                                        : nlohmann::json::parse(m.config_json);
    j["seconds"] = m.seconds;
    j["outputs"] = m.outputs;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
    out << j.dump(2) << "\n";
}

}  // namespace pinlab
