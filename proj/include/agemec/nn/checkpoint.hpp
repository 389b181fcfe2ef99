#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "agemec/nn/network.hpp"

namespace agemec::nn {

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Text checkpoint: one header line (architecture hash + length), then one
/// hexfloat value per line. Round-trips bit-exactly.
inline void save_params(const std::filesystem::path& path, const ParamVector& v,
                        std::uint64_t arch_hash) {
    std::ofstream out(path);
    if (!out) throw CheckpointError("cannot write " + path.string());
    out << "agemec-params v1 " << arch_hash << " " << v.size() << "\n";
    out << std::hexfloat;
    for (double x : v) out << x << "\n";
    if (!out) throw CheckpointError("write failed for " + path.string());
}

inline ParamVector load_params(const std::filesystem::path& path, std::uint64_t expect_hash) {
    std::ifstream in(path);
    if (!in) throw CheckpointError("cannot read " + path.string());
    std::string magic, version;
    std::uint64_t hash = 0;
    std::size_t len = 0;
    in >> magic >> version >> hash >> len;
    if (magic != "agemec-params" || version != "v1")
        throw CheckpointError(path.string() + ": not a parameter file");
    if (hash != expect_hash)
        throw CheckpointError(path.string() + ": architecture hash mismatch");
    ParamVector v(len);
    std::string tok;
    for (std::size_t i = 0; i < len; ++i) {
        if (!(in >> tok)) throw CheckpointError(path.string() + ": truncated");
        v[i] = std::strtod(tok.c_str(), nullptr);
    }
    return v;
}

}  // namespace agemec::nn
