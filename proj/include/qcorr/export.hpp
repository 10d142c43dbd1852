#pragma once

#include <cstdint>
#include <string>

#include "qcorr/experiments.hpp"

namespace qcorr {

inline constexpr const char* kVersion = "0.1.0";

enum class ExportFormat { csv, json };
ExportFormat export_format_from(const std::string& name);

struct ExportMeta {
    std::uint64_t seed = 0;
    std::uint64_t n = 0;
    std::string command;
};

/// Shortest round-trip decimal (std::to_chars); "nan" for undefined values.
std::string format_double(double v);

std::string sweep_to_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);
std::string sweep_to_json(const SweepSpec& spec, const std::vector<SweepRow>& rows,
                          const ExportMeta& meta);

std::string tally_to_csv(const TallyMatrix& tally);
std::string tally_to_json(const TallyMatrix& tally, const ExportMeta& meta);

std::string optimization_to_csv(const OptimizationSummary& summary);
std::string optimization_to_json(const OptimizationSummary& summary, const ExportMeta& meta);

/// Binary write; throws std::runtime_error on IO failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qcorr
