#pragma once

// Exact-match accuracy of a cascade, overall and per morphological subsystem,
// plus the report CSV.

#include "morphkit/cascade.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace morphkit {

using AccuracyMap = std::map<Property, double>;

/// Per-property fraction of entries whose predicted value equals the gold one
/// (null is an ordinary value). Covers the cascade's properties.
/// Throws Error(precondition) on an empty set.
AccuracyMap evaluate(const Cascade& cascade, std::span<const LabelledEntry> entries,
                     SegmentationSource source = SegmentationSource::automatic);

/// Unweighted mean over the map's properties.
double mean_accuracy(const AccuracyMap& accuracies);

struct EvalReport {
    std::vector<Property> order;
    std::optional<AccuracyMap> traditional;
    std::optional<AccuracyMap> gold;
    std::optional<AccuracyMap> con;
    std::optional<AccuracyMap> nc;

    std::size_t traditional_count = 0;
    std::size_t gold_count = 0;
    std::size_t con_count = 0;
    std::size_t nc_count = 0;
    std::size_t train_count = 0;
    std::uint64_t seed = 0;
};

/// Gold-standard regime: automatic segmentation, accuracies overall and per
/// origin. A group with no members has no column. Throws Error(precondition)
/// listing the surfaces whose origin is unknown.
EvalReport evaluate_split(const Cascade& cascade, std::span<const LabelledEntry> gold);

/// property,acc_traditional,acc_gold,acc_con,acc_nc; one row per property in
/// cascade order, short property names, missing columns left blank.
void write_report_csv(std::ostream& out, const EvalReport& report);
void export_report(const EvalReport& report, const std::filesystem::path& path);

/// Reads back the accuracy columns (counts and metadata are not stored).
EvalReport read_report_csv(std::istream& in);

/// Plain-text bar chart: traditional vs gold, then CON vs NC.
std::string render_bars(const EvalReport& report, int width = 40);

}  // namespace morphkit
