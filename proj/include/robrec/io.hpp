#pragma once

#include <string>

#include "robrec/distributions.hpp"
#include "robrec/harness.hpp"

namespace robrec {

/// Deterministic JSON serialization of a report: sorted keys, shortest
/// round-trip number formatting, no volatile fields (wall time is a console
/// diagnostic). Identical reports serialize to identical bytes.
std::string report_to_json(const ExperimentReport& report);

/// Per-trial CSV: trial,method,rel_error,c,lambda (c is empty on lasso rows).
std::string trials_to_csv(const ExperimentReport& report);

/// Histogram CSV: bin_lo,bin_hi,count_robust,count_lasso.
std::string histogram_to_csv(const ExperimentReport& report);

/// Dataset CSV with header y,x1,...,xd, one sample per row. Values are written
/// with 17 significant digits so a round trip is bit-exact.
std::string dataset_to_csv(const Dataset& data);

/// Parses the dataset CSV format; throws std::runtime_error naming the line
/// number on malformed input, and rejects NaN or infinite fields.
Dataset parse_dataset_csv(const std::string& text);

Dataset import_dataset(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::string to_string(DesignKind kind);
std::string to_string(CvCriterion criterion);
DesignKind design_kind_from_string(const std::string& name);
CvCriterion cv_criterion_from_string(const std::string& name);

}  // namespace robrec
