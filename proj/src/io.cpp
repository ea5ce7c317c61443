#include "robrec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace robrec {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json grid_to_json(const std::vector<double>& grid) {
  return nlohmann::json(grid);
}

nlohmann::json spec_to_json(const ExperimentSpec& spec) {
  nlohmann::json j;
  j["d"] = spec.d;
  j["m"] = spec.m;
  j["s"] = spec.s;
  j["q_pareto"] = spec.q_pareto;
  if (spec.snr_db) {
    j["snr_db"] = *spec.snr_db;
  } else {
    j["snr_db"] = nullptr;
  }
  j["n_trials"] = spec.n_trials;
  j["seed"] = spec.seed;
  j["kappa"] = spec.kappa;
  j["cv_folds"] = spec.cv_folds;
  j["grid_c"] = grid_to_json(spec.grid_c);
  j["grid_lambda"] = grid_to_json(spec.grid_lambda);
  j["grid_lambda_lasso"] = grid_to_json(spec.grid_lambda_lasso);
  j["design"] = to_string(spec.design_kind);
  j["cv_criterion"] = to_string(spec.cv_criterion);
  return j;
}

}  // namespace

std::string to_string(DesignKind kind) {
  return kind == DesignKind::ParetoSphere ? "pareto-sphere" : "gaussian";
}

std::string to_string(CvCriterion criterion) {
  return criterion == CvCriterion::OracleRelativeError ? "oracle-relative-error"
                                                       : "validation-loss";
}

DesignKind design_kind_from_string(const std::string& name) {
  if (name == "pareto-sphere") return DesignKind::ParetoSphere;
  if (name == "gaussian") return DesignKind::Gaussian;
  throw std::invalid_argument("unknown design kind: " + name);
}

CvCriterion cv_criterion_from_string(const std::string& name) {
  if (name == "oracle-relative-error") return CvCriterion::OracleRelativeError;
  if (name == "validation-loss") return CvCriterion::ValidationLoss;
  throw std::invalid_argument("unknown cv criterion: " + name);
}

std::string report_to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["spec"] = spec_to_json(report.spec);

  nlohmann::json trials = nlohmann::json::array();
  for (const TrialRecord& t : report.trials) {
    nlohmann::json row;
    row["trial"] = t.trial;
    row["robust"] = {{"rel_error", t.robust_error}, {"c", t.robust_c}, {"lambda", t.robust_lambda}};
    row["lasso"] = {{"rel_error", t.lasso_error}, {"lambda", t.lasso_lambda}};
    trials.push_back(row);
  }
  j["trials"] = trials;

  j["summary"] = {
      {"robust",
       {{"median", report.robust.median}, {"mean", report.robust.mean}, {"iqr", report.robust.iqr}}},
      {"lasso",
       {{"median", report.lasso.median}, {"mean", report.lasso.mean}, {"iqr", report.lasso.iqr}}}};

  j["histogram"] = {{"edges", report.histogram.edges},
                    {"robust_counts", report.histogram.robust_counts},
                    {"lasso_counts", report.histogram.lasso_counts}};
  return j.dump(2) + "\n";
}

std::string trials_to_csv(const ExperimentReport& report) {
  std::string out = "trial,method,rel_error,c,lambda\n";
  for (const TrialRecord& t : report.trials) {
    out += std::to_string(t.trial) + ",robust," + format_double(t.robust_error) + "," +
           format_double(t.robust_c) + "," + format_double(t.robust_lambda) + "\n";
    out += std::to_string(t.trial) + ",lasso," + format_double(t.lasso_error) + ",," +
           format_double(t.lasso_lambda) + "\n";
  }
  return out;
}

std::string histogram_to_csv(const ExperimentReport& report) {
  std::string out = "bin_lo,bin_hi,count_robust,count_lasso\n";
  const auto& h = report.histogram;
  for (std::size_t k = 0; k + 1 < h.edges.size(); ++k) {
    out += format_double(h.edges[k]) + "," + format_double(h.edges[k + 1]) + "," +
           std::to_string(h.robust_counts[k]) + "," + std::to_string(h.lasso_counts[k]) + "\n";
  }
  return out;
}

std::string dataset_to_csv(const Dataset& data) {
  std::string out = "y";
  for (int k = 1; k <= data.d(); ++k) out += ",x" + std::to_string(k);
  out += "\n";
  for (int i = 0; i < data.m(); ++i) {
    out += format_double(data.y[i]);
    for (int k = 0; k < data.d(); ++k) out += "," + format_double(data.x(i, k));
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_field(const std::string& field, int line_no) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    throw std::runtime_error("dataset parse error at line " + std::to_string(line_no) +
                             ": bad numeric field '" + field + "'");
  }
  if (!std::isfinite(value)) {
    throw std::runtime_error("dataset parse error at line " + std::to_string(line_no) +
                             ": non-finite value '" + field + "'");
  }
  return value;
}

}  // namespace

Dataset parse_dataset_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line) || line.empty()) {
    throw std::runtime_error("dataset parse error at line 1: missing header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_fields(line);
  if (header.empty() || header[0] != "y" || header.size() < 2) {
    throw std::runtime_error("dataset parse error at line 1: header must be y,x1,...,xd");
  }
  const int d = static_cast<int>(header.size()) - 1;

  std::vector<double> ys;
  std::vector<double> xs;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;  // tolerate a trailing blank line
    const std::vector<std::string> fields = split_fields(line);
    if (static_cast<int>(fields.size()) != d + 1) {
      throw std::runtime_error("dataset parse error at line " + std::to_string(line_no) +
                               ": expected " + std::to_string(d + 1) + " fields, got " +
                               std::to_string(fields.size()));
    }
    ys.push_back(parse_field(fields[0], line_no));
    for (int k = 1; k <= d; ++k) xs.push_back(parse_field(fields[k], line_no));
  }
  if (ys.empty()) {
    throw std::runtime_error("dataset parse error at line " + std::to_string(line_no) +
                             ": no sample rows");
  }

  Dataset data;
  const int m = static_cast<int>(ys.size());
  data.y = Eigen::Map<Eigen::VectorXd>(ys.data(), m);
  data.x.resize(m, d);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < d; ++k) data.x(i, k) = xs[static_cast<std::size_t>(i) * d + k];
  }
  return data;
}

Dataset import_dataset(const std::string& path) { return parse_dataset_csv(read_text_file(path)); }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open file for writing: " + path);
  }
  out << content;
  if (!out) {
    throw std::runtime_error("failed writing file: " + path);
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace robrec
