#include "kornlab/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace kornlab {

namespace {

using nlohmann::json;

json report_json(const VerificationReport& r) {
  json j;
  j["checkName"] = r.check_name;
  j["provenance"] = r.provenance;
  j["seed"] = r.seed;
  j["h"] = r.h;
  j["p"] = r.p;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ratio"] = r.ratio;
  j["slack"] = r.slack;
  j["pass"] = r.pass;
  j["constant"] = {{"source", r.constant_source}, {"value", r.constant_value}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::ostringstream csv_stream() {
  std::ostringstream os;
  os.precision(17);
  return os;
}

}  // namespace

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  auto os = csv_stream();
  os << "# kornlab report csv v1\n";
  os << "checkName,provenance,seed,h,p,lhs,rhs,ratio,slack,pass,constantSource,constantValue,note\n";
  for (const auto& r : reports) {
    os << r.check_name << "," << '"' << r.provenance << '"' << "," << r.seed << ","
       << r.h << "," << r.p << "," << r.lhs << "," << r.rhs << "," << r.ratio << ","
       << r.slack << "," << (r.pass ? 1 : 0) << "," << r.constant_source << ","
       << r.constant_value << "," << r.note << "\n";
  }
  return os.str();
}

namespace {

json estimate_json(const EstimateRecord& rec) {
  const KornEstimate& e = rec.estimate;
  json j;
  j["shape"] = rec.shape;
  j["p"] = e.p;
  j["mode"] = korn_mode_name(e.mode);
  j["h"] = e.h;
  j["value"] = e.value;
  j["boundDirection"] = bound_direction_name(e.bound);
  j["residual"] = e.residual;
  j["iterations"] = e.iterations;
  j["seed"] = e.seed;
  return j;
}

}  // namespace

std::string estimates_to_json(const std::vector<EstimateRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) arr.push_back(estimate_json(r));
  return arr.dump(2) + "\n";
}

std::string estimates_to_csv(const std::vector<EstimateRecord>& records) {
  auto os = csv_stream();
  os << "# kornlab estimate csv v1\n";
  os << "shape,p,mode,h,value,boundDirection,residual,iterations,seed\n";
  for (const auto& r : records) {
    const KornEstimate& e = r.estimate;
    os << r.shape << "," << e.p << "," << korn_mode_name(e.mode) << "," << e.h << ","
       << e.value << "," << bound_direction_name(e.bound) << "," << e.residual << ","
       << e.iterations << "," << e.seed << "\n";
  }
  return os.str();
}

std::string residuals_to_json(const std::vector<ResidualRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) {
    json j;
    j["identity"] = r.identity;
    j["family"] = r.family;
    j["h"] = r.h;
    j["residual"] = r.residual;
    j["seed"] = r.seed;
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

std::string residuals_to_csv(const std::vector<ResidualRecord>& records) {
  auto os = csv_stream();
  os << "# kornlab residual csv v1\n";
  os << "identity,family,h,residual,seed\n";
  for (const auto& r : records)
    os << r.identity << "," << r.family << "," << r.h << "," << r.residual << ","
       << r.seed << "\n";
  return os.str();
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  auto os = csv_stream();
  os << "# kornlab sweep csv v1\n";
  os << "vary,varyValue,shape,p,h,mode,value,boundDirection,residual,seed\n";
  for (const auto& r : rows)
    os << r.vary << "," << r.vary_value << "," << r.shape << "," << r.p << ","
       << r.h << "," << r.mode << "," << r.value << "," << r.bound << ","
       << r.residual << "," << r.seed << "\n";
  return os.str();
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["vary"] = r.vary;
    j["varyValue"] = r.vary_value;
    j["shape"] = r.shape;
    j["p"] = r.p;
    j["h"] = r.h;
    j["mode"] = r.mode;
    j["value"] = r.value;
    j["boundDirection"] = r.bound;
    j["residual"] = r.residual;
    j["seed"] = r.seed;
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
}

}  // namespace kornlab
