#include "omega/report.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace omega {

namespace {

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

json spectrum_to_json(const LambdaSpectrum& spectrum, int top) {
  auto take = [top](const std::vector<double>& v) {
    if (top < 0 || static_cast<int>(v.size()) <= top) return v;
    return std::vector<double>(v.begin(), v.begin() + top);
  };
  json j;
  j["positive"] = take(spectrum.positive);
  j["negative"] = take(spectrum.negative);
  j["zero_dim"] = spectrum.zero_dim;
  return j;
}

json omega_values_to_json(const std::vector<OmegaValue>& values) {
  json arr = json::array();
  for (const OmegaValue& v : values) {
    json item;
    item["value"] = v.value;
    if (v.multiplicity)
      item["multiplicity"] = *v.multiplicity;
    else
      item["multiplicity"] = "unresolved";
    item["witness"] = v.witness;
    arr.push_back(std::move(item));
  }
  return arr;
}

json verify_report_to_json(const VerifyReport& report) {
  json j;
  j["suite"] = report.suite;
  j["cases"] = report.cases;
  j["pass"] = report.pass();
  json failures = json::array();
  for (const VerifyFailure& f : report.failures) {
    json item;
    item["inputs"] = f.inputs;
    item["relation"] = f.relation;
    item["expected"] = f.expected;
    item["observed"] = f.observed;
    failures.push_back(std::move(item));
  }
  j["failures"] = std::move(failures);
  j["tolerances"] = report.tolerances;
  if (!report.skipped_reason.empty()) j["skipped"] = report.skipped_reason;
  return j;
}

std::string stable_hash(const json& stable_part) {
  const std::string bytes = stable_part.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr);
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < length; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
  return os.str();
}

json finalize_report(const std::string& command, json config, json payload, double wall_ms) {
  json report;
  report["schema"] = "omega-report/1";
  report["command"] = command;
  report["config"] = std::move(config);
  report["payload"] = std::move(payload);
  json stable = report;
  json envelope;
  envelope["timestamp"] = iso_timestamp();
  envelope["wall_ms"] = wall_ms;
  envelope["stable_hash"] = stable_hash(stable);
  report["envelope"] = std::move(envelope);
  return report;
}

std::string omega_values_to_csv(const std::vector<OmegaValue>& values) {
  std::ostringstream os;
  os.precision(17);
  os << "k,value,multiplicity,witness\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << i + 1 << "," << values[i].value << ",";
    if (values[i].multiplicity)
      os << *values[i].multiplicity;
    else
      os << "unresolved";
    os << ",\"" << values[i].witness << "\"\n";
  }
  return os.str();
}

std::string spectrum_to_csv(const LambdaSpectrum& spectrum) {
  std::ostringstream os;
  os.precision(17);
  os << "k,value,multiplicity,witness\n";
  int k = 1;
  for (double v : spectrum.positive) os << k++ << "," << v << ",1,\"\"\n";
  k = -1;
  for (double v : spectrum.negative) os << k-- << "," << v << ",1,\"\"\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write file: " + path);
  out << text;
}

}  // namespace omega
