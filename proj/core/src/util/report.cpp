#include "cliffkit/util/report.hpp"

#include <sstream>

#include <json.hpp>

namespace cliff {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Info: return "INFO";
  }
  return "?";
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Exact: return "exact";
    case Mode::Exhaustive: return "exhaustive";
    case Mode::Sampled: return "sampled";
  }
  return "?";
}

Record& Record::set(const std::string& key, const std::string& value) {
  for (auto& kv : fields)
    if (kv.first == key) {
      kv.second = value;
      return *this;
    }
  fields.emplace_back(key, value);
  return *this;
}

Record& Record::set(const std::string& key, long long value) { return set(key, std::to_string(value)); }

bool Report::all_passed() const {
  for (const auto& r : records_)
    if (r.verdict == Verdict::Fail) return false;
  return true;
}

std::string Report::to_text() const {
  std::ostringstream os;
  for (const auto& r : records_) {
    os << "[record]\n";
    os << "id = " << r.id << "\n";
    os << "claim = " << r.claim << "\n";
    os << "verdict = " << to_string(r.verdict) << "\n";
    os << "mode = " << to_string(r.mode) << "\n";
    os << "seed = " << r.seed << "\n";
    for (const auto& kv : r.fields) os << kv.first << " = " << kv.second << "\n";
    os << "\n";
  }
  return os.str();
}

std::string Report::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records_) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["claim"] = r.claim;
    j["verdict"] = to_string(r.verdict);
    j["mode"] = to_string(r.mode);
    j["seed"] = r.seed;
    nlohmann::ordered_json f = nlohmann::ordered_json::object();
    for (const auto& kv : r.fields) f[kv.first] = kv.second;
    j["fields"] = f;
    arr.push_back(j);
  }
  nlohmann::ordered_json root;
  root["records"] = arr;
  root["all_passed"] = all_passed();
  return root.dump(2) + "\n";
}

}  // namespace cliff
